//! Supersymmetric quantum mechanics on the truncated deformed Fock space.
//!
//! All operator algebra is carried out exactly (as matrix products) in a
//! working space of `D + GUARD_LEVELS` bosonic levels. Spectra are taken from
//! the compression of those operators onto the first `D` levels, which is a
//! Rayleigh–Ritz restriction of the untruncated operator: it inherits no
//! spurious states from the top of the ladder.
//!
//! Tensor ordering is boson ⊗ fermion, fermion index fastest. The fermion
//! lowering operator is `ψ = |0⟩⟨1|`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fock::{build_position_momentum, klein_matrix, klein_projector, FockSpec};
use crate::linalg::{
    c, check_dim_limit, commutator, compress, eig_hermitian, hermiticity_defect, identity, kron,
    kron_all, re, ComplexMatrix, GradedOperator, OperatorMeta, Parity,
};
use crate::qubit::{jordan_wigner, sigma_minus};

/// Extra bosonic levels kept above the cutoff while building operators.
pub const GUARD_LEVELS: usize = 8;
pub const MIN_MODEL_CUTOFF: usize = 8;
pub const DEFAULT_GAP_TOL: f64 = 1e-6;
/// Default ground-energy tolerance relative to the spectral range.
pub const RELATIVE_E_TOL: f64 = 1e-6;
const E_TOL_FLOOR: f64 = 1e-12;
const PARITY_TOL: f64 = 1e-12;
const ZERO_MODE_TOL: f64 = 1e-9;

/// Real polynomial `Σ c_k x^k`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Polynomial {
    pub coefficients: Vec<f64>,
}

impl Polynomial {
    pub fn new(coefficients: Vec<f64>) -> Self {
        Self { coefficients }
    }

    pub fn degree(&self) -> usize {
        self.coefficients
            .iter()
            .rposition(|&c| c != 0.0)
            .unwrap_or(0)
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coefficients
            .iter()
            .rev()
            .fold(0.0, |acc, &c| acc * x + c)
    }

    pub fn derivative(&self) -> Polynomial {
        let coefficients = self
            .coefficients
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &c)| k as f64 * c)
            .collect();
        Polynomial { coefficients }
    }

    /// `p(X)` by Horner's rule.
    pub fn eval_operator(&self, x: &ComplexMatrix) -> ComplexMatrix {
        let n = x.nrows();
        let mut acc = ComplexMatrix::zeros(n, n);
        for &c in self.coefficients.iter().rev() {
            acc = &acc * x + identity(n) * re(c);
        }
        acc
    }
}

/// `W(x) = x + g₀x²`.
pub fn superpotential(g0: f64) -> Polynomial {
    Polynomial::new(vec![0.0, 1.0, g0])
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub g0: f64,
    pub h0: f64,
    pub nu: f64,
    pub cutoff: usize,
    pub projector_signs: Vec<i8>,
}

impl ModelParams {
    pub fn new(cutoff: usize, nu: f64, g0: f64) -> Result<Self> {
        let params = Self {
            g0,
            h0: 0.0,
            nu,
            cutoff,
            projector_signs: Vec::new(),
        };
        params.validate()?;
        Ok(params)
    }

    pub fn with_h0(mut self, h0: f64) -> Self {
        self.h0 = h0;
        self
    }

    pub fn with_signs(mut self, signs: Vec<i8>) -> Self {
        self.projector_signs = signs;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.cutoff < MIN_MODEL_CUTOFF {
            return Err(Error::Usage(format!(
                "model cutoff must be at least {MIN_MODEL_CUTOFF}, got {}",
                self.cutoff
            )));
        }
        FockSpec::new(self.cutoff, self.nu)?;
        if !self.g0.is_finite() || !self.h0.is_finite() {
            return Err(Error::Usage("couplings g0 and h0 must be finite".into()));
        }
        if let Some(s) = self.projector_signs.iter().find(|s| s.abs() != 1) {
            return Err(Error::Usage(format!("projector signs must be ±1, got {s}")));
        }
        Ok(())
    }

    fn working_spec(&self) -> Result<FockSpec> {
        FockSpec::new(self.cutoff + GUARD_LEVELS, self.nu)
    }
}

/// Single-mode position, momentum and `W(x)` on the working space.
#[derive(Debug, Clone, PartialEq)]
pub struct BosonParts {
    pub x: ComplexMatrix,
    pub p: ComplexMatrix,
    pub w: ComplexMatrix,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuperchargePair {
    pub q: GradedOperator,
    pub qdag: GradedOperator,
    pub h: GradedOperator,
    /// Grading `K_b ⊗ I₂` on the working space.
    pub klein: ComplexMatrix,
    pub cutoff: usize,
    pub working: usize,
    /// Number of projections applied to the base supercharge.
    pub depth: usize,
    pub boson: BosonParts,
    /// `‖H − [½(p²+W²)⊗I + ½ i[p,W]⊗(ψψ†−ψ†ψ)]‖_F` on the physical block.
    pub construction_residual: f64,
}

impl SuperchargePair {
    /// Working-space indices of the first `cutoff` bosonic levels.
    pub fn physical_indices(&self) -> Vec<usize> {
        (0..2 * self.working)
            .filter(|i| i / 2 < self.cutoff)
            .collect()
    }

    /// Compression of a working-space operator to the physical block.
    pub fn physical(&self, m: &ComplexMatrix) -> ComplexMatrix {
        compress(m, &self.physical_indices())
    }

    pub fn nilpotency_residual(&self) -> f64 {
        (&self.q.matrix * &self.q.matrix).norm()
    }

    /// `‖H − QQ† − Q†Q‖_F`.
    pub fn decomposition_residual(&self) -> f64 {
        let q = &self.q.matrix;
        let qd = &self.qdag.matrix;
        (&self.h.matrix - q * qd - qd * q).norm()
    }

    /// `‖KQK + Q‖_F`, zero when the supercharge is odd.
    pub fn parity_defect(&self) -> f64 {
        self.q.parity_defect(&self.klein)
    }

    fn pair_from(&self, q: ComplexMatrix, depth: usize, label: &str) -> SuperchargePair {
        let qdag = q.adjoint();
        let h = &q * &qdag + &qdag * &q;
        let meta = |l: String| OperatorMeta {
            label: l,
            ..self.q.meta.clone()
        };
        SuperchargePair {
            q: GradedOperator::new(q, Parity::Odd, meta(label.to_string())),
            qdag: GradedOperator::new(qdag, Parity::Odd, meta(format!("{label}^dag"))),
            h: GradedOperator::new(h, Parity::Even, meta(format!("H[{label}]"))),
            klein: self.klein.clone(),
            cutoff: self.cutoff,
            working: self.working,
            depth,
            boson: self.boson.clone(),
            construction_residual: self.construction_residual,
        }
    }
}

/// `Q = (ip + W(x))/√2 ⊗ ψ` with `H = {Q, Q†}`.
pub fn build_supercharge_1d(params: &ModelParams) -> Result<SuperchargePair> {
    params.validate()?;
    let spec = params.working_spec()?;
    let dw = spec.cutoff();
    check_dim_limit(2 * dw, "one-dimensional SUSY model")?;
    let (x, p) = build_position_momentum(&spec);
    let (x, p) = (x.matrix, p.matrix);
    let w = superpotential(params.g0).eval_operator(&x);
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let a = (&p * c(0.0, 1.0) + &w) * re(s);
    let psi = sigma_minus();
    let q = kron(&a, &psi);
    let qdag = q.adjoint();
    let h = &q * &qdag + &qdag * &q;

    let psi_dag = psi.adjoint();
    let fermion_z = &psi * &psi_dag - &psi_dag * &psi;
    let expected = kron(&((&p * &p + &w * &w) * re(0.5)), &identity(2))
        + kron(&(commutator(&p, &w) * c(0.0, 0.5)), &fermion_z);

    let meta = |label: &str| OperatorMeta {
        label: label.to_string(),
        cutoff: Some(params.cutoff),
        nu: Some(params.nu),
    };
    let mut pair = SuperchargePair {
        q: GradedOperator::new(q, Parity::Odd, meta("Q")),
        qdag: GradedOperator::new(qdag, Parity::Odd, meta("Q^dag")),
        h: GradedOperator::new(h, Parity::Even, meta("H")),
        klein: kron(&klein_matrix(dw), &identity(2)),
        cutoff: params.cutoff,
        working: dw,
        depth: 0,
        boson: BosonParts { x, p, w },
        construction_residual: 0.0,
    };
    pair.construction_residual = pair.physical(&(&pair.h.matrix - expected)).norm();
    Ok(pair)
}

/// `‖QQ† − ½(p² + i[p,W] + W²) ⊗ ψψ†‖_F` on the physical block.
pub fn partner_identity_residual(pair: &SuperchargePair) -> f64 {
    let BosonParts { p, w, .. } = &pair.boson;
    let psi = sigma_minus();
    let inner = (p * p + commutator(p, w) * c(0.0, 1.0) + w * w) * re(0.5);
    let expected = kron(&inner, &(&psi * psi.adjoint()));
    let qqd = &pair.q.matrix * &pair.qdag.matrix;
    pair.physical(&(qqd - expected)).norm()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BreakingLabel {
    Exact,
    BrokenGapped,
    BrokenDegenerate,
}

impl fmt::Display for BreakingLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BreakingLabel::Exact => "exact",
            BreakingLabel::BrokenGapped => "broken_gapped",
            BreakingLabel::BrokenDegenerate => "broken_degenerate",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumOptions {
    /// Absolute ground-energy tolerance; `None` means
    /// `RELATIVE_E_TOL · (E_max − E_min)` over the full compressed spectrum.
    pub e_tol: Option<f64>,
    pub gap_tol: f64,
    /// Number of eigenvalues reported; `None` means `cutoff / 4`.
    pub retain: Option<usize>,
}

impl Default for SpectrumOptions {
    fn default() -> Self {
        Self {
            e_tol: None,
            gap_tol: DEFAULT_GAP_TOL,
            retain: None,
        }
    }
}

/// Lowest part of a truncated spectrum. Only the retained eigenvalues are
/// treated as physical.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub eigenvalues: Vec<f64>,
    pub degeneracies: Vec<usize>,
    pub ground_energy: f64,
    pub breaking: BreakingLabel,
    /// `⟨v|K|v⟩` for each retained eigenvector, when a grading was supplied.
    pub sector_labels: Option<Vec<f64>>,
    pub e_tol: f64,
    pub gap_tol: f64,
    /// Size of the matrix the retained values were taken from.
    pub total: usize,
}

/// Breaking label of an ascending spectrum; `None` for an empty one.
pub fn classify_eigenvalues(values: &[f64], e_tol: f64, gap_tol: f64) -> Option<BreakingLabel> {
    let ground = *values.first()?;
    let ground_count = values
        .iter()
        .take_while(|&&v| v - ground <= gap_tol)
        .count();
    Some(if ground_count >= 2 {
        BreakingLabel::BrokenDegenerate
    } else if ground < e_tol {
        BreakingLabel::Exact
    } else {
        BreakingLabel::BrokenGapped
    })
}

pub fn classify_breaking(spec: &SpectrumReport, e_tol: f64, gap_tol: f64) -> BreakingLabel {
    classify_eigenvalues(&spec.eigenvalues, e_tol, gap_tol)
        .expect("spectrum reports always hold at least one eigenvalue")
}

/// Diagonalize `h`, keep the lowest `retain` eigenvalues and classify them.
pub fn spectrum_report(
    h: &ComplexMatrix,
    grading: Option<&ComplexMatrix>,
    retain: usize,
    opts: &SpectrumOptions,
) -> Result<SpectrumReport> {
    let total = h.nrows();
    if total == 0 || retain == 0 {
        return Err(Error::Precondition(
            "spectrum must retain at least one eigenvalue".into(),
        ));
    }
    let retain = retain.min(total);
    let eig = eig_hermitian(h)?;
    let (lo, hi) = (eig.values[0], eig.values[total - 1]);
    let e_tol = opts
        .e_tol
        .unwrap_or((RELATIVE_E_TOL * (hi - lo)).max(E_TOL_FLOOR));
    let eigenvalues: Vec<f64> = eig.values[..retain].to_vec();
    let sector_labels = grading.map(|k| {
        (0..retain)
            .map(|j| {
                let v = eig.vectors.column(j);
                (v.adjoint() * k * v)[(0, 0)].re
            })
            .collect()
    });
    let degeneracies = crate::linalg::group_degeneracies(&eigenvalues, opts.gap_tol);
    let breaking =
        classify_eigenvalues(&eigenvalues, e_tol, opts.gap_tol).expect("retain is at least one");
    Ok(SpectrumReport {
        ground_energy: eigenvalues[0],
        eigenvalues,
        degeneracies,
        breaking,
        sector_labels,
        e_tol,
        gap_tol: opts.gap_tol,
        total,
    })
}

fn retain_count(cutoff: usize, opts: &SpectrumOptions) -> usize {
    opts.retain.unwrap_or(cutoff / 4).max(1)
}

/// Spectrum of the pair's Hamiltonian on the physical block.
pub fn pair_spectrum(pair: &SuperchargePair, opts: &SpectrumOptions) -> Result<SpectrumReport> {
    let h = pair.physical(&pair.h.matrix);
    let k = pair.physical(&pair.klein);
    spectrum_report(&h, Some(&k), retain_count(pair.cutoff, opts), opts)
}

#[derive(Debug, Clone, PartialEq)]
pub struct TowerLevel {
    pub depth: usize,
    /// Projector sign used to reach this level; `None` at depth 0.
    pub sign: Option<i8>,
    /// The level's supercharge `Q̂` and Hamiltonian `Ĥ = {Q̂, Q̂†}`.
    pub pair: SuperchargePair,
    pub nilpotency_residual: f64,
    /// `‖2{Q̂,Q̂†} − (H + s[Q†,Q]K)‖_F` against the previous level; zero at
    /// depth 0 where there is no previous level.
    pub identity_residual: f64,
    /// `‖KQK + Q‖_F` of the supercharge that was projected.
    pub parity_defect: f64,
    pub spectrum: SpectrumReport,
}

impl TowerLevel {
    pub fn qhat(&self) -> &GradedOperator {
        &self.pair.q
    }

    pub fn hhat(&self) -> &GradedOperator {
        &self.pair.h
    }
}

/// Depth-0 level wrapping the unprojected model.
pub fn base_level(pair: &SuperchargePair, opts: &SpectrumOptions) -> Result<TowerLevel> {
    Ok(TowerLevel {
        depth: pair.depth,
        sign: None,
        nilpotency_residual: pair.nilpotency_residual(),
        identity_residual: 0.0,
        parity_defect: pair.parity_defect(),
        spectrum: pair_spectrum(pair, opts)?,
        pair: pair.clone(),
    })
}

fn check_sign(sign: i8) -> Result<()> {
    if sign.abs() != 1 {
        return Err(Error::Usage(format!(
            "projector sign must be ±1, got {sign}"
        )));
    }
    Ok(())
}

/// `Q̂ = QΠ_s` with `Π_s = ½(1 + sK)`. Requires `Q` to be odd under `K`, which
/// is what makes `2{Q̂,Q̂†} = H + s[Q†,Q]K` hold.
pub fn project_supercharge(
    pair: &SuperchargePair,
    sign: i8,
    opts: &SpectrumOptions,
) -> Result<TowerLevel> {
    check_sign(sign)?;
    let defect = pair.parity_defect();
    let scale = pair.q.matrix.norm().max(1.0);
    if defect > PARITY_TOL * scale {
        return Err(Error::Precondition(format!(
            "supercharge is not odd under the Klein grading: ‖KQK + Q‖_F = {defect:.3e}"
        )));
    }
    project_supercharge_unchecked(pair, sign, opts)
}

/// [`project_supercharge`] without the parity precondition. The residuals are
/// computed as usual, so the failure of the identity can be measured.
pub fn project_supercharge_unchecked(
    pair: &SuperchargePair,
    sign: i8,
    opts: &SpectrumOptions,
) -> Result<TowerLevel> {
    check_sign(sign)?;
    let k = &pair.klein;
    let q = &pair.q.matrix;
    let qd = &pair.qdag.matrix;
    let qhat = q * klein_projector(k, sign);
    let label = format!("{}P{}", pair.q.meta.label, if sign > 0 { "+" } else { "-" });
    let next = pair.pair_from(qhat, pair.depth + 1, &label);
    let rhs = &pair.h.matrix + (qd * q - q * qd) * k * re(f64::from(sign));
    let identity_residual = (&next.h.matrix * re(2.0) - rhs).norm();
    Ok(TowerLevel {
        depth: next.depth,
        sign: Some(sign),
        nilpotency_residual: next.nilpotency_residual(),
        identity_residual,
        parity_defect: pair.parity_defect(),
        spectrum: pair_spectrum(&next, opts)?,
        pair: next,
    })
}

/// Levels `0..=depth`, level `k+1` projecting level `k` with
/// `projector_signs[k]`.
pub fn build_tower(
    params: &ModelParams,
    depth: usize,
    opts: &SpectrumOptions,
) -> Result<Vec<TowerLevel>> {
    if depth == 0 {
        return Err(Error::Usage("tower depth must be at least 1".into()));
    }
    if params.projector_signs.len() != depth {
        return Err(Error::Usage(format!(
            "tower of depth {depth} needs {depth} projector signs, got {}",
            params.projector_signs.len()
        )));
    }
    let base = build_supercharge_1d(params)?;
    let mut levels = vec![base_level(&base, opts)?];
    for &sign in &params.projector_signs {
        let prev = &levels.last().expect("tower is never empty").pair;
        let level = project_supercharge(prev, sign, opts)?;
        levels.push(level);
    }
    Ok(levels)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PartnerReport {
    pub k: usize,
    pub tol: f64,
    /// Lowest `k` nonzero eigenvalues of `QQ†`.
    pub qqdag: Vec<f64>,
    /// Lowest `k` nonzero eigenvalues of `Q†Q`.
    pub qdagq: Vec<f64>,
    pub max_deviation: f64,
    pub pass: bool,
}

fn nonzero_lowest(m: &ComplexMatrix, k: usize) -> Result<Vec<f64>> {
    let values = crate::linalg::eigvals_hermitian(m)?;
    let scale = values.iter().fold(1.0f64, |acc, v| acc.max(v.abs()));
    Ok(values
        .into_iter()
        .filter(|v| v.abs() > ZERO_MODE_TOL * scale)
        .take(k)
        .collect())
}

/// Compare the lowest `k` nonzero eigenvalues of the partner operators `QQ†`
/// and `Q†Q` on the physical block.
pub fn partner_pairing_check(pair: &SuperchargePair, k: usize, tol: f64) -> Result<PartnerReport> {
    if k > pair.cutoff / 4 {
        return Err(Error::Precondition(format!(
            "k = {k} exceeds cutoff/4 = {}; higher levels are truncation-contaminated",
            pair.cutoff / 4
        )));
    }
    if k == 0 {
        return Ok(PartnerReport {
            k,
            tol,
            qqdag: Vec::new(),
            qdagq: Vec::new(),
            max_deviation: 0.0,
            pass: true,
        });
    }
    let q = &pair.q.matrix;
    let qd = &pair.qdag.matrix;
    let qqdag = nonzero_lowest(&pair.physical(&(q * qd)), k)?;
    let qdagq = nonzero_lowest(&pair.physical(&(qd * q)), k)?;
    if qqdag.len() < k || qdagq.len() < k {
        return Err(Error::Internal(format!(
            "fewer than {k} nonzero partner eigenvalues ({} and {})",
            qqdag.len(),
            qdagq.len()
        )));
    }
    let max_deviation = qqdag
        .iter()
        .zip(&qdagq)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    Ok(PartnerReport {
        k,
        tol,
        pass: max_deviation <= tol,
        qqdag,
        qdagq,
        max_deviation,
    })
}

/// Bivariate polynomial in commuting variables, keyed by exponent pair.
type Poly2 = BTreeMap<(usize, usize), f64>;

fn poly2_mul(a: &Poly2, b: &Poly2) -> Poly2 {
    let mut out = Poly2::new();
    for (&(i, j), &ca) in a {
        for (&(k, l), &cb) in b {
            *out.entry((i + k, j + l)).or_insert(0.0) += ca * cb;
        }
    }
    out.retain(|_, c| *c != 0.0);
    out
}

fn poly2_add(a: &Poly2, b: &Poly2) -> Poly2 {
    let mut out = a.clone();
    for (&key, &c) in b {
        *out.entry(key).or_insert(0.0) += c;
    }
    out.retain(|_, c| *c != 0.0);
    out
}

/// `|φ + g₀φ²|²` with `φ = x + iy`, as a polynomial in `x` and `y`.
pub fn wzqm_potential(g0: f64) -> BTreeMap<(usize, usize), f64> {
    // Re W = x + g0(x² − y²), Im W = y + 2g0·xy
    let re_w: Poly2 = [((1, 0), 1.0), ((2, 0), g0), ((0, 2), -g0)]
        .into_iter()
        .collect();
    let im_w: Poly2 = [((0, 1), 1.0), ((1, 1), 2.0 * g0)].into_iter().collect();
    let mut out = poly2_add(&poly2_mul(&re_w, &re_w), &poly2_mul(&im_w, &im_w));
    out.retain(|_, c| *c != 0.0);
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct WzqmModel {
    pub hamiltonian: GradedOperator,
    pub hermiticity_residual: f64,
    pub cutoff: usize,
}

/// Two bosonic modes `x`, `y` (cutoff `D` each) and two Jordan–Wigner fermions:
///
/// `H = ½(p_x² + p_y²) + |φ + g₀φ²|² ⊗ I₄ + [(1 + 2h₀φ) ⊗ c₀c₁ + h.c.]`.
///
/// Mode operators and their powers are built in the padded working space and
/// compressed to `D` levels before the Kronecker products are taken.
pub fn build_wzqm_hamiltonian(params: &ModelParams) -> Result<WzqmModel> {
    params.validate()?;
    let d = params.cutoff;
    check_dim_limit(d * d * 4, "two-mode WZQM Hamiltonian")?;
    let spec = params.working_spec()?;
    let (x, p) = build_position_momentum(&spec);
    let (x, p) = (x.matrix, p.matrix);
    let keep: Vec<usize> = (0..d).collect();

    let potential = wzqm_potential(params.g0);
    let max_power = potential
        .keys()
        .map(|&(a, b)| a.max(b))
        .max()
        .unwrap_or(0)
        .max(1);
    let mut powers = vec![identity(spec.cutoff())];
    for k in 1..=max_power {
        powers.push(&powers[k - 1] * &x);
    }
    let powers: Vec<ComplexMatrix> = powers.iter().map(|m| compress(m, &keep)).collect();
    let p2 = compress(&(&p * &p), &keep);
    let eye = identity(d);

    let mut boson = (kron(&p2, &eye) + kron(&eye, &p2)) * re(0.5);
    for (&(a, b), &coef) in &potential {
        boson += kron(&powers[a], &powers[b]) * re(coef);
    }

    let phi = kron(&powers[1], &eye) + kron(&eye, &powers[1]) * c(0.0, 1.0);
    let yukawa = identity(d * d) + phi * re(2.0 * params.h0);
    let (c0, _) = jordan_wigner(2, 0)?;
    let (c1, _) = jordan_wigner(2, 1)?;
    let pairing = &c0 * &c1;
    let fermion = kron(&yukawa, &pairing);
    let h = kron(&boson, &identity(4)) + &fermion + fermion.adjoint();
    let hermiticity_residual = hermiticity_defect(&h);
    let meta = OperatorMeta {
        label: "H_wzqm".into(),
        cutoff: Some(d),
        nu: Some(params.nu),
    };
    Ok(WzqmModel {
        hamiltonian: GradedOperator::new(h, Parity::Even, meta),
        hermiticity_residual,
        cutoff: d,
    })
}

/// Spectrum of the WZQM Hamiltonian, graded by the total Klein operator
/// `K_x ⊗ K_y ⊗ Z ⊗ Z`.
pub fn wzqm_spectrum(model: &WzqmModel, opts: &SpectrumOptions) -> Result<SpectrumReport> {
    let d = model.cutoff;
    let kb = klein_matrix(d);
    let z = crate::qubit::pauli_z();
    let grading = kron_all([&kb, &kb, &z, &z]);
    spectrum_report(
        &model.hamiltonian.matrix,
        Some(&grading),
        retain_count(d, opts),
        opts,
    )
}
