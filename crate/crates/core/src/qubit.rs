//! Qubit-side machinery: Pauli words, the single-qubit Clifford generators,
//! Jordan–Wigner fermions, matrix units, stabilizer states and projective
//! orbits.
//!
//! Tensor convention: qubit 0 is the leftmost Kronecker factor.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{c, eig_hermitian, identity, kron_all, re, ComplexMatrix, ComplexVector};

pub const MAX_JW_MODES: usize = 10;
pub const DEFAULT_ORBIT_BOUND: usize = 4096;
/// Entrywise tolerance when matching a matrix against a Pauli word.
pub const PAULI_MATCH_TOL: f64 = 1e-9;

pub fn pauli_x() -> ComplexMatrix {
    ComplexMatrix::from_row_slice(2, 2, &[re(0.0), re(1.0), re(1.0), re(0.0)])
}

pub fn pauli_y() -> ComplexMatrix {
    ComplexMatrix::from_row_slice(2, 2, &[re(0.0), c(0.0, -1.0), c(0.0, 1.0), re(0.0)])
}

pub fn pauli_z() -> ComplexMatrix {
    ComplexMatrix::from_row_slice(2, 2, &[re(1.0), re(0.0), re(0.0), re(-1.0)])
}

pub fn hadamard() -> ComplexMatrix {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    ComplexMatrix::from_row_slice(2, 2, &[re(s), re(s), re(s), re(-s)])
}

pub fn phase_s() -> ComplexMatrix {
    ComplexMatrix::from_row_slice(2, 2, &[re(1.0), re(0.0), re(0.0), c(0.0, 1.0)])
}

pub fn t_gate() -> ComplexMatrix {
    let w = Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4);
    ComplexMatrix::from_row_slice(2, 2, &[re(1.0), re(0.0), re(0.0), w])
}

/// Two-level lowering operator `|0⟩⟨1|`.
pub fn sigma_minus() -> ComplexMatrix {
    ComplexMatrix::from_row_slice(2, 2, &[re(0.0), re(1.0), re(0.0), re(0.0)])
}

/// Single-site operator `op` on site `j` of `n`, identity elsewhere.
pub fn embed(op: &ComplexMatrix, n: usize, j: usize) -> ComplexMatrix {
    let eye = identity(op.nrows());
    let factors: Vec<&ComplexMatrix> = (0..n).map(|k| if k == j { op } else { &eye }).collect();
    kron_all(factors)
}

/// An `n`-qubit Pauli group element `i^phase · ⊗_j X^{x_j} Z^{z_j}`.
///
/// The phase is stored relative to the `X^x Z^z` product, so a `Y` letter
/// (`Y = iXZ`) contributes one power of `i`. The string form uses the usual
/// letters: `[+-](i)?[IXYZ]{n}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct PauliWord {
    phase: u8,
    x: Vec<bool>,
    z: Vec<bool>,
}

impl PauliWord {
    pub fn new(phase: u8, x: Vec<bool>, z: Vec<bool>) -> Result<Self> {
        if x.len() != z.len() {
            return Err(Error::DimensionMismatch(format!(
                "x has {} bits, z has {}",
                x.len(),
                z.len()
            )));
        }
        Ok(Self {
            phase: phase % 4,
            x,
            z,
        })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            phase: 0,
            x: vec![false; n],
            z: vec![false; n],
        }
    }

    /// Single letter on qubit `j` of `n`.
    pub fn single(n: usize, j: usize, letter: char) -> Result<Self> {
        if j >= n {
            return Err(Error::Usage(format!(
                "qubit {j} out of range for {n} qubits"
            )));
        }
        let mut letters = vec!['I'; n];
        letters[j] = letter;
        format!("+{}", letters.iter().collect::<String>()).parse()
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    pub fn phase(&self) -> u8 {
        self.phase
    }

    pub fn xbits(&self) -> &[bool] {
        &self.x
    }

    pub fn zbits(&self) -> &[bool] {
        &self.z
    }

    fn y_count(&self) -> u8 {
        (self
            .x
            .iter()
            .zip(&self.z)
            .filter(|(a, b)| **a && **b)
            .count()
            % 4) as u8
    }

    /// Power of `i` in front of the letter string (X, Y, Z with `Y` Hermitian).
    pub fn letter_phase(&self) -> u8 {
        (self.phase + 4 - self.y_count()) % 4
    }

    pub fn letters(&self) -> String {
        self.x
            .iter()
            .zip(&self.z)
            .map(|(&x, &z)| match (x, z) {
                (false, false) => 'I',
                (true, false) => 'X',
                (true, true) => 'Y',
                (false, true) => 'Z',
            })
            .collect()
    }

    pub fn is_hermitian(&self) -> bool {
        self.letter_phase().is_multiple_of(2)
    }

    pub fn negated(&self) -> Self {
        Self {
            phase: (self.phase + 2) % 4,
            ..self.clone()
        }
    }

    /// Dense `2^n x 2^n` matrix.
    pub fn matrix(&self) -> ComplexMatrix {
        let x = pauli_x();
        let z = pauli_z();
        let eye = identity(2);
        let mut factors = Vec::with_capacity(self.n());
        for (&xb, &zb) in self.x.iter().zip(&self.z) {
            let f = match (xb, zb) {
                (false, false) => eye.clone(),
                (true, false) => x.clone(),
                (false, true) => z.clone(),
                (true, true) => &x * &z,
            };
            factors.push(f);
        }
        let m = kron_all(factors.iter());
        m * i_pow(self.phase)
    }

    pub fn commutes_with(&self, other: &PauliWord) -> bool {
        symplectic_form(self, other).is_multiple_of(2)
    }
}

fn i_pow(k: u8) -> Complex64 {
    match k % 4 {
        0 => re(1.0),
        1 => c(0.0, 1.0),
        2 => re(-1.0),
        _ => c(0.0, -1.0),
    }
}

fn symplectic_form(a: &PauliWord, b: &PauliWord) -> usize {
    (0..a.n())
        .filter(|&j| (a.x[j] && b.z[j]) != (a.z[j] && b.x[j]))
        .count()
}

/// Product of two Pauli words; moving `Z^{z_a}` past `X^{x_b}` on each qubit
/// contributes `(−1)^{z_a x_b}`.
pub fn pauli_mul(a: &PauliWord, b: &PauliWord) -> Result<PauliWord> {
    if a.n() != b.n() {
        return Err(Error::DimensionMismatch(format!(
            "cannot multiply {}-qubit and {}-qubit words",
            a.n(),
            b.n()
        )));
    }
    let swaps = a.z.iter().zip(&b.x).filter(|(z, x)| **z && **x).count();
    let phase = ((a.phase as usize + b.phase as usize + 2 * swaps) % 4) as u8;
    let x = a.x.iter().zip(&b.x).map(|(p, q)| p ^ q).collect();
    let z = a.z.iter().zip(&b.z).map(|(p, q)| p ^ q).collect();
    PauliWord::new(phase, x, z)
}

impl fmt::Display for PauliWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix = match self.letter_phase() {
            0 => "+",
            1 => "+i",
            2 => "-",
            _ => "-i",
        };
        write!(f, "{prefix}{}", self.letters())
    }
}

impl FromStr for PauliWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || {
            Error::Usage(format!(
                "'{s}' is not a Pauli word of the form [+-](i)?[IXYZ]+"
            ))
        };
        let mut chars = s.chars().peekable();
        let mut letter_phase = match chars.next() {
            Some('+') => 0u8,
            Some('-') => 2u8,
            _ => return Err(bad()),
        };
        if chars.peek() == Some(&'i') {
            chars.next();
            letter_phase += 1;
        }
        let mut x = Vec::new();
        let mut z = Vec::new();
        let mut ys = 0u8;
        for ch in chars {
            let (xb, zb) = match ch {
                'I' => (false, false),
                'X' => (true, false),
                'Y' => {
                    ys += 1;
                    (true, true)
                }
                'Z' => (false, true),
                _ => return Err(bad()),
            };
            x.push(xb);
            z.push(zb);
        }
        if x.is_empty() {
            return Err(bad());
        }
        PauliWord::new((letter_phase + ys) % 4, x, z)
    }
}

impl From<PauliWord> for String {
    fn from(w: PauliWord) -> Self {
        w.to_string()
    }
}

impl TryFrom<String> for PauliWord {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

/// All `4^n` phase-free Pauli words.
pub fn all_pauli_words(n: usize) -> Vec<PauliWord> {
    let count = 1usize << n;
    let mut out = Vec::with_capacity(count * count);
    for xs in 0..count {
        for zs in 0..count {
            let x = (0..n).map(|j| (xs >> (n - 1 - j)) & 1 == 1).collect();
            let z = (0..n).map(|j| (zs >> (n - 1 - j)) & 1 == 1).collect();
            out.push(PauliWord { phase: 0, x, z });
        }
    }
    out
}

/// Generators `iI, X_0, Z_0, …, X_{n−1}, Z_{n−1}` of the `n`-qubit Pauli group
/// with phases.
pub fn pauli_group_generators(n: usize) -> Vec<ComplexMatrix> {
    let dim = 1usize << n;
    let mut gens = vec![identity(dim) * c(0.0, 1.0)];
    for j in 0..n {
        gens.push(embed(&pauli_x(), n, j));
        gens.push(embed(&pauli_z(), n, j));
    }
    gens
}

/// If `m` equals `±P` or `±iP` for a Pauli word `P` (entrywise within
/// [`PAULI_MATCH_TOL`]), return that signed word.
pub fn match_pauli(m: &ComplexMatrix, n: usize) -> Option<PauliWord> {
    let dim = 1usize << n;
    if m.shape() != (dim, dim) {
        return None;
    }
    for w in all_pauli_words(n) {
        let p = w.matrix();
        let overlap = (p.adjoint() * m).trace() / re(dim as f64);
        if overlap.norm() < 0.5 {
            continue;
        }
        let phase = (0..4u8).find(|&k| (overlap - i_pow(k)).norm() < PAULI_MATCH_TOL)?;
        let diff = m - &p * i_pow(phase);
        if diff.iter().all(|z| z.norm() <= PAULI_MATCH_TOL) {
            return Some(PauliWord {
                phase: (w.phase + phase) % 4,
                ..w
            });
        }
        return None;
    }
    None
}

/// The single-qubit Clifford generators `[H, S]`.
pub fn clifford_generators(n: usize) -> Result<Vec<ComplexMatrix>> {
    if n != 1 {
        return Err(Error::Usage(format!(
            "Clifford generators are provided for one qubit only, got n = {n}"
        )));
    }
    Ok(vec![hadamard(), phase_s()])
}

fn unitarity_defect(u: &ComplexMatrix) -> f64 {
    (u.adjoint() * u - identity(u.ncols())).norm()
}

/// Whether `u` maps every Pauli generator `X_j`, `Z_j` to a Pauli group element
/// under conjugation. Conjugation is a homomorphism, so generators suffice.
pub fn clifford_membership(u: &ComplexMatrix, n: usize) -> Result<bool> {
    let dim = 1usize << n;
    if u.shape() != (dim, dim) {
        return Err(Error::DimensionMismatch(format!(
            "expected a {dim}x{dim} unitary for {n} qubits, got {:?}",
            u.shape()
        )));
    }
    let defect = unitarity_defect(u);
    if defect > 1e-10 {
        return Err(Error::Precondition(format!(
            "matrix is not unitary: ‖U†U − I‖ = {defect:.3e}"
        )));
    }
    let ud = u.adjoint();
    for j in 0..n {
        for g in [embed(&pauli_x(), n, j), embed(&pauli_z(), n, j)] {
            if match_pauli(&(u * g * &ud), n).is_none() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn check_site(n: usize, j: usize) -> Result<()> {
    if n == 0 || n > MAX_JW_MODES {
        return Err(Error::Usage(format!(
            "mode count must be in 1..={MAX_JW_MODES}, got {n}"
        )));
    }
    if j >= n {
        return Err(Error::Usage(format!("site {j} out of range for {n} modes")));
    }
    Ok(())
}

/// Jordan–Wigner annihilator `c_j = Z^{⊗j} ⊗ σ⁻ ⊗ I^{⊗(n−j−1)}` and its adjoint.
pub fn jordan_wigner(n: usize, j: usize) -> Result<(ComplexMatrix, ComplexMatrix)> {
    check_site(n, j)?;
    let z = pauli_z();
    let eye = identity(2);
    let lower = sigma_minus();
    let factors: Vec<&ComplexMatrix> = (0..n)
        .map(|k| match k.cmp(&j) {
            std::cmp::Ordering::Less => &z,
            std::cmp::Ordering::Equal => &lower,
            std::cmp::Ordering::Greater => &eye,
        })
        .collect();
    let cj = kron_all(factors);
    let cdag = cj.adjoint();
    Ok((cj, cdag))
}

/// `Π_j Z_j`, the fermion parity of `n` Jordan–Wigner modes.
pub fn fermion_parity(n: usize) -> ComplexMatrix {
    let z = pauli_z();
    kron_all(std::iter::repeat_n(&z, n))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MatrixUnitKind {
    A,
    Adag,
    AAdag,
    Lambda,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MatrixUnitOp {
    pub n: usize,
    pub site: usize,
    pub kind: MatrixUnitKind,
    pub matrix: ComplexMatrix,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MatrixUnits {
    pub a: MatrixUnitOp,
    pub a_dag: MatrixUnitOp,
    pub a_a_dag: MatrixUnitOp,
    pub lambda: MatrixUnitOp,
}

/// `|e_i⟩⟨e_j|` on `C²`.
pub fn matrix_unit(i: usize, j: usize) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(2, 2);
    m[(i, j)] = re(1.0);
    m
}

/// Site-local matrix units padded with identities: `A = I ⊗ e₀₁ ⊗ I`,
/// `A† = I ⊗ e₁₀ ⊗ I`, `AA† = I ⊗ e₀₀ ⊗ I` and the number operator
/// `Λ = A†A = I ⊗ e₁₁ ⊗ I`.
pub fn matrix_units(n: usize, site: usize) -> Result<MatrixUnits> {
    check_site(n, site)?;
    let make = |kind, unit: ComplexMatrix| MatrixUnitOp {
        n,
        site,
        kind,
        matrix: embed(&unit, n, site),
    };
    let a = make(MatrixUnitKind::A, matrix_unit(0, 1));
    let a_dag = make(MatrixUnitKind::Adag, matrix_unit(1, 0));
    let a_a_dag = make(MatrixUnitKind::AAdag, matrix_unit(0, 0));
    let lambda = MatrixUnitOp {
        n,
        site,
        kind: MatrixUnitKind::Lambda,
        matrix: &a_dag.matrix * &a.matrix,
    };
    Ok(MatrixUnits {
        a,
        a_dag,
        a_a_dag,
        lambda,
    })
}

/// Klein operator `(−1)^Λ` for a diagonal number operator with spectrum
/// in the non-negative integers.
pub fn klein_from_number(lambda: &ComplexMatrix) -> ComplexMatrix {
    let n = lambda.nrows();
    ComplexMatrix::from_fn(n, n, |i, j| {
        if i == j {
            let k = lambda[(i, i)].re.round() as i64;
            re(if k % 2 == 0 { 1.0 } else { -1.0 })
        } else {
            Complex64::ZERO
        }
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StabilizerGroupSpec {
    pub n: usize,
    pub generators: Vec<PauliWord>,
}

impl StabilizerGroupSpec {
    pub fn new(generators: Vec<PauliWord>) -> Result<Self> {
        let n = generators
            .first()
            .map(PauliWord::n)
            .ok_or_else(|| Error::Usage("stabilizer group needs at least one generator".into()))?;
        if let Some(w) = generators.iter().find(|w| w.n() != n) {
            return Err(Error::DimensionMismatch(format!(
                "generator {w} does not act on {n} qubits"
            )));
        }
        if let Some(w) = generators.iter().find(|w| !w.is_hermitian()) {
            return Err(Error::Precondition(format!(
                "generator {w} is not Hermitian and has no +1 eigenspace to stabilize"
            )));
        }
        for (i, a) in generators.iter().enumerate() {
            for b in &generators[i + 1..] {
                if !a.commutes_with(b) {
                    return Err(Error::Precondition(format!(
                        "generators {a} and {b} do not commute"
                    )));
                }
            }
        }
        Ok(Self { n, generators })
    }
}

/// Multiply by a unit phase so that the first non-negligible amplitude is
/// positive real.
pub fn canonical_phase(v: &ComplexVector) -> ComplexVector {
    match v.iter().find(|z| z.norm() > 1e-9) {
        Some(&lead) => v * (lead.conj() / lead.norm()),
        None => v.clone(),
    }
}

/// Orthonormal basis of the joint `+1` eigenspace of the signed generators.
pub fn stabilizer_states(spec: &StabilizerGroupSpec) -> Result<Vec<ComplexVector>> {
    let dim = 1usize << spec.n;
    let eye = identity(dim);
    let mut proj = eye.clone();
    for g in &spec.generators {
        proj *= (&eye + g.matrix()) * re(0.5);
    }
    let eig = eig_hermitian(&proj)?;
    let states = eig
        .values
        .iter()
        .enumerate()
        .filter(|(_, &v)| v > 0.5)
        .map(|(k, _)| canonical_phase(&eig.vectors.column(k).into_owned()))
        .collect();
    Ok(states)
}

type StateKey = Vec<(i64, i64)>;

fn state_key(v: &ComplexVector) -> StateKey {
    v.iter()
        .map(|z| ((z.re * 1e9).round() as i64, (z.im * 1e9).round() as i64))
        .collect()
}

/// Orbit of a state's ray under the group generated by `generators`: BFS
/// closure with states identified up to global phase. The result is sorted by
/// the canonical key, so it does not depend on generator order.
pub fn projective_orbit(
    state: &ComplexVector,
    generators: &[ComplexMatrix],
    bound: usize,
) -> Result<Vec<ComplexVector>> {
    if (state.norm() - 1.0).abs() > 1e-9 {
        return Err(Error::Precondition(format!(
            "orbit seed must be normalized, norm = {}",
            state.norm()
        )));
    }
    if let Some(g) = generators
        .iter()
        .find(|g| g.shape() != (state.len(), state.len()))
    {
        return Err(Error::DimensionMismatch(format!(
            "generator of shape {:?} cannot act on a {}-dimensional state",
            g.shape(),
            state.len()
        )));
    }
    let start = canonical_phase(state);
    let mut seen: BTreeMap<StateKey, ComplexVector> = BTreeMap::new();
    let mut queue = VecDeque::new();
    seen.insert(state_key(&start), start.clone());
    queue.push_back(start);
    while let Some(v) = queue.pop_front() {
        for g in generators {
            let w = canonical_phase(&(g * &v));
            let key = state_key(&w);
            if !seen.contains_key(&key) {
                if seen.len() >= bound {
                    return Err(Error::Resource(format!(
                        "orbit exceeds the bound of {bound} states"
                    )));
                }
                seen.insert(key, w.clone());
                queue.push_back(w);
            }
        }
    }
    Ok(seen.into_values().collect())
}

/// The four Bell states in the order Φ⁺, Φ⁻, Ψ⁺, Ψ⁻.
pub fn bell_states() -> [ComplexVector; 4] {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let v = |a: f64, b: f64, cc: f64, d: f64| {
        ComplexVector::from_vec(vec![re(a), re(b), re(cc), re(d)])
    };
    [
        v(s, 0.0, 0.0, s),
        v(s, 0.0, 0.0, -s),
        v(0.0, s, s, 0.0),
        v(0.0, s, -s, 0.0),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::anticommutator;

    fn w(s: &str) -> PauliWord {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_display_round_trip() {
        for s in ["+XZ", "-iYY", "+iIXYZ", "-Z"] {
            assert_eq!(w(s).to_string(), s);
        }
        assert!("XZ".parse::<PauliWord>().is_err());
        assert!("+iQ".parse::<PauliWord>().is_err());
        assert!("+".parse::<PauliWord>().is_err());
    }

    #[test]
    fn serde_uses_string_form() {
        let json = serde_json_like(&w("-iXY"));
        assert_eq!(json, "-iXY");
    }

    fn serde_json_like(word: &PauliWord) -> String {
        String::from(word.clone())
    }

    #[test]
    fn letter_matrix_matches_definition() {
        assert_eq!(w("+Y").matrix(), pauli_y());
        assert_eq!(
            w("+XZ").matrix(),
            crate::linalg::kron(&pauli_x(), &pauli_z())
        );
        assert_eq!(w("-iZ").matrix(), pauli_z() * c(0.0, -1.0));
    }

    #[test]
    fn product_examples() {
        let xx = pauli_mul(&w("+X"), &w("+X")).unwrap();
        assert_eq!(xx, PauliWord::identity(1));
        let xz = pauli_mul(&w("+X"), &w("+Z")).unwrap();
        assert_eq!(xz.letters(), "Y");
        assert_eq!(xz.letter_phase(), 3);
        let p = pauli_mul(&w("+ZZ"), &w("+XX")).unwrap();
        assert_eq!(p.to_string(), "-YY");
        assert_eq!(p.matrix(), w("+ZZ").matrix() * w("+XX").matrix());
        assert!(pauli_mul(&w("+X"), &w("+XX")).is_err());
    }

    #[test]
    fn product_homomorphism_exhaustive_two_qubits() {
        let words = all_pauli_words(2);
        for a in &words {
            for b in &words {
                let p = pauli_mul(a, b).unwrap();
                assert_eq!(p.matrix(), a.matrix() * b.matrix(), "{a} * {b}");
            }
        }
    }

    #[test]
    fn product_homomorphism_exhaustive_three_qubits_with_phases() {
        let words = all_pauli_words(3);
        for (k, a) in words.iter().enumerate() {
            let a = PauliWord {
                phase: (k % 4) as u8,
                ..a.clone()
            };
            for b in &words {
                let p = pauli_mul(&a, b).unwrap();
                assert_eq!(p.matrix(), a.matrix() * b.matrix(), "{a} * {b}");
            }
        }
    }

    #[test]
    fn clifford_generator_identities() {
        let g = clifford_generators(1).unwrap();
        let (h, s) = (&g[0], &g[1]);
        assert!((h * h - identity(2)).norm() < 1e-15);
        assert!((s * s * s * s - identity(2)).norm() < 1e-15);
        assert!((h * pauli_x() * h.adjoint() - pauli_z()).norm() < 1e-15);
        assert!(clifford_generators(2).is_err());
    }

    #[test]
    fn clifford_membership_examples() {
        assert!(clifford_membership(&hadamard(), 1).unwrap());
        assert!(clifford_membership(&phase_s(), 1).unwrap());
        assert!(!clifford_membership(&t_gate(), 1).unwrap());
        // T X T† = (X + Y)/√2, not a Pauli word
        let txt = t_gate() * pauli_x() * t_gate().adjoint();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert!((txt - (pauli_x() + pauli_y()) * re(s)).norm() < 1e-15);
        let bad = pauli_x() * re(2.0);
        assert!(matches!(
            clifford_membership(&bad, 1),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn clifford_membership_is_phase_blind() {
        let u = hadamard() * Complex64::from_polar(1.0, 0.37);
        assert!(clifford_membership(&u, 1).unwrap());
        let cnot_like = crate::linalg::kron(&hadamard(), &phase_s());
        assert!(clifford_membership(&cnot_like, 2).unwrap());
    }

    #[test]
    fn jordan_wigner_examples() {
        let (c0, _) = jordan_wigner(1, 0).unwrap();
        assert_eq!(c0, sigma_minus());
        let n = 3;
        let ops: Vec<_> = (0..n).map(|j| jordan_wigner(n, j).unwrap()).collect();
        let eye = identity(8);
        for i in 0..n {
            for j in 0..n {
                let car = anticommutator(&ops[i].0, &ops[j].1);
                let target = if i == j {
                    eye.clone()
                } else {
                    ComplexMatrix::zeros(8, 8)
                };
                assert!((car - target).norm() < 1e-14);
                assert!(anticommutator(&ops[i].0, &ops[j].0).norm() < 1e-14);
            }
        }
        assert!(jordan_wigner(3, 3).is_err());
        assert!(jordan_wigner(11, 0).is_err());
    }

    #[test]
    fn fermion_parity_is_klein_like() {
        let n = 3;
        let p = fermion_parity(n);
        assert_eq!(&p * &p, identity(8));
        for j in 0..n {
            let (cj, _) = jordan_wigner(n, j).unwrap();
            assert_eq!(anticommutator(&p, &cj).norm(), 0.0);
        }
    }

    #[test]
    fn matrix_unit_examples() {
        let mu = matrix_units(1, 0).unwrap();
        let e0 = ComplexVector::from_vec(vec![re(1.0), re(0.0)]);
        let e1 = ComplexVector::from_vec(vec![re(0.0), re(1.0)]);
        assert_eq!(&mu.lambda.matrix * &e1, e1);
        assert_eq!((&mu.lambda.matrix * &e0).norm(), 0.0);

        for (n, j) in [(1, 0), (3, 1), (4, 3)] {
            let mu = matrix_units(n, j).unwrap();
            let dim = 1 << n;
            let sum = &mu.a.matrix * &mu.a_dag.matrix + &mu.a_dag.matrix * &mu.a.matrix;
            assert_eq!(sum, identity(dim));
            assert_eq!(mu.lambda.matrix, &mu.a_dag.matrix * &mu.a.matrix);
            assert_eq!((&mu.a.matrix * &mu.a.matrix).norm(), 0.0);
            assert_eq!(mu.a_a_dag.matrix, &mu.a.matrix * &mu.a_dag.matrix);
        }

        let mu = matrix_units(2, 0).unwrap();
        assert_eq!(
            mu.a.matrix,
            crate::linalg::kron(&matrix_unit(0, 1), &identity(2))
        );
        assert!(matrix_units(2, 2).is_err());
    }

    #[test]
    fn klein_from_number_operator() {
        let mu = matrix_units(2, 1).unwrap();
        let k = klein_from_number(&mu.lambda.matrix);
        assert_eq!(&k * &k, identity(4));
        assert_eq!(anticommutator(&k, &mu.a.matrix).norm(), 0.0);
    }

    #[test]
    fn bell_stabilizers() {
        let bell = bell_states();
        let spec = StabilizerGroupSpec::new(vec![w("+ZZ"), w("+XX")]).unwrap();
        let states = stabilizer_states(&spec).unwrap();
        assert_eq!(states.len(), 1);
        assert!((&states[0] - &bell[0]).norm() < 1e-12);

        let spec = StabilizerGroupSpec::new(vec![w("+ZZ"), w("-XX")]).unwrap();
        let states = stabilizer_states(&spec).unwrap();
        assert_eq!(states.len(), 1);
        assert!((&states[0] - &bell[1]).norm() < 1e-12);

        let spec = StabilizerGroupSpec::new(vec![w("+Z")]).unwrap();
        let states = stabilizer_states(&spec).unwrap();
        assert_eq!(states.len(), 1);
        assert!((states[0][0] - re(1.0)).norm() < 1e-12);
    }

    #[test]
    fn stabilizer_rejects_anticommuting() {
        assert!(matches!(
            StabilizerGroupSpec::new(vec![w("+X"), w("+Z")]),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn stabilizer_states_are_plus_one_eigenvectors() {
        let spec = StabilizerGroupSpec::new(vec![w("+ZZI"), w("+IZZ")]).unwrap();
        let states = stabilizer_states(&spec).unwrap();
        assert_eq!(states.len(), 2);
        for v in &states {
            for g in &spec.generators {
                assert!((g.matrix() * v - v).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn orbit_examples() {
        let bell = bell_states();
        let orbit = projective_orbit(&bell[0], &pauli_group_generators(2), 64).unwrap();
        assert_eq!(orbit.len(), 4);

        let zero = ComplexVector::from_vec(vec![re(1.0), re(0.0)]);
        let orbit = projective_orbit(&zero, &[pauli_z()], 8).unwrap();
        assert_eq!(orbit.len(), 1);
        let orbit = projective_orbit(&zero, &[pauli_x()], 8).unwrap();
        assert_eq!(orbit.len(), 2);
    }

    #[test]
    fn orbit_bound_and_normalization() {
        let zero = ComplexVector::from_vec(vec![re(1.0), re(0.0)]);
        assert!(matches!(
            projective_orbit(&zero, &[pauli_x()], 1),
            Err(Error::Resource(_))
        ));
        let unnormalized = ComplexVector::from_vec(vec![re(2.0), re(0.0)]);
        assert!(projective_orbit(&unnormalized, &[pauli_x()], 8).is_err());
    }

    #[test]
    fn orbit_independent_of_generator_order() {
        let bell = bell_states();
        let mut gens = pauli_group_generators(2);
        let a = projective_orbit(&bell[2], &gens, 64).unwrap();
        gens.reverse();
        let b = projective_orbit(&bell[2], &gens, 64).unwrap();
        assert_eq!(a, b);
    }
}
