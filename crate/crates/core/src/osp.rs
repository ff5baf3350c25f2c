//! osp(2|2) generators built from the deformed oscillator, and a numerical
//! check that their graded brackets close on the generator span.
//!
//! Odd generators use Klein projectors `Π_± = ½(1 ± K)`:
//! `Q^± = a^± Π_{∓ε}` and `S^± = a^± Π_{±ε}`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fock::{build_annihilator, build_klein, klein_projector, FockSpec};
use crate::linalg::{
    anticommutator, commutator, compress, graded_bracket, identity, re, ComplexMatrix,
    GradedOperator, OperatorMeta, Parity, SpanProjector,
};

/// Generator names in closure-table order.
pub const GENERATOR_NAMES: [&str; 8] = ["T3", "T+", "T-", "J", "Q+", "Q-", "S+", "S-"];
/// Span labels: the eight generators followed by the identity.
pub const SPAN_NAMES: [&str; 9] = ["T3", "T+", "T-", "J", "Q+", "Q-", "S+", "S-", "I"];
/// Index of each span element's adjoint.
const ADJOINT_INDEX: [usize; 9] = [0, 2, 1, 3, 5, 4, 7, 6, 8];
const PARITY_COEFF_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorSet {
    pub t3: GradedOperator,
    pub tplus: GradedOperator,
    pub tminus: GradedOperator,
    pub j: GradedOperator,
    pub qplus: GradedOperator,
    pub qminus: GradedOperator,
    pub splus: GradedOperator,
    pub sminus: GradedOperator,
    pub epsilon: i8,
    pub spec: FockSpec,
}

impl GeneratorSet {
    pub fn ordered(&self) -> [&GradedOperator; 8] {
        [
            &self.t3,
            &self.tplus,
            &self.tminus,
            &self.j,
            &self.qplus,
            &self.qminus,
            &self.splus,
            &self.sminus,
        ]
    }

    /// Every generator multiplied by the same real factor.
    pub fn scaled(&self, factor: f64) -> GeneratorSet {
        let f = re(factor);
        GeneratorSet {
            t3: self.t3.scaled(f),
            tplus: self.tplus.scaled(f),
            tminus: self.tminus.scaled(f),
            j: self.j.scaled(f),
            qplus: self.qplus.scaled(f),
            qminus: self.qminus.scaled(f),
            splus: self.splus.scaled(f),
            sminus: self.sminus.scaled(f),
            epsilon: self.epsilon,
            spec: self.spec,
        }
    }
}

pub fn build_generators(spec: &FockSpec, epsilon: i8) -> Result<GeneratorSet> {
    if epsilon.abs() != 1 {
        return Err(Error::Usage(format!("ε must be ±1, got {epsilon}")));
    }
    let d = spec.cutoff();
    let a = build_annihilator(spec).matrix;
    let ad = a.adjoint();
    let k = build_klein(spec).matrix;
    let proj = |s: i8| klein_projector(&k, s * epsilon);
    let meta = |label: &str| OperatorMeta {
        label: label.to_string(),
        cutoff: Some(d),
        nu: Some(spec.nu()),
    };
    let even = |m: ComplexMatrix, l: &str| GradedOperator::new(m, Parity::Even, meta(l));
    let odd = |m: ComplexMatrix, l: &str| GradedOperator::new(m, Parity::Odd, meta(l));

    let t3 = anticommutator(&a, &ad) * re(0.5);
    let tplus = &ad * &ad;
    let tminus = &a * &a;
    let j = &k * commutator(&a, &ad) * re(-0.5 * f64::from(epsilon));
    Ok(GeneratorSet {
        t3: even(t3, "T3"),
        tplus: even(tplus, "T+"),
        tminus: even(tminus, "T-"),
        j: even(j, "J"),
        qplus: odd(&ad * proj(-1), "Q+"),
        qminus: odd(&a * proj(1), "Q-"),
        splus: odd(&ad * proj(1), "S+"),
        sminus: odd(&a * proj(-1), "S-"),
        epsilon,
        spec: *spec,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClosureRow {
    pub left: String,
    pub right: String,
    /// `"commutator"` or `"anticommutator"`.
    pub bracket: String,
    /// Coefficients on [`SPAN_NAMES`], each as `[re, im]`.
    pub coefficients: Vec<[f64; 2]>,
    pub residual: f64,
    /// Coefficients on generators of the wrong parity all vanish.
    pub parity_ok: bool,
}

impl ClosureRow {
    pub fn coefficient(&self, i: usize) -> Complex64 {
        let [r, im] = self.coefficients[i];
        Complex64::new(r, im)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClosureReport {
    pub epsilon: i8,
    pub nu: f64,
    pub cutoff: usize,
    pub interior: usize,
    pub tol: f64,
    /// Row `8·i + j` holds the bracket of generator `i` with generator `j`.
    pub rows: Vec<ClosureRow>,
    pub max_residual: f64,
    pub parity_ok: bool,
    pub pass: bool,
}

impl ClosureReport {
    pub fn row(&self, left: usize, right: usize) -> &ClosureRow {
        &self.rows[8 * left + right]
    }
}

fn span_parity(i: usize) -> Parity {
    if (4..8).contains(&i) {
        Parity::Odd
    } else {
        Parity::Even
    }
}

/// Graded brackets of all ordered generator pairs, compressed to the interior
/// levels and projected onto `span{generators, I}`.
pub fn closure_report(gens: &GeneratorSet, tol: f64) -> Result<ClosureReport> {
    let interior = gens.spec.interior();
    let keep: Vec<usize> = (0..interior).collect();
    let ordered = gens.ordered();
    let mut basis: Vec<ComplexMatrix> =
        ordered.iter().map(|g| compress(&g.matrix, &keep)).collect();
    basis.push(identity(interior));
    let projector = SpanProjector::new(basis)?;

    let mut rows = Vec::with_capacity(64);
    for (i, a) in ordered.iter().enumerate() {
        for (j, b) in ordered.iter().enumerate() {
            let bracket = graded_bracket(a, b)?;
            let proj = projector.project(&compress(&bracket.matrix, &keep))?;
            let parity_ok = proj
                .coefficients
                .iter()
                .enumerate()
                .filter(|(k, _)| span_parity(*k) != bracket.parity)
                .all(|(_, c)| c.norm() < PARITY_COEFF_TOL);
            let both_odd = a.parity == Parity::Odd && b.parity == Parity::Odd;
            rows.push(ClosureRow {
                left: GENERATOR_NAMES[i].to_string(),
                right: GENERATOR_NAMES[j].to_string(),
                bracket: if both_odd {
                    "anticommutator"
                } else {
                    "commutator"
                }
                .to_string(),
                coefficients: proj.coefficients.iter().map(|c| [c.re, c.im]).collect(),
                residual: proj.residual,
                parity_ok,
            });
        }
    }
    let max_residual = rows.iter().map(|r| r.residual).fold(0.0, f64::max);
    let parity_ok = rows.iter().all(|r| r.parity_ok);
    Ok(ClosureReport {
        epsilon: gens.epsilon,
        nu: gens.spec.nu(),
        cutoff: gens.spec.cutoff(),
        interior,
        tol,
        rows,
        max_residual,
        pass: max_residual < tol,
        parity_ok,
    })
}

/// Largest deviation between the coefficients of `[A†, B†]` on `G_k†` and
/// `−s·conj(c_k)` read from the row of `[A, B]`, where `s = +1` for a
/// commutator and `−1` for an anticommutator.
pub fn adjoint_consistency(report: &ClosureReport) -> f64 {
    let mut worst = 0.0f64;
    for (i, &ai) in ADJOINT_INDEX[..8].iter().enumerate() {
        for (j, &aj) in ADJOINT_INDEX[..8].iter().enumerate() {
            let row = report.row(i, j);
            let adj_row = report.row(ai, aj);
            let s = if row.bracket == "anticommutator" {
                -1.0
            } else {
                1.0
            };
            for (k, &ak) in ADJOINT_INDEX.iter().enumerate() {
                let expected = row.coefficient(k).conj() * (-s);
                let got = adj_row.coefficient(ak);
                worst = worst.max((expected - got).norm());
            }
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::build_klein;
    use crate::linalg::leading_block;

    fn gens(d: usize, nu: f64, eps: i8) -> GeneratorSet {
        build_generators(&FockSpec::new(d, nu).unwrap(), eps).unwrap()
    }

    #[test]
    fn undeformed_j_is_klein() {
        for eps in [1, -1] {
            let g = gens(12, 0.0, eps);
            let k = build_klein(&g.spec).matrix;
            let expected = &k * re(-0.5 * f64::from(eps));
            let n = g.spec.cutoff() - 1;
            assert!((leading_block(&g.j.matrix, n) - leading_block(&expected, n)).norm() < 1e-14);
        }
    }

    #[test]
    fn generator_set_invariants() {
        for (nu, eps) in [(0.0, 1), (0.7, -1), (2.0, 1)] {
            let g = gens(16, nu, eps);
            assert!((&g.tminus.matrix - g.tplus.matrix.adjoint()).norm() < 1e-13);
            let k = build_klein(&g.spec).matrix;
            for op in [&g.qplus, &g.qminus, &g.splus, &g.sminus] {
                assert!(op.parity_defect(&k) < 1e-12);
            }
        }
        assert!(build_generators(&FockSpec::new(8, 0.0).unwrap(), 0).is_err());
    }

    #[test]
    fn odd_generators_square_to_zero() {
        let g = gens(20, 0.7, 1);
        for op in [&g.qplus, &g.qminus, &g.splus, &g.sminus] {
            assert!(anticommutator(&op.matrix, &op.matrix).norm() < 1e-12);
        }
    }

    #[test]
    fn q_anticommutator_is_t3_plus_j() {
        // {Q+, Q-} = a⁺a⁻Π₊ + a⁻a⁺Π₋ = T3 + J, deformation included
        for (nu, eps) in [(0.0, 1), (0.7, 1), (0.7, -1)] {
            let g = gens(24, nu, eps);
            let n = g.spec.interior();
            let lhs = anticommutator(&g.qplus.matrix, &g.qminus.matrix);
            let rhs = &g.t3.matrix + &g.j.matrix;
            assert!((leading_block(&lhs, n) - leading_block(&rhs, n)).norm() < 1e-12);
        }
    }

    #[test]
    fn t3_raises_by_two() {
        let g = gens(40, 0.0, 1);
        let report = closure_report(&g, 1e-10).unwrap();
        let row = report.row(0, 1);
        assert!(row.residual < 1e-12);
        for (k, _) in SPAN_NAMES.iter().enumerate() {
            let expected = if k == 1 { re(2.0) } else { re(0.0) };
            assert!(
                (row.coefficient(k) - expected).norm() < 1e-12,
                "coefficient {k}"
            );
        }
    }

    #[test]
    fn closure_examples() {
        for (nu, eps) in [(0.0, 1), (0.7, -1)] {
            let report = closure_report(&gens(40, nu, eps), 1e-10).unwrap();
            assert_eq!(report.rows.len(), 64);
            assert!(report.pass, "ν={nu} ε={eps}: {}", report.max_residual);
            assert!(report.parity_ok);
        }
    }

    #[test]
    fn closure_detects_a_broken_generator() {
        let mut g = gens(16, 0.0, 1);
        // replacing J by a non-central diagonal breaks closure
        let n = g.spec.cutoff();
        g.j.matrix =
            ComplexMatrix::from_fn(
                n,
                n,
                |i, j| if i == j { re((i * i) as f64) } else { re(0.0) },
            );
        let report = closure_report(&g, 1e-10).unwrap();
        assert!(!report.pass);
    }

    #[test]
    fn adjoint_consistency_holds() {
        for (nu, eps) in [(0.0, 1), (0.7, -1)] {
            let report = closure_report(&gens(24, nu, eps), 1e-10).unwrap();
            assert!(adjoint_consistency(&report) < 1e-10);
        }
    }

    #[test]
    fn residuals_scale_quadratically() {
        let g = gens(24, 0.7, 1);
        let base = closure_report(&g, 1e-10).unwrap();
        for lambda in [0.5, 3.0, -2.0] {
            let scaled = closure_report(&g.scaled(lambda), 1e-10).unwrap();
            for (a, b) in base.rows.iter().zip(&scaled.rows) {
                assert!((a.residual - b.residual / (lambda * lambda)).abs() < 1e-12);
            }
        }
    }
}
