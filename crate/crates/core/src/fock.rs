//! The ν-deformed bosonic oscillator on a truncated Fock space.
//!
//! Basis `|0⟩ … |D−1⟩`, ladder operators with `a|n⟩ = √[n]_ν |n−1⟩`, where
//! `[n]_ν = n + ν/2 (1 + (−1)^{n+1})`, and the Klein operator `K = (−1)^N`.
//! With these matrix elements `[a, a†] = 1 + νK` holds on every basis state
//! whose image stays below the cutoff. Truncation convention: `a†|D−1⟩ = 0`,
//! so relations are audited on the interior `|0⟩ … |D−3⟩`.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{
    anticommutator, commutator, diag_real, identity, project_columns, re, zeros, ComplexMatrix,
    GradedOperator, OperatorMeta, Parity,
};

/// Named residuals produced by the audit routines.
pub type RelationReport = BTreeMap<String, f64>;

pub const MIN_CUTOFF: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FockSpec {
    cutoff: usize,
    nu: f64,
}

impl FockSpec {
    pub fn new(cutoff: usize, nu: f64) -> Result<Self> {
        if cutoff < MIN_CUTOFF {
            return Err(Error::Usage(format!(
                "cutoff must be at least {MIN_CUTOFF}, got {cutoff}"
            )));
        }
        if !nu.is_finite() || nu <= -1.0 {
            return Err(Error::Usage(format!(
                "deformation must satisfy ν > −1 for the deformed basis to exist, got {nu}"
            )));
        }
        Ok(Self { cutoff, nu })
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    /// Number of basis states on which the algebra relations are asserted.
    pub fn interior(&self) -> usize {
        self.cutoff - 2
    }

    fn meta(&self, label: &str) -> OperatorMeta {
        OperatorMeta {
            label: label.to_string(),
            cutoff: Some(self.cutoff),
            nu: Some(self.nu),
        }
    }
}

/// `[n]_ν = n + ν/2 (1 + (−1)^{n+1})`: `n` for even `n`, `n + ν` for odd `n`.
pub fn deformed_level(n: usize, nu: f64) -> f64 {
    let sign = if (n + 1).is_multiple_of(2) { 1.0 } else { -1.0 };
    n as f64 + 0.5 * nu * (1.0 + sign)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeformedLevels {
    /// `values[n] = [n]_ν`
    pub values: Vec<f64>,
    /// `factorials[n] = [n]_ν!`, with `[0]_ν! = 1`
    pub factorials: Vec<f64>,
}

impl DeformedLevels {
    pub fn new(count: usize, nu: f64) -> Self {
        let values: Vec<f64> = (0..count).map(|n| deformed_level(n, nu)).collect();
        let mut factorials = Vec::with_capacity(count);
        let mut acc = 1.0;
        for (n, &v) in values.iter().enumerate() {
            if n > 0 {
                acc *= v;
            }
            factorials.push(acc);
        }
        Self { values, factorials }
    }

    /// Normalization `C_n = ([n]_ν!)^{−1/2}` of `(a†)^n |0⟩`.
    pub fn normalization(&self, n: usize) -> f64 {
        self.factorials[n].powf(-0.5)
    }
}

pub fn build_annihilator(spec: &FockSpec) -> GradedOperator {
    let d = spec.cutoff;
    let mut a = zeros(d, d);
    for n in 1..d {
        a[(n - 1, n)] = re(deformed_level(n, spec.nu).sqrt());
    }
    GradedOperator::new(a, Parity::Odd, spec.meta("a"))
}

pub fn build_creator(spec: &FockSpec) -> GradedOperator {
    let a = build_annihilator(spec);
    GradedOperator::new(a.matrix.adjoint(), Parity::Odd, spec.meta("a^dag"))
}

/// `K = diag((−1)^n)`, with the vacuum in the `+1` sector.
pub fn build_klein(spec: &FockSpec) -> GradedOperator {
    GradedOperator::new(klein_matrix(spec.cutoff), Parity::Even, spec.meta("K"))
}

pub fn klein_matrix(dim: usize) -> ComplexMatrix {
    let signs: Vec<f64> = (0..dim)
        .map(|n| if n % 2 == 0 { 1.0 } else { -1.0 })
        .collect();
    diag_real(&signs)
}

/// `Π_± = ½(1 ± K)` for an involution `K`; `sign` must be `+1` or `−1`.
pub fn klein_projector(klein: &ComplexMatrix, sign: i8) -> ComplexMatrix {
    let n = klein.nrows();
    (identity(n) + klein * re(f64::from(sign))) * re(0.5)
}

/// Deformed number operator, `N|n⟩ = [n]_ν |n⟩`.
///
/// Computed as `a†a`, which equals `½{a, a†} − ½(1 + νK)` wherever the
/// deformed commutator holds, and has no artifact at the top level.
pub fn build_number(spec: &FockSpec) -> GradedOperator {
    let a = build_annihilator(spec).matrix;
    GradedOperator::new(a.adjoint() * &a, Parity::Even, spec.meta("N"))
}

/// `½{a, a†} − ½(ν + 1)` evaluated literally. On the interior this is
/// `diag(n)`, the undeformed level count, not `diag([n]_ν)`.
pub fn build_number_symmetric(spec: &FockSpec) -> GradedOperator {
    let a = build_annihilator(spec).matrix;
    let ad = a.adjoint();
    let m = anticommutator(&a, &ad) * re(0.5) - identity(spec.cutoff) * re(0.5 * (spec.nu + 1.0));
    GradedOperator::new(m, Parity::Even, spec.meta("N_sym"))
}

/// `x = (a + a†)/√2` and `p = i(a† − a)/√2`.
pub fn build_position_momentum(spec: &FockSpec) -> (GradedOperator, GradedOperator) {
    let a = build_annihilator(spec).matrix;
    let ad = a.adjoint();
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let x = (&a + &ad) * re(s);
    let p = (&ad - &a) * Complex64::new(0.0, s);
    (
        GradedOperator::new(x, Parity::Odd, spec.meta("x")),
        GradedOperator::new(p, Parity::Odd, spec.meta("p")),
    )
}

/// Frobenius residuals of the defining relations, each right-multiplied by the
/// projector onto the interior `|0⟩ … |D−3⟩`.
pub fn audit_relations(spec: &FockSpec) -> RelationReport {
    let d = spec.cutoff;
    let keep = spec.interior();
    let a = build_annihilator(spec).matrix;
    let ad = a.adjoint();
    let k = build_klein(spec).matrix;
    let n = build_number(spec).matrix;
    let eye = identity(d);
    let levels = DeformedLevels::new(d, spec.nu);
    let level_diag = diag_real(&levels.values);
    let index_diag = diag_real(&(0..d).map(|i| i as f64).collect::<Vec<_>>());

    let proj = |m: ComplexMatrix| project_columns(&m, keep).norm();

    let mut report = RelationReport::new();
    report.insert("klein_squared".into(), proj(&k * &k - &eye));
    report.insert("klein_anticommutes_a".into(), proj(anticommutator(&k, &a)));
    report.insert(
        "klein_anticommutes_adag".into(),
        proj(anticommutator(&k, &ad)),
    );
    report.insert(
        "deformed_commutator".into(),
        proj(commutator(&a, &ad) - (&eye + &k * re(spec.nu))),
    );
    report.insert("number_levels".into(), proj(&n - &level_diag));
    report.insert(
        "number_anticommutator_form".into(),
        proj(anticommutator(&a, &ad) * re(0.5) - (&eye + &k * re(spec.nu)) * re(0.5) - &n),
    );
    report.insert(
        "number_symmetric_literal".into(),
        proj(build_number_symmetric(spec).matrix - &index_diag),
    );
    report
}

/// Fermion realizations built from the Klein operator.
///
/// `psi_literal_*` use `ψ = aK`, `ψ† = a†K` exactly as written; the
/// `psi_plus_*`/`psi_minus_*` entries use the projected variants `ψ_± = aΠ_±`
/// with their adjoints. Values are reported, never asserted: the literal form
/// does not square to zero on the full Fock space.
pub fn klein_fermion_audit(spec: &FockSpec) -> RelationReport {
    let keep = spec.interior();
    let d = spec.cutoff;
    let a = build_annihilator(spec).matrix;
    let ad = a.adjoint();
    let k = build_klein(spec).matrix;
    let eye = identity(d);
    let proj = |m: ComplexMatrix| project_columns(&m, keep).norm();

    let psi = &a * &k;
    let psi_dag = &ad * &k;
    let mut report = RelationReport::new();
    report.insert("psi_literal_sq".into(), proj(&psi * &psi));
    report.insert(
        "psi_literal_car".into(),
        proj(anticommutator(&psi, &psi_dag) - &eye),
    );
    for (name, sign) in [("plus", 1i8), ("minus", -1i8)] {
        let pi = klein_projector(&k, sign);
        let f = &a * &pi;
        let fd = f.adjoint();
        report.insert(format!("psi_{name}_sq"), proj(&f * &f));
        report.insert(
            format!("psi_{name}_car"),
            proj(anticommutator(&f, &fd) - &eye),
        );
    }
    report
}

/// Diagonal of `aKa†K + 1 + aK + a†K` on the first `count` levels.
pub fn bosonized_term_diagonal(spec: &FockSpec, count: usize) -> Vec<f64> {
    let a = build_annihilator(spec).matrix;
    let ad = a.adjoint();
    let k = build_klein(spec).matrix;
    let m = &a * &k * &ad * &k + identity(spec.cutoff) + &a * &k + &ad * &k;
    (0..count.min(spec.cutoff)).map(|n| m[(n, n)].re).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::kron;

    fn basis(d: usize, n: usize) -> nalgebra::DVector<Complex64> {
        let mut v = nalgebra::DVector::zeros(d);
        v[n] = re(1.0);
        v
    }

    #[test]
    fn deformed_level_values() {
        assert_eq!(deformed_level(0, 0.7), 0.0);
        assert!((deformed_level(1, 0.7) - 1.7).abs() < 1e-15);
        assert_eq!(deformed_level(2, 0.7), 2.0);
        assert!((deformed_level(3, 0.7) - 3.7).abs() < 1e-15);
    }

    #[test]
    fn spec_validation() {
        assert!(FockSpec::new(3, 0.0).is_err());
        let err = FockSpec::new(8, -1.5).unwrap_err();
        assert!(err.to_string().contains("ν > −1"));
        assert!(FockSpec::new(8, -1.0).is_err());
        assert!(FockSpec::new(8, f64::NAN).is_err());
        assert!(FockSpec::new(8, -0.99).is_ok());
    }

    #[test]
    fn levels_positive_and_factorial_recurrence() {
        for nu in [-0.9, -0.5, 0.0, 0.7, 2.0] {
            let lv = DeformedLevels::new(20, nu);
            assert_eq!(lv.values[0], 0.0);
            assert!(lv.values[1..].iter().all(|&v| v > 0.0));
            for n in 1..20 {
                let expect = lv.values[n] * lv.factorials[n - 1];
                assert!((lv.factorials[n] - expect).abs() <= 1e-12 * expect.abs());
            }
        }
    }

    #[test]
    fn annihilator_examples() {
        let s = FockSpec::new(4, 0.0).unwrap();
        let a = build_annihilator(&s).matrix;
        assert_eq!(&a * basis(4, 1), basis(4, 0));
        assert_eq!((&a * basis(4, 0)).norm(), 0.0);

        let s = FockSpec::new(4, 0.5).unwrap();
        let a = build_annihilator(&s).matrix;
        let out = &a * basis(4, 1);
        assert!((out[0] - re(1.5f64.sqrt())).norm() < 1e-15);
        assert_eq!(build_annihilator(&s).parity, Parity::Odd);
    }

    #[test]
    fn creator_examples() {
        let s = FockSpec::new(4, 0.0).unwrap();
        assert_eq!(&build_creator(&s).matrix * basis(4, 0), basis(4, 1));
        let s = FockSpec::new(4, 0.5).unwrap();
        let ad = build_creator(&s).matrix;
        assert!(((&ad * basis(4, 0))[1] - re(1.5f64.sqrt())).norm() < 1e-15);
        assert_eq!(ad, build_annihilator(&s).matrix.adjoint());
        assert_eq!((&ad * basis(4, 3)).norm(), 0.0);
    }

    #[test]
    fn klein_examples() {
        let s = FockSpec::new(6, 0.3).unwrap();
        let k = build_klein(&s).matrix;
        assert_eq!(&k * basis(6, 0), basis(6, 0));
        assert_eq!(&k * basis(6, 3), -basis(6, 3));
        assert_eq!(&k * &k, identity(6));
    }

    #[test]
    fn klein_conjugation_flips_ladders_exactly() {
        let s = FockSpec::new(10, 0.7).unwrap();
        let k = build_klein(&s).matrix;
        let a = build_annihilator(&s).matrix;
        assert_eq!(&k * &a * &k, -a.clone());
        assert_eq!(&k * a.adjoint() * &k, -a.adjoint());
    }

    #[test]
    fn number_examples() {
        let s = FockSpec::new(16, 0.0).unwrap();
        let n = build_number(&s).matrix;
        for i in 0..15 {
            assert!((n[(i, i)] - re(i as f64)).norm() < 1e-12);
        }
        let s = FockSpec::new(16, 0.7).unwrap();
        let n = build_number(&s).matrix;
        assert!((n[(1, 1)] - re(1.7)).norm() < 1e-12);
        assert!((n[(2, 2)] - re(2.0)).norm() < 1e-12);
    }

    #[test]
    fn number_spectrum_undeformed() {
        let s = FockSpec::new(4, 0.0).unwrap();
        let vals = crate::linalg::eigvals_hermitian(&build_number(&s).matrix).unwrap();
        for (v, e) in vals.iter().zip([0.0, 1.0, 2.0, 3.0]) {
            assert!((v - e).abs() < 1e-12);
        }
    }

    #[test]
    fn literal_symmetric_number_counts_levels() {
        let s = FockSpec::new(16, 0.7).unwrap();
        let n = build_number_symmetric(&s).matrix;
        for i in 0..14 {
            assert!((n[(i, i)] - re(i as f64)).norm() < 1e-12);
        }
    }

    #[test]
    fn position_momentum_properties() {
        let s = FockSpec::new(40, 0.0).unwrap();
        let (x, p) = build_position_momentum(&s);
        assert!(crate::linalg::hermiticity_defect(&x.matrix) < 1e-12);
        assert!(crate::linalg::hermiticity_defect(&p.matrix) < 1e-12);
        assert!(x.matrix.iter().all(|z| z.im == 0.0));
        assert!(p.matrix.iter().all(|z| z.re == 0.0));
        let comm = commutator(&x.matrix, &p.matrix);
        let target = identity(40) * Complex64::I;
        assert!(project_columns(&(comm - target), 38).norm() < 1e-10);
    }

    #[test]
    fn deformed_canonical_commutator_matches_ladder_oracle() {
        // [x, p]|n⟩ = i([n+1]_ν − [n]_ν)|n⟩, evaluated from the level formula
        let nu = 0.7;
        let d = 24;
        let s = FockSpec::new(d, nu).unwrap();
        let (x, p) = build_position_momentum(&s);
        let comm = commutator(&x.matrix, &p.matrix);
        for n in 0..d - 2 {
            let oracle = deformed_level(n + 1, nu) - deformed_level(n, nu);
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            assert!((oracle - (1.0 + nu * sign)).abs() < 1e-14);
            assert!((comm[(n, n)] - Complex64::new(0.0, oracle)).norm() < 1e-12);
        }
    }

    #[test]
    fn audit_small_residuals() {
        for nu in [-0.5, 0.0, 0.7, 2.0] {
            for d in [8, 32] {
                let s = FockSpec::new(d, nu).unwrap();
                for (name, value) in audit_relations(&s) {
                    assert!(value < 1e-12, "{name} = {value} at D={d}, ν={nu}");
                }
            }
        }
    }

    #[test]
    fn klein_anticommutator_needs_no_projection() {
        let s = FockSpec::new(32, 0.7).unwrap();
        let k = build_klein(&s).matrix;
        let a = build_annihilator(&s).matrix;
        assert!(anticommutator(&k, &a).norm() < 1e-12);
    }

    #[test]
    fn normalization_gives_unit_vectors() {
        let nu = 0.7;
        let d = 20;
        let s = FockSpec::new(d, nu).unwrap();
        let ad = build_creator(&s).matrix;
        let lv = DeformedLevels::new(d, nu);
        let mut v = basis(d, 0);
        for n in 0..=d - 2 {
            let scaled = &v * re(lv.normalization(n));
            assert!((scaled.norm() - 1.0).abs() < 1e-12, "n = {n}");
            v = &ad * v;
        }
    }

    #[test]
    fn fermion_audit_schema_and_values() {
        let s = FockSpec::new(24, 0.7).unwrap();
        let rep = klein_fermion_audit(&s);
        for key in [
            "psi_literal_sq",
            "psi_literal_car",
            "psi_plus_sq",
            "psi_minus_sq",
        ] {
            assert!(rep.contains_key(key), "missing {key}");
        }
        assert!(rep["psi_plus_sq"] < 1e-12);
        assert!(rep["psi_minus_sq"] < 1e-12);
        // (aK)² = −a², so the literal square has the norm of a² on the interior
        let a = build_annihilator(&s).matrix;
        let a2 = project_columns(&(&a * &a), s.interior()).norm();
        assert!((rep["psi_literal_sq"] - a2).abs() < 1e-10);
        assert!(rep["psi_literal_car"] > 1.0);
    }

    #[test]
    fn bosonized_diagonal_oracle() {
        // aKa†K = −aa†, so the diagonal is 1 − [n+1]_ν
        let nu = 0.4;
        let s = FockSpec::new(12, nu).unwrap();
        let diag = bosonized_term_diagonal(&s, 6);
        for (n, v) in diag.iter().enumerate() {
            assert!((v - (1.0 - deformed_level(n + 1, nu))).abs() < 1e-12);
        }
    }

    #[test]
    fn klein_lifts_through_kron() {
        let k = klein_matrix(4);
        let lifted = kron(&k, &identity(2));
        assert_eq!(&lifted * &lifted, identity(8));
    }
}
