//! Dense complex linear algebra shared by every operator construction.
//!
//! All matrices are `nalgebra::DMatrix<Complex64>`. Operators that carry a
//! Z2 grading are wrapped in [`GradedOperator`], which pairs the matrix with
//! its parity and a small amount of provenance metadata.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type ComplexMatrix = DMatrix<Complex64>;
pub type ComplexVector = DVector<Complex64>;

/// Relative tolerance for the Hermiticity precondition of [`eig_hermitian`].
pub const HERMITIAN_TOL: f64 = 1e-10;

/// Default cap on the dimension of any dense operator, overridable through
/// the `SUPERFOCK_MAX_DIM` environment variable.
pub const DEFAULT_MAX_DIM: usize = 4096;

#[inline]
pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[inline]
pub fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

pub fn identity(n: usize) -> ComplexMatrix {
    ComplexMatrix::identity(n, n)
}

pub fn zeros(rows: usize, cols: usize) -> ComplexMatrix {
    ComplexMatrix::zeros(rows, cols)
}

pub fn diag_real(values: &[f64]) -> ComplexMatrix {
    let n = values.len();
    ComplexMatrix::from_fn(n, n, |i, j| {
        if i == j {
            re(values[i])
        } else {
            Complex64::ZERO
        }
    })
}

/// Build a matrix from row-major real/imag pairs. Panics on a length mismatch,
/// so only use it for literals.
pub fn from_rows(rows: usize, cols: usize, entries: &[Complex64]) -> ComplexMatrix {
    assert_eq!(
        entries.len(),
        rows * cols,
        "literal matrix has wrong entry count"
    );
    ComplexMatrix::from_row_slice(rows, cols, entries)
}

/// Maximum dense dimension permitted in this process.
pub fn max_dense_dim() -> usize {
    std::env::var("SUPERFOCK_MAX_DIM")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&v| v > 0)
        .unwrap_or(DEFAULT_MAX_DIM)
}

pub fn check_dim_limit(dim: usize, what: &str) -> Result<()> {
    let limit = max_dense_dim();
    if dim > limit {
        return Err(Error::Resource(format!(
            "{what} needs a dense dimension of {dim}, above the limit {limit} (SUPERFOCK_MAX_DIM)"
        )));
    }
    Ok(())
}

pub fn frobenius(m: &ComplexMatrix) -> f64 {
    m.norm()
}

pub fn all_finite(m: &ComplexMatrix) -> bool {
    m.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

/// Frobenius norm of `A - A†`.
pub fn hermiticity_defect(m: &ComplexMatrix) -> f64 {
    (m - m.adjoint()).norm()
}

fn require_square(m: &ComplexMatrix, what: &str) -> Result<()> {
    if m.nrows() != m.ncols() {
        return Err(Error::DimensionMismatch(format!(
            "{what} must be square, got {}x{}",
            m.nrows(),
            m.ncols()
        )));
    }
    Ok(())
}

fn require_same_shape(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<()> {
    if a.shape() != b.shape() {
        return Err(Error::DimensionMismatch(format!(
            "operands have shapes {:?} and {:?}",
            a.shape(),
            b.shape()
        )));
    }
    Ok(())
}

pub fn matmul(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    if a.ncols() != b.nrows() {
        return Err(Error::DimensionMismatch(format!(
            "cannot multiply {}x{} by {}x{}",
            a.nrows(),
            a.ncols(),
            b.nrows(),
            b.ncols()
        )));
    }
    Ok(a * b)
}

/// Kronecker product; block (i, j) of the result is `a[i, j] * b`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    a.kronecker(b)
}

/// Kronecker product of a list of factors, leftmost factor outermost.
pub fn kron_all<'a, I>(factors: I) -> ComplexMatrix
where
    I: IntoIterator<Item = &'a ComplexMatrix>,
{
    factors
        .into_iter()
        .fold(identity(1), |acc, f| acc.kronecker(f))
}

pub fn commutator(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    a * b - b * a
}

pub fn anticommutator(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    a * b + b * a
}

/// Keep only the rows and columns listed in `indices` (in that order).
pub fn compress(m: &ComplexMatrix, indices: &[usize]) -> ComplexMatrix {
    let n = indices.len();
    ComplexMatrix::from_fn(n, n, |i, j| m[(indices[i], indices[j])])
}

/// Leading principal `n x n` block.
pub fn leading_block(m: &ComplexMatrix, n: usize) -> ComplexMatrix {
    m.view((0, 0), (n, n)).into_owned()
}

/// Right-multiply by the projector onto the first `keep` basis vectors, i.e.
/// zero every column at index `keep` or above.
pub fn project_columns(m: &ComplexMatrix, keep: usize) -> ComplexMatrix {
    let mut out = m.clone();
    for j in keep..m.ncols() {
        out.column_mut(j).fill(Complex64::ZERO);
    }
    out
}

/// Z2 parity of an operator or vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_bit(bit: u8) -> Self {
        if bit.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn bit(self) -> u8 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    /// Parity of a product: the sum of the two parities mod 2.
    pub fn combine(self, other: Parity) -> Parity {
        Parity::from_bit(self.bit() ^ other.bit())
    }

    /// `+1` for even, `-1` for odd.
    pub fn sign(self) -> f64 {
        match self {
            Parity::Even => 1.0,
            Parity::Odd => -1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct OperatorMeta {
    pub label: String,
    pub cutoff: Option<usize>,
    pub nu: Option<f64>,
}

impl OperatorMeta {
    pub fn labelled(label: impl Into<String>) -> Self {
        Self {
            label: label.into(),
            ..Self::default()
        }
    }
}

/// A square matrix with a definite Z2 parity.
#[derive(Debug, Clone, PartialEq)]
pub struct GradedOperator {
    pub matrix: ComplexMatrix,
    pub parity: Parity,
    pub meta: OperatorMeta,
}

impl GradedOperator {
    pub fn new(matrix: ComplexMatrix, parity: Parity, meta: OperatorMeta) -> Self {
        Self {
            matrix,
            parity,
            meta,
        }
    }

    pub fn even(matrix: ComplexMatrix, label: impl Into<String>) -> Self {
        Self::new(matrix, Parity::Even, OperatorMeta::labelled(label))
    }

    pub fn odd(matrix: ComplexMatrix, label: impl Into<String>) -> Self {
        Self::new(matrix, Parity::Odd, OperatorMeta::labelled(label))
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn adjoint(&self) -> Self {
        Self {
            matrix: self.matrix.adjoint(),
            parity: self.parity,
            meta: OperatorMeta {
                label: format!("{}^dag", self.meta.label),
                ..self.meta.clone()
            },
        }
    }

    pub fn scaled(&self, factor: Complex64) -> Self {
        Self {
            matrix: &self.matrix * factor,
            parity: self.parity,
            meta: self.meta.clone(),
        }
    }

    /// Frobenius norm of `G M G - s M` where `s = +1` for even and `-1` for odd,
    /// measured against the supplied grading involution `G`.
    pub fn parity_defect(&self, grading: &ComplexMatrix) -> f64 {
        let conj = grading * &self.matrix * grading;
        (conj - &self.matrix * re(self.parity.sign())).norm()
    }
}

/// Graded bracket `[a, b] = ab - (-1)^{p(a)p(b)} ba`: a commutator unless both
/// operands are odd, in which case it is an anticommutator.
pub fn graded_bracket(a: &GradedOperator, b: &GradedOperator) -> Result<GradedOperator> {
    require_square(&a.matrix, "left operand")?;
    require_square(&b.matrix, "right operand")?;
    require_same_shape(&a.matrix, &b.matrix)?;
    let both_odd = a.parity == Parity::Odd && b.parity == Parity::Odd;
    let matrix = if both_odd {
        anticommutator(&a.matrix, &b.matrix)
    } else {
        commutator(&a.matrix, &b.matrix)
    };
    Ok(GradedOperator::new(
        matrix,
        a.parity.combine(b.parity),
        OperatorMeta {
            label: format!("[{}, {}]", a.meta.label, b.meta.label),
            cutoff: a.meta.cutoff,
            nu: a.meta.nu,
        },
    ))
}

#[derive(Debug, Clone)]
pub struct EigenResult {
    /// Ascending eigenvalues.
    pub values: Vec<f64>,
    /// Unit-norm eigenvectors, column `k` belongs to `values[k]`.
    pub vectors: ComplexMatrix,
    /// Frobenius norm of the correction `(A + A†)/2 - A` applied before solving.
    pub symmetrization_correction: f64,
}

/// Full eigendecomposition of a Hermitian matrix.
///
/// The input is symmetrized before decomposition; the size of that correction
/// is returned in [`EigenResult::symmetrization_correction`]. Inputs whose
/// anti-Hermitian part exceeds `1e-10 * max(1, ‖A‖_F)` are rejected.
pub fn eig_hermitian(a: &ComplexMatrix) -> Result<EigenResult> {
    require_square(a, "eig_hermitian input")?;
    let norm = a.norm();
    let defect = hermiticity_defect(a);
    if defect > HERMITIAN_TOL * norm.max(1.0) {
        return Err(Error::Precondition(format!(
            "matrix is not Hermitian: ‖A - A†‖_F = {defect:.3e} (norm {norm:.3e})"
        )));
    }
    if !all_finite(a) {
        return Err(Error::Precondition("matrix has non-finite entries".into()));
    }
    let sym = (a + a.adjoint()) * re(0.5);
    let correction = (&sym - a).norm();
    let n = sym.nrows();
    if n == 0 {
        return Ok(EigenResult {
            values: Vec::new(),
            vectors: zeros(0, 0),
            symmetrization_correction: correction,
        });
    }
    let eig = sym.symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    // stable sort keeps solver order among exact ties
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut vectors = zeros(n, n);
    for (k, &i) in order.iter().enumerate() {
        let col = eig.eigenvectors.column(i);
        let nrm = col.norm();
        vectors.set_column(k, &(col / re(nrm)));
    }
    Ok(EigenResult {
        values,
        vectors,
        symmetrization_correction: correction,
    })
}

/// Eigenvalues only, ascending.
pub fn eigvals_hermitian(a: &ComplexMatrix) -> Result<Vec<f64>> {
    require_square(a, "eigvals_hermitian input")?;
    let defect = hermiticity_defect(a);
    if defect > HERMITIAN_TOL * a.norm().max(1.0) {
        return Err(Error::Precondition(format!(
            "matrix is not Hermitian: ‖A - A†‖_F = {defect:.3e}"
        )));
    }
    let sym = (a + a.adjoint()) * re(0.5);
    let mut values: Vec<f64> = sym.symmetric_eigenvalues().iter().copied().collect();
    values.sort_by(f64::total_cmp);
    Ok(values)
}

/// Group ascending values into runs whose members lie within `gap_tol` of the
/// first member of the run; returns the run lengths.
pub fn group_degeneracies(values: &[f64], gap_tol: f64) -> Vec<usize> {
    let mut groups = Vec::new();
    let mut i = 0;
    while i < values.len() {
        let anchor = values[i];
        let mut j = i + 1;
        while j < values.len() && (values[j] - anchor).abs() <= gap_tol {
            j += 1;
        }
        groups.push(j - i);
        i = j;
    }
    groups
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpanProjection {
    pub coefficients: Vec<Complex64>,
    /// ‖M − Σ cᵢ Bᵢ‖_F, recomputed from the coefficients.
    pub residual: f64,
}

/// Least-squares projector onto the span of a fixed list of operators, with
/// the factorization computed once and reused across many targets.
pub struct SpanProjector {
    basis: Vec<ComplexMatrix>,
    scales: Vec<f64>,
    svd: nalgebra::SVD<Complex64, nalgebra::Dyn, nalgebra::Dyn>,
    cutoff: f64,
}

impl SpanProjector {
    pub fn new(basis: Vec<ComplexMatrix>) -> Result<Self> {
        let first = basis
            .first()
            .ok_or_else(|| Error::Usage("span basis must not be empty".into()))?;
        let shape = first.shape();
        if let Some(bad) = basis.iter().find(|b| b.shape() != shape) {
            return Err(Error::DimensionMismatch(format!(
                "basis operators have shapes {:?} and {:?}",
                shape,
                bad.shape()
            )));
        }
        let len = shape.0 * shape.1;
        let k = basis.len();
        let scales: Vec<f64> = basis.iter().map(|b| b.norm()).collect();
        let mut design = zeros(len, k);
        for (col, (b, &s)) in basis.iter().zip(&scales).enumerate() {
            if s > 0.0 {
                for (row, z) in b.iter().enumerate() {
                    design[(row, col)] = z / s;
                }
            }
        }
        let svd = design.svd(true, true);
        let smax = svd.singular_values.max();
        Ok(Self {
            basis,
            scales,
            cutoff: smax * 1e-12,
            svd,
        })
    }

    pub fn basis(&self) -> &[ComplexMatrix] {
        &self.basis
    }

    pub fn project(&self, m: &ComplexMatrix) -> Result<SpanProjection> {
        let shape = self.basis[0].shape();
        require_same_shape(m, &self.basis[0]).map_err(|_| {
            Error::DimensionMismatch(format!(
                "target has shape {:?}, basis has {:?}",
                m.shape(),
                shape
            ))
        })?;
        let rhs = ComplexVector::from_iterator(m.len(), m.iter().copied());
        let sol = self
            .svd
            .solve(&rhs, self.cutoff)
            .map_err(|e| Error::Internal(format!("least-squares solve failed: {e}")))?;
        let coefficients: Vec<Complex64> = sol
            .iter()
            .zip(&self.scales)
            .map(|(x, &s)| if s > 0.0 { x / s } else { Complex64::ZERO })
            .collect();
        let residual = span_residual(m, &self.basis, &coefficients);
        Ok(SpanProjection {
            coefficients,
            residual,
        })
    }
}

/// ‖M − Σ cᵢ Bᵢ‖_F.
pub fn span_residual(
    m: &ComplexMatrix,
    basis: &[ComplexMatrix],
    coefficients: &[Complex64],
) -> f64 {
    let mut rest = m.clone();
    for (b, &cf) in basis.iter().zip(coefficients) {
        rest -= b * cf;
    }
    rest.norm()
}

pub fn project_onto_span(m: &ComplexMatrix, basis: &[ComplexMatrix]) -> Result<SpanProjection> {
    SpanProjector::new(basis.to_vec())?.project(m)
}

/// Dimension of the null space of `m`, counting singular values at or below
/// `rel_tol * σ_max` (and every missing column when `m` is wide).
pub fn null_space_dim(m: &ComplexMatrix, rel_tol: f64) -> usize {
    let (rows, cols) = m.shape();
    if cols == 0 {
        return 0;
    }
    if rows == 0 {
        return cols;
    }
    let sv = m.clone().svd(false, false).singular_values;
    let smax = sv.max();
    let cut = rel_tol * smax.max(f64::MIN_POSITIVE);
    let small = sv.iter().filter(|&&s| s <= cut).count();
    small + cols.saturating_sub(rows)
}

/// Orthonormal basis of the null space of `m` (columns of the result).
pub fn null_space_basis(m: &ComplexMatrix, rel_tol: f64) -> ComplexMatrix {
    let cols = m.ncols();
    // pad to at least square so the SVD exposes the full right singular basis
    let padded = if m.nrows() < cols {
        let mut p = zeros(cols, cols);
        p.view_mut((0, 0), m.shape()).copy_from(m);
        p
    } else {
        m.clone()
    };
    let svd = padded.svd(false, true);
    let v_t = svd.v_t.expect("requested right singular vectors");
    let smax = svd.singular_values.max();
    let cut = rel_tol * smax.max(f64::MIN_POSITIVE);
    let picked: Vec<usize> = (0..svd.singular_values.len())
        .filter(|&i| svd.singular_values[i] <= cut)
        .collect();
    let mut out = zeros(cols, picked.len());
    for (k, &i) in picked.iter().enumerate() {
        let row = v_t.row(i);
        for r in 0..cols {
            out[(r, k)] = row[r].conj();
        }
    }
    out
}
