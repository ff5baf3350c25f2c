//! Induced representations of finite matrix groups and their systems of
//! imprimitivity, plus the Z2-graded carriers (super forms, super adjoints,
//! truncated symmetric Fock sums) they act on.
//!
//! Groups are realized as explicit lists of unitaries. Elements are identified
//! after rounding entries at `1e-9`, which is unambiguous for the groups used
//! here (entries in `{0, ±1, ±i, ±1/√2, ±i/√2}` up to an eighth root of unity).

use std::collections::{BTreeMap, HashMap, VecDeque};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::linalg::{
    identity, kron, null_space_basis, null_space_dim, re, zeros, ComplexMatrix, ComplexVector,
    GradedOperator, OperatorMeta, Parity,
};
use crate::qubit::{clifford_generators, pauli_group_generators};

pub const DEFAULT_MAX_ORDER: usize = 4096;
const ROUND_SCALE: f64 = 1e9;
const UNITARY_TOL: f64 = 1e-10;
const HOMOMORPHISM_TOL: f64 = 1e-12;
const CHARACTER_TOL: f64 = 1e-9;
const NULL_REL_TOL: f64 = 1e-9;

type ElementKey = Vec<(i64, i64)>;

fn element_key(m: &ComplexMatrix) -> ElementKey {
    m.iter()
        .map(|z| {
            (
                (z.re * ROUND_SCALE).round() as i64,
                (z.im * ROUND_SCALE).round() as i64,
            )
        })
        .collect()
}

#[derive(Debug, Clone)]
pub struct FiniteMatrixGroup {
    /// Elements in BFS order from the identity (index 0).
    pub elements: Vec<ComplexMatrix>,
    /// `mult_table[a][b]` is the index of `elements[a] · elements[b]`.
    pub mult_table: Vec<Vec<usize>>,
    pub generator_indices: Vec<usize>,
    inverses: Vec<usize>,
    lookup: HashMap<ElementKey, usize>,
}

impl FiniteMatrixGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn dim(&self) -> usize {
        self.elements[0].nrows()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult_table[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn index_of(&self, m: &ComplexMatrix) -> Option<usize> {
        if m.shape() != self.elements[0].shape() {
            return None;
        }
        self.lookup.get(&element_key(m)).copied()
    }

    /// Whether `indices` is closed under the group law (finite, so inverses
    /// follow).
    pub fn is_subgroup(&self, indices: &[usize]) -> bool {
        if indices.is_empty() || indices.iter().any(|&i| i >= self.order()) {
            return false;
        }
        let mut member = vec![false; self.order()];
        for &i in indices {
            member[i] = true;
        }
        indices
            .iter()
            .all(|&a| indices.iter().all(|&b| member[self.mul(a, b)]))
    }
}

/// BFS closure of `generators` with a full Cayley table.
pub fn generate_group(generators: &[ComplexMatrix], max_order: usize) -> Result<FiniteMatrixGroup> {
    let first = generators
        .first()
        .ok_or_else(|| Error::Usage("a group needs at least one generator".into()))?;
    let n = first.nrows();
    for g in generators {
        if g.shape() != (n, n) {
            return Err(Error::DimensionMismatch(format!(
                "generator of shape {:?} in a group of {n}x{n} matrices",
                g.shape()
            )));
        }
        let defect = (g.adjoint() * g - identity(n)).norm();
        if defect > UNITARY_TOL {
            return Err(Error::Precondition(format!(
                "generator is not unitary: ‖U†U − I‖ = {defect:.3e}"
            )));
        }
    }

    let mut elements = vec![identity(n)];
    let mut lookup = HashMap::from([(element_key(&elements[0]), 0usize)]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for g in generators {
            let m = g * &elements[i];
            let key = element_key(&m);
            if lookup.contains_key(&key) {
                continue;
            }
            if elements.len() >= max_order {
                return Err(Error::Resource(format!(
                    "group order exceeds the bound of {max_order}"
                )));
            }
            lookup.insert(key, elements.len());
            queue.push_back(elements.len());
            elements.push(m);
        }
    }

    let order = elements.len();
    let mut mult_table = vec![vec![0usize; order]; order];
    for a in 0..order {
        for b in 0..order {
            let key = element_key(&(&elements[a] * &elements[b]));
            mult_table[a][b] = *lookup.get(&key).ok_or_else(|| {
                Error::Internal("product of group elements fell outside the closure".into())
            })?;
        }
    }
    let inverses = (0..order)
        .map(|a| {
            mult_table[a]
                .iter()
                .position(|&p| p == 0)
                .ok_or_else(|| Error::Internal(format!("element {a} has no inverse")))
        })
        .collect::<Result<Vec<_>>>()?;
    let generator_indices = generators.iter().map(|g| lookup[&element_key(g)]).collect();
    Ok(FiniteMatrixGroup {
        elements,
        mult_table,
        generator_indices,
        inverses,
        lookup,
    })
}

/// The `n`-qubit Pauli group with phases, generated by `iI, X_j, Z_j`.
pub fn pauli_group(n: usize) -> Result<FiniteMatrixGroup> {
    generate_group(&pauli_group_generators(n), DEFAULT_MAX_ORDER)
}

/// The single-qubit Clifford group `⟨H, S⟩`, order 192 including the eighth
/// roots of unity it generates.
pub fn clifford1_group() -> Result<FiniteMatrixGroup> {
    generate_group(&clifford_generators(1)?, DEFAULT_MAX_ORDER)
}

/// A unitary representation `σ` of a subgroup `H`, stored per element index.
#[derive(Debug, Clone, PartialEq)]
pub struct SubgroupRep {
    /// Ascending element indices of `H`.
    pub subgroup: Vec<usize>,
    pub sigma: BTreeMap<usize, ComplexMatrix>,
    pub dim_sigma: usize,
}

impl SubgroupRep {
    /// Extend generator images to the subgroup they generate. Fails if the
    /// assignment is not a homomorphism.
    pub fn from_generators(
        group: &FiniteMatrixGroup,
        images: &[(usize, ComplexMatrix)],
    ) -> Result<Self> {
        let dim = images.first().map(|(_, m)| m.nrows()).unwrap_or(1);
        if let Some((i, m)) = images
            .iter()
            .find(|(i, m)| *i >= group.order() || m.shape() != (dim, dim))
        {
            return Err(Error::Usage(format!(
                "bad generator image for element {i} with shape {:?}",
                m.shape()
            )));
        }
        let mut sigma = BTreeMap::from([(0usize, identity(dim))]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(h) = queue.pop_front() {
            for (g, img) in images {
                let target = group.mul(*g, h);
                let value = img * &sigma[&h];
                match sigma.get(&target) {
                    Some(existing) => {
                        let gap = (existing - &value).norm();
                        if gap > HOMOMORPHISM_TOL {
                            return Err(Error::Precondition(format!(
                                "generator images do not define a homomorphism (defect {gap:.3e})"
                            )));
                        }
                    }
                    None => {
                        sigma.insert(target, value);
                        queue.push_back(target);
                    }
                }
            }
        }
        Ok(Self {
            subgroup: sigma.keys().copied().collect(),
            sigma,
            dim_sigma: dim,
        })
    }

    /// Trivial one-dimensional representation of a given subgroup.
    pub fn trivial(group: &FiniteMatrixGroup, subgroup: Vec<usize>) -> Result<Self> {
        let mut subgroup = subgroup;
        subgroup.sort_unstable();
        subgroup.dedup();
        if !group.is_subgroup(&subgroup) {
            return Err(Error::Usage("element set is not a subgroup".into()));
        }
        let sigma = subgroup.iter().map(|&h| (h, identity(1))).collect();
        Ok(Self {
            subgroup,
            sigma,
            dim_sigma: 1,
        })
    }

    /// Stabilizer of the ray through `state` with its eigenvalue character
    /// `h ↦ ⟨v|h|v⟩`.
    pub fn stabilizer_character(group: &FiniteMatrixGroup, state: &ComplexVector) -> Result<Self> {
        if state.len() != group.dim() {
            return Err(Error::DimensionMismatch(format!(
                "state of length {} for a group acting on C^{}",
                state.len(),
                group.dim()
            )));
        }
        if (state.norm() - 1.0).abs() > 1e-9 {
            return Err(Error::Precondition("state must be normalized".into()));
        }
        let mut sigma = BTreeMap::new();
        for (i, g) in group.elements.iter().enumerate() {
            let image = g * state;
            let lambda = state.dotc(&image);
            if (image - state * lambda).norm() < 1e-9 {
                sigma.insert(i, ComplexMatrix::from_element(1, 1, lambda));
            }
        }
        Ok(Self {
            subgroup: sigma.keys().copied().collect(),
            sigma,
            dim_sigma: 1,
        })
    }

    pub fn order(&self) -> usize {
        self.subgroup.len()
    }

    /// `max ‖σ(h₁h₂) − σ(h₁)σ(h₂)‖_F` over all pairs.
    pub fn homomorphism_residual(&self, group: &FiniteMatrixGroup) -> Result<f64> {
        let mut worst = 0.0f64;
        for &a in &self.subgroup {
            for &b in &self.subgroup {
                let ab = self.sigma.get(&group.mul(a, b)).ok_or_else(|| {
                    Error::Usage("subgroup is not closed under the group law".into())
                })?;
                worst = worst.max((ab - &self.sigma[&a] * &self.sigma[&b]).norm());
            }
        }
        Ok(worst)
    }
}

/// Left cosets `gH` with a chosen representative per coset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetSpace {
    pub cosets: Vec<Vec<usize>>,
    pub transversal: Vec<usize>,
    /// `coset_of[g]` is the coset containing element `g`.
    pub coset_of: Vec<usize>,
}

impl CosetSpace {
    pub fn len(&self) -> usize {
        self.cosets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cosets.is_empty()
    }

    /// Same cosets with other representatives; each must lie in its coset.
    pub fn with_transversal(&self, transversal: Vec<usize>) -> Result<Self> {
        if transversal.len() != self.cosets.len() {
            return Err(Error::Usage(format!(
                "need {} representatives, got {}",
                self.cosets.len(),
                transversal.len()
            )));
        }
        for (c, &t) in transversal.iter().enumerate() {
            if self.coset_of.get(t) != Some(&c) {
                return Err(Error::Usage(format!("element {t} is not in coset {c}")));
            }
        }
        Ok(Self {
            transversal,
            ..self.clone()
        })
    }
}

/// Cosets in order of their least element; that element is the representative.
pub fn coset_space(group: &FiniteMatrixGroup, rep: &SubgroupRep) -> Result<CosetSpace> {
    if !group.is_subgroup(&rep.subgroup) {
        return Err(Error::Usage("element set is not a subgroup".into()));
    }
    let unassigned = usize::MAX;
    let mut coset_of = vec![unassigned; group.order()];
    let mut cosets = Vec::new();
    let mut transversal = Vec::new();
    for g in 0..group.order() {
        if coset_of[g] != unassigned {
            continue;
        }
        let mut members: Vec<usize> = rep.subgroup.iter().map(|&h| group.mul(g, h)).collect();
        members.sort_unstable();
        for &m in &members {
            coset_of[m] = cosets.len();
        }
        transversal.push(g);
        cosets.push(members);
    }
    Ok(CosetSpace {
        cosets,
        transversal,
        coset_of,
    })
}

/// Induced representation on `⊕_{cosets} V_σ`, with its projection-valued
/// measure on the coset space.
#[derive(Debug, Clone)]
pub struct InducedRep {
    pub cosets: CosetSpace,
    pub dim_sigma: usize,
    /// `unitaries[g]` for every group element index `g`.
    pub unitaries: Vec<ComplexMatrix>,
}

impl InducedRep {
    pub fn dim(&self) -> usize {
        self.cosets.len() * self.dim_sigma
    }

    /// Block projector onto the cosets in `subset`.
    pub fn pvm(&self, subset: &[usize]) -> ComplexMatrix {
        let mut p = zeros(self.dim(), self.dim());
        for &c in subset {
            for k in 0..self.dim_sigma {
                let i = c * self.dim_sigma + k;
                p[(i, i)] = re(1.0);
            }
        }
        p
    }

    pub fn generator_unitaries(&self, group: &FiniteMatrixGroup) -> Vec<ComplexMatrix> {
        group
            .generator_indices
            .iter()
            .map(|&g| self.unitaries[g].clone())
            .collect()
    }
}

pub fn induce(group: &FiniteMatrixGroup, rep: &SubgroupRep) -> Result<InducedRep> {
    induce_with(group, rep, coset_space(group, rep)?)
}

/// Induction with a caller-supplied transversal. The cocycle
/// `h(g, c) = τ(g·c)⁻¹ g τ(c)` fills block `[g·c, c]` of `U_g` with `σ(h)`.
pub fn induce_with(
    group: &FiniteMatrixGroup,
    rep: &SubgroupRep,
    cosets: CosetSpace,
) -> Result<InducedRep> {
    let ds = rep.dim_sigma;
    let dim = cosets.len() * ds;
    let mut unitaries = Vec::with_capacity(group.order());
    for g in 0..group.order() {
        let mut u = zeros(dim, dim);
        for (c, &tc) in cosets.transversal.iter().enumerate() {
            let moved = group.mul(g, tc);
            let target = cosets.coset_of[moved];
            let h = group.mul(group.inverse(cosets.transversal[target]), moved);
            let block = rep.sigma.get(&h).ok_or_else(|| {
                Error::Internal(format!("cocycle value {h} lies outside the subgroup"))
            })?;
            u.view_mut((target * ds, c * ds), (ds, ds)).copy_from(block);
        }
        unitaries.push(u);
    }
    Ok(InducedRep {
        cosets,
        dim_sigma: ds,
        unitaries,
    })
}

fn imprimitivity_residual(rep: &InducedRep, group: &FiniteMatrixGroup, elements: &[usize]) -> f64 {
    let mut worst = 0.0f64;
    for &g in elements {
        let u = &rep.unitaries[g];
        let ud = u.adjoint();
        for (c, &tc) in rep.cosets.transversal.iter().enumerate() {
            let moved = rep.cosets.coset_of[group.mul(g, tc)];
            let lhs = u * rep.pvm(&[c]) * &ud;
            worst = worst.max((lhs - rep.pvm(&[moved])).norm());
        }
    }
    worst
}

/// `max ‖U_g P_E U_g⁻¹ − P_{g·E}‖_F` over generators `g` and singletons `E`.
pub fn check_imprimitivity(rep: &InducedRep, group: &FiniteMatrixGroup) -> f64 {
    imprimitivity_residual(rep, group, &group.generator_indices)
}

/// [`check_imprimitivity`] over every group element.
pub fn check_imprimitivity_all(rep: &InducedRep, group: &FiniteMatrixGroup) -> f64 {
    let all: Vec<usize> = (0..group.order()).collect();
    imprimitivity_residual(rep, group, &all)
}

/// `max ‖U_{ab} − U_a U_b‖_F` over all pairs.
pub fn homomorphism_residual(group: &FiniteMatrixGroup, unitaries: &[ComplexMatrix]) -> f64 {
    let mut worst = 0.0f64;
    for a in 0..group.order() {
        for b in 0..group.order() {
            let gap = (&unitaries[group.mul(a, b)] - &unitaries[a] * &unitaries[b]).norm();
            worst = worst.max(gap);
        }
    }
    worst
}

/// Dimension of `{T : T U = U T for all U}`; 1 certifies irreducibility.
pub fn commutant_dimension(unitaries: &[ComplexMatrix]) -> usize {
    let Some(first) = unitaries.first() else {
        return 0;
    };
    let n = first.nrows();
    let eye = identity(n);
    let mut stacked = zeros(unitaries.len() * n * n, n * n);
    for (k, u) in unitaries.iter().enumerate() {
        // column-stacked vec: vec(UT − TU) = (I ⊗ U − Uᵀ ⊗ I) vec(T)
        let block = kron(&eye, u) - kron(&u.transpose(), &eye);
        stacked
            .view_mut((k * n * n, 0), (n * n, n * n))
            .copy_from(&block);
    }
    null_space_dim(&stacked, NULL_REL_TOL)
}

pub fn character_table(unitaries: &[ComplexMatrix]) -> Vec<Complex64> {
    unitaries.iter().map(|u| u.trace()).collect()
}

/// Whether two representations of the same group, indexed alike, have equal
/// characters within `1e-9`.
pub fn character_equivalent(a: &[ComplexMatrix], b: &[ComplexMatrix]) -> bool {
    a.len() == b.len()
        && character_table(a)
            .iter()
            .zip(character_table(b))
            .all(|(x, y)| (x - y).norm() <= CHARACTER_TOL)
}

/// SHA-256 over the character table rounded at `1e-9`, hex encoded.
pub fn character_hash(table: &[Complex64]) -> String {
    let mut hasher = Sha256::new();
    for z in table {
        let r = (z.re * ROUND_SCALE).round() as i64;
        let i = (z.im * ROUND_SCALE).round() as i64;
        hasher.update(r.to_le_bytes());
        hasher.update(i.to_le_bytes());
    }
    hasher
        .finalize()
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

/// Summary of one induction, shaped for reports.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InductionSummary {
    pub group_order: usize,
    pub subgroup_order: usize,
    pub cosets: usize,
    pub dim_sigma: usize,
    pub dim: usize,
    pub imprimitivity_residual: f64,
    pub imprimitivity_residual_all: f64,
    pub homomorphism_residual: f64,
    pub commutant_dimension: usize,
    pub character_hash: String,
    /// Character agreement with the group's own matrices, when the dimensions
    /// match.
    pub equivalent_to_defining: bool,
}

pub fn summarize_induction(
    group: &FiniteMatrixGroup,
    rep: &SubgroupRep,
) -> Result<InductionSummary> {
    let induced = induce(group, rep)?;
    Ok(InductionSummary {
        group_order: group.order(),
        subgroup_order: rep.order(),
        cosets: induced.cosets.len(),
        dim_sigma: induced.dim_sigma,
        dim: induced.dim(),
        imprimitivity_residual: check_imprimitivity(&induced, group),
        imprimitivity_residual_all: check_imprimitivity_all(&induced, group),
        homomorphism_residual: homomorphism_residual(group, &induced.unitaries),
        commutant_dimension: commutant_dimension(&induced.generator_unitaries(group)),
        character_hash: character_hash(&character_table(&induced.unitaries)),
        equivalent_to_defining: character_equivalent(&induced.unitaries, &group.elements),
    })
}

/// Bell-stabilizer subgroup `⟨iI, X₁X₂, Z₁Z₂⟩` of the two-qubit Pauli group
/// with the character fixing `Φ⁺`: `σ(iI) = i`, `σ(X₁X₂) = σ(Z₁Z₂) = 1`.
pub fn bell_character(group: &FiniteMatrixGroup) -> Result<SubgroupRep> {
    let find = |word: &str| -> Result<usize> {
        let m = word.parse::<crate::qubit::PauliWord>()?.matrix();
        group
            .index_of(&m)
            .ok_or_else(|| Error::Usage(format!("{word} is not an element of the group")))
    };
    let one = |z: Complex64| ComplexMatrix::from_element(1, 1, z);
    SubgroupRep::from_generators(
        group,
        &[
            (find("+iII")?, one(Complex64::new(0.0, 1.0))),
            (find("+XX")?, one(re(1.0))),
            (find("+ZZ")?, one(re(1.0))),
        ],
    )
}

/// A Z2-graded space `C^{even} ⊕ C^{odd}` in an adapted coordinate basis, with
/// the super form `⟨x, y⟩ = x* G y`, `G = diag(1 on even, i on odd)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SuperCarrier {
    pub even_dim: usize,
    pub odd_dim: usize,
    /// Parity of each coordinate.
    pub parity: Vec<Parity>,
    /// Columns are the adapted basis vectors written in the ambient space.
    pub basis: ComplexMatrix,
}

impl SuperCarrier {
    fn from_parities(parity: Vec<Parity>, basis: ComplexMatrix) -> Self {
        let odd_dim = parity.iter().filter(|p| **p == Parity::Odd).count();
        Self {
            even_dim: parity.len() - odd_dim,
            odd_dim,
            parity,
            basis,
        }
    }

    pub fn dim(&self) -> usize {
        self.parity.len()
    }

    /// The grading involution `diag(±1)`.
    pub fn grading(&self) -> ComplexMatrix {
        let signs: Vec<f64> = self.parity.iter().map(|p| p.sign()).collect();
        crate::linalg::diag_real(&signs)
    }

    /// `G = diag(1 on even, i on odd)`.
    pub fn form_weights(&self) -> Vec<Complex64> {
        self.parity
            .iter()
            .map(|p| match p {
                Parity::Even => re(1.0),
                Parity::Odd => Complex64::new(0.0, 1.0),
            })
            .collect()
    }

    pub fn super_form(&self, x: &ComplexVector, y: &ComplexVector) -> Complex64 {
        self.form_weights()
            .iter()
            .enumerate()
            .map(|(r, w)| x[r].conj() * w * y[r])
            .sum()
    }

    /// Projector onto the even or odd coordinates.
    pub fn parity_projector(&self, parity: Parity) -> ComplexMatrix {
        let diag: Vec<f64> = self
            .parity
            .iter()
            .map(|p| if *p == parity { 1.0 } else { 0.0 })
            .collect();
        crate::linalg::diag_real(&diag)
    }
}

/// `C² ⊗ C²` split into its symmetric (even, dim 3) and antisymmetric
/// (odd, dim 1) parts.
pub fn graded_carrier(n: usize) -> Result<SuperCarrier> {
    if n != 2 {
        return Err(Error::Usage(format!(
            "graded carrier is built for n = 2 only, got {n}"
        )));
    }
    let s = std::f64::consts::FRAC_1_SQRT_2;
    #[rustfmt::skip]
    let basis = crate::linalg::from_rows(4, 4, &[
        re(1.0), re(0.0), re(0.0), re(0.0),
        re(0.0), re(s),   re(0.0), re(s),
        re(0.0), re(s),   re(0.0), re(-s),
        re(0.0), re(0.0), re(1.0), re(0.0),
    ]);
    let parity = vec![Parity::Even, Parity::Even, Parity::Even, Parity::Odd];
    Ok(SuperCarrier::from_parities(parity, basis))
}

/// `(1 + SWAP)/2` and `(1 − SWAP)/2` on `C² ⊗ C²`.
pub fn symmetrizers() -> (ComplexMatrix, ComplexMatrix) {
    let mut swap = zeros(4, 4);
    for i in 0..2 {
        for j in 0..2 {
            swap[(2 * j + i, 2 * i + j)] = re(1.0);
        }
    }
    let eye = identity(4);
    ((&eye + &swap) * re(0.5), (&eye - &swap) * re(0.5))
}

/// `⊕_{i=1}^{n} Sym^i(C²)`, graded by `(−1)^Λ` with `Λ` the number of
/// excitations in each symmetric-power basis vector.
pub fn bebe_fock(n: usize) -> Result<SuperCarrier> {
    if !(1..=6).contains(&n) {
        return Err(Error::Usage(format!("levels must be in 1..=6, got {n}")));
    }
    let parity: Vec<Parity> = (1..=n)
        .flat_map(|i| (0..=i).map(|k| Parity::from_bit((k % 2) as u8)))
        .collect();
    let dim = parity.len();
    Ok(SuperCarrier::from_parities(parity, identity(dim)))
}

/// Super adjoint: the operator `T†` with
/// `⟨Tx, y⟩ = (−1)^{p(T)p(x)} ⟨x, T†y⟩` for homogeneous `x`.
pub fn super_adjoint(t: &GradedOperator, carrier: &SuperCarrier) -> Result<GradedOperator> {
    let n = carrier.dim();
    if t.matrix.shape() != (n, n) {
        return Err(Error::DimensionMismatch(format!(
            "operator of shape {:?} on a {n}-dimensional carrier",
            t.matrix.shape()
        )));
    }
    let defect = t.parity_defect(&carrier.grading());
    if defect > 1e-12 * t.matrix.norm().max(1.0) {
        return Err(Error::Precondition(format!(
            "operator has no definite parity on this carrier (defect {defect:.3e})"
        )));
    }
    let weights = carrier.form_weights();
    let tg = t.matrix.adjoint()
        * ComplexMatrix::from_diagonal(&ComplexVector::from_vec(weights.clone()));
    let mut out = zeros(n, n);
    for r in 0..n {
        let odd_pair = t.parity == Parity::Odd && carrier.parity[r] == Parity::Odd;
        let sign = if odd_pair { -1.0 } else { 1.0 };
        let factor = re(sign) / weights[r];
        for col in 0..n {
            out[(r, col)] = tg[(r, col)] * factor;
        }
    }
    Ok(GradedOperator::new(
        out,
        t.parity,
        OperatorMeta {
            label: format!("{}^sdag", t.meta.label),
            ..t.meta.clone()
        },
    ))
}

/// Basis of `{v : Hv = 0, Pv = v}`: a fiber `P` intersected with the numerical
/// kernel of `H`.
pub fn kernel_restricted_fiber(
    h: &ComplexMatrix,
    fiber: &ComplexMatrix,
    rel_tol: f64,
) -> Result<ComplexMatrix> {
    let n = h.nrows();
    if h.shape() != (n, n) || fiber.shape() != (n, n) {
        return Err(Error::DimensionMismatch(format!(
            "H {:?} and fiber projector {:?} must be square and equal",
            h.shape(),
            fiber.shape()
        )));
    }
    let mut stacked = zeros(2 * n, n);
    stacked.view_mut((0, 0), (n, n)).copy_from(h);
    stacked
        .view_mut((n, 0), (n, n))
        .copy_from(&(identity(n) - fiber));
    Ok(null_space_basis(&stacked, rel_tol))
}
