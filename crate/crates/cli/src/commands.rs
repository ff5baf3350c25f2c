//! Command dispatch. Each command returns results, named checks and, for
//! spectra, the rows of the eigenvalue table.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use superfock_core::fock::{
    audit_relations, bosonized_term_diagonal, klein_fermion_audit, FockSpec,
};
use superfock_core::linalg::{
    anticommutator, hermiticity_defect, identity, ComplexMatrix, ComplexVector, GradedOperator,
    OperatorMeta, Parity,
};
use superfock_core::mackey::{
    bebe_fock, bell_character, clifford1_group, graded_carrier, pauli_group, summarize_induction,
    super_adjoint, FiniteMatrixGroup, SubgroupRep, SuperCarrier,
};
use superfock_core::osp::{adjoint_consistency, build_generators, closure_report};
use superfock_core::qubit::{
    all_pauli_words, bell_states, canonical_phase, clifford_generators, clifford_membership, embed,
    fermion_parity, hadamard, jordan_wigner, matrix_units, pauli_group_generators, pauli_mul,
    pauli_x, pauli_z, phase_s, projective_orbit, stabilizer_states, t_gate, StabilizerGroupSpec,
    DEFAULT_ORBIT_BOUND,
};
use superfock_core::susy::{
    base_level, build_supercharge_1d, build_wzqm_hamiltonian, pair_spectrum,
    partner_identity_residual, partner_pairing_check, project_supercharge_unchecked, wzqm_spectrum,
    SpectrumOptions, SpectrumReport, TowerLevel,
};
use superfock_core::{Error, Result};

use crate::config::{CommandKind, GroupName, Model, RunConfig, StateName, SubgroupName, Suite};
use crate::report::{Check, CsvRow, Outcome};

/// Seed for the random vector samples drawn by the mackey suite.
pub const SAMPLE_SEED: u64 = 0;

pub fn dispatch(config: &RunConfig) -> Result<Outcome> {
    match config.command {
        CommandKind::Spectrum => spectrum(config),
        CommandKind::Verify => verify(config),
        CommandKind::Tower => tower(config),
        CommandKind::Induce => induce(config),
        CommandKind::Orbit => orbit(config),
    }
}

fn spectrum_options(config: &RunConfig) -> SpectrumOptions {
    SpectrumOptions {
        e_tol: config.e_tol,
        gap_tol: config.gap_tol,
        retain: config.levels,
    }
}

fn csv_rows(spec: &SpectrumReport) -> Vec<CsvRow> {
    let mut rows = Vec::with_capacity(spec.eigenvalues.len());
    let mut index = 0;
    for &size in &spec.degeneracies {
        for _ in 0..size {
            rows.push(CsvRow {
                index,
                eigenvalue: spec.eigenvalues[index],
                degeneracy: size,
                sector: spec.sector_labels.as_ref().map(|s| s[index]),
            });
            index += 1;
        }
    }
    rows
}

fn sorted(values: &[f64]) -> bool {
    values.windows(2).all(|w| w[0] <= w[1])
}

fn spectrum(config: &RunConfig) -> Result<Outcome> {
    let mut out = Outcome::default();
    let opts = spectrum_options(config);
    let report = match config.model {
        Model::HarmonicSusy | Model::Susy1d => {
            let pair = build_supercharge_1d(&config.model_params())?;
            out.check(
                "nilpotency",
                Check::below(pair.nilpotency_residual(), 1e-13, "Q² = 0"),
            );
            out.check(
                "decomposition",
                Check::below(pair.decomposition_residual(), 1e-12, "H = QQ† + Q†Q"),
            );
            out.check(
                "hermiticity",
                Check::below(hermiticity_defect(&pair.h.matrix), 1e-10, "H = H†"),
            );
            out.result("working_levels", pair.working);
            pair_spectrum(&pair, &opts)?
        }
        Model::Wzqm => {
            let model = build_wzqm_hamiltonian(&config.model_params())?;
            out.check(
                "hermiticity",
                Check::below(model.hermiticity_residual, 1e-10, "H = H†"),
            );
            wzqm_spectrum(&model, &opts)?
        }
    };
    out.check(
        "eigenvalues_sorted",
        Check::holds(sorted(&report.eigenvalues), "eigenvalues ascending"),
    );
    out.csv_rows = Some(csv_rows(&report));
    out.result("spectrum", &report);
    Ok(out)
}

fn verify(config: &RunConfig) -> Result<Outcome> {
    let suites: Vec<Suite> = match config.suite {
        Suite::All => vec![
            Suite::Fock,
            Suite::Susy,
            Suite::Osp,
            Suite::Qubit,
            Suite::Mackey,
        ],
        s => vec![s],
    };
    let mut out = Outcome::default();
    for suite in suites {
        let (name, part) = match suite {
            Suite::Fock => ("fock", verify_fock(config)?),
            Suite::Susy => ("susy", verify_susy(config)?),
            Suite::Osp => ("osp", verify_osp(config)?),
            Suite::Qubit => ("qubit", verify_qubit()?),
            Suite::Mackey => ("mackey", verify_mackey()?),
            Suite::All => unreachable!("expanded above"),
        };
        out.absorb(name, part);
    }
    Ok(out)
}

const FOCK_INVARIANTS: [(&str, &str); 7] = [
    ("klein_squared", "K² = I"),
    ("klein_anticommutes_a", "{K, a} = 0"),
    ("klein_anticommutes_adag", "{K, a†} = 0"),
    ("deformed_commutator", "[a, a†] = 1 + νK on the interior"),
    ("number_levels", "N = diag([n]_ν) on the interior"),
    (
        "number_anticommutator_form",
        "N = ½{a, a†} − ½(1 + νK) on the interior",
    ),
    (
        "number_symmetric_literal",
        "½{a, a†} − ½(ν + 1) = diag(n) on the interior",
    ),
];

fn verify_fock(config: &RunConfig) -> Result<Outcome> {
    let spec = FockSpec::new(config.cutoff, config.nu)?;
    let tol = config.tol.unwrap_or(1e-12);
    let audit = audit_relations(&spec);
    let mut out = Outcome::default();
    for (key, invariant) in FOCK_INVARIANTS {
        out.check(key, Check::below(audit[key], tol, invariant));
    }
    out.result("relations", &audit);
    out.result("klein_fermion", klein_fermion_audit(&spec));
    out.result("bosonized_term_diagonal", bosonized_term_diagonal(&spec, 6));
    Ok(out)
}

fn verify_susy(config: &RunConfig) -> Result<Outcome> {
    let pair = build_supercharge_1d(&config.model_params())?;
    let mut out = Outcome::default();
    out.check(
        "nilpotency",
        Check::below(pair.nilpotency_residual(), 1e-13, "Q² = 0"),
    );
    out.check(
        "decomposition",
        Check::below(pair.decomposition_residual(), 1e-12, "H = QQ† + Q†Q"),
    );
    out.check(
        "hermiticity",
        Check::below(hermiticity_defect(&pair.h.matrix), 1e-10, "H = H†"),
    );
    out.check(
        "partner_identity",
        Check::below(
            partner_identity_residual(&pair),
            1e-10,
            "QQ† = ½(p² + i[p,W] + W²) ⊗ ψψ†",
        ),
    );
    out.check(
        "construction",
        Check::below(
            pair.construction_residual,
            1e-10,
            "H = ½(p²+W²)⊗I + ½i[p,W]⊗(ψψ†−ψ†ψ)",
        ),
    );
    let k = 8.min(config.cutoff / 4);
    let pairing = partner_pairing_check(&pair, k, config.tol.unwrap_or(1e-6))?;
    out.check(
        "partner_pairing",
        Check::below(
            pairing.max_deviation,
            pairing.tol,
            "lowest nonzero eigenvalues of QQ† and Q†Q agree",
        ),
    );
    out.result("partner_pairing", &pairing);
    out.result("spectrum", pair_spectrum(&pair, &spectrum_options(config))?);
    Ok(out)
}

fn verify_osp(config: &RunConfig) -> Result<Outcome> {
    let spec = FockSpec::new(config.cutoff, config.nu)?;
    let gens = build_generators(&spec, config.epsilon)?;
    let report = closure_report(&gens, config.tol.unwrap_or(1e-10))?;
    let mut out = Outcome::default();
    out.check(
        "closure",
        Check::below(
            report.max_residual,
            report.tol,
            "graded brackets close on span{generators, I}",
        ),
    );
    out.check(
        "parity_bookkeeping",
        Check::holds(report.parity_ok, "bracket coefficients respect parity"),
    );
    out.check(
        "adjoint_consistency",
        Check::below(
            adjoint_consistency(&report),
            1e-10,
            "coefficients of [A†,B†] match [A,B]†",
        ),
    );
    out.result("closure", &report);
    Ok(out)
}

fn max_norm<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    values.into_iter().fold(0.0, f64::max)
}

fn verify_qubit() -> Result<Outcome> {
    let mut out = Outcome::default();

    let n = 3;
    let ops: Vec<_> = (0..n).map(|j| jordan_wigner(n, j)).collect::<Result<_>>()?;
    let dim = 1 << n;
    let eye = identity(dim);
    let mut car = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            let target = if i == j {
                eye.clone()
            } else {
                ComplexMatrix::zeros(dim, dim)
            };
            car = car.max((anticommutator(&ops[i].0, &ops[j].1) - target).norm());
            car = car.max(anticommutator(&ops[i].0, &ops[j].0).norm());
        }
    }
    out.check(
        "jordan_wigner_car",
        Check::below(car, 1e-14, "{c_i, c_j†} = δ_ij, {c_i, c_j} = 0"),
    );

    let parity = fermion_parity(n);
    let parity_defect = max_norm(
        std::iter::once((&parity * &parity - &eye).norm())
            .chain(ops.iter().map(|(c, _)| anticommutator(&parity, c).norm())),
    );
    out.check(
        "fermion_parity",
        Check::below(parity_defect, 1e-14, "P² = I and {P, c_j} = 0"),
    );

    let words = all_pauli_words(2);
    let mut hom = 0.0f64;
    for a in &words {
        for b in &words {
            let p = pauli_mul(a, b)?;
            hom = hom.max((p.matrix() - a.matrix() * b.matrix()).norm());
        }
    }
    out.check(
        "pauli_homomorphism",
        Check::below(hom, 1e-15, "symplectic product matches matrix product"),
    );

    out.check(
        "clifford_h",
        Check::holds(clifford_membership(&hadamard(), 1)?, "H ∈ C₁"),
    );
    out.check(
        "clifford_s",
        Check::holds(clifford_membership(&phase_s(), 1)?, "S ∈ C₁"),
    );
    out.check(
        "clifford_t",
        Check::holds(!clifford_membership(&t_gate(), 1)?, "T ∉ C₁"),
    );

    let spec = StabilizerGroupSpec::new(vec!["+ZZ".parse()?, "+XX".parse()?])?;
    let states = stabilizer_states(&spec)?;
    let phi = canonical_phase(&bell_states()[0]);
    let bell_gap = if states.len() == 1 {
        (&states[0] - phi).norm()
    } else {
        f64::INFINITY
    };
    out.check(
        "bell_stabilizer",
        Check::below(bell_gap, 1e-12, "{+ZZ, +XX} stabilizes exactly Φ⁺"),
    );

    let mut units = 0.0f64;
    for (modes, site) in [(1, 0), (3, 1)] {
        let mu = matrix_units(modes, site)?;
        let d = 1 << modes;
        units = units.max(
            (&mu.a.matrix * &mu.a_dag.matrix + &mu.a_dag.matrix * &mu.a.matrix - identity(d))
                .norm(),
        );
        units = units.max((&mu.a.matrix * &mu.a.matrix).norm());
        units = units.max((&mu.lambda.matrix - &mu.a_dag.matrix * &mu.a.matrix).norm());
    }
    out.check(
        "matrix_units",
        Check::below(units, 1e-15, "AA† + A†A = I, A² = 0, Λ = A†A"),
    );
    Ok(out)
}

fn random_homogeneous(
    carrier: &SuperCarrier,
    parity: Parity,
    rng: &mut ChaCha8Rng,
) -> ComplexVector {
    ComplexVector::from_fn(carrier.dim(), |r, _| {
        if carrier.parity[r] == parity {
            Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

fn random_graded(carrier: &SuperCarrier, parity: Parity, rng: &mut ChaCha8Rng) -> GradedOperator {
    let n = carrier.dim();
    let m = ComplexMatrix::from_fn(n, n, |r, c| {
        if carrier.parity[r].combine(carrier.parity[c]) == parity {
            Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    GradedOperator::new(m, parity, OperatorMeta::labelled("T"))
}

/// Largest violation of the super-form symmetry and of the super-adjoint
/// relation over `samples` random homogeneous pairs.
pub fn super_form_residuals(
    carrier: &SuperCarrier,
    samples: usize,
    seed: u64,
) -> Result<(f64, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ops = [
        random_graded(carrier, Parity::Even, &mut rng),
        random_graded(carrier, Parity::Odd, &mut rng),
    ];
    let adjoints = [
        super_adjoint(&ops[0], carrier)?,
        super_adjoint(&ops[1], carrier)?,
    ];
    let mut symmetry = 0.0f64;
    let mut adjoint = 0.0f64;
    for k in 0..samples {
        let px = Parity::from_bit(rng.random_range(0..2));
        let py = Parity::from_bit(rng.random_range(0..2));
        let x = random_homogeneous(carrier, px, &mut rng);
        let y = random_homogeneous(carrier, py, &mut rng);
        let sign = if px == Parity::Odd && py == Parity::Odd {
            -1.0
        } else {
            1.0
        };
        let gap = carrier.super_form(&y, &x) - carrier.super_form(&x, &y).conj() * sign;
        symmetry = symmetry.max(gap.norm());

        let t = &ops[k % 2];
        let t_sa = &adjoints[k % 2];
        let sign = if t.parity == Parity::Odd && px == Parity::Odd {
            -1.0
        } else {
            1.0
        };
        let lhs = carrier.super_form(&(&t.matrix * &x), &y);
        let rhs = carrier.super_form(&x, &(&t_sa.matrix * &y)) * sign;
        adjoint = adjoint.max((lhs - rhs).norm());
    }
    Ok((symmetry, adjoint))
}

fn verify_mackey() -> Result<Outcome> {
    let mut out = Outcome::default();
    let group = pauli_group(2)?;
    let rep = bell_character(&group)?;
    let summary = summarize_induction(&group, &rep)?;
    out.check(
        "group_order",
        Check::equals(group.order() as f64, 64.0, "|P₂| = 64"),
    );
    out.check(
        "subgroup_order",
        Check::equals(rep.order() as f64, 16.0, "|H| = 16"),
    );
    out.check(
        "induced_dimension",
        Check::equals(summary.dim as f64, 4.0, "dim = [G:H]·dim σ"),
    );
    out.check(
        "imprimitivity",
        Check::below(
            summary.imprimitivity_residual_all,
            1e-12,
            "U_g P_E U_g⁻¹ = P_{g·E}",
        ),
    );
    out.check(
        "homomorphism",
        Check::below(summary.homomorphism_residual, 1e-11, "U_{gh} = U_g U_h"),
    );
    out.check(
        "commutant_dimension",
        Check::equals(
            summary.commutant_dimension as f64,
            1.0,
            "induced rep is irreducible",
        ),
    );
    out.check(
        "character_equivalence",
        Check::holds(summary.equivalent_to_defining, "induced rep ≅ defining rep"),
    );
    out.result("induction", &summary);

    let carrier = graded_carrier(2)?;
    let (symmetry, adjoint) = super_form_residuals(&carrier, 100, SAMPLE_SEED)?;
    out.check(
        "super_form_symmetry",
        Check::below(symmetry, 1e-11, "⟨y,x⟩ = (−1)^{p(x)p(y)} conj⟨x,y⟩"),
    );
    out.check(
        "super_adjoint",
        Check::below(adjoint, 1e-11, "⟨Tx,y⟩ = (−1)^{p(T)p(x)} ⟨x,T†y⟩"),
    );
    out.result(
        "carrier",
        json!({"even_dim": carrier.even_dim, "odd_dim": carrier.odd_dim}),
    );

    let mut bebe_defect = 0.0f64;
    let mut bebe_dims = Vec::new();
    for n in 1..=6 {
        let c = bebe_fock(n)?;
        let k = c.grading();
        bebe_defect = bebe_defect.max((&k * &k - identity(c.dim())).norm());
        bebe_dims.push(c.dim());
    }
    out.check(
        "bebe_grading",
        Check::below(bebe_defect, 1e-15, "(−1)^Λ squares to I"),
    );
    out.result("bebe_dims", bebe_dims);
    Ok(out)
}

fn level_json(level: &TowerLevel) -> serde_json::Value {
    json!({
        "depth": level.depth,
        "sign": level.sign,
        "nilpotency_residual": level.nilpotency_residual,
        "identity_residual": level.identity_residual,
        "parity_defect": level.parity_defect,
        "spectrum": level.spectrum,
    })
}

fn tower(config: &RunConfig) -> Result<Outcome> {
    let params = config.model_params();
    let opts = spectrum_options(config);
    let tol = config.tol.unwrap_or(1e-10);
    let base = build_supercharge_1d(&params)?;
    let mut levels = vec![base_level(&base, &opts)?];
    for &sign in &params.projector_signs {
        let prev = &levels.last().expect("tower is never empty").pair;
        levels.push(project_supercharge_unchecked(prev, sign, &opts)?);
    }
    let mut out = Outcome::default();
    for (k, level) in levels.iter().enumerate() {
        out.check(
            format!("level{k}.nilpotency"),
            Check::below(level.nilpotency_residual, 1e-12, "Q̂² = 0"),
        );
        if k > 0 {
            let prev = &levels[k - 1].pair;
            let scale = prev.q.matrix.norm().max(1.0);
            out.check(
                format!("level{k}.odd_supercharge"),
                Check::below(
                    level.parity_defect,
                    1e-12 * scale,
                    "K Q K = −Q before projecting",
                ),
            );
            out.check(
                format!("level{k}.identity"),
                Check::below(level.identity_residual, tol, "2{Q̂,Q̂†} = H + s[Q†,Q]K"),
            );
        }
    }
    let levels_json: Vec<_> = levels.iter().map(level_json).collect();
    out.result("levels", levels_json);
    Ok(out)
}

fn build_group(name: GroupName) -> Result<FiniteMatrixGroup> {
    match name {
        GroupName::Pauli1 => pauli_group(1),
        GroupName::Pauli2 => pauli_group(2),
        GroupName::Clifford1 => clifford1_group(),
    }
}

fn product_state(n: usize, single: &[Complex64; 2]) -> ComplexVector {
    let mut v = ComplexVector::from_vec(single.to_vec());
    for _ in 1..n {
        let w = ComplexVector::from_vec(single.to_vec());
        v = v.kronecker(&w);
    }
    v
}

fn named_state(name: StateName, qubits: usize) -> ComplexVector {
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let s = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let bell = bell_states();
    match name {
        StateName::PhiPlus => bell[0].clone(),
        StateName::PhiMinus => bell[1].clone(),
        StateName::PsiPlus => bell[2].clone(),
        StateName::PsiMinus => bell[3].clone(),
        StateName::Zero => product_state(qubits, &[one, zero]),
        StateName::Plus => product_state(qubits, &[s, s]),
    }
}

fn trivial_on(
    group: &FiniteMatrixGroup,
    letters: &ComplexMatrix,
    qubits: usize,
) -> Result<SubgroupRep> {
    let images = (0..qubits)
        .map(|j| {
            let m = embed(letters, qubits, j);
            group
                .index_of(&m)
                .map(|i| (i, identity(1)))
                .ok_or_else(|| Error::Usage("subgroup generator is not in the group".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    SubgroupRep::from_generators(group, &images)
}

fn induce(config: &RunConfig) -> Result<Outcome> {
    let group = build_group(config.group)?;
    let qubits = config.group.qubits();
    let rep = match config.subgroup {
        SubgroupName::Bell => bell_character(&group)?,
        SubgroupName::X => trivial_on(&group, &pauli_x(), qubits)?,
        SubgroupName::Z => trivial_on(&group, &pauli_z(), qubits)?,
        SubgroupName::Stab0 => {
            SubgroupRep::stabilizer_character(&group, &named_state(StateName::Zero, qubits))?
        }
        SubgroupName::Whole => SubgroupRep::trivial(&group, (0..group.order()).collect())?,
    };
    let summary = summarize_induction(&group, &rep)?;
    let tol = config.tol.unwrap_or(1e-12);
    let mut out = Outcome::default();
    out.check(
        "frobenius_dimension",
        Check::equals(
            summary.dim as f64,
            (summary.cosets * summary.dim_sigma) as f64,
            "dim = [G:H]·dim σ",
        ),
    );
    out.check(
        "homomorphism",
        Check::below(summary.homomorphism_residual, 1e-11, "U_{gh} = U_g U_h"),
    );
    if config.check_si {
        out.check(
            "si_residual",
            Check::below(
                summary.imprimitivity_residual,
                tol,
                "U_g P_E U_g⁻¹ = P_{g·E} on generators",
            ),
        );
        out.check(
            "si_residual_all",
            Check::below(
                summary.imprimitivity_residual_all,
                tol,
                "U_g P_E U_g⁻¹ = P_{g·E} on all elements",
            ),
        );
    }
    if config.check_irreducible {
        out.check(
            "irreducible",
            Check::equals(
                summary.commutant_dimension as f64,
                1.0,
                "commutant dimension 1",
            ),
        );
    }
    out.result("induction", &summary);
    Ok(out)
}

fn orbit(config: &RunConfig) -> Result<Outcome> {
    let qubits = config.group.qubits();
    let gens = match config.group {
        GroupName::Pauli1 | GroupName::Pauli2 => pauli_group_generators(qubits),
        GroupName::Clifford1 => clifford_generators(1)?,
    };
    let default_state = if qubits == 2 {
        StateName::PhiPlus
    } else {
        StateName::Zero
    };
    let state_name = config.state.unwrap_or(default_state);
    let state = named_state(state_name, qubits);
    let states = projective_orbit(&state, &gens, DEFAULT_ORBIT_BOUND)?;
    let mut out = Outcome::default();
    let norm_gap = max_norm(states.iter().map(|v| (v.norm() - 1.0).abs()));
    out.check(
        "unit_norm",
        Check::below(norm_gap, 1e-12, "orbit states are normalized"),
    );
    let mut overlap = 0.0f64;
    for (i, a) in states.iter().enumerate() {
        for b in &states[i + 1..] {
            overlap = overlap.max(a.dotc(b).norm());
        }
    }
    out.check(
        "distinct_rays",
        Check::below(
            overlap,
            1.0 - 1e-9,
            "orbit states are pairwise distinct rays",
        ),
    );
    let is_bell = matches!(
        state_name,
        StateName::PhiPlus | StateName::PhiMinus | StateName::PsiPlus | StateName::PsiMinus
    );
    if config.group == GroupName::Pauli2 && is_bell {
        let bell = bell_states();
        let matched = states.len() == 4
            && states
                .iter()
                .all(|v| bell.iter().any(|b| (b.dotc(v).norm() - 1.0).abs() < 1e-12));
        out.check(
            "bell_basis",
            Check::holds(matched, "orbit equals the Bell basis"),
        );
    }
    let amplitudes: Vec<Vec<[f64; 2]>> = states
        .iter()
        .map(|v| v.iter().map(|z| [z.re, z.im]).collect())
        .collect();
    out.result("size", states.len());
    out.result("states", amplitudes);
    Ok(out)
}
