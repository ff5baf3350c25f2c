//! Command-line grammar, JSON config files and validation.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, ValueEnum};
use serde::{Deserialize, Serialize};
use superfock_core::fock::FockSpec;
use superfock_core::susy::{ModelParams, DEFAULT_GAP_TOL};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum CommandKind {
    Spectrum,
    Verify,
    Tower,
    Induce,
    Orbit,
}

impl CommandKind {
    pub fn name(self) -> &'static str {
        match self {
            CommandKind::Spectrum => "spectrum",
            CommandKind::Verify => "verify",
            CommandKind::Tower => "tower",
            CommandKind::Induce => "induce",
            CommandKind::Orbit => "orbit",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Model {
    HarmonicSusy,
    Susy1d,
    Wzqm,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Fock,
    Susy,
    Osp,
    Qubit,
    Mackey,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum GroupName {
    Pauli1,
    Pauli2,
    Clifford1,
}

impl GroupName {
    pub fn qubits(self) -> usize {
        match self {
            GroupName::Pauli2 => 2,
            GroupName::Pauli1 | GroupName::Clifford1 => 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum SubgroupName {
    /// `⟨iI, X₁X₂, Z₁Z₂⟩` with the character fixing Φ⁺ (two qubits only)
    Bell,
    /// `⟨X_j⟩` with the trivial character
    X,
    /// `⟨Z_j⟩` with the trivial character
    Z,
    /// stabilizer of `|0…0⟩` with its eigenvalue character
    Stab0,
    /// the whole group with the trivial character
    Whole,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum StateName {
    PhiPlus,
    PhiMinus,
    PsiPlus,
    PsiMinus,
    Zero,
    Plus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(
    name = "superfock",
    version,
    about = "Truncated Fock-space operator algebra: spectra, closure checks and induced representations",
    allow_negative_numbers = true
)]
pub struct Cli {
    #[arg(value_enum)]
    pub command: CommandKind,
    #[command(flatten)]
    pub flags: Flags,
}

/// Parameters settable by flag or by JSON config file; flags win.
#[derive(Debug, Clone, Default, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Flags {
    /// Fock cutoff D per bosonic mode
    #[arg(long)]
    pub cutoff: Option<usize>,
    /// Deformation parameter ν (must exceed −1)
    #[arg(long)]
    pub nu: Option<f64>,
    /// Quadratic superpotential coupling
    #[arg(long)]
    pub g0: Option<f64>,
    /// Yukawa coupling of the two-mode model
    #[arg(long)]
    pub h0: Option<f64>,
    /// osp(2|2) projector convention ε = ±1
    #[arg(long)]
    pub epsilon: Option<i8>,
    /// Tower depth
    #[arg(long)]
    pub depth: Option<usize>,
    /// Comma-separated projector signs, one per tower level
    #[arg(long, value_delimiter = ',')]
    pub signs: Option<Vec<i8>>,
    #[arg(long, value_enum)]
    pub group: Option<GroupName>,
    #[arg(long, value_enum)]
    pub subgroup: Option<SubgroupName>,
    #[arg(long, value_enum)]
    pub suite: Option<Suite>,
    #[arg(long, value_enum)]
    pub model: Option<Model>,
    /// Number of eigenvalues reported (at most cutoff/4)
    #[arg(long)]
    pub levels: Option<usize>,
    /// Absolute ground-energy tolerance for the breaking classifier
    #[arg(long)]
    pub e_tol: Option<f64>,
    /// Degeneracy gap tolerance
    #[arg(long)]
    pub gap_tol: Option<f64>,
    /// Override the pass tolerance of the main check of a command
    #[arg(long)]
    pub tol: Option<f64>,
    /// Orbit seed state
    #[arg(long, value_enum)]
    pub state: Option<StateName>,
    /// Report path; standard output when absent
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Additionally write the eigenvalue table as CSV to this path
    #[arg(long)]
    pub csv: Option<PathBuf>,
    /// Check the system of imprimitivity of an induced representation
    #[arg(long)]
    #[serde(default)]
    pub check_si: bool,
    /// Check irreducibility of an induced representation
    #[arg(long)]
    #[serde(default)]
    pub check_irreducible: bool,
    /// Include wall-clock timings (makes reports differ between runs)
    #[arg(long)]
    #[serde(default)]
    pub timings: bool,
    /// JSON file with any of the parameters above
    #[arg(long)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub command: CommandKind,
    pub cutoff: usize,
    pub nu: f64,
    pub g0: f64,
    pub h0: f64,
    pub epsilon: i8,
    pub depth: usize,
    pub signs: Vec<i8>,
    pub group: GroupName,
    pub subgroup: SubgroupName,
    pub suite: Suite,
    pub model: Model,
    pub levels: Option<usize>,
    pub e_tol: Option<f64>,
    pub gap_tol: f64,
    pub tol: Option<f64>,
    pub state: Option<StateName>,
    pub format: Format,
    pub check_si: bool,
    pub check_irreducible: bool,
    #[serde(skip)]
    pub output: Option<PathBuf>,
    #[serde(skip)]
    pub csv: Option<PathBuf>,
    #[serde(skip)]
    pub timings: bool,
}

impl RunConfig {
    pub fn model_params(&self) -> ModelParams {
        ModelParams {
            g0: self.g0,
            h0: self.h0,
            nu: self.nu,
            cutoff: self.cutoff,
            projector_signs: self.signs.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError(pub String);

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ConfigError {}

fn read_file(path: &Path) -> Result<Flags, ConfigError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| ConfigError(format!("cannot read config {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| ConfigError(format!("malformed config {}: {e}", path.display())))
}

fn default_cutoff(command: CommandKind, suite: Suite) -> usize {
    match (command, suite) {
        (CommandKind::Spectrum, _) => 64,
        (CommandKind::Verify, Suite::Osp) => 40,
        _ => 32,
    }
}

fn check_tolerance(name: &str, value: Option<f64>) -> Result<(), ConfigError> {
    match value {
        Some(v) if !(v.is_finite() && v > 0.0) => Err(ConfigError(format!(
            "{name} must be a positive finite number, got {v}"
        ))),
        _ => Ok(()),
    }
}

/// Merge file values under flags, fill defaults and validate.
pub fn load_config(cli: Cli) -> Result<RunConfig, ConfigError> {
    let file = match &cli.flags.config {
        Some(path) => read_file(path)?,
        None => Flags::default(),
    };
    let f = cli.flags;
    macro_rules! pick {
        ($field:ident) => {
            f.$field.clone().or(file.$field.clone())
        };
    }
    let command = cli.command;
    let suite = pick!(suite).unwrap_or(Suite::All);
    let model = pick!(model).unwrap_or(Model::HarmonicSusy);
    let signs_given = pick!(signs);
    let depth_given = pick!(depth);
    let (depth, signs) = match (depth_given, signs_given) {
        (Some(d), Some(s)) => {
            if s.len() != d {
                return Err(ConfigError(format!(
                    "signs has {} entries but depth is {d}; they must match",
                    s.len()
                )));
            }
            (d, s)
        }
        (Some(d), None) => (d, vec![1; d]),
        (None, Some(s)) => (s.len(), s),
        (None, None) => (1, vec![1]),
    };
    let g0_given = pick!(g0);
    let g0 = match (model, command, g0_given) {
        (Model::HarmonicSusy, CommandKind::Spectrum, Some(g)) if g != 0.0 => {
            return Err(ConfigError(format!(
                "model harmonic-susy fixes g0 = 0, got {g}; use --model susy1d"
            )))
        }
        (_, _, g) => g.unwrap_or(0.0),
    };
    let config = RunConfig {
        command,
        cutoff: pick!(cutoff).unwrap_or_else(|| default_cutoff(command, suite)),
        nu: pick!(nu).unwrap_or(0.0),
        g0,
        h0: pick!(h0).unwrap_or(0.0),
        epsilon: pick!(epsilon).unwrap_or(1),
        depth,
        signs,
        group: pick!(group).unwrap_or(GroupName::Pauli2),
        subgroup: pick!(subgroup).unwrap_or(SubgroupName::Bell),
        suite,
        model,
        levels: pick!(levels),
        e_tol: pick!(e_tol),
        gap_tol: pick!(gap_tol).unwrap_or(DEFAULT_GAP_TOL),
        tol: pick!(tol),
        state: pick!(state),
        format: pick!(format).unwrap_or(Format::Json),
        check_si: f.check_si || file.check_si,
        check_irreducible: f.check_irreducible || file.check_irreducible,
        output: pick!(output),
        csv: pick!(csv),
        timings: f.timings || file.timings,
    };
    validate(&config)?;
    Ok(config)
}

fn uses_model(config: &RunConfig) -> bool {
    match config.command {
        CommandKind::Spectrum | CommandKind::Tower => true,
        CommandKind::Verify => matches!(config.suite, Suite::Susy | Suite::All),
        _ => false,
    }
}

fn uses_fock(config: &RunConfig) -> bool {
    uses_model(config)
        || (config.command == CommandKind::Verify
            && matches!(config.suite, Suite::Fock | Suite::Osp | Suite::All))
}

pub fn validate(config: &RunConfig) -> Result<(), ConfigError> {
    let core = |e: superfock_core::Error| ConfigError(e.to_string());
    if uses_fock(config) {
        FockSpec::new(config.cutoff, config.nu).map_err(core)?;
    }
    if uses_model(config) {
        config.model_params().validate().map_err(core)?;
    }
    if config.epsilon.abs() != 1 {
        return Err(ConfigError(format!(
            "epsilon must be ±1, got {}",
            config.epsilon
        )));
    }
    if let Some(s) = config.signs.iter().find(|s| s.abs() != 1) {
        return Err(ConfigError(format!("signs must be ±1, got {s}")));
    }
    if config.depth == 0 {
        return Err(ConfigError("depth must be at least 1".into()));
    }
    if let Some(levels) = config.levels {
        let limit = config.cutoff / 4;
        if levels == 0 || levels > limit {
            return Err(ConfigError(format!(
                "levels must be in 1..={limit} (cutoff/4; higher levels are truncation-contaminated), got {levels}"
            )));
        }
    }
    check_tolerance("e_tol", config.e_tol)?;
    check_tolerance("gap_tol", Some(config.gap_tol))?;
    check_tolerance("tol", config.tol)?;
    if config.command == CommandKind::Induce
        && config.subgroup == SubgroupName::Bell
        && config.group != GroupName::Pauli2
    {
        return Err(ConfigError("subgroup bell requires group pauli2".into()));
    }
    if config.command == CommandKind::Orbit {
        if let Some(state) = config.state {
            let qubits = match state {
                StateName::Zero | StateName::Plus => config.group.qubits(),
                _ => 2,
            };
            if qubits != config.group.qubits() {
                return Err(ConfigError(format!(
                    "state {state:?} has {qubits} qubits but group acts on {}",
                    config.group.qubits()
                )));
            }
        }
    }
    if config.format == Format::Csv && config.command != CommandKind::Spectrum {
        return Err(ConfigError(
            "csv output is only available for the spectrum command".into(),
        ));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Result<RunConfig, ConfigError> {
        let cli = Cli::try_parse_from(std::iter::once("superfock").chain(args.iter().copied()))
            .map_err(|e| ConfigError(e.to_string()))?;
        load_config(cli)
    }

    #[test]
    fn defaults_fill_in() {
        let c = parse(&["spectrum"]).unwrap();
        assert_eq!(c.cutoff, 64);
        assert_eq!(c.model, Model::HarmonicSusy);
        assert_eq!(c.format, Format::Json);
        assert_eq!(c.signs, vec![1]);
        assert_eq!(c.gap_tol, DEFAULT_GAP_TOL);
    }

    #[test]
    fn nu_below_minus_one_is_rejected() {
        let err = parse(&["verify", "--suite", "fock", "--nu", "-1.5"]).unwrap_err();
        assert!(err.0.contains("ν > −1"), "{}", err.0);
    }

    #[test]
    fn signs_and_depth_must_agree() {
        let c = parse(&["tower", "--signs", "1,-1,1"]).unwrap();
        assert_eq!(c.depth, 3);
        assert!(parse(&["tower", "--signs", "1,-1", "--depth", "3"]).is_err());
        assert!(parse(&["tower", "--signs", "1,2"]).is_err());
    }

    #[test]
    fn levels_bounded_by_quarter_cutoff() {
        assert!(parse(&["spectrum", "--cutoff", "64", "--levels", "16"]).is_ok());
        assert!(parse(&["spectrum", "--cutoff", "64", "--levels", "17"]).is_err());
    }

    #[test]
    fn harmonic_model_rejects_coupling() {
        assert!(parse(&["spectrum", "--g0", "0.3"]).is_err());
        assert!(parse(&["spectrum", "--model", "susy1d", "--g0", "0.3"]).is_ok());
    }

    #[test]
    fn file_values_yield_to_flags() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cfg.json");
        std::fs::write(&path, r#"{"cutoff": 48, "nu": 0.5, "suite": "fock"}"#).unwrap();
        let p = path.to_str().unwrap();
        let c = parse(&["verify", "--config", p, "--nu", "0.25"]).unwrap();
        assert_eq!(c.cutoff, 48);
        assert_eq!(c.nu, 0.25);
        assert_eq!(c.suite, Suite::Fock);
    }

    #[test]
    fn unknown_and_malformed_files_are_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let unknown = dir.path().join("u.json");
        std::fs::write(&unknown, r#"{"cutof": 48}"#).unwrap();
        let err = parse(&["verify", "--config", unknown.to_str().unwrap()]).unwrap_err();
        assert!(err.0.contains("unknown field"), "{}", err.0);
        let broken = dir.path().join("b.json");
        std::fs::write(&broken, "{\n  \"cutoff\": 48,,\n}").unwrap();
        let err = parse(&["verify", "--config", broken.to_str().unwrap()]).unwrap_err();
        assert!(err.0.contains("line 2"), "{}", err.0);
    }

    #[test]
    fn bell_subgroup_needs_two_qubits() {
        assert!(parse(&["induce", "--group", "pauli1", "--subgroup", "bell"]).is_err());
        assert!(parse(&["induce", "--group", "pauli1", "--subgroup", "stab0"]).is_ok());
    }
}
