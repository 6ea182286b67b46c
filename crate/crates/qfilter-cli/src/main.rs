//! Command-line front end: synthesize, simulate, verify, and scan, with all
//! results emitted as JSON (and CSV for scan tables) for scripting.
//!
//! Exit codes: 0 success, 2 domain or precondition error, 3 I/O or parse
//! error.

use std::f64::consts::FRAC_1_SQRT_2;
use std::io::Read;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use qfilter::circuits::{
    effective_kraus, run_circuit, sample_outcomes, synthesize_conversion, synthesize_dilution,
    synthesize_filter, synthesize_general_povm, AncillaCircuit, BranchOutcome, PureState2x2,
};
use qfilter::povm::{
    canonical_form, check_completeness, CanonicalPovm, FilterSpec, TwoOutcomePovm,
};
use qfilter::qmath::{phase_max_fidelity, schmidt_decompose, ComplexMatrix, Label, StateVector};
use qfilter::search::{
    conjecture_sweep, max_output_entanglement, scan_a0_range, scan_samples_to_csv, sweep_to_csv,
    weyl_chamber_grid, CanonicalGateParams, EntanglementConfig, ScanConfig, SweepConfig, SweepRow,
};

const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser)]
#[command(name = "qfilter", version)]
#[command(about = "Two-outcome qubit measurements as CNOT circuits: synthesis, simulation, and universality scans")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonArgs {
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,

    /// Interpret angle arguments as degrees.
    #[arg(long)]
    degrees: bool,

    /// Seed for any randomized demonstration output.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Synthesize the elementary filter F(alpha) and its circuit.
    Filter {
        /// Filter angle in [0, pi/2] (radians unless --degrees).
        #[arg(long)]
        alpha: f64,

        /// Optional input state JSON (path or `-` for stdin) over (A) or
        /// (A, B); when given, the report includes the simulated branches.
        #[arg(long)]
        state: Option<String>,

        #[command(flatten)]
        common: CommonArgs,
    },
    /// Optimal conversion of cos x|00>+sin x|11> into cos y|00>+sin y|11>.
    Convert {
        /// Source Schmidt angle in [0, pi/4].
        #[arg(long)]
        x: f64,

        /// Target Schmidt angle in [0, pi/4], at least x.
        #[arg(long)]
        y: f64,

        /// Also sample this many seeded Monte Carlo shots.
        #[arg(long)]
        trials: Option<u64>,

        #[command(flatten)]
        common: CommonArgs,
    },
    /// Deterministic dilution from Schmidt coefficient a0 to b0.
    Dilute {
        /// Source alpha0 in [1/sqrt(2), 1).
        #[arg(long)]
        a0: f64,

        /// Target beta0 in [a0, 1).
        #[arg(long)]
        b0: f64,

        #[command(flatten)]
        common: CommonArgs,
    },
    /// Canonicalize a POVM JSON file and synthesize its circuit.
    Povm {
        /// Path to {"m0": matrix, "m1": matrix} JSON, or `-` for stdin.
        #[arg(long)]
        input: String,

        #[command(flatten)]
        common: CommonArgs,
    },
    /// Scan an interaction for filter universality and entangling power.
    Scan {
        /// Canonical interaction parameters a1 a2 a3 (radians).
        #[arg(long, num_args = 3, value_names = ["A1", "A2", "A3"])]
        params: Vec<f64>,

        /// Grid points per local frame angle.
        #[arg(long)]
        grid: Option<usize>,

        /// Restrict frames to the two-angle sub-family.
        #[arg(long)]
        two_angle: bool,

        /// Grid points per angle for the entangling-power search.
        #[arg(long)]
        entanglement_grid: Option<usize>,

        /// Also write the accepted samples as CSV here.
        #[arg(long)]
        csv: Option<PathBuf>,

        #[command(flatten)]
        common: CommonArgs,
    },
    /// Joint scan + entangling-power table over a Weyl-chamber grid.
    Sweep {
        /// Axis resolution of the parameter grid.
        #[arg(long, default_value_t = 3)]
        grid: usize,

        /// Grid points per local frame angle for each scan.
        #[arg(long)]
        scan_grid: Option<usize>,

        /// Grid points per angle for each entangling-power search.
        #[arg(long)]
        entanglement_grid: Option<usize>,

        /// Also write the table as CSV here.
        #[arg(long)]
        csv: Option<PathBuf>,

        #[command(flatten)]
        common: CommonArgs,
    },
}

enum CliError {
    Domain(String),
    Io(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Domain(_) => 2,
            CliError::Io(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Domain(m) | CliError::Io(m) => m,
        }
    }
}

impl From<qfilter::Error> for CliError {
    fn from(e: qfilter::Error) -> Self {
        CliError::Domain(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(cli) {
        eprintln!("error: {}", e.message());
        std::process::exit(e.code());
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Filter { alpha, state, common } => cmd_filter(alpha, state, common),
        Command::Convert { x, y, trials, common } => cmd_convert(x, y, trials, common),
        Command::Dilute { a0, b0, common } => cmd_dilute(a0, b0, common),
        Command::Povm { input, common } => cmd_povm(input, common),
        Command::Scan { params, grid, two_angle, entanglement_grid, csv, common } => {
            cmd_scan(params, grid, two_angle, entanglement_grid, csv, common)
        }
        Command::Sweep { grid, scan_grid, entanglement_grid, csv, common } => {
            cmd_sweep(grid, scan_grid, entanglement_grid, csv, common)
        }
    }
}

fn to_radians(angle: f64, degrees: bool) -> f64 {
    if degrees {
        angle.to_radians()
    } else {
        angle
    }
}

fn emit<T: Serialize>(report: &T, output: Option<&PathBuf>) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(report)
        .map_err(|e| CliError::Io(format!("serializing report: {e}")))?;
    match output {
        Some(path) => std::fs::write(path, text + "\n")?,
        None => println!("{text}"),
    }
    Ok(())
}

fn read_input(source: &str) -> Result<String, CliError> {
    if source == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf)?;
        Ok(buf)
    } else {
        Ok(std::fs::read_to_string(source)?)
    }
}

#[derive(Serialize)]
struct KrausPair {
    k0: ComplexMatrix,
    k1: ComplexMatrix,
}

#[derive(Serialize)]
struct FilterReport {
    version: &'static str,
    seed: u64,
    alpha: f64,
    circuit: AncillaCircuit,
    kraus: KrausPair,
    #[serde(skip_serializing_if = "Option::is_none")]
    branches: Option<Vec<BranchOutcome>>,
}

fn cmd_filter(alpha: f64, state: Option<String>, common: CommonArgs) -> Result<(), CliError> {
    let alpha = to_radians(alpha, common.degrees);
    let spec = FilterSpec::new(alpha)?;
    let circuit = synthesize_filter(spec);
    let (k0, k1) = effective_kraus(&circuit)?;

    let branches = match state {
        Some(source) => {
            let text = read_input(&source)?;
            let input: StateVector = serde_json::from_str(&text)
                .map_err(|e| CliError::Io(format!("parsing state JSON: {e}")))?;
            Some(run_circuit(&circuit, &input)?)
        }
        None => None,
    };

    emit(
        &FilterReport {
            version: VERSION,
            seed: common.seed,
            alpha,
            circuit,
            kraus: KrausPair { k0, k1 },
            branches,
        },
        common.output.as_ref(),
    )
}

#[derive(Serialize)]
struct SimulatedConversion {
    outcome0_probability: f64,
    outcome1_probability: f64,
    outcome0_schmidt: [f64; 2],
    #[serde(skip_serializing_if = "Option::is_none")]
    outcome1_product_residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    outcome1_b_fidelity_to_zero: Option<f64>,
}

#[derive(Serialize)]
struct TrialStats {
    trials: u64,
    seed: u64,
    frequency0: f64,
    frequency1: f64,
}

#[derive(Serialize)]
struct ConvertReport {
    version: &'static str,
    seed: u64,
    x: f64,
    y: f64,
    theta: f64,
    predicted_probability: f64,
    circuit: AncillaCircuit,
    simulated: SimulatedConversion,
    #[serde(skip_serializing_if = "Option::is_none")]
    monte_carlo: Option<TrialStats>,
}

fn cmd_convert(x: f64, y: f64, trials: Option<u64>, common: CommonArgs) -> Result<(), CliError> {
    let x = to_radians(x, common.degrees);
    let y = to_radians(y, common.degrees);
    let (circuit, predicted) = synthesize_conversion(x, y)?;
    let source = PureState2x2::from_angle(x)?.to_state();
    let branches = run_circuit(&circuit, &source)?;

    let outcome0_schmidt = match &branches[0].post_state {
        Some(s) => {
            let form = schmidt_decompose(s, Label::A)?;
            form.coefficients
        }
        None => [0.0, 0.0],
    };
    let (residual, b_fidelity) = match &branches[1].post_state {
        Some(s) => {
            let (_, residual) = qfilter::qmath::is_product(s, 1e-10)?;
            let form = schmidt_decompose(s, Label::A)?;
            (Some(residual), Some(form.right_basis[0][0].norm()))
        }
        None => (None, None),
    };

    let monte_carlo = match trials {
        Some(n) => {
            let counts = sample_outcomes(&circuit, &source, n, common.seed)?;
            Some(TrialStats {
                trials: n,
                seed: common.seed,
                frequency0: counts[0] as f64 / n.max(1) as f64,
                frequency1: counts[1] as f64 / n.max(1) as f64,
            })
        }
        None => None,
    };

    emit(
        &ConvertReport {
            version: VERSION,
            seed: common.seed,
            x,
            y,
            theta: circuit.theta,
            predicted_probability: predicted,
            simulated: SimulatedConversion {
                outcome0_probability: branches[0].probability,
                outcome1_probability: branches[1].probability,
                outcome0_schmidt,
                outcome1_product_residual: residual,
                outcome1_b_fidelity_to_zero: b_fidelity,
            },
            circuit,
            monte_carlo,
        },
        common.output.as_ref(),
    )
}

#[derive(Serialize)]
struct DiluteBranch {
    outcome: u8,
    probability: f64,
    schmidt: [f64; 2],
}

#[derive(Serialize)]
struct DiluteReport {
    version: &'static str,
    seed: u64,
    a0: f64,
    b0: f64,
    gamma: f64,
    delta: f64,
    theta: f64,
    circuit: AncillaCircuit,
    branches: Vec<DiluteBranch>,
    /// True when both outcomes reproduce the target coefficients within
    /// 1e-9.
    deterministic: bool,
    /// Per-outcome B-side alignment unitaries (metadata; applied by the
    /// remote party, not by the circuit).
    b_corrections: [ComplexMatrix; 2],
}

fn cmd_dilute(a0: f64, b0: f64, common: CommonArgs) -> Result<(), CliError> {
    if !(FRAC_1_SQRT_2 - 1e-12..1.0).contains(&a0) || !(FRAC_1_SQRT_2 - 1e-12..1.0).contains(&b0) {
        return Err(CliError::Domain(format!(
            "coefficients must lie in [1/sqrt(2), 1): a0 = {a0}, b0 = {b0}"
        )));
    }
    if a0 > b0 {
        return Err(CliError::Domain(format!(
            "dilution needs a0 <= b0 (source at least as entangled): {a0} > {b0}"
        )));
    }
    let source = PureState2x2::from_alpha0(a0)?;
    let target = PureState2x2::from_alpha0(b0)?;
    let synth = synthesize_dilution(source, target)?;
    let outcomes = run_circuit(&synth.circuit, &source.to_state())?;

    let mut branches = Vec::new();
    let mut deterministic = true;
    for outcome in &outcomes {
        let schmidt = match &outcome.post_state {
            Some(s) => schmidt_decompose(s, Label::A)?.coefficients,
            None => [0.0, 0.0],
        };
        deterministic &= (schmidt[0] - target.alpha0).abs() < 1e-9
            && (schmidt[1] - target.alpha1).abs() < 1e-9;
        branches.push(DiluteBranch {
            outcome: outcome.outcome,
            probability: outcome.probability,
            schmidt,
        });
    }

    emit(
        &DiluteReport {
            version: VERSION,
            seed: common.seed,
            a0,
            b0,
            gamma: synth.gamma,
            delta: synth.delta,
            theta: synth.theta,
            circuit: synth.circuit,
            branches,
            deterministic,
            b_corrections: synth.b_corrections,
        },
        common.output.as_ref(),
    )
}

#[derive(Serialize)]
struct PovmReport {
    version: &'static str,
    seed: u64,
    completeness_residual: f64,
    canonical: CanonicalPovm,
    reconstruction_residual: f64,
    circuit: AncillaCircuit,
    kraus: KrausPair,
    /// Phase-maximized fidelity of each effective operator against the
    /// corresponding input operator.
    operator_fidelities: [f64; 2],
}

fn cmd_povm(input: String, common: CommonArgs) -> Result<(), CliError> {
    let text = read_input(&input)?;
    let povm: TwoOutcomePovm = serde_json::from_str(&text)
        .map_err(|e| CliError::Io(format!("parsing POVM JSON: {e}")))?;
    let residual = check_completeness(&povm);
    if residual > 1e-9 {
        return Err(CliError::Domain(format!(
            "POVM completeness violated: residual {residual:.3e}"
        )));
    }
    let canonical = canonical_form(&povm)?;
    let reconstruction_residual = canonical.reconstruction_residual(&povm);
    let circuit = synthesize_general_povm(&canonical)?;
    let (k0, k1) = effective_kraus(&circuit)?;
    let fidelities = [
        phase_max_fidelity(&k0, &povm.m0),
        phase_max_fidelity(&k1, &povm.m1),
    ];

    emit(
        &PovmReport {
            version: VERSION,
            seed: common.seed,
            completeness_residual: residual,
            canonical,
            reconstruction_residual,
            circuit,
            kraus: KrausPair { k0, k1 },
            operator_fidelities: fidelities,
        },
        common.output.as_ref(),
    )
}

#[derive(Serialize)]
struct ScanCliReport {
    version: &'static str,
    seed: u64,
    scan: qfilter::search::ScanReport,
    entanglement_config: EntanglementConfig,
    max_entanglement: f64,
}

fn cmd_scan(
    params: Vec<f64>,
    grid: Option<usize>,
    two_angle: bool,
    entanglement_grid: Option<usize>,
    csv: Option<PathBuf>,
    common: CommonArgs,
) -> Result<(), CliError> {
    let params = CanonicalGateParams::new(params[0], params[1], params[2]);
    let mut config = ScanConfig {
        two_angle_frames: two_angle,
        seed: common.seed,
        ..ScanConfig::default()
    };
    if let Some(n) = grid {
        config.grid_per_angle = n;
    }
    let mut ent_config = EntanglementConfig::default();
    if let Some(n) = entanglement_grid {
        ent_config.grid_per_angle = n;
    }

    let scan = scan_a0_range(params, &config);
    let max_entanglement = max_output_entanglement(params, &ent_config);

    if let Some(path) = csv {
        std::fs::write(path, scan_samples_to_csv(&scan))?;
    }
    emit(
        &ScanCliReport {
            version: VERSION,
            seed: common.seed,
            scan,
            entanglement_config: ent_config,
            max_entanglement,
        },
        common.output.as_ref(),
    )
}

#[derive(Serialize)]
struct SweepCliReport {
    version: &'static str,
    seed: u64,
    config: SweepConfig,
    rows: Vec<SweepRow>,
}

fn cmd_sweep(
    grid: usize,
    scan_grid: Option<usize>,
    entanglement_grid: Option<usize>,
    csv: Option<PathBuf>,
    common: CommonArgs,
) -> Result<(), CliError> {
    let mut config = SweepConfig::default();
    config.scan.seed = common.seed;
    if let Some(n) = scan_grid {
        config.scan.grid_per_angle = n;
    }
    if let Some(n) = entanglement_grid {
        config.entanglement.grid_per_angle = n;
    }
    let rows = conjecture_sweep(&weyl_chamber_grid(grid), &config);
    if let Some(path) = csv {
        std::fs::write(path, sweep_to_csv(&rows))?;
    }
    emit(
        &SweepCliReport {
            version: VERSION,
            seed: common.seed,
            config,
            rows,
        },
        common.output.as_ref(),
    )
}
