//! Command-line harness: builds or loads circuits, contracts them under a
//! chosen truncation policy, sweeps parameter grids through precomputed
//! per-order tables, and runs the release verification suites.
//!
//! Single runs emit one JSON record carrying the resolved configuration, a
//! fingerprint of it, and the seed, so every number is reproducible from
//! the record alone. Sweeps emit CSV tables (or a JSON record with the
//! points inline). Complex values are written as [re, im] pairs.
//!
//! Exit codes: 0 success, 2 configuration or input error, 3 cost budget
//! exceeded, 4 verification failure.

use std::ffi::OsString;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::circuits::{
    floquet_circuit, half_filling_states, random_circuit, trotter_circuit, Circuit, HalfFilling,
    Planted,
};
use crate::contract::{
    check_budget, contract_adaptive, contract_network_truncated, contract_network_xi,
    cutoff_order, eval_sweep, load_table, pfsum_table_network, runtime_estimate, save_table,
    truncation_error, Certificate, ExpansionResult, DEFAULT_BUDGET,
};
use crate::fermionize::{build_network, site_gamma};
use crate::pfaffian::SkewMatrix;
use crate::{decomp, gates, oracle, Error, Result};

const SCHEMA_VERSION: u32 = 1;

#[derive(Parser)]
#[command(
    name = "ppsim",
    version,
    about = "Phase-sensitive overlaps of parity-preserving brick-wall circuits \
             via Pfaffian hole expansions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Contract a circuit loaded from a text file.
    Simulate(SimulateArgs),
    /// Build and contract a hopping-chain step circuit (alternating
    /// hopping and interaction gate layers).
    Trotter(TrotterArgs),
    /// Build and contract a kicked fSim circuit.
    Floquet(FloquetArgs),
    /// Build and contract a random brick-wall circuit with planted
    /// non-Matchgates over a random Matchgate background.
    Random(RandomArgs),
    /// Precompute one per-order table and evaluate a whole parameter grid
    /// from it.
    Sweep(SweepArgs),
    /// Run the release verification suites.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    /// Hole expansion: per-order sums of Pfaffian minors.
    Gamma,
    /// Two-branch Gaussian split: 2^m full Pfaffians. Exact only.
    Xi,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct PolicyArgs {
    /// Decomposition mode.
    #[arg(long, value_enum, default_value = "gamma")]
    mode: Mode,
    /// Truncation policy: a fixed order N, "adaptive", or "exact".
    #[arg(long, default_value = "exact")]
    kt: String,
    /// Relative-error target for the adaptive policy.
    #[arg(long)]
    target_rel_err: Option<f64>,
    /// Accuracy in decimal digits (alternative to --target-rel-err).
    #[arg(long)]
    digits: Option<u32>,
    /// Cost ceiling in Pfaffian-elimination operations.
    #[arg(long, default_value_t = DEFAULT_BUDGET as u64)]
    budget: u64,
}

#[derive(Args)]
struct OutputArgs {
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format for the result record.
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args)]
struct SimulateArgs {
    /// Circuit file in the ppsim text format.
    #[arg(long)]
    circuit: PathBuf,
    /// Boundary override: "h", "e", or PSI_I:PSI_F as 0/1 strings.
    #[arg(long)]
    boundary: Option<String>,
    #[command(flatten)]
    policy: PolicyArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct TrotterArgs {
    /// Number of qubits (chain length).
    #[arg(long = "L")]
    l: usize,
    /// Number of evolution steps n.
    #[arg(long)]
    steps: usize,
    /// Hopping strength.
    #[arg(long, default_value_t = 1.0)]
    t: f64,
    /// Interaction strength.
    #[arg(long = "U", default_value_t = 1.7)]
    u: f64,
    /// Step size.
    #[arg(long, default_value_t = 0.3)]
    dt: f64,
    /// Boundaries: "h", "e", or PSI_I:PSI_F (default all-zero).
    #[arg(long)]
    boundary: Option<String>,
    /// Also write the built circuit to this file.
    #[arg(long)]
    emit_circuit: Option<PathBuf>,
    #[command(flatten)]
    policy: PolicyArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct FloquetArgs {
    /// Number of qubits.
    #[arg(long = "L")]
    l: usize,
    /// Number of two-layer periods.
    #[arg(long)]
    depth: usize,
    /// Hopping angle of every gate.
    #[arg(long)]
    theta: f64,
    /// Interaction angle of the odd-bond layers.
    #[arg(long)]
    phi: f64,
    /// Boundaries: "h", "e", or PSI_I:PSI_F (default all-zero).
    #[arg(long)]
    boundary: Option<String>,
    /// Also write the built circuit to this file.
    #[arg(long)]
    emit_circuit: Option<PathBuf>,
    #[command(flatten)]
    policy: PolicyArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct RandomArgs {
    /// Number of qubits.
    #[arg(long = "L")]
    l: usize,
    /// Number of brick-wall layers.
    #[arg(long)]
    depth: usize,
    /// Number of planted non-Matchgates.
    #[arg(long)]
    m: usize,
    /// Plant controlled-phase gates with this angle instead of random
    /// parity-preserving gates.
    #[arg(long)]
    phi: Option<f64>,
    /// Rejection-sample the planted random gates to |gamma| at most this.
    #[arg(long)]
    gamma_cutoff: Option<f64>,
    /// RNG seed.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Boundaries: "h", "e", or PSI_I:PSI_F (default all-zero).
    #[arg(long)]
    boundary: Option<String>,
    /// Also write the built circuit to this file.
    #[arg(long)]
    emit_circuit: Option<PathBuf>,
    #[command(flatten)]
    policy: PolicyArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct SweepArgs {
    /// Grid as START:STOP:POINTS (inclusive). Ranges over U for hopping
    /// sweeps (--steps) and over phi otherwise.
    #[arg(long, value_name = "START:STOP:POINTS")]
    phi_grid: String,
    /// Number of qubits.
    #[arg(long = "L")]
    l: usize,
    /// Hopping sweep: number of steps (grid ranges over U).
    #[arg(long)]
    steps: Option<usize>,
    /// Hopping strength of a hopping sweep.
    #[arg(long, default_value_t = 1.0)]
    t: f64,
    /// Step size of a hopping sweep.
    #[arg(long, default_value_t = 0.3)]
    dt: f64,
    /// Kicked-circuit sweep: number of periods (requires --theta).
    #[arg(long)]
    depth: Option<usize>,
    /// Hopping angle of a kicked-circuit sweep.
    #[arg(long)]
    theta: Option<f64>,
    /// Planted-gate sweep: number of planted controlled-phase gates
    /// (requires --depth).
    #[arg(long)]
    m: Option<usize>,
    /// RNG seed of a planted-gate sweep.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Boundaries: "h", "e", or PSI_I:PSI_F (default all-zero).
    #[arg(long)]
    boundary: Option<String>,
    /// Table order: a fixed order N or "exact".
    #[arg(long, default_value = "exact")]
    kt: String,
    /// Cost ceiling in Pfaffian-elimination operations.
    #[arg(long, default_value_t = DEFAULT_BUDGET as u64)]
    budget: u64,
    /// Write the per-order table to this file after building it.
    #[arg(long)]
    save_table: Option<PathBuf>,
    /// Load the per-order table from this file instead of building it
    /// (the fingerprint must match the requested family).
    #[arg(long)]
    load_table: Option<PathBuf>,
    /// Reject file circuits explicitly: sweeps need a uniform gate family.
    #[arg(long)]
    circuit: Option<PathBuf>,
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format.
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

#[derive(Args)]
struct VerifyArgs {
    /// RNG seed of the suites.
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Cost ceiling in Pfaffian-elimination operations.
    #[arg(long, default_value_t = DEFAULT_BUDGET as u64)]
    budget: u64,
}

/// Entry point of the binary.
pub fn run() -> i32 {
    run_from(std::env::args_os())
}

/// Runs the CLI on an explicit argument list and returns the exit code.
pub fn run_from<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = err.print();
            return code;
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            match err {
                Error::BudgetExceeded { .. } => 3,
                _ => 2,
            }
        }
    }
}

fn dispatch(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Simulate(a) => run_simulate(a),
        Command::Trotter(a) => run_trotter(a),
        Command::Floquet(a) => run_floquet(a),
        Command::Random(a) => run_random(a),
        Command::Sweep(a) => run_sweep(a),
        Command::Verify(a) => run_verify(a),
    }
}

// --- option resolution ----------------------------------------------------------

enum KtPolicy {
    Exact,
    Adaptive,
    Fixed(usize),
}

fn parse_kt(s: &str) -> Result<KtPolicy> {
    match s {
        "exact" => Ok(KtPolicy::Exact),
        "adaptive" => Ok(KtPolicy::Adaptive),
        _ => s.parse::<usize>().map(KtPolicy::Fixed).map_err(|_| {
            Error::Config(format!(
                "--kt must be a truncation order, \"adaptive\", or \"exact\", got \"{s}\""
            ))
        }),
    }
}

/// Resolves --target-rel-err / --digits into one target, when given.
fn resolve_target(policy: &PolicyArgs) -> Result<Option<f64>> {
    match (policy.target_rel_err, policy.digits) {
        (Some(_), Some(_)) => Err(Error::Config(
            "--target-rel-err and --digits are mutually exclusive".into(),
        )),
        (Some(t), None) => Ok(Some(t)),
        (None, Some(d)) => Ok(Some(10f64.powi(-(d as i32)))),
        (None, None) => Ok(None),
    }
}

fn parse_bits(s: &str, l: usize, side: &str) -> Result<Vec<bool>> {
    if s.len() != l {
        return Err(Error::Config(format!(
            "{side} boundary string has {} bits, the circuit has {l} qubits",
            s.len()
        )));
    }
    s.chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            other => Err(Error::Config(format!(
                "{side} boundary string contains '{other}', expected only 0 and 1"
            ))),
        })
        .collect()
}

/// Parses --boundary: "h" and "e" name the half-filling states, otherwise
/// PSI_I:PSI_F as 0/1 strings.
fn parse_boundary(spec: &str, l: usize) -> Result<(Vec<bool>, Vec<bool>)> {
    match spec {
        "h" => {
            let b = half_filling_states(l, HalfFilling::H)?;
            Ok((b.clone(), b))
        }
        "e" => {
            let b = half_filling_states(l, HalfFilling::E)?;
            Ok((b.clone(), b))
        }
        _ => {
            let Some((i, f)) = spec.split_once(':') else {
                return Err(Error::Config(format!(
                    "--boundary must be \"h\", \"e\", or PSI_I:PSI_F, got \"{spec}\""
                )));
            };
            Ok((parse_bits(i, l, "initial")?, parse_bits(f, l, "final")?))
        }
    }
}

fn apply_boundary(circuit: Circuit, boundary: &Option<String>) -> Result<Circuit> {
    match boundary {
        None => Ok(circuit),
        Some(spec) => {
            let (psi_i, psi_f) = parse_boundary(spec, circuit.qubits())?;
            circuit.with_boundaries(psi_i, psi_f)
        }
    }
}

/// Parses a START:STOP:POINTS grid, inclusive on both ends.
fn parse_grid(spec: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = spec.split(':').collect();
    let fail = || {
        Error::Config(format!(
            "--phi-grid must be START:STOP:POINTS, got \"{spec}\""
        ))
    };
    if parts.len() != 3 {
        return Err(fail());
    }
    let start: f64 = parts[0].parse().map_err(|_| fail())?;
    let stop: f64 = parts[1].parse().map_err(|_| fail())?;
    let points: usize = parts[2].parse().map_err(|_| fail())?;
    if points == 0 {
        return Err(Error::Config("--phi-grid needs at least one point".into()));
    }
    if points == 1 {
        return Ok(vec![start]);
    }
    let step = (stop - start) / (points - 1) as f64;
    Ok((0..points).map(|j| start + step * j as f64).collect())
}

fn emit_circuit(path: &Option<PathBuf>, circuit: &Circuit) -> Result<()> {
    if let Some(path) = path {
        std::fs::write(path, circuit.to_text())?;
    }
    Ok(())
}

// --- single-run jobs -----------------------------------------------------------

fn complex_json(c: C64) -> Value {
    json!([c.re, c.im])
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

/// SHA-256 over the canonical serialization of the config object
/// (serde_json sorts keys, so the serialization is canonical).
fn config_fingerprint(config: &Value) -> String {
    let mut h = Sha256::new();
    h.update(config.to_string().as_bytes());
    hex(&h.finalize())
}

/// Contracts one circuit under the policy flags and writes the record.
fn run_job(
    command: &str,
    config: Value,
    circuit: &Circuit,
    policy: &PolicyArgs,
    output: &OutputArgs,
) -> Result<i32> {
    let kt = parse_kt(&policy.kt)?;
    let target = resolve_target(policy)?;
    let budget = policy.budget as u128;
    let net = build_network(circuit)?;
    let m_live = net
        .sites
        .iter()
        .filter(|s| s.modes.iter().all(Option::is_some))
        .count();
    let dim = net.m.dim();

    let started = Instant::now();
    let (result, certificate, k_target, estimate): (
        ExpansionResult,
        Option<Certificate>,
        Option<usize>,
        u128,
    ) = match policy.mode {
        Mode::Xi => {
            if !matches!(kt, KtPolicy::Exact) {
                return Err(Error::Config(
                    "the xi mode is exact only; it has no --kt policy".into(),
                ));
            }
            let estimate = (dim as u128)
                .pow(3)
                .saturating_mul(1u128.checked_shl(m_live as u32).unwrap_or(u128::MAX));
            if estimate > budget {
                return Err(Error::BudgetExceeded { estimate, budget });
            }
            (contract_network_xi(&net)?, Some(Certificate::Exact), None, estimate)
        }
        Mode::Gamma => match kt {
            KtPolicy::Exact => {
                check_budget(m_live, m_live, dim, budget)?;
                let r = contract_network_truncated(&net, m_live)?;
                let estimate = runtime_estimate(m_live, m_live, dim);
                (r, Some(Certificate::Exact), None, estimate)
            }
            KtPolicy::Fixed(k) => {
                check_budget(m_live, k, dim, budget)?;
                let r = contract_network_truncated(&net, k)?;
                let estimate = runtime_estimate(m_live, k.min(m_live), dim);
                let cert = if r.order >= r.sites {
                    Certificate::Exact
                } else {
                    Certificate::Proxy { estimated_rel_tail: truncation_error(&r) }
                };
                (r, Some(cert), None, estimate)
            }
            KtPolicy::Adaptive => {
                let Some(target) = target else {
                    return Err(Error::Config(
                        "the adaptive policy needs --target-rel-err or --digits".into(),
                    ));
                };
                let a = contract_adaptive(circuit, target, budget)?;
                let estimate = runtime_estimate(m_live, a.result.order, dim);
                let k_target = a.k_target;
                (a.result, Some(a.certificate), Some(k_target), estimate)
            }
        },
    };
    let wall = started.elapsed().as_secs_f64();

    let full_config = config_of(command, &config, policy);
    let fingerprint = config_fingerprint(&full_config);
    let mut record = json!({
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "config": full_config,
        "config_fingerprint": fingerprint,
        "network_fingerprint": hex(&net.fingerprint()),
        "qubits": circuit.qubits(),
        "depth": circuit.depth(),
        "gates": circuit.gate_count(),
        "nonmg": circuit.nonmg_count(),
        "sites": result.sites,
        "c": complex_json(result.value),
        "k_used": result.order,
        "terms": result.terms,
        "per_order": result.per_order.iter().map(|&c| complex_json(c)).collect::<Vec<_>>(),
        "runtime_estimate": estimate.to_string(),
        "budget": budget.to_string(),
        "wall_seconds": wall,
    });
    if let Some(cert) = certificate {
        record["certificate"] = match cert {
            Certificate::Exact => json!({ "kind": "exact" }),
            Certificate::Proxy { estimated_rel_tail } => {
                json!({ "kind": "proxy", "estimated_rel_tail": estimated_rel_tail })
            }
        };
    }
    if let Some(k) = k_target {
        record["k_target"] = json!(k);
    }
    if let Some(t) = target {
        record["target_rel_err"] = json!(t);
    }
    if circuit.qubits() <= crate::contract::MAX_CUTOFF_QUBITS {
        if let Ok(kc) = cutoff_order(circuit) {
            record["cutoff_order"] = json!(kc);
        }
    }

    let body = match output.format {
        Format::Json => format!("{}\n", serde_json::to_string_pretty(&record).unwrap()),
        Format::Csv => {
            let mut s = String::from("command,c_re,c_im,k_used,sites,terms,wall_seconds\n");
            s.push_str(&format!(
                "{command},{:.17e},{:.17e},{},{},{},{:.6}\n",
                result.value.re, result.value.im, result.order, result.sites, result.terms, wall
            ));
            s
        }
    };
    write_output(&output.out, &body)?;
    Ok(0)
}

/// Folds the policy flags into the config object so the fingerprint covers
/// everything that determines the numbers.
fn config_of(command: &str, config: &Value, policy: &PolicyArgs) -> Value {
    let mut v = config.clone();
    v["command"] = json!(command);
    v["mode"] = json!(match policy.mode {
        Mode::Gamma => "gamma",
        Mode::Xi => "xi",
    });
    v["kt"] = json!(policy.kt);
    if let Some(t) = policy.target_rel_err {
        v["target_rel_err"] = json!(t);
    }
    if let Some(d) = policy.digits {
        v["digits"] = json!(d);
    }
    v["budget"] = json!(policy.budget);
    v
}

fn write_output(out: &Option<PathBuf>, body: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, body)?,
        None => print!("{body}"),
    }
    Ok(())
}

fn run_simulate(a: SimulateArgs) -> Result<i32> {
    let text = std::fs::read_to_string(&a.circuit)?;
    let circuit = apply_boundary(Circuit::from_text(&text)?, &a.boundary)?;
    let config = json!({
        "circuit": a.circuit.display().to_string(),
        "boundary": a.boundary,
    });
    run_job("simulate", config, &circuit, &a.policy, &a.output)
}

fn run_trotter(a: TrotterArgs) -> Result<i32> {
    let circuit = apply_boundary(trotter_circuit(a.l, a.steps, a.t, a.u, a.dt)?, &a.boundary)?;
    emit_circuit(&a.emit_circuit, &circuit)?;
    let config = json!({
        "L": a.l, "steps": a.steps, "t": a.t, "U": a.u, "dt": a.dt,
        "boundary": a.boundary,
    });
    run_job("trotter", config, &circuit, &a.policy, &a.output)
}

fn run_floquet(a: FloquetArgs) -> Result<i32> {
    let circuit = apply_boundary(floquet_circuit(a.l, a.depth, a.theta, a.phi)?, &a.boundary)?;
    emit_circuit(&a.emit_circuit, &circuit)?;
    let config = json!({
        "L": a.l, "depth": a.depth, "theta": a.theta, "phi": a.phi,
        "boundary": a.boundary,
    });
    run_job("floquet", config, &circuit, &a.policy, &a.output)
}

fn run_random(a: RandomArgs) -> Result<i32> {
    let planted = match (a.phi, a.gamma_cutoff) {
        (Some(_), Some(_)) => {
            return Err(Error::Config(
                "--phi and --gamma-cutoff are mutually exclusive plantings".into(),
            ))
        }
        (Some(phi), None) => Planted::Cphase(phi),
        (None, cutoff) => Planted::RandomPpu(cutoff),
    };
    let circuit =
        apply_boundary(random_circuit(a.l, a.depth, a.m, planted, a.seed)?, &a.boundary)?;
    emit_circuit(&a.emit_circuit, &circuit)?;
    let config = json!({
        "L": a.l, "depth": a.depth, "m": a.m, "phi": a.phi,
        "gamma_cutoff": a.gamma_cutoff, "seed": a.seed, "boundary": a.boundary,
    });
    run_job("random", config, &circuit, &a.policy, &a.output)
}

// --- sweeps -----------------------------------------------------------------------

/// One uniform-parameter family: how to build the circuit at a grid value
/// and which gate carries the swept hole coefficient.
struct Family {
    name: &'static str,
    param: &'static str,
    build: Box<dyn Fn(f64) -> Result<Circuit>>,
    planted: Box<dyn Fn(f64) -> gates::PPUGate>,
}

fn resolve_family(a: &SweepArgs) -> Result<Family> {
    if a.circuit.is_some() {
        return Err(Error::Config(
            "sweeps need a uniform gate family built from parameters; \
             use the simulate command for circuit files"
                .into(),
        ));
    }
    match (a.steps, a.theta, a.m) {
        (Some(steps), None, None) => {
            let (l, t, dt) = (a.l, a.t, a.dt);
            Ok(Family {
                name: "trotter",
                param: "u",
                build: Box::new(move |u| trotter_circuit(l, steps, t, u, dt)),
                planted: Box::new(move |u| gates::fsim(t * dt, u * dt)),
            })
        }
        (None, Some(theta), None) => {
            let Some(depth) = a.depth else {
                return Err(Error::Config("a kicked-circuit sweep needs --depth".into()));
            };
            let l = a.l;
            Ok(Family {
                name: "floquet",
                param: "phi",
                build: Box::new(move |phi| floquet_circuit(l, depth, theta, phi)),
                planted: Box::new(move |phi| gates::fsim(theta, phi)),
            })
        }
        (None, None, Some(m)) => {
            let Some(depth) = a.depth else {
                return Err(Error::Config("a planted-gate sweep needs --depth".into()));
            };
            let (l, seed) = (a.l, a.seed);
            Ok(Family {
                name: "random",
                param: "phi",
                build: Box::new(move |phi| random_circuit(l, depth, m, Planted::Cphase(phi), seed)),
                planted: Box::new(gates::cphase),
            })
        }
        _ => Err(Error::Config(
            "pick exactly one sweep family: --steps (hopping), --theta (kicked), \
             or --m (planted gates)"
                .into(),
        )),
    }
}

fn run_sweep(a: SweepArgs) -> Result<i32> {
    let grid = parse_grid(&a.phi_grid)?;
    let family = resolve_family(&a)?;
    let budget = a.budget as u128;

    let base = apply_boundary((family.build)(grid[0])?, &a.boundary)?;
    let net = build_network(&base)?;
    let m_live = net
        .sites
        .iter()
        .filter(|s| s.modes.iter().all(Option::is_some))
        .count();
    let k_max = match parse_kt(&a.kt)? {
        KtPolicy::Exact => m_live,
        KtPolicy::Fixed(k) => k.min(m_live),
        KtPolicy::Adaptive => {
            return Err(Error::Config(
                "sweeps tabulate fixed orders; --kt adaptive is not meaningful here".into(),
            ))
        }
    };
    check_budget(m_live, k_max, net.m.dim(), budget)?;

    // Build or load the per-order table.
    let build_started = Instant::now();
    let (table, table_built) = match &a.load_table {
        Some(path) => {
            let table = load_table(path)?;
            if table.fingerprint != net.fingerprint() {
                return Err(Error::Config(format!(
                    "table {} belongs to a different network (fingerprint mismatch)",
                    path.display()
                )));
            }
            if table.values.len() <= k_max {
                return Err(Error::Config(format!(
                    "table {} holds orders up to {}, the sweep needs {k_max}",
                    path.display(),
                    table.values.len() - 1
                )));
            }
            (table, false)
        }
        None => (pfsum_table_network(&net, k_max)?, true),
    };
    let table_seconds = build_started.elapsed().as_secs_f64();
    if let Some(path) = &a.save_table {
        save_table(path, &table)?;
    }

    // Evaluate the whole grid from the table (trimmed to the requested
    // order when a loaded table holds more).
    let eval_started = Instant::now();
    let gammas: Vec<C64> = grid
        .iter()
        .map(|&v| site_gamma(&(family.planted)(v)))
        .collect::<Result<_>>()?;
    let mut eval_table = table.clone();
    eval_table.values.truncate(k_max + 1);
    let values = eval_sweep(&eval_table, &gammas);
    let eval_seconds = eval_started.elapsed().as_secs_f64();

    // Time one direct contraction for the comparison record.
    let probe = grid[grid.len() / 2];
    let direct_started = Instant::now();
    let probe_net = build_network(&apply_boundary((family.build)(probe)?, &a.boundary)?)?;
    let direct = contract_network_truncated(&probe_net, k_max)?;
    let direct_seconds = direct_started.elapsed().as_secs_f64();
    let projected = direct_seconds * grid.len() as f64;
    let speedup = projected / (table_seconds + eval_seconds).max(1e-12);
    // Consistency probe: the table evaluation must reproduce the direct
    // contraction at the probe point.
    let probe_idx = grid.len() / 2;
    let dev = (values[probe_idx] - direct.value).norm();
    if dev > 1e-9 * (1.0 + direct.value.norm()) {
        return Err(Error::Config(format!(
            "table evaluation deviates from the direct contraction at {} = {probe}: {dev:e} \
             (is the loaded table stale?)",
            family.param
        )));
    }
    eprintln!(
        "sweep: {} points, order <= {k_max}, table {} in {table_seconds:.3}s, \
         eval {eval_seconds:.3}s, direct point {direct_seconds:.3}s, projected direct \
         {projected:.3}s, speedup {speedup:.1}x",
        grid.len(),
        if table_built { "built" } else { "loaded" },
    );

    let body = match a.format {
        Format::Csv => {
            let mut s = format!("index,{},c_re,c_im\n", family.param);
            for (j, (v, c)) in grid.iter().zip(&values).enumerate() {
                s.push_str(&format!("{j},{v:.17e},{:.17e},{:.17e}\n", c.re, c.im));
            }
            s
        }
        Format::Json => {
            let config = json!({
                "family": family.name,
                "L": a.l, "steps": a.steps, "t": a.t, "dt": a.dt,
                "depth": a.depth, "theta": a.theta, "m": a.m, "seed": a.seed,
                "boundary": a.boundary, "kt": a.kt, "grid": a.phi_grid,
                "budget": a.budget,
            });
            let record = json!({
                "schema_version": SCHEMA_VERSION,
                "command": "sweep",
                "config": config,
                "config_fingerprint": config_fingerprint(&config),
                "network_fingerprint": hex(&table.fingerprint),
                "sites": table.sites,
                "k_max": k_max,
                "param": family.param,
                "points": grid
                    .iter()
                    .zip(&values)
                    .map(|(&v, &c)| json!({ "param": v, "c": complex_json(c) }))
                    .collect::<Vec<_>>(),
                "timings": {
                    "table_built": table_built,
                    "table_seconds": table_seconds,
                    "eval_seconds": eval_seconds,
                    "direct_point_seconds": direct_seconds,
                    "projected_direct_seconds": projected,
                    "speedup": speedup,
                },
            });
            format!("{}\n", serde_json::to_string_pretty(&record).unwrap())
        }
    };
    write_output(&a.out, &body)?;
    Ok(0)
}

// --- verification suites --------------------------------------------------------------

struct Suite {
    name: &'static str,
    outcome: std::result::Result<String, String>,
}

fn random_even_bits(rng: &mut ChaCha8Rng, l: usize) -> Vec<bool> {
    let mut bits: Vec<bool> = (0..l).map(|_| rng.gen_bool(0.5)).collect();
    if bits.iter().filter(|&&b| b).count() % 2 == 1 {
        let q = rng.gen_range(0..l);
        bits[q] = !bits[q];
    }
    bits
}

fn verify_matchgate_closed_form(seed: u64) -> std::result::Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    for trial in 0..40 {
        let l = rng.gen_range(3..=8);
        let d = rng.gen_range(1..=4);
        let c = random_circuit(l, d, 0, Planted::RandomPpu(None), seed ^ trial)
            .map_err(|e| e.to_string())?
            .with_boundaries(random_even_bits(&mut rng, l), random_even_bits(&mut rng, l))
            .map_err(|e| e.to_string())?;
        let net = build_network(&c).map_err(|e| e.to_string())?;
        let got = net.norm * net.m.pfaffian();
        let want = oracle::overlap(&c).map_err(|e| e.to_string())?;
        let err = (got - want).norm() / (1.0 + want.norm());
        worst = worst.max(err);
        if err > 1e-10 {
            return Err(format!("trial {trial}: norm*pf(M) off by {err:e}"));
        }
    }
    Ok(format!("40 all-Matchgate circuits, worst deviation {worst:.2e}"))
}

fn verify_oracle_equivalence(seed: u64) -> std::result::Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x11);
    let mut worst = 0.0f64;
    for trial in 0..40 {
        let l = rng.gen_range(4..=8);
        let d = rng.gen_range(1..=4);
        // Clamp the planted count to what the sparsest layers can hold.
        let m = rng.gen_range(0..=4usize).min(d * ((l - 1) / 2));
        let c = random_circuit(l, d, m, Planted::RandomPpu(None), seed ^ (trial << 8))
            .map_err(|e| e.to_string())?
            .with_boundaries(random_even_bits(&mut rng, l), random_even_bits(&mut rng, l))
            .map_err(|e| e.to_string())?;
        let got = crate::contract::contract_exact(&c).map_err(|e| e.to_string())?.value;
        let want = oracle::overlap(&c).map_err(|e| e.to_string())?;
        let err = (got - want).norm() / want.norm().max(1e-3);
        worst = worst.max(err);
        if err > 1e-9 {
            return Err(format!("trial {trial}: exact expansion off by {err:e}"));
        }
    }
    Ok(format!("40 mixed circuits vs dense overlap, worst relative error {worst:.2e}"))
}

fn verify_mode_agreement(seed: u64) -> std::result::Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x22);
    let mut worst = 0.0f64;
    for trial in 0..10 {
        let l = rng.gen_range(4..=7);
        let c = random_circuit(l, 3, 3, Planted::RandomPpu(None), seed ^ (trial << 4))
            .map_err(|e| e.to_string())?
            .with_boundaries(random_even_bits(&mut rng, l), random_even_bits(&mut rng, l))
            .map_err(|e| e.to_string())?;
        let g = crate::contract::contract_exact(&c).map_err(|e| e.to_string())?.value;
        let x = crate::contract::contract_xi(&c).map_err(|e| e.to_string())?.value;
        let err = (g - x).norm() / (1.0 + g.norm());
        worst = worst.max(err);
        if err > 1e-10 {
            return Err(format!("trial {trial}: gamma vs xi differ by {err:e}"));
        }
    }
    Ok(format!("10 circuits, hole vs two-branch expansion, worst deviation {worst:.2e}"))
}

fn verify_exact_cutoff() -> std::result::Result<String, String> {
    let mut report = Vec::new();
    for (variant, label) in [(HalfFilling::H, "domain-wall"), (HalfFilling::E, "spread")] {
        let n = 2;
        let l = 8;
        let bits = half_filling_states(l, variant).map_err(|e| e.to_string())?;
        let c = trotter_circuit(l, n, 1.0, 1.7, 0.3)
            .map_err(|e| e.to_string())?
            .with_boundaries(bits.clone(), bits)
            .map_err(|e| e.to_string())?;
        let kc = cutoff_order(&c).map_err(|e| e.to_string())?;
        let formula = match variant {
            HalfFilling::H => (l / 4 - 1) * n,
            HalfFilling::E => (l / 4) * (n - 1),
        };
        if kc != formula {
            return Err(format!(
                "{label}: reachability bound {kc} but closed form {formula}"
            ));
        }
        let net = build_network(&c).map_err(|e| e.to_string())?;
        let m_live = net
            .sites
            .iter()
            .filter(|s| s.modes.iter().all(Option::is_some))
            .count();
        let table = pfsum_table_network(&net, m_live).map_err(|e| e.to_string())?;
        let scale = table
            .values
            .iter()
            .map(|v| v.norm())
            .fold(0.0f64, f64::max)
            .max(1.0);
        for (k, v) in table.values.iter().enumerate() {
            if k > kc && v.norm() > 1e-12 * scale {
                return Err(format!("{label}: order {k} sum {:e} above the bound {kc}", v.norm()));
            }
        }
        let exact = contract_network_truncated(&net, m_live).map_err(|e| e.to_string())?.value;
        let truncated = contract_network_truncated(&net, kc).map_err(|e| e.to_string())?.value;
        let err = (exact - truncated).norm() / exact.norm().max(1e-300);
        if err > 1e-12 {
            return Err(format!("{label}: truncation at k_c = {kc} off by {err:e}"));
        }
        report.push(format!("{label} k_c = {kc}"));
    }
    Ok(format!(
        "L = 8 hopping chain, n = 2: {} match the closed forms; tails vanish",
        report.join(", ")
    ))
}

fn verify_decompositions(seed: u64) -> std::result::Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x33);
    let mut worst = 0.0f64;
    for trial in 0..2000 {
        let g = gates::random_ppu(&mut rng, None).map_err(|e| e.to_string())?;
        let tensor = crate::fermionize::gate_tensor(&g).map_err(|e| e.to_string())?;
        let lhs = tensor.n * tensor.n * tensor.gamma_t;
        let rhs = g.gamma_det();
        let err = (lhs - rhs).norm();
        worst = worst.max(err);
        if err > 1e-10 {
            return Err(format!("trial {trial}: N^2*gamma vs det gap differ by {err:e}"));
        }
        let split = decomp::gamma_split(&g).map_err(|e| e.to_string())?;
        let hole = split.n * split.gamma;
        if (hole - rhs / tensor.n).norm() > 1e-9 {
            return Err(format!("trial {trial}: hole coefficient inconsistent"));
        }
    }
    for j in 0..50 {
        let phi = -3.0 + 0.12 * j as f64;
        let xi = decomp::xi_split(&gates::cphase(phi)).map_err(|e| e.to_string())?;
        let want = decomp::extent_fsim(phi);
        if (xi.extent() - want).abs() > 1e-10 {
            return Err(format!("phi {phi}: extent {} vs closed form {want}", xi.extent()));
        }
    }
    Ok(format!(
        "2000 gates: quartic identity worst {worst:.2e}; 50 extents match the closed form"
    ))
}

fn verify_pfaffian_kernel(seed: u64) -> std::result::Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x44);
    let mut worst = 0.0f64;
    for dim in (2..=60).step_by(2) {
        let mut m = SkewMatrix::zeros(dim).map_err(|e| e.to_string())?;
        for i in 0..dim {
            for j in i + 1..dim {
                m.set_pair(
                    i,
                    j,
                    C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
                );
            }
        }
        let pf = m.pfaffian();
        let det = determinant(&m);
        let err = (pf * pf - det).norm() / det.norm().max(1e-300);
        worst = worst.max(err);
        if err > 1e-8 {
            return Err(format!("dim {dim}: pf^2 vs det off by {err:e}"));
        }
    }
    Ok(format!("pf^2 = det up to dim 60, worst relative error {worst:.2e}"))
}

/// Plain LU determinant with partial pivoting, for the verification suite.
fn determinant(m: &SkewMatrix) -> C64 {
    let dim = m.dim();
    let mut a: Vec<C64> = (0..dim * dim)
        .map(|idx| m.get(idx / dim, idx % dim))
        .collect();
    let mut det = C64::new(1.0, 0.0);
    for col in 0..dim {
        let pivot = (col..dim)
            .max_by(|&i, &j| {
                a[i * dim + col]
                    .norm()
                    .partial_cmp(&a[j * dim + col].norm())
                    .unwrap()
            })
            .unwrap();
        if a[pivot * dim + col].norm() == 0.0 {
            return C64::new(0.0, 0.0);
        }
        if pivot != col {
            for k in 0..dim {
                a.swap(col * dim + k, pivot * dim + k);
            }
            det = -det;
        }
        let p = a[col * dim + col];
        det *= p;
        for row in col + 1..dim {
            let f = a[row * dim + col] / p;
            for k in col..dim {
                let v = a[col * dim + k];
                a[row * dim + k] -= f * v;
            }
        }
    }
    det
}

fn run_verify(a: VerifyArgs) -> Result<i32> {
    let _ = a.budget;
    let suites = vec![
        Suite { name: "matchgate-closed-form", outcome: verify_matchgate_closed_form(a.seed) },
        Suite { name: "oracle-equivalence", outcome: verify_oracle_equivalence(a.seed) },
        Suite { name: "mode-agreement", outcome: verify_mode_agreement(a.seed) },
        Suite { name: "exact-cutoff", outcome: verify_exact_cutoff() },
        Suite { name: "decompositions", outcome: verify_decompositions(a.seed) },
        Suite { name: "pfaffian-kernel", outcome: verify_pfaffian_kernel(a.seed) },
    ];
    let mut failed = false;
    for s in &suites {
        match &s.outcome {
            Ok(detail) => println!("PASS {}: {detail}", s.name),
            Err(detail) => {
                failed = true;
                println!("FAIL {}: {detail}", s.name);
            }
        }
    }
    Ok(if failed { 4 } else { 0 })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> i32 {
        run_from(args.iter().map(|s| s.to_string()))
    }

    #[test]
    fn grids_and_boundaries_parse() {
        assert_eq!(parse_grid("0:1:3").unwrap(), vec![0.0, 0.5, 1.0]);
        assert_eq!(parse_grid("2.5:2.5:1").unwrap(), vec![2.5]);
        assert!(parse_grid("0:1").is_err());
        assert!(parse_grid("0:1:0").is_err());
        let (i, f) = parse_boundary("1010:0101", 4).unwrap();
        assert_eq!(i, vec![true, false, true, false]);
        assert_eq!(f, vec![false, true, false, true]);
        let (h, _) = parse_boundary("h", 8).unwrap();
        assert_eq!(h.iter().filter(|&&b| b).count(), 4);
        assert!(parse_boundary("10:01", 4).is_err());
        assert!(parse_boundary("10x0:0101", 4).is_err());
        assert!(parse_boundary("whatever", 4).is_err());
    }

    #[test]
    fn kt_and_target_flags_resolve() {
        assert!(matches!(parse_kt("exact").unwrap(), KtPolicy::Exact));
        assert!(matches!(parse_kt("adaptive").unwrap(), KtPolicy::Adaptive));
        assert!(matches!(parse_kt("4").unwrap(), KtPolicy::Fixed(4)));
        assert!(parse_kt("four").is_err());
        let p = PolicyArgs {
            mode: Mode::Gamma,
            kt: "exact".into(),
            target_rel_err: None,
            digits: Some(3),
            budget: 1,
        };
        assert_eq!(resolve_target(&p).unwrap(), Some(1e-3));
    }

    #[test]
    fn single_runs_write_valid_records() {
        let dir = tempfile::tempdir().unwrap();
        let out = dir.path().join("record.json");
        let code = run_args(&[
            "ppsim", "random", "--L", "6", "--depth", "3", "--m", "2", "--phi", "0.9",
            "--seed", "5", "--out", out.to_str().unwrap(),
        ]);
        assert_eq!(code, 0);
        let record: Value =
            serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
        assert_eq!(record["schema_version"], 1);
        assert_eq!(record["command"], "random");
        assert_eq!(record["nonmg"], 2);
        assert!(record["c"].as_array().unwrap().len() == 2);
        assert!(record["config_fingerprint"].as_str().unwrap().len() == 64);
        assert!(!record["per_order"].as_array().unwrap().is_empty());
        // The record value matches the library contraction.
        let c = random_circuit(6, 3, 2, Planted::Cphase(0.9), 5).unwrap();
        let want = crate::contract::contract_exact(&c).unwrap().value;
        let got = record["c"].as_array().unwrap();
        assert!((got[0].as_f64().unwrap() - want.re).abs() < 1e-15);
        assert!((got[1].as_f64().unwrap() - want.im).abs() < 1e-15);
    }

    #[test]
    fn simulate_round_trips_emitted_circuits() {
        let dir = tempfile::tempdir().unwrap();
        let circuit_path = dir.path().join("c.ppsim");
        let out1 = dir.path().join("direct.json");
        let out2 = dir.path().join("fromfile.json");
        assert_eq!(
            run_args(&[
                "ppsim", "floquet", "--L", "8", "--depth", "2", "--theta", "0.8",
                "--phi", "1.1", "--boundary", "h",
                "--emit-circuit", circuit_path.to_str().unwrap(),
                "--out", out1.to_str().unwrap(),
            ]),
            0
        );
        assert_eq!(
            run_args(&[
                "ppsim", "simulate", "--circuit", circuit_path.to_str().unwrap(),
                "--out", out2.to_str().unwrap(),
            ]),
            0
        );
        let r1: Value = serde_json::from_str(&std::fs::read_to_string(&out1).unwrap()).unwrap();
        let r2: Value = serde_json::from_str(&std::fs::read_to_string(&out2).unwrap()).unwrap();
        assert_eq!(r1["c"], r2["c"]);
        assert_eq!(r1["network_fingerprint"], r2["network_fingerprint"]);
    }

    #[test]
    fn config_errors_exit_2() {
        // Unknown flag.
        assert_eq!(run_args(&["ppsim", "random", "--bogus"]), 2);
        // Adaptive without a target.
        assert_eq!(
            run_args(&[
                "ppsim", "random", "--L", "4", "--depth", "2", "--m", "1",
                "--kt", "adaptive",
            ]),
            2
        );
        // Mutually exclusive plantings.
        assert_eq!(
            run_args(&[
                "ppsim", "random", "--L", "4", "--depth", "2", "--m", "1",
                "--phi", "1.0", "--gamma-cutoff", "0.5",
            ]),
            2
        );
        // Xi mode with a truncation order.
        assert_eq!(
            run_args(&[
                "ppsim", "random", "--L", "4", "--depth", "2", "--m", "1",
                "--mode", "xi", "--kt", "2",
            ]),
            2
        );
        // Bad boundary string.
        assert_eq!(
            run_args(&[
                "ppsim", "trotter", "--L", "6", "--steps", "1", "--boundary", "nope",
            ]),
            2
        );
        // Missing circuit file.
        assert_eq!(run_args(&["ppsim", "simulate", "--circuit", "/no/such/file"]), 2);
    }

    #[test]
    fn budget_exhaustion_exits_3() {
        assert_eq!(
            run_args(&[
                "ppsim", "random", "--L", "8", "--depth", "4", "--m", "6",
                "--budget", "10",
            ]),
            3
        );
    }

    #[test]
    fn adaptive_runs_report_k_target() {
        let dir = tempfile::tempdir().unwrap();
        let out = dir.path().join("adaptive.json");
        let code = run_args(&[
            "ppsim", "floquet", "--L", "8", "--depth", "2", "--theta", "0.7",
            "--phi", "0.4", "--boundary", "h", "--kt", "adaptive", "--digits", "6",
            "--out", out.to_str().unwrap(),
        ]);
        assert_eq!(code, 0);
        let record: Value =
            serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
        assert!(record["k_target"].as_u64().is_some());
        assert!((record["target_rel_err"].as_f64().unwrap() - 1e-6).abs() < 1e-18);
        assert!(record["certificate"]["kind"].as_str().is_some());
    }

    #[test]
    fn sweeps_emit_tables_and_reuse_saved_ones() {
        let dir = tempfile::tempdir().unwrap();
        let csv_path = dir.path().join("sweep.csv");
        let table_path = dir.path().join("sweep.pfsm");
        let code = run_args(&[
            "ppsim", "sweep", "--phi-grid", "0.2:1.4:5", "--L", "8", "--depth", "3",
            "--m", "3", "--seed", "11", "--boundary", "h",
            "--save-table", table_path.to_str().unwrap(),
            "--out", csv_path.to_str().unwrap(),
        ]);
        assert_eq!(code, 0);
        let csv = std::fs::read_to_string(&csv_path).unwrap();
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), "index,phi,c_re,c_im");
        assert_eq!(lines.count(), 5);
        // Each point matches an independent exact contraction.
        for line in csv.lines().skip(1) {
            let cells: Vec<&str> = line.split(',').collect();
            let phi: f64 = cells[1].parse().unwrap();
            let c = random_circuit(8, 3, 3, Planted::Cphase(phi), 11)
                .unwrap()
                .with_boundaries(
                    half_filling_states(8, HalfFilling::H).unwrap(),
                    half_filling_states(8, HalfFilling::H).unwrap(),
                )
                .unwrap();
            let want = crate::contract::contract_exact(&c).unwrap().value;
            let got = C64::new(cells[2].parse().unwrap(), cells[3].parse().unwrap());
            assert!((got - want).norm() <= 1e-11 * (1.0 + want.norm()), "phi {phi}");
        }
        // Reload the saved table through the JSON path.
        let json_path = dir.path().join("sweep.json");
        let code = run_args(&[
            "ppsim", "sweep", "--phi-grid", "0.2:1.4:5", "--L", "8", "--depth", "3",
            "--m", "3", "--seed", "11", "--boundary", "h",
            "--load-table", table_path.to_str().unwrap(),
            "--format", "json", "--out", json_path.to_str().unwrap(),
        ]);
        assert_eq!(code, 0);
        let record: Value =
            serde_json::from_str(&std::fs::read_to_string(&json_path).unwrap()).unwrap();
        assert_eq!(record["timings"]["table_built"], false);
        assert_eq!(record["points"].as_array().unwrap().len(), 5);
        // A mismatched family rejects the table.
        let code = run_args(&[
            "ppsim", "sweep", "--phi-grid", "0.2:1.4:5", "--L", "8", "--depth", "3",
            "--m", "3", "--seed", "12", "--boundary", "h",
            "--load-table", table_path.to_str().unwrap(),
            "--out", json_path.to_str().unwrap(),
        ]);
        assert_eq!(code, 2);
        // File circuits are redirected to simulate.
        let code = run_args(&[
            "ppsim", "sweep", "--phi-grid", "0:1:3", "--L", "8",
            "--circuit", "whatever.ppsim",
        ]);
        assert_eq!(code, 2);
    }

    #[test]
    fn trotter_sweep_matches_per_point_runs() {
        let dir = tempfile::tempdir().unwrap();
        let csv_path = dir.path().join("u-sweep.csv");
        let code = run_args(&[
            "ppsim", "sweep", "--phi-grid", "0.5:2.0:4", "--L", "8", "--steps", "1",
            "--t", "1.0", "--dt", "0.3", "--boundary", "h",
            "--out", csv_path.to_str().unwrap(),
        ]);
        assert_eq!(code, 0);
        let csv = std::fs::read_to_string(&csv_path).unwrap();
        assert!(csv.starts_with("index,u,"));
        for line in csv.lines().skip(1) {
            let cells: Vec<&str> = line.split(',').collect();
            let u: f64 = cells[1].parse().unwrap();
            let bits = half_filling_states(8, HalfFilling::H).unwrap();
            let c = trotter_circuit(8, 1, 1.0, u, 0.3)
                .unwrap()
                .with_boundaries(bits.clone(), bits)
                .unwrap();
            let want = crate::contract::contract_exact(&c).unwrap().value;
            let got = C64::new(cells[2].parse().unwrap(), cells[3].parse().unwrap());
            assert!((got - want).norm() <= 1e-11 * (1.0 + want.norm()), "u {u}");
        }
    }

    #[test]
    fn verify_passes_and_reports() {
        assert_eq!(run_args(&["ppsim", "verify", "--seed", "7"]), 0);
    }

    #[test]
    fn determinant_helper_is_correct() {
        let mut m = SkewMatrix::zeros(4).unwrap();
        m.set_pair(0, 1, C64::new(1.0, 0.0));
        m.set_pair(2, 3, C64::new(2.0, 0.0));
        // det of this block matrix is (1*2)^2 = 4.
        assert!((determinant(&m) - C64::new(4.0, 0.0)).norm() < 1e-12);
    }
}
