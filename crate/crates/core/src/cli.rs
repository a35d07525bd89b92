//! The `chebwalk` command line.
//!
//! Exit status is 0 on success, 1 on invalid input (arguments, files,
//! matrix validation) and 2 on numerical failure such as a zero
//! post-selection probability.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;

use crate::apply::{apply_chebyshev, ApplicationResult};
use crate::error::{Error, Result};
use crate::estimators::{
    frobenius_mixed_state, frobenius_via_product, trace_entangled, trace_product, trace_relocation, ComplexValue,
    EstimateReport, Normalization, ShotEstimate, DEFAULT_SHOTS,
};
use crate::power::{estimate_rayleigh, power_iterate, PowerSummary};
use crate::sampling::{Proportion, Sampling, ShotSampler, DEFAULT_SEED};
use crate::scalar::C;
use crate::sparse_oracle::{load_matrix, SparseHermitianMatrix};
use crate::state::{load_qvec, StateVector};
use crate::walk::{verify_walk, InvariantCheck, WalkOperator};

#[derive(Debug, Parser)]
#[command(name = "chebwalk", version, about = "Quantum-walk block encodings of sparse Hermitian matrices")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Prepare T_n(A/s)|B> by post-selection (A|B>/|A|B>| for order 1).
    Apply {
        #[command(flatten)]
        matrix: MatrixArg,
        #[command(flatten)]
        state: StateArgs,
        /// Chebyshev order n.
        #[arg(long, default_value_t = 1)]
        order: usize,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Estimate Tr(A).
    Trace {
        #[command(flatten)]
        matrix: MatrixArg,
        #[arg(long, value_enum, default_value_t = TraceMethod::Entangled)]
        method: TraceMethod,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Estimate Tr(AB).
    TraceProd {
        #[command(flatten)]
        matrix: MatrixArg,
        #[arg(long, value_name = "PATH")]
        matrix_b: PathBuf,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Estimate the Frobenius norm by both routes and compare them.
    Frobenius {
        #[command(flatten)]
        matrix: MatrixArg,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Largest eigenvalue by power iteration and a final Rayleigh estimate.
    Eigmax {
        #[command(flatten)]
        matrix: MatrixArg,
        #[command(flatten)]
        state: OptionalStateArgs,
        #[arg(long, default_value_t = 100)]
        max_iter: usize,
        #[arg(long, default_value_t = 1e-3)]
        tol: f64,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Check the walk invariants on a matrix.
    VerifyWalk {
        #[command(flatten)]
        matrix: MatrixArg,
        /// Highest walk power checked against the Chebyshev identity.
        #[arg(long, default_value_t = 4)]
        order: usize,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TraceMethod {
    Relocation,
    Entangled,
}

impl TraceMethod {
    fn name(self) -> &'static str {
        match self {
            TraceMethod::Relocation => "relocation",
            TraceMethod::Entangled => "entangled",
        }
    }
}

#[derive(Debug, Args)]
pub struct MatrixArg {
    /// Matrix in qmat v1 format.
    #[arg(long, value_name = "PATH")]
    pub matrix: PathBuf,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct StateArgs {
    /// State in qvec v1 format (normalized on load).
    #[arg(long, value_name = "PATH")]
    pub state: Option<PathBuf>,
    /// Computational basis state |K>.
    #[arg(long, value_name = "K")]
    pub basis: Option<usize>,
    /// Uniform superposition.
    #[arg(long)]
    pub uniform: bool,
}

#[derive(Debug, Args)]
#[group(required = false, multiple = false)]
pub struct OptionalStateArgs {
    #[arg(long, value_name = "PATH")]
    pub state: Option<PathBuf>,
    #[arg(long, value_name = "K")]
    pub basis: Option<usize>,
    #[arg(long)]
    pub uniform: bool,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// Measurement shots; 0 returns the exact statevector value.
    #[arg(long, default_value_t = DEFAULT_SHOTS)]
    pub shots: u64,
    #[arg(long, env = "CHEBWALK_SEED", default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Print JSON instead of a table.
    #[arg(long)]
    pub json: bool,
    /// Include exact values next to shot estimates.
    #[arg(long)]
    pub verify: bool,
}

impl RunArgs {
    fn sampling(&self) -> Sampling {
        Sampling::shots(self.shots, self.seed)
    }
}

enum StateSource<'a> {
    File(&'a Path),
    Basis(usize),
    Uniform,
}

impl StateSource<'_> {
    fn load(&self, dim: usize) -> Result<StateVector<f64>> {
        let state = match *self {
            StateSource::File(path) => load_qvec(path)?.state,
            StateSource::Basis(k) => {
                if k >= dim {
                    return Err(Error::InvalidArgument(format!(
                        "--basis: index {k} out of range for dimension {dim}"
                    )));
                }
                StateVector::basis(dim, k)?
            }
            StateSource::Uniform => StateVector::uniform(dim)?,
        };
        if state.dim() != dim {
            return Err(Error::InvalidArgument(format!(
                "--state: dimension {} does not match the matrix dimension {dim}",
                state.dim()
            )));
        }
        Ok(state)
    }
}

fn state_source<'a>(state: Option<&'a PathBuf>, basis: Option<usize>) -> StateSource<'a> {
    match (state, basis) {
        (Some(p), _) => StateSource::File(p),
        (None, Some(k)) => StateSource::Basis(k),
        _ => StateSource::Uniform,
    }
}

fn load(path: &Path) -> Result<SparseHermitianMatrix<f64>> {
    load_matrix(path)
}

#[derive(Serialize)]
struct ApplyReport {
    #[serde(flatten)]
    base: EstimateReport,
    order: usize,
    successes: Option<u64>,
    garbage_norm: f64,
    expected_amplification_rounds: f64,
    output_state: Vec<ComplexValue>,
}

#[derive(Serialize)]
struct FrobeniusReport {
    #[serde(flatten)]
    base: EstimateReport,
    via_product: EstimateReport,
    discrepancy: f64,
}

#[derive(Serialize)]
struct EigmaxReport {
    #[serde(flatten)]
    base: EstimateReport,
    power: PowerSummary,
}

#[derive(Serialize)]
struct VerifyReport {
    command: &'static str,
    dim: usize,
    sparsity: usize,
    passed: bool,
    checks: Vec<InvariantCheck>,
}

/// Post-selection statistics of `apply`: the estimate is the success
/// probability (empirical in shot mode).
fn application_estimate(result: &ApplicationResult<f64>, sampling: Sampling) -> (ShotEstimate<f64>, Option<u64>) {
    let p = result.success_probability;
    let mut est = ShotEstimate::exact(C::new(p, 0.0), Normalization::unit(), result.oracle_queries);
    est.success_probability = Some(p);
    if sampling.is_exact() {
        return (est, None);
    }
    let successes = ShotSampler::new(sampling.seed).binomial(sampling.shots, p);
    let prop = Proportion::from_counts(successes, sampling.shots);
    est.estimate = C::new(successes as f64 / sampling.shots as f64, 0.0);
    est.standard_error = prop.variance.sqrt();
    est.shots = sampling.shots;
    est.seed = Some(sampling.seed);
    est.oracle_queries = result.oracle_queries * sampling.shots;
    (est, Some(successes))
}

struct Output {
    value: Value,
    /// Exit status when the command itself ran but reported a failed check.
    status: i32,
}

fn to_value<S: Serialize>(s: &S) -> Value {
    serde_json::to_value(s).expect("report serializes")
}

fn execute(command: &Command) -> Result<Output> {
    let ok = |value| Ok(Output { value, status: 0 });
    match command {
        Command::Apply {
            matrix,
            state,
            order,
            run,
        } => {
            let a = load(&matrix.matrix)?;
            let b = state_source(state.state.as_ref(), state.basis).load(a.dim())?;
            let result = apply_chebyshev(&a, &b, *order)?;
            let (est, successes) = application_estimate(&result, run.sampling());
            ok(to_value(&ApplyReport {
                base: EstimateReport::new("apply", "post-selection", &est, run.verify),
                order: *order,
                successes,
                garbage_norm: result.garbage_norm,
                expected_amplification_rounds: result.expected_amplification_rounds,
                output_state: result.output_state.amplitudes().iter().map(|&z| z.into()).collect(),
            }))
        }
        Command::Trace { matrix, method, run } => {
            let a = load(&matrix.matrix)?;
            let est = match method {
                TraceMethod::Relocation => trace_relocation(&a, run.sampling())?,
                TraceMethod::Entangled => trace_entangled(&a, run.sampling())?,
            };
            ok(to_value(&EstimateReport::new("trace", method.name(), &est, run.verify)))
        }
        Command::TraceProd { matrix, matrix_b, run } => {
            let a = load(&matrix.matrix)?;
            let b = load(matrix_b)?;
            if a.dim() != b.dim() {
                return Err(Error::InvalidArgument(format!(
                    "--matrix-b: dimension {} does not match --matrix dimension {}",
                    b.dim(),
                    a.dim()
                )));
            }
            let est = trace_product(&a, &b, run.sampling())?;
            ok(to_value(&EstimateReport::new("trace-prod", "post-selected-hadamard", &est, run.verify)))
        }
        Command::Frobenius { matrix, run } => {
            let a = load(&matrix.matrix)?;
            let sampling = run.sampling();
            let mixed = frobenius_mixed_state(&a, sampling)?;
            // the second route runs on the next seed so the two are independent
            let product_sampling = Sampling::shots(sampling.shots, sampling.seed.wrapping_add(1));
            let product = frobenius_via_product(&a, product_sampling)?;
            ok(to_value(&FrobeniusReport {
                base: EstimateReport::new("frobenius", "mixed-state", &mixed, run.verify),
                via_product: EstimateReport::new("frobenius", "via-product", &product, run.verify),
                discrepancy: (mixed.re() - product.re()).abs(),
            }))
        }
        Command::Eigmax {
            matrix,
            state,
            max_iter,
            tol,
            run,
        } => {
            let a = load(&matrix.matrix)?;
            let x0 = state_source(state.state.as_ref(), state.basis).load(a.dim())?;
            let trace = power_iterate(&a, &x0, *max_iter, *tol)?;
            let est = estimate_rayleigh(&a, &trace.last().state, run.sampling())?;
            ok(to_value(&EigmaxReport {
                base: EstimateReport::new("eigmax", "power-rayleigh", &est, run.verify),
                power: trace.summary(),
            }))
        }
        Command::VerifyWalk { matrix, order, .. } => {
            let a = load(&matrix.matrix)?;
            WalkOperator::new(&a)?;
            let checks = verify_walk(&a, *order)?;
            let passed = checks.iter().all(|c| c.passed);
            Ok(Output {
                value: to_value(&VerifyReport {
                    command: "verify-walk",
                    dim: a.dim(),
                    sparsity: a.sparsity(),
                    passed,
                    checks,
                }),
                status: if passed { 0 } else { 2 },
            })
        }
    }
}

fn wants_json(command: &Command) -> bool {
    match command {
        Command::Apply { run, .. }
        | Command::Trace { run, .. }
        | Command::TraceProd { run, .. }
        | Command::Frobenius { run, .. }
        | Command::Eigmax { run, .. } => run.json,
        Command::VerifyWalk { json, .. } => *json,
    }
}

fn render_verify(value: &Value) -> String {
    let mut out = String::new();
    for check in value["checks"].as_array().into_iter().flatten() {
        out.push_str(&format!(
            "{:<4}  {:<52} max error {:.3e} (tolerance {:.0e})\n",
            if check["passed"].as_bool() == Some(true) { "PASS" } else { "FAIL" },
            check["name"].as_str().unwrap_or(""),
            check["max_error"].as_f64().unwrap_or(f64::NAN),
            check["tolerance"].as_f64().unwrap_or(f64::NAN),
        ));
    }
    out
}

/// Flattens a JSON report into `key  value` rows.
fn render_table(value: &Value) -> String {
    fn walk(prefix: &str, v: &Value, rows: &mut Vec<(String, String)>) {
        match v {
            Value::Object(map) => {
                // complex numbers read better on one row
                if let (Some(re), Some(im), 2) = (map.get("re"), map.get("im"), map.len()) {
                    rows.push((prefix.to_string(), format!("{re} {:+}i", im.as_f64().unwrap_or(0.0))));
                    return;
                }
                for (k, x) in map {
                    let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                    walk(&key, x, rows);
                }
            }
            Value::Array(items) if items.iter().all(|x| !x.is_object() && !x.is_array()) => {
                let parts: Vec<String> = items.iter().map(|x| x.to_string()).collect();
                rows.push((prefix.to_string(), parts.join(" ")));
            }
            Value::Array(items) => {
                for (i, x) in items.iter().enumerate() {
                    walk(&format!("{prefix}[{i}]"), x, rows);
                }
            }
            other => rows.push((prefix.to_string(), other.to_string())),
        }
    }
    let mut rows = Vec::new();
    walk("", value, &mut rows);
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    rows.iter().map(|(k, v)| format!("{k:<width$}  {v}\n")).collect()
}

/// Parses `args` (program name first), runs the command and writes the
/// result to `out`, diagnostics to `err`. Returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                1
            } else {
                let _ = write!(out, "{text}");
                0
            };
        }
    };
    match execute(&cli.command) {
        Ok(output) => {
            let text = if wants_json(&cli.command) {
                let mut s = serde_json::to_string_pretty(&output.value).expect("json");
                s.push('\n');
                s
            } else if matches!(cli.command, Command::VerifyWalk { .. }) {
                render_verify(&output.value)
            } else {
                render_table(&output.value)
            };
            let _ = out.write_all(text.as_bytes());
            output.status
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_numerical() {
                2
            } else {
                1
            }
        }
    }
}
