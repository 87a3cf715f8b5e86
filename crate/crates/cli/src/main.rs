use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rieszlab_core::ansatz::*;
use rieszlab_core::bounds::{
    check_bound, lower_bound_prediction, upper_bound_prediction, BoundKind, PredictedBound,
};
use rieszlab_core::classifier::*;
use rieszlab_core::probe::*;
use rieszlab_core::{convolve_radial, detect_divergence, DivergenceCheck, Error, KernelParams, QuadratureConfig};
use serde::Serialize;
use serde_json::{json, Value};

mod parse;

use parse::{ProfileSpec, Radii};

const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser)]
#[command(name = "rieszlab", version, about = "Radial Riesz potentials and existence regimes for a nonlocal biharmonic problem")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a parameter tuple.
    Classify(ClassifyArgs),
    /// Sample K ∗ f at log-spaced radii.
    Convolve(ConvolveArgs),
    /// Predict and check the asymptotic bound for K ∗ f.
    Asymptotics(AsymptoticsArgs),
    /// Tabulate the supersolution ansatz.
    Ansatz(AnsatzArgs),
    /// Verify a supersolution construction.
    Verify(VerifyArgs),
    /// Quantities behind the non-existence arguments.
    Probe(ProbeArgs),
    /// Reproduce the regime table.
    Table(TableArgs),
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Json,
    Text,
    Csv,
}

#[derive(Args, Serialize)]
struct Output {
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write to this file instead of stdout.
    #[arg(long)]
    #[serde(skip)]
    out: Option<PathBuf>,
}

#[derive(Args, Serialize)]
struct KernelArgs {
    #[arg(long = "N")]
    #[serde(rename = "N")]
    n: u32,
    #[arg(long, value_parser = parse::real, allow_hyphen_values = true)]
    alpha: f64,
    #[arg(long, value_parser = parse::real, allow_hyphen_values = true)]
    beta: f64,
}

impl KernelArgs {
    fn kernel(&self) -> Result<KernelParams, Error> {
        KernelParams::new(self.n, self.alpha, self.beta)
    }
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
enum SideArg {
    #[value(name = "P+")]
    #[serde(rename = "P+")]
    Plus,
    #[value(name = "P-")]
    #[serde(rename = "P-")]
    Minus,
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum UClassArg {
    General,
    Bounded,
    Radial,
}

#[derive(Args, Serialize)]
struct ClassifyArgs {
    #[arg(long, value_enum)]
    side: SideArg,
    #[command(flatten)]
    #[serde(flatten)]
    kernel: KernelArgs,
    #[arg(long, value_parser = parse::real)]
    p: f64,
    #[arg(long, value_parser = parse::real)]
    q: f64,
    #[arg(long, value_enum)]
    u_class: Option<UClassArg>,
    #[command(flatten)]
    #[serde(skip)]
    output: Output,
}

#[derive(Args, Serialize)]
struct ConvolveArgs {
    #[command(flatten)]
    #[serde(flatten)]
    kernel: KernelArgs,
    /// ball:r, power:sigma:kappa:A, clipped:sigma or ansatz:gamma:tau:A
    #[arg(long, value_parser = parse::profile)]
    profile: ProfileSpec,
    /// Raise an ansatz profile to this power.
    #[arg(long, value_parser = parse::real, default_value = "1")]
    power: f64,
    /// start:stop:count, log-spaced
    #[arg(long, value_parser = parse::radii)]
    radii: Radii,
    #[command(flatten)]
    #[serde(skip)]
    output: Output,
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum BoundArg {
    Lower,
    Upper,
}

#[derive(Args, Serialize)]
struct AsymptoticsArgs {
    #[command(flatten)]
    #[serde(flatten)]
    kernel: KernelArgs,
    #[arg(long, value_parser = parse::profile)]
    profile: ProfileSpec,
    #[arg(long, value_parser = parse::real, default_value = "1")]
    power: f64,
    #[arg(long, value_enum, default_value = "upper")]
    bound: BoundArg,
    /// lo:hi
    #[arg(long, value_parser = parse::window, default_value = "1e3:1e7")]
    window: (f64, f64),
    #[command(flatten)]
    #[serde(skip)]
    output: Output,
}

#[derive(Args, Serialize)]
struct AnsatzArgs {
    #[arg(long = "N")]
    #[serde(rename = "N")]
    n: u32,
    #[arg(long, value_parser = parse::real)]
    gamma: f64,
    #[arg(long, value_parser = parse::real, allow_hyphen_values = true, default_value = "0")]
    tau: f64,
    #[arg(long = "A", value_parser = parse::real, default_value = "10")]
    #[serde(rename = "A")]
    a: f64,
    /// Defaults to twice lambda*.
    #[arg(long, value_parser = parse::real)]
    lambda: Option<f64>,
    #[arg(long, value_parser = parse::radii, default_value = "1e-2:1e6:40")]
    radii: Radii,
    #[command(flatten)]
    #[serde(skip)]
    output: Output,
}

#[derive(Args, Serialize)]
struct VerifyArgs {
    /// 1a, 1b, 2, 3, 4, 5, 6, T4-1 or T4-2
    #[arg(long)]
    case: String,
    #[command(flatten)]
    #[serde(flatten)]
    kernel: KernelArgs,
    #[arg(long, value_parser = parse::real)]
    p: f64,
    #[arg(long, value_parser = parse::real)]
    q: f64,
    #[arg(long, value_parser = parse::real)]
    lambda: Option<f64>,
    /// Replaces the default grid of 0 plus 60 points in [1e-2, 1e6].
    #[arg(long, value_parser = parse::radii)]
    radii: Option<Radii>,
    #[command(flatten)]
    #[serde(skip)]
    output: Output,
}

#[derive(Args, Serialize)]
struct ProbeArgs {
    #[command(subcommand)]
    what: ProbeCommand,
}

#[derive(Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
enum ProbeCommand {
    /// Growth quantity of a non-existence clause.
    Certificate(CertificateArgs),
    /// Constant in the test-function bound.
    TestFunction(TestFunctionArgs),
    /// Mass of u^p over a ball.
    Mass(MassArgs),
    /// K ∗ u₀^p for u₀ = max(1, r)^(2−N).
    Chain(ChainArgs),
}

#[derive(Args, Serialize)]
struct CertificateArgs {
    #[command(flatten)]
    #[serde(flatten)]
    kernel: KernelArgs,
    #[arg(long, value_parser = parse::real)]
    p: f64,
    #[arg(long, value_parser = parse::real)]
    q: f64,
    /// e.g. "Thm2(iv)"; defaults to the first applicable clause
    #[arg(long)]
    clause: Option<String>,
    #[arg(long, value_parser = parse::real, allow_hyphen_values = true)]
    theta: Option<f64>,
    #[arg(long, value_parser = parse::radii, default_value = "1e2:1e8:25")]
    radii: Radii,
    #[command(flatten)]
    #[serde(skip)]
    output: Output,
}

#[derive(Args, Serialize)]
struct TestFunctionArgs {
    #[arg(long = "N")]
    #[serde(rename = "N")]
    n: u32,
    #[arg(long, default_value = "4")]
    k: u32,
    #[arg(long, value_parser = parse::real, default_value = "2")]
    delta: f64,
    /// Scales R to evaluate; repeatable.
    #[arg(long = "R", value_parser = parse::real, num_args = 1.., default_values = ["10", "100", "1000"])]
    #[serde(rename = "R")]
    scales: Vec<f64>,
    #[arg(long, value_parser = parse::real, default_value = "1")]
    lambda: f64,
    #[arg(long, default_value = "8000")]
    points: usize,
    #[command(flatten)]
    #[serde(skip)]
    output: Output,
}

#[derive(Args, Serialize)]
struct MassArgs {
    #[arg(long = "N")]
    #[serde(rename = "N")]
    n: u32,
    #[arg(long, value_parser = parse::profile)]
    profile: ProfileSpec,
    #[arg(long, value_parser = parse::real)]
    p: f64,
    #[arg(long, value_parser = parse::radii)]
    radii: Radii,
    #[command(flatten)]
    #[serde(skip)]
    output: Output,
}

#[derive(Args, Serialize)]
struct ChainArgs {
    #[command(flatten)]
    #[serde(flatten)]
    kernel: KernelArgs,
    #[arg(long, value_parser = parse::real)]
    p: f64,
    #[arg(long, value_parser = parse::radii, default_value = "1e3:1e7:12")]
    radii: Radii,
    #[command(flatten)]
    #[serde(skip)]
    output: Output,
}

#[derive(Args, Serialize)]
struct TableArgs {
    #[arg(long = "N")]
    #[serde(rename = "N")]
    n: u32,
    /// α samples; defaults to one interior value and α = N.
    #[arg(long, value_parser = parse::real, num_args = 1..)]
    alpha: Option<Vec<f64>>,
    #[command(flatten)]
    #[serde(skip)]
    output: Output,
}

/// Why a command stopped; mapped onto the exit code.
enum Failure {
    Core(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

fn error_code(e: &Error) -> u8 {
    match e {
        Error::QuadratureFailure { .. } => 5,
        Error::DivergentIntegral(_) => 6,
        _ => 2,
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::InvalidDimension(_) => "InvalidDimension",
        Error::InvalidAlpha { .. } => "InvalidAlpha",
        Error::InvalidBeta { .. } => "InvalidBeta",
        Error::NonpositiveRadius(_) => "NonpositiveRadius",
        Error::QuadratureFailure { .. } => "QuadratureFailure",
        Error::DivergentIntegral(_) => "DivergentIntegral",
        Error::MissingAsymptoticSpec => "MissingAsymptoticSpec",
        Error::OutOfHypothesis(_) => "OutOfHypothesis",
        Error::HypothesisViolated(_) => "HypothesisViolated",
        Error::EmptyParameterInterval(_) => "EmptyParameterInterval",
        Error::DegenerateSamples(_) => "DegenerateSamples",
        Error::ScalingUndefined(_) => "ScalingUndefined",
        Error::InvalidInput(_) => "InvalidInput",
    }
}

/// Shortest round-trip form is used in JSON; delimited output uses 17
/// significant digits.
fn num(x: f64) -> String {
    format!("{x:.16e}")
}

struct Emit {
    text: String,
    code: u8,
}

fn envelope(command: &str, inputs: &impl Serialize, result: impl Serialize) -> String {
    let v = json!({
        "command": command,
        "inputs": inputs,
        "result": result,
        "version": VERSION,
    });
    serde_json::to_string_pretty(&v).expect("serialisable") + "\n"
}

fn csv_text(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<String, Failure> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for r in rows {
        w.write_record(&r)?;
    }
    let bytes = w.into_inner().map_err(|e| Failure::Io(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("utf8"))
}

fn verdict_code(v: Verdict) -> u8 {
    match v {
        Verdict::Exists => 0,
        Verdict::NotExists => 3,
        Verdict::Open => 4,
    }
}

fn cmd_classify(a: &ClassifyArgs) -> Result<Emit, Failure> {
    let k = &a.kernel;
    let x = match a.side {
        SideArg::Plus => ProblemParams::plus(k.n, a.p, a.q, k.alpha, k.beta),
        SideArg::Minus => {
            let class = match a.u_class.unwrap_or(UClassArg::General) {
                UClassArg::General => UClass::General,
                UClassArg::Bounded => UClass::Bounded,
                UClassArg::Radial => UClass::Radial,
            };
            ProblemParams::minus(k.n, a.p, a.q, k.alpha, k.beta, class)
        }
    };
    let d = classify(&x)?;
    let code = verdict_code(d.verdict);
    let text = match a.output.format.unwrap_or(Format::Json) {
        Format::Json => envelope("classify", a, &d),
        Format::Text | Format::Csv => {
            let mut s = format!("{} {}\nfired: {}\n", d.verdict, d.clause, d.fired.join(", "));
            if let Some(c) = &d.construction {
                s += &format!(
                    "construction: case {} gamma={} tau={} A={}\n",
                    c.case_id,
                    num(c.params.gamma),
                    num(c.params.tau),
                    num(c.params.a)
                );
            }
            if let Some(n) = &d.note {
                s += &format!("note: {n}\n");
            }
            s
        }
    };
    Ok(Emit { text, code })
}

fn check_divergence(kernel: &KernelParams, f: &dyn rieszlab_core::RadialProfile) -> Result<(), Failure> {
    if let DivergenceCheck::Divergent(case) = detect_divergence(kernel, f)? {
        return Err(Error::DivergentIntegral(case).into());
    }
    Ok(())
}

fn cmd_convolve(a: &ConvolveArgs) -> Result<Emit, Failure> {
    let kernel = a.kernel.kernel()?;
    let snap = Some(kernel.n as f64 - kernel.alpha);
    let f = a.profile.build(kernel.n, a.power, snap)?;
    check_divergence(&kernel, &*f)?;
    let cfg = QuadratureConfig::default();
    let rows = {
        use rayon::prelude::*;
        a.radii
            .points()
            .par_iter()
            .map(|&r| convolve_radial(&kernel, &*f, r, &cfg))
            .collect::<Result<Vec<_>, Error>>()?
    };
    let text = match a.output.format.unwrap_or(Format::Csv) {
        Format::Json => envelope("convolve", a, &rows),
        Format::Csv | Format::Text => csv_text(
            &["r", "value", "error_estimate"],
            rows.iter().map(|c| vec![num(c.r), num(c.value), num(c.error_estimate)]),
        )?,
    };
    Ok(Emit { text, code: 0 })
}

fn cmd_asymptotics(a: &AsymptoticsArgs) -> Result<Emit, Failure> {
    let kernel = a.kernel.kernel()?;
    let snap = Some(kernel.n as f64 - kernel.alpha);
    let f = a.profile.build(kernel.n, a.power, snap)?;
    let bound: PredictedBound = match a.bound {
        BoundArg::Lower => lower_bound_prediction(&kernel, &*f)?,
        BoundArg::Upper => upper_bound_prediction(&kernel, &*f)?,
    };
    if bound.kind == BoundKind::Divergent {
        return Err(Error::DivergentIntegral(bound.case_id).into());
    }
    let rep = check_bound(&kernel, &*f, &bound, a.window, &QuadratureConfig::default())?;
    let result = json!({
        "case_id": rep.case_id,
        "predicted": rep.predicted,
        "fitted": {
            "power": rep.fitted.power_est,
            "logpower": rep.fitted.logpower_est,
            "residual": rep.fitted.residual,
        },
        "margin": rep.margin,
        "pass": rep.pass,
        "samples": rep.samples,
    });
    let text = match a.output.format.unwrap_or(Format::Json) {
        Format::Json => envelope("asymptotics", a, result),
        Format::Csv | Format::Text => csv_text(
            &["r", "value"],
            rep.samples.iter().map(|&(r, v)| vec![num(r), num(v)]),
        )?,
    };
    Ok(Emit {
        text,
        code: if rep.pass { 0 } else { 1 },
    })
}

fn cmd_ansatz(a: &AnsatzArgs) -> Result<Emit, Failure> {
    let params = AnsatzParams::new(a.n, a.gamma, a.tau, a.a)?;
    let ls = lambda_star(&params);
    let lambda = a.lambda.unwrap_or_else(|| default_lambda(&params));
    if lambda.is_nan() || lambda <= 0.0 {
        return Err(Error::InvalidInput(format!("lambda = {lambda} must be positive")).into());
    }
    let sol = AnsatzSolution::build(params);
    let rows: Vec<[f64; 5]> = a
        .radii
        .points()
        .into_iter()
        .map(|r| {
            [
                r,
                params.w(r),
                params.source(r),
                sol.value(r),
                biharmonic_closed_form(&params, lambda, r),
            ]
        })
        .collect();
    let header = ["r", "w", "source", "u", "bilaplacian_minus_lambda_laplacian"];
    let text = match a.output.format.unwrap_or(Format::Json) {
        Format::Json => {
            let table: Vec<Value> = rows
                .iter()
                .map(|row| Value::Object(header.iter().map(|h| h.to_string()).zip(row.iter().map(|&x| json!(x))).collect()))
                .collect();
            envelope(
                "ansatz",
                a,
                json!({"params": params, "lambda": lambda, "lambda_star": ls, "profile": table}),
            )
        }
        Format::Csv | Format::Text => csv_text(&header, rows.iter().map(|row| row.iter().map(|&x| num(x)).collect()))?,
    };
    Ok(Emit { text, code: 0 })
}

fn cmd_verify(a: &VerifyArgs) -> Result<Emit, Failure> {
    let case: CaseId = a.case.parse()?;
    let kernel = a.kernel.kernel()?;
    let ec = choose_case_params(case, kernel.n, kernel.alpha, kernel.beta, a.p, a.q)?;
    let lambda = a.lambda.unwrap_or_else(|| default_lambda(&ec.params));
    let grid = match &a.radii {
        Some(r) => {
            let mut g = vec![0.0];
            g.extend(r.points());
            g
        }
        None => default_grid(),
    };
    let rep = verify_supersolution(&ec, &kernel, a.p, a.q, lambda, &grid, &QuadratureConfig::default())?;
    let code = if rep.pass { 0 } else { 1 };
    let text = match a.output.format.unwrap_or(Format::Json) {
        Format::Json => envelope("verify", a, &rep),
        Format::Csv | Format::Text => csv_text(
            &["r", "L", "R"],
            rep.margin_profile.iter().map(|&(r, l, rr)| vec![num(r), num(l), num(rr)]),
        )?,
    };
    Ok(Emit { text, code })
}

fn cmd_probe(a: &ProbeArgs) -> Result<Emit, Failure> {
    match &a.what {
        ProbeCommand::Certificate(c) => {
            let k = &c.kernel;
            let x = ProblemParams::plus(k.n, c.p, c.q, k.alpha, k.beta);
            let cert = divergence_certificate(c.clause.as_deref(), &x, c.theta, &c.radii.points())?;
            let text = match c.output.format.unwrap_or(Format::Csv) {
                Format::Json => envelope("probe certificate", a, &cert),
                Format::Csv | Format::Text => csv_text(
                    &["R", "certificate_value", "clause"],
                    cert.values.iter().map(|&(r, v)| vec![num(r), num(v), cert.clause.clone()]),
                )?,
            };
            Ok(Emit { text, code: 0 })
        }
        ProbeCommand::TestFunction(t) => {
            let rows = t
                .scales
                .iter()
                .map(|&r| {
                    let spec = TestFunctionSpec::new(t.k, t.delta, r)?;
                    Ok((r, test_function_bound(&spec, t.n, t.lambda, &default_test_grid(r, t.points))))
                })
                .collect::<Result<Vec<_>, Error>>()?;
            let hi = rows.iter().map(|x| x.1).fold(0.0, f64::max);
            let lo = rows.iter().map(|x| x.1).fold(f64::INFINITY, f64::min);
            let text = match t.output.format.unwrap_or(Format::Json) {
                Format::Json => envelope(
                    "probe test-function",
                    a,
                    json!({"constants": rows, "spread": hi / lo}),
                ),
                Format::Csv | Format::Text => {
                    csv_text(&["R", "constant"], rows.iter().map(|&(r, c)| vec![num(r), num(c)]))?
                }
            };
            Ok(Emit { text, code: 0 })
        }
        ProbeCommand::Mass(m) => {
            let f = m.profile.build(m.n, 1.0, None)?;
            let cfg = QuadratureConfig::default();
            let rows = m
                .radii
                .points()
                .into_iter()
                .map(|r| harnack_mass(&*f, m.n, m.p, r, &cfg))
                .collect::<Result<Vec<_>, Error>>()?;
            let text = match m.output.format.unwrap_or(Format::Csv) {
                Format::Json => envelope("probe mass", a, &rows),
                Format::Csv | Format::Text => csv_text(
                    &["R", "mass", "ratio"],
                    rows.iter().map(|h| vec![num(h.radius), num(h.mass), num(h.ratio)]),
                )?,
            };
            Ok(Emit { text, code: 0 })
        }
        ProbeCommand::Chain(c) => {
            let kernel = c.kernel.kernel()?;
            let rep = lower_bound_chain(&kernel, c.p, &c.radii.points(), &QuadratureConfig::default())?;
            if rep.divergent {
                return Err(Error::DivergentIntegral(format!(
                    "K * u0^p diverges: N - alpha - p(N - 2) = {} > 0",
                    rep.predicted.0
                ))
                .into());
            }
            let text = match c.output.format.unwrap_or(Format::Json) {
                Format::Json => envelope("probe chain", a, &rep),
                Format::Csv | Format::Text => {
                    csv_text(&["r", "value"], rep.samples.iter().map(|&(r, v)| vec![num(r), num(v)]))?
                }
            };
            Ok(Emit { text, code: 0 })
        }
    }
}

fn cmd_table(a: &TableArgs) -> Result<Emit, Failure> {
    let alphas = a.alpha.clone().unwrap_or_else(|| default_alpha_samples(a.n));
    let rows = emit_regime_table(a.n, &alphas)?;
    let code = if rows.iter().all(|r| r.matches) { 0 } else { 1 };
    let text = match a.output.format.unwrap_or(Format::Json) {
        Format::Json => envelope("table", a, &rows),
        Format::Text => render_table_text(&rows),
        Format::Csv => csv_text(
            &["row", "p", "q", "alpha", "beta", "verdict", "clause", "expected_verdict", "matches"],
            rows.iter().map(|r| {
                vec![
                    r.row.to_string(),
                    num(r.instance.p),
                    num(r.instance.q),
                    num(r.instance.alpha),
                    num(r.instance.beta),
                    r.decision.verdict.to_string(),
                    r.decision.clause.clone(),
                    r.expected_verdict.to_string(),
                    r.matches.to_string(),
                ]
            }),
        )?,
    };
    Ok(Emit { text, code })
}

fn output_of(cmd: &Command) -> &Output {
    match cmd {
        Command::Classify(a) => &a.output,
        Command::Convolve(a) => &a.output,
        Command::Asymptotics(a) => &a.output,
        Command::Ansatz(a) => &a.output,
        Command::Verify(a) => &a.output,
        Command::Probe(p) => match &p.what {
            ProbeCommand::Certificate(a) => &a.output,
            ProbeCommand::TestFunction(a) => &a.output,
            ProbeCommand::Mass(a) => &a.output,
            ProbeCommand::Chain(a) => &a.output,
        },
        Command::Table(a) => &a.output,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = std::env::var("THREADS").ok().and_then(|s| s.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let result = match &cli.command {
        Command::Classify(a) => cmd_classify(a),
        Command::Convolve(a) => cmd_convolve(a),
        Command::Asymptotics(a) => cmd_asymptotics(a),
        Command::Ansatz(a) => cmd_ansatz(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Probe(a) => cmd_probe(a),
        Command::Table(a) => cmd_table(a),
    };
    match result {
        Ok(emit) => {
            let written = match &output_of(&cli.command).out {
                Some(path) => fs::write(path, &emit.text),
                None => std::io::stdout().write_all(emit.text.as_bytes()),
            };
            if let Err(e) = written {
                eprintln!("error: cannot write output: {e}");
                return ExitCode::from(2);
            }
            ExitCode::from(emit.code)
        }
        Err(Failure::Core(e)) => {
            eprintln!("error: {}: {e}", error_kind(&e));
            ExitCode::from(error_code(&e))
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
