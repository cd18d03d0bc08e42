//! `expquad` command-line front end.
//!
//! Every subcommand writes CSV (header row, comma separated, 17 significant
//! digits) to stdout or `--output`. Exit codes: 0 success, 2 usage error,
//! 3 numerical failure.
//!
//! `--config FILE` reads `key=value` lines (`#` starts a comment). Keys are
//! long flag names of the chosen subcommand; flags given on the command line
//! win over the file.

use crate::error::Error;
use crate::integrand::Integrand;
use crate::laplace::{heat_sine_exact, invert, paper_tuning, ScalarProblem};
use crate::oracle::{integrate_full, integrate_weights, phase1_unbounded, Kind, PanelRule};
use crate::quadrature::{convergence_table, ProductRule};
use crate::weights::{compute_weights, ExpParam, Phase3Params, DEFAULT_MU0};
use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

const ADMISSIBLE: &str = "All quantities are dimensionless. The exponent parameter z must satisfy Re z <= mu0 \
(default mu0 = 4) and |z| >= 1e-8.";

#[derive(Debug, Parser)]
#[command(
    name = "expquad",
    version,
    about = "Product Clenshaw-Curtis quadrature of int_0^2 f(s) exp(zs) ds",
    long_about = None,
    args_override_self = true
)]
pub struct Cli {
    /// Plain-text key=value file with default flag values
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// Write CSV here instead of standard output
    #[arg(long, global = true, value_name = "FILE")]
    pub output: Option<PathBuf>,
    /// Worker threads for batch evaluation (default: logical processors)
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Weight vectors omega_n(z), rho_n(z) for n = 0..L.
    #[command(after_help = ADMISSIBLE)]
    Weights(WeightsArgs),
    /// Apply the rule of degree L to a builtin integrand.
    #[command(after_help = ADMISSIBLE)]
    Integrate(IntegrateArgs),
    /// Self-convergence table over z_r = z_base * factor^r and a list of degrees.
    #[command(after_help = ADMISSIBLE)]
    Convergence(ConvergenceArgs),
    /// |rho_n| from the raw forward recurrence next to the stable engine.
    #[command(after_help = ADMISSIBLE)]
    Instability(InstabilityArgs),
    /// Invert the Laplace transform of one fractional spectral mode with f(t) = sin t, u0 = 1.
    #[command(
        name = "demo-laplace",
        after_help = "Time t and step k are in the time units of the problem. Inner integrals use \
parameters (t/2) z_j, admitted when Re <= mu0 = 4."
    )]
    DemoLaplace(LaplaceArgs),
}

/// Exponent parameter as RE,IM.
#[derive(Debug, Args)]
pub struct ZArg {
    /// Exponent parameter as RE,IM (e.g. -125.66,0)
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub z: Complex64,
    /// Ceiling for Re z
    #[arg(long, default_value_t = DEFAULT_MU0)]
    pub mu0: f64,
}

#[derive(Debug, Args)]
pub struct WeightsArgs {
    #[command(flatten)]
    pub z: ZArg,
    /// Highest weight index (rule degree)
    #[arg(long = "L")]
    pub degree: usize,
    /// Append absolute errors against the brute-force integrator
    #[arg(long)]
    pub verify: bool,
}

#[derive(Debug, Args)]
pub struct IntegrateArgs {
    /// Builtin integrand: constant[:c], monomial:k, chebyshev:d, legendre:n, smooth-j,
    /// alpha-half, alpha-three-halves, alpha:a
    #[arg(long)]
    pub f: String,
    #[command(flatten)]
    pub z: ZArg,
    /// Rule degree
    #[arg(long = "L")]
    pub degree: usize,
    /// Append the absolute error against the brute-force integrator
    #[arg(long)]
    pub verify: bool,
}

#[derive(Debug, Args)]
pub struct ConvergenceArgs {
    /// Builtin integrand (see `integrate --help`)
    #[arg(long)]
    pub f: String,
    /// First parameter, RE,IM
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub z_base: Complex64,
    /// Ratio between consecutive parameters
    #[arg(long, default_value_t = 4.0, allow_hyphen_values = true)]
    pub z_factor: f64,
    /// Number of parameters
    #[arg(long, default_value_t = 6)]
    pub z_count: usize,
    /// Degrees, comma separated
    #[arg(long = "L-list", value_delimiter = ',', required = true)]
    pub degrees: Vec<usize>,
    /// Reference degree; must exceed every entry of --L-list
    #[arg(long = "L-ref")]
    pub reference: usize,
    /// Ceiling for Re z
    #[arg(long, default_value_t = DEFAULT_MU0)]
    pub mu0: f64,
}

#[derive(Debug, Args)]
pub struct InstabilityArgs {
    #[command(flatten)]
    pub z: ZArg,
    /// Highest index
    #[arg(long = "L")]
    pub degree: usize,
}

#[derive(Debug, Args)]
pub struct LaplaceArgs {
    /// Fractional order, in (-1, 1)
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: f64,
    /// Eigenvalue of the spatial operator (> 0)
    #[arg(long = "lam-eig")]
    pub lam_eig: f64,
    /// Time horizon used to tune the contour
    #[arg(long = "T")]
    pub horizon: f64,
    /// Contour truncation: 2N+1 nodes
    #[arg(long = "N")]
    pub n: usize,
    /// Degree of the inner quadrature rule
    #[arg(long = "L")]
    pub degree: usize,
    /// Contour step k (default c_k / sqrt(N))
    #[arg(long)]
    pub k_override: Option<f64>,
    /// Evaluation times, comma separated (default: T)
    #[arg(long, value_delimiter = ',')]
    pub times: Vec<f64>,
}

fn parse_complex(s: &str) -> Result<Complex64, String> {
    let (re, im) = s
        .split_once(',')
        .ok_or_else(|| format!("expected RE,IM, got {s:?}"))?;
    let part = |p: &str| {
        p.parse::<f64>()
            .map_err(|e| format!("bad number {p:?} in {s:?}: {e}"))
    };
    Ok(Complex64::new(part(re)?, part(im)?))
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Numeric(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Numeric(e)
    }
}

fn usage(e: Error) -> Failure {
    Failure::Usage(e.to_string())
}

fn num(x: f64) -> String {
    format!("{x:.16e}")
}

const SUBCOMMANDS: [&str; 5] = ["weights", "integrate", "convergence", "instability", "demo-laplace"];

/// Reads `--config` (if present) and splices its entries right after the
/// subcommand, so later command-line flags override them.
fn with_config(args: Vec<OsString>) -> Result<Vec<OsString>, Failure> {
    let mut path = None;
    for (i, a) in args.iter().enumerate() {
        let Some(a) = a.to_str() else { continue };
        if a == "--config" {
            path = args.get(i + 1).cloned();
        } else if let Some(p) = a.strip_prefix("--config=") {
            path = Some(p.into());
        }
    }
    let Some(path) = path else { return Ok(args) };
    let text = std::fs::read_to_string(&path)
        .map_err(|e| Failure::Usage(format!("cannot read config {}: {e}", PathBuf::from(&path).display())))?;
    let mut extra: Vec<OsString> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| Failure::Usage(format!("config line {}: expected key=value", lineno + 1)))?;
        let (key, value) = (key.trim(), value.trim());
        match value {
            "true" => extra.push(format!("--{key}").into()),
            "false" => {}
            _ => extra.push(format!("--{key}={value}").into()),
        }
    }
    let pos = args
        .iter()
        .position(|a| a.to_str().is_some_and(|a| SUBCOMMANDS.contains(&a)))
        .ok_or_else(|| Failure::Usage("missing subcommand".into()))?;
    let mut out = args[..=pos].to_vec();
    out.extend(extra);
    out.extend_from_slice(&args[pos + 1..]);
    Ok(out)
}

/// Parses `args` (including the program name), runs the subcommand and
/// returns the exit code. CSV goes to `out` unless `--output` is given.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString>,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let args = match with_config(args) {
        Ok(a) => a,
        Err(f) => return report(f, err),
    };
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if code == EXIT_OK {
                let _ = out.write_all(text.as_bytes());
            } else {
                let _ = err.write_all(text.as_bytes());
            }
            return code;
        }
    };
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cli.threads {
        if n == 0 {
            return report(Failure::Usage("--threads must be at least 1".into()), err);
        }
        builder = builder.num_threads(n);
    }
    let pool = match builder.build() {
        Ok(p) => p,
        Err(e) => return report(Failure::Numeric(Error::InvalidParameter(e.to_string())), err),
    };
    let csv = match pool.install(|| dispatch(&cli.command)) {
        Ok(csv) => csv,
        Err(f) => return report(f, err),
    };
    let written = match &cli.output {
        Some(path) => std::fs::write(path, csv.as_bytes()),
        None => out.write_all(csv.as_bytes()),
    };
    match written {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: cannot write output: {e}");
            EXIT_USAGE
        }
    }
}

fn report(f: Failure, err: &mut dyn Write) -> i32 {
    match f {
        Failure::Usage(msg) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Failure::Numeric(e) => {
            let _ = writeln!(err, "numerical failure: {e}");
            EXIT_NUMERIC
        }
    }
}

fn dispatch(cmd: &Command) -> Result<String, Failure> {
    match cmd {
        Command::Weights(a) => cmd_weights(a),
        Command::Integrate(a) => cmd_integrate(a),
        Command::Convergence(a) => cmd_convergence(a),
        Command::Instability(a) => cmd_instability(a),
        Command::DemoLaplace(a) => cmd_laplace(a),
    }
}

fn param(z: &ZArg) -> Result<ExpParam, Failure> {
    ExpParam::with_ceiling(z.z, z.mu0).map_err(usage)
}

fn positive_degree(degree: usize) -> Result<usize, Failure> {
    if degree == 0 {
        Err(usage(Error::ZeroDegree))
    } else {
        Ok(degree)
    }
}

fn cmd_weights(a: &WeightsArgs) -> Result<String, Failure> {
    let z = param(&a.z)?;
    let degree = positive_degree(a.degree)?;
    let table = compute_weights(&z, degree, &Phase3Params::default())?;
    let oracle = a.verify.then(|| {
        let rule = PanelRule::resolving(degree, z.modulus());
        (
            integrate_weights(degree, z.z(), Kind::T, &rule),
            integrate_weights(degree, z.z(), Kind::U, &rule),
        )
    });
    let mut csv = String::from("n,omega_re,omega_im,rho_re,rho_im,phase");
    if a.verify {
        csv.push_str(",omega_oracle_abs_err,rho_oracle_abs_err");
    }
    csv.push('\n');
    for n in 0..=degree {
        let (w, r) = (table.omega[n], table.rho[n]);
        let _ = write!(
            csv,
            "{n},{},{},{},{},{}",
            num(w.re),
            num(w.im),
            num(r.re),
            num(r.im),
            table.phase_of[n].as_str()
        );
        if let Some((ow, or)) = &oracle {
            let _ = write!(csv, ",{},{}", num((w - ow[n]).norm()), num((r - or[n]).norm()));
        }
        csv.push('\n');
    }
    Ok(csv)
}

fn builtin(spec: &str) -> Result<Integrand, Failure> {
    Integrand::builtin(spec).map_err(usage)
}

fn cmd_integrate(a: &IntegrateArgs) -> Result<String, Failure> {
    let z = param(&a.z)?;
    let degree = positive_degree(a.degree)?;
    let f = builtin(&a.f)?;
    let result = ProductRule::new(&f, degree)?.apply(&z)?;
    let mut csv = String::from("value_re,value_im,coeff_tail");
    if a.verify {
        csv.push_str(",oracle_abs_err");
    }
    csv.push('\n');
    let _ = write!(csv, "{},{},{}", num(result.value.re), num(result.value.im), num(result.coeff_tail));
    if a.verify {
        let rule = PanelRule::resolving(degree, z.modulus()).doubled();
        let exact = integrate_full(|s| f.eval(s), z.z(), &rule);
        let _ = write!(csv, ",{}", num((result.value - exact).norm()));
    }
    csv.push('\n');
    Ok(csv)
}

fn cmd_convergence(a: &ConvergenceArgs) -> Result<String, Failure> {
    let f = builtin(&a.f)?;
    if a.z_count == 0 {
        return Err(Failure::Usage("--z-count must be at least 1".into()));
    }
    if !(a.z_factor.is_finite() && a.z_factor != 0.0) {
        return Err(Failure::Usage("--z-factor must be finite and nonzero".into()));
    }
    for &d in &a.degrees {
        positive_degree(d)?;
    }
    if a.degrees.iter().any(|&d| d >= a.reference) {
        return Err(Failure::Usage("--L-ref must exceed every entry of --L-list".into()));
    }
    let zs = (0..a.z_count)
        .map(|r| ExpParam::with_ceiling(a.z_base * a.z_factor.powi(r as i32), a.mu0).map_err(usage))
        .collect::<Result<Vec<_>, _>>()?;
    let table = convergence_table(&f, &zs, &a.degrees, a.reference)?;
    let mut csv = String::from("L");
    for r in 0..a.z_count {
        let _ = write!(csv, ",r{r}");
    }
    csv.push('\n');
    for (degree, row) in a.degrees.iter().zip(&table) {
        let _ = write!(csv, "{degree}");
        for e in row {
            let _ = write!(csv, ",{}", num(*e));
        }
        csv.push('\n');
    }
    Ok(csv)
}

fn cmd_instability(a: &InstabilityArgs) -> Result<String, Failure> {
    let z = param(&a.z)?;
    let degree = positive_degree(a.degree)?;
    let unbounded = phase1_unbounded(z.z(), degree);
    let stable = compute_weights(&z, degree, &Phase3Params::default())?;
    let mut csv = String::from("n,rho_recurrence_abs,rho_stable_abs\n");
    for n in 0..=degree {
        let _ = writeln!(csv, "{n},{},{}", num(unbounded[n].norm()), num(stable.rho[n].norm()));
    }
    Ok(csv)
}

fn cmd_laplace(a: &LaplaceArgs) -> Result<String, Failure> {
    let degree = positive_degree(a.degree)?;
    if a.n == 0 {
        return Err(Failure::Usage("--N must be at least 1".into()));
    }
    let mut contour = paper_tuning(a.horizon, a.alpha, a.n).map_err(usage)?;
    if let Some(k) = a.k_override {
        contour = contour.with_step(k).map_err(usage)?;
    }
    let prob = ScalarProblem::sine_forced(a.lam_eig, a.alpha).map_err(usage)?;
    let times = if a.times.is_empty() { vec![a.horizon] } else { a.times.clone() };
    if let Some(t) = times.iter().find(|t| !(t.is_finite() && **t > 0.0)) {
        return Err(Failure::Usage(format!("times must be positive, got {t}")));
    }
    let closed_form = a.alpha == 0.0;
    let mut csv = String::from("t,U_re,U_im");
    if closed_form {
        csv.push_str(",exact_abs_err");
    }
    csv.push('\n');
    for &t in &times {
        let u = invert(t, &prob, &contour, degree)?;
        let _ = write!(csv, "{},{},{}", num(t), num(u.re), num(u.im));
        if closed_form {
            let exact = heat_sine_exact(t, a.lam_eig, 1.0);
            let _ = write!(csv, ",{}", num((u - exact).norm()));
        }
        csv.push('\n');
    }
    Ok(csv)
}
