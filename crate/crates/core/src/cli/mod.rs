//! The `deginv` command line: single-value computations, degeneration sweeps
//! and the embedded self-test.
//!
//! Exit codes: 0 success, 1 self-test failure, 2 bad arguments, 3 domain
//! error, 4 accuracy or vanishing error, 5 extrapolation fit error.

mod output;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use crate::degeneration::{run_sweep, Family, NonSeparatingFamily, SeparatingFamily, SweepGrid, SweepMode};
use crate::error::Error;
use crate::invariants::{
    arakelov_d_torus, beta_genus2, delta_elliptic, green_torus, lambda_invariant, thm_a_limit, thm_b_limit,
    wentworth_delta_limit, EllipticCurveData, GenusSplit, LimitInputs, TorusDisplacement,
};
use crate::modular::{chi10, log_petersson_chi10, log_petersson_eta};
use crate::selftest::{self, ParityFn};
use crate::theta::{
    log_abs_eta, theta_char_genus2, theta_odd_genus1, AccuracyTarget, CharEntry, SiegelPoint2, ThetaChar2,
    UpperHalfPoint,
};

pub use output::{round_sig, Format};
use output::{NamedValues, SweepOutput};

pub const EXIT_OK: i32 = 0;
pub const EXIT_SELFTEST: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;
pub const EXIT_ACCURACY: i32 = 4;
pub const EXIT_FIT: i32 = 5;

#[derive(Debug, Parser)]
#[command(
    name = "deginv",
    version,
    about = "Theta functions, Siegel modular forms and degenerating genus-two invariants"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate one quantity.
    Compute(Box<ComputeArgs>),
    /// Sweep a degenerating family and extrapolate the regularized β.
    Sweep(Box<SweepArgs>),
    /// Run the embedded property suite.
    Selftest(OutputArgs),
}

#[derive(Debug, Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Write to this file instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Significant digits in the output.
    #[arg(long, default_value_t = 12, value_parser = clap::value_parser!(u8).range(4..=17))]
    precision: u8,
}

#[derive(Debug, Args)]
struct AccuracyArgs {
    /// Absolute error target, in (0, 1e-3].
    #[arg(long, default_value_t = AccuracyTarget::DEFAULT_EPS)]
    eps: f64,
    /// Cap on truncation radii, in [4, 256].
    #[arg(long, default_value_t = AccuracyTarget::DEFAULT_MAX_RADIUS)]
    max_radius: usize,
}

impl AccuracyArgs {
    fn target(&self) -> Result<AccuracyTarget, CliError> {
        AccuracyTarget::new(self.eps, self.max_radius).map_err(|_| {
            CliError::Usage(format!(
                "--eps {} / --max-radius {}: need 0 < eps <= 1e-3 and 4 <= max-radius <= 256",
                self.eps, self.max_radius
            ))
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Quantity {
    Eta,
    EtaNorm,
    Theta1,
    Theta2,
    Chi10,
    Chi10Norm,
    Green,
    Delta1,
    Logd,
    Beta2,
    Lambda,
    #[value(name = "thmA")]
    ThmA,
    #[value(name = "thmB")]
    ThmB,
    Wentworth,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SplitKind {
    Separating,
    Nonseparating,
}

#[derive(Debug, Args)]
struct ComputeArgs {
    quantity: Quantity,
    #[command(flatten)]
    out: OutputArgs,
    #[command(flatten)]
    acc: AccuracyArgs,
    #[command(flatten)]
    p: ComputeParams,
}

#[derive(Debug, Default, Args)]
struct ComputeParams {
    #[arg(long, allow_negative_numbers = true)]
    omega_re: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    omega_im: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    z_re: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    z_im: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    z1_re: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    z1_im: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    z2_re: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    z2_im: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    u_re: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    u_im: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    o11_re: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    o11_im: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    o12_re: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    o12_im: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    o22_re: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    o22_im: Option<f64>,
    /// Characteristic entries, each 0 or 0.5.
    #[arg(long)]
    a1: Option<f64>,
    #[arg(long)]
    a2: Option<f64>,
    #[arg(long)]
    b1: Option<f64>,
    #[arg(long)]
    b2: Option<f64>,
    /// Genus (lambda), or genus of the normalization (non-separating limits).
    #[arg(long)]
    h: Option<u32>,
    #[arg(long)]
    h1: Option<u32>,
    #[arg(long)]
    h2: Option<u32>,
    #[arg(long, value_enum)]
    split: Option<SplitKind>,
    #[arg(long, allow_negative_numbers = true)]
    phi: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    phi1: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    phi2: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    delta: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    delta1: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    delta2: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    g_ab: Option<f64>,
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[arg(value_enum)]
    mode: SplitKind,
    #[command(flatten)]
    out: OutputArgs,
    #[command(flatten)]
    acc: AccuracyArgs,
    #[arg(long, allow_negative_numbers = true)]
    omega1_re: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    omega1_im: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    omega2_re: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    omega2_im: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    omega_re: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    omega_im: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    u_re: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    u_im: Option<f64>,
    /// Real part of the (2,2) entry in the non-separating family.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    x_offset: f64,
    /// First grid point (t for separating, y for non-separating).
    #[arg(long)]
    start: Option<f64>,
    /// Last grid point.
    #[arg(long)]
    end: Option<f64>,
    /// Number of grid points.
    #[arg(long)]
    points: Option<usize>,
    /// Explicit grid point; repeat for several. Overrides --start/--end/--points.
    #[arg(long)]
    at: Vec<f64>,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Compute(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Compute(e)
    }
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Compute(Error::Domain(_)) => EXIT_DOMAIN,
            CliError::Compute(Error::Accuracy { .. } | Error::Vanishing { .. }) => EXIT_ACCURACY,
            CliError::Compute(Error::NonTermination(_)) => EXIT_ACCURACY,
            CliError::Compute(Error::Fit(_)) => EXIT_FIT,
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Usage(m) => format!("error: {m}"),
            CliError::Compute(e) => format!("error: {e}"),
        }
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with_parity(args, stdout, stderr, ThetaChar2::parity)
}

/// As [`run`], with the self-test's parity function replaced.
pub fn run_with_parity<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write, parity: ParityFn) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            if code == EXIT_OK {
                let _ = stdout.write_all(rendered.as_bytes());
            } else {
                let _ = stderr.write_all(rendered.as_bytes());
            }
            return code;
        }
    };
    let result = match &cli.command {
        Command::Compute(args) => compute(args),
        Command::Sweep(args) => sweep(args),
        Command::Selftest(out) => return selftest_cmd(out, parity, stdout, stderr),
    };
    match result {
        Ok((text, out)) => match emit(&text, out, stdout) {
            Ok(()) => EXIT_OK,
            Err(e) => {
                let _ = writeln!(stderr, "{}", e.message());
                e.exit_code()
            }
        },
        Err(e) => {
            let _ = writeln!(stderr, "{}", e.message());
            e.exit_code()
        }
    }
}

fn emit(text: &str, out: &OutputArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    match &out.output {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| CliError::Usage(format!("--output {}: {e}", path.display())))
        }
        None => stdout
            .write_all(text.as_bytes())
            .and_then(|()| stdout.flush())
            .map_err(|e| CliError::Usage(format!("writing standard output: {e}"))),
    }
}

fn req<T: Copy>(v: Option<T>, flag: &str, what: &str) -> Result<T, CliError> {
    v.ok_or_else(|| CliError::Usage(format!("{what} requires --{flag}")))
}

fn uhp(re: Option<f64>, im: Option<f64>, prefix: &str, what: &str) -> Result<UpperHalfPoint, CliError> {
    let im = req(im, &format!("{prefix}-im"), what)?;
    Ok(UpperHalfPoint::new(re.unwrap_or(0.0), im)?)
}

fn complex(re: Option<f64>, im: Option<f64>) -> Complex64 {
    Complex64::new(re.unwrap_or(0.0), im.unwrap_or(0.0))
}

fn siegel(p: &ComputeParams, what: &str) -> Result<SiegelPoint2, CliError> {
    let d11 = Complex64::new(p.o11_re.unwrap_or(0.0), req(p.o11_im, "o11-im", what)?);
    let d12 = Complex64::new(p.o12_re.unwrap_or(0.0), p.o12_im.unwrap_or(0.0));
    let d22 = Complex64::new(p.o22_re.unwrap_or(0.0), req(p.o22_im, "o22-im", what)?);
    Ok(SiegelPoint2::new(d11, d12, d22)?)
}

fn char_entry(v: Option<f64>, flag: &str) -> Result<CharEntry, CliError> {
    let v = v.unwrap_or(0.0);
    CharEntry::from_f64(v).ok_or_else(|| CliError::Usage(format!("--{flag} must be 0 or 0.5, got {v}")))
}

fn split(p: &ComputeParams, what: &str) -> Result<GenusSplit, CliError> {
    let kind = req(p.split, "split", what)?;
    let g = match kind {
        SplitKind::Separating => GenusSplit::separating(req(p.h1, "h1", what)?, req(p.h2, "h2", what)?),
        SplitKind::Nonseparating => GenusSplit::non_separating(req(p.h, "h", what)?),
    };
    g.map_err(|e| CliError::Usage(format!("--h/--h1/--h2: {e}")))
}

fn limit_inputs(p: &ComputeParams, s: GenusSplit, what: &str, phi: bool, delta: bool) -> Result<LimitInputs, CliError> {
    let opt = |v: Option<f64>, flag: &str, used: bool| if used { req(v, flag, what) } else { Ok(0.0) };
    Ok(match s {
        GenusSplit::Separating { .. } => LimitInputs::Separating {
            phi: [opt(p.phi1, "phi1", phi)?, opt(p.phi2, "phi2", phi)?],
            delta: [opt(p.delta1, "delta1", delta)?, opt(p.delta2, "delta2", delta)?],
        },
        GenusSplit::NonSeparating { .. } => LimitInputs::NonSeparating {
            phi: opt(p.phi, "phi", phi)?,
            delta: opt(p.delta, "delta", delta)?,
            g_ab: req(p.g_ab, "g-ab", what)?,
        },
    })
}

fn compute(args: &ComputeArgs) -> Result<(String, &OutputArgs), CliError> {
    let acc = args.acc.target()?;
    let p = &args.p;
    let what = args.quantity.to_possible_value().expect("no skipped variants");
    let name = what.get_name();
    let omega = || uhp(p.omega_re, p.omega_im, "omega", name);
    let values: Vec<(&'static str, f64)> = match args.quantity {
        Quantity::Eta => vec![("log_abs_eta", log_abs_eta(omega()?, acc)?)],
        Quantity::EtaNorm => vec![("log_norm", log_petersson_eta(omega()?, acc)?.log_norm)],
        Quantity::Theta1 => {
            let z = complex(p.z_re, Some(req(p.z_im, "z-im", name)?));
            let v = theta_odd_genus1(z, omega()?, acc)?;
            vec![("re", v.re), ("im", v.im)]
        }
        Quantity::Theta2 => {
            let alpha = ThetaChar2::new(
                [char_entry(p.a1, "a1")?, char_entry(p.a2, "a2")?],
                [char_entry(p.b1, "b1")?, char_entry(p.b2, "b2")?],
            );
            let z = [complex(p.z1_re, p.z1_im), complex(p.z2_re, p.z2_im)];
            let v = theta_char_genus2(alpha, z, &siegel(p, name)?, acc)?;
            vec![("re", v.re), ("im", v.im)]
        }
        Quantity::Chi10 => {
            let v = chi10(&siegel(p, name)?, acc)?;
            vec![("re", v.re), ("im", v.im)]
        }
        Quantity::Chi10Norm => vec![("log_norm", log_petersson_chi10(&siegel(p, name)?, acc)?.log_norm)],
        Quantity::Green => {
            let u = Complex64::new(p.u_re.unwrap_or(0.0), req(p.u_im, "u-im", name)?);
            let d = TorusDisplacement::new(u, omega()?)?;
            vec![("green", green_torus(d, acc)?)]
        }
        Quantity::Delta1 => vec![("delta", delta_elliptic(EllipticCurveData::new(omega()?), acc)?)],
        Quantity::Logd => vec![("log_d", arakelov_d_torus(EllipticCurveData::new(omega()?), acc)?)],
        Quantity::Beta2 => vec![("beta", beta_genus2(&siegel(p, name)?, acc)?)],
        Quantity::Lambda => {
            let h = req(p.h, "h", name)?;
            if h == 0 {
                return Err(CliError::Usage("--h must be at least 1".into()));
            }
            vec![("lambda", lambda_invariant(h, req(p.phi, "phi", name)?, req(p.delta, "delta", name)?)?)]
        }
        Quantity::ThmA => {
            let s = split(p, name)?;
            let v = thm_a_limit(s, &limit_inputs(p, s, name, true, false)?)?;
            vec![("slope", v.slope), ("limit", v.limit)]
        }
        Quantity::Wentworth => {
            let s = split(p, name)?;
            let v = wentworth_delta_limit(s, &limit_inputs(p, s, name, false, true)?)?;
            vec![("slope", v.slope), ("log_log_coeff", v.log_log_coeff), ("limit", v.limit)]
        }
        Quantity::ThmB => {
            let s = split(p, name)?;
            let v = thm_b_limit(s, &limit_inputs(p, s, name, true, true)?)?;
            vec![("slope", v.slope), ("log_log_coeff", v.log_log_coeff), ("limit", v.limit)]
        }
    };
    let text = NamedValues { quantity: name, values }.render(args.out.format, args.out.precision as usize);
    Ok((text, &args.out))
}

fn sweep(args: &SweepArgs) -> Result<(String, &OutputArgs), CliError> {
    let acc = args.acc.target()?;
    let (mode, family, family_fields) = match args.mode {
        SplitKind::Separating => {
            let w1 = uhp(args.omega1_re, args.omega1_im, "omega1", "separating sweep")?;
            let w2 = uhp(args.omega2_re, args.omega2_im, "omega2", "separating sweep")?;
            let fields =
                vec![("omega1_re", w1.re()), ("omega1_im", w1.im()), ("omega2_re", w2.re()), ("omega2_im", w2.im())];
            (SweepMode::Separating, Family::Separating(SeparatingFamily::new(w1, w2)), fields)
        }
        SplitKind::Nonseparating => {
            let w = uhp(args.omega_re, args.omega_im, "omega", "nonseparating sweep")?;
            let u = Complex64::new(args.u_re.unwrap_or(0.0), req(args.u_im, "u-im", "nonseparating sweep")?);
            let fam = NonSeparatingFamily::new(w, u, args.x_offset)?;
            let fields = vec![
                ("omega_re", w.re()),
                ("omega_im", w.im()),
                ("u_re", u.re),
                ("u_im", u.im),
                ("x_offset", args.x_offset),
            ];
            (SweepMode::NonSeparating, Family::NonSeparating(fam), fields)
        }
    };
    let grid = if !args.at.is_empty() {
        SweepGrid::new(mode, args.at.clone()).map_err(|e| CliError::Usage(format!("--at: {e}")))?
    } else {
        let (start, end, points) = match mode {
            SweepMode::Separating => (1e-2, 1e-5, 7),
            SweepMode::NonSeparating => (2.0, 6.0, 5),
        };
        SweepGrid::log_spaced(mode, args.start.unwrap_or(start), args.end.unwrap_or(end), args.points.unwrap_or(points))
            .map_err(|e| CliError::Usage(format!("--start/--end/--points: {e}")))?
    };
    let report = run_sweep(&grid, &family, acc)?;
    let text = SweepOutput {
        mode: mode.name(),
        family: family_fields,
        samples: &report.samples,
        extrapolated_limit: report.extrapolated_limit,
        rhs: report.closed_form_rhs,
        discrepancy: report.discrepancy,
        estimated_order: report.estimated_order,
    }
    .render(args.out.format, args.out.precision as usize);
    Ok((text, &args.out))
}

fn selftest_cmd(out: &OutputArgs, parity: ParityFn, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let results = selftest::run_with_parity(parity);
    let digits = out.precision as usize;
    let text = match out.format {
        Format::Table => {
            let mut s = String::new();
            for r in &results {
                s.push_str(&format!(
                    "{:<26}  {}  {}\n",
                    r.name,
                    if r.passed { "pass" } else { "FAIL" },
                    output::text(r.worst_residual, digits)
                ));
            }
            s
        }
        Format::Csv => {
            let mut s = String::from("group,status,worst_residual\n");
            for r in &results {
                s.push_str(&format!(
                    "{},{},{}\n",
                    r.name,
                    if r.passed { "pass" } else { "fail" },
                    output::text(r.worst_residual, digits)
                ));
            }
            s
        }
        Format::Json => {
            let groups = results
                .iter()
                .map(|r| {
                    let mut m = serde_json::Map::new();
                    m.insert("group".into(), r.name.into());
                    m.insert("passed".into(), r.passed.into());
                    m.insert("worst_residual".into(), output::num(r.worst_residual, digits));
                    serde_json::Value::Object(m)
                })
                .collect();
            let mut doc = serde_json::Map::new();
            doc.insert("groups".into(), serde_json::Value::Array(groups));
            output::json_document(&serde_json::Value::Object(doc))
        }
    };
    if let Err(e) = emit(&text, out, stdout) {
        let _ = writeln!(stderr, "{}", e.message());
        return e.exit_code();
    }
    let failed: Vec<_> = results.iter().filter(|r| !r.passed).collect();
    if failed.is_empty() {
        return EXIT_OK;
    }
    for r in failed {
        let _ = match &r.error {
            Some(e) => writeln!(stderr, "selftest: {} failed: {e}", r.name),
            None => writeln!(stderr, "selftest: {} failed, worst residual {:e}", r.name, r.worst_residual),
        };
    }
    EXIT_SELFTEST
}
