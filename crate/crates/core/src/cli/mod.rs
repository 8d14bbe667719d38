//! The `hesslab` command line.

mod output;

// Writes to stdout, ignoring a closed pipe.
macro_rules! out {
    ($($t:tt)*) => {{
        use std::io::Write as _;
        let _ = writeln!(std::io::stdout(), $($t)*);
    }};
}

pub use output::{csv_string, emit_csv, emit_report, emit_svg, svg_string};

use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::calculus::{classify_point, GraphFunction};
use crate::certify::{
    verify_affine_invariance, verify_theorem1, verify_theorem2, verify_theorem3, CertifyError,
    TheoremReport, VerifyOptions,
};
use crate::families::{EvenCircleParams, FamilySpec, OddCircleParams, OuterOvalParams};
use crate::polycore::{int, parse_rational, parse_rational_function, AffineMap2, Rational};
use crate::topology::{auto_bbox, trace_curve_with, Rect, TopologyReport, TraceOptions};

#[derive(Debug, Parser)]
#[command(
    name = "hesslab",
    version,
    about = "Exact Hessian curves of explicit function families"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the expanded function of a family instance.
    Family {
        #[command(flatten)]
        family: FamilyArgs,
        /// Also print the numerator of the Hessian.
        #[arg(long)]
        hessian: bool,
    },
    /// Run a theorem certifier; exits 0 iff every claim passes.
    Verify {
        theorem: Theorem,
        #[command(flatten)]
        family: FamilyArgs,
        #[command(flatten)]
        run: RunArgs,
        /// Write the JSON report here.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Trace the Hessian curve and export it.
    Trace {
        #[command(flatten)]
        family: FamilyArgs,
        /// Trace the Hessian of this function instead of a family.
        #[arg(long, allow_hyphen_values = true)]
        poly: Option<String>,
        /// `x0,y0,x1,y1`; defaults to the family's box or `[-2, 2]^2`.
        #[arg(long, allow_hyphen_values = true)]
        bbox: Option<String>,
        #[command(flatten)]
        run: RunArgs,
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Classify a point of the graph as elliptic, parabolic or hyperbolic.
    Classify {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, allow_hyphen_values = true)]
        poly: Option<String>,
        /// `x,y` with rational coordinates.
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Check `Hess((f o T) / J) = (Hess f) o T` exactly.
    AffineCheck {
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        /// Linear part `a,b,c,d` (row-major).
        #[arg(long, allow_hyphen_values = true)]
        matrix: String,
        /// Translation `tx,ty`.
        #[arg(long, allow_hyphen_values = true, default_value = "0,0")]
        shift: String,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Theorem {
    Theorem1,
    Theorem2,
    Theorem3,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyKind {
    Outer,
    Even,
    Odd,
}

/// Family parameters. Numbers are integers or fractions `p/q`.
#[derive(Debug, Args, Default)]
pub struct FamilyArgs {
    #[arg(long, value_enum)]
    pub family: Option<FamilyKind>,
    /// Slope `a` of the first line through the origin.
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<String>,
    /// Slope `b` of the second line through the origin.
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<String>,
    /// Negative verticals `a_1 > a_2 > ...`, comma separated.
    #[arg(long, allow_hyphen_values = true)]
    pub ai: Option<String>,
    /// Positive verticals `b_1 < b_2 < ...`, comma separated.
    #[arg(long, allow_hyphen_values = true)]
    pub bj: Option<String>,
    /// Radii `0 < m_1 < ... < m_n`, comma separated.
    #[arg(long)]
    pub radii: Option<String>,
    /// Number of circles of the odd family.
    #[arg(long)]
    pub n: Option<u32>,
    /// Read the instance from a JSON file instead.
    #[arg(long)]
    pub instance: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[arg(long, default_value_t = 128)]
    pub resolution: usize,
    #[arg(long, default_value_t = 6)]
    pub depth: u32,
    #[arg(long, default_value_t = 0x5eed)]
    pub seed: u64,
}

impl RunArgs {
    fn options(&self) -> VerifyOptions {
        VerifyOptions {
            resolution: self.resolution,
            retry_resolution: self.resolution.max(128) * 4,
            max_depth: self.depth,
            seed: self.seed,
            ..VerifyOptions::default()
        }
    }
}

/// User-facing failure; printed as `error: ...`.
#[derive(Debug)]
struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

type CliResult<T> = Result<T, Failure>;

fn rationals(s: &str) -> CliResult<Vec<Rational>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    Ok(s.split(',').map(parse_rational).collect::<Result<_, _>>()?)
}

fn pair(s: &str, what: &str) -> CliResult<(Rational, Rational)> {
    match rationals(s)?.as_slice() {
        [x, y] => Ok((x.clone(), y.clone())),
        _ => Err(Failure(format!(
            "{what} expects two comma-separated numbers, got {s:?}"
        ))),
    }
}

impl FamilyArgs {
    fn is_empty(&self) -> bool {
        self.family.is_none()
            && self.a.is_none()
            && self.b.is_none()
            && self.ai.is_none()
            && self.bj.is_none()
            && self.radii.is_none()
            && self.n.is_none()
            && self.instance.is_none()
    }

    /// Builds the instance; `implied` is the family fixed by the subcommand.
    fn spec(&self, implied: Option<FamilyKind>) -> CliResult<FamilySpec> {
        if let Some(path) = &self.instance {
            let text = fs::read_to_string(path)?;
            let spec: FamilySpec = serde_json::from_str(&text)?;
            let kind = match spec {
                FamilySpec::Outer(_) => FamilyKind::Outer,
                FamilySpec::Even(_) => FamilyKind::Even,
                FamilySpec::Odd(_) => FamilyKind::Odd,
            };
            if implied.is_some_and(|k| k != kind) {
                return Err(Failure(format!(
                    "instance file describes the {} family",
                    spec.name()
                )));
            }
            return Ok(spec);
        }
        let kind = match (implied, self.family) {
            (Some(k), Some(f)) if k != f => {
                return Err(Failure("--family disagrees with the theorem".into()))
            }
            (Some(k), _) | (None, Some(k)) => k,
            (None, None) => {
                return Err(Failure(
                    "choose a family with --family outer|even|odd".into(),
                ))
            }
        };
        match kind {
            FamilyKind::Outer => {
                let need = |v: &Option<String>, flag: &str| {
                    v.as_deref()
                        .ok_or_else(|| Failure(format!("the outer family needs {flag}")))
                        .and_then(|s| Ok(parse_rational(s)?))
                };
                let a = need(&self.a, "--a")?;
                let b = need(&self.b, "--b")?;
                let ai = rationals(self.ai.as_deref().unwrap_or(""))?;
                let bj = rationals(self.bj.as_deref().unwrap_or(""))?;
                Ok(FamilySpec::Outer(OuterOvalParams::new(a, b, ai, bj)?))
            }
            FamilyKind::Even => {
                let radii = self
                    .radii
                    .as_deref()
                    .ok_or_else(|| Failure("the even family needs --radii".into()))?;
                Ok(FamilySpec::Even(EvenCircleParams::new(rationals(radii)?)?))
            }
            FamilyKind::Odd => {
                let n = self
                    .n
                    .ok_or_else(|| Failure("the odd family needs --n".into()))?;
                Ok(FamilySpec::Odd(OddCircleParams::new(n)?))
            }
        }
    }
}

fn parse_function(s: &str) -> CliResult<GraphFunction> {
    let f = parse_rational_function(s)?;
    if f.den().is_constant() {
        let c = f.den().evaluate(&int(0), &int(0));
        return Ok(f.num().scale(&c.recip()).into());
    }
    Ok(f.into())
}

fn function_of(
    family: &FamilyArgs,
    poly: Option<&str>,
) -> CliResult<(GraphFunction, Option<FamilySpec>)> {
    match poly {
        Some(p) if family.is_empty() => Ok((parse_function(p)?, None)),
        Some(_) => Err(Failure(
            "give either --poly or family flags, not both".into(),
        )),
        None => {
            let spec = family.spec(None)?;
            Ok((spec.function(), Some(spec)))
        }
    }
}

/// Parses `argv` (including the program name), runs the command and returns
/// the process exit status.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(cli.command) {
        Ok(code) => code,
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            2
        }
    }
}

fn execute(cmd: Command) -> CliResult<i32> {
    match cmd {
        Command::Family { family, hessian } => {
            let spec = family.spec(None)?;
            let f = spec.function();
            match &f {
                GraphFunction::Poly(p) => out!("{p}"),
                GraphFunction::Rational(r) => out!("{r}"),
            }
            if hessian {
                out!("{}", f.hessian_numerator());
            }
            Ok(0)
        }
        Command::Verify {
            theorem,
            family,
            run,
            json,
        } => {
            let opts = run.options();
            let result = match theorem {
                Theorem::Theorem1 => match family.spec(Some(FamilyKind::Outer))? {
                    FamilySpec::Outer(p) => verify_theorem1(&p, &opts),
                    _ => unreachable!("family checked above"),
                },
                Theorem::Theorem2 => match family.spec(Some(FamilyKind::Even))? {
                    FamilySpec::Even(p) => verify_theorem2(&p, &opts),
                    _ => unreachable!("family checked above"),
                },
                Theorem::Theorem3 => match family.spec(Some(FamilyKind::Odd))? {
                    FamilySpec::Odd(p) => verify_theorem3(&p, &opts),
                    _ => unreachable!("family checked above"),
                },
            };
            let report = match result {
                Ok(r) => r,
                Err(CertifyError::NotGoodPosition(w)) => {
                    out!("not in good position: critical point on {}", w.line);
                    if let Some((x, y)) = &w.point {
                        out!("witness point: ({x}, {y})");
                    }
                    out!("{}", serde_json::to_string_pretty(&w)?);
                    return Ok(1);
                }
                Err(e) => return Err(e.into()),
            };
            finish_report(&report, json.as_ref())
        }
        Command::Trace {
            family,
            poly,
            bbox,
            run,
            svg,
            csv,
        } => {
            let (f, spec) = function_of(&family, poly.as_deref())?;
            let rect = match (bbox, &spec) {
                (Some(b), _) => match rationals(&b)?.as_slice() {
                    [x0, y0, x1, y1] => Rect::new(x0.clone(), y0.clone(), x1.clone(), y1.clone())?,
                    _ => return Err(Failure("--bbox expects x0,y0,x1,y1".into())),
                },
                (None, Some(s)) => auto_bbox(s)?,
                (None, None) => Rect::centered_square(int(2))?,
            };
            let hess = f.hessian_numerator();
            let trace = trace_curve_with(
                &hess,
                &rect,
                &TraceOptions {
                    base_resolution: run.resolution,
                    max_depth: run.depth,
                    ..TraceOptions::default()
                },
            )?;
            if let Some(p) = svg {
                emit_svg(&trace, &p)?;
            }
            if let Some(p) = csv {
                emit_csv(&trace, &p)?;
            }
            let report = TopologyReport::from_trace(&trace);
            out!("{}", serde_json::to_string_pretty(&report)?);
            Ok(0)
        }
        Command::Classify {
            family,
            poly,
            point,
        } => {
            let (f, _) = function_of(&family, poly.as_deref())?;
            let p = pair(&point, "--point")?;
            out!("{}", classify_point(&f, &p)?);
            Ok(0)
        }
        Command::AffineCheck {
            poly,
            matrix,
            shift,
        } => {
            let f = parse_rational_function(&poly)?;
            if !f.den().is_constant() {
                return Err(Failure("affine-check expects a polynomial".into()));
            }
            let f = f.num().scale(&f.den().evaluate(&int(0), &int(0)).recip());
            let m = rationals(&matrix)?;
            let [a, b, c, d] = m.as_slice() else {
                return Err(Failure("--matrix expects a,b,c,d".into()));
            };
            let (tx, ty) = pair(&shift, "--shift")?;
            let t = AffineMap2::new([[a.clone(), b.clone()], [c.clone(), d.clone()]], [tx, ty])?;
            let ok = verify_affine_invariance(&f, &t);
            out!("{}", if ok { "holds" } else { "fails" });
            Ok(if ok { 0 } else { 1 })
        }
    }
}

fn finish_report(report: &TheoremReport, json: Option<&PathBuf>) -> CliResult<i32> {
    {
        use std::io::Write as _;
        let _ = write!(std::io::stdout(), "{}", report.summary());
    }
    if let Some(path) = json {
        emit_report(report, path)?;
    }
    Ok(if report.overall { 0 } else { 1 })
}
