//! The `ncfourier` command line.
//!
//! Exit codes: 0 success, 1 rejected input (bad expression, unsupported group)
//! or a failed verification case, 2 any other error.

use std::ffi::OsString;
use std::f64::consts::PI;
use std::path::PathBuf;

use anyhow::{bail, Context as _, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use ncfourier_core::fourier::{fourier_coeff, fourier_coeff_class, ncft, Domain, PositionFunction};
use ncfourier_core::groups::{make_group, GroupKind, SpinLabel};
use ncfourier_core::lie::{bch_closed_su2, bch_series_order, jacobian_closed, jacobian_determinant, GroupFamily, GroupSpec};
use ncfourier_core::poisson::{poisson_generic, PoissonCase};
use ncfourier_core::quadrature::QuadratureSpec;
use ncfourier_core::{AlgebraVector, Complex64, MomentumVector};
use serde::Serialize;
use thiserror::Error;

use crate::expr::{parse_function, ExprError, FunctionExpr, Point, Var};
use crate::formats::{coefficients_to_json, group_from_json, write_table, ComplexDoc, GroupDoc};
use crate::verify::{run_suite, Context, Suite, DEFAULT_SEED};

#[derive(Debug, Parser)]
#[command(name = "ncfourier", version, about = "Noncommutative Fourier analysis on U(1), SU(2) and tori")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalArgs {
    /// Radial (and 1D) Gauss-Legendre order.
    #[arg(long, global = true, value_name = "N")]
    pub quad_radial: Option<usize>,
    /// Polar angle order N; the azimuthal order is 2N.
    #[arg(long, global = true, value_name = "N")]
    pub quad_angular: Option<usize>,
    /// Radius of the integration ball for whole-algebra functions.
    #[arg(long, global = true, value_name = "R")]
    pub cutoff: Option<f64>,
    /// Target relative tolerance of the order-doubling error check.
    #[arg(long, global = true, value_name = "T")]
    pub tol: Option<f64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the result here instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_name = "S", default_value_t = DEFAULT_SEED)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DomainArg {
    /// Supported on the principal branch only.
    Principal,
    /// Defined on the whole algebra (needed for Poisson summation).
    Whole,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print a group description and Jacobian samples.
    Info {
        /// `u1`, `su2`, `torus<r>` or a path to a group JSON file.
        group: String,
    },
    /// Compose two algebra elements with the closed form and the series.
    Bch {
        group: String,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        x: Vec<f64>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        y: Vec<f64>,
        /// Series order.
        #[arg(long, default_value_t = 6)]
        order: usize,
    },
    /// Evaluate the transform (or the Fourier coefficient) of a function.
    Transform {
        group: String,
        /// Expression in x, y, z, r, or gaussian(sigma), character(2lambda), bump(width).
        #[arg(long)]
        func: String,
        /// Momentum, comma separated; repeat for several momenta.
        #[arg(long = "p", value_delimiter = ',', allow_hyphen_values = true, action = clap::ArgAction::Append, required = true)]
        p: Vec<f64>,
        /// Report the Fourier coefficient instead of the transform.
        #[arg(long)]
        coefficient: bool,
        #[arg(long, value_enum)]
        domain: Option<DomainArg>,
    },
    /// SU(2) character coefficient against its shell prediction.
    Character {
        #[arg(long)]
        two_lambda: u32,
        #[arg(long)]
        p_norm: f64,
    },
    /// Both sides of the Poisson summation formula at X.
    Poisson {
        group: String,
        #[arg(long)]
        func: String,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        x: Vec<f64>,
    },
    /// Run acceptance checks and write a verification report.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        /// Include wall times in the report (makes it non-reproducible).
        #[arg(long)]
        timings: bool,
        /// Run criteria one after another.
        #[arg(long)]
        serial: bool,
    },
}

/// Input the command refuses rather than fails on.
#[derive(Debug, Error)]
pub enum Rejected {
    #[error("unknown group `{0}` (expected u1, su2, torus<r> or a JSON file)")]
    UnknownGroup(String),
    #[error("variable `{0}` is not available on a group of dimension {1}")]
    VariableOutOfRange(&'static str, usize),
    #[error("{0}")]
    Argument(String),
}

#[derive(Debug, Error)]
#[error("{failed} verification case(s) failed")]
pub struct VerificationFailed {
    pub failed: usize,
}

/// Runs the command line and returns the process exit code.
pub fn run<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e:#}");
            exit_code(&e)
        }
    }
}

fn exit_code(e: &anyhow::Error) -> u8 {
    let rejected = e.downcast_ref::<VerificationFailed>().is_some()
        || e.downcast_ref::<Rejected>().is_some()
        || e.downcast_ref::<ExprError>().is_some_and(|x| !matches!(x, ExprError::EvalDomainError(_)))
        || matches!(e.downcast_ref::<ncfourier_core::Error>(), Some(ncfourier_core::Error::UnsupportedGroup(_)));
    if rejected {
        1
    } else {
        2
    }
}

pub fn execute(cli: &Cli) -> Result<()> {
    let quad = quadrature(&cli.global)?;
    match &cli.command {
        Command::Info { group } => info(&cli.global, &load_group(group)?),
        Command::Bch { group, x, y, order } => bch_cmd(&cli.global, &load_group(group)?, x, y, *order),
        Command::Transform { group, func, p, coefficient, domain } => {
            let g = load_group(group)?;
            let f = function(&g, func, *domain, &quad)?;
            transform(&cli.global, &g, &f, p, *coefficient, &quad)
        }
        Command::Character { two_lambda, p_norm } => character_cmd(&cli.global, *two_lambda, *p_norm, &quad),
        Command::Poisson { group, func, x } => {
            let g = load_group(group)?;
            let f = function(&g, func, Some(DomainArg::Whole), &quad)?;
            poisson_cmd(&cli.global, f, x, &quad)
        }
        Command::Verify { suite, timings, serial } => {
            let ctx = Context { quad, seed: cli.global.seed };
            let (report, outcomes) = run_suite(*suite, &ctx, !serial, *timings);
            for o in &outcomes {
                let failed = o.cases.iter().filter(|c| !c.passed).count();
                let status = if failed == 0 { "pass" } else { "FAIL" };
                eprintln!("{status} criterion {:>2} {} ({} cases, {failed} failed)", o.number, o.title, o.cases.len());
            }
            let text = match cli.global.format {
                Format::Json => report.to_json(),
                Format::Csv => report.to_csv(),
            };
            emit(&cli.global, &text)?;
            let failed = report.failures().count();
            if failed > 0 {
                return Err(VerificationFailed { failed }.into());
            }
            Ok(())
        }
    }
}

fn quadrature(g: &GlobalArgs) -> Result<QuadratureSpec> {
    let mut q = QuadratureSpec::default();
    if let Some(n) = g.quad_radial {
        q.radial_order = n;
    }
    if let Some(n) = g.quad_angular {
        q.angular_orders = (n, 2 * n);
    }
    if let Some(r) = g.cutoff {
        q.cutoff_radius = r;
    }
    if let Some(t) = g.tol {
        q.target_rel_tol = t;
    }
    q.validate().map_err(|e| Rejected::Argument(format!("quadrature flags: {e}")))?;
    Ok(q)
}

fn emit(g: &GlobalArgs, text: &str) -> Result<()> {
    let mut text = text.to_string();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match &g.out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn render<T: Serialize>(g: &GlobalArgs, value: &T, header: &[&str], rows: Vec<Vec<String>>) -> Result<()> {
    let text = match g.format {
        Format::Json => serde_json::to_string_pretty(value)?,
        Format::Csv => {
            let mut buf = Vec::new();
            write_table(&mut buf, header, &rows)?;
            String::from_utf8(buf)?
        }
    };
    emit(g, &text)
}

fn num(v: f64) -> String {
    format!("{v:?}")
}

pub fn load_group(name: &str) -> Result<GroupSpec> {
    let kind = match name {
        "u1" => Some(GroupKind::U1),
        "su2" => Some(GroupKind::Su2),
        n => n.strip_prefix("torus").and_then(|r| r.parse::<usize>().ok()).filter(|&r| r >= 1).map(GroupKind::Torus),
    };
    if let Some(kind) = kind {
        return Ok(make_group(kind));
    }
    let path = std::path::Path::new(name);
    if !path.is_file() {
        return Err(Rejected::UnknownGroup(name.into()).into());
    }
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {name}"))?;
    group_from_json(&text).with_context(|| format!("group file {name}"))
}

fn algebra_vector(g: &GroupSpec, v: &[f64], what: &str) -> Result<AlgebraVector> {
    if v.len() != g.dim() {
        return Err(Rejected::Argument(format!("{what} needs {} coordinates, got {}", g.dim(), v.len())).into());
    }
    Ok(AlgebraVector::new(v.to_vec()))
}

/// `name(number)` with a known builtin name, if `src` has that shape.
fn builtin_call(src: &str) -> Option<(&str, &str)> {
    let src = src.trim();
    let open = src.find('(')?;
    let name = src[..open].trim();
    let arg = src[open + 1..].strip_suffix(')')?;
    matches!(name, "gaussian" | "character" | "bump").then_some((name, arg.trim()))
}

/// A builtin family or a parsed expression as a position function.
pub fn function(g: &GroupSpec, src: &str, domain: Option<DomainArg>, quad: &QuadratureSpec) -> Result<PositionFunction> {
    let to_domain = |d: Option<DomainArg>, default: Domain| match d {
        Some(DomainArg::Principal) => Domain::PrincipalBranch,
        Some(DomainArg::Whole) => Domain::WholeAlgebra,
        None => default,
    };
    if let Some((name, arg)) = builtin_call(src) {
        let bad = || Rejected::Argument(format!("`{name}` takes one numeric argument, got `{arg}`"));
        return Ok(match name {
            "gaussian" => {
                let sigma: f64 = arg.parse().map_err(|_| bad())?;
                PositionFunction::gaussian(g, sigma, to_domain(domain, Domain::WholeAlgebra))?
            }
            "character" => {
                let k: u32 = arg.parse().map_err(|_| bad())?;
                PositionFunction::character(g, SpinLabel::new(k))?
            }
            _ => {
                let w: f64 = arg.parse().map_err(|_| bad())?;
                PositionFunction::bump(g, w)?
            }
        });
    }
    let expr = parse_function(src)?;
    for v in expr.variables() {
        let (name, axis) = match v {
            Var::X => ("x", 0),
            Var::Y => ("y", 1),
            Var::Z => ("z", 2),
            Var::R => continue,
        };
        if axis >= g.dim() {
            return Err(Rejected::VariableOutOfRange(name, g.dim()).into());
        }
    }
    if g.dim() > 3 {
        return Err(Rejected::Argument("expressions cover groups of dimension at most 3".into()).into());
    }
    let domain = to_domain(domain, Domain::PrincipalBranch);
    let radial = expr.is_radial();
    let f = expression_closure(expr.clone());
    // a closure cannot report failures; probe the expression first
    probe(&expr, g, quad)?;
    Ok(if radial {
        PositionFunction::custom_class(g, domain, f)?
    } else {
        PositionFunction::custom(g, domain, f)
    })
}

fn expression_closure(expr: FunctionExpr) -> impl Fn(&AlgebraVector) -> Complex64 + Send + Sync + 'static {
    move |x: &AlgebraVector| match expr.eval(&Point::from_coords(x.coords())) {
        Ok(v) => Complex64::new(v, 0.0),
        Err(_) => Complex64::new(f64::NAN, f64::NAN),
    }
}

/// Evaluates along the axes so that a domain error surfaces as a message
/// instead of a NaN deep inside a quadrature.
fn probe(expr: &FunctionExpr, g: &GroupSpec, quad: &QuadratureSpec) -> Result<()> {
    let reach = quad.cutoff_radius.max(PI);
    for d in 0..g.dim() {
        for k in 0..=32 {
            let mut c = vec![0.0; g.dim()];
            c[d] = reach * (2.0 * k as f64 / 32.0 - 1.0) * 0.999;
            expr.eval(&Point::from_coords(&c))
                .with_context(|| format!("evaluating `{}` at {c:?}", expr.source))?;
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct JacobianSample {
    x: Vec<f64>,
    closed: Option<f64>,
    determinant: f64,
}

#[derive(Serialize)]
struct InfoOut {
    group: GroupDoc,
    jacobian_samples: Vec<JacobianSample>,
}

fn info(gl: &GlobalArgs, g: &GroupSpec) -> Result<()> {
    let mut samples = Vec::new();
    for t in [0.0, 0.25, 0.5, 0.75] {
        let x = AlgebraVector::unit(g.dim(), g.dim() - 1).scale(t * PI);
        let closed = if g.family() == GroupFamily::Generic { None } else { Some(jacobian_closed(g, &x)?) };
        let determinant = jacobian_determinant(g, &x)?;
        samples.push(JacobianSample { x: x.into_coords(), closed, determinant });
    }
    let out = InfoOut { group: GroupDoc::from(g), jacobian_samples: samples };
    let mut header: Vec<String> = (1..=g.dim()).map(|i| format!("x{i}")).collect();
    header.extend(["closed".into(), "determinant".into()]);
    let rows = out
        .jacobian_samples
        .iter()
        .map(|s| {
            let mut row: Vec<String> = s.x.iter().map(|&v| num(v)).collect();
            row.push(s.closed.map(num).unwrap_or_default());
            row.push(num(s.determinant));
            row
        })
        .collect();
    let header: Vec<&str> = header.iter().map(String::as_str).collect();
    render(gl, &out, &header, rows)
}

#[derive(Serialize)]
struct BchOut {
    x: Vec<f64>,
    y: Vec<f64>,
    closed: Option<Vec<f64>>,
    series: Vec<f64>,
    series_order: usize,
    series_estimate: f64,
    discrepancy: Option<f64>,
}

fn bch_cmd(gl: &GlobalArgs, g: &GroupSpec, x: &[f64], y: &[f64], order: usize) -> Result<()> {
    let (xv, yv) = (algebra_vector(g, x, "--x")?, algebra_vector(g, y, "--y")?);
    if order == 0 {
        bail!(Rejected::Argument("--order must be positive".into()));
    }
    let closed = match g.family() {
        GroupFamily::Su2 => Some(bch_closed_su2(&xv, &yv)?),
        GroupFamily::U1 | GroupFamily::Torus => Some(&xv + &yv),
        GroupFamily::Generic => None,
    };
    let (series, estimate) = bch_series_order(g, &xv, &yv, order)?;
    let discrepancy = closed.as_ref().map(|c| c.distance(&series));
    let out = BchOut {
        x: x.to_vec(),
        y: y.to_vec(),
        closed: closed.map(AlgebraVector::into_coords),
        series: series.into_coords(),
        series_order: order,
        series_estimate: estimate,
        discrepancy,
    };
    let rows = (0..g.dim())
        .map(|i| {
            vec![
                i.to_string(),
                out.closed.as_ref().map(|c| num(c[i])).unwrap_or_default(),
                num(out.series[i]),
            ]
        })
        .collect();
    render(gl, &out, &["component", "closed", "series"], rows)
}

fn transform(
    gl: &GlobalArgs,
    g: &GroupSpec,
    f: &PositionFunction,
    p: &[f64],
    coefficient: bool,
    quad: &QuadratureSpec,
) -> Result<()> {
    if p.is_empty() || p.len() % g.dim() != 0 {
        bail!(Rejected::Argument(format!("momenta need {} coordinates each", g.dim())));
    }
    let mut entries = Vec::new();
    for chunk in p.chunks(g.dim()) {
        let mv = MomentumVector::new(chunk.to_vec());
        let v = if coefficient { fourier_coeff(f, &mv, quad)? } else { ncft(f, &mv, quad)? };
        if !v.is_finite() {
            bail!("non-finite result at p = {chunk:?}; the function is undefined somewhere on the quadrature nodes");
        }
        entries.push((mv, v));
    }
    match gl.format {
        Format::Json => emit(gl, &coefficients_to_json(&entries)?),
        Format::Csv => {
            let mut header: Vec<String> = (1..=g.dim()).map(|i| format!("p{i}")).collect();
            header.extend(["re".into(), "im".into()]);
            let header: Vec<&str> = header.iter().map(String::as_str).collect();
            let rows = entries
                .iter()
                .map(|(p, v)| {
                    let mut row: Vec<String> = p.coords().iter().map(|&c| num(c)).collect();
                    row.extend([num(v.re), num(v.im)]);
                    row
                })
                .collect::<Vec<_>>();
            let mut buf = Vec::new();
            write_table(&mut buf, &header, &rows)?;
            emit(gl, &String::from_utf8(buf)?)
        }
    }
}

#[derive(Serialize)]
struct CharacterOut {
    two_lambda: u32,
    p_norm: f64,
    computed: ComplexDoc,
    predicted: f64,
    residual: f64,
}

fn character_cmd(gl: &GlobalArgs, two_lambda: u32, p_norm: f64, quad: &QuadratureSpec) -> Result<()> {
    if !(p_norm > 0.0) {
        bail!(Rejected::Argument("--p-norm must be positive".into()));
    }
    let g = make_group(GroupKind::Su2);
    let chi = PositionFunction::character(&g, SpinLabel::new(two_lambda))?;
    let v = fourier_coeff_class(&chi, p_norm, quad)?;
    let lo = f64::from(two_lambda);
    let predicted = if p_norm >= lo && p_norm < lo + 2.0 { PI * PI / p_norm } else { 0.0 };
    let out = CharacterOut { two_lambda, p_norm, computed: v.into(), predicted, residual: (v - predicted).norm() };
    let rows = vec![vec![two_lambda.to_string(), num(p_norm), num(v.re), num(v.im), num(predicted), num(out.residual)]];
    render(gl, &out, &["two_lambda", "p_norm", "re", "im", "predicted", "residual"], rows)
}

#[derive(Serialize)]
struct PoissonOut {
    x: Vec<f64>,
    lhs: ComplexDoc,
    rhs: ComplexDoc,
    residual: f64,
    window: Vec<i64>,
}

fn poisson_cmd(gl: &GlobalArgs, f: PositionFunction, x: &[f64], quad: &QuadratureSpec) -> Result<()> {
    let g = f.group().clone();
    let xv = algebra_vector(&g, x, "--x")?;
    let case = PoissonCase::new(f, xv, quad.clone())?;
    let window = case.window.ranges().iter().map(|r| *r.end()).collect();
    let out = poisson_generic(&case)?;
    let rendered = PoissonOut { x: x.to_vec(), lhs: out.lhs.into(), rhs: out.rhs.into(), residual: out.residual, window };
    let rows = vec![vec![num(out.lhs.re), num(out.lhs.im), num(out.rhs.re), num(out.rhs.im), num(out.residual)]];
    render(gl, &rendered, &["lhs_re", "lhs_im", "rhs_re", "rhs_im", "residual"], rows)
}
