//! Command dispatch for the `geomoment` binary.
//!
//! [`run`] parses arguments, executes one command and returns the exit code
//! together with the JSON report destined for stdout and any diagnostics for
//! stderr. Reports are deterministic for fixed inputs and seed.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use geomoment::bounds::{bhatia_davis_bound, bhatia_davis_lp, duality_check, max_variance, AtomicMeasure};
use geomoment::genvar::{chebyshev_level, generalized_variance, RadialCost, DEFAULT_TOL};
use geomoment::geometry::{min_enclosing_ball, PointCloud, Shape};
use geomoment::isodiametric::{jung_verify, search_max, verify_simplex_optimality, SearchConfig};
use geomoment::json::fmt_f64;
use geomoment::Error;
use serde::Serialize;
use serde_json::{json, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;
pub const EXIT_NO_CONVERGENCE: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "geomoment", version, about = "Variance bounds, enclosing balls and isodiametric moment search")]
pub struct Cli {
    /// Solver tolerance; each command has its own default.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Write plot-ready CSV files into this directory.
    #[arg(long, global = true, value_name = "DIR")]
    pub emit_csv: Option<PathBuf>,
    /// Include wall-clock time in the diagnostics (makes reports vary).
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Smallest enclosing ball of a point cloud.
    Meb { cloud: PathBuf },
    /// Largest variance for a given barycenter on a shape or cloud.
    Bound(BoundArgs),
    /// Largest variance over all measures on a cloud.
    Maxvar { cloud: PathBuf },
    /// Generalized variance of a measure.
    Genvar {
        measure: PathBuf,
        #[arg(long, default_value = "power:2")]
        cost: String,
    },
    /// Minimax level of a radial cost over a cloud.
    Chebyshev {
        cloud: PathBuf,
        #[arg(long, default_value = "power:2")]
        cost: String,
    },
    /// Search for measures of bounded diameter with large generalized variance.
    Isodiametric(IsoArgs),
    /// Enclosing radius against diameter.
    Jung { cloud: PathBuf },
    /// Both sides of the zero-mean variance duality.
    Duality { cloud: PathBuf },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ShapeKind {
    Interval,
    Ball,
    Ellipse,
    Box,
    Diamond,
}

#[derive(Debug, Args)]
pub struct BoundArgs {
    #[arg(long, conflicts_with = "cloud", required_unless_present = "cloud")]
    pub shape: Option<ShapeKind>,
    #[arg(long)]
    pub cloud: Option<PathBuf>,
    /// Comma-separated barycenter.
    #[arg(long, allow_hyphen_values = true)]
    pub xbar: String,
    /// Ball radius.
    #[arg(long = "R")]
    pub radius: Option<f64>,
    /// Box half-widths, diamond `a1,a2`, or ellipse semi-major axis.
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<String>,
    /// Ellipse semi-minor axis.
    #[arg(long)]
    pub b: Option<f64>,
    /// Interval endpoints `lo,hi`.
    #[arg(long, allow_hyphen_values = true)]
    pub k: Option<String>,
}

#[derive(Debug, Args)]
pub struct IsoArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub d: f64,
    #[arg(long, default_value = "power:2")]
    pub cost: String,
    #[arg(long)]
    pub atoms: Option<usize>,
    #[arg(long, default_value_t = 20)]
    pub restarts: usize,
    #[arg(long, default_value_t = 2000)]
    pub max_iters: usize,
    #[arg(long, default_value_t = 0.1)]
    pub step: f64,
}

#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub inputs: Value,
    pub outputs: Value,
    pub diagnostics: Value,
    pub version: String,
}

/// Outcome of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{0}")]
    Usage(String),
}

type CliResult<T> = std::result::Result<T, CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn exit_code(err: &CliError) -> i32 {
    match err {
        CliError::Usage(_) => EXIT_PARSE,
        CliError::Core(e) => match e {
            Error::Parse { .. } | Error::Io(_) | Error::Json(_) => EXIT_PARSE,
            Error::NoConvergence { .. } => EXIT_NO_CONVERGENCE,
            Error::DimensionMismatch { .. }
            | Error::InvalidInput(_)
            | Error::DegenerateSupport(_)
            | Error::NotInHull { .. }
            | Error::Domain(_) => EXIT_DOMAIN,
        },
    }
}

fn error_payload(err: &CliError) -> Value {
    let mut v = json!({ "message": err.to_string() });
    if let CliError::Core(e) = err {
        match e {
            Error::NotInHull { certificate } => v["certificate"] = to_value(certificate),
            Error::NoConvergence { best, .. } => v["best"] = to_value(best),
            Error::Parse { line, .. } => v["line"] = json!(line),
            _ => {}
        }
    }
    v
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report values serialize")
}

fn parse_list(flag: &str, s: &str) -> CliResult<Vec<f64>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|e| usage(format!("--{flag}: cannot parse `{t}`: {e}")))
        })
        .collect()
}

fn read_cloud(path: &Path) -> CliResult<PointCloud> {
    let file = fs::File::open(path).map_err(Error::from)?;
    Ok(PointCloud::read_csv(file)?)
}

/// `power:P`, inline JSON, or a path to a JSON file.
pub fn parse_cost(spec: &str) -> Result<RadialCost, String> {
    let spec = spec.trim();
    if let Some(p) = spec.strip_prefix("power:") {
        let p: f64 = p.parse().map_err(|e| format!("cost exponent `{p}`: {e}"))?;
        return RadialCost::power(p).map_err(|e| e.to_string());
    }
    let text = if spec.starts_with('{') {
        spec.to_string()
    } else {
        fs::read_to_string(spec).map_err(|e| format!("cost file `{spec}`: {e}"))?
    };
    RadialCost::from_json(&text).map_err(|e| e.to_string())
}

fn cost_arg(spec: &str) -> CliResult<RadialCost> {
    parse_cost(spec).map_err(|e| usage(format!("--cost: {e}")))
}

fn cloud_inputs(path: &Path, cloud: &PointCloud) -> Value {
    json!({ "cloud": path.display().to_string(), "points": cloud.len(), "dim": cloud.dim() })
}

struct Ctx<'a> {
    cli: &'a Cli,
    diagnostics: serde_json::Map<String, Value>,
}

impl Ctx<'_> {
    fn tol(&self, default: f64) -> CliResult<f64> {
        match self.cli.tol {
            Some(t) if t.is_nan() || t <= 0.0 => Err(usage(format!("--tol must be positive, got {t}"))),
            Some(t) => Ok(t),
            None => Ok(default),
        }
    }

    fn note(&mut self, key: &str, v: Value) {
        self.diagnostics.insert(key.to_string(), v);
    }

    fn emit_csv(&self, name: &str, header: &[String], rows: &[Vec<String>]) -> CliResult<()> {
        let Some(dir) = &self.cli.emit_csv else {
            return Ok(());
        };
        fs::create_dir_all(dir).map_err(Error::from)?;
        let mut out = header.join(",");
        out.push('\n');
        for row in rows {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        fs::write(dir.join(name), out).map_err(Error::from)?;
        Ok(())
    }

    fn emit_measure(&self, name: &str, m: &AtomicMeasure) -> CliResult<()> {
        let mut header: Vec<String> = (1..=m.dim()).map(|i| format!("x{i}")).collect();
        header.push("weight".into());
        let rows: Vec<Vec<String>> = m
            .atoms()
            .iter()
            .zip(m.weights())
            .map(|(p, w)| p.iter().chain(std::iter::once(w)).map(|v| fmt_f64(*v)).collect())
            .collect();
        self.emit_csv(name, &header, &rows)
    }
}

fn shape_from_args(b: &BoundArgs, dim: usize) -> CliResult<Shape> {
    let need = |flag: &str| usage(format!("--shape needs --{flag}"));
    let shape = match b.shape.expect("checked by caller") {
        ShapeKind::Interval => {
            let k = parse_list("k", b.k.as_deref().ok_or_else(|| need("k"))?)?;
            if k.len() != 2 {
                return Err(usage("--k takes lo,hi"));
            }
            Shape::interval(k[0], k[1])?
        }
        ShapeKind::Ball => Shape::ball(dim, b.radius.ok_or_else(|| need("R"))?)?,
        ShapeKind::Box => Shape::cuboid(parse_list("a", b.a.as_deref().ok_or_else(|| need("a"))?)?)?,
        ShapeKind::Diamond => {
            let a = parse_list("a", b.a.as_deref().ok_or_else(|| need("a"))?)?;
            if a.len() != 2 {
                return Err(usage("diamond takes --a a1,a2"));
            }
            Shape::diamond(a[0], a[1])?
        }
        ShapeKind::Ellipse => {
            let a = parse_list("a", b.a.as_deref().ok_or_else(|| need("a"))?)?;
            if a.len() != 1 {
                return Err(usage("ellipse takes --a A --b B"));
            }
            Shape::ellipse(a[0], b.b.ok_or_else(|| need("b"))?)?
        }
    };
    Ok(shape)
}

fn execute(ctx: &mut Ctx, command: &Command) -> CliResult<(&'static str, Value, Value)> {
    Ok(match command {
        Command::Meb { cloud: path } => {
            let cloud = read_cloud(path)?;
            ctx.note("seed", json!(ctx.cli.seed));
            let meb = geomoment::geometry::min_enclosing_ball_seeded(&cloud, ctx.cli.seed);
            let support: Vec<Vec<f64>> = meb.support.iter().map(|&i| cloud.point(i).to_vec()).collect();
            let outputs = json!({
                "center": meb.center(),
                "radius": meb.radius(),
                "support": meb.support,
                "support_points": support,
                "certified": meb.certify(&cloud)?,
            });
            ("meb", cloud_inputs(path, &cloud), outputs)
        }
        Command::Bound(b) => {
            let xbar = parse_list("xbar", &b.xbar)?;
            if let Some(path) = &b.cloud {
                let cloud = read_cloud(path)?;
                let witness = bhatia_davis_lp(&cloud, &xbar)?;
                ctx.emit_measure("maximizer.csv", &witness.maximizer)?;
                let mut inputs = cloud_inputs(path, &cloud);
                inputs["xbar"] = json!(xbar);
                ("bound", inputs, to_value(&witness))
            } else {
                let shape = shape_from_args(b, xbar.len())?;
                let bound = bhatia_davis_bound(&shape, &xbar)?;
                (
                    "bound",
                    json!({ "shape": to_value(&shape), "xbar": xbar }),
                    json!({ "bound": bound }),
                )
            }
        }
        Command::Maxvar { cloud: path } => {
            let cloud = read_cloud(path)?;
            let rep = max_variance(&cloud)?;
            ctx.emit_measure("maximizer.csv", &rep.maximizer)?;
            ("maxvar", cloud_inputs(path, &cloud), to_value(&rep))
        }
        Command::Genvar { measure, cost } => {
            let text = fs::read_to_string(measure).map_err(Error::from)?;
            let m = AtomicMeasure::from_json(&text)?;
            let cost = cost_arg(cost)?;
            let default = if cost == (RadialCost::Power { p: 2.0 }) { 1e-8 } else { DEFAULT_TOL };
            let tol = ctx.tol(default)?;
            ctx.note("tol", json!(tol));
            let res = generalized_variance(&m, &cost, tol)?;
            ctx.note("iterations", json!(res.iterations));
            let inputs = json!({ "measure": to_value(&m), "cost": to_value(&cost) });
            ("genvar", inputs, to_value(&res))
        }
        Command::Chebyshev { cloud: path, cost } => {
            let cloud = read_cloud(path)?;
            let cost = cost_arg(cost)?;
            let tol = ctx.tol(DEFAULT_TOL)?;
            ctx.note("tol", json!(tol));
            let res = chebyshev_level(&cloud, &cost, tol)?;
            ctx.note("iterations", json!(res.iterations));
            let mut inputs = cloud_inputs(path, &cloud);
            inputs["cost"] = to_value(&cost);
            ("chebyshev", inputs, to_value(&res))
        }
        Command::Isodiametric(a) => {
            let cost = cost_arg(&a.cost)?;
            let mut config = SearchConfig::new(a.n, a.d, cost);
            if let Some(atoms) = a.atoms {
                config.atom_count = atoms;
            }
            config.restarts = a.restarts;
            config.max_iters = a.max_iters;
            config.step = a.step;
            config.seed = ctx.cli.seed;
            let tol = ctx.tol(1e-3)?;
            ctx.note("tol", json!(tol));
            ctx.note("seed", json!(config.seed));
            let result = search_max(&config)?;
            let check = verify_simplex_optimality(&result, config.n, config.d, tol);
            let rows: Vec<Vec<String>> = result
                .per_restart_values
                .iter()
                .enumerate()
                .map(|(i, v)| vec![i.to_string(), v.map(fmt_f64).unwrap_or_default()])
                .collect();
            ctx.emit_csv("restarts.csv", &["restart".into(), "value".into()], &rows)?;
            ctx.emit_measure("atoms.csv", &result.best_measure)?;
            let outputs = json!({ "search": to_value(&result), "simplex_check": to_value(&check) });
            ("isodiametric", to_value(&config), outputs)
        }
        Command::Jung { cloud: path } => {
            let cloud = read_cloud(path)?;
            let tol = ctx.tol(1e-9)?;
            ctx.note("tol", json!(tol));
            ("jung", cloud_inputs(path, &cloud), to_value(&jung_verify(&cloud, tol)))
        }
        Command::Duality { cloud: path } => {
            let cloud = read_cloud(path)?;
            let tol = ctx.tol(1e-7)?;
            ctx.note("tol", json!(tol));
            let check = duality_check(&cloud)?;
            let enclosing = min_enclosing_ball(&cloud);
            ctx.emit_measure("maximizer.csv", &check.maximizer)?;
            let mut outputs = to_value(&check);
            outputs["within_tol"] = json!(check.gap <= tol);
            outputs["enclosing_radius"] = json!(enclosing.radius());
            ("duality", cloud_inputs(path, &cloud), outputs)
        }
    })
}

fn command_name(command: &Command) -> &'static str {
    match command {
        Command::Meb { .. } => "meb",
        Command::Bound(_) => "bound",
        Command::Maxvar { .. } => "maxvar",
        Command::Genvar { .. } => "genvar",
        Command::Chebyshev { .. } => "chebyshev",
        Command::Isodiametric(_) => "isodiametric",
        Command::Jung { .. } => "jung",
        Command::Duality { .. } => "duality",
    }
}

fn render(report: &RunReport) -> String {
    let mut s = geomoment::json::to_string(report).expect("report serializes");
    s.push('\n');
    s
}

/// Runs one invocation. `args` includes the program name.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let started = Instant::now();
    let mut ctx = Ctx {
        cli: &cli,
        diagnostics: serde_json::Map::new(),
    };
    let result = execute(&mut ctx, &cli.command);
    if cli.timing {
        ctx.note("wall_clock_seconds", json!(started.elapsed().as_secs_f64()));
    }
    let version = env!("CARGO_PKG_VERSION").to_string();
    match result {
        Ok((command, inputs, outputs)) => {
            let report = RunReport {
                command: command.into(),
                inputs,
                outputs,
                diagnostics: Value::Object(ctx.diagnostics),
                version,
            };
            Outcome {
                code: EXIT_OK,
                stdout: render(&report),
                stderr: String::new(),
            }
        }
        Err(err) => {
            let code = exit_code(&err);
            let report = RunReport {
                command: command_name(&cli.command).into(),
                inputs: Value::Null,
                outputs: json!({ "error": error_payload(&err) }),
                diagnostics: Value::Object(ctx.diagnostics),
                version,
            };
            Outcome {
                code,
                stdout: render(&report),
                stderr: format!("error: {err}\n"),
            }
        }
    }
}
