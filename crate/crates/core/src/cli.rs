//! Command-line driver.
//!
//! Exit codes: 0 success, 1 a verified bound was violated, 2 usage error,
//! 3 input error (unreadable or invalid data, or arguments outside an
//! operation's domain).

use std::ffi::OsString;
use std::fs;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use rand::Rng;
use serde::Serialize;
use thiserror::Error;

use crate::chebyshev::{delta, delta_triangle_case, ChebyshevResult};
use crate::extremal::{
    build_u_n, half_disk_polyline, magic_kite, random_convex_polygon, ratio_report, Bound,
    RatioReport,
};
use crate::geom::{ConvexPolygon, Point};
use crate::rng::{stream_rng, StreamRng};
use crate::search::{
    maximize_ngon_ratio, min_perimeter_cnl, minimize_quadrangle_ratio, SearchConfig, SearchResult,
};
use crate::svg::{render, SvgScene};

/// Slack a verified bound may miss by before it counts as violated.
pub const VERIFY_EPS: f64 = 1e-9;

#[derive(Debug, Parser)]
#[command(
    name = "relcheb",
    version,
    about = "Relative Chebyshev radius of convex polygons"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// δ, extremal points and footpoints of a polygon read from JSON
    Delta {
        /// Polygon JSON file, or - for standard input
        input: String,
        #[arg(long)]
        json: Option<String>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Closed-form δ of a triangle from its side lengths
    Triangle {
        #[arg(long, num_args = 3, value_names = ["A", "B", "C"], allow_negative_numbers = true)]
        sides: Vec<f64>,
    },
    /// Perimeter-to-δ ratio against a bound
    Ratio {
        input: String,
        #[arg(long, value_enum)]
        bound: BoundArg,
        /// Vertex budget for --bound ngon (defaults to the polygon's own count)
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        json: Option<String>,
    },
    /// Write an extremal figure as polygon JSON
    Construct {
        #[command(subcommand)]
        figure: Figure,
        #[arg(long, global = true)]
        json: Option<String>,
    },
    /// Check a bound on seeded random polygons
    Verify {
        #[command(subcommand)]
        suite: Suite,
        #[arg(long, global = true, default_value_t = 1000)]
        samples: usize,
        #[arg(long, global = true, default_value_t = 1)]
        seed: u64,
    },
    /// Seeded shape searches
    Search {
        #[command(subcommand)]
        problem: SearchProblem,
        #[arg(long, global = true, default_value_t = 1)]
        seed: u64,
        #[arg(long, global = true, default_value_t = 16)]
        restarts: usize,
        #[arg(long, global = true)]
        json: Option<String>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum BoundArg {
    Triangle,
    Ngon,
    Curve,
    QuadConjecture,
}

#[derive(Debug, Subcommand)]
enum Figure {
    /// Uₙ: diameter plus half a regular 2(n−1)-gon
    Un {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1.0)]
        r: f64,
    },
    /// Half-disk with its arc split into m chords
    HalfDisk {
        #[arg(long, default_value_t = 1.0)]
        r: f64,
        #[arg(long)]
        m: usize,
    },
    MagicKite,
}

#[derive(Debug, Subcommand)]
#[allow(clippy::enum_variant_names)]
enum Suite {
    TriangleBound,
    NgonBound {
        #[arg(long)]
        n: usize,
    },
    CurveBound,
}

#[derive(Debug, Subcommand)]
enum SearchProblem {
    QuadMinRatio,
    NgonMaxRatio {
        #[arg(long)]
        n: usize,
    },
    Cnl {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        l: f64,
    },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    fn input(e: impl std::fmt::Display) -> Self {
        CliError::Input(e.to_string())
    }
}

/// 9 significant digits, plain notation for moderate magnitudes.
pub fn fmt_sig(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let mag = x.abs().log10().floor() as i32;
    if !(-5..=12).contains(&mag) {
        return format!("{x:.8e}");
    }
    let decimals = (8 - mag).max(0) as usize;
    format!("{x:.decimals$}")
}

fn fmt_point(p: Point) -> String {
    format!("({}, {})", fmt_sig(p.x), fmt_sig(p.y))
}

#[derive(Serialize)]
struct DeltaJson {
    radius: f64,
    extremal_points: Vec<ExtremalJson>,
    perimeter: f64,
    ratio: f64,
}

#[derive(Serialize)]
struct ExtremalJson {
    edge: usize,
    t: f64,
    point: Point,
    footpoints: Vec<usize>,
}

impl DeltaJson {
    fn new(poly: &ConvexPolygon, r: &ChebyshevResult) -> Self {
        let perimeter = poly.perimeter();
        DeltaJson {
            radius: r.radius,
            extremal_points: r
                .extremal_points
                .iter()
                .map(|e| ExtremalJson {
                    edge: e.edge,
                    t: e.t,
                    point: e.point,
                    footpoints: e.footpoints.clone(),
                })
                .collect(),
            perimeter,
            ratio: perimeter / r.radius,
        }
    }
}

#[derive(Serialize)]
struct RatioJson<'a> {
    perimeter: f64,
    radius: f64,
    ratio: f64,
    bound: String,
    bound_value: f64,
    satisfied: bool,
    slack: f64,
    equality: bool,
    status: &'a str,
}

#[derive(Serialize)]
struct SearchJson<'a> {
    problem: &'a str,
    objective: f64,
    polygon: &'a ConvexPolygon,
    seed: u64,
    restarts: usize,
    per_restart: &'a [f64],
    best_restart: usize,
    evaluations: usize,
    converged_restarts: usize,
    exploratory: bool,
}

struct Io<'a> {
    stdin: &'a mut dyn Read,
    stdout: &'a mut dyn Write,
}

impl Io<'_> {
    fn read_polygon(&mut self, path: &str) -> Result<ConvexPolygon, CliError> {
        let text = if path == "-" {
            let mut s = String::new();
            self.stdin.read_to_string(&mut s)?;
            s
        } else {
            fs::read_to_string(path).map_err(|e| CliError::Input(format!("{path}: {e}")))?
        };
        serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{path}: {e}")))
    }

    fn write_json<T: Serialize>(&mut self, path: &str, value: &T) -> Result<(), CliError> {
        let mut text = serde_json::to_string(value).map_err(CliError::input)?;
        text.push('\n');
        if path == "-" {
            self.stdout.write_all(text.as_bytes())?;
        } else {
            fs::write(path, text)?;
        }
        Ok(())
    }
}

/// Runs the CLI on `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdin = std::io::stdin();
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with_io(
        args,
        &mut stdin.lock(),
        &mut stdout.lock(),
        &mut stderr.lock(),
    )
}

pub fn run_with_io<I, T>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = write!(stdout, "{e}");
            return 0;
        }
        Err(e) => {
            let text = e.to_string();
            let line = text.lines().next().unwrap_or("usage error");
            let _ = writeln!(stderr, "{line}");
            return 2;
        }
    };
    let mut io = Io { stdin, stdout };
    match dispatch(cli.command, &mut io) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            3
        }
    }
}

fn dispatch(command: Command, io: &mut Io<'_>) -> Result<i32, CliError> {
    match command {
        Command::Delta { input, json, svg } => cmd_delta(io, &input, json, svg),
        Command::Triangle { sides } => cmd_triangle(io, &sides),
        Command::Ratio {
            input,
            bound,
            n,
            json,
        } => cmd_ratio(io, &input, bound, n, json),
        Command::Construct { figure, json } => cmd_construct(io, figure, json),
        Command::Verify {
            suite,
            samples,
            seed,
        } => cmd_verify(io, suite, samples, seed),
        Command::Search {
            problem,
            seed,
            restarts,
            json,
        } => cmd_search(io, problem, seed, restarts, json),
    }
}

fn cmd_delta(
    io: &mut Io<'_>,
    input: &str,
    json: Option<String>,
    svg: Option<PathBuf>,
) -> Result<i32, CliError> {
    let poly = io.read_polygon(input)?;
    let r = delta(&poly);
    let out = DeltaJson::new(&poly, &r);
    if json.as_deref() != Some("-") {
        writeln!(io.stdout, "vertices: {}", poly.len())?;
        writeln!(io.stdout, "perimeter: {}", fmt_sig(out.perimeter))?;
        writeln!(io.stdout, "δ: {}", fmt_sig(r.radius))?;
        writeln!(io.stdout, "L/δ: {}", fmt_sig(out.ratio))?;
        writeln!(io.stdout, "extremal points: {}", r.extremal_points.len())?;
        for e in &r.extremal_points {
            writeln!(
                io.stdout,
                "  edge {} t={} at {} footpoints {:?}",
                e.edge,
                fmt_sig(e.t),
                fmt_point(e.point),
                e.footpoints
            )?;
        }
    }
    if let Some(path) = json {
        io.write_json(&path, &out)?;
    }
    if let Some(path) = svg {
        let scene = SvgScene {
            polygon: &poly,
            result: &r,
            annotation: format!("δ = {}, L/δ = {}", fmt_sig(r.radius), fmt_sig(out.ratio)),
        };
        fs::write(path, render(&scene))?;
    }
    Ok(0)
}

fn cmd_triangle(io: &mut Io<'_>, sides: &[f64]) -> Result<i32, CliError> {
    let (d, case) = delta_triangle_case(sides[0], sides[1], sides[2]).map_err(CliError::input)?;
    writeln!(io.stdout, "δ = {}", fmt_sig(d))?;
    writeln!(io.stdout, "case: {}", case.label())?;
    Ok(0)
}

fn bound_for(arg: BoundArg, poly: &ConvexPolygon, n: Option<usize>) -> Bound {
    match arg {
        BoundArg::Triangle => Bound::TriangleLower,
        BoundArg::Ngon => Bound::NgonUpper(n.unwrap_or(poly.len())),
        BoundArg::Curve => Bound::CurveUpper,
        BoundArg::QuadConjecture => Bound::QuadrangleConjecture,
    }
}

fn ratio_json(r: &RatioReport) -> RatioJson<'_> {
    RatioJson {
        perimeter: r.perimeter,
        radius: r.radius,
        ratio: r.ratio,
        bound: r.bound.to_string(),
        bound_value: r.bound_value,
        satisfied: r.satisfied,
        slack: r.slack,
        equality: r.equality,
        status: r.status(),
    }
}

fn cmd_ratio(
    io: &mut Io<'_>,
    input: &str,
    bound: BoundArg,
    n: Option<usize>,
    json: Option<String>,
) -> Result<i32, CliError> {
    let poly = io.read_polygon(input)?;
    let report = ratio_report(&poly, bound_for(bound, &poly, n)).map_err(CliError::input)?;
    if json.as_deref() != Some("-") {
        writeln!(io.stdout, "perimeter: {}", fmt_sig(report.perimeter))?;
        writeln!(io.stdout, "δ: {}", fmt_sig(report.radius))?;
        writeln!(io.stdout, "ratio L/δ: {}", fmt_sig(report.ratio))?;
        writeln!(
            io.stdout,
            "bound: {} = {}",
            report.bound,
            fmt_sig(report.bound_value)
        )?;
        writeln!(io.stdout, "slack: {}", fmt_sig(report.slack))?;
        writeln!(io.stdout, "status: {}", report.status())?;
    }
    if let Some(path) = json {
        io.write_json(&path, &ratio_json(&report))?;
    }
    Ok(0)
}

fn cmd_construct(io: &mut Io<'_>, figure: Figure, json: Option<String>) -> Result<i32, CliError> {
    let poly = match figure {
        Figure::Un { n, r } => build_u_n(n, r).map_err(CliError::input)?,
        Figure::HalfDisk { r, m } => half_disk_polyline(r, m).map_err(CliError::input)?,
        Figure::MagicKite => magic_kite(),
    };
    io.write_json(json.as_deref().unwrap_or("-"), &poly)?;
    Ok(0)
}

fn cmd_verify(io: &mut Io<'_>, suite: Suite, samples: usize, seed: u64) -> Result<i32, CliError> {
    let (label, bound_of): (String, Box<dyn Fn(usize) -> Bound>) = match suite {
        Suite::TriangleBound => (
            "triangle lower bound".into(),
            Box::new(|_| Bound::TriangleLower),
        ),
        Suite::NgonBound { n } => {
            if n < 2 {
                return Err(CliError::Input(format!("n must be at least 2, got {n}")));
            }
            (
                format!("{n}-gon upper bound"),
                Box::new(move |_| Bound::NgonUpper(n)),
            )
        }
        Suite::CurveBound => (
            "convex curve upper bound".into(),
            Box::new(|_| Bound::CurveUpper),
        ),
    };
    let size_of = |rng: &mut StreamRng| -> usize {
        match suite {
            Suite::TriangleBound => 3,
            Suite::NgonBound { n } => n,
            Suite::CurveBound => rng.random_range(2..=64),
        }
    };
    let mut worst: Option<(usize, f64)> = None;
    let mut violations = 0usize;
    for k in 0..samples {
        let mut rng = stream_rng(seed, k as u64);
        let n = size_of(&mut rng);
        let poly = random_convex_polygon(n, &mut rng);
        let report = ratio_report(&poly, bound_of(n)).map_err(CliError::input)?;
        if report.slack < -VERIFY_EPS {
            violations += 1;
        }
        if worst.is_none_or(|(_, s)| report.slack < s) {
            worst = Some((k, report.slack));
        }
    }
    writeln!(io.stdout, "suite: {label}")?;
    writeln!(io.stdout, "samples: {samples}, seed: {seed}")?;
    if let Some((k, s)) = worst {
        writeln!(io.stdout, "smallest slack: {} (sample {k})", fmt_sig(s))?;
    }
    writeln!(io.stdout, "violations: {violations}")?;
    Ok(if violations > 0 { 1 } else { 0 })
}

fn cmd_search(
    io: &mut Io<'_>,
    problem: SearchProblem,
    seed: u64,
    restarts: usize,
    json: Option<String>,
) -> Result<i32, CliError> {
    let config = SearchConfig::with_seed(seed, restarts);
    let result: SearchResult = match problem {
        SearchProblem::QuadMinRatio => minimize_quadrangle_ratio(&config),
        SearchProblem::NgonMaxRatio { n } => maximize_ngon_ratio(n, &config),
        SearchProblem::Cnl { n, l } => min_perimeter_cnl(n, l, &config),
    }
    .map_err(CliError::input)?;
    if json.as_deref() != Some("-") {
        writeln!(io.stdout, "problem: {}", result.problem)?;
        writeln!(io.stdout, "objective: {}", fmt_sig(result.objective))?;
        writeln!(
            io.stdout,
            "best restart: {} of {}",
            result.best_restart, result.restarts
        )?;
        writeln!(
            io.stdout,
            "evaluations: {}, converged restarts: {}",
            result.evaluations, result.converged_restarts
        )?;
        if result.exploratory {
            writeln!(
                io.stdout,
                "note: exploratory upper estimate, no known optimum"
            )?;
        }
        writeln!(io.stdout, "polygon:")?;
        for &v in result.best_polygon.vertices() {
            writeln!(io.stdout, "  {}", fmt_point(v))?;
        }
    }
    if let Some(path) = json {
        let out = SearchJson {
            problem: &result.problem,
            objective: result.objective,
            polygon: &result.best_polygon,
            seed: result.seed,
            restarts: result.restarts,
            per_restart: &result.per_restart_bests,
            best_restart: result.best_restart,
            evaluations: result.evaluations,
            converged_restarts: result.converged_restarts,
            exploratory: result.exploratory,
        };
        io.write_json(&path, &out)?;
    }
    Ok(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str], stdin: &str) -> (i32, String, String) {
        let mut input = stdin.as_bytes();
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let mut argv = vec!["relcheb"];
        argv.extend_from_slice(args);
        let code = run_with_io(argv, &mut input, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn fmt_sig_nine_digits() {
        assert_eq!(fmt_sig(3f64.sqrt() / 2.0), "0.866025404");
        assert_eq!(fmt_sig(3.389946342449883), "3.38994634");
        assert_eq!(fmt_sig(1234.5), "1234.50000");
        assert_eq!(fmt_sig(0.0), "0");
    }

    #[test]
    fn triangle_subcommand() {
        let (code, out, _) = call(&["triangle", "--sides", "1", "1", "1"], "");
        assert_eq!(code, 0);
        assert!(out.contains("δ = 0.866025404"));
        assert!(out.contains("case: γ ≥ π/4 (altitude)"));
        let (code, _, err) = call(&["triangle", "--sides", "1", "1", "3"], "");
        assert_eq!(code, 3);
        assert_eq!(err.lines().count(), 1);
    }

    #[test]
    fn usage_errors_exit_2() {
        let (code, _, err) = call(&["frobnicate"], "");
        assert_eq!(code, 2);
        assert_eq!(err.lines().count(), 1);
        assert_eq!(call(&["triangle", "--sides", "1", "1"], "").0, 2);
        assert_eq!(call(&["ratio", "-", "--bound", "nope"], "").0, 2);
        assert_eq!(call(&["--help"], "").0, 0);
    }

    #[test]
    fn delta_from_stdin() {
        let sq = r#"{"vertices": [[0,0],[1,0],[1,1],[0,1]]}"#;
        let (code, out, _) = call(&["delta", "-"], sq);
        assert_eq!(code, 0);
        assert!(out.contains("δ: 1.11803399"));
        assert!(out.contains("extremal points: 4"));
        let (code, out, _) = call(&["delta", "-", "--json", "-"], sq);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["extremal_points"].as_array().unwrap().len(), 4);
        assert_eq!(
            v["extremal_points"][0]["footpoints"],
            serde_json::json!([2, 3])
        );
    }

    #[test]
    fn invalid_polygon_is_input_error() {
        let (code, _, err) = call(&["delta", "-"], r#"{"vertices": [[0,0],[1,0],[2,0]]}"#);
        assert_eq!(code, 3);
        assert!(err.starts_with("error:"));
        assert_eq!(call(&["delta", "/nonexistent/file.json"], "").0, 3);
        assert_eq!(call(&["delta", "-"], "not json").0, 3);
        let tri = r#"{"vertices": [[0,0],[1,0],[0,1]]}"#;
        assert_eq!(
            call(&["ratio", "-", "--bound", "quad-conjecture"], tri).0,
            3
        );
    }

    #[test]
    fn construct_and_ratio() {
        let (code, kite, _) = call(&["construct", "magic-kite"], "");
        assert_eq!(code, 0);
        let (code, out, _) = call(
            &["ratio", "-", "--bound", "quad-conjecture", "--json", "-"],
            &kite,
        );
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert!((v["ratio"].as_f64().unwrap() - 3.389946).abs() < 1e-6);
        assert_eq!(v["status"], "conjectural equality");
    }

    #[test]
    fn verify_is_deterministic() {
        let a = call(
            &["verify", "triangle-bound", "--samples", "50", "--seed", "3"],
            "",
        );
        let b = call(
            &["verify", "triangle-bound", "--samples", "50", "--seed", "3"],
            "",
        );
        assert_eq!(a, b);
        assert_eq!(a.0, 0);
        assert!(a.1.contains("violations: 0"));
    }
}
