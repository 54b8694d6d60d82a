//! `netfield` command-line tool.
//!
//! Exit codes: 0 on success, 2 when the input is rejected by validation (or
//! a matrix is not PSD under `--strict`), 1 for I/O, parse and usage errors.
//! Errors are written to stderr as `{"error": kind, "message": text}`.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nalgebra::DMatrix;
use netfield::io::{MatrixReport, SampleReport};
use netfield::kernels::{forbidden_certificate, psd_check, smoothness_bound, star_inequality_check, PSD_REL_TOL};
use netfield::simulate::{empirical_variogram, sample_canonical_field, sample_from_covariance};
use netfield::{
    block_decomposition, CovarianceMatrix, EuclideanGraph, GeodesicClass, GraphPoint, GraphSpec, KernelSpec,
    MetricKind, PointSpec, ResistanceContext,
};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::json;

/// Point pairs closer than this are rejected before building a covariance.
const MIN_SEPARATION: f64 = 1e-12;

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("{what}: {message}")]
    Parse { what: String, message: String },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Domain(#[from] netfield::Error),
}

impl CliError {
    fn kind(&self) -> &'static str {
        match self {
            CliError::Io { .. } => "Io",
            CliError::Parse { .. } => "Parse",
            CliError::Usage(_) => "Usage",
            CliError::Domain(e) => e.kind(),
        }
    }

    fn exit_code(&self) -> u8 {
        match self {
            CliError::Domain(_) => 2,
            _ => 1,
        }
    }
}

type CliResult<T> = Result<T, CliError>;

#[derive(Parser)]
#[command(name = "netfield", version, about = "Metrics, covariance kernels and Gaussian fields on graphs with Euclidean edges")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a graph and print a summary.
    Validate(GraphArgs),
    /// Block decomposition and geodesic validity class.
    Blocks(GraphArgs),
    /// Distance between two points.
    Dist(DistArgs),
    /// Pairwise distance matrix of a point set.
    Distmatrix(MatrixArgs),
    /// Covariance matrix of a kernel over a point set, with a PSD certificate.
    Cov(CovArgs),
    /// Eigenvalue PSD certificate of a matrix.
    PsdCheck(PsdArgs),
    /// Geodesic validity class, with a Theta-graph witness when forbidden.
    ForbiddenCheck(ForbiddenArgs),
    /// Star-graph inequalities for a kernel's radial profile.
    StarCheck(StarArgs),
    /// Draw samples of a Gaussian field at a point set.
    Simulate(SimulateArgs),
    /// Empirical variogram of samples.
    Variogram(VariogramArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct Output {
    /// Write output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GraphArgs {
    /// Graph JSON file, or `-` for stdin.
    #[arg(long)]
    graph: PathBuf,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct MetricArgs {
    #[arg(long, default_value = "resistance")]
    metric: MetricKind,
    /// Origin vertex label for the resistance construction.
    #[arg(long)]
    origin: Option<String>,
}

#[derive(Args)]
struct DistArgs {
    #[arg(long)]
    graph: PathBuf,
    #[command(flatten)]
    metric: MetricArgs,
    /// First point as JSON, e.g. `{"edge":"e1","offset":0.25}`.
    #[arg(long)]
    from: String,
    /// Second point as JSON.
    #[arg(long)]
    to: String,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct MatrixArgs {
    #[arg(long)]
    graph: PathBuf,
    /// JSON array of points.
    #[arg(long)]
    points: PathBuf,
    #[command(flatten)]
    metric: MetricArgs,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct CovArgs {
    #[command(flatten)]
    matrix: MatrixArgs,
    /// Kernel JSON file, e.g. `{"family":"matern","alpha":0.5,"beta":1}`.
    #[arg(long)]
    kernel: PathBuf,
    /// Relative eigenvalue tolerance of the PSD certificate.
    #[arg(long, default_value_t = PSD_REL_TOL)]
    tol: f64,
    /// Exit 2 if the matrix is not certified PSD.
    #[arg(long)]
    strict: bool,
}

#[derive(Args)]
struct PsdArgs {
    /// Matrix JSON (`{"matrix": [[...]]}`), or `-` for stdin.
    #[arg(long = "in", default_value = "-")]
    input: PathBuf,
    #[arg(long, default_value_t = PSD_REL_TOL)]
    tol: f64,
    #[arg(long)]
    strict: bool,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct ForbiddenArgs {
    #[arg(long)]
    graph: PathBuf,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct StarArgs {
    #[arg(long)]
    kernel: PathBuf,
    /// Number of star arms.
    #[arg(long)]
    n: usize,
    /// Comma-separated arm positions; defaults to 0.1, 0.2, ..., 2.0.
    #[arg(long, value_delimiter = ',')]
    t: Vec<f64>,
    #[arg(long)]
    strict: bool,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct SimulateArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    points: PathBuf,
    /// Kernel JSON; without it the canonical field is sampled.
    #[arg(long)]
    kernel: Option<PathBuf>,
    #[command(flatten)]
    metric: MetricArgs,
    /// Number of draws.
    #[arg(long, default_value_t = 1000)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct VariogramArgs {
    /// Samples JSON as written by `simulate`. Without it the canonical field
    /// is sampled from `--graph` and `--points`.
    #[arg(long, conflicts_with_all = ["graph", "points"])]
    samples: Option<PathBuf>,
    #[arg(long, requires = "points")]
    graph: Option<PathBuf>,
    #[arg(long, requires = "graph")]
    points: Option<PathBuf>,
    #[arg(long)]
    origin: Option<String>,
    #[arg(long, default_value_t = 1000)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    #[command(flatten)]
    output: Output,
}

fn read_text(path: &Path) -> CliResult<String> {
    let io_err = |source| CliError::Io {
        path: path.display().to_string(),
        source,
    };
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(io_err)?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(io_err)
    }
}

fn parse_json<T: DeserializeOwned>(text: &str, what: &str) -> CliResult<T> {
    serde_json::from_str(text).map_err(|e| CliError::Parse {
        what: what.to_string(),
        message: e.to_string(),
    })
}

fn read_json<T: DeserializeOwned>(path: &Path) -> CliResult<T> {
    parse_json(&read_text(path)?, &path.display().to_string())
}

fn load_graph(path: &Path) -> CliResult<EuclideanGraph> {
    let spec: GraphSpec = read_json(path)?;
    Ok(EuclideanGraph::from_spec(spec)?)
}

fn load_kernel(path: &Path) -> CliResult<KernelSpec> {
    let spec: KernelSpec = read_json(path)?;
    spec.validate()?;
    Ok(spec)
}

/// Resolved points with display labels.
fn load_points(g: &EuclideanGraph, path: &Path) -> CliResult<(Vec<GraphPoint>, Vec<String>)> {
    let specs: Vec<PointSpec> = read_json(path)?;
    let mut points = Vec::with_capacity(specs.len());
    let mut labels = Vec::with_capacity(specs.len());
    for spec in &specs {
        let p = g.resolve(spec)?;
        labels.push(spec.label().map_or_else(|| g.point_label(p), str::to_string));
        points.push(p);
    }
    Ok((points, labels))
}

fn context<'g>(g: &'g EuclideanGraph, origin: Option<&str>) -> CliResult<ResistanceContext<'g>> {
    let origin = origin.map(|o| g.vertex_id(o)).transpose()?;
    Ok(ResistanceContext::new(g, origin)?)
}

fn emit(output: &Output, text: &str) -> CliResult<()> {
    match &output.out {
        Some(path) => fs::write(path, text).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        }),
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(text.as_bytes()).map_err(|source| CliError::Io {
                path: "<stdout>".into(),
                source,
            })
        }
    }
}

fn emit_json(output: &Output, value: &impl Serialize) -> CliResult<()> {
    let mut text = serde_json::to_string_pretty(value).expect("output types serialize");
    text.push('\n');
    emit(output, &text)
}

fn emit_matrix(output: &Output, format: Format, report: &MatrixReport) -> CliResult<()> {
    match format {
        Format::Json => emit_json(output, report),
        Format::Csv => emit(output, &report.to_csv()),
    }
}

fn validate(args: GraphArgs) -> CliResult<()> {
    let g = load_graph(&args.graph)?;
    emit_json(
        &args.output,
        &json!({
            "valid": true,
            "vertices": g.n_vertices(),
            "edges": g.n_edges(),
            "total_length": g.total_length(),
            "is_tree": g.is_tree(),
        }),
    )
}

fn blocks(args: GraphArgs) -> CliResult<()> {
    let g = load_graph(&args.graph)?;
    let dec = block_decomposition(&g);
    let blocks: Vec<_> = dec
        .blocks
        .iter()
        .map(|b| {
            json!({
                "kind": b.kind,
                "edges": b.edges.iter().map(|&e| g.edge(e).id.clone()).collect::<Vec<_>>(),
                "vertices": b.vertices.iter().map(|&v| g.label(v).to_string()).collect::<Vec<_>>(),
            })
        })
        .collect();
    let articulation: Vec<_> = dec.articulation_vertices.iter().map(|&v| g.label(v).to_string()).collect();
    emit_json(
        &args.output,
        &json!({
            "class": dec.geodesic_class(),
            "blocks": blocks,
            "articulation_vertices": articulation,
        }),
    )
}

fn dist(args: DistArgs) -> CliResult<()> {
    let g = load_graph(&args.graph)?;
    let p = g.resolve(&parse_json::<PointSpec>(&args.from, "--from")?)?;
    let q = g.resolve(&parse_json::<PointSpec>(&args.to, "--to")?)?;
    let ctx = context(&g, args.metric.origin.as_deref())?;
    let value = ctx.distance(p, q, args.metric.metric);
    let mut out = json!({ "metric": args.metric.metric, "value": value });
    if args.metric.metric == MetricKind::Resistance {
        out["origin"] = json!(g.label(ctx.origin()));
    }
    emit_json(&args.output, &out)
}

fn distance_report(args: &MatrixArgs) -> CliResult<(MatrixReport, DMatrix<f64>)> {
    let g = load_graph(&args.graph)?;
    let (points, labels) = load_points(&g, &args.points)?;
    let ctx = context(&g, args.metric.origin.as_deref())?;
    let d = ctx.distance_matrix(&points, args.metric.metric)?;
    Ok((MatrixReport::new(Some(args.metric.metric), labels, &d), d))
}

fn distmatrix(args: MatrixArgs) -> CliResult<()> {
    let (report, _) = distance_report(&args)?;
    emit_matrix(&args.output, args.format, &report)
}

/// Rejects point pairs closer than [`MIN_SEPARATION`].
fn ensure_separated(d: &DMatrix<f64>) -> CliResult<()> {
    for i in 0..d.nrows() {
        for j in (i + 1)..d.ncols() {
            if d[(i, j)] < MIN_SEPARATION {
                return Err(netfield::Error::DuplicatePoints { first: i, second: j }.into());
            }
        }
    }
    Ok(())
}

fn strict_verdict(strict: bool, report: &netfield::kernels::PsdReport) -> CliResult<()> {
    if strict && !report.is_psd() {
        return Err(netfield::Error::NotPsd {
            min_eig: report.min_eig,
        }
        .into());
    }
    Ok(())
}

fn cov(args: CovArgs) -> CliResult<()> {
    let spec = load_kernel(&args.kernel)?;
    let (report, d) = distance_report(&args.matrix)?;
    ensure_separated(&d)?;
    let mut c = CovarianceMatrix::from_distances(report.labels, &d, &spec, args.matrix.metric.metric)?;
    let psd = c.certify(args.tol)?;
    emit_matrix(&args.matrix.output, args.matrix.format, &MatrixReport::from(&c))?;
    strict_verdict(args.strict, &psd)
}

fn psd(args: PsdArgs) -> CliResult<()> {
    let input: MatrixReport = read_json(&args.input)?;
    let m = input.to_dmatrix().ok_or_else(|| CliError::Parse {
        what: args.input.display().to_string(),
        message: "matrix rows have unequal lengths".into(),
    })?;
    let report = psd_check(&m, args.tol)?;
    emit_json(&args.output, &report)?;
    strict_verdict(args.strict, &report)
}

fn forbidden(args: ForbiddenArgs) -> CliResult<()> {
    let g = load_graph(&args.graph)?;
    let class = block_decomposition(&g).geodesic_class();
    let mut out = json!({ "class": class });
    if class == GeodesicClass::ForbiddenForGeodesic {
        out["witness"] = serde_json::to_value(forbidden_certificate(0.5, 1.0)?).expect("witness serializes");
    }
    emit_json(&args.output, &out)
}

fn star(args: StarArgs) -> CliResult<()> {
    let spec = load_kernel(&args.kernel)?;
    let ts = if args.t.is_empty() {
        (1..=20).map(|k| k as f64 / 10.0).collect()
    } else {
        args.t
    };
    let report = star_inequality_check(|t| spec.radial_profile(t), args.n, &ts)?;
    let mut out = serde_json::to_value(&report).expect("star report serializes");
    out["smoothness_bound"] = json!(smoothness_bound(args.n)?);
    emit_json(&args.output, &out)?;
    if args.strict && !report.pass {
        return Err(netfield::Error::ParamOutOfRange {
            field: "kernel",
            value: spec.alpha,
            allowed: "profile satisfying the star inequalities",
        }
        .into());
    }
    Ok(())
}

fn emit_samples(output: &Output, format: Format, report: &SampleReport) -> CliResult<()> {
    match format {
        Format::Json => emit_json(output, report),
        Format::Csv => emit(output, &report.to_csv()),
    }
}

fn simulate(args: SimulateArgs) -> CliResult<()> {
    let g = load_graph(&args.graph)?;
    let (points, labels) = load_points(&g, &args.points)?;
    let ctx = context(&g, args.metric.origin.as_deref())?;
    let mut sample = match &args.kernel {
        None => sample_canonical_field(&ctx, &points, args.n, args.seed)?,
        Some(path) => {
            let spec = load_kernel(path)?;
            let d = ctx.distance_matrix(&points, args.metric.metric)?;
            ensure_separated(&d)?;
            let c = CovarianceMatrix::from_distances(labels.clone(), &d, &spec, args.metric.metric)?;
            sample_from_covariance(&c.values, labels.clone(), args.n, args.seed)?
        }
    };
    sample.labels = labels;
    emit_samples(&args.output, args.format, &SampleReport::from(&sample))
}

fn variogram(args: VariogramArgs) -> CliResult<()> {
    let sample = match (&args.samples, &args.graph, &args.points) {
        (Some(path), _, _) => {
            let report: SampleReport = read_json(path)?;
            report.into_sample().ok_or_else(|| CliError::Parse {
                what: path.display().to_string(),
                message: "draw rows do not match the label count".into(),
            })?
        }
        (None, Some(graph), Some(points)) => {
            let g = load_graph(graph)?;
            let (pts, labels) = load_points(&g, points)?;
            let ctx = context(&g, args.origin.as_deref())?;
            let mut s = sample_canonical_field(&ctx, &pts, args.n, args.seed)?;
            s.labels = labels;
            s
        }
        _ => return Err(CliError::Usage("variogram needs --samples, or --graph with --points".into())),
    };
    let v = empirical_variogram(&sample)?;
    emit_matrix(&args.output, args.format, &MatrixReport::new(None, sample.labels, &v))
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Validate(a) => validate(a),
        Command::Blocks(a) => blocks(a),
        Command::Dist(a) => dist(a),
        Command::Distmatrix(a) => distmatrix(a),
        Command::Cov(a) => cov(a),
        Command::PsdCheck(a) => psd(a),
        Command::ForbiddenCheck(a) => forbidden(a),
        Command::StarCheck(a) => star(a),
        Command::Simulate(a) => simulate(a),
        Command::Variogram(a) => variogram(a),
    }
}

fn report_error(kind: &str, message: &str) {
    eprintln!("{}", json!({ "error": kind, "message": message }));
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            report_error("Usage", e.to_string().trim_end());
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            report_error(e.kind(), &e.to_string());
            ExitCode::from(e.exit_code())
        }
    }
}
