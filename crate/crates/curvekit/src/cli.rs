//! Command-line interface: five subcommands over edge lists, point
//! clouds, and distance matrices, emitting CSV, JSON, or JSON lines.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use curvekit::cloud::{self, RadiiSpec};
use curvekit::community::{self, Recompute};
use curvekit::complex::SimplicialComplex;
use curvekit::curvature as curv;
use curvekit::curvature::{Denominator, SampleConfig};
use curvekit::error::{Error, Result};
use curvekit::flow;
use curvekit::graph::{DistanceMatrix, Graph, Metric};
use curvekit::points::{distance_matrix_from_csv, PointCloud};

/// Schema tag stamped into every JSON document the tool emits.
const SCHEMA: u64 = 1;

#[derive(Parser)]
#[command(
    name = "curvekit",
    version,
    about = "Discrete curvature on graphs, complexes, and point clouds",
    after_help = "Set CURVEKIT_THREADS to cap the worker-thread count."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute edge and vertex curvature on a weighted graph
    Curvature(CurvatureArgs),
    /// Detect communities by deleting negative edges or running the flow
    Communities(CommunitiesArgs),
    /// Trace discrete Ricci flow on edge weights
    Flow(FlowArgs),
    /// Estimate scalar curvature over a point cloud
    ScalarCloud(ScalarCloudArgs),
    /// Compute Forman curvature on a clique or Vietoris-Rips complex
    Complex(ComplexArgs),
}

#[derive(Args)]
struct IoArgs {
    /// Input file, or - for standard input
    input: PathBuf,
    /// Output file (standard output when omitted)
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModelArg {
    /// Every model applicable to the input, as one wide table
    All,
    Forman,
    Ollivier,
    Resistance,
    Menger,
    Haantjes,
    Sectional,
    BakryEmery,
    ResistanceVertex,
    ScalarOrc,
    SectionalVertex,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DenominatorArg {
    /// Divide by the edge's effective resistance
    Resistance,
    /// Divide by the edge's weight
    Weight,
}

#[derive(Args)]
struct CurvatureArgs {
    /// Models to compute: a comma-separated list for a long table with
    /// one row per object per model, or "all" for one wide table
    #[arg(long, value_enum, value_delimiter = ',', default_value = "all")]
    model: Vec<ModelArg>,
    #[command(flatten)]
    io: IoArgs,
    /// Laziness of the transport walk measures
    #[arg(long, default_value_t = 0.5)]
    alpha: f64,
    /// Detour cap, in hops, for the path-based model
    #[arg(long, default_value_t = curv::DEFAULT_MAX_LEN)]
    max_len: usize,
    /// Denominator of the resistance edge curvature
    #[arg(long, value_enum, default_value_t = DenominatorArg::Resistance)]
    denominator: DenominatorArg,
    /// Measure transport distances in hops instead of weights
    #[arg(long)]
    hop_metric: bool,
    /// Seed for triple sampling in the sectional means
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    /// Delete the most negative edge until none remain
    DeleteNegative,
    /// Run the flow, then cut edges stretched past the threshold
    RicciFlow,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RecomputeArg {
    /// Refresh curvature near each deletion only
    Local,
    /// Refresh every surviving edge after each deletion
    Exact,
}

#[derive(Args)]
struct CommunitiesArgs {
    #[command(flatten)]
    io: IoArgs,
    #[arg(long, value_enum, default_value_t = MethodArg::DeleteNegative)]
    method: MethodArg,
    /// Laziness of the transport walk measures
    #[arg(long, default_value_t = 0.5)]
    alpha: f64,
    /// Flow iterations (flow method only)
    #[arg(long, default_value_t = 20)]
    iters: usize,
    /// Weight threshold for the flow cut: a number, "auto" for four
    /// times the median final weight, or "sweep" to tabulate counts at
    /// every distinct weight as well
    #[arg(long, default_value = "auto")]
    threshold: String,
    /// Which curvatures to refresh after each deletion
    #[arg(long, value_enum, default_value_t = RecomputeArg::Local)]
    recompute: RecomputeArg,
}

#[derive(Args)]
struct FlowArgs {
    #[command(flatten)]
    io: IoArgs,
    #[arg(long, default_value_t = 20)]
    iters: usize,
    /// Laziness of the transport walk measures
    #[arg(long, default_value_t = 0.5)]
    alpha: f64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CloudKind {
    /// Rows of point coordinates
    Points,
    /// A full square distance matrix
    Distances,
}

#[derive(Args)]
struct ScalarCloudArgs {
    #[command(flatten)]
    io: IoArgs,
    /// Intrinsic dimension assumed for ball volumes
    #[arg(long, visible_alias = "n")]
    dimension: usize,
    /// Probe radii: "auto" or a comma-separated increasing list
    #[arg(long, default_value = "auto")]
    radii: String,
    /// How to read the input file
    #[arg(long, value_enum, default_value_t = CloudKind::Points)]
    input_kind: CloudKind,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ComplexKind {
    /// An edge list; the complex is its clique complex
    Graph,
    /// Point coordinates; the complex is Vietoris-Rips at --eps
    Points,
    /// A distance matrix; the complex is Vietoris-Rips at --eps
    Distances,
}

#[derive(Args)]
struct ComplexArgs {
    #[command(flatten)]
    io: IoArgs,
    /// Largest simplex dimension to build
    #[arg(long, default_value_t = 2)]
    max_dim: usize,
    /// Use the weighted edge formula (restricts output to edges)
    #[arg(long)]
    weighted: bool,
    /// Simplex weight overrides: lines of "v1 ... vk w"
    #[arg(long)]
    weights_file: Option<PathBuf>,
    /// Scale for the Vietoris-Rips construction
    #[arg(long)]
    eps: Option<f64>,
    /// How to read the input file
    #[arg(long, value_enum, default_value_t = ComplexKind::Graph)]
    input_kind: ComplexKind,
}

pub fn run() -> ExitCode {
    configure_threads();
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Curvature(args) => run_curvature(args),
        Command::Communities(args) => run_communities(args),
        Command::Flow(args) => run_flow(args),
        Command::ScalarCloud(args) => run_scalar_cloud(args),
        Command::Complex(args) => run_complex(args),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let diagnostic = json!({ "error": e.to_string(), "code": e.exit_code() });
            eprintln!("{}", diagnostic);
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn configure_threads() {
    if let Ok(raw) = std::env::var("CURVEKIT_THREADS") {
        if let Ok(n) = raw.trim().parse::<usize>() {
            if n >= 1 {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
        }
    }
}

fn read_input(path: &Path) -> Result<String> {
    if path == Path::new("-") {
        let mut text = String::new();
        io::stdin().read_to_string(&mut text)?;
        Ok(text)
    } else {
        fs::read_to_string(path).map_err(|e| {
            Error::Io(io::Error::new(e.kind(), format!("{}: {}", path.display(), e)))
        })
    }
}

fn write_output(path: &Option<PathBuf>, bytes: &[u8]) -> Result<()> {
    match path {
        Some(p) => {
            fs::write(p, bytes)?;
            Ok(())
        }
        None => {
            io::stdout().write_all(bytes)?;
            Ok(())
        }
    }
}

/// Floats in CSV cells and JSON values: finite numbers stay numbers,
/// non-finite values become their display strings so JSON stays valid.
fn json_number(x: f64) -> Value {
    match serde_json::Number::from_f64(x) {
        Some(n) => Value::Number(n),
        None => Value::String(x.to_string()),
    }
}

fn format_float(x: f64) -> String {
    x.to_string()
}

fn json_document(command: &str, params: Value, rows: Vec<Value>) -> Value {
    json!({ "schema": SCHEMA, "command": command, "params": params, "rows": rows })
}

fn finish_json(mut doc: Value, extras: Vec<(&str, Value)>) -> Vec<u8> {
    if let Value::Object(map) = &mut doc {
        for (k, v) in extras {
            map.insert(k.to_string(), v);
        }
    }
    let mut bytes = doc.to_string().into_bytes();
    bytes.push(b'\n');
    bytes
}

fn load_graph(io: &IoArgs) -> Result<Graph> {
    Graph::from_edge_list(&read_input(&io.input)?)
}

// ---------------------------------------------------------------- curvature

struct EdgeColumn {
    name: &'static str,
    values: Vec<f64>,
    params: Value,
    /// Extra per-row parameter objects (sectional sampling detail).
    row_params: Option<Vec<Value>>,
}

struct VertexColumn {
    name: &'static str,
    values: Vec<f64>,
    params: Value,
    row_params: Option<Vec<Value>>,
}

fn run_curvature(args: CurvatureArgs) -> Result<()> {
    let g = load_graph(&args.io)?;
    if g.edge_count() == 0 {
        return Err(Error::Infeasible("the graph has no edges".into()));
    }
    let metric = if args.hop_metric { Metric::Hops } else { Metric::Weighted };
    let d = g.shortest_paths_by(metric)?;
    let metric_name = if args.hop_metric { "hops" } else { "weighted" };

    let wide = args.model.contains(&ModelArg::All);
    if wide && args.model.len() > 1 {
        return Err(Error::Parse("\"all\" cannot be combined with other models".into()));
    }
    let selected: Vec<ModelArg> = if wide {
        vec![
            ModelArg::Forman,
            ModelArg::Ollivier,
            ModelArg::Resistance,
            ModelArg::Menger,
            ModelArg::Haantjes,
            ModelArg::Sectional,
            ModelArg::BakryEmery,
            ModelArg::ResistanceVertex,
            ModelArg::ScalarOrc,
            ModelArg::SectionalVertex,
        ]
    } else {
        let mut seen = Vec::new();
        for &m in &args.model {
            if seen.contains(&m) {
                return Err(Error::Parse("duplicate model in --model list".into()));
            }
            seen.push(m);
        }
        seen
    };

    let sample_cfg = SampleConfig { seed: args.seed, ..SampleConfig::default() };
    let mut edge_columns = Vec::new();
    let mut vertex_columns = Vec::new();
    for m in selected {
        match edge_model_name(m) {
            Some(name) => {
                edge_columns.push(edge_column(&g, &d, name, &args, metric_name, sample_cfg)?)
            }
            None => {
                let name = vertex_model_name(m);
                vertex_columns.push(vertex_column(&g, &d, name, &args, metric_name, sample_cfg)?)
            }
        }
    }

    let bytes = match (wide, args.io.format) {
        (true, Format::Csv) => wide_csv(&g, &edge_columns, &vertex_columns)?,
        (true, Format::Json) => wide_json(&g, &edge_columns, &vertex_columns),
        (false, Format::Csv) => long_csv(&g, &edge_columns, &vertex_columns)?,
        (false, Format::Json) => long_json(&g, &edge_columns, &vertex_columns),
    };
    write_output(&args.io.output, &bytes)
}

fn edge_model_name(m: ModelArg) -> Option<&'static str> {
    match m {
        ModelArg::Forman => Some("forman"),
        ModelArg::Ollivier => Some("ollivier"),
        ModelArg::Resistance => Some("resistance"),
        ModelArg::Menger => Some("menger"),
        ModelArg::Haantjes => Some("haantjes"),
        ModelArg::Sectional => Some("sectional"),
        _ => None,
    }
}

fn vertex_model_name(m: ModelArg) -> &'static str {
    match m {
        ModelArg::BakryEmery => "bakry_emery",
        ModelArg::ResistanceVertex => "resistance_vertex",
        ModelArg::ScalarOrc => "scalar_orc",
        ModelArg::SectionalVertex => "sectional_vertex",
        _ => unreachable!("edge models are filtered out first"),
    }
}

fn edge_column(
    g: &Graph,
    d: &DistanceMatrix,
    name: &'static str,
    args: &CurvatureArgs,
    metric_name: &str,
    sample_cfg: SampleConfig,
) -> Result<EdgeColumn> {
    let (values, params, row_params) = match name {
        "forman" => (curv::forman_graph(g), json!({}), None),
        "ollivier" => (
            curv::ollivier_graph(g, d, args.alpha)?,
            json!({ "alpha": args.alpha, "metric": metric_name }),
            None,
        ),
        "resistance" => {
            let denom = match args.denominator {
                DenominatorArg::Resistance => Denominator::EffectiveResistance,
                DenominatorArg::Weight => Denominator::Weight,
            };
            let label = match args.denominator {
                DenominatorArg::Resistance => "resistance",
                DenominatorArg::Weight => "weight",
            };
            (
                curv::resistance_edge_curvatures(g, denom)?,
                json!({ "denominator": label }),
                None,
            )
        }
        "menger" => (curv::menger_graph(g), json!({}), None),
        "haantjes" => (
            curv::haantjes_graph(g, d, args.max_len)?,
            json!({ "max_len": args.max_len }),
            None,
        ),
        "sectional" => {
            let mut values = Vec::with_capacity(g.edge_count());
            let mut rows = Vec::with_capacity(g.edge_count());
            for e in 0..g.edge_count() as u32 {
                let m = curv::sectional_edge(g, d, e, sample_cfg)?;
                values.push(m.mean);
                rows.push(json!({
                    "seed": sample_cfg.seed,
                    "samples": m.samples,
                    "exhaustive": m.exhaustive,
                }));
            }
            (values, json!({ "seed": sample_cfg.seed }), Some(rows))
        }
        _ => unreachable!("unknown edge model {}", name),
    };
    Ok(EdgeColumn { name, values, params, row_params })
}

fn vertex_column(
    g: &Graph,
    d: &DistanceMatrix,
    name: &'static str,
    args: &CurvatureArgs,
    metric_name: &str,
    sample_cfg: SampleConfig,
) -> Result<VertexColumn> {
    let (values, params, row_params) = match name {
        "bakry_emery" => (curv::bakry_emery_all(g)?, json!({}), None),
        "resistance_vertex" => (curv::resistance_vertex_curvatures(g)?, json!({}), None),
        "scalar_orc" => (
            curv::scalar_orc_all(g, d, args.alpha)?,
            json!({ "alpha": args.alpha, "metric": metric_name }),
            None,
        ),
        "sectional_vertex" => {
            let mut values = Vec::with_capacity(g.vertex_count());
            let mut rows = Vec::with_capacity(g.vertex_count());
            for v in 0..g.vertex_count() as u32 {
                let m = curv::sectional_vertex(g, d, v, sample_cfg)?;
                values.push(m.mean);
                rows.push(json!({
                    "seed": sample_cfg.seed,
                    "samples": m.samples,
                    "exhaustive": m.exhaustive,
                }));
            }
            (values, json!({ "seed": sample_cfg.seed }), Some(rows))
        }
        _ => unreachable!("unknown vertex model {}", name),
    };
    Ok(VertexColumn { name, values, params, row_params })
}

fn long_csv(
    g: &Graph,
    edge_columns: &[EdgeColumn],
    vertex_columns: &[VertexColumn],
) -> Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["kind", "u", "v", "model", "value", "params"])
        .map_err(csv_error)?;
    for col in edge_columns {
        for (e, edge) in g.edges().iter().enumerate() {
            let params = match &col.row_params {
                Some(rows) => merge_params(&col.params, &rows[e]),
                None => col.params.clone(),
            };
            w.write_record([
                "edge",
                g.id(edge.u),
                g.id(edge.v),
                col.name,
                &format_float(col.values[e]),
                &params.to_string(),
            ])
            .map_err(csv_error)?;
        }
    }
    for col in vertex_columns {
        for v in 0..g.vertex_count() {
            let params = match &col.row_params {
                Some(rows) => merge_params(&col.params, &rows[v]),
                None => col.params.clone(),
            };
            w.write_record([
                "vertex",
                g.id(v as u32),
                "",
                col.name,
                &format_float(col.values[v]),
                &params.to_string(),
            ])
            .map_err(csv_error)?;
        }
    }
    w.into_inner().map_err(|e| Error::Io(io::Error::other(e)))
}

fn long_json(g: &Graph, edge_columns: &[EdgeColumn], vertex_columns: &[VertexColumn]) -> Vec<u8> {
    let mut rows = Vec::new();
    let mut params = json!({});
    for col in edge_columns {
        params = col.params.clone();
        for (e, edge) in g.edges().iter().enumerate() {
            let mut row = Map::new();
            row.insert("kind".into(), "edge".into());
            row.insert("u".into(), g.id(edge.u).into());
            row.insert("v".into(), g.id(edge.v).into());
            row.insert("model".into(), col.name.into());
            row.insert("value".into(), json_number(col.values[e]));
            if let Some(extra) = &col.row_params {
                row.insert("sampling".into(), extra[e].clone());
            }
            rows.push(Value::Object(row));
        }
    }
    for col in vertex_columns {
        params = col.params.clone();
        for v in 0..g.vertex_count() {
            let mut row = Map::new();
            row.insert("kind".into(), "vertex".into());
            row.insert("u".into(), g.id(v as u32).into());
            row.insert("model".into(), col.name.into());
            row.insert("value".into(), json_number(col.values[v]));
            if let Some(extra) = &col.row_params {
                row.insert("sampling".into(), extra[v].clone());
            }
            rows.push(Value::Object(row));
        }
    }
    finish_json(json_document("curvature", params, rows), vec![])
}

/// Per-model parameter objects merged into one record, keyed by model,
/// parameterless models omitted.
fn combined_params(edge_columns: &[EdgeColumn], vertex_columns: &[VertexColumn]) -> Map<String, Value> {
    let mut params = Map::new();
    for col in edge_columns.iter().map(|c| (c.name, &c.params)) {
        if col.1 != &json!({}) {
            params.insert(col.0.to_string(), col.1.clone());
        }
    }
    for col in vertex_columns.iter().map(|c| (c.name, &c.params)) {
        if col.1 != &json!({}) {
            params.insert(col.0.to_string(), col.1.clone());
        }
    }
    params
}

fn wide_csv(
    g: &Graph,
    edge_columns: &[EdgeColumn],
    vertex_columns: &[VertexColumn],
) -> Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["kind".to_string(), "u".into(), "v".into(), "weight".into()];
    header.extend(edge_columns.iter().map(|c| c.name.to_string()));
    header.extend(vertex_columns.iter().map(|c| c.name.to_string()));
    header.push("params".into());
    w.write_record(&header).map_err(csv_error)?;
    let params = Value::Object(combined_params(edge_columns, vertex_columns)).to_string();
    for (e, edge) in g.edges().iter().enumerate() {
        let mut record = vec![
            "edge".to_string(),
            g.id(edge.u).to_string(),
            g.id(edge.v).to_string(),
            format_float(edge.weight),
        ];
        record.extend(edge_columns.iter().map(|c| format_float(c.values[e])));
        record.extend(vertex_columns.iter().map(|_| String::new()));
        record.push(params.clone());
        w.write_record(&record).map_err(csv_error)?;
    }
    for v in 0..g.vertex_count() {
        let mut record =
            vec!["vertex".to_string(), g.id(v as u32).to_string(), String::new(), String::new()];
        record.extend(edge_columns.iter().map(|_| String::new()));
        record.extend(vertex_columns.iter().map(|c| format_float(c.values[v])));
        record.push(params.clone());
        w.write_record(&record).map_err(csv_error)?;
    }
    w.into_inner().map_err(|e| Error::Io(io::Error::other(e)))
}

fn wide_json(g: &Graph, edge_columns: &[EdgeColumn], vertex_columns: &[VertexColumn]) -> Vec<u8> {
    let params = combined_params(edge_columns, vertex_columns);
    let mut rows = Vec::new();
    for (e, edge) in g.edges().iter().enumerate() {
        let mut row = Map::new();
        row.insert("kind".into(), "edge".into());
        row.insert("u".into(), g.id(edge.u).into());
        row.insert("v".into(), g.id(edge.v).into());
        row.insert("weight".into(), json_number(edge.weight));
        for col in edge_columns {
            row.insert(col.name.into(), json_number(col.values[e]));
        }
        rows.push(Value::Object(row));
    }
    for v in 0..g.vertex_count() {
        let mut row = Map::new();
        row.insert("kind".into(), "vertex".into());
        row.insert("u".into(), g.id(v as u32).into());
        for col in vertex_columns {
            row.insert(col.name.into(), json_number(col.values[v]));
        }
        rows.push(Value::Object(row));
    }
    finish_json(json_document("curvature", Value::Object(params), rows), vec![])
}

fn merge_params(base: &Value, extra: &Value) -> Value {
    let mut merged = match base {
        Value::Object(m) => m.clone(),
        _ => Map::new(),
    };
    if let Value::Object(m) = extra {
        for (k, v) in m {
            merged.insert(k.clone(), v.clone());
        }
    }
    Value::Object(merged)
}

fn csv_error(e: csv::Error) -> Error {
    Error::Io(io::Error::other(e))
}

// -------------------------------------------------------------- communities

fn run_communities(args: CommunitiesArgs) -> Result<()> {
    let g = load_graph(&args.io)?;
    match args.method {
        MethodArg::DeleteNegative => {
            let mode = match args.recompute {
                RecomputeArg::Local => Recompute::TwoHop,
                RecomputeArg::Exact => Recompute::Exact,
            };
            let out = community::delete_negative_communities(&g, args.alpha, mode)?;
            let params = json!({
                "method": "delete-negative",
                "alpha": args.alpha,
                "recompute": match args.recompute {
                    RecomputeArg::Local => "local",
                    RecomputeArg::Exact => "exact",
                },
                "removed": out
                    .removed
                    .iter()
                    .map(|&(u, v)| json!([g.id(u), g.id(v)]))
                    .collect::<Vec<_>>(),
            });
            emit_labels(&args.io, &g, &out.labels, params, None)
        }
        MethodArg::RicciFlow => {
            if args.iters == 0 {
                return Err(Error::Infeasible("flow needs at least one iteration".into()));
            }
            let state = flow::ricci_flow(&g, args.iters, args.alpha)?;
            let auto_threshold = community::flow_threshold(&state.weights)?;
            let (threshold, sweep) = match args.threshold.as_str() {
                "auto" => (auto_threshold, None),
                "sweep" => {
                    let sweep = community::threshold_sweep(&g, &state.weights)?;
                    (auto_threshold, Some(sweep))
                }
                raw => {
                    let t: f64 = raw.parse().map_err(|_| {
                        Error::Parse(format!("threshold must be a number, \"auto\", or \"sweep\", got {:?}", raw))
                    })?;
                    (t, None)
                }
            };
            let labels = community::surgery(&g, &state.weights, threshold)?;
            let params = json!({
                "method": "ricci-flow",
                "alpha": args.alpha,
                "iters": args.iters,
                "threshold": threshold,
            });
            let sweep_value = sweep.map(|s| {
                Value::Array(
                    s.iter()
                        .map(|&(t, c)| json!({ "threshold": t, "communities": c }))
                        .collect(),
                )
            });
            emit_labels(&args.io, &g, &labels, params, sweep_value)
        }
    }
}

fn emit_labels(
    io_args: &IoArgs,
    g: &Graph,
    labels: &[u32],
    params: Value,
    sweep: Option<Value>,
) -> Result<()> {
    let bytes = match io_args.format {
        Format::Csv => {
            // The partition stays CSV; a requested sweep rides the
            // diagnostic stream as JSON so the table stays parseable.
            if let Some(s) = &sweep {
                eprintln!("{}", json!({ "sweep": s }));
            }
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["vertex", "label", "params"]).map_err(csv_error)?;
            let params_str = params.to_string();
            for v in 0..g.vertex_count() {
                w.write_record([g.id(v as u32), &labels[v].to_string(), &params_str])
                    .map_err(csv_error)?;
            }
            w.into_inner().map_err(|e| Error::Io(io::Error::other(e)))?
        }
        Format::Json => {
            let rows = (0..g.vertex_count())
                .map(|v| json!({ "vertex": g.id(v as u32), "label": labels[v] }))
                .collect();
            let doc = json_document("communities", params, rows);
            let extras = match sweep {
                Some(s) => vec![("sweep", s)],
                None => vec![],
            };
            finish_json(doc, extras)
        }
    };
    write_output(&io_args.output, &bytes)
}

// --------------------------------------------------------------------- flow

fn run_flow(args: FlowArgs) -> Result<()> {
    let g = load_graph(&args.io)?;
    let state = flow::ricci_flow(&g, args.iters, args.alpha)?;
    let mut bytes = Vec::new();
    for iter in 0..state.iterations {
        for (e, edge) in g.edges().iter().enumerate() {
            let row = json!({
                "iter": iter,
                "edge": [g.id(edge.u), g.id(edge.v)],
                "weight": json_number(state.weight_history[iter][e]),
                "curvature": json_number(state.curvature_history[iter][e]),
            });
            bytes.extend_from_slice(row.to_string().as_bytes());
            bytes.push(b'\n');
        }
    }
    write_output(&args.io.output, &bytes)
}

// ------------------------------------------------------------- scalar-cloud

fn run_scalar_cloud(args: ScalarCloudArgs) -> Result<()> {
    let text = read_input(&args.io.input)?;
    let d = match args.input_kind {
        CloudKind::Points => PointCloud::from_csv(&text)?.distance_matrix(),
        CloudKind::Distances => distance_matrix_from_csv(&text)?,
    };
    let spec = parse_radii(&args.radii)?;
    let estimates = cloud::scalar_field(&d, args.dimension, &spec)?;
    let radii_label = match &spec {
        RadiiSpec::Auto => "auto".to_string(),
        RadiiSpec::Fixed(rs) => {
            rs.iter().map(|&r| format_float(r)).collect::<Vec<_>>().join(" ")
        }
    };
    let bytes = match args.io.format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["index", "scalar_estimate", "model", "dimension", "radii"])
                .map_err(csv_error)?;
            for (i, &s) in estimates.iter().enumerate() {
                w.write_record([
                    &i.to_string(),
                    &format_float(s),
                    "ball_volume",
                    &args.dimension.to_string(),
                    &radii_label,
                ])
                .map_err(csv_error)?;
            }
            w.into_inner().map_err(|e| Error::Io(io::Error::other(e)))?
        }
        Format::Json => {
            let rows = estimates
                .iter()
                .enumerate()
                .map(|(i, &s)| json!({ "index": i, "scalar_estimate": json_number(s) }))
                .collect();
            let params = json!({
                "model": "ball_volume",
                "dimension": args.dimension,
                "radii": radii_label,
            });
            finish_json(json_document("scalar-cloud", params, rows), vec![])
        }
    };
    write_output(&args.io.output, &bytes)
}

fn parse_radii(raw: &str) -> Result<RadiiSpec> {
    if raw == "auto" {
        return Ok(RadiiSpec::Auto);
    }
    let radii: Vec<f64> = raw
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| Error::Parse(format!("bad radius {:?}", s.trim())))
        })
        .collect::<Result<_>>()?;
    Ok(RadiiSpec::Fixed(radii))
}

// ------------------------------------------------------------------ complex

fn run_complex(args: ComplexArgs) -> Result<()> {
    let text = read_input(&args.io.input)?;
    let mut k = match args.input_kind {
        ComplexKind::Graph => {
            let g = Graph::from_edge_list(&text)?;
            SimplicialComplex::clique_complex(&g, args.max_dim)?
        }
        ComplexKind::Points => {
            let eps = args.eps.ok_or_else(|| {
                Error::Parse("--eps is required for point input".into())
            })?;
            let d = PointCloud::from_csv(&text)?.distance_matrix();
            SimplicialComplex::vietoris_rips(&d, eps, args.max_dim)?
        }
        ComplexKind::Distances => {
            let eps = args.eps.ok_or_else(|| {
                Error::Parse("--eps is required for distance input".into())
            })?;
            let d = distance_matrix_from_csv(&text)?;
            SimplicialComplex::vietoris_rips(&d, eps, args.max_dim)?
        }
    };
    if let Some(path) = &args.weights_file {
        k.apply_weight_file(&read_input(path)?)?;
    }

    let params = json!({ "max_dim": args.max_dim, "weighted": args.weighted });
    let model = if args.weighted { "forman_weighted" } else { "forman" };
    let mut entries: Vec<(usize, &Vec<u32>, f64)> = Vec::new();
    let values_by_dim: Vec<Vec<f64>>;
    if args.weighted {
        values_by_dim = vec![Vec::new(), curv::forman_complex_weighted(&k)?];
        for (i, s) in k.simplices(1).iter().enumerate() {
            entries.push((1, s, values_by_dim[1][i]));
        }
    } else {
        values_by_dim = curv::forman_complex_unweighted(&k)?;
        for (dim, values) in values_by_dim.iter().enumerate() {
            for (i, s) in k.simplices(dim).iter().enumerate() {
                entries.push((dim, s, values[i]));
            }
        }
    }

    let vertex_names = |s: &[u32]| {
        s.iter().map(|&v| k.id(v).to_string()).collect::<Vec<_>>().join(" ")
    };
    let bytes = match args.io.format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["dim", "vertices", "curvature", "model", "params"])
                .map_err(csv_error)?;
            let params_str = params.to_string();
            for (dim, s, value) in &entries {
                w.write_record([
                    &dim.to_string(),
                    &vertex_names(s),
                    &format_float(*value),
                    model,
                    &params_str,
                ])
                .map_err(csv_error)?;
            }
            w.into_inner().map_err(|e| Error::Io(io::Error::other(e)))?
        }
        Format::Json => {
            let rows = entries
                .iter()
                .map(|(dim, s, value)| {
                    json!({
                        "dim": dim,
                        "vertices": s.iter().map(|&v| k.id(v)).collect::<Vec<_>>(),
                        "curvature": json_number(*value),
                        "model": model,
                    })
                })
                .collect();
            finish_json(json_document("complex", params, rows), vec![])
        }
    };
    write_output(&args.io.output, &bytes)
}
