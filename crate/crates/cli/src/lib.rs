//! The `caterpack` command line.
//!
//! Exit codes: 0 ok, 2 usage or parse error, 3 infeasible by the placement
//! conditions, 4 verification failure, 5 search budget exhausted.

use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::time::Duration;

use caterpack::caterpillar::{center_degree, make_center_caterpillar, make_regular_caterpillar};
use caterpack::oracle::{
    brute_force_placement_exists, geometric_crossing_oracle, min_k_over_offsets, SearchInstance, SearchMode,
    Verdict,
};
use caterpack::packing::{
    halve_by_sides, pack_divisible, pack_mixed, place_copies, place_three_2planar, Checks, PackingLayout,
};
use caterpack::render::render_svg;
use caterpack::verify::{
    bound_mixed_crossings, bound_pair_crossings, bound_placement_crossings, crossing_counts_with,
    has_multi_edges, host_graph, max_pair_crossings, three_placement_range, BoundSheet, CountMode,
    CrossingReport, PRINTED_THREE_PLACEMENT_RANGE,
};
use caterpack::{Caterpillar, Error};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

pub mod table;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INFEASIBLE: i32 = 3;
pub const EXIT_VERIFY: i32 = 4;
pub const EXIT_BUDGET: i32 = 5;

#[derive(Debug, Parser)]
#[command(name = "caterpack", version, about = "k-planar packings of regular caterpillars")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    pub format: Format,
    /// Recorded in every output.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print a caterpillar as JSON.
    Gen(GenArgs),
    /// Build a packing layout and verify it.
    Pack(PackArgs),
    /// Check a layout file: simplicity, spanning drawings, crossing counts.
    Verify(VerifyArgs),
    /// Draw a layout file as SVG.
    Render(RenderArgs),
    /// Evaluate the closed-form crossing bounds.
    Bounds(BoundsArgs),
    /// Brute-force existence search and the coordinate crossing counter.
    Oracle(OracleArgs),
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long)]
    pub delta: Option<usize>,
    #[arg(long)]
    pub sigma: Option<usize>,
    /// Caterpillar whose center has degree n - h.
    #[arg(long)]
    pub center: bool,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub h: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Scheme {
    Place,
    Mixed,
    Divisible,
    #[value(name = "three2planar")]
    Three2planar,
}

#[derive(Debug, Args)]
pub struct PackArgs {
    #[arg(long, value_enum)]
    pub scheme: Scheme,
    #[arg(long)]
    pub delta: Option<usize>,
    #[arg(long)]
    pub sigma: Option<usize>,
    #[arg(long)]
    pub h: Option<usize>,
    /// Comma-separated spine degrees, largest first.
    #[arg(long, value_delimiter = ',')]
    pub deltas: Vec<usize>,
    #[arg(long)]
    pub n: Option<usize>,
    /// Draw the first half of the copies inside the circle, the rest outside.
    #[arg(long)]
    pub halve: bool,
    /// Skip the constructor's self-certification (the report is still checked).
    #[arg(long)]
    pub unchecked: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Counter {
    Pairwise,
    Sweep,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Layout JSON, `-` for standard input.
    pub layout: PathBuf,
    /// Compare measured crossings with the closed-form bounds.
    #[arg(long)]
    pub against_bounds: bool,
    #[arg(long, value_enum, default_value_t = Counter::Pairwise)]
    pub counter: Counter,
}

#[derive(Debug, Args)]
pub struct RenderArgs {
    pub layout: PathBuf,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_delimiter = ',', required = true)]
    pub deltas: Vec<usize>,
    /// Repeat a single degree this many times.
    #[arg(long)]
    pub h: Option<usize>,
    /// Offset gap used for the pairwise bound.
    #[arg(long, default_value_t = 1)]
    pub gap: usize,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[arg(long)]
    pub copies: Option<usize>,
    #[arg(long)]
    pub delta: Option<usize>,
    #[arg(long)]
    pub sigma: Option<usize>,
    /// JSON array of caterpillars to pack instead of copies.
    #[arg(long, conflicts_with = "copies")]
    pub caterpillars: Option<PathBuf>,
    /// Node budget.
    #[arg(long)]
    pub budget: Option<u64>,
    /// Wall-clock budget in seconds.
    #[arg(long)]
    pub time_limit: Option<f64>,
    /// Count canonical packings instead of stopping at the first.
    #[arg(long)]
    pub count: bool,
    /// Compare the coordinate crossing counter with the combinatorial one on a layout.
    #[arg(long, conflicts_with_all = ["copies", "caterpillars"])]
    pub geometric: Option<PathBuf>,
    /// Minimize k over admissible offset tuples of `--copies` drawings.
    #[arg(long)]
    pub min_k: bool,
}

/// A failure reported on standard error.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        CliError { code: EXIT_USAGE, message: message.into() }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parameter(_) | Error::Json(_) => EXIT_USAGE,
            Error::Infeasible(_) => EXIT_INFEASIBLE,
            _ => EXIT_VERIFY,
        };
        CliError { code, message: e.to_string() }
    }
}

/// What a successful run prints, and the exit code to leave with.
#[derive(Debug)]
pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

type Run = Result<Outcome, CliError>;

/// Parses `args` (program name first) and runs the command. Usage errors
/// become exit code 2.
pub fn run_args<I, T>(args: I) -> Run
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) if !e.use_stderr() => Ok(Outcome { stdout: e.to_string(), code: EXIT_OK }),
        Err(e) => Err(CliError::usage(e.to_string())),
    }
}

pub fn run(cli: &Cli) -> Run {
    match &cli.command {
        Command::Gen(a) => gen(cli, a),
        Command::Pack(a) => pack(cli, a),
        Command::Verify(a) => verify(cli, a),
        Command::Render(a) => render(a),
        Command::Bounds(a) => bounds(cli, a),
        Command::Oracle(a) => oracle(cli, a),
    }
}

/// Sizes the rayon pool from `CATERPACK_THREADS`, if set.
pub fn init_threads() -> Result<(), CliError> {
    let Ok(v) = std::env::var("CATERPACK_THREADS") else { return Ok(()) };
    let threads: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| CliError::usage(format!("CATERPACK_THREADS must be a positive integer, got {v:?}")))?;
    // a second initialization in the same process keeps the first pool
    let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    Ok(())
}

fn need<T: Copy>(v: Option<T>, flag: &str) -> Result<T, CliError> {
    v.ok_or_else(|| CliError::usage(format!("missing --{flag}")))
}

fn read_input(path: &Path) -> Result<String, CliError> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::usage(format!("reading standard input: {e}")))?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))
}

pub fn read_layout(path: &Path) -> Result<PackingLayout, CliError> {
    let text = read_input(path)?;
    serde_json::from_str(&text).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))
}

fn emit(text: String, out: Option<&PathBuf>, code: i32) -> Run {
    match out {
        Some(p) => {
            fs::write(p, &text).map_err(|e| CliError {
                code: EXIT_USAGE,
                message: format!("{}: {e}", p.display()),
            })?;
            Ok(Outcome { stdout: String::new(), code })
        }
        None => Ok(Outcome { stdout: text, code }),
    }
}

fn to_json(v: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("output is serializable");
    s.push('\n');
    s
}

fn gen(cli: &Cli, a: &GenArgs) -> Run {
    let c = if a.center {
        make_center_caterpillar(need(a.n, "n")?, need(a.h, "h")?)?
    } else {
        make_regular_caterpillar(need(a.delta, "delta")?, need(a.sigma, "sigma")?)?
    };
    let text = match cli.format {
        Format::Json => {
            let mut v = serde_json::to_value(&c).map_err(Error::from)?;
            v["seed"] = json!(cli.seed);
            if a.center {
                v["center_degree"] = json!(center_degree(&c));
            }
            to_json(&v)
        }
        Format::Table => {
            let mut rows = vec![
                ("seed".to_string(), cli.seed.to_string()),
                ("n".to_string(), c.n().to_string()),
                ("sigma".to_string(), c.sigma().to_string()),
                ("max degree".to_string(), c.max_degree().to_string()),
            ];
            for (i, s) in c.spine().iter().enumerate() {
                rows.push((format!("spine {s}"), format!("leaves {:?}", c.leaves()[i])));
            }
            table::key_values(&rows)
        }
    };
    emit(text, a.out.as_ref(), EXIT_OK)
}

#[derive(Debug, Serialize)]
struct BoundRow {
    name: String,
    bound: u64,
    measured: u64,
    holds: bool,
}

fn build(a: &PackArgs) -> Result<(PackingLayout, u64, String), CliError> {
    let checks = if a.unchecked { Checks::Unchecked } else { Checks::Verified };
    Ok(match a.scheme {
        Scheme::Place => {
            let (d, s, h) = (need(a.delta, "delta")?, need(a.sigma, "sigma")?, need(a.h, "h")?);
            (place_copies(d, s, h, checks)?, bound_placement_crossings(d, h), "placement".into())
        }
        Scheme::Mixed => {
            let n = need(a.n, "n")?;
            let l = pack_mixed(&a.deltas, n, checks)?;
            (l, bound_mixed_crossings(a.deltas[0], a.deltas.len()), "mixed".into())
        }
        Scheme::Divisible => {
            let n = need(a.n, "n")?;
            let l = pack_divisible(&a.deltas, n, checks)?;
            (l, bound_placement_crossings(a.deltas[0], a.deltas.len()), "placement".into())
        }
        Scheme::Three2planar => {
            let (d, s) = (need(a.delta, "delta")?, need(a.sigma, "sigma")?);
            (place_three_2planar(d, s, checks)?, 2, "two-planar".into())
        }
    })
}

fn pack(cli: &Cli, a: &PackArgs) -> Run {
    if matches!(a.scheme, Scheme::Mixed | Scheme::Divisible) && a.deltas.is_empty() {
        return Err(CliError::usage("missing --deltas"));
    }
    let (mut layout, bound, bound_name) = build(a)?;
    if a.halve {
        layout = halve_by_sides(&layout);
    }
    let multi = has_multi_edges(&layout);
    let spanning: Vec<bool> = layout.drawings.iter().map(|d| d.is_spanning_tree()).collect();
    let report = if multi.is_empty() {
        Some(crossing_counts_with(&layout, CountMode::Pairwise)?)
    } else {
        None
    };
    let measured = report.as_ref().map_or(0, |r| r.k as u64);
    let row = BoundRow { name: bound_name, bound, measured, holds: measured <= bound };
    let ok = multi.is_empty() && spanning.iter().all(|&s| s) && row.holds;
    let code = if ok { EXIT_OK } else { EXIT_VERIFY };

    let text = match cli.format {
        Format::Json => {
            let mut v = serde_json::to_value(&layout).map_err(Error::from)?;
            v["seed"] = json!(cli.seed);
            v["scheme"] = json!(a.scheme);
            v["halved"] = json!(a.halve);
            v["offsets"] = json!(layout.offsets());
            v["multi_edges"] = json!(multi);
            v["spanning"] = json!(spanning);
            v["report"] = json!(report);
            v["bound"] = json!(row);
            to_json(&v)
        }
        Format::Table => {
            let rows = vec![
                ("seed".to_string(), cli.seed.to_string()),
                ("scheme".to_string(), format!("{:?}", a.scheme).to_lowercase()),
                ("n".to_string(), layout.n.to_string()),
                ("h".to_string(), layout.h().to_string()),
                ("offsets".to_string(), format!("{:?}", layout.offsets())),
                ("multi-edges".to_string(), format!("{multi:?}")),
                ("spanning".to_string(), spanning.iter().all(|&s| s).to_string()),
                ("k".to_string(), measured.to_string()),
                (format!("{} bound", row.name), row.bound.to_string()),
                ("within bound".to_string(), row.holds.to_string()),
            ];
            table::key_values(&rows)
        }
    };
    if !ok && a.out.is_some() {
        // keep the diagnostic visible even when the layout goes to a file
        emit(text.clone(), a.out.as_ref(), code)?;
        return Ok(Outcome { stdout: text, code });
    }
    emit(text, a.out.as_ref(), code)
}

#[derive(Debug, Serialize)]
pub struct VerifyOutput {
    pub seed: u64,
    pub n: usize,
    pub h: usize,
    pub offsets: Vec<usize>,
    pub simple: bool,
    pub multi_edges: Vec<(usize, usize)>,
    pub spanning: Vec<bool>,
    pub report: Option<CrossingReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bounds: Option<Vec<BoundComparison>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundComparison {
    pub name: String,
    pub bound: u64,
    pub measured: u64,
    /// For upper bounds: measured ≤ bound. For the lower bound: measured ≥ bound.
    pub holds: bool,
}

fn compare_bounds(layout: &PackingLayout, report: &CrossingReport) -> Result<Vec<BoundComparison>, CliError> {
    let n = layout.n;
    let params: Vec<(usize, usize)> =
        layout.drawings.iter().map(|d| d.params()).collect::<Result<_, _>>()?;
    let mut deltas: Vec<usize> = params.iter().map(|p| p.0).collect();
    deltas.sort_unstable_by(|a, b| b.cmp(a));
    let h = layout.h();
    let k = report.k as u64;
    let mut out = Vec::new();
    for (i, d1) in layout.drawings.iter().enumerate() {
        for (j, d2) in layout.drawings.iter().enumerate().skip(i + 1) {
            let gap = (d2.start + n - d1.start) % n;
            let bound = bound_pair_crossings(params[i].0, params[j].0, gap);
            let measured = max_pair_crossings(d1, d2) as u64;
            out.push(BoundComparison {
                name: format!("pair {i}-{j} (gap {gap})"),
                bound,
                measured,
                holds: measured <= bound,
            });
        }
    }
    let sheet = BoundSheet::evaluate(n, &deltas, 1)?;
    if deltas.iter().all(|&d| d == deltas[0]) {
        out.push(BoundComparison {
            name: "placement".into(),
            bound: sheet.placement_bound,
            measured: k,
            holds: k <= sheet.placement_bound,
        });
    }
    out.push(BoundComparison {
        name: "mixed".into(),
        bound: sheet.mixed_bound,
        measured: k,
        holds: k <= sheet.mixed_bound,
    });
    out.push(BoundComparison {
        name: "lower bound".into(),
        bound: sheet.lower_bound_min_k,
        measured: k,
        holds: h < 2 || k >= sheet.lower_bound_min_k,
    });
    Ok(out)
}

fn verify(cli: &Cli, a: &VerifyArgs) -> Run {
    let layout = read_layout(&a.layout)?;
    let multi = has_multi_edges(&layout);
    let spanning: Vec<bool> = layout.drawings.iter().map(|d| d.is_spanning_tree()).collect();
    let mode = match a.counter {
        Counter::Pairwise => CountMode::Pairwise,
        Counter::Sweep => CountMode::Sweep,
    };
    let report = if multi.is_empty() { Some(crossing_counts_with(&layout, mode)?) } else { None };
    let bounds = match (&report, a.against_bounds) {
        (Some(r), true) => Some(compare_bounds(&layout, r)?),
        _ => None,
    };
    let ok = multi.is_empty() && spanning.iter().all(|&s| s);
    let out = VerifyOutput {
        seed: cli.seed,
        n: layout.n,
        h: layout.h(),
        offsets: layout.offsets(),
        simple: host_graph(&layout).simple,
        multi_edges: multi,
        spanning,
        report,
        bounds,
    };
    let text = match cli.format {
        Format::Json => to_json(&out),
        Format::Table => verify_table(&out),
    };
    Ok(Outcome { stdout: text, code: if ok { EXIT_OK } else { EXIT_VERIFY } })
}

fn verify_table(v: &VerifyOutput) -> String {
    let mut s = table::key_values(&[
        ("seed".to_string(), v.seed.to_string()),
        ("n".to_string(), v.n.to_string()),
        ("h".to_string(), v.h.to_string()),
        ("offsets".to_string(), format!("{:?}", v.offsets)),
        ("simple".to_string(), v.simple.to_string()),
        ("duplicated edges".to_string(), format!("{:?}", v.multi_edges)),
        ("spanning".to_string(), format!("{:?}", v.spanning)),
        ("k".to_string(), v.report.as_ref().map_or("-".into(), |r| r.k.to_string())),
        (
            "total crossings".to_string(),
            v.report.as_ref().map_or("-".into(), |r| r.total_crossings().to_string()),
        ),
    ]);
    if let Some(b) = &v.bounds {
        s.push('\n');
        let rows: Vec<Vec<String>> = b
            .iter()
            .map(|c| vec![c.name.clone(), c.bound.to_string(), c.measured.to_string(), c.holds.to_string()])
            .collect();
        s.push_str(&table::grid(&["bound", "value", "measured", "holds"], &rows));
    }
    s
}

fn render(a: &RenderArgs) -> Run {
    let layout = read_layout(&a.layout)?;
    emit(render_svg(&layout), a.out.as_ref(), EXIT_OK)
}

fn ratio(r: (i128, i128)) -> String {
    format!("{}/{}", r.0, r.1)
}

fn bounds(cli: &Cli, a: &BoundsArgs) -> Run {
    let deltas = match (a.h, a.deltas.as_slice()) {
        (Some(h), [d]) => vec![*d; h],
        (Some(_), _) => return Err(CliError::usage("--h repeats a single --deltas value")),
        (None, ds) => ds.to_vec(),
    };
    if deltas.windows(2).any(|w| w[0] < w[1]) {
        return Err(CliError::usage("--deltas must be non-increasing"));
    }
    let sheet = BoundSheet::evaluate(a.n, &deltas, a.gap)?;
    let substituted = three_placement_range();
    let printed = PRINTED_THREE_PLACEMENT_RANGE;
    let mixed = (bound_mixed_crossings(4, 3), bound_mixed_crossings(7, 3));
    let text = match cli.format {
        Format::Json => {
            let mut v = serde_json::to_value(&sheet).map_err(Error::from)?;
            v["seed"] = json!(cli.seed);
            v["three_copy_range"] = json!({
                "degrees": [4, 7],
                "h": 3,
                "substituted": [substituted.0, substituted.1],
                "printed": [printed.0, printed.1],
                "mismatch": substituted != printed,
                "mixed_bound_range": [mixed.0, mixed.1],
            });
            to_json(&v)
        }
        Format::Table => {
            let opt = |o: Option<u64>| o.map_or("-".to_string(), |x| x.to_string());
            let mut s = table::key_values(&[
                ("seed".to_string(), cli.seed.to_string()),
                ("n".to_string(), sheet.n.to_string()),
                ("deltas".to_string(), format!("{:?}", sheet.deltas)),
                ("h".to_string(), sheet.h.to_string()),
                ("pair bound (gap)".to_string(), format!("{} ({})", opt(sheet.pair_bound), sheet.offset_gap)),
                ("placement bound".to_string(), sheet.placement_bound.to_string()),
                ("mixed bound".to_string(), sheet.mixed_bound.to_string()),
                ("lower bound, general".to_string(), ratio(sheet.lower_bound_general)),
                ("lower bound, trees".to_string(), ratio(sheet.lower_bound_trees)),
                ("lower bound on k".to_string(), sheet.lower_bound_min_k.to_string()),
                ("small-h lower bound".to_string(), opt(sheet.small_h_bound)),
            ]);
            s.push_str(&format!(
                "\nnote: placement bound over degrees 4..7 at h = 3 evaluates to [{}, {}]; the printed range [{}, {}] does not match (the mixed bound gives [{}, {}])\n",
                substituted.0, substituted.1, printed.0, printed.1, mixed.0, mixed.1
            ));
            s
        }
    };
    Ok(Outcome { stdout: text, code: EXIT_OK })
}

fn oracle(cli: &Cli, a: &OracleArgs) -> Run {
    if let Some(path) = &a.geometric {
        let layout = read_layout(path)?;
        let geometric = geometric_crossing_oracle(&layout)?;
        let combinatorial = crossing_counts_with(&layout, CountMode::Pairwise)?;
        let equal = geometric == combinatorial;
        let v = json!({
            "seed": cli.seed,
            "equal": equal,
            "k": geometric.k,
            "total_crossings": geometric.total_crossings(),
            "geometric": geometric,
            "combinatorial": combinatorial,
        });
        let text = match cli.format {
            Format::Json => to_json(&v),
            Format::Table => table::key_values(&[
                ("seed".to_string(), cli.seed.to_string()),
                ("equal".to_string(), equal.to_string()),
                ("k".to_string(), geometric.k.to_string()),
                ("total crossings".to_string(), geometric.total_crossings().to_string()),
            ]),
        };
        return Ok(Outcome { stdout: text, code: if equal { EXIT_OK } else { EXIT_VERIFY } });
    }

    if a.min_k {
        let (d, s, h) = (need(a.delta, "delta")?, need(a.sigma, "sigma")?, need(a.copies, "copies")?);
        let (offsets, k) = min_k_over_offsets(d, s, h)?;
        let v = json!({ "seed": cli.seed, "offsets": offsets, "k": k, "bound": bound_placement_crossings(d, h) });
        let text = match cli.format {
            Format::Json => to_json(&v),
            Format::Table => table::key_values(&[
                ("seed".to_string(), cli.seed.to_string()),
                ("offsets".to_string(), format!("{offsets:?}")),
                ("k".to_string(), k.to_string()),
            ]),
        };
        return Ok(Outcome { stdout: text, code: EXIT_OK });
    }

    let caterpillars: Vec<Caterpillar> = match &a.caterpillars {
        Some(path) => serde_json::from_str(&read_input(path)?)
            .map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?,
        None => {
            let (d, s, h) = (need(a.delta, "delta")?, need(a.sigma, "sigma")?, need(a.copies, "copies")?);
            if h == 0 {
                return Err(CliError::usage("--copies must be positive"));
            }
            vec![make_regular_caterpillar(d, s)?; h]
        }
    };
    let mut inst = SearchInstance::new(caterpillars);
    if let Some(b) = a.budget {
        inst.node_budget = b;
    }
    if let Some(t) = a.time_limit {
        if !(t > 0.0 && t.is_finite()) {
            return Err(CliError::usage("--time-limit must be a positive number of seconds"));
        }
        inst.time_budget = Some(Duration::from_secs_f64(t));
    }
    if a.count {
        inst.mode = SearchMode::CountSolutions;
    }
    let verdict = brute_force_placement_exists(&inst)?;
    let mut certified = None;
    if let Verdict::Exists { certificate, .. } = &verdict {
        certificate.check(&inst.caterpillars)?;
        certified = Some(true);
    }
    let code = match verdict {
        Verdict::BudgetExhausted { .. } => EXIT_BUDGET,
        _ => EXIT_OK,
    };
    let text = match cli.format {
        Format::Json => {
            let mut v = serde_json::to_value(&verdict).map_err(Error::from)?;
            v["seed"] = json!(cli.seed);
            v["n"] = json!(inst.n());
            v["h"] = json!(inst.caterpillars.len());
            if let Some(c) = certified {
                v["certificate_verified"] = Value::Bool(c);
            }
            to_json(&v)
        }
        Format::Table => {
            let mut rows = vec![
                ("seed".to_string(), cli.seed.to_string()),
                ("verdict".to_string(), verdict.name().to_string()),
            ];
            match &verdict {
                Verdict::Exists { certificate, nodes } => {
                    rows.push(("nodes".into(), nodes.to_string()));
                    for (i, m) in certificate.mappings.iter().enumerate() {
                        rows.push((format!("copy {i}"), format!("{m:?}")));
                    }
                }
                Verdict::Impossible { nodes } | Verdict::BudgetExhausted { nodes } => {
                    rows.push(("nodes".into(), nodes.to_string()))
                }
                Verdict::Counted { solutions, nodes } => {
                    rows.push(("solutions".into(), solutions.to_string()));
                    rows.push(("nodes".into(), nodes.to_string()));
                }
            }
            table::key_values(&rows)
        }
    };
    Ok(Outcome { stdout: text, code })
}
