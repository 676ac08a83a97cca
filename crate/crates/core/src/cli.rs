//! The `sfl` command line: single-instance statistics, L-triples, verification
//! campaigns, explicit constructions and parameter sweeps.
//!
//! Output is JSON on stdout by default (an envelope with `"schema": "sfl/1"`
//! and the command name), or CSV with `--format csv`. Big integers are always
//! decimal strings. Exit codes: 0 success, 1 usage error, 2 budget exceeded or
//! infeasible construction, 3 a verification check failed.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::bounds;
use crate::campaign::{
    self, Campaign, CampaignConfig, CampaignReport, Grid, RangeSpec, Status, BOUNDS_CSV_HEADER,
    CHECK_CSV_HEADER, GM_CSV_HEADER,
};
use crate::equations::{l_triples, PqEquation};
use crate::error::Error;
use crate::linkgraph;
use crate::oracle::{compute_stats, StatsFields};
use crate::Budget;

/// JSON schema tag carried by every document the tool writes.
pub const SCHEMA: &str = "sfl/1";

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_RESOURCE: i32 = 2;
pub const EXIT_FAILED: i32 = 3;

/// CSV column order for `stats`.
pub const STATS_CSV_HEADER: [&str; 8] = ["p", "q", "n", "mu", "mu_star", "f", "f_max", "elapsed_ms"];
/// CSV column order for `triples`.
pub const TRIPLES_CSV_HEADER: [&str; 3] = ["a", "b", "c"];

#[derive(Debug, Parser)]
#[command(name = "sfl", version, about = "Solution-free subsets of [n] for px + qy = z")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Worker threads for grid points (default: all cores). Output does not depend on it.
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Oracle values (mu, mu*, f, f_max, per-minimum counts) and closed-form bounds.
    Stats(StatsArgs),
    /// All L-triples inside [n].
    Triples(PqnArgs),
    /// Runs a verification campaign over a grid or seeded random instances.
    Verify(VerifyArgs),
    /// Builds and verifies an explicit lower-bound construction.
    Construct(ConstructArgs),
    /// Tabulates a quantity over a grid.
    Sweep(SweepArgs),
}

#[derive(Debug, Args)]
struct PqnArgs {
    #[arg(long)]
    p: u64,
    #[arg(long)]
    q: u64,
    #[arg(long)]
    n: u64,
    /// Swap p and q when q > p instead of rejecting the input.
    #[arg(long)]
    normalize: bool,
}

#[derive(Debug, Args)]
struct StatsArgs {
    #[command(flatten)]
    pqn: PqnArgs,
    /// Comma-separated subset of mu, mu_star, f, f_max, per_min (default: all).
    #[arg(long)]
    fields: Option<String>,
}

#[derive(Debug, Args)]
struct GridArgs {
    /// Range for p, such as `2..5`, `q..100` or `3`.
    #[arg(long)]
    p: Option<String>,
    #[arg(long)]
    q: Option<String>,
    /// Range for n, such as `1..200`, `2p+1..30` or `16..28:4`.
    #[arg(long)]
    n: Option<String>,
    #[arg(long)]
    m: Option<String>,
    #[arg(long)]
    k: Option<String>,
}

impl GridArgs {
    fn grid(&self) -> Result<Grid, Error> {
        let mut grid = Grid::new();
        for (name, text) in [('p', &self.p), ('q', &self.q), ('n', &self.n), ('m', &self.m), ('k', &self.k)] {
            if let Some(text) = text {
                grid.set(name, text.parse::<RangeSpec>()?);
            }
        }
        Ok(grid)
    }
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Campaign id: structure, census, min-counts, count-ratio, mis-bounds,
    /// triangle-free, extensions, triangles, shifted-count, matching,
    /// fmax-sandwich, path-inequality, mu-formula, mu-star or multi-variable.
    campaign: String,
    #[command(flatten)]
    grid: GridArgs,
    /// Number of random instances, for randomized campaigns.
    #[arg(long)]
    random: Option<u64>,
    /// Seed for randomized campaigns.
    #[arg(long, default_value_t = campaign::DEFAULT_SEED)]
    seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ConstructKind {
    /// Disjoint triangles in a link graph, for px + y = z.
    #[value(alias = "msf2")]
    Triangles,
    /// An induced matching in a link graph, for p >= q >= 2.
    #[value(alias = "msf6")]
    Matching,
}

#[derive(Debug, Args)]
struct ConstructArgs {
    #[arg(value_enum)]
    kind: ConstructKind,
    #[arg(long)]
    p: u64,
    /// Defaults to 1, the only value the triangle construction accepts.
    #[arg(long)]
    q: Option<u64>,
    #[arg(long)]
    n: u64,
    /// Swap p and q when q > p instead of rejecting the input.
    #[arg(long)]
    normalize: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SweepKind {
    /// Independence number of G_m against the structural bound, over p, q, n, m.
    Gm,
    /// Closed-form bound exponents, over p, q, n.
    Bounds,
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[arg(value_enum)]
    kind: SweepKind,
    #[command(flatten)]
    grid: GridArgs,
}

/// What a command produced: the document to print and the exit code.
struct Outcome {
    json: Value,
    csv: Option<Vec<u8>>,
    code: i32,
}

fn envelope(command: &str, warnings: &[String], body: Value) -> Value {
    let mut doc = json!({ "schema": SCHEMA, "command": command, "warnings": warnings });
    if let (Value::Object(doc), Value::Object(body)) = (&mut doc, body) {
        doc.extend(body);
    }
    doc
}

fn to_value(v: &impl Serialize) -> Result<Value, Error> {
    serde_json::to_value(v).map_err(|e| Error::InvalidInput(format!("cannot serialize output: {e}")))
}

fn csv_bytes<const N: usize>(header: [&str; N], rows: impl IntoIterator<Item = [String; N]>) -> Result<Vec<u8>, Error> {
    let io = |e: csv::Error| Error::InvalidInput(format!("cannot write CSV: {e}"));
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).map_err(io)?;
    for row in rows {
        w.write_record(&row).map_err(io)?;
    }
    w.into_inner().map_err(|e| Error::InvalidInput(format!("cannot write CSV: {e}")))
}

/// Exit code for an error from the library.
pub fn exit_code(e: &Error) -> i32 {
    if e.is_resource_or_infeasible() || matches!(e, Error::Overflow(_)) {
        EXIT_RESOURCE
    } else {
        EXIT_USAGE
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::InvalidEquation(_) => "invalid_equation",
        Error::ArityMismatch { .. } => "arity_mismatch",
        Error::Domain(_) => "domain",
        Error::InvalidInput(_) => "invalid_input",
        Error::BudgetExceeded(_) => "budget_exceeded",
        Error::Infeasible(_) => "infeasible",
        Error::Overflow(_) => "overflow",
    }
}

/// `(p, q)` with `p >= q`, swapping when allowed.
fn ordered(p: u64, q: u64, normalize: bool, warnings: &mut Vec<String>) -> Result<(u64, u64), Error> {
    if q <= p {
        return Ok((p, q));
    }
    if !normalize {
        return Err(Error::Domain(format!(
            "need p >= q, got p = {p}, q = {q}; px + qy = z is qx + py = z with x and y renamed, so pass --normalize to swap"
        )));
    }
    warnings.push(format!("swapped p and q: using p = {q}, q = {p}"));
    Ok((q, p))
}

fn stats(args: &StatsArgs, budget: &Budget) -> Result<Outcome, Error> {
    let mut warnings = Vec::new();
    let (p, q) = ordered(args.pqn.p, args.pqn.q, args.pqn.normalize, &mut warnings)?;
    let fields = match &args.fields {
        Some(list) => StatsFields::parse(list)?,
        None => StatsFields::all(),
    };
    let eq = PqEquation::new(p, q)?;
    let n = args.pqn.n;
    let record = compute_stats(&eq, n, fields, budget)?;
    let report = (p >= 2).then(|| bounds::bound_report(p, q, n)).transpose()?;
    let opt = |v: &Option<String>| v.clone().unwrap_or_default();
    let csv = csv_bytes(
        STATS_CSV_HEADER,
        [[
            p.to_string(),
            q.to_string(),
            n.to_string(),
            opt(&record.mu.map(|v| v.to_string())),
            opt(&record.mu_star.map(|v| v.to_string())),
            opt(&record.f.as_ref().map(|v| v.to_string())),
            opt(&record.f_max.as_ref().map(|v| v.to_string())),
            record.elapsed_ms.to_string(),
        ]],
    )?;
    let json = envelope(
        "stats",
        &warnings,
        json!({ "stats": to_value(&record)?, "bounds": to_value(&report)? }),
    );
    Ok(Outcome {
        json,
        csv: Some(csv),
        code: EXIT_OK,
    })
}

fn triples(args: &PqnArgs) -> Result<Outcome, Error> {
    let mut warnings = Vec::new();
    let (p, q) = ordered(args.p, args.q, args.normalize, &mut warnings)?;
    let eq = PqEquation::new(p, q)?;
    let all: Vec<[u64; 3]> = l_triples(&eq, args.n).iter().map(|t| t.elements()).collect();
    let csv = csv_bytes(TRIPLES_CSV_HEADER, all.iter().map(|t| t.map(|v| v.to_string())))?;
    let json = envelope(
        "triples",
        &warnings,
        json!({ "p": p, "q": q, "n": args.n, "count": all.len(), "triples": all }),
    );
    Ok(Outcome {
        json,
        csv: Some(csv),
        code: EXIT_OK,
    })
}

fn verify_code(report: &CampaignReport) -> i32 {
    if report.summary.fail > 0 {
        EXIT_FAILED
    } else if report.rows.iter().any(|r| r.status == Status::Error) {
        EXIT_RESOURCE
    } else {
        EXIT_OK
    }
}

fn verify(args: &VerifyArgs, budget: &Budget) -> Result<Outcome, Error> {
    let c: Campaign = args.campaign.parse()?;
    let config = CampaignConfig {
        grid: args.grid.grid()?,
        random: args.random,
        seed: args.seed,
        budget: budget.clone(),
    };
    let report = campaign::run_campaign(c, &config)?;
    let csv = csv_bytes(CHECK_CSV_HEADER, report.rows.iter().map(|r| r.csv_record()))?;
    let mut body = to_value(&report)?;
    if let Value::Object(map) = &mut body {
        map.remove("warnings");
    }
    Ok(Outcome {
        json: envelope("verify", &report.warnings, body),
        csv: Some(csv),
        code: verify_code(&report),
    })
}

fn construct(args: &ConstructArgs, budget: &Budget) -> Result<Outcome, Error> {
    let mut warnings = Vec::new();
    let (body, verified) = match args.kind {
        ConstructKind::Triangles => {
            if let Some(q) = args.q.filter(|&q| q != 1) {
                return Err(Error::Domain(format!("the triangle construction is for q = 1, got q = {q}")));
            }
            let c = linkgraph::triangle_construction(args.p, args.n, budget)?;
            (json!({ "kind": "triangles", "construction": to_value(&c)? }), c.verified())
        }
        ConstructKind::Matching => {
            let q = args
                .q
                .ok_or_else(|| Error::InvalidInput("the matching construction needs --q".into()))?;
            let (p, q) = ordered(args.p, q, args.normalize, &mut warnings)?;
            let c = linkgraph::matching_construction(p, q, args.n, budget)?;
            (json!({ "kind": "matching", "construction": to_value(&c)? }), c.verified())
        }
    };
    let mut json = envelope("construct", &warnings, body);
    json["verified"] = json!(verified);
    Ok(Outcome {
        json,
        csv: None,
        code: if verified { EXIT_OK } else { EXIT_FAILED },
    })
}

fn sweep(args: &SweepArgs) -> Result<Outcome, Error> {
    let grid = args.grid.grid()?;
    let (kind, warnings, rows, csv) = match args.kind {
        SweepKind::Gm => {
            let r = campaign::sweep_gm(&grid)?;
            let csv = csv_bytes(GM_CSV_HEADER, r.rows.iter().map(|row| row.csv_record()))?;
            ("gm", r.warnings, to_value(&r.rows)?, csv)
        }
        SweepKind::Bounds => {
            let r = campaign::sweep_bounds(&grid)?;
            let csv = csv_bytes(BOUNDS_CSV_HEADER, r.rows.iter().map(|row| row.csv_record()))?;
            ("bounds", r.warnings, to_value(&r.rows)?, csv)
        }
    };
    Ok(Outcome {
        json: envelope("sweep", &warnings, json!({ "kind": kind, "rows": rows })),
        csv: Some(csv),
        code: EXIT_OK,
    })
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Stats(_) => "stats",
        Command::Triples(_) => "triples",
        Command::Verify(_) => "verify",
        Command::Construct(_) => "construct",
        Command::Sweep(_) => "sweep",
    }
}

fn execute(cli: &Cli, budget: &Budget) -> Result<Outcome, Error> {
    match &cli.command {
        Command::Stats(a) => stats(a, budget),
        Command::Triples(a) => triples(a),
        Command::Verify(a) => verify(a, budget),
        Command::Construct(a) => construct(a, budget),
        Command::Sweep(a) => sweep(a),
    }
}

fn write_json(out: &mut dyn Write, v: &Value) -> std::io::Result<()> {
    serde_json::to_writer_pretty(&mut *out, v)?;
    writeln!(out)
}

/// Runs the tool on `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{text}") } else { write!(out, "{text}") };
            return code;
        }
    };
    let budget = Budget::from_env();
    let result = match cli.jobs {
        Some(jobs) => match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
            Ok(pool) => pool.install(|| execute(&cli, &budget)),
            Err(e) => Err(Error::InvalidInput(format!("cannot start {jobs} worker threads: {e}"))),
        },
        None => execute(&cli, &budget),
    };
    let written = match result {
        Ok(outcome) => {
            if let Some(warnings) = outcome.json["warnings"].as_array() {
                for w in warnings.iter().filter_map(Value::as_str) {
                    let _ = writeln!(err, "warning: {w}");
                }
            }
            let res = match (cli.format, &outcome.csv) {
                (Format::Csv, Some(csv)) => out.write_all(csv),
                (Format::Csv, None) => {
                    let _ = writeln!(err, "warning: this command has no CSV form; writing JSON");
                    write_json(out, &outcome.json)
                }
                (Format::Json, _) => write_json(out, &outcome.json),
            };
            res.map(|_| outcome.code)
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            let doc = json!({
                "schema": SCHEMA,
                "command": command_name(&cli.command),
                "error": { "kind": error_kind(&e), "message": e.to_string() },
            });
            write_json(out, &doc).map(|_| exit_code(&e))
        }
    };
    match written.and_then(|code| out.flush().map(|_| code)) {
        Ok(code) => code,
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: cannot write output: {e}");
            EXIT_RESOURCE
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("sfl").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn stats_json_envelope() {
        let (code, out, _) = call(&["stats", "--p", "2", "--q", "1", "--n", "12"]);
        assert_eq!(code, EXIT_OK);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["schema"], SCHEMA);
        assert_eq!(v["command"], "stats");
        assert_eq!(v["stats"]["mu"], 8);
        assert!(v["stats"]["f"].is_string() && v["stats"]["f_max"].is_string());
        assert_eq!(v["bounds"]["mu_formula"], 8);
    }

    #[test]
    fn stats_selected_fields_and_csv() {
        let (code, out, _) = call(&["stats", "--p", "2", "--q", "2", "--n", "10", "--fields", "mu_star"]);
        assert_eq!(code, EXIT_OK);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["stats"]["mu_star"], 3);
        assert!(v["stats"]["mu"].is_null());
        let (_, csv, _) = call(&["stats", "--p", "2", "--q", "1", "--n", "4", "--format", "csv"]);
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), STATS_CSV_HEADER.join(","));
        assert!(lines.next().unwrap().starts_with("2,1,4,3,"));
    }

    #[test]
    fn swapped_input_is_a_usage_error_unless_normalized() {
        assert_eq!(call(&["stats", "--p", "1", "--q", "2", "--n", "10"]).0, EXIT_USAGE);
        let (code, out, err) = call(&["stats", "--p", "1", "--q", "2", "--n", "10", "--normalize"]);
        assert_eq!(code, EXIT_OK);
        assert!(err.contains("swapped"));
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!((v["stats"]["p"].as_u64(), v["stats"]["q"].as_u64()), (Some(2), Some(1)));
    }

    #[test]
    fn construction_infeasible_exits_two() {
        let (code, out, _) = call(&["construct", "msf6", "--p", "2", "--q", "2", "--n", "3"]);
        assert_eq!(code, EXIT_RESOURCE);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["error"]["kind"], "infeasible");
    }

    #[test]
    fn usage_and_help_codes() {
        assert_eq!(call(&["verify"]).0, EXIT_USAGE);
        assert_eq!(call(&["verify", "no-such-campaign"]).0, EXIT_USAGE);
        assert_eq!(call(&["--help"]).0, EXIT_OK);
    }

    #[test]
    fn triples_csv() {
        let (code, out, _) = call(&["triples", "--p", "2", "--q", "1", "--n", "5", "--format", "csv"]);
        assert_eq!(code, EXIT_OK);
        assert_eq!(out, "a,b,c\n1,1,3\n1,2,4\n1,2,5\n1,3,5\n");
    }
}
