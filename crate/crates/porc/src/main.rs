//! Command-line conformance checking for event logs with order uncertainty.

mod report;

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use porc_core::alignment::{ConfKind, ConformanceChecker};
use porc_core::approx::trace_conformance;
use porc_core::behavioral::{BehavioralModel, ModelKind};
use porc_core::evaluate::{
    inject_noise, random_series_parallel_net, run_benchmark, simulate, GoldLog, NoiseKind,
};
use porc_core::log::csv::{parse_csv, ColumnMapping, CsvOptions};
use porc_core::log::xes::parse_xes;
use porc_core::log::EventLog;
use porc_core::measures;
use porc_core::petri::{pnml::parse_pnml, PetriNet, DEFAULT_STATE_CAP};
use porc_core::resolution::k_best;
use porc_core::time::Precision;

use report::{
    round6, EvalApproxEntry, EvalJson, EvalModelEntry, LogSummary, MeasuresReport, ModelEntry,
    PairEntry, Provenance, Report, ResolveEntry, ResolveReport, TraceReport,
};

const EXIT_TRACE_ERRORS: u8 = 2;
const EXIT_USAGE: u8 = 64;
const EXIT_IO: u8 = 74;

#[derive(Parser)]
#[command(
    name = "porc",
    version,
    about = "Probabilistic conformance checking for event logs with order uncertainty"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Probability-weighted conformance of every trace against a Petri net
    Check(CheckArgs),
    /// List each trace's most probable resolutions
    Resolve(ResolveArgs),
    /// Model-selection measures (coverage, support, uncertainty ratio)
    Measures(MeasuresArgs),
    /// Benchmark estimators against a gold-standard log
    Evaluate(EvaluateArgs),
}

#[derive(Args)]
struct LogArgs {
    /// Event log (.csv or .xes, chosen by extension)
    #[arg(long)]
    log: PathBuf,
    /// CSV column holding the case identifier
    #[arg(long, default_value = "case")]
    case_column: String,
    /// CSV column holding the activity label
    #[arg(long, default_value = "activity")]
    activity_column: String,
    /// CSV column holding the timestamp
    #[arg(long, default_value = "timestamp")]
    timestamp_column: String,
    /// strftime format for CSV timestamps (e.g. "%Y-%m-%d %H:%M:%S")
    #[arg(long, default_value = "%Y-%m-%dT%H:%M:%S%.3f%:z")]
    timestamp_format: String,
    /// CSV field delimiter
    #[arg(long, default_value_t = ',')]
    delimiter: char,
    /// Coarsen timestamps after loading, to a unit (ms|s|m|h|d)
    #[arg(long)]
    coarsen: Option<String>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum ConfArg {
    Bin,
    Fitness,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Args)]
struct CheckArgs {
    #[command(flatten)]
    log: LogArgs,
    /// Process model (PNML)
    #[arg(long)]
    model: PathBuf,
    /// Place id to use as the final marking when the PNML lacks one
    #[arg(long)]
    final_place: Option<String>,
    /// Estimator: te | 2g | 3g | 4g | wo | bl1
    #[arg(long, short = 'b')]
    behavioral_model: String,
    /// Conformance function
    #[arg(long, value_enum, default_value_t = ConfArg::Fitness)]
    conf: ConfArg,
    /// Approximate instead of exhausting all resolutions
    #[arg(long)]
    approx: bool,
    /// Confidence level for --approx (0.90 | 0.95 | 0.99)
    #[arg(long, default_value_t = 0.99)]
    alpha: f64,
    /// Relative error bound for --approx early stopping
    #[arg(long, default_value_t = 0.10)]
    delta: f64,
    /// Max resolutions materialized per trace
    #[arg(long, default_value_t = 100_000)]
    cap: u128,
    /// Worker threads (default: all cores)
    #[arg(long)]
    jobs: Option<usize>,
    /// Include each trace's k most probable resolutions in the report
    #[arg(long)]
    top: Option<usize>,
    /// Recorded in the report's provenance
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Output path (default stdout)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ResolveArgs {
    #[command(flatten)]
    log: LogArgs,
    /// Estimator: te | 2g | 3g | 4g | wo | bl1
    #[arg(long, short = 'b')]
    behavioral_model: String,
    /// Resolutions listed per trace
    #[arg(long, default_value_t = 5)]
    top: usize,
    /// Max resolutions materialized per trace
    #[arg(long, default_value_t = 100_000)]
    cap: u128,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct MeasuresArgs {
    #[command(flatten)]
    log: LogArgs,
    /// Minimum coverage for a model to be recommended
    #[arg(long, default_value_t = 0.8)]
    coverage_threshold: f64,
    /// Minimum mean uncertainty ratio for a model to be recommended
    #[arg(long, default_value_t = 1.0)]
    min_ratio: f64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct EvaluateArgs {
    /// Process model (PNML); omit with --synthetic
    #[arg(long, required_unless_present = "synthetic")]
    model: Option<PathBuf>,
    /// Place id to use as the final marking when the PNML lacks one
    #[arg(long)]
    final_place: Option<String>,
    /// Generate a random series-parallel net instead of loading one
    #[arg(long)]
    synthetic: bool,
    /// Blocks in the synthetic net
    #[arg(long, default_value_t = 4)]
    blocks: usize,
    /// Simulated traces
    #[arg(long, default_value_t = 100)]
    traces: usize,
    /// Mean seconds between simulated events
    #[arg(long, default_value_t = 5.0)]
    mean_gap: f64,
    /// Unit the gold log is coarsened to (ms|s|m|h|d)
    #[arg(long, default_value = "m")]
    coarsen: String,
    /// Fraction of traces receiving one random noise operation
    #[arg(long, default_value_t = 0.0)]
    noise_fraction: f64,
    /// Comma-separated noise operations: insert,swap,remove
    #[arg(long, default_value = "insert,swap,remove")]
    noise_kinds: String,
    /// Comma-separated estimators to benchmark
    #[arg(long, default_value = "2g,wo,bl1")]
    models: String,
    /// Also run the sampling approximation and report its cost/benefit
    #[arg(long)]
    approx: bool,
    /// Confidence level for --approx
    #[arg(long, default_value_t = 0.99)]
    alpha: f64,
    /// Relative error bound for --approx
    #[arg(long, default_value_t = 0.10)]
    delta: f64,
    /// Seed for simulation, noise, and net generation
    #[arg(long, default_value_t = 17)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

enum CliError {
    Usage(String),
    Io(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Io(_) => EXIT_IO,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Io(m) => m,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Check(args) => cmd_check(args),
        Command::Resolve(args) => cmd_resolve(args),
        Command::Measures(args) => cmd_measures(args),
        Command::Evaluate(args) => cmd_evaluate(args),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("porc: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}

fn state_cap() -> usize {
    std::env::var("PORC_STATE_CAP")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_STATE_CAP)
}

fn load_log(args: &LogArgs) -> Result<EventLog, CliError> {
    let ext = args.log.extension().and_then(|e| e.to_str()).unwrap_or("");
    let log = match ext.to_ascii_lowercase().as_str() {
        "csv" => {
            let mut delim = [0u8; 1];
            args.delimiter.encode_utf8(&mut delim);
            let options = CsvOptions {
                mapping: ColumnMapping {
                    case: args.case_column.clone(),
                    activity: args.activity_column.clone(),
                    timestamp: args.timestamp_column.clone(),
                },
                timestamp_format: args.timestamp_format.clone(),
                delimiter: delim[0],
            };
            parse_csv(&args.log, &options)
                .map_err(|e| CliError::Io(format!("{}: {e}", args.log.display())))?
        }
        "xes" => parse_xes(&args.log)
            .map_err(|e| CliError::Io(format!("{}: {e}", args.log.display())))?
            .log,
        other => {
            return Err(CliError::Usage(format!(
                "unsupported log extension {other:?} (expected .csv or .xes)"
            )))
        }
    };
    match &args.coarsen {
        None => Ok(log),
        Some(unit) => {
            let unit = Precision::parse(unit)
                .ok_or_else(|| CliError::Usage(format!("unknown time unit {unit:?}")))?;
            log.coarsen(unit).map_err(|e| CliError::Usage(e.to_string()))
        }
    }
}

fn load_net(path: &Path, final_place: Option<&str>) -> Result<PetriNet, CliError> {
    parse_pnml(path, final_place).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn parse_model_kind(name: &str) -> Result<ModelKind, CliError> {
    ModelKind::parse(name)
        .ok_or_else(|| CliError::Usage(format!("unknown behavioral model {name:?}")))
}

fn configure_jobs(jobs: Option<usize>) -> Result<(), CliError> {
    if let Some(n) = jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Usage(format!("--jobs: {e}")))?;
    }
    Ok(())
}

fn write_output(out: Option<&Path>, content: &str) -> Result<(), CliError> {
    match out {
        None => {
            println!("{content}");
            Ok(())
        }
        Some(path) => {
            let mut f = std::fs::File::create(path)
                .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            writeln!(f, "{content}").map_err(|e| CliError::Io(e.to_string()))
        }
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report serialization cannot fail")
}

fn cmd_check(args: CheckArgs) -> Result<u8, CliError> {
    configure_jobs(args.jobs)?;
    let log = load_log(&args.log)?;
    let net = load_net(&args.model, args.final_place.as_deref())?;
    let kind = parse_model_kind(&args.behavioral_model)?;
    let model = BehavioralModel::build(kind, &log)
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let checker = ConformanceChecker::with_state_cap(&net, state_cap());
    let conf_kind = match args.conf {
        ConfArg::Bin => ConfKind::Bin,
        ConfArg::Fitness => ConfKind::Fit,
    };
    let approx = args.approx.then_some((args.alpha, args.delta));

    let per_trace: Vec<TraceReport> = log
        .traces()
        .par_iter()
        .map(|trace| {
            let resolutions = trace.resolution_count().unwrap_or(u128::MAX);
            let base = TraceReport {
                case_id: trace.case_id.clone(),
                resolutions,
                model: kind.name(),
                expected_conf: 0.0,
                ci: [0.0, 0.0],
                sampled: 0,
                exact: false,
                fallback_used: false,
                error: None,
                top_resolutions: None,
            };
            let dist = match model.distribution_under_cap(trace, args.cap) {
                Ok(d) => d,
                Err(e) => return TraceReport { error: Some(e.to_string()), ..base },
            };
            let result = match trace_conformance(&model, trace, &checker, conf_kind, approx, args.cap)
            {
                Ok(r) => r,
                Err(e) => return TraceReport { error: Some(e.to_string()), ..base },
            };
            let top = args.top.map(|k| {
                let mut entries: Vec<(String, f64)> = dist
                    .entries
                    .iter()
                    .map(|e| (e.resolution.word.join(" "), e.probability))
                    .collect();
                entries.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap().then_with(|| a.0.cmp(&b.0)));
                entries.truncate(k);
                entries.into_iter().map(|(w, p)| (w, round6(p))).collect()
            });
            TraceReport {
                expected_conf: round6(result.expected),
                ci: [round6(result.ci_low), round6(result.ci_high)],
                sampled: result.sampled,
                exact: result.exact,
                fallback_used: dist.fallback_used,
                top_resolutions: top,
                ..base
            }
        })
        .collect();

    let ok: Vec<&TraceReport> = per_trace.iter().filter(|t| t.error.is_none()).collect();
    let weighted = if ok.is_empty() {
        0.0
    } else {
        ok.iter().map(|t| t.expected_conf).sum::<f64>() / ok.len() as f64
    };
    let report = Report {
        log_summary: LogSummary {
            weighted_log_conformance: round6(weighted),
            uncertain_ratio: round6(log.uncertain_ratio()),
            fallback_count: per_trace.iter().filter(|t| t.fallback_used).count(),
        },
        provenance: provenance(
            &args.log.log,
            Some(&args.model),
            args.seed,
        ),
        per_trace,
    };

    let content = match args.format {
        Format::Json => to_json(&report),
        Format::Csv => check_csv(&report),
        Format::Table => check_table(&report),
    };
    write_output(args.out.as_deref(), &content)?;
    Ok(if report.per_trace.iter().any(|t| t.error.is_some()) {
        EXIT_TRACE_ERRORS
    } else {
        0
    })
}

fn provenance(log: &Path, model: Option<&Path>, seed: Option<u64>) -> Provenance {
    Provenance {
        log: log.display().to_string(),
        model: model.map(|m| m.display().to_string()).unwrap_or_default(),
        flags: std::env::args().skip(1).collect(),
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        seed,
    }
}

fn check_csv(report: &Report) -> String {
    let mut s = String::from("case_id,resolutions,model,expected_conf,ci_low,ci_high,sampled,exact,fallback,error\n");
    for t in &report.per_trace {
        s.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{}\n",
            t.case_id,
            t.resolutions,
            t.model,
            t.expected_conf,
            t.ci[0],
            t.ci[1],
            t.sampled,
            t.exact,
            t.fallback_used,
            t.error.clone().unwrap_or_default()
        ));
    }
    s.pop();
    s
}

fn check_table(report: &Report) -> String {
    let mut s = format!(
        "{:<16} {:>12} {:>6} {:>14} {:>22} {:>8} {:>6}\n",
        "case", "resolutions", "model", "expected_conf", "ci", "sampled", "exact"
    );
    for t in &report.per_trace {
        s.push_str(&format!(
            "{:<16} {:>12} {:>6} {:>14.6} {:>22} {:>8} {:>6}\n",
            t.case_id,
            t.resolutions,
            t.model,
            t.expected_conf,
            format!("[{:.6}, {:.6}]", t.ci[0], t.ci[1]),
            t.sampled,
            t.exact,
        ));
    }
    s.push_str(&format!(
        "log conformance {:.6}  uncertain ratio {:.6}  fallbacks {}",
        report.log_summary.weighted_log_conformance,
        report.log_summary.uncertain_ratio,
        report.log_summary.fallback_count
    ));
    s
}

fn cmd_resolve(args: ResolveArgs) -> Result<u8, CliError> {
    let log = load_log(&args.log)?;
    let kind = parse_model_kind(&args.behavioral_model)?;
    let model =
        BehavioralModel::build(kind, &log).map_err(|e| CliError::Usage(e.to_string()))?;
    let mut per_trace = Vec::new();
    let mut had_errors = false;
    for trace in log.traces() {
        let resolutions = trace.resolution_count().unwrap_or(u128::MAX);
        match k_best(trace, &model, args.top, args.cap) {
            Ok(best) => {
                let fallback = model
                    .distribution_under_cap(trace, args.cap)
                    .map(|d| d.fallback_used)
                    .unwrap_or(false);
                per_trace.push(ResolveEntry {
                    case_id: trace.case_id.clone(),
                    resolutions,
                    top_resolutions: best
                        .into_iter()
                        .map(|(r, p)| (r.word.join(" "), round6(p)))
                        .collect(),
                    fallback_used: fallback,
                    error: None,
                });
            }
            Err(e) => {
                had_errors = true;
                per_trace.push(ResolveEntry {
                    case_id: trace.case_id.clone(),
                    resolutions,
                    top_resolutions: Vec::new(),
                    fallback_used: false,
                    error: Some(e.to_string()),
                });
            }
        }
    }
    let report = ResolveReport {
        model: kind.name(),
        per_trace,
        provenance: provenance(&args.log.log, None, None),
    };
    let content = match args.format {
        Format::Json => to_json(&report),
        Format::Csv => {
            let mut s = String::from("case_id,resolutions,rank,word,probability\n");
            for t in &report.per_trace {
                for (rank, (w, p)) in t.top_resolutions.iter().enumerate() {
                    s.push_str(&format!("{},{},{},{},{}\n", t.case_id, t.resolutions, rank + 1, w, p));
                }
            }
            s.pop();
            s
        }
        Format::Table => {
            let mut s = String::new();
            for t in &report.per_trace {
                s.push_str(&format!("{} ({} resolutions)\n", t.case_id, t.resolutions));
                for (w, p) in &t.top_resolutions {
                    s.push_str(&format!("  {p:.6}  {w}\n"));
                }
            }
            s.pop();
            s
        }
    };
    write_output(args.out.as_deref(), &content)?;
    Ok(if had_errors { EXIT_TRACE_ERRORS } else { 0 })
}

fn cmd_measures(args: MeasuresArgs) -> Result<u8, CliError> {
    let log = load_log(&args.log)?;
    let report = measures::recommend(&log, args.coverage_threshold, args.min_ratio)
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let json = MeasuresReport {
        per_model: report
            .per_model
            .iter()
            .map(|(name, m)| ModelEntry {
                model: name.clone(),
                coverage: round6(m.coverage),
                mean_uncertainty_ratio: round6(m.mean_uncertainty_ratio),
            })
            .collect(),
        per_pair: report
            .per_pair
            .iter()
            .map(|((x, y), p)| {
                (
                    format!("{x}|{y}"),
                    PairEntry {
                        uncertain_traces: p.uncertain_traces,
                        support: p.support,
                        ratio: round6(p.ratio),
                    },
                )
            })
            .collect::<BTreeMap<_, _>>(),
        recommended: report.recommended.name(),
    };
    let content = match args.format {
        Format::Json => to_json(&json),
        Format::Csv => {
            let mut s = String::from("model,coverage,mean_uncertainty_ratio,recommended\n");
            for m in &json.per_model {
                s.push_str(&format!(
                    "{},{},{},{}\n",
                    m.model,
                    m.coverage,
                    m.mean_uncertainty_ratio,
                    m.model == json.recommended
                ));
            }
            s.pop();
            s
        }
        Format::Table => {
            let mut s = format!("{:<6} {:>10} {:>12}\n", "model", "coverage", "mean ratio");
            for m in &json.per_model {
                let mark = if m.model == json.recommended { "  <- recommended" } else { "" };
                s.push_str(&format!(
                    "{:<6} {:>10.6} {:>12.6}{}\n",
                    m.model, m.coverage, m.mean_uncertainty_ratio, mark
                ));
            }
            for (pair, p) in &json.per_pair {
                s.push_str(&format!(
                    "pair {pair}: uncertain {} support {} ratio {:.6}\n",
                    p.uncertain_traces, p.support, p.ratio
                ));
            }
            s.pop();
            s
        }
    };
    write_output(args.out.as_deref(), &content)?;
    Ok(0)
}

fn cmd_evaluate(args: EvaluateArgs) -> Result<u8, CliError> {
    let net = if args.synthetic {
        random_series_parallel_net(args.blocks, args.seed)
    } else {
        load_net(args.model.as_ref().unwrap(), args.final_place.as_deref())?
    };
    let unit = Precision::parse(&args.coarsen)
        .ok_or_else(|| CliError::Usage(format!("unknown time unit {:?}", args.coarsen)))?;
    let kinds: Vec<ModelKind> = args
        .models
        .split(',')
        .map(|s| parse_model_kind(s.trim()))
        .collect::<Result<_, _>>()?;
    let noise_kinds: Vec<NoiseKind> = args
        .noise_kinds
        .split(',')
        .map(|s| match s.trim() {
            "insert" => Ok(NoiseKind::Insert),
            "swap" => Ok(NoiseKind::Swap),
            "remove" => Ok(NoiseKind::Remove),
            other => Err(CliError::Usage(format!("unknown noise kind {other:?}"))),
        })
        .collect::<Result<_, _>>()?;

    let mut fine = simulate(&net, args.traces, args.mean_gap, args.seed)
        .map_err(|e| CliError::Usage(e.to_string()))?;
    if args.noise_fraction > 0.0 {
        fine = inject_noise(&fine, args.noise_fraction, &noise_kinds, args.seed ^ 0x9e37);
    }
    let gold = GoldLog::from_fine_log(&fine, unit).map_err(|e| CliError::Usage(e.to_string()))?;
    let approx = args.approx.then_some((args.alpha, args.delta));
    let result =
        run_benchmark(&gold, &net, &kinds, approx).map_err(|e| CliError::Usage(e.to_string()))?;

    let json = EvalJson {
        true_log_fitness: round6(result.true_log_fitness),
        per_model: result
            .per_model
            .iter()
            .map(|(name, m)| EvalModelEntry {
                model: name.clone(),
                rmse: round6(m.rmse),
                rmse_defined: m.rmse_defined,
                log_error: round6(m.log_error),
                uncertain_traces: m.uncertain_traces,
                runtime_ms: m.runtime_ms as u64,
                approx: m.approx.as_ref().map(|a| EvalApproxEntry {
                    rmse: round6(a.rmse),
                    log_error: round6(a.log_error),
                    runtime_ms: a.runtime_ms as u64,
                    additional_rmse: round6(a.additional_rmse),
                    time_saved_ratio: round6(a.time_saved_ratio),
                }),
            })
            .collect(),
    };
    let content = match args.format {
        Format::Json => to_json(&json),
        Format::Csv => {
            let mut s = String::from("model,rmse,log_error,uncertain_traces,runtime_ms\n");
            for m in &json.per_model {
                s.push_str(&format!(
                    "{},{},{},{},{}\n",
                    m.model, m.rmse, m.log_error, m.uncertain_traces, m.runtime_ms
                ));
            }
            s.pop();
            s
        }
        Format::Table => {
            let mut s = format!(
                "true log fitness {:.6}\n{:<6} {:>10} {:>10} {:>10} {:>11}\n",
                json.true_log_fitness, "model", "rmse", "log_error", "uncertain", "runtime_ms"
            );
            for m in &json.per_model {
                s.push_str(&format!(
                    "{:<6} {:>10.6} {:>10.6} {:>10} {:>11}\n",
                    m.model, m.rmse, m.log_error, m.uncertain_traces, m.runtime_ms
                ));
                if let Some(a) = &m.approx {
                    s.push_str(&format!(
                        "  approx: rmse {:.6} (+{:.6}) runtime {} ms (saved {:.1}%)\n",
                        a.rmse,
                        a.additional_rmse,
                        a.runtime_ms,
                        a.time_saved_ratio * 100.0
                    ));
                }
            }
            s.pop();
            s
        }
    };
    write_output(args.out.as_deref(), &content)?;
    Ok(0)
}
