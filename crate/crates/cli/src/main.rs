use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};

use lcdcodes::conjecture::certify_step_down;
use lcdcodes::format::{read_code_file, write_gen1, CodeFile, Format};
use lcdcodes::harness::bounds::BoundsLedger;
use lcdcodes::harness::ledger::{expand_transformed, read_ledger, LedgerRunner, LedgerSummary, RowOutcome, Verdict};
use lcdcodes::harness::search::{search, CodeClass, SearchRequest, DEFAULT_ITERATIONS, DEFAULT_SEED};
use lcdcodes::harness::table::DlcdTable;
use lcdcodes::{Engine, Error, LinearCode};

const EXIT_FAIL: u8 = 1;
const EXIT_SKIPPED: u8 = 2;
const EXIT_USAGE: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "lcdcodes", version, about = "Binary LCD code workbench")]
struct Cli {
    /// Seed for randomized search.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Minimum-distance engine: auto, full or lowweight.
    #[arg(long, global = true, default_value = "auto")]
    engine: Engine,
    /// Wall-clock cap for searches, in milliseconds.
    #[arg(long, global = true)]
    budget_ms: Option<u64>,
    /// Input file format (gen1 or extgen1); detected from the header when absent.
    #[arg(long, global = true)]
    format: Option<Format>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print n, k, minimum distance, hull dimension and parity class.
    Analyze { path: PathBuf },
    /// Replay selected ledger rows (and the rows they depend on).
    Construct {
        ledger: PathBuf,
        /// Row ids to report; all rows when omitted.
        #[arg(long = "id")]
        ids: Vec<String>,
        #[arg(long)]
        seed_dir: Option<PathBuf>,
        /// Directory for output generator files.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Binary image of a code over F_{2^m} under a self-dual basis.
    Expand {
        path: PathBuf,
        /// Column scaling such as `diag(w,1,...,1)`; identity by default.
        #[arg(long)]
        transform: Option<String>,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Build an [n, k, >= d-1] LCD code from an [n+1, k, d] LCD_oe code.
    Certify {
        path: PathBuf,
        /// Directory for the trace and output files; next to the input by default.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Exact d_LCD(n, k) for all 1 <= k <= n <= N_MAX by exhaustive search.
    DlcdTable {
        n_max: usize,
        /// Emit JSON instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Randomized search for a code of the given class with distance >= d.
    Search {
        n: usize,
        k: usize,
        d: usize,
        /// lcd, lcd-odd, lcd-even, lcd-oe, hullN or any.
        #[arg(long, default_value = "lcd")]
        class: CodeClass,
        #[arg(long, default_value_t = DEFAULT_ITERATIONS)]
        iterations: usize,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Replay every ledger row and check the bundled bound table.
    VerifyLedger {
        ledger: PathBuf,
        #[arg(long)]
        seed_dir: Option<PathBuf>,
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let usage = e.use_stderr();
            let _ = e.print();
            return if usage { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            let parse = e
                .chain()
                .any(|c| matches!(c.downcast_ref::<Error>(), Some(Error::Parse { .. })));
            ExitCode::from(if parse { EXIT_USAGE } else { EXIT_FAIL })
        }
    }
}

fn run(cli: Cli) -> Result<u8> {
    let deadline = cli.budget_ms.map(|ms| Instant::now() + Duration::from_millis(ms));
    match cli.command {
        Command::Analyze { path } => analyze(&path, cli.format, cli.engine),
        Command::Construct {
            ledger,
            ids,
            seed_dir,
            out_dir,
        } => replay(&ledger, &ids, seed_dir, out_dir.as_deref(), false),
        Command::Expand { path, transform, out } => {
            let CodeFile::Extension(code) = read_code_file(&path, Some(cli.format.unwrap_or(Format::ExtGen1)))? else {
                bail!("expand needs an EXTGEN1 file");
            };
            let image = expand_transformed(&code, transform.as_deref())?;
            println!("{}", summary_line(&image, cli.engine));
            emit(&image, out.as_deref())?;
            Ok(0)
        }
        Command::Certify { path, out_dir } => certify(&path, out_dir.as_deref(), cli.format),
        Command::DlcdTable { n_max, json } => dlcd_table(n_max, json),
        Command::Search {
            n,
            k,
            d,
            class,
            iterations,
            out,
        } => {
            let mut req = SearchRequest::new(n, k, d);
            req.class = class;
            req.seed = cli.seed;
            req.iterations = iterations;
            req.deadline = deadline;
            match search(&req)? {
                Some(code) => {
                    eprintln!("{}", summary_line(&code, cli.engine));
                    emit(&code, out.as_deref())?;
                    Ok(0)
                }
                None => {
                    println!("none");
                    Ok(EXIT_FAIL)
                }
            }
        }
        Command::VerifyLedger {
            ledger,
            seed_dir,
            out_dir,
        } => replay(&ledger, &[], seed_dir, out_dir.as_deref(), true),
    }
}

fn load_binary(path: &Path, format: Option<Format>) -> Result<LinearCode> {
    match read_code_file(path, format).with_context(|| format!("reading {}", path.display()))? {
        CodeFile::Binary(code) => Ok(code),
        CodeFile::Extension(_) => bail!("{} holds a code over an extension field", path.display()),
    }
}

fn distance_field(code: &LinearCode, engine: Engine) -> Result<String, Error> {
    match code.min_distance_with(engine) {
        Ok(d) => Ok(d.to_string()),
        Err(Error::DistanceBudget { at_least }) => Ok(format!(">={at_least}")),
        Err(e) => Err(e),
    }
}

fn summary_line(code: &LinearCode, engine: Engine) -> String {
    let d = distance_field(code, engine).unwrap_or_else(|e| format!("?({e})"));
    format!(
        "{} {} {} hull={} {}",
        code.n(),
        code.k(),
        d,
        code.hull_dimension(),
        code.parity_class().label()
    )
}

fn analyze(path: &Path, format: Option<Format>, engine: Engine) -> Result<u8> {
    match read_code_file(path, format).with_context(|| format!("reading {}", path.display()))? {
        CodeFile::Binary(code) => {
            let d = distance_field(&code, engine)?;
            println!(
                "{} {} {} hull={} {}",
                code.n(),
                code.k(),
                d,
                code.hull_dimension(),
                code.parity_class().label()
            );
        }
        CodeFile::Extension(code) => {
            let d = code.min_distance()?;
            let label = if code.is_lcd() { "LCD" } else { "NotLCD" };
            println!(
                "{} {} {} hull={} {} m={}",
                code.n(),
                code.k(),
                d,
                code.hull_dimension(),
                label,
                code.field().degree()
            );
        }
    }
    Ok(0)
}

fn emit(code: &LinearCode, out: Option<&Path>) -> Result<()> {
    let text = write_gen1(code);
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn certify(path: &Path, out_dir: Option<&Path>, format: Option<Format>) -> Result<u8> {
    let code = load_binary(path, format)?;
    let cert = certify_step_down(&code)?;
    cert.verify()?;
    let dir = match out_dir {
        Some(d) => d.to_path_buf(),
        None => path.parent().map(Path::to_path_buf).unwrap_or_default(),
    };
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("code");
    let trace = dir.join(format!("{stem}.cert.jsonl"));
    let output = dir.join(format!("{stem}.step.gen1"));
    fs::write(&trace, cert.to_json_lines()).with_context(|| format!("writing {}", trace.display()))?;
    fs::write(&output, write_gen1(&cert.output)).with_context(|| format!("writing {}", output.display()))?;
    let (n1, k, d) = cert.input_params;
    println!(
        "[{n1},{k},{d}] -> [{},{},{}] pair=({},{}) depth={}{}",
        cert.output.n(),
        cert.output.k(),
        cert.output.min_distance()?,
        cert.pair.0 + 1,
        cert.pair.1 + 1,
        cert.descent_depth,
        if cert.fallback_used { " fallback" } else { "" }
    );
    Ok(0)
}

fn dlcd_table(n_max: usize, json: bool) -> Result<u8> {
    let table = DlcdTable::compute(n_max)?;
    if json {
        let rows: Vec<_> = table
            .entries()
            .map(|((n, k), d)| serde_json::json!({ "n": n, "k": k, "d": d }))
            .collect();
        println!("{}", serde_json::to_string_pretty(&rows)?);
    } else {
        for ((n, k), d) in table.entries() {
            println!("{n} {k} {d}");
        }
    }
    let mut problems = table.closed_form_violations();
    problems.extend(table.step_violations());
    problems.extend(table.monotonicity_violations());
    for p in &problems {
        eprintln!("violation: {p}");
    }
    Ok(if problems.is_empty() { 0 } else { EXIT_FAIL })
}

fn write_outputs(outcome: &RowOutcome, dir: &Path) -> Result<()> {
    let many = outcome.outputs.len() > 1;
    for (j, code) in outcome.outputs.iter().enumerate() {
        let name = if many {
            format!("{}.{}.gen1", outcome.id, j + 1)
        } else {
            format!("{}.gen1", outcome.id)
        };
        let path = dir.join(name);
        fs::write(&path, write_gen1(code)).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

fn report(outcome: &RowOutcome) {
    let measured = match outcome.measured {
        Some((n, k, Some(d))) => format!("[{n},{k},{d}]"),
        Some((n, k, None)) => format!("[{n},{k},?]"),
        None => "-".to_string(),
    };
    let reason = match &outcome.verdict {
        Verdict::Fail(r) | Verdict::SkippedMissingSeed(r) => format!(" ({r})"),
        _ => String::new(),
    };
    println!(
        "{} {} {} {}{}",
        outcome.id,
        outcome.op,
        outcome.verdict.label(),
        measured,
        reason
    );
}

fn replay(ledger: &Path, ids: &[String], seed_dir: Option<PathBuf>, out_dir: Option<&Path>, check_bounds: bool) -> Result<u8> {
    let records = read_ledger(ledger).with_context(|| format!("reading {}", ledger.display()))?;
    if let Some(missing) = ids.iter().find(|id| !records.iter().any(|r| &r.id == *id)) {
        bail!("no ledger row with id '{missing}'");
    }
    let last = ids
        .iter()
        .filter_map(|id| records.iter().position(|r| &r.id == id))
        .max()
        .map_or(records.len(), |i| i + 1);
    if let Some(dir) = out_dir {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    let mut runner = LedgerRunner::new(seed_dir);
    let mut selected = Vec::new();
    for rec in &records[..last] {
        let outcome = runner.run(rec);
        if ids.is_empty() || ids.contains(&rec.id) {
            report(&outcome);
            if let Some(dir) = out_dir {
                write_outputs(&outcome, dir)?;
            }
            selected.push(outcome);
        }
    }
    let summary = LedgerSummary::of(&selected);
    println!(
        "summary: {} pass, {} pass-unverified-d, {} fail, {} skipped",
        summary.pass, summary.unverified, summary.fail, summary.skipped
    );
    let mut code = match summary.exit_code() {
        0 => 0,
        2 => EXIT_SKIPPED,
        _ => EXIT_FAIL,
    };
    if check_bounds {
        let bounds = BoundsLedger::published();
        let violations = bounds.consistency_violations();
        for v in &violations {
            println!("bounds violation: {v}");
        }
        println!("bounds: {} entries, {} violations", bounds.len(), violations.len());
        if !violations.is_empty() {
            code = EXIT_FAIL;
        }
    }
    Ok(code)
}
