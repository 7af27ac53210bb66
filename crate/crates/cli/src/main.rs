mod report;
mod selftest;
mod stages;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use picard_core::curve::WeierstrassFamily;
use picard_core::search::{run_all_shards, run_shard_until, SearchBox, SearchConfig, DEFAULT_DEPTH};
use picard_core::Error;

use report::{Report, RunManifest, EXIT_INPUT_ERROR};
use stages::{Context, Stage};

#[derive(Parser)]
#[command(name = "picard", version, about = "Picard-Fuchs equations, integrality and growth of periods of elliptic families")]
struct Cli {
    /// Write the report to this file instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Emit the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Decimal digits printed for real constants and enclosures.
    #[arg(long, global = true, default_value_t = 30, value_name = "DIGITS")]
    precision: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct AsymptoticArgs {
    /// Closed-form constant to compare with (gamma1_7, gamma_8_4_1_2, gamma1_10);
    /// defaults to the family name when it is one of these.
    #[arg(long)]
    group: Option<String>,
    /// Index of the upper-bound tail window.
    #[arg(long = "tail-n", default_value_t = 100_000)]
    tail_n: usize,
    /// Seed index of the lower-bound sequence.
    #[arg(long = "seed-m", default_value_t = 10_000)]
    seed_m: usize,
}

#[derive(Args, Clone)]
struct CongruenceArgs {
    /// Largest prime in the sweep.
    #[arg(long, default_value_t = 50)]
    p_max: u64,
    /// Largest prime power exponent.
    #[arg(long, default_value_t = 2)]
    r_max: u32,
    /// Largest index m·p^r checked.
    #[arg(long, default_value_t = 2000)]
    n_max: usize,
}

#[derive(Subcommand)]
enum Command {
    /// 12g2, -216g3, discriminant, j and the nu/delta values.
    Invariants { family: PathBuf },
    /// The Picard-Fuchs operator and its coefficient recurrences.
    Ode { family: PathBuf },
    /// Holomorphic solution at t = 0 through u_N.
    Series { family: PathBuf, n: usize },
    /// Solution at infinity through v_N.
    SeriesInf { family: PathBuf, n: usize },
    /// Certified integral level with per-prime exponents.
    Level {
        family: PathBuf,
        /// Terms scanned for the empirical exponents.
        #[arg(long, default_value_t = 200)]
        terms: usize,
    },
    /// p-adic sharpening of the scaled recurrence.
    Reduce {
        family: PathBuf,
        /// Single prime; defaults to every prime dividing the bound.
        #[arg(long)]
        prime: Option<u64>,
    },
    /// Verrill identity and Atkin-Swinnerton-Dyer sweep (level 7).
    Congruence {
        family: PathBuf,
        #[command(flatten)]
        args: CongruenceArgs,
    },
    /// Characteristic polynomial, dominant root and the l0 bracket.
    Asymptotics {
        family: PathBuf,
        #[command(flatten)]
        args: AsymptoticArgs,
    },
    /// Several stages in one report; without stage flags all of them run.
    Pipeline {
        family: PathBuf,
        #[arg(long)]
        ode: bool,
        /// Series at t = 0 through u_N (20 when all stages run).
        #[arg(long, value_name = "N")]
        series: Option<usize>,
        /// Series at infinity through v_N.
        #[arg(long, value_name = "N")]
        series_inf: Option<usize>,
        #[arg(long)]
        level: bool,
        #[arg(long)]
        asymptotics: bool,
        #[arg(long)]
        congruence: bool,
        /// Terms used to measure denominators in the level stage.
        #[arg(long, default_value_t = 200)]
        level_terms: usize,
        #[command(flatten)]
        asym: AsymptoticArgs,
        #[command(flatten)]
        cong: CongruenceArgs,
    },
    /// Sharded integrality search over a box of operator parameters.
    Search(SearchArgs),
    /// Runs the golden-vector suite.
    Selftest {
        /// Only vectors whose name contains this string.
        #[arg(long)]
        filter: Option<String>,
        /// Alternative vector store.
        #[arg(long, value_name = "FILE")]
        store: Option<PathBuf>,
    },
}

#[derive(Args)]
struct SearchArgs {
    /// `default`, `around:<b3,...,c2>:<radius>`, or `name=lo..hi,...`.
    #[arg(long = "box", default_value = "default")]
    search_box: String,
    /// Coefficients that must be integral for a tuple to survive.
    #[arg(long, default_value_t = DEFAULT_DEPTH)]
    depth: usize,
    #[arg(long, default_value_t = 1)]
    shards: u64,
    /// Run only this shard; all shards otherwise.
    #[arg(long)]
    shard_index: Option<u64>,
    /// Tuples between checkpoints.
    #[arg(long, default_value_t = 10_000)]
    checkpoint_every: u64,
    /// Directory for survivor and checkpoint files.
    #[arg(long, value_name = "DIR", default_value = "search-out")]
    work_dir: PathBuf,
    /// Stop after this many tuples (resumable).
    #[arg(long)]
    max_tuples: Option<u64>,
    /// Accept boxes reaching c2 < 0 (normally excluded by the t -> -t symmetry).
    #[arg(long)]
    allow_negative_c2: bool,
    /// Probe tuples with b3 = c5 = 0 instead of skipping them.
    #[arg(long)]
    include_order_three: bool,
}

fn input_error(e: &Error, json_mode: bool) -> ExitCode {
    eprintln!("error: {e}");
    if json_mode {
        let mut v = json!({ "status": "input_error", "error": { "kind": stages::error_kind(e), "message": e.to_string() } });
        if let Error::Parse { line, col, .. } = e {
            v["error"]["line"] = json!(line.to_string());
            v["error"]["column"] = json!(col.to_string());
        }
        println!("{v}");
    }
    ExitCode::from(EXIT_INPUT_ERROR)
}

fn load_family(path: &Path) -> Result<(WeierstrassFamily, Value), Error> {
    let bytes = fs::read(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let text = String::from_utf8(bytes.clone())
        .map_err(|_| Error::Parse { line: 1, col: 1, msg: "file is not UTF-8".into() })?;
    let fam = WeierstrassFamily::parse(&text)?;
    Ok((fam, RunManifest::file_input(path, &bytes)))
}

fn family_report(cmd: &str, path: &Path, stages: Vec<Stage>, digits: usize) -> Result<Report, Error> {
    let (fam, input) = load_family(path)?;
    let config = json!({
        "precision": digits,
        "stages": stages.iter().map(|s| json!({ "stage": s.name(), "config": s.config() })).collect::<Vec<_>>(),
    });
    let mut report = Report::new(RunManifest::new(cmd, input, config), Some(fam.name.clone()));
    let mut ctx = Context::new(fam, digits);
    for s in &stages {
        let t = Instant::now();
        let r = ctx.run(s);
        report.push(s.name(), t.elapsed(), r);
    }
    Ok(report)
}

fn asym_stage(a: &AsymptoticArgs) -> Stage {
    Stage::Asymptotics { n: a.tail_n, m: a.seed_m, group: a.group.clone() }
}

fn cong_stage(c: &CongruenceArgs) -> Stage {
    Stage::Congruence { p_max: c.p_max, r_max: c.r_max, n_max: c.n_max }
}

fn search_report(a: &SearchArgs) -> Result<Report, Error> {
    let cfg = SearchConfig {
        search_box: SearchBox::parse(&a.search_box)?,
        depth: a.depth,
        shard_index: a.shard_index.unwrap_or(0),
        shard_count: a.shards,
        checkpoint_every: a.checkpoint_every,
        include_order_three: a.include_order_three,
        allow_negative_c2: a.allow_negative_c2,
    };
    cfg.validate()?;
    let cfg_json = serde_json::to_value(&cfg).map_err(|e| Error::Config(e.to_string()))?;
    let input = json!({ "search_box": cfg.search_box.spec_string(), "sha256": report::sha256_hex(cfg_json.to_string().as_bytes()) });
    let config = json!({
        "search": cfg_json,
        "work_dir": a.work_dir.display().to_string(),
        "max_tuples": a.max_tuples,
        "all_shards": a.shard_index.is_none(),
        "prune": "first non-integral coefficient up to the depth",
    });
    let mut report = Report::new(RunManifest::new("search", input, config), None);
    fs::create_dir_all(&a.work_dir)?;
    let t = Instant::now();
    let result = if a.shard_index.is_none() && a.max_tuples.is_none() {
        run_all_shards(&cfg, &a.work_dir)
    } else if a.shard_index.is_none() {
        (0..cfg.shard_count).map(|i| run_shard_until(&cfg.with_shard(i, cfg.shard_count), &a.work_dir, a.max_tuples)).collect()
    } else {
        run_shard_until(&cfg, &a.work_dir, a.max_tuples).map(|r| vec![r])
    };
    let result = result.map(|reports| {
        json!({
            "box_size": cfg.search_box.len(),
            "complete": reports.iter().all(|r| r.complete),
            "survivor_count": reports.iter().map(|r| r.survivors.len()).sum::<usize>(),
            "shards": reports.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
        })
    });
    report.push("search", t.elapsed(), result);
    Ok(report)
}

fn selftest_report(filter: Option<&str>, store: Option<&Path>) -> Result<Report, Error> {
    let (text, input) = match store {
        Some(p) => {
            let bytes = fs::read(p).map_err(|e| Error::Io(format!("{}: {e}", p.display())))?;
            let input = RunManifest::file_input(p, &bytes);
            (String::from_utf8_lossy(&bytes).into_owned(), input)
        }
        None => (
            selftest::EMBEDDED_STORE.to_string(),
            json!({ "path": "embedded", "sha256": report::sha256_hex(selftest::EMBEDDED_STORE.as_bytes()) }),
        ),
    };
    let vectors = selftest::load_store(&text)?;
    let selected: Vec<_> = vectors.iter().filter(|v| filter.is_none_or(|f| v.name.contains(f))).collect();
    if selected.is_empty() {
        return Err(Error::Config(format!("no vector matches the filter {filter:?}")));
    }
    let mut report = Report::new(RunManifest::new("selftest", input, json!({ "filter": filter })), None);
    report.compact = true;
    for v in selected {
        let t = Instant::now();
        let r = selftest::run_vector(v);
        report.push(&v.name, t.elapsed(), r);
    }
    Ok(report)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let digits = cli.precision;
    let built = match &cli.command {
        Command::Invariants { family } => family_report("invariants", family, vec![Stage::Invariants], digits),
        Command::Ode { family } => family_report("ode", family, vec![Stage::Ode], digits),
        Command::Series { family, n } => family_report("series", family, vec![Stage::Series(*n)], digits),
        Command::SeriesInf { family, n } => family_report("series-inf", family, vec![Stage::SeriesInfinity(*n)], digits),
        Command::Level { family, terms } => family_report("level", family, vec![Stage::Level { terms: *terms }], digits),
        Command::Reduce { family, prime } => family_report("reduce", family, vec![Stage::Reduce { prime: *prime }], digits),
        Command::Congruence { family, args } => family_report("congruence", family, vec![cong_stage(args)], digits),
        Command::Asymptotics { family, args } => family_report("asymptotics", family, vec![asym_stage(args)], digits),
        Command::Pipeline { family, ode, series, series_inf, level, asymptotics, congruence, level_terms, asym, cong } => {
            let all = !(*ode || series.is_some() || series_inf.is_some() || *level || *asymptotics || *congruence);
            let mut stages = vec![Stage::Invariants];
            if all || *ode {
                stages.push(Stage::Ode);
            }
            if all || series.is_some() {
                stages.push(Stage::Series(series.unwrap_or(20)));
            }
            if all || series_inf.is_some() {
                stages.push(Stage::SeriesInfinity(series_inf.unwrap_or(20)));
            }
            if all || *level {
                stages.push(Stage::Level { terms: *level_terms });
            }
            if all || *asymptotics {
                stages.push(asym_stage(asym));
            }
            if all || *congruence {
                stages.push(cong_stage(cong));
            }
            family_report("pipeline", family, stages, digits)
        }
        Command::Search(a) => search_report(a),
        Command::Selftest { filter, store } => selftest_report(filter.as_deref(), store.as_deref()),
    };
    let report = match built {
        Ok(r) => r,
        Err(e) => return input_error(&e, cli.json),
    };
    let text = if cli.json {
        let mut s = serde_json::to_string_pretty(&report.to_json()).expect("serializable report");
        s.push('\n');
        s
    } else {
        report.to_table()
    };
    let written = match &cli.out {
        Some(p) => fs::write(p, &text),
        None => std::io::stdout().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write report: {e}");
        return ExitCode::from(EXIT_INPUT_ERROR);
    }
    ExitCode::from(report.exit_code())
}
