use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use setoperads::presentations::{extended_catalog, find_entry};

use setoperads_cli::cache::DimsCache;
use setoperads_cli::context::Settings;
use setoperads_cli::render::{self, Format};
use setoperads_cli::{catalog, classify, tables, theorem};

#[derive(Parser)]
#[command(
    name = "setoperads",
    version,
    about = "Koszulness of set-operads with one binary generator"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Highest arity computed by closure.
    #[arg(long, global = true, default_value_t = 7)]
    max_arity: usize,
    /// Series order for closed forms and equations.
    #[arg(long, global = true, default_value_t = setoperads::series::DEFAULT_ORDER)]
    order: usize,
    /// Worker threads (0 uses every core).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Directory for cached closure dimensions.
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Disable the dimension cache.
    #[arg(long, global = true)]
    no_cache: bool,
    /// Extend computed prefixes with printed table coefficients.
    #[arg(long, global = true, default_value_t = true, num_args = 0..=1,
          default_missing_value = "true", action = clap::ArgAction::Set)]
    paper_tail: bool,
}

#[derive(Subcommand)]
enum Command {
    /// List the 57 catalog entries and their isomorphism classes.
    Enumerate,
    /// Decide Koszulness of every catalog entry.
    Classify,
    /// Recompute the table of Ginzburg-Kapranov obstructions.
    Table1,
    /// Check the differential equations of the one-generator Koszul operads.
    Table2,
    /// Cross-check the list of Koszul operads.
    Theorem,
    /// Closure dimensions of one catalog entry.
    Dims { entry: String },
}

#[derive(Serialize)]
struct DimsReport {
    entry: String,
    key: String,
    dims: Vec<u64>,
}

fn settings(g: &Global) -> Settings {
    let cache = if g.no_cache {
        None
    } else {
        Some(DimsCache::new(
            g.cache_dir.clone().unwrap_or_else(DimsCache::default_dir),
        ))
    };
    Settings {
        max_arity: g.max_arity,
        order: g.order,
        paper_tail: g.paper_tail,
        cache,
        ..Settings::default()
    }
}

fn emit<T: Serialize>(
    format: Format,
    report: &T,
    text: impl FnOnce(&T) -> String,
    csv: Option<fn(&T) -> String>,
) -> Result<(), String> {
    let out = match format {
        Format::Text => text(report),
        Format::Json => render::json(report),
        Format::Csv => match csv {
            Some(f) => f(report),
            None => return Err("csv output is only available for table1 and table2".into()),
        },
    };
    print!("{out}");
    Ok(())
}

fn run(cli: &Cli) -> Result<Vec<String>, String> {
    let s = settings(&cli.global);
    let f = cli.global.format;
    let e = |e: setoperads::Error| e.to_string();
    match &cli.command {
        Command::Enumerate => {
            let r = catalog::enumerate();
            emit(f, &r, render::catalog_text, None)?;
            Ok(r.failures)
        }
        Command::Classify => {
            let r = classify::classify(&s).map_err(e)?;
            emit(f, &r, render::classify_text, None)?;
            Ok(r.failures)
        }
        Command::Table1 => {
            let r = tables::table1(&s).map_err(e)?;
            emit(f, &r, render::table1_text, Some(render::table1_csv))?;
            Ok(r.failures)
        }
        Command::Table2 => {
            let r = tables::table2(&s).map_err(e)?;
            emit(f, &r, render::table2_text, Some(render::table2_csv))?;
            Ok(r.failures)
        }
        Command::Theorem => {
            let r = theorem::theorem(&s).map_err(e)?;
            emit(f, &r, render::theorem_text, None)?;
            Ok(r.failures)
        }
        Command::Dims { entry } => {
            let catalog = extended_catalog();
            let c = find_entry(&catalog, entry).ok_or_else(|| format!("unknown entry {entry}"))?;
            let r = DimsReport {
                entry: c.name.clone(),
                key: c.congruence.key().to_string(),
                dims: s.dims(c).map_err(e)?,
            };
            emit(f, &r, |r| format!("{} {:?}\n", r.entry, r.dims), None)?;
            Ok(Vec::new())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.global.jobs > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cli.global.jobs)
            .build_global()
            .expect("thread pool configured once");
    }
    let failures = match run(&cli) {
        Ok(f) => f,
        Err(msg) => vec![msg],
    };
    if failures.is_empty() {
        ExitCode::SUCCESS
    } else {
        eprint!(
            "{}",
            render::json(&serde_json::json!({ "failures": failures }))
        );
        ExitCode::FAILURE
    }
}
