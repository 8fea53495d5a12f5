use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use chardeg_core::corpus::{builtin_group, corpus_names, BuiltGroup};
use chardeg_core::groupfile::parse_group;
use chardeg_core::report::{self, exit_codes};
use chardeg_core::verify::{hunt, run_suite, SuiteConfig, TheoremId};
use chardeg_core::{Error, Guards};

/// Exact character tables of finite permutation groups and checks relating
/// character degrees to the structure of normal subgroups.
#[derive(Parser)]
#[command(name = "chardeg", version, max_term_width = 100)]
struct Cli {
    /// Cap on enumerated group elements.
    #[arg(long, global = true)]
    element_limit: Option<usize>,
    /// Cap on the group order for character tables.
    #[arg(long, global = true)]
    table_limit: Option<usize>,
    /// Cap on the group order for full subgroup enumeration.
    #[arg(long, global = true)]
    subgroup_limit: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Source {
    /// Group file in the TOML group format.
    file: Option<PathBuf>,
    /// Builtin group name; see the `corpus` subcommand.
    #[arg(long, conflicts_with = "file")]
    builtin: Option<String>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the exact character table document of one group.
    Table {
        #[command(flatten)]
        source: Source,
    },
    /// List the normal subgroups of one group.
    Normals {
        #[command(flatten)]
        source: Source,
    },
    /// Relative character degree sets with respect to normal subgroups.
    Reldeg {
        #[command(flatten)]
        source: Source,
        /// Restrict to one tagged normal subgroup.
        #[arg(long)]
        normal: Option<String>,
    },
    /// Run the checks over one group or the whole corpus.
    Verify {
        #[command(flatten)]
        source: Source,
        /// Comma-separated ids (e.g. `TB,T6.1`) or `all`.
        #[arg(long, default_value = "all")]
        theorems: String,
        /// Emit the structured (JSON) report.
        #[arg(long)]
        structured: bool,
        /// Drop corpus entries above this order.
        #[arg(long)]
        max_order: Option<u64>,
        /// Worker threads for corpus entries.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// List the builtin corpus.
    Corpus,
    /// Emit (|cd(G|N)|, derived length, fitting height) triples over the
    /// corpus and check the degree-count bounds literally.
    Hunt {
        /// Emit structured (JSON) rows.
        #[arg(long)]
        structured: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut guards = Guards::from_env();
    if let Some(v) = cli.element_limit {
        guards.element_limit = v;
    }
    if let Some(v) = cli.table_limit {
        guards.table_limit = v;
    }
    if let Some(v) = cli.subgroup_limit {
        guards.subgroup_limit = v;
    }
    match run(cli.cmd, guards) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(report::exit_code_for(&err) as u8)
        }
    }
}

fn run(cmd: Cmd, guards: Guards) -> Result<ExitCode, Error> {
    match cmd {
        Cmd::Table { source } => {
            let built = load_one(&source, guards)?;
            print!("{}", report::render_table(&built.group)?);
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Normals { source } => {
            let built = load_one(&source, guards)?;
            print!("{}", report::render_normals(&built)?);
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Reldeg { source, normal } => {
            let built = load_one(&source, guards)?;
            print!("{}", report::render_reldeg(&built, normal.as_deref())?);
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Verify {
            source,
            theorems,
            structured,
            max_order,
            jobs,
        } => {
            let entries = load_many(&source, guards)?;
            let config = SuiteConfig {
                theorems: parse_theorems(&theorems)?,
                tagged_only: false,
                max_order,
                jobs,
                guards,
            };
            let suite = run_suite(&entries, &config);
            if structured {
                println!("{}", report::render_suite_structured(&suite));
            } else {
                print!("{}", report::render_suite_human(&suite));
            }
            if suite.has_failures() {
                Ok(ExitCode::from(exit_codes::FAIL as u8))
            } else {
                Ok(ExitCode::SUCCESS)
            }
        }
        Cmd::Corpus => {
            print!("{}", report::render_corpus());
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Hunt { structured } => {
            let entries: Vec<BuiltGroup> = corpus_names()
                .into_iter()
                .map(|name| builtin_group(name, guards))
                .collect::<Result<_, _>>()?;
            let rows = hunt(&entries)?;
            if structured {
                println!("{}", report::render_hunt_structured(&rows));
            } else {
                print!("{}", report::render_hunt_human(&rows));
            }
            let violated = rows
                .iter()
                .any(|r| !r.height_ok || !r.quadratic_ok || r.linear_ok == Some(false));
            if violated {
                Ok(ExitCode::from(exit_codes::FAIL as u8))
            } else {
                Ok(ExitCode::SUCCESS)
            }
        }
    }
}

fn load_one(source: &Source, guards: Guards) -> Result<BuiltGroup, Error> {
    match (&source.file, &source.builtin) {
        (Some(path), None) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::MalformedGroupFile(format!("{}: {e}", path.display())))?;
            parse_group(&text, guards)
        }
        (None, Some(name)) => builtin_group(name, guards),
        _ => Err(Error::MalformedGroupFile(
            "give either a group file or --builtin NAME".into(),
        )),
    }
}

fn load_many(source: &Source, guards: Guards) -> Result<Vec<BuiltGroup>, Error> {
    if source.builtin.as_deref() == Some("all") {
        return corpus_names()
            .into_iter()
            .map(|name| builtin_group(name, guards))
            .collect();
    }
    Ok(vec![load_one(source, guards)?])
}

fn parse_theorems(text: &str) -> Result<Vec<TheoremId>, Error> {
    if text.eq_ignore_ascii_case("all") {
        return Ok(TheoremId::all());
    }
    text.split(',')
        .map(|s| TheoremId::parse(s.trim()))
        .collect()
}
