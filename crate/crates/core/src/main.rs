use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use fuse_core::formats::parse_tag_registry;
use fuse_core::{
    compute_stats, load_corpus_with, parse_query, render, run_query, suggest_roles, write_export,
    LoadOptions, Loaded, TagRegistry, ValidationOptions,
};

/// Validate, query and export parallel treebanks with predicate-argument alignment.
#[derive(Parser)]
#[command(name = "fuse", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Args)]
struct Common {
    /// Corpus manifest.
    manifest: PathBuf,
    /// Emit JSON instead of TSV.
    #[arg(long)]
    json: bool,
    /// Allow an element to be aligned more than once per sentence pair.
    #[arg(long)]
    allow_multi_alignment: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Load and validate; print diagnostics.
    Validate(Common),
    /// Run a query, e.g. "preds class=v aligned-class=n".
    Query {
        #[command(flatten)]
        common: Common,
        query: String,
    },
    /// Corpus statistics.
    Stats(Common),
    /// Rank role names for a predicate group.
    Suggest {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        lang: String,
        #[arg(long)]
        group: String,
        /// Comma-separated roles the predicate already has.
        #[arg(long, value_delimiter = ',')]
        used: Vec<String>,
    },
    /// Write the corpus in canonical form.
    Export {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        out: PathBuf,
    },
}

const EXIT_ERRORS: u8 = 1;
const EXIT_IO: u8 = 2;

fn registry_override() -> Result<Option<TagRegistry>, String> {
    let Some(path) = std::env::var_os("FUSE_TAGS") else {
        return Ok(None);
    };
    let text = std::fs::read_to_string(&path)
        .map_err(|e| format!("ERROR\tE-IO\t{}\t{e}", Path::new(&path).display()))?;
    parse_tag_registry(&text, &TagRegistry::default())
        .map(Some)
        .map_err(|d| d.in_file(Path::new(&path).display().to_string()).to_string())
}

fn load(c: &Common) -> Result<Loaded, u8> {
    let registry = registry_override().map_err(|msg| {
        eprintln!("{msg}");
        EXIT_IO
    })?;
    let opts = LoadOptions {
        registry,
        validation: ValidationOptions { allow_multi_alignment: c.allow_multi_alignment },
    };
    Ok(load_corpus_with(&c.manifest, &opts))
}

fn report(loaded: &Loaded, json: bool) {
    eprint!("{}", render::diagnostics(&loaded.diagnostics, json));
}

fn status(loaded: &Loaded) -> u8 {
    if loaded.io_failure() {
        EXIT_IO
    } else if loaded.corpus.is_none() {
        EXIT_ERRORS
    } else {
        0
    }
}

fn run(cli: Cli) -> u8 {
    let common = match &cli.command {
        Cmd::Validate(c) | Cmd::Stats(c) => c,
        Cmd::Query { common, .. } | Cmd::Suggest { common, .. } | Cmd::Export { common, .. } => common,
    };
    // a bad query is reported before any file is read
    let query = match &cli.command {
        Cmd::Query { query, .. } => match parse_query(query) {
            Ok(q) => Some(q),
            Err(e) => {
                eprintln!("{e}");
                return EXIT_ERRORS;
            }
        },
        _ => None,
    };
    let loaded = match load(common) {
        Ok(l) => l,
        Err(code) => return code,
    };
    report(&loaded, common.json);
    let Some(corpus) = &loaded.corpus else {
        return status(&loaded);
    };
    let json = common.json;
    match &cli.command {
        Cmd::Validate(_) => {}
        Cmd::Query { .. } => {
            let q = query.expect("parsed above");
            print!("{}", render::rows(q.command, &run_query(corpus, &q), json));
        }
        Cmd::Stats(_) => print!("{}", render::stats(&compute_stats(corpus), json)),
        Cmd::Suggest { lang, group, used, .. } => {
            let used: BTreeSet<String> = used.iter().filter(|s| !s.is_empty()).cloned().collect();
            match suggest_roles(corpus, lang, group, &used) {
                Ok(s) => print!("{}", render::suggestions(&s, json)),
                Err(e) => {
                    eprintln!("ERROR\tE-REF\t-\t{e}");
                    return EXIT_ERRORS;
                }
            }
        }
        Cmd::Export { out, .. } => {
            if let Err(e) = write_export(corpus, out) {
                eprintln!("ERROR\tE-IO\t{}\t{e}", out.display());
                return EXIT_IO;
            }
        }
    }
    0
}

fn main() -> ExitCode {
    ExitCode::from(run(Cli::parse()))
}
