//! Parallel treebanks with a predicate-argument layer and cross-lingual
//! predicate/argument alignment.
//!
//! The crate covers the data model ([`model`]), the line-based file formats
//! ([`formats`]), cross-layer validation ([`validate`]), corpus loading,
//! export and statistics ([`store`]), a small query language ([`query`]) and
//! role-name suggestions for annotators ([`suggest`]).
//!
//! ```no_run
//! use fuse_core::{load_corpus, parse_query, run_query};
//!
//! let loaded = load_corpus("corpus.manifest");
//! for d in &loaded.diagnostics {
//!     eprintln!("{d}");
//! }
//! if let Some(corpus) = loaded.corpus {
//!     let q = parse_query("preds voice=diverge").unwrap();
//!     println!("{} rows", run_query(&corpus, &q).len());
//! }
//! ```

pub mod diag;
pub mod formats;
pub mod model;
pub mod query;
pub mod registry;
pub mod render;
pub mod store;
pub mod suggest;
pub mod validate;

pub use diag::{Code, Diagnostic, Severity, Subject};
pub use model::*;
pub use query::{parse_query, run_query, Command, Query, QueryError, QueryErrorCode, ResultRow};
pub use registry::TagRegistry;
pub use store::{
    compute_stats, export, load_corpus, load_corpus_with, load_documents, write_export, CorpusStats,
    Documents, LoadOptions, Loaded, ValidCorpus, MANIFEST_NAME,
};
pub use suggest::{suggest_roles, RoleSuggestion};
pub use validate::{validate_corpus, validate_monolingual, validate_pair, validate_treebank, ValidationOptions};
