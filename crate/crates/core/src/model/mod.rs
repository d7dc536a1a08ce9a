//! In-memory representation of the four annotation layers: phrasal trees,
//! bindings, predicate-argument structures and cross-lingual alignments.
//!
//! Everything here is plain immutable data once built. A loaded corpus can
//! be shared between threads and queried concurrently.

mod alignment;
mod annotation;
mod tree;

use thiserror::Error;

pub use alignment::{
    AlignKind, Alignment, PairSet, ParallelCorpus, SentencePairAlignment, SentenceRef, Treebank,
};
pub use annotation::{
    Argument, Binding, Element, ElementRef, ElementRefError, MonolingualAnnotation, PredArgLayer,
    PredClass, PredClassError, Predicate,
};
pub use tree::{
    is_contiguous, NodeRef, NodeRefError, NonTerminal, SentenceTree, Token, TreeError, YieldError,
    FIRST_NONTERMINAL_ID,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ResolveError {
    #[error("sentence {sentence}: no node {node}")]
    UnknownNode { sentence: String, node: NodeRef },
    #[error("sentence {sentence}: no predicate {pred}")]
    UnknownPredicate { sentence: String, pred: String },
    #[error("sentence {sentence}: predicate {pred} has no argument {role}")]
    UnknownRole { sentence: String, pred: String, role: String },
    #[error("unknown language `{0}`")]
    UnknownLanguage(String),
    #[error("no sentence {0}")]
    UnknownSentence(SentenceRef),
}

/// Sentence, predicate and language identifiers: ASCII letters, digits,
/// `_` and `-`.
pub fn is_identifier(s: &str) -> bool {
    !s.is_empty()
        && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-')
}

/// Lemmas, group names and role names: Unicode uppercase letters plus `_`
/// and `-`. No case folding is applied anywhere.
pub fn is_upper_name(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_uppercase() || c == '_' || c == '-')
}

/// Binding and alignment tag names.
pub fn is_tag_name(s: &str) -> bool {
    !s.is_empty() && !s.chars().any(|c| c.is_whitespace() || c == ',' || c == '=')
}
