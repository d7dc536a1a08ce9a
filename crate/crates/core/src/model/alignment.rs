use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use super::{ElementRef, MonolingualAnnotation};
use crate::registry::TagRegistry;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AlignKind {
    Pred,
    Arg,
}

impl AlignKind {
    pub fn as_str(self) -> &'static str {
        match self {
            AlignKind::Pred => "pred",
            AlignKind::Arg => "arg",
        }
    }

    /// Line keyword in the alignment file format.
    pub fn keyword(self) -> &'static str {
        match self {
            AlignKind::Pred => "PALIGN",
            AlignKind::Arg => "AALIGN",
        }
    }

    pub fn matches(self, element: &ElementRef) -> bool {
        match self {
            AlignKind::Pred => element.is_predicate(),
            AlignKind::Arg => !element.is_predicate(),
        }
    }
}

impl fmt::Display for AlignKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Alignment {
    pub kind: AlignKind,
    pub left: ElementRef,
    pub right: ElementRef,
    pub tag: Option<String>,
}

impl Alignment {
    pub fn preds(left: &str, right: &str) -> Self {
        Alignment {
            kind: AlignKind::Pred,
            left: ElementRef::predicate(left),
            right: ElementRef::predicate(right),
            tag: None,
        }
    }

    pub fn args(left: ElementRef, right: ElementRef) -> Self {
        Alignment { kind: AlignKind::Arg, left, right, tag: None }
    }

    pub fn with_tag(mut self, tag: impl Into<String>) -> Self {
        self.tag = Some(tag.into());
        self
    }
}

/// A sentence qualified by its language, written `en:s1`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SentenceRef {
    pub lang: String,
    pub sentence: String,
}

impl SentenceRef {
    pub fn new(lang: impl Into<String>, sentence: impl Into<String>) -> Self {
        SentenceRef { lang: lang.into(), sentence: sentence.into() }
    }
}

impl fmt::Display for SentenceRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.lang, self.sentence)
    }
}

/// The alignment layer of one sentence pair. Alignments keep document order;
/// equality ignores it.
#[derive(Debug, Clone, Eq)]
pub struct SentencePairAlignment {
    pub left: SentenceRef,
    pub right: SentenceRef,
    pub alignments: Vec<Alignment>,
}

impl SentencePairAlignment {
    pub fn new(left: SentenceRef, right: SentenceRef) -> Self {
        SentencePairAlignment { left, right, alignments: Vec::new() }
    }

    pub fn key(&self) -> (String, String) {
        (self.left.sentence.clone(), self.right.sentence.clone())
    }

    pub fn sorted_alignments(&self) -> Vec<&Alignment> {
        let mut v: Vec<_> = self.alignments.iter().collect();
        v.sort();
        v
    }
}

impl PartialEq for SentencePairAlignment {
    fn eq(&self, other: &Self) -> bool {
        self.left == other.left
            && self.right == other.right
            && self.sorted_alignments() == other.sorted_alignments()
    }
}

/// All sentences of one language, keyed by sentence id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Treebank {
    pub lang: String,
    pub sentences: BTreeMap<String, MonolingualAnnotation>,
}

impl Treebank {
    pub fn new(lang: impl Into<String>) -> Self {
        Treebank { lang: lang.into(), sentences: BTreeMap::new() }
    }

    pub fn insert(&mut self, annotation: MonolingualAnnotation) {
        self.sentences.insert(annotation.id().to_string(), annotation);
    }

    pub fn sentence(&self, id: &str) -> Option<&MonolingualAnnotation> {
        self.sentences.get(id)
    }
}

/// The sentence pairs aligned between two languages.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairSet {
    pub left_lang: String,
    pub right_lang: String,
    pub pairs: BTreeMap<(String, String), SentencePairAlignment>,
}

impl PairSet {
    pub fn new(left_lang: impl Into<String>, right_lang: impl Into<String>) -> Self {
        PairSet {
            left_lang: left_lang.into(),
            right_lang: right_lang.into(),
            pairs: BTreeMap::new(),
        }
    }

    pub fn insert(&mut self, pair: SentencePairAlignment) {
        self.pairs.insert(pair.key(), pair);
    }

    pub fn key(&self) -> (String, String) {
        (self.left_lang.clone(), self.right_lang.clone())
    }
}

/// Union of monolingual treebanks and the pair sets that fuse them.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ParallelCorpus {
    pub treebanks: BTreeMap<String, Treebank>,
    pub pair_sets: BTreeMap<(String, String), PairSet>,
    pub registry: TagRegistry,
}

impl ParallelCorpus {
    pub fn new(registry: TagRegistry) -> Self {
        ParallelCorpus { registry, ..Default::default() }
    }

    pub fn add_treebank(&mut self, tb: Treebank) {
        self.treebanks.insert(tb.lang.clone(), tb);
    }

    pub fn add_pair_set(&mut self, ps: PairSet) {
        self.pair_sets.insert(ps.key(), ps);
    }

    pub fn treebank(&self, lang: &str) -> Option<&Treebank> {
        self.treebanks.get(lang)
    }

    pub fn sentence(&self, r: &SentenceRef) -> Option<&MonolingualAnnotation> {
        self.treebank(&r.lang).and_then(|tb| tb.sentence(&r.sentence))
    }

    /// Pairs across all pair sets in deterministic order.
    pub fn pairs(&self) -> impl Iterator<Item = &SentencePairAlignment> {
        self.pair_sets.values().flat_map(|ps| ps.pairs.values())
    }
}
