//! Cross-layer well-formedness checks.
//!
//! Structural impossibilities are errors. The only warning is the role
//! near-duplicate heuristic: whether two role names in a predicate group
//! mean the same thing is an annotator's call, but an edit distance of one
//! is usually a typo. Unaligned elements are never reported.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use crate::diag::{normalize, Code, Diagnostic, Subject};
use crate::model::{
    AlignKind, ElementRef, MonolingualAnnotation, ParallelCorpus, SentencePairAlignment, Treebank,
};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ValidationOptions {
    /// Allow an element to take part in more than one alignment per pair.
    pub allow_multi_alignment: bool,
}

/// Minimum length (in characters) for the edit-distance clause of the
/// near-duplicate check.
pub const NEAR_DUP_MIN_LEN: usize = 4;

/// Case-insensitive equality, or Levenshtein distance 1 between names of at
/// least [`NEAR_DUP_MIN_LEN`] characters.
pub fn near_duplicate(a: &str, b: &str) -> bool {
    if a == b {
        return false;
    }
    if a.to_lowercase() == b.to_lowercase() {
        return true;
    }
    let long_enough = a.chars().count() >= NEAR_DUP_MIN_LEN && b.chars().count() >= NEAR_DUP_MIN_LEN;
    long_enough && strsim::levenshtein(a, b) <= 1
}

pub fn validate_monolingual(annotation: &MonolingualAnnotation) -> Vec<Diagnostic> {
    let mut out = sentence_checks(annotation, None);
    out.extend(role_consistency(std::iter::once(annotation), None));
    normalize(&mut out);
    out
}

/// Per-sentence checks for every sentence, plus the role near-duplicate
/// check over each predicate group's treebank-wide role inventory.
pub fn validate_treebank(tb: &Treebank) -> Vec<Diagnostic> {
    let lang = Some(tb.lang.as_str());
    let mut out: Vec<_> = tb.sentences.values().flat_map(|a| sentence_checks(a, lang)).collect();
    out.extend(role_consistency(tb.sentences.values(), lang));
    normalize(&mut out);
    out
}

pub fn validate_corpus(corpus: &ParallelCorpus, opts: &ValidationOptions) -> Vec<Diagnostic> {
    let mut out: Vec<_> = corpus.treebanks.values().flat_map(validate_treebank).collect();
    for pair in corpus.pairs() {
        out.extend(validate_pair(corpus, pair, opts));
    }
    normalize(&mut out);
    out
}

fn element_subject(lang: Option<&str>, sentence: &str, element: &ElementRef) -> Subject {
    Subject::Element {
        lang: lang.map(str::to_string),
        sentence: sentence.to_string(),
        element: element.clone(),
    }
}

fn sentence_checks(a: &MonolingualAnnotation, lang: Option<&str>) -> Vec<Diagnostic> {
    let sid = a.id();
    let tree = &a.tree;
    let layer = &a.layer;
    let mut out = Vec::new();
    let mut report = |code: Code, el: &ElementRef, msg: String| {
        out.push(Diagnostic::new(code, format!("{sid}: {msg}")).about(element_subject(lang, sid, el)));
    };

    for el in layer.elements() {
        if layer.binding(&el).is_none() {
            let what = if el.is_predicate() { "predicate" } else { "argument" };
            report(Code::BindMissing, &el, format!("{what} {el} has no binding"));
        }
        if !el.is_predicate() && !layer.predicates.contains_key(&el.pred) {
            report(Code::Order, &el, format!("argument {el} has no predicate {}", el.pred));
        }
    }

    // yields of structurally sound bindings only
    let mut yields: BTreeMap<&ElementRef, BTreeSet<u32>> = BTreeMap::new();
    for (el, b) in &layer.bindings {
        let exists = match &el.role {
            None => layer.predicates.contains_key(&el.pred),
            Some(_) => layer.arguments.iter().any(|x| ElementRef::from(x) == *el),
        };
        if !exists || b.target != *el {
            report(Code::BindDangle, el, format!("binding target {el} is not an element of this sentence"));
            continue;
        }
        if !el.is_predicate() && !b.tags.is_empty() {
            let tags: Vec<_> = b.tags.iter().map(String::as_str).collect();
            report(Code::TagOnArg, el, format!("argument binding {el} carries tags {}", tags.join(",")));
        }
        let dangling: Vec<String> = b.nodes().filter(|n| !tree.contains(*n)).map(|n| n.to_string()).collect();
        if !dangling.is_empty() {
            report(Code::BindDangle, el, format!("binding of {el} names nodes not in the tree: {}", dangling.join(",")));
            continue;
        }
        let nested: Vec<String> = b
            .included
            .iter()
            .flat_map(|&x| b.included.iter().filter(move |&&y| tree.dominates(x, y)).map(move |y| format!("{x}>{y}")))
            .collect();
        if !nested.is_empty() {
            report(Code::InclNested, el, format!("included nodes of {el} are nested: {}", nested.join(",")));
            continue;
        }
        let stray: Vec<String> = b
            .excluded
            .iter()
            .filter(|&&x| !b.included.iter().any(|&i| tree.dominates(i, x)))
            .map(|x| x.to_string())
            .collect();
        if !stray.is_empty() {
            report(
                Code::ExclNotDesc,
                el,
                format!("excluded nodes of {el} are not below an included node: {}", stray.join(",")),
            );
            continue;
        }
        match tree.resolve_yield(b) {
            Ok(y) => {
                yields.insert(el, y.into_iter().collect());
            }
            Err(_) => report(Code::YieldEmpty, el, format!("binding of {el} covers no token")),
        }
    }

    for arg in &layer.arguments {
        let el = ElementRef::from(arg);
        let (Some(ay), Some(py)) = (yields.get(&el), yields.get(&el.owner())) else {
            continue;
        };
        let shared: Vec<String> = ay.intersection(py).map(|i| format!("t{i}")).collect();
        if !shared.is_empty() {
            report(
                Code::Recursion,
                &el,
                format!("argument {el} overlaps its predicate's yield at {}", shared.join(",")),
            );
        }
    }
    out
}

fn role_consistency<'a>(
    sentences: impl Iterator<Item = &'a MonolingualAnnotation>,
    lang: Option<&str>,
) -> Vec<Diagnostic> {
    // group -> role -> first place it was seen
    let mut inventory: BTreeMap<&str, BTreeMap<&str, (&str, ElementRef)>> = BTreeMap::new();
    for a in sentences {
        for arg in a.arguments() {
            let Some(pred) = a.predicate(&arg.pred) else { continue };
            inventory
                .entry(&pred.group)
                .or_default()
                .entry(&arg.role)
                .or_insert((a.id(), ElementRef::from(arg)));
        }
    }
    let mut out = Vec::new();
    for (group, roles) in &inventory {
        let names: Vec<&&str> = roles.keys().collect();
        for (i, a) in names.iter().enumerate() {
            for b in &names[i + 1..] {
                if near_duplicate(a, b) {
                    let (sid, el) = &roles[**b];
                    out.push(
                        Diagnostic::new(
                            Code::RoleNearDup,
                            format!("group {group}: role {b} looks like a variant of {a}"),
                        )
                        .about(element_subject(lang, sid, el)),
                    );
                }
            }
        }
    }
    out
}

pub fn validate_pair(
    corpus: &ParallelCorpus,
    pair: &SentencePairAlignment,
    opts: &ValidationOptions,
) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    let pair_subject = Subject::Pair { left: pair.left.clone(), right: pair.right.clone() };
    let (left, right) = (corpus.sentence(&pair.left), corpus.sentence(&pair.right));
    for (r, s) in [(&pair.left, left), (&pair.right, right)] {
        if s.is_none() {
            out.push(
                Diagnostic::new(Code::SentUnknown, format!("pair names unknown sentence {r}"))
                    .about(pair_subject.clone()),
            );
        }
    }
    let (Some(left), Some(right)) = (left, right) else {
        return out;
    };

    let label = format!("{} {}", pair.left, pair.right);
    let mut seen_left = HashSet::new();
    let mut seen_right = HashSet::new();
    let mut pred_links = HashSet::new();
    let mut arg_links = Vec::new();
    for (index, a) in pair.alignments.iter().enumerate() {
        let subject = Subject::Alignment { left: pair.left.clone(), right: pair.right.clone(), index };
        let mut report = |code: Code, msg: String| {
            out.push(Diagnostic::new(code, format!("{label}: {msg}")).about(subject.clone()));
        };
        let shown = format!("{} {} {}", a.kind.keyword(), a.left, a.right);
        if let Some(t) = &a.tag {
            if !corpus.registry.is_alignment_tag(t) {
                report(Code::AlignTag, format!("{shown}: unregistered alignment tag `{t}`"));
            }
        }
        let unresolved: Vec<String> = [(left, &a.left, &pair.left), (right, &a.right, &pair.right)]
            .into_iter()
            .filter_map(|(s, el, r)| s.element_of(el).err().map(|_| format!("{r} {el}")))
            .collect();
        if !unresolved.is_empty() {
            report(Code::AlignDangle, format!("{shown}: unresolvable {}", unresolved.join(", ")));
            continue;
        }
        if !a.kind.matches(&a.left) || !a.kind.matches(&a.right) {
            let want = match a.kind {
                AlignKind::Pred => "two predicates",
                AlignKind::Arg => "two arguments",
            };
            report(Code::AlignKind, format!("{shown}: {} must join {want}", a.kind.keyword()));
            continue;
        }
        if !opts.allow_multi_alignment {
            let mut reused = Vec::new();
            if !seen_left.insert(&a.left) {
                reused.push(format!("{} {}", pair.left, a.left));
            }
            if !seen_right.insert(&a.right) {
                reused.push(format!("{} {}", pair.right, a.right));
            }
            if !reused.is_empty() {
                report(Code::AlignDup, format!("{shown}: already aligned: {}", reused.join(", ")));
            }
        }
        match a.kind {
            AlignKind::Pred => {
                pred_links.insert((&a.left.pred, &a.right.pred));
            }
            AlignKind::Arg => arg_links.push((index, a)),
        }
    }
    for (index, a) in arg_links {
        if !pred_links.contains(&(&a.left.pred, &a.right.pred)) {
            out.push(
                Diagnostic::new(
                    Code::AlignOrphanArg,
                    format!(
                        "{label}: AALIGN {} {} is not licensed: predicates {} and {} are not aligned",
                        a.left, a.right, a.left.pred, a.right.pred
                    ),
                )
                .about(Subject::Alignment { left: pair.left.clone(), right: pair.right.clone(), index }),
            );
        }
    }
    normalize(&mut out);
    out
}
