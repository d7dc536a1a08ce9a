use std::collections::{BTreeMap, BTreeSet, HashSet};

use super::{Command, Filter, Key, Query};
use crate::model::{AlignKind, ElementRef, MonolingualAnnotation, Predicate, SentenceRef};
use crate::store::ValidCorpus;

/// What a result row is anchored to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RowRef {
    Pair { left: SentenceRef, right: SentenceRef },
    Sentence(SentenceRef),
    Language(String),
}

/// One result; `values` line up with [`Command::columns`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResultRow {
    pub reference: RowRef,
    pub values: Vec<String>,
}

impl ResultRow {
    pub fn get(&self, command: Command, column: &str) -> Option<&str> {
        let i = command.columns().iter().position(|c| *c == column)?;
        self.values.get(i).map(String::as_str)
    }
}

const NONE: &str = "-";

fn list<'a>(items: impl IntoIterator<Item = &'a String>) -> String {
    let v: Vec<&str> = items.into_iter().map(String::as_str).collect();
    if v.is_empty() {
        NONE.to_string()
    } else {
        v.join(",")
    }
}

fn tags_of<'a>(a: &'a MonolingualAnnotation, pred: &str) -> &'a BTreeSet<String> {
    static EMPTY: BTreeSet<String> = BTreeSet::new();
    a.binding(&ElementRef::predicate(pred)).map(|b| &b.tags).unwrap_or(&EMPTY)
}

fn all(q: &Query, key: Key, pass: impl FnMut(&Filter) -> bool) -> bool {
    q.filters(key).all(pass)
}

/// Evaluates `query`. Rows come out ordered by pair set, pair, and element
/// (or by language, sentence and element for monolingual commands).
pub fn run_query(corpus: &ValidCorpus, query: &Query) -> Vec<ResultRow> {
    match query.command {
        Command::Preds => preds(corpus, query),
        Command::Aligns => aligns(corpus, query),
        Command::Unaligned => unaligned(corpus, query),
        Command::Realizations => realizations(corpus, query),
        Command::Frames => frames(corpus, query),
    }
}

fn predicate_passes(q: &Query, key_lemma: Key, key_group: Key, key_class: Key, p: &Predicate) -> bool {
    all(q, key_lemma, |f| f.test(Some(&p.lemma)))
        && all(q, key_group, |f| f.test(Some(&p.group)))
        && all(q, key_class, |f| f.test(Some(p.class.as_str())))
}

fn preds(corpus: &ValidCorpus, q: &Query) -> Vec<ResultRow> {
    let mut rows = Vec::new();
    for pair in corpus.pairs() {
        let (Some(ls), Some(rs)) = (corpus.sentence(&pair.left), corpus.sentence(&pair.right)) else {
            continue;
        };
        for a in pair.sorted_alignments() {
            if a.kind != AlignKind::Pred {
                continue;
            }
            let (Some(lp), Some(rp)) = (ls.predicate(&a.left.pred), rs.predicate(&a.right.pred)) else {
                continue;
            };
            let (lt, rt) = (tags_of(ls, &lp.id), tags_of(rs, &rp.id));
            let diverge = lt.contains("pv") != rt.contains("pv");
            let keep = predicate_passes(q, Key::Lemma, Key::Group, Key::Class, lp)
                && predicate_passes(q, Key::AlignedLemma, Key::AlignedGroup, Key::AlignedClass, rp)
                && all(q, Key::Tag, |f| f.test_member(lt.iter().map(String::as_str)))
                && all(q, Key::AlignedTag, |f| f.test_member(rt.iter().map(String::as_str)))
                && all(q, Key::Atag, |f| f.test(a.tag.as_deref()))
                && all(q, Key::Voice, |f| f.test(diverge.then_some("diverge")));
            if !keep {
                continue;
            }
            rows.push(ResultRow {
                reference: RowRef::Pair { left: pair.left.clone(), right: pair.right.clone() },
                values: vec![
                    pair.left.to_string(),
                    pair.right.to_string(),
                    lp.id.clone(),
                    lp.lemma.clone(),
                    lp.class.to_string(),
                    list(lt),
                    rp.id.clone(),
                    rp.lemma.clone(),
                    rp.class.to_string(),
                    list(rt),
                    a.tag.clone().unwrap_or_else(|| NONE.into()),
                ],
            });
        }
    }
    rows
}

fn label(a: &MonolingualAnnotation, el: &ElementRef) -> String {
    match &el.role {
        Some(r) => r.clone(),
        None => a.predicate(&el.pred).map(|p| p.lemma.clone()).unwrap_or_default(),
    }
}

fn aligns(corpus: &ValidCorpus, q: &Query) -> Vec<ResultRow> {
    let mut rows = Vec::new();
    for pair in corpus.pairs() {
        let (Some(ls), Some(rs)) = (corpus.sentence(&pair.left), corpus.sentence(&pair.right)) else {
            continue;
        };
        for a in pair.sorted_alignments() {
            let keep = all(q, Key::Kind, |f| f.test(Some(a.kind.as_str())))
                && all(q, Key::Atag, |f| f.test(a.tag.as_deref()));
            if !keep {
                continue;
            }
            rows.push(ResultRow {
                reference: RowRef::Pair { left: pair.left.clone(), right: pair.right.clone() },
                values: vec![
                    pair.left.to_string(),
                    pair.right.to_string(),
                    a.kind.to_string(),
                    a.left.to_string(),
                    label(ls, &a.left),
                    a.right.to_string(),
                    label(rs, &a.right),
                    a.tag.clone().unwrap_or_else(|| NONE.into()),
                ],
            });
        }
    }
    rows
}

fn unaligned(corpus: &ValidCorpus, q: &Query) -> Vec<ResultRow> {
    let mut aligned: HashSet<(&SentenceRef, &ElementRef)> = HashSet::new();
    for pair in corpus.pairs() {
        for a in &pair.alignments {
            aligned.insert((&pair.left, &a.left));
            aligned.insert((&pair.right, &a.right));
        }
    }
    let mut rows = Vec::new();
    for (lang, tb) in &corpus.treebanks {
        if !all(q, Key::Lang, |f| f.test(Some(lang))) {
            continue;
        }
        for (sid, a) in &tb.sentences {
            let sref = SentenceRef::new(lang.clone(), sid.clone());
            for el in a.layer.elements() {
                let kind = if el.is_predicate() { AlignKind::Pred } else { AlignKind::Arg };
                if aligned.contains(&(&sref, &el)) || !all(q, Key::Kind, |f| f.test(Some(kind.as_str()))) {
                    continue;
                }
                let Some(p) = a.predicate(&el.pred) else { continue };
                rows.push(ResultRow {
                    reference: RowRef::Sentence(sref.clone()),
                    values: vec![
                        sref.to_string(),
                        kind.to_string(),
                        el.to_string(),
                        p.lemma.clone(),
                        p.class.to_string(),
                        el.role.clone().unwrap_or_else(|| NONE.into()),
                    ],
                });
            }
        }
    }
    rows
}

fn realizations(corpus: &ValidCorpus, q: &Query) -> Vec<ResultRow> {
    let mut rows = Vec::new();
    for (lang, tb) in &corpus.treebanks {
        if !all(q, Key::Lang, |f| f.test(Some(lang))) {
            continue;
        }
        for (sid, a) in &tb.sentences {
            for arg in a.arguments() {
                let Some(p) = a.predicate(&arg.pred) else { continue };
                let keep = all(q, Key::Group, |f| f.test(Some(&p.group)))
                    && all(q, Key::Class, |f| f.test(Some(p.class.as_str())))
                    && all(q, Key::Role, |f| f.test(Some(&arg.role)));
                if !keep {
                    continue;
                }
                let span = a
                    .element_yield(&ElementRef::from(arg))
                    .map(|y| a.tree.render_span(&y))
                    .unwrap_or_default();
                let sref = SentenceRef::new(lang.clone(), sid.clone());
                rows.push(ResultRow {
                    reference: RowRef::Sentence(sref.clone()),
                    values: vec![
                        sref.to_string(),
                        p.id.clone(),
                        p.lemma.clone(),
                        p.class.to_string(),
                        p.group.clone(),
                        arg.role.clone(),
                        span,
                    ],
                });
            }
        }
    }
    rows
}

fn frames(corpus: &ValidCorpus, q: &Query) -> Vec<ResultRow> {
    // (lang, group, lemma, class, frame, tags) -> count
    let mut patterns: BTreeMap<[String; 6], usize> = BTreeMap::new();
    for (lang, tb) in &corpus.treebanks {
        if !all(q, Key::Lang, |f| f.test(Some(lang))) {
            continue;
        }
        for a in tb.sentences.values() {
            for p in a.predicates() {
                if !predicate_passes(q, Key::Lemma, Key::Group, Key::Class, p) {
                    continue;
                }
                let roles: Vec<&String> = a.layer.arguments_of(&p.id).map(|x| &x.role).collect();
                let key = [
                    lang.clone(),
                    p.group.clone(),
                    p.lemma.clone(),
                    p.class.to_string(),
                    list(roles),
                    list(tags_of(a, &p.id)),
                ];
                *patterns.entry(key).or_default() += 1;
            }
        }
    }
    patterns
        .into_iter()
        .map(|(key, count)| {
            let mut values = key.to_vec();
            values.push(count.to_string());
            ResultRow { reference: RowRef::Language(values[0].clone()), values }
        })
        .collect()
}
