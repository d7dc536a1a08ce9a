//! Random corpus generators, brute-force oracles and fixture helpers shared
//! by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};

use rand::rngs::StdRng;
use rand::seq::{IteratorRandom, SliceRandom};
use rand::{Rng, SeedableRng};

use fuse_core::{
    load_documents, Alignment, Argument, Binding, Code, Documents, ElementRef, LoadOptions,
    MonolingualAnnotation, NodeRef, NonTerminal, PairSet, ParallelCorpus, PredArgLayer, PredClass,
    Predicate, SentencePairAlignment, SentenceRef, SentenceTree, TagRegistry, Token, Treebank,
    ValidCorpus, ValidationOptions, MANIFEST_NAME,
};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

// ---------------------------------------------------------------- fixtures

pub fn fixture_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/europarl")
}

pub fn fixture_manifest() -> PathBuf {
    fixture_dir().join(MANIFEST_NAME)
}

/// The fixture corpus as in-memory documents, ready for mutation.
pub fn fixture_documents() -> Documents {
    let dir = fixture_dir();
    let read = |name: &str| std::fs::read_to_string(dir.join(name)).unwrap();
    let files = ["en.tb", "en.pa", "de.tb", "de.pa", "en-de.al"]
        .into_iter()
        .map(|f| (f.to_string(), read(f)))
        .collect();
    Documents { manifest: read(MANIFEST_NAME), files }
}

pub fn fixture_corpus() -> ValidCorpus {
    let loaded = fuse_core::load_corpus(fixture_manifest());
    assert!(loaded.diagnostics.is_empty(), "{:?}", loaded.diagnostics);
    loaded.corpus.unwrap()
}

/// Replaces exactly one occurrence of `from` in `file`.
pub fn mutate(docs: &Documents, file: &str, from: &str, to: &str) -> Documents {
    let mut docs = docs.clone();
    let text = docs.files.get_mut(file).unwrap();
    assert_eq!(text.matches(from).count(), 1, "`{from}` must occur once in {file}");
    *text = text.replacen(from, to, 1);
    docs
}

/// ERROR codes reported when loading `docs`, with multiplicity.
pub fn error_codes(docs: &Documents) -> Vec<Code> {
    load_documents(docs, &LoadOptions::default())
        .diagnostics
        .iter()
        .filter(|d| d.is_error())
        .map(|d| d.code)
        .collect()
}

/// One seeded mutation of the fixture per validator ERROR code, paired with
/// the ERROR codes it actually produced.
pub fn seeded_mutations() -> Vec<(Code, Vec<Code>)> {
    let docs = fixture_documents();
    let text = [
        (Code::Recursion, "en.pa", "role=ENT_RAISED nodes=n525 excl=n517", "role=ENT_RAISED nodes=n525"),
        (Code::BindMissing, "en.pa", "role=LOCATION nodes=n501", "role=LOCATION"),
        (Code::BindDangle, "en.pa", "role=RAISER nodes=n510", "role=RAISER nodes=n599"),
        (Code::ExclNotDesc, "en.pa", "excl=n517", "excl=t1"),
        (Code::InclNested, "en.pa", "nodes=n525 excl=n517", "nodes=n520,n525 excl=n517"),
        (Code::YieldEmpty, "en.pa", "role=ENT_HARMONISED nodes=n502", "role=ENT_HARMONISED nodes=n502 excl=t1,t2,n500"),
        (Code::TagOnArg, "de.pa", "role=ORT nodes=n501", "role=ORT nodes=n501 tags=pv"),
        (Code::SentUnknown, "en-de.al", "#PAIR en:s1 de:s1\n", "#PAIR en:s9 de:s9\nPALIGN p1 p1\n\n#PAIR en:s1 de:s1\n"),
        (Code::AlignDangle, "en-de.al", "p1.LOCATION p1.ORT", "p1.LOCATION p1.NOSUCH"),
        (Code::AlignKind, "en-de.al", "p1.ENT_HARMONISED p1.HARMONISIERTES", "p1.ENT_HARMONISED p2"),
        (Code::AlignDup, "en-de.al", "PALIGN p1 p1 tag=abs-opp\n", "PALIGN p1 p1 tag=abs-opp\nPALIGN p1 p1\n"),
        (Code::AlignOrphanArg, "en-de.al", "PALIGN p1 p1\nAALIGN p1.ENT_GIVEN", "AALIGN p1.ENT_GIVEN"),
    ];
    let mut out: Vec<(Code, Vec<Code>)> =
        text.iter().map(|(code, file, from, to)| (*code, error_codes(&mutate(&docs, file, from, to)))).collect();
    // unregistered alignment tags never get past the parser, so this one
    // is seeded in memory
    let mut corpus = fixture_corpus().into_inner();
    let ps = corpus.pair_sets.values_mut().next().unwrap();
    ps.pairs.values_mut().next().unwrap().alignments[0].tag = Some("bogus".into());
    let codes = fuse_core::validate_corpus(&corpus, &ValidationOptions::default())
        .into_iter()
        .filter(|d| d.is_error())
        .map(|d| d.code)
        .collect();
    out.push((Code::AlignTag, codes));
    out
}

/// True if `observed` is non-empty and consists of `expected` only.
pub fn only(expected: Code, observed: &[Code]) -> bool {
    !observed.is_empty() && observed.iter().all(|c| *c == expected)
}

// -------------------------------------------------------------- generators

const FORMS: [&str; 8] = ["the", "Richtlinie", "give", "über", "Kommissar", "é", "x", "laws"];
const POS: [&str; 5] = ["NN", "ART", "VVFIN", "ADJD", "$."];
const CATS: [&str; 5] = ["S", "NP", "VP", "PP", "AP"];
const EDGES: [&str; 6] = ["SB", "OA", "HD", "NK", "MO", "DA"];
pub const GROUPS: [&str; 4] = ["GEBEN", "HARMONISE", "APPLY", "SAFEGUARD"];
pub const ROLES: [&str; 6] = ["AGENT", "THEME", "GOAL", "SOURCE", "PLACE", "ENT_X"];
pub const LEMMAS: [&str; 4] = ["GIVE", "MITGEBEN", "HARMONISIERUNG", "ANWENDBAR"];
pub const LANGS: [&str; 3] = ["de", "en", "fr"];

fn edge(rng: &mut StdRng) -> Option<String> {
    rng.gen_bool(0.8).then(|| EDGES.choose(rng).unwrap().to_string())
}

/// A random tree of at most `max_nodes` nodes. Nonterminal ids are sparse,
/// attachment ignores surface order, so branches cross freely.
pub fn random_tree(rng: &mut StdRng, sid: &str, max_nodes: usize) -> SentenceTree {
    let n_nt = rng.gen_range(0..=(max_nodes / 2).min(10));
    let mut ids: Vec<u32> = (500..620).choose_multiple(rng, n_nt);
    ids.shuffle(rng);
    // parent of ids[i] is 0 or an earlier id in the shuffled order: acyclic
    let nt_parent: Vec<Option<u32>> = (0..n_nt)
        .map(|i| if i == 0 || rng.gen_bool(0.25) { None } else { Some(ids[rng.gen_range(0..i)]) })
        .collect();
    let has_nt_child: BTreeSet<u32> = nt_parent.iter().flatten().copied().collect();
    let leaves: Vec<u32> = ids.iter().copied().filter(|i| !has_nt_child.contains(i)).collect();
    let n_tok = rng.gen_range(leaves.len().max(1)..=(max_nodes - n_nt).max(leaves.len().max(1)));
    let mut tok_parent: Vec<Option<u32>> = (0..n_tok)
        .map(|_| if ids.is_empty() || rng.gen_bool(0.15) { None } else { ids.choose(rng).copied() })
        .collect();
    // every leaf constituent gets a token of its own
    let mut slots: Vec<usize> = (0..n_tok).collect();
    slots.shuffle(rng);
    for (leaf, slot) in leaves.iter().zip(slots) {
        tok_parent[slot] = Some(*leaf);
    }
    let tokens = tok_parent
        .into_iter()
        .enumerate()
        .map(|(i, parent)| Token {
            index: i as u32 + 1,
            form: FORMS.choose(rng).unwrap().to_string(),
            pos: POS.choose(rng).unwrap().to_string(),
            edge: edge(rng),
            parent,
        })
        .collect();
    let nts = ids
        .iter()
        .zip(nt_parent)
        .map(|(&id, parent)| NonTerminal {
            id,
            category: CATS.choose(rng).unwrap().to_string(),
            edge: edge(rng),
            parent,
        })
        .collect();
    SentenceTree::new(sid, tokens, nts).expect("generator builds valid trees")
}

/// A random binding: non-nested included nodes, excluded nodes below them.
/// The yield may well be empty.
pub fn random_binding(rng: &mut StdRng, tree: &SentenceTree, target: ElementRef) -> Binding {
    let nodes: Vec<NodeRef> = tree.nodes().collect();
    let mut included: Vec<NodeRef> = Vec::new();
    let k = rng.gen_range(1..=3);
    for n in nodes.choose_multiple(rng, k) {
        if included.iter().all(|&i| i != *n && !tree.dominates(i, *n) && !tree.dominates(*n, i)) {
            included.push(*n);
        }
    }
    let below: Vec<NodeRef> =
        nodes.iter().copied().filter(|&n| included.iter().any(|&i| tree.dominates(i, n))).collect();
    let k = rng.gen_range(0..=2.min(below.len()));
    let excluded = below.choose_multiple(rng, k).copied();
    Binding::new(target, included.clone()).excluding(excluded)
}

/// Chain of nodes from `node` up to the virtual root, from parent pointers.
pub fn ancestors(tree: &SentenceTree, node: NodeRef) -> Vec<NodeRef> {
    let mut out = vec![node];
    let mut parent = match node {
        NodeRef::Terminal(i) => tree.token(i).unwrap().parent,
        NodeRef::NonTerminal(id) => tree.nonterminal(id).unwrap().parent,
    };
    while let Some(p) = parent {
        out.push(NodeRef::NonTerminal(p));
        parent = tree.nonterminal(p).unwrap().parent;
    }
    out
}

/// Brute-force yield: a token counts if some included node is on its
/// ancestor chain and no excluded node is.
pub fn oracle_yield(tree: &SentenceTree, b: &Binding) -> Option<Vec<u32>> {
    let y: Vec<u32> = (1..=tree.len() as u32)
        .filter(|&i| {
            let chain = ancestors(tree, NodeRef::Terminal(i));
            chain.iter().any(|n| b.included.contains(n)) && !chain.iter().any(|n| b.excluded.contains(n))
        })
        .collect();
    (!y.is_empty()).then_some(y)
}

/// An argument binding whose yield avoids the predicate token `p`, or
/// `None` if the picked node cannot be made to.
fn argument_binding(rng: &mut StdRng, tree: &SentenceTree, target: ElementRef, p: u32) -> Option<Binding> {
    let pt = NodeRef::Terminal(p);
    let x = tree.nodes().filter(|&n| n != pt).choose(rng)?;
    if !tree.dominates(x, pt) {
        return Some(Binding::new(target, [x]));
    }
    // exclude the child of x on the way down to the predicate token
    let chain = ancestors(tree, pt);
    let at = chain.iter().position(|&n| n == x)?;
    let b = Binding::new(target, [x]).excluding([chain[at - 1]]);
    tree.resolve_yield(&b).ok().map(|_| b)
}

fn random_annotation(rng: &mut StdRng, sid: &str, registry: &TagRegistry) -> MonolingualAnnotation {
    let tree = random_tree(rng, sid, 25);
    let mut layer = PredArgLayer::default();
    for k in 1..=rng.gen_range(0..=5) {
        let id = format!("p{k}");
        let p = rng.gen_range(1..=tree.len() as u32);
        let tags: Vec<&String> = registry.binding.iter().filter(|_| rng.gen_bool(0.3)).collect();
        let pred = Predicate {
            id: id.clone(),
            lemma: LEMMAS.choose(rng).unwrap().to_string(),
            class: *PredClass::ALL.choose(rng).unwrap(),
            group: GROUPS.choose(rng).unwrap().to_string(),
        };
        let b = Binding::new(ElementRef::predicate(id.clone()), [NodeRef::Terminal(p)]).tagged(tags);
        layer.add_predicate(pred, Some(b));
        let k = rng.gen_range(0..=3);
        for role in ROLES.choose_multiple(rng, k) {
            let target = ElementRef::argument(id.clone(), *role);
            if let Some(b) = argument_binding(rng, &tree, target, p) {
                layer.add_argument(Argument { pred: id.clone(), role: role.to_string() }, Some(b));
            }
        }
    }
    MonolingualAnnotation::new(tree, layer)
}

fn random_pair(rng: &mut StdRng, corpus: &ParallelCorpus, left: SentenceRef, right: SentenceRef) -> SentencePairAlignment {
    let mut pair = SentencePairAlignment::new(left, right);
    let (l, r) = (corpus.sentence(&pair.left).unwrap(), corpus.sentence(&pair.right).unwrap());
    let mut lp: Vec<&Predicate> = l.predicates().collect();
    let mut rp: Vec<&Predicate> = r.predicates().collect();
    lp.shuffle(rng);
    rp.shuffle(rng);
    let atag = |rng: &mut StdRng| -> Option<String> {
        rng.gen_bool(0.3).then(|| corpus.registry.alignment.iter().choose(rng).unwrap().clone())
    };
    for (a, b) in lp.iter().zip(&rp) {
        if rng.gen_bool(0.25) {
            continue;
        }
        let mut pa = Alignment::preds(&a.id, &b.id);
        pa.tag = atag(rng);
        pair.alignments.push(pa);
        let mut la: Vec<&Argument> = l.layer.arguments_of(&a.id).collect();
        let mut ra: Vec<&Argument> = r.layer.arguments_of(&b.id).collect();
        la.shuffle(rng);
        ra.shuffle(rng);
        for (x, y) in la.iter().zip(&ra) {
            if rng.gen_bool(0.7) {
                let mut aa = Alignment::args(ElementRef::from(*x), ElementRef::from(*y));
                aa.tag = atag(rng);
                pair.alignments.push(aa);
            }
        }
    }
    pair.alignments.shuffle(rng);
    pair
}

/// A random corpus that passes validation: 1 to 3 languages, trees of at
/// most 25 nodes, at most 5 predicates per sentence, 1:1 alignments.
pub fn random_corpus(rng: &mut StdRng) -> ValidCorpus {
    let registry = TagRegistry::default();
    let mut corpus = ParallelCorpus::new(registry.clone());
    let k = rng.gen_range(1..=3);
    let langs: Vec<&str> = LANGS.choose_multiple(rng, k).copied().collect();
    for lang in &langs {
        let mut tb = Treebank::new(*lang);
        for s in 1..=rng.gen_range(1..=4) {
            tb.insert(random_annotation(rng, &format!("s{s}"), &registry));
        }
        corpus.add_treebank(tb);
    }
    for (i, a) in langs.iter().enumerate() {
        for b in &langs[i + 1..] {
            if rng.gen_bool(0.3) {
                continue;
            }
            let mut ps = PairSet::new(*a, *b);
            let shared: Vec<String> = corpus.treebanks[*a]
                .sentences
                .keys()
                .filter(|s| corpus.treebanks[*b].sentences.contains_key(*s))
                .cloned()
                .collect();
            for s in shared {
                if rng.gen_bool(0.8) {
                    let pair = random_pair(rng, &corpus, SentenceRef::new(*a, &s), SentenceRef::new(*b, &s));
                    ps.insert(pair);
                }
            }
            corpus.add_pair_set(ps);
        }
    }
    ValidCorpus::new(corpus, &ValidationOptions::default())
        .unwrap_or_else(|d| panic!("generator produced an invalid corpus: {d:?}"))
}

/// Rewrites `docs` with manifest lines and every file's blocks shuffled.
pub fn shuffle_documents(rng: &mut StdRng, docs: &Documents) -> Documents {
    let mut manifest: Vec<&str> = docs.manifest.lines().collect();
    manifest.shuffle(rng);
    let files = docs
        .files
        .iter()
        .map(|(name, text)| {
            let mut blocks: Vec<String> = if name.ends_with(".tb") {
                text.split_inclusive('\n')
                    .fold(Vec::<String>::new(), |mut acc, line| {
                        if line.starts_with("#BOS ") || acc.is_empty() {
                            acc.push(String::new());
                        }
                        acc.last_mut().unwrap().push_str(line);
                        acc
                    })
            } else {
                text.split("\n\n").map(|b| format!("{}\n", b.trim_end_matches('\n'))).collect()
            };
            blocks.retain(|b| !b.trim().is_empty());
            blocks.shuffle(rng);
            (name.clone(), blocks.join(if name.ends_with(".tb") { "" } else { "\n" }))
        })
        .collect();
    Documents { manifest: manifest.join("\n") + "\n", files }
}

// ----------------------------------------------------------------- oracles

/// A field of an oracle record: single-valued (absent = `None`) or a set.
#[derive(Debug, Clone)]
pub enum Field {
    One(Option<String>),
    Set(BTreeSet<String>),
}

fn one(s: impl Into<String>) -> Field {
    Field::One(Some(s.into()))
}

fn show(f: &Field) -> String {
    match f {
        Field::One(v) => v.clone().unwrap_or_else(|| "-".into()),
        Field::Set(s) if s.is_empty() => "-".into(),
        Field::Set(s) => s.iter().cloned().collect::<Vec<_>>().join(","),
    }
}

pub type Record = BTreeMap<&'static str, Field>;

fn filter_ok(rec: &Record, key: &str, negated: bool, value: &str) -> bool {
    let hit = match rec.get(key) {
        Some(Field::One(v)) => v.as_deref() == Some(value),
        Some(Field::Set(s)) => s.contains(value),
        None => panic!("oracle record lacks key {key}"),
    };
    hit != negated
}

fn tags(a: &MonolingualAnnotation, pred: &str) -> BTreeSet<String> {
    a.layer.bindings.get(&ElementRef::predicate(pred)).map(|b| b.tags.clone()).unwrap_or_default()
}

/// Every candidate record of `command`, in output order, before filtering.
/// Record keys are filter keys; `columns` lists the rendered fields.
pub fn oracle_records(corpus: &ParallelCorpus, command: &str) -> Vec<(Record, Vec<String>)> {
    let mut out = Vec::new();
    match command {
        "preds" | "aligns" => {
            for ps in corpus.pair_sets.values() {
                for pair in ps.pairs.values() {
                    let l = corpus.sentence(&pair.left).unwrap();
                    let r = corpus.sentence(&pair.right).unwrap();
                    let mut als = pair.alignments.clone();
                    als.sort();
                    for a in als {
                        let is_pred = a.left.role.is_none();
                        let atag = Field::One(a.tag.clone());
                        if command == "aligns" {
                            let lbl = |s: &MonolingualAnnotation, e: &ElementRef| {
                                e.role.clone().unwrap_or_else(|| s.layer.predicates[&e.pred].lemma.clone())
                            };
                            let rec: Record = [("kind", one(if is_pred { "pred" } else { "arg" })), ("atag", atag.clone())].into();
                            let row = vec![
                                pair.left.to_string(),
                                pair.right.to_string(),
                                show(&rec["kind"]),
                                a.left.to_string(),
                                lbl(l, &a.left),
                                a.right.to_string(),
                                lbl(r, &a.right),
                                show(&atag),
                            ];
                            out.push((rec, row));
                        } else if is_pred {
                            let lp = &l.layer.predicates[&a.left.pred];
                            let rp = &r.layer.predicates[&a.right.pred];
                            let (lt, rt) = (tags(l, &lp.id), tags(r, &rp.id));
                            let div = lt.contains("pv") ^ rt.contains("pv");
                            let rec: Record = [
                                ("class", one(lp.class.as_str())),
                                ("aligned-class", one(rp.class.as_str())),
                                ("lemma", one(&lp.lemma)),
                                ("aligned-lemma", one(&rp.lemma)),
                                ("group", one(&lp.group)),
                                ("aligned-group", one(&rp.group)),
                                ("tag", Field::Set(lt)),
                                ("aligned-tag", Field::Set(rt)),
                                ("atag", atag),
                                ("voice", Field::One(div.then(|| "diverge".to_string()))),
                            ]
                            .into();
                            let row = vec![
                                pair.left.to_string(),
                                pair.right.to_string(),
                                lp.id.clone(),
                                lp.lemma.clone(),
                                show(&rec["class"]),
                                show(&rec["tag"]),
                                rp.id.clone(),
                                rp.lemma.clone(),
                                show(&rec["aligned-class"]),
                                show(&rec["aligned-tag"]),
                                show(&rec["atag"]),
                            ];
                            out.push((rec, row));
                        }
                    }
                }
            }
        }
        "unaligned" => {
            for (lang, tb) in &corpus.treebanks {
                for (sid, a) in &tb.sentences {
                    let me = SentenceRef::new(lang.clone(), sid.clone());
                    let is_aligned = |e: &ElementRef| {
                        corpus.pairs().any(|p| {
                            p.alignments.iter().any(|x| (p.left == me && x.left == *e) || (p.right == me && x.right == *e))
                        })
                    };
                    let mut els: Vec<ElementRef> = a.layer.predicates.keys().map(ElementRef::predicate).collect();
                    els.extend(a.layer.arguments.iter().map(ElementRef::from));
                    els.sort();
                    for e in els.into_iter().filter(|e| !is_aligned(e)) {
                        let p = &a.layer.predicates[&e.pred];
                        let kind = if e.role.is_none() { "pred" } else { "arg" };
                        let rec: Record = [("kind", one(kind)), ("lang", one(lang))].into();
                        let row = vec![
                            me.to_string(),
                            kind.to_string(),
                            e.to_string(),
                            p.lemma.clone(),
                            p.class.to_string(),
                            e.role.clone().unwrap_or_else(|| "-".into()),
                        ];
                        out.push((rec, row));
                    }
                }
            }
        }
        "realizations" => {
            for (lang, tb) in &corpus.treebanks {
                for (sid, a) in &tb.sentences {
                    for arg in &a.layer.arguments {
                        let p = &a.layer.predicates[&arg.pred];
                        let b = &a.layer.bindings[&ElementRef::from(arg)];
                        let y = oracle_yield(&a.tree, b).unwrap();
                        let mut span = String::new();
                        for (k, i) in y.iter().enumerate() {
                            if k > 0 {
                                span.push_str(if y[k - 1] + 1 == *i { " " } else { " … " });
                            }
                            span.push_str(&a.tree.tokens()[*i as usize - 1].form);
                        }
                        let rec: Record = [
                            ("group", one(&p.group)),
                            ("role", one(&arg.role)),
                            ("lang", one(lang)),
                            ("class", one(p.class.as_str())),
                        ]
                        .into();
                        let row = vec![
                            format!("{lang}:{sid}"),
                            p.id.clone(),
                            p.lemma.clone(),
                            p.class.to_string(),
                            p.group.clone(),
                            arg.role.clone(),
                            span,
                        ];
                        out.push((rec, row));
                    }
                }
            }
        }
        "frames" => {
            let mut counts: BTreeMap<Vec<String>, usize> = BTreeMap::new();
            for (lang, tb) in &corpus.treebanks {
                for a in tb.sentences.values() {
                    for p in a.layer.predicates.values() {
                        let roles: BTreeSet<String> =
                            a.layer.arguments.iter().filter(|x| x.pred == p.id).map(|x| x.role.clone()).collect();
                        let key = vec![
                            lang.clone(),
                            p.group.clone(),
                            p.lemma.clone(),
                            p.class.to_string(),
                            show(&Field::Set(roles)),
                            show(&Field::Set(tags(a, &p.id))),
                        ];
                        *counts.entry(key).or_default() += 1;
                    }
                }
            }
            for (key, n) in counts {
                let rec: Record = [
                    ("lang", one(&key[0])),
                    ("group", one(&key[1])),
                    ("lemma", one(&key[2])),
                    ("class", one(&key[3])),
                ]
                .into();
                let mut row = key;
                row.push(n.to_string());
                out.push((rec, row));
            }
        }
        other => panic!("no oracle for {other}"),
    }
    out
}

/// Filtered oracle rows; `filters` are (key, negated, value).
pub fn oracle_query(corpus: &ParallelCorpus, command: &str, filters: &[(String, bool, String)]) -> Vec<Vec<String>> {
    oracle_records(corpus, command)
        .into_iter()
        .filter(|(rec, _)| filters.iter().all(|(k, n, v)| filter_ok(rec, k, *n, v)))
        .map(|(_, row)| row)
        .collect()
}

/// A random filter set for `command`, values drawn from what the corpus
/// actually contains (plus the occasional miss).
pub fn random_filters(rng: &mut StdRng, corpus: &ParallelCorpus, command: &str) -> Vec<(String, bool, String)> {
    let recs = oracle_records(corpus, command);
    let keys: &[&str] = match command {
        "preds" => &["class", "aligned-class", "tag", "aligned-tag", "lemma", "aligned-lemma", "group", "aligned-group", "atag", "voice"],
        "aligns" => &["kind", "atag"],
        "unaligned" => &["kind", "lang"],
        "realizations" => &["group", "role", "lang", "class"],
        "frames" => &["lemma", "group", "lang", "class"],
        _ => unreachable!(),
    };
    let mut out = Vec::new();
    for _ in 0..rng.gen_range(0..=2) {
        let key = *keys.choose(rng).unwrap();
        let seen: Vec<String> = recs
            .iter()
            .flat_map(|(r, _)| match &r[key] {
                Field::One(v) => v.iter().cloned().collect::<Vec<_>>(),
                Field::Set(s) => s.iter().cloned().collect(),
            })
            .collect();
        let value = match (seen.choose(rng), key) {
            (Some(v), _) if rng.gen_bool(0.85) => v.clone(),
            (_, "class" | "aligned-class") => "n".into(),
            (_, "kind") => "arg".into(),
            (_, "voice") => "diverge".into(),
            (_, "tag" | "aligned-tag") => "imp".into(),
            (_, "atag") => "incomp".into(),
            (_, "lang") => "fr".into(),
            _ => "NOSUCH".into(),
        };
        out.push((key.to_string(), rng.gen_bool(0.25), value));
    }
    out
}

pub fn query_text(command: &str, filters: &[(String, bool, String)]) -> String {
    let mut q = command.to_string();
    for (k, n, v) in filters {
        q.push_str(&format!(" {k}{}={v}", if *n { "!" } else { "" }));
    }
    q
}

/// Flat frequency count of roles for `group` in `lang`, ranked.
pub fn oracle_suggest(corpus: &ParallelCorpus, lang: &str, group: &str, used: &BTreeSet<String>) -> Vec<(String, usize)> {
    let mut all: Vec<String> = Vec::new();
    for a in corpus.treebanks[lang].sentences.values() {
        for arg in &a.layer.arguments {
            if a.layer.predicates[&arg.pred].group == group {
                all.push(arg.role.clone());
            }
        }
    }
    let mut ranked: Vec<(String, usize)> = Vec::new();
    for r in &all {
        if used.contains(r) || ranked.iter().any(|(x, _)| x == r) {
            continue;
        }
        ranked.push((r.clone(), all.iter().filter(|x| *x == r).count()));
    }
    ranked.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
    ranked
}
