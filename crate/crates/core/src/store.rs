//! Manifest-driven corpus assembly, canonical export and statistics.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fs;
use std::io;
use std::ops::Deref;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::diag::{has_errors, normalize, Code, Diagnostic, Subject};
use crate::formats::{
    parse_alignments_located, parse_manifest, parse_predarg_located, parse_trees_located,
    serialize_alignments, serialize_manifest, serialize_predarg, serialize_trees, AlignEntry,
    AlignLines, LanguageEntry, Manifest, PredArgBlock, PredArgLines,
};
use crate::model::{
    AlignKind, ElementRef, MonolingualAnnotation, PairSet, ParallelCorpus, PredArgLayer, PredClass,
    SentenceRef, Treebank,
};
use crate::registry::TagRegistry;
use crate::validate::{validate_corpus, ValidationOptions};

/// A corpus that passed validation without errors. Queries only run on
/// these.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidCorpus {
    corpus: ParallelCorpus,
    warnings: Vec<Diagnostic>,
}

impl ValidCorpus {
    /// Validates `corpus`; on failure returns every diagnostic.
    pub fn new(corpus: ParallelCorpus, opts: &ValidationOptions) -> Result<Self, Vec<Diagnostic>> {
        let diags = validate_corpus(&corpus, opts);
        if has_errors(&diags) {
            Err(diags)
        } else {
            Ok(ValidCorpus { corpus, warnings: diags })
        }
    }

    pub fn warnings(&self) -> &[Diagnostic] {
        &self.warnings
    }

    pub fn into_inner(self) -> ParallelCorpus {
        self.corpus
    }
}

impl Deref for ValidCorpus {
    type Target = ParallelCorpus;

    fn deref(&self) -> &ParallelCorpus {
        &self.corpus
    }
}

#[derive(Debug, Clone, Default)]
pub struct LoadOptions {
    /// Replaces the manifest's tag registry when set.
    pub registry: Option<TagRegistry>,
    pub validation: ValidationOptions,
}

/// Result of loading: a corpus only when no ERROR was found, plus every
/// diagnostic in canonical order.
#[derive(Debug)]
pub struct Loaded {
    pub corpus: Option<ValidCorpus>,
    pub diagnostics: Vec<Diagnostic>,
}

impl Loaded {
    fn failed(diagnostics: Vec<Diagnostic>) -> Self {
        Loaded { corpus: None, diagnostics }
    }

    /// True if loading failed because some file could not be read.
    pub fn io_failure(&self) -> bool {
        self.diagnostics.iter().any(|d| d.code == Code::Io)
    }
}

pub fn load_corpus(manifest: impl AsRef<Path>) -> Loaded {
    load_corpus_with(manifest, &LoadOptions::default())
}

pub fn load_corpus_with(manifest: impl AsRef<Path>, opts: &LoadOptions) -> Loaded {
    let manifest = manifest.as_ref();
    let shown = manifest.display().to_string();
    let text = match fs::read_to_string(manifest) {
        Ok(t) => t,
        Err(e) => return Loaded::failed(vec![Diagnostic::new(Code::Io, e.to_string()).in_file(shown)]),
    };
    let base = manifest.parent().unwrap_or(Path::new("")).to_path_buf();
    load_from(&shown, &text, |rel| {
        let p = base.join(rel);
        fs::read_to_string(&p).map(|t| (p.display().to_string(), t))
    }, opts)
}

/// Loads from an in-memory document set keyed by manifest-relative path.
pub fn load_documents(docs: &Documents, opts: &LoadOptions) -> Loaded {
    load_from(MANIFEST_NAME, &docs.manifest, |rel| {
        docs.files
            .get(rel)
            .map(|t| (rel.to_string(), t.clone()))
            .ok_or_else(|| io::Error::new(io::ErrorKind::NotFound, format!("no document {rel}")))
    }, opts)
}

struct LangSource {
    trees_file: String,
    pa_file: String,
    tree_lines: HashMap<String, usize>,
    pa_lines: PredArgLines,
}

/// Core of the loader. `read` maps a manifest-relative path to a display
/// name and the file's contents.
pub fn load_from(
    manifest_name: &str,
    manifest_text: &str,
    read: impl Fn(&str) -> io::Result<(String, String)>,
    opts: &LoadOptions,
) -> Loaded {
    let manifest = match parse_manifest(manifest_text) {
        Ok(m) => m,
        Err(d) => return Loaded::failed(vec![d.in_file(manifest_name)]),
    };
    let registry = opts.registry.clone().unwrap_or_else(|| manifest.registry.clone());
    let mut diags = Vec::new();
    let mut corpus = ParallelCorpus::new(registry.clone());
    let mut sources: HashMap<String, LangSource> = HashMap::new();
    let mut align_sources: HashMap<(String, String), (String, AlignLines)> = HashMap::new();

    let fetch = |rel: &str, diags: &mut Vec<Diagnostic>| match read(rel) {
        Ok(ok) => Some(ok),
        Err(e) => {
            diags.push(Diagnostic::new(Code::Io, format!("cannot read {rel}: {e}")).in_file(rel));
            None
        }
    };

    for LanguageEntry { code, trees, predarg } in &manifest.languages {
        let tb_doc = fetch(trees, &mut diags);
        let pa_doc = fetch(predarg, &mut diags);
        let (Some((tb_name, tb_text)), Some((pa_name, pa_text))) = (tb_doc, pa_doc) else {
            continue;
        };
        let parsed_trees = parse_trees_located(&tb_text).map_err(|d| d.in_file(&tb_name));
        let parsed_pa = parse_predarg_located(&pa_text, &registry).map_err(|d| d.in_file(&pa_name));
        let ((trees, tree_lines), (blocks, pa_lines)) = match (parsed_trees, parsed_pa) {
            (Ok(t), Ok(p)) => (t, p),
            (t, p) => {
                diags.extend(t.err());
                diags.extend(p.err());
                continue;
            }
        };
        let mut layers: HashMap<String, PredArgLayer> =
            blocks.into_iter().map(|b| (b.sentence, b.layer)).collect();
        let mut tb = Treebank::new(code.clone());
        for tree in trees {
            let layer = layers.remove(tree.id()).unwrap_or_default();
            tb.insert(MonolingualAnnotation::new(tree, layer));
        }
        let mut orphans: Vec<_> = layers.into_keys().collect();
        orphans.sort();
        for sid in orphans {
            diags.push(
                Diagnostic::new(Code::SentUnknown, format!("{code}: predicate-argument block for unknown sentence {sid}"))
                    .in_file(&pa_name)
                    .at_line(pa_lines.sentences[&sid]),
            );
        }
        corpus.add_treebank(tb);
        sources.insert(code.clone(), LangSource { trees_file: tb_name, pa_file: pa_name, tree_lines, pa_lines });
    }

    for AlignEntry { left, right, path } in &manifest.align_sets {
        let Some((name, text)) = fetch(path, &mut diags) else { continue };
        let (pairs, lines) = match parse_alignments_located(&text, &registry) {
            Ok(x) => x,
            Err(d) => {
                diags.push(d.in_file(&name));
                continue;
            }
        };
        let mut set = PairSet::new(left.clone(), right.clone());
        for pair in pairs {
            if pair.left.lang != *left || pair.right.lang != *right {
                let line = lines.pairs[&(pair.left.clone(), pair.right.clone())];
                diags.push(
                    Diagnostic::new(
                        Code::PairLang,
                        format!("pair {} {} does not belong to set {left} {right}", pair.left, pair.right),
                    )
                    .in_file(&name)
                    .at_line(line),
                );
                continue;
            }
            set.insert(pair);
        }
        corpus.add_pair_set(set);
        align_sources.insert((left.clone(), right.clone()), (name, lines));
    }

    if has_errors(&diags) {
        normalize(&mut diags);
        return Loaded::failed(diags);
    }

    let mut found = validate_corpus(&corpus, &opts.validation);
    for d in &mut found {
        locate(d, &sources, &align_sources);
    }
    diags.extend(found);
    normalize(&mut diags);
    if has_errors(&diags) {
        return Loaded::failed(diags);
    }
    let warnings = diags.clone();
    Loaded { corpus: Some(ValidCorpus { corpus, warnings }), diagnostics: diags }
}

/// Attaches the file and line a validator diagnostic refers to.
fn locate(
    d: &mut Diagnostic,
    sources: &HashMap<String, LangSource>,
    aligns: &HashMap<(String, String), (String, AlignLines)>,
) {
    let Some(subject) = &d.subject else { return };
    let (file, line) = match subject {
        Subject::Sentence { lang, sentence } => {
            let Some(src) = lang.as_ref().and_then(|l| sources.get(l)) else { return };
            match src.pa_lines.sentences.get(sentence) {
                Some(&l) => (src.pa_file.clone(), Some(l)),
                None => (src.trees_file.clone(), src.tree_lines.get(sentence).copied()),
            }
        }
        Subject::Element { lang, sentence, element } => {
            let Some(src) = lang.as_ref().and_then(|l| sources.get(l)) else { return };
            let line = src
                .pa_lines
                .elements
                .get(&(sentence.clone(), element.clone()))
                .or_else(|| src.pa_lines.sentences.get(sentence));
            (src.pa_file.clone(), line.copied())
        }
        Subject::Pair { left, right } | Subject::Alignment { left, right, .. } => {
            let Some((file, lines)) = aligns.get(&(left.lang.clone(), right.lang.clone())) else { return };
            let key = (left.clone(), right.clone());
            let line = match subject {
                Subject::Alignment { index, .. } => lines.alignments.get(&(key, *index)),
                _ => lines.pairs.get(&key),
            };
            (file.clone(), line.copied())
        }
    };
    d.file = Some(file);
    d.line = line;
}

pub const MANIFEST_NAME: &str = "corpus.manifest";

/// A corpus rendered as canonical documents: the manifest plus every file it
/// names, keyed by relative path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Documents {
    pub manifest: String,
    pub files: BTreeMap<String, String>,
}

/// Canonical serialization of a whole corpus. Files are named `<lang>.tb`,
/// `<lang>.pa` and `<left>-<right>.al`; sentences and pairs are ordered by id.
pub fn export(corpus: &ParallelCorpus) -> Documents {
    let mut files = BTreeMap::new();
    let mut languages = Vec::new();
    for (code, tb) in &corpus.treebanks {
        let (trees, predarg) = (format!("{code}.tb"), format!("{code}.pa"));
        files.insert(trees.clone(), serialize_trees(tb.sentences.values().map(|a| &a.tree)));
        let blocks: Vec<PredArgBlock> = tb
            .sentences
            .values()
            .map(|a| PredArgBlock { sentence: a.id().to_string(), layer: a.layer.clone() })
            .collect();
        files.insert(predarg.clone(), serialize_predarg(&blocks));
        languages.push(LanguageEntry { code: code.clone(), trees, predarg });
    }
    let mut align_sets = Vec::new();
    for ((l, r), ps) in &corpus.pair_sets {
        let path = format!("{l}-{r}.al");
        files.insert(path.clone(), serialize_alignments(ps.pairs.values()));
        align_sets.push(AlignEntry { left: l.clone(), right: r.clone(), path });
    }
    let manifest = serialize_manifest(&Manifest { languages, align_sets, registry: corpus.registry.clone() });
    Documents { manifest, files }
}

/// Writes [`export`] output into `dir`, creating it if needed. Returns the
/// manifest path.
pub fn write_export(corpus: &ParallelCorpus, dir: &Path) -> io::Result<PathBuf> {
    let docs = export(corpus);
    fs::create_dir_all(dir)?;
    for (name, text) in &docs.files {
        fs::write(dir.join(name), text)?;
    }
    let manifest = dir.join(MANIFEST_NAME);
    fs::write(&manifest, &docs.manifest)?;
    Ok(manifest)
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct LanguageStats {
    pub sentences: usize,
    pub tokens: usize,
    pub predicates: usize,
    pub arguments: usize,
    /// Predicates per class; always lists v, n and a.
    pub predicates_by_class: BTreeMap<String, usize>,
    /// Predicate bindings carrying each tag.
    pub binding_tags: BTreeMap<String, usize>,
    pub untagged_predicates: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct PairSetStats {
    pub left: String,
    pub right: String,
    pub pairs: usize,
    pub pred_alignments: usize,
    pub arg_alignments: usize,
    pub pred_alignment_tags: BTreeMap<String, usize>,
    pub arg_alignment_tags: BTreeMap<String, usize>,
    /// Elements of paired sentences that take part in no alignment of the set.
    pub unaligned_preds: usize,
    pub unaligned_args: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CorpusStats {
    pub languages: BTreeMap<String, LanguageStats>,
    pub pair_sets: Vec<PairSetStats>,
}

pub fn compute_stats(corpus: &ParallelCorpus) -> CorpusStats {
    let mut languages = BTreeMap::new();
    for (code, tb) in &corpus.treebanks {
        let mut s = LanguageStats {
            predicates_by_class: PredClass::ALL.iter().map(|c| (c.to_string(), 0)).collect(),
            ..Default::default()
        };
        for a in tb.sentences.values() {
            s.sentences += 1;
            s.tokens += a.tree.len();
            s.arguments += a.layer.arguments.len();
            for p in a.predicates() {
                s.predicates += 1;
                *s.predicates_by_class.entry(p.class.to_string()).or_default() += 1;
                let tags = a.binding(&ElementRef::predicate(p.id.clone())).map(|b| &b.tags);
                match tags {
                    Some(t) if !t.is_empty() => {
                        for tag in t {
                            *s.binding_tags.entry(tag.clone()).or_default() += 1;
                        }
                    }
                    _ => s.untagged_predicates += 1,
                }
            }
        }
        languages.insert(code.clone(), s);
    }

    let mut pair_sets = Vec::new();
    for ps in corpus.pair_sets.values() {
        let mut s = PairSetStats { left: ps.left_lang.clone(), right: ps.right_lang.clone(), ..Default::default() };
        // elements aligned anywhere in this set, per side
        let mut aligned: BTreeSet<(&SentenceRef, &ElementRef)> = BTreeSet::new();
        let mut paired: BTreeSet<&SentenceRef> = BTreeSet::new();
        for pair in ps.pairs.values() {
            s.pairs += 1;
            paired.insert(&pair.left);
            paired.insert(&pair.right);
            for a in &pair.alignments {
                let (count, tags) = match a.kind {
                    AlignKind::Pred => (&mut s.pred_alignments, &mut s.pred_alignment_tags),
                    AlignKind::Arg => (&mut s.arg_alignments, &mut s.arg_alignment_tags),
                };
                *count += 1;
                if let Some(t) = &a.tag {
                    *tags.entry(t.clone()).or_default() += 1;
                }
                aligned.insert((&pair.left, &a.left));
                aligned.insert((&pair.right, &a.right));
            }
        }
        for sref in paired {
            let Some(a) = corpus.sentence(sref) else { continue };
            for el in a.layer.elements() {
                if !aligned.contains(&(sref, &el)) {
                    if el.is_predicate() {
                        s.unaligned_preds += 1;
                    } else {
                        s.unaligned_args += 1;
                    }
                }
            }
        }
        pair_sets.push(s);
    }
    CorpusStats { languages, pair_sets }
}
