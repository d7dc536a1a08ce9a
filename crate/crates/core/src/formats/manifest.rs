use std::collections::BTreeSet;
use std::fmt::Write;

use super::{document_lines, err, join, tag_list};
use crate::diag::{Code, Diagnostic};
use crate::model::is_identifier;
use crate::registry::{TagOverride, TagRegistry};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LanguageEntry {
    pub code: String,
    /// Paths are relative to the manifest's directory.
    pub trees: String,
    pub predarg: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlignEntry {
    pub left: String,
    pub right: String,
    pub path: String,
}

/// The administrative description of a corpus: which treebanks and which
/// alignment sets it is the union of.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Manifest {
    pub languages: Vec<LanguageEntry>,
    pub align_sets: Vec<AlignEntry>,
    pub registry: TagRegistry,
}

impl Manifest {
    pub fn language(&self, code: &str) -> Option<&LanguageEntry> {
        self.languages.iter().find(|l| l.code == code)
    }
}

fn tag_directive(
    keyword: &str,
    rest: &[&str],
    line: usize,
    tags: &mut TagOverride,
) -> Result<(), Diagnostic> {
    let [list] = rest else {
        return Err(err(Code::Syntax, line, format!("expected `{keyword} <tag>[,<tag>…]`")));
    };
    let set = tag_list(list, line)?;
    let slot = if keyword == "BINDTAGS" { &mut tags.binding } else { &mut tags.alignment };
    if slot.replace(set).is_some() {
        return Err(err(Code::Syntax, line, format!("repeated `{keyword}`")));
    }
    Ok(())
}

pub fn parse_manifest(text: &str) -> Result<Manifest, Diagnostic> {
    let mut languages: Vec<LanguageEntry> = Vec::new();
    let mut aligns: Vec<(usize, AlignEntry)> = Vec::new();
    let mut tags = TagOverride::default();

    for (line, raw) in document_lines(text) {
        let fields: Vec<&str> = raw.split_whitespace().collect();
        let Some((&keyword, rest)) = fields.split_first() else {
            continue;
        };
        match (keyword, rest) {
            ("LANG", [code, "TREES", trees, "PREDARG", predarg]) => {
                if !is_identifier(code) {
                    return Err(err(Code::Syntax, line, format!("malformed language code `{code}`")));
                }
                if languages.iter().any(|l| l.code == *code) {
                    return Err(err(Code::LangDup, line, format!("language `{code}` declared twice")));
                }
                languages.push(LanguageEntry {
                    code: code.to_string(),
                    trees: trees.to_string(),
                    predarg: predarg.to_string(),
                });
            }
            ("ALIGN", [left, right, path]) => {
                aligns.push((
                    line,
                    AlignEntry { left: left.to_string(), right: right.to_string(), path: path.to_string() },
                ));
            }
            ("BINDTAGS" | "ALIGNTAGS", rest) => tag_directive(keyword, rest, line, &mut tags)?,
            _ => return Err(err(Code::Syntax, line, format!("malformed manifest line `{raw}`"))),
        }
    }

    let mut seen_sets = BTreeSet::new();
    for (line, a) in &aligns {
        for code in [&a.left, &a.right] {
            if !languages.iter().any(|l| &l.code == code) {
                return Err(err(Code::ManifestLang, *line, format!("ALIGN references undeclared language `{code}`")));
            }
        }
        if a.left == a.right {
            return Err(err(Code::ManifestLang, *line, "ALIGN needs two distinct languages"));
        }
        let key: BTreeSet<&String> = [&a.left, &a.right].into();
        if !seen_sets.insert(key) {
            return Err(err(
                Code::AlignSetDup,
                *line,
                format!("second ALIGN set for {} and {}", a.left, a.right),
            ));
        }
    }
    if languages.is_empty() {
        return Err(Diagnostic::new(Code::ManifestEmpty, "manifest declares no language"));
    }
    Ok(Manifest {
        languages,
        align_sets: aligns.into_iter().map(|(_, a)| a).collect(),
        registry: tags.apply(&TagRegistry::default()),
    })
}

/// Parses a standalone tag registry file (`BINDTAGS` / `ALIGNTAGS` lines
/// only). Directives it lacks leave `base` unchanged.
pub fn parse_tag_registry(text: &str, base: &TagRegistry) -> Result<TagRegistry, Diagnostic> {
    let mut tags = TagOverride::default();
    for (line, raw) in document_lines(text) {
        let fields: Vec<&str> = raw.split_whitespace().collect();
        match fields.split_first() {
            None => {}
            Some((&k @ ("BINDTAGS" | "ALIGNTAGS"), rest)) => tag_directive(k, rest, line, &mut tags)?,
            Some(_) => return Err(err(Code::Syntax, line, format!("malformed registry line `{raw}`"))),
        }
    }
    Ok(tags.apply(base))
}

/// Canonical manifest: LANG lines, ALIGN lines, then both tag lines.
pub fn serialize_manifest(m: &Manifest) -> String {
    let mut out = String::new();
    for l in &m.languages {
        let _ = writeln!(out, "LANG {} TREES {} PREDARG {}", l.code, l.trees, l.predarg);
    }
    for a in &m.align_sets {
        let _ = writeln!(out, "ALIGN {} {} {}", a.left, a.right, a.path);
    }
    let _ = writeln!(out, "BINDTAGS {}", join(&m.registry.binding));
    let _ = writeln!(out, "ALIGNTAGS {}", join(&m.registry.alignment));
    out
}
