//! Line-based text formats: `.tb` trees, `.pa` predicate-argument layers,
//! `.al` alignments and the corpus manifest.
//!
//! All parsers NFC-normalize their input, ignore `%%` comment lines and
//! stop at the first error, which always carries a 1-based line number.
//! Serializers emit the canonical form (LF endings, single separators,
//! deterministic ordering) so that parsing and re-serializing a canonical
//! document reproduces it byte for byte.

// Diagnostics are returned by value on the (cold) error path.
#![allow(clippy::result_large_err)]

mod align;
mod manifest;
mod predarg;
mod trees;

use std::collections::BTreeSet;

use unicode_normalization::UnicodeNormalization;

pub use align::{parse_alignments, parse_alignments_located, serialize_alignments, AlignLines};
pub use manifest::{
    parse_manifest, parse_tag_registry, serialize_manifest, AlignEntry, LanguageEntry, Manifest,
};
pub use predarg::{
    parse_predarg, parse_predarg_located, serialize_predarg, PredArgBlock, PredArgLines,
};
pub use trees::{parse_trees, parse_trees_located, serialize_trees};

pub use crate::registry::TagRegistry;

use crate::diag::{Code, Diagnostic};
use crate::model::{is_tag_name, NodeRef};

/// Non-comment lines of `text` after NFC normalization, with 1-based line
/// numbers. Trailing `\r` is dropped.
fn document_lines(text: &str) -> Vec<(usize, String)> {
    let text: String = text.nfc().collect();
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.strip_suffix('\r').unwrap_or(l).to_string()))
        .filter(|(_, l)| !l.starts_with("%%"))
        .collect()
}

fn err(code: Code, line: usize, message: impl Into<String>) -> Diagnostic {
    Diagnostic::new(code, message).at_line(line)
}

/// Splits `key=value` fields, rejecting unknown and repeated keys.
fn key_values<'a>(
    fields: &[&'a str],
    allowed: &[&str],
    line: usize,
) -> Result<Vec<(&'a str, &'a str)>, Diagnostic> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::with_capacity(fields.len());
    for f in fields {
        let (k, v) = f
            .split_once('=')
            .ok_or_else(|| err(Code::Syntax, line, format!("expected key=value, found `{f}`")))?;
        if !allowed.contains(&k) {
            return Err(err(Code::Syntax, line, format!("unknown key `{k}`")));
        }
        if !seen.insert(k) {
            return Err(err(Code::Syntax, line, format!("repeated key `{k}`")));
        }
        out.push((k, v));
    }
    Ok(out)
}

fn node_list(value: &str, line: usize) -> Result<BTreeSet<NodeRef>, Diagnostic> {
    if value.is_empty() {
        return Err(err(Code::Ref, line, "empty node list"));
    }
    let mut out = BTreeSet::new();
    for item in value.split(',') {
        let node: NodeRef = item.parse().map_err(|e| err(Code::Ref, line, format!("{e}")))?;
        if !out.insert(node) {
            return Err(err(Code::Ref, line, format!("node {node} listed twice")));
        }
    }
    Ok(out)
}

fn tag_list(value: &str, line: usize) -> Result<BTreeSet<String>, Diagnostic> {
    let mut out = BTreeSet::new();
    for item in value.split(',') {
        if !is_tag_name(item) {
            return Err(err(Code::Syntax, line, format!("malformed tag `{item}`")));
        }
        if !out.insert(item.to_string()) {
            return Err(err(Code::Syntax, line, format!("tag `{item}` listed twice")));
        }
    }
    Ok(out)
}

fn join<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    items.into_iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",")
}
