use std::collections::HashMap;
use std::fmt::Write;

use super::{document_lines, err, key_values};
use crate::diag::{Code, Diagnostic};
use crate::model::{is_identifier, AlignKind, Alignment, ElementRef, SentencePairAlignment, SentenceRef};
use crate::registry::TagRegistry;

type PairKey = (SentenceRef, SentenceRef);

/// Line numbers of `#PAIR` headers and of alignment lines (by position
/// within their pair).
#[derive(Debug, Clone, Default)]
pub struct AlignLines {
    pub pairs: HashMap<PairKey, usize>,
    pub alignments: HashMap<(PairKey, usize), usize>,
}

pub fn parse_alignments(
    text: &str,
    registry: &TagRegistry,
) -> Result<Vec<SentencePairAlignment>, Diagnostic> {
    parse_alignments_located(text, registry).map(|(p, _)| p)
}

fn sentence_ref(s: &str, line: usize) -> Result<SentenceRef, Diagnostic> {
    match s.split_once(':') {
        Some((lang, id)) if is_identifier(lang) && is_identifier(id) => Ok(SentenceRef::new(lang, id)),
        _ => Err(err(Code::Ref, line, format!("malformed sentence reference `{s}` (expected lang:id)"))),
    }
}

/// Parses an `.al` document. Endpoints are checked syntactically only;
/// whether they resolve, and whether they fit the line kind, is left to
/// validation.
pub fn parse_alignments_located(
    text: &str,
    registry: &TagRegistry,
) -> Result<(Vec<SentencePairAlignment>, AlignLines), Diagnostic> {
    let mut pairs: Vec<SentencePairAlignment> = Vec::new();
    let mut lines = AlignLines::default();

    for (line, raw) in document_lines(text) {
        let fields: Vec<&str> = raw.split_whitespace().collect();
        let Some((&keyword, rest)) = fields.split_first() else {
            continue;
        };
        if keyword == "#PAIR" {
            let [l, r] = rest else {
                return Err(err(Code::Syntax, line, "expected `#PAIR <lang>:<id> <lang>:<id>`"));
            };
            let key = (sentence_ref(l, line)?, sentence_ref(r, line)?);
            if lines.pairs.contains_key(&key) {
                return Err(err(Code::PairDup, line, format!("duplicate pair {} {}", key.0, key.1)));
            }
            lines.pairs.insert(key.clone(), line);
            pairs.push(SentencePairAlignment::new(key.0, key.1));
            continue;
        }
        let kind = match keyword {
            "PALIGN" => AlignKind::Pred,
            "AALIGN" => AlignKind::Arg,
            other => return Err(err(Code::Syntax, line, format!("unknown line type `{other}`"))),
        };
        let Some(pair) = pairs.last_mut() else {
            return Err(err(Code::Syntax, line, "expected `#PAIR` header"));
        };
        let [l, r, opts @ ..] = rest else {
            return Err(err(Code::Syntax, line, format!("`{keyword}` needs two element references")));
        };
        let endpoint = |s: &str| s.parse::<ElementRef>().map_err(|e| err(Code::Ref, line, e.to_string()));
        let (left, right) = (endpoint(l)?, endpoint(r)?);
        let mut tag = None;
        for (_, v) in key_values(opts, &["tag"], line)? {
            if !registry.is_alignment_tag(v) {
                return Err(err(Code::TagUnknown, line, format!("unknown alignment tag `{v}`")));
            }
            tag = Some(v.to_string());
        }
        lines
            .alignments
            .insert(((pair.left.clone(), pair.right.clone()), pair.alignments.len()), line);
        pair.alignments.push(Alignment { kind, left, right, tag });
    }
    Ok((pairs, lines))
}

/// Canonical `.al`: pairs in the given order separated by blank lines;
/// within a pair, predicate alignments first, then by left reference.
pub fn serialize_alignments<'a>(pairs: impl IntoIterator<Item = &'a SentencePairAlignment>) -> String {
    let mut out = String::new();
    for (i, pair) in pairs.into_iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        let _ = writeln!(out, "#PAIR {} {}", pair.left, pair.right);
        for a in pair.sorted_alignments() {
            let _ = write!(out, "{} {} {}", a.kind.keyword(), a.left, a.right);
            if let Some(t) = &a.tag {
                let _ = write!(out, " tag={t}");
            }
            out.push('\n');
        }
    }
    out
}
