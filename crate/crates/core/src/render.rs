//! Text and JSON renderings shared by the command line and the C interface.
//!
//! Tabular output is TSV with a header row; JSON output is one object per
//! line.

use serde_json::{json, Map, Value};

use crate::diag::Diagnostic;
use crate::query::{Command, ResultRow};
use crate::store::CorpusStats;
use crate::suggest::RoleSuggestion;

fn lines(rows: impl IntoIterator<Item = String>) -> String {
    rows.into_iter().map(|mut l| {
        l.push('\n');
        l
    }).collect()
}

pub fn rows_tsv(command: Command, rows: &[ResultRow]) -> String {
    let header = command.columns().join("\t");
    lines(std::iter::once(header).chain(rows.iter().map(|r| r.values.join("\t"))))
}

pub fn rows_json(command: Command, rows: &[ResultRow]) -> String {
    lines(rows.iter().map(|r| {
        let obj: Map<String, Value> = command
            .columns()
            .iter()
            .zip(&r.values)
            .map(|(c, v)| (c.to_string(), Value::String(v.clone())))
            .collect();
        Value::Object(obj).to_string()
    }))
}

pub fn rows(command: Command, rows: &[ResultRow], as_json: bool) -> String {
    if as_json {
        rows_json(command, rows)
    } else {
        rows_tsv(command, rows)
    }
}

fn histogram(h: &std::collections::BTreeMap<String, usize>) -> String {
    if h.is_empty() {
        return "-".into();
    }
    h.iter().map(|(k, v)| format!("{k}:{v}")).collect::<Vec<_>>().join(",")
}

/// Stats as `scope\tkey\tvalue` lines, or a single JSON document.
pub fn stats(s: &CorpusStats, as_json: bool) -> String {
    if as_json {
        return format!("{}\n", serde_json::to_string(s).expect("stats serialize"));
    }
    let mut out = vec!["scope\tkey\tvalue".to_string()];
    for (lang, l) in &s.languages {
        let mut row = |k: &str, v: String| out.push(format!("{lang}\t{k}\t{v}"));
        row("sentences", l.sentences.to_string());
        row("tokens", l.tokens.to_string());
        row("predicates", l.predicates.to_string());
        row("arguments", l.arguments.to_string());
        row("predicates_by_class", histogram(&l.predicates_by_class));
        row("binding_tags", histogram(&l.binding_tags));
        row("untagged_predicates", l.untagged_predicates.to_string());
    }
    for p in &s.pair_sets {
        let scope = format!("{}-{}", p.left, p.right);
        let mut row = |k: &str, v: String| out.push(format!("{scope}\t{k}\t{v}"));
        row("pairs", p.pairs.to_string());
        row("pred_alignments", p.pred_alignments.to_string());
        row("arg_alignments", p.arg_alignments.to_string());
        row("pred_alignment_tags", histogram(&p.pred_alignment_tags));
        row("arg_alignment_tags", histogram(&p.arg_alignment_tags));
        row("unaligned_preds", p.unaligned_preds.to_string());
        row("unaligned_args", p.unaligned_args.to_string());
    }
    lines(out)
}

pub fn suggestions(s: &[RoleSuggestion], as_json: bool) -> String {
    if as_json {
        return lines(s.iter().map(|x| {
            json!({"role": x.role, "frequency": x.frequency, "share": x.share}).to_string()
        }));
    }
    lines(s.iter().map(|x| format!("{}\t{}\t{:.4}", x.role, x.frequency, x.share)))
}

pub fn diagnostic_json(d: &Diagnostic) -> Value {
    json!({
        "severity": d.severity.to_string(),
        "code": d.code.as_str(),
        "file": d.file,
        "line": d.line,
        "message": d.message,
    })
}

pub fn diagnostics(ds: &[Diagnostic], as_json: bool) -> String {
    if as_json {
        lines(ds.iter().map(|d| diagnostic_json(d).to_string()))
    } else {
        lines(ds.iter().map(|d| d.to_string()))
    }
}
