use std::collections::{HashMap, HashSet};
use std::fmt::Write;

use super::{document_lines, err};
use crate::diag::{Code, Diagnostic};
use crate::model::{is_identifier, NodeRef, NonTerminal, SentenceTree, Token, TreeError};

pub fn parse_trees(text: &str) -> Result<Vec<SentenceTree>, Diagnostic> {
    parse_trees_located(text).map(|(trees, _)| trees)
}

struct Block {
    id: String,
    bos_line: usize,
    tokens: Vec<Token>,
    nonterminals: Vec<NonTerminal>,
    lines: HashMap<NodeRef, usize>,
}

impl Block {
    fn finish(self) -> Result<SentenceTree, Diagnostic> {
        let Block { id, bos_line, tokens, nonterminals, lines } = self;
        SentenceTree::new(id, tokens, nonterminals).map_err(|e| {
            let line = e.node().and_then(|n| lines.get(&n).copied()).unwrap_or(bos_line);
            err(tree_code(&e), line, e.to_string())
        })
    }
}

fn tree_code(e: &TreeError) -> Code {
    match e {
        TreeError::NoTokens => Code::TreeEmpty,
        TreeError::TokenIndex { .. } | TreeError::EmptyField(_) => Code::Token,
        TreeError::NodeIdRange(_) => Code::NodeIdRange,
        TreeError::DuplicateNode(_) => Code::NodeDup,
        TreeError::UnknownParent { .. } => Code::ParentUnknown,
        TreeError::Cycle(_) => Code::TreeCycle,
        TreeError::EmptyConstituent(_) => Code::NtEmpty,
    }
}

enum Line<'a> {
    Bos(&'a str),
    Eos(&'a str),
    NonTerminal(NonTerminal),
    Terminal { form: &'a str, pos: &'a str, edge: Option<String>, parent: Option<u32> },
}

fn edge_field(s: &str) -> Option<String> {
    (s != "--").then(|| s.to_string())
}

fn parent_field(s: &str, line: usize) -> Result<Option<u32>, Diagnostic> {
    let p: u32 = s
        .parse()
        .ok()
        .filter(|_| s.bytes().all(|b| b.is_ascii_digit()))
        .ok_or_else(|| err(Code::Syntax, line, format!("malformed parent `{s}`")))?;
    Ok((p != 0).then_some(p))
}

fn classify(raw: &str, line: usize) -> Result<Line<'_>, Diagnostic> {
    if let Some(rest) = raw.strip_prefix("#BOS") {
        return marker(rest, line).map(Line::Bos);
    }
    if let Some(rest) = raw.strip_prefix("#EOS") {
        return marker(rest, line).map(Line::Eos);
    }
    let fields: Vec<&str> = raw.split('\t').collect();
    if fields.len() != 4 {
        return Err(err(
            Code::Syntax,
            line,
            format!("expected 4 tab-separated fields, found {}", fields.len()),
        ));
    }
    if let Some(id) = fields[0].strip_prefix('#').filter(|s| s.starts_with(|c: char| c.is_ascii_digit())) {
        let id: u32 = id
            .parse()
            .ok()
            .filter(|_| !(id.len() > 1 && id.starts_with('0')))
            .ok_or_else(|| err(Code::Syntax, line, format!("malformed node id `#{id}`")))?;
        if id < crate::model::FIRST_NONTERMINAL_ID {
            return Err(err(Code::NodeIdRange, line, TreeError::NodeIdRange(id).to_string()));
        }
        if fields[1].is_empty() || fields[2].is_empty() {
            return Err(err(Code::Token, line, "empty category or edge label"));
        }
        return Ok(Line::NonTerminal(NonTerminal {
            id,
            category: fields[1].to_string(),
            edge: edge_field(fields[2]),
            parent: parent_field(fields[3], line)?,
        }));
    }
    if fields[..3].iter().any(|f| f.is_empty()) {
        return Err(err(Code::Token, line, "empty form, POS or edge label"));
    }
    Ok(Line::Terminal {
        form: fields[0],
        pos: fields[1],
        edge: edge_field(fields[2]),
        parent: parent_field(fields[3], line)?,
    })
}

fn marker(rest: &str, line: usize) -> Result<&str, Diagnostic> {
    rest.strip_prefix(' ')
        .filter(|id| is_identifier(id))
        .ok_or_else(|| err(Code::Syntax, line, "expected `#BOS <id>` / `#EOS <id>`"))
}

/// Parses a `.tb` document, also returning the `#BOS` line of each sentence.
pub fn parse_trees_located(
    text: &str,
) -> Result<(Vec<SentenceTree>, HashMap<String, usize>), Diagnostic> {
    let mut trees = Vec::new();
    let mut starts = HashMap::new();
    let mut seen = HashSet::new();
    let mut block: Option<Block> = None;

    for (line, raw) in document_lines(text) {
        if raw.is_empty() {
            if block.is_some() {
                return Err(err(Code::Syntax, line, "blank line inside a sentence block"));
            }
            continue;
        }
        let parsed = classify(&raw, line)?;
        let Some(b) = block.as_mut() else {
            match parsed {
                Line::Bos(id) => {
                    if !seen.insert(id.to_string()) {
                        return Err(err(Code::SentDup, line, format!("duplicate sentence id `{id}`")));
                    }
                    starts.insert(id.to_string(), line);
                    block = Some(Block {
                        id: id.to_string(),
                        bos_line: line,
                        tokens: Vec::new(),
                        nonterminals: Vec::new(),
                        lines: HashMap::new(),
                    });
                    continue;
                }
                _ => return Err(err(Code::Syntax, line, "expected `#BOS <id>`")),
            }
        };
        match parsed {
            Line::Bos(_) => {
                return Err(err(Code::Syntax, line, format!("`#BOS` before `#EOS {}`", b.id)))
            }
            Line::Eos(id) => {
                if id != b.id {
                    return Err(err(
                        Code::Syntax,
                        line,
                        format!("`#EOS {id}` closes sentence `{}`", b.id),
                    ));
                }
                if let Some(b) = block.take() {
                    trees.push(b.finish()?);
                }
            }
            Line::Terminal { form, pos, edge, parent } => {
                if !b.nonterminals.is_empty() {
                    return Err(err(Code::TbOrder, line, "terminal after nonterminal"));
                }
                let index = b.tokens.len() as u32 + 1;
                b.lines.insert(NodeRef::Terminal(index), line);
                b.tokens.push(Token {
                    index,
                    form: form.to_string(),
                    pos: pos.to_string(),
                    edge,
                    parent,
                });
            }
            Line::NonTerminal(nt) => {
                if let Some(prev) = b.nonterminals.last() {
                    if prev.id == nt.id {
                        return Err(err(Code::NodeDup, line, TreeError::DuplicateNode(nt.id).to_string()));
                    }
                    if prev.id > nt.id {
                        return Err(err(
                            Code::TbOrder,
                            line,
                            format!("nonterminal #{} after #{}", nt.id, prev.id),
                        ));
                    }
                }
                b.lines.insert(NodeRef::NonTerminal(nt.id), line);
                b.nonterminals.push(nt);
            }
        }
    }
    if let Some(b) = block {
        return Err(err(Code::Syntax, b.bos_line, format!("sentence `{}` lacks `#EOS`", b.id)));
    }
    Ok((trees, starts))
}

pub fn serialize_trees<'a>(trees: impl IntoIterator<Item = &'a SentenceTree>) -> String {
    let mut out = String::new();
    let parent = |p: Option<u32>| p.unwrap_or(0);
    let edge = |e: &Option<String>| e.clone().unwrap_or_else(|| "--".into());
    for t in trees {
        let _ = writeln!(out, "#BOS {}", t.id());
        for tok in t.tokens() {
            let _ = writeln!(out, "{}\t{}\t{}\t{}", tok.form, tok.pos, edge(&tok.edge), parent(tok.parent));
        }
        for nt in t.nonterminals() {
            let _ = writeln!(out, "#{}\t{}\t{}\t{}", nt.id, nt.category, edge(&nt.edge), parent(nt.parent));
        }
        let _ = writeln!(out, "#EOS {}", t.id());
    }
    out
}
