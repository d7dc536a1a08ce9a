use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt::Write;

use super::{document_lines, err, join, key_values, node_list, tag_list};
use crate::diag::{Code, Diagnostic};
use crate::model::{
    is_identifier, is_upper_name, Argument, Binding, ElementRef, NodeRef, PredArgLayer, PredClass,
    Predicate,
};
use crate::registry::TagRegistry;

/// The `.pa` content of one sentence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PredArgBlock {
    pub sentence: String,
    pub layer: PredArgLayer,
}

/// Line numbers of `#SENT` headers and of element lines.
#[derive(Debug, Clone, Default)]
pub struct PredArgLines {
    pub sentences: HashMap<String, usize>,
    pub elements: HashMap<(String, ElementRef), usize>,
}

pub fn parse_predarg(text: &str, registry: &TagRegistry) -> Result<Vec<PredArgBlock>, Diagnostic> {
    parse_predarg_located(text, registry).map(|(b, _)| b)
}

struct BindingFields {
    nodes: Option<BTreeSet<NodeRef>>,
    excl: Option<BTreeSet<NodeRef>>,
    tags: Option<BTreeSet<String>>,
}

impl BindingFields {
    fn new() -> Self {
        BindingFields { nodes: None, excl: None, tags: None }
    }

    fn take(&mut self, key: &str, value: &str, line: usize, registry: &TagRegistry) -> Result<bool, Diagnostic> {
        match key {
            "nodes" => self.nodes = Some(node_list(value, line)?),
            "excl" => self.excl = Some(node_list(value, line)?),
            "tags" => {
                let tags = tag_list(value, line)?;
                if let Some(t) = tags.iter().find(|t| !registry.is_binding_tag(t)) {
                    return Err(err(Code::TagUnknown, line, format!("unknown binding tag `{t}`")));
                }
                self.tags = Some(tags);
            }
            _ => return Ok(false),
        }
        Ok(true)
    }

    fn into_binding(self, target: ElementRef, line: usize) -> Result<Option<Binding>, Diagnostic> {
        match self.nodes {
            Some(included) => Ok(Some(Binding {
                target,
                included,
                excluded: self.excl.unwrap_or_default(),
                tags: self.tags.unwrap_or_default(),
            })),
            None if self.excl.is_some() || self.tags.is_some() => {
                Err(err(Code::Syntax, line, "`excl=` or `tags=` without `nodes=`"))
            }
            None => Ok(None),
        }
    }
}

fn name(value: &str, what: &str, line: usize) -> Result<String, Diagnostic> {
    if is_upper_name(value) {
        Ok(value.to_string())
    } else {
        Err(err(Code::Name, line, format!("{what} `{value}` is not an uppercase name")))
    }
}

/// Parses a `.pa` document. Binding tags are checked against `registry`;
/// node references are only checked syntactically.
pub fn parse_predarg_located(
    text: &str,
    registry: &TagRegistry,
) -> Result<(Vec<PredArgBlock>, PredArgLines), Diagnostic> {
    let mut blocks: Vec<PredArgBlock> = Vec::new();
    let mut lines = PredArgLines::default();
    let mut seen = HashSet::new();

    for (line, raw) in document_lines(text) {
        let fields: Vec<&str> = raw.split_whitespace().collect();
        let Some((&keyword, rest)) = fields.split_first() else {
            continue;
        };
        if keyword == "#SENT" {
            let [id] = rest else {
                return Err(err(Code::Syntax, line, "expected `#SENT <id>`"));
            };
            if !is_identifier(id) {
                return Err(err(Code::Syntax, line, format!("malformed sentence id `{id}`")));
            }
            if !seen.insert(id.to_string()) {
                return Err(err(Code::SentDup, line, format!("duplicate sentence block `{id}`")));
            }
            lines.sentences.insert(id.to_string(), line);
            blocks.push(PredArgBlock { sentence: id.to_string(), layer: PredArgLayer::default() });
            continue;
        }
        let Some(block) = blocks.last_mut() else {
            return Err(err(Code::Syntax, line, "expected `#SENT <id>`"));
        };
        let Some((&pid, kvs)) = rest.split_first() else {
            return Err(err(Code::Syntax, line, format!("`{keyword}` without predicate id")));
        };
        if !is_identifier(pid) {
            return Err(err(Code::Syntax, line, format!("malformed predicate id `{pid}`")));
        }
        let layer = &mut block.layer;
        match keyword {
            "PRED" => {
                let kvs = key_values(kvs, &["lemma", "class", "group", "nodes", "excl", "tags"], line)?;
                let (mut lemma, mut class, mut group) = (None, None, None);
                let mut bf = BindingFields::new();
                for (k, v) in kvs {
                    match k {
                        "lemma" => lemma = Some(name(v, "lemma", line)?),
                        "group" => group = Some(name(v, "group", line)?),
                        "class" => {
                            class = Some(v.parse::<PredClass>().map_err(|e| err(Code::Class, line, e.to_string()))?)
                        }
                        _ => {
                            bf.take(k, v, line, registry)?;
                        }
                    }
                }
                let missing = |k: &str| err(Code::Syntax, line, format!("PRED lacks `{k}=`"));
                let pred = Predicate {
                    id: pid.to_string(),
                    lemma: lemma.ok_or_else(|| missing("lemma"))?,
                    class: class.ok_or_else(|| missing("class"))?,
                    group: group.ok_or_else(|| missing("group"))?,
                };
                if layer.predicates.contains_key(pid) {
                    return Err(err(Code::PredDup, line, format!("duplicate predicate `{pid}`")));
                }
                let target = ElementRef::predicate(pid);
                let binding = bf.into_binding(target.clone(), line)?;
                lines.elements.insert((block.sentence.clone(), target), line);
                layer.add_predicate(pred, binding);
            }
            "ARG" => {
                let kvs = key_values(kvs, &["role", "nodes", "excl", "tags"], line)?;
                let mut role = None;
                let mut bf = BindingFields::new();
                for (k, v) in kvs {
                    if k == "role" {
                        role = Some(name(v, "role", line)?);
                    } else {
                        bf.take(k, v, line, registry)?;
                    }
                }
                let role = role.ok_or_else(|| err(Code::Syntax, line, "ARG lacks `role=`"))?;
                if !layer.predicates.contains_key(pid) {
                    return Err(err(Code::Order, line, format!("ARG for `{pid}` before its PRED line")));
                }
                let arg = Argument { pred: pid.to_string(), role };
                if layer.arguments.contains(&arg) {
                    return Err(err(
                        Code::RoleDup,
                        line,
                        format!("predicate `{pid}` already has role {}", arg.role),
                    ));
                }
                let target = ElementRef::from(&arg);
                let binding = bf.into_binding(target.clone(), line)?;
                lines.elements.insert((block.sentence.clone(), target), line);
                layer.add_argument(arg, binding);
            }
            other => return Err(err(Code::Syntax, line, format!("unknown line type `{other}`"))),
        }
    }
    Ok((blocks, lines))
}

fn write_binding(out: &mut String, b: Option<&Binding>) {
    let Some(b) = b else { return };
    let _ = write!(out, " nodes={}", join(&b.included));
    if !b.excluded.is_empty() {
        let _ = write!(out, " excl={}", join(&b.excluded));
    }
    if !b.tags.is_empty() {
        let _ = write!(out, " tags={}", join(&b.tags));
    }
}

/// Canonical `.pa`: blocks in the given order separated by blank lines;
/// predicates by id, each followed by its arguments ordered by role.
pub fn serialize_predarg<'a>(blocks: impl IntoIterator<Item = &'a PredArgBlock>) -> String {
    let mut out = String::new();
    for (i, block) in blocks.into_iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        let _ = writeln!(out, "#SENT {}", block.sentence);
        let layer = &block.layer;
        for p in layer.predicates.values() {
            let _ = write!(out, "PRED {} lemma={} class={} group={}", p.id, p.lemma, p.class, p.group);
            write_binding(&mut out, layer.binding(&ElementRef::predicate(p.id.clone())));
            out.push('\n');
            for a in layer.arguments_of(&p.id) {
                let _ = write!(out, "ARG {} role={}", a.pred, a.role);
                write_binding(&mut out, layer.binding(&ElementRef::from(a)));
                out.push('\n');
            }
        }
    }
    out
}
