use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use super::{is_identifier, is_upper_name, NodeRef, ResolveError, SentenceTree};

/// Syntactic class of a predicate expression.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum PredClass {
    #[serde(rename = "v")]
    Verbal,
    #[serde(rename = "n")]
    Nominal,
    #[serde(rename = "a")]
    Adjectival,
}

impl PredClass {
    pub const ALL: [PredClass; 3] = [PredClass::Verbal, PredClass::Nominal, PredClass::Adjectival];

    pub fn as_str(self) -> &'static str {
        match self {
            PredClass::Verbal => "v",
            PredClass::Nominal => "n",
            PredClass::Adjectival => "a",
        }
    }
}

impl fmt::Display for PredClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown predicate class `{0}` (expected v, n or a)")]
pub struct PredClassError(pub String);

impl FromStr for PredClass {
    type Err = PredClassError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "v" => Ok(PredClass::Verbal),
            "n" => Ok(PredClass::Nominal),
            "a" => Ok(PredClass::Adjectival),
            _ => Err(PredClassError(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Predicate {
    pub id: String,
    /// Capitalised citation form, e.g. `HARMONISE`.
    pub lemma: String,
    pub class: PredClass,
    /// Derivationally related predicates share a group and its role names.
    pub group: String,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Argument {
    pub pred: String,
    pub role: String,
}

/// Names a predicate (`p1`) or one of its arguments (`p1.ENT_HARMONISED`)
/// within a sentence.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ElementRef {
    pub pred: String,
    pub role: Option<String>,
}

impl ElementRef {
    pub fn predicate(pred: impl Into<String>) -> Self {
        ElementRef { pred: pred.into(), role: None }
    }

    pub fn argument(pred: impl Into<String>, role: impl Into<String>) -> Self {
        ElementRef { pred: pred.into(), role: Some(role.into()) }
    }

    pub fn is_predicate(&self) -> bool {
        self.role.is_none()
    }

    /// The reference of the owning predicate (itself for predicates).
    pub fn owner(&self) -> ElementRef {
        ElementRef::predicate(self.pred.clone())
    }
}

impl From<&Argument> for ElementRef {
    fn from(a: &Argument) -> Self {
        ElementRef::argument(a.pred.clone(), a.role.clone())
    }
}

impl fmt::Display for ElementRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.role {
            None => f.write_str(&self.pred),
            Some(r) => write!(f, "{}.{}", self.pred, r),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("malformed element reference `{0}` (expected <pred> or <pred>.<ROLE>)")]
pub struct ElementRefError(pub String);

impl FromStr for ElementRef {
    type Err = ElementRefError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ElementRefError(s.to_string());
        match s.split_once('.') {
            None if is_identifier(s) => Ok(ElementRef::predicate(s)),
            Some((p, r)) if is_identifier(p) && is_upper_name(r) => Ok(ElementRef::argument(p, r)),
            _ => Err(err()),
        }
    }
}

/// Attachment of one predicate or argument to tree nodes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Binding {
    pub target: ElementRef,
    pub included: BTreeSet<NodeRef>,
    pub excluded: BTreeSet<NodeRef>,
    pub tags: BTreeSet<String>,
}

impl Binding {
    pub fn new(target: ElementRef, included: impl IntoIterator<Item = NodeRef>) -> Self {
        Binding {
            target,
            included: included.into_iter().collect(),
            excluded: BTreeSet::new(),
            tags: BTreeSet::new(),
        }
    }

    pub fn excluding(mut self, nodes: impl IntoIterator<Item = NodeRef>) -> Self {
        self.excluded.extend(nodes);
        self
    }

    pub fn tagged<S: Into<String>>(mut self, tags: impl IntoIterator<Item = S>) -> Self {
        self.tags.extend(tags.into_iter().map(Into::into));
        self
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeRef> + '_ {
        self.included.iter().chain(&self.excluded).copied()
    }
}

/// The predicate-argument and binding layers of one sentence.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PredArgLayer {
    pub predicates: BTreeMap<String, Predicate>,
    pub arguments: BTreeSet<Argument>,
    pub bindings: BTreeMap<ElementRef, Binding>,
}

pub enum Element<'a> {
    Predicate(&'a Predicate),
    Argument(&'a Argument),
}

impl PredArgLayer {
    pub fn is_empty(&self) -> bool {
        self.predicates.is_empty() && self.arguments.is_empty() && self.bindings.is_empty()
    }

    pub fn add_predicate(&mut self, pred: Predicate, binding: Option<Binding>) {
        let r = ElementRef::predicate(pred.id.clone());
        if let Some(b) = binding {
            self.bindings.insert(r, b);
        }
        self.predicates.insert(pred.id.clone(), pred);
    }

    pub fn add_argument(&mut self, arg: Argument, binding: Option<Binding>) {
        if let Some(b) = binding {
            self.bindings.insert(ElementRef::from(&arg), b);
        }
        self.arguments.insert(arg);
    }

    pub fn arguments_of<'a>(&'a self, pred: &'a str) -> impl Iterator<Item = &'a Argument> + 'a {
        self.arguments.iter().filter(move |a| a.pred == pred)
    }

    pub fn binding(&self, element: &ElementRef) -> Option<&Binding> {
        self.bindings.get(element)
    }

    /// Every predicate and argument reference, predicates first per owner.
    pub fn elements(&self) -> impl Iterator<Item = ElementRef> + '_ {
        let preds = self.predicates.keys().map(ElementRef::predicate);
        let args = self.arguments.iter().map(ElementRef::from);
        let mut all: Vec<_> = preds.chain(args).collect();
        all.sort();
        all.into_iter()
    }
}

/// One sentence with all of its monolingual layers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonolingualAnnotation {
    pub tree: SentenceTree,
    pub layer: PredArgLayer,
}

impl MonolingualAnnotation {
    pub fn new(tree: SentenceTree, layer: PredArgLayer) -> Self {
        MonolingualAnnotation { tree, layer }
    }

    pub fn id(&self) -> &str {
        self.tree.id()
    }

    pub fn predicates(&self) -> impl Iterator<Item = &Predicate> {
        self.layer.predicates.values()
    }

    pub fn arguments(&self) -> impl Iterator<Item = &Argument> {
        self.layer.arguments.iter()
    }

    pub fn predicate(&self, id: &str) -> Option<&Predicate> {
        self.layer.predicates.get(id)
    }

    pub fn binding(&self, element: &ElementRef) -> Option<&Binding> {
        self.layer.binding(element)
    }

    /// Resolves `p1` to a predicate and `p1.ROLE` to an argument.
    pub fn element_of(&self, element: &ElementRef) -> Result<Element<'_>, ResolveError> {
        let pred = self.layer.predicates.get(&element.pred).ok_or_else(|| {
            ResolveError::UnknownPredicate {
                sentence: self.id().to_string(),
                pred: element.pred.clone(),
            }
        })?;
        match &element.role {
            None => Ok(Element::Predicate(pred)),
            Some(role) => self
                .layer
                .arguments
                .iter()
                .find(|a| a.pred == element.pred && &a.role == role)
                .map(Element::Argument)
                .ok_or_else(|| ResolveError::UnknownRole {
                    sentence: self.id().to_string(),
                    pred: element.pred.clone(),
                    role: role.clone(),
                }),
        }
    }

    /// Resolved yield of an element's binding, if it has a resolvable one.
    pub fn element_yield(&self, element: &ElementRef) -> Option<Vec<u32>> {
        self.binding(element).and_then(|b| self.tree.resolve_yield(b).ok())
    }
}
