use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use super::{Binding, ResolveError};

/// Smallest identifier a nonterminal may carry. Terminals are addressed by
/// their 1-based surface index, so the two ranges never collide.
pub const FIRST_NONTERMINAL_ID: u32 = 500;

/// A reference to a node of a [`SentenceTree`]: `t<k>` for the terminal at
/// surface index `k`, `n<id>` for a nonterminal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NodeRef {
    Terminal(u32),
    NonTerminal(u32),
}

impl fmt::Display for NodeRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NodeRef::Terminal(i) => write!(f, "t{i}"),
            NodeRef::NonTerminal(id) => write!(f, "n{id}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("malformed node reference `{0}` (expected t<index> or n<id>)")]
pub struct NodeRefError(pub String);

impl FromStr for NodeRef {
    type Err = NodeRefError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || NodeRefError(s.to_string());
        let (kind, digits) = s.split_at_checked(1).ok_or_else(err)?;
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err());
        }
        // reject leading zeros so that every node has exactly one spelling
        if digits.len() > 1 && digits.starts_with('0') {
            return Err(err());
        }
        let n: u32 = digits.parse().map_err(|_| err())?;
        match kind {
            "t" if n >= 1 => Ok(NodeRef::Terminal(n)),
            "n" => Ok(NodeRef::NonTerminal(n)),
            _ => Err(err()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    /// 1-based surface position.
    pub index: u32,
    pub form: String,
    pub pos: String,
    pub edge: Option<String>,
    /// Parent nonterminal id; `None` attaches to the virtual root.
    pub parent: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonTerminal {
    pub id: u32,
    pub category: String,
    pub edge: Option<String>,
    pub parent: Option<u32>,
}

/// Structural defects that prevent a [`SentenceTree`] from being built.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("sentence has no tokens")]
    NoTokens,
    #[error("token at position {position} carries index {index}")]
    TokenIndex { position: u32, index: u32 },
    #[error("empty field on node {0}")]
    EmptyField(NodeRef),
    #[error("nonterminal id {0} is below {FIRST_NONTERMINAL_ID}")]
    NodeIdRange(u32),
    #[error("duplicate nonterminal id {0}")]
    DuplicateNode(u32),
    #[error("node {node} attaches to unknown parent {parent}")]
    UnknownParent { node: NodeRef, parent: u32 },
    #[error("nonterminal {0} is part of a cycle")]
    Cycle(u32),
    #[error("nonterminal {0} has no children")]
    EmptyConstituent(u32),
}

impl TreeError {
    /// The node the defect is reported against, if any.
    pub fn node(&self) -> Option<NodeRef> {
        match *self {
            TreeError::NoTokens => None,
            TreeError::TokenIndex { position, .. } => Some(NodeRef::Terminal(position)),
            TreeError::EmptyField(n) => Some(n),
            TreeError::UnknownParent { node, .. } => Some(node),
            TreeError::NodeIdRange(id)
            | TreeError::DuplicateNode(id)
            | TreeError::Cycle(id)
            | TreeError::EmptyConstituent(id) => Some(NodeRef::NonTerminal(id)),
        }
    }
}

/// One sentence of the phrasal layer: tokens plus a constituent tree whose
/// nonterminals hang below a virtual root. Crossing branches are allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SentenceTree {
    id: String,
    tokens: Vec<Token>,
    nonterminals: BTreeMap<u32, NonTerminal>,
    children: BTreeMap<u32, Vec<NodeRef>>,
    root_children: Vec<NodeRef>,
}

impl SentenceTree {
    pub fn new(
        id: impl Into<String>,
        tokens: Vec<Token>,
        nonterminals: Vec<NonTerminal>,
    ) -> Result<Self, TreeError> {
        if tokens.is_empty() {
            return Err(TreeError::NoTokens);
        }
        for (pos, tok) in (1u32..).zip(&tokens) {
            if tok.index != pos {
                return Err(TreeError::TokenIndex { position: pos, index: tok.index });
            }
            if tok.form.is_empty() || tok.pos.is_empty() || tok.edge.as_deref() == Some("") {
                return Err(TreeError::EmptyField(NodeRef::Terminal(pos)));
            }
        }

        let mut nts = BTreeMap::new();
        for nt in nonterminals {
            if nt.id < FIRST_NONTERMINAL_ID {
                return Err(TreeError::NodeIdRange(nt.id));
            }
            if nt.category.is_empty() || nt.edge.as_deref() == Some("") {
                return Err(TreeError::EmptyField(NodeRef::NonTerminal(nt.id)));
            }
            let id = nt.id;
            if nts.insert(id, nt).is_some() {
                return Err(TreeError::DuplicateNode(id));
            }
        }

        let mut children: BTreeMap<u32, Vec<NodeRef>> =
            nts.keys().map(|&id| (id, Vec::new())).collect();
        let mut root_children = Vec::new();
        let attachments = tokens
            .iter()
            .map(|t| (NodeRef::Terminal(t.index), t.parent))
            .chain(nts.values().map(|n| (NodeRef::NonTerminal(n.id), n.parent)));
        for (node, parent) in attachments {
            match parent {
                None => root_children.push(node),
                Some(p) => match children.get_mut(&p) {
                    Some(list) => list.push(node),
                    None => return Err(TreeError::UnknownParent { node, parent: p }),
                },
            }
        }

        // every nonterminal must reach the virtual root
        let mut rooted: BTreeSet<u32> = BTreeSet::new();
        for &start in nts.keys() {
            let mut path = Vec::new();
            let mut cur = Some(start);
            while let Some(id) = cur {
                if rooted.contains(&id) {
                    break;
                }
                if path.contains(&id) {
                    return Err(TreeError::Cycle(*path.iter().min().unwrap_or(&id)));
                }
                path.push(id);
                cur = nts[&id].parent;
            }
            rooted.extend(path);
        }

        if let Some((&id, _)) = children.iter().find(|(_, c)| c.is_empty()) {
            return Err(TreeError::EmptyConstituent(id));
        }
        for list in children.values_mut() {
            list.sort();
        }
        root_children.sort();

        Ok(SentenceTree {
            id: id.into(),
            tokens,
            nonterminals: nts,
            children,
            root_children,
        })
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn tokens(&self) -> &[Token] {
        &self.tokens
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn token(&self, index: u32) -> Option<&Token> {
        index.checked_sub(1).and_then(|i| self.tokens.get(i as usize))
    }

    /// Nonterminals in ascending id order.
    pub fn nonterminals(&self) -> impl Iterator<Item = &NonTerminal> {
        self.nonterminals.values()
    }

    pub fn nonterminal(&self, id: u32) -> Option<&NonTerminal> {
        self.nonterminals.get(&id)
    }

    pub fn contains(&self, node: NodeRef) -> bool {
        match node {
            NodeRef::Terminal(i) => self.token(i).is_some(),
            NodeRef::NonTerminal(id) => self.nonterminals.contains_key(&id),
        }
    }

    /// All nodes: terminals in surface order, then nonterminals by id.
    pub fn nodes(&self) -> impl Iterator<Item = NodeRef> + '_ {
        self.tokens
            .iter()
            .map(|t| NodeRef::Terminal(t.index))
            .chain(self.nonterminals.keys().map(|&id| NodeRef::NonTerminal(id)))
    }

    /// Parent nonterminal of `node`; `Ok(None)` for children of the virtual root.
    pub fn parent(&self, node: NodeRef) -> Result<Option<u32>, ResolveError> {
        match node {
            NodeRef::Terminal(i) => self.token(i).map(|t| t.parent),
            NodeRef::NonTerminal(id) => self.nonterminals.get(&id).map(|n| n.parent),
        }
        .ok_or_else(|| self.unknown(node))
    }

    pub fn children(&self, id: u32) -> &[NodeRef] {
        self.children.get(&id).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn root_children(&self) -> &[NodeRef] {
        &self.root_children
    }

    /// True iff `ancestor` properly dominates `node`.
    pub fn dominates(&self, ancestor: NodeRef, node: NodeRef) -> bool {
        let NodeRef::NonTerminal(target) = ancestor else {
            return false;
        };
        let mut cur = self.parent(node).ok().flatten();
        while let Some(id) = cur {
            if id == target {
                return true;
            }
            cur = self.nonterminals.get(&id).and_then(|n| n.parent);
        }
        false
    }

    /// Surface indices dominated by `node` (descendant-or-self), ascending.
    pub fn node_yield(&self, node: NodeRef) -> Result<Vec<u32>, ResolveError> {
        if !self.contains(node) {
            return Err(self.unknown(node));
        }
        let mut out = Vec::new();
        let mut stack = vec![node];
        while let Some(n) = stack.pop() {
            match n {
                NodeRef::Terminal(i) => out.push(i),
                NodeRef::NonTerminal(id) => stack.extend_from_slice(self.children(id)),
            }
        }
        out.sort_unstable();
        Ok(out)
    }

    /// Tokens covered by `binding`: the union of its included yields minus the
    /// union of its excluded yields. An empty result is an error.
    pub fn resolve_yield(&self, binding: &Binding) -> Result<Vec<u32>, YieldError> {
        let mut covered = BTreeSet::new();
        for &node in &binding.included {
            covered.extend(self.node_yield(node)?);
        }
        for &node in &binding.excluded {
            for i in self.node_yield(node)? {
                covered.remove(&i);
            }
        }
        if covered.is_empty() {
            return Err(YieldError::Empty {
                sentence: self.id.clone(),
                element: binding.target.to_string(),
            });
        }
        Ok(covered.into_iter().collect())
    }

    pub fn is_discontinuous(&self, binding: &Binding) -> Result<bool, YieldError> {
        Ok(!is_contiguous(&self.resolve_yield(binding)?))
    }

    /// Token forms of `indices`, space-joined, with `…` marking each gap.
    pub fn render_span(&self, indices: &[u32]) -> String {
        let mut out = String::new();
        let mut prev: Option<u32> = None;
        for &i in indices {
            let Some(tok) = self.token(i) else { continue };
            if let Some(p) = prev {
                out.push(' ');
                if i != p + 1 {
                    out.push_str("… ");
                }
            }
            out.push_str(&tok.form);
            prev = Some(i);
        }
        out
    }

    fn unknown(&self, node: NodeRef) -> ResolveError {
        ResolveError::UnknownNode {
            sentence: self.id.clone(),
            node,
        }
    }
}

/// True iff the ascending `indices` form one gap-free run.
pub fn is_contiguous(indices: &[u32]) -> bool {
    indices.windows(2).all(|w| w[1] == w[0] + 1)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum YieldError {
    #[error(transparent)]
    Resolve(#[from] ResolveError),
    #[error("empty binding yield for {element} in sentence {sentence}")]
    Empty { sentence: String, element: String },
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::ElementRef;

    fn tok(index: u32, form: &str, parent: Option<u32>) -> Token {
        Token {
            index,
            form: form.into(),
            pos: "X".into(),
            edge: None,
            parent,
        }
    }

    fn nt(id: u32, parent: Option<u32>) -> NonTerminal {
        NonTerminal {
            id,
            category: "XP".into(),
            edge: None,
            parent,
        }
    }

    /// a b [c d] e under one root: 500 covers 1..5, 501 covers 3..4
    fn sample() -> SentenceTree {
        SentenceTree::new(
            "s1",
            vec![
                tok(1, "a", Some(500)),
                tok(2, "b", Some(500)),
                tok(3, "c", Some(501)),
                tok(4, "d", Some(501)),
                tok(5, "e", Some(500)),
            ],
            vec![nt(500, None), nt(501, Some(500))],
        )
        .unwrap()
    }

    fn binding(incl: &[NodeRef], excl: &[NodeRef]) -> Binding {
        Binding {
            target: ElementRef::predicate("p1"),
            included: incl.iter().copied().collect(),
            excluded: excl.iter().copied().collect(),
            tags: Default::default(),
        }
    }

    #[test]
    fn node_ref_syntax() {
        assert_eq!("t3".parse(), Ok(NodeRef::Terminal(3)));
        assert_eq!("n502".parse(), Ok(NodeRef::NonTerminal(502)));
        for bad in ["t0", "x3", "t", "n", "t03", "n-1", "T3", "", "t3a"] {
            assert!(bad.parse::<NodeRef>().is_err(), "{bad}");
        }
        assert_eq!(NodeRef::NonTerminal(517).to_string(), "n517");
    }

    #[test]
    fn terminal_yields_itself() {
        let t = sample();
        assert_eq!(t.node_yield(NodeRef::Terminal(3)).unwrap(), vec![3]);
    }

    #[test]
    fn root_yields_everything() {
        let t = sample();
        assert_eq!(t.node_yield(NodeRef::NonTerminal(500)).unwrap(), vec![1, 2, 3, 4, 5]);
    }

    #[test]
    fn unknown_node_names_sentence_and_node() {
        let err = sample().node_yield(NodeRef::NonTerminal(777)).unwrap_err();
        assert_eq!(
            err,
            ResolveError::UnknownNode { sentence: "s1".into(), node: NodeRef::NonTerminal(777) }
        );
        assert!(err.to_string().contains("s1") && err.to_string().contains("n777"));
    }

    #[test]
    fn single_terminal_binding() {
        let t = sample();
        assert_eq!(t.resolve_yield(&binding(&[NodeRef::Terminal(4)], &[])).unwrap(), vec![4]);
    }

    #[test]
    fn exclusion_creates_gap() {
        let t = sample();
        let b = binding(&[NodeRef::NonTerminal(500)], &[NodeRef::NonTerminal(501)]);
        assert_eq!(t.resolve_yield(&b).unwrap(), vec![1, 2, 5]);
        assert!(t.is_discontinuous(&b).unwrap());
        assert_eq!(t.render_span(&[1, 2, 5]), "a b … e");
    }

    #[test]
    fn empty_yield_is_an_error() {
        let t = sample();
        let b = binding(
            &[NodeRef::NonTerminal(501)],
            &[NodeRef::Terminal(3), NodeRef::Terminal(4)],
        );
        assert!(matches!(t.resolve_yield(&b), Err(YieldError::Empty { .. })));
    }

    #[test]
    fn contiguity() {
        assert!(is_contiguous(&[2, 3, 4]));
        assert!(!is_contiguous(&[2, 3, 7, 8]));
        assert!(is_contiguous(&[9]));
    }

    #[test]
    fn degenerate_sentence_is_legal() {
        let t = SentenceTree::new("s", vec![tok(1, "Ja", None)], vec![]).unwrap();
        assert_eq!(t.root_children(), &[NodeRef::Terminal(1)]);
        assert_eq!(t.node_yield(NodeRef::Terminal(1)).unwrap(), vec![1]);
    }

    #[test]
    fn structural_errors() {
        assert_eq!(SentenceTree::new("s", vec![], vec![]), Err(TreeError::NoTokens));
        assert_eq!(
            SentenceTree::new("s", vec![tok(1, "a", None)], vec![nt(499, None)]),
            Err(TreeError::NodeIdRange(499))
        );
        assert_eq!(
            SentenceTree::new("s", vec![tok(1, "a", Some(500))], vec![nt(500, None), nt(500, None)]),
            Err(TreeError::DuplicateNode(500))
        );
        assert_eq!(
            SentenceTree::new("s", vec![tok(1, "a", Some(600))], vec![]),
            Err(TreeError::UnknownParent { node: NodeRef::Terminal(1), parent: 600 })
        );
        assert_eq!(
            SentenceTree::new(
                "s",
                vec![tok(1, "a", Some(500))],
                vec![nt(500, Some(501)), nt(501, Some(500))]
            ),
            Err(TreeError::Cycle(500))
        );
        assert_eq!(
            SentenceTree::new("s", vec![tok(1, "a", None)], vec![nt(500, None)]),
            Err(TreeError::EmptyConstituent(500))
        );
        assert_eq!(
            SentenceTree::new("s", vec![tok(2, "a", None)], vec![]),
            Err(TreeError::TokenIndex { position: 1, index: 2 })
        );
    }

    #[test]
    fn self_loop_is_a_cycle() {
        assert_eq!(
            SentenceTree::new("s", vec![tok(1, "a", Some(500))], vec![nt(500, Some(500))]),
            Err(TreeError::Cycle(500))
        );
    }

    #[test]
    fn dominance() {
        let t = sample();
        assert!(t.dominates(NodeRef::NonTerminal(500), NodeRef::Terminal(3)));
        assert!(t.dominates(NodeRef::NonTerminal(500), NodeRef::NonTerminal(501)));
        assert!(!t.dominates(NodeRef::NonTerminal(501), NodeRef::NonTerminal(501)));
        assert!(!t.dominates(NodeRef::NonTerminal(501), NodeRef::Terminal(5)));
        assert!(!t.dominates(NodeRef::Terminal(3), NodeRef::Terminal(3)));
    }
}
