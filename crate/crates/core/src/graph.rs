//! The syntax graph: every parse tree of a sentence merged into one DAG.
//!
//! Nodes are hash-consed bottom up. Two internal nodes are the same node iff
//! they have the same label and the same ordered children; terminal nodes
//! are keyed by (slot, concept) and null terminals by role. A slot with
//! several concepts becomes one preterminal node with one terminal child per
//! concept.

use std::collections::{BTreeMap, BTreeSet, BinaryHeap, HashMap};
use std::cmp::Reverse;
use std::fmt::{self, Write as _};

use crate::error::{Error, Result};
use crate::forest::{ElementLeaf, Leaf, SyntaxTree, TerminalRef};
use crate::model::{ElementSlot, NullTerminal, PennTag, SlotId};

pub const MAX_PATHS: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(pub usize);

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NodeKind {
    Internal,
    TerminalElement(TerminalRef),
    NullTerminal,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphNode {
    pub id: NodeId,
    pub label: PennTag,
    pub kind: NodeKind,
}

impl GraphNode {
    pub fn terminal(&self) -> Option<&TerminalRef> {
        match &self.kind {
            NodeKind::TerminalElement(t) => Some(t),
            _ => None,
        }
    }

    pub fn is_null(&self) -> bool {
        self.kind == NodeKind::NullTerminal
    }
}

/// Ordered sequence of labels met walking parent to child, excluding the
/// node the walk starts from.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RolePath(pub Vec<PennTag>);

impl fmt::Display for RolePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<&str> = self.0.iter().map(PennTag::as_str).collect();
        write!(f, "[{}]", labels.join(" "))
    }
}

#[derive(Debug, Clone)]
pub struct SyntaxGraph {
    nodes: Vec<GraphNode>,
    children: Vec<Vec<NodeId>>,
    parents: Vec<Vec<NodeId>>,
    roots: Vec<NodeId>,
    slots: Vec<ElementSlot>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum ConsKey {
    Terminal(TerminalRef),
    Null(PennTag),
    Internal(PennTag, Vec<usize>),
}

struct Builder {
    table: HashMap<ConsKey, usize>,
    labels: Vec<PennTag>,
    kinds: Vec<NodeKind>,
    children: Vec<Vec<usize>>,
}

impl Builder {
    fn intern(&mut self, key: ConsKey, label: PennTag, kind: NodeKind, children: Vec<usize>) -> usize {
        if let Some(&id) = self.table.get(&key) {
            return id;
        }
        let id = self.labels.len();
        self.labels.push(label);
        self.kinds.push(kind);
        self.children.push(children);
        self.table.insert(key, id);
        id
    }

    fn add(&mut self, tree: &SyntaxTree) -> usize {
        match tree {
            SyntaxTree::Leaf(Leaf::Null(n)) => self.intern(
                ConsKey::Null(n.role.clone()),
                n.role.clone(),
                NodeKind::NullTerminal,
                Vec::new(),
            ),
            SyntaxTree::Leaf(Leaf::Element(leaf)) => {
                let kids: Vec<usize> = leaf
                    .terminals
                    .iter()
                    .map(|t| {
                        self.intern(
                            ConsKey::Terminal(t.clone()),
                            leaf.role.clone(),
                            NodeKind::TerminalElement(t.clone()),
                            Vec::new(),
                        )
                    })
                    .collect();
                self.intern(
                    ConsKey::Internal(leaf.role.clone(), kids.clone()),
                    leaf.role.clone(),
                    NodeKind::Internal,
                    kids,
                )
            }
            SyntaxTree::Node { label, children } => {
                let kids: Vec<usize> = children.iter().map(|c| self.add(c)).collect();
                self.intern(
                    ConsKey::Internal(label.clone(), kids.clone()),
                    label.clone(),
                    NodeKind::Internal,
                    kids,
                )
            }
        }
    }
}

/// Merges a forest into one graph. Node ids follow a topological order,
/// parents before children.
pub fn build_syntax_graph(trees: &[SyntaxTree], slots: &[ElementSlot]) -> Result<SyntaxGraph> {
    if trees.is_empty() {
        return Err(Error::EmptyForest);
    }
    let mut b = Builder { table: HashMap::new(), labels: Vec::new(), kinds: Vec::new(), children: Vec::new() };
    let mut roots = Vec::new();
    for t in trees {
        let r = b.add(t);
        if !roots.contains(&r) {
            roots.push(r);
        }
    }

    let n = b.labels.len();
    // first-visit preorder from the roots, used to break ties deterministically
    let mut preorder = vec![usize::MAX; n];
    let mut counter = 0;
    fn visit(x: usize, kids: &[Vec<usize>], pre: &mut [usize], counter: &mut usize) {
        if pre[x] != usize::MAX {
            return;
        }
        pre[x] = *counter;
        *counter += 1;
        for &c in &kids[x] {
            visit(c, kids, pre, counter);
        }
    }
    for &r in &roots {
        visit(r, &b.children, &mut preorder, &mut counter);
    }

    let mut indegree = vec![0usize; n];
    for kids in &b.children {
        for &c in kids {
            indegree[c] += 1;
        }
    }
    let mut ready: BinaryHeap<Reverse<(usize, usize)>> = (0..n)
        .filter(|&x| indegree[x] == 0)
        .map(|x| Reverse((preorder[x], x)))
        .collect();
    let mut new_id = vec![usize::MAX; n];
    let mut next = 0;
    while let Some(Reverse((_, x))) = ready.pop() {
        new_id[x] = next;
        next += 1;
        for &c in &b.children[x] {
            indegree[c] -= 1;
            if indegree[c] == 0 {
                ready.push(Reverse((preorder[c], c)));
            }
        }
    }
    assert_eq!(next, n, "syntax graph has a cycle");

    let mut nodes = vec![None; n];
    let mut children = vec![Vec::new(); n];
    let mut parents = vec![Vec::new(); n];
    for old in 0..n {
        let id = new_id[old];
        nodes[id] = Some(GraphNode { id: NodeId(id), label: b.labels[old].clone(), kind: b.kinds[old].clone() });
        children[id] = b.children[old].iter().map(|&c| NodeId(new_id[c])).collect();
    }
    for (p, kids) in children.iter().enumerate() {
        for &c in kids {
            if !parents[c.0].contains(&NodeId(p)) {
                parents[c.0].push(NodeId(p));
            }
        }
    }
    for ps in &mut parents {
        ps.sort();
    }

    Ok(SyntaxGraph {
        nodes: nodes.into_iter().map(|n| n.expect("every node renumbered")).collect(),
        children,
        parents,
        roots: roots.into_iter().map(|r| NodeId(new_id[r])).collect(),
        slots: slots.to_vec(),
    })
}

impl SyntaxGraph {
    pub fn nodes(&self) -> &[GraphNode] {
        &self.nodes
    }

    pub fn node(&self, id: NodeId) -> Result<&GraphNode> {
        self.nodes.get(id.0).ok_or(Error::NodeNotFound(id))
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn children(&self, id: NodeId) -> &[NodeId] {
        &self.children[id.0]
    }

    pub fn parents(&self, id: NodeId) -> &[NodeId] {
        &self.parents[id.0]
    }

    pub fn roots(&self) -> &[NodeId] {
        &self.roots
    }

    pub fn slots(&self) -> &[ElementSlot] {
        &self.slots
    }

    pub fn slot(&self, id: SlotId) -> Option<&ElementSlot> {
        self.slots.iter().find(|s| s.id == id)
    }

    pub fn edge_count(&self) -> usize {
        self.children.iter().map(Vec::len).sum()
    }

    pub fn terminal_nodes(&self) -> impl Iterator<Item = &GraphNode> {
        self.nodes.iter().filter(|n| n.terminal().is_some())
    }

    /// Every tree the graph stands for, one per root, sorted.
    pub fn unfold(&self) -> Vec<SyntaxTree> {
        let mut out: Vec<SyntaxTree> = self.roots.iter().map(|&r| self.tree_at(r)).collect();
        out.sort();
        out.dedup();
        out
    }

    fn tree_at(&self, id: NodeId) -> SyntaxTree {
        let node = &self.nodes[id.0];
        let kids = &self.children[id.0];
        match &node.kind {
            NodeKind::NullTerminal => SyntaxTree::Leaf(Leaf::Null(NullTerminal { role: node.label.clone() })),
            NodeKind::TerminalElement(t) => SyntaxTree::Leaf(Leaf::Element(ElementLeaf {
                role: node.label.clone(),
                terminals: vec![t.clone()],
            })),
            NodeKind::Internal => {
                let terminals: Vec<TerminalRef> =
                    kids.iter().filter_map(|c| self.nodes[c.0].terminal().cloned()).collect();
                if !kids.is_empty() && terminals.len() == kids.len() {
                    SyntaxTree::Leaf(Leaf::Element(ElementLeaf { role: node.label.clone(), terminals }))
                } else {
                    SyntaxTree::Node {
                        label: node.label.clone(),
                        children: kids.iter().map(|&c| self.tree_at(c)).collect(),
                    }
                }
            }
        }
    }

    /// Nodes reachable from `from`, including itself.
    fn descendants(&self, from: NodeId) -> BTreeSet<NodeId> {
        let mut seen = BTreeSet::new();
        let mut stack = vec![from];
        while let Some(x) = stack.pop() {
            if seen.insert(x) {
                stack.extend(self.children[x.0].iter().copied());
            }
        }
        seen
    }

    /// Distinct label sequences along directed paths from `from` (or from any
    /// root when `None`) to `to`, sorted. A node reaches itself by the empty
    /// path.
    pub fn syntactic_paths_to(&self, to: NodeId, from: Option<NodeId>) -> Result<Vec<RolePath>> {
        self.node(to)?;
        let sources: Vec<NodeId> = match from {
            Some(u) => {
                self.node(u)?;
                vec![u]
            }
            None => self.roots.clone(),
        };
        // ancestors of `to` (inclusive): only these lie on a path to it
        let mut on_path = BTreeSet::new();
        let mut stack = vec![to];
        while let Some(x) = stack.pop() {
            if on_path.insert(x) {
                stack.extend(self.parents[x.0].iter().copied());
            }
        }
        let mut memo: HashMap<NodeId, BTreeSet<Vec<PennTag>>> = HashMap::new();
        let mut all = BTreeSet::new();
        for s in sources {
            if on_path.contains(&s) {
                all.extend(self.suffixes(s, to, &on_path, &mut memo)?);
                if all.len() > MAX_PATHS {
                    return Err(Error::PathLimitExceeded { node: to, cap: MAX_PATHS });
                }
            }
        }
        Ok(all.into_iter().map(RolePath).collect())
    }

    fn suffixes(
        &self,
        x: NodeId,
        to: NodeId,
        on_path: &BTreeSet<NodeId>,
        memo: &mut HashMap<NodeId, BTreeSet<Vec<PennTag>>>,
    ) -> Result<BTreeSet<Vec<PennTag>>> {
        if let Some(s) = memo.get(&x) {
            return Ok(s.clone());
        }
        let mut out = BTreeSet::new();
        if x == to {
            out.insert(Vec::new());
        } else {
            for &c in &self.children[x.0] {
                if !on_path.contains(&c) {
                    continue;
                }
                for tail in self.suffixes(c, to, on_path, memo)? {
                    let mut p = Vec::with_capacity(tail.len() + 1);
                    p.push(self.nodes[c.0].label.clone());
                    p.extend(tail);
                    out.insert(p);
                }
                if out.len() > MAX_PATHS {
                    return Err(Error::PathLimitExceeded { node: to, cap: MAX_PATHS });
                }
            }
        }
        memo.insert(x, out.clone());
        Ok(out)
    }

    /// True if every path from a root to `target` passes through `via`.
    pub fn dominates(&self, via: NodeId, target: NodeId) -> bool {
        if via == target {
            return true;
        }
        // search from the roots while skipping `via`
        let mut seen = BTreeSet::new();
        let mut stack: Vec<NodeId> = self.roots.iter().copied().filter(|&r| r != via).collect();
        while let Some(x) = stack.pop() {
            if x == target {
                return false;
            }
            if seen.insert(x) {
                stack.extend(self.children[x.0].iter().copied().filter(|&c| c != via));
            }
        }
        self.descendants(via).contains(&target)
    }

    /// Graphviz rendering; equal graphs give identical bytes.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph syntax {\n");
        for node in &self.nodes {
            match &node.kind {
                NodeKind::Internal => {
                    let _ = writeln!(out, "  {} [label=\"{}\"];", node.id, escape(node.label.as_str()));
                }
                NodeKind::NullTerminal => {
                    let _ = writeln!(out, "  {} [label=\"{}: null\", style=dashed];", node.id, escape(node.label.as_str()));
                }
                NodeKind::TerminalElement(t) => {
                    let text = match self.slot(t.slot) {
                        Some(s) => format!(
                            "{}: {}\\n{} {} {}",
                            escape(node.label.as_str()),
                            escape(&t.concept),
                            escape(s.modality.as_str()),
                            escape(&s.repr),
                            s.time
                        ),
                        None => format!("{}: {}\\n{}", escape(node.label.as_str()), escape(&t.concept), t.slot),
                    };
                    let _ = writeln!(out, "  {} [shape=box, label=\"{}\"];", node.id, text);
                }
            }
        }
        for (p, kids) in self.children.iter().enumerate() {
            for c in kids {
                let _ = writeln!(out, "  n{p} -> {c};");
            }
        }
        out.push_str("}\n");
        out
    }

    /// Multiset of (label, number of parents) for terminal nodes, handy in
    /// tests and reports.
    pub fn terminal_parent_counts(&self) -> BTreeMap<(SlotId, String), usize> {
        self.terminal_nodes()
            .map(|n| {
                let t = n.terminal().expect("terminal node");
                ((t.slot, t.concept.clone()), self.parents[n.id.0].len())
            })
            .collect()
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}
