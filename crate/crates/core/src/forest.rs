//! Chart parsing of aligned leaves into every parse tree.
//!
//! The chart is a shared packed forest: for each nonterminal and span it
//! keeps every (production, split points) alternative. Trees are enumerated
//! from it only after their number is known to fit under the cap.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::grammar::Grammar;
use crate::model::{NullTerminal, PennTag, SlotId};

pub const DEFAULT_MAX_TREES: usize = 64;

/// One concept variant of one slot, as it hangs under a leaf.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TerminalRef {
    pub slot: SlotId,
    pub concept: String,
}

/// A parse leaf: one role position filled by one or more terminal
/// elements. Several terminals appear when slots were fused (redundant or
/// competing elements) or a slot carries several concepts.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ElementLeaf {
    pub role: PennTag,
    pub terminals: Vec<TerminalRef>,
}

impl ElementLeaf {
    pub fn new(role: &str, terminals: Vec<TerminalRef>) -> Self {
        ElementLeaf { role: PennTag::new(role), terminals }
    }

    pub fn slots(&self) -> impl Iterator<Item = SlotId> + '_ {
        let mut last = None;
        self.terminals.iter().filter_map(move |t| {
            if last == Some(t.slot) {
                None
            } else {
                last = Some(t.slot);
                Some(t.slot)
            }
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Leaf {
    Element(ElementLeaf),
    Null(NullTerminal),
}

impl Leaf {
    pub fn role(&self) -> &PennTag {
        match self {
            Leaf::Element(e) => &e.role,
            Leaf::Null(n) => &n.role,
        }
    }

    pub fn is_null(&self) -> bool {
        matches!(self, Leaf::Null(_))
    }
}

/// Ordered rooted tree. Internal nodes carry a nonterminal; leaves are the
/// preterminal positions of the input.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SyntaxTree {
    Node { label: PennTag, children: Vec<SyntaxTree> },
    Leaf(Leaf),
}

impl SyntaxTree {
    pub fn node(label: &str, children: Vec<SyntaxTree>) -> Self {
        SyntaxTree::Node { label: PennTag::new(label), children }
    }

    pub fn label(&self) -> &PennTag {
        match self {
            SyntaxTree::Node { label, .. } => label,
            SyntaxTree::Leaf(leaf) => leaf.role(),
        }
    }

    pub fn leaves(&self) -> Vec<&Leaf> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves<'a>(&'a self, out: &mut Vec<&'a Leaf>) {
        match self {
            SyntaxTree::Node { children, .. } => {
                children.iter().for_each(|c| c.collect_leaves(out))
            }
            SyntaxTree::Leaf(leaf) => out.push(leaf),
        }
    }

    pub fn null_count(&self) -> usize {
        self.leaves().iter().filter(|l| l.is_null()).count()
    }

    /// Checks that every internal node matches a production of `g`.
    pub fn conforms_to(&self, g: &Grammar) -> bool {
        match self {
            SyntaxTree::Leaf(_) => true,
            SyntaxTree::Node { label, children } => {
                let rhs: Vec<PennTag> = children.iter().map(|c| c.label().clone()).collect();
                g.productions().iter().any(|p| &p.lhs == label && p.rhs == rhs)
                    && children.iter().all(|c| c.conforms_to(g))
            }
        }
    }
}

impl fmt::Display for SyntaxTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SyntaxTree::Node { label, children } => {
                write!(f, "({label}")?;
                for c in children {
                    write!(f, " {c}")?;
                }
                f.write_str(")")
            }
            SyntaxTree::Leaf(Leaf::Null(n)) => write!(f, "({} null)", n.role),
            SyntaxTree::Leaf(Leaf::Element(e)) => {
                write!(f, "({}", e.role)?;
                for t in &e.terminals {
                    write!(f, " {}:{}", t.slot, t.concept)?;
                }
                f.write_str(")")
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParseOptions {
    pub max_trees: usize,
}

impl Default for ParseOptions {
    fn default() -> Self {
        ParseOptions { max_trees: DEFAULT_MAX_TREES }
    }
}

/// Every distinct parse tree of `leaves` rooted at `goal`, sorted.
pub fn parse_forest(leaves: &[ElementLeaf], g: &Grammar, goal: &PennTag) -> Result<Vec<SyntaxTree>> {
    parse_forest_with(leaves, g, goal, ParseOptions::default())
}

pub fn parse_forest_with(
    leaves: &[ElementLeaf],
    g: &Grammar,
    goal: &PennTag,
    opts: ParseOptions,
) -> Result<Vec<SyntaxTree>> {
    let leaves = resolve_leaves(leaves, g)?;
    Chart::build(&leaves, g).trees(goal, opts.max_trees)
}

/// Like [`parse_forest`], but when there is no parse, retries with exactly
/// one null terminal of any terminal role inserted at any position.
pub fn parse_with_gap(leaves: &[ElementLeaf], g: &Grammar, goal: &PennTag) -> Result<Vec<SyntaxTree>> {
    parse_with_gap_with(leaves, g, goal, ParseOptions::default())
}

pub fn parse_with_gap_with(
    leaves: &[ElementLeaf],
    g: &Grammar,
    goal: &PennTag,
    opts: ParseOptions,
) -> Result<Vec<SyntaxTree>> {
    let leaves = resolve_leaves(leaves, g)?;
    let direct = Chart::build(&leaves, g).trees(goal, opts.max_trees)?;
    if !direct.is_empty() {
        return Ok(direct);
    }
    let mut out = Vec::new();
    for pos in 0..=leaves.len() {
        for role in g.terminals() {
            let mut seq = leaves.clone();
            seq.insert(pos, Leaf::Null(NullTerminal { role: role.clone() }));
            out.extend(Chart::build(&seq, g).trees(goal, opts.max_trees)?);
            if out.len() > opts.max_trees {
                return Err(Error::TooManyTrees { cap: opts.max_trees });
            }
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

fn resolve_leaves(leaves: &[ElementLeaf], g: &Grammar) -> Result<Vec<Leaf>> {
    leaves
        .iter()
        .map(|leaf| {
            let role = g.resolve(&leaf.role);
            if !g.terminals().contains(&role) {
                return Err(Error::UnknownTag(leaf.role.to_string()));
            }
            Ok(Leaf::Element(ElementLeaf { role, terminals: leaf.terminals.clone() }))
        })
        .collect()
}

/// (production index, inner split points)
#[derive(Debug, Clone)]
struct Alternative {
    production: usize,
    bounds: Vec<usize>,
}

struct Chart<'g> {
    grammar: &'g Grammar,
    leaves: Vec<Leaf>,
    /// (nonterminal, start, end) -> packed alternatives
    cells: HashMap<(PennTag, usize, usize), Vec<Alternative>>,
}

impl<'g> Chart<'g> {
    fn build(leaves: &[Leaf], grammar: &'g Grammar) -> Self {
        let mut chart = Chart { grammar, leaves: leaves.to_vec(), cells: HashMap::new() };
        let order = unit_order(grammar);
        let n = leaves.len();
        for len in 1..=n {
            for i in 0..=n - len {
                let j = i + len;
                for nt in &order {
                    let mut alts = Vec::new();
                    for (pi, p) in grammar.productions().iter().enumerate() {
                        if &p.lhs != nt || p.rhs.len() > len {
                            continue;
                        }
                        let mut bounds = vec![i];
                        chart.splits(&p.rhs, j, &mut bounds, &mut |b| {
                            alts.push(Alternative { production: pi, bounds: b.to_vec() })
                        });
                    }
                    if !alts.is_empty() {
                        chart.cells.insert((nt.clone(), i, j), alts);
                    }
                }
            }
        }
        chart
    }

    fn derives(&self, sym: &PennTag, i: usize, j: usize) -> bool {
        if self.grammar.is_nonterminal(sym) {
            self.cells.contains_key(&(sym.clone(), i, j))
        } else {
            j == i + 1 && self.leaves[i].role() == sym
        }
    }

    fn splits(&self, rhs: &[PennTag], end: usize, bounds: &mut Vec<usize>, emit: &mut dyn FnMut(&[usize])) {
        let from = *bounds.last().expect("bounds start with the span start");
        let Some((sym, rest)) = rhs.split_first() else {
            if from == end {
                emit(bounds);
            }
            return;
        };
        // every remaining symbol covers at least one leaf
        let max_to = end - rest.len();
        for to in from + 1..=max_to {
            if self.derives(sym, from, to) {
                bounds.push(to);
                self.splits(rest, end, bounds, emit);
                bounds.pop();
            }
        }
    }

    fn count(&self, sym: &PennTag, i: usize, j: usize, memo: &mut HashMap<(PennTag, usize, usize), usize>) -> usize {
        if !self.grammar.is_nonterminal(sym) {
            return usize::from(self.derives(sym, i, j));
        }
        let key = (sym.clone(), i, j);
        if let Some(&c) = memo.get(&key) {
            return c;
        }
        let mut total = 0usize;
        for alt in self.cells.get(&key).into_iter().flatten() {
            let rhs = &self.grammar.productions()[alt.production].rhs;
            let mut product = 1usize;
            for (k, s) in rhs.iter().enumerate() {
                product = product.saturating_mul(self.count(s, alt.bounds[k], alt.bounds[k + 1], memo));
            }
            total = total.saturating_add(product);
        }
        memo.insert(key, total);
        total
    }

    fn trees(&self, goal: &PennTag, cap: usize) -> Result<Vec<SyntaxTree>> {
        let n = self.leaves.len();
        if n == 0 {
            return Ok(Vec::new());
        }
        let total = self.count(goal, 0, n, &mut HashMap::new());
        if total > cap {
            return Err(Error::TooManyTrees { cap });
        }
        let mut memo = HashMap::new();
        let mut out = self.enumerate(goal, 0, n, &mut memo);
        out.sort();
        out.dedup();
        Ok(out)
    }

    fn enumerate(
        &self,
        sym: &PennTag,
        i: usize,
        j: usize,
        memo: &mut HashMap<(PennTag, usize, usize), Vec<SyntaxTree>>,
    ) -> Vec<SyntaxTree> {
        if !self.grammar.is_nonterminal(sym) {
            return if self.derives(sym, i, j) {
                vec![SyntaxTree::Leaf(self.leaves[i].clone())]
            } else {
                Vec::new()
            };
        }
        let key = (sym.clone(), i, j);
        if let Some(t) = memo.get(&key) {
            return t.clone();
        }
        let mut out = Vec::new();
        for alt in self.cells.get(&key).into_iter().flatten() {
            let rhs = &self.grammar.productions()[alt.production].rhs;
            let mut partial: Vec<Vec<SyntaxTree>> = vec![Vec::new()];
            for (k, s) in rhs.iter().enumerate() {
                let options = self.enumerate(s, alt.bounds[k], alt.bounds[k + 1], memo);
                partial = partial
                    .into_iter()
                    .flat_map(|prefix| {
                        options.iter().map(move |o| {
                            let mut p = prefix.clone();
                            p.push(o.clone());
                            p
                        })
                    })
                    .collect();
            }
            out.extend(
                partial
                    .into_iter()
                    .map(|children| SyntaxTree::Node { label: sym.clone(), children }),
            );
        }
        memo.insert(key, out.clone());
        out
    }
}

/// Nonterminals ordered so that `a -> b` unit productions place `b` first.
fn unit_order(g: &Grammar) -> Vec<PennTag> {
    let mut order: Vec<PennTag> = Vec::new();
    let mut remaining: Vec<PennTag> = g.nonterminals().iter().cloned().collect();
    while !remaining.is_empty() {
        let before = remaining.len();
        remaining.retain(|nt| {
            let ready = g.productions().iter().all(|p| {
                !(&p.lhs == nt
                    && p.rhs.len() == 1
                    && g.is_nonterminal(&p.rhs[0])
                    && !order.contains(&p.rhs[0]))
            });
            if ready {
                order.push(nt.clone());
            }
            !ready
        });
        // grammar construction rejects unit cycles
        assert!(remaining.len() < before, "unit production cycle");
    }
    order
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grammar::load_grammar;

    fn leaves(roles: &[&str]) -> Vec<ElementLeaf> {
        roles
            .iter()
            .enumerate()
            .map(|(i, r)| {
                ElementLeaf::new(r, vec![TerminalRef { slot: SlotId(i), concept: format!("w{i}") }])
            })
            .collect()
    }

    fn default() -> Grammar {
        Grammar::default_grammar()
    }

    #[test]
    fn determiner_noun_is_one_np() {
        let trees = parse_forest(&leaves(&["dt", "nn"]), &default(), &PennTag::new("np")).unwrap();
        assert_eq!(trees.len(), 1);
        assert_eq!(trees[0].to_string(), "(np (dt e0:w0) (nn e1:w1))");
    }

    #[test]
    fn adjective_compound_has_two_readings() {
        let trees = parse_forest(&leaves(&["vb", "jj", "nn", "nn"]), &default(), &PennTag::new("s")).unwrap();
        assert_eq!(trees.len(), 2);
    }

    #[test]
    fn second_pp_attaches_two_ways() {
        let trees = parse_forest(
            &leaves(&["vb", "dt", "nn", "in", "nn", "in", "nn"]),
            &default(),
            &PennTag::new("s"),
        )
        .unwrap();
        assert_eq!(trees.len(), 2);
    }

    #[test]
    fn lone_preposition_is_not_a_sentence() {
        assert!(parse_forest(&leaves(&["in"]), &default(), &PennTag::new("s")).unwrap().is_empty());
    }

    #[test]
    fn unknown_tag_is_an_error() {
        assert!(matches!(
            parse_forest(&leaves(&["zz"]), &default(), &PennTag::new("s")),
            Err(Error::UnknownTag(t)) if t == "zz"
        ));
    }

    #[test]
    fn alias_is_applied_to_leaf_roles() {
        let trees = parse_forest(&leaves(&["vb", "dt", "nn", "rb", "nn"]), &default(), &PennTag::new("s")).unwrap();
        assert_eq!(trees.len(), 1);
    }

    #[test]
    fn gap_fills_a_missing_noun() {
        let g = default();
        let seq = leaves(&["vb", "dt", "in", "dt", "nn"]);
        assert!(parse_forest(&seq, &g, &PennTag::new("s")).unwrap().is_empty());
        let trees = parse_with_gap(&seq, &g, &PennTag::new("s")).unwrap();
        assert_eq!(trees.len(), 1);
        assert_eq!(trees[0].null_count(), 1);
        assert_eq!(
            trees[0].to_string(),
            "(s (vp (vb e0:w0) (np (dt e1:w1) (nn null)) (pp (in e2:w2) (np (dt e3:w3) (nn e4:w4)))))"
        );
    }

    #[test]
    fn gap_is_a_no_op_on_parseable_input() {
        let g = default();
        let seq = leaves(&["vb", "dt", "nn", "in", "nn"]);
        assert_eq!(
            parse_with_gap(&seq, &g, &PennTag::new("s")).unwrap(),
            parse_forest(&seq, &g, &PennTag::new("s")).unwrap()
        );
    }

    #[test]
    fn two_missing_elements_give_nothing() {
        let g = load_grammar("s -> a b c").unwrap();
        let seq = leaves(&["a"]);
        assert!(parse_with_gap(&seq, &g, &PennTag::new("s")).unwrap().is_empty());
    }

    #[test]
    fn cap_is_an_error_not_a_truncation() {
        let g = load_grammar("s -> s s\ns -> a").unwrap();
        let seq = leaves(&["a"; 8]);
        assert!(matches!(
            parse_forest_with(&seq, &g, &PennTag::new("s"), ParseOptions { max_trees: 64 }),
            Err(Error::TooManyTrees { cap: 64 })
        ));
        // Catalan(4) = 14
        let trees = parse_forest(&leaves(&["a"; 5]), &g, &PennTag::new("s")).unwrap();
        assert_eq!(trees.len(), 14);
    }

    #[test]
    fn unit_chains_are_followed() {
        let g = load_grammar("s -> x\nx -> y\ny -> a\ny -> a a").unwrap();
        assert_eq!(parse_forest(&leaves(&["a"]), &g, &PennTag::new("s")).unwrap().len(), 1);
        assert_eq!(parse_forest(&leaves(&["a", "a"]), &g, &PennTag::new("s")).unwrap().len(), 1);
    }

    #[test]
    fn parses_conform_and_keep_leaf_order() {
        let g = default();
        let seq = leaves(&["vb", "dt", "nn", "in", "nn", "in", "nn"]);
        for t in parse_forest(&seq, &g, &PennTag::new("s")).unwrap() {
            assert!(t.conforms_to(&g));
            let roles: Vec<_> = t.leaves().iter().map(|l| l.role().to_string()).collect();
            assert_eq!(roles, ["vb", "dt", "nn", "in", "nn", "in", "nn"]);
        }
    }
}
