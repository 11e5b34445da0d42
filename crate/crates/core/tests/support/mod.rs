#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::PathBuf;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use mmambig::forest::{ElementLeaf, Leaf, SyntaxTree, TerminalRef};
use mmambig::grammar::{Grammar, Production};
use mmambig::model::{ElementSlot, Modality, NullTerminal, PennTag, SlotId, TimeInterval};

pub const WORKED: [(&str, &str); 7] = [
    ("lexical", "Lexical"),
    ("temporal_semantic", "TemporalSemantic"),
    ("target", "Target"),
    ("gap", "Gap"),
    ("analytic", "Analytic"),
    ("attachment", "Attachment"),
    ("unambiguous", "Unambiguous"),
];

pub fn worked_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/worked").join(format!("{name}.xml"))
}

pub fn worked(name: &str) -> String {
    std::fs::read_to_string(worked_path(name)).expect("worked example present")
}

// ---- brute-force derivation enumerator ----

/// All derivation trees of `leaves` from `goal`, found by trying every
/// production and every way of cutting the span into nonempty pieces.
/// Exponential; only for tiny inputs.
pub fn brute_force_trees(g: &Grammar, leaves: &[ElementLeaf], goal: &str) -> Vec<SyntaxTree> {
    let lhs: BTreeSet<String> = g.productions().iter().map(|p| p.lhs.as_str().to_string()).collect();
    let mut out = derive(g, &lhs, leaves, goal, 0, leaves.len());
    out.sort();
    out.dedup();
    out
}

fn derive(g: &Grammar, lhs: &BTreeSet<String>, leaves: &[ElementLeaf], sym: &str, i: usize, j: usize) -> Vec<SyntaxTree> {
    if !lhs.contains(sym) {
        if j == i + 1 && leaves[i].role.as_str() == sym {
            return vec![SyntaxTree::Leaf(Leaf::Element(leaves[i].clone()))];
        }
        return Vec::new();
    }
    let mut out = Vec::new();
    for p in g.productions().iter().filter(|p| p.lhs.as_str() == sym) {
        let rhs: Vec<&str> = p.rhs.iter().map(PennTag::as_str).collect();
        for kids in sequences(g, lhs, leaves, &rhs, i, j) {
            out.push(SyntaxTree::Node { label: p.lhs.clone(), children: kids });
        }
    }
    out
}

fn sequences(
    g: &Grammar,
    lhs: &BTreeSet<String>,
    leaves: &[ElementLeaf],
    syms: &[&str],
    i: usize,
    j: usize,
) -> Vec<Vec<SyntaxTree>> {
    if syms.is_empty() {
        return if i == j { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    // every symbol covers at least one leaf
    let rest = syms.len() - 1;
    for k in i + 1..=j.saturating_sub(rest) {
        let heads = derive(g, lhs, leaves, syms[0], i, k);
        if heads.is_empty() {
            continue;
        }
        let tails = sequences(g, lhs, leaves, &syms[1..], k, j);
        for h in &heads {
            for t in &tails {
                let mut v = Vec::with_capacity(syms.len());
                v.push(h.clone());
                v.extend(t.iter().cloned());
                out.push(v);
            }
        }
    }
    out
}

// ---- random inputs ----

const NONTERMINALS: [&str; 4] = ["s", "a", "b", "c"];
const TERMINALS: [&str; 3] = ["x", "y", "z"];

/// Random grammar with at most `max_productions` rules and no unit cycles
/// (a unit rule only points to a later nonterminal).
pub fn random_grammar(rng: &mut ChaCha8Rng, max_productions: usize) -> Grammar {
    loop {
        let n = rng.gen_range(1..=max_productions);
        // few nonterminals give more ambiguity
        let nts = &NONTERMINALS[..rng.gen_range(1..=NONTERMINALS.len())];
        let mut prods = Vec::with_capacity(n);
        for k in 0..n {
            let li = if k == 0 { 0 } else { rng.gen_range(0..nts.len()) };
            let len = rng.gen_range(1..=3);
            let mut rhs: Vec<&str> = (0..len)
                .map(|_| {
                    if rng.gen_bool(0.5) {
                        *TERMINALS.choose(rng).unwrap()
                    } else {
                        *nts.choose(rng).unwrap()
                    }
                })
                .collect();
            if len == 1 {
                if let Some(ri) = nts.iter().position(|s| *s == rhs[0]) {
                    if ri <= li {
                        rhs[0] = TERMINALS.choose(rng).unwrap();
                    }
                }
            }
            prods.push(Production::new(nts[li], &rhs));
        }
        let g = Grammar::new(PennTag::new("s"), prods).expect("acyclic grammar with a start rule");
        if !g.terminals().is_empty() {
            return g;
        }
    }
}

pub fn leaf(role: &str, slot: usize) -> ElementLeaf {
    ElementLeaf::new(role, vec![TerminalRef { slot: SlotId(slot), concept: format!("w{slot}") }])
}

fn expand(rng: &mut ChaCha8Rng, g: &Grammar, sym: &PennTag, depth: usize, out: &mut Vec<PennTag>, max: usize) -> bool {
    if out.len() > max {
        return false;
    }
    if !g.is_nonterminal(sym) {
        out.push(sym.clone());
        return true;
    }
    if depth == 0 {
        return false;
    }
    let options: Vec<&Production> = g.productions().iter().filter(|p| &p.lhs == sym).collect();
    let p = options.choose(rng).unwrap();
    p.rhs.iter().all(|r| expand(rng, g, r, depth - 1, out, max))
}

/// 1..=max_leaves leaves. Half the time the roles are the yield of a random
/// derivation, so a good share of cases parse.
pub fn random_leaves(rng: &mut ChaCha8Rng, g: &Grammar, max_leaves: usize) -> Vec<ElementLeaf> {
    if rng.gen_bool(0.5) {
        for _ in 0..20 {
            let mut roles = Vec::new();
            if expand(rng, g, g.start(), 6, &mut roles, max_leaves) && (1..=max_leaves).contains(&roles.len()) {
                return roles.iter().enumerate().map(|(i, r)| leaf(r.as_str(), i)).collect();
            }
        }
    }
    let terms: Vec<&PennTag> = g.terminals().iter().collect();
    let n = rng.gen_range(1..=max_leaves);
    (0..n).map(|i| leaf(terms.choose(rng).unwrap().as_str(), i)).collect()
}

pub fn random_slots(rng: &mut ChaCha8Rng, n: usize) -> Vec<ElementSlot> {
    let roles = ["dt", "nn", "vb", "in", "jj"];
    (0..n)
        .map(|i| {
            let k = rng.gen_range(1..=2);
            ElementSlot {
                id: SlotId(i),
                modality: Modality::new(if rng.gen_bool(0.5) { "speech" } else { "sketch" }),
                repr: format!("r{i}"),
                time: TimeInterval::new(2 * i as u64, 2 * i as u64 + 1),
                role: PennTag::new(roles.choose(rng).unwrap()),
                concepts: (0..k).map(|c| format!("c{i}_{c}")).collect(),
                deictic: false,
            }
        })
        .collect()
}

fn random_tree(rng: &mut ChaCha8Rng, slots: &[ElementSlot], depth: usize, budget: &mut usize) -> SyntaxTree {
    let labels = ["s", "np", "vp", "pp"];
    if depth == 0 || *budget <= 1 || rng.gen_bool(0.3) {
        *budget = budget.saturating_sub(1);
        if rng.gen_bool(0.1) {
            return SyntaxTree::Leaf(Leaf::Null(NullTerminal { role: PennTag::new("nn") }));
        }
        let s = slots.choose(rng).unwrap();
        let terminals = s.concepts.iter().map(|c| TerminalRef { slot: s.id, concept: c.clone() }).collect();
        return SyntaxTree::Leaf(Leaf::Element(ElementLeaf { role: s.role.clone(), terminals }));
    }
    let k = rng.gen_range(1..=3).min(*budget);
    let children = (0..k).map(|_| random_tree(rng, slots, depth - 1, budget)).collect();
    SyntaxTree::Node { label: PennTag::new(labels.choose(rng).unwrap()), children }
}

/// 1..=4 random trees with at most six leaves each; every tree has an
/// internal root.
pub fn random_forest(rng: &mut ChaCha8Rng, slots: &[ElementSlot]) -> Vec<SyntaxTree> {
    let n = rng.gen_range(1..=4);
    (0..n)
        .map(|_| loop {
            let mut budget = 6;
            let t = random_tree(rng, slots, 4, &mut budget);
            if matches!(t, SyntaxTree::Node { .. }) && t.leaves().len() <= 6 {
                return t;
            }
        })
        .collect()
}

pub fn as_set(trees: &[SyntaxTree]) -> BTreeSet<SyntaxTree> {
    trees.iter().cloned().collect()
}
