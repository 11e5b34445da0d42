//! Context-free syntax productions over Penn Treebank tags.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::model::PennTag;

/// Text of the bundled grammar.
pub const DEFAULT_GRAMMAR: &str = include_str!("../data/default.grammar");

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Production {
    pub lhs: PennTag,
    pub rhs: Vec<PennTag>,
}

impl Production {
    pub fn new(lhs: &str, rhs: &[&str]) -> Self {
        Production {
            lhs: PennTag::new(lhs),
            rhs: rhs.iter().map(|s| PennTag::new(s)).collect(),
        }
    }
}

impl fmt::Display for Production {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ->", self.lhs)?;
        for sym in &self.rhs {
            write!(f, " {sym}")?;
        }
        Ok(())
    }
}

/// Nonterminals are the symbols appearing on a left-hand side; every other
/// symbol is a terminal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grammar {
    productions: Vec<Production>,
    start: PennTag,
    terminals: BTreeSet<PennTag>,
    nonterminals: BTreeSet<PennTag>,
    aliases: BTreeMap<PennTag, PennTag>,
}

impl Grammar {
    /// Builds a grammar, dropping duplicate productions (first occurrence
    /// wins). Fails if `start` has no production or unit productions form a
    /// cycle, since either makes the tree set undefined or infinite.
    pub fn new(start: PennTag, productions: Vec<Production>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        let productions: Vec<Production> = productions
            .into_iter()
            .filter(|p| seen.insert(p.clone()))
            .collect();
        let nonterminals: BTreeSet<PennTag> = productions.iter().map(|p| p.lhs.clone()).collect();
        if !nonterminals.contains(&start) {
            return Err(Error::MissingStartSymbol(start.to_string()));
        }
        let terminals = productions
            .iter()
            .flat_map(|p| p.rhs.iter())
            .filter(|s| !nonterminals.contains(*s))
            .cloned()
            .collect();
        let g = Grammar {
            productions,
            start,
            terminals,
            nonterminals,
            aliases: BTreeMap::new(),
        };
        g.check_unit_cycles()?;
        Ok(g)
    }

    pub fn default_grammar() -> Self {
        load_grammar(DEFAULT_GRAMMAR).expect("bundled grammar is valid")
    }

    pub fn productions(&self) -> &[Production] {
        &self.productions
    }

    pub fn start(&self) -> &PennTag {
        &self.start
    }

    pub fn terminals(&self) -> &BTreeSet<PennTag> {
        &self.terminals
    }

    pub fn nonterminals(&self) -> &BTreeSet<PennTag> {
        &self.nonterminals
    }

    pub fn is_terminal(&self, tag: &PennTag) -> bool {
        self.terminals.contains(&self.resolve(tag))
    }

    pub fn is_nonterminal(&self, tag: &PennTag) -> bool {
        self.nonterminals.contains(tag)
    }

    pub fn contains(&self, p: &Production) -> bool {
        self.productions.contains(p)
    }

    pub fn add_alias(&mut self, from: PennTag, to: PennTag) {
        self.aliases.insert(from, to);
    }

    /// Applies the role aliases declared in the grammar file.
    pub fn resolve(&self, tag: &PennTag) -> PennTag {
        self.aliases.get(tag).cloned().unwrap_or_else(|| tag.clone())
    }

    fn check_unit_cycles(&self) -> Result<()> {
        let mut unit: BTreeMap<&PennTag, Vec<&PennTag>> = BTreeMap::new();
        for p in &self.productions {
            if p.rhs.len() == 1 && self.nonterminals.contains(&p.rhs[0]) {
                unit.entry(&p.lhs).or_default().push(&p.rhs[0]);
            }
        }
        // 0 = unvisited, 1 = on stack, 2 = done
        let mut state: BTreeMap<&PennTag, u8> = BTreeMap::new();
        fn visit<'a>(
            n: &'a PennTag,
            unit: &BTreeMap<&'a PennTag, Vec<&'a PennTag>>,
            state: &mut BTreeMap<&'a PennTag, u8>,
        ) -> Option<&'a PennTag> {
            match state.get(n).copied().unwrap_or(0) {
                1 => return Some(n),
                2 => return None,
                _ => {}
            }
            state.insert(n, 1);
            for next in unit.get(n).into_iter().flatten() {
                if let Some(c) = visit(next, unit, state) {
                    return Some(c);
                }
            }
            state.insert(n, 2);
            None
        }
        for n in &self.nonterminals {
            if let Some(c) = visit(n, &unit, &mut state) {
                return Err(Error::UnitCycle(c.to_string()));
            }
        }
        Ok(())
    }
}

impl fmt::Display for Grammar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.start.as_str() != "s" {
            writeln!(f, "@start {}", self.start)?;
        }
        for p in &self.productions {
            writeln!(f, "{p}")?;
        }
        for (from, to) in &self.aliases {
            writeln!(f, "@alias {from} {to}")?;
        }
        Ok(())
    }
}

/// Parses grammar file text.
pub fn load_grammar(text: &str) -> Result<Grammar> {
    let mut start = PennTag::new("s");
    let mut productions = Vec::new();
    let mut aliases = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let malformed = |reason: &str| Error::MalformedProduction {
            line: line_no,
            reason: reason.to_string(),
        };

        if let Some(rest) = line.strip_prefix('@') {
            let words: Vec<&str> = rest.split_whitespace().collect();
            match words.as_slice() {
                ["start", sym] => start = PennTag::new(sym),
                ["alias", from, to] => aliases.push((PennTag::new(from), PennTag::new(to))),
                _ => return Err(malformed("unknown directive")),
            }
            continue;
        }

        let (lhs, rhs) = line
            .split_once("->")
            .or_else(|| line.split_once('→'))
            .ok_or_else(|| malformed("expected `->`"))?;
        let lhs: Vec<&str> = lhs.split_whitespace().collect();
        let [lhs] = lhs.as_slice() else {
            return Err(malformed("left-hand side must be a single symbol"));
        };
        let rhs: Vec<&str> = rhs.split_whitespace().collect();
        if rhs.is_empty() {
            return Err(malformed("empty right-hand side"));
        }
        productions.push(Production::new(lhs, &rhs));
    }

    let mut g = Grammar::new(start, productions)?;
    for (from, to) in aliases {
        g.add_alias(from, to);
    }
    Ok(g)
}
