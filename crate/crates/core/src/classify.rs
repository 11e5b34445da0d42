//! Rule-based detection of multimodal ambiguities on a syntax graph.

use std::collections::BTreeSet;
use std::fmt::{self, Write as _};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{NodeId, RolePath, SyntaxGraph};
use crate::model::{MultimodalSentence, SlotId, TerminalElement, Time};
use crate::temporal::{close_by, DeicticBinding};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AmbiguityClass {
    Lexical,
    TemporalSemantic,
    Target,
    Gap,
    Analytic,
    Attachment,
    Unambiguous,
}

impl AmbiguityClass {
    pub const ALL: [AmbiguityClass; 7] = [
        AmbiguityClass::Lexical,
        AmbiguityClass::TemporalSemantic,
        AmbiguityClass::Target,
        AmbiguityClass::Gap,
        AmbiguityClass::Analytic,
        AmbiguityClass::Attachment,
        AmbiguityClass::Unambiguous,
    ];

    /// Order in which fired classes compete for the primary label.
    pub const PRECEDENCE: [AmbiguityClass; 6] = [
        AmbiguityClass::Gap,
        AmbiguityClass::Attachment,
        AmbiguityClass::Analytic,
        AmbiguityClass::Lexical,
        AmbiguityClass::Target,
        AmbiguityClass::TemporalSemantic,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AmbiguityClass::Lexical => "Lexical",
            AmbiguityClass::TemporalSemantic => "TemporalSemantic",
            AmbiguityClass::Target => "Target",
            AmbiguityClass::Gap => "Gap",
            AmbiguityClass::Analytic => "Analytic",
            AmbiguityClass::Attachment => "Attachment",
            AmbiguityClass::Unambiguous => "Unambiguous",
        }
    }

    pub fn is_semantic(self) -> bool {
        matches!(
            self,
            AmbiguityClass::Lexical | AmbiguityClass::TemporalSemantic | AmbiguityClass::Target
        )
    }

    pub fn is_syntactic(self) -> bool {
        matches!(self, AmbiguityClass::Gap | AmbiguityClass::Analytic | AmbiguityClass::Attachment)
    }

    /// Position in [`AmbiguityClass::ALL`].
    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for AmbiguityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AmbiguityClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key: String = s
            .chars()
            .filter(|c| !matches!(c, '-' | '_' | ' '))
            .flat_map(char::to_lowercase)
            .collect();
        AmbiguityClass::ALL
            .into_iter()
            .find(|c| c.name().to_lowercase() == key)
            .ok_or_else(|| Error::SchemaViolation(format!("unknown ambiguity class `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Witness {
    Node(NodeId),
    Slot(SlotId),
    Path(RolePath),
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Node(n) => write!(f, "{n}"),
            Witness::Slot(s) => write!(f, "{s}"),
            Witness::Path(p) => write!(f, "{p}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Evidence {
    pub class: AmbiguityClass,
    pub witnesses: Vec<Witness>,
    pub rule: String,
}

impl fmt::Display for Evidence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w: Vec<String> = self.witnesses.iter().map(Witness::to_string).collect();
        write!(f, "class={} witnesses={} rule={}", self.class, w.join(","), self.rule)
    }
}

// Conditions on a pair of terminal elements under one parent. Each one
// requires different concepts; the (repr, modality) equalities split them.

pub fn lexical_condition(a: &TerminalElement, b: &TerminalElement) -> bool {
    a.concept != b.concept && a.repr == b.repr && a.modality == b.modality && a.role == b.role
}

pub fn temporal_semantic_condition(a: &TerminalElement, b: &TerminalElement, threshold: Time) -> bool {
    a.concept != b.concept
        && a.repr != b.repr
        && a.modality != b.modality
        && a.role == b.role
        && close_by(&a.time, &b.time, threshold)
}

pub fn target_condition(a: &TerminalElement, b: &TerminalElement) -> bool {
    a.concept != b.concept && a.repr != b.repr && a.modality == b.modality && a.role == b.role
}

/// Every semantic class whose condition holds for the pair.
pub fn semantic_classes(a: &TerminalElement, b: &TerminalElement, threshold: Time) -> Vec<AmbiguityClass> {
    let mut out = Vec::new();
    if lexical_condition(a, b) {
        out.push(AmbiguityClass::Lexical);
    }
    if temporal_semantic_condition(a, b, threshold) {
        out.push(AmbiguityClass::TemporalSemantic);
    }
    if target_condition(a, b) {
        out.push(AmbiguityClass::Target);
    }
    out
}

fn element_at(graph: &SyntaxGraph, id: NodeId) -> Option<TerminalElement> {
    let node = graph.node(id).ok()?;
    let t = node.terminal()?;
    let slot = graph.slot(t.slot)?;
    Some(TerminalElement {
        modality: slot.modality.clone(),
        repr: slot.repr.clone(),
        time: slot.time,
        role: node.label.clone(),
        concept: t.concept.clone(),
    })
}

/// Unordered pairs of terminal nodes with a common parent, each reported
/// once together with its first common parent.
fn sibling_pairs(graph: &SyntaxGraph) -> Vec<(NodeId, NodeId, NodeId, TerminalElement, TerminalElement)> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for parent in graph.nodes() {
        let kids: Vec<(NodeId, TerminalElement)> = graph
            .children(parent.id)
            .iter()
            .filter_map(|&c| element_at(graph, c).map(|e| (c, e)))
            .collect();
        for i in 0..kids.len() {
            for j in i + 1..kids.len() {
                let (a, b) = if kids[i].0 <= kids[j].0 { (&kids[i], &kids[j]) } else { (&kids[j], &kids[i]) };
                if a.0 != b.0 && seen.insert((a.0, b.0)) {
                    out.push((parent.id, a.0, b.0, a.1.clone(), b.1.clone()));
                }
            }
        }
    }
    out
}

fn cmp_word(eq: bool) -> &'static str {
    if eq {
        "=="
    } else {
        "!="
    }
}

fn pair_rule(a: &TerminalElement, b: &TerminalElement) -> String {
    format!(
        "concept {} {} {}, repr {} {} {}, mod {} {} {}, role {} {} {}",
        a.concept,
        cmp_word(a.concept == b.concept),
        b.concept,
        a.repr,
        cmp_word(a.repr == b.repr),
        b.repr,
        a.modality,
        cmp_word(a.modality == b.modality),
        b.modality,
        a.role,
        cmp_word(a.role == b.role),
        b.role
    )
}

fn detect_pairs(
    graph: &SyntaxGraph,
    class: AmbiguityClass,
    cond: impl Fn(&TerminalElement, &TerminalElement) -> bool,
    suffix: &str,
) -> Vec<Evidence> {
    sibling_pairs(graph)
        .into_iter()
        .filter(|(_, _, _, a, b)| cond(a, b))
        .map(|(n, i, j, a, b)| Evidence {
            class,
            witnesses: vec![Witness::Node(n), Witness::Node(i), Witness::Node(j)],
            rule: format!("{}{}", pair_rule(&a, &b), suffix),
        })
        .collect()
}

pub fn detect_lexical(graph: &SyntaxGraph) -> Vec<Evidence> {
    detect_pairs(graph, AmbiguityClass::Lexical, lexical_condition, "")
}

pub fn detect_temporal_semantic(graph: &SyntaxGraph, threshold: Time) -> Vec<Evidence> {
    detect_pairs(
        graph,
        AmbiguityClass::TemporalSemantic,
        |a, b| temporal_semantic_condition(a, b, threshold),
        ", close_by holds",
    )
}

pub fn detect_target(graph: &SyntaxGraph) -> Vec<Evidence> {
    detect_pairs(graph, AmbiguityClass::Target, target_condition, "")
}

/// Null terminals in the graph and deictics left without a referent.
pub fn detect_gap(graph: &SyntaxGraph, bindings: &[DeicticBinding]) -> Vec<Evidence> {
    let mut out = Vec::new();
    for node in graph.nodes().iter().filter(|n| n.is_null()) {
        let parents: Vec<String> = graph.parents(node.id).iter().map(NodeId::to_string).collect();
        out.push(Evidence {
            class: AmbiguityClass::Gap,
            witnesses: vec![Witness::Node(node.id)],
            rule: format!("{} is a null {} under {}", node.id, node.label, parents.join(",")),
        });
    }
    for b in bindings.iter().filter(|b| b.bound_to.is_none()) {
        out.push(Evidence {
            class: AmbiguityClass::Gap,
            witnesses: vec![Witness::Slot(b.deictic)],
            rule: format!("deictic {} has no referent", b.deictic),
        });
    }
    out
}

/// pp nodes reached from the roots by more than one role path.
fn attachment_nodes(graph: &SyntaxGraph) -> Result<Vec<(NodeId, Vec<RolePath>)>> {
    let mut out = Vec::new();
    for node in graph.nodes().iter().filter(|n| n.label.is_pp() && n.terminal().is_none()) {
        let paths = graph.syntactic_paths_to(node.id, None)?;
        if paths.len() >= 2 {
            out.push((node.id, paths));
        }
    }
    Ok(out)
}

pub fn detect_attachment(graph: &SyntaxGraph) -> Result<Vec<Evidence>> {
    Ok(attachment_nodes(graph)?
        .into_iter()
        .map(|(id, paths)| {
            let shown: Vec<String> = paths.iter().map(RolePath::to_string).collect();
            let mut witnesses = vec![Witness::Node(id)];
            witnesses.extend(paths.into_iter().take(2).map(Witness::Path));
            Evidence {
                class: AmbiguityClass::Attachment,
                witnesses,
                rule: format!("pp {} lies on {} distinct paths {}", id, shown.len(), shown.join(" ")),
            }
        })
        .collect())
}

/// Terminals reached by more than one role path, unless an ambiguously
/// attached pp dominates the terminal and reaches it by a single path.
pub fn detect_analytic(graph: &SyntaxGraph) -> Result<Vec<Evidence>> {
    let pps = attachment_nodes(graph)?;
    let mut out = Vec::new();
    for node in graph.terminal_nodes() {
        let paths = graph.syntactic_paths_to(node.id, None)?;
        if paths.len() < 2 {
            continue;
        }
        let mut explained = false;
        for (pp, _) in &pps {
            if graph.dominates(*pp, node.id) && graph.syntactic_paths_to(node.id, Some(*pp))?.len() == 1 {
                explained = true;
                break;
            }
        }
        if explained {
            continue;
        }
        let shown: Vec<String> = paths.iter().map(RolePath::to_string).collect();
        let mut witnesses = vec![Witness::Node(node.id)];
        witnesses.extend(paths.into_iter().take(2).map(Witness::Path));
        out.push(Evidence {
            class: AmbiguityClass::Analytic,
            witnesses,
            rule: format!("{} {} is reached by {} distinct paths {}", node.label, node.id, shown.len(), shown.join(" ")),
        });
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationReport {
    pub primary: AmbiguityClass,
    /// All fired rules, grouped by class in precedence order.
    pub evidences: Vec<Evidence>,
    pub descriptions: Vec<String>,
    pub tree_count: usize,
    pub node_count: usize,
}

impl ClassificationReport {
    pub fn fired(&self) -> BTreeSet<AmbiguityClass> {
        self.evidences.iter().map(|e| e.class).collect()
    }

    /// Stable text form. The last line is always `primary=<class>`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "trees={} nodes={}", self.tree_count, self.node_count);
        for (i, d) in self.descriptions.iter().enumerate() {
            let _ = writeln!(out, "description[{i}]: {d}");
        }
        for (i, e) in self.evidences.iter().enumerate() {
            let _ = writeln!(out, "evidence[{i}]: {e}");
        }
        let _ = writeln!(out, "primary={}", self.primary);
        out
    }
}

impl fmt::Display for ClassificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Runs every detector; the primary class is the first fired class in
/// [`AmbiguityClass::PRECEDENCE`], or `Unambiguous` when nothing fires.
pub fn classify(sentence: &MultimodalSentence, threshold: Time) -> Result<ClassificationReport> {
    let g = &sentence.graph;
    if g.is_empty() {
        return Err(Error::Unparseable);
    }
    let mut evidences = Vec::new();
    for class in AmbiguityClass::PRECEDENCE {
        evidences.extend(match class {
            AmbiguityClass::Gap => detect_gap(g, &sentence.bindings),
            AmbiguityClass::Attachment => detect_attachment(g)?,
            AmbiguityClass::Analytic => detect_analytic(g)?,
            AmbiguityClass::Lexical => detect_lexical(g),
            AmbiguityClass::Target => detect_target(g),
            AmbiguityClass::TemporalSemantic => detect_temporal_semantic(g, threshold),
            AmbiguityClass::Unambiguous => Vec::new(),
        });
    }
    let primary = evidences.first().map_or(AmbiguityClass::Unambiguous, |e| e.class);
    Ok(ClassificationReport {
        primary,
        evidences,
        descriptions: sentence.descriptions.clone(),
        tree_count: g.roots().len(),
        node_count: g.len(),
    })
}
