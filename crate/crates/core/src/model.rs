//! Domain types shared by every stage of the pipeline.
//!
//! An input is a set of timed elements, each produced by one modality
//! (speech, sketch, handwriting, ...). Elements that share modality,
//! representation and interval but carry different concepts are grouped in
//! one [`ElementSlot`]; a slot with several concepts is a lexical alternative.

use std::collections::BTreeSet;
use std::fmt;

use crate::graph::SyntaxGraph;

/// Time in integer units. Datetime inputs are normalized to seconds from the
/// earliest element.
pub type Time = u64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TimeInterval {
    pub start: Time,
    pub end: Time,
}

impl TimeInterval {
    pub const fn new(start: Time, end: Time) -> Self {
        TimeInterval { start, end }
    }

    pub fn is_valid(&self) -> bool {
        self.start <= self.end
    }

    pub fn intersects(&self, other: &TimeInterval) -> bool {
        self.start.max(other.start) <= self.end.min(other.end)
    }

    /// Points between the nearer endpoints; zero when the intervals intersect.
    pub fn separation(&self, other: &TimeInterval) -> Time {
        self.start
            .max(other.start)
            .saturating_sub(self.end.min(other.end))
    }

    pub fn shifted(&self, offset: Time) -> Self {
        TimeInterval::new(self.start + offset, self.end + offset)
    }
}

impl fmt::Display for TimeInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.start, self.end)
    }
}

/// Lowercase modality name. The vocabulary is open.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Modality(String);

impl Modality {
    pub fn new(name: &str) -> Self {
        Modality(name.trim().to_lowercase())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Modality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A Penn Treebank tag or one of the grammar's nonterminal labels.
///
/// Tags are stored lowercase; `det` is folded into `dt`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PennTag(String);

impl PennTag {
    pub fn new(tag: &str) -> Self {
        let tag = tag.trim().to_lowercase();
        if tag == "det" {
            PennTag("dt".to_string())
        } else {
            PennTag(tag)
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn is_pp(&self) -> bool {
        self.0 == "pp"
    }
}

impl fmt::Display for PennTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for PennTag {
    fn from(tag: &str) -> Self {
        PennTag::new(tag)
    }
}

/// Concept name marking an element as a deictic reference ("this", "here").
pub const DEICTIC: &str = "deictic";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SlotId(pub usize);

impl fmt::Display for SlotId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

/// The five attributes of one element of a multimodal sentence.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TerminalElement {
    pub modality: Modality,
    pub repr: String,
    pub time: TimeInterval,
    pub role: PennTag,
    pub concept: String,
}

/// Elements sharing modality, representation and interval.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementSlot {
    pub id: SlotId,
    pub modality: Modality,
    pub repr: String,
    pub time: TimeInterval,
    pub role: PennTag,
    /// Ordered, duplicate-free; more than one entry is a lexical alternative.
    pub concepts: Vec<String>,
    /// Set when the lexicon marks the representation as deictic even though
    /// no concept is literally `deictic`.
    pub deictic: bool,
}

impl ElementSlot {
    pub fn key(&self) -> (&Modality, &str, TimeInterval) {
        (&self.modality, &self.repr, self.time)
    }

    pub fn is_deictic(&self) -> bool {
        self.deictic || self.concepts.iter().any(|c| c == DEICTIC)
    }

    pub fn concept_set(&self) -> BTreeSet<&str> {
        self.concepts.iter().map(String::as_str).collect()
    }

    /// One terminal element per concept; they differ only in concept.
    pub fn expand(&self) -> Vec<TerminalElement> {
        self.concepts
            .iter()
            .map(|concept| TerminalElement {
                modality: self.modality.clone(),
                repr: self.repr.clone(),
                time: self.time,
                role: self.role.clone(),
                concept: concept.clone(),
            })
            .collect()
    }
}

/// An expected element that is missing from the input.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NullTerminal {
    pub role: PennTag,
}

/// Sentence contents before the syntax graph is attached.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SentenceDraft {
    pub slots: Vec<ElementSlot>,
    pub descriptions: Vec<String>,
    /// Unfolded tree index -> description index.
    pub interpretation_map: Option<Vec<Option<usize>>>,
}

/// A fully assembled sentence: elements, syntax graph, candidate
/// descriptions and the optional tree-to-description association.
#[derive(Debug, Clone)]
pub struct MultimodalSentence {
    pub slots: Vec<ElementSlot>,
    pub graph: SyntaxGraph,
    pub descriptions: Vec<String>,
    pub interpretation_map: Option<Vec<Option<usize>>>,
    pub bindings: Vec<crate::temporal::DeicticBinding>,
}

impl MultimodalSentence {
    pub fn slot(&self, id: SlotId) -> Option<&ElementSlot> {
        self.slots.iter().find(|s| s.id == id)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Violation {
    EmptyField { slot: SlotId, field: &'static str },
    EmptyConcepts { slot: SlotId },
    DuplicateConcept { slot: SlotId, concept: String },
    InvertedInterval { slot: SlotId, start: Time, end: Time },
    RoleNotTerminal { slot: SlotId, role: PennTag },
    DescriptionOutOfRange { tree: usize, description: usize },
    DescriptionMappedTwice { description: usize },
    DescriptionUnmapped { description: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::EmptyField { slot, field } => write!(f, "{slot}: empty {field}"),
            Violation::EmptyConcepts { slot } => write!(f, "{slot}: empty concepts"),
            Violation::DuplicateConcept { slot, concept } => {
                write!(f, "{slot}: concept `{concept}` listed twice")
            }
            Violation::InvertedInterval { slot, start, end } => {
                write!(f, "{slot}: interval ({start},{end}) breaks start ≤ end")
            }
            Violation::RoleNotTerminal { slot, role } => {
                write!(f, "{slot}: role `{role}` is not a terminal tag")
            }
            Violation::DescriptionOutOfRange { tree, description } => {
                write!(f, "tree {tree} maps to missing description {description}")
            }
            Violation::DescriptionMappedTwice { description } => {
                write!(f, "description {description} is the image of two trees")
            }
            Violation::DescriptionUnmapped { description } => {
                write!(f, "description {description} has no tree")
            }
        }
    }
}

/// Checks every invariant of the draft. The result is sorted, so it does not
/// depend on slot order.
pub fn validate_sentence(
    draft: &SentenceDraft,
    grammar: Option<&crate::grammar::Grammar>,
) -> Vec<Violation> {
    let mut out = Vec::new();
    for slot in &draft.slots {
        let id = slot.id;
        if slot.modality.as_str().is_empty() {
            out.push(Violation::EmptyField { slot: id, field: "modality" });
        }
        if slot.repr.trim().is_empty() {
            out.push(Violation::EmptyField { slot: id, field: "representation" });
        }
        if slot.role.as_str().is_empty() {
            out.push(Violation::EmptyField { slot: id, field: "role" });
        } else if let Some(g) = grammar {
            if !g.is_terminal(&slot.role) {
                out.push(Violation::RoleNotTerminal { slot: id, role: slot.role.clone() });
            }
        }
        if !slot.time.is_valid() {
            out.push(Violation::InvertedInterval {
                slot: id,
                start: slot.time.start,
                end: slot.time.end,
            });
        }
        if slot.concepts.is_empty() {
            out.push(Violation::EmptyConcepts { slot: id });
        }
        let mut seen = BTreeSet::new();
        for c in &slot.concepts {
            if c.trim().is_empty() {
                out.push(Violation::EmptyField { slot: id, field: "concept" });
            } else if !seen.insert(c.as_str()) {
                out.push(Violation::DuplicateConcept { slot: id, concept: c.clone() });
            }
        }
    }

    if let Some(map) = &draft.interpretation_map {
        let n = draft.descriptions.len();
        let mut hits = vec![0usize; n];
        for (tree, target) in map.iter().enumerate() {
            let Some(d) = *target else { continue };
            if d >= n {
                out.push(Violation::DescriptionOutOfRange { tree, description: d });
            } else {
                hits[d] += 1;
            }
        }
        for (d, count) in hits.into_iter().enumerate() {
            match count {
                0 => out.push(Violation::DescriptionUnmapped { description: d }),
                1 => {}
                _ => out.push(Violation::DescriptionMappedTwice { description: d }),
            }
        }
    }

    out.sort();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn slot(id: usize, m: &str, repr: &str, t: (Time, Time), role: &str, c: &[&str]) -> ElementSlot {
        ElementSlot {
            id: SlotId(id),
            modality: Modality::new(m),
            repr: repr.to_string(),
            time: TimeInterval::new(t.0, t.1),
            role: PennTag::new(role),
            concepts: c.iter().map(|s| s.to_string()).collect(),
            deictic: false,
        }
    }

    #[test]
    fn det_is_folded_into_dt() {
        assert_eq!(PennTag::new("DET"), PennTag::new("dt"));
    }

    #[test]
    fn separation_and_intersection() {
        let a = TimeInterval::new(0, 2);
        assert_eq!(a.separation(&TimeInterval::new(5, 9)), 3);
        assert_eq!(a.separation(&TimeInterval::new(2, 9)), 0);
        assert!(a.intersects(&TimeInterval::new(2, 9)));
        assert!(!a.intersects(&TimeInterval::new(3, 9)));
    }

    #[test]
    fn well_formed_draft_is_ok() {
        let draft = SentenceDraft {
            slots: vec![
                slot(0, "speech", "select", (0, 2), "vb", &["select"]),
                slot(1, "sketch", "river_road", (3, 5), "nn", &["river", "road"]),
            ],
            descriptions: vec!["a".into(), "b".into()],
            interpretation_map: Some(vec![Some(1), Some(0)]),
        };
        assert!(validate_sentence(&draft, None).is_empty());
    }

    #[test]
    fn empty_concepts_and_inverted_interval() {
        let draft = SentenceDraft {
            slots: vec![slot(0, "speech", "x", (5, 3), "nn", &[])],
            ..Default::default()
        };
        let v = validate_sentence(&draft, None);
        assert!(v.contains(&Violation::EmptyConcepts { slot: SlotId(0) }));
        assert!(v.contains(&Violation::InvertedInterval { slot: SlotId(0), start: 5, end: 3 }));
        assert!(v.iter().any(|v| v.to_string().contains("start ≤ end")));
    }

    #[test]
    fn interpretation_map_must_be_injective_and_total() {
        let draft = SentenceDraft {
            slots: vec![],
            descriptions: vec!["a".into(), "b".into()],
            interpretation_map: Some(vec![Some(0), Some(0), Some(7)]),
        };
        let v = validate_sentence(&draft, None);
        assert!(v.contains(&Violation::DescriptionMappedTwice { description: 0 }));
        assert!(v.contains(&Violation::DescriptionUnmapped { description: 1 }));
        assert!(v.contains(&Violation::DescriptionOutOfRange { tree: 2, description: 7 }));
    }

    #[test]
    fn expand_yields_one_element_per_concept() {
        let s = slot(3, "sketch", "river_road", (3, 5), "nn", &["river", "road"]);
        let elems = s.expand();
        assert_eq!(elems.len(), 2);
        assert_eq!(elems[0].repr, elems[1].repr);
        assert_eq!(elems[0].time, elems[1].time);
        assert_ne!(elems[0].concept, elems[1].concept);
    }

    #[test]
    fn validation_ignores_slot_order() {
        let mut draft = SentenceDraft {
            slots: vec![
                slot(0, "speech", "", (5, 3), "nn", &["a", "a"]),
                slot(1, "", "x", (1, 2), "nn", &[]),
                slot(2, "sketch", "y", (9, 1), "jj", &["b"]),
            ],
            ..Default::default()
        };
        let before = validate_sentence(&draft, None);
        draft.slots.reverse();
        assert_eq!(before, validate_sentence(&draft, None));
    }
}
