//! Temporal relations between elements and their alignment into parse
//! leaves.
//!
//! Two intervals are *close by* when they intersect or the gap between
//! their nearer endpoints is strictly below a threshold.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::forest::{ElementLeaf, TerminalRef};
use crate::model::{ElementSlot, Modality, PennTag, SlotId, Time, TimeInterval};

/// Default close-by threshold in time units.
pub const DEFAULT_THRESHOLD: Time = 4;

pub fn close_by(a: &TimeInterval, b: &TimeInterval, threshold: Time) -> bool {
    a.intersects(b) || a.separation(b) < threshold
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CooperationKind {
    Redundant,
    Complementary,
    Independent,
}

/// How two slots cooperate.
///
/// Redundant: close by, different modalities, a shared concept.
/// Complementary: close by, no shared concept, and either one is deictic or
/// their roles differ. Anything else is independent.
pub fn cooperation(a: &ElementSlot, b: &ElementSlot, threshold: Time) -> CooperationKind {
    if !close_by(&a.time, &b.time, threshold) {
        return CooperationKind::Independent;
    }
    let shared = !a.concept_set().is_disjoint(&b.concept_set());
    if shared && a.modality != b.modality {
        CooperationKind::Redundant
    } else if !shared && (a.is_deictic() || b.is_deictic() || a.role != b.role) {
        CooperationKind::Complementary
    } else {
        CooperationKind::Independent
    }
}

/// One recognized entry with its role already resolved.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateEntry {
    pub modality: Modality,
    pub repr: String,
    pub time: TimeInterval,
    pub role: PennTag,
    pub concept: String,
    pub deictic: bool,
}

/// Merges entries sharing (modality, representation, interval) into slots.
///
/// Slots come out ordered by start time, ties by first appearance, and are
/// numbered in that order. Concepts keep input order.
pub fn group_candidates(entries: &[CandidateEntry]) -> Result<Vec<ElementSlot>> {
    let mut groups: Vec<(usize, ElementSlot)> = Vec::new();
    let mut index: BTreeMap<(Modality, String, TimeInterval), usize> = BTreeMap::new();

    for (pos, e) in entries.iter().enumerate() {
        let key = (e.modality.clone(), e.repr.clone(), e.time);
        match index.get(&key) {
            Some(&g) => {
                let slot = &mut groups[g].1;
                if slot.role != e.role {
                    return Err(Error::ConflictingRole {
                        key: format!("{} `{}` {}", e.modality, e.repr, e.time),
                        first: slot.role.to_string(),
                        second: e.role.to_string(),
                    });
                }
                if !slot.concepts.contains(&e.concept) {
                    slot.concepts.push(e.concept.clone());
                }
                slot.deictic |= e.deictic;
            }
            None => {
                index.insert(key, groups.len());
                groups.push((
                    pos,
                    ElementSlot {
                        id: SlotId(0),
                        modality: e.modality.clone(),
                        repr: e.repr.clone(),
                        time: e.time,
                        role: e.role.clone(),
                        concepts: vec![e.concept.clone()],
                        deictic: e.deictic,
                    },
                ));
            }
        }
    }

    groups.sort_by_key(|(pos, s)| (s.time.start, *pos));
    Ok(groups
        .into_iter()
        .enumerate()
        .map(|(i, (_, mut s))| {
            s.id = SlotId(i);
            s
        })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DeicticBinding {
    pub deictic: SlotId,
    pub bound_to: Option<SlotId>,
}

impl fmt::Display for DeicticBinding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.bound_to {
            Some(t) => write!(f, "{} -> {}", self.deictic, t),
            None => write!(f, "{} -> unbound", self.deictic),
        }
    }
}

/// Slots selected in one action: same modality, interval and role.
fn same_action(a: &ElementSlot, b: &ElementSlot) -> bool {
    a.modality == b.modality && a.time == b.time && a.role == b.role
}

/// Associates each deictic with a close-by, non-deictic slot of another
/// modality.
///
/// Candidate pairs are taken nearest first (smallest separation, then
/// earlier deictic, then earlier target). A target can be taken once;
/// slots selected in the same action as a taken target are taken with it.
/// Bindings are returned in deictic order.
pub fn bind_deictics(slots: &[ElementSlot], threshold: Time) -> Vec<DeicticBinding> {
    let mut pairs = Vec::new();
    for d in slots.iter().filter(|s| s.is_deictic()) {
        for t in slots.iter().filter(|s| !s.is_deictic()) {
            if t.modality != d.modality && close_by(&d.time, &t.time, threshold) {
                pairs.push((d.time.separation(&t.time), d.time.start, t.time.start, d.id, t.id));
            }
        }
    }
    pairs.sort();

    let by_id: BTreeMap<SlotId, &ElementSlot> = slots.iter().map(|s| (s.id, s)).collect();
    let mut bound: BTreeMap<SlotId, SlotId> = BTreeMap::new();
    let mut taken: BTreeSet<SlotId> = BTreeSet::new();
    for (_, _, _, d, t) in pairs {
        if bound.contains_key(&d) || taken.contains(&t) {
            continue;
        }
        bound.insert(d, t);
        let target = by_id[&t];
        taken.extend(slots.iter().filter(|s| same_action(s, target)).map(|s| s.id));
    }

    slots
        .iter()
        .filter(|s| s.is_deictic())
        .map(|d| DeicticBinding { deictic: d.id, bound_to: bound.get(&d.id).copied() })
        .collect()
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let p = self.0[x];
        if p == x {
            return x;
        }
        let r = self.find(p);
        self.0[x] = r;
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Turns slots into the ordered leaf sequence handed to the parser.
///
/// Non-deictic slots of one role share a leaf when they
/// - were selected in one action (same modality and interval),
/// - are redundant (see [`cooperation`]), or
/// - compete for the position: their intervals intersect and they share no
///   concept, unless one of them is anchored to a deictic.
///
/// A slot is anchored when it is bound to a deictic whose interval it
/// intersects; such a slot is the deictic's referent and sits right after
/// it. Leaves are ordered by start time, deictics first on ties, then by
/// end time.
pub fn align_leaves(slots: &[ElementSlot], bindings: &[DeicticBinding], threshold: Time) -> Vec<ElementLeaf> {
    let pos: BTreeMap<SlotId, usize> = slots.iter().enumerate().map(|(i, s)| (s.id, i)).collect();

    // slot index -> index of the deictic it is bound to
    let mut binder: BTreeMap<usize, usize> = BTreeMap::new();
    for b in bindings {
        if let (Some(t), Some(&di)) = (b.bound_to, pos.get(&b.deictic)) {
            if let Some(&ti) = pos.get(&t) {
                binder.insert(ti, di);
                for (j, s) in slots.iter().enumerate() {
                    if j != ti && same_action(s, &slots[ti]) {
                        binder.insert(j, di);
                    }
                }
            }
        }
    }
    let anchored = |i: usize| binder.get(&i).is_some_and(|&d| slots[i].time.intersects(&slots[d].time));

    let mut uf = UnionFind((0..slots.len()).collect());
    for i in 0..slots.len() {
        for j in i + 1..slots.len() {
            let (a, b) = (&slots[i], &slots[j]);
            if a.is_deictic() || b.is_deictic() || a.role != b.role {
                continue;
            }
            let fuse = same_action(a, b)
                || cooperation(a, b, threshold) == CooperationKind::Redundant
                || (a.time.intersects(&b.time)
                    && a.concept_set().is_disjoint(&b.concept_set())
                    && !anchored(i)
                    && !anchored(j));
            if fuse {
                uf.union(i, j);
            }
        }
    }

    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, slot) in slots.iter().enumerate() {
        let root = if slot.is_deictic() { i } else { uf.find(i) };
        groups.entry(root).or_default().push(i);
    }

    let mut keyed: Vec<((Time, u8, Time, usize), ElementLeaf)> = groups
        .into_values()
        .map(|members| {
            let first = members[0];
            let deictic = slots[first].is_deictic();
            let mut start = members.iter().map(|&i| slots[i].time.start).min().unwrap_or(0);
            let end = members.iter().map(|&i| slots[i].time.end).max().unwrap_or(0);
            for &i in &members {
                if anchored(i) {
                    start = start.max(slots[binder[&i]].time.start);
                }
            }
            let terminals = members
                .iter()
                .flat_map(|&i| {
                    slots[i].concepts.iter().map(move |c| TerminalRef { slot: slots[i].id, concept: c.clone() })
                })
                .collect();
            let leaf = ElementLeaf { role: slots[first].role.clone(), terminals };
            ((start, u8::from(!deictic), end, first), leaf)
        })
        .collect();
    keyed.sort_by_key(|(k, _)| *k);
    keyed.into_iter().map(|(_, leaf)| leaf).collect()
}
