//! Close-by checks, cooperation kinds, deictic binding and leaf alignment
//! on a spoken command with two sketches.
//!
//!     cargo run --example temporal_alignment

use mmambig::model::{Modality, PennTag, TimeInterval};
use mmambig::temporal::{align_leaves, bind_deictics, close_by, cooperation, group_candidates, CandidateEntry};

fn entry(m: &str, repr: &str, t: (u64, u64), role: &str, concept: &str) -> CandidateEntry {
    CandidateEntry {
        modality: Modality::new(m),
        repr: repr.into(),
        time: TimeInterval::new(t.0, t.1),
        role: PennTag::new(role),
        concept: concept.into(),
        deictic: concept == "deictic",
    }
}

fn main() -> mmambig::Result<()> {
    let threshold = 4;
    let a = TimeInterval::new(0, 2);
    for b in [TimeInterval::new(1, 3), TimeInterval::new(5, 6), TimeInterval::new(7, 9)] {
        println!("close_by({a}, {b}, {threshold}) = {}", close_by(&a, &b, threshold));
    }

    let slots = group_candidates(&[
        entry("speech", "show", (0, 2), "vb", "show"),
        entry("speech", "this", (4, 6), "dt", "deictic"),
        entry("speech", "near", (8, 10), "in", "near"),
        entry("speech", "lake", (12, 15), "nn", "lake"),
        entry("sketch", "stroke1", (5, 9), "nn", "river"),
        entry("sketch", "stroke2", (11, 14), "nn", "lake"),
    ])?;
    for s in &slots {
        println!("{} {} {:?} {} {:?}", s.id, s.modality, s.repr, s.time, s.concepts);
    }
    println!("lake said vs drawn: {:?}", cooperation(&slots[5], &slots[4], threshold));
    println!("this vs river stroke: {:?}", cooperation(&slots[1], &slots[2], threshold));

    let bindings = bind_deictics(&slots, threshold);
    for b in &bindings {
        println!("binding {b}");
    }
    for (i, leaf) in align_leaves(&slots, &bindings, threshold).iter().enumerate() {
        let parts: Vec<String> = leaf.terminals.iter().map(|t| format!("{}:{}", t.slot, t.concept)).collect();
        println!("leaf {i}: {} [{}]", leaf.role, parts.join(" "));
    }
    Ok(())
}
