//! All parses of an ambiguous tag sequence, and gap recovery when one
//! element is missing.
//!
//!     cargo run --example parse_forest

use mmambig::forest::{parse_forest, parse_with_gap, ElementLeaf, TerminalRef};
use mmambig::grammar::Grammar;
use mmambig::model::SlotId;

fn leaves(roles: &[&str]) -> Vec<ElementLeaf> {
    roles
        .iter()
        .enumerate()
        .map(|(i, r)| ElementLeaf::new(r, vec![TerminalRef { slot: SlotId(i), concept: format!("w{i}") }]))
        .collect()
}

fn main() -> mmambig::Result<()> {
    let g = Grammar::default_grammar();
    for roles in [
        vec!["vb", "dt", "nn", "in", "nn"],
        vec!["vb", "jj", "nn", "nn"],
        vec!["vb", "dt", "nn", "in", "nn", "in", "nn"],
    ] {
        let trees = parse_forest(&leaves(&roles), &g, g.start())?;
        println!("{}: {} tree(s)", roles.join(" "), trees.len());
        for t in trees {
            println!("  {t}");
        }
    }
    let roles = ["vb", "dt", "in", "dt", "nn"];
    let direct = parse_forest(&leaves(&roles), &g, g.start())?;
    let repaired = parse_with_gap(&leaves(&roles), &g, g.start())?;
    println!("{}: {} direct, {} with one omitted element", roles.join(" "), direct.len(), repaired.len());
    for t in repaired {
        println!("  {t}");
    }
    Ok(())
}
