//! Build the syntax graph of the attachment example, list the role paths
//! to its pp nodes and print Graphviz DOT.
//!
//!     cargo run --example syntax_graph_dot | dot -Tsvg > graph.svg

use std::path::Path;

use mmambig::io::Pipeline;

fn main() -> mmambig::Result<()> {
    let file = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/worked/attachment.xml");
    let xml = std::fs::read_to_string(&file).map_err(|e| mmambig::Error::Io { path: file, source: e })?;
    let sentence = Pipeline::default().sentence_from_xml(&xml)?;
    let g = &sentence.graph;
    eprintln!("{} trees, {} nodes, {} edges", g.roots().len(), g.len(), g.edge_count());
    for node in g.nodes().iter().filter(|n| n.label.is_pp()) {
        let paths: Vec<String> = g.syntactic_paths_to(node.id, None)?.iter().map(|p| p.to_string()).collect();
        eprintln!("{}: {}", node.id, paths.join(" "));
    }
    for t in g.unfold() {
        eprintln!("{t}");
    }
    print!("{}", g.to_dot());
    Ok(())
}
