//! Classify the bundled worked examples and print each report.
//!
//!     cargo run --example classify_worked_examples

use std::path::Path;

use mmambig::io::Pipeline;

fn main() -> mmambig::Result<()> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/worked");
    let pipeline = Pipeline::default();
    for name in ["lexical", "temporal_semantic", "target", "gap", "analytic", "attachment", "unambiguous"] {
        let report = pipeline.classify_file(dir.join(format!("{name}.xml")))?;
        println!("== {name}");
        print!("{report}");
    }
    Ok(())
}
