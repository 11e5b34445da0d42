//! Generate a seeded corpus in a temporary directory and evaluate it.
//!
//!     cargo run --release --example corpus_eval -- 7

use mmambig::io::corpus::{generate_corpus, CorpusCounts};
use mmambig::io::{eval_corpus, Pipeline};

fn main() -> mmambig::Result<()> {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(7);
    let dir = std::env::temp_dir().join(format!("mmambig-corpus-{seed}"));
    let labels = generate_corpus(seed, &CorpusCounts::default(), &dir)?;
    println!("{} files in {}", labels.len(), dir.display());
    let metrics = eval_corpus(&labels, &dir, &Pipeline::default());
    print!("{}", metrics.to_text());
    Ok(())
}
