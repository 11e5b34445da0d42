//! Input and output: XML sentences, the lexicon, corpus generation and
//! evaluation.

pub mod build;
pub mod corpus;
pub mod eval;
pub mod lexicon;
pub mod xml;

pub use build::{build_sentence, Pipeline};
pub use corpus::{generate_corpus, read_labels, CorpusCounts, CorpusLabel};
pub use eval::{eval_corpus, EvalMetrics};
pub use lexicon::{load_lexicon, Lexicon};
pub use xml::{read_sentence_xml, write_sentence_xml, RawEntry, RawInput};
