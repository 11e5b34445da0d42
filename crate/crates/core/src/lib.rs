//! Detection and classification of ambiguities in multimodal sentences.
//!
//! A multimodal sentence is a sequence of timed elements (speech, sketch,
//! handwriting, ...) that together express one request. The pipeline is
//!
//! 1. read the elements ([`io::read_sentence_xml`]),
//! 2. align them in time and bind deictics ([`temporal`]),
//! 3. parse every reading ([`forest`]) and merge the trees into one graph
//!    ([`graph`]),
//! 4. run the detection rules ([`classify`]).
//!
//! [`io::build_sentence`] runs steps 2 and 3.

pub mod classify;
pub mod error;
pub mod forest;
pub mod grammar;
pub mod graph;
pub mod io;
pub mod model;
pub mod temporal;

pub use classify::{classify, AmbiguityClass, ClassificationReport, Evidence, Witness};
pub use error::{Error, Result};
pub use forest::{parse_forest, parse_with_gap, ElementLeaf, Leaf, SyntaxTree, TerminalRef};
pub use grammar::{load_grammar, Grammar, Production};
pub use graph::{build_syntax_graph, NodeId, RolePath, SyntaxGraph};
pub use model::{ElementSlot, Modality, MultimodalSentence, PennTag, SlotId, TerminalElement, TimeInterval};
pub use temporal::{bind_deictics, close_by, DeicticBinding, DEFAULT_THRESHOLD};
