//! Load a grammar from text and a lexicon entry for a new word, then
//! classify a sentence with them.
//!
//!     cargo run --example custom_grammar

use mmambig::grammar::load_grammar;
use mmambig::io::{Lexicon, Pipeline};

const GRAMMAR: &str = "
s  -> vp
vp -> vb np
vp -> vb np pp
np -> dt nn
np -> nn
np -> np pp       # lets a pp attach to a noun too
pp -> in np
";

const SENTENCE: &str = r#"<input>
  <nminput mod="speech" repr="zoom" ts="0" te="1" conc="zoom"/>
  <nminput mod="speech" repr="park" ts="2" te="3" conc="park"/>
  <nminput mod="speech" repr="near" ts="4" te="5" conc="near"/>
  <nminput mod="sketch" repr="stroke" ts="6" te="8" conc="lake"/>
</input>"#;

fn main() -> mmambig::Result<()> {
    let grammar = load_grammar(GRAMMAR)?;
    print!("{grammar}");
    let mut lexicon = Lexicon::default_lexicon();
    lexicon.insert("zoom", "vb", false);
    let pipeline = Pipeline { grammar, lexicon, threshold: 4 };
    print!("{}", pipeline.classify_xml(SENTENCE)?);
    Ok(())
}
