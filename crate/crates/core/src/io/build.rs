//! From raw input to a classified sentence.

use std::fs;
use std::path::Path;

use crate::classify::{classify, ClassificationReport};
use crate::error::{Error, Result};
use crate::forest::{parse_with_gap, SyntaxTree};
use crate::grammar::Grammar;
use crate::graph::build_syntax_graph;
use crate::io::lexicon::Lexicon;
use crate::io::xml::{read_sentence_xml, RawInput};
use crate::model::{validate_sentence, Modality, MultimodalSentence, PennTag, SentenceDraft, Time, DEICTIC};
use crate::temporal::{align_leaves, bind_deictics, group_candidates, CandidateEntry, DEFAULT_THRESHOLD};

/// Resolves roles, groups and aligns the elements, parses them (allowing one
/// omitted element) and builds the syntax graph.
pub fn build_sentence(raw: &RawInput, lexicon: &Lexicon, grammar: &Grammar, threshold: Time) -> Result<MultimodalSentence> {
    if raw.entries.is_empty() {
        return Err(Error::Unparseable);
    }
    let mut candidates = Vec::with_capacity(raw.entries.len());
    for e in &raw.entries {
        let found = lexicon.lookup(&e.repr, &e.concept);
        let role = match (&e.role, found) {
            (Some(r), _) => PennTag::new(r),
            (None, Some(entry)) => entry.role.clone(),
            (None, None) => return Err(Error::UnknownWord(e.repr.clone())),
        };
        let flagged = lexicon.get(&e.repr).is_some_and(|x| x.deictic);
        candidates.push(CandidateEntry {
            modality: Modality::new(&e.modality),
            repr: e.repr.clone(),
            time: e.time,
            role,
            concept: e.concept.clone(),
            deictic: flagged || e.concept == DEICTIC,
        });
    }
    let slots = group_candidates(&candidates)?;

    let draft = SentenceDraft { slots, descriptions: raw.sentences.clone(), interpretation_map: None };
    let violations = validate_sentence(&draft, Some(grammar));
    if !violations.is_empty() {
        let msgs: Vec<String> = violations.iter().map(ToString::to_string).collect();
        return Err(Error::SchemaViolation(msgs.join("; ")));
    }
    let SentenceDraft { slots, descriptions, .. } = draft;

    let bindings = bind_deictics(&slots, threshold);
    let leaves = align_leaves(&slots, &bindings, threshold);
    let trees: Vec<SyntaxTree> = parse_with_gap(&leaves, grammar, grammar.start())?;
    if trees.is_empty() {
        return Err(Error::Unparseable);
    }
    let graph = build_syntax_graph(&trees, &slots)?;
    Ok(MultimodalSentence { slots, graph, descriptions, interpretation_map: None, bindings })
}

/// Grammar, lexicon and threshold bundled for repeated use.
#[derive(Debug, Clone)]
pub struct Pipeline {
    pub grammar: Grammar,
    pub lexicon: Lexicon,
    pub threshold: Time,
}

impl Default for Pipeline {
    fn default() -> Self {
        Pipeline {
            grammar: Grammar::default_grammar(),
            lexicon: Lexicon::default_lexicon(),
            threshold: DEFAULT_THRESHOLD,
        }
    }
}

impl Pipeline {
    pub fn build(&self, raw: &RawInput) -> Result<MultimodalSentence> {
        build_sentence(raw, &self.lexicon, &self.grammar, self.threshold)
    }

    pub fn sentence_from_xml(&self, xml: &str) -> Result<MultimodalSentence> {
        self.build(&read_sentence_xml(xml)?)
    }

    pub fn classify_xml(&self, xml: &str) -> Result<ClassificationReport> {
        classify(&self.sentence_from_xml(xml)?, self.threshold)
    }

    pub fn classify_file(&self, path: impl AsRef<Path>) -> Result<ClassificationReport> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        self.classify_xml(&text)
    }
}
