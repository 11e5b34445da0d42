//! Word to role mapping used when the input carries no `role` attribute.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::model::PennTag;

pub const DEFAULT_LEXICON: &str = include_str!("../../data/default.lexicon");

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LexEntry<'a> {
    pub role: &'a PennTag,
    pub deictic: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Lexicon {
    entries: HashMap<String, (PennTag, bool)>,
}

impl Lexicon {
    pub fn default_lexicon() -> Self {
        load_lexicon(DEFAULT_LEXICON).expect("bundled lexicon is valid")
    }

    pub fn insert(&mut self, token: &str, role: &str, deictic: bool) {
        self.entries.insert(token.to_lowercase(), (PennTag::new(role), deictic));
    }

    pub fn get(&self, token: &str) -> Option<LexEntry<'_>> {
        self.entries
            .get(&token.trim().to_lowercase())
            .map(|(role, deictic)| LexEntry { role, deictic: *deictic })
    }

    /// Representation first, then concept.
    pub fn lookup(&self, repr: &str, concept: &str) -> Option<LexEntry<'_>> {
        self.get(repr).or_else(|| self.get(concept))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Reads `token role [deictic]` lines; `#` starts a comment.
pub fn load_lexicon(text: &str) -> Result<Lexicon> {
    let mut lex = Lexicon::default();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let words: Vec<&str> = line.split_whitespace().collect();
        match words.as_slice() {
            [token, role] => lex.insert(token, role, false),
            [token, role, "deictic"] => lex.insert(token, role, true),
            _ => return Err(Error::MalformedLexicon { line: idx + 1 }),
        }
    }
    Ok(lex)
}
