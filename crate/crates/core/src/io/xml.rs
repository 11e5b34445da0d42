//! The `<input>` XML exchange format.
//!
//! ```xml
//! <input>
//!   <nminput mod="speech" repr="this" ts="4" te="5" conc="this"/>
//!   <nlsentence sent="select this river in Rome"/>
//! </input>
//! ```
//!
//! `ts`/`te` are either all plain integers (kept as is) or all
//! `YYYY-MM-DD HH:MM:SS` timestamps, converted to seconds and shifted so the
//! earliest start is 0. An optional `role` attribute overrides the lexicon.

use std::fmt::Write as _;

use chrono::NaiveDateTime;

use crate::error::{Error, Result};
use crate::model::{Time, TimeInterval};

const DATETIME: &str = "%Y-%m-%d %H:%M:%S";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawEntry {
    pub modality: String,
    pub repr: String,
    pub time: TimeInterval,
    pub concept: String,
    pub role: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RawInput {
    pub entries: Vec<RawEntry>,
    pub sentences: Vec<String>,
}

enum Stamp {
    Int(Time),
    Date(i64),
}

fn parse_stamp(value: &str, attr: &str) -> Result<Stamp> {
    let v = value.trim();
    if let Ok(n) = v.parse::<Time>() {
        return Ok(Stamp::Int(n));
    }
    NaiveDateTime::parse_from_str(v, DATETIME)
        .map(|d| Stamp::Date(d.and_utc().timestamp()))
        .map_err(|_| Error::SchemaViolation(format!("`{attr}` value `{value}` is neither a nonnegative integer nor a timestamp")))
}

pub fn read_sentence_xml(text: &str) -> Result<RawInput> {
    let doc = roxmltree::Document::parse(text).map_err(|e| Error::MalformedXml(e.to_string()))?;
    let root = doc.root_element();
    if root.tag_name().name() != "input" {
        return Err(Error::SchemaViolation(format!("root element is `{}`, expected `input`", root.tag_name().name())));
    }

    let mut pending = Vec::new();
    let mut sentences = Vec::new();
    for node in root.children() {
        if node.is_text() {
            if node.text().is_some_and(|t| !t.trim().is_empty()) {
                return Err(Error::SchemaViolation("stray text inside `input`".into()));
            }
            continue;
        }
        if !node.is_element() {
            continue;
        }
        let line = doc.text_pos_at(node.range().start).row;
        let name = node.tag_name().name();
        let allowed: &[&str] = match name {
            "nminput" => &["mod", "repr", "ts", "te", "conc", "role"],
            "nlsentence" => &["sent"],
            other => return Err(Error::SchemaViolation(format!("line {line}: unknown element `{other}`"))),
        };
        for a in node.attributes() {
            if !allowed.contains(&a.name()) {
                return Err(Error::SchemaViolation(format!("line {line}: unknown attribute `{}` on `{name}`", a.name())));
            }
        }
        let get = |attr: &str| {
            node.attribute(attr)
                .ok_or_else(|| Error::SchemaViolation(format!("line {line}: `{name}` lacks `{attr}`")))
        };
        if name == "nlsentence" {
            sentences.push(get("sent")?.to_string());
            continue;
        }
        let ts = parse_stamp(get("ts")?, "ts")?;
        let te = parse_stamp(get("te")?, "te")?;
        pending.push((
            line,
            get("mod")?.to_string(),
            get("repr")?.to_string(),
            ts,
            te,
            get("conc")?.to_string(),
            node.attribute("role").map(str::to_string),
        ));
    }

    let dates = pending.iter().filter(|p| matches!(p.3, Stamp::Date(_))).count()
        + pending.iter().filter(|p| matches!(p.4, Stamp::Date(_))).count();
    if dates != 0 && dates != 2 * pending.len() {
        return Err(Error::SchemaViolation("mixed integer and timestamp times".into()));
    }
    let origin = pending
        .iter()
        .filter_map(|p| match p.3 {
            Stamp::Date(s) => Some(s),
            Stamp::Int(_) => None,
        })
        .min()
        .unwrap_or(0);
    let seconds = |s: &Stamp| -> Time {
        match *s {
            Stamp::Int(n) => n,
            // ts >= origin for every entry; a te before its ts is caught below
            Stamp::Date(d) => (d - origin).max(0) as Time,
        }
    };

    let mut entries = Vec::with_capacity(pending.len());
    for (line, modality, repr, ts, te, concept, role) in pending {
        let inverted = match (&ts, &te) {
            (Stamp::Date(a), Stamp::Date(b)) => a > b,
            (Stamp::Int(a), Stamp::Int(b)) => a > b,
            _ => false,
        };
        if inverted {
            return Err(Error::SchemaViolation(format!("line {line}: ts is after te")));
        }
        entries.push(RawEntry { modality, repr, time: TimeInterval::new(seconds(&ts), seconds(&te)), concept, role });
    }
    Ok(RawInput { entries, sentences })
}

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\n' => out.push_str("&#10;"),
            '\t' => out.push_str("&#9;"),
            c => out.push(c),
        }
    }
    out
}

/// Writes `raw` with integer times; reading the result gives `raw` back.
pub fn write_sentence_xml(raw: &RawInput) -> String {
    let mut out = String::from("<?xml version=\"1.0\"?>\n<input>\n");
    for e in &raw.entries {
        let _ = write!(
            out,
            "  <nminput mod=\"{}\" repr=\"{}\" ts=\"{}\" te=\"{}\" conc=\"{}\"",
            escape(&e.modality),
            escape(&e.repr),
            e.time.start,
            e.time.end,
            escape(&e.concept)
        );
        if let Some(role) = &e.role {
            let _ = write!(out, " role=\"{}\"", escape(role));
        }
        out.push_str("/>\n");
    }
    for s in &raw.sentences {
        let _ = writeln!(out, "  <nlsentence sent=\"{}\"/>", escape(s));
    }
    out.push_str("</input>\n");
    out
}
