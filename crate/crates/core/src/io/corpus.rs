//! Seeded synthetic corpus: one sentence template per class, filled with
//! random vocabulary and a random time origin.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::classify::AmbiguityClass;
use crate::error::{Error, Result};
use crate::io::xml::{write_sentence_xml, RawEntry, RawInput};
use crate::model::{Time, TimeInterval};

pub const LABELS_FILE: &str = "labels.tsv";

const VERBS: &[&str] = &["show", "find", "see", "select", "display", "locate", "highlight"];
const PREPS: &[&str] = &["near", "in", "along", "beside", "behind", "across", "around"];
const ADJECTIVES: &[&str] = &["Italian", "French", "Spanish", "old", "big", "small", "ancient", "famous"];
const PLACES: &[&str] = &[
    "river", "lake", "road", "street", "school", "hotel", "restaurant", "house", "garden", "park", "bridge",
    "church", "museum", "station", "hospital", "market", "castle", "forest", "mountain", "beach", "square",
    "tower", "harbour",
];
const CITIES: &[&str] = &["Rome", "Milan", "Paris", "Venice", "Naples", "Florence"];
const HEADS: &[&str] = &["name", "shore", "bank", "square", "bridge"];
const SKETCH: &[&str] = &["sketch", "gesture"];

/// Number of files per class, in [`AmbiguityClass::ALL`] order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CorpusCounts(pub [usize; 7]);

impl Default for CorpusCounts {
    fn default() -> Self {
        CorpusCounts([80, 80, 80, 80, 80, 80, 40])
    }
}

impl CorpusCounts {
    pub fn get(&self, class: AmbiguityClass) -> usize {
        self.0[class.index()]
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    /// Accepts seven comma-separated numbers, or `class=n` pairs that
    /// override the defaults.
    pub fn parse(text: &str) -> Result<Self> {
        let bad = || Error::SchemaViolation(format!("bad counts `{text}`"));
        let parts: Vec<&str> = text.split(',').map(str::trim).filter(|p| !p.is_empty()).collect();
        if parts.iter().all(|p| !p.contains('=')) {
            let nums: Vec<usize> = parts.iter().map(|p| p.parse().map_err(|_| bad())).collect::<Result<_>>()?;
            let arr: [usize; 7] = nums.try_into().map_err(|_| bad())?;
            return Ok(CorpusCounts(arr));
        }
        let mut counts = CorpusCounts::default();
        for p in parts {
            let (k, v) = p.split_once('=').ok_or_else(bad)?;
            let class: AmbiguityClass = k.trim().parse()?;
            counts.0[class.index()] = v.trim().parse().map_err(|_| bad())?;
        }
        Ok(counts)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusLabel {
    pub path: PathBuf,
    pub class: AmbiguityClass,
}

struct Sentence {
    origin: Time,
    entries: Vec<RawEntry>,
}

impl Sentence {
    fn new(rng: &mut ChaCha8Rng) -> Self {
        Sentence { origin: rng.gen_range(0..10_000), entries: Vec::new() }
    }

    fn add(&mut self, modality: &str, repr: &str, t: (Time, Time), concept: &str) -> &mut Self {
        self.entries.push(RawEntry {
            modality: modality.into(),
            repr: repr.into(),
            time: TimeInterval::new(self.origin + t.0, self.origin + t.1),
            concept: concept.into(),
            role: None,
        });
        self
    }

    fn say(&mut self, word: &str, t: (Time, Time)) -> &mut Self {
        self.add("speech", word, t, &word.to_lowercase())
    }
}

fn pick<'a>(rng: &mut ChaCha8Rng, words: &[&'a str]) -> &'a str {
    words.choose(rng).copied().expect("non-empty word list")
}

fn distinct<'a>(rng: &mut ChaCha8Rng, words: &[&'a str], n: usize) -> Vec<&'a str> {
    words.choose_multiple(rng, n).copied().collect()
}

/// One random sentence built from the template of `class`.
pub fn sample_sentence(class: AmbiguityClass, rng: &mut ChaCha8Rng) -> RawInput {
    let mut s = Sentence::new(rng);
    let verb = pick(rng, VERBS);
    let prep = pick(rng, PREPS);
    let pen = pick(rng, SKETCH);
    let mut sentences = Vec::new();
    match class {
        AmbiguityClass::Lexical => {
            // one stroke read as two or three objects
            let k = rng.gen_range(2..=3);
            let objs = distinct(rng, PLACES, k);
            let city = pick(rng, CITIES);
            let repr = objs.join("_");
            s.say(verb, (0, 2)).say("this", (4, 5));
            for o in &objs {
                s.add(pen, &repr, (3, 5), o);
                sentences.push(format!("{verb} this {o} {prep} {city}"));
            }
            s.say(prep, (7, 8)).say(city, (9, 10));
        }
        AmbiguityClass::TemporalSemantic => {
            // says one object while drawing another
            let v = distinct(rng, PLACES, 2);
            s.say("this", (5, 7)).say("is", (8, 9)).say("a", (10, 11));
            s.add(pen, &format!("{pen}_{}", v[0]), (10, 13), v[0]);
            s.say(v[1], (12, 14));
            sentences.push(format!("this is a {}", v[1]));
            sentences.push(format!("this is a {}", v[0]));
        }
        AmbiguityClass::Target => {
            // one selection covering several icons
            let k = rng.gen_range(2..=3);
            let objs = distinct(rng, PLACES, k + 1);
            let (icons, place) = objs.split_at(k);
            s.say(verb, (0, 3)).say("this", (6, 8));
            for o in icons {
                s.add(pen, &format!("icon_{o}"), (9, 11), o);
                sentences.push(format!("{verb} this {o} {prep} {}", place[0]));
            }
            s.say(prep, (12, 15)).say(place[0], (17, 20));
        }
        AmbiguityClass::Gap => {
            // two deictics, one object
            let obj = pick(rng, PLACES);
            s.say(verb, (1, 3)).say("this", (5, 7)).say(prep, (8, 9)).say("this", (10, 12));
            s.add(pen, &format!("{pen}_{obj}"), (10, 13), obj);
            sentences.push(format!("{verb} the object {prep} this {obj}"));
        }
        AmbiguityClass::Analytic => {
            // adjective that may modify either noun
            let adj = pick(rng, ADJECTIVES);
            let noun = pick(rng, PLACES);
            let head = pick(rng, HEADS.iter().copied().filter(|h| *h != noun).collect::<Vec<_>>().as_slice());
            let hand = if rng.gen_bool(0.5) { "handwriting" } else { "speech" };
            s.say(verb, (1, 3)).say(adj, (5, 8)).say(noun, (10, 12));
            s.add(hand, head, (13, 15), &head.to_lowercase());
            sentences.push(format!("{verb} the {head} of the {adj} {noun}"));
            sentences.push(format!("{verb} the {adj} {head} of the {noun}"));
        }
        AmbiguityClass::Attachment => {
            // trailing "with" phrase attaches to the verb or the place
            let v = distinct(rng, PLACES, 3);
            s.say(verb, (0, 3)).say("this", (6, 8));
            s.add(pen, &format!("{pen}_{}", v[0]), (6, 18), v[0]);
            s.say(prep, (12, 15)).say(v[1], (17, 20)).say("with", (22, 24)).say(v[2], (26, 30));
            sentences.push(format!("{verb} this {} with {} {prep} {}", v[0], v[2], v[1]));
            sentences.push(format!("{verb} this {} {prep} {} with {}", v[0], v[1], v[2]));
        }
        AmbiguityClass::Unambiguous => {
            // deictic plus drawn object; the last object may be drawn, said,
            // or both
            let v = distinct(rng, PLACES, 2);
            s.say(verb, (0, 2)).say("this", (4, 6));
            s.add(pen, &format!("{pen}_{}", v[0]), (5, 9), v[0]);
            s.say(prep, (8, 10));
            match rng.gen_range(0..3) {
                0 => {
                    s.add(pen, &format!("{pen}_{}", v[1]), (11, 14), v[1]);
                    s.say(v[1], (12, 15));
                }
                1 => {
                    s.say(v[1], (12, 15));
                }
                _ => {
                    s.add(pen, &format!("{pen}_{}", v[1]), (11, 14), v[1]);
                }
            }
            sentences.push(format!("{verb} this {} {prep} {}", v[0], v[1]));
        }
    }
    // file order is not time order in general
    s.entries.shuffle(rng);
    RawInput { entries: s.entries, sentences }
}

/// Writes the corpus and `labels.tsv` under `out_dir`. Paths in the labels
/// are relative to `out_dir`. Identical seeds give identical bytes.
pub fn generate_corpus(seed: u64, counts: &CorpusCounts, out_dir: &Path) -> Result<Vec<CorpusLabel>> {
    fs::create_dir_all(out_dir).map_err(|e| Error::io(out_dir, e))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut labels = Vec::with_capacity(counts.total());
    let mut tsv = String::new();
    for class in AmbiguityClass::ALL {
        for i in 0..counts.get(class) {
            let raw = sample_sentence(class, &mut rng);
            let name = PathBuf::from(format!("{}_{i:03}.xml", class.name().to_lowercase()));
            let full = out_dir.join(&name);
            fs::write(&full, write_sentence_xml(&raw)).map_err(|e| Error::io(&full, e))?;
            tsv.push_str(&format!("{}\t{}\n", name.display(), class));
            labels.push(CorpusLabel { path: name, class });
        }
    }
    let lf = out_dir.join(LABELS_FILE);
    fs::write(&lf, tsv).map_err(|e| Error::io(&lf, e))?;
    Ok(labels)
}

/// Reads `path<TAB>class` lines.
pub fn read_labels(text: &str) -> Result<Vec<CorpusLabel>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let (path, class) = line
            .split_once('\t')
            .ok_or_else(|| Error::SchemaViolation(format!("labels line {}: expected `path<TAB>class`", i + 1)))?;
        out.push(CorpusLabel { path: PathBuf::from(path.trim()), class: class.trim().parse()? });
    }
    Ok(out)
}

/// Class histogram of a label list.
pub fn label_counts(labels: &[CorpusLabel]) -> BTreeMap<AmbiguityClass, usize> {
    let mut m = BTreeMap::new();
    for l in labels {
        *m.entry(l.class).or_default() += 1;
    }
    m
}
