//! Accuracy of the classifier against a labelled corpus.

use std::fmt::Write as _;
use std::path::Path;

use crate::classify::AmbiguityClass;
use crate::io::build::Pipeline;
use crate::io::corpus::CorpusLabel;

/// Column index of files that failed to classify.
pub const ERROR_COLUMN: usize = 7;

#[derive(Debug, Clone, PartialEq)]
pub struct EvalMetrics {
    /// Rows: expected class. Columns: predicted class, then errors.
    pub confusion: [[usize; 8]; 7],
    /// Files that failed, with the message.
    pub failures: Vec<(String, String)>,
}

fn ratio(num: usize, den: usize) -> f64 {
    if den == 0 {
        1.0
    } else {
        num as f64 / den as f64
    }
}

impl EvalMetrics {
    pub fn new() -> Self {
        EvalMetrics { confusion: [[0; 8]; 7], failures: Vec::new() }
    }

    pub fn record(&mut self, expected: AmbiguityClass, predicted: Option<AmbiguityClass>) {
        let col = predicted.map_or(ERROR_COLUMN, AmbiguityClass::index);
        self.confusion[expected.index()][col] += 1;
    }

    pub fn count(&self, class: AmbiguityClass) -> usize {
        self.confusion[class.index()].iter().sum()
    }

    pub fn correct(&self, class: AmbiguityClass) -> usize {
        self.confusion[class.index()][class.index()]
    }

    pub fn diagonal(&self) -> [usize; 7] {
        AmbiguityClass::ALL.map(|c| self.correct(c))
    }

    pub fn total(&self) -> usize {
        AmbiguityClass::ALL.iter().map(|&c| self.count(c)).sum()
    }

    pub fn class_accuracy(&self, class: AmbiguityClass) -> f64 {
        ratio(self.correct(class), self.count(class))
    }

    fn accuracy_over(&self, keep: impl Fn(AmbiguityClass) -> bool) -> f64 {
        let classes: Vec<AmbiguityClass> = AmbiguityClass::ALL.into_iter().filter(|&c| keep(c)).collect();
        ratio(
            classes.iter().map(|&c| self.correct(c)).sum(),
            classes.iter().map(|&c| self.count(c)).sum(),
        )
    }

    /// Over semantic-class files plus unambiguous ones.
    pub fn semantic_accuracy(&self) -> f64 {
        self.accuracy_over(|c| c.is_semantic() || c == AmbiguityClass::Unambiguous)
    }

    /// Over syntactic-class files plus unambiguous ones.
    pub fn syntactic_accuracy(&self) -> f64 {
        self.accuracy_over(|c| c.is_syntactic() || c == AmbiguityClass::Unambiguous)
    }

    pub fn overall_accuracy(&self) -> f64 {
        self.accuracy_over(|_| true)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let short = ["lex", "tsem", "tgt", "gap", "ana", "att", "unamb", "err"];
        let _ = write!(out, "{:<17}", "expected\\got");
        for s in short {
            let _ = write!(out, "{s:>6}");
        }
        out.push('\n');
        for c in AmbiguityClass::ALL {
            let _ = write!(out, "{:<17}", c.name());
            for n in self.confusion[c.index()] {
                let _ = write!(out, "{n:>6}");
            }
            let _ = writeln!(out, "   acc={:.4}", self.class_accuracy(c));
        }
        let _ = writeln!(out, "semantic_accuracy={:.4}", self.semantic_accuracy());
        let _ = writeln!(out, "syntactic_accuracy={:.4}", self.syntactic_accuracy());
        let _ = writeln!(out, "overall_accuracy={:.4}", self.overall_accuracy());
        let _ = writeln!(out, "files={} errors={}", self.total(), self.failures.len());
        for (path, msg) in &self.failures {
            let _ = writeln!(out, "error: {path}: {msg}");
        }
        out
    }
}

impl Default for EvalMetrics {
    fn default() -> Self {
        Self::new()
    }
}

/// Classifies each labelled file (paths relative to `dir`) and tallies the
/// outcome. Failures land in the error column.
pub fn eval_corpus(labels: &[CorpusLabel], dir: &Path, pipeline: &Pipeline) -> EvalMetrics {
    let mut m = EvalMetrics::new();
    for label in labels {
        let path = dir.join(&label.path);
        match pipeline.classify_file(&path) {
            Ok(report) => m.record(label.class, Some(report.primary)),
            Err(e) => {
                m.record(label.class, None);
                m.failures.push((label.path.display().to_string(), e.to_string()));
            }
        }
    }
    m
}
