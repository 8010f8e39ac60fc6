//! Unified model of FrameNet-annotated example sentences.
//!
//! Both XML dialects are parsed into [`AnnotatedSentence`]. Spans are
//! inclusive character offsets into [`AnnotatedSentence::text`].

mod core_index;
mod dependency;
mod diagnostic;
mod phrase_structure;
mod validate;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use core_index::CoreIndex;
pub use dependency::parse_dependency_corpus;
pub use diagnostic::Diagnostic;
pub use phrase_structure::parse_phrase_structure_corpus;
pub use validate::{validate_sentence, validate_with};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum SourceScheme {
    PhraseStructure,
    Dependency,
}

impl SourceScheme {
    pub fn as_str(self) -> &'static str {
        match self {
            SourceScheme::PhraseStructure => "phrase-structure",
            SourceScheme::Dependency => "dependency",
        }
    }
}

impl fmt::Display for SourceScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for SourceScheme {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "phrase-structure" | "phrase_structure" | "bfn" | "ps" => {
                Ok(SourceScheme::PhraseStructure)
            }
            "dependency" | "swefn" | "dep" => Ok(SourceScheme::Dependency),
            other => Err(format!("unknown annotation scheme `{other}`")),
        }
    }
}

/// Inclusive character range, `start <= end`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    pub fn new(start: usize, end: usize) -> Self {
        Span { start, end }
    }

    /// Number of characters covered.
    pub fn width(&self) -> usize {
        self.end + 1 - self.start
    }

    pub fn overlaps(&self, other: &Span) -> bool {
        self.start <= other.end && other.start <= self.end
    }

    pub fn contains(&self, other: &Span) -> bool {
        self.start <= other.start && other.end <= self.end
    }

    /// True when both ends differ by at most one character.
    pub fn near(&self, other: &Span) -> bool {
        self.start.abs_diff(other.start) <= 1 && self.end.abs_diff(other.end) <= 1
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.start, self.end)
    }
}

/// One word of the target LU as it occurs in the sentence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TargetToken {
    pub span: Span,
    pub form: String,
    /// POS or msd tag from the source tagset.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tag: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lemma: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FESpan {
    pub fe_name: String,
    /// `None` for null-instantiated FEs.
    #[serde(default)]
    pub span: Option<Span>,
    /// e.g. `NP`, `VPto`, `PP[for]`, or a head msd such as `VB.INF`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub raw_phrase_type: Option<String>,
    /// `Ext`/`Obj`/`Dep`, or a dependency relation such as `SS`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub raw_gf: Option<String>,
    /// Surface form of the dependency head token.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub head_form: Option<String>,
    pub is_core: bool,
}

impl FESpan {
    pub fn null_instantiated(fe_name: impl Into<String>, is_core: bool) -> Self {
        FESpan {
            fe_name: fe_name.into(),
            span: None,
            raw_phrase_type: None,
            raw_gf: None,
            head_form: None,
            is_core,
        }
    }

    pub fn is_null_instantiated(&self) -> bool {
        self.span.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnnotatedSentence {
    pub source_id: String,
    pub scheme: SourceScheme,
    pub language: String,
    pub text: String,
    pub frame: String,
    pub lu_lemma: String,
    /// Universal POS of the LU, e.g. `VERB`.
    pub lu_pos: String,
    pub target_span: Vec<Span>,
    pub target_tokens: Vec<TargetToken>,
    pub fe_spans: Vec<FESpan>,
    /// Problems noticed while parsing. Further checks run in [`validate_sentence`].
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub diagnostics: Vec<Diagnostic>,
}

impl AnnotatedSentence {
    pub fn char_len(&self) -> usize {
        self.text.chars().count()
    }

    /// Substring covered by an inclusive char span.
    pub fn slice(&self, span: Span) -> Option<String> {
        let len = self.char_len();
        if span.start > span.end || span.end >= len {
            return None;
        }
        Some(
            self.text
                .chars()
                .skip(span.start)
                .take(span.width())
                .collect(),
        )
    }

    pub fn target_start(&self) -> Option<usize> {
        self.target_span.iter().map(|s| s.start).min()
    }
}

/// A sentence the parser could not turn into an [`AnnotatedSentence`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RejectedSentence {
    pub source_id: String,
    pub reason: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParsedCorpus {
    pub sentences: Vec<AnnotatedSentence>,
    pub rejected: Vec<RejectedSentence>,
}

impl ParsedCorpus {
    pub fn extend(&mut self, other: ParsedCorpus) {
        self.sentences.extend(other.sentences);
        self.rejected.extend(other.rejected);
    }
}

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("{source_id}: malformed XML: {message}")]
    MalformedXml { source_id: String, message: String },
}

/// Knobs shared by both parsers.
#[derive(Clone, Debug, Default)]
pub struct ParseOptions {
    /// Language code written to every sentence.
    pub language: String,
    /// Frame name to use when the document names none.
    pub default_frame: Option<String>,
    /// Core-ness of FEs not described in the document itself.
    pub core_index: CoreIndex,
}

impl ParseOptions {
    pub fn for_language(language: &str) -> Self {
        ParseOptions {
            language: language.to_string(),
            ..ParseOptions::default()
        }
    }
}

/// Universal POS for a FrameNet LU suffix such as `v` in `want.v`.
pub(crate) fn upos_for_lu_suffix(suffix: &str) -> &'static str {
    match suffix.to_ascii_lowercase().as_str() {
        "v" => "VERB",
        "n" => "NOUN",
        "a" | "adj" => "ADJ",
        "adv" => "ADV",
        "prep" => "ADP",
        "num" => "NUM",
        "c" | "scon" => "SCONJ",
        "art" => "DET",
        "pron" => "PRON",
        "intj" => "INTJ",
        _ => "X",
    }
}

/// Splits `text` into whitespace-separated words with inclusive char spans.
pub(crate) fn words_with_spans(text: &str) -> Vec<(Span, String)> {
    let mut out = Vec::new();
    let mut current = String::new();
    let mut start = 0;
    for (i, c) in text.chars().enumerate() {
        if c.is_whitespace() {
            if !current.is_empty() {
                out.push((Span::new(start, i - 1), std::mem::take(&mut current)));
            }
        } else {
            if current.is_empty() {
                start = i;
            }
            current.push(c);
        }
    }
    if !current.is_empty() {
        let end = start + current.chars().count() - 1;
        out.push((Span::new(start, end), current));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn words_and_spans() {
        let w = words_with_spans("Traders in  the city");
        assert_eq!(w[0], (Span::new(0, 6), "Traders".to_string()));
        assert_eq!(w[2], (Span::new(12, 14), "the".to_string()));
        assert_eq!(w.len(), 4);
    }

    #[test]
    fn span_relations() {
        let a = Span::new(0, 18);
        assert!(a.overlaps(&Span::new(18, 20)));
        assert!(!a.overlaps(&Span::new(19, 20)));
        assert!(a.near(&Span::new(1, 17)));
        assert!(!a.near(&Span::new(2, 18)));
    }
}
