use std::collections::BTreeMap;

use super::{AnnotatedSentence, Diagnostic};
use crate::extract::{Generalized, Mappings};

/// All diagnostics for `s` under the bundled category tables.
/// An empty list means the example is usable at every setting.
pub fn validate_sentence(s: &AnnotatedSentence) -> Vec<Diagnostic> {
    validate_with(s, Mappings::bundled())
}

pub fn validate_with(s: &AnnotatedSentence, mappings: &Mappings) -> Vec<Diagnostic> {
    let mut out = s.diagnostics.clone();
    let len = s.char_len();

    if s.target_span.is_empty() {
        out.push(Diagnostic::MissingTarget);
    }
    for span in &s.target_span {
        if span.start > span.end || span.end >= len {
            out.push(Diagnostic::SpanOutOfBounds {
                what: "Target".to_string(),
                start: span.start,
                end: span.end,
            });
        }
    }
    for fe in &s.fe_spans {
        if fe.fe_name.trim().is_empty() {
            out.push(Diagnostic::EmptyFEName);
        }
        if let Some(span) = fe.span {
            if span.start > span.end || span.end >= len {
                out.push(Diagnostic::SpanOutOfBounds {
                    what: fe.fe_name.clone(),
                    start: span.start,
                    end: span.end,
                });
            }
        }
    }

    let spans: Vec<_> = s
        .fe_spans
        .iter()
        .filter_map(|fe| fe.span.map(|sp| (fe.fe_name.as_str(), sp)))
        .collect();
    for (i, (a, sa)) in spans.iter().enumerate() {
        for (b, sb) in &spans[i + 1..] {
            if sa.overlaps(sb) {
                out.push(Diagnostic::OverlappingFEs {
                    first: a.to_string(),
                    second: b.to_string(),
                });
            }
        }
        if s.target_span.iter().any(|t| t.overlaps(sa)) {
            out.push(Diagnostic::OverlappingFEs {
                first: a.to_string(),
                second: "Target".to_string(),
            });
        }
    }

    let mut cats: BTreeMap<&str, Vec<_>> = BTreeMap::new();
    for fe in s.fe_spans.iter().filter(|fe| fe.span.is_some()) {
        let raw = fe.raw_phrase_type.as_deref().unwrap_or_default();
        match mappings.generalize(raw, s.scheme, fe.head_form.as_deref()) {
            Generalized::Cat { cat, .. } => cats.entry(fe.fe_name.as_str()).or_default().push(cat),
            Generalized::Unsupported { label } => out.push(Diagnostic::UnsupportedRealization {
                fe: fe.fe_name.clone(),
                label,
            }),
        }
    }
    for (fe, list) in cats {
        if list.iter().any(|c| *c != list[0]) {
            out.push(Diagnostic::RepeatedFEDifferentTypes { fe: fe.to_string() });
        }
    }

    let mut seen = std::collections::BTreeSet::new();
    out.retain(|d| seen.insert(d.clone()));
    out
}
