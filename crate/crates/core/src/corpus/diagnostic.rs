use std::fmt;

use serde::{Deserialize, Serialize};

use crate::extract::{Level, Settings, SubSeries};

/// Machine-readable reason why an example may be unusable.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Diagnostic {
    MissingTarget,
    MissingFrame,
    SpanOutOfBounds {
        what: String,
        start: usize,
        end: usize,
    },
    EmptyFEName,
    /// Two FEs, or an FE and the target, share characters.
    OverlappingFEs {
        first: String,
        second: String,
    },
    UnsupportedRealization {
        fe: String,
        label: String,
    },
    RepeatedFEDifferentTypes {
        fe: String,
    },
    /// A GF/PT label was joined to an FE whose span differs by one char.
    SpanMismatch {
        fe: String,
        layer: String,
    },
    /// A GF/PT label matched no FE span at all.
    UnreconciledLayers {
        layer: String,
        label: String,
        start: usize,
        end: usize,
    },
    /// The FE has a grammatical function but no phrase type.
    MissingPhraseType {
        fe: String,
    },
    DanglingHead {
        token: String,
        head: String,
    },
    AmbiguousHead {
        fe: String,
    },
    // The remaining reasons come from pattern extraction.
    ClausalSubject {
        fe: String,
    },
    MultipleSubjects,
    UnmappedRelation {
        fe: String,
        label: String,
    },
    VerbTypeOutsideTable {
        complements: String,
    },
    NonVerbTarget {
        pos: String,
    },
}

impl Diagnostic {
    pub fn kind(&self) -> &'static str {
        match self {
            Diagnostic::MissingTarget => "MissingTarget",
            Diagnostic::MissingFrame => "MissingFrame",
            Diagnostic::SpanOutOfBounds { .. } => "SpanOutOfBounds",
            Diagnostic::EmptyFEName => "EmptyFEName",
            Diagnostic::OverlappingFEs { .. } => "OverlappingFEs",
            Diagnostic::UnsupportedRealization { .. } => "UnsupportedRealization",
            Diagnostic::RepeatedFEDifferentTypes { .. } => "RepeatedFEDifferentTypes",
            Diagnostic::SpanMismatch { .. } => "SpanMismatch",
            Diagnostic::UnreconciledLayers { .. } => "UnreconciledLayers",
            Diagnostic::MissingPhraseType { .. } => "MissingPhraseType",
            Diagnostic::DanglingHead { .. } => "DanglingHead",
            Diagnostic::AmbiguousHead { .. } => "AmbiguousHead",
            Diagnostic::ClausalSubject { .. } => "ClausalSubject",
            Diagnostic::MultipleSubjects => "MultipleSubjects",
            Diagnostic::UnmappedRelation { .. } => "UnmappedRelation",
            Diagnostic::VerbTypeOutsideTable { .. } => "VerbTypeOutsideTable",
            Diagnostic::NonVerbTarget { .. } => "NonVerbTarget",
        }
    }

    /// Whether an example carrying this diagnostic is skipped under `settings`.
    ///
    /// Structural breakage always skips. Inconsistent annotations skip from
    /// level 1 on, the baseline keeps everything it can represent.
    /// Repaired spans and ambiguous heads never skip.
    pub fn blocks(&self, settings: Settings) -> bool {
        match self {
            Diagnostic::MissingTarget
            | Diagnostic::MissingFrame
            | Diagnostic::SpanOutOfBounds { .. }
            | Diagnostic::EmptyFEName => true,
            Diagnostic::OverlappingFEs { .. }
            | Diagnostic::UnreconciledLayers { .. }
            | Diagnostic::DanglingHead { .. }
            | Diagnostic::UnsupportedRealization { .. } => settings.level >= Level::S1,
            Diagnostic::RepeatedFEDifferentTypes { .. } => settings.sub != SubSeries::None,
            Diagnostic::SpanMismatch { .. }
            | Diagnostic::AmbiguousHead { .. }
            | Diagnostic::MissingPhraseType { .. } => false,
            Diagnostic::ClausalSubject { .. }
            | Diagnostic::MultipleSubjects
            | Diagnostic::UnmappedRelation { .. }
            | Diagnostic::VerbTypeOutsideTable { .. }
            | Diagnostic::NonVerbTarget { .. } => true,
        }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagnostic::SpanOutOfBounds { what, start, end } => {
                write!(f, "SpanOutOfBounds({what} {start}-{end})")
            }
            Diagnostic::OverlappingFEs { first, second } => {
                write!(f, "OverlappingFEs({first}, {second})")
            }
            Diagnostic::UnsupportedRealization { fe, label } => {
                write!(f, "UnsupportedRealization({fe}: {label})")
            }
            Diagnostic::RepeatedFEDifferentTypes { fe }
            | Diagnostic::MissingPhraseType { fe }
            | Diagnostic::AmbiguousHead { fe }
            | Diagnostic::ClausalSubject { fe } => write!(f, "{}({fe})", self.kind()),
            Diagnostic::SpanMismatch { fe, layer } => write!(f, "SpanMismatch({fe}, {layer})"),
            Diagnostic::UnreconciledLayers {
                layer,
                label,
                start,
                end,
            } => write!(f, "UnreconciledLayers({layer} {label} {start}-{end})"),
            Diagnostic::DanglingHead { token, head } => {
                write!(f, "DanglingHead({token} -> {head})")
            }
            Diagnostic::UnmappedRelation { fe, label } => {
                write!(f, "UnmappedRelation({fe}: {label})")
            }
            Diagnostic::VerbTypeOutsideTable { complements } => {
                write!(f, "VerbTypeOutsideTable({complements})")
            }
            Diagnostic::NonVerbTarget { pos } => write!(f, "NonVerbTarget({pos})"),
            _ => f.write_str(self.kind()),
        }
    }
}
