use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("unknown {kind} `{value}`")]
pub struct ParseTagError {
    kind: &'static str,
    value: String,
}

impl ParseTagError {
    fn new(kind: &'static str, value: &str) -> Self {
        ParseTagError {
            kind,
            value: value.to_string(),
        }
    }
}

macro_rules! tag_enum {
    ($(#[$meta:meta])* $name:ident, $kind:literal { $($variant:ident => $text:literal),+ $(,)? }) => {
        $(#[$meta])*
        #[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
        pub enum $name {
            $(#[serde(rename = $text)] $variant),+
        }

        impl $name {
            pub const ALL: &'static [$name] = &[$($name::$variant),+];

            pub fn as_str(self) -> &'static str {
                match self {
                    $($name::$variant => $text),+
                }
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.as_str())
            }
        }

        impl FromStr for $name {
            type Err = ParseTagError;

            fn from_str(s: &str) -> Result<Self, Self::Err> {
                match s {
                    $($text => Ok($name::$variant),)+
                    _ => Err(ParseTagError::new($kind, s)),
                }
            }
        }
    };
}

tag_enum!(
    /// Resource-grammar phrase category an FE is generalized to.
    PhraseCat, "phrase category" {
        NP => "NP",
        VP => "VP",
        Adv => "Adv",
        S => "S",
        QS => "QS",
    }
);

tag_enum!(
    /// Verb subcategorization type following the resource-grammar convention.
    VerbType, "verb type" {
        V => "V",
        V2 => "V2",
        V3 => "V3",
        VV => "VV",
        VS => "VS",
        VQ => "VQ",
        V2V => "V2V",
        V2S => "V2S",
        V2Q => "V2Q",
    }
);

tag_enum!(
    /// Universal dependency relation of an NP-typed FE.
    GrammRel, "grammatical relation" {
        Nsubj => "nsubj",
        Nsubjpass => "nsubjpass",
        Dobj => "dobj",
        Iobj => "iobj",
    }
);

tag_enum!(
    Voice, "voice" {
        Act => "Act",
        Pass => "Pass",
    }
);

impl GrammRel {
    pub fn is_subject(self) -> bool {
        matches!(self, GrammRel::Nsubj | GrammRel::Nsubjpass)
    }
}

impl PhraseCat {
    /// Name of the empty phrase constant used when an argument is absent.
    pub fn empty_constant(self) -> &'static str {
        match self {
            PhraseCat::NP => "emptyNP",
            PhraseCat::VP => "emptyVP",
            PhraseCat::Adv => "emptyAdv",
            PhraseCat::S => "emptyS",
            PhraseCat::QS => "emptyQS",
        }
    }
}

/// One FE as realized in a particular sentence.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct FERealization {
    pub fe_name: String,
    pub cat: PhraseCat,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rel: Option<GrammRel>,
    /// Preposition or case realizing an Adv-typed FE.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub marker: Option<String>,
    pub is_core: bool,
    /// Framenet-specific phrase type, kept only below settings level 2
    /// where categories are not yet generalized.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub raw_type: Option<String>,
}

impl FERealization {
    pub fn new(fe_name: impl Into<String>, cat: PhraseCat) -> Self {
        FERealization {
            fe_name: fe_name.into(),
            cat,
            rel: None,
            marker: None,
            is_core: true,
            raw_type: None,
        }
    }

    pub fn with_rel(mut self, rel: GrammRel) -> Self {
        self.rel = Some(rel);
        self
    }

    pub fn with_marker(mut self, marker: impl Into<String>) -> Self {
        self.marker = Some(marker.into());
        self
    }

    pub fn non_core(mut self) -> Self {
        self.is_core = false;
        self
    }

    /// Category label as shown in reports: the raw type when present.
    pub fn type_label(&self) -> &str {
        self.raw_type.as_deref().unwrap_or(self.cat.as_str())
    }

    /// `Name/Cat.rel` without the marker.
    pub fn normalized_label(&self) -> String {
        let mut out = format!("{}/{}", self.fe_name, self.type_label());
        if let Some(rel) = self.rel {
            out.push('.');
            out.push_str(rel.as_str());
        }
        out
    }
}

impl fmt::Display for FERealization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.normalized_label())?;
        let bracketed = self.raw_type.as_deref().is_some_and(|r| r.ends_with(']'));
        if let (Some(marker), false) = (&self.marker, bracketed) {
            write!(f, "[{marker}]")?;
        }
        Ok(())
    }
}

/// One constituent of an LU in the morphological description.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct MorphComponent {
    pub form: String,
    /// Universal POS tag, e.g. `VERB`, `ADP`, `PRON`.
    pub upos: String,
    /// Universal features joined with `.`, e.g. `Fin`, `Reflex`, `Art.Def`.
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub feats: String,
}

impl MorphComponent {
    pub fn new(form: impl Into<String>, upos: &str, feats: &str) -> Self {
        MorphComponent {
            form: form.into(),
            upos: upos.to_string(),
            feats: feats.to_string(),
        }
    }

    /// `UPOS` or `UPOS.Feats`.
    pub fn tag(&self) -> String {
        if self.feats.is_empty() {
            self.upos.clone()
        } else {
            format!("{}.{}", self.upos, self.feats)
        }
    }
}

/// Morphological description of the constituents of an LU.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LuMorph {
    pub base_form: String,
    pub components: Vec<MorphComponent>,
}

impl LuMorph {
    /// Space-separated tag sequence, e.g. `VERB.Fin ADP`.
    pub fn pattern(&self) -> String {
        self.components
            .iter()
            .map(MorphComponent::tag)
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// The first constituent, which is the main verb for verb LUs.
    pub fn main_verb(&self) -> &str {
        self.components
            .first()
            .map(|c| c.form.as_str())
            .unwrap_or(self.base_form.as_str())
    }

    pub fn is_multiword(&self) -> bool {
        self.components.len() > 1
    }
}

/// Reference to the target LU of a sentence pattern.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LuRef {
    pub lemma: String,
    pub morph: LuMorph,
}

/// Word-order preserving valence pattern of one or more identical sentences.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SentencePattern {
    pub frame: String,
    pub verb_type: VerbType,
    pub voice: Voice,
    /// FE realizations in surface order.
    pub fes: Vec<FERealization>,
    pub lu: LuRef,
    pub count: u32,
}

impl SentencePattern {
    /// Space-separated FE realizations in surface order, with markers.
    pub fn fes_line(&self) -> String {
        fes_line(&self.fes)
    }

    /// True when both patterns agree on everything but the count.
    pub fn same_structure(&self, other: &SentencePattern) -> bool {
        self.frame == other.frame
            && self.verb_type == other.verb_type
            && self.voice == other.voice
            && self.fes == other.fes
            && self.lu == other.lu
    }
}

pub(crate) fn fes_line(fes: &[FERealization]) -> String {
    if fes.is_empty() {
        return "(none)".to_string();
    }
    fes.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

/// Extraction level of the experiment series.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Level {
    /// Framenet-specific types, nothing skipped.
    S0,
    /// Skip examples with unconsidered realizations.
    S1,
    /// Generalize to resource-grammar categories.
    S2,
    /// Prune once-used valence patterns.
    S3,
}

/// Sub-series modifier of the experiment series.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum SubSeries {
    None,
    /// Collapse repeated FEs.
    A,
    /// Drop non-core FEs, then collapse repeated FEs.
    B,
}

/// Experiment settings, written `level.sub` as in `2.B` or `3.0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Settings {
    pub level: Level,
    pub sub: SubSeries,
}

impl Settings {
    pub const fn new(level: Level, sub: SubSeries) -> Self {
        Settings { level, sub }
    }

    /// The settings row order used for series statistics.
    pub fn series() -> Vec<Settings> {
        use Level::*;
        use SubSeries::*;
        vec![
            Settings::new(S0, None),
            Settings::new(S1, None),
            Settings::new(S1, A),
            Settings::new(S1, B),
            Settings::new(S2, None),
            Settings::new(S2, A),
            Settings::new(S2, B),
            Settings::new(S3, None),
            Settings::new(S3, A),
            Settings::new(S3, B),
        ]
    }

    pub fn generalizes(self) -> bool {
        self.level >= Level::S2
    }

    pub fn skips_unsupported(self) -> bool {
        self.level >= Level::S1
    }

    pub fn prunes_singletons(self) -> bool {
        self.level >= Level::S3
    }
}

impl fmt::Display for Settings {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let level = match self.level {
            Level::S0 => 0,
            Level::S1 => 1,
            Level::S2 => 2,
            Level::S3 => 3,
        };
        let sub = match self.sub {
            SubSeries::None => "0",
            SubSeries::A => "A",
            SubSeries::B => "B",
        };
        write!(f, "{level}.{sub}")
    }
}

impl FromStr for Settings {
    type Err = ParseTagError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseTagError::new("settings", s);
        let (level, sub) = s.trim().split_once('.').ok_or_else(err)?;
        let level = match level {
            "0" => Level::S0,
            "1" => Level::S1,
            "2" => Level::S2,
            "3" => Level::S3,
            _ => return Err(err()),
        };
        let sub = match sub {
            "0" => SubSeries::None,
            "A" | "a" => SubSeries::A,
            "B" | "b" => SubSeries::B,
            _ => return Err(err()),
        };
        Ok(Settings { level, sub })
    }
}

impl Serialize for Settings {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Settings {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
