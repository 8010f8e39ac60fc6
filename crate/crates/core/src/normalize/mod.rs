//! Normalized valence patterns: sentence patterns grouped by frame, verb
//! type, voice and the unordered set of FE realizations, with word order and
//! markers dropped.

mod stats;
mod summary;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::extract::{
    fes_line, FERealization, GrammRel, PhraseCat, SentencePattern, VerbType, Voice,
};

pub use stats::{stats_row, StatsRow, STATS_HEADER};
pub use summary::{summarize, SummaryLimits};

/// One FE realization without word order or marker.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct FeTriple {
    pub fe: String,
    pub cat: PhraseCat,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rel: Option<GrammRel>,
    /// Framenet-specific type before generalization, marker stripped.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub raw: Option<String>,
}

impl FeTriple {
    pub fn new(fe: impl Into<String>, cat: PhraseCat, rel: Option<GrammRel>) -> Self {
        FeTriple {
            fe: fe.into(),
            cat,
            rel,
            raw: None,
        }
    }

    pub fn label(&self) -> String {
        let mut out = format!(
            "{}/{}",
            self.fe,
            self.raw.as_deref().unwrap_or(self.cat.as_str())
        );
        if let Some(rel) = self.rel {
            out.push('.');
            out.push_str(rel.as_str());
        }
        out
    }

    /// `Fe_Cat`, the category name used in generated grammars.
    pub fn category_name(&self) -> String {
        format!("{}_{}", self.fe, self.cat)
    }
}

impl From<&FERealization> for FeTriple {
    fn from(r: &FERealization) -> Self {
        FeTriple {
            fe: r.fe_name.clone(),
            cat: r.cat,
            rel: r.rel,
            raw: r
                .raw_type
                .as_deref()
                .map(|t| t.split('[').next().unwrap_or(t).to_string()),
        }
    }
}

impl fmt::Display for FeTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// Identity of a normalized valence pattern.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PatternKey {
    pub frame: String,
    pub verb_type: VerbType,
    pub voice: Voice,
    pub fes: BTreeSet<FeTriple>,
}

impl PatternKey {
    pub fn new(
        frame: impl Into<String>,
        verb_type: VerbType,
        voice: Voice,
        fes: impl IntoIterator<Item = FeTriple>,
    ) -> Self {
        PatternKey {
            frame: frame.into(),
            verb_type,
            voice,
            fes: fes.into_iter().collect(),
        }
    }

    pub fn of(p: &SentencePattern) -> Self {
        PatternKey::new(
            p.frame.clone(),
            p.verb_type,
            p.voice,
            p.fes.iter().map(FeTriple::from),
        )
    }

    /// FE labels sorted alphabetically and space-separated.
    pub fn fes_line(&self) -> String {
        if self.fes.is_empty() {
            return "(none)".to_string();
        }
        let mut labels: Vec<String> = self.fes.iter().map(FeTriple::label).collect();
        labels.sort();
        labels.join(" ")
    }
}

impl fmt::Display for PatternKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}/{}({}) {}",
            self.frame,
            self.verb_type,
            self.voice,
            self.fes_line()
        )
    }
}

/// A word-order preserving shape of a valence pattern, summed over LUs.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SentenceShape {
    pub fes: Vec<FERealization>,
    pub count: u64,
}

impl SentenceShape {
    pub fn line(&self) -> String {
        fes_line(&self.fes)
    }

    fn adv_without_marker(&self) -> usize {
        self.fes
            .iter()
            .filter(|f| f.cat == PhraseCat::Adv && f.marker.is_none())
            .count()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValencePattern {
    #[serde(flatten)]
    pub key: PatternKey,
    pub count: u64,
    /// Member shapes, most frequent first; `sentences[0]` is the top one.
    pub sentences: Vec<SentenceShape>,
}

impl ValencePattern {
    pub fn top(&self) -> &SentenceShape {
        &self.sentences[0]
    }
}

/// Orders shapes so the first one is the generation witness: highest count,
/// then fewest Adv FEs lacking a marker, then the serialized line.
fn shape_order(a: &SentenceShape, b: &SentenceShape) -> std::cmp::Ordering {
    b.count
        .cmp(&a.count)
        .then(a.adv_without_marker().cmp(&b.adv_without_marker()))
        .then_with(|| a.line().cmp(&b.line()))
        .then_with(|| a.fes.cmp(&b.fes))
}

fn build(groups: BTreeMap<PatternKey, BTreeMap<Vec<FERealization>, u64>>) -> Vec<ValencePattern> {
    groups
        .into_iter()
        .map(|(key, shapes)| {
            let mut sentences: Vec<SentenceShape> = shapes
                .into_iter()
                .map(|(fes, count)| SentenceShape { fes, count })
                .collect();
            sentences.sort_by(shape_order);
            ValencePattern {
                key,
                count: sentences.iter().map(|s| s.count).sum(),
                sentences,
            }
        })
        .collect()
}

/// Groups sentence patterns into valence patterns, sorted by key.
pub fn normalize(patterns: &[SentencePattern]) -> Vec<ValencePattern> {
    let mut groups: BTreeMap<PatternKey, BTreeMap<Vec<FERealization>, u64>> = BTreeMap::new();
    for p in patterns {
        *groups
            .entry(PatternKey::of(p))
            .or_default()
            .entry(p.fes.clone())
            .or_default() += u64::from(p.count);
    }
    build(groups)
}

/// Merges valence patterns with equal keys. A no-op on [`normalize`] output.
pub fn merge(valences: &[ValencePattern]) -> Vec<ValencePattern> {
    let mut groups: BTreeMap<PatternKey, BTreeMap<Vec<FERealization>, u64>> = BTreeMap::new();
    for v in valences {
        let entry = groups.entry(v.key.clone()).or_default();
        for s in &v.sentences {
            *entry.entry(s.fes.clone()).or_default() += s.count;
        }
    }
    build(groups)
}

/// Drops once-used patterns of every frame that has a pattern used more than once.
pub fn prune_singletons(valences: &[ValencePattern]) -> Vec<ValencePattern> {
    let frequent: BTreeSet<&str> = valences
        .iter()
        .filter(|v| v.count > 1)
        .map(|v| v.key.frame.as_str())
        .collect();
    valences
        .iter()
        .filter(|v| v.count > 1 || !frequent.contains(v.key.frame.as_str()))
        .cloned()
        .collect()
}

/// Sentence patterns whose valence pattern survived pruning.
pub fn retain_members(
    patterns: &[SentencePattern],
    valences: &[ValencePattern],
) -> Vec<SentencePattern> {
    let keys: BTreeSet<&PatternKey> = valences.iter().map(|v| &v.key).collect();
    patterns
        .iter()
        .filter(|p| keys.contains(&PatternKey::of(p)))
        .cloned()
        .collect()
}
