use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::ValencePattern;
use crate::extract::{SentencePattern, Settings};

pub const STATS_HEADER: &str = "settings\tframes\tlus\tvalence_patterns\tper_frame\tsentence_patterns\tper_valence\texamples\tper_sentence";

/// One row of an experiment-series table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StatsRow {
    pub settings: Settings,
    pub frames: usize,
    pub lus: usize,
    pub valence_patterns: usize,
    /// Word-order shapes summed over valence patterns.
    pub sentence_patterns: usize,
    pub examples: u64,
}

fn ratio(a: f64, b: f64) -> f64 {
    if b == 0.0 {
        0.0
    } else {
        a / b
    }
}

impl StatsRow {
    pub fn per_frame(&self) -> f64 {
        ratio(self.valence_patterns as f64, self.frames as f64)
    }

    pub fn per_valence(&self) -> f64 {
        ratio(self.sentence_patterns as f64, self.valence_patterns as f64)
    }

    pub fn per_sentence(&self) -> f64 {
        ratio(self.examples as f64, self.sentence_patterns as f64)
    }

    pub fn to_tsv(&self) -> String {
        format!(
            "{}\t{}\t{}\t{}\t{:.0}\t{}\t{:.1}\t{}\t{:.1}",
            self.settings,
            self.frames,
            self.lus,
            self.valence_patterns,
            self.per_frame(),
            self.sentence_patterns,
            self.per_valence(),
            self.examples,
            self.per_sentence()
        )
    }
}

/// Counts over surviving patterns. LUs are distinct (frame, lemma) pairs.
pub fn stats_row(
    settings: Settings,
    patterns: &[SentencePattern],
    valences: &[ValencePattern],
) -> StatsRow {
    let frames: BTreeSet<&str> = valences.iter().map(|v| v.key.frame.as_str()).collect();
    let lus: BTreeSet<(&str, &str)> = patterns
        .iter()
        .map(|p| (p.frame.as_str(), p.lu.lemma.as_str()))
        .collect();
    StatsRow {
        settings,
        frames: frames.len(),
        lus: lus.len(),
        valence_patterns: valences.len(),
        sentence_patterns: valences.iter().map(|v| v.sentences.len()).sum(),
        examples: valences.iter().map(|v| v.count).sum(),
    }
}
