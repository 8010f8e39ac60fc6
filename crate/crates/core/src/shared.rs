//! Cross-lingual shared valence patterns by subsumption.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::extract::{SentencePattern, VerbType, Voice};
use crate::normalize::{FeTriple, PatternKey, SentenceShape, ValencePattern};

/// `a` subsumes `b` when frame, verb type and voice agree and every FE
/// triple of `b` occurs in `a`.
pub fn subsumes(a: &PatternKey, b: &PatternKey) -> bool {
    a.frame == b.frame
        && a.verb_type == b.verb_type
        && a.voice == b.voice
        && b.fes.is_subset(&a.fes)
}

/// Source pattern of one language backing a shared pattern.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub language: String,
    /// The subsuming source pattern.
    pub key: PatternKey,
    pub count: u64,
    /// Its most frequent shape, which fixes word and Adv order.
    pub top: SentenceShape,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SharedPattern {
    pub key: PatternKey,
    /// Sum of witness counts.
    pub count: u64,
    pub witnesses: Vec<Witness>,
}

impl SharedPattern {
    pub fn witness(&self, language: &str) -> Option<&Witness> {
        self.witnesses.iter().find(|w| w.language == language)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SharedSet {
    pub languages: Vec<String>,
    /// Sorted by key; an antichain under [`subsumes`].
    pub patterns: Vec<SharedPattern>,
}

impl SharedSet {
    pub fn frames(&self) -> BTreeSet<String> {
        self.patterns.iter().map(|p| p.key.frame.clone()).collect()
    }

    pub fn keys(&self) -> Vec<&PatternKey> {
        self.patterns.iter().map(|p| &p.key).collect()
    }

    /// Whether some shared pattern subsumes `key`.
    pub fn covers(&self, key: &PatternKey) -> bool {
        self.patterns.iter().any(|p| subsumes(&p.key, key))
    }
}

type Bucket<'a> = BTreeMap<(&'a str, VerbType, Voice), Vec<&'a ValencePattern>>;

fn buckets(patterns: &[ValencePattern]) -> Bucket<'_> {
    let mut out: Bucket = BTreeMap::new();
    for p in patterns {
        out.entry((p.key.frame.as_str(), p.key.verb_type, p.key.voice))
            .or_default()
            .push(p);
    }
    out
}

fn bucket_of<'a, 'b>(b: &'b Bucket<'a>, key: &'a PatternKey) -> &'b [&'a ValencePattern] {
    b.get(&(key.frame.as_str(), key.verb_type, key.voice))
        .map(Vec::as_slice)
        .unwrap_or(&[])
}

/// Patterns of one side subsumed by some pattern of the other side.
fn subsumed_by_other<'a>(side: &'a [ValencePattern], other: &Bucket) -> Vec<&'a PatternKey> {
    side.iter()
        .filter(|p| {
            bucket_of(other, &p.key)
                .iter()
                .any(|q| subsumes(&q.key, &p.key))
        })
        .map(|p| &p.key)
        .collect()
}

/// Smallest superset, then highest count, then key order.
fn pick_witness(language: &str, bucket: &Bucket, key: &PatternKey) -> Option<Witness> {
    bucket_of(bucket, key)
        .iter()
        .filter(|q| subsumes(&q.key, key))
        .min_by(|a, b| {
            a.key
                .fes
                .len()
                .cmp(&b.key.fes.len())
                .then(b.count.cmp(&a.count))
                .then_with(|| a.key.cmp(&b.key))
        })
        .map(|q| Witness {
            language: language.to_string(),
            key: q.key.clone(),
            count: q.count,
            top: q.top().clone(),
        })
}

/// Candidates from both directions, deduplicated, with strictly subsumed
/// members removed. Every member has a witness in each language.
pub fn shared_set(l1: &str, fn1: &[ValencePattern], l2: &str, fn2: &[ValencePattern]) -> SharedSet {
    let b1 = buckets(fn1);
    let b2 = buckets(fn2);
    let candidates = candidate_keys(fn1, &b1, fn2, &b2);

    let mut by_bucket: BTreeMap<(&str, VerbType, Voice), Vec<&PatternKey>> = BTreeMap::new();
    for k in &candidates {
        by_bucket
            .entry((k.frame.as_str(), k.verb_type, k.voice))
            .or_default()
            .push(k);
    }
    let mut patterns = Vec::new();
    for members in by_bucket.values() {
        for k in members {
            let dominated = members.iter().any(|other| other != k && subsumes(other, k));
            if dominated {
                continue;
            }
            let witnesses: Vec<Witness> = [(l1, &b1), (l2, &b2)]
                .into_iter()
                .filter_map(|(lang, b)| pick_witness(lang, b, k))
                .collect();
            debug_assert_eq!(witnesses.len(), 2);
            patterns.push(SharedPattern {
                key: (*k).clone(),
                count: witnesses.iter().map(|w| w.count).sum(),
                witnesses,
            });
        }
    }
    patterns.sort_by(|a, b| a.key.cmp(&b.key));
    SharedSet {
        languages: vec![l1.to_string(), l2.to_string()],
        patterns,
    }
}

fn candidate_keys<'a>(
    fn1: &'a [ValencePattern],
    b1: &Bucket,
    fn2: &'a [ValencePattern],
    b2: &Bucket,
) -> BTreeSet<&'a PatternKey> {
    subsumed_by_other(fn1, b2)
        .into_iter()
        .chain(subsumed_by_other(fn2, b1))
        .collect()
}

/// Set algebra over the frames of two pattern sets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrameSetStats {
    pub l1: usize,
    pub l2: usize,
    pub only1: usize,
    pub only2: usize,
    pub union: usize,
    pub intersection: usize,
}

pub const FRAME_STATS_HEADER: &str = "settings\tl1\tl2\tl1_only\tl2_only\tunion\tintersection";

impl FrameSetStats {
    pub fn to_tsv(&self, settings: &str) -> String {
        format!(
            "{settings}\t{}\t{}\t{}\t{}\t{}\t{}",
            self.l1, self.l2, self.only1, self.only2, self.union, self.intersection
        )
    }
}

pub fn frames_of(patterns: &[ValencePattern]) -> BTreeSet<String> {
    patterns.iter().map(|p| p.key.frame.clone()).collect()
}

pub fn frame_set_stats(fn1: &[ValencePattern], fn2: &[ValencePattern]) -> FrameSetStats {
    let f1 = frames_of(fn1);
    let f2 = frames_of(fn2);
    FrameSetStats {
        l1: f1.len(),
        l2: f2.len(),
        only1: f1.difference(&f2).count(),
        only2: f2.difference(&f1).count(),
        union: f1.union(&f2).count(),
        intersection: f1.intersection(&f2).count(),
    }
}

/// Pattern comparison within the frames both sides share.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternSetStats {
    pub l1: usize,
    pub l2: usize,
    /// Patterns of side 1 subsumed by no pattern of side 2.
    pub only1: usize,
    pub only2: usize,
    pub union: usize,
    /// Distinct candidates before antichain reduction.
    pub intersection: usize,
    pub final_patterns: usize,
    pub final_frames: usize,
}

pub const PATTERN_STATS_HEADER: &str =
    "settings\tl1\tl2\tl1_only\tl2_only\tunion\tintersection\tpatterns\tframes";

impl PatternSetStats {
    pub fn to_tsv(&self, settings: &str) -> String {
        format!(
            "{settings}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
            self.l1,
            self.l2,
            self.only1,
            self.only2,
            self.union,
            self.intersection,
            self.final_patterns,
            self.final_frames
        )
    }
}

pub fn pattern_set_stats(fn1: &[ValencePattern], fn2: &[ValencePattern]) -> PatternSetStats {
    let f1 = frames_of(fn1);
    let f2 = frames_of(fn2);
    let common: BTreeSet<&String> = f1.intersection(&f2).collect();
    let in_common = |ps: &[ValencePattern]| -> Vec<ValencePattern> {
        ps.iter()
            .filter(|p| common.contains(&p.key.frame))
            .cloned()
            .collect()
    };
    let s1 = in_common(fn1);
    let s2 = in_common(fn2);
    let b1 = buckets(&s1);
    let b2 = buckets(&s2);
    let covered1 = subsumed_by_other(&s1, &b2).len();
    let covered2 = subsumed_by_other(&s2, &b1).len();
    let intersection = candidate_keys(&s1, &b1, &s2, &b2).len();
    let shared = shared_set("1", &s1, "2", &s2);
    let only1 = s1.len() - covered1;
    let only2 = s2.len() - covered2;
    PatternSetStats {
        l1: s1.len(),
        l2: s2.len(),
        only1,
        only2,
        union: only1 + only2 + intersection,
        intersection,
        final_patterns: shared.patterns.len(),
        final_frames: shared.frames().len(),
    }
}

/// Covered share of the examples in the shared frames.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Coverage {
    pub covered: u64,
    pub total: u64,
    pub fraction: f64,
}

/// Projection used for coverage: core FEs only, no markers, no raw types.
pub fn coverage_projection(p: &SentencePattern) -> PatternKey {
    PatternKey::new(
        p.frame.clone(),
        p.verb_type,
        p.voice,
        p.fes
            .iter()
            .filter(|f| f.is_core)
            .map(|f| FeTriple::new(f.fe_name.clone(), f.cat, f.rel)),
    )
}

/// Fraction of examples, weighted by count, whose projection is subsumed
/// by a shared pattern. Only patterns of shared frames are counted.
pub fn compute_coverage(shared: &SharedSet, patterns: &[SentencePattern]) -> Coverage {
    let frames = shared.frames();
    let mut covered = 0u64;
    let mut total = 0u64;
    for p in patterns.iter().filter(|p| frames.contains(&p.frame)) {
        let n = u64::from(p.count);
        total += n;
        if shared.covers(&coverage_projection(p)) {
            covered += n;
        }
    }
    let fraction = if total == 0 {
        log::warn!("coverage requested over zero examples");
        0.0
    } else {
        covered as f64 / total as f64
    };
    Coverage {
        covered,
        total,
        fraction,
    }
}
