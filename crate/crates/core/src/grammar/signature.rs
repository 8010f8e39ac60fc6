//! Syntactic signatures: valence patterns with FE names stripped.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::extract::{GrammRel, PhraseCat, VerbType, Voice};
use crate::normalize::PatternKey;

/// One argument slot, e.g. `NP_dobj` or `Adv`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SlotKind {
    pub cat: PhraseCat,
    pub rel: Option<GrammRel>,
}

impl fmt::Display for SlotKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.rel {
            Some(r) => write!(f, "{}_{}", self.cat, r),
            None => write!(f, "{}", self.cat),
        }
    }
}

/// Order-free: args are kept sorted by their printed form.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SyntacticSignature {
    pub verb_type: VerbType,
    pub voice: Voice,
    pub args: Vec<SlotKind>,
}

impl SyntacticSignature {
    pub fn new(
        verb_type: VerbType,
        voice: Voice,
        args: impl IntoIterator<Item = SlotKind>,
    ) -> Self {
        let mut args: Vec<SlotKind> = args.into_iter().collect();
        args.sort_by_key(|a| a.to_string());
        SyntacticSignature {
            verb_type,
            voice,
            args,
        }
    }

    /// `NP_dobj NP_nsubj`, or empty for a bare verb.
    pub fn args_line(&self) -> String {
        self.args
            .iter()
            .map(SlotKind::to_string)
            .collect::<Vec<_>>()
            .join(" ")
    }

    fn parse_slot(s: &str) -> Option<SlotKind> {
        let (cat, rel) = match s.split_once('_') {
            Some((c, r)) => (c, Some(r.parse().ok()?)),
            None => (s, None),
        };
        Some(SlotKind {
            cat: cat.parse().ok()?,
            rel,
        })
    }

    /// Parses `V2 Act NP_dobj NP_nsubj`.
    pub fn parse(s: &str) -> Option<Self> {
        let mut it = s.split_whitespace();
        let vt = it.next()?.parse().ok()?;
        let voice = it.next()?.parse().ok()?;
        let args: Option<Vec<SlotKind>> = it.map(Self::parse_slot).collect();
        Some(Self::new(vt, voice, args?))
    }
}

impl fmt::Display for SyntacticSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.verb_type, self.voice)?;
        for a in &self.args {
            write!(f, " {a}")?;
        }
        Ok(())
    }
}

pub fn syntactic_signature(key: &PatternKey) -> SyntacticSignature {
    SyntacticSignature::new(
        key.verb_type,
        key.voice,
        key.fes.iter().map(|t| SlotKind {
            cat: t.cat,
            rel: t.rel,
        }),
    )
}

/// Signatures with a concrete-syntax template, in census order.
const TEMPLATE_SIGNATURES: [&str; 32] = [
    "V2 Act NP_dobj NP_nsubj",
    "V Act Adv NP_nsubj",
    "V2 Pass NP_nsubjpass",
    "V2 Act Adv NP_dobj NP_nsubj",
    "V Act NP_nsubj",
    "V2 Pass Adv NP_nsubjpass",
    "VS Act NP_nsubj S",
    "VV Act NP_nsubj VP",
    "V2 Pass NP_dobj NP_nsubjpass",
    "V2 Act NP_dobj",
    "V Act Adv Adv NP_nsubj",
    "VQ Act NP_nsubj QS",
    "V2 Act Adv NP_dobj",
    "V Act Adv",
    "V2V Act NP_dobj NP_nsubj VP",
    "VS Pass S",
    "V Act Adv Adv Adv NP_nsubj",
    "V2 Act Adv Adv NP_dobj NP_nsubj",
    "V3 Act NP_iobj NP_nsubj",
    "VQ Act QS",
    "VS Act Adv NP_nsubj S",
    "V2 Pass Adv Adv NP_nsubjpass",
    "V2 Pass Adv NP_dobj NP_nsubjpass",
    "V2 Pass NP_dobj",
    "V2 Act Adv Adv NP_dobj",
    "V2S Act NP_dobj NP_nsubj S",
    "V2S Act NP_dobj S",
    "V2V Act NP_dobj VP",
    "VS Act S",
    "VV Act VP",
    "V2 Pass Adv",
    "VS Pass NP_nsubjpass S",
];

/// The fixed set of signatures that have templates. Template ids are 1-based
/// positions in census order.
#[derive(Clone, Debug)]
pub struct TemplateRegistry {
    ids: BTreeMap<SyntacticSignature, usize>,
}

impl TemplateRegistry {
    pub fn builtin() -> Self {
        let ids = TEMPLATE_SIGNATURES
            .iter()
            .enumerate()
            .map(|(i, s)| {
                (
                    SyntacticSignature::parse(s).expect("builtin signature"),
                    i + 1,
                )
            })
            .collect();
        TemplateRegistry { ids }
    }

    pub fn template_id(&self, sig: &SyntacticSignature) -> Option<usize> {
        self.ids.get(sig).copied()
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn signatures(&self) -> impl Iterator<Item = &SyntacticSignature> {
        self.ids.keys()
    }
}

impl Default for TemplateRegistry {
    fn default() -> Self {
        Self::builtin()
    }
}

pub const CENSUS_HEADER: &str = "verb\tvoice\targuments\tfreq";

/// Signature frequencies over the given keys, most frequent first.
pub fn census<'a>(
    keys: impl IntoIterator<Item = &'a PatternKey>,
) -> Vec<(SyntacticSignature, u64)> {
    let mut counts: BTreeMap<SyntacticSignature, u64> = BTreeMap::new();
    for k in keys {
        *counts.entry(syntactic_signature(k)).or_default() += 1;
    }
    let mut rows: Vec<_> = counts.into_iter().collect();
    rows.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    rows
}

pub fn census_tsv(rows: &[(SyntacticSignature, u64)]) -> String {
    let mut out = String::from(CENSUS_HEADER);
    out.push('\n');
    for (sig, n) in rows {
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\n",
            sig.verb_type,
            sig.voice,
            sig.args_line(),
            n
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_has_all_rows() {
        let r = TemplateRegistry::builtin();
        assert_eq!(r.len(), 32);
        let sig = SyntacticSignature::parse("V2 Act NP_nsubj NP_dobj").unwrap();
        assert_eq!(r.template_id(&sig), Some(1));
        assert_eq!(sig.to_string(), "V2 Act NP_dobj NP_nsubj");
        assert!(r
            .template_id(&SyntacticSignature::parse("V3 Act NP_dobj NP_iobj NP_nsubj").unwrap())
            .is_none());
    }
}
