//! Cross-language alignment of lexicon entries through a bilingual lemma
//! dictionary, and the shared lexicon modules built from it.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Write};

use serde::{Deserialize, Serialize};

use crate::extract::VerbType;
use crate::grammar::language_suffix;
use crate::lexicon::{lexicon_module_name, LexEntry, MweClass};

/// Lemma pairs, l1 → l2, with optional verb-type hints kept for reference.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BilingualDict {
    pairs: BTreeMap<String, BTreeSet<String>>,
    pub hints: BTreeMap<(String, String), VerbType>,
    pub warnings: Vec<String>,
}

impl BilingualDict {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, l1: &str, l2: &str) {
        self.pairs
            .entry(l1.to_string())
            .or_default()
            .insert(l2.to_string());
    }

    /// `l1<TAB>l2[<TAB>VT]` lines; `#` comments; bad lines skipped with a warning.
    pub fn parse(text: &str) -> Self {
        let mut d = Self::new();
        for (n, line) in text.lines().enumerate() {
            let t = line.trim();
            if t.is_empty() || t.starts_with('#') {
                continue;
            }
            let cols: Vec<&str> = line.split('\t').map(str::trim).collect();
            match cols.as_slice() {
                [a, b, rest @ ..] if !a.is_empty() && !b.is_empty() => {
                    let a = a.replace('_', " ");
                    let b = b.replace('_', " ");
                    d.insert(&a, &b);
                    if let Some(h) = rest.first().filter(|h| !h.is_empty()) {
                        match h.parse() {
                            Ok(vt) => {
                                d.hints.insert((a, b), vt);
                            }
                            Err(_) => d
                                .warnings
                                .push(format!("line {}: unknown verb type `{h}`", n + 1)),
                        }
                    }
                }
                _ => d
                    .warnings
                    .push(format!("line {}: expected two lemmas", n + 1)),
            }
        }
        for w in &d.warnings {
            log::warn!("dictionary {w}");
        }
        d
    }

    pub fn translations(&self, l1: &str) -> Option<&BTreeSet<String>> {
        self.pairs.get(l1)
    }

    pub fn len(&self) -> usize {
        self.pairs.values().map(BTreeSet::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum VariantOrder {
    /// Simple verbs first, then alphabetical.
    #[default]
    SimpleFirst,
    /// By example count, then as `SimpleFirst`.
    Frequency,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlignedEntry {
    pub interlingua_id: String,
    pub l1_entry: String,
    pub verb_type: VerbType,
    pub frame: String,
    /// l2 entry ids, in variant order.
    pub l2_variants: Vec<String>,
    pub fallback_used: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum UnalignedReason {
    NoDictEntry,
    NoFrameTypeMatch,
    TargetUnlinearized,
}

impl fmt::Display for UnalignedReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            UnalignedReason::NoDictEntry => "NoDictEntry",
            UnalignedReason::NoFrameTypeMatch => "NoFrameTypeMatch",
            UnalignedReason::TargetUnlinearized => "TargetUnlinearized",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Unaligned {
    pub id: String,
    pub reason: UnalignedReason,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Alignment {
    pub aligned: Vec<AlignedEntry>,
    pub unaligned: Vec<Unaligned>,
}

impl Alignment {
    /// Distinct l2 entries used as variants.
    pub fn l2_entries(&self) -> BTreeSet<&str> {
        self.aligned
            .iter()
            .flat_map(|a| a.l2_variants.iter().map(String::as_str))
            .collect()
    }
}

fn variant_order(order: VariantOrder, a: &LexEntry, b: &LexEntry) -> std::cmp::Ordering {
    let simple_first = |a: &LexEntry, b: &LexEntry| {
        (a.mwe_class != MweClass::Simple)
            .cmp(&(b.mwe_class != MweClass::Simple))
            .then_with(|| a.id.cmp(&b.id))
    };
    match order {
        VariantOrder::SimpleFirst => simple_first(a, b),
        VariantOrder::Frequency => b.count.cmp(&a.count).then_with(|| simple_first(a, b)),
    }
}

/// Aligns every l1 entry with same-frame, same-type l2 entries whose base
/// form or main verb translates the l1 base form. MWEs without a match retry
/// with their main verb. Unlinearized l2 entries never become variants.
pub fn align(
    l1: &[LexEntry],
    l2: &[LexEntry],
    dict: &BilingualDict,
    order: VariantOrder,
) -> Alignment {
    let mut by_slot: BTreeMap<(&str, VerbType), Vec<&LexEntry>> = BTreeMap::new();
    for e in l2 {
        by_slot
            .entry((e.frame.as_str(), e.verb_type))
            .or_default()
            .push(e);
    }
    let mut out = Alignment::default();
    for e in l1 {
        let slot = by_slot
            .get(&(e.frame.as_str(), e.verb_type))
            .map(Vec::as_slice)
            .unwrap_or(&[]);
        let matches = |lemma: &str| -> Option<Vec<&LexEntry>> {
            let tr = dict.translations(lemma)?;
            Some(
                slot.iter()
                    .copied()
                    .filter(|c| tr.contains(&c.base_form) || tr.contains(c.lu_morph.main_verb()))
                    .collect(),
            )
        };
        let whole = matches(&e.base_form);
        let mut fallback_used = false;
        let mut candidates = whole.clone().unwrap_or_default();
        let mut had_dict = whole.is_some();
        if candidates.is_empty() && e.lu_morph.is_multiword() {
            if let Some(m) = matches(e.lu_morph.main_verb()) {
                had_dict = true;
                if !m.is_empty() {
                    fallback_used = true;
                    candidates = m;
                }
            }
        }
        let reason = if !had_dict {
            Some(UnalignedReason::NoDictEntry)
        } else if candidates.is_empty() {
            Some(UnalignedReason::NoFrameTypeMatch)
        } else {
            candidates.retain(|c| c.is_linearized());
            candidates
                .is_empty()
                .then_some(UnalignedReason::TargetUnlinearized)
        };
        if let Some(reason) = reason {
            out.unaligned.push(Unaligned {
                id: e.id.clone(),
                reason,
            });
            continue;
        }
        candidates.sort_by(|a, b| variant_order(order, a, b));
        candidates.dedup_by(|a, b| a.id == b.id);
        if fallback_used {
            log::debug!("{} aligned through its main verb", e.id);
        }
        out.aligned.push(AlignedEntry {
            interlingua_id: e.id.clone(),
            l1_entry: e.id.clone(),
            verb_type: e.verb_type,
            frame: e.frame.clone(),
            l2_variants: candidates.iter().map(|c| c.id.clone()).collect(),
            fallback_used,
        });
    }
    out
}

pub const UNALIGNED_HEADER: &str = "id\treason";

pub fn unaligned_tsv(a: &Alignment) -> String {
    let mut out = format!("{UNALIGNED_HEADER}\n");
    for u in &a.unaligned {
        let _ = writeln!(out, "{}\t{}", u.id, u.reason);
    }
    out
}

pub const SHARED_LEXICON_NAME: &str = "FrameNetLexicon";

/// Shared lexicon: one abstract module and one concrete per language.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SharedLexiconModules {
    pub abstract_text: String,
    pub l1_text: String,
    pub l2_text: String,
}

fn concrete(lang: &str, note: &str, rules: impl Iterator<Item = (String, String)>) -> String {
    let suffix = language_suffix(lang);
    let mut out = format!(
        "-- {note}\nconcrete {SHARED_LEXICON_NAME}{suffix} of {SHARED_LEXICON_NAME} = Cat{suffix} ** open {} in {{\n",
        lexicon_module_name(lang)
    );
    let mut first = true;
    for (id, rhs) in rules {
        if first {
            out.push('\n');
            first = false;
        }
        let _ = writeln!(out, "  lin {id} = {rhs} ;");
    }
    out.push_str("}\n");
    out
}

pub fn gen_shared_lexicon(a: &Alignment, l1: &str, l2: &str, note: &str) -> SharedLexiconModules {
    let mut abs = format!("-- {note}\nabstract {SHARED_LEXICON_NAME} = Cat ** {{\n");
    if !a.aligned.is_empty() {
        abs.push('\n');
    }
    for e in &a.aligned {
        let _ = writeln!(abs, "  fun {} : {} ;", e.interlingua_id, e.verb_type);
    }
    abs.push_str("}\n");
    let l1_text = concrete(
        l1,
        note,
        a.aligned
            .iter()
            .map(|e| (e.interlingua_id.clone(), e.l1_entry.clone())),
    );
    let l2_text = concrete(
        l2,
        note,
        a.aligned.iter().map(|e| {
            let rhs = if e.l2_variants.len() == 1 {
                e.l2_variants[0].clone()
            } else {
                format!("variants {{{}}}", e.l2_variants.join(" | "))
            };
            (e.interlingua_id.clone(), rhs)
        }),
    );
    SharedLexiconModules {
        abstract_text: abs,
        l1_text,
        l2_text,
    }
}
