//! Per-language verb lexicons: one entry per (base form, verb type, frame)
//! of the LUs covered by shared patterns, linearized through paradigm
//! lookup plus particle/reflexive wrappers.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Write};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::extract::{LuMorph, SentencePattern, VerbType};
use crate::grammar::{identifier, language_suffix, Expr};
use crate::shared::{coverage_projection, SharedSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum MweClass {
    Simple,
    Particle,
    Reflexive,
    ParticleParticle,
    ParticleReflexive,
    ReflexiveParticle,
    Unsupported,
}

impl MweClass {
    pub fn as_str(self) -> &'static str {
        match self {
            MweClass::Simple => "Simple",
            MweClass::Particle => "Particle",
            MweClass::Reflexive => "Reflexive",
            MweClass::ParticleParticle => "ParticleParticle",
            MweClass::ParticleReflexive => "ParticleReflexive",
            MweClass::ReflexiveParticle => "ReflexiveParticle",
            MweClass::Unsupported => "Unsupported",
        }
    }
}

impl fmt::Display for MweClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Supported constituent patterns. Anything else is unsupported.
const MWE_PATTERNS: &[(&str, MweClass)] = &[
    ("VERB.Fin", MweClass::Simple),
    ("VERB.Fin ADP", MweClass::Particle),
    ("VERB.Fin ADP ADP", MweClass::ParticleParticle),
    ("VERB.Fin ADP PRON.Reflex", MweClass::ParticleReflexive),
    ("VERB.Fin PRON.Reflex", MweClass::Reflexive),
    ("VERB.Fin PRON.Reflex ADP", MweClass::ReflexiveParticle),
];

pub fn classify_mwe(m: &LuMorph) -> MweClass {
    let pattern = m.pattern();
    MWE_PATTERNS
        .iter()
        .find(|(p, _)| *p == pattern)
        .map(|(_, c)| *c)
        .unwrap_or(MweClass::Unsupported)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LexEntry {
    pub id: String,
    pub base_form: String,
    pub verb_type: VerbType,
    pub frame: String,
    pub lu_morph: LuMorph,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub linearization: Option<String>,
    pub mwe_class: MweClass,
    /// Examples backing the entry.
    pub count: u64,
}

impl LexEntry {
    pub fn is_linearized(&self) -> bool {
        self.linearization.is_some()
    }
}

/// `feel like`, `VV`, `Desiring` → `feel_like_VV_Desiring`
pub fn entry_id(base_form: &str, vt: VerbType, frame: &str) -> String {
    let base = base_form.split_whitespace().collect::<Vec<_>>().join("_");
    format!("{}_{}_{}", identifier(&base), vt, identifier(frame))
}

/// Distinct entries of sentence patterns covered by the shared set, sorted
/// by id. Entries are unlinearized until [`linearize`] runs.
pub fn collect_lexicon(shared: &SharedSet, patterns: &[SentencePattern]) -> Vec<LexEntry> {
    let mut out: BTreeMap<String, LexEntry> = BTreeMap::new();
    for p in patterns {
        if !shared.covers(&coverage_projection(p)) {
            continue;
        }
        let morph = &p.lu.morph;
        let id = entry_id(&morph.base_form, p.verb_type, &p.frame);
        out.entry(id.clone())
            .or_insert_with(|| LexEntry {
                id,
                base_form: morph.base_form.clone(),
                verb_type: p.verb_type,
                frame: p.frame.clone(),
                lu_morph: morph.clone(),
                linearization: None,
                mwe_class: classify_mwe(morph),
                count: 0,
            })
            .count += u64::from(p.count);
    }
    out.into_values().collect()
}

/// A verb constructor with its argument forms, e.g. `irregV "feel" "felt" "felt"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParadigmRef {
    pub constructor: String,
    pub argument_forms: Vec<String>,
    /// 1-based position of the source file; higher wins.
    pub source_priority: usize,
}

impl ParadigmRef {
    pub fn expr(&self) -> Expr {
        Expr::app(
            self.constructor.clone(),
            self.argument_forms.iter().cloned().map(Expr::Str).collect(),
        )
    }
}

impl FromStr for ParadigmRef {
    type Err = String;

    /// Either `constructor<TAB>form...` or a single `constructor "form" ...` expression.
    fn from_str(s: &str) -> Result<Self, String> {
        let cols: Vec<&str> = s
            .split('\t')
            .map(str::trim)
            .filter(|c| !c.is_empty())
            .collect();
        let (constructor, forms) = match cols.as_slice() {
            [] => return Err("empty constructor".into()),
            [single] if single.contains('"') => {
                match Expr::parse(single).map_err(|e| e.to_string())? {
                    Expr::App(head, args) => {
                        let forms: Option<Vec<String>> = args
                            .into_iter()
                            .map(|a| match a {
                                Expr::Str(s) => Some(s),
                                _ => None,
                            })
                            .collect();
                        (head, forms.ok_or("constructor arguments must be strings")?)
                    }
                    _ => return Err("not a constructor application".into()),
                }
            }
            [c, rest @ ..] => (c.to_string(), rest.iter().map(|f| f.to_string()).collect()),
        };
        if forms.is_empty() {
            return Err("no verb forms".into());
        }
        if !constructor
            .chars()
            .all(|c| c.is_alphanumeric() || c == '_' || c == '.')
        {
            return Err(format!("bad constructor name `{constructor}`"));
        }
        Ok(ParadigmRef {
            constructor,
            argument_forms: forms,
            source_priority: 0,
        })
    }
}

/// Lemma → paradigm, merged from several sources.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Paradigms {
    pub map: BTreeMap<String, ParadigmRef>,
    pub warnings: Vec<String>,
}

impl Paradigms {
    pub fn get(&self, lemma: &str) -> Option<&ParadigmRef> {
        self.map.get(lemma)
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }
}

/// Loads `(name, text)` sources given in ascending preference: a later source
/// overrides an earlier one. Within one source the first line for a lemma
/// wins. Lines are `lemma<TAB>constructor...`; `#` starts a comment.
pub fn load_paradigms(sources: &[(&str, &str)]) -> Paradigms {
    let mut out = Paradigms::default();
    for (i, (name, text)) in sources.iter().enumerate() {
        let mut seen = BTreeSet::new();
        for (n, line) in text.lines().enumerate() {
            let line = line.trim_end();
            if line.trim().is_empty() || line.trim_start().starts_with('#') {
                continue;
            }
            let Some((lemma, rest)) = line.split_once('\t') else {
                out.warnings
                    .push(format!("{name}:{}: no tab, skipped", n + 1));
                continue;
            };
            let lemma = lemma.trim().to_string();
            let mut p: ParadigmRef = match rest.parse() {
                Ok(p) => p,
                Err(e) => {
                    out.warnings.push(format!("{name}:{}: {e}, skipped", n + 1));
                    continue;
                }
            };
            if !seen.insert(lemma.clone()) {
                out.warnings.push(format!(
                    "{name}:{}: duplicate lemma `{lemma}`, first kept",
                    n + 1
                ));
                continue;
            }
            p.source_priority = i + 1;
            out.map.insert(lemma, p);
        }
    }
    for w in &out.warnings {
        log::warn!("{w}");
    }
    out
}

/// Verb-type coercion name; plain verbs need none.
fn coercion(vt: VerbType) -> Option<&'static str> {
    match vt {
        VerbType::V => None,
        VerbType::V2 => Some("mkV2"),
        VerbType::V3 => Some("mkV3"),
        VerbType::VV => Some("mkVV"),
        VerbType::VS => Some("mkVS"),
        VerbType::VQ => Some("mkVQ"),
        VerbType::V2V => Some("mkV2V"),
        VerbType::V2S => Some("mkV2S"),
        VerbType::V2Q => Some("mkV2Q"),
    }
}

/// Why an entry has no linearization.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GapReason {
    UnsupportedMwe,
    OutOfVocabulary,
}

impl fmt::Display for GapReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GapReason::UnsupportedMwe => "UnsupportedMwe",
            GapReason::OutOfVocabulary => "OutOfVocabulary",
        })
    }
}

/// Builds the linearization for one entry.
pub fn linearization(entry: &LexEntry, paradigms: &Paradigms) -> Result<Expr, GapReason> {
    let comps = &entry.lu_morph.components;
    let class = classify_mwe(&entry.lu_morph);
    if class == MweClass::Unsupported {
        return Err(GapReason::UnsupportedMwe);
    }
    let verb = paradigms
        .get(entry.lu_morph.main_verb())
        .ok_or(GapReason::OutOfVocabulary)?
        .expr();
    let form = |i: usize| Expr::Str(comps[i].form.clone());
    let part = |v: Expr, p: Expr| Expr::app("partV", vec![v, p]);
    let refl = |v: Expr| Expr::app("reflV", vec![v]);
    let v = match class {
        MweClass::Simple => verb,
        MweClass::Particle => part(verb, form(1)),
        MweClass::ParticleParticle => part(
            verb,
            Expr::Str(format!("{} {}", comps[1].form, comps[2].form)),
        ),
        MweClass::Reflexive => refl(verb),
        MweClass::ParticleReflexive => refl(part(verb, form(1))),
        MweClass::ReflexiveParticle => part(refl(verb), form(2)),
        MweClass::Unsupported => unreachable!(),
    };
    Ok(match coercion(entry.verb_type) {
        Some(c) => Expr::app(c, vec![v]),
        None => v,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gap {
    pub id: String,
    pub reason: GapReason,
    pub pattern: String,
}

/// Fills in linearizations; returns the gaps.
pub fn linearize(entries: &mut [LexEntry], paradigms: &Paradigms) -> Vec<Gap> {
    let mut gaps = Vec::new();
    for e in entries.iter_mut() {
        match linearization(e, paradigms) {
            Ok(x) => e.linearization = Some(x.to_string()),
            Err(reason) => {
                e.linearization = None;
                gaps.push(Gap {
                    id: e.id.clone(),
                    reason,
                    pattern: e.lu_morph.pattern(),
                });
            }
        }
    }
    gaps
}

pub const GAP_HEADER: &str = "id\treason\tpattern";

pub fn gap_report_tsv(gaps: &[Gap]) -> String {
    let mut out = format!("{GAP_HEADER}\n");
    for g in gaps {
        let _ = writeln!(out, "{}\t{}\t{}", g.id, g.reason, g.pattern);
    }
    out
}

/// Linearized vs total entries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LexiconReport {
    pub total: usize,
    pub linearized: usize,
}

/// Abstract and concrete lexicon modules for one language.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LexiconModules {
    pub abstract_text: String,
    pub concrete_text: String,
    pub report: LexiconReport,
}

pub fn lexicon_module_name(lang: &str) -> String {
    format!("Lexicon{}", language_suffix(lang))
}

/// `LexiconEngAbs` (abstract) and `LexiconEng` (concrete). Unlinearized
/// entries are declared and listed as comments in the concrete module.
pub fn gen_lexicon_modules(entries: &[LexEntry], lang: &str, note: &str) -> LexiconModules {
    let name = lexicon_module_name(lang);
    let suffix = language_suffix(lang);
    let mut abs = format!("-- {note}\nabstract {name}Abs = Cat ** {{\n");
    let mut conc = format!(
        "-- {note}\nconcrete {name} of {name}Abs = Cat{suffix} ** open Paradigms{suffix} in {{\n"
    );
    if !entries.is_empty() {
        abs.push('\n');
        conc.push('\n');
    }
    let mut linearized = 0;
    for e in entries {
        let _ = writeln!(abs, "  fun {} : {} ;", e.id, e.verb_type);
        match &e.linearization {
            Some(l) => {
                linearized += 1;
                let _ = writeln!(conc, "  lin {} = {} ;", e.id, l);
            }
            None => {
                let _ = writeln!(
                    conc,
                    "  -- unlinearized: {} ({})",
                    e.id,
                    e.lu_morph.pattern()
                );
            }
        }
    }
    abs.push_str("}\n");
    conc.push_str("}\n");
    LexiconModules {
        abstract_text: abs,
        concrete_text: conc,
        report: LexiconReport {
            total: entries.len(),
            linearized,
        },
    }
}
