//! Sentence patterns: uniform, word-order preserving descriptions of how the
//! FEs of one example are realized.

mod mapping;
mod morph;
mod types;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::corpus::{validate_with, AnnotatedSentence, Diagnostic, SourceScheme, Span};

pub use mapping::{generalize_cat, Generalized, MappingError, MappingTable, Mappings};
pub use morph::lu_morph;
pub use types::{
    FERealization, GrammRel, Level, LuMorph, LuRef, MorphComponent, ParseTagError, PhraseCat,
    SentencePattern, Settings, SubSeries, VerbType, Voice,
};

pub(crate) use types::fes_line;

const PARTICIPLE_TAGS: &[&str] = &["VVN", "VBN", "VDN", "VHN"];
const BE_FORMS: &[&str] = &[
    "be", "is", "are", "was", "were", "been", "being", "am", "'s", "'re", "'m",
];
/// Dependency relations of adverbial function.
const ADVERBIAL_RELS: &[&str] = &["RA", "TA", "OA", "AA", "MA", "CA", "VA", "KA", "+A", "EF"];

/// Active/passive decision for the target verb.
///
/// Phrase structure: a past-participle target preceded by a form of *be*
/// within four tokens, without crossing punctuation. Dependency: the msd
/// voice feature, else a subject together with a participle.
pub fn infer_voice(s: &AnnotatedSentence) -> Voice {
    let tag = s
        .target_tokens
        .first()
        .and_then(|t| t.tag.as_deref())
        .unwrap_or_default();
    match s.scheme {
        SourceScheme::PhraseStructure => {
            if !PARTICIPLE_TAGS.contains(&tag.to_ascii_uppercase().as_str()) {
                return Voice::Act;
            }
            let start = s.target_start().unwrap_or(0);
            let before: String = s.text.chars().take(start).collect();
            for word in before.split_whitespace().rev().take(4) {
                let lower = word.to_lowercase();
                if BE_FORMS.contains(&lower.as_str()) {
                    return Voice::Pass;
                }
                if word.chars().all(|c| c.is_ascii_punctuation()) || word.ends_with([',', ';', ':'])
                {
                    break;
                }
            }
            Voice::Act
        }
        SourceScheme::Dependency => {
            let feats: Vec<&str> = tag.split('.').collect();
            if feats.contains(&"SFO") {
                Voice::Pass
            } else if feats.contains(&"AKT") {
                Voice::Act
            } else if feats.first() == Some(&"PC")
                && s.fe_spans.iter().any(|f| f.raw_gf.as_deref() == Some("SS"))
            {
                Voice::Pass
            } else {
                Voice::Act
            }
        }
    }
}

/// Voice and the relation of every FE of `s` (in `fe_spans` order), using
/// the bundled tables. Null-instantiated and non-NP FEs get `None`.
pub fn infer_voice_and_relations(
    s: &AnnotatedSentence,
) -> Result<(Voice, Vec<Option<GrammRel>>), Diagnostic> {
    let voice = infer_voice(s);
    let mut work: Vec<WorkFe> = (0..s.fe_spans.len())
        .filter_map(|i| WorkFe::from_span(s, i, Mappings::bundled()))
        .collect();
    work.sort_by_key(|w| w.span.start);
    assign_relations(s.scheme, voice, &mut work)?;
    let mut rels = vec![None; s.fe_spans.len()];
    for w in &work {
        rels[w.source] = w.rel;
    }
    Ok((voice, rels))
}

/// Verb type from the complements of a pattern.
///
/// In the active voice objects raise arity (an indirect object implies a
/// second one) and a single VP, S or QS complement picks the clausal type.
/// In the passive the agent (`dobj`) is not a complement and the promoted
/// subject counts as the object.
pub fn infer_verb_type(fes: &[FERealization], voice: Voice) -> Result<VerbType, Diagnostic> {
    let count = |r: GrammRel| fes.iter().filter(|f| f.rel == Some(r)).count();
    let mut clausal: Vec<PhraseCat> = fes
        .iter()
        .map(|f| f.cat)
        .filter(|c| matches!(c, PhraseCat::VP | PhraseCat::S | PhraseCat::QS))
        .collect();
    clausal.sort();
    let iobj = count(GrammRel::Iobj);
    let objects = match voice {
        Voice::Act => {
            let n = count(GrammRel::Dobj) + iobj;
            if iobj > 0 {
                n.max(2)
            } else {
                n
            }
        }
        Voice::Pass => (count(GrammRel::Nsubjpass) + iobj).max(1),
    };
    use PhraseCat::*;
    use VerbType::*;
    let vt = match (voice, objects, clausal.as_slice()) {
        (Voice::Act, 0, []) => Some(V),
        (Voice::Act, 1, []) => Some(V2),
        (Voice::Act, 2, []) => Some(V3),
        (Voice::Act, 0, [VP]) => Some(VV),
        (Voice::Act, 0, [S]) => Some(VS),
        (Voice::Act, 0, [QS]) => Some(VQ),
        (Voice::Act, 1, [VP]) => Some(V2V),
        (Voice::Act, 1, [S]) => Some(V2S),
        (Voice::Act, 1, [QS]) => Some(V2Q),
        (Voice::Pass, 1, [S]) => Some(VS),
        (Voice::Pass, 1, [QS]) => Some(VQ),
        (Voice::Pass, 1, [VP]) => Some(V2V),
        (Voice::Pass, 1, []) => Some(V2),
        (Voice::Pass, 2, []) => Some(V3),
        _ => None,
    };
    vt.ok_or_else(|| Diagnostic::VerbTypeOutsideTable {
        complements: format!(
            "{voice} objects={objects} clausal=[{}]",
            clausal
                .iter()
                .map(|c| c.as_str())
                .collect::<Vec<_>>()
                .join(",")
        ),
    })
}

/// FE under construction.
#[derive(Clone, Debug)]
struct WorkFe {
    source: usize,
    name: String,
    span: Span,
    cat: PhraseCat,
    marker: Option<String>,
    rel: Option<GrammRel>,
    raw: String,
    gf: Option<String>,
    is_core: bool,
    supported: bool,
}

impl WorkFe {
    fn from_span(s: &AnnotatedSentence, i: usize, mappings: &Mappings) -> Option<WorkFe> {
        let fe = &s.fe_spans[i];
        let span = fe.span?;
        let raw = fe.raw_phrase_type.clone().unwrap_or_default();
        let (cat, marker, supported) =
            match mappings.generalize(&raw, s.scheme, fe.head_form.as_deref()) {
                Generalized::Cat { cat, marker } => (cat, marker, true),
                Generalized::Unsupported { .. } => (PhraseCat::Adv, None, false),
            };
        Some(WorkFe {
            source: i,
            name: fe.fe_name.clone(),
            span,
            cat,
            marker,
            rel: None,
            raw,
            gf: fe.raw_gf.clone(),
            is_core: fe.is_core,
            supported,
        })
    }
}

/// Fills `rel` (and repairs agent and adverbial NPs). `fes` is in surface order.
fn assign_relations(
    scheme: SourceScheme,
    voice: Voice,
    fes: &mut [WorkFe],
) -> Result<(), Diagnostic> {
    let subject_rel = match voice {
        Voice::Act => GrammRel::Nsubj,
        Voice::Pass => GrammRel::Nsubjpass,
    };
    let mut objects = Vec::new();
    for (i, fe) in fes.iter_mut().enumerate() {
        let gf = fe.gf.clone().unwrap_or_default();
        match scheme {
            SourceScheme::PhraseStructure => {
                if voice == Voice::Pass
                    && fe.cat == PhraseCat::Adv
                    && fe.marker.as_deref() == Some("by")
                    && gf == "Dep"
                {
                    // The demoted agent.
                    fe.cat = PhraseCat::NP;
                    fe.marker = None;
                    fe.rel = Some(GrammRel::Dobj);
                    continue;
                }
                match (fe.cat, gf.as_str()) {
                    (PhraseCat::NP, "Ext") => fe.rel = Some(subject_rel),
                    (PhraseCat::NP, "Obj" | "Dep") => objects.push(i),
                    (PhraseCat::NP, _) => {
                        return Err(Diagnostic::UnmappedRelation {
                            fe: fe.name.clone(),
                            label: gf,
                        })
                    }
                    (PhraseCat::VP | PhraseCat::S | PhraseCat::QS, "Ext") => {
                        return Err(Diagnostic::ClausalSubject {
                            fe: fe.name.clone(),
                        })
                    }
                    _ => {}
                }
            }
            SourceScheme::Dependency => {
                if gf == "AG" && voice == Voice::Pass {
                    fe.cat = PhraseCat::NP;
                    fe.marker = None;
                    fe.rel = Some(GrammRel::Dobj);
                    continue;
                }
                match (fe.cat, gf.as_str()) {
                    (PhraseCat::NP, "SS") => fe.rel = Some(subject_rel),
                    (PhraseCat::NP, "OO") => fe.rel = Some(GrammRel::Dobj),
                    (PhraseCat::NP, "IO") => fe.rel = Some(GrammRel::Iobj),
                    (PhraseCat::NP, r) if ADVERBIAL_RELS.contains(&r) => fe.cat = PhraseCat::Adv,
                    (PhraseCat::NP, _) => {
                        return Err(Diagnostic::UnmappedRelation {
                            fe: fe.name.clone(),
                            label: gf,
                        })
                    }
                    (PhraseCat::VP | PhraseCat::S | PhraseCat::QS, "SS") => {
                        return Err(Diagnostic::ClausalSubject {
                            fe: fe.name.clone(),
                        })
                    }
                    _ => {}
                }
            }
        }
    }
    // Two objects: the first is the indirect one.
    match objects.as_slice() {
        [] => {}
        [only] => fes[*only].rel = Some(GrammRel::Dobj),
        [first, rest @ ..] => {
            fes[*first].rel = Some(GrammRel::Iobj);
            for i in rest {
                fes[*i].rel = Some(GrammRel::Dobj);
            }
        }
    }
    let subjects = fes
        .iter()
        .filter(|f| f.rel.is_some_and(GrammRel::is_subject))
        .count();
    if subjects > 1 {
        return Err(Diagnostic::MultipleSubjects);
    }
    Ok(())
}

/// Extracts one pattern with the bundled tables.
pub fn extract_sentence_pattern(
    s: &AnnotatedSentence,
    settings: Settings,
) -> Result<SentencePattern, Diagnostic> {
    extract_with(s, settings, Mappings::bundled())
}

/// Turns one example into a sentence pattern with count 1, or the first
/// reason it is skipped under `settings`.
pub fn extract_with(
    s: &AnnotatedSentence,
    settings: Settings,
    mappings: &Mappings,
) -> Result<SentencePattern, Diagnostic> {
    if let Some(d) = validate_with(s, mappings)
        .into_iter()
        .find(|d| !matches!(d, Diagnostic::RepeatedFEDifferentTypes { .. }) && d.blocks(settings))
    {
        return Err(d);
    }
    if s.lu_pos != "VERB" {
        return Err(Diagnostic::NonVerbTarget {
            pos: s.lu_pos.clone(),
        });
    }

    // Null-instantiated FEs carry no grammatical annotation and are dropped here.
    let mut fes: Vec<WorkFe> = (0..s.fe_spans.len())
        .filter_map(|i| WorkFe::from_span(s, i, mappings))
        .collect();
    fes.sort_by_key(|w| (w.span.start, w.span.end));
    if settings.skips_unsupported() {
        if let Some(fe) = fes.iter().find(|f| !f.supported) {
            return Err(Diagnostic::UnsupportedRealization {
                fe: fe.name.clone(),
                label: fe.raw.clone(),
            });
        }
    }
    if settings.sub == SubSeries::B {
        fes.retain(|f| f.is_core);
    }
    if settings.sub != SubSeries::None {
        let mut kept: Vec<WorkFe> = Vec::new();
        for fe in fes {
            match kept.iter().find(|k| k.name == fe.name) {
                Some(first) if first.cat != fe.cat => {
                    return Err(Diagnostic::RepeatedFEDifferentTypes { fe: fe.name });
                }
                Some(_) => {}
                None => kept.push(fe),
            }
        }
        fes = kept;
    }

    let voice = infer_voice(s);
    assign_relations(s.scheme, voice, &mut fes)?;

    let realizations: Vec<FERealization> = fes
        .into_iter()
        .map(|w| FERealization {
            fe_name: w.name,
            cat: w.cat,
            rel: if w.cat == PhraseCat::NP { w.rel } else { None },
            marker: if w.cat == PhraseCat::Adv {
                w.marker
            } else {
                None
            },
            is_core: w.is_core,
            raw_type: if settings.generalizes() {
                None
            } else {
                Some(w.raw)
            },
        })
        .collect();
    let verb_type = infer_verb_type(&realizations, voice)?;
    Ok(SentencePattern {
        frame: s.frame.clone(),
        verb_type,
        voice,
        fes: realizations,
        lu: LuRef {
            lemma: s.lu_lemma.replace('_', " "),
            morph: lu_morph(s),
        },
        count: 1,
    })
}

/// Aggregated extraction output of one corpus.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtractionReport {
    /// Distinct patterns with counts, sorted.
    pub patterns: Vec<SentencePattern>,
    /// Number of examples that produced a pattern.
    pub examples: u64,
    /// Skipped examples per diagnostic kind.
    pub skipped: BTreeMap<String, u64>,
}

/// Extracts and aggregates structurally identical patterns.
pub fn extract_corpus(
    sentences: &[AnnotatedSentence],
    settings: Settings,
    mappings: &Mappings,
) -> ExtractionReport {
    let mut report = ExtractionReport::default();
    let mut counts: BTreeMap<SentencePattern, u32> = BTreeMap::new();
    for s in sentences {
        match extract_with(s, settings, mappings) {
            Ok(p) => {
                report.examples += 1;
                *counts.entry(p).or_default() += 1;
            }
            Err(d) => {
                log::debug!("{}: skipped: {d}", s.source_id);
                *report.skipped.entry(d.kind().to_string()).or_default() += 1;
            }
        }
    }
    report.patterns = counts
        .into_iter()
        .map(|(mut p, n)| {
            p.count = n;
            p
        })
        .collect();
    report
}

/// Adds up counts of structurally identical patterns.
pub fn aggregate(patterns: impl IntoIterator<Item = SentencePattern>) -> Vec<SentencePattern> {
    let mut counts: BTreeMap<SentencePattern, u32> = BTreeMap::new();
    for mut p in patterns {
        let n = p.count;
        p.count = 0;
        *counts.entry(p).or_default() += n;
    }
    counts
        .into_iter()
        .map(|(mut p, n)| {
            p.count = n;
            p
        })
        .collect()
}
