//! Abstract and concrete grammar modules generated from a shared set.
//!
//! Every shared pattern becomes a frame function `Frame_VT[_Pass][_n]`
//! taking one `Fe_Cat` argument per FE (alphabetical) and the verb last.

mod expr;
mod signature;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::extract::{GrammRel, PhraseCat, VerbType, Voice};
use crate::normalize::{FeTriple, PatternKey, SentenceShape};
use crate::shared::SharedSet;

pub(crate) use expr::is_ident_char;
pub use expr::{Expr, ExprError};
pub use signature::{
    census, census_tsv, syntactic_signature, SlotKind, SyntacticSignature, TemplateRegistry,
    CENSUS_HEADER,
};

pub const ABSTRACT_NAME: &str = "FrameNet";

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GrammarError {
    #[error("function name `{0}` generated twice")]
    NameCollision(String),
    #[error("no template for {} signature(s): {}", .0.len(), .0.iter().map(|(f, s)| format!("{f} ({s})")).collect::<Vec<_>>().join(", "))]
    UnknownSignatures(Vec<(String, String)>),
}

/// Replaces characters that cannot appear in an identifier.
pub fn identifier(s: &str) -> String {
    s.chars()
        .map(|c| if is_ident_char(c) && c != '.' { c } else { '_' })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrameFunction {
    pub name: String,
    pub frame: String,
    /// Sorted by category name.
    pub args: Vec<FeTriple>,
    pub verb_type: VerbType,
    pub voice: Voice,
    pub count: u64,
    pub key: PatternKey,
}

impl FrameFunction {
    pub fn arg_categories(&self) -> Vec<String> {
        self.args
            .iter()
            .map(|a| identifier(&a.category_name()))
            .collect()
    }

    /// `Desiring_V : Experiencer_NP -> Focal_participant_Adv -> V -> Clause`
    pub fn type_signature(&self) -> String {
        let mut parts = self.arg_categories();
        parts.push(self.verb_type.to_string());
        parts.push("Clause".into());
        format!("{} : {}", self.name, parts.join(" -> "))
    }

    /// Parameter names in argument order, verb last.
    pub fn params(&self) -> Vec<String> {
        let mut seen: BTreeMap<String, usize> = BTreeMap::new();
        let mut out: Vec<String> = self
            .args
            .iter()
            .map(|a| {
                let base = identifier(&a.category_name()).to_lowercase();
                let n = seen.entry(base.clone()).or_default();
                *n += 1;
                if *n == 1 {
                    base
                } else {
                    format!("{base}_{n}")
                }
            })
            .collect();
        out.push(self.verb_type.to_string().to_lowercase());
        out
    }
}

fn base_name(key: &PatternKey) -> String {
    let mut name = format!("{}_{}", identifier(&key.frame), key.verb_type);
    if key.voice == Voice::Pass {
        name.push_str("_Pass");
    }
    name
}

/// Name for `key` among `siblings` (all patterns sharing its frame; `key`
/// included). Ties on frame, verb type and voice are numbered by descending
/// count, then FE serialization; the first keeps the bare name.
pub fn function_name(key: &PatternKey, count: u64, siblings: &[(PatternKey, u64)]) -> String {
    let base = base_name(key);
    let mut group: Vec<(&PatternKey, u64)> = siblings
        .iter()
        .filter(|(k, _)| {
            k.frame == key.frame && k.verb_type == key.verb_type && k.voice == key.voice
        })
        .map(|(k, c)| (k, *c))
        .collect();
    if !group.iter().any(|(k, _)| *k == key) {
        group.push((key, count));
    }
    group.sort_by(|a, b| {
        b.1.cmp(&a.1)
            .then_with(|| a.0.fes_line().cmp(&b.0.fes_line()))
            .then_with(|| a.0.cmp(b.0))
    });
    let idx = group.iter().position(|(k, _)| *k == key).unwrap_or(0);
    if idx == 0 {
        base
    } else {
        format!("{base}_{}", idx + 1)
    }
}

/// Frame functions for a shared set, sorted by name.
pub fn frame_functions(shared: &SharedSet) -> Result<Vec<FrameFunction>, GrammarError> {
    let mut by_frame: BTreeMap<&str, Vec<(PatternKey, u64)>> = BTreeMap::new();
    for p in &shared.patterns {
        by_frame
            .entry(p.key.frame.as_str())
            .or_default()
            .push((p.key.clone(), p.count));
    }
    let mut names = BTreeSet::new();
    let mut out = Vec::with_capacity(shared.patterns.len());
    for p in &shared.patterns {
        let siblings = &by_frame[p.key.frame.as_str()];
        let name = function_name(&p.key, p.count, siblings);
        if !names.insert(name.clone()) {
            return Err(GrammarError::NameCollision(name));
        }
        let mut args: Vec<FeTriple> = p.key.fes.iter().cloned().collect();
        args.sort_by(|a, b| {
            a.category_name()
                .cmp(&b.category_name())
                .then_with(|| a.cmp(b))
        });
        out.push(FrameFunction {
            name,
            frame: p.key.frame.clone(),
            args,
            verb_type: p.key.verb_type,
            voice: p.key.voice,
            count: p.count,
            key: p.key.clone(),
        });
    }
    out.sort_by(|a, b| a.name.cmp(&b.name));
    Ok(out)
}

/// Distinct `Fe_Cat` categories used by the functions.
pub fn categories(functions: &[FrameFunction]) -> BTreeMap<String, PhraseCat> {
    functions
        .iter()
        .flat_map(|f| {
            f.args
                .iter()
                .map(|a| (identifier(&a.category_name()), a.cat))
        })
        .collect()
}

pub const CATEGORY_STATS_HEADER: &str = "cat\tcategories";

/// Category counts per phrase type, plus a `total` row.
pub fn category_stats_tsv(functions: &[FrameFunction]) -> String {
    let cats = categories(functions);
    let mut out = format!("{CATEGORY_STATS_HEADER}\n");
    for pc in PhraseCat::ALL {
        let n = cats.values().filter(|c| **c == *pc).count();
        let _ = writeln!(out, "{pc}\t{n}");
    }
    let _ = writeln!(out, "total\t{}", cats.len());
    out
}

/// Abstract module text. `note` goes into the header comment.
pub fn gen_abstract(functions: &[FrameFunction], note: &str) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "-- {note}");
    let _ = writeln!(out, "abstract {ABSTRACT_NAME} = Cat ** {{");
    let _ = writeln!(out);
    let _ = writeln!(out, "  cat Clause ;");
    let cats = categories(functions);
    if !cats.is_empty() {
        let _ = writeln!(out);
        for c in cats.keys() {
            let _ = writeln!(out, "  cat {c} ;");
        }
    }
    if !functions.is_empty() {
        let _ = writeln!(out);
        for f in functions {
            let _ = writeln!(out, "  fun {} ;", f.type_signature());
        }
    }
    out.push_str("}\n");
    out
}

/// `eng` → `Eng`
pub fn language_suffix(lang: &str) -> String {
    let mut cs = lang.chars();
    match cs.next() {
        Some(c) => c
            .to_uppercase()
            .chain(cs.flat_map(char::to_lowercase))
            .collect(),
        None => String::new(),
    }
}

/// A generated linearization rule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConcreteRule {
    pub function: String,
    pub template_id: usize,
    pub params: Vec<String>,
    pub np: Expr,
    pub vp: Expr,
}

impl ConcreteRule {
    pub fn to_gf(&self) -> String {
        format!(
            "lin {} {} = {{ np = {} ; vp = {} }} ;",
            self.function,
            self.params.join(" "),
            self.np,
            self.vp
        )
    }
}

fn same_slot(t: &FeTriple, r: &crate::extract::FERealization) -> bool {
    t.fe == r.fe_name && t.cat == r.cat && t.rel == r.rel
}

/// Builds the rule for `f` given the witness shape that fixes Adv order.
pub fn concrete_rule(
    f: &FrameFunction,
    witness: &SentenceShape,
    registry: &TemplateRegistry,
) -> Result<ConcreteRule, SyntacticSignature> {
    let sig = syntactic_signature(&f.key);
    let template_id = registry.template_id(&sig).ok_or(sig)?;
    let params = f.params();
    let verb = Expr::ident(params.last().cloned().unwrap_or_default());
    let param_of = |pred: &dyn Fn(&FeTriple) -> bool| -> Option<(usize, &FeTriple)> {
        f.args.iter().enumerate().find(|(_, a)| pred(a))
    };
    let arg = |i: usize, cat: PhraseCat| Expr::from_maybe(cat.as_str(), &params[i]);
    let slot = |cat: PhraseCat, rel: Option<GrammRel>| -> Expr {
        match param_of(&|a: &FeTriple| a.cat == cat && a.rel == rel) {
            Some((i, _)) => arg(i, cat),
            None => Expr::ident(cat.empty_constant()),
        }
    };
    let passive = f.voice == Voice::Pass;
    let subject_rel = if passive {
        GrammRel::Nsubjpass
    } else {
        GrammRel::Nsubj
    };
    let np = slot(PhraseCat::NP, Some(subject_rel));

    // Adverbial chain in witness order; the passive agent rides along.
    let is_chain =
        |a: &FeTriple| a.cat == PhraseCat::Adv || (passive && a.rel == Some(GrammRel::Dobj));
    let mut chain: Vec<usize> = Vec::new();
    for r in &witness.fes {
        if let Some(i) = f.args.iter().position(|a| same_slot(a, r)) {
            if is_chain(&f.args[i]) && !chain.contains(&i) {
                chain.push(i);
            }
        }
    }
    for (i, a) in f.args.iter().enumerate() {
        if is_chain(a) && !chain.contains(&i) {
            chain.push(i);
        }
    }

    let dobj = || slot(PhraseCat::NP, Some(GrammRel::Dobj));
    let iobj = || slot(PhraseCat::NP, Some(GrammRel::Iobj));
    let clausal = |c: PhraseCat| slot(c, None);
    let mk = |args: Vec<Expr>| Expr::app("mkVP", args);
    let mut vp = match (f.voice, f.verb_type) {
        (Voice::Act, VerbType::V) => mk(vec![verb]),
        (Voice::Act, VerbType::V2) => mk(vec![verb, dobj()]),
        (Voice::Act, VerbType::V3) => mk(vec![verb, dobj(), iobj()]),
        (Voice::Act, VerbType::VV) => mk(vec![verb, clausal(PhraseCat::VP)]),
        (Voice::Act, VerbType::VS) => mk(vec![verb, clausal(PhraseCat::S)]),
        (Voice::Act, VerbType::VQ) => mk(vec![verb, clausal(PhraseCat::QS)]),
        (Voice::Act, VerbType::V2V) => mk(vec![verb, dobj(), clausal(PhraseCat::VP)]),
        (Voice::Act, VerbType::V2S) => mk(vec![verb, dobj(), clausal(PhraseCat::S)]),
        (Voice::Act, VerbType::V2Q) => mk(vec![verb, dobj(), clausal(PhraseCat::QS)]),
        (Voice::Pass, VerbType::VS) => mk(vec![
            Expr::app("passiveVP", vec![Expr::app("mkV2", vec![verb])]),
            Expr::app(
                "mkAdv",
                vec![Expr::ident("that_Subj"), clausal(PhraseCat::S)],
            ),
        ]),
        // Only V2 passives remain in the registry.
        (Voice::Pass, _) => Expr::app("passiveVP", vec![verb]),
    };
    for i in chain {
        let a = &f.args[i];
        let adv = if a.cat == PhraseCat::Adv {
            arg(i, PhraseCat::Adv)
        } else {
            Expr::app(
                "mkAdv",
                vec![Expr::ident("by8agent_Prep"), arg(i, PhraseCat::NP)],
            )
        };
        vp = mk(vec![vp, adv]);
    }
    Ok(ConcreteRule {
        function: f.name.clone(),
        template_id,
        params,
        np,
        vp,
    })
}

/// A concrete module plus the functions it could not linearize.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConcreteModule {
    pub text: String,
    pub rules: Vec<ConcreteRule>,
    pub ungenerable: Vec<(String, String)>,
}

fn empty_opers(suffix: &str) -> Vec<String> {
    vec![
        format!("emptyNP : NP = mkNP (mkPN \"\")"),
        format!("emptyAdv : Adv = Paradigms{suffix}.mkAdv \"\""),
        format!("emptyVP : VP = mkVP (mkV \"\")"),
        format!("emptyS : S = mkS (mkCl emptyNP emptyVP)"),
        format!("emptyQS : QS = mkQS (mkQCl (mkCl emptyNP emptyVP))"),
    ]
}

/// Concrete module for `lang`. Functions without a witness in `lang` are
/// reported, not fatal; a signature without a template is fatal.
pub fn gen_concrete(
    shared: &SharedSet,
    functions: &[FrameFunction],
    lang: &str,
    registry: &TemplateRegistry,
    note: &str,
) -> Result<ConcreteModule, GrammarError> {
    let suffix = language_suffix(lang);
    let witnesses: BTreeMap<&PatternKey, &SentenceShape> = shared
        .patterns
        .iter()
        .filter_map(|p| p.witness(lang).map(|w| (&p.key, &w.top)))
        .collect();
    let mut rules = Vec::new();
    let mut ungenerable = Vec::new();
    let mut unknown = Vec::new();
    for f in functions {
        let Some(w) = witnesses.get(&f.key) else {
            ungenerable.push((f.name.clone(), format!("no {lang} witness")));
            continue;
        };
        match concrete_rule(f, w, registry) {
            Ok(r) => rules.push(r),
            Err(sig) => unknown.push((f.name.clone(), sig.to_string())),
        }
    }
    if !unknown.is_empty() {
        return Err(GrammarError::UnknownSignatures(unknown));
    }

    let mut out = String::new();
    let _ = writeln!(out, "-- {note}");
    for (name, why) in &ungenerable {
        let _ = writeln!(out, "-- ungenerable: {name} ({why})");
    }
    let _ = writeln!(
        out,
        "concrete {ABSTRACT_NAME}{suffix} of {ABSTRACT_NAME} = Cat{suffix} ** open Syntax{suffix}, Paradigms{suffix}, Maybe in {{"
    );
    let _ = writeln!(out);
    let _ = writeln!(out, "  lincat Clause = {{np : NP ; vp : VP}} ;");
    let cats = categories(functions);
    if !cats.is_empty() {
        let _ = writeln!(out);
        for (c, pc) in &cats {
            let _ = writeln!(out, "  lincat {c} = Maybe {pc} ;");
        }
    }
    let _ = writeln!(out);
    for o in empty_opers(&suffix) {
        let _ = writeln!(out, "  oper {o} ;");
    }
    if !rules.is_empty() {
        let _ = writeln!(out);
        for r in &rules {
            let _ = writeln!(out, "  {}", r.to_gf());
        }
    }
    out.push_str("}\n");
    Ok(ConcreteModule {
        text: out,
        rules,
        ungenerable,
    })
}
