//! Acceptance checks, one line per criterion. Criteria 11 to 14 need the
//! licensed corpora: set FN_BFN_DIR and FN_SWEFN_DIR (and optionally
//! FN_ENG_PARADIGMS, FN_SWE_PARADIGMS, FN_DICT) to run them.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::sync::OnceLock;

use common::*;
use framegram::align::Alignment;
use framegram::artifact::{read_artifact, Artifact};
use framegram::extract::{GrammRel, PhraseCat, SentencePattern, Settings, VerbType, Voice};
use framegram::grammar::{self, TemplateRegistry};
use framegram::lexicon::{LexEntry, MweClass};
use framegram::normalize::{summarize, FeTriple, PatternKey, SummaryLimits, ValencePattern};
use framegram::pipeline::{self, ExtractArtifact, PipelineConfig};
use framegram::realize::{Lang, Realizer, Tense, Tree};
use framegram::shared::{self, compute_coverage, shared_set, subsumes, SharedSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

enum Outcome {
    Pass(String),
    Fail(String),
    Skip(String),
}
use Outcome::*;

fn verdict(ok: bool, detail: String) -> Outcome {
    if ok {
        Pass(detail)
    } else {
        Fail(detail)
    }
}

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

/// Compares with a golden file; UPDATE_GOLDEN=1 rewrites it instead.
fn golden(name: &str, actual: &str) -> Result<(), String> {
    let path = golden_dir().join(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, actual).map_err(|e| e.to_string())?;
        return Ok(());
    }
    let expected =
        std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
    if expected == actual {
        Ok(())
    } else {
        Err(format!(
            "{name} differs:\n--- expected\n{expected}--- actual\n{actual}"
        ))
    }
}

fn demo_out() -> &'static Path {
    static DEMO: OnceLock<(tempfile::TempDir, PathBuf)> = OnceLock::new();
    &DEMO
        .get_or_init(|| {
            let dir = tempfile::tempdir().unwrap();
            let out = dir.path().join("out");
            run_demo(&out);
            (dir, out)
        })
        .1
}

fn demo_config_at(out: &Path) -> PipelineConfig {
    let mut cfg = PipelineConfig::load(&demo_config()).unwrap();
    cfg.out = out.to_path_buf();
    cfg
}

// 1

/// Every triple the random generator can produce, for bitmask encoding.
fn triple_universe() -> Vec<FeTriple> {
    let mut out = Vec::new();
    for name in FE_NAMES {
        out.push(FeTriple::new(*name, PhraseCat::NP, Some(GrammRel::Nsubj)));
        out.push(FeTriple::new(*name, PhraseCat::NP, Some(GrammRel::Dobj)));
        out.push(FeTriple::new(*name, PhraseCat::Adv, None));
        out.push(FeTriple::new(*name, PhraseCat::VP, None));
        out.push(FeTriple::new(*name, PhraseCat::S, None));
    }
    out
}

fn mask(key: &PatternKey, universe: &[FeTriple]) -> u64 {
    key.fes.iter().fold(0, |m, t| {
        let i = universe
            .iter()
            .position(|u| u == t)
            .expect("triple outside the universe");
        m | (1 << i)
    })
}

fn oracle_subsumes(a: &PatternKey, b: &PatternKey, universe: &[FeTriple]) -> bool {
    a.frame == b.frame
        && a.verb_type == b.verb_type
        && a.voice == b.voice
        && mask(b, universe) & !mask(a, universe) == 0
}

fn subsumption_laws() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let universe = triple_universe();
    let keys: Vec<PatternKey> = (0..1000).map(|_| random_key(&mut rng, 4)).collect();
    let n = keys.len();
    let mut rel = vec![vec![false; n]; n];
    let mut mismatches = 0;
    let mut problems = Vec::new();
    for i in 0..n {
        for j in 0..n {
            rel[i][j] = subsumes(&keys[i], &keys[j]);
            if rel[i][j] != oracle_subsumes(&keys[i], &keys[j], &universe) {
                mismatches += 1;
            }
        }
    }
    let mut edges = 0;
    for i in 0..n {
        if !rel[i][i] {
            problems.push(format!("not reflexive at {i}"));
        }
        for j in 0..n {
            if rel[i][j] && rel[j][i] && keys[i] != keys[j] {
                problems.push(format!("mutual subsumption without equality: {i}, {j}"));
            }
            if rel[i][j] {
                edges += 1;
                for (k, &jk) in rel[j].iter().enumerate() {
                    if jk && !rel[i][k] {
                        problems.push(format!("not transitive: {i} {j} {k}"));
                    }
                }
            }
        }
    }
    problems.truncate(3);
    verdict(
        mismatches == 0 && problems.is_empty(),
        format!("{n} keys, {edges} subsumption pairs, {mismatches} oracle mismatches {problems:?}"),
    )
}

// 2

/// Candidates subsumed across languages, deduplicated, minus strictly
/// subsumed ones.
fn oracle_shared(fn1: &[ValencePattern], fn2: &[ValencePattern]) -> BTreeMap<PatternKey, u64> {
    let within = |a: &PatternKey, b: &PatternKey| {
        a.frame == b.frame
            && a.verb_type == b.verb_type
            && a.voice == b.voice
            && b.fes.iter().all(|t| a.fes.contains(t))
    };
    let mut candidates = BTreeSet::new();
    for a in fn1 {
        for b in fn2 {
            if within(&b.key, &a.key) {
                candidates.insert(a.key.clone());
            }
            if within(&a.key, &b.key) {
                candidates.insert(b.key.clone());
            }
        }
    }
    let kept: Vec<PatternKey> = candidates
        .iter()
        .filter(|c| !candidates.iter().any(|d| d != *c && within(d, c)))
        .cloned()
        .collect();
    // Witness per side: the smallest subsuming source pattern.
    let witness = |side: &[ValencePattern], k: &PatternKey| {
        side.iter()
            .filter(|v| within(&v.key, k))
            .min_by(|x, y| {
                x.key
                    .fes
                    .len()
                    .cmp(&y.key.fes.len())
                    .then_with(|| x.key.cmp(&y.key))
            })
            .map(|v| v.count)
            .unwrap_or(0)
    };
    kept.into_iter()
        .map(|k| {
            let c = witness(fn1, &k) + witness(fn2, &k);
            (k, c)
        })
        .collect()
}

fn as_map(s: &SharedSet) -> BTreeMap<PatternKey, u64> {
    s.patterns
        .iter()
        .map(|p| (p.key.clone(), p.count))
        .collect()
}

fn shared_antichain() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut failures = Vec::new();
    let mut total = 0;
    for round in 0..200 {
        let n1 = rng.gen_range(0..25);
        let n2 = rng.gen_range(0..25);
        let fn1 = random_valences(&mut rng, n1, 3);
        let fn2 = random_valences(&mut rng, n2, 3);
        let s = shared_set("eng", &fn1, "swe", &fn2);
        let swapped = shared_set("swe", &fn2, "eng", &fn1);
        total += s.patterns.len();
        let keys = s.keys();
        let strict = keys
            .iter()
            .any(|a| keys.iter().any(|b| a != b && subsumes(b, a)));
        if strict {
            failures.push(format!("round {round}: strictly subsumed member"));
        }
        if as_map(&s) != as_map(&swapped) {
            failures.push(format!("round {round}: not symmetric"));
        }
        if keys.iter().map(|k| (*k).clone()).collect::<BTreeSet<_>>()
            != oracle_shared(&fn1, &fn2).into_keys().collect()
        {
            failures.push(format!("round {round}: differs from the oracle"));
        }
    }
    let n = failures.len();
    failures.truncate(3);
    verdict(
        n == 0,
        format!("200 pairs, {total} shared patterns, {n} failures {failures:?}"),
    )
}

// 3

fn apply_heat() -> Outcome {
    let key = |fes: Vec<FeTriple>| PatternKey::new("Apply_heat", VerbType::V2, Voice::Act, fes);
    let cook = FeTriple::new("Cook", PhraseCat::NP, Some(GrammRel::Nsubj));
    let food = FeTriple::new("Food", PhraseCat::NP, Some(GrammRel::Dobj));
    let container = FeTriple::new("Container", PhraseCat::Adv, None);
    let p1 = key(vec![cook.clone(), food.clone()]);
    let p2 = key(vec![container, cook, food.clone()]);
    let p3 = key(vec![food]);
    let s = shared_set(
        "eng",
        &[valence_of(p1.clone(), 4), valence_of(p3, 3)],
        "swe",
        &[valence_of(p2, 2)],
    );
    let got: Vec<String> = s.keys().iter().map(|k| k.fes_line()).collect();
    verdict(s.keys() == vec![&p1], format!("shared = {got:?}"))
}

// 4

fn desiring_corpus() -> String {
    let mut s = Vec::new();
    let mut add = |n: usize, layout: &str| {
        for _ in 0..n {
            s.push(ps_sentence("Desiring", "want.v", layout));
        }
    };
    add(
        59,
        "[Experiencer:Ext:NP I] [*VVB want] [Event:Dep:VPto to leave]",
    );
    add(
        2,
        "[Event:Dep:VPto To leave] [Experiencer:Ext:NP I] [*VVB want]",
    );
    add(
        55,
        "[Experiencer:Ext:NP I] [*VVB want] [Focal_participant:Obj:NP a car]",
    );
    add(
        6,
        "[Focal_participant:Obj:NP This] [Experiencer:Ext:NP I] [*VVB want]",
    );
    add(
        26,
        "[Experiencer:Ext:NP I] [*VVB long] [Focal_participant:Dep:PP[for] for peace]",
    );
    add(
        7,
        "[Experiencer:Ext:NP I] [*VVB long] [Focal_participant:Dep:PP[after] after peace]",
    );
    add(
        2,
        "[Experiencer:Ext:NP I] [*VVB long] [Focal_participant:Dep:AVP more]",
    );
    for m in ["of", "to", "toward", "towards", "at", "on", "about", "over"] {
        add(
            1,
            &format!(
                "[Experiencer:Ext:NP I] [*VVB long] [Focal_participant:Dep:PP[{m}] {m} peace]"
            ),
        );
    }
    for i in 1..=27 {
        add(
            4,
            &format!("[Experiencer:Ext:NP I] [*VVB long] [Extra{i}:Dep:AVP so]"),
        );
    }
    add(2, "[Experiencer:Ext:NP I] [*VVB long] [Extra28:Dep:AVP so]");
    add(
        5,
        "[Focal_participant:Ext:NP Peace] was [*VVN wanted] [Experiencer:Dep:PP[by] by all]",
    );
    add(4, "[Focal_participant:Ext:NP Peace] was [*VVN wanted]");
    add(
        4,
        "[Focal_participant:Ext:NP Peace] was [*VVN wanted] [Time:Dep:AVP then]",
    );
    corpus_xml(None, &s)
}

fn summary_golden() -> Outcome {
    let patterns = ps_patterns(&desiring_corpus(), "3.B".parse().unwrap());
    let v = valences("3.B".parse().unwrap(), &patterns);
    let text = summarize(
        &v,
        "Desiring",
        SummaryLimits {
            min_valence_count: 5,
            min_sentence_count: 2,
        },
    );
    match golden("desiring_summary.txt", &text) {
        Ok(()) => Pass(format!("{} lines identical", text.lines().count())),
        Err(e) => Fail(e),
    }
}

// 5

fn desiring_shared() -> SharedSet {
    let np = |fe: &str, r| FeTriple::new(fe, PhraseCat::NP, Some(r));
    let key = |vt, voice, fes| PatternKey::new("Desiring", vt, voice, fes);
    use GrammRel::*;
    let vals = vec![
        valence_of(
            key(
                VerbType::V,
                Voice::Act,
                vec![
                    np("Experiencer", Nsubj),
                    FeTriple::new("Focal_participant", PhraseCat::Adv, None),
                ],
            ),
            43,
        ),
        valence_of(
            key(
                VerbType::VV,
                Voice::Act,
                vec![
                    FeTriple::new("Event", PhraseCat::VP, None),
                    np("Experiencer", Nsubj),
                ],
            ),
            61,
        ),
        valence_of(
            key(
                VerbType::V2,
                Voice::Act,
                vec![np("Experiencer", Nsubj), np("Focal_participant", Dobj)],
            ),
            61,
        ),
        valence_of(
            key(
                VerbType::V2,
                Voice::Pass,
                vec![np("Experiencer", Dobj), np("Focal_participant", Nsubjpass)],
            ),
            5,
        ),
    ];
    shared_set("eng", &vals, "swe", &vals)
}

const EXPECTED_FUNS: [&str; 4] = [
    "fun Desiring_V : Experiencer_NP -> Focal_participant_Adv -> V -> Clause",
    "fun Desiring_VV : Event_VP -> Experiencer_NP -> VV -> Clause",
    "fun Desiring_V2 : Experiencer_NP -> Focal_participant_NP -> V2 -> Clause",
    "fun Desiring_V2_Pass : Experiencer_NP -> Focal_participant_NP -> V2 -> Clause",
];

const EXPECTED_LINS: [&str; 4] = [
    "lin Desiring_V experiencer_np focal_participant_adv v = { np = fromMaybe NP emptyNP experiencer_np ; vp = mkVP (mkVP v) (fromMaybe Adv emptyAdv focal_participant_adv) }",
    "lin Desiring_VV event_vp experiencer_np vv = {np = fromMaybe NP emptyNP experiencer_np ; vp = mkVP vv (fromMaybe VP emptyVP event_vp)}",
    "lin Desiring_V2 experiencer_np focal_participant_np v2 = {np=fromMaybe NP emptyNP experiencer_np; vp = mkVP v2 (fromMaybe NP emptyNP focal_participant_np)}",
    "lin Desiring_V2_Pass experiencer_np focal_participant_np v2 = {np = fromMaybe NP emptyNP focal_participant_np ; vp = mkVP (passiveVP v2) (mkAdv by8agent_Prep (fromMaybe NP emptyNP experiencer_np))}",
];

fn generate_desiring() -> Result<(String, String, Vec<String>), String> {
    let set = desiring_shared();
    let functions = grammar::frame_functions(&set).map_err(|e| e.to_string())?;
    let abs = grammar::gen_abstract(&functions, "fixture");
    let conc = grammar::gen_concrete(
        &set,
        &functions,
        "eng",
        &TemplateRegistry::builtin(),
        "fixture",
    )
    .map_err(|e| e.to_string())?;
    Ok((
        abs,
        conc.text,
        conc.rules.iter().map(|r| r.to_gf()).collect(),
    ))
}

fn grammar_golden() -> Outcome {
    let (abs, conc, rules) = match generate_desiring() {
        Ok(x) => x,
        Err(e) => return Fail(e),
    };
    let mut missing = Vec::new();
    let abs_squashed = squash(&abs);
    for f in EXPECTED_FUNS {
        if !abs_squashed.contains(&(squash(f) + ";")) {
            missing.push(f.split(':').next().unwrap_or(f).trim().to_string());
        }
    }
    let rules: BTreeSet<String> = rules
        .iter()
        .map(|r| squash(r.trim_end_matches(';')))
        .collect();
    for l in EXPECTED_LINS {
        if !rules.contains(&squash(l)) {
            missing.push(l.split('=').next().unwrap_or(l).trim().to_string());
        }
    }
    let again = generate_desiring().ok();
    let stable = again
        .as_ref()
        .is_some_and(|(a, c, _)| *a == abs && *c == conc);
    let files = golden("desiring_abstract.gf", &abs)
        .and_then(|_| golden("desiring_concrete_eng.gf", &conc));
    match files {
        Err(e) => Fail(e),
        Ok(()) => verdict(
            missing.is_empty() && stable,
            format!("4 funs, 4 lins; missing {missing:?}; regeneration identical: {stable}"),
        ),
    }
}

// 6

fn naming() -> Outcome {
    let set = desiring_shared();
    let siblings: Vec<(PatternKey, u64)> = set
        .patterns
        .iter()
        .map(|p| (p.key.clone(), p.count))
        .collect();
    let mut names: Vec<String> = siblings
        .iter()
        .map(|(k, c)| grammar::function_name(k, *c, &siblings))
        .collect();
    names.sort();
    let theme = FeTriple::new("Theme", PhraseCat::NP, Some(GrammRel::Nsubj));
    let adv = |n: &str| FeTriple::new(n, PhraseCat::Adv, None);
    let motion = vec![
        (
            PatternKey::new(
                "Motion",
                VerbType::V,
                Voice::Act,
                vec![theme.clone(), adv("Path")],
            ),
            5,
        ),
        (
            PatternKey::new(
                "Motion",
                VerbType::V,
                Voice::Act,
                vec![theme, adv("Goal"), adv("Source")],
            ),
            3,
        ),
    ];
    let m: Vec<String> = motion
        .iter()
        .map(|(k, c)| grammar::function_name(k, *c, &motion))
        .collect();
    let want = [
        "Desiring_V",
        "Desiring_V2",
        "Desiring_V2_Pass",
        "Desiring_VV",
    ];
    verdict(
        names == want && m == ["Motion_V", "Motion_V_2"],
        format!("{names:?} {m:?}"),
    )
}

// 7

fn read_lexicon(out: &Path, lang: &str) -> Vec<LexEntry> {
    let cfg = demo_config_at(out);
    let a: Artifact<Vec<LexEntry>> =
        read_artifact(&cfg.layout().lexicon(lang), "lexicon", "acceptance").unwrap();
    a.data
}

fn lexicon_tables() -> Outcome {
    let out = demo_out();
    let eng = read_lexicon(out, "eng");
    let swe = read_lexicon(out, "swe");
    let pick = |entries: &[LexEntry], lemmas: &[&str]| -> Vec<String> {
        entries
            .iter()
            .filter(|e| lemmas.contains(&e.base_form.as_str()))
            .map(|e| e.id.clone())
            .collect()
    };
    let english_sample = [
        "feel_like_V2_Desiring",
        "feel_like_VV_Desiring",
        "want_V_Desiring",
        "want_V2_Desiring",
        "want_VV_Desiring",
        "yearn_V_Desiring",
        "yearn_VV_Desiring",
    ];
    let swedish_sample = [
        "känna_V2_Awareness",
        "känna_V2_Familiarity",
        "känna_för_V2_Desiring",
        "känna_för_VV_Desiring",
        "känna_sig_V_Feeling",
        "längta_V_Desiring",
        "vilja_VV_Desiring",
    ];
    let mut e = pick(&eng, &["feel like", "want", "yearn"]);
    let mut s = pick(
        &swe,
        &["känna", "känna för", "känna sig", "längta", "vilja"],
    );
    e.sort();
    s.sort();
    let mut want_eng: Vec<String> = english_sample.iter().map(|x| x.to_string()).collect();
    let mut want_swe: Vec<String> = swedish_sample.iter().map(|x| x.to_string()).collect();
    want_eng.sort();
    want_swe.sort();
    let by_id = |entries: &[LexEntry], id: &str| entries.iter().find(|e| e.id == id).cloned();
    let class = |entries: &[LexEntry], id: &str| by_id(entries, id).map(|e| e.mwe_class);
    let lin = |entries: &[LexEntry], id: &str| {
        by_id(entries, id)
            .and_then(|e| e.linearization)
            .map(|l| squash(&l))
    };
    let mut problems = Vec::new();
    if e != want_eng {
        problems.push(format!("English entries {e:?}"));
    }
    if s != want_swe {
        problems.push(format!("Swedish entries {s:?}"));
    }
    if class(&eng, "feel_like_VV_Desiring") != Some(MweClass::Particle) {
        problems.push("feel_like is not Particle".into());
    }
    if class(&swe, "känna_sig_V_Feeling") != Some(MweClass::Reflexive) {
        problems.push("känna_sig is not Reflexive".into());
    }
    if lin(&eng, "want_V2_Desiring") != Some(squash("mkV2 (regV \"want\")")) {
        problems.push(format!(
            "want_V2_Desiring = {:?}",
            lin(&eng, "want_V2_Desiring")
        ));
    }
    let kf = squash("mkVV (partV (irregV \"känna\" \"kände\" \"känt\") \"för\")");
    if lin(&swe, "känna_för_VV_Desiring") != Some(kf) {
        problems.push(format!(
            "känna_för_VV_Desiring = {:?}",
            lin(&swe, "känna_för_VV_Desiring")
        ));
    }
    let ks = squash("reflV (irregV \"känna\" \"kände\" \"känt\")");
    if lin(&swe, "känna_sig_V_Feeling") != Some(ks) {
        problems.push(format!(
            "känna_sig_V_Feeling = {:?}",
            lin(&swe, "känna_sig_V_Feeling")
        ));
    }
    verdict(
        problems.is_empty(),
        format!("7 + 7 entries, classes and linearizations {problems:?}"),
    )
}

// 8

fn alignment() -> Outcome {
    let out = demo_out();
    let cfg = demo_config_at(out);
    let a: Alignment = pipeline::load_alignment(&cfg).unwrap();
    let find = |id: &str| a.aligned.iter().find(|e| e.l1_entry == id);
    let mut problems = Vec::new();
    match find("feel_like_VV_Desiring") {
        Some(e) if e.l2_variants == ["känna_för_VV_Desiring"] && e.fallback_used => {}
        other => problems.push(format!("feel_like: {other:?}")),
    }
    match find("want_VV_Desiring") {
        Some(e) if e.l2_variants == ["vilja_VV_Desiring"] => {}
        other => problems.push(format!("want_VV: {other:?}")),
    }
    match find("know_V2_Familiarity") {
        Some(e) if e.l2_variants == ["känna_V2_Familiarity", "känna_till_V2_Familiarity"] => {}
        other => problems.push(format!("know_V2_Familiarity: {other:?}")),
    }
    let swe = std::fs::read_to_string(cfg.layout().gf().join("FrameNetLexiconSwe.gf"))
        .unwrap_or_default();
    let lines = [
        "lin feel_like_VV_Desiring = känna_för_VV_Desiring",
        "lin want_VV_Desiring = vilja_VV_Desiring",
        "lin know_V2_Familiarity = variants {känna_V2_Familiarity | känna_till_V2_Familiarity}",
    ];
    for l in lines {
        if !squash(&swe).contains(&squash(l)) {
            problems.push(format!("module lacks `{l}`"));
        }
    }
    verdict(
        problems.is_empty(),
        format!(
            "{} aligned, {} unaligned {problems:?}",
            a.aligned.len(),
            a.unaligned.len()
        ),
    )
}

// 9

fn realizer() -> Outcome {
    let gf = demo_out().join("gf");
    let r = match Realizer::load_dir(&gf, Lang::Eng) {
        Ok(r) => r,
        Err(e) => return Fail(e.to_string()),
    };
    let cases = [
        (
            r#"Desiring_V2 want_V2_Desiring { Experiencer = "she" ; Focal_participant = "a protector" }"#,
            Tense::Pres,
            "she wants a protector",
        ),
        (
            r#"Residence_V live_V_Residence { Resident = "we" ; Location = "in Sweden" }"#,
            Tense::Pres,
            "we live in Sweden",
        ),
        (
            r#"Desiring_VV want_VV_Desiring { Experiencer = "I" ; Event = Motion_V_2 go_V_Motion { Goal = "to a museum" } }"#,
            Tense::Pres,
            "I want to go to a museum",
        ),
        (
            r#"Create_physical_artwork_V2_Pass paint_V2_Create_physical_artwork { Representation = "Bacchus" ; Creator = "Leonardo da Vinci" }"#,
            Tense::Past,
            "Bacchus was painted by Leonardo da Vinci",
        ),
    ];
    let norm = |s: &str| s.split_whitespace().collect::<Vec<_>>().join(" ");
    let mut wrong = Vec::new();
    for (req, tense, want) in cases {
        let got = Tree::parse(req).and_then(|t| r.realize(&t, tense));
        match got {
            Ok(s) if norm(&s) == want => {}
            other => wrong.push(format!("{want:?} -> {other:?}")),
        }
    }
    verdict(wrong.is_empty(), format!("4 requests {wrong:?}"))
}

// 10

fn oracle_coverage(set: &SharedSet, patterns: &[SentencePattern]) -> (u64, u64) {
    let frames: BTreeSet<&str> = set.patterns.iter().map(|p| p.key.frame.as_str()).collect();
    let (mut covered, mut total) = (0, 0);
    for p in patterns {
        // One example at a time.
        for _ in 0..p.count {
            if !frames.contains(p.frame.as_str()) {
                continue;
            }
            total += 1;
            let core: Vec<(&str, PhraseCat, Option<GrammRel>)> = p
                .fes
                .iter()
                .filter(|f| f.is_core)
                .map(|f| (f.fe_name.as_str(), f.cat, f.rel))
                .collect();
            let hit = set.patterns.iter().any(|s| {
                s.key.frame == p.frame
                    && s.key.verb_type == p.verb_type
                    && s.key.voice == p.voice
                    && core.iter().all(|(n, c, r)| {
                        s.key
                            .fes
                            .iter()
                            .any(|t| t.fe == *n && t.cat == *c && t.rel == *r)
                    })
            });
            if hit {
                covered += 1;
            }
        }
    }
    (covered, total)
}

fn coverage_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut mismatches = Vec::new();
    let mut covered_sum = 0;
    for round in 0..20 {
        let fn1 = random_valences(&mut rng, 15, 3);
        let fn2 = random_valences(&mut rng, 15, 3);
        let set = shared_set("eng", &fn1, "swe", &fn2);
        let mut patterns = Vec::new();
        let mut examples = 0;
        loop {
            let mut p = random_sentence_pattern(&mut rng);
            // Some patterns copy a shared key so coverage is not trivially zero.
            if !set.patterns.is_empty() && rng.gen_bool(0.4) {
                let k = &set.patterns[rng.gen_range(0..set.patterns.len())].key;
                p.frame = k.frame.clone();
                p.verb_type = k.verb_type;
                p.voice = k.voice;
                p.fes = k
                    .fes
                    .iter()
                    .filter(|_| rng.gen_bool(0.8))
                    .map(realization)
                    .collect();
            }
            if examples + p.count > 50 {
                break;
            }
            examples += p.count;
            patterns.push(p);
        }
        let c = compute_coverage(&set, &patterns);
        let (covered, total) = oracle_coverage(&set, &patterns);
        covered_sum += covered;
        let fraction = if total == 0 {
            0.0
        } else {
            covered as f64 / total as f64
        };
        if c.covered != covered || c.total != total || c.fraction != fraction {
            mismatches.push(format!(
                "round {round}: {}/{} vs oracle {covered}/{total}",
                c.covered, c.total
            ));
        }
    }
    verdict(
        mismatches.is_empty(),
        format!("20 corpora, {covered_sum} covered examples in all, mismatches {mismatches:?}"),
    )
}

// 11 to 14

struct Real {
    _dir: tempfile::TempDir,
    cfg: PipelineConfig,
}

fn real_data() -> Option<&'static Result<Real, String>> {
    static REAL: OnceLock<Option<Result<Real, String>>> = OnceLock::new();
    REAL.get_or_init(|| {
        let bfn = std::env::var_os("FN_BFN_DIR")?;
        let swefn = std::env::var_os("FN_SWEFN_DIR")?;
        let run = || -> Result<Real, String> {
            let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
            let mut cfg = PipelineConfig {
                out: dir.path().join("out"),
                ..PipelineConfig::default()
            };
            cfg.lang_mut("eng").corpus.push(PathBuf::from(bfn));
            cfg.lang_mut("swe").corpus.push(PathBuf::from(swefn));
            if let Some(p) = std::env::var_os("FN_ENG_PARADIGMS") {
                cfg.lang_mut("eng").paradigms.push(PathBuf::from(p));
            }
            if let Some(p) = std::env::var_os("FN_SWE_PARADIGMS") {
                cfg.lang_mut("swe").paradigms.push(PathBuf::from(p));
            }
            cfg.dict = std::env::var_os("FN_DICT").map(PathBuf::from);
            pipeline::run_all(&cfg).map_err(|e| e.to_string())?;
            Ok(Real { _dir: dir, cfg })
        };
        Some(run())
    })
    .as_ref()
}

fn within(actual: f64, target: f64, pct: f64) -> bool {
    (actual - target).abs() <= target * pct / 100.0
}

/// `name actual/target` cells, all within `pct`.
fn cells(rows: &[(&str, f64, f64)], pct: f64) -> Outcome {
    let ok = rows.iter().all(|(_, a, t)| within(*a, *t, pct));
    let detail: Vec<String> = rows
        .iter()
        .map(|(n, a, t)| format!("{n} {a}/{t}"))
        .collect();
    verdict(ok, format!("{} (±{pct}%)", detail.join(", ")))
}

fn gated(f: impl FnOnce(&PipelineConfig) -> Outcome) -> Outcome {
    match real_data() {
        None => Skip("set FN_BFN_DIR and FN_SWEFN_DIR to run".into()),
        Some(Err(e)) => Fail(format!("pipeline failed: {e}")),
        Some(Ok(r)) => f(&r.cfg),
    }
}

fn patterns_of(cfg: &PipelineConfig, lang: &str) -> Vec<SentencePattern> {
    let a: Artifact<ExtractArtifact> =
        read_artifact(&cfg.layout().patterns(lang), "patterns", "acceptance").unwrap();
    a.data.report.patterns
}

fn valences_of(cfg: &PipelineConfig, lang: &str) -> Vec<ValencePattern> {
    let a: Artifact<Vec<ValencePattern>> =
        read_artifact(&cfg.layout().valences(lang), "valences", "acceptance").unwrap();
    a.data
}

fn corpus_stats() -> Outcome {
    gated(|cfg| {
        let row = |lang: &str, s: Settings| {
            let patterns = patterns_of(cfg, lang);
            let valences = valences_of(cfg, lang);
            framegram::normalize::stats_row(s, &patterns, &valences)
        };
        let (a, b) = cfg.pair().unwrap();
        let e = row("eng", a.settings);
        let s = row("swe", b.settings);
        cells(
            &[
                ("eng frames", e.frames as f64, 554.0),
                ("eng LUs", e.lus as f64, 3232.0),
                ("eng valence", e.valence_patterns as f64, 3666.0),
                ("eng sentence", e.sentence_patterns as f64, 6896.0),
                ("swe frames", s.frames as f64, 654.0),
                ("swe LUs", s.lus as f64, 2828.0),
                ("swe valence", s.valence_patterns as f64, 2255.0),
                ("swe sentence", s.sentence_patterns as f64, 2432.0),
            ],
            2.0,
        )
    })
}

fn shared_stats() -> Outcome {
    gated(|cfg| {
        let fs = shared::frame_set_stats(&valences_of(cfg, "eng"), &valences_of(cfg, "swe"));
        let set = pipeline::load_shared(cfg).unwrap();
        let functions = grammar::frame_functions(&set).unwrap();
        let cats = grammar::categories(&functions);
        let n = |c: PhraseCat| cats.values().filter(|x| **x == c).count() as f64;
        cells(
            &[
                ("shared frames", fs.intersection as f64, 523.0),
                ("patterns", set.patterns.len() as f64, 869.0),
                ("pattern frames", set.frames().len() as f64, 483.0),
                ("categories", cats.len() as f64, 541.0),
                ("NP", n(PhraseCat::NP), 339.0),
                ("Adv", n(PhraseCat::Adv), 159.0),
                ("VP", n(PhraseCat::VP), 17.0),
                ("S", n(PhraseCat::S), 17.0),
                ("QS", n(PhraseCat::QS), 9.0),
            ],
            2.0,
        )
    })
}

fn lexicon_stats() -> Outcome {
    gated(|cfg| {
        let lex = |lang| -> Vec<LexEntry> {
            read_artifact::<Vec<LexEntry>>(&cfg.layout().lexicon(lang), "lexicon", "acceptance")
                .unwrap()
                .data
        };
        let (e, s) = (lex("eng"), lex("swe"));
        let linearized = |v: &[LexEntry]| v.iter().filter(|x| x.is_linearized()).count() as f64;
        let a = pipeline::load_alignment(cfg).unwrap();
        cells(
            &[
                ("eng entries", e.len() as f64, 3432.0),
                ("swe entries", s.len() as f64, 1899.0),
                ("eng linearized", linearized(&e), 3350.0),
                ("swe linearized", linearized(&s), 1789.0),
                ("aligned eng", a.aligned.len() as f64, 703.0),
                ("aligned swe", a.l2_entries().len() as f64, 900.0),
            ],
            3.0,
        )
    })
}

fn census_reference() -> Vec<(String, u64)> {
    let text = std::fs::read_to_string(golden_dir().join("census_reference.tsv")).unwrap();
    text.lines()
        .skip(1)
        .map(|l| {
            let f: Vec<&str> = l.split('\t').collect();
            (format!("{} {} {}", f[0], f[1], f[2]), f[3].parse().unwrap())
        })
        .collect()
}

fn coverage_and_census() -> Outcome {
    gated(|cfg| {
        let set = pipeline::load_shared(cfg).unwrap();
        let mut problems = Vec::new();
        let mut detail = Vec::new();
        for lang in ["eng", "swe"] {
            let c = compute_coverage(&set, &patterns_of(cfg, lang));
            let pct = c.fraction * 100.0;
            detail.push(format!("{lang} coverage {pct:.1}%"));
            if (pct - 77.5).abs() > 1.5 {
                problems.push(format!("{lang} coverage {pct:.1}% vs 77.5%"));
            }
        }
        let census = grammar::census(set.patterns.iter().map(|p| &p.key));
        let got: BTreeMap<String, u64> = census.iter().map(|(s, n)| (s.to_string(), *n)).collect();
        let reference = census_reference();
        detail.push(format!("{} signatures", got.len()));
        if got.len() != reference.len() {
            problems.push(format!("{} signatures vs {}", got.len(), reference.len()));
        }
        for (i, (sig, freq)) in reference.iter().enumerate() {
            let n = got.get(sig).copied().unwrap_or(0);
            // Rows are compared at ±2%, but never tighter than one pattern.
            let tolerance = (*freq as f64 * 0.02).max(1.0);
            if (n as f64 - *freq as f64).abs() > tolerance {
                problems.push(format!("`{sig}` {n} vs {freq}"));
            }
            if i == 0 {
                detail.push(format!("top row {n}"));
            }
        }
        problems.truncate(6);
        verdict(
            problems.is_empty(),
            format!("{} {problems:?}", detail.join(", ")),
        )
    })
}

type Criterion = (u32, &'static str, fn() -> Outcome);

fn main() {
    let criteria: Vec<Criterion> = vec![
        (1, "subsumption laws", subsumption_laws),
        (2, "shared-set antichain and symmetry", shared_antichain),
        (3, "Apply_heat example", apply_heat),
        (4, "Desiring summary golden", summary_golden),
        (5, "Desiring grammar golden", grammar_golden),
        (6, "function naming", naming),
        (7, "lexicon fixtures", lexicon_tables),
        (8, "alignment fixtures", alignment),
        (9, "realizer", realizer),
        (10, "coverage oracle", coverage_oracle),
        (11, "corpus statistics", corpus_stats),
        (12, "shared patterns and categories", shared_stats),
        (13, "lexicon and alignment counts", lexicon_stats),
        (14, "coverage and signature census", coverage_and_census),
    ];
    let filter: Option<u32> = std::env::args().skip(1).find_map(|a| a.parse().ok());
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (n, name, f) in criteria {
        if filter.is_some_and(|only| only != n) {
            continue;
        }
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Fail(format!("panicked: {msg}"))
        });
        let (tag, detail) = match outcome {
            Pass(d) => ("PASS", d),
            Fail(d) => {
                failed += 1;
                ("FAIL", d)
            }
            Skip(d) => ("SKIP", d),
        };
        println!("criterion {n}: {tag} {name}: {detail}");
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
