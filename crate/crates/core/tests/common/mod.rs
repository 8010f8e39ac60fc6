//! Helpers shared by the integration tests: tiny corpus builders and
//! random pattern generators.
#![allow(dead_code)]

use std::path::{Path, PathBuf};

use framegram::corpus::{parse_dependency_corpus, parse_phrase_structure_corpus, ParseOptions};
use framegram::extract::{
    extract_corpus, FERealization, GrammRel, LuMorph, LuRef, Mappings, MorphComponent, PhraseCat,
    SentencePattern, Settings, VerbType, Voice,
};
use framegram::normalize::{self, FeTriple, PatternKey, SentenceShape, ValencePattern};
use rand::seq::SliceRandom;
use rand::Rng;

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

/// Splits `a [b c] d` into plain words and bracketed groups.
fn groups(layout: &str) -> Vec<(Option<String>, Vec<String>)> {
    let mut out = Vec::new();
    let mut rest = layout.trim();
    while !rest.is_empty() {
        if let Some(inner) = rest.strip_prefix('[') {
            let mut depth = 0;
            let close = inner
                .char_indices()
                .find(|&(_, c)| {
                    match c {
                        '[' => depth += 1,
                        ']' if depth == 0 => return true,
                        ']' => depth -= 1,
                        _ => {}
                    }
                    false
                })
                .map(|(i, _)| i)
                .expect("unbalanced bracket");
            let mut words = inner[..close].split_whitespace().map(str::to_string);
            let head = words.next().expect("empty group");
            out.push((Some(head), words.collect()));
            rest = inner[close + 1..].trim_start();
        } else {
            let end = rest.find([' ', '[']).unwrap_or(rest.len());
            out.push((None, vec![rest[..end].to_string()]));
            rest = rest[end..].trim_start();
        }
    }
    out
}

/// One phrase-structure sentence written as
/// `[Experiencer:Ext:NP I] [*VVB want] [Event:Dep:VPto to leave]`.
/// `[*T1,T2 w1 w2]` marks the target words with their POS tags.
pub fn ps_sentence(frame: &str, lu: &str, layout: &str) -> String {
    let mut text = String::new();
    let mut fes = Vec::new();
    let mut targets = Vec::new();
    for (head, words) in groups(layout) {
        let mut spans = Vec::new();
        for w in &words {
            if !text.is_empty() {
                text.push(' ');
            }
            let start = text.chars().count();
            text.push_str(w);
            spans.push((start, text.chars().count() - 1));
        }
        match head {
            None => {}
            Some(h) if h.starts_with('*') => {
                for (tag, span) in h[1..].split(',').zip(spans) {
                    targets.push((tag.to_string(), span));
                }
            }
            Some(h) => {
                let parts: Vec<&str> = h.split(':').collect();
                let (s, e) = (spans[0].0, spans.last().unwrap().1);
                fes.push((
                    parts[0].to_string(),
                    parts[1].to_string(),
                    parts[2].to_string(),
                    s,
                    e,
                ));
            }
        }
    }
    let mut x = format!(
        "<sentence>\n<text>{}</text>\n<annotationSet><layer rank=\"1\" name=\"BNC\">",
        escape(&text)
    );
    for (tag, (s, e)) in &targets {
        x += &format!("<label start=\"{s}\" end=\"{e}\" name=\"{tag}\"/>");
    }
    x += &format!(
        "</layer></annotationSet>\n<annotationSet frameName=\"{frame}\" luName=\"{lu}\">\n"
    );
    for (layer, idx) in [("FE", 0), ("GF", 1), ("PT", 2)] {
        x += &format!("<layer rank=\"1\" name=\"{layer}\">");
        for f in &fes {
            let name = [&f.0, &f.1, &f.2][idx];
            x += &format!(
                "<label start=\"{}\" end=\"{}\" name=\"{}\"/>",
                f.3,
                f.4,
                escape(name)
            );
        }
        x += "</layer>\n";
    }
    x += "<layer rank=\"1\" name=\"Target\">";
    for (_, (s, e)) in &targets {
        x += &format!("<label start=\"{s}\" end=\"{e}\" name=\"Target\"/>");
    }
    x += "</layer>\n</annotationSet>\n</sentence>\n";
    x
}

/// One dependency sentence written as
/// `[Experiencer jag/PN/2/SS] [LU=vilja vill/VB.PRS.AKT/0/ROOT] [Event gå/VB.INF/2/VG]`.
/// Tokens are `form/tag/head/deprel`, numbered from 1; head 0 is the root.
pub fn dep_sentence(layout: &str) -> String {
    let mut x = String::from("<sentence>\n");
    let mut n = 0;
    let token = |t: &str, n: usize| {
        let p: Vec<&str> = t.split('/').collect();
        let key = if p[1].contains('.') { "msd" } else { "pos" };
        let head = if p[2] == "0" {
            String::new()
        } else {
            format!(" dephead=\"{}\"", p[2])
        };
        format!(
            "<w {key}=\"{}\" ref=\"{n}\"{head} deprel=\"{}\">{}</w>",
            p[1],
            p[3],
            escape(p[0])
        )
    };
    for (head, words) in groups(layout) {
        match head {
            None => {
                n += 1;
                x += &token(&words[0], n);
            }
            Some(h) => {
                match h.strip_prefix("LU=") {
                    Some(lemma) => x += &format!("<element name=\"LU\" lemma=\"{lemma}\">"),
                    None => x += &format!("<element name=\"{h}\">"),
                }
                for w in &words {
                    n += 1;
                    x += &token(w, n);
                }
                x += "</element>";
            }
        }
        x.push('\n');
    }
    x + "</sentence>\n"
}

/// Wraps sentences in a document, optionally inside a frame-labelled element.
pub fn corpus_xml(frame: Option<&str>, sentences: &[String]) -> String {
    let open = match frame {
        Some(f) => format!("<corpus frame=\"{f}\">\n"),
        None => "<corpus>\n".to_string(),
    };
    format!("{open}{}</corpus>\n", sentences.concat())
}

pub fn ps_patterns(xml: &str, settings: Settings) -> Vec<SentencePattern> {
    let c =
        parse_phrase_structure_corpus(xml, "fixture", &ParseOptions::for_language("eng")).unwrap();
    extract_corpus(&c.sentences, settings, Mappings::bundled()).patterns
}

pub fn dep_patterns(xml: &str, settings: Settings) -> Vec<SentencePattern> {
    let c = parse_dependency_corpus(xml, "fixture", &ParseOptions::for_language("swe")).unwrap();
    extract_corpus(&c.sentences, settings, Mappings::bundled()).patterns
}

pub fn valences(settings: Settings, patterns: &[SentencePattern]) -> Vec<ValencePattern> {
    framegram::pipeline::normalize_patterns(settings, patterns).1
}

pub fn demo_config() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data/demo/demo.conf")
}

/// Runs every stage on the bundled demo corpora into `out`.
pub fn run_demo(out: &Path) -> framegram::pipeline::PipelineConfig {
    let mut cfg = framegram::pipeline::PipelineConfig::load(&demo_config()).unwrap();
    cfg.out = out.to_path_buf();
    framegram::pipeline::run_all(&cfg).unwrap();
    cfg
}

// Random patterns over a small universe, so that subsumption is common.

pub const FRAMES: &[&str] = &["Apply_heat", "Desiring", "Motion"];
pub const FE_NAMES: &[&str] = &["Agent", "Theme", "Goal", "Source", "Path", "Manner"];

pub fn random_triple<R: Rng>(rng: &mut R) -> FeTriple {
    let name = *FE_NAMES.choose(rng).unwrap();
    match rng.gen_range(0..5) {
        0 => FeTriple::new(name, PhraseCat::NP, Some(GrammRel::Nsubj)),
        1 => FeTriple::new(name, PhraseCat::NP, Some(GrammRel::Dobj)),
        2 => FeTriple::new(name, PhraseCat::Adv, None),
        3 => FeTriple::new(name, PhraseCat::VP, None),
        _ => FeTriple::new(name, PhraseCat::S, None),
    }
}

/// A key with up to `max_fes` triples, from few frames, verb types and voices.
pub fn random_key<R: Rng>(rng: &mut R, max_fes: usize) -> PatternKey {
    let n = rng.gen_range(0..=max_fes);
    let fes: Vec<FeTriple> = (0..n).map(|_| random_triple(rng)).collect();
    PatternKey::new(
        *FRAMES.choose(rng).unwrap(),
        *[VerbType::V, VerbType::V2].choose(rng).unwrap(),
        *[Voice::Act, Voice::Pass].choose(rng).unwrap(),
        fes,
    )
}

pub fn realization(t: &FeTriple) -> FERealization {
    let mut r = FERealization::new(t.fe.clone(), t.cat);
    r.rel = t.rel;
    r
}

pub fn valence_of(key: PatternKey, count: u64) -> ValencePattern {
    let shape = SentenceShape {
        fes: key.fes.iter().map(realization).collect(),
        count,
    };
    ValencePattern {
        key,
        count,
        sentences: vec![shape],
    }
}

/// Distinct random valence patterns.
pub fn random_valences<R: Rng>(rng: &mut R, n: usize, max_fes: usize) -> Vec<ValencePattern> {
    let mut keys = std::collections::BTreeSet::new();
    for _ in 0..n {
        keys.insert(random_key(rng, max_fes));
    }
    keys.into_iter()
        .map(|k| valence_of(k, rng.gen_range(1..20)))
        .collect()
}

pub fn lu(lemma: &str) -> LuRef {
    LuRef {
        lemma: lemma.to_string(),
        morph: LuMorph {
            base_form: lemma.to_string(),
            components: vec![MorphComponent::new(lemma, "VERB", "Fin")],
        },
    }
}

/// A random sentence pattern; some FEs are non-core or carry markers.
pub fn random_sentence_pattern<R: Rng>(rng: &mut R) -> SentencePattern {
    let key = random_key(rng, 4);
    let fes = key
        .fes
        .iter()
        .map(|t| {
            let mut r = realization(t);
            r.is_core = rng.gen_bool(0.8);
            if r.cat == PhraseCat::Adv && rng.gen_bool(0.5) {
                r.marker = Some(["for", "to", "in"].choose(rng).unwrap().to_string());
            }
            r
        })
        .collect();
    SentencePattern {
        frame: key.frame,
        verb_type: key.verb_type,
        voice: key.voice,
        fes,
        lu: lu(["want", "go", "bake"].choose(rng).unwrap()),
        count: rng.gen_range(1..4),
    }
}

pub fn normalize_all(patterns: &[SentencePattern]) -> Vec<ValencePattern> {
    normalize::normalize(patterns)
}

/// Removes all whitespace, for comparisons modulo layout.
pub fn squash(s: &str) -> String {
    s.chars().filter(|c| !c.is_whitespace()).collect()
}
