//! Universal POS descriptions of LU constituents.

use super::{LuMorph, MorphComponent};
use crate::corpus::{AnnotatedSentence, SourceScheme};

const REFLEXIVES: &[&str] = &[
    "oneself",
    "myself",
    "yourself",
    "himself",
    "herself",
    "itself",
    "ourselves",
    "yourselves",
    "themselves",
    "sig",
    "sej",
    "mig",
    "mej",
    "dig",
    "dej",
    "oss",
    "er",
];

const PARTICLES: &[&str] = &[
    "about", "across", "after", "along", "around", "at", "away", "back", "by", "down", "for",
    "forth", "from", "in", "into", "like", "of", "off", "on", "onto", "out", "over", "round",
    "through", "to", "together", "towards", "up", "upon", "with", "without", "av", "bort", "efter",
    "emot", "fast", "fram", "från", "för", "ifrån", "igen", "igenom", "in", "med", "ner", "om",
    "på", "till", "tillbaka", "undan", "under", "upp", "ut", "vid", "åt", "över",
];

const DEFINITE: &[&str] = &["the", "den", "det", "de"];
const INDEFINITE: &[&str] = &["a", "an", "en", "ett"];

/// Describes the LU of `s`. The first constituent of a verb LU is always
/// the finite verb; the others come from source tags, else from word lists.
pub fn lu_morph(s: &AnnotatedSentence) -> LuMorph {
    let base_form = s.lu_lemma.trim().replace('_', " ");
    let words: Vec<&str> = base_form.split_whitespace().collect();
    let tags_align = s.target_tokens.len() == words.len();
    let components = words
        .iter()
        .enumerate()
        .map(|(i, word)| {
            if i == 0 {
                return if s.lu_pos == "VERB" {
                    MorphComponent::new(*word, "VERB", "Fin")
                } else {
                    MorphComponent::new(*word, &s.lu_pos, "")
                };
            }
            let tag = if tags_align {
                s.target_tokens[i].tag.as_deref()
            } else {
                None
            };
            let (upos, feats) = match tag {
                Some(tag) => match s.scheme {
                    SourceScheme::PhraseStructure => english_tag(tag, word),
                    SourceScheme::Dependency => swedish_tag(tag, word),
                },
                None => by_word(word),
            };
            MorphComponent::new(*word, upos, feats)
        })
        .collect();
    LuMorph {
        base_form: words.join(" "),
        components,
    }
}

fn lower(word: &str) -> String {
    word.to_lowercase()
}

fn determiner(word: &str) -> (&'static str, &'static str) {
    let w = lower(word);
    if DEFINITE.contains(&w.as_str()) {
        ("DET", "Art.Def")
    } else if INDEFINITE.contains(&w.as_str()) {
        ("DET", "Art.Ind")
    } else {
        ("DET", "")
    }
}

fn pronoun(word: &str) -> (&'static str, &'static str) {
    if REFLEXIVES.contains(&lower(word).as_str()) {
        ("PRON", "Reflex")
    } else {
        ("PRON", "Prs")
    }
}

/// BNC C5 tags, with Penn tags as a fallback.
fn english_tag(tag: &str, word: &str) -> (&'static str, &'static str) {
    let t = tag.to_ascii_uppercase();
    let pronoun_like = REFLEXIVES.contains(&lower(word).as_str())
        || [
            "i", "you", "he", "she", "it", "we", "they", "me", "him", "her", "us", "them",
        ]
        .contains(&lower(word).as_str());
    match t.as_str() {
        "AVP" | "PRF" | "RP" | "IN" | "TO" | "TO0" => ("ADP", ""),
        // PRP is a preposition in C5 but a personal pronoun in Penn.
        "PRP" if pronoun_like => pronoun(word),
        "PRP" | "AVP-PRP" | "PRP-AVP" => ("ADP", ""),
        "PNX" => ("PRON", "Reflex"),
        "PNP" => pronoun(word),
        "AT0" | "DT" => determiner(word),
        "AV0" | "RB" => ("ADV", ""),
        _ if t.starts_with("NN") || t.starts_with("NP") => ("NOUN", ""),
        _ if t.starts_with("AJ") || t.starts_with("JJ") => ("ADJ", ""),
        _ if t.starts_with("VV")
            || t.starts_with("VB")
            || t.starts_with("VD")
            || t.starts_with("VH")
            || t.starts_with("VM") =>
        {
            ("VERB", "Fin")
        }
        _ => by_word(word),
    }
}

/// SUC tags or msd strings.
fn swedish_tag(tag: &str, word: &str) -> (&'static str, &'static str) {
    match tag.split('.').next().unwrap_or(tag) {
        "PL" | "PP" => ("ADP", ""),
        "PN" => pronoun(word),
        "NN" | "PM" => ("NOUN", ""),
        "JJ" | "PC" => ("ADJ", ""),
        "DT" => determiner(word),
        "VB" => ("VERB", "Fin"),
        "AB" => ("ADV", ""),
        _ => by_word(word),
    }
}

fn by_word(word: &str) -> (&'static str, &'static str) {
    let w = lower(word);
    if REFLEXIVES.contains(&w.as_str()) {
        ("PRON", "Reflex")
    } else if PARTICLES.contains(&w.as_str()) {
        ("ADP", "")
    } else if DEFINITE.contains(&w.as_str()) || INDEFINITE.contains(&w.as_str()) {
        determiner(word)
    } else {
        ("X", "")
    }
}
