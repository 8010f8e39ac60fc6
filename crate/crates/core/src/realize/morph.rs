//! Just enough verb morphology to smoke-test generated rules.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Lang {
    Eng,
    Swe,
}

impl Lang {
    pub fn from_code(code: &str) -> Option<Lang> {
        match code.to_ascii_lowercase().as_str() {
            "eng" | "en" => Some(Lang::Eng),
            "swe" | "sv" => Some(Lang::Swe),
            _ => None,
        }
    }

    pub fn agent_prep(self) -> &'static str {
        match self {
            Lang::Eng => "by",
            Lang::Swe => "av",
        }
    }

    pub fn that(self) -> &'static str {
        match self {
            Lang::Eng => "that",
            Lang::Swe => "att",
        }
    }

    pub fn infinitive_marker(self) -> &'static str {
        match self {
            Lang::Eng => "to",
            Lang::Swe => "att",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Tense {
    Pres,
    Past,
}

impl std::str::FromStr for Tense {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "pres" | "present" => Ok(Tense::Pres),
            "past" => Ok(Tense::Past),
            other => Err(format!("unknown tense `{other}` (pres or past)")),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum Person {
    P1,
    P2,
    #[default]
    P3,
}

/// Subject agreement.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Agr {
    pub person: Person,
    pub plural: bool,
}

impl Agr {
    /// Pronoun agreement; anything else is third singular.
    pub fn guess(np: &str) -> Agr {
        let (person, plural) = match np.trim().to_lowercase().as_str() {
            "i" | "jag" => (Person::P1, false),
            "we" | "vi" => (Person::P1, true),
            "you" | "du" => (Person::P2, false),
            "ni" => (Person::P2, true),
            "they" | "de" | "dom" => (Person::P3, true),
            _ => (Person::P3, false),
        };
        Agr { person, plural }
    }

    fn is_3sg(self) -> bool {
        self.person == Person::P3 && !self.plural
    }
}

/// Inflected forms. Swedish passives are derived from them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerbForms {
    pub lang: Lang,
    pub inf: String,
    /// English third singular; Swedish present.
    pub pres: String,
    pub past: String,
    /// English past participle; Swedish supine.
    pub part: String,
}

const ENG_IRREGULAR: &[(&str, &str, &str, &str)] = &[
    ("be", "is", "was", "been"),
    ("have", "has", "had", "had"),
    ("do", "does", "did", "done"),
    ("go", "goes", "went", "gone"),
    ("come", "comes", "came", "come"),
    ("feel", "feels", "felt", "felt"),
    ("know", "knows", "knew", "known"),
    ("give", "gives", "gave", "given"),
    ("take", "takes", "took", "taken"),
    ("see", "sees", "saw", "seen"),
    ("say", "says", "said", "said"),
    ("make", "makes", "made", "made"),
    ("get", "gets", "got", "got"),
    ("think", "thinks", "thought", "thought"),
    ("tell", "tells", "told", "told"),
    ("find", "finds", "found", "found"),
    ("leave", "leaves", "left", "left"),
    ("keep", "keeps", "kept", "kept"),
    ("write", "writes", "wrote", "written"),
    ("draw", "draws", "drew", "drawn"),
    ("buy", "buys", "bought", "bought"),
    ("run", "runs", "ran", "run"),
];

fn is_vowel(c: char) -> bool {
    "aeiou".contains(c)
}

fn eng_3sg(inf: &str) -> String {
    let ends = |s: &str| inf.ends_with(s);
    if ends("s") || ends("sh") || ends("ch") || ends("x") || ends("z") || ends("o") {
        format!("{inf}es")
    } else if consonant_y(inf) {
        format!("{}ies", &inf[..inf.len() - 1])
    } else {
        format!("{inf}s")
    }
}

fn consonant_y(w: &str) -> bool {
    let cs: Vec<char> = w.chars().collect();
    cs.len() >= 2 && cs[cs.len() - 1] == 'y' && !is_vowel(cs[cs.len() - 2])
}

fn eng_past(inf: &str) -> String {
    if inf.ends_with('e') {
        format!("{inf}d")
    } else if consonant_y(inf) {
        format!("{}ied", &inf[..inf.len() - 1])
    } else {
        format!("{inf}ed")
    }
}

/// English from the infinitive, via the irregular table if listed.
pub fn eng_regular(inf: &str) -> VerbForms {
    if let Some((_, pres, past, part)) = ENG_IRREGULAR.iter().find(|(i, ..)| *i == inf) {
        return VerbForms {
            lang: Lang::Eng,
            inf: inf.into(),
            pres: (*pres).into(),
            past: (*past).into(),
            part: (*part).into(),
        };
    }
    VerbForms {
        lang: Lang::Eng,
        inf: inf.into(),
        pres: eng_3sg(inf),
        past: eng_past(inf),
        part: eng_past(inf),
    }
}

pub fn eng_irregular(inf: &str, past: &str, part: &str) -> VerbForms {
    VerbForms {
        lang: Lang::Eng,
        inf: inf.into(),
        pres: eng_3sg(inf),
        past: past.into(),
        part: part.into(),
    }
}

/// Swedish from one form: an infinitive in `-a`, a present in `-ar`/`-er`
/// or a short verb like `bo`.
pub fn swe_regular(form: &str) -> VerbForms {
    let (inf, pres, past, part) = if let Some(stem) = form.strip_suffix("ar") {
        (
            format!("{stem}a"),
            form.to_string(),
            format!("{stem}ade"),
            format!("{stem}at"),
        )
    } else if let Some(stem) = form.strip_suffix("er") {
        (
            format!("{stem}a"),
            form.to_string(),
            format!("{stem}de"),
            format!("{stem}t"),
        )
    } else if let Some(stem) = form.strip_suffix('a') {
        (
            form.to_string(),
            format!("{form}r"),
            format!("{stem}ade"),
            format!("{stem}at"),
        )
    } else {
        (
            form.to_string(),
            format!("{form}r"),
            format!("{form}dde"),
            format!("{form}tt"),
        )
    };
    VerbForms {
        lang: Lang::Swe,
        inf,
        pres,
        past,
        part,
    }
}

/// Second-conjugation present from the infinitive.
pub fn swe_irregular(inf: &str, past: &str, supine: &str) -> VerbForms {
    let stem = inf.strip_suffix('a').unwrap_or(inf);
    VerbForms {
        lang: Lang::Swe,
        inf: inf.into(),
        pres: format!("{stem}er"),
        past: past.into(),
        part: supine.into(),
    }
}

impl VerbForms {
    pub fn finite(&self, tense: Tense, agr: Agr) -> String {
        match (self.lang, tense) {
            (Lang::Eng, Tense::Pres) if self.inf == "be" => match (agr.person, agr.plural) {
                (Person::P1, false) => "am".into(),
                (_, false) if agr.person == Person::P3 => "is".into(),
                _ => "are".into(),
            },
            (Lang::Eng, Tense::Past) if self.inf == "be" => {
                if agr.plural || agr.person == Person::P2 {
                    "were".into()
                } else {
                    "was".into()
                }
            }
            (Lang::Eng, Tense::Pres) => {
                if agr.is_3sg() {
                    self.pres.clone()
                } else {
                    self.inf.clone()
                }
            }
            (Lang::Swe, Tense::Pres) => self.pres.clone(),
            (_, Tense::Past) => self.past.clone(),
        }
    }

    /// Swedish s-passive.
    pub fn swe_passive(&self, tense: Option<Tense>) -> String {
        match tense {
            None => format!("{}s", self.inf),
            Some(Tense::Past) => format!("{}s", self.past),
            Some(Tense::Pres) => match self.pres.strip_suffix("er") {
                Some(stem) => format!("{stem}s"),
                None => match self.pres.strip_suffix('r') {
                    Some(stem) => format!("{stem}s"),
                    None => format!("{}s", self.pres),
                },
            },
        }
    }
}

/// Verbs taking a bare infinitive.
pub fn takes_bare_infinitive(lang: Lang, inf: &str) -> bool {
    match lang {
        Lang::Eng => [
            "can", "could", "may", "might", "must", "shall", "should", "will", "would",
        ]
        .contains(&inf),
        Lang::Swe => [
            "vilja", "kunna", "skola", "måste", "böra", "få", "låta", "tänka",
        ]
        .contains(&inf),
    }
}

pub fn swe_reflexive(agr: Agr) -> &'static str {
    match (agr.person, agr.plural) {
        (Person::P1, false) => "mig",
        (Person::P1, true) => "oss",
        (Person::P2, false) => "dig",
        (Person::P2, true) => "er",
        (Person::P3, _) => "sig",
    }
}

pub fn eng_reflexive(agr: Agr) -> &'static str {
    match (agr.person, agr.plural) {
        (Person::P1, false) => "myself",
        (Person::P1, true) => "ourselves",
        (Person::P2, false) => "yourself",
        (Person::P2, true) => "yourselves",
        (Person::P3, true) => "themselves",
        (Person::P3, false) => "oneself",
    }
}
