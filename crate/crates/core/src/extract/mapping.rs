//! Scheme-specific tables from raw phrase types to [`PhraseCat`].
//!
//! Tables are line-oriented data (`label<TAB>category<TAB>flags`) so corpus
//! repairs can be audited and overridden without touching code.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::PhraseCat;
use crate::corpus::SourceScheme;

const BUNDLED_PHRASE_STRUCTURE: &str = include_str!("../../data/mapping_phrase_structure.tsv");
const BUNDLED_DEPENDENCY: &str = include_str!("../../data/mapping_dependency.tsv");

/// Outcome of generalizing one raw label.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Generalized {
    Cat {
        cat: PhraseCat,
        marker: Option<String>,
    },
    /// Quotations, unconsidered clause types and unknown labels.
    Unsupported { label: String },
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("mapping line {line}: {message}")]
pub struct MappingError {
    pub line: usize,
    pub message: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Target {
    Cat(PhraseCat),
    Unsupported,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MappingTable {
    rows: BTreeMap<String, Target>,
}

impl MappingTable {
    pub fn parse(text: &str) -> Result<Self, MappingError> {
        let mut rows = BTreeMap::new();
        for (n, line) in text.lines().enumerate() {
            let line = line.trim_end();
            if line.trim().is_empty() || line.trim_start().starts_with('#') {
                continue;
            }
            let cols: Vec<&str> = line.split('\t').map(str::trim).collect();
            let err = |message: String| MappingError {
                line: n + 1,
                message,
            };
            if cols.len() < 2 || cols[0].is_empty() {
                return Err(err("expected `label<TAB>category`".to_string()));
            }
            let flags: Vec<&str> = cols
                .get(2)
                .map(|f| f.split(',').map(str::trim).collect())
                .unwrap_or_default();
            let target = match cols[1] {
                "UNSUPPORTED" => Target::Unsupported,
                // Clausal FEs are S only when a `that` paraphrase is possible.
                "S" if !flags.contains(&"that") => Target::Cat(PhraseCat::Adv),
                other => Target::Cat(
                    other
                        .parse()
                        .map_err(|e: super::types::ParseTagError| err(e.to_string()))?,
                ),
            };
            rows.insert(cols[0].to_string(), target);
        }
        Ok(MappingTable { rows })
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Generalizes `raw`, using `head_form` for `TAG[form]` rows.
    pub fn lookup(&self, raw: &str, head_form: Option<&str>) -> Generalized {
        let raw = raw.trim();
        let unsupported = || Generalized::Unsupported {
            label: raw.to_string(),
        };
        if raw.is_empty() {
            return unsupported();
        }
        let (base, bracket) = match raw.split_once('[') {
            Some((b, rest)) if rest.ends_with(']') => (b, Some(&rest[..rest.len() - 1])),
            _ => (raw, None),
        };
        let marker = bracket.or(head_form).map(|m| m.trim().to_lowercase());

        let mut label = base.to_string();
        loop {
            if let Some(m) = &marker {
                if let Some(t) = self.rows.get(&format!("{label}[{m}]")) {
                    return resolve(*t, None, raw);
                }
            }
            if bracket.is_none() {
                if let Some(t) = self.rows.get(&label) {
                    return resolve(*t, None, raw);
                }
            }
            if let Some(t) = self.rows.get(&format!("{label}[*]")) {
                return resolve(*t, marker.clone(), raw);
            }
            match label.rfind('.') {
                Some(i) => label.truncate(i),
                None => return unsupported(),
            }
        }
    }
}

fn resolve(target: Target, marker: Option<String>, raw: &str) -> Generalized {
    match target {
        Target::Unsupported => Generalized::Unsupported {
            label: raw.to_string(),
        },
        Target::Cat(cat) => Generalized::Cat {
            cat,
            marker: marker.filter(|m| cat == PhraseCat::Adv && !m.is_empty()),
        },
    }
}

/// One table per annotation scheme.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mappings {
    pub phrase_structure: MappingTable,
    pub dependency: MappingTable,
}

impl Mappings {
    /// The tables shipped with the crate.
    pub fn bundled() -> &'static Mappings {
        static BUNDLED: OnceLock<Mappings> = OnceLock::new();
        BUNDLED.get_or_init(|| Mappings {
            phrase_structure: MappingTable::parse(BUNDLED_PHRASE_STRUCTURE)
                .expect("bundled phrase-structure table"),
            dependency: MappingTable::parse(BUNDLED_DEPENDENCY).expect("bundled dependency table"),
        })
    }

    pub fn table(&self, scheme: SourceScheme) -> &MappingTable {
        match scheme {
            SourceScheme::PhraseStructure => &self.phrase_structure,
            SourceScheme::Dependency => &self.dependency,
        }
    }

    pub fn generalize(
        &self,
        raw: &str,
        scheme: SourceScheme,
        head_form: Option<&str>,
    ) -> Generalized {
        // Bracketed PT labels carry their own marker; head forms only apply to dependency heads.
        let head = match scheme {
            SourceScheme::PhraseStructure => None,
            SourceScheme::Dependency => head_form,
        };
        self.table(scheme).lookup(raw, head)
    }
}

impl Default for Mappings {
    fn default() -> Self {
        Mappings::bundled().clone()
    }
}

/// Generalizes with the bundled tables.
pub fn generalize_cat(raw: &str, scheme: SourceScheme, head_form: Option<&str>) -> Generalized {
    Mappings::bundled().generalize(raw, scheme, head_form)
}
