//! Versioned on-disk artifacts. JSON artifacts wrap their payload in an
//! envelope; text artifacts carry the same facts in a leading comment line.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum ArtifactError {
    #[error("{stage}: missing input artifact {}", .path.display())]
    Missing { stage: String, path: PathBuf },
    #[error(
        "{}: schema version {found}, this build reads {expected}; re-run the `{producer}` stage to regenerate it",
        .path.display()
    )]
    SchemaMismatch {
        path: PathBuf,
        found: u32,
        expected: u32,
        producer: String,
    },
    #[error("{}: expected a `{expected}` artifact, found `{found}`", .path.display())]
    WrongKind {
        path: PathBuf,
        expected: String,
        found: String,
    },
    #[error("{}: {source}", .path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{}: {source}", .path.display())]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
}

/// Envelope around every JSON artifact.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Artifact<T> {
    pub schema_version: u32,
    pub kind: String,
    /// Stage that wrote it.
    pub producer: String,
    /// Language code → settings the data was produced with.
    pub settings: BTreeMap<String, String>,
    pub data: T,
}

impl<T> Artifact<T> {
    pub fn new(kind: &str, producer: &str, settings: BTreeMap<String, String>, data: T) -> Self {
        Artifact {
            schema_version: SCHEMA_VERSION,
            kind: kind.into(),
            producer: producer.into(),
            settings,
            data,
        }
    }
}

#[derive(Deserialize)]
struct Header {
    schema_version: u32,
    kind: String,
    #[serde(default)]
    producer: String,
}

fn io(path: &Path) -> impl FnOnce(std::io::Error) -> ArtifactError + '_ {
    move |source| ArtifactError::Io {
        path: path.to_path_buf(),
        source,
    }
}

/// Writes text, creating parent directories.
pub fn write_text(path: &Path, text: &str) -> Result<(), ArtifactError> {
    if let Some(dir) = path.parent() {
        std::fs::create_dir_all(dir).map_err(io(dir))?;
    }
    std::fs::write(path, text).map_err(io(path))
}

pub fn write_artifact<T: Serialize>(path: &Path, a: &Artifact<T>) -> Result<(), ArtifactError> {
    let mut text = serde_json::to_string_pretty(a).map_err(|source| ArtifactError::Json {
        path: path.to_path_buf(),
        source,
    })?;
    text.push('\n');
    write_text(path, &text)
}

/// Reads an artifact, checking kind and schema version first.
pub fn read_artifact<T: DeserializeOwned>(
    path: &Path,
    kind: &str,
    stage: &str,
) -> Result<Artifact<T>, ArtifactError> {
    if !path.exists() {
        return Err(ArtifactError::Missing {
            stage: stage.into(),
            path: path.to_path_buf(),
        });
    }
    let text = std::fs::read_to_string(path).map_err(io(path))?;
    let json = |source| ArtifactError::Json {
        path: path.to_path_buf(),
        source,
    };
    let header: Header = serde_json::from_str(&text).map_err(json)?;
    if header.schema_version != SCHEMA_VERSION {
        return Err(ArtifactError::SchemaMismatch {
            path: path.to_path_buf(),
            found: header.schema_version,
            expected: SCHEMA_VERSION,
            producer: if header.producer.is_empty() {
                kind.to_string()
            } else {
                header.producer
            },
        });
    }
    if header.kind != kind {
        return Err(ArtifactError::WrongKind {
            path: path.to_path_buf(),
            expected: kind.into(),
            found: header.kind,
        });
    }
    serde_json::from_str(&text).map_err(json)
}

/// `schema 1; settings eng=3.B swe=2.B`
pub fn provenance_line(settings: &BTreeMap<String, String>) -> String {
    let s: Vec<String> = settings.iter().map(|(l, s)| format!("{l}={s}")).collect();
    format!("schema {SCHEMA_VERSION}; settings {}", s.join(" "))
}

/// Prefixes a TSV body with a `#` provenance comment.
pub fn tsv_with_provenance(settings: &BTreeMap<String, String>, body: &str) -> String {
    format!("# {}\n{body}", provenance_line(settings))
}
