use std::collections::BTreeMap;

use roxmltree::Document;

use super::IngestError;

/// Core-ness of FEs per frame.
///
/// Filled from `frame<TAB>fe<TAB>coreType` lines or from frame definition
/// XML (`<frame name=..><FE name=.. coreType=..>`). Unknown FEs count as core.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CoreIndex {
    entries: BTreeMap<(String, String), bool>,
}

impl CoreIndex {
    pub fn new() -> Self {
        CoreIndex::default()
    }

    pub fn insert(&mut self, frame: &str, fe: &str, is_core: bool) {
        self.entries
            .insert((frame.to_string(), fe.to_string()), is_core);
    }

    pub fn is_core(&self, frame: &str, fe: &str) -> Option<bool> {
        self.entries
            .get(&(frame.to_string(), fe.to_string()))
            .copied()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Reads tab-separated `frame fe coreType` lines. `#` starts a comment.
    pub fn from_tsv(text: &str) -> Self {
        let mut index = CoreIndex::new();
        for (n, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let cols: Vec<&str> = line.split('\t').map(str::trim).collect();
            if cols.len() < 3 {
                log::warn!("core index line {}: expected 3 columns", n + 1);
                continue;
            }
            index.insert(cols[0], cols[1], core_type_is_core(cols[2]));
        }
        index
    }

    /// Reads every `<frame>` element of a frame definition document.
    pub fn from_frame_xml(xml: &str, source_id: &str) -> Result<Self, IngestError> {
        let doc = Document::parse(xml).map_err(|e| IngestError::MalformedXml {
            source_id: source_id.to_string(),
            message: e.to_string(),
        })?;
        let mut index = CoreIndex::new();
        for frame in doc.descendants().filter(|n| n.has_tag_name("frame")) {
            let Some(name) = frame.attribute("name") else {
                continue;
            };
            for fe in frame.children().filter(|n| n.has_tag_name("FE")) {
                if let (Some(fe_name), Some(kind)) = (
                    fe.attribute("name"),
                    fe.attribute("coreType").or(fe.attribute("type")),
                ) {
                    index.insert(name, fe_name, core_type_is_core(kind));
                }
            }
        }
        Ok(index)
    }

    pub fn merge(&mut self, other: CoreIndex) {
        self.entries.extend(other.entries);
    }
}

/// `Core` and `Core-Unexpressed` are core. Peripheral and extra-thematic are not.
pub(crate) fn core_type_is_core(kind: &str) -> bool {
    let k = kind.trim().to_ascii_lowercase();
    k == "core" || k == "core-unexpressed" || k == "c"
}
