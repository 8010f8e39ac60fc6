//! Parser for the dependency dialect: `<sentence>` holding `<w>` tokens
//! (`pos`/`msd`, `ref`, `dephead`, `deprel`) and `<element name=..>`
//! wrappers for FEs and the LU.

use std::collections::BTreeSet;

use roxmltree::{Document, Node};

use super::core_index::core_type_is_core;
use super::{
    AnnotatedSentence, Diagnostic, FESpan, IngestError, ParseOptions, ParsedCorpus,
    RejectedSentence, SourceScheme, Span, TargetToken,
};

#[derive(Debug, Clone)]
struct Token<'a> {
    node: Node<'a, 'a>,
    form: String,
    tag: Option<String>,
    lemma: Option<String>,
    reference: String,
    dephead: Option<String>,
    deprel: Option<String>,
    span: Span,
}

pub fn parse_dependency_corpus(
    xml: &str,
    source_id: &str,
    opts: &ParseOptions,
) -> Result<ParsedCorpus, IngestError> {
    let doc = Document::parse(xml).map_err(|e| IngestError::MalformedXml {
        source_id: source_id.to_string(),
        message: e.to_string(),
    })?;
    let mut out = ParsedCorpus::default();
    for (n, sentence) in doc
        .descendants()
        .filter(|n| n.has_tag_name("sentence"))
        .enumerate()
    {
        let sid = sentence
            .attribute("id")
            .or(sentence.attribute("ID"))
            .map(str::to_string)
            .unwrap_or_else(|| format!("s{}", n + 1));
        let sid = format!("{source_id}#{sid}");
        match parse_sentence(sentence, &sid, opts) {
            Ok(s) => out.sentences.push(s),
            Err(reason) => out.rejected.push(RejectedSentence {
                source_id: sid,
                reason,
            }),
        }
    }
    Ok(out)
}

fn parse_sentence(
    sentence: Node,
    sid: &str,
    opts: &ParseOptions,
) -> Result<AnnotatedSentence, String> {
    let mut tokens: Vec<Token> = Vec::new();
    let mut offset = 0;
    for (i, w) in sentence
        .descendants()
        .filter(|n| n.has_tag_name("w"))
        .enumerate()
    {
        let form: String = w
            .descendants()
            .filter(|d| d.is_text())
            .filter_map(|d| d.text())
            .collect::<String>()
            .trim()
            .to_string();
        let width = form.chars().count().max(1);
        let span = Span::new(offset, offset + width - 1);
        offset += width + 1;
        let lemma = w.attribute("lemma").and_then(clean_lemma);
        tokens.push(Token {
            node: w,
            form,
            tag: w
                .attribute("msd")
                .or(w.attribute("pos"))
                .map(str::to_string),
            lemma,
            reference: w
                .attribute("ref")
                .map(str::to_string)
                .unwrap_or_else(|| (i + 1).to_string()),
            dephead: w
                .attribute("dephead")
                .map(str::trim)
                .filter(|h| !h.is_empty())
                .map(str::to_string),
            deprel: w.attribute("deprel").map(str::to_string),
            span,
        });
    }
    let text = tokens
        .iter()
        .map(|t| t.form.as_str())
        .collect::<Vec<_>>()
        .join(" ");

    let elements: Vec<Node> = sentence
        .descendants()
        .filter(|n| n.has_tag_name("element"))
        .collect();
    let lu_elements: Vec<Node> = elements
        .iter()
        .copied()
        .filter(|e| e.attribute("name") == Some("LU"))
        .collect();
    if lu_elements.is_empty() {
        return Err("missing LU element".to_string());
    }

    let mut diagnostics = Vec::new();
    let refs: BTreeSet<&str> = tokens.iter().map(|t| t.reference.as_str()).collect();
    for t in &tokens {
        if let Some(h) = &t.dephead {
            if h != "0" && !refs.contains(h.as_str()) {
                diagnostics.push(Diagnostic::DanglingHead {
                    token: t.reference.clone(),
                    head: h.clone(),
                });
            }
        }
    }

    let inside = |e: Node, t: &Token| t.node.ancestors().any(|a| a == e);

    let frame = frame_of(sentence)
        .or(opts.default_frame.clone())
        .unwrap_or_default();
    if frame.is_empty() {
        diagnostics.push(Diagnostic::MissingFrame);
    }

    let lu_tokens: Vec<&Token> = tokens
        .iter()
        .filter(|t| lu_elements.iter().any(|e| inside(*e, t)))
        .collect();
    if lu_tokens.is_empty() {
        diagnostics.push(Diagnostic::MissingTarget);
    }
    let lu_lemma = if !lu_tokens.is_empty() && lu_tokens.iter().all(|t| t.lemma.is_some()) {
        lu_tokens
            .iter()
            .filter_map(|t| t.lemma.clone())
            .collect::<Vec<_>>()
            .join(" ")
    } else if let Some(l) = lu_elements[0].attribute("lemma").and_then(clean_lemma) {
        l.replace('_', " ")
    } else {
        lu_tokens
            .iter()
            .map(|t| t.form.to_lowercase())
            .collect::<Vec<_>>()
            .join(" ")
    };
    let lu_pos = lu_tokens
        .first()
        .and_then(|t| t.tag.as_deref())
        .map(upos_for_suc)
        .unwrap_or("X")
        .to_string();
    let target_span = lu_tokens.iter().map(|t| t.span).collect();
    let target_tokens = lu_tokens
        .iter()
        .map(|t| TargetToken {
            span: t.span,
            form: t.form.clone(),
            tag: t.tag.clone(),
            lemma: t.lemma.clone(),
        })
        .collect();

    let mut fe_spans = Vec::new();
    for e in elements
        .iter()
        .filter(|e| e.attribute("name") != Some("LU"))
    {
        let name = e.attribute("name").unwrap_or_default().to_string();
        if name.trim().is_empty() {
            diagnostics.push(Diagnostic::EmptyFEName);
        }
        let is_core = e
            .attribute("coreType")
            .or(e.attribute("type"))
            .map(core_type_is_core)
            .or_else(|| opts.core_index.is_core(&frame, &name))
            .unwrap_or(true);
        let members: Vec<&Token> = tokens.iter().filter(|t| inside(*e, t)).collect();
        if members.is_empty() {
            fe_spans.push(FESpan::null_instantiated(name, is_core));
            continue;
        }
        let member_refs: BTreeSet<&str> = members.iter().map(|t| t.reference.as_str()).collect();
        let heads: Vec<&&Token> = members
            .iter()
            .filter(|t| match &t.dephead {
                None => true,
                Some(h) => !member_refs.contains(h.as_str()),
            })
            .collect();
        let head = match heads.as_slice() {
            [only] => **only,
            [] => {
                diagnostics.push(Diagnostic::AmbiguousHead { fe: name.clone() });
                members[0]
            }
            [first, ..] => {
                diagnostics.push(Diagnostic::AmbiguousHead { fe: name.clone() });
                **first
            }
        };
        let span = Span::new(
            members.iter().map(|t| t.span.start).min().unwrap_or(0),
            members.iter().map(|t| t.span.end).max().unwrap_or(0),
        );
        fe_spans.push(FESpan {
            fe_name: name,
            span: Some(span),
            raw_phrase_type: Some(head.tag.clone().unwrap_or_else(|| "UNKNOWN".to_string())),
            raw_gf: head.deprel.clone(),
            head_form: Some(head.form.to_lowercase()),
            is_core,
        });
    }

    Ok(AnnotatedSentence {
        source_id: sid.to_string(),
        scheme: SourceScheme::Dependency,
        language: opts.language.clone(),
        text,
        frame,
        lu_lemma,
        lu_pos,
        target_span,
        target_tokens,
        fe_spans,
        diagnostics,
    })
}

/// `|känna|` → `känna`. Multiple alternatives keep the first.
fn clean_lemma(raw: &str) -> Option<String> {
    raw.split('|')
        .map(str::trim)
        .find(|s| !s.is_empty())
        .map(|s| s.split(':').next().unwrap_or(s).to_string())
}

fn frame_of(sentence: Node) -> Option<String> {
    for node in sentence.ancestors() {
        if !node.is_element() {
            continue;
        }
        if let Some(f) = node.attribute("frame") {
            return Some(f.to_string());
        }
        if let Some(id) = node.attribute("id") {
            if let Some(f) = id.strip_prefix("swefn--") {
                return Some(f.to_string());
            }
        }
    }
    None
}

/// Universal POS for a SUC-style tag or msd.
pub(crate) fn upos_for_suc(tag: &str) -> &'static str {
    match tag.split('.').next().unwrap_or(tag) {
        "VB" => "VERB",
        "NN" => "NOUN",
        "PM" => "PROPN",
        "JJ" | "PC" => "ADJ",
        "AB" | "HA" => "ADV",
        "PP" => "ADP",
        "PL" => "ADP",
        "PN" | "HP" => "PRON",
        "DT" | "HD" => "DET",
        "RG" | "RO" => "NUM",
        "KN" => "CCONJ",
        "SN" => "SCONJ",
        "IE" => "PART",
        _ => "X",
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const VILJA: &str = r#"<sentence id="v1">
  <w pos="JJ" ref="1" dephead="2" deprel="DT">Nästa</w>
  <w pos="NN" ref="2" dephead="3" deprel="TA">gång</w>
  <w pos="VB" ref="3" deprel="ROOT">skulle</w>
  <element name="Experiencer">
    <w pos="PN" ref="4" dephead="3" deprel="SS">jag</w>
  </element>
  <element name="LU">
    <w msd="VB.AKT" ref="5" dephead="3" deprel="VG">vilja</w>
  </element>
  <element name="Event">
    <w msd="VB.INF" ref="6" dephead="5" deprel="VG">ha</w>
    <w pos="RG" ref="7" dephead="8" deprel="DT">sju</w>
    <w pos="NN" ref="8" dephead="6" deprel="OO">sångare</w>
  </element>
</sentence>"#;

    #[test]
    fn vilja_sentence() {
        let opts = ParseOptions {
            language: "swe".into(),
            default_frame: Some("Desiring".into()),
            ..ParseOptions::default()
        };
        let c = parse_dependency_corpus(VILJA, "d", &opts).unwrap();
        let s = &c.sentences[0];
        assert_eq!(s.text, "Nästa gång skulle jag vilja ha sju sångare");
        assert_eq!(s.lu_lemma, "vilja");
        assert_eq!(s.lu_pos, "VERB");
        assert_eq!(s.fe_spans[0].raw_phrase_type.as_deref(), Some("PN"));
        assert_eq!(s.fe_spans[0].raw_gf.as_deref(), Some("SS"));
        assert_eq!(s.fe_spans[1].raw_phrase_type.as_deref(), Some("VB.INF"));
        assert_eq!(s.fe_spans[1].head_form.as_deref(), Some("ha"));
        assert_eq!(
            s.slice(s.fe_spans[1].span.unwrap()).unwrap(),
            "ha sju sångare"
        );
        assert!(s.diagnostics.is_empty());
    }

    #[test]
    fn missing_lu_rejects() {
        let xml = VILJA.replace("name=\"LU\"", "name=\"Other\"");
        let c = parse_dependency_corpus(&xml, "d", &ParseOptions::default()).unwrap();
        assert!(c.sentences.is_empty());
        assert_eq!(c.rejected[0].reason, "missing LU element");
    }

    #[test]
    fn dangling_head_is_flagged() {
        let xml = VILJA.replace(r#"dephead="8" deprel="DT""#, r#"dephead="99" deprel="DT""#);
        let c = parse_dependency_corpus(&xml, "d", &ParseOptions::default()).unwrap();
        assert!(c.sentences[0]
            .diagnostics
            .iter()
            .any(|d| matches!(d, Diagnostic::DanglingHead { head, .. } if head == "99")));
    }
}
