//! Parser for the phrase-structure dialect: `<sentence>` with `<text>` and
//! `<annotationSet>`s whose layers (`FE`, `GF`, `PT`, `Target`, and a POS
//! layer such as `BNC` or `PENN`) carry `<label start end name>` elements.

use std::collections::BTreeMap;

use roxmltree::{Document, Node};

use super::core_index::core_type_is_core;
use super::{
    upos_for_lu_suffix, words_with_spans, AnnotatedSentence, Diagnostic, FESpan, IngestError,
    ParseOptions, ParsedCorpus, RejectedSentence, SourceScheme, Span, TargetToken,
};

const POS_LAYERS: &[&str] = &["BNC", "PENN", "POS"];

#[derive(Debug, Clone)]
struct Label {
    name: String,
    span: Option<Span>,
}

/// Parses one XML document. Sentences that cannot be represented are listed
/// in [`ParsedCorpus::rejected`]; only malformed XML is an error.
pub fn parse_phrase_structure_corpus(
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
            .attribute("ID")
            .or(sentence.attribute("id"))
            .map(str::to_string)
            .unwrap_or_else(|| format!("s{}", n + 1));
        let sid = format!("{source_id}#{sid}");
        parse_sentence(sentence, &sid, opts, &mut out);
    }
    Ok(out)
}

fn parse_sentence(sentence: Node, sid: &str, opts: &ParseOptions, out: &mut ParsedCorpus) {
    let text: String = sentence
        .children()
        .find(|n| n.has_tag_name("text"))
        .map(|t| {
            t.descendants()
                .filter(|d| d.is_text())
                .filter_map(|d| d.text())
                .collect()
        })
        .unwrap_or_default();

    let sets: Vec<Node> = sentence
        .children()
        .filter(|n| n.has_tag_name("annotationSet"))
        .collect();

    let mut pos_tags: BTreeMap<Span, String> = BTreeMap::new();
    for set in &sets {
        for layer in layers(*set) {
            if POS_LAYERS.contains(&layer.0.as_str()) {
                for label in layer.1 {
                    if let Some(span) = label.span {
                        pos_tags.entry(span).or_insert(label.name);
                    }
                }
            }
        }
    }

    let with_target: Vec<Node> = sets
        .iter()
        .copied()
        .filter(|s| {
            layers(*s)
                .iter()
                .any(|(name, labels)| name == "Target" && !labels.is_empty())
        })
        .collect();
    let emitted: Vec<Node> = if with_target.is_empty() {
        // A set with FEs but no target is kept so the gap shows up as a diagnostic.
        sets.iter()
            .copied()
            .filter(|s| layers(*s).iter().any(|(name, _)| name == "FE"))
            .take(1)
            .collect()
    } else {
        with_target
    };
    if emitted.is_empty() {
        out.rejected.push(RejectedSentence {
            source_id: sid.to_string(),
            reason: "no annotation set with a target or FE layer".to_string(),
        });
        return;
    }

    let multi = emitted.len() > 1;
    for (i, set) in emitted.into_iter().enumerate() {
        let id = if multi {
            format!(
                "{sid}/{}",
                set.attribute("ID")
                    .map(str::to_string)
                    .unwrap_or((i + 1).to_string())
            )
        } else {
            sid.to_string()
        };
        out.sentences
            .push(build_sentence(sentence, set, &id, &text, &pos_tags, opts));
    }
}

fn build_sentence(
    sentence: Node,
    set: Node,
    id: &str,
    text: &str,
    pos_tags: &BTreeMap<Span, String>,
    opts: &ParseOptions,
) -> AnnotatedSentence {
    let mut diagnostics = Vec::new();
    let lex_unit = sentence.ancestors().find(|a| a.has_tag_name("lexUnit"));

    let frame = set
        .attribute("frameName")
        .or(sentence.attribute("frame"))
        .or(sentence.attribute("frameName"))
        .or(lex_unit.and_then(|l| l.attribute("frame")))
        .map(str::to_string)
        .or(opts.default_frame.clone())
        .unwrap_or_default();
    if frame.is_empty() {
        diagnostics.push(Diagnostic::MissingFrame);
    }

    let lu_name = set
        .attribute("luName")
        .or(sentence.attribute("luName"))
        .or(lex_unit.and_then(|l| l.attribute("name")))
        .unwrap_or_default();
    let (lu_lemma, lu_pos) = match lu_name.rsplit_once('.') {
        Some((lemma, suffix)) => (lemma.to_string(), upos_for_lu_suffix(suffix).to_string()),
        None => (
            lu_name.to_string(),
            lex_unit
                .and_then(|l| l.attribute("POS"))
                .map(upos_for_lu_suffix)
                .unwrap_or("X")
                .to_string(),
        ),
    };

    let header_core = header_core_types(lex_unit);
    let all_layers = layers(set);
    let layer = |name: &str| -> Vec<Label> {
        all_layers
            .iter()
            .filter(|(n, _)| n == name)
            .flat_map(|(_, l)| l.clone())
            .collect()
    };
    let fe_labels = layer("FE");
    let gf_labels = layer("GF");
    let pt_labels = layer("PT");
    let target_labels = layer("Target");

    let len = text.chars().count();
    let check_bounds = |what: &str, span: Span, diagnostics: &mut Vec<Diagnostic>| {
        if span.start > span.end || span.end >= len {
            diagnostics.push(Diagnostic::SpanOutOfBounds {
                what: what.to_string(),
                start: span.start,
                end: span.end,
            });
        }
    };

    let mut target_span: Vec<Span> = target_labels.iter().filter_map(|l| l.span).collect();
    target_span.sort();
    target_span.dedup();
    if target_span.is_empty() {
        diagnostics.push(Diagnostic::MissingTarget);
    }
    for span in &target_span {
        check_bounds("Target", *span, &mut diagnostics);
    }

    let mut gf_used = vec![false; gf_labels.len()];
    let mut pt_used = vec![false; pt_labels.len()];
    let mut fe_spans = Vec::new();
    for fe in &fe_labels {
        let is_core = header_core
            .get(&fe.name)
            .copied()
            .or_else(|| opts.core_index.is_core(&frame, &fe.name))
            .unwrap_or(true);
        if fe.name.trim().is_empty() {
            diagnostics.push(Diagnostic::EmptyFEName);
        }
        let Some(span) = fe.span else {
            fe_spans.push(FESpan::null_instantiated(&fe.name, is_core));
            continue;
        };
        check_bounds(&fe.name, span, &mut diagnostics);
        let gf = join_label(
            &fe.name,
            span,
            "GF",
            &gf_labels,
            &mut gf_used,
            &mut diagnostics,
        );
        let pt = join_label(
            &fe.name,
            span,
            "PT",
            &pt_labels,
            &mut pt_used,
            &mut diagnostics,
        );
        match (pt, gf) {
            (None, None) => fe_spans.push(FESpan::null_instantiated(&fe.name, is_core)),
            (None, Some(_)) => {
                diagnostics.push(Diagnostic::MissingPhraseType {
                    fe: fe.name.clone(),
                });
                fe_spans.push(FESpan::null_instantiated(&fe.name, is_core));
            }
            (Some(pt), gf) => fe_spans.push(FESpan {
                fe_name: fe.name.clone(),
                span: Some(span),
                raw_phrase_type: Some(pt),
                raw_gf: gf,
                head_form: None,
                is_core,
            }),
        }
    }
    for (labels, used, layer_name) in [(&gf_labels, &gf_used, "GF"), (&pt_labels, &pt_used, "PT")] {
        for (label, used) in labels.iter().zip(used) {
            if let (false, Some(span)) = (used, label.span) {
                diagnostics.push(Diagnostic::UnreconciledLayers {
                    layer: layer_name.to_string(),
                    label: label.name.clone(),
                    start: span.start,
                    end: span.end,
                });
            }
        }
    }

    let mut target_tokens = Vec::new();
    for span in &target_span {
        let Some(inner) = slice_chars(text, *span) else {
            continue;
        };
        for (word_span, form) in words_with_spans(&inner) {
            let abs = Span::new(span.start + word_span.start, span.start + word_span.end);
            target_tokens.push(TargetToken {
                span: abs,
                form,
                tag: pos_tags.get(&abs).cloned(),
                lemma: None,
            });
        }
    }

    AnnotatedSentence {
        source_id: id.to_string(),
        scheme: SourceScheme::PhraseStructure,
        language: opts.language.clone(),
        text: text.to_string(),
        frame,
        lu_lemma,
        lu_pos,
        target_span,
        target_tokens,
        fe_spans,
        diagnostics,
    }
}

/// Finds the GF or PT label for an FE span: exact match first, then a
/// near miss that is repaired in favour of the FE span.
fn join_label(
    fe: &str,
    span: Span,
    layer: &str,
    labels: &[Label],
    used: &mut [bool],
    diagnostics: &mut Vec<Diagnostic>,
) -> Option<String> {
    let exact = labels
        .iter()
        .enumerate()
        .find(|(i, l)| !used[*i] && l.span == Some(span));
    if let Some((i, l)) = exact {
        used[i] = true;
        return Some(l.name.clone());
    }
    let near = labels
        .iter()
        .enumerate()
        .find(|(i, l)| !used[*i] && l.span.is_some_and(|s| s.near(&span)));
    if let Some((i, l)) = near {
        used[i] = true;
        diagnostics.push(Diagnostic::SpanMismatch {
            fe: fe.to_string(),
            layer: layer.to_string(),
        });
        return Some(l.name.clone());
    }
    None
}

fn layers(set: Node) -> Vec<(String, Vec<Label>)> {
    set.children()
        .filter(|n| n.has_tag_name("layer"))
        .filter(|n| n.attribute("rank").is_none_or(|r| r.trim() == "1"))
        .map(|layer| {
            let name = layer.attribute("name").unwrap_or_default().to_string();
            let labels = layer
                .children()
                .filter(|n| n.has_tag_name("label"))
                .map(|l| Label {
                    name: l.attribute("name").unwrap_or_default().to_string(),
                    span: match (
                        l.attribute("start").and_then(|s| s.trim().parse().ok()),
                        l.attribute("end").and_then(|s| s.trim().parse().ok()),
                    ) {
                        (Some(start), Some(end)) => Some(Span::new(start, end)),
                        _ => None,
                    },
                })
                .collect();
            (name, labels)
        })
        .collect()
}

fn header_core_types(lex_unit: Option<Node>) -> BTreeMap<String, bool> {
    let mut out = BTreeMap::new();
    let Some(lu) = lex_unit else {
        return out;
    };
    for header in lu.children().filter(|n| n.has_tag_name("header")) {
        for fe in header.descendants().filter(|n| n.has_tag_name("FE")) {
            if let (Some(name), Some(kind)) = (
                fe.attribute("name"),
                fe.attribute("type").or(fe.attribute("coreType")),
            ) {
                out.insert(name.to_string(), core_type_is_core(kind));
            }
        }
    }
    out
}

fn slice_chars(text: &str, span: Span) -> Option<String> {
    let len = text.chars().count();
    if span.start > span.end || span.end >= len {
        return None;
    }
    Some(text.chars().skip(span.start).take(span.width()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    const TRADERS: &str = r#"<sentence>
  <text>Traders in the city want a change.</text>
  <annotationSet>
    <layer rank="1" name="BNC">
      <label start="0" end="6" name="NP0"/>
      <label start="20" end="23" name="VVB"/>
      <label start="25" end="25" name="AT0"/>
    </layer>
  </annotationSet>
  <annotationSet status="MANUAL">
    <layer rank="1" name="FE">
      <label start="0" end="18" name="Experiencer"/>
      <label start="25" end="32" name="Event"/>
    </layer>
    <layer rank="1" name="GF">
      <label start="0" end="18" name="Ext"/>
      <label start="25" end="32" name="Obj"/>
    </layer>
    <layer rank="1" name="PT">
      <label start="0" end="18" name="NP"/>
      <label start="25" end="32" name="NP"/>
    </layer>
    <layer rank="1" name="Target">
      <label start="20" end="23" name="Target"/>
    </layer>
  </annotationSet>
</sentence>"#;

    fn opts() -> ParseOptions {
        ParseOptions {
            language: "eng".into(),
            default_frame: Some("Desiring".into()),
            ..ParseOptions::default()
        }
    }

    #[test]
    fn traders_sentence() {
        let c = parse_phrase_structure_corpus(TRADERS, "t", &opts()).unwrap();
        assert_eq!(c.sentences.len(), 1);
        let s = &c.sentences[0];
        assert_eq!(s.target_span, vec![Span::new(20, 23)]);
        assert_eq!(s.target_tokens[0].tag.as_deref(), Some("VVB"));
        assert_eq!(s.fe_spans.len(), 2);
        assert_eq!(
            s.slice(s.fe_spans[0].span.unwrap()).unwrap(),
            "Traders in the city"
        );
        assert_eq!(s.fe_spans[1].raw_gf.as_deref(), Some("Obj"));
        assert!(s.diagnostics.is_empty());
    }

    #[test]
    fn near_miss_is_repaired_and_flagged() {
        let xml = TRADERS.replace(
            r#"<label start="25" end="32" name="Obj"/>"#,
            r#"<label start="25" end="31" name="Obj"/>"#,
        );
        let c = parse_phrase_structure_corpus(&xml, "t", &opts()).unwrap();
        let s = &c.sentences[0];
        assert_eq!(s.fe_spans[1].span, Some(Span::new(25, 32)));
        assert_eq!(s.fe_spans[1].raw_gf.as_deref(), Some("Obj"));
        assert!(matches!(s.diagnostics[0], Diagnostic::SpanMismatch { .. }));
    }

    #[test]
    fn malformed_xml_names_source() {
        let err = parse_phrase_structure_corpus("<sentence>", "doc7", &opts()).unwrap_err();
        assert!(err.to_string().starts_with("doc7:"));
    }
}
