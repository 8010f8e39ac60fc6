use std::fmt::Write;

use super::ValencePattern;
use crate::extract::Voice;

/// Lines below these counts are folded into a `...` line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SummaryLimits {
    pub min_valence_count: u64,
    pub min_sentence_count: u64,
}

impl Default for SummaryLimits {
    /// Everything shown.
    fn default() -> Self {
        SummaryLimits {
            min_valence_count: 1,
            min_sentence_count: 1,
        }
    }
}

/// Voice → valence pattern → sentence shape tree for one frame.
///
/// ```text
/// Act : 275
///   Event/VP Experiencer/NP.nsubj : 61
///     Experiencer/NP.nsubj Event/VP : 59
/// ```
pub fn summarize(valences: &[ValencePattern], frame: &str, limits: SummaryLimits) -> String {
    let mut out = String::new();
    for voice in [Voice::Act, Voice::Pass] {
        let mut group: Vec<&ValencePattern> = valences
            .iter()
            .filter(|v| v.key.frame == frame && v.key.voice == voice)
            .collect();
        if group.is_empty() {
            continue;
        }
        group.sort_by(|a, b| {
            b.count
                .cmp(&a.count)
                .then_with(|| a.key.fes_line().cmp(&b.key.fes_line()))
        });
        let total: u64 = group.iter().map(|v| v.count).sum();
        let _ = writeln!(out, "{voice} : {total}");
        let mut hidden = false;
        for v in group {
            if v.count < limits.min_valence_count {
                hidden = true;
                continue;
            }
            let _ = writeln!(out, "  {} : {}", v.key.fes_line(), v.count);
            let mut shapes: Vec<_> = v.sentences.iter().collect();
            shapes.sort_by(|a, b| b.count.cmp(&a.count).then_with(|| a.line().cmp(&b.line())));
            let mut shapes_hidden = false;
            for s in shapes {
                if s.count < limits.min_sentence_count {
                    shapes_hidden = true;
                    continue;
                }
                let _ = writeln!(out, "    {} : {}", s.line(), s.count);
            }
            if shapes_hidden {
                out.push_str("    ...\n");
            }
        }
        if hidden {
            out.push_str("  ...\n");
        }
    }
    out
}
