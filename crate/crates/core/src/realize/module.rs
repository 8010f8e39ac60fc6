//! Reader for the generated module dialect: `fun`, `cat`, `lincat`, `oper`
//! and `lin` judgements inside `header = ... { ... }`.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::grammar::{Expr, ExprError};

#[derive(Debug, Error)]
pub enum ModuleError {
    #[error("{module}: {message}")]
    Syntax { module: String, message: String },
    #[error("{module}: {source}")]
    Expr {
        module: String,
        #[source]
        source: ExprError,
    },
}

/// Body of a `lin` judgement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinBody {
    Record(Vec<(String, Expr)>),
    Expr(Expr),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinRule {
    pub name: String,
    pub params: Vec<String>,
    pub body: LinBody,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Module {
    pub name: String,
    pub is_abstract: bool,
    /// `fun` name → argument and result category names.
    pub funs: BTreeMap<String, Vec<String>>,
    pub lins: BTreeMap<String, LinRule>,
}

fn strip_comments(src: &str) -> String {
    let mut out = String::with_capacity(src.len());
    for line in src.lines() {
        let mut in_str = false;
        let mut prev = '\0';
        let mut cut = line.len();
        for (i, c) in line.char_indices() {
            if c == '"' && prev != '\\' {
                in_str = !in_str;
            }
            if !in_str && c == '-' && prev == '-' {
                cut = i - 1;
                break;
            }
            prev = c;
        }
        out.push_str(&line[..cut]);
        out.push('\n');
    }
    out
}

/// Splits on `sep` outside strings, parentheses and braces.
fn split_top(s: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut in_str = false;
    let mut prev = '\0';
    let mut start = 0;
    for (i, c) in s.char_indices() {
        if in_str {
            if c == '"' && prev != '\\' {
                in_str = false;
            }
        } else {
            match c {
                '"' => in_str = true,
                '(' | '{' => depth += 1,
                ')' | '}' => depth -= 1,
                c if c == sep && depth == 0 => {
                    out.push(&s[start..i]);
                    start = i + c.len_utf8();
                }
                _ => {}
            }
        }
        prev = c;
    }
    out.push(&s[start..]);
    out
}

const KEYWORDS: &[&str] = &[
    "fun", "cat", "lin", "lincat", "oper", "param", "flags", "data",
];

pub fn parse_module(src: &str) -> Result<Module, ModuleError> {
    let src = strip_comments(src);
    let open = src.find('{').ok_or_else(|| ModuleError::Syntax {
        module: "?".into(),
        message: "no module body".into(),
    })?;
    let header: Vec<&str> = src[..open].split_whitespace().collect();
    let (is_abstract, name) = match header.as_slice() {
        ["abstract", name, ..] => (true, name.to_string()),
        ["concrete", name, ..] | ["resource", name, ..] => (false, name.to_string()),
        _ => {
            return Err(ModuleError::Syntax {
                module: "?".into(),
                message: format!("unrecognized header `{}`", header.join(" ")),
            })
        }
    };
    let close = src
        .rfind('}')
        .filter(|c| *c > open)
        .ok_or_else(|| ModuleError::Syntax {
            module: name.clone(),
            message: "unterminated module body".into(),
        })?;
    let syntax = |message: String| ModuleError::Syntax {
        module: name.clone(),
        message,
    };
    let mut m = Module {
        name: name.clone(),
        is_abstract,
        ..Module::default()
    };
    let mut keyword = "";
    for stmt in split_top(&src[open + 1..close], ';') {
        let stmt = stmt.trim();
        if stmt.is_empty() {
            continue;
        }
        let (first, rest) = stmt.split_once(char::is_whitespace).unwrap_or((stmt, ""));
        let rest = if KEYWORDS.contains(&first) {
            keyword = KEYWORDS
                .iter()
                .find(|k| **k == first)
                .copied()
                .unwrap_or("");
            rest.trim()
        } else {
            stmt
        };
        match keyword {
            "fun" => {
                let (names, ty) = rest
                    .split_once(':')
                    .ok_or_else(|| syntax(format!("fun without type: `{rest}`")))?;
                let parts: Vec<String> = ty.split("->").map(|p| p.trim().to_string()).collect();
                for n in names.split(',') {
                    m.funs.insert(n.trim().to_string(), parts.clone());
                }
            }
            "lin" => {
                let parts = split_top(rest, '=');
                if parts.len() < 2 {
                    return Err(syntax(format!("lin without `=`: `{rest}`")));
                }
                let lhs: Vec<&str> = parts[0].split_whitespace().collect();
                let (fname, params) = lhs
                    .split_first()
                    .ok_or_else(|| syntax("lin without a name".into()))?;
                let body_src = rest[parts[0].len() + 1..].trim();
                let expr = |s: &str| {
                    Expr::parse(s).map_err(|source| ModuleError::Expr {
                        module: name.clone(),
                        source,
                    })
                };
                let body = if body_src.starts_with('{') && body_src.ends_with('}') {
                    let inner = &body_src[1..body_src.len() - 1];
                    let mut fields = Vec::new();
                    for f in split_top(inner, ';') {
                        let f = f.trim();
                        if f.is_empty() {
                            continue;
                        }
                        let (label, e) = f
                            .split_once('=')
                            .ok_or_else(|| syntax(format!("record field without `=`: `{f}`")))?;
                        fields.push((label.trim().to_string(), expr(e.trim())?));
                    }
                    LinBody::Record(fields)
                } else {
                    LinBody::Expr(expr(body_src)?)
                };
                m.lins.insert(
                    fname.to_string(),
                    LinRule {
                        name: fname.to_string(),
                        params: params.iter().map(|p| p.to_string()).collect(),
                        body,
                    },
                );
            }
            // Declarations the realizer does not need.
            "cat" | "lincat" | "oper" | "param" | "flags" | "data" => {}
            _ => return Err(syntax(format!("statement outside a judgement: `{stmt}`"))),
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_rules_and_funs() {
        let src = r#"-- note
concrete X of Y = CatEng ** open SyntaxEng in {
  lincat Clause = {np : NP ; vp : VP} ;
  oper emptyAdv : Adv = ParadigmsEng.mkAdv "" ;
  lin F a v = { np = fromMaybe NP emptyNP a ; vp = mkVP v } ;
  lin want_V2_Desiring = mkV2 (regV "want") ; -- trailing
}
"#;
        let m = parse_module(src).unwrap();
        assert_eq!(m.name, "X");
        assert_eq!(m.lins.len(), 2);
        let f = &m.lins["F"];
        assert_eq!(f.params, vec!["a", "v"]);
        assert!(matches!(f.body, LinBody::Record(ref r) if r.len() == 2));
        let a = parse_module("abstract Y = Cat ** { fun F : A_NP -> V -> Clause ; }").unwrap();
        assert_eq!(a.funs["F"], vec!["A_NP", "V", "Clause"]);
    }
}
