//! Textual realization requests.
//!
//! ```text
//! Desiring_VV want_VV_Desiring { Experiencer = "I" ; Event = Motion_V_2 go_V_Motion { Goal = "to a museum" } }
//! ```
//!
//! Arguments are named by FE (`Goal`) or full category (`Goal_Adv`);
//! omitted ones are absent.

use std::fmt;

use super::RealizeError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Arg {
    Text(String),
    Tree(Tree),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tree {
    pub function: String,
    pub verb: String,
    pub args: Vec<(String, Arg)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Str(String),
    Open,
    Close,
    Eq,
    Semi,
}

fn lex(src: &str) -> Result<Vec<Tok>, String> {
    let mut out = Vec::new();
    let mut chars = src.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            c if c.is_whitespace() => {
                chars.next();
            }
            '{' | '}' | '=' | ';' => {
                chars.next();
                out.push(match c {
                    '{' => Tok::Open,
                    '}' => Tok::Close,
                    '=' => Tok::Eq,
                    _ => Tok::Semi,
                });
            }
            '"' => {
                chars.next();
                let mut s = String::new();
                loop {
                    match chars.next() {
                        Some('"') => break,
                        Some('\\') => s.extend(chars.next()),
                        Some(c) => s.push(c),
                        None => return Err("unterminated string".into()),
                    }
                }
                out.push(Tok::Str(s));
            }
            c if c.is_alphanumeric() || c == '_' || c == '\'' => {
                let mut s = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_alphanumeric() || c == '_' || c == '\'' {
                        s.push(c);
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push(Tok::Ident(s));
            }
            other => return Err(format!("unexpected `{other}`")),
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn ident(&mut self, what: &str) -> Result<String, String> {
        match self.next() {
            Some(Tok::Ident(s)) => Ok(s),
            other => Err(format!("expected {what}, found {other:?}")),
        }
    }

    fn tree(&mut self) -> Result<Tree, String> {
        let function = self.ident("a frame function")?;
        let verb = self.ident("a lexical entry")?;
        let mut args = Vec::new();
        if self.peek() == Some(&Tok::Open) {
            self.next();
            loop {
                match self.peek() {
                    Some(Tok::Close) => {
                        self.next();
                        break;
                    }
                    Some(Tok::Semi) => {
                        self.next();
                    }
                    _ => {
                        let label = self.ident("an argument name")?;
                        if self.next() != Some(Tok::Eq) {
                            return Err(format!("expected `=` after `{label}`"));
                        }
                        let value = match self.peek() {
                            Some(Tok::Str(_)) => match self.next() {
                                Some(Tok::Str(s)) => Arg::Text(s),
                                _ => unreachable!(),
                            },
                            _ => Arg::Tree(self.tree()?),
                        };
                        args.push((label, value));
                    }
                }
            }
        }
        Ok(Tree {
            function,
            verb,
            args,
        })
    }
}

impl Tree {
    pub fn parse(src: &str) -> Result<Tree, RealizeError> {
        let err = |m: String| RealizeError::Eval(format!("request: {m}"));
        let mut p = Parser {
            toks: lex(src).map_err(err)?,
            pos: 0,
        };
        let t = p.tree().map_err(err)?;
        if p.pos < p.toks.len() {
            return Err(err(format!("trailing input after `{}`", t.function)));
        }
        Ok(t)
    }
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.function, self.verb)?;
        if self.args.is_empty() {
            return Ok(());
        }
        f.write_str(" {")?;
        for (i, (label, arg)) in self.args.iter().enumerate() {
            if i > 0 {
                f.write_str(" ;")?;
            }
            match arg {
                Arg::Text(s) => write!(
                    f,
                    " {label} = \"{}\"",
                    s.replace('\\', "\\\\").replace('"', "\\\"")
                )?,
                Arg::Tree(t) => write!(f, " {label} = {t}")?,
            }
        }
        f.write_str(" }")
    }
}
