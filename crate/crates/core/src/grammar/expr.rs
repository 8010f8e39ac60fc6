//! Linearization expressions: a tiny applicative subset of the GF term
//! language, enough for generated `lin` rules.

use std::fmt;

use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    /// `head arg1 arg2 ...`; a bare identifier has no arguments.
    App(String, Vec<Expr>),
    Str(String),
    /// `variants {a | b}`
    Variants(Vec<Expr>),
}

impl Expr {
    pub fn ident(name: impl Into<String>) -> Expr {
        Expr::App(name.into(), Vec::new())
    }

    pub fn app(head: impl Into<String>, args: Vec<Expr>) -> Expr {
        Expr::App(head.into(), args)
    }

    pub fn string(s: impl Into<String>) -> Expr {
        Expr::Str(s.into())
    }

    /// `fromMaybe Cat emptyCat x`
    pub fn from_maybe(cat: &str, param: &str) -> Expr {
        Expr::app(
            "fromMaybe",
            vec![
                Expr::ident(cat),
                Expr::ident(format!("empty{cat}")),
                Expr::ident(param),
            ],
        )
    }

    fn is_atom(&self) -> bool {
        match self {
            Expr::App(_, args) => args.is_empty(),
            Expr::Str(_) | Expr::Variants(_) => true,
        }
    }

    pub fn parse(src: &str) -> Result<Expr, ExprError> {
        let tokens = tokenize(src)?;
        let mut p = Parser { tokens, pos: 0 };
        let e = p.expr()?;
        if p.pos != p.tokens.len() {
            return Err(ExprError(format!("unexpected `{}`", p.tokens[p.pos])));
        }
        Ok(e)
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::App(head, args) => {
                f.write_str(head)?;
                for a in args {
                    if a.is_atom() {
                        write!(f, " {a}")?;
                    } else {
                        write!(f, " ({a})")?;
                    }
                }
                Ok(())
            }
            Expr::Str(s) => {
                f.write_str("\"")?;
                for c in s.chars() {
                    match c {
                        '"' => f.write_str("\\\"")?,
                        '\\' => f.write_str("\\\\")?,
                        c => write!(f, "{c}")?,
                    }
                }
                f.write_str("\"")
            }
            Expr::Variants(items) => {
                f.write_str("variants {")?;
                for (i, e) in items.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" | ")?;
                    }
                    write!(f, "{e}")?;
                }
                f.write_str("}")
            }
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("expression: {0}")]
pub struct ExprError(pub String);

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Str(String),
    Open,
    Close,
    LBrace,
    RBrace,
    Bar,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => f.write_str(s),
            Tok::Str(s) => write!(f, "\"{s}\""),
            Tok::Open => f.write_str("("),
            Tok::Close => f.write_str(")"),
            Tok::LBrace => f.write_str("{"),
            Tok::RBrace => f.write_str("}"),
            Tok::Bar => f.write_str("|"),
        }
    }
}

pub(crate) fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\'' || c == '.'
}

fn tokenize(src: &str) -> Result<Vec<Tok>, ExprError> {
    let mut out = Vec::new();
    let mut chars = src.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            c if c.is_whitespace() => {
                chars.next();
            }
            '(' => {
                chars.next();
                out.push(Tok::Open);
            }
            ')' => {
                chars.next();
                out.push(Tok::Close);
            }
            '{' => {
                chars.next();
                out.push(Tok::LBrace);
            }
            '}' => {
                chars.next();
                out.push(Tok::RBrace);
            }
            '|' => {
                chars.next();
                out.push(Tok::Bar);
            }
            '"' => {
                chars.next();
                let mut s = String::new();
                loop {
                    match chars.next() {
                        None => return Err(ExprError("unterminated string".into())),
                        Some('"') => break,
                        Some('\\') => match chars.next() {
                            Some(e) => s.push(e),
                            None => return Err(ExprError("unterminated string".into())),
                        },
                        Some(c) => s.push(c),
                    }
                }
                out.push(Tok::Str(s));
            }
            c if is_ident_char(c) => {
                let mut s = String::new();
                while let Some(&c) = chars.peek() {
                    if !is_ident_char(c) {
                        break;
                    }
                    s.push(c);
                    chars.next();
                }
                out.push(Tok::Ident(s));
            }
            other => return Err(ExprError(format!("unexpected character `{other}`"))),
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos)
    }

    fn expect(&mut self, t: Tok) -> Result<(), ExprError> {
        match self.tokens.get(self.pos) {
            Some(x) if *x == t => {
                self.pos += 1;
                Ok(())
            }
            Some(x) => Err(ExprError(format!("expected `{t}`, found `{x}`"))),
            None => Err(ExprError(format!("expected `{t}` at end"))),
        }
    }

    /// application: atom atom*
    fn expr(&mut self) -> Result<Expr, ExprError> {
        match self.peek() {
            Some(Tok::Ident(name)) if name != "variants" => {
                let head = name.clone();
                self.pos += 1;
                let mut args = Vec::new();
                while let Some(t) = self.peek() {
                    match t {
                        Tok::Ident(_) | Tok::Str(_) | Tok::Open => args.push(self.atom()?),
                        _ => break,
                    }
                }
                Ok(Expr::App(head, args))
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<Expr, ExprError> {
        match self.tokens.get(self.pos).cloned() {
            Some(Tok::Ident(name)) if name == "variants" => {
                self.pos += 1;
                self.expect(Tok::LBrace)?;
                let mut items = vec![self.expr()?];
                while self.peek() == Some(&Tok::Bar) {
                    self.pos += 1;
                    items.push(self.expr()?);
                }
                self.expect(Tok::RBrace)?;
                Ok(Expr::Variants(items))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                Ok(Expr::ident(name))
            }
            Some(Tok::Str(s)) => {
                self.pos += 1;
                Ok(Expr::Str(s))
            }
            Some(Tok::Open) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(Tok::Close)?;
                Ok(e)
            }
            Some(t) => Err(ExprError(format!("unexpected `{t}`"))),
            None => Err(ExprError("unexpected end of expression".into())),
        }
    }
}
