//! A small evaluator for generated concrete modules: enough to run frame
//! functions on toy phrases and read off a sentence.
//!
//! ```text
//! Desiring_V2 (she) (a protector) want_V2_Desiring  ⇒  "she wants a protector"
//! ```

mod module;
mod morph;
mod tree;

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use thiserror::Error;

use crate::extract::{PhraseCat, VerbType};
use crate::grammar::{language_suffix, Expr};

pub use module::{parse_module, LinBody, LinRule, Module, ModuleError};
pub use morph::{Agr, Lang, Person, Tense, VerbForms};
pub use tree::{Arg, Tree};

#[derive(Debug, Error)]
pub enum RealizeError {
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error("reading {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("unknown frame function `{0}`")]
    UnknownFunction(String),
    #[error("unknown lexical entry `{0}`")]
    UnknownVerb(String),
    #[error("`{function}` takes {expected} phrase argument(s), got {got}")]
    Arity {
        function: String,
        expected: usize,
        got: usize,
    },
    #[error("`{function}`: argument `{param}` expects {expected}, got {got}")]
    ArgumentType {
        function: String,
        param: String,
        expected: String,
        got: String,
    },
    #[error("`{function}` expects a {expected} verb, `{verb}` is {got}")]
    VerbType {
        function: String,
        verb: String,
        expected: String,
        got: String,
    },
    #[error("cannot evaluate `{0}`")]
    Eval(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NounPhrase {
    pub surface: String,
    pub agr: Agr,
}

impl NounPhrase {
    pub fn new(surface: &str) -> Self {
        NounPhrase {
            surface: norm(surface),
            agr: Agr::guess(surface),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verb {
    pub forms: VerbForms,
    pub particle: Option<String>,
    pub reflexive: bool,
    /// `None` for a plain intransitive verb.
    pub verb_type: Option<VerbType>,
}

impl Verb {
    fn type_name(&self) -> String {
        self.verb_type.map_or("V".to_string(), |t| t.to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum VpHead {
    Empty,
    Active(Verb),
    Passive(Verb),
}

/// A verb phrase with its complements already rendered.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerbPhrase {
    head: VpHead,
    compls: Vec<String>,
}

impl VerbPhrase {
    pub fn empty() -> Self {
        VerbPhrase {
            head: VpHead::Empty,
            compls: Vec::new(),
        }
    }

    fn push(mut self, s: String) -> Self {
        if !s.is_empty() {
            self.compls.push(s);
        }
        self
    }

    pub fn is_empty(&self) -> bool {
        self.head == VpHead::Empty && self.compls.is_empty()
    }

    /// Verb words, finite when `tense` is given.
    fn verb_words(&self, tense: Option<Tense>, agr: Agr) -> Vec<String> {
        let mut out = Vec::new();
        match &self.head {
            VpHead::Empty => {}
            VpHead::Active(v) => {
                out.push(match tense {
                    Some(t) => v.forms.finite(t, agr),
                    None => v.forms.inf.clone(),
                });
                if v.reflexive {
                    out.push(
                        match v.forms.lang {
                            Lang::Eng => morph::eng_reflexive(agr),
                            Lang::Swe => morph::swe_reflexive(agr),
                        }
                        .to_string(),
                    );
                }
                out.extend(v.particle.clone());
            }
            VpHead::Passive(v) => {
                match v.forms.lang {
                    Lang::Eng => {
                        let be = morph::eng_regular("be");
                        out.push(match tense {
                            Some(t) => be.finite(t, agr),
                            None => "be".into(),
                        });
                        out.push(v.forms.part.clone());
                    }
                    Lang::Swe => out.push(v.forms.swe_passive(tense)),
                }
                out.extend(v.particle.clone());
            }
        }
        out
    }

    fn render(&self, tense: Option<Tense>, agr: Agr) -> String {
        let mut words = self.verb_words(tense, agr);
        words.extend(self.compls.iter().cloned());
        join(words)
    }

    /// Infinitive as the complement of `governor`.
    fn as_complement(&self, governor: &Verb) -> String {
        if self.is_empty() {
            return String::new();
        }
        let inf = self.render(None, Agr::default());
        let lang = governor.forms.lang;
        if self.head == VpHead::Empty || morph::takes_bare_infinitive(lang, &governor.forms.inf) {
            inf
        } else {
            format!("{} {inf}", lang.infinitive_marker())
        }
    }
}

/// `{np : NP ; vp : VP}`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Clause {
    pub np: NounPhrase,
    pub vp: VerbPhrase,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    NP(NounPhrase),
    Adv(String),
    VP(VerbPhrase),
    S(String),
    QS(String),
    Verb(Verb),
    Prep(String),
    Subj(String),
    Str(String),
    /// A category name used as a type argument.
    Cat(String),
    Maybe(Option<Box<Value>>),
}

impl Value {
    pub fn np(s: &str) -> Value {
        Value::NP(NounPhrase::new(s))
    }

    pub fn adv(s: &str) -> Value {
        Value::Adv(norm(s))
    }

    pub fn s(s: &str) -> Value {
        Value::S(norm(s))
    }

    pub fn qs(s: &str) -> Value {
        Value::QS(norm(s))
    }

    /// Phrase of category `cat` from plain text.
    pub fn of_cat(cat: PhraseCat, s: &str) -> Value {
        match cat {
            PhraseCat::NP => Value::np(s),
            PhraseCat::Adv => Value::adv(s),
            PhraseCat::S => Value::s(s),
            PhraseCat::QS => Value::qs(s),
            PhraseCat::VP => Value::VP(VerbPhrase::empty().push(norm(s))),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Value::NP(_) => "NP",
            Value::Adv(_) => "Adv",
            Value::VP(_) => "VP",
            Value::S(_) => "S",
            Value::QS(_) => "QS",
            Value::Verb(_) => "verb",
            Value::Prep(_) => "Prep",
            Value::Subj(_) => "Subj",
            Value::Str(_) => "Str",
            Value::Cat(_) => "type",
            Value::Maybe(_) => "Maybe",
        }
    }

    fn surface(&self) -> String {
        match self {
            Value::NP(np) => np.surface.clone(),
            Value::Adv(s)
            | Value::S(s)
            | Value::QS(s)
            | Value::Str(s)
            | Value::Prep(s)
            | Value::Subj(s) => s.clone(),
            Value::VP(vp) => vp.render(None, Agr::default()),
            Value::Verb(v) => v.forms.inf.clone(),
            Value::Cat(_) => String::new(),
            Value::Maybe(m) => m.as_ref().map(|v| v.surface()).unwrap_or_default(),
        }
    }
}

/// An optional frame-function argument.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MaybePhrase {
    Present(Value),
    Absent,
}

impl MaybePhrase {
    pub fn from_maybe(&self, default: Value) -> Value {
        match self {
            MaybePhrase::Present(v) => v.clone(),
            MaybePhrase::Absent => default,
        }
    }
}

fn join<I: IntoIterator<Item = String>>(words: I) -> String {
    words
        .into_iter()
        .filter(|w| !w.trim().is_empty())
        .collect::<Vec<_>>()
        .join(" ")
}

/// Collapses whitespace runs and trims.
pub fn norm(s: &str) -> String {
    s.split_whitespace().collect::<Vec<_>>().join(" ")
}

/// Subject, inflected verb phrase, then adjuncts.
pub fn combine<S: AsRef<str>>(clause: &Clause, tense: Tense, adjuncts: &[S]) -> String {
    let mut words = vec![
        clause.np.surface.clone(),
        clause.vp.render(Some(tense), clause.np.agr),
    ];
    words.extend(adjuncts.iter().map(|a| norm(a.as_ref())));
    join(words)
}

fn strip_qualifier(name: &str) -> &str {
    name.rsplit('.').next().unwrap_or(name)
}

const MAX_DEPTH: usize = 16;

/// Generated grammar and lexicon for one language.
#[derive(Clone, Debug)]
pub struct Realizer {
    lang: Lang,
    funs: BTreeMap<String, Vec<String>>,
    functions: BTreeMap<String, LinRule>,
    lexicon: BTreeMap<String, Expr>,
    shared_lexicon: BTreeMap<String, Expr>,
}

impl Realizer {
    pub fn new(lang: Lang) -> Self {
        Realizer {
            lang,
            funs: BTreeMap::new(),
            functions: BTreeMap::new(),
            lexicon: BTreeMap::new(),
            shared_lexicon: BTreeMap::new(),
        }
    }

    pub fn lang(&self) -> Lang {
        self.lang
    }

    fn suffix(&self) -> String {
        language_suffix(match self.lang {
            Lang::Eng => "eng",
            Lang::Swe => "swe",
        })
    }

    /// Adds a module. Concrete modules of other languages are ignored.
    pub fn add_module(&mut self, src: &str) -> Result<(), RealizeError> {
        let m = parse_module(src)?;
        if m.is_abstract {
            self.funs.extend(m.funs);
            return Ok(());
        }
        if !m.name.ends_with(&self.suffix()) {
            return Ok(());
        }
        let shared = m.name.starts_with(crate::align::SHARED_LEXICON_NAME);
        for (name, rule) in m.lins {
            match rule.body {
                LinBody::Record(_) => {
                    self.functions.insert(name, rule);
                }
                LinBody::Expr(e) if shared => {
                    self.shared_lexicon.insert(name, e);
                }
                LinBody::Expr(e) => {
                    self.lexicon.insert(name, e);
                }
            }
        }
        Ok(())
    }

    pub fn from_modules(lang: Lang, sources: &[&str]) -> Result<Self, RealizeError> {
        let mut r = Realizer::new(lang);
        for s in sources {
            r.add_module(s)?;
        }
        Ok(r)
    }

    /// Loads every `.gf` file in `dir`.
    pub fn load_dir(dir: &Path, lang: Lang) -> Result<Self, RealizeError> {
        let io = |path: &Path, source| RealizeError::Io {
            path: path.display().to_string(),
            source,
        };
        let mut paths: Vec<_> = std::fs::read_dir(dir)
            .map_err(|e| io(dir, e))?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "gf"))
            .collect();
        paths.sort();
        let mut r = Realizer::new(lang);
        for p in paths {
            let text = std::fs::read_to_string(&p).map_err(|e| io(&p, e))?;
            r.add_module(&text)?;
        }
        Ok(r)
    }

    pub fn functions(&self) -> impl Iterator<Item = &str> {
        self.functions.keys().map(String::as_str)
    }

    /// Phrase categories of a function's FE arguments, from the abstract
    /// declaration, else from parameter names.
    pub fn argument_cats(&self, function: &str) -> Result<Vec<PhraseCat>, RealizeError> {
        let rule = self
            .functions
            .get(function)
            .ok_or_else(|| RealizeError::UnknownFunction(function.into()))?;
        let n = rule.params.len().saturating_sub(1);
        let names: Vec<String> = match self.funs.get(function) {
            Some(ty) if ty.len() >= 2 => ty[..ty.len() - 2].to_vec(),
            _ => rule.params[..n].to_vec(),
        };
        names
            .iter()
            .map(|c| {
                let suffix = c.rsplit('_').next().unwrap_or(c);
                PhraseCat::ALL
                    .iter()
                    .copied()
                    .find(|pc| pc.as_str().eq_ignore_ascii_case(suffix))
                    .ok_or_else(|| RealizeError::Eval(format!("category of `{c}`")))
            })
            .collect()
    }

    /// Argument names of a function: abstract category names such as
    /// `Experiencer_NP`, else the concrete parameter names.
    pub fn argument_labels(&self, function: &str) -> Result<Vec<String>, RealizeError> {
        let rule = self
            .functions
            .get(function)
            .ok_or_else(|| RealizeError::UnknownFunction(function.into()))?;
        Ok(match self.funs.get(function) {
            Some(ty) if ty.len() >= 2 => ty[..ty.len() - 2].to_vec(),
            _ => rule.params[..rule.params.len().saturating_sub(1)].to_vec(),
        })
    }

    /// Evaluates a request tree. A nested tree fills a VP slot with its
    /// verb phrase and an S or QS slot with its sentence.
    pub fn realize_tree(&self, tree: &Tree, tense: Tense) -> Result<Clause, RealizeError> {
        self.tree_at(tree, tense, 0)
    }

    /// [`Realizer::realize_tree`] rendered as a sentence.
    pub fn realize(&self, tree: &Tree, tense: Tense) -> Result<String, RealizeError> {
        Ok(combine::<&str>(
            &self.realize_tree(tree, tense)?,
            tense,
            &[],
        ))
    }

    fn tree_at(&self, tree: &Tree, tense: Tense, depth: usize) -> Result<Clause, RealizeError> {
        if depth > MAX_DEPTH {
            return Err(RealizeError::Eval("request nested too deeply".into()));
        }
        let labels = self.argument_labels(&tree.function)?;
        let cats = self.argument_cats(&tree.function)?;
        let mut args = vec![MaybePhrase::Absent; labels.len()];
        for (name, arg) in &tree.args {
            let fe_part = |l: &str| {
                l.rsplit_once('_')
                    .map(|(fe, _)| fe.to_string())
                    .unwrap_or(l.to_string())
            };
            let i = labels
                .iter()
                .position(|l| l.eq_ignore_ascii_case(name))
                .or_else(|| {
                    labels
                        .iter()
                        .position(|l| fe_part(l).eq_ignore_ascii_case(name))
                })
                .ok_or_else(|| {
                    RealizeError::Eval(format!(
                        "`{}` has no argument `{name}` (arguments: {})",
                        tree.function,
                        labels.join(", ")
                    ))
                })?;
            let value = match arg {
                Arg::Text(s) => Value::of_cat(cats[i], s),
                Arg::Tree(t) => {
                    let c = self.tree_at(t, tense, depth + 1)?;
                    match cats[i] {
                        PhraseCat::VP => Value::VP(c.vp),
                        PhraseCat::S => Value::s(&combine::<&str>(&c, tense, &[])),
                        PhraseCat::QS => Value::qs(&combine::<&str>(&c, tense, &[])),
                        other => {
                            return Err(RealizeError::ArgumentType {
                                function: tree.function.clone(),
                                param: labels[i].clone(),
                                expected: other.to_string(),
                                got: "a clause".into(),
                            })
                        }
                    }
                }
            };
            args[i] = MaybePhrase::Present(value);
        }
        self.apply(&tree.function, &args, &tree.verb)
    }

    /// Evaluates a lexical entry, through the shared lexicon if it has one.
    pub fn verb(&self, id: &str) -> Result<Verb, RealizeError> {
        let v = if let Some(e) = self.shared_lexicon.get(id) {
            self.eval(e, &BTreeMap::new(), 0)?
        } else {
            self.lexical(id, 0)?
        };
        match v {
            Value::Verb(v) => Ok(v),
            other => Err(RealizeError::Eval(format!(
                "`{id}` is a {}, not a verb",
                other.kind()
            ))),
        }
    }

    fn lexical(&self, id: &str, depth: usize) -> Result<Value, RealizeError> {
        let e = self
            .lexicon
            .get(id)
            .ok_or_else(|| RealizeError::UnknownVerb(id.into()))?;
        self.eval(e, &BTreeMap::new(), depth + 1)
    }

    /// Runs a frame function on optional phrases and a lexical verb.
    pub fn apply(
        &self,
        function: &str,
        args: &[MaybePhrase],
        verb: &str,
    ) -> Result<Clause, RealizeError> {
        let rule = self
            .functions
            .get(function)
            .ok_or_else(|| RealizeError::UnknownFunction(function.into()))?;
        let expected = rule.params.len().saturating_sub(1);
        if args.len() != expected {
            return Err(RealizeError::Arity {
                function: function.into(),
                expected,
                got: args.len(),
            });
        }
        let cats = self.argument_cats(function)?;
        for ((param, cat), arg) in rule.params.iter().zip(&cats).zip(args) {
            if let MaybePhrase::Present(v) = arg {
                if v.kind() != cat.as_str() {
                    return Err(RealizeError::ArgumentType {
                        function: function.into(),
                        param: param.clone(),
                        expected: cat.to_string(),
                        got: v.kind().into(),
                    });
                }
            }
        }
        let v = self.verb(verb)?;
        if let Some(ty) = self.funs.get(function).filter(|t| t.len() >= 2) {
            let expected = &ty[ty.len() - 2];
            let declared = self
                .funs
                .get(verb)
                .and_then(|t| t.first().cloned())
                .unwrap_or_else(|| v.type_name());
            if &declared != expected {
                return Err(RealizeError::VerbType {
                    function: function.into(),
                    verb: verb.into(),
                    expected: expected.clone(),
                    got: declared,
                });
            }
        }
        let mut env = BTreeMap::new();
        for (param, arg) in rule.params.iter().zip(args) {
            let m = match arg {
                MaybePhrase::Present(v) => Value::Maybe(Some(Box::new(v.clone()))),
                MaybePhrase::Absent => Value::Maybe(None),
            };
            env.insert(param.clone(), m);
        }
        if let Some(vp) = rule.params.last() {
            env.insert(vp.clone(), Value::Verb(v));
        }
        let LinBody::Record(fields) = &rule.body else {
            return Err(RealizeError::Eval(format!(
                "`{function}` is not a clause rule"
            )));
        };
        let mut np = None;
        let mut vp = None;
        for (label, e) in fields {
            match (label.as_str(), self.eval(e, &env, 0)?) {
                ("np", Value::NP(x)) => np = Some(x),
                ("vp", Value::VP(x)) => vp = Some(x),
                (l, v) => {
                    return Err(RealizeError::Eval(format!(
                        "field `{l}` evaluated to {}",
                        v.kind()
                    )))
                }
            }
        }
        Ok(Clause {
            np: np.unwrap_or_else(|| NounPhrase::new("")),
            vp: vp.unwrap_or_else(VerbPhrase::empty),
        })
    }

    fn constant(&self, name: &str, depth: usize) -> Result<Value, RealizeError> {
        Ok(match strip_qualifier(name) {
            "emptyNP" => Value::np(""),
            "emptyAdv" => Value::adv(""),
            "emptyVP" => Value::VP(VerbPhrase::empty()),
            "emptyS" => Value::s(""),
            "emptyQS" => Value::qs(""),
            "by8agent_Prep" => Value::Prep(self.lang.agent_prep().into()),
            "that_Subj" => Value::Subj(self.lang.that().into()),
            c @ ("NP" | "Adv" | "VP" | "S" | "QS" | "V" | "V2" | "V3" | "VV" | "VS" | "VQ"
            | "V2V" | "V2S" | "V2Q") => Value::Cat(c.into()),
            _ if self.lexicon.contains_key(name) => self.lexical(name, depth)?,
            other => return Err(RealizeError::Eval(format!("unknown identifier `{other}`"))),
        })
    }

    fn eval(
        &self,
        e: &Expr,
        env: &BTreeMap<String, Value>,
        depth: usize,
    ) -> Result<Value, RealizeError> {
        if depth > MAX_DEPTH {
            return Err(RealizeError::Eval("definitions nest too deeply".into()));
        }
        match e {
            Expr::Str(s) => Ok(Value::Str(s.clone())),
            Expr::Variants(items) => match items.first() {
                Some(first) => self.eval(first, env, depth),
                None => Err(RealizeError::Eval("empty variants".into())),
            },
            Expr::App(head, args) if args.is_empty() => match env.get(head) {
                Some(v) => Ok(v.clone()),
                None => self.constant(head, depth),
            },
            Expr::App(head, args) => {
                let vals = args
                    .iter()
                    .map(|a| self.eval(a, env, depth))
                    .collect::<Result<Vec<_>, _>>()?;
                self.call(strip_qualifier(head), vals)
            }
        }
    }

    fn verb_of_forms(&self, forms: &[String]) -> Result<VerbForms, RealizeError> {
        let f: Vec<&str> = forms.iter().map(String::as_str).collect();
        Ok(match (self.lang, f.as_slice()) {
            (Lang::Eng, [inf]) => morph::eng_regular(inf),
            (Lang::Eng, [inf, past, part]) => morph::eng_irregular(inf, past, part),
            (Lang::Eng, [inf, pres, past, part, _ing]) => VerbForms {
                lang: Lang::Eng,
                inf: inf.to_string(),
                pres: pres.to_string(),
                past: past.to_string(),
                part: part.to_string(),
            },
            (Lang::Swe, [form]) => morph::swe_regular(form),
            (Lang::Swe, [inf, past, sup]) => morph::swe_irregular(inf, past, sup),
            (Lang::Swe, [inf, pres, _imp, past, sup, _part]) => VerbForms {
                lang: Lang::Swe,
                inf: inf.to_string(),
                pres: pres.to_string(),
                past: past.to_string(),
                part: sup.to_string(),
            },
            _ => {
                return Err(RealizeError::Eval(format!(
                    "verb paradigm with {} forms",
                    f.len()
                )))
            }
        })
    }

    fn call(&self, head: &str, args: Vec<Value>) -> Result<Value, RealizeError> {
        let bad = || {
            RealizeError::Eval(format!(
                "{head} applied to ({})",
                args.iter().map(Value::kind).collect::<Vec<_>>().join(", ")
            ))
        };
        let strings = |args: &[Value]| -> Option<Vec<String>> {
            args.iter()
                .map(|a| match a {
                    Value::Str(s) => Some(s.clone()),
                    _ => None,
                })
                .collect()
        };
        let plain = |forms: VerbForms| {
            Value::Verb(Verb {
                forms,
                particle: None,
                reflexive: false,
                verb_type: None,
            })
        };
        match head {
            "fromMaybe" => match args.as_slice() {
                [_, default, Value::Maybe(m)] => {
                    Ok(m.as_deref().cloned().unwrap_or_else(|| default.clone()))
                }
                [_, _, v] => Ok(v.clone()),
                _ => Err(bad()),
            },
            "regV" | "irregV" | "mkV" => {
                let forms = strings(&args).ok_or_else(bad)?;
                if head == "mkV" && forms.is_empty() {
                    return Err(bad());
                }
                Ok(plain(self.verb_of_forms(&forms)?))
            }
            "partV" => match args.as_slice() {
                [Value::Verb(v), Value::Str(p)] => {
                    let mut v = v.clone();
                    v.particle = Some(match v.particle.take() {
                        Some(q) => format!("{q} {p}"),
                        None => p.clone(),
                    });
                    Ok(Value::Verb(v))
                }
                _ => Err(bad()),
            },
            "reflV" => match args.as_slice() {
                [Value::Verb(v)] => Ok(Value::Verb(Verb {
                    reflexive: true,
                    ..v.clone()
                })),
                _ => Err(bad()),
            },
            "mkV2" | "mkV3" | "mkVV" | "mkVS" | "mkVQ" | "mkV2V" | "mkV2S" | "mkV2Q" => {
                let vt: VerbType = head[2..].parse().map_err(|_| bad())?;
                let mut v = match args.first() {
                    Some(Value::Verb(v)) => v.clone(),
                    Some(Value::Str(s)) => {
                        match plain(self.verb_of_forms(std::slice::from_ref(s))?) {
                            Value::Verb(v) => v,
                            _ => unreachable!(),
                        }
                    }
                    _ => return Err(bad()),
                };
                v.verb_type = Some(vt);
                Ok(Value::Verb(v))
            }
            "passiveVP" => match args.as_slice() {
                [Value::Verb(v)] => Ok(Value::VP(VerbPhrase {
                    head: VpHead::Passive(v.clone()),
                    compls: Vec::new(),
                })),
                _ => Err(bad()),
            },
            "mkAdv" => match args.as_slice() {
                [Value::Str(s)] => Ok(Value::adv(s)),
                [Value::Prep(p), x] | [Value::Subj(p), x] => {
                    let body = x.surface();
                    Ok(Value::Adv(if body.is_empty() {
                        body
                    } else {
                        format!("{p} {body}")
                    }))
                }
                _ => Err(bad()),
            },
            "mkVP" => self.mk_vp(args).ok_or_else(|| {
                RealizeError::Eval("mkVP applied to arguments of the wrong types".into())
            }),
            _ => Err(RealizeError::Eval(format!("unknown function `{head}`"))),
        }
    }

    fn mk_vp(&self, args: Vec<Value>) -> Option<Value> {
        let that = |s: &str| {
            if s.is_empty() {
                String::new()
            } else {
                format!("{} {s}", self.lang.that())
            }
        };
        let active = |v: &Verb| VerbPhrase {
            head: VpHead::Active(v.clone()),
            compls: Vec::new(),
        };
        let vp = match args.as_slice() {
            [Value::Verb(v)] => active(v),
            [Value::VP(vp)] => vp.clone(),
            [Value::VP(vp), Value::Adv(a)] => vp.clone().push(a.clone()),
            [Value::Verb(v), Value::NP(o)] => active(v).push(o.surface.clone()),
            [Value::Verb(v), Value::NP(o1), Value::NP(o2)] => {
                active(v).push(o1.surface.clone()).push(o2.surface.clone())
            }
            [Value::Verb(v), Value::VP(c)] => active(v).push(c.as_complement(v)),
            [Value::Verb(v), Value::S(s)] => active(v).push(that(s)),
            [Value::Verb(v), Value::QS(q)] => active(v).push(q.clone()),
            [Value::Verb(v), Value::NP(o), Value::VP(c)] => {
                active(v).push(o.surface.clone()).push(c.as_complement(v))
            }
            [Value::Verb(v), Value::NP(o), Value::S(s)] => {
                active(v).push(o.surface.clone()).push(that(s))
            }
            [Value::Verb(v), Value::NP(o), Value::QS(q)] => {
                active(v).push(o.surface.clone()).push(q.clone())
            }
            _ => return None,
        };
        Some(Value::VP(vp))
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&combine::<&str>(self, Tense::Pres, &[]))
    }
}
