//! File-based pipeline stages. Each stage reads the artifacts of earlier
//! stages from the output directory and writes its own.
//!
//! Layout under `out/`:
//!
//! ```text
//! <lang>/corpus.json  patterns.json  valences.json  summary.txt
//! <lang>/lexicon.json lexicon_gaps.tsv
//! shared.json  alignment.json  unaligned.tsv
//! gf/*.gf      stats/*.tsv
//! ```

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::align::{self, Alignment, BilingualDict, VariantOrder};
use crate::artifact::{
    provenance_line, read_artifact, tsv_with_provenance, write_artifact, write_text, Artifact,
    ArtifactError,
};
use crate::corpus::{
    parse_dependency_corpus, parse_phrase_structure_corpus, CoreIndex, IngestError, ParseOptions,
    ParsedCorpus, SourceScheme,
};
use crate::extract::{extract_corpus, ExtractionReport, Mappings, SentencePattern, Settings};
use crate::grammar::{self, GrammarError, TemplateRegistry};
use crate::lexicon::{self, LexEntry};
use crate::normalize::{self, SummaryLimits, ValencePattern};
use crate::shared::{self, SharedSet};

pub const BUNDLED_PARADIGMS_ENG: &str = include_str!("../data/paradigms_eng.tsv");
pub const BUNDLED_PARADIGMS_SWE: &str = include_str!("../data/paradigms_swe.tsv");
pub const BUNDLED_DICT_ENG_SWE: &str = include_str!("../data/dict_eng_swe.tsv");

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Artifact(#[from] ArtifactError),
    #[error(transparent)]
    Ingest(#[from] IngestError),
    #[error(transparent)]
    Grammar(#[from] GrammarError),
    #[error("{0}")]
    Data(String),
}

impl PipelineError {
    /// 2 for usage errors, 1 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            PipelineError::Usage(_) => 2,
            _ => 1,
        }
    }
}

fn usage(msg: impl Into<String>) -> PipelineError {
    PipelineError::Usage(msg.into())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LangConfig {
    pub code: String,
    /// Files or directories; directories are searched for `.xml` files.
    pub corpus: Vec<PathBuf>,
    pub scheme: SourceScheme,
    pub settings: Settings,
    /// Frame descriptions (`.xml`) or `frame<TAB>fe<TAB>coreType` tables.
    pub core_index: Vec<PathBuf>,
    /// Paradigm files in ascending preference; empty means the bundled sample.
    pub paradigms: Vec<PathBuf>,
    pub default_frame: Option<String>,
}

impl LangConfig {
    /// Defaults: phrase-structure at 3.B for `eng`, dependency at 2.B otherwise.
    pub fn new(code: &str) -> Self {
        let (scheme, settings) = if code == "eng" {
            (SourceScheme::PhraseStructure, "3.B")
        } else {
            (SourceScheme::Dependency, "2.B")
        };
        LangConfig {
            code: code.into(),
            corpus: Vec::new(),
            scheme,
            settings: settings.parse().expect("valid settings"),
            core_index: Vec::new(),
            paradigms: Vec::new(),
            default_frame: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PipelineConfig {
    /// The first two are the language pair, in order.
    pub languages: Vec<LangConfig>,
    /// `None` means the bundled sample.
    pub dict: Option<PathBuf>,
    pub out: PathBuf,
    pub variant_order: VariantOrder,
    pub summary_limits: SummaryLimits,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            languages: Vec::new(),
            dict: None,
            out: PathBuf::from("out"),
            variant_order: VariantOrder::default(),
            summary_limits: SummaryLimits::default(),
        }
    }
}

fn paths(value: &str, base: &Path) -> Vec<PathBuf> {
    value
        .split(',')
        .map(str::trim)
        .filter(|v| !v.is_empty())
        .map(|v| base.join(v))
        .collect()
}

impl PipelineConfig {
    /// `key = value` lines; `#` comments. Relative paths resolve against `base`.
    ///
    /// ```text
    /// out = build
    /// languages = eng, swe
    /// lang.eng.corpus = corpora/bfn
    /// lang.eng.settings = 3.B
    /// dict = dict.tsv
    /// ```
    pub fn parse(text: &str, base: &Path) -> Result<Self, PipelineError> {
        let mut cfg = PipelineConfig::default();
        let mut order: Vec<String> = Vec::new();
        let mut langs: BTreeMap<String, LangConfig> = BTreeMap::new();
        for (n, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = |m: &str| usage(format!("config line {}: {m}", n + 1));
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| bad("expected `key = value`"))?;
            let (key, value) = (key.trim(), value.trim());
            match key.split('.').collect::<Vec<_>>().as_slice() {
                ["out"] => cfg.out = base.join(value),
                ["dict"] => cfg.dict = Some(base.join(value)),
                ["languages"] => {
                    order = value
                        .split(',')
                        .map(|s| s.trim().to_string())
                        .filter(|s| !s.is_empty())
                        .collect();
                }
                ["variant_order"] => {
                    cfg.variant_order = match value {
                        "simple-first" => VariantOrder::SimpleFirst,
                        "frequency" => VariantOrder::Frequency,
                        _ => return Err(bad("variant_order is simple-first or frequency")),
                    }
                }
                ["summary", "min_valence"] => {
                    cfg.summary_limits.min_valence_count =
                        value.parse().map_err(|_| bad("not a number"))?
                }
                ["summary", "min_sentence"] => {
                    cfg.summary_limits.min_sentence_count =
                        value.parse().map_err(|_| bad("not a number"))?
                }
                ["lang", code, field] => {
                    if !order.iter().any(|c| c == code) && !langs.contains_key(*code) {
                        order.push(code.to_string());
                    }
                    let l = langs
                        .entry(code.to_string())
                        .or_insert_with(|| LangConfig::new(code));
                    match *field {
                        "corpus" => l.corpus = paths(value, base),
                        "scheme" => l.scheme = value.parse().map_err(|e: String| bad(&e))?,
                        "settings" => {
                            l.settings = value.parse().map_err(|_| bad("settings look like 3.B"))?
                        }
                        "core" => l.core_index = paths(value, base),
                        "paradigms" => l.paradigms = paths(value, base),
                        "default_frame" => l.default_frame = Some(value.to_string()),
                        other => return Err(bad(&format!("unknown language field `{other}`"))),
                    }
                }
                _ => return Err(bad(&format!("unknown key `{key}`"))),
            }
        }
        for code in order {
            let l = langs
                .remove(&code)
                .unwrap_or_else(|| LangConfig::new(&code));
            cfg.languages.push(l);
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, PipelineError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| usage(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text, path.parent().unwrap_or(Path::new(".")))
    }

    pub fn lang(&self, code: &str) -> Result<&LangConfig, PipelineError> {
        self.languages
            .iter()
            .find(|l| l.code == code)
            .ok_or_else(|| usage(format!("language `{code}` is not configured")))
    }

    pub fn lang_mut(&mut self, code: &str) -> &mut LangConfig {
        if let Some(i) = self.languages.iter().position(|l| l.code == code) {
            &mut self.languages[i]
        } else {
            self.languages.push(LangConfig::new(code));
            self.languages.last_mut().expect("just pushed")
        }
    }

    pub fn pair(&self) -> Result<(&LangConfig, &LangConfig), PipelineError> {
        match self.languages.as_slice() {
            [a, b, ..] => Ok((a, b)),
            _ => Err(usage("two languages must be configured")),
        }
    }

    pub fn layout(&self) -> Layout {
        Layout {
            root: self.out.clone(),
        }
    }
}

/// Where artifacts live.
#[derive(Clone, Debug)]
pub struct Layout {
    pub root: PathBuf,
}

impl Layout {
    pub fn corpus(&self, lang: &str) -> PathBuf {
        self.root.join(lang).join("corpus.json")
    }
    pub fn patterns(&self, lang: &str) -> PathBuf {
        self.root.join(lang).join("patterns.json")
    }
    pub fn valences(&self, lang: &str) -> PathBuf {
        self.root.join(lang).join("valences.json")
    }
    pub fn summary(&self, lang: &str) -> PathBuf {
        self.root.join(lang).join("summary.txt")
    }
    pub fn lexicon(&self, lang: &str) -> PathBuf {
        self.root.join(lang).join("lexicon.json")
    }
    pub fn gaps(&self, lang: &str) -> PathBuf {
        self.root.join(lang).join("lexicon_gaps.tsv")
    }
    pub fn shared(&self) -> PathBuf {
        self.root.join("shared.json")
    }
    pub fn alignment(&self) -> PathBuf {
        self.root.join("alignment.json")
    }
    pub fn unaligned(&self) -> PathBuf {
        self.root.join("unaligned.tsv")
    }
    pub fn gf(&self) -> PathBuf {
        self.root.join("gf")
    }
    pub fn stats(&self) -> PathBuf {
        self.root.join("stats")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stage {
    Ingest,
    Extract,
    Normalize,
    Share,
    GenGrammar,
    GenLexicon,
    Align,
    Stats,
}

impl Stage {
    pub const ALL: [Stage; 8] = [
        Stage::Ingest,
        Stage::Extract,
        Stage::Normalize,
        Stage::Share,
        Stage::GenGrammar,
        Stage::GenLexicon,
        Stage::Align,
        Stage::Stats,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Stage::Ingest => "ingest",
            Stage::Extract => "extract",
            Stage::Normalize => "normalize",
            Stage::Share => "share",
            Stage::GenGrammar => "gen-grammar",
            Stage::GenLexicon => "gen-lexicon",
            Stage::Align => "align",
            Stage::Stats => "stats",
        }
    }

    /// Whether the stage runs once per language.
    pub fn per_language(self) -> bool {
        matches!(
            self,
            Stage::Ingest | Stage::Extract | Stage::Normalize | Stage::GenLexicon
        )
    }
}

impl FromStr for Stage {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Stage::ALL
            .into_iter()
            .find(|st| st.name() == s)
            .ok_or_else(|| format!("unknown stage `{s}`"))
    }
}

fn lang_settings(l: &LangConfig) -> BTreeMap<String, String> {
    BTreeMap::from([(l.code.clone(), l.settings.to_string())])
}

fn pair_settings(a: &LangConfig, b: &LangConfig) -> BTreeMap<String, String> {
    let mut m = lang_settings(a);
    m.extend(lang_settings(b));
    m
}

/// Refuses artifacts produced under other settings than configured.
fn check_settings<T>(
    a: &Artifact<T>,
    expected: &BTreeMap<String, String>,
    path: &Path,
    producer: &str,
) -> Result<(), PipelineError> {
    for (lang, want) in expected {
        if let Some(found) = a.settings.get(lang) {
            if found != want {
                return Err(PipelineError::Data(format!(
                    "{}: stale; produced with {lang} settings {found}, configuration says {want}; re-run `{producer}`",
                    path.display()
                )));
            }
        }
    }
    Ok(())
}

fn xml_files(path: &Path, out: &mut Vec<PathBuf>) -> Result<(), PipelineError> {
    if path.is_dir() {
        let mut entries: Vec<PathBuf> = std::fs::read_dir(path)
            .map_err(|e| PipelineError::Data(format!("{}: {e}", path.display())))?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .collect();
        entries.sort();
        for e in entries {
            if e.is_dir() || e.extension().is_some_and(|x| x.eq_ignore_ascii_case("xml")) {
                xml_files(&e, out)?;
            }
        }
        Ok(())
    } else if path.exists() {
        out.push(path.to_path_buf());
        Ok(())
    } else {
        Err(PipelineError::Data(format!(
            "corpus path {} does not exist",
            path.display()
        )))
    }
}

fn read(path: &Path) -> Result<String, PipelineError> {
    std::fs::read_to_string(path)
        .map_err(|e| PipelineError::Data(format!("{}: {e}", path.display())))
}

fn is_frame_description(text: &str) -> bool {
    let head: String = text.chars().take(600).collect();
    head.contains("<frame ") || head.contains("<frame>")
}

/// Parses the configured corpus files of one language.
pub fn ingest_language(l: &LangConfig) -> Result<ParsedCorpus, PipelineError> {
    if l.corpus.is_empty() {
        return Err(usage(format!("no corpus configured for `{}`", l.code)));
    }
    let mut files = Vec::new();
    for p in &l.corpus {
        xml_files(p, &mut files)?;
    }
    let mut opts = ParseOptions::for_language(&l.code);
    opts.default_frame = l.default_frame.clone();
    for p in &l.core_index {
        let text = read(p)?;
        let idx = if p.extension().is_some_and(|x| x == "xml") {
            CoreIndex::from_frame_xml(&text, &p.display().to_string())?
        } else {
            CoreIndex::from_tsv(&text)
        };
        opts.core_index.merge(idx);
    }
    let mut documents = Vec::new();
    for f in files {
        let text = read(&f)?;
        if is_frame_description(&text) {
            opts.core_index
                .merge(CoreIndex::from_frame_xml(&text, &f.display().to_string())?);
        } else {
            documents.push((f, text));
        }
    }
    let mut corpus = ParsedCorpus::default();
    for (f, text) in documents {
        let id = f
            .file_name()
            .map(|n| n.to_string_lossy().into_owned())
            .unwrap_or_else(|| f.display().to_string());
        let parsed = match l.scheme {
            SourceScheme::PhraseStructure => parse_phrase_structure_corpus(&text, &id, &opts)?,
            SourceScheme::Dependency => parse_dependency_corpus(&text, &id, &opts)?,
        };
        corpus.extend(parsed);
    }
    Ok(corpus)
}

/// Extraction output at the language's settings.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtractArtifact {
    pub report: ExtractionReport,
}

/// Valences after merging (and pruning at level 3).
pub fn normalize_patterns(
    settings: Settings,
    patterns: &[SentencePattern],
) -> (Vec<SentencePattern>, Vec<ValencePattern>) {
    let valences = normalize::normalize(patterns);
    if settings.prunes_singletons() {
        let kept = normalize::prune_singletons(&valences);
        (normalize::retain_members(patterns, &kept), kept)
    } else {
        (patterns.to_vec(), valences)
    }
}

/// Per-frame summaries, frames in name order.
pub fn summaries(valences: &[ValencePattern], limits: SummaryLimits) -> String {
    let frames: std::collections::BTreeSet<&str> =
        valences.iter().map(|v| v.key.frame.as_str()).collect();
    let mut out = String::new();
    for f in frames {
        let _ = writeln!(out, "{f}");
        out.push_str(&normalize::summarize(valences, f, limits));
        out.push('\n');
    }
    out
}

/// Runs a stage; per-language stages run for `langs` (all configured if empty).
pub fn run_stage(
    stage: Stage,
    cfg: &PipelineConfig,
    langs: &[String],
) -> Result<Vec<PathBuf>, PipelineError> {
    let targets: Vec<&LangConfig> = if langs.is_empty() {
        cfg.languages.iter().collect()
    } else {
        langs
            .iter()
            .map(|c| cfg.lang(c))
            .collect::<Result<_, _>>()?
    };
    if stage.per_language() && targets.is_empty() {
        return Err(usage("no languages configured"));
    }
    let mut written = Vec::new();
    match stage {
        Stage::Ingest => {
            for l in targets {
                written.push(ingest(cfg, l)?);
            }
        }
        Stage::Extract => {
            for l in targets {
                written.push(extract(cfg, l)?);
            }
        }
        Stage::Normalize => {
            for l in targets {
                written.extend(normalize_stage(cfg, l)?);
            }
        }
        Stage::GenLexicon => {
            for l in targets {
                written.extend(gen_lexicon(cfg, l)?);
            }
        }
        Stage::Share => written.push(share(cfg)?),
        Stage::GenGrammar => written.extend(gen_grammar(cfg)?),
        Stage::Align => written.extend(align_stage(cfg)?),
        Stage::Stats => written.extend(stats(cfg)?),
    }
    Ok(written)
}

/// All stages in order.
pub fn run_all(cfg: &PipelineConfig) -> Result<Vec<PathBuf>, PipelineError> {
    let mut written = Vec::new();
    for stage in Stage::ALL {
        log::info!("stage {}", stage.name());
        written.extend(run_stage(stage, cfg, &[])?);
    }
    Ok(written)
}

pub fn ingest(cfg: &PipelineConfig, l: &LangConfig) -> Result<PathBuf, PipelineError> {
    let corpus = ingest_language(l)?;
    log::info!(
        "{}: {} sentences, {} rejected",
        l.code,
        corpus.sentences.len(),
        corpus.rejected.len()
    );
    let path = cfg.layout().corpus(&l.code);
    // Parsing does not depend on settings.
    write_artifact(
        &path,
        &Artifact::new("corpus", "ingest", BTreeMap::new(), corpus),
    )?;
    Ok(path)
}

pub fn extract(cfg: &PipelineConfig, l: &LangConfig) -> Result<PathBuf, PipelineError> {
    let layout = cfg.layout();
    let corpus: Artifact<ParsedCorpus> =
        read_artifact(&layout.corpus(&l.code), "corpus", "extract")?;
    let report = extract_corpus(&corpus.data.sentences, l.settings, Mappings::bundled());
    log::info!(
        "{}: {} examples, {} distinct patterns, skipped {:?}",
        l.code,
        report.examples,
        report.patterns.len(),
        report.skipped
    );
    let path = layout.patterns(&l.code);
    write_artifact(
        &path,
        &Artifact::new(
            "patterns",
            "extract",
            lang_settings(l),
            ExtractArtifact { report },
        ),
    )?;
    Ok(path)
}

fn read_patterns(
    cfg: &PipelineConfig,
    l: &LangConfig,
    stage: &str,
) -> Result<Vec<SentencePattern>, PipelineError> {
    let path = cfg.layout().patterns(&l.code);
    let a: Artifact<ExtractArtifact> = read_artifact(&path, "patterns", stage)?;
    check_settings(&a, &lang_settings(l), &path, "extract")?;
    Ok(a.data.report.patterns)
}

fn read_valences(
    cfg: &PipelineConfig,
    l: &LangConfig,
    stage: &str,
) -> Result<Vec<ValencePattern>, PipelineError> {
    let path = cfg.layout().valences(&l.code);
    let a: Artifact<Vec<ValencePattern>> = read_artifact(&path, "valences", stage)?;
    check_settings(&a, &lang_settings(l), &path, "normalize")?;
    Ok(a.data)
}

fn read_shared(cfg: &PipelineConfig, stage: &str) -> Result<SharedSet, PipelineError> {
    let (a, b) = cfg.pair()?;
    let path = cfg.layout().shared();
    let art: Artifact<SharedSet> = read_artifact(&path, "shared", stage)?;
    check_settings(&art, &pair_settings(a, b), &path, "share")?;
    Ok(art.data)
}

pub fn normalize_stage(
    cfg: &PipelineConfig,
    l: &LangConfig,
) -> Result<Vec<PathBuf>, PipelineError> {
    let layout = cfg.layout();
    let patterns = read_patterns(cfg, l, "normalize")?;
    let (_, valences) = normalize_patterns(l.settings, &patterns);
    let path = layout.valences(&l.code);
    write_artifact(
        &path,
        &Artifact::new("valences", "normalize", lang_settings(l), valences.clone()),
    )?;
    let summary_path = layout.summary(&l.code);
    let text = format!(
        "-- {}\n{}",
        provenance_line(&lang_settings(l)),
        summaries(&valences, cfg.summary_limits)
    );
    write_text(&summary_path, &text)?;
    Ok(vec![path, summary_path])
}

pub fn share(cfg: &PipelineConfig) -> Result<PathBuf, PipelineError> {
    let (a, b) = cfg.pair()?;
    let layout = cfg.layout();
    let mut sides = Vec::new();
    for l in [a, b] {
        match read_valences(cfg, l, "share") {
            Ok(v) => sides.push(v),
            Err(PipelineError::Artifact(ArtifactError::Missing { path, .. })) => {
                return Err(PipelineError::Data(format!(
                    "share: missing corpus artifact for `{}` ({}); run ingest, extract and normalize for it first",
                    l.code,
                    path.display()
                )))
            }
            Err(e) => return Err(e),
        }
    }
    let set = shared::shared_set(&a.code, &sides[0], &b.code, &sides[1]);
    log::info!(
        "{} shared patterns over {} frames",
        set.patterns.len(),
        set.frames().len()
    );
    let path = layout.shared();
    write_artifact(
        &path,
        &Artifact::new("shared", "share", pair_settings(a, b), set),
    )?;
    Ok(path)
}

pub fn gen_grammar(cfg: &PipelineConfig) -> Result<Vec<PathBuf>, PipelineError> {
    let (a, b) = cfg.pair()?;
    let layout = cfg.layout();
    let set = read_shared(cfg, "gen-grammar")?;
    let settings = pair_settings(a, b);
    let note = provenance_line(&settings);
    let functions = grammar::frame_functions(&set)?;
    let mut written = Vec::new();
    let abs = layout.gf().join(format!("{}.gf", grammar::ABSTRACT_NAME));
    write_text(&abs, &grammar::gen_abstract(&functions, &note))?;
    written.push(abs);
    let census = layout.stats().join("census.tsv");
    let rows = grammar::census(set.patterns.iter().map(|p| &p.key));
    write_text(
        &census,
        &tsv_with_provenance(&settings, &grammar::census_tsv(&rows)),
    )?;
    written.push(census);
    let cats = layout.stats().join("categories.tsv");
    write_text(
        &cats,
        &tsv_with_provenance(&settings, &grammar::category_stats_tsv(&functions)),
    )?;
    written.push(cats);
    let registry = TemplateRegistry::builtin();
    for l in [a, b] {
        let m = grammar::gen_concrete(&set, &functions, &l.code, &registry, &note)?;
        for (name, why) in &m.ungenerable {
            log::warn!("{}: {name} not linearized: {why}", l.code);
        }
        let path = layout.gf().join(format!(
            "{}{}.gf",
            grammar::ABSTRACT_NAME,
            grammar::language_suffix(&l.code)
        ));
        write_text(&path, &m.text)?;
        written.push(path);
    }
    Ok(written)
}

/// Paradigm sources of a language; bundled samples when none configured.
pub fn paradigm_sources(l: &LangConfig) -> Result<Vec<(String, String)>, PipelineError> {
    if l.paradigms.is_empty() {
        let bundled = match l.code.as_str() {
            "eng" => BUNDLED_PARADIGMS_ENG,
            "swe" => BUNDLED_PARADIGMS_SWE,
            _ => "",
        };
        return Ok(vec![(format!("bundled {}", l.code), bundled.to_string())]);
    }
    l.paradigms
        .iter()
        .map(|p| Ok((p.display().to_string(), read(p)?)))
        .collect()
}

pub fn gen_lexicon(cfg: &PipelineConfig, l: &LangConfig) -> Result<Vec<PathBuf>, PipelineError> {
    let (a, b) = cfg.pair()?;
    let layout = cfg.layout();
    let set = read_shared(cfg, "gen-lexicon")?;
    let patterns = read_patterns(cfg, l, "gen-lexicon")?;
    let sources = paradigm_sources(l)?;
    let refs: Vec<(&str, &str)> = sources
        .iter()
        .map(|(n, t)| (n.as_str(), t.as_str()))
        .collect();
    let paradigms = lexicon::load_paradigms(&refs);
    let mut entries = lexicon::collect_lexicon(&set, &patterns);
    let gaps = lexicon::linearize(&mut entries, &paradigms);
    let settings = pair_settings(a, b);
    let note = provenance_line(&settings);
    let modules = lexicon::gen_lexicon_modules(&entries, &l.code, &note);
    log::info!(
        "{}: {} lexical entries, {} linearized",
        l.code,
        modules.report.total,
        modules.report.linearized
    );
    let name = lexicon::lexicon_module_name(&l.code);
    let abs = layout.gf().join(format!("{name}Abs.gf"));
    let conc = layout.gf().join(format!("{name}.gf"));
    write_text(&abs, &modules.abstract_text)?;
    write_text(&conc, &modules.concrete_text)?;
    let json = layout.lexicon(&l.code);
    write_artifact(
        &json,
        &Artifact::new("lexicon", "gen-lexicon", settings.clone(), entries),
    )?;
    let gap_path = layout.gaps(&l.code);
    write_text(
        &gap_path,
        &tsv_with_provenance(&settings, &lexicon::gap_report_tsv(&gaps)),
    )?;
    Ok(vec![abs, conc, json, gap_path])
}

fn read_lexicon(
    cfg: &PipelineConfig,
    l: &LangConfig,
    stage: &str,
) -> Result<Vec<LexEntry>, PipelineError> {
    let (a, b) = cfg.pair()?;
    let path = cfg.layout().lexicon(&l.code);
    let art: Artifact<Vec<LexEntry>> = read_artifact(&path, "lexicon", stage)?;
    check_settings(&art, &pair_settings(a, b), &path, "gen-lexicon")?;
    Ok(art.data)
}

pub fn load_dict(cfg: &PipelineConfig) -> Result<BilingualDict, PipelineError> {
    Ok(match &cfg.dict {
        Some(p) => BilingualDict::parse(&read(p)?),
        None => BilingualDict::parse(BUNDLED_DICT_ENG_SWE),
    })
}

pub fn align_stage(cfg: &PipelineConfig) -> Result<Vec<PathBuf>, PipelineError> {
    let (a, b) = cfg.pair()?;
    let layout = cfg.layout();
    let l1 = read_lexicon(cfg, a, "align")?;
    let l2 = read_lexicon(cfg, b, "align")?;
    let dict = load_dict(cfg)?;
    let alignment = align::align(&l1, &l2, &dict, cfg.variant_order);
    log::info!(
        "{} of {} {} entries aligned with {} {} entries",
        alignment.aligned.len(),
        l1.len(),
        a.code,
        alignment.l2_entries().len(),
        b.code
    );
    let settings = pair_settings(a, b);
    let note = provenance_line(&settings);
    let m = align::gen_shared_lexicon(&alignment, &a.code, &b.code, &note);
    let name = align::SHARED_LEXICON_NAME;
    let gf = layout.gf();
    let abs = gf.join(format!("{name}.gf"));
    let c1 = gf.join(format!("{name}{}.gf", grammar::language_suffix(&a.code)));
    let c2 = gf.join(format!("{name}{}.gf", grammar::language_suffix(&b.code)));
    write_text(&abs, &m.abstract_text)?;
    write_text(&c1, &m.l1_text)?;
    write_text(&c2, &m.l2_text)?;
    let json = layout.alignment();
    write_artifact(
        &json,
        &Artifact::new("alignment", "align", settings.clone(), alignment.clone()),
    )?;
    let un = layout.unaligned();
    write_text(
        &un,
        &tsv_with_provenance(&settings, &align::unaligned_tsv(&alignment)),
    )?;
    Ok(vec![abs, c1, c2, json, un])
}

/// Experiment-series rows for one corpus across all settings.
pub fn series_rows(sentences: &[crate::corpus::AnnotatedSentence]) -> Vec<normalize::StatsRow> {
    let mappings = Mappings::bundled();
    Settings::series()
        .into_iter()
        .map(|s| {
            let report = extract_corpus(sentences, s, mappings);
            let (patterns, valences) = normalize_patterns(s, &report.patterns);
            normalize::stats_row(s, &patterns, &valences)
        })
        .collect()
}

/// A missing artifact is `None`; other errors propagate.
fn optional<T>(r: Result<T, PipelineError>) -> Result<Option<T>, PipelineError> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(PipelineError::Artifact(ArtifactError::Missing { .. })) => Ok(None),
        Err(e) => Err(e),
    }
}

pub const COVERAGE_HEADER: &str = "language\tcovered\ttotal\tfraction";

/// Table-shaped statistics for whatever artifacts exist. Missing inputs
/// give header-only tables.
pub fn stats(cfg: &PipelineConfig) -> Result<Vec<PathBuf>, PipelineError> {
    let layout = cfg.layout();
    let dir = layout.stats();
    let mut settings = BTreeMap::new();
    for l in &cfg.languages {
        settings.extend(lang_settings(l));
    }
    let mut written = Vec::new();
    let mut put = |name: &str, body: String| -> Result<(), PipelineError> {
        let path = dir.join(name);
        write_text(&path, &tsv_with_provenance(&settings, &body))?;
        written.push(path);
        Ok(())
    };

    let mut corpora = BTreeMap::new();
    for l in &cfg.languages {
        let mut body = format!("{}\n", normalize::STATS_HEADER);
        let c: Option<Artifact<ParsedCorpus>> = optional(
            read_artifact(&layout.corpus(&l.code), "corpus", "stats").map_err(Into::into),
        )?;
        if let Some(c) = c {
            for row in series_rows(&c.data.sentences) {
                body.push_str(&row.to_tsv());
                body.push('\n');
            }
            corpora.insert(l.code.clone(), c.data.sentences);
        }
        put(&format!("series_{}.tsv", l.code), body)?;
    }

    let mut frames = format!("{}\n", shared::FRAME_STATS_HEADER);
    let mut patterns = format!("{}\n", shared::PATTERN_STATS_HEADER);
    if let Ok((a, b)) = cfg.pair() {
        let label = format!("{}:{}", a.settings, b.settings);
        if let (Some(ca), Some(cb)) = (corpora.get(&a.code), corpora.get(&b.code)) {
            // Same settings on both sides, then the configured pair.
            let mappings = Mappings::bundled();
            let valences = |sentences, s: Settings| {
                let r = extract_corpus(sentences, s, mappings);
                normalize_patterns(s, &r.patterns).1
            };
            let mut pairs: Vec<(Settings, Settings)> =
                Settings::series().into_iter().map(|s| (s, s)).collect();
            if !pairs.contains(&(a.settings, b.settings)) {
                pairs.push((a.settings, b.settings));
            }
            for (sa, sb) in pairs {
                let (va, vb) = (valences(ca, sa), valences(cb, sb));
                let label = format!("{sa}:{sb}");
                frames.push_str(&shared::frame_set_stats(&va, &vb).to_tsv(&label));
                frames.push('\n');
                patterns.push_str(&shared::pattern_set_stats(&va, &vb).to_tsv(&label));
                patterns.push('\n');
            }
        } else if let (Some(va), Some(vb)) = (
            optional(read_valences(cfg, a, "stats"))?,
            optional(read_valences(cfg, b, "stats"))?,
        ) {
            frames.push_str(&shared::frame_set_stats(&va, &vb).to_tsv(&label));
            frames.push('\n');
            patterns.push_str(&shared::pattern_set_stats(&va, &vb).to_tsv(&label));
            patterns.push('\n');
        }
    }
    put("frames.tsv", frames)?;
    put("patterns.tsv", patterns)?;

    let shared_set = if cfg.pair().is_ok() {
        optional(read_shared(cfg, "stats"))?
    } else {
        None
    };
    let mut census = String::new();
    let mut coverage = format!("{COVERAGE_HEADER}\n");
    match &shared_set {
        Some(set) => {
            census = grammar::census_tsv(&grammar::census(set.patterns.iter().map(|p| &p.key)));
            for l in cfg.languages.iter().take(2) {
                if let Some(p) = optional(read_patterns(cfg, l, "stats"))? {
                    let c = shared::compute_coverage(set, &p);
                    let _ = writeln!(
                        coverage,
                        "{}\t{}\t{}\t{:.3}",
                        l.code, c.covered, c.total, c.fraction
                    );
                }
            }
        }
        None => {
            census.push_str(grammar::CENSUS_HEADER);
            census.push('\n');
        }
    }
    put("census.tsv", census)?;
    put("coverage.tsv", coverage)?;
    Ok(written)
}

/// The shared set, read back for callers outside the pipeline.
pub fn load_shared(cfg: &PipelineConfig) -> Result<SharedSet, PipelineError> {
    read_shared(cfg, "load")
}

/// The alignment, read back for callers outside the pipeline.
pub fn load_alignment(cfg: &PipelineConfig) -> Result<Alignment, PipelineError> {
    let a: Artifact<Alignment> = read_artifact(&cfg.layout().alignment(), "alignment", "load")?;
    Ok(a.data)
}
