//! `framegram` command line: one subcommand per pipeline stage, plus `run`
//! and `realize`.

use std::io::{BufRead, IsTerminal};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use framegram::pipeline::{self, PipelineConfig, PipelineError, Stage};
use framegram::realize::{Lang, Realizer, Tense, Tree};

#[derive(Parser)]
#[command(
    name = "framegram",
    version,
    about = "Valence patterns to multilingual grammar modules"
)]
struct Cli {
    /// More logging (-v info, -vv debug).
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Default)]
struct Common {
    /// Pipeline configuration (`key = value` lines).
    #[arg(long, short)]
    config: Option<PathBuf>,
    /// Output directory; overrides the configuration.
    #[arg(long, short)]
    out: Option<PathBuf>,
    /// Restrict per-language stages to these languages.
    #[arg(long = "lang", short = 'l', value_name = "CODE")]
    langs: Vec<String>,
    /// Settings such as `3.B` (for the selected languages) or `swe=2.B`.
    #[arg(long, short, value_name = "[LANG=]LEVEL.SUB")]
    settings: Vec<String>,
    /// Corpus file or directory for a language.
    #[arg(long, value_name = "LANG=PATH")]
    corpus: Vec<String>,
    /// Paradigm file for a language; repeat to add sources in ascending preference.
    #[arg(long, value_name = "LANG=PATH")]
    paradigms: Vec<String>,
    /// Frame descriptions or a core-type table for a language.
    #[arg(long, value_name = "LANG=PATH")]
    core: Vec<String>,
    /// Bilingual dictionary (`l1<TAB>l2[<TAB>VT]`).
    #[arg(long)]
    dict: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Parse annotated corpora.
    Ingest(Common),
    /// Extract sentence patterns.
    Extract(Common),
    /// Group sentence patterns into valence patterns and write summaries.
    Normalize(Common),
    /// Compute the patterns shared by the language pair.
    Share(Common),
    /// Write the abstract and concrete grammar modules.
    GenGrammar(Common),
    /// Write per-language lexicon modules.
    GenLexicon(Common),
    /// Align the two lexicons into a shared lexicon.
    Align(Common),
    /// Write statistics tables.
    Stats(Common),
    /// All stages in order.
    Run(Common),
    /// Linearize requests with the generated modules.
    Realize(RealizeArgs),
}

#[derive(Args)]
struct RealizeArgs {
    #[command(flatten)]
    common: Common,
    /// Module directory; defaults to `<out>/gf`.
    #[arg(long)]
    gf: Option<PathBuf>,
    #[arg(long, default_value = "pres")]
    tense: String,
    /// List the available frame functions and exit.
    #[arg(long)]
    list: bool,
    /// Requests like `Desiring_V2 want_V2_Desiring { Experiencer = "she" }`;
    /// read one per line from stdin when none are given.
    requests: Vec<String>,
}

fn split_lang(value: &str) -> Result<(&str, &str), PipelineError> {
    value
        .split_once('=')
        .map(|(l, v)| (l.trim(), v.trim()))
        .filter(|(l, v)| !l.is_empty() && !v.is_empty())
        .ok_or_else(|| PipelineError::Usage(format!("expected LANG=VALUE, got `{value}`")))
}

fn configure(c: &Common) -> Result<PipelineConfig, PipelineError> {
    let mut cfg = match &c.config {
        Some(p) => PipelineConfig::load(p)?,
        None => PipelineConfig::default(),
    };
    let cwd = std::env::current_dir().unwrap_or_default();
    for v in &c.corpus {
        let (l, p) = split_lang(v)?;
        cfg.lang_mut(l).corpus.push(cwd.join(p));
    }
    for v in &c.paradigms {
        let (l, p) = split_lang(v)?;
        cfg.lang_mut(l).paradigms.push(cwd.join(p));
    }
    for v in &c.core {
        let (l, p) = split_lang(v)?;
        cfg.lang_mut(l).core_index.push(cwd.join(p));
    }
    if cfg.languages.is_empty() {
        cfg.lang_mut("eng");
        cfg.lang_mut("swe");
    }
    for l in &c.langs {
        cfg.lang(l)?;
    }
    for v in &c.settings {
        let (targets, value): (Vec<String>, &str) = match v.split_once('=') {
            Some((l, s)) => (vec![l.trim().to_string()], s.trim()),
            None if !c.langs.is_empty() => (c.langs.clone(), v.trim()),
            None => (
                cfg.languages.iter().map(|l| l.code.clone()).collect(),
                v.trim(),
            ),
        };
        let settings = value.parse().map_err(|_| {
            PipelineError::Usage(format!(
                "bad settings `{value}`; expected e.g. 3.B or 0.None"
            ))
        })?;
        for t in targets {
            cfg.lang_mut(&t).settings = settings;
        }
    }
    if let Some(d) = &c.dict {
        cfg.dict = Some(cwd.join(d));
    }
    if let Some(o) = &c.out {
        cfg.out = cwd.join(o);
    }
    Ok(cfg)
}

fn stage(stage: Stage, c: &Common) -> Result<(), PipelineError> {
    let cfg = configure(c)?;
    report(pipeline::run_stage(stage, &cfg, &c.langs)?);
    Ok(())
}

fn report(written: Vec<PathBuf>) {
    for p in written {
        println!("{}", p.display());
    }
}

fn realize(a: &RealizeArgs) -> Result<(), PipelineError> {
    let cfg = configure(&a.common)?;
    let code = a.common.langs.first().map(String::as_str).unwrap_or("eng");
    let lang = Lang::from_code(code).ok_or_else(|| {
        PipelineError::Usage(format!("the realizer knows eng and swe, not `{code}`"))
    })?;
    let tense: Tense = a.tense.parse().map_err(PipelineError::Usage)?;
    let dir = a.gf.clone().unwrap_or_else(|| cfg.layout().gf());
    if !dir.is_dir() {
        return Err(PipelineError::Data(format!(
            "{}: no generated modules; run the pipeline first",
            dir.display()
        )));
    }
    let r = Realizer::load_dir(&dir, lang).map_err(|e| PipelineError::Data(e.to_string()))?;
    if a.list {
        for f in r.functions() {
            let args = r.argument_labels(f).unwrap_or_default();
            println!("{f}\t{}", args.join(" "));
        }
        return Ok(());
    }
    let mut requests = a.requests.clone();
    if requests.is_empty() {
        let stdin = std::io::stdin();
        if stdin.is_terminal() {
            return Err(PipelineError::Usage("no requests given".into()));
        }
        for line in stdin.lock().lines() {
            let line = line.map_err(|e| PipelineError::Data(format!("stdin: {e}")))?;
            if !line.trim().is_empty() && !line.trim_start().starts_with('#') {
                requests.push(line);
            }
        }
    }
    let mut failed = 0;
    for req in &requests {
        match Tree::parse(req).and_then(|t| r.realize(&t, tense)) {
            Ok(s) => println!("{s}"),
            Err(e) => {
                eprintln!("error: {e}");
                failed += 1;
            }
        }
    }
    if failed > 0 {
        return Err(PipelineError::Data(format!(
            "{failed} of {} requests failed",
            requests.len()
        )));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();
    let result = match &cli.command {
        Command::Ingest(c) => stage(Stage::Ingest, c),
        Command::Extract(c) => stage(Stage::Extract, c),
        Command::Normalize(c) => stage(Stage::Normalize, c),
        Command::Share(c) => stage(Stage::Share, c),
        Command::GenGrammar(c) => stage(Stage::GenGrammar, c),
        Command::GenLexicon(c) => stage(Stage::GenLexicon, c),
        Command::Align(c) => stage(Stage::Align, c),
        Command::Stats(c) => stage(Stage::Stats, c),
        Command::Run(c) => configure(c)
            .and_then(|cfg| pipeline::run_all(&cfg))
            .map(report),
        Command::Realize(a) => realize(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
