mod common;

use std::path::Path;

use common::*;
use framegram::pipeline::{self, PipelineConfig, PipelineError, Stage, COVERAGE_HEADER};

fn config(out: &Path) -> PipelineConfig {
    let mut cfg = PipelineConfig::load(&demo_config()).unwrap();
    cfg.out = out.to_path_buf();
    cfg
}

#[test]
fn stage_without_input_names_the_missing_artifact() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config(dir.path());
    let err = pipeline::run_stage(Stage::Extract, &cfg, &[]).unwrap_err();
    assert_eq!(err.exit_code(), 1);
    assert!(err.to_string().contains("missing input artifact"), "{err}");
    assert!(err.to_string().contains("eng/corpus.json"), "{err}");
}

#[test]
fn share_reports_which_language_is_missing() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config(dir.path());
    let eng = vec!["eng".to_string()];
    for s in [Stage::Ingest, Stage::Extract, Stage::Normalize] {
        pipeline::run_stage(s, &cfg, &eng).unwrap();
    }
    let err = pipeline::share(&cfg).unwrap_err();
    assert!(matches!(err, PipelineError::Data(_)));
    assert!(
        err.to_string()
            .contains("missing corpus artifact for `swe`"),
        "{err}"
    );
}

#[test]
fn older_schema_is_refused() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config(dir.path());
    pipeline::run_stage(Stage::Ingest, &cfg, &[]).unwrap();
    let path = cfg.layout().corpus("eng");
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::write(
        &path,
        text.replacen("\"schema_version\": 1", "\"schema_version\": 0", 1),
    )
    .unwrap();
    let err = pipeline::run_stage(Stage::Extract, &cfg, &["eng".into()]).unwrap_err();
    assert!(
        err.to_string().contains("re-run the `ingest` stage"),
        "{err}"
    );
}

#[test]
fn settings_change_makes_artifacts_stale() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = config(dir.path());
    for s in [Stage::Ingest, Stage::Extract] {
        pipeline::run_stage(s, &cfg, &[]).unwrap();
    }
    cfg.lang_mut("eng").settings = "1.A".parse().unwrap();
    let err = pipeline::run_stage(Stage::Normalize, &cfg, &["eng".into()]).unwrap_err();
    assert!(err.to_string().contains("stale"), "{err}");
    // Re-running extract fixes it.
    pipeline::run_stage(Stage::Extract, &cfg, &["eng".into()]).unwrap();
    pipeline::run_stage(Stage::Normalize, &cfg, &["eng".into()]).unwrap();
}

#[test]
fn stats_on_nothing_gives_header_only_tables() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config(dir.path());
    let written = pipeline::stats(&cfg).unwrap();
    assert_eq!(written.len(), 6);
    let coverage = std::fs::read_to_string(cfg.layout().stats().join("coverage.tsv")).unwrap();
    let lines: Vec<&str> = coverage.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(lines, [COVERAGE_HEADER]);
    for p in written {
        let body = std::fs::read_to_string(&p).unwrap();
        assert_eq!(
            body.lines().filter(|l| !l.starts_with('#')).count(),
            1,
            "{}",
            p.display()
        );
    }
}

#[test]
fn full_run_is_deterministic() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    run_demo(a.path());
    run_demo(b.path());
    let gf = |d: &Path| {
        let mut files: Vec<_> = std::fs::read_dir(d.join("gf"))
            .unwrap()
            .map(|e| e.unwrap().path())
            .collect();
        files.sort();
        files
            .iter()
            .map(|f| std::fs::read_to_string(f).unwrap())
            .collect::<Vec<_>>()
    };
    assert_eq!(gf(a.path()), gf(b.path()));
    assert_eq!(gf(a.path()).len(), 10);
}

#[test]
fn bad_configuration_is_a_usage_error() {
    for text in [
        "languages = eng\nlang.eng.settings = 7.Q\n",
        "variant_order = random\n",
        "nonsense\n",
    ] {
        let err = PipelineConfig::parse(text, Path::new(".")).unwrap_err();
        assert_eq!(err.exit_code(), 2, "{text}: {err}");
    }
    let cfg = PipelineConfig::parse("languages = eng\n", Path::new(".")).unwrap();
    let err = pipeline::run_stage(Stage::Ingest, &cfg, &[]).unwrap_err();
    assert_eq!(err.exit_code(), 2, "{err}");
}
