//! Extraction counts on the generated corpus, checked against Python's `ast`.

use std::path::{Path, PathBuf};

use corpusqc::ingest::{discover, ingest_file, require_docstring, FunctionKind, RawFunction};
use serde::Deserialize;

#[derive(Deserialize)]
struct Expected {
    files: usize,
    functions: usize,
    lambdas: usize,
    with_docstring: usize,
}

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

fn ingest_all(root: &Path) -> (usize, Vec<RawFunction>) {
    let files = discover(root).unwrap();
    let mut funcs = Vec::new();
    for (full, rel) in &files {
        let out = ingest_file(full, rel);
        assert!(out.reject.is_none(), "{rel}: {:?}", out.reject);
        funcs.extend(out.functions);
    }
    (files.len(), funcs)
}

#[test]
fn counts_match_python_ast() {
    let expected: Expected =
        serde_json::from_str(&std::fs::read_to_string(fixtures().join("corpus_expected.json")).unwrap()).unwrap();
    let (files, funcs) = ingest_all(&fixtures().join("corpus"));
    assert_eq!(files, expected.files);
    assert_eq!(funcs.len(), expected.functions);
    assert_eq!(funcs.iter().filter(|f| f.kind == FunctionKind::Lambda).count(), expected.lambdas);
    assert_eq!(require_docstring(funcs).len(), expected.with_docstring);
}

#[test]
fn ingest_is_deterministic_and_ids_unique() {
    let root = fixtures().join("corpus");
    let (_, a) = ingest_all(&root);
    let (_, b) = ingest_all(&root);
    assert_eq!(a, b);
    let mut ids: Vec<_> = a.iter().map(|f| f.func_id).collect();
    ids.sort();
    ids.dedup();
    assert_eq!(ids.len(), a.len());
}
