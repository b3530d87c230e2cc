//! Helpers shared by the CLI test targets: running the binary, building
//! replicated corpora and driving a full pipeline.

#![allow(dead_code)]

use std::collections::BTreeMap;
use std::fs;
use std::io::Read;
use std::os::unix::process::ExitStatusExt;
use std::path::{Path, PathBuf};
use std::process::{Command, ExitStatus, Output, Stdio};

use serde_json::{json, Value};

pub fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/tests/fixtures")
}

/// The binary with `args`, isolated from any CORPUSQC_* variables of the
/// calling environment.
pub fn corpusqc<S: AsRef<std::ffi::OsStr>>(args: &[S]) -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_corpusqc"));
    cmd.args(args);
    for (k, _) in std::env::vars() {
        if k.starts_with("CORPUSQC_") {
            cmd.env_remove(k);
        }
    }
    cmd
}

fn read_pipe(mut r: impl Read) -> Vec<u8> {
    let mut buf = Vec::new();
    r.read_to_end(&mut buf).expect("read child pipe");
    buf
}

/// Run to completion, returning the output and the child's peak resident
/// set size in KiB.
#[allow(clippy::zombie_processes)] // reaped by wait4 below
pub fn run_measured(mut cmd: Command) -> (Output, u64) {
    cmd.stdout(Stdio::piped()).stderr(Stdio::piped());
    let mut child = cmd.spawn().expect("spawn corpusqc");
    let pid = child.id() as libc::pid_t;
    let stdout = child.stdout.take().unwrap();
    let stderr = child.stderr.take().unwrap();
    let out = std::thread::spawn(move || read_pipe(stdout));
    let err = std::thread::spawn(move || read_pipe(stderr));
    let mut status: libc::c_int = 0;
    // SAFETY: rusage is plain data that wait4 fills in for our own child.
    let mut usage: libc::rusage = unsafe { std::mem::zeroed() };
    let rc = unsafe { libc::wait4(pid, &mut status, 0, &mut usage) };
    assert_eq!(rc, pid, "wait4 failed");
    let output = Output { status: ExitStatus::from_raw(status), stdout: out.join().unwrap(), stderr: err.join().unwrap() };
    (output, usage.ru_maxrss as u64)
}

pub fn expect_success(stage: &str, out: &Output) {
    assert!(
        out.status.success(),
        "{stage} exited with {:?}\n{}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
}

/// Copy every `.py` file under `src` into `dst` `times` times. Each copy
/// gets a trailing comment so that file contents, and so function ids,
/// stay distinct.
pub fn replicate(src: &Path, dst: &Path, times: usize) {
    for (full, rel) in corpusqc::ingest::discover(src).unwrap() {
        let text = fs::read_to_string(&full).unwrap();
        for copy in 0..times {
            let target = dst.join(format!("copy{copy:02}")).join(&rel);
            fs::create_dir_all(target.parent().unwrap()).unwrap();
            fs::write(&target, format!("{text}# copy {copy}\n")).unwrap();
        }
    }
}

fn write_jsonl(path: &Path, rows: &[Value]) {
    let mut text = String::new();
    for r in rows {
        text.push_str(&serde_json::to_string(r).unwrap());
        text.push('\n');
    }
    fs::write(path, text).unwrap();
}

/// Two synthetic models for the test split: `alpha` reproduces every
/// reference, `beta` alters every other one. Returns (generations, passes).
pub fn synthetic_generations(test_split: &Path, dir: &Path) -> (PathBuf, PathBuf) {
    let mut gens = Vec::new();
    let mut passes = Vec::new();
    for (i, line) in fs::read_to_string(test_split).unwrap().lines().enumerate() {
        let rec: Value = serde_json::from_str(line).unwrap();
        let id = rec["func_id"].as_str().unwrap().to_string();
        let code = rec["completion"].as_str().unwrap();
        let beta = if i % 2 == 0 { code.replacen("return", "return 0 or", 1) } else { code.to_string() };
        gens.push(json!({"func_id": id, "model_id": "alpha", "completion": code}));
        gens.push(json!({"func_id": id, "model_id": "beta", "completion": beta}));
        passes.push(json!({"model_id": "alpha", "func_id": id, "passed": i % 5 != 0}));
        passes.push(json!({"model_id": "beta", "func_id": id, "passed": i % 3 == 0}));
    }
    let g = dir.join("generations.jsonl");
    let p = dir.join("passes.jsonl");
    write_jsonl(&g, &gens);
    write_jsonl(&p, &passes);
    (g, p)
}

/// Peak RSS (KiB) of each streaming stage of a pipeline run.
#[derive(Debug, Default)]
pub struct StagePeaks {
    pub ingest: u64,
    pub curate: u64,
    pub scan: u64,
}

impl StagePeaks {
    pub fn max(&self) -> u64 {
        self.ingest.max(self.curate).max(self.scan)
    }
}

/// Ingest, curate and scan `corpora` into `out` with a fixed thread count
/// and chunk size.
pub fn streaming_stages(corpora: &[&Path], out: &Path, chunk: usize) -> StagePeaks {
    let out_dir = out.to_str().unwrap();
    let base = ["--out-dir", out_dir, "--threads", "2"];
    let run = |stage: &str, extra: &[&str]| {
        let mut args: Vec<&str> = vec![stage];
        args.extend(base);
        args.extend(extra);
        let mut cmd = corpusqc(&args);
        cmd.env("CORPUSQC_CHUNK_SIZE", chunk.to_string());
        let (output, rss) = run_measured(cmd);
        expect_success(stage, &output);
        rss
    };
    let mut ingest_args = Vec::new();
    for c in corpora {
        ingest_args.push("--corpus");
        ingest_args.push(c.to_str().unwrap());
    }
    StagePeaks { ingest: run("ingest", &ingest_args), curate: run("curate", &[]), scan: run("scan", &[]) }
}

/// Every pipeline stage on `corpora`, writing all artifacts under `out`.
pub fn full_pipeline(corpora: &[&Path], out: &Path) -> StagePeaks {
    let peaks = streaming_stages(corpora, out, 64);
    let out_dir = out.to_str().unwrap();
    let stage = |args: &[&str]| {
        let mut all = vec!["--out-dir", out_dir, "--threads", "2"];
        all.extend(args);
        let output = corpusqc(&all).output().unwrap();
        expect_success(args[0], &output);
    };
    stage(&["build-dataset"]);
    let work = out.join("work");
    fs::create_dir_all(&work).unwrap();
    let (gens, passes) = synthetic_generations(&out.join("dataset/full/test.jsonl"), &work);
    let train = out.join("dataset/full/train.jsonl");
    stage(&[
        "score",
        "--generations",
        gens.to_str().unwrap(),
        "--targets",
        out.join("dataset/full/test.jsonl").to_str().unwrap(),
        "--train",
        train.to_str().unwrap(),
        "--passes",
        passes.to_str().unwrap(),
        "--scan",
    ]);
    stage(&["compare", "--passes", passes.to_str().unwrap()]);
    stage(&[
        "report",
        "--score-summary",
        out.join("score_summary.json").to_str().unwrap(),
        "--comparison",
        out.join("comparison.json").to_str().unwrap(),
    ]);
    peaks
}

/// Relative path to file contents for every file under `root`.
pub fn tree_contents(root: &Path) -> BTreeMap<String, Vec<u8>> {
    let mut out = BTreeMap::new();
    let mut stack = vec![root.to_path_buf()];
    while let Some(dir) = stack.pop() {
        for entry in fs::read_dir(&dir).unwrap() {
            let path = entry.unwrap().path();
            if path.is_dir() {
                stack.push(path);
            } else {
                let rel = path.strip_prefix(root).unwrap().to_string_lossy().into_owned();
                out.insert(rel, fs::read(&path).unwrap());
            }
        }
    }
    out
}
