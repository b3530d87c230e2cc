//! Seeded train/eval/test splits, full and cleaned training variants, and
//! JSONL emission with a reproducibility manifest.

use std::collections::{BTreeMap, HashMap};
use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::curate::{CurateConfig, CuratedPair};
use crate::ids::FuncId;
use crate::qualscan::{ScanVerdict, Status};

pub const DEFAULT_SEED: u64 = 42;
pub const PROMPT_FORMAT: &str = "description + \"\\n\" + signature";
pub const TOKEN_COUNTER: &str = "code: Python lexical tokens (names, numbers, strings, operators; comments, \
newlines and indentation excluded); description: whitespace-separated words with each leading or \
trailing ASCII punctuation mark counted as a separate token";
pub const SHUFFLE_ALGORITHM: &str =
    "ids sorted ascending by func_id, then Fisher-Yates shuffle (rand 0.8 SliceRandom::shuffle) driven by ChaCha8Rng::seed_from_u64(seed); first train, then eval, then test";

#[derive(Debug, thiserror::Error)]
pub enum DatasetError {
    #[error("cannot split an empty set of pairs")]
    Empty,
    #[error("duplicate func_id {0}")]
    DuplicateId(FuncId),
    #[error("no scan verdict for func_id {0}")]
    MissingVerdict(FuncId),
    #[error("pair {0} has no split assignment")]
    Unassigned(FuncId),
    #[error("cannot write {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Split {
    Train,
    Eval,
    Test,
}

impl Split {
    pub const ALL: [Split; 3] = [Split::Train, Split::Eval, Split::Test];

    pub fn as_str(self) -> &'static str {
        match self {
            Split::Train => "train",
            Split::Eval => "eval",
            Split::Test => "test",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Full,
    Cleaned,
}

impl Variant {
    pub fn as_str(self) -> &'static str {
        match self {
            Variant::Full => "full",
            Variant::Cleaned => "cleaned",
        }
    }
}

/// Sizes for `n` items: 10% eval and 10% test (floored), the rest train.
pub fn split_sizes(n: usize) -> (usize, usize, usize) {
    let tenth = n / 10;
    (n - 2 * tenth, tenth, tenth)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitPlan {
    pub train: Vec<FuncId>,
    pub eval: Vec<FuncId>,
    pub test: Vec<FuncId>,
}

impl SplitPlan {
    pub fn get(&self, split: Split) -> &[FuncId] {
        match split {
            Split::Train => &self.train,
            Split::Eval => &self.eval,
            Split::Test => &self.test,
        }
    }
}

/// Seeded shuffle, then contiguous 80/10/10 partition. Independent of input
/// order.
pub fn split(ids: &[FuncId], seed: u64) -> Result<SplitPlan, DatasetError> {
    if ids.is_empty() {
        return Err(DatasetError::Empty);
    }
    let mut sorted = ids.to_vec();
    sorted.sort_unstable();
    if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
        return Err(DatasetError::DuplicateId(w[0]));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sorted.shuffle(&mut rng);
    let (n_train, n_eval, _) = split_sizes(sorted.len());
    let test = sorted.split_off(n_train + n_eval);
    let eval = sorted.split_off(n_train);
    Ok(SplitPlan { train: sorted, eval, test })
}

/// Lookup of a function's scan status.
pub trait VerdictIndex {
    fn status(&self, id: &FuncId) -> Option<Status>;
}

impl VerdictIndex for HashMap<FuncId, Status> {
    fn status(&self, id: &FuncId) -> Option<Status> {
        self.get(id).copied()
    }
}

impl VerdictIndex for HashMap<FuncId, ScanVerdict> {
    fn status(&self, id: &FuncId) -> Option<Status> {
        self.get(id).map(|v| v.status)
    }
}

/// Full training pool and its clean-only subset.
pub fn make_variants(
    train_pool: &[FuncId],
    verdicts: &impl VerdictIndex,
) -> Result<(Vec<FuncId>, Vec<FuncId>), DatasetError> {
    let mut cleaned = Vec::with_capacity(train_pool.len());
    for id in train_pool {
        match verdicts.status(id) {
            Some(Status::Clean) => cleaned.push(*id),
            Some(_) => {}
            None => return Err(DatasetError::MissingVerdict(*id)),
        }
    }
    Ok((train_pool.to_vec(), cleaned))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitAssignment {
    pub func_id: FuncId,
    pub split: Split,
    pub in_full: bool,
    pub in_cleaned: bool,
}

impl SplitAssignment {
    pub fn member_of(&self, variant: Variant) -> bool {
        match variant {
            Variant::Full => self.in_full,
            Variant::Cleaned => self.in_cleaned,
        }
    }
}

/// Per-id assignments. Eval and test belong to both variants; training
/// items belong to the cleaned variant only when their verdict is clean.
pub fn assignments(plan: &SplitPlan, verdicts: &impl VerdictIndex) -> Result<Vec<SplitAssignment>, DatasetError> {
    let mut out = Vec::with_capacity(plan.train.len() + plan.eval.len() + plan.test.len());
    for &func_id in &plan.train {
        let status = verdicts.status(&func_id).ok_or(DatasetError::MissingVerdict(func_id))?;
        out.push(SplitAssignment { func_id, split: Split::Train, in_full: true, in_cleaned: status == Status::Clean });
    }
    for (split, ids) in [(Split::Eval, &plan.eval), (Split::Test, &plan.test)] {
        out.extend(ids.iter().map(|&func_id| SplitAssignment { func_id, split, in_full: true, in_cleaned: true }));
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DatasetRecord {
    pub func_id: FuncId,
    pub prompt: String,
    pub completion: String,
}

impl DatasetRecord {
    pub fn from_pair(p: &CuratedPair) -> Self {
        DatasetRecord {
            func_id: p.func_id,
            prompt: format!("{}\n{}", p.description, p.signature),
            completion: p.code.clone(),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitCounts {
    pub train: usize,
    pub eval: usize,
    pub test: usize,
}

impl SplitCounts {
    fn bump(&mut self, split: Split) {
        match split {
            Split::Train => self.train += 1,
            Split::Eval => self.eval += 1,
            Split::Test => self.test += 1,
        }
    }

    pub fn get(&self, split: Split) -> usize {
        match split {
            Split::Train => self.train,
            Split::Eval => self.eval,
            Split::Test => self.test,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FileDigest {
    pub path: String,
    pub lines: usize,
    pub sha256: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DatasetManifest {
    pub tool_version: String,
    pub variant: Variant,
    pub seed: u64,
    pub counts: SplitCounts,
    pub thresholds: CurateConfig,
    pub files: BTreeMap<String, FileDigest>,
    pub prompt_format: String,
    pub token_counter: String,
    pub shuffle: String,
}

/// Settings recorded in every manifest.
#[derive(Debug, Clone)]
pub struct ManifestMeta {
    pub seed: u64,
    pub thresholds: CurateConfig,
    pub tool_version: String,
}

struct HashingWriter<W: Write> {
    inner: W,
    hasher: Sha256,
}

impl<W: Write> Write for HashingWriter<W> {
    fn write(&mut self, buf: &[u8]) -> io::Result<usize> {
        let n = self.inner.write(buf)?;
        self.hasher.update(&buf[..n]);
        Ok(n)
    }

    fn flush(&mut self) -> io::Result<()> {
        self.inner.flush()
    }
}

/// Write `<dir>/<variant>/{train,eval,test}.jsonl` (records sorted by
/// func_id) and `manifest.json`.
pub fn emit(
    pairs: &[CuratedPair],
    assignments: &[SplitAssignment],
    variant: Variant,
    dir: &Path,
    meta: &ManifestMeta,
) -> Result<DatasetManifest, DatasetError> {
    let out_dir = dir.join(variant.as_str());
    let io_err = |path: &Path| {
        let path = path.to_path_buf();
        move |source| DatasetError::Io { path, source }
    };
    fs::create_dir_all(&out_dir).map_err(io_err(&out_dir))?;
    let by_id: HashMap<FuncId, &SplitAssignment> = assignments.iter().map(|a| (a.func_id, a)).collect();

    let mut order: Vec<&CuratedPair> = pairs.iter().collect();
    order.sort_by_key(|p| p.func_id);

    let mut writers = Vec::new();
    for split in Split::ALL {
        let path = out_dir.join(format!("{}.jsonl", split.as_str()));
        let file = File::create(&path).map_err(io_err(&path))?;
        writers.push((path, HashingWriter { inner: BufWriter::new(file), hasher: Sha256::new() }));
    }
    let mut counts = SplitCounts::default();
    let mut line = Vec::with_capacity(4096);
    for p in order {
        let a = by_id.get(&p.func_id).ok_or(DatasetError::Unassigned(p.func_id))?;
        if !a.member_of(variant) {
            continue;
        }
        line.clear();
        serde_json::to_writer(&mut line, &DatasetRecord::from_pair(p)).expect("records serialize");
        line.push(b'\n');
        let (path, w) = &mut writers[a.split as usize];
        w.write_all(&line).map_err(io_err(path))?;
        counts.bump(a.split);
    }
    let mut files = BTreeMap::new();
    for (split, (path, mut w)) in Split::ALL.into_iter().zip(writers) {
        w.flush().map_err(io_err(&path))?;
        let name = format!("{}.jsonl", split.as_str());
        files.insert(
            split.as_str().to_string(),
            FileDigest { path: name, lines: counts.get(split), sha256: hex::encode(w.hasher.finalize()) },
        );
    }
    let manifest = DatasetManifest {
        tool_version: meta.tool_version.clone(),
        variant,
        seed: meta.seed,
        counts,
        thresholds: meta.thresholds.clone(),
        files,
        prompt_format: PROMPT_FORMAT.to_string(),
        token_counter: TOKEN_COUNTER.to_string(),
        shuffle: SHUFFLE_ALGORITHM.to_string(),
    };
    let mpath = out_dir.join("manifest.json");
    let text = serde_json::to_string_pretty(&manifest).expect("manifest serializes") + "\n";
    fs::write(&mpath, text).map_err(io_err(&mpath))?;
    Ok(manifest)
}
