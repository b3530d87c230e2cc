//! Line-delimited JSON reading and writing.

use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::marker::PhantomData;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::Serialize;

#[derive(Debug, thiserror::Error)]
pub enum JsonlError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("{path}:{line}: {source}")]
    Parse { path: PathBuf, line: usize, source: serde_json::Error },
}

/// Streaming reader; blank lines are skipped.
pub struct JsonlReader<T> {
    path: PathBuf,
    lines: io::Lines<BufReader<File>>,
    line: usize,
    _marker: PhantomData<T>,
}

impl<T: DeserializeOwned> JsonlReader<T> {
    pub fn open(path: &Path) -> Result<Self, JsonlError> {
        let file = File::open(path).map_err(|source| JsonlError::Io { path: path.to_path_buf(), source })?;
        Ok(JsonlReader { path: path.to_path_buf(), lines: BufReader::new(file).lines(), line: 0, _marker: PhantomData })
    }
}

impl<T: DeserializeOwned> Iterator for JsonlReader<T> {
    type Item = Result<T, JsonlError>;

    fn next(&mut self) -> Option<Self::Item> {
        loop {
            let text = match self.lines.next()? {
                Ok(t) => t,
                Err(source) => return Some(Err(JsonlError::Io { path: self.path.clone(), source })),
            };
            self.line += 1;
            if text.trim().is_empty() {
                continue;
            }
            return Some(
                serde_json::from_str(&text)
                    .map_err(|source| JsonlError::Parse { path: self.path.clone(), line: self.line, source }),
            );
        }
    }
}

pub fn read_all<T: DeserializeOwned>(path: &Path) -> Result<Vec<T>, JsonlError> {
    JsonlReader::open(path)?.collect()
}

/// Feed records to `f` in chunks of at most `chunk` items.
pub fn for_each_chunk<T: DeserializeOwned, E: From<JsonlError>>(
    path: &Path,
    chunk: usize,
    mut f: impl FnMut(Vec<T>) -> Result<(), E>,
) -> Result<(), E> {
    let chunk = chunk.max(1);
    let mut buf = Vec::with_capacity(chunk);
    for rec in JsonlReader::open(path)? {
        buf.push(rec?);
        if buf.len() == chunk {
            f(std::mem::replace(&mut buf, Vec::with_capacity(chunk)))?;
        }
    }
    if !buf.is_empty() {
        f(buf)?;
    }
    Ok(())
}

pub struct JsonlWriter {
    path: PathBuf,
    out: BufWriter<File>,
    count: usize,
}

impl JsonlWriter {
    pub fn create(path: &Path) -> Result<Self, JsonlError> {
        if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
            std::fs::create_dir_all(parent).map_err(|source| JsonlError::Io { path: parent.to_path_buf(), source })?;
        }
        let file = File::create(path).map_err(|source| JsonlError::Io { path: path.to_path_buf(), source })?;
        Ok(JsonlWriter { path: path.to_path_buf(), out: BufWriter::new(file), count: 0 })
    }

    pub fn write<T: Serialize>(&mut self, record: &T) -> Result<(), JsonlError> {
        let io = |source| JsonlError::Io { path: self.path.clone(), source };
        serde_json::to_writer(&mut self.out, record).map_err(|e| io(e.into()))?;
        self.out.write_all(b"\n").map_err(io)?;
        self.count += 1;
        Ok(())
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn finish(mut self) -> Result<usize, JsonlError> {
        self.out.flush().map_err(|source| JsonlError::Io { path: self.path.clone(), source })?;
        Ok(self.count)
    }
}

pub fn write_all<'a, T: Serialize + 'a>(path: &Path, records: impl IntoIterator<Item = &'a T>) -> Result<usize, JsonlError> {
    let mut w = JsonlWriter::create(path)?;
    for r in records {
        w.write(r)?;
    }
    w.finish()
}
