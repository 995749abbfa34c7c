//! Checkpoint files: JSON documents replaced atomically, guarded by an
//! advisory lock on a sibling `.lock` file.

use std::fs::{self, File, OpenOptions, TryLockError};
use std::io::Write;
use std::path::{Path, PathBuf};

use simpal_core::simulcheck::SearchCheckpoint;

/// Failures while reading, writing or locking a checkpoint.
#[derive(Debug, thiserror::Error)]
pub enum CheckpointError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: not a valid checkpoint: {source}")]
    Format {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
    #[error("{0}: checkpoint is in use by another process")]
    Locked(PathBuf),
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CheckpointError + '_ {
    move |source| CheckpointError::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn sibling(path: &Path, suffix: &str) -> PathBuf {
    let mut name = path.file_name().map(|n| n.to_os_string()).unwrap_or_default();
    name.push(suffix);
    path.with_file_name(name)
}

/// Serializes a checkpoint; integers, including `u128` values, are written as
/// plain decimal JSON numbers.
pub fn to_json(cp: &SearchCheckpoint) -> String {
    let mut s = serde_json::to_string_pretty(cp).expect("checkpoint serializes");
    s.push('\n');
    s
}

/// Parses a checkpoint document. Internal consistency is checked separately
/// by [`SearchCheckpoint::validate`].
pub fn from_json(text: &str) -> serde_json::Result<SearchCheckpoint> {
    serde_json::from_str(text)
}

/// Reads a checkpoint file.
pub fn load(path: &Path) -> Result<SearchCheckpoint, CheckpointError> {
    let text = fs::read_to_string(path).map_err(io_err(path))?;
    from_json(&text).map_err(|source| CheckpointError::Format {
        path: path.to_path_buf(),
        source,
    })
}

/// Writes a checkpoint atomically: the document goes to `<path>.tmp`, is
/// flushed to disk and then renamed over `path`.
pub fn store(path: &Path, cp: &SearchCheckpoint) -> Result<(), CheckpointError> {
    let tmp = sibling(path, ".tmp");
    let mut f = File::create(&tmp).map_err(io_err(&tmp))?;
    f.write_all(to_json(cp).as_bytes()).map_err(io_err(&tmp))?;
    f.sync_all().map_err(io_err(&tmp))?;
    drop(f);
    fs::rename(&tmp, path).map_err(io_err(path))
}

/// Exclusive advisory lock on `<checkpoint>.lock`, held for the lifetime of
/// the value.
#[derive(Debug)]
pub struct CheckpointLock {
    _file: File,
    path: PathBuf,
}

impl CheckpointLock {
    /// Takes the lock without blocking; fails if another process holds it.
    pub fn acquire(checkpoint: &Path) -> Result<Self, CheckpointError> {
        let path = sibling(checkpoint, ".lock");
        let file = OpenOptions::new()
            .create(true)
            .truncate(false)
            .write(true)
            .open(&path)
            .map_err(io_err(&path))?;
        match file.try_lock() {
            Ok(()) => Ok(CheckpointLock { _file: file, path }),
            Err(TryLockError::WouldBlock) => Err(CheckpointError::Locked(checkpoint.to_path_buf())),
            Err(TryLockError::Error(e)) => Err(io_err(&path)(e)),
        }
    }

    pub fn path(&self) -> &Path {
        &self.path
    }
}
