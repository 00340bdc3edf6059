//! On-disk angle tables.
//!
//! Layout (little-endian):
//!
//! ```text
//! "KLT1" | u64 p | u32 method tag | (p-1) x f64 angle, a = 1..p-1 | u64 checksum
//! ```
//!
//! The checksum is the XOR of the bit patterns of all angle words.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::error::Result as CoreResult;
use crate::kloosterman::{kloosterman_all, KloostermanTable, Method, TableProvider};

pub const MAGIC: &[u8; 4] = b"KLT1";
const HEADER_LEN: usize = 4 + 8 + 4;

#[derive(Debug, Error)]
pub enum CacheError {
    #[error("cache I/O: {0}")]
    Io(#[from] io::Error),
    #[error("bad magic bytes")]
    BadMagic,
    #[error("file length {actual} does not match header (expected {expected})")]
    Length { expected: usize, actual: usize },
    #[error("unknown method tag {0}")]
    UnknownMethod(u32),
    #[error("checksum mismatch: stored {stored:#018x}, computed {computed:#018x}")]
    Checksum { stored: u64, computed: u64 },
    #[error("cached table is for p = {found}, wanted {wanted}")]
    WrongPrime { found: u64, wanted: u64 },
    #[error("invalid cached table: {0}")]
    Invalid(#[from] crate::error::Error),
}

pub fn checksum(angles: &[f64]) -> u64 {
    angles.iter().fold(0u64, |acc, a| acc ^ a.to_bits())
}

pub fn encode(p: u64, method: Method, angles: &[f64]) -> Vec<u8> {
    let mut out = Vec::with_capacity(HEADER_LEN + 8 * angles.len() + 8);
    out.extend_from_slice(MAGIC);
    out.extend_from_slice(&p.to_le_bytes());
    out.extend_from_slice(&method.tag().to_le_bytes());
    for a in angles {
        out.extend_from_slice(&a.to_le_bytes());
    }
    out.extend_from_slice(&checksum(angles).to_le_bytes());
    out
}

/// Parses a cache image into `(p, method, angles)`.
pub fn decode(bytes: &[u8]) -> Result<(u64, Method, Vec<f64>), CacheError> {
    if bytes.len() < HEADER_LEN + 8 || &bytes[..4] != MAGIC {
        return Err(CacheError::BadMagic);
    }
    let word = |at: usize| u64::from_le_bytes(bytes[at..at + 8].try_into().unwrap());
    let p = word(4);
    let tag = u32::from_le_bytes(bytes[12..16].try_into().unwrap());
    let method = Method::from_tag(tag).ok_or(CacheError::UnknownMethod(tag))?;
    let count = p.saturating_sub(1) as usize;
    let expected = count
        .checked_mul(8)
        .and_then(|body| body.checked_add(HEADER_LEN + 8))
        .unwrap_or(usize::MAX);
    if bytes.len() != expected {
        return Err(CacheError::Length {
            expected,
            actual: bytes.len(),
        });
    }
    let angles: Vec<f64> = (0..count)
        .map(|i| f64::from_bits(word(HEADER_LEN + 8 * i)))
        .collect();
    let stored = word(HEADER_LEN + 8 * count);
    let computed = checksum(&angles);
    if stored != computed {
        return Err(CacheError::Checksum { stored, computed });
    }
    Ok((p, method, angles))
}

/// Writes via a temporary sibling file and an atomic rename.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> io::Result<()> {
    let dir = path.parent().unwrap_or_else(|| Path::new("."));
    fs::create_dir_all(dir)?;
    let name = path.file_name().and_then(|n| n.to_str()).unwrap_or("table");
    let tmp = dir.join(format!(".{name}.{}.tmp", std::process::id()));
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path).inspect_err(|_| {
        let _ = fs::remove_file(&tmp);
    })
}

/// Directory of cached angle tables, one file per `(p, method)`.
#[derive(Debug, Clone)]
pub struct AngleCache {
    dir: PathBuf,
    method: Method,
}

/// What happened when a table was requested from the cache.
#[derive(Debug)]
pub enum Lookup {
    Hit,
    Built,
    Rebuilt(CacheError),
}

impl AngleCache {
    pub fn new(dir: impl Into<PathBuf>, method: Method) -> Self {
        AngleCache {
            dir: dir.into(),
            method,
        }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, p: u64) -> PathBuf {
        self.dir
            .join(format!("klt1-{p}-{}.bin", self.method.name()))
    }

    pub fn load(&self, p: u64) -> Result<Option<KloostermanTable>, CacheError> {
        let bytes = match fs::read(self.path_for(p)) {
            Ok(b) => b,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e.into()),
        };
        let (found, method, angles) = decode(&bytes)?;
        if found != p {
            return Err(CacheError::WrongPrime { found, wanted: p });
        }
        Ok(Some(KloostermanTable::from_angles(p, method, angles)?))
    }

    pub fn store(&self, table: &KloostermanTable) -> io::Result<()> {
        let bytes = encode(table.p(), table.method(), table.angles());
        write_atomic(&self.path_for(table.p()), &bytes)
    }

    /// Returns the cached table, building and storing it when it is absent
    /// or unreadable.
    pub fn fetch(&self, p: u64) -> CoreResult<(KloostermanTable, Lookup)> {
        let outcome = match self.load(p) {
            Ok(Some(t)) => return Ok((t, Lookup::Hit)),
            Ok(None) => Lookup::Built,
            Err(e) => Lookup::Rebuilt(e),
        };
        let table = kloosterman_all(p, self.method)?;
        // a failed write only costs a rebuild next time
        let _ = self.store(&table);
        Ok((table, outcome))
    }
}

impl TableProvider for AngleCache {
    fn table(&self, p: u64) -> CoreResult<KloostermanTable> {
        self.fetch(p).map(|(t, _)| t)
    }
}
