//! On-disk cache of exact density matrices, one file per (builder, n).
//!
//! File layout, all integers little-endian:
//!
//! ```text
//! magic      8 bytes  "FSPINDM\0"
//! version    u32
//! builder    u8 length + UTF-8 name
//! n          u32
//! dim        u64      (= 2^n)
//! denom      i64
//! numer      dim*dim x i64, row-major
//! checksum   32 bytes SHA-256 of everything above
//! ```

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use fermispin::linalg::Matrix;
use fermispin::{Builder, ExactDensityMatrix, ExactMatrix, Limits};
use serde::Serialize;
use sha2::{Digest, Sha256};

pub const MAGIC: &[u8; 8] = b"FSPINDM\0";
pub const FORMAT_VERSION: u32 = 1;
const CHECKSUM_LEN: usize = 32;

/// How a matrix request was served.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CacheOutcome {
    /// Read from a valid cache file.
    Hit,
    /// Built fresh and written to the cache.
    Stored,
    /// The cache file was invalid; rebuilt and overwritten.
    Rebuilt,
    /// Built fresh without caching (disabled or unwritable).
    Uncached,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DecodeError {
    #[error("file too short")]
    Truncated,
    #[error("bad magic bytes")]
    BadMagic,
    #[error("format version {0} is not supported")]
    Version(u32),
    #[error("checksum mismatch")]
    Checksum,
    #[error("malformed header: {0}")]
    Header(String),
}

#[derive(Debug, Clone, Default)]
pub struct MatrixCache {
    dir: Option<PathBuf>,
}

impl MatrixCache {
    pub fn new(dir: Option<PathBuf>) -> Self {
        MatrixCache { dir }
    }

    pub fn disabled() -> Self {
        MatrixCache { dir: None }
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    pub fn path_for(&self, builder: Builder, n: usize) -> Option<PathBuf> {
        self.dir
            .as_ref()
            .map(|d| d.join(format!("{}-n{n}.fspin", builder.name())))
    }

    pub fn get_or_build(
        &self,
        builder: Builder,
        n: usize,
        limits: &Limits,
    ) -> fermispin::Result<(ExactDensityMatrix, CacheOutcome)> {
        let Some(path) = self.path_for(builder, n) else {
            return Ok((builder.build(n, limits)?, CacheOutcome::Uncached));
        };
        limits.check_dense(n)?;

        let mut outcome = CacheOutcome::Stored;
        if let Ok(bytes) = fs::read(&path) {
            match decode(&bytes) {
                Ok((b, rho)) if b == builder && rho.n() == n => {
                    return Ok((rho, CacheOutcome::Hit))
                }
                Ok(_) => {
                    log::warn!("{} holds a different matrix; rebuilding", path.display());
                    outcome = CacheOutcome::Rebuilt;
                }
                Err(e) => {
                    log::warn!("{} is invalid ({e}); rebuilding", path.display());
                    outcome = CacheOutcome::Rebuilt;
                }
            }
        }

        let rho = builder.build(n, limits)?;
        if let Err(e) = write_atomic(&path, &encode(builder, &rho)) {
            log::warn!(
                "cannot write cache file {}: {e}; continuing without cache",
                path.display()
            );
            outcome = CacheOutcome::Uncached;
        }
        Ok((rho, outcome))
    }
}

fn write_atomic(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    let dir = path.parent().unwrap_or(Path::new("."));
    fs::create_dir_all(dir)?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

pub fn encode(builder: Builder, rho: &ExactDensityMatrix) -> Vec<u8> {
    let dim = rho.dim();
    let name = builder.name().as_bytes();
    let mut out = Vec::with_capacity(64 + dim * dim * 8);
    out.extend_from_slice(MAGIC);
    out.extend_from_slice(&FORMAT_VERSION.to_le_bytes());
    out.push(name.len() as u8);
    out.extend_from_slice(name);
    out.extend_from_slice(&(rho.n() as u32).to_le_bytes());
    out.extend_from_slice(&(dim as u64).to_le_bytes());
    out.extend_from_slice(&rho.denom().to_le_bytes());
    for x in rho.numer().as_slice() {
        out.extend_from_slice(&x.to_le_bytes());
    }
    let digest = Sha256::digest(&out);
    out.extend_from_slice(&digest);
    out
}

struct Reader<'a> {
    buf: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, len: usize) -> Result<&'a [u8], DecodeError> {
        let end = self.pos.checked_add(len).ok_or(DecodeError::Truncated)?;
        let s = self.buf.get(self.pos..end).ok_or(DecodeError::Truncated)?;
        self.pos = end;
        Ok(s)
    }

    fn array<const N: usize>(&mut self) -> Result<[u8; N], DecodeError> {
        Ok(self.take(N)?.try_into().expect("length checked"))
    }
}

pub fn decode(bytes: &[u8]) -> Result<(Builder, ExactDensityMatrix), DecodeError> {
    if bytes.len() < MAGIC.len() + 4 + CHECKSUM_LEN {
        return Err(DecodeError::Truncated);
    }
    if &bytes[..MAGIC.len()] != MAGIC {
        return Err(DecodeError::BadMagic);
    }
    let (payload, checksum) = bytes.split_at(bytes.len() - CHECKSUM_LEN);
    let mut r = Reader {
        buf: payload,
        pos: MAGIC.len(),
    };
    let version = u32::from_le_bytes(r.array()?);
    if version != FORMAT_VERSION {
        return Err(DecodeError::Version(version));
    }
    if Sha256::digest(payload).as_slice() != checksum {
        return Err(DecodeError::Checksum);
    }
    let name_len = r.array::<1>()?[0] as usize;
    let name = std::str::from_utf8(r.take(name_len)?)
        .map_err(|_| DecodeError::Header("builder name is not UTF-8".into()))?;
    let builder: Builder = name
        .parse()
        .map_err(|_| DecodeError::Header(format!("unknown builder '{name}'")))?;
    let n = u32::from_le_bytes(r.array()?) as usize;
    let dim = u64::from_le_bytes(r.array()?) as usize;
    if n >= 32 || dim != 1 << n {
        return Err(DecodeError::Header(format!(
            "dimension {dim} does not match n = {n}"
        )));
    }
    let denom = i64::from_le_bytes(r.array()?);
    let body = r.take(dim * dim * 8)?;
    if r.pos != payload.len() {
        return Err(DecodeError::Header("trailing bytes".into()));
    }
    let numer: Vec<i64> = body
        .chunks_exact(8)
        .map(|c| i64::from_le_bytes(c.try_into().expect("8-byte chunk")))
        .collect();
    let m = ExactMatrix::new(Matrix::from_vec(dim, dim, numer), denom)
        .map_err(|e| DecodeError::Header(e.to_string()))?;
    let rho = ExactDensityMatrix::new(m).map_err(|e| DecodeError::Header(e.to_string()))?;
    Ok((builder, rho))
}
