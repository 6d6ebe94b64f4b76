//! On-disk layout of a dealt instance.
//!
//! ```text
//! <out-dir>/structure.json    canonical access structure
//! <out-dir>/public.json       public polynomial
//! <out-dir>/metadata.json     bit length, seed fingerprint, k, n
//! <out-dir>/shares/<id>.json  one share per participant
//! ```
//!
//! Share files hold secrets. On Unix they are created with mode 0600; keep
//! the directory private and hand each file to its participant only.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::access::{AccessError, AccessStructure, AccessStructureFile};
use crate::scheme::{Dealing, PrimeShare, PublicPolynomial, PublicPolynomialFile, SchemeError, ShareFile};

pub const STRUCTURE_FILE: &str = "structure.json";
pub const PUBLIC_FILE: &str = "public.json";
pub const METADATA_FILE: &str = "metadata.json";
pub const SHARES_DIR: &str = "shares";

#[derive(Debug, Error)]
pub enum BundleError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("{path}: {source}")]
    Json {
        path: PathBuf,
        source: serde_json::Error,
    },
    #[error("{path}: {source}")]
    Scheme { path: PathBuf, source: SchemeError },
    #[error("{path}: {source}")]
    Access { path: PathBuf, source: AccessError },
    #[error("participant id {0:?} cannot be used as a file name")]
    UnsafeId(String),
    #[error("inconsistent bundle: {0}")]
    Inconsistent(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceMetadata {
    pub bit_length: u64,
    /// First 16 hex digits of SHA-256 over the seed; the seed itself is never stored.
    pub seed_fingerprint: String,
    pub k: usize,
    pub n: usize,
    pub participants: Vec<String>,
}

pub fn seed_fingerprint(seed: &[u8]) -> String {
    let digest = Sha256::digest(seed);
    hex::encode(&digest[..8])
}

pub fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, BundleError> {
    let text = fs::read_to_string(path).map_err(|source| BundleError::Io {
        path: path.to_owned(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| BundleError::Json {
        path: path.to_owned(),
        source,
    })
}

/// Pretty JSON with a trailing newline; byte-stable for equal values.
pub fn to_json_string<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn write_file(path: &Path, contents: &str, private: bool) -> Result<(), BundleError> {
    let io_err = |source| BundleError::Io {
        path: path.to_owned(),
        source,
    };
    let mut options = fs::OpenOptions::new();
    options.write(true).create(true).truncate(true);
    #[cfg(unix)]
    if private {
        use std::os::unix::fs::OpenOptionsExt;
        options.mode(0o600);
    }
    #[cfg(not(unix))]
    let _ = private;
    let mut file = options.open(path).map_err(io_err)?;
    io::Write::write_all(&mut file, contents.as_bytes()).map_err(io_err)
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), BundleError> {
    write_file(path, &to_json_string(value), false)
}

fn safe_file_stem(id: &str) -> Result<&str, BundleError> {
    let ok = !id.is_empty()
        && !id.starts_with('.')
        && id
            .bytes()
            .all(|b| b.is_ascii_alphanumeric() || matches!(b, b'_' | b'-' | b'.'));
    if ok {
        Ok(id)
    } else {
        Err(BundleError::UnsafeId(id.to_owned()))
    }
}

pub fn share_path(dir: &Path, id: &str) -> Result<PathBuf, BundleError> {
    Ok(dir.join(SHARES_DIR).join(format!("{}.json", safe_file_stem(id)?)))
}

/// Writes every file of a dealt instance under `dir`.
pub fn write_bundle(
    dir: &Path,
    structure: &AccessStructure,
    dealing: &Dealing,
    bit_length: u64,
    seed: &[u8],
) -> Result<InstanceMetadata, BundleError> {
    for p in structure.participants() {
        safe_file_stem(p.id())?;
    }
    let shares_dir = dir.join(SHARES_DIR);
    fs::create_dir_all(&shares_dir).map_err(|source| BundleError::Io {
        path: shares_dir.clone(),
        source,
    })?;
    write_json(&dir.join(STRUCTURE_FILE), &structure.to_file())?;
    write_json(&dir.join(PUBLIC_FILE), &dealing.public.to_file())?;
    for share in dealing.shares.values() {
        let path = share_path(dir, share.participant.id())?;
        write_file(&path, &to_json_string(&ShareFile::from(share)), true)?;
    }
    let meta = InstanceMetadata {
        bit_length,
        seed_fingerprint: seed_fingerprint(seed),
        k: dealing.public.k(),
        n: structure.n(),
        participants: structure.participants().iter().map(|p| p.id().to_owned()).collect(),
    };
    write_json(&dir.join(METADATA_FILE), &meta)?;
    Ok(meta)
}

pub fn read_public(path: &Path) -> Result<PublicPolynomial, BundleError> {
    let file: PublicPolynomialFile = read_json(path)?;
    PublicPolynomial::from_file(&file).map_err(|source| BundleError::Scheme {
        path: path.to_owned(),
        source,
    })
}

pub fn read_share(path: &Path) -> Result<PrimeShare, BundleError> {
    let file: ShareFile = read_json(path)?;
    PrimeShare::try_from(&file).map_err(|source| BundleError::Scheme {
        path: path.to_owned(),
        source,
    })
}

pub fn read_structure(path: &Path) -> Result<AccessStructure, BundleError> {
    let file: AccessStructureFile = read_json(path)?;
    AccessStructure::from_file(&file).map_err(|source| BundleError::Access {
        path: path.to_owned(),
        source,
    })
}

/// A bundle read back from disk, with its cross-file invariants checked.
#[derive(Clone, Debug)]
pub struct InstanceBundle {
    pub structure: AccessStructure,
    pub public: PublicPolynomial,
    pub metadata: InstanceMetadata,
    pub shares: Vec<PrimeShare>,
}

pub fn read_bundle(dir: &Path) -> Result<InstanceBundle, BundleError> {
    let structure = read_structure(&dir.join(STRUCTURE_FILE))?;
    let public = read_public(&dir.join(PUBLIC_FILE))?;
    let metadata: InstanceMetadata = read_json(&dir.join(METADATA_FILE))?;
    if metadata.k != public.k() || metadata.k != structure.k() {
        return Err(BundleError::Inconsistent(format!(
            "metadata k = {}, public degree = {}, structure has {} sets",
            metadata.k,
            public.k(),
            structure.k()
        )));
    }
    let ids: Vec<String> = structure.participants().iter().map(|p| p.id().to_owned()).collect();
    if metadata.n != structure.n() || metadata.participants != ids {
        return Err(BundleError::Inconsistent("participant sets differ".into()));
    }
    let shares = ids
        .iter()
        .map(|id| read_share(&share_path(dir, id)?))
        .collect::<Result<Vec<_>, _>>()?;
    if let Some(s) = shares.iter().zip(&ids).find(|(s, id)| s.participant.id() != id.as_str()) {
        return Err(BundleError::Inconsistent(format!(
            "share file for {:?} names participant {:?}",
            s.1,
            s.0.participant.id()
        )));
    }
    Ok(InstanceBundle {
        structure,
        public,
        metadata,
        shares,
    })
}
