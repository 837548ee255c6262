//! On-disk layout: `store/n=<n>/<slug>.json`, `certs/<slug>.json`,
//! `index.json` and `manifest.json` under one output root.

use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::time::Duration;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub const MANIFEST: &str = "manifest.json";
pub const INDEX: &str = "index.json";

/// Written next to every batch of artifacts.
#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub inputs: BTreeMap<String, String>,
    pub versions: BTreeMap<String, String>,
    pub elapsed_ms: u128,
    pub outputs: Vec<String>,
}

impl RunManifest {
    pub fn new(command: &str, inputs: BTreeMap<String, String>) -> Self {
        let mut versions = BTreeMap::new();
        versions.insert("polytc".to_string(), env!("CARGO_PKG_VERSION").to_string());
        RunManifest {
            command: command.to_string(),
            inputs,
            versions,
            elapsed_ms: 0,
            outputs: Vec::new(),
        }
    }

    pub fn finish(mut self, elapsed: Duration, store: &Store) -> io::Result<PathBuf> {
        self.elapsed_ms = elapsed.as_millis();
        self.outputs.sort();
        let path = store.root.join(MANIFEST);
        write_atomic(&path, &to_pretty(&self)?)?;
        Ok(path)
    }
}

#[derive(Debug, Default, Serialize, Deserialize)]
pub struct Index {
    /// `"n=<n>"` to code count and per-file digests.
    #[serde(default)]
    pub codes: BTreeMap<String, Section>,
    #[serde(default)]
    pub certs: Section,
}

#[derive(Debug, Default, Serialize, Deserialize)]
pub struct Section {
    pub count: usize,
    pub sha256: BTreeMap<String, String>,
}

pub struct Store {
    pub root: PathBuf,
}

impl Store {
    pub fn open(root: &Path) -> io::Result<Self> {
        fs::create_dir_all(root)?;
        Ok(Store {
            root: root.to_path_buf(),
        })
    }

    pub fn code_path(&self, n: usize, slug: &str) -> PathBuf {
        self.root
            .join("store")
            .join(format!("n={n}"))
            .join(format!("{slug}.json"))
    }

    pub fn cert_path(&self, slug: &str) -> PathBuf {
        self.root.join("certs").join(format!("{slug}.json"))
    }

    /// Writes the bytes atomically and returns the path relative to the root
    /// together with its digest.
    pub fn put(&self, path: &Path, bytes: &[u8]) -> io::Result<(String, String)> {
        write_atomic(path, bytes)?;
        let rel = path
            .strip_prefix(&self.root)
            .unwrap_or(path)
            .to_string_lossy()
            .replace('\\', "/");
        Ok((rel, digest(bytes)))
    }

    pub fn load_index(&self) -> io::Result<Index> {
        match fs::read(self.root.join(INDEX)) {
            Ok(bytes) => serde_json::from_slice(&bytes).map_err(io::Error::other),
            Err(e) if e.kind() == io::ErrorKind::NotFound => Ok(Index::default()),
            Err(e) => Err(e),
        }
    }

    pub fn save_index(&self, index: &Index) -> io::Result<()> {
        write_atomic(&self.root.join(INDEX), &to_pretty(index)?)
    }
}

pub fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub fn to_pretty<T: Serialize>(value: &T) -> io::Result<Vec<u8>> {
    let mut bytes = serde_json::to_vec_pretty(value).map_err(io::Error::other)?;
    bytes.push(b'\n');
    Ok(bytes)
}

/// Write to a sibling temp file, then rename over the target.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> io::Result<()> {
    let dir = path.parent().unwrap_or(Path::new("."));
    fs::create_dir_all(dir)?;
    let name = path
        .file_name()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let tmp = dir.join(format!(".{name}.{}.tmp", std::process::id()));
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)
}
