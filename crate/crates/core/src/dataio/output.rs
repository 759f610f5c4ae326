use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::RunConfig;
use crate::criteria::{maxep, rotation_pvalue};
use crate::error::Result;
use crate::itd::{find_extrema, ItdDecomposition};

pub const MANIFEST_NAME: &str = "manifest.json";

/// Shortest decimal string that parses back to the same `f64`.
pub fn format_value(v: f64) -> String {
    format!("{v:?}")
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FileEntry {
    pub name: String,
    pub sha256: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub config: RunConfig,
    pub seed: u64,
    pub files: Vec<FileEntry>,
}

impl Manifest {
    /// Names of listed files whose current contents in `dir` do not match.
    pub fn verify(&self, dir: &Path) -> Result<Vec<String>> {
        let mut bad = Vec::new();
        for f in &self.files {
            match fs::read(dir.join(&f.name)) {
                Ok(bytes) if sha256_hex(&bytes) == f.sha256 => {}
                Ok(_) => bad.push(f.name.clone()),
                Err(e) if e.kind() == std::io::ErrorKind::NotFound => bad.push(f.name.clone()),
                Err(e) => return Err(e.into()),
            }
        }
        Ok(bad)
    }
}

/// Output files assembled in memory and written together.
#[derive(Debug, Clone, Default)]
pub struct OutputBundle {
    files: BTreeMap<String, Vec<u8>>,
}

impl OutputBundle {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, name: impl Into<String>, bytes: Vec<u8>) {
        self.files.insert(name.into(), bytes);
    }

    pub fn add_csv<I, R>(&mut self, name: impl Into<String>, header: &[&str], rows: I) -> Result<()>
    where
        I: IntoIterator<Item = R>,
        R: IntoIterator,
        R::Item: AsRef<[u8]>,
    {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        w.write_record(header)?;
        for row in rows {
            w.write_record(row)?;
        }
        let bytes = w.into_inner().map_err(|e| e.into_error())?;
        self.add(name, bytes);
        Ok(())
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.files.keys().map(String::as_str)
    }

    pub fn get(&self, name: &str) -> Option<&[u8]> {
        self.files.get(name).map(Vec::as_slice)
    }

    pub fn manifest(&self, config: &RunConfig) -> Manifest {
        Manifest {
            config: config.clone(),
            seed: config.seed,
            files: self
                .files
                .iter()
                .map(|(name, bytes)| FileEntry {
                    name: name.clone(),
                    sha256: sha256_hex(bytes),
                })
                .collect(),
        }
    }

    /// Writes every file plus `manifest.json` into `dir`. All files go to
    /// temporaries first and are renamed into place only once every write
    /// has succeeded.
    pub fn commit(&self, dir: &Path, config: &RunConfig) -> Result<Manifest> {
        let manifest = self.manifest(config);
        let mut manifest_bytes = serde_json::to_vec_pretty(&manifest)?;
        manifest_bytes.push(b'\n');

        fs::create_dir_all(dir)?;
        let entries: Vec<(&str, &[u8])> = self
            .files
            .iter()
            .map(|(n, b)| (n.as_str(), b.as_slice()))
            .chain(std::iter::once((MANIFEST_NAME, manifest_bytes.as_slice())))
            .collect();

        let mut staged: Vec<(PathBuf, PathBuf)> = Vec::with_capacity(entries.len());
        for (name, bytes) in &entries {
            let tmp = dir.join(format!(".{name}.partial"));
            if let Err(e) = fs::write(&tmp, bytes) {
                let _ = fs::remove_file(&tmp);
                for (t, _) in &staged {
                    let _ = fs::remove_file(t);
                }
                return Err(e.into());
            }
            staged.push((tmp, dir.join(name)));
        }
        for (tmp, dest) in staged {
            fs::rename(tmp, dest)?;
        }
        Ok(manifest)
    }
}

/// `level_j.csv` for `j = 1..=D` with columns (i, baseline, rotation), and
/// `summary.csv` with one row per level `0..=D`. `adf_p` is the ADF p-value
/// of the level's rotation, blank at level 0 or when the rotation is too
/// short to test.
pub fn decomposition_files(
    bundle: &mut OutputBundle,
    decomp: &ItdDecomposition,
    n_lags: usize,
) -> Result<()> {
    for level in decomp.levels() {
        let rows = level
            .baseline
            .values()
            .iter()
            .zip(level.rotation.values())
            .enumerate()
            .map(|(i, (b, r))| [i.to_string(), format_value(*b), format_value(*r)]);
        bundle.add_csv(
            format!("level_{}.csv", level.level),
            &["i", "baseline", "rotation"],
            rows,
        )?;
    }

    add_level_summary(bundle, "summary.csv", decomp, n_lags)
}

/// Per-level table (level, n_extrema, maxep, adf_p) for levels `0..=D`.
pub fn add_level_summary(
    bundle: &mut OutputBundle,
    name: &str,
    decomp: &ItdDecomposition,
    n_lags: usize,
) -> Result<()> {
    let mut rows = Vec::with_capacity(decomp.depth() + 1);
    for j in 0..=decomp.depth() {
        let baseline = decomp.baseline(j).expect("level within depth");
        let adf_p = match decomp.rotation(j) {
            Some(r) => rotation_pvalue(r, n_lags).map(format_value).unwrap_or_default(),
            None => String::new(),
        };
        rows.push([
            j.to_string(),
            find_extrema(baseline).interior_count().to_string(),
            format_value(maxep(baseline)),
            adf_p,
        ]);
    }
    bundle.add_csv(name, &["level", "n_extrema", "maxep", "adf_p"], rows)
}

pub fn write_decomposition(
    decomp: &ItdDecomposition,
    dir: &Path,
    config: &RunConfig,
) -> Result<Manifest> {
    let mut bundle = OutputBundle::new();
    decomposition_files(&mut bundle, decomp, config.n_lags)?;
    bundle.commit(dir, config)
}
