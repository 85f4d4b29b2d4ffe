//! File formats: matrix JSON, experiment CSVs, and the run manifest.
//!
//! Matrix JSON is `{"rows": n, "cols": m, "data": [[re, im], ...]}` with the
//! entries row-major. JSON floats are rendered shortest-roundtrip, so a
//! write→read cycle is bit-identical. CSV floats use 17 significant digits
//! for the same reason.

use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use emin_core::{ComplexMatrix, C64};
use serde::{Deserialize, Serialize};

use crate::experiment::{ExperimentRecord, ProbRow};

#[derive(Serialize, Deserialize)]
struct MatrixFile {
    rows: usize,
    cols: usize,
    data: Vec<[f64; 2]>,
}

pub fn read_matrix(path: &Path) -> Result<ComplexMatrix> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("reading matrix file {}", path.display()))?;
    let parsed: MatrixFile = serde_json::from_str(&text).with_context(|| {
        format!("parsing matrix JSON from {}", path.display())
    })?;
    if parsed.rows == 0 || parsed.cols == 0 {
        bail!("{}: matrix dimensions must be positive", path.display());
    }
    if parsed.data.len() != parsed.rows * parsed.cols {
        bail!(
            "{}: expected {} entries for a {}x{} matrix, found {}",
            path.display(),
            parsed.rows * parsed.cols,
            parsed.rows,
            parsed.cols,
            parsed.data.len()
        );
    }
    for (k, [re, im]) in parsed.data.iter().enumerate() {
        if !re.is_finite() || !im.is_finite() {
            bail!(
                "{}: non-finite entry at row-major offset {k}",
                path.display()
            );
        }
    }
    let data: Vec<C64> = parsed.data.iter().map(|&[re, im]| C64::new(re, im)).collect();
    Ok(ComplexMatrix::from_vec(parsed.rows, parsed.cols, data))
}

pub fn write_matrix(path: &Path, m: &ComplexMatrix) -> Result<()> {
    let file = MatrixFile {
        rows: m.rows(),
        cols: m.cols(),
        data: m.data().iter().map(|z| [z.re, z.im]).collect(),
    };
    let text = serde_json::to_string_pretty(&file)?;
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

/// 17 significant digits: enough to round-trip any f64 exactly.
pub fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

pub const SCATTER_HEADER: &str = "g,sample_index,n_geo,n_xi,e_before,e_after,ep_before,ep_after";

pub fn write_scatter_csv(path: &Path, records: &[ExperimentRecord]) -> Result<()> {
    let file = fs::File::create(path).with_context(|| format!("creating {}", path.display()))?;
    let mut w = BufWriter::new(file);
    writeln!(w, "{SCATTER_HEADER}")?;
    for r in records {
        writeln!(
            w,
            "{},{},{},{},{},{},{},{}",
            fmt17(r.g),
            r.sample_index,
            fmt17(r.n_geo),
            fmt17(r.n_xi),
            fmt17(r.e_before),
            fmt17(r.e_after),
            fmt17(r.ep_before),
            fmt17(r.ep_after),
        )?;
    }
    w.flush()?;
    Ok(())
}

pub const PROB_HEADER: &str = "g,n_samples,n_negative,p_negative";

pub fn write_prob_csv(path: &Path, rows: &[ProbRow]) -> Result<()> {
    let file = fs::File::create(path).with_context(|| format!("creating {}", path.display()))?;
    let mut w = BufWriter::new(file);
    writeln!(w, "{PROB_HEADER}")?;
    for r in rows {
        writeln!(
            w,
            "{},{},{},{}",
            fmt17(r.g),
            r.n_samples,
            r.n_negative,
            fmt17(r.p_negative),
        )?;
    }
    w.flush()?;
    Ok(())
}

pub fn sha256_hex(path: &Path) -> Result<String> {
    use sha2::{Digest, Sha256};
    let bytes = fs::read(path).with_context(|| format!("hashing {}", path.display()))?;
    let digest = Sha256::digest(&bytes);
    Ok(digest.iter().map(|b| format!("{b:02x}")).collect())
}

#[derive(Serialize, Deserialize)]
pub struct FileChecksum {
    pub path: String,
    pub sha256: String,
}

/// Provenance record written alongside every experiment run: the exact
/// invocation, seed, resolved parameters, artifact version, checksums of all
/// produced files, and the wall-clock time.
#[derive(Serialize, Deserialize)]
pub struct Manifest {
    pub command_line: String,
    pub master_seed: u64,
    pub parameters: serde_json::Value,
    pub artifact_version: String,
    pub files: Vec<FileChecksum>,
    pub wall_clock_seconds: f64,
}

impl Manifest {
    pub fn new(master_seed: u64, parameters: serde_json::Value, wall_clock_seconds: f64) -> Self {
        Manifest {
            command_line: std::env::args().collect::<Vec<_>>().join(" "),
            master_seed,
            parameters,
            artifact_version: env!("CARGO_PKG_VERSION").to_string(),
            files: Vec::new(),
            wall_clock_seconds,
        }
    }

    /// Checksum `file` (a path inside `base`) and add it to the listing.
    pub fn add_file(&mut self, base: &Path, file: &Path) -> Result<()> {
        let rel = file.strip_prefix(base).unwrap_or(file);
        self.files.push(FileChecksum {
            path: rel.display().to_string(),
            sha256: sha256_hex(file)?,
        });
        Ok(())
    }
}

pub fn write_manifest(dir: &Path, manifest: &Manifest) -> Result<PathBuf> {
    let path = dir.join("manifest.json");
    let text = serde_json::to_string_pretty(manifest)?;
    fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?;
    Ok(path)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fmt17_round_trips_exactly() {
        for x in [
            0.1,
            -1.0 / 3.0,
            std::f64::consts::PI,
            1.0e-300,
            -2.2250738585072014e-308,
            0.0,
            123456789.123456789,
        ] {
            let rendered = fmt17(x);
            let back: f64 = rendered.parse().unwrap();
            assert_eq!(back.to_bits(), x.to_bits(), "{rendered}");
        }
    }

    #[test]
    fn matrix_json_round_trip_is_bit_identical() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("m.json");
        let m = ComplexMatrix::from_fn(3, 2, |i, j| {
            C64::new(
                (i as f64 + 0.1) / 3.0 + j as f64,
                -(j as f64) * std::f64::consts::E,
            )
        });
        write_matrix(&path, &m).unwrap();
        let back = read_matrix(&path).unwrap();
        assert_eq!(m.data().len(), back.data().len());
        for (a, b) in m.data().iter().zip(back.data()) {
            assert_eq!(a.re.to_bits(), b.re.to_bits());
            assert_eq!(a.im.to_bits(), b.im.to_bits());
        }
    }

    #[test]
    fn matrix_json_rejects_bad_shapes() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.json");
        fs::write(&path, r#"{"rows": 2, "cols": 2, "data": [[1.0, 0.0]]}"#).unwrap();
        let err = read_matrix(&path).unwrap_err().to_string();
        assert!(err.contains("expected 4 entries"), "{err}");

        fs::write(&path, "{\"rows\": 2,\n \"cols\": }").unwrap();
        let err = format!("{:#}", read_matrix(&path).unwrap_err());
        // serde_json reports line and column of the syntax error
        assert!(err.contains("line 2"), "{err}");
    }
}
