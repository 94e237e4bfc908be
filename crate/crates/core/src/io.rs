//! Plain-text table formats shared with downstream tools.
//!
//! Tables are CSV with a header row and `.` decimals. Optional leading lines
//! of the form `# key = value` carry scalar metadata such as atom masses.
//! Floats are written with Rust's shortest round-trip formatting, so output
//! bytes depend only on the values.

use std::fs;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::aging::{Law, TheoreticalCdf};
use crate::error::{Error, Result};
use crate::quadrature::QuadratureConfig;
use crate::simulate::OccupationSample;
use crate::stats::Histogram;

pub fn write_header_block<W: Write>(out: &mut W, entries: &[(&str, String)]) -> Result<()> {
    for (k, v) in entries {
        writeln!(out, "# {k} = {v}")?;
    }
    Ok(())
}

pub fn write_samples_csv<W: Write>(out: &mut W, samples: &[OccupationSample]) -> Result<()> {
    writeln!(out, "index,seed,fraction")?;
    for s in samples {
        writeln!(out, "{},{},{}", s.index, s.seed, s.fraction)?;
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SampleRow {
    pub index: u64,
    pub seed: u64,
    pub fraction: f64,
}

/// Parses a samples CSV; `#` lines and the header row are skipped.
pub fn read_samples_csv(path: &Path) -> Result<Vec<SampleRow>> {
    let file = fs::File::open(path)?;
    let mut rows = Vec::new();
    let mut saw_header = false;
    for (lineno, line) in BufReader::new(file).lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if !saw_header {
            if line != "index,seed,fraction" {
                return Err(Error::Parse(format!(
                    "{}: expected header `index,seed,fraction`, found `{line}`",
                    path.display()
                )));
            }
            saw_header = true;
            continue;
        }
        let bad = || {
            Error::Parse(format!(
                "{}:{}: malformed row `{line}`",
                path.display(),
                lineno + 1
            ))
        };
        let mut it = line.split(',');
        let index = it.next().and_then(|v| v.parse().ok()).ok_or_else(bad)?;
        let seed = it.next().and_then(|v| v.parse().ok()).ok_or_else(bad)?;
        let fraction = it.next().and_then(|v| v.parse().ok()).ok_or_else(bad)?;
        if it.next().is_some() {
            return Err(bad());
        }
        rows.push(SampleRow {
            index,
            seed,
            fraction,
        });
    }
    if rows.is_empty() {
        return Err(Error::Empty(format!(
            "{} contains no samples",
            path.display()
        )));
    }
    Ok(rows)
}

/// `(s, pdf, cdf)` rows of a law on a uniform grid including both endpoints.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TheoryTable {
    pub law: Law,
    pub atom_at_0: f64,
    pub atom_at_1: f64,
    /// `None` where the density diverges (the endpoints).
    pub rows: Vec<(f64, Option<f64>, f64)>,
}

pub fn theory_table(
    theory: &TheoreticalCdf,
    grid: usize,
    cfg: &QuadratureConfig,
) -> Result<TheoryTable> {
    if grid < 2 {
        return Err(Error::domain(format!(
            "grid must have at least 2 points, got {grid}"
        )));
    }
    let rows = (0..grid)
        .into_par_iter()
        .map(|i| {
            let s = i as f64 / (grid - 1) as f64;
            let pdf = if s > 0.0 && s < 1.0 {
                Some(theory.pdf(s, cfg)?)
            } else {
                None
            };
            Ok((s, pdf, theory.cdf(s)?))
        })
        .collect::<Result<_>>()?;
    Ok(TheoryTable {
        law: theory.law,
        atom_at_0: theory.atom_at_0,
        atom_at_1: theory.atom_at_1,
        rows,
    })
}

fn law_entries(law: &Law) -> Vec<(&'static str, String)> {
    let mut v = vec![("model", law.name().to_string())];
    match *law {
        Law::Arcsine => {}
        Law::Lamperti { alpha, asym } => {
            v.push(("alpha", alpha.get().to_string()));
            v.push(("beta", asym.beta().to_string()));
            v.push(("p_plus", asym.p_plus().to_string()));
        }
        Law::AgingArcsine { r } => v.push(("r", r.get().to_string())),
        Law::AgingLamperti { alpha, asym, r } => {
            v.push(("alpha", alpha.get().to_string()));
            v.push(("beta", asym.beta().to_string()));
            v.push(("p_plus", asym.p_plus().to_string()));
            v.push(("r", r.get().to_string()));
        }
    }
    v
}

pub fn write_theory_csv<W: Write>(out: &mut W, table: &TheoryTable) -> Result<()> {
    let mut entries = law_entries(&table.law);
    entries.push(("atom_0", table.atom_at_0.to_string()));
    entries.push(("atom_1", table.atom_at_1.to_string()));
    write_header_block(out, &entries)?;
    writeln!(out, "s,pdf,cdf")?;
    for (s, pdf, cdf) in &table.rows {
        match pdf {
            Some(p) => writeln!(out, "{s},{p},{cdf}")?,
            None => writeln!(out, "{s},nan,{cdf}")?,
        }
    }
    Ok(())
}

pub fn write_histogram_csv<W: Write>(out: &mut W, hist: &Histogram) -> Result<()> {
    write_header_block(
        out,
        &[
            ("n", hist.n.to_string()),
            ("mass_at_0", hist.mass_at_0.to_string()),
            ("mass_at_1", hist.mass_at_1.to_string()),
        ],
    )?;
    writeln!(out, "center,density,stderr,count")?;
    for b in &hist.bins {
        writeln!(out, "{},{},{},{}", b.center, b.density, b.stderr, b.count)?;
    }
    Ok(())
}

/// Reads the `# key = value` lines at the top of a table.
pub fn read_header_block(path: &Path) -> Result<Vec<(String, String)>> {
    let file = fs::File::open(path)?;
    let mut out = Vec::new();
    for line in BufReader::new(file).lines() {
        let line = line?;
        let Some(rest) = line.strip_prefix('#') else {
            break;
        };
        if let Some((k, v)) = rest.split_once('=') {
            out.push((k.trim().to_string(), v.trim().to_string()));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simulate::ModelTag;

    #[test]
    fn samples_round_trip() {
        let samples: Vec<_> = (0..5)
            .map(|i| OccupationSample {
                index: i,
                seed: 1000 + i,
                fraction: i as f64 / 7.0,
                model: ModelTag::Renewal,
            })
            .collect();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("s.csv");
        let mut f = fs::File::create(&path).unwrap();
        write_samples_csv(&mut f, &samples).unwrap();
        drop(f);
        let rows = read_samples_csv(&path).unwrap();
        assert_eq!(rows.len(), 5);
        for (r, s) in rows.iter().zip(&samples) {
            assert_eq!(r.fraction, s.fraction);
            assert_eq!(r.seed, s.seed);
        }
    }

    #[test]
    fn empty_and_malformed_files() {
        let dir = tempfile::tempdir().unwrap();
        let empty = dir.path().join("e.csv");
        fs::write(&empty, "index,seed,fraction\n").unwrap();
        assert!(matches!(read_samples_csv(&empty), Err(Error::Empty(_))));
        let bad = dir.path().join("b.csv");
        let mut f = fs::File::create(&bad).unwrap();
        writeln!(f, "index,seed,fraction\n0,1,abc").unwrap();
        assert!(matches!(read_samples_csv(&bad), Err(Error::Parse(_))));
    }

    #[test]
    fn arcsine_table_row() {
        let cfg = QuadratureConfig::default();
        let theory = Law::Arcsine.theoretical_cdf(&cfg).unwrap();
        let t = theory_table(&theory, 101, &cfg).unwrap();
        let (s, pdf, cdf) = t.rows[25];
        assert_eq!(s, 0.25);
        assert!((cdf - 1.0 / 3.0).abs() < 1e-15);
        assert!(pdf.is_some());
        assert!(t.rows[0].1.is_none() && t.rows[100].1.is_none());
        let mut buf = Vec::new();
        write_theory_csv(&mut buf, &t).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("# model = arcsine\n"));
        assert!(text.contains("\ns,pdf,cdf\n0,nan,0\n"));
    }
}
