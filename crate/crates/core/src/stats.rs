//! Empirical distributions with point masses at 0 and 1, and their
//! Kolmogorov-Smirnov comparison against a [`TheoreticalCdf`] with a
//! Dvoretzky-Kiefer-Wolfowitz confidence band.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::aging::{Law, TheoreticalCdf};
use crate::error::{Error, Result};

pub const DEFAULT_DELTA: f64 = 0.05;

/// Allowance added to the DKW band for discretized Brownian paths.
pub const BROWNIAN_ALLOWANCE: f64 = 0.01;

/// Sorted occupation fractions. Values within `atom_tol` of 0 or 1 are
/// snapped onto the endpoint and counted as atom samples.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmpiricalDistribution {
    values: Vec<f64>,
    pub mass_at_0: f64,
    pub mass_at_1: f64,
    pub atom_tol: f64,
}

pub fn build_empirical(samples: &[f64], atom_tol: f64) -> Result<EmpiricalDistribution> {
    if samples.is_empty() {
        return Err(Error::Empty(
            "no samples to build an empirical distribution".into(),
        ));
    }
    if !(0.0..0.5).contains(&atom_tol) {
        return Err(Error::domain(format!(
            "atom_tol must lie in [0, 0.5), got {atom_tol}"
        )));
    }
    let mut values = Vec::with_capacity(samples.len());
    for &v in samples {
        if !(0.0..=1.0).contains(&v) {
            return Err(Error::domain(format!("sample {v} outside [0, 1]")));
        }
        values.push(if v <= atom_tol {
            0.0
        } else if v >= 1.0 - atom_tol {
            1.0
        } else {
            v
        });
    }
    values.sort_by(f64::total_cmp);
    let n = values.len() as f64;
    let zeros = values.partition_point(|&v| v <= 0.0);
    let ones = values.len() - values.partition_point(|&v| v < 1.0);
    Ok(EmpiricalDistribution {
        mass_at_0: zeros as f64 / n,
        mass_at_1: ones as f64 / n,
        values,
        atom_tol,
    })
}

impl EmpiricalDistribution {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Right-continuous ECDF `#{v <= x} / n`.
    pub fn ecdf(&self, x: f64) -> f64 {
        self.values.partition_point(|&v| v <= x) as f64 / self.values.len() as f64
    }

    /// `#{v < x} / n`.
    pub fn ecdf_left(&self, x: f64) -> f64 {
        self.values.partition_point(|&v| v < x) as f64 / self.values.len() as f64
    }

    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.values.len() as f64
    }
}

/// DKW half-width `sqrt(ln(2/delta) / (2n))` at confidence `1 - delta`.
pub fn dkw_epsilon(n: usize, delta: f64) -> f64 {
    ((2.0 / delta).ln() / (2.0 * n as f64)).sqrt()
}

/// Binomial standard error of an atom-mass estimate.
pub fn binomial_sigma(q: f64, n: usize) -> f64 {
    (q * (1.0 - q) / n as f64).sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CompareOptions {
    pub delta: f64,
    pub model_allowance: f64,
}

impl Default for CompareOptions {
    fn default() -> Self {
        CompareOptions {
            delta: DEFAULT_DELTA,
            model_allowance: 0.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AtomComparison {
    pub empirical: f64,
    pub theory: f64,
    pub error: f64,
    /// Binomial sigma of the empirical mass under the theoretical value.
    pub sigma: f64,
}

impl AtomComparison {
    fn new(empirical: f64, theory: f64, n: usize) -> Self {
        AtomComparison {
            empirical,
            theory,
            error: empirical - theory,
            sigma: binomial_sigma(theory, n),
        }
    }

    /// |error| in units of sigma; infinite if sigma vanishes and error does not.
    pub fn z_score(&self) -> f64 {
        if self.sigma > 0.0 {
            self.error.abs() / self.sigma
        } else if self.error == 0.0 {
            0.0
        } else {
            f64::INFINITY
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub law: Law,
    pub n: usize,
    pub ks_distance: f64,
    pub dkw_epsilon: f64,
    pub delta: f64,
    pub model_allowance: f64,
    pub atom_at_0: AtomComparison,
    pub atom_at_1: AtomComparison,
    pub pass: bool,
    #[serde(default)]
    pub metadata: BTreeMap<String, serde_json::Value>,
}

impl ComparisonReport {
    pub fn threshold(&self) -> f64 {
        self.dkw_epsilon + self.model_allowance
    }
}

/// Sup-norm distance between the ECDF and the theory CDF.
///
/// Both are monotone and the ECDF is constant between samples, so the
/// supremum is attained at a sample point from one side or the other, or at
/// the atoms at 0 and 1; all of those are checked.
pub fn ks_distance(emp: &EmpiricalDistribution, theory: &TheoreticalCdf) -> f64 {
    let n = emp.values.len() as f64;
    let mut d: f64 = 0.0;
    // Endpoints: the theory jumps by its atoms there.
    d = d.max((emp.ecdf(0.0) - theory.cdf_total(0.0)).abs());
    d = d.max((emp.ecdf_left(1.0) - theory.left_limit(1.0)).abs());
    let mut i = 0;
    let vals = &emp.values;
    while i < vals.len() {
        let v = vals[i];
        let mut j = i;
        while j < vals.len() && vals[j] == v {
            j += 1;
        }
        let below = i as f64 / n;
        let at = j as f64 / n;
        d = d.max((at - theory.cdf_total(v)).abs());
        d = d.max((below - theory.left_limit(v)).abs());
        i = j;
    }
    d
}

pub fn ks_against(
    emp: &EmpiricalDistribution,
    theory: &TheoreticalCdf,
    opts: CompareOptions,
) -> ComparisonReport {
    let n = emp.len();
    let ks = ks_distance(emp, theory);
    let eps = dkw_epsilon(n, opts.delta);
    ComparisonReport {
        law: theory.law,
        n,
        ks_distance: ks,
        dkw_epsilon: eps,
        delta: opts.delta,
        model_allowance: opts.model_allowance,
        atom_at_0: AtomComparison::new(emp.mass_at_0, theory.atom_at_0, n),
        atom_at_1: AtomComparison::new(emp.mass_at_1, theory.atom_at_1, n),
        pass: ks <= eps + opts.model_allowance,
        metadata: BTreeMap::new(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HistogramBin {
    pub center: f64,
    pub density: f64,
    pub stderr: f64,
    pub count: u64,
}

/// Histogram of the continuous part. Densities are normalized by the total
/// sample count, so they integrate to the continuous mass and overlay the
/// theoretical density directly.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Histogram {
    pub bins: Vec<HistogramBin>,
    pub mass_at_0: f64,
    pub mass_at_1: f64,
    pub n: usize,
}

pub fn histogram(emp: &EmpiricalDistribution, bins: usize) -> Result<Histogram> {
    if bins < 2 {
        return Err(Error::domain(format!(
            "histogram needs at least 2 bins, got {bins}"
        )));
    }
    let n = emp.len();
    let width = 1.0 / bins as f64;
    let mut counts = vec![0u64; bins];
    for &v in &emp.values {
        if v > 0.0 && v < 1.0 {
            counts[((v * bins as f64) as usize).min(bins - 1)] += 1;
        }
    }
    let norm = n as f64 * width;
    let bins = counts
        .iter()
        .enumerate()
        .map(|(k, &c)| {
            let cf = c as f64;
            HistogramBin {
                center: (k as f64 + 0.5) * width,
                density: cf / norm,
                stderr: (cf * (1.0 - cf / n as f64)).sqrt() / norm,
                count: c,
            }
        })
        .collect();
    Ok(Histogram {
        bins,
        mass_at_0: emp.mass_at_0,
        mass_at_1: emp.mass_at_1,
        n,
    })
}
