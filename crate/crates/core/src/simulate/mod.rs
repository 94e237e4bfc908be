//! Monte Carlo generators for the aged occupation fraction of three models:
//! discretized Brownian motion, a two-state renewal process with Pareto
//! sojourns, and the skew intermittent map.
//!
//! Every trajectory owns an RNG seeded from `(master seed, index)`, so an
//! ensemble is identical regardless of how many workers produce it.

mod brownian;
mod map;
mod renewal;
mod rng;

pub use brownian::{sample_brownian_occupation, BrownianConfig};
pub use map::{iterate_map, map_occupation_from, sample_map_occupation, MapConfig, MapSample};
pub use renewal::{pareto_duration, sample_renewal_occupation, RenewalConfig};
pub use rng::{stream_seed, trajectory_rng, TrajectoryRng};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Observation window `[t_a, t_a + t_m]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WindowSpec {
    t_a: f64,
    t_m: f64,
}

impl WindowSpec {
    pub fn new(t_a: f64, t_m: f64) -> Result<Self> {
        if !(t_a.is_finite() && t_a >= 0.0) {
            return Err(Error::domain(format!(
                "aging time t_a must be >= 0, got {t_a}"
            )));
        }
        if !(t_m.is_finite() && t_m > 0.0) {
            return Err(Error::domain(format!(
                "measurement time t_m must be > 0, got {t_m}"
            )));
        }
        Ok(WindowSpec { t_a, t_m })
    }

    pub fn from_ratio(r: f64, t_m: f64) -> Result<Self> {
        if !(r.is_finite() && r >= 0.0) {
            return Err(Error::domain(format!("aging ratio must be >= 0, got {r}")));
        }
        Self::new(r * t_m, t_m)
    }

    pub fn t_a(&self) -> f64 {
        self.t_a
    }

    pub fn t_m(&self) -> f64 {
        self.t_m
    }

    pub fn ratio(&self) -> f64 {
        self.t_a / self.t_m
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModelTag {
    Bm,
    Renewal,
    Map,
}

impl ModelTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            ModelTag::Bm => "bm",
            ModelTag::Renewal => "renewal",
            ModelTag::Map => "map",
        }
    }
}

impl std::str::FromStr for ModelTag {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bm" => Ok(ModelTag::Bm),
            "renewal" => Ok(ModelTag::Renewal),
            "map" => Ok(ModelTag::Map),
            other => Err(Error::Parse(format!("unknown model `{other}`"))),
        }
    }
}

/// Occupation fraction of the + state in the window for one trajectory.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OccupationSample {
    pub index: u64,
    /// Seed of the RNG that produced this trajectory.
    pub seed: u64,
    pub fraction: f64,
    pub model: ModelTag,
}

/// A model that can produce the `index`-th trajectory of an ensemble.
pub trait OccupationModel: Sync {
    fn tag(&self) -> ModelTag;

    /// Returns the sample and the number of discarded (absorbed) attempts.
    fn sample_indexed(&self, master_seed: u64, index: u64) -> Result<(OccupationSample, u32)>;
}

impl OccupationModel for BrownianConfig {
    fn tag(&self) -> ModelTag {
        ModelTag::Bm
    }

    fn sample_indexed(&self, master_seed: u64, index: u64) -> Result<(OccupationSample, u32)> {
        let mut s = sample_brownian_occupation(self, stream_seed(master_seed, index, 0));
        s.index = index;
        Ok((s, 0))
    }
}

impl OccupationModel for RenewalConfig {
    fn tag(&self) -> ModelTag {
        ModelTag::Renewal
    }

    fn sample_indexed(&self, master_seed: u64, index: u64) -> Result<(OccupationSample, u32)> {
        let mut s = sample_renewal_occupation(self, stream_seed(master_seed, index, 0));
        s.index = index;
        Ok((s, 0))
    }
}

impl OccupationModel for MapConfig {
    fn tag(&self) -> ModelTag {
        ModelTag::Map
    }

    fn sample_indexed(&self, master_seed: u64, index: u64) -> Result<(OccupationSample, u32)> {
        let out = map::sample_map_indexed(self, master_seed, index)?;
        let mut s = out.sample;
        s.index = index;
        Ok((s, out.absorbed))
    }
}

/// Samples in index order plus ensemble-level diagnostics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Ensemble {
    pub model: ModelTag,
    pub master_seed: u64,
    pub samples: Vec<OccupationSample>,
    /// Trajectories discarded because the state hit an absorbing boundary.
    pub absorbed: u64,
}

impl Ensemble {
    pub fn fractions(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.fraction).collect()
    }

    /// Absorbed attempts relative to all attempts made.
    pub fn absorbed_fraction(&self) -> f64 {
        let total = self.samples.len() as u64 + self.absorbed;
        if total == 0 {
            0.0
        } else {
            self.absorbed as f64 / total as f64
        }
    }
}

/// Runs `n` trajectories on the current rayon pool; output order is by index.
pub fn run_ensemble<M: OccupationModel>(model: &M, n: usize, master_seed: u64) -> Result<Ensemble> {
    if n == 0 {
        return Err(Error::Empty("ensemble size must be at least 1".into()));
    }
    let results: Vec<(OccupationSample, u32)> = (0..n as u64)
        .into_par_iter()
        .map(|i| model.sample_indexed(master_seed, i))
        .collect::<Result<_>>()?;
    let absorbed = results.iter().map(|(_, a)| *a as u64).sum();
    Ok(Ensemble {
        model: model.tag(),
        master_seed,
        samples: results.into_iter().map(|(s, _)| s).collect(),
        absorbed,
    })
}

/// Runs `f` on a dedicated pool of `workers` threads.
pub fn with_workers<T: Send>(workers: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::domain(format!("cannot build worker pool: {e}")))?;
    Ok(pool.install(f))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn window_validation() {
        assert!(WindowSpec::new(-1.0, 1.0).is_err());
        assert!(WindowSpec::new(0.0, 0.0).is_err());
        let w = WindowSpec::from_ratio(0.1, 1000.0).unwrap();
        assert!((w.ratio() - 0.1).abs() < 1e-15);
        assert_eq!(w.t_m(), 1000.0);
    }

    #[test]
    fn model_tag_parse() {
        assert_eq!("map".parse::<ModelTag>().unwrap(), ModelTag::Map);
        assert!("ctrw".parse::<ModelTag>().is_err());
    }

    #[test]
    fn ensemble_is_independent_of_worker_count() {
        let cfg = RenewalConfig::new(
            crate::params::TailIndex::new(0.6).unwrap(),
            1.0,
            2.0,
            WindowSpec::from_ratio(1.0, 500.0).unwrap(),
        )
        .unwrap();
        let a = with_workers(1, || run_ensemble(&cfg, 300, 11))
            .unwrap()
            .unwrap();
        let b = with_workers(4, || run_ensemble(&cfg, 300, 11))
            .unwrap()
            .unwrap();
        assert_eq!(a, b);
        let c = with_workers(2, || run_ensemble(&cfg, 300, 12))
            .unwrap()
            .unwrap();
        assert_ne!(a.samples, c.samples);
    }

    #[test]
    fn empty_ensemble_rejected() {
        let cfg = RenewalConfig::new(
            crate::params::TailIndex::HALF,
            1.0,
            1.0,
            WindowSpec::new(1.0, 1.0).unwrap(),
        )
        .unwrap();
        assert!(run_ensemble(&cfg, 0, 1).is_err());
    }
}
