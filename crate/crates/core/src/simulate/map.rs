use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{
    rng::{stream_seed, trajectory_rng},
    ModelTag, OccupationSample,
};
use crate::error::{Error, Result};
use crate::params::{AgingRatio, MapParams};

/// Retries allowed before a trajectory is reported as unsampleable.
const MAX_ATTEMPTS: u32 = 1000;

/// Skew intermittent map with indifferent fixed points at 0 and 1.
///
/// Left branch on `[0, c]`, right branch on `(c, 1]`. The output is not
/// clamped; callers treat values at or beyond 0 or 1 as absorbed.
pub fn iterate_map(params: &MapParams, x: f64) -> f64 {
    Stepper::new(params).step(x)
}

/// Precomputed branch coefficients for fast iteration.
#[derive(Debug, Clone, Copy)]
struct Stepper {
    c: f64,
    left: f64,
    right: f64,
    inv_alpha: f64,
    int_power: Option<i32>,
}

impl Stepper {
    fn new(params: &MapParams) -> Self {
        let c = params.c();
        let inv_alpha = 1.0 / params.alpha().get();
        let e = 1.0 + inv_alpha;
        let rounded = inv_alpha.round();
        let int_power = ((inv_alpha - rounded).abs() < 1e-12).then_some(rounded as i32);
        Stepper {
            c,
            left: (1.0 - c) / c.powf(e),
            right: c / (1.0 - c).powf(e),
            inv_alpha,
            int_power,
        }
    }

    #[inline]
    fn pow(&self, v: f64) -> f64 {
        // v^{1 + 1/alpha}
        match self.int_power {
            Some(k) => v * v.powi(k),
            None => v * v.powf(self.inv_alpha),
        }
    }

    #[inline]
    fn step(&self, x: f64) -> f64 {
        if x <= self.c {
            x + self.left * self.pow(x)
        } else {
            x - self.right * self.pow(1.0 - x)
        }
    }
}

/// Discrete-time window: `t_a` unobserved iterations, then `t_m` observed ones.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MapConfig {
    pub params: MapParams,
    pub t_a: u64,
    pub t_m: u64,
}

impl MapConfig {
    pub fn new(params: MapParams, t_a: u64, t_m: u64) -> Result<Self> {
        if t_m == 0 {
            return Err(Error::domain("map measurement time t_m must be at least 1"));
        }
        Ok(MapConfig { params, t_a, t_m })
    }

    /// `t_a = round(r t_m)`.
    pub fn from_ratio(params: MapParams, r: AgingRatio, t_m: u64) -> Result<Self> {
        Self::new(params, (r.get() * t_m as f64).round() as u64, t_m)
    }

    pub fn ratio(&self) -> f64 {
        self.t_a as f64 / self.t_m as f64
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MapSample {
    pub sample: OccupationSample,
    /// Attempts discarded because the orbit rounded onto 0 or 1.
    pub absorbed: u32,
}

/// Fraction of the iterates `x_{t_a+1}, ..., x_{t_a+t_m}` lying in `[0, c]`,
/// or `None` if the orbit reaches 0 or 1 in floating point.
pub fn map_occupation_from(cfg: &MapConfig, x0: f64) -> Option<f64> {
    let stepper = Stepper::new(&cfg.params);
    let mut x = x0;
    if !(x > 0.0 && x < 1.0) {
        return None;
    }
    for _ in 0..cfg.t_a {
        x = stepper.step(x);
        if !(x > 0.0 && x < 1.0) {
            return None;
        }
    }
    let mut inside = 0u64;
    for _ in 0..cfg.t_m {
        x = stepper.step(x);
        if !(x > 0.0 && x < 1.0) {
            return None;
        }
        if x <= stepper.c {
            inside += 1;
        }
    }
    Some(inside as f64 / cfg.t_m as f64)
}

fn attempt(cfg: &MapConfig, seed: u64) -> Option<f64> {
    let mut rng = trajectory_rng(seed);
    let x0 = loop {
        let u: f64 = rng.random();
        if u > 0.0 {
            break u;
        }
    };
    map_occupation_from(cfg, x0)
}

/// One trajectory from a uniform initial point. Absorbed attempts are retried
/// with seeds derived from `seed` and counted.
pub fn sample_map_occupation(cfg: &MapConfig, seed: u64) -> Result<MapSample> {
    sample_with(cfg, |attempt| {
        if attempt == 0 {
            seed
        } else {
            stream_seed(seed, 0, attempt)
        }
    })
}

pub(super) fn sample_map_indexed(cfg: &MapConfig, master: u64, index: u64) -> Result<MapSample> {
    sample_with(cfg, |attempt| stream_seed(master, index, attempt))
}

fn sample_with(cfg: &MapConfig, seed_of: impl Fn(u32) -> u64) -> Result<MapSample> {
    for k in 0..MAX_ATTEMPTS {
        let seed = seed_of(k);
        if let Some(fraction) = attempt(cfg, seed) {
            return Ok(MapSample {
                sample: OccupationSample {
                    index: 0,
                    seed,
                    fraction,
                    model: ModelTag::Map,
                },
                absorbed: k,
            });
        }
    }
    Err(Error::domain(format!(
        "map trajectory absorbed in {MAX_ATTEMPTS} consecutive attempts"
    )))
}
