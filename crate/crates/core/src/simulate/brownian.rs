use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use super::{rng::trajectory_rng, ModelTag, OccupationSample, WindowSpec};
use crate::error::{Error, Result};

pub const MIN_STEPS: u64 = 10_000;

/// Euler discretization of standard Brownian motion on `[0, t_a + t_m]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BrownianConfig {
    window: WindowSpec,
    steps_total: u64,
    #[serde(default)]
    drift: f64,
}

impl BrownianConfig {
    pub fn new(window: WindowSpec, steps_total: u64) -> Result<Self> {
        if steps_total < MIN_STEPS {
            return Err(Error::domain(format!(
                "steps_total must be at least {MIN_STEPS}, got {steps_total}"
            )));
        }
        let cfg = BrownianConfig {
            window,
            steps_total,
            drift: 0.0,
        };
        if cfg.window_steps() == 0 {
            return Err(Error::domain(
                "time step larger than the measurement window",
            ));
        }
        Ok(cfg)
    }

    /// Config whose window is resolved by `window_steps` steps of size `t_m / window_steps`.
    pub fn with_window_steps(window: WindowSpec, window_steps: u64) -> Result<Self> {
        let aging = (window.ratio() * window_steps as f64).round() as u64;
        Self::new(window, aging + window_steps)
    }

    /// Adds a constant drift; zero for standard Brownian motion.
    pub fn with_drift(mut self, drift: f64) -> Self {
        self.drift = drift;
        self
    }

    pub fn window(&self) -> WindowSpec {
        self.window
    }

    pub fn steps_total(&self) -> u64 {
        self.steps_total
    }

    pub fn dt(&self) -> f64 {
        (self.window.t_a() + self.window.t_m()) / self.steps_total as f64
    }

    pub fn window_steps(&self) -> u64 {
        ((self.window.t_m() / self.dt()).round() as u64).min(self.steps_total)
    }

    pub fn aging_steps(&self) -> u64 {
        self.steps_total - self.window_steps()
    }

    /// Granularity of the fraction: one window step.
    pub fn atom_tolerance(&self) -> f64 {
        1.0 / self.window_steps() as f64
    }
}

/// Occupation fraction of `B > 0` over the window steps of one path started at 0.
///
/// The unobserved prefix of `k` increments is drawn as a single Gaussian of
/// variance `k dt`, which has exactly the law of the summed increments.
/// `B = 0` counts as not positive.
pub fn sample_brownian_occupation(cfg: &BrownianConfig, seed: u64) -> OccupationSample {
    let mut rng = trajectory_rng(seed);
    let dt = cfg.dt();
    let sd = dt.sqrt();
    let step_drift = cfg.drift * dt;
    let k = cfg.aging_steps() as f64;
    let mut b = if k > 0.0 {
        let z: f64 = StandardNormal.sample(&mut rng);
        step_drift * k + sd * k.sqrt() * z
    } else {
        0.0
    };
    let n = cfg.window_steps();
    let mut positive = 0u64;
    for _ in 0..n {
        let z: f64 = StandardNormal.sample(&mut rng);
        b += step_drift + sd * z;
        if b > 0.0 {
            positive += 1;
        }
    }
    OccupationSample {
        index: 0,
        seed,
        fraction: positive as f64 / n as f64,
        model: ModelTag::Bm,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn step_bookkeeping() {
        let w = WindowSpec::from_ratio(10.0, 1000.0).unwrap();
        let c = BrownianConfig::with_window_steps(w, 10_000).unwrap();
        assert_eq!(c.window_steps(), 10_000);
        assert_eq!(c.aging_steps(), 100_000);
        assert!((c.dt() - 0.1).abs() < 1e-12);
        assert!(BrownianConfig::new(w, 999).is_err());
    }

    #[test]
    fn strong_drift_gives_full_occupation() {
        let w = WindowSpec::from_ratio(0.0, 1.0).unwrap();
        let c = BrownianConfig::new(w, 10_000).unwrap().with_drift(1e6);
        for seed in 0..5 {
            assert_eq!(sample_brownian_occupation(&c, seed).fraction, 1.0);
        }
        let c = c.with_drift(-1e6);
        assert_eq!(sample_brownian_occupation(&c, 3).fraction, 0.0);
    }

    #[test]
    fn fractions_in_unit_interval_and_deterministic() {
        let w = WindowSpec::from_ratio(1.0, 100.0).unwrap();
        let c = BrownianConfig::new(w, 20_000).unwrap();
        for seed in 0..20 {
            let a = sample_brownian_occupation(&c, seed);
            assert!((0.0..=1.0).contains(&a.fraction));
            assert_eq!(a, sample_brownian_occupation(&c, seed));
        }
    }
}
