use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{rng::trajectory_rng, ModelTag, OccupationSample, WindowSpec};
use crate::error::{Error, Result};
use crate::params::{AsymmetryParams, TailIndex};

/// Alternating two-state process with pure Pareto sojourns
/// `rho(tau) = alpha tau_0^alpha tau^{-1-alpha}` for `tau > tau_0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RenewalConfig {
    alpha: TailIndex,
    scale_plus: f64,
    scale_minus: f64,
    window: WindowSpec,
    initial_plus_prob: f64,
}

impl RenewalConfig {
    /// The initial state is + with probability `p_+` implied by the scales.
    pub fn new(
        alpha: TailIndex,
        scale_plus: f64,
        scale_minus: f64,
        window: WindowSpec,
    ) -> Result<Self> {
        for (name, v) in [("scale_plus", scale_plus), ("scale_minus", scale_minus)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::domain(format!("{name} must be positive, got {v}")));
            }
        }
        let mut cfg = RenewalConfig {
            alpha,
            scale_plus,
            scale_minus,
            window,
            initial_plus_prob: 0.5,
        };
        cfg.initial_plus_prob = cfg.asymmetry().p_plus();
        Ok(cfg)
    }

    pub fn with_initial_plus_prob(mut self, p: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::domain(format!(
                "initial state probability must be in [0, 1], got {p}"
            )));
        }
        self.initial_plus_prob = p;
        Ok(self)
    }

    pub fn alpha(&self) -> TailIndex {
        self.alpha
    }

    pub fn window(&self) -> WindowSpec {
        self.window
    }

    pub fn scales(&self) -> (f64, f64) {
        (self.scale_plus, self.scale_minus)
    }

    pub fn initial_plus_prob(&self) -> f64 {
        self.initial_plus_prob
    }

    /// Tail amplitudes `A_pm = alpha tau_0^alpha`, exact for pure Pareto sojourns.
    pub fn amplitudes(&self) -> (f64, f64) {
        let a = self.alpha.get();
        (a * self.scale_plus.powf(a), a * self.scale_minus.powf(a))
    }

    pub fn asymmetry(&self) -> AsymmetryParams {
        let (ap, am) = self.amplitudes();
        AsymmetryParams::from_amplitudes(ap, am).expect("scales validated positive")
    }
}

/// Pareto draw `tau_0 U^{-1/alpha}` with `U` uniform on (0, 1].
pub fn pareto_duration<R: Rng + ?Sized>(rng: &mut R, scale: f64, alpha: f64) -> f64 {
    let u = 1.0 - rng.random::<f64>();
    scale * u.powf(-1.0 / alpha)
}

/// Exact overlap of + sojourns with the window; no time grid is involved.
///
/// Time is measured from the window start, so a sojourn covering the whole
/// window contributes exactly `t_m` and yields a fraction of exactly 1.
pub fn sample_renewal_occupation(cfg: &RenewalConfig, seed: u64) -> OccupationSample {
    let mut rng = trajectory_rng(seed);
    let a = cfg.alpha.get();
    let t_m = cfg.window.t_m();
    let mut plus = rng.random::<f64>() < cfg.initial_plus_prob;
    let mut t = -cfg.window.t_a();
    let mut overlap = 0.0;
    loop {
        let scale = if plus {
            cfg.scale_plus
        } else {
            cfg.scale_minus
        };
        let end = t + pareto_duration(&mut rng, scale, a);
        if plus {
            let lo = t.max(0.0);
            let hi = end.min(t_m);
            if hi > lo {
                overlap += hi - lo;
            }
        }
        if end >= t_m {
            break;
        }
        t = end;
        plus = !plus;
    }
    OccupationSample {
        index: 0,
        seed,
        fraction: (overlap / t_m).clamp(0.0, 1.0),
        model: ModelTag::Renewal,
    }
}
