//! Validated parameter newtypes shared by the densities, the quadrature
//! engines and the samplers.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Power-law tail index of the sojourn-time densities, strictly inside (0, 1).
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct TailIndex(f64);

impl TailIndex {
    pub const HALF: TailIndex = TailIndex(0.5);

    pub fn new(alpha: f64) -> Result<Self> {
        if alpha.is_finite() && alpha > 0.0 && alpha < 1.0 {
            Ok(TailIndex(alpha))
        } else {
            Err(Error::domain(format!(
                "tail index alpha must satisfy 0 < alpha < 1, got {alpha}"
            )))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }

    /// sin(pi alpha) / pi, the normalising constant of the forward-recurrence law.
    pub fn sine_factor(self) -> f64 {
        (std::f64::consts::PI * self.0).sin() / std::f64::consts::PI
    }
}

impl TryFrom<f64> for TailIndex {
    type Error = Error;
    fn try_from(v: f64) -> Result<Self> {
        TailIndex::new(v)
    }
}

impl From<TailIndex> for f64 {
    fn from(a: TailIndex) -> f64 {
        a.0
    }
}

/// Asymmetry between the two states: `beta = A_- / A_+` and the equivalent
/// state probabilities `p_+ = A_+ / (A_+ + A_-)`, `p_- = 1 - p_+`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AsymmetryParams {
    beta: f64,
    p_plus: f64,
}

const CONSISTENCY_TOL: f64 = 1e-9;

impl AsymmetryParams {
    pub const SYMMETRIC: AsymmetryParams = AsymmetryParams {
        beta: 1.0,
        p_plus: 0.5,
    };

    pub fn from_beta(beta: f64) -> Result<Self> {
        if !(beta.is_finite() && beta > 0.0) {
            return Err(Error::domain(format!(
                "beta must be positive and finite, got {beta}"
            )));
        }
        Ok(AsymmetryParams {
            beta,
            p_plus: 1.0 / (1.0 + beta),
        })
    }

    pub fn from_p_plus(p_plus: f64) -> Result<Self> {
        if !(p_plus > 0.0 && p_plus < 1.0) {
            return Err(Error::domain(format!(
                "p_plus must lie in (0, 1), got {p_plus}"
            )));
        }
        Ok(AsymmetryParams {
            beta: (1.0 - p_plus) / p_plus,
            p_plus,
        })
    }

    /// Both values given: they must agree through `beta = p_- / p_+`.
    pub fn new(beta: f64, p_plus: f64) -> Result<Self> {
        let from_beta = Self::from_beta(beta)?;
        Self::from_p_plus(p_plus)?;
        if (from_beta.p_plus - p_plus).abs() > CONSISTENCY_TOL {
            return Err(Error::domain(format!(
                "beta = {beta} implies p_plus = {}, inconsistent with p_plus = {p_plus}",
                from_beta.p_plus
            )));
        }
        Ok(from_beta)
    }

    /// From the tail amplitudes `A_+`, `A_-` of the two duration densities.
    pub fn from_amplitudes(a_plus: f64, a_minus: f64) -> Result<Self> {
        if !(a_plus > 0.0 && a_minus > 0.0 && a_plus.is_finite() && a_minus.is_finite()) {
            return Err(Error::domain("tail amplitudes must be positive and finite"));
        }
        Self::from_beta(a_minus / a_plus)
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn p_plus(&self) -> f64 {
        self.p_plus
    }

    pub fn p_minus(&self) -> f64 {
        self.beta / (1.0 + self.beta)
    }
}

/// Aging ratio `r = t_a / t_m`. Zero means no aging.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct AgingRatio(f64);

impl AgingRatio {
    pub fn new(r: f64) -> Result<Self> {
        if r.is_finite() && r >= 0.0 {
            Ok(AgingRatio(r))
        } else {
            Err(Error::domain(format!(
                "aging ratio must be finite and nonnegative, got {r}"
            )))
        }
    }

    /// Aging ratio restricted to r > 0, as required by the aged laws.
    pub fn positive(r: f64) -> Result<Self> {
        let r = Self::new(r)?;
        if r.0 == 0.0 {
            return Err(Error::domain("aging ratio must be strictly positive here"));
        }
        Ok(r)
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for AgingRatio {
    type Error = Error;
    fn try_from(v: f64) -> Result<Self> {
        AgingRatio::new(v)
    }
}

impl From<AgingRatio> for f64 {
    fn from(r: AgingRatio) -> f64 {
        r.0
    }
}

/// Parameters of the skew intermittent map: skewness `c` in (0, 1) and tail index.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MapParams {
    c: f64,
    alpha: TailIndex,
}

impl MapParams {
    pub fn new(c: f64, alpha: TailIndex) -> Result<Self> {
        if !(c > 0.0 && c < 1.0) {
            return Err(Error::domain(format!(
                "map skewness c must lie in (0, 1), got {c}"
            )));
        }
        Ok(MapParams { c, alpha })
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn alpha(&self) -> TailIndex {
        self.alpha
    }
}
