//! Closed-form densities and constants: the Brownian propagator and
//! first-passage density, forward-recurrence densities, the classical and
//! generalized (Lamperti) arcsine laws, and the atom masses of the aged laws.
//!
//! Densities reject the boundary points where they diverge; CDFs accept
//! closed intervals.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::params::{AgingRatio, MapParams, TailIndex};
use crate::quadrature::{self, QuadratureConfig};

/// Cotangent inverse on the principal branch (0, pi).
pub fn arccot(y: f64) -> f64 {
    PI / 2.0 - y.atan()
}

fn check_positive(name: &str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(Error::domain(format!(
            "{name} must be positive and finite, got {v}"
        )))
    }
}

fn check_open_unit(v: f64) -> Result<()> {
    if v > 0.0 && v < 1.0 {
        Ok(())
    } else {
        Err(Error::domain(format!(
            "fraction must lie in the open interval (0, 1), got {v}"
        )))
    }
}

fn check_closed_unit(v: f64) -> Result<()> {
    if (0.0..=1.0).contains(&v) {
        Ok(())
    } else {
        Err(Error::domain(format!(
            "fraction must lie in the closed interval [0, 1], got {v}"
        )))
    }
}

fn check_probability(p: f64) -> Result<()> {
    if p > 0.0 && p < 1.0 {
        Ok(())
    } else {
        Err(Error::domain(format!(
            "state probability must lie in (0, 1), got {p}"
        )))
    }
}

/// Heat kernel `p(s, x) = exp(-x^2 / 2s) / sqrt(2 pi s)`.
pub fn propagator(s: f64, x: f64) -> Result<f64> {
    check_positive("time s", s)?;
    if !x.is_finite() {
        return Err(Error::domain("position must be finite"));
    }
    Ok((-x * x / (2.0 * s)).exp() / (2.0 * PI * s).sqrt())
}

/// Density of the first hitting time of zero for a Brownian motion started at `x > 0`.
pub fn fpt_density(x: f64, s: f64) -> Result<f64> {
    check_positive("starting position x", x)?;
    Ok(x / s * propagator(s, x)?)
}

/// Density of the time to the next zero of Brownian motion after time `t`.
pub fn frt_density_bm(t: f64, s: f64) -> Result<f64> {
    check_positive("time t", t)?;
    check_positive("time s", s)?;
    Ok(t.sqrt() / (PI * s.sqrt() * (s + t)))
}

pub fn arcsine_cdf(s: f64) -> Result<f64> {
    check_closed_unit(s)?;
    Ok(2.0 / PI * s.sqrt().asin())
}

pub fn arcsine_pdf(s: f64) -> Result<f64> {
    check_open_unit(s)?;
    Ok(1.0 / (PI * (s * (1.0 - s)).sqrt()))
}

/// Lamperti density multiplied by `x^{1-alpha} y^{1-alpha}`, with `y = 1 - x`
/// supplied separately so callers near either endpoint keep full precision.
/// Bounded on the closed square; used directly by the aged convolutions.
pub(crate) fn lamperti_core(alpha: f64, beta: f64, x: f64, y: f64) -> f64 {
    let xa = x.powf(alpha);
    let ya = y.powf(alpha);
    let denom = beta * beta * xa * xa + 2.0 * beta * xa * ya * (PI * alpha).cos() + ya * ya;
    beta * (PI * alpha).sin() / PI / denom
}

/// Lamperti density evaluated from an explicit pair `(x, 1 - x)`.
pub(crate) fn lamperti_pdf_xy(alpha: f64, beta: f64, x: f64, y: f64) -> f64 {
    lamperti_core(alpha, beta, x, y) * x.powf(alpha - 1.0) * y.powf(alpha - 1.0)
}

/// Generalized arcsine (Lamperti) density with tail index `alpha` and asymmetry `beta`.
pub fn lamperti_pdf(alpha: TailIndex, beta: f64, s: f64) -> Result<f64> {
    check_positive("beta", beta)?;
    check_open_unit(s)?;
    Ok(lamperti_pdf_xy(alpha.get(), beta, s, 1.0 - s))
}

/// Generalized arcsine (Lamperti) CDF in its arccot form.
pub fn lamperti_cdf(alpha: TailIndex, beta: f64, s: f64) -> Result<f64> {
    check_positive("beta", beta)?;
    check_closed_unit(s)?;
    if s == 0.0 {
        return Ok(0.0);
    }
    if s == 1.0 {
        return Ok(1.0);
    }
    let a = alpha.get();
    let arg = ((1.0 - s) / s).powf(a) / (beta * (PI * a).sin()) + 1.0 / (PI * a).tan();
    Ok((arccot(arg) / (PI * a)).clamp(0.0, 1.0))
}

/// Limiting density of the scaled forward-recurrence time for one state of an
/// aged renewal process: `p (sin pi alpha / pi) r^alpha / (tau^alpha (tau + r))`.
pub fn frt_density_renewal(alpha: TailIndex, p: f64, r: AgingRatio, tau: f64) -> Result<f64> {
    check_probability(p)?;
    check_positive("aging ratio r", r.get())?;
    check_positive("scaled time tau", tau)?;
    Ok(frt_renewal_unchecked(alpha.get(), p, r.get(), tau))
}

pub(crate) fn frt_renewal_unchecked(alpha: f64, p: f64, r: f64, tau: f64) -> f64 {
    p * (PI * alpha).sin() / PI * (r / tau).powf(alpha) / (tau + r)
}

/// Mass of each atom of the aged arcsine law: `(1/pi) arccot(1/sqrt(r))`.
pub fn atom_q_bm(r: AgingRatio) -> f64 {
    let r = r.get();
    if r == 0.0 {
        return 0.0;
    }
    arccot(1.0 / r.sqrt()) / PI
}

/// Probability that the forward-recurrence time of one state exceeds the
/// whole window, `int_1^inf psi_r(tau) dtau`, by quadrature.
///
/// With `tau = 1/u` and then `w = u^alpha` the integrand becomes
/// `p (sin pi alpha / pi) r^alpha / (alpha (1 + r w^{1/alpha}))` on (0, 1).
pub fn atom_q_renewal(
    alpha: TailIndex,
    p: f64,
    r: AgingRatio,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    check_probability(p)?;
    let r = r.get();
    if r == 0.0 {
        return Ok(0.0);
    }
    let a = alpha.get();
    let scale = p * alpha.sine_factor() * r.powf(a) / a;
    let inv = 1.0 / a;
    let res = quadrature::integrate(|w: f64| 1.0 / (1.0 + r * w.powf(inv)), 0.0, 1.0, cfg)
        .map_err(|e| e.within("atom_q_renewal"))?;
    Ok(scale * res.value)
}

/// Asymmetry parameter of the skew intermittent map.
pub fn beta_of_map(params: &MapParams) -> f64 {
    let a = params.alpha().get();
    let c = params.c();
    (a + c) / (a + 1.0 - c) * ((1.0 - c) / c).powf(2.0 * a)
}
