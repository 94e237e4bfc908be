//! Aged occupation-time laws: the aging arcsine law of Brownian motion and
//! the aging generalized arcsine law of two-state renewal processes.
//!
//! Both densities are integrals with integrable endpoint singularities whose
//! exponents are known, so each integral is first transformed into a bounded
//! smooth integrand and then handed to the adaptive Gauss-Kronrod rule.
//! CDFs are tabulated once on a graded grid and interpolated monotonically.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analytic::{self, lamperti_core, lamperti_pdf_xy};
use crate::error::{Error, Result};
use crate::params::{AgingRatio, AsymmetryParams, TailIndex};
use crate::quadrature::{self, GaussLegendre, QuadratureConfig};

/// Nodes per grid panel used when accumulating the CDF table.
const PANEL_NODES: usize = 8;

/// Tolerance on `continuous_cdf(1) + atom_at_0 + atom_at_1 = 1`.
pub const NORMALIZATION_TOL: f64 = 1e-5;

fn require_open_unit(s: f64) -> Result<()> {
    if s > 0.0 && s < 1.0 {
        Ok(())
    } else {
        Err(Error::domain(format!(
            "fraction must lie in the open interval (0, 1), got {s}"
        )))
    }
}

fn require_positive_ratio(r: AgingRatio) -> Result<f64> {
    let r = r.get();
    if r > 0.0 {
        Ok(r)
    } else {
        Err(Error::domain(
            "aged laws need a strictly positive aging ratio",
        ))
    }
}

/// Density of the aged Brownian occupation fraction, excluding its atoms.
///
/// The v-integral over (0, 1/r) has inverse square-root singularities at both
/// ends; `v = sin^2(theta) / r` turns `dv / sqrt(v (1 - r v))` into
/// `2 dtheta / sqrt(r)` and leaves a smooth integrand on (0, pi/2).
pub fn aging_arcsine_pdf(r: AgingRatio, s: f64, cfg: &QuadratureConfig) -> Result<f64> {
    let r = require_positive_ratio(r)?;
    require_open_unit(s)?;
    let sp = s.sqrt();
    let sq = (1.0 - s).sqrt();
    let integrand = |theta: f64| {
        let sin2 = theta.sin().powi(2);
        1.0 / (sq * (r + s * sin2)) + 1.0 / (sp * (r + (1.0 - s) * sin2))
    };
    let res = quadrature::integrate(integrand, 0.0, PI / 2.0, cfg)
        .map_err(|e| e.within("aging_arcsine_pdf"))?;
    Ok(r.sqrt() / (PI * PI) * res.value)
}

/// Constant `c(r)` in the endpoint equivalence `phi(r; s) ~ c(r) phi(s)`.
pub fn tail_constant_c(r: AgingRatio, cfg: &QuadratureConfig) -> Result<f64> {
    let r = require_positive_ratio(r)?;
    let res = quadrature::integrate(
        |theta: f64| 1.0 / (r + theta.sin().powi(2)),
        0.0,
        PI / 2.0,
        cfg,
    )
    .map_err(|e| e.within("tail_constant_c"))?;
    Ok(r.sqrt() / PI * res.value)
}

/// `int_0^s phi(r; s') ds' + q(r)` for `s < 1`, and 1 at `s = 1`.
///
/// Builds a fresh table; use [`TheoreticalCdf`] directly for repeated evaluation.
pub fn aging_arcsine_cdf(r: AgingRatio, s: f64, cfg: &QuadratureConfig) -> Result<f64> {
    Law::AgingArcsine { r }.theoretical_cdf(cfg)?.cdf(s)
}

/// Which of the two convolution integrals of the aged generalized law.
#[derive(Debug, Clone, Copy)]
enum Branch {
    /// Window starts in the + state; first switch after `s'`.
    Plus,
    /// Window starts in the - state.
    Minus,
}

impl Branch {
    fn label(self) -> &'static str {
        match self {
            Branch::Plus => "aging_lamperti_pdf: + state convolution",
            Branch::Minus => "aging_lamperti_pdf: - state convolution",
        }
    }
}

/// One convolution integral, without its `p_pm` prefactor.
///
/// The integrand carries `s'^{-alpha}` at the origin and `(e - s')^{alpha - 1}`
/// at the moving endpoint `e`. The range is split at `e/2`; the lower half
/// uses `u = s'^{1 - alpha}` and the upper half `w = (e - s')^alpha`, which
/// cancel the two power laws exactly.
fn convolution(
    branch: Branch,
    alpha: f64,
    beta: f64,
    r: f64,
    s: f64,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    let k = (PI * alpha).sin() / PI * r.powf(alpha);
    let one_minus_s = 1.0 - s;
    let end = match branch {
        Branch::Plus => s,
        Branch::Minus => one_minus_s,
    };
    let half = 0.5 * end;

    // 1 - e, exact in either branch.
    let co_end = match branch {
        Branch::Plus => one_minus_s,
        Branch::Minus => s,
    };
    // (x, y = 1 - x) of the Lamperti argument for the gap e - s', and 1 - s'.
    // 1 - s' is formed as (1 - e) + gap so it keeps full precision as s' -> e.
    let arg = |gap: f64| -> (f64, f64, f64) {
        let rest = co_end + gap;
        match branch {
            Branch::Plus => (gap / rest, one_minus_s / rest, rest),
            Branch::Minus => (s / rest, gap / rest, rest),
        }
    };

    let inv_lower = 1.0 / (1.0 - alpha);
    let lower = |u: f64| {
        let sp = u.powf(inv_lower);
        let (x, y, rest) = arg(end - sp);
        k / ((sp + r) * (1.0 - alpha)) * lamperti_pdf_xy(alpha, beta, x, y) / rest
    };
    let inv_upper = 1.0 / alpha;
    let upper = |w: f64| {
        let gap = w.powf(inv_upper);
        let sp = end - gap;
        let (x, y, rest) = arg(gap);
        let psi = k * sp.powf(-alpha) / (sp + r);
        // The factor of the Lamperti density that stays regular at this endpoint.
        let regular = match branch {
            Branch::Plus => y.powf(alpha - 1.0),
            Branch::Minus => x.powf(alpha - 1.0),
        };
        psi * lamperti_core(alpha, beta, x, y) * regular * rest.powf(-alpha) / alpha
    };

    let lo = quadrature::integrate(lower, 0.0, half.powf(1.0 - alpha), cfg)
        .map_err(|e| e.within(branch.label()))?;
    let hi = quadrature::integrate(upper, 0.0, half.powf(alpha), cfg)
        .map_err(|e| e.within(branch.label()))?;
    Ok(lo.value + hi.value)
}

/// Density of the aged occupation fraction of a two-state renewal process
/// with power-law sojourns, excluding its atoms.
pub fn aging_lamperti_pdf(
    alpha: TailIndex,
    asym: &AsymmetryParams,
    r: AgingRatio,
    s: f64,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    let r = require_positive_ratio(r)?;
    require_open_unit(s)?;
    let a = alpha.get();
    let beta = asym.beta();
    let plus = convolution(Branch::Plus, a, beta, r, s, cfg)?;
    let minus = convolution(Branch::Minus, a, beta, r, s, cfg)?;
    Ok(asym.p_plus() * plus + asym.p_minus() * minus)
}

/// `int_0^s phi_{alpha,beta}(r; s') ds' + q^-(r)` for `s < 1`, and 1 at `s = 1`.
pub fn aging_lamperti_cdf(
    alpha: TailIndex,
    asym: &AsymmetryParams,
    r: AgingRatio,
    s: f64,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    Law::AgingLamperti {
        alpha,
        asym: *asym,
        r,
    }
    .theoretical_cdf(cfg)?
    .cdf(s)
}

/// Descriptor of a theoretical occupation-fraction law.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "kebab-case")]
pub enum Law {
    Arcsine,
    Lamperti {
        alpha: TailIndex,
        asym: AsymmetryParams,
    },
    AgingArcsine {
        r: AgingRatio,
    },
    AgingLamperti {
        alpha: TailIndex,
        asym: AsymmetryParams,
        r: AgingRatio,
    },
}

impl Law {
    pub fn name(&self) -> &'static str {
        match self {
            Law::Arcsine => "arcsine",
            Law::Lamperti { .. } => "lamperti",
            Law::AgingArcsine { .. } => "aging-arcsine",
            Law::AgingLamperti { .. } => "aging-lamperti",
        }
    }

    /// Density of the continuous part on (0, 1).
    pub fn pdf(&self, s: f64, cfg: &QuadratureConfig) -> Result<f64> {
        match *self {
            Law::Arcsine => analytic::arcsine_pdf(s),
            Law::Lamperti { alpha, asym } => analytic::lamperti_pdf(alpha, asym.beta(), s),
            Law::AgingArcsine { r } => aging_arcsine_pdf(r, s, cfg),
            Law::AgingLamperti { alpha, asym, r } => aging_lamperti_pdf(alpha, &asym, r, s, cfg),
        }
    }

    /// Point masses `(at 0, at 1)`.
    pub fn atoms(&self, cfg: &QuadratureConfig) -> Result<(f64, f64)> {
        match *self {
            Law::Arcsine | Law::Lamperti { .. } => Ok((0.0, 0.0)),
            Law::AgingArcsine { r } => {
                let q = analytic::atom_q_bm(r);
                Ok((q, q))
            }
            Law::AgingLamperti { alpha, asym, r } => Ok((
                analytic::atom_q_renewal(alpha, asym.p_minus(), r, cfg)?,
                analytic::atom_q_renewal(alpha, asym.p_plus(), r, cfg)?,
            )),
        }
    }

    /// Power of the density's divergence at both endpoints, `s^{exponent - 1}`.
    fn endpoint_exponent(&self) -> f64 {
        match self {
            Law::Arcsine | Law::AgingArcsine { .. } => 0.5,
            Law::Lamperti { alpha, .. } | Law::AgingLamperti { alpha, .. } => alpha.get(),
        }
    }

    pub fn theoretical_cdf(&self, cfg: &QuadratureConfig) -> Result<TheoreticalCdf> {
        TheoreticalCdf::build(*self, cfg)
    }
}

/// Graded map from the uniform table coordinate `u` to the fraction `s`:
/// `s ~ u^{1/a}` near 0 and `1 - s ~ (1 - u)^{1/a}` near 1, so an
/// `s^{a-1}` endpoint divergence becomes bounded in `u`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
struct GradedMap {
    exponent: f64,
}

impl GradedMap {
    fn s_of_u(&self, u: f64) -> f64 {
        let p = 1.0 / self.exponent;
        if u <= 0.5 {
            0.5 * (2.0 * u).powf(p)
        } else {
            1.0 - 0.5 * (2.0 * (1.0 - u)).powf(p)
        }
    }

    /// Returns `(s, 1 - s)` computed without cancellation.
    fn s_pair(&self, u: f64) -> (f64, f64) {
        let p = 1.0 / self.exponent;
        if u <= 0.5 {
            let s = 0.5 * (2.0 * u).powf(p);
            (s, 1.0 - s)
        } else {
            let t = 0.5 * (2.0 * (1.0 - u)).powf(p);
            (1.0 - t, t)
        }
    }

    fn ds_du(&self, u: f64) -> f64 {
        let p = 1.0 / self.exponent;
        let v = if u <= 0.5 { 2.0 * u } else { 2.0 * (1.0 - u) };
        p * v.powf(p - 1.0)
    }

    fn u_of_s(&self, s: f64) -> f64 {
        let a = self.exponent;
        if s <= 0.5 {
            0.5 * (2.0 * s).powf(a)
        } else {
            1.0 - 0.5 * (2.0 * (1.0 - s)).powf(a)
        }
    }
}

/// Tabulated continuous part `int_0^s pdf` on a graded grid, with monotone
/// (Fritsch-Carlson) cubic Hermite interpolation in the grid coordinate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CdfTable {
    map: GradedMap,
    values: Vec<f64>,
    slopes: Vec<f64>,
}

impl CdfTable {
    fn build(law: &Law, cfg: &QuadratureConfig) -> Result<Self> {
        let n = cfg.grid_size;
        let map = GradedMap {
            exponent: law.endpoint_exponent(),
        };
        let h = 1.0 / (n - 1) as f64;
        let rule = GaussLegendre::new(PANEL_NODES);
        let panels: Vec<f64> = (0..n - 1)
            .into_par_iter()
            .map(|k| {
                let a = k as f64 * h;
                let b = if k == n - 2 { 1.0 } else { (k + 1) as f64 * h };
                rule.points(a, b)
                    .map(|(u, w)| {
                        let s = map.s_of_u(u);
                        Ok(w * law.pdf(s, cfg)? * map.ds_du(u))
                    })
                    .sum::<Result<f64>>()
            })
            .collect::<Result<_>>()?;
        let mut values = Vec::with_capacity(n);
        values.push(0.0);
        let mut acc = 0.0;
        for p in &panels {
            acc += p;
            values.push(acc);
        }
        let slopes = pchip_slopes(&values, h);
        Ok(CdfTable {
            map,
            values,
            slopes,
        })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn total(&self) -> f64 {
        *self.values.last().expect("table is never empty")
    }

    /// Fractions at the grid nodes.
    pub fn nodes(&self) -> impl Iterator<Item = f64> + '_ {
        let n = self.values.len();
        (0..n).map(move |k| {
            if k == n - 1 {
                1.0
            } else {
                self.map.s_pair(k as f64 / (n - 1) as f64).0
            }
        })
    }

    pub fn eval(&self, s: f64) -> f64 {
        if s <= 0.0 {
            return 0.0;
        }
        if s >= 1.0 {
            return self.total();
        }
        let n = self.values.len();
        let h = 1.0 / (n - 1) as f64;
        let u = self.map.u_of_s(s);
        let k = ((u / h) as usize).min(n - 2);
        let t = ((u - k as f64 * h) / h).clamp(0.0, 1.0);
        let (f0, f1) = (self.values[k], self.values[k + 1]);
        let (d0, d1) = (self.slopes[k] * h, self.slopes[k + 1] * h);
        let t2 = t * t;
        let t3 = t2 * t;
        let v = (2.0 * t3 - 3.0 * t2 + 1.0) * f0
            + (t3 - 2.0 * t2 + t) * d0
            + (-2.0 * t3 + 3.0 * t2) * f1
            + (t3 - t2) * d1;
        v.clamp(f0.min(f1), f0.max(f1))
    }
}

fn pchip_slopes(values: &[f64], h: f64) -> Vec<f64> {
    let n = values.len();
    let secants: Vec<f64> = values.windows(2).map(|w| (w[1] - w[0]) / h).collect();
    let mut d = vec![0.0; n];
    d[0] = secants[0];
    d[n - 1] = secants[n - 2];
    for k in 1..n - 1 {
        let (a, b) = (secants[k - 1], secants[k]);
        d[k] = if a * b <= 0.0 {
            0.0
        } else {
            2.0 / (1.0 / a + 1.0 / b)
        };
    }
    d
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ContinuousPart {
    /// Closed-form CDF of the law (no aging).
    ClosedForm,
    Tabulated(CdfTable),
}

/// Theory-side CDF: continuous part plus point masses at 0 and 1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TheoreticalCdf {
    pub law: Law,
    pub atom_at_0: f64,
    pub atom_at_1: f64,
    pub continuous: ContinuousPart,
}

impl TheoreticalCdf {
    pub fn build(law: Law, cfg: &QuadratureConfig) -> Result<Self> {
        cfg.validate()?;
        let (atom_at_0, atom_at_1) = law.atoms(cfg)?;
        let continuous = match law {
            Law::Arcsine | Law::Lamperti { .. } => ContinuousPart::ClosedForm,
            _ => ContinuousPart::Tabulated(CdfTable::build(&law, cfg)?),
        };
        let cdf = TheoreticalCdf {
            law,
            atom_at_0,
            atom_at_1,
            continuous,
        };
        let defect = cdf.normalization_defect();
        if defect.abs() > NORMALIZATION_TOL {
            return Err(Error::NonConvergence {
                context: format!("{} CDF normalization", law.name()),
                estimate: 1.0 + defect,
                error: defect.abs(),
                subdivisions: cfg.grid_size,
            });
        }
        Ok(cdf)
    }

    /// `int_0^s pdf` for `s` clamped to [0, 1].
    pub fn continuous_cdf(&self, s: f64) -> f64 {
        let s = s.clamp(0.0, 1.0);
        match (&self.continuous, self.law) {
            (ContinuousPart::Tabulated(t), _) => t.eval(s),
            (ContinuousPart::ClosedForm, Law::Lamperti { alpha, asym }) => {
                analytic::lamperti_cdf(alpha, asym.beta(), s).expect("s clamped to [0, 1]")
            }
            (ContinuousPart::ClosedForm, _) => {
                analytic::arcsine_cdf(s).expect("s clamped to [0, 1]")
            }
        }
    }

    /// `continuous_cdf(1) + atoms - 1`.
    pub fn normalization_defect(&self) -> f64 {
        self.continuous_cdf(1.0) + self.atom_at_0 + self.atom_at_1 - 1.0
    }

    /// P(X <= s): zero below 0, one from 1 on.
    pub fn cdf(&self, s: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&s) {
            return Err(Error::domain(format!(
                "fraction must lie in [0, 1], got {s}"
            )));
        }
        Ok(self.cdf_total(s))
    }

    /// Total version of [`cdf`](Self::cdf) on the whole real line.
    pub fn cdf_total(&self, s: f64) -> f64 {
        if s < 0.0 {
            0.0
        } else if s >= 1.0 {
            1.0
        } else {
            (self.atom_at_0 + self.continuous_cdf(s)).min(1.0)
        }
    }

    /// P(X < s).
    pub fn left_limit(&self, s: f64) -> f64 {
        if s <= 0.0 {
            0.0
        } else if s > 1.0 {
            1.0
        } else {
            (self.atom_at_0 + self.continuous_cdf(s)).min(1.0)
        }
    }

    pub fn pdf(&self, s: f64, cfg: &QuadratureConfig) -> Result<f64> {
        self.law.pdf(s, cfg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn r(v: f64) -> AgingRatio {
        AgingRatio::new(v).unwrap()
    }

    // Closed form of the v-integral; test-only oracle.
    fn phi_closed(r: f64, s: f64) -> f64 {
        (1.0 / ((1.0 - s) * (r + s)).sqrt() + 1.0 / (s * (r + 1.0 - s)).sqrt()) / (2.0 * PI)
    }

    #[test]
    fn aging_pdf_matches_closed_form() {
        let cfg = QuadratureConfig::default();
        for &rv in &[1e-4, 0.1, 1.0, 10.0, 1e3] {
            for &s in &[1e-6, 0.01, 0.2, 0.5, 0.93, 1.0 - 1e-7] {
                let got = aging_arcsine_pdf(r(rv), s, &cfg).unwrap();
                assert_relative_eq!(got, phi_closed(rv, s), max_relative = 1e-7);
            }
        }
    }

    #[test]
    fn aging_pdf_symmetry() {
        let cfg = QuadratureConfig::default();
        for &rv in &[0.3, 1.0, 5.0] {
            for &s in &[0.05, 0.2, 0.41] {
                let a = aging_arcsine_pdf(r(rv), s, &cfg).unwrap();
                let b = aging_arcsine_pdf(r(rv), 1.0 - s, &cfg).unwrap();
                assert!((a - b).abs() < 1e-10 * a.max(1.0));
            }
        }
    }

    #[test]
    fn aging_pdf_domain() {
        let cfg = QuadratureConfig::default();
        assert!(aging_arcsine_pdf(r(0.0), 0.5, &cfg).is_err());
        assert!(aging_arcsine_pdf(r(1.0), 0.0, &cfg).is_err());
        assert!(aging_arcsine_pdf(r(1.0), 1.0, &cfg).is_err());
        assert!(tail_constant_c(r(0.0), &cfg).is_err());
    }

    #[test]
    fn tail_constant_closed_form() {
        let cfg = QuadratureConfig::default();
        for &rv in &[1e-6, 0.1, 1.0, 10.0, 1e6] {
            let c = tail_constant_c(r(rv), &cfg).unwrap();
            assert_relative_eq!(c, 0.5 / (1.0 + rv).sqrt(), max_relative = 1e-7);
        }
    }

    #[test]
    fn tail_ratio_converges_to_c() {
        // phi(r;s)/phi(s) - c(r) ~ sqrt(s) / (2 sqrt(r)) as s -> 0.
        let cfg = QuadratureConfig::default();
        let c = tail_constant_c(r(1.0), &cfg).unwrap();
        let mut prev = f64::INFINITY;
        for &s in &[1e-3, 1e-4, 1e-5, 1e-6, 1e-8] {
            let ratio =
                aging_arcsine_pdf(r(1.0), s, &cfg).unwrap() / analytic::arcsine_pdf(s).unwrap();
            let gap = (ratio - c).abs();
            assert!(gap < prev);
            assert!(
                (gap - 0.5 * s.sqrt()).abs() < 0.5 * s.sqrt() * 0.05 + 1e-9,
                "s={s} gap={gap}"
            );
            prev = gap;
        }
        let ratio =
            aging_arcsine_pdf(r(1.0), 1e-6, &cfg).unwrap() / analytic::arcsine_pdf(1e-6).unwrap();
        assert!((ratio / c - 1.0).abs() < 0.01);
    }

    #[test]
    fn lamperti_pdf_reduces_to_brownian() {
        let cfg = QuadratureConfig::default();
        let sym = AsymmetryParams::SYMMETRIC;
        for &rv in &[0.5, 1.0, 2.0] {
            for &s in &[0.25, 0.5, 0.75, 0.01, 0.999] {
                let g = aging_lamperti_pdf(TailIndex::HALF, &sym, r(rv), s, &cfg).unwrap();
                let b = aging_arcsine_pdf(r(rv), s, &cfg).unwrap();
                assert_relative_eq!(g, b, max_relative = 1e-6);
            }
        }
    }

    #[test]
    fn cdf_table_matches_closed_form_integral() {
        let cfg = QuadratureConfig::default();
        for &rv in &[0.1, 1.0, 10.0] {
            let cdf = Law::AgingArcsine { r: r(rv) }
                .theoretical_cdf(&cfg)
                .unwrap();
            for i in 0..=20 {
                let s = i as f64 / 20.0;
                // int_0^s phi(r; .) in closed form
                let part = |s: f64| -> f64 {
                    let a = ((2.0 * s + rv - 1.0) / (1.0 + rv)).asin()
                        - ((rv - 1.0) / (1.0 + rv)).asin();
                    let b = PI / 2.0 - ((1.0 + rv - 2.0 * s) / (1.0 + rv)).asin();
                    (a + b) / (2.0 * PI)
                };
                assert!(
                    (cdf.continuous_cdf(s) - part(s)).abs() < 1e-8,
                    "r={rv} s={s}"
                );
            }
        }
    }

    #[test]
    fn cdf_endpoints_and_atoms() {
        let cfg = QuadratureConfig::default();
        assert_relative_eq!(
            aging_arcsine_cdf(r(1.0), 0.0, &cfg).unwrap(),
            0.25,
            epsilon = 1e-15
        );
        assert_eq!(aging_arcsine_cdf(r(1.0), 1.0, &cfg).unwrap(), 1.0);
        assert!(aging_arcsine_cdf(r(1.0), 1.5, &cfg).is_err());
        let asym = AsymmetryParams::from_beta(0.6699).unwrap();
        let alpha = TailIndex::new(0.7).unwrap();
        let c = aging_lamperti_cdf(alpha, &asym, r(2.0), 0.0, &cfg).unwrap();
        let q = analytic::atom_q_renewal(alpha, asym.p_minus(), r(2.0), &cfg).unwrap();
        assert_relative_eq!(c, q, epsilon = 1e-15);
    }

    #[test]
    fn tabulated_cdf_is_monotone() {
        let cfg = QuadratureConfig::default();
        let asym = AsymmetryParams::from_beta(0.8148).unwrap();
        let laws = [
            Law::AgingArcsine { r: r(0.5) },
            Law::AgingLamperti {
                alpha: TailIndex::new(0.3).unwrap(),
                asym,
                r: r(1.0),
            },
        ];
        for law in laws {
            let cdf = law.theoretical_cdf(&cfg).unwrap();
            let mut prev = 0.0;
            for i in 0..1024 {
                let v = cdf.cdf(i as f64 / 1023.0).unwrap();
                assert!(v >= prev, "{law:?} at {i}");
                prev = v;
            }
        }
    }

    #[test]
    fn graded_map_round_trips() {
        for a in [0.3, 0.5, 0.9] {
            let m = GradedMap { exponent: a };
            for i in 0..=100 {
                let u = i as f64 / 100.0;
                assert!((m.u_of_s(m.s_of_u(u)) - u).abs() < 1e-12);
                let (s, t) = m.s_pair(u);
                assert!((s + t - 1.0).abs() < 1e-15);
            }
        }
    }
}
