//! Test-only oracles, independent of the library's quadrature paths.

#![allow(dead_code)]

use std::f64::consts::PI;

use aging_arcsine::TheoreticalCdf;

/// Tanh-sinh quadrature on (a, b), refined until successive levels agree.
pub fn tanh_sinh<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> f64 {
    let half = 0.5 * (b - a);
    let eval = |t: f64| -> f64 {
        let u = 0.5 * PI * t.sinh();
        let x = u.tanh();
        let w = 0.5 * PI * t.cosh() / (u.cosh() * u.cosh());
        // distance to the nearer endpoint, kept exact for large |t|
        let gap = 1.0 / (u.abs().exp() * u.abs().cosh());
        let point = if x >= 0.0 {
            b - half * gap
        } else {
            a + half * gap
        };
        if !(point > a && point < b) || w == 0.0 {
            return 0.0;
        }
        w * f(point)
    };
    let t_max = 4.0;
    let mut h = 0.5;
    let mut sum = eval(0.0);
    let mut k = 1;
    while k as f64 * h <= t_max {
        let t = k as f64 * h;
        sum += eval(t) + eval(-t);
        k += 1;
    }
    let mut estimate = sum * h * half;
    for _ in 0..12 {
        h *= 0.5;
        let mut extra = 0.0;
        let mut k = 1;
        while k as f64 * h <= t_max {
            let t = k as f64 * h;
            extra += eval(t) + eval(-t);
            k += 2;
        }
        sum += extra;
        let next = sum * h * half;
        if (next - estimate).abs() < tol * next.abs().max(1.0) {
            return next;
        }
        estimate = next;
    }
    estimate
}

/// Closed form of the aged Brownian density, derived independently of the
/// integral representation used by the library.
pub fn aging_pdf_closed(r: f64, s: f64) -> f64 {
    (1.0 / ((1.0 - s) * (r + s)).sqrt() + 1.0 / (s * (r + 1.0 - s)).sqrt()) / (2.0 * PI)
}

/// Closed form of the tail constant.
pub fn tail_constant_closed(r: f64) -> f64 {
    0.5 / (1.0 + r).sqrt()
}

/// Inverse-CDF draw from a theoretical law with atoms, by bisection.
pub fn quantile(theory: &TheoreticalCdf, p: f64) -> f64 {
    if p <= theory.atom_at_0 {
        return 0.0;
    }
    if p > theory.cdf_total(1.0 - 1e-15) {
        return 1.0;
    }
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if theory.cdf_total(mid) < p {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    hi
}

/// Low-discrepancy-free deterministic uniform stream for oracle sampling.
pub fn uniforms(n: usize, seed: u64) -> Vec<f64> {
    let mut state = seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) | 1;
    (0..n)
        .map(|_| {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            ((state >> 11) as f64 + 0.5) / (1u64 << 53) as f64
        })
        .collect()
}
