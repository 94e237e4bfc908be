mod common;

use std::f64::consts::PI;

use aging_arcsine::analytic::*;
use aging_arcsine::{AgingRatio, QuadratureConfig, TailIndex};
use common::tanh_sinh;

#[test]
fn first_passage_density_is_normalized() {
    for x in [0.1, 1.0, 3.0] {
        // s = x^2 tan^2(theta) maps (0, inf) onto (0, pi/2)
        let total = tanh_sinh(
            |th: f64| {
                let t = th.tan();
                let s = x * x * t * t;
                let ds = 2.0 * x * x * t / (th.cos() * th.cos());
                fpt_density(x, s).unwrap() * ds
            },
            0.0,
            PI / 2.0,
            1e-12,
        );
        assert!((total - 1.0).abs() < 1e-8, "x = {x}: {total}");
    }
}

#[test]
fn forward_recurrence_density_is_normalized() {
    for t in [0.5, 1.0, 10.0] {
        let total = tanh_sinh(
            |th: f64| {
                let tn = th.tan();
                let s = t * tn * tn;
                let ds = 2.0 * t * tn / (th.cos() * th.cos());
                frt_density_bm(t, s).unwrap() * ds
            },
            0.0,
            PI / 2.0,
            1e-12,
        );
        assert!((total - 1.0).abs() < 1e-8, "t = {t}: {total}");
    }
}

#[test]
fn forward_recurrence_is_convolution_of_propagators() {
    for t in [0.3, 1.0, 4.0] {
        for s in [0.1, 1.0, 7.0] {
            let lhs = 2.0
                * tanh_sinh(
                    |y: f64| {
                        let x = y / (1.0 - y);
                        x / s * propagator(s, x).unwrap() * propagator(t, x).unwrap()
                            / ((1.0 - y) * (1.0 - y))
                    },
                    0.0,
                    1.0,
                    1e-13,
                );
            assert!((lhs - frt_density_bm(t, s).unwrap()).abs() < 1e-8);
        }
    }
}

/// `int_0^s` of the Lamperti density. Mass above 1/2 is taken from the
/// mirrored law (beta -> 1/beta) so both singular endpoints sit at 0.
fn lamperti_mass(alpha: TailIndex, beta: f64, s: f64) -> f64 {
    let below = |b: f64, x: f64| tanh_sinh(|t| lamperti_pdf(alpha, b, t).unwrap(), 0.0, x, 1e-13);
    if s <= 0.5 {
        below(beta, s)
    } else {
        below(beta, 0.5) + below(1.0 / beta, 0.5) - below(1.0 / beta, 1.0 - s)
    }
}

#[test]
fn lamperti_density_integrates_to_one() {
    for (a, b) in [
        (0.5, 1.0),
        (0.3, 2.0),
        (0.7, 0.669_919_939_722_637_6),
        (0.9, 0.2),
    ] {
        let alpha = TailIndex::new(a).unwrap();
        let total = lamperti_mass(alpha, b, 1.0);
        assert!((total - 1.0).abs() < 1e-8, "alpha {a} beta {b}: {total}");
    }
}

#[test]
fn lamperti_cdf_matches_quadrature_and_frozen_value() {
    let alpha = TailIndex::new(0.7).unwrap();
    for beta in [0.669_919_939_722_637_6, 0.8148, 3.0] {
        for s in [0.05, 0.3, 0.6, 0.95] {
            let q = lamperti_mass(alpha, beta, s);
            assert!(
                (q - lamperti_cdf(alpha, beta, s).unwrap()).abs() < 1e-8,
                "beta {beta} s {s}"
            );
        }
    }
    let v = lamperti_cdf(alpha, 0.8148, 0.6).unwrap();
    assert!((v - 0.5351691326279946).abs() < 1e-12, "{v}");
}

#[test]
fn renewal_atom_matches_forward_recurrence_tail() {
    let cfg = QuadratureConfig::default();
    for (a, p, r) in [(0.5, 0.5, 1.0), (0.3, 0.2, 0.1), (0.8, 0.7, 5.0)] {
        let alpha = TailIndex::new(a).unwrap();
        let rr = AgingRatio::new(r).unwrap();
        // int_1^inf psi(tau) dtau with tau = 1/u
        let tail = tanh_sinh(
            |u: f64| frt_density_renewal(alpha, p, rr, 1.0 / u).unwrap() / (u * u),
            0.0,
            1.0,
            1e-12,
        );
        let q = atom_q_renewal(alpha, p, rr, &cfg).unwrap();
        assert!((q - tail).abs() < 1e-8, "{a} {p} {r}: {q} vs {tail}");
    }
}

#[test]
fn brownian_atom_is_half_the_no_zero_probability() {
    for r in [0.01, 0.5, 1.0, 2.0, 30.0] {
        let rr = AgingRatio::new(r).unwrap();
        let no_zero = tanh_sinh(
            |u: f64| frt_density_bm(r, 1.0 / u).unwrap() / (u * u),
            0.0,
            1.0,
            1e-13,
        );
        assert!((atom_q_bm(rr) - 0.5 * no_zero).abs() < 1e-9);
    }
    assert_eq!(atom_q_bm(AgingRatio::new(1.0).unwrap()), 0.25);
}

#[test]
fn map_asymmetry_is_one_at_symmetric_split() {
    use aging_arcsine::MapParams;
    let p = MapParams::new(0.5, TailIndex::HALF).unwrap();
    assert!((beta_of_map(&p) - 1.0).abs() < 1e-15);
    let p = MapParams::new(0.6, TailIndex::HALF).unwrap();
    let expected = 1.1 / 0.9 * (0.4f64 / 0.6).powf(1.0);
    assert!((beta_of_map(&p) - expected).abs() < 1e-15);
}
