mod common;

use aging_arcsine::aging::*;
use aging_arcsine::analytic::{atom_q_bm, lamperti_pdf};
use aging_arcsine::stats::{build_empirical, ks_distance};
use aging_arcsine::{AgingRatio, AsymmetryParams, Law, QuadratureConfig, TailIndex};
use common::{aging_pdf_closed, quantile, tail_constant_closed, tanh_sinh, uniforms};

fn r(v: f64) -> AgingRatio {
    AgingRatio::new(v).unwrap()
}

#[test]
fn aged_arcsine_total_probability() {
    let cfg = QuadratureConfig::default();
    for rv in [0.1, 0.5, 1.0, 2.0, 10.0] {
        let body = tanh_sinh(
            |s| aging_arcsine_pdf(r(rv), s, &cfg).unwrap(),
            0.0,
            1.0,
            1e-11,
        );
        assert!((body + 2.0 * atom_q_bm(r(rv)) - 1.0).abs() < 1e-5);
    }
}

#[test]
fn aged_arcsine_density_matches_closed_form() {
    let cfg = QuadratureConfig::default();
    for rv in [0.01, 0.3, 1.0, 7.0] {
        for s in [1e-6, 0.01, 0.25, 0.5, 0.9, 1.0 - 1e-6] {
            let got = aging_arcsine_pdf(r(rv), s, &cfg).unwrap();
            let want = aging_pdf_closed(rv, s);
            assert!((got / want - 1.0).abs() < 1e-7, "r {rv} s {s}");
        }
    }
}

#[test]
fn tail_constant_matches_closed_form() {
    let cfg = QuadratureConfig::default();
    for rv in [1e-6, 0.2, 1.0, 4.0, 1e6] {
        let c = tail_constant_c(r(rv), &cfg).unwrap();
        assert!((c - tail_constant_closed(rv)).abs() < 1e-8);
    }
}

#[test]
fn aged_lamperti_total_probability() {
    let cfg = QuadratureConfig::default();
    let alpha = TailIndex::new(0.7).unwrap();
    let asym = AsymmetryParams::from_beta(0.669_919_939_722_637_6).unwrap();
    let law = Law::AgingLamperti {
        alpha,
        asym,
        r: r(1.0),
    };
    let (q0, q1) = law.atoms(&cfg).unwrap();
    let body = tanh_sinh(
        |s| aging_lamperti_pdf(alpha, &asym, r(1.0), s, &cfg).unwrap(),
        0.0,
        1.0,
        1e-9,
    );
    assert!((body + q0 + q1 - 1.0).abs() < 1e-4, "{}", body + q0 + q1);
}

#[test]
fn aged_lamperti_small_r_limit() {
    let cfg = QuadratureConfig::default();
    let alpha = TailIndex::HALF;
    let asym = AsymmetryParams::from_beta(0.8148).unwrap();
    let aged = aging_lamperti_pdf(alpha, &asym, r(1e-4), 0.5, &cfg).unwrap();
    let plain = lamperti_pdf(alpha, 0.8148, 0.5).unwrap();
    assert!((aged / plain - 1.0).abs() < 0.02, "{aged} vs {plain}");
}

#[test]
fn symmetric_cdf_is_reflection_invariant() {
    let cfg = QuadratureConfig::default();
    for law in [
        Law::AgingArcsine { r: r(0.7) },
        Law::AgingLamperti {
            alpha: TailIndex::new(0.4).unwrap(),
            asym: AsymmetryParams::SYMMETRIC,
            r: r(2.0),
        },
    ] {
        let t = law.theoretical_cdf(&cfg).unwrap();
        for i in 1..=9 {
            let s = i as f64 / 10.0;
            // F(s) + F((1 - s)-) = 1 for a law symmetric about 1/2
            let sum = t.cdf(s).unwrap() + t.left_limit(1.0 - s);
            assert!((sum - 1.0).abs() < 1e-6, "{} at {s}: {sum}", law.name());
        }
    }
}

#[test]
fn large_beta_tilts_toward_minus_state() {
    let cfg = QuadratureConfig::default();
    let alpha = TailIndex::new(0.6).unwrap();
    let asym = AsymmetryParams::from_beta(3.0).unwrap();
    let t = Law::AgingLamperti {
        alpha,
        asym,
        r: r(1.0),
    }
    .theoretical_cdf(&cfg)
    .unwrap();
    // p_+ = 1 / (1 + beta) = 1/4
    assert!(t.atom_at_0 > t.atom_at_1);
    assert!(t.cdf(0.5).unwrap() > 0.5);
}

#[test]
fn grid_refinement_barely_moves_ks() {
    let cfg = QuadratureConfig::default();
    let law = Law::AgingLamperti {
        alpha: TailIndex::new(0.7).unwrap(),
        asym: AsymmetryParams::from_beta(0.669_919_939_722_637_6).unwrap(),
        r: r(0.5),
    };
    let coarse = law.theoretical_cdf(&cfg.with_grid_size(256)).unwrap();
    let fine = law.theoretical_cdf(&cfg.with_grid_size(2048)).unwrap();
    let samples: Vec<f64> = uniforms(5000, 3)
        .into_iter()
        .map(|u| quantile(&fine, u))
        .collect();
    let emp = build_empirical(&samples, 0.0).unwrap();
    let d = (ks_distance(&emp, &coarse) - ks_distance(&emp, &fine)).abs();
    assert!(d < 1e-3, "{d}");
    for i in 0..=100 {
        let s = i as f64 / 100.0;
        assert!((coarse.cdf(s).unwrap() - fine.cdf(s).unwrap()).abs() < 1e-5);
    }
}

#[test]
fn rejects_bad_arguments() {
    let cfg = QuadratureConfig::default();
    assert!(aging_arcsine_pdf(r(1.0), 0.0, &cfg).is_err());
    assert!(aging_arcsine_pdf(r(1.0), 1.2, &cfg).is_err());
    assert!(aging_arcsine_pdf(r(0.0), 0.5, &cfg).is_err());
    assert!(aging_arcsine_cdf(r(1.0), -0.1, &cfg).is_err());
    assert!(AgingRatio::new(-1.0).is_err());
}

#[test]
fn aged_lamperti_density_near_endpoints() {
    let cfg = QuadratureConfig::default();
    let alpha = TailIndex::new(0.7).unwrap();
    let asym = AsymmetryParams::from_beta(0.669_919_939_722_637_6).unwrap();
    let pdf = |s: f64| aging_lamperti_pdf(alpha, &asym, r(1.0), s, &cfg).unwrap();
    // s^{alpha - 1} divergence: twenty decades multiply the density by 1e6.
    let ratio = pdf(1e-60) / pdf(1e-40);
    assert!((ratio / 1e6 - 1.0).abs() < 1e-6, "{ratio}");
    assert!(pdf(1.0 - 1e-15).is_finite());
}
