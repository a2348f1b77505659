mod common;

use common::{quad, random_params, rk4_hazard};
use oscihaz::hazard::{
    coefficients, cumulative_hazard_at, hazard_at, hazard_derivative_at, hazard_second_derivative_at,
    is_admissible, survival_at, OscillatorParams, Regime, CRITICAL_BAND,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn admissible_draws(seed: u64, n: usize) -> Vec<OscillatorParams<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let p = random_params(&mut rng);
        if is_admissible(&p).admissible {
            out.push(p);
        }
    }
    out
}

#[test]
fn ode_residual_vanishes() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..1000 {
        let p = random_params(&mut rng);
        let t = rng.random_range(0.0..20.0);
        let (h, d1, d2) = (hazard_at(&p, t), hazard_derivative_at(&p, t), hazard_second_derivative_at(&p, t));
        let terms = [d2, 2.0 * p.eta * p.w0 * d1, p.w0 * p.w0 * (h - p.hb)];
        let scale = terms.iter().map(|x| x.abs()).sum::<f64>() + p.w0 * p.w0 * p.hb;
        let residual: f64 = terms.iter().sum();
        assert!(residual.abs() <= 1e-6 * scale, "{p:?} t={t}: residual {residual}");
    }
}

#[test]
fn rk4_agrees_on_long_horizon() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    let times: Vec<f64> = (1..=10).map(|j| 2.0 * j as f64).collect();
    for _ in 0..50 {
        let p = random_params(&mut rng);
        for (&t, &h) in times.iter().zip(&rk4_hazard(&p, &times, 1e-4)) {
            let rel = (hazard_at(&p, t) - h).abs() / h.abs().max(p.hb);
            assert!(rel <= 1e-6, "{p:?} t={t}: {rel}");
        }
    }
}

#[test]
fn cumulative_hazard_matches_quadrature() {
    for p in admissible_draws(23, 200) {
        let mut acc = 0.0;
        for j in 1..=20 {
            let (a, b) = ((j - 1) as f64, j as f64);
            acc += quad(&|s| hazard_at(&p, s), a, b, 1e-11);
            assert!((cumulative_hazard_at(&p, b) - acc).abs() <= 1e-8, "{p:?} t={b}");
        }
    }
}

#[test]
fn finite_differences() {
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    for _ in 0..500 {
        let p = random_params(&mut rng);
        let t = rng.random_range(0.1..10.0);
        let step = 1e-5;
        let fd_h = (cumulative_hazard_at(&p, t + step) - cumulative_hazard_at(&p, t - step)) / (2.0 * step);
        let h = hazard_at(&p, t);
        assert!((fd_h - h).abs() <= 1e-5 * h.abs().max(p.hb), "{p:?} t={t}");
        let fd_d = (hazard_at(&p, t + step) - hazard_at(&p, t - step)) / (2.0 * step);
        let d = hazard_derivative_at(&p, t);
        let scale = d.abs().max(p.w0 * (p.h0 - p.hb).abs().max(p.hb)).max(p.r0.abs());
        assert!((fd_d - d).abs() <= 1e-5 * scale, "{p:?} t={t}: {fd_d} vs {d}");
    }
}

#[test]
fn equilibrium_envelope() {
    let mut rng = ChaCha8Rng::seed_from_u64(25);
    let mut checked = 0;
    while checked < 300 {
        let p = random_params(&mut rng);
        if p.eta == 0.0 || p.regime() != Regime::UnderDamped {
            continue;
        }
        checked += 1;
        let amp = coefficients(&p).unwrap().amplitude;
        for i in 0..200 {
            let t = 0.1 * i as f64;
            let bound = amp * (-p.w0 * p.eta * t).exp();
            assert!((hazard_at(&p, t) - p.hb).abs() <= bound * (1.0 + 1e-12) + 1e-15, "{p:?} t={t}");
        }
    }
}

#[test]
fn survival_tail_is_bounded_by_excess_hazard() {
    for p in admissible_draws(26, 100) {
        let horizon = 500.0 / p.hb;
        let pieces = 200;
        let mut excess = 0.0;
        for j in 0..pieces {
            let (a, b) = (horizon * j as f64 / pieces as f64, horizon * (j + 1) as f64 / pieces as f64);
            excess += quad(&|s| (hazard_at(&p, s) - p.hb).abs(), a, b, 1e-10);
        }
        let bound = excess.exp();
        for i in 0..=1000 {
            let t = horizon * i as f64 / 1000.0;
            let scaled = survival_at(&p, t).unwrap() * (p.hb * t).exp();
            assert!(scaled <= bound * (1.0 + 1e-9), "{p:?} t={t}: {scaled} > {bound}");
        }
    }
}

#[test]
fn continuous_across_critical_band() {
    let mut rng = ChaCha8Rng::seed_from_u64(27);
    for _ in 0..200 {
        let p = random_params(&mut rng);
        let at = |eta: f64| OscillatorParams::new(eta, p.w0, p.hb, p.h0, p.r0).unwrap();
        let (lo, mid, hi) = (at(1.0 - 2.0 * CRITICAL_BAND), at(1.0), at(1.0 + 2.0 * CRITICAL_BAND));
        for i in 0..=20 {
            let t = 0.5 * i as f64;
            let h = hazard_at(&mid, t);
            for side in [&lo, &hi] {
                assert!((hazard_at(side, t) - h).abs() <= 1e-4 * h.abs().max(p.hb), "{p:?} t={t}");
            }
        }
    }
}

proptest! {
    #[test]
    fn initial_conditions_hold(
        eta in 0.0..3.0f64,
        w0 in 0.05..20.0f64,
        hb in 0.01..10.0f64,
        h0 in 0.01..10.0f64,
        r0 in -20.0..20.0f64,
    ) {
        let p = OscillatorParams::new(eta, w0, hb, h0, r0).unwrap();
        prop_assert!((hazard_at(&p, 0.0) - h0).abs() <= 1e-10 * h0);
        let d = hazard_derivative_at(&p, 0.0);
        prop_assert!((d - r0).abs() <= 1e-10 * r0.abs().max(w0 * (h0 - hb).abs()).max(1e-300), "{d} vs {r0}");
        prop_assert_eq!(cumulative_hazard_at(&p, 0.0), 0.0);
    }

    #[test]
    fn single_precision_tracks_double(
        eta in 0.0..3.0f64,
        w0 in 0.1..5.0f64,
        hb in 0.1..5.0f64,
        h0 in 0.1..5.0f64,
        r0 in -5.0..5.0f64,
        t in 0.0..10.0f64,
    ) {
        prop_assume!(!oscihaz::hazard::in_critical_band(eta) && (eta - 1.0).abs() > 1e-2);
        let p64 = OscillatorParams::new(eta, w0, hb, h0, r0).unwrap();
        let p32 = OscillatorParams::new(eta as f32, w0 as f32, hb as f32, h0 as f32, r0 as f32).unwrap();
        let (h64, h32) = (hazard_at(&p64, t), hazard_at(&p32, t as f32) as f64);
        prop_assert!((h64 - h32).abs() <= 1e-3 * h64.abs().max(hb), "{h64} vs {h32}");
    }
}
