//! Independent numerical oracles shared by the integration tests.
#![allow(dead_code)]

use oscihaz::hazard::{in_critical_band, OscillatorParams};
use rand::Rng;

pub const ROTTERDAM: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/rotterdam.csv");

pub fn rotterdam() -> oscihaz::survdata::SurvivalDataset {
    oscihaz::survdata::load_csv(std::fs::File::open(ROTTERDAM).expect("rotterdam.csv")).expect("parse")
}

/// Classical RK4 on `h'' + 2 eta w0 h' + w0^2 (h - hb) = 0`, sampled at increasing `times`.
pub fn rk4_hazard(p: &OscillatorParams<f64>, times: &[f64], step: f64) -> Vec<f64> {
    let OscillatorParams { eta, w0, hb, h0, r0 } = *p;
    let rhs = |h: f64, v: f64| (v, -2.0 * eta * w0 * v - w0 * w0 * (h - hb));
    let (mut h, mut v, mut t) = (h0, r0, 0.0);
    let mut out = Vec::with_capacity(times.len());
    for &target in times {
        let n = ((target - t) / step).round() as usize;
        let dt = if n == 0 { 0.0 } else { (target - t) / n as f64 };
        for _ in 0..n {
            let k1 = rhs(h, v);
            let k2 = rhs(h + 0.5 * dt * k1.0, v + 0.5 * dt * k1.1);
            let k3 = rhs(h + 0.5 * dt * k2.0, v + 0.5 * dt * k2.1);
            let k4 = rhs(h + dt * k3.0, v + dt * k3.1);
            h += dt / 6.0 * (k1.0 + 2.0 * k2.0 + 2.0 * k3.0 + k4.0);
            v += dt / 6.0 * (k1.1 + 2.0 * k2.1 + 2.0 * k3.1 + k4.1);
        }
        t = target;
        out.push(h);
    }
    out
}

/// Adaptive Simpson quadrature to absolute tolerance `tol`.
pub fn quad(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    #[allow(clippy::too_many_arguments)]
    fn rec(f: &dyn Fn(f64) -> f64, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> f64 {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let (flm, frm) = (f(lm), f(rm));
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            left + right + delta / 15.0
        } else {
            rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) + rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
        }
    }
    let (fa, fb, fm) = (f(a), f(b), f(0.5 * (a + b)));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    rec(f, a, b, fa, fm, fb, whole, tol, 50)
}

/// eta uniform on [0, 3] outside the critical band, w0 log-uniform on [0.1, 10],
/// hb and h0 uniform on [0.05, 5], r0 uniform on [-5, 5].
pub fn random_params(rng: &mut impl Rng) -> OscillatorParams<f64> {
    let eta = loop {
        let e: f64 = rng.random_range(0.0..3.0);
        if !in_critical_band(e) {
            break e;
        }
    };
    let w0 = 10f64.powf(rng.random_range(-1.0..1.0));
    let hb = rng.random_range(0.05..5.0);
    let h0 = rng.random_range(0.05..5.0);
    let r0 = rng.random_range(-5.0..5.0);
    OscillatorParams::new(eta, w0, hb, h0, r0).expect("valid draw")
}

/// Golden-section minimizer of a unimodal function on `[a, b]`.
pub fn golden_min(f: &dyn Fn(f64) -> f64, mut a: f64, mut b: f64) -> (f64, f64) {
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..200 {
        if (b - a).abs() <= 1e-14 * (1.0 + a.abs()) {
            break;
        }
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
    }
    let t = 0.5 * (a + b);
    (t, f(t))
}

/// Sup-norm distance between a right-continuous step function and a continuous curve,
/// checked at both one-sided limits of every jump in `[0, t_max]`.
pub fn step_sup_distance(jumps: &[f64], values: &[f64], curve: &dyn Fn(f64) -> f64, t_max: f64) -> f64 {
    let mut worst = 0.0f64;
    let mut before = 1.0;
    for (&t, &s) in jumps.iter().zip(values) {
        if t > t_max {
            break;
        }
        let c = curve(t);
        worst = worst.max((before - c).abs()).max((s - c).abs());
        before = s;
    }
    worst.max((before - curve(t_max)).abs())
}
