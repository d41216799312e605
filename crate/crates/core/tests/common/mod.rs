//! Property checks shared by the proptest suite and the acceptance runner.
//! Each check returns `Err` with a description on violation.

#![allow(dead_code)]

use std::f64::consts::PI;

use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};
use triprod_core::constants::{alpha_boundary, omega};
use triprod_core::integrands::{self as ig, HalfLinePower};
use triprod_core::product::{product_truncated, ProductParams};
use triprod_core::quadrature::{try_integrate, QuadConfig, Transform};
use triprod_core::roots::{f, find_roots_upper, newton, seed};
use triprod_core::series::{ramanujan_series, residue_sum, residue_term, solve_y, AlphaParam};
use triprod_core::special::{gamma_abs_sq, hyp2f1, log_gamma};
use triprod_core::{product_gamma_form, Complex64};

pub type Check = std::result::Result<(), TestCaseError>;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn fail(msg: String) -> Check {
    Err(TestCaseError::fail(msg))
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        fail(msg())
    }
}

fn ok<T, E: std::fmt::Display>(r: std::result::Result<T, E>) -> std::result::Result<T, TestCaseError> {
    r.map_err(|e| TestCaseError::fail(e.to_string()))
}

/// Runs `check` on `cases` deterministic samples of `strategy`.
pub fn run<S: Strategy>(cases: u32, strategy: S, check: impl Fn(S::Value) -> Check) -> std::result::Result<(), String> {
    let mut runner = TestRunner::new_with_rng(
        Config {
            cases,
            failure_persistence: None,
            ..Config::default()
        },
        proptest::test_runner::TestRng::deterministic_rng(proptest::test_runner::RngAlgorithm::ChaCha),
    );
    runner.run(&strategy, check).map_err(|e| e.to_string())
}

// ---------------------------------------------------------------------------
// strategies

pub fn right_half_plane() -> impl Strategy<Value = Complex64> {
    (0.01f64..60.0, -60.0f64..60.0).prop_map(|(x, y)| c(x, y))
}

pub fn recurrence_domain() -> impl Strategy<Value = Complex64> {
    (0.5f64..50.0, -50.0f64..50.0).prop_map(|(x, y)| c(x, y))
}

pub fn hyp_args() -> impl Strategy<Value = (Complex64, Complex64, Complex64)> {
    (
        (-3.0f64..3.0, -1.0f64..1.0),
        (0.1f64..3.0, -1.0f64..1.0),
        (0.0f64..0.5, -PI..PI),
    )
        .prop_map(|((ar, ai), (br, bi), (r, t))| (c(ar, ai), c(br, bi), Complex64::from_polar(r, t)))
}

pub fn product_b() -> impl Strategy<Value = f64> {
    prop::sample::select(vec![0.5, 1.0, 2.0])
}

pub fn disc(radius: f64) -> impl Strategy<Value = Complex64> {
    (0.0f64..radius, -PI..PI).prop_map(|(r, t)| Complex64::from_polar(r, t))
}

// ---------------------------------------------------------------------------
// special

pub fn log_gamma_conjugation(z: Complex64) -> Check {
    let a = ok(log_gamma(z.conj()))?;
    let b = ok(log_gamma(z))?.conj();
    ensure((a - b).norm() <= 1e-13 * b.norm().max(1.0), || format!("z = {z}: {a} vs {b}"))
}

pub fn log_gamma_recurrence(z: Complex64) -> Check {
    let ratio = (ok(log_gamma(z + 1.0))? - ok(log_gamma(z))?).exp();
    ensure((ratio - z).norm() <= 1e-12 * z.norm(), || format!("z = {z}: ratio {ratio}"))
}

pub fn gamma_reflection(y: f64) -> Check {
    let v = ok(gamma_abs_sq(c(1.0, y)))? * (PI * y).sinh() / (PI * y);
    ensure((v - 1.0).abs() <= 1e-11, || format!("y = {y}: {v}"))
}

pub fn hyp2f1_binomial((a, b, z): (Complex64, Complex64, Complex64)) -> Check {
    let v = ok(hyp2f1(a, b, b, z))?;
    let expected = (-a * (1.0 - z).ln()).exp();
    ensure((v - expected).norm() <= 1e-12 * expected.norm(), || {
        format!("a = {a}, b = {b}, z = {z}: {v} vs {expected}")
    })
}

// ---------------------------------------------------------------------------
// product

/// Distance from z to the nearest pole of P_b: z, ωz or z/ω at -(k+b).
pub fn pole_gap(b: f64, z: Complex64) -> f64 {
    let w = omega();
    [z, w * z, z * w.conj()]
        .into_iter()
        .map(|u| {
            let k = (-u.re - b).round().max(0.0);
            (u + k + b).norm()
        })
        .fold(f64::INFINITY, f64::min)
}

pub fn product_rotation((b, z): (f64, Complex64)) -> Check {
    if pole_gap(b, z) < 0.05 {
        return Ok(());
    }
    let p = ProductParams::new(b).unwrap();
    let v = ok(product_gamma_form(p, z))?;
    let r = ok(product_gamma_form(p, omega() * z))?;
    ensure((v - r).norm() <= 1e-11 * v.norm(), || format!("b = {b}, z = {z}: {v} vs {r}"))
}

pub fn product_conjugation((b, z): (f64, Complex64)) -> Check {
    if pole_gap(b, z) < 0.05 {
        return Ok(());
    }
    let p = ProductParams::new(b).unwrap();
    let v = ok(product_gamma_form(p, z.conj()))?;
    let r = ok(product_gamma_form(p, z))?.conj();
    ensure((v - r).norm() <= 1e-11 * r.norm(), || format!("b = {b}, z = {z}: {v} vs {r}"))
}

pub const ORACLE_TERMS: usize = 100_000;

pub fn product_oracle((b, z): (f64, Complex64)) -> Check {
    if pole_gap(b, z) < 0.05 {
        return Ok(());
    }
    let p = ProductParams::new(b).unwrap();
    let g = ok(product_gamma_form(p, z))?;
    let t = ok(product_truncated(p, z, ORACLE_TERMS))?;
    let bound = t.rel_tail * t.value.norm() + 1e-12 * g.norm();
    ensure((g - t.value).norm() <= bound, || {
        format!("b = {b}, z = {z}: gamma {g}, truncated {} (tail {:e})", t.value, t.rel_tail)
    })
}

fn decay_normalized(x: f64) -> std::result::Result<f64, TestCaseError> {
    let p = ok(product_gamma_form(ProductParams::new(1.0).unwrap(), c(x, 0.0)))?;
    Ok(p.norm() * (2.0 * PI * x / 3f64.sqrt()).exp() / x.powf(1.5))
}

pub fn product_decay(x: f64) -> Check {
    let base = decay_normalized(20.0)?;
    let v = decay_normalized(x)?;
    ensure((v / base - 1.0).abs() < 0.1, || format!("x = {x}: {v} vs {base} at x = 20"))
}

// ---------------------------------------------------------------------------
// quadrature

pub fn integrate(cfg: &QuadConfig, f: impl Fn(f64) -> Complex64) -> std::result::Result<(Complex64, f64), TestCaseError> {
    let r = ok(try_integrate(|x| Ok(f(x)), cfg))?;
    Ok((r.value, r.err_estimate))
}

pub fn smooth_pair(p: f64, q: f64, r: f64) -> (impl Fn(f64) -> Complex64, impl Fn(f64) -> Complex64) {
    (
        move |x: f64| c((-p * x * x).exp(), 0.0),
        move |x: f64| {
            let s = 1.0 / (q * x).cosh();
            Complex64::from_polar(s * s, r * x)
        },
    )
}

pub fn quadrature_linearity((a, b, p, q, r): (Complex64, Complex64, f64, f64, f64)) -> Check {
    let cfg = QuadConfig::default();
    let (f, g) = smooth_pair(p, q, r);
    let (i_f, e_f) = integrate(&cfg, &f)?;
    let (i_g, e_g) = integrate(&cfg, &g)?;
    let (i_h, e_h) = integrate(&cfg, |x| a * f(x) + b * g(x))?;
    let combined = a.norm() * e_f + b.norm() * e_g + e_h;
    let gap = (i_h - (a * i_f + b * i_g)).norm();
    ensure(gap <= 10.0 * combined, || format!("gap {gap:e} vs combined estimate {combined:e}"))
}

pub fn linearity_args() -> impl Strategy<Value = (Complex64, Complex64, f64, f64, f64)> {
    (
        (-2.0f64..2.0, -2.0f64..2.0),
        (-2.0f64..2.0, -2.0f64..2.0),
        0.5f64..3.0,
        0.5f64..3.0,
        0.0f64..3.0,
    )
        .prop_map(|((ar, ai), (br, bi), p, q, r)| (c(ar, ai), c(br, bi), p, q, r))
}

/// Gaussian of width `s`, sech² and e^{-x} on the half line, and a
/// Cauchy-type half-line integrand, each with its exact value.
pub fn error_honesty(s: f64) -> Check {
    let full = QuadConfig::default();
    let cases: [(&str, QuadConfig, Integrand, f64); 4] = [
        ("gaussian", full, Box::new(move |x| c((-(x / s).powi(2)).exp(), 0.0)), s * PI.sqrt()),
        ("sech2", full, Box::new(move |x| c(1.0 / (x / s).cosh().powi(2), 0.0)), 2.0 * s),
        (
            "exp",
            full.with_transform(Transform::HalfLineExpDecay),
            Box::new(move |x| c((-x / s).exp(), 0.0)),
            s,
        ),
        (
            "cauchy",
            full.with_transform(Transform::HalfLineAlgebraicDecay),
            Box::new(move |x| c(1.0 / (s * s + x * x), 0.0)),
            PI / (2.0 * s),
        ),
    ];
    for (name, cfg, f, exact) in cases {
        let (v, err) = integrate(&cfg, f)?;
        let true_err = (v - exact).norm();
        ensure(true_err <= 10.0 * err, || {
            format!("{name}, s = {s}: true error {true_err:e} vs estimate {err:e}")
        })?;
    }
    Ok(())
}

/// Level differences with every level forced.
pub fn level_diffs(transform: Transform, f: impl Fn(f64) -> Complex64) -> std::result::Result<(Complex64, Vec<f64>), String> {
    // Loose target so that the forced final level always converges; the
    // node scan still runs down to abs_tol·1e-2.
    let mut cfg = QuadConfig::new(transform).with_tol(1e-12, 1e-6);
    cfg.min_level = 8;
    cfg.max_level = 8;
    let r = try_integrate(|x| Ok(f(x)), &cfg).map_err(|e| e.to_string())?;
    Ok((r.value, r.level_diffs))
}

/// Differences from level 4 on never grow until they hit the roundoff floor.
pub fn monotone_after_level_four(name: &str, value: Complex64, diffs: &[f64]) -> std::result::Result<(), String> {
    let floor = 100.0 * f64::EPSILON * value.norm().max(1.0);
    for l in 4..diffs.len() {
        let (prev, cur) = (diffs[l - 1], diffs[l]);
        if prev <= floor {
            break;
        }
        if cur > prev {
            return Err(format!("{name}: level {} diff {cur:e} > level {l} diff {prev:e}", l + 1));
        }
    }
    Ok(())
}

type Integrand = Box<dyn Fn(f64) -> Complex64>;

fn real_or_nan(r: triprod_core::Result<f64>) -> Complex64 {
    c(r.unwrap_or(f64::NAN), 0.0)
}

/// Representative integrand of every quadrature-based catalog entry.
pub fn catalog_integrands() -> Vec<(&'static str, Transform, Integrand)> {
    use Transform::*;
    let p1 = ProductParams::new(1.0).unwrap();
    vec![
        ("fourier_cosh", FullLineExpDecay, Box::new(|x| ig::fourier_cosh(x, 1.0, 1.0, 2.0))),
        ("hypergeom_b", FullLineExpDecay, Box::new(|x| ig::hypergeometric(x, 0.5).unwrap_or(c(f64::NAN, 0.0)))),
        ("sqrt_b_half", FullLineExpDecay, Box::new(ig::sqrt_half)),
        ("main_b1", FullLineExpDecay, Box::new(ig::main_b1)),
        ("cosh_weight", FullLineExpDecay, Box::new(ig::cosh_weight)),
        ("sinh_weight", FullLineExpDecay, Box::new(ig::sinh_weight)),
        ("t_sub", HalfLineAlgebraicDecay, Box::new(|t| ig::half_line_power(t, HalfLinePower::Zero))),
        ("t_alpha", HalfLineAlgebraicDecay, Box::new(|t| ig::half_line_power(t, HalfLinePower::Alpha))),
        ("t_alpha_m1", FullLineExpDecay, Box::new(|x| ig::half_line_power_exp(x, HalfLinePower::AlphaMinusOne))),
        ("transform_b", HalfLineExpDecay, Box::new(move |x| ig::product(x, p1).unwrap_or(c(f64::NAN, 0.0)))),
        ("transform_rhs", FullLineExpDecay, Box::new(|x| ig::transform_rhs(x, 1.0))),
        ("rotated", HalfLineExpDecay, Box::new(ig::rotated)),
        ("cosine_cube", HalfLineExpDecay, Box::new(ig::cosine_cube)),
        ("parametric", FullLineExpDecay, Box::new(|x| ig::parametric(x, c(0.1, 0.1)))),
        ("g_zero", HalfLineExpDecay, Box::new(|x| real_or_nan(ig::g_over_product(x, 2.0)))),
        ("f_value", HalfLineExpDecay, Box::new(|x| real_or_nan(ig::f_over_product(x, 3.0)))),
        ("logtrig", HalfLineAlgebraicDecay, Box::new(ig::log_trig)),
        ("logtrig_real", HalfLineAlgebraicDecay, Box::new(|t| c(ig::log_trig_real(t), 0.0))),
        ("beta_link", HalfLineExpDecay, Box::new(|x| real_or_nan(ig::beta_ratio(x)))),
    ]
}

// ---------------------------------------------------------------------------
// series

pub const RESIDUE_B_GRID: [f64; 6] = [0.3, 0.5, 0.75, 1.0, 1.5, 2.0];

/// |S - S_N| ≤ |term_{N+1}| once |term_n| decreases monotonically.
pub fn alternating_tail(b: f64) -> std::result::Result<(), String> {
    let total = residue_sum(b, 1e-16).map_err(|e| e.to_string())?.value.re;
    let terms: Vec<f64> = (0..60).map(|n| residue_term(b, n).unwrap()).collect();
    let start = (0..terms.len() - 1)
        .find(|&n| (n..terms.len() - 1).all(|m| terms[m + 1].abs() <= terms[m].abs()))
        .ok_or_else(|| format!("b = {b}: terms never decrease monotonically"))?;
    let mut partial: f64 = terms[..start].iter().sum();
    for n in start..terms.len() - 1 {
        partial += terms[n];
        let next = terms[n + 1].abs();
        if next < 1e-14 * total.abs() {
            break;
        }
        let gap = (total - partial).abs();
        if gap > next * (1.0 + 1e-9) + 1e-15 * total.abs() {
            return Err(format!("b = {b}, N = {n}: |S - S_N| = {gap:e} > |term| = {next:e}"));
        }
    }
    Ok(())
}

pub fn solve_y_monotone() -> std::result::Result<(), String> {
    let lo = alpha_boundary() + 0.1;
    let ys: Vec<f64> = (0..10)
        .map(|i| solve_y(AlphaParam::real(lo + i as f64 * 0.8).unwrap()).unwrap())
        .collect();
    if ys.windows(2).all(|w| w[0] > w[1]) {
        Ok(())
    } else {
        Err(format!("solve_y not strictly decreasing: {ys:?}"))
    }
}

pub fn ramanujan_imaginary(alpha: f64) -> Check {
    let v = ok(ramanujan_series(ok(AlphaParam::real(alpha))?, 1e-15))?.value;
    ensure(v.re.abs() < 1e-8 * v.norm(), || format!("alpha = {alpha}: {v}"))
}

pub fn alpha_range() -> impl Strategy<Value = f64> {
    (alpha_boundary() + 0.1)..10.0
}

// ---------------------------------------------------------------------------
// roots

pub fn roots_well_placed(count: usize) -> std::result::Result<(), String> {
    let roots = find_roots_upper(count, 1e-13).map_err(|e| e.to_string())?;
    let mut prev = 0.0;
    for r in &roots {
        let target = PI * (r.index as f64 + 0.5);
        if !(r.residual < 1e-11) {
            return Err(format!("root {}: residual {:e}", r.index, r.residual));
        }
        if !(r.root.im > prev) || (r.root.im - target).abs() >= 0.2 {
            return Err(format!("root {} at {} is misplaced", r.index, r.root));
        }
        prev = r.root.im;
    }
    Ok(())
}

/// Newton from a point near the seed lands on the on-axis root.
pub fn basin((n, dx, dy): (usize, f64, f64)) -> Check {
    let target = ok(find_roots_upper(n + 1, 1e-13))?[n].root;
    let start = seed(n) + c(dx, dy);
    let (z, _) = newton(start, 1e-13).ok_or_else(|| TestCaseError::fail(format!("no convergence from {start}")))?;
    ensure((z - target).norm() < 1e-10, || format!("n = {n}: from {start} reached {z}, expected {target}"))
}

pub fn basin_args() -> impl Strategy<Value = (usize, f64, f64)> {
    (0usize..20, -0.2f64..0.2, -0.2f64..0.2)
}

/// Newton seeded at the rotated seed ωiπ(n+1/2) finds a zero of F.
pub fn rotated_newton(n: usize) -> Check {
    let start = omega() * seed(n);
    let (z, _) = newton(start, 1e-9).ok_or_else(|| TestCaseError::fail(format!("no convergence from {start}")))?;
    let scale = (c(0.0, 3f64.sqrt()) * z).exp().norm() + (2.0 * z.cosh()).norm();
    ensure(f(z).norm() < 1e-12 * scale, || format!("n = {n}: |F({z})| = {:e}", f(z).norm()))
}
