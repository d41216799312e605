//! Registry of closed-form identities, each checked by computing both sides
//! independently.
//!
//! Every entry declares a fixed parameter grid, a tolerance and two recipes.
//! `run_all` evaluates the full grid in registry order; `verify` evaluates a
//! single point. Computation failures become failed reports, never panics.

use std::f64::consts::PI;
use std::time::Instant;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::constants::{special_alpha, SQRT_3};
use crate::error::{Error, Result};
use crate::integrands::{self as ig, HalfLinePower};
use crate::product::ProductParams;
use crate::quadrature::{try_integrate, QuadConfig, Transform};
use crate::report::{IdentityReport, ParamValue};
use crate::roots::{find_roots_upper, winding_count, Contour};
use crate::series::{ramanujan_closed_form, ramanujan_series, residue_sum, solve_y, AlphaParam};
use crate::special::ln_gamma_real;

use crate::report::Params;

/// Value of one side of an identity and the work spent on it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Side {
    pub value: Complex64,
    pub evaluations: usize,
}

impl Side {
    fn exact(value: Complex64) -> Self {
        Self { value, evaluations: 0 }
    }

    fn real(value: f64) -> Self {
        Self::exact(Complex64::new(value, 0.0))
    }

    fn scale(self, factor: Complex64) -> Self {
        Self {
            value: self.value * factor,
            evaluations: self.evaluations,
        }
    }
}

type Recipe = fn(&Params, &QuadConfig) -> Result<Side>;

/// One registered identity.
#[derive(Clone)]
pub struct IdentityCase {
    pub id: &'static str,
    /// Filter group; several entries can share one.
    pub group: &'static str,
    pub description: &'static str,
    /// Pass threshold on |lhs - rhs|, relative to |rhs| when `relative`.
    pub tol: f64,
    pub relative: bool,
    pub grid: fn() -> Vec<Params>,
    pub lhs: Recipe,
    pub rhs: Recipe,
}

impl std::fmt::Debug for IdentityCase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("IdentityCase")
            .field("id", &self.id)
            .field("group", &self.group)
            .field("tol", &self.tol)
            .field("relative", &self.relative)
            .finish()
    }
}

impl IdentityCase {
    pub fn matches(&self, filter: &str) -> bool {
        filter.is_empty() || self.id == filter || self.group == filter
    }
}

/// Quadrature settings used by `run_all` unless overridden.
pub fn default_quad_config() -> QuadConfig {
    QuadConfig::default().with_tol(1e-12, 1e-12)
}

/// Tolerance handed to the series summations.
const SERIES_TOL: f64 = 1e-15;

// ---------------------------------------------------------------------------
// parameter helpers

fn params<const N: usize>(entries: [(&str, ParamValue); N]) -> Params {
    entries.into_iter().map(|(k, v)| (k.to_owned(), v)).collect()
}

fn get<'a>(p: &'a Params, name: &str) -> Result<&'a ParamValue> {
    p.get(name)
        .ok_or_else(|| Error::Domain(format!("missing parameter `{name}`")))
}

fn real(p: &Params, name: &str) -> Result<f64> {
    get(p, name)?
        .as_real()
        .filter(|x| x.is_finite())
        .ok_or_else(|| Error::Domain(format!("parameter `{name}` must be a finite real number")))
}

fn complex(p: &Params, name: &str) -> Result<Complex64> {
    get(p, name)?
        .as_complex()
        .filter(|z| z.re.is_finite() && z.im.is_finite())
        .ok_or_else(|| Error::Domain(format!("parameter `{name}` must be a finite number")))
}

fn text<'a>(p: &'a Params, name: &str) -> Result<&'a str> {
    get(p, name)?
        .as_text()
        .ok_or_else(|| Error::Domain(format!("parameter `{name}` must be text")))
}

fn positive(p: &Params, name: &str) -> Result<f64> {
    let v = real(p, name)?;
    if v > 0.0 {
        Ok(v)
    } else {
        Err(Error::Domain(format!("parameter `{name}` must be positive, got {v}")))
    }
}

// ---------------------------------------------------------------------------
// quadrature wrappers

fn full_line<F>(cfg: &QuadConfig, f: F) -> Result<Side>
where
    F: Fn(f64) -> Result<Complex64>,
{
    let r = try_integrate(f, &cfg.with_transform(Transform::FullLineExpDecay))?;
    Ok(Side {
        value: r.value,
        evaluations: r.evaluations,
    })
}

fn half_line<F>(cfg: &QuadConfig, transform: Transform, f: F) -> Result<Side>
where
    F: Fn(f64) -> Result<Complex64>,
{
    let r = try_integrate(f, &cfg.with_transform(transform))?;
    Ok(Side {
        value: r.value,
        evaluations: r.evaluations,
    })
}

fn half_exp<F>(cfg: &QuadConfig, f: F) -> Result<Side>
where
    F: Fn(f64) -> Result<Complex64>,
{
    half_line(cfg, Transform::HalfLineExpDecay, f)
}

fn half_alg<F>(cfg: &QuadConfig, f: F) -> Result<Side>
where
    F: Fn(f64) -> Result<Complex64>,
{
    half_line(cfg, Transform::HalfLineAlgebraicDecay, f)
}

fn ok_c(v: Complex64) -> Result<Complex64> {
    Ok(v)
}

fn ok_r(v: f64) -> Result<Complex64> {
    Ok(Complex64::new(v, 0.0))
}

// ---------------------------------------------------------------------------
// grids

fn no_params() -> Vec<Params> {
    vec![Params::new()]
}

fn fourier_grid() -> Vec<Params> {
    [(1.0, 1.0, 2.0), (SQRT_3, 1.0, 3.0), (0.5, 2.0, 1.5)]
        .into_iter()
        .map(|(a, beta, nu)| params([("a", a.into()), ("beta", beta.into()), ("nu", nu.into())]))
        .collect()
}

fn b_grid(values: &[f64]) -> Vec<Params> {
    values.iter().map(|&b| params([("b", b.into())])).collect()
}

fn residue_grid() -> Vec<Params> {
    b_grid(&[0.3, 0.5, 0.75, 1.0, 1.5, 2.0])
}

fn hypergeom_grid() -> Vec<Params> {
    b_grid(&[0.4, 0.5, 0.75, 1.0])
}

fn transform_grid() -> Vec<Params> {
    b_grid(&[0.5, 0.75, 1.0, 1.25])
}

fn route_grid() -> Vec<Params> {
    ["half_line", "exponential"]
        .into_iter()
        .map(|r| params([("route", r.into())]))
        .collect()
}

fn product_integral_grid() -> Vec<Params> {
    ["product", "exponential"]
        .into_iter()
        .map(|r| params([("form", r.into())]))
        .collect()
}

fn parametric_grid() -> Vec<Params> {
    [
        Complex64::new(0.0, 0.0),
        Complex64::new(0.1, 0.0),
        Complex64::new(-0.15, 0.0),
        Complex64::new(0.1, 0.1),
        Complex64::new(0.0, 0.2),
    ]
    .into_iter()
    .map(|a| params([("a", a.into())]))
    .collect()
}

fn alpha_values() -> [f64; 3] {
    [2.0, special_alpha(), 3.0]
}

fn alpha_grid() -> Vec<Params> {
    alpha_values().into_iter().map(|a| params([("alpha", a.into())])).collect()
}

fn g_zero_grid() -> Vec<Params> {
    let mut grid: Vec<Params> = alpha_values()
        .into_iter()
        .map(|a| params([("alpha", a.into()), ("form", "general".into())]))
        .collect();
    // The short form exists only at α = 5π/(2√3).
    grid.push(params([("form", "short".into())]));
    grid
}

fn f_value_grid() -> Vec<Params> {
    let mut grid = Vec::new();
    for a in alpha_values() {
        for check in ["closed_form", "series"] {
            grid.push(params([("alpha", a.into()), ("check", check.into())]));
        }
    }
    grid.push(params([("check", "short_form".into())]));
    grid
}

fn logtrig_grid() -> Vec<Params> {
    ["imaginary_part", "real_form"]
        .into_iter()
        .map(|f| params([("form", f.into())]))
        .collect()
}

fn root_count_grid() -> Vec<Params> {
    [1.0, 2.0, 3.0, 5.0].into_iter().map(|n| params([("n", n.into())])).collect()
}

// ---------------------------------------------------------------------------
// recipes

fn zero(_: &Params, _: &QuadConfig) -> Result<Side> {
    Ok(Side::real(0.0))
}

fn one(_: &Params, _: &QuadConfig) -> Result<Side> {
    Ok(Side::real(1.0))
}

fn fourier_lhs(p: &Params, cfg: &QuadConfig) -> Result<Side> {
    let (a, beta, nu) = (real(p, "a")?, positive(p, "beta")?, positive(p, "nu")?);
    full_line(cfg, |x| ok_c(ig::fourier_cosh(x, a, beta, nu)))
}

fn fourier_rhs(p: &Params, _: &QuadConfig) -> Result<Side> {
    let (a, beta, nu) = (real(p, "a")?, positive(p, "beta")?, positive(p, "nu")?);
    Ok(Side::real(ig::fourier_cosh_closed(a, beta, nu)?))
}

fn residue_lhs(p: &Params, _: &QuadConfig) -> Result<Side> {
    let b = positive(p, "b")?;
    let s = residue_sum(b, SERIES_TOL)?;
    let norm = 3.0 / (3.0 * ln_gamma_real(b)?).exp();
    Ok(Side {
        value: s.value * norm,
        evaluations: s.terms_used,
    })
}

fn hypergeom_lhs(p: &Params, cfg: &QuadConfig) -> Result<Side> {
    let b = positive(p, "b")?;
    full_line(cfg, |x| ig::hypergeometric(x, b))
}

fn hypergeom_rhs(p: &Params, _: &QuadConfig) -> Result<Side> {
    Ok(Side::real(ig::hypergeometric_closed(positive(p, "b")?)?))
}

fn sqrt_lhs(_: &Params, cfg: &QuadConfig) -> Result<Side> {
    full_line(cfg, |x| ok_c(ig::sqrt_half(x)))
}

fn third_pi(_: &Params, _: &QuadConfig) -> Result<Side> {
    Ok(Side::real(PI / 3.0))
}

fn main_lhs(_: &Params, cfg: &QuadConfig) -> Result<Side> {
    full_line(cfg, |x| ok_c(ig::main_b1(x)))
}

fn third(_: &Params, _: &QuadConfig) -> Result<Side> {
    Ok(Side::real(1.0 / 3.0))
}

fn cosh_lhs(_: &Params, cfg: &QuadConfig) -> Result<Side> {
    full_line(cfg, |x| ok_c(ig::cosh_weight(x)))
}

fn twelfth(_: &Params, _: &QuadConfig) -> Result<Side> {
    Ok(Side::real(1.0 / 12.0))
}

fn sinh_lhs(_: &Params, cfg: &QuadConfig) -> Result<Side> {
    full_line(cfg, |x| ok_c(ig::sinh_weight(x)))
}

fn sinh_rhs(_: &Params, _: &QuadConfig) -> Result<Side> {
    Ok(Side::exact(Complex64::new(0.0, SQRT_3 / 12.0)))
}

fn half_line_power_lhs(p: &Params, cfg: &QuadConfig, power: HalfLinePower) -> Result<Side> {
    match text(p, "route")? {
        "half_line" => half_alg(cfg, |t| ok_c(ig::half_line_power(t, power))),
        "exponential" => full_line(cfg, |x| ok_c(ig::half_line_power_exp(x, power))),
        other => Err(Error::Domain(format!("unknown route `{other}`"))),
    }
}

fn t_sub_lhs(p: &Params, cfg: &QuadConfig) -> Result<Side> {
    half_line_power_lhs(p, cfg, HalfLinePower::Zero)
}

fn t_sub_rhs(_: &Params, _: &QuadConfig) -> Result<Side> {
    Ok(Side::exact(HalfLinePower::Zero.closed_form()))
}

fn t_alpha_lhs(p: &Params, cfg: &QuadConfig) -> Result<Side> {
    half_line_power_lhs(p, cfg, HalfLinePower::Alpha)
}

fn t_alpha_rhs(_: &Params, _: &QuadConfig) -> Result<Side> {
    Ok(Side::exact(HalfLinePower::Alpha.closed_form()))
}

fn t_alpha_m1_lhs(p: &Params, cfg: &QuadConfig) -> Result<Side> {
    half_line_power_lhs(p, cfg, HalfLinePower::AlphaMinusOne)
}

fn t_alpha_m1_rhs(_: &Params, _: &QuadConfig) -> Result<Side> {
    Ok(Side::exact(HalfLinePower::AlphaMinusOne.closed_form()))
}

fn product_integral(b: f64, cfg: &QuadConfig) -> Result<Side> {
    let params = ProductParams::new(b)?;
    half_exp(cfg, |x| ig::product(x, params))
}

fn transform_exponential(b: f64, cfg: &QuadConfig) -> Result<Side> {
    let pre = ig::transform_prefactor(b)?;
    Ok(full_line(cfg, |x| ok_c(ig::transform_rhs(x, b)))?.scale(pre.into()))
}

fn transform_lhs(p: &Params, cfg: &QuadConfig) -> Result<Side> {
    product_integral(positive(p, "b")?, cfg)
}

fn transform_rhs(p: &Params, cfg: &QuadConfig) -> Result<Side> {
    transform_exponential(positive(p, "b")?, cfg)
}

fn rotated_lhs(_: &Params, cfg: &QuadConfig) -> Result<Side> {
    half_exp(cfg, |x| ok_c(ig::rotated(x)))
}

fn sixth(_: &Params, _: &QuadConfig) -> Result<Side> {
    Ok(Side::real(1.0 / 6.0))
}

fn product_integral_lhs(p: &Params, cfg: &QuadConfig) -> Result<Side> {
    match text(p, "form")? {
        "product" => product_integral(1.0, cfg),
        "exponential" => transform_exponential(1.0, cfg),
        other => Err(Error::Domain(format!("unknown form `{other}`"))),
    }
}

fn cosine_cube_rhs(_: &Params, cfg: &QuadConfig) -> Result<Side> {
    Ok(half_exp(cfg, |x| ok_c(ig::cosine_cube(x)))?.scale((8.0 * PI).into()))
}

fn parametric_lhs(p: &Params, cfg: &QuadConfig) -> Result<Side> {
    let a = complex(p, "a")?;
    if a.norm() > 0.5 {
        return Err(Error::Domain(format!("parametric identity checked for |a| <= 0.5, got {a}")));
    }
    full_line(cfg, |x| ok_c(ig::parametric(x, a)))
}

fn alpha_param(p: &Params) -> Result<AlphaParam> {
    AlphaParam::real(real(p, "alpha")?)
}

fn ramanujan_lhs(p: &Params, _: &QuadConfig) -> Result<Side> {
    let s = ramanujan_series(alpha_param(p)?, SERIES_TOL)?;
    Ok(Side {
        value: s.value,
        evaluations: s.terms_used,
    })
}

fn ramanujan_rhs(p: &Params, _: &QuadConfig) -> Result<Side> {
    Ok(Side::exact(ramanujan_closed_form(solve_y(alpha_param(p)?)?)))
}

/// Reference value of y at α = 5π/(2√3), to ten digits.
pub const SPECIAL_Y: f64 = 0.005_416_753_6;

fn alpha_root_lhs(_: &Params, _: &QuadConfig) -> Result<Side> {
    Ok(Side::real(solve_y(AlphaParam::real(special_alpha())?)?))
}

fn alpha_root_rhs(_: &Params, _: &QuadConfig) -> Result<Side> {
    Ok(Side::real(SPECIAL_Y))
}

fn g_zero_lhs(p: &Params, cfg: &QuadConfig) -> Result<Side> {
    match text(p, "form")? {
        "general" => {
            let alpha = alpha_param(p)?.value().re;
            half_exp(cfg, |x| ig::g_over_product(x, alpha).map(Complex64::from))
        }
        "short" => half_exp(cfg, |x| ig::g_short_over_product(x).map(Complex64::from)),
        other => Err(Error::Domain(format!("unknown form `{other}`"))),
    }
}

/// Candidate coefficients c in ∫ f P_1 / x dx = c π² sin y / (cos y - √3 sin y)³.
/// The report records whichever one the quadrature lands on.
pub const F_COEFFICIENT_CANDIDATES: [f64; 4] = [4.0, -8.0, -4.0, 8.0];

fn f_integral(alpha: f64, cfg: &QuadConfig) -> Result<Side> {
    half_exp(cfg, |x| ig::f_over_product(x, alpha).map(Complex64::from))
}

fn f_value_lhs(p: &Params, cfg: &QuadConfig) -> Result<Side> {
    match text(p, "check")? {
        "closed_form" | "series" => f_integral(alpha_param(p)?.value().re, cfg),
        "short_form" => half_exp(cfg, |x| ig::f_short_over_product(x).map(Complex64::from)),
        other => Err(Error::Domain(format!("unknown check `{other}`"))),
    }
}

fn f_value_rhs(p: &Params, _: &QuadConfig) -> Result<Side> {
    match text(p, "check")? {
        "closed_form" => {
            let coef = real(p, "resolved_coefficient")?;
            let y = solve_y(alpha_param(p)?)?;
            Ok(Side::real(coef * PI * PI * ig::sine_ratio_cubed(y)))
        }
        // ∫ (f + ig) P_1/x dx = 2πi · series
        "series" => {
            let s = ramanujan_series(alpha_param(p)?, SERIES_TOL)?;
            Ok(Side {
                value: Complex64::new(0.0, 2.0 * PI) * s.value,
                evaluations: s.terms_used,
            })
        }
        // 8π² sin y / (√3 sin y - cos y)³
        "short_form" => {
            let y = solve_y(AlphaParam::real(special_alpha())?)?;
            Ok(Side::real(-8.0 * PI * PI * ig::sine_ratio_cubed(y)))
        }
        other => Err(Error::Domain(format!("unknown check `{other}`"))),
    }
}

/// Picks the candidate coefficient closest to the computed f-integral and
/// records it in the parameters of the closed-form check.
fn resolve_f_coefficient(p: &mut Params, lhs: Complex64) -> Result<()> {
    if p.get("check").and_then(ParamValue::as_text) != Some("closed_form") {
        return Ok(());
    }
    let y = solve_y(alpha_param(p)?)?;
    let ratio = lhs.re / (PI * PI * ig::sine_ratio_cubed(y));
    let best = F_COEFFICIENT_CANDIDATES
        .into_iter()
        .min_by(|a, b| (a - ratio).abs().total_cmp(&(b - ratio).abs()))
        .unwrap_or(f64::NAN);
    p.insert("resolved_coefficient".into(), best.into());
    Ok(())
}

fn logtrig_lhs(p: &Params, cfg: &QuadConfig) -> Result<Side> {
    match text(p, "form")? {
        "imaginary_part" => {
            let s = half_alg(cfg, |t| ok_c(ig::log_trig(t)))?;
            Ok(Side {
                value: Complex64::new(s.value.im, 0.0),
                evaluations: s.evaluations,
            })
        }
        "real_form" => half_alg(cfg, |t| ok_r(ig::log_trig_real(t))),
        other => Err(Error::Domain(format!("unknown form `{other}`"))),
    }
}

fn beta_link_lhs(_: &Params, cfg: &QuadConfig) -> Result<Side> {
    Ok(half_exp(cfg, |x| ig::beta_ratio(x).map(Complex64::from))?.scale(PI.into()))
}

fn beta_link_rhs(_: &Params, cfg: &QuadConfig) -> Result<Side> {
    Ok(half_alg(cfg, |t| ok_c(ig::log_trig(t)))?.scale((-2.0 * PI).into()))
}

/// Samples used for the winding count on the radius-πN half disc.
const WINDING_SAMPLES: usize = 8000;

fn root_count_lhs(p: &Params, _: &QuadConfig) -> Result<Side> {
    let n = positive(p, "n")?;
    if n.fract() != 0.0 {
        return Err(Error::Domain(format!("root count needs an integer n, got {n}")));
    }
    let contour = Contour::upper_semicircle(PI * n, 4096)?;
    let count = winding_count(crate::roots::f, &contour, WINDING_SAMPLES)?;
    Ok(Side {
        value: Complex64::new(count as f64, 0.0),
        evaluations: WINDING_SAMPLES,
    })
}

fn root_count_rhs(p: &Params, _: &QuadConfig) -> Result<Side> {
    // Newton roots seeded at iπ(k + 1/2) that land inside the contour.
    let n = positive(p, "n")?;
    let radius = PI * n;
    let roots = find_roots_upper(n as usize + 2, 1e-13)?;
    let inside = roots
        .iter()
        .filter(|r| r.root.norm() < radius && r.root.im > 0.0)
        .count();
    Ok(Side::real(inside as f64))
}

// ---------------------------------------------------------------------------
// registry

/// Every registered identity, in execution order.
pub fn registry() -> Vec<IdentityCase> {
    vec![
        IdentityCase {
            id: "fourier_cosh",
            group: "fourier",
            description: "∫ e^{iax} sech^ν(βx) dx = 2^{ν-1}/(βΓ(ν)) |Γ(ν/2 + ia/(2β))|²",
            tol: 1e-9,
            relative: true,
            grid: fourier_grid,
            lhs: fourier_lhs,
            rhs: fourier_rhs,
        },
        IdentityCase {
            id: "residue_sum_b",
            group: "residue",
            description: "3/Γ(b)³ · Σ (-1)^n/n! |Γ(b - ω(n+b))|²/(n+b) = 1",
            tol: 1e-9,
            relative: false,
            grid: residue_grid,
            lhs: residue_lhs,
            rhs: one,
        },
        IdentityCase {
            id: "hypergeom_b",
            group: "hypergeom",
            description: "∫ e^{ib√3x} sech^{3b}x ₂F₁(b,3b;b+1;-e^{i√3x}/(2cosh x)) dx = 2^{3b-1}(b/3)Γ(b)³/Γ(3b)",
            tol: 1e-7,
            relative: false,
            grid: hypergeom_grid,
            lhs: hypergeom_lhs,
            rhs: hypergeom_rhs,
        },
        IdentityCase {
            id: "sqrt_b_half",
            group: "closed_forms",
            description: "∫ sech x e^{i√3x/2} / √(e^x + e^{-x} + e^{i√3x}) dx = π/3",
            tol: 1e-8,
            relative: false,
            grid: no_params,
            lhs: sqrt_lhs,
            rhs: third_pi,
        },
        IdentityCase {
            id: "main_b1",
            group: "closed_forms",
            description: "∫ dx / (e^x + e^{-x} + e^{i√3x})² = 1/3",
            tol: 1e-8,
            relative: false,
            grid: no_params,
            lhs: main_lhs,
            rhs: third,
        },
        IdentityCase {
            id: "cosh_weight",
            group: "closed_forms",
            description: "∫ e^{i√3x} cosh x / (e^x + e^{-x} + e^{i√3x})² dx = 1/12",
            tol: 1e-8,
            relative: false,
            grid: no_params,
            lhs: cosh_lhs,
            rhs: twelfth,
        },
        IdentityCase {
            id: "sinh_weight",
            group: "closed_forms",
            description: "∫ e^{i√3x} sinh x / (2cosh x + e^{i√3x})² dx = i√3/12",
            tol: 1e-8,
            relative: false,
            grid: no_params,
            lhs: sinh_lhs,
            rhs: sinh_rhs,
        },
        IdentityCase {
            id: "t_sub",
            group: "half_line",
            description: "∫_0^∞ dt / (1 + t + t^α)² = 2/3, α = e^{iπ/3}",
            tol: 1e-7,
            relative: false,
            grid: route_grid,
            lhs: t_sub_lhs,
            rhs: t_sub_rhs,
        },
        IdentityCase {
            id: "t_alpha",
            group: "half_line",
            description: "∫_0^∞ t^α dt / (1 + t + t^α)² = α/3",
            tol: 1e-7,
            relative: false,
            grid: route_grid,
            lhs: t_alpha_lhs,
            rhs: t_alpha_rhs,
        },
        IdentityCase {
            id: "t_alpha_m1",
            group: "half_line",
            description: "∫_0^∞ t^{α-1} dt / (1 + t + t^α)² = 1/(3α)",
            tol: 1e-7,
            relative: false,
            grid: route_grid,
            lhs: t_alpha_m1_lhs,
            rhs: t_alpha_m1_rhs,
        },
        IdentityCase {
            id: "transform_b",
            group: "transform",
            description: "∫_0^∞ P_b(x) dx = 4πΓ(3b)/(Γ(b)³√3) ∫ e^{ixb√3} / (e^x + e^{-x} + e^{i√3x})^{3b} dx",
            tol: 1e-7,
            relative: false,
            grid: transform_grid,
            lhs: transform_lhs,
            rhs: transform_rhs,
        },
        IdentityCase {
            id: "rotated",
            group: "rotated",
            description: "∫_0^∞ e^{x√3} cos(π/6 - x) / (2cos x + e^{x√3})² dx = 1/6",
            tol: 1e-8,
            relative: false,
            grid: no_params,
            lhs: rotated_lhs,
            rhs: sixth,
        },
        IdentityCase {
            id: "product_integral",
            group: "transform",
            description: "∫_0^∞ P_1(x) dx (and its exponential form) = 8π ∫_0^∞ e^{x√3} / (2cos x + e^{x√3})³ dx",
            tol: 1e-7,
            relative: false,
            grid: product_integral_grid,
            lhs: product_integral_lhs,
            rhs: cosine_cube_rhs,
        },
        IdentityCase {
            id: "parametric",
            group: "parametric",
            description: "Σ of the three a-shifted integrals of 1/(e^x + e^{-x} + e^{i√3x})² type = 1",
            tol: 1e-7,
            relative: false,
            grid: parametric_grid,
            lhs: parametric_lhs,
            rhs: one,
        },
        IdentityCase {
            id: "ramanujan_r2",
            group: "ramanujan",
            description: "Σ_{k≥1} (-1)^k/k! |Γ(1-ωk)|² sin(πk e^{iπ/3}) (-ie^{-α})^k = 2πi sin y/(cos y - √3 sin y)³",
            tol: 1e-8,
            relative: true,
            grid: alpha_grid,
            lhs: ramanujan_lhs,
            rhs: ramanujan_rhs,
        },
        IdentityCase {
            id: "alpha_root",
            group: "ramanujan",
            description: "root y of 2e^{-√3y} sin y = e^{-α} at α = 5π/(2√3)",
            tol: 1e-9,
            relative: false,
            grid: no_params,
            lhs: alpha_root_lhs,
            rhs: alpha_root_rhs,
        },
        IdentityCase {
            id: "g_zero",
            group: "ramanujan",
            description: "∫_0^∞ g(x, α) P_1(x) / x dx = 0",
            tol: 1e-7,
            relative: false,
            grid: g_zero_grid,
            lhs: g_zero_lhs,
            rhs: zero,
        },
        IdentityCase {
            id: "f_value",
            group: "ramanujan",
            description: "∫_0^∞ f(x, α) P_1(x) / x dx against c π² sin y/(cos y - √3 sin y)³ (c resolved) and 2πi × series",
            tol: 1e-7,
            relative: false,
            grid: f_value_grid,
            lhs: f_value_lhs,
            rhs: f_value_rhs,
        },
        IdentityCase {
            id: "logtrig",
            group: "logtrig",
            description: "Im ∫_0^∞ dt / (it√3 + ln(2sinh t))² = 0 and its real form",
            tol: 1e-8,
            relative: false,
            grid: logtrig_grid,
            lhs: logtrig_lhs,
            rhs: zero,
        },
        IdentityCase {
            id: "beta_link",
            group: "logtrig",
            description: "π ∫_0^∞ Γ(1-ωx)Γ(1-x/ω)/Γ(1+x) dx = -2π ∫_0^∞ dt / (it√3 + ln(2sinh t))²",
            tol: 1e-7,
            relative: false,
            grid: no_params,
            lhs: beta_link_lhs,
            rhs: beta_link_rhs,
        },
        IdentityCase {
            id: "root_count",
            group: "roots",
            description: "winding number of e^{i√3z} + 2cosh z on the radius-πN half disc = Newton roots inside",
            tol: 1e-12,
            relative: false,
            grid: root_count_grid,
            lhs: root_count_lhs,
            rhs: root_count_rhs,
        },
    ]
}

/// Ids of all registered identities, in registry order.
pub const CATALOG_IDS: [&str; 21] = [
    "fourier_cosh",
    "residue_sum_b",
    "hypergeom_b",
    "sqrt_b_half",
    "main_b1",
    "cosh_weight",
    "sinh_weight",
    "t_sub",
    "t_alpha",
    "t_alpha_m1",
    "transform_b",
    "rotated",
    "product_integral",
    "parametric",
    "ramanujan_r2",
    "alpha_root",
    "g_zero",
    "f_value",
    "logtrig",
    "beta_link",
    "root_count",
];

pub fn lookup(id: &str) -> Result<IdentityCase> {
    registry()
        .into_iter()
        .find(|c| c.id == id)
        .ok_or_else(|| Error::UnknownIdentity(id.to_owned()))
}

/// Best available value of a side: the result, or the last estimate of a
/// quadrature that ran out of levels.
fn salvage(side: &Result<Side>) -> Option<Complex64> {
    match side {
        Ok(s) => Some(s.value),
        Err(Error::NoConvergence { best_re, best_im, .. }) => Some(Complex64::new(*best_re, *best_im)),
        Err(_) => None,
    }
}

fn evaluate(case: &IdentityCase, params: &Params, cfg: &QuadConfig, tol: f64) -> IdentityReport {
    let start = Instant::now();
    let mut params = params.clone();
    let lhs = (case.lhs)(&params, cfg);
    let resolved = match (case.id, salvage(&lhs)) {
        ("f_value", Some(v)) => resolve_f_coefficient(&mut params, v),
        _ => Ok(()),
    };
    let rhs = resolved.and_then(|_| (case.rhs)(&params, cfg));
    let wall_time_ms = start.elapsed().as_secs_f64() * 1e3;

    let (l, r) = (salvage(&lhs), salvage(&rhs));
    let abs_err = match (l, r) {
        (Some(l), Some(r)) => (l - r).norm(),
        _ => f64::INFINITY,
    };
    let tol = match (case.relative, r) {
        (true, Some(r)) => tol * r.norm(),
        _ => tol,
    };
    let evaluations = [&lhs, &rhs]
        .iter()
        .map(|s| s.as_ref().map_or(0, |s| s.evaluations))
        .sum();
    let error = [("lhs", &lhs), ("rhs", &rhs)]
        .iter()
        .filter_map(|(name, s)| s.as_ref().err().map(|e| format!("{name}: {e}")))
        .collect::<Vec<_>>();
    let zero = Complex64::new(0.0, 0.0);
    IdentityReport {
        id: case.id.to_owned(),
        params,
        lhs: l.unwrap_or(zero).into(),
        rhs: r.unwrap_or(zero).into(),
        // JSON has no infinity
        abs_err: if abs_err.is_finite() { abs_err } else { f64::MAX },
        tol,
        pass: error.is_empty() && abs_err <= tol,
        evaluations,
        wall_time_ms,
        error: (!error.is_empty()).then(|| error.join("; ")),
    }
}

fn validate_params(params: &Params) -> Result<()> {
    for (k, v) in params {
        let finite = match v {
            ParamValue::Real(x) => x.is_finite(),
            ParamValue::Complex { re, im } => re.is_finite() && im.is_finite(),
            ParamValue::Text(_) => true,
        };
        if !finite {
            return Err(Error::Domain(format!("parameter `{k}` must be finite")));
        }
    }
    Ok(())
}

/// Verifies one identity at one parameter point with the entry's own
/// tolerance.
pub fn verify(id: &str, params: &Params, cfg: &QuadConfig) -> Result<IdentityReport> {
    let case = lookup(id)?;
    verify_case(&case, params, cfg, case.tol)
}

/// As [`verify`], with the pass threshold replaced by `tol`.
pub fn verify_with_tol(id: &str, params: &Params, cfg: &QuadConfig, tol: f64) -> Result<IdentityReport> {
    let case = lookup(id)?;
    verify_case(&case, params, cfg, tol)
}

fn verify_case(case: &IdentityCase, params: &Params, cfg: &QuadConfig, tol: f64) -> Result<IdentityReport> {
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("tolerance must be positive, got {tol}")));
    }
    validate_params(params)?;
    cfg.validate()?;
    Ok(evaluate(case, params, cfg, tol))
}

/// Default grid of an identity.
pub fn grid(id: &str) -> Result<Vec<Params>> {
    Ok((lookup(id)?.grid)())
}

/// Default grid of `id` with the values in `overrides` substituted. Grid
/// points lacking one of the overridden names are dropped, and duplicates
/// collapse.
pub fn grid_with(id: &str, overrides: &Params) -> Result<Vec<Params>> {
    let mut out: Vec<Params> = Vec::new();
    for mut p in grid(id)? {
        if !overrides.keys().all(|k| p.contains_key(k)) {
            continue;
        }
        p.extend(overrides.iter().map(|(k, v)| (k.clone(), v.clone())));
        if !out.contains(&p) {
            out.push(p);
        }
    }
    if out.is_empty() {
        let names: Vec<&str> = overrides.keys().map(String::as_str).collect();
        return Err(Error::Domain(format!("`{id}` does not take parameter(s) {}", names.join(", "))));
    }
    Ok(out)
}

/// Runs every entry matching `filter` (empty = all) over its default grid.
/// Entries run concurrently; reports come back in registry order.
pub fn run_all(cfg: &QuadConfig, filter: &str) -> Vec<IdentityReport> {
    run_selected(cfg, filter, None)
}

/// As [`run_all`], overriding every entry's pass threshold with `tol`.
pub fn run_selected(cfg: &QuadConfig, filter: &str, tol: Option<f64>) -> Vec<IdentityReport> {
    let jobs: Vec<(IdentityCase, Params)> = registry()
        .into_iter()
        .filter(|c| c.matches(filter))
        .flat_map(|c| (c.grid)().into_iter().map(move |p| (c.clone(), p)))
        .collect();
    jobs.par_iter()
        .map(|(case, p)| evaluate(case, p, cfg, tol.unwrap_or(case.tol)))
        .collect()
}
