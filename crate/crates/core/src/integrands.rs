//! Integrands of the catalog, written so that no intermediate overflows at
//! the far quadrature nodes.
//!
//! Denominators of the form Σ e^{c_k} are evaluated as e^{m} Σ e^{c_k - m}
//! with m = max Re c_k. Since e^{m} is a positive real, principal powers
//! split exactly: (e^{m} S)^p = e^{pm} S^p.

use std::f64::consts::{FRAC_PI_6, LN_2, PI};

use num_complex::Complex64;

use crate::constants::{alpha_sixth, omega, SQRT_3};
use crate::error::Result;
use crate::product::{log_product, ProductParams};
use crate::special::{hyp2f1, ln_gamma_real, log_gamma};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// (Σ_k e^{exponents[k]})^{-p} for real `p`, principal branch.
pub fn exp_sum_pow(exponents: &[Complex64], p: f64) -> Complex64 {
    scaled_exp_sum_pow(c(0.0, 0.0), exponents, p)
}

/// e^{prefactor} · (Σ_k e^{exponents[k]})^{-p}, merging e^{prefactor} with
/// the scale of the sum before exponentiating.
pub fn scaled_exp_sum_pow(prefactor: Complex64, exponents: &[Complex64], p: f64) -> Complex64 {
    let m = exponents.iter().map(|e| e.re).fold(f64::NEG_INFINITY, f64::max);
    let s: Complex64 = exponents.iter().map(|e| (e - m).exp()).sum();
    (prefactor - p * m).exp() * s.powf(-p)
}

fn base_exponents(x: f64) -> [Complex64; 3] {
    [c(x, 0.0), c(-x, 0.0), c(0.0, SQRT_3 * x)]
}

/// (e^x + e^{-x} + e^{i√3x})^{-p}
pub fn base_denominator_pow(x: f64, p: f64) -> Complex64 {
    exp_sum_pow(&base_exponents(x), p)
}

/// sech(y)^ν for real y, without overflow.
pub fn sech_pow(y: f64, nu: f64) -> f64 {
    let a = y.abs();
    (nu * (LN_2 - a - (-2.0 * a).exp().ln_1p())).exp()
}

/// e^{iax} sech^ν(βx)
pub fn fourier_cosh(x: f64, a: f64, beta: f64, nu: f64) -> Complex64 {
    Complex64::from_polar(sech_pow(beta * x, nu), a * x)
}

/// 2^{ν-1}/(βΓ(ν)) · Γ(ν/2 + ia/(2β)) Γ(ν/2 - ia/(2β))
pub fn fourier_cosh_closed(a: f64, beta: f64, nu: f64) -> Result<f64> {
    let g = log_gamma(c(nu / 2.0, a / (2.0 * beta)))?;
    Ok(((nu - 1.0) * LN_2 - beta.ln() - ln_gamma_real(nu)? + 2.0 * g.re).exp())
}

/// e^{ib√3x} sech^{3b}x · ₂F₁(b, 3b; b+1; -e^{i√3x}/(2cosh x))
pub fn hypergeometric(x: f64, b: f64) -> Result<Complex64> {
    // -e^{i√3x} / (2cosh x) = -e^{i√3x} sech(x) / 2
    let z = -Complex64::from_polar(0.5 * sech_pow(x, 1.0), SQRT_3 * x);
    let f = hyp2f1(c(b, 0.0), c(3.0 * b, 0.0), c(b + 1.0, 0.0), z)?;
    Ok(Complex64::from_polar(sech_pow(x, 3.0 * b), b * SQRT_3 * x) * f)
}

/// 2^{3b-1} (b/3) Γ(b)³ / Γ(3b)
pub fn hypergeometric_closed(b: f64) -> Result<f64> {
    Ok(((3.0 * b - 1.0) * LN_2 + (b / 3.0).ln() + 3.0 * ln_gamma_real(b)? - ln_gamma_real(3.0 * b)?).exp())
}

/// sech x · e^{i√3x/2} / √(e^x + e^{-x} + e^{i√3x})
pub fn sqrt_half(x: f64) -> Complex64 {
    Complex64::from_polar(sech_pow(x, 1.0), SQRT_3 * x / 2.0) * base_denominator_pow(x, 0.5)
}

/// 1 / (e^x + e^{-x} + e^{i√3x})²
pub fn main_b1(x: f64) -> Complex64 {
    base_denominator_pow(x, 2.0)
}

/// e^{i√3x} cosh x / (e^x + e^{-x} + e^{i√3x})²
pub fn cosh_weight(x: f64) -> Complex64 {
    // cosh x = e^{|x|} (1 + e^{-2|x|}) / 2
    let a = x.abs();
    let ch = 0.5 * (1.0 + (-2.0 * a).exp());
    scaled_exp_sum_pow(c(a, SQRT_3 * x), &base_exponents(x), 2.0) * ch
}

/// e^{i√3x} sinh x / (2cosh x + e^{i√3x})²
pub fn sinh_weight(x: f64) -> Complex64 {
    let a = x.abs();
    let sh = x.signum() * 0.5 * -(-2.0 * a).exp_m1();
    scaled_exp_sum_pow(c(a, SQRT_3 * x), &base_exponents(x), 2.0) * sh
}

/// Exponent p of the three half-line forms t^p / (1 + t + t^α)².
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HalfLinePower {
    /// p = 0
    Zero,
    /// p = α
    Alpha,
    /// p = α - 1
    AlphaMinusOne,
}

impl HalfLinePower {
    pub fn exponent(self) -> Complex64 {
        match self {
            HalfLinePower::Zero => c(0.0, 0.0),
            HalfLinePower::Alpha => alpha_sixth(),
            HalfLinePower::AlphaMinusOne => alpha_sixth() - 1.0,
        }
    }

    /// 2/3, α/3 and 1/(3α).
    pub fn closed_form(self) -> Complex64 {
        match self {
            HalfLinePower::Zero => c(2.0 / 3.0, 0.0),
            HalfLinePower::Alpha => alpha_sixth() / 3.0,
            HalfLinePower::AlphaMinusOne => alpha_sixth().inv() / 3.0,
        }
    }
}

/// t^p / (1 + t + t^α)² with t^α = exp(α ln t).
pub fn half_line_power(t: f64, power: HalfLinePower) -> Complex64 {
    let lt = t.ln();
    scaled_exp_sum_pow(power.exponent() * lt, &[c(0.0, 0.0), c(lt, 0.0), alpha_sixth() * lt], 2.0)
}

/// The same integrand after t = e^{2x}: 2e^{2x} e^{2px} / (1 + e^{2x} + e^{2αx})².
pub fn half_line_power_exp(x: f64, power: HalfLinePower) -> Complex64 {
    let prefactor = LN_2 + 2.0 * x + power.exponent() * (2.0 * x);
    scaled_exp_sum_pow(prefactor, &[c(0.0, 0.0), c(2.0 * x, 0.0), alpha_sixth() * (2.0 * x)], 2.0)
}

/// P_b(x) on the positive axis.
pub fn product(x: f64, params: ProductParams) -> Result<Complex64> {
    Ok(log_product(params, c(x, 0.0))?.exp())
}

/// e^{ixb√3} / (e^x + e^{-x} + e^{i√3x})^{3b}
pub fn transform_rhs(x: f64, b: f64) -> Complex64 {
    Complex64::from_polar(1.0, x * b * SQRT_3) * base_denominator_pow(x, 3.0 * b)
}

/// 4πΓ(3b) / (Γ(b)³ √3)
pub fn transform_prefactor(b: f64) -> Result<f64> {
    Ok(4.0 * PI / SQRT_3 * (ln_gamma_real(3.0 * b)? - 3.0 * ln_gamma_real(b)?).exp())
}

/// e^{x√3} cos(π/6 - x) / (2cos x + e^{x√3})², for x ≥ 0.
pub fn rotated(x: f64) -> Complex64 {
    let e = (-SQRT_3 * x).exp();
    let d = 2.0 * x.cos() * e + 1.0;
    c(e * (FRAC_PI_6 - x).cos() / (d * d), 0.0)
}

/// e^{x√3} / (2cos x + e^{x√3})³, for x ≥ 0.
pub fn cosine_cube(x: f64) -> Complex64 {
    let e = (-SQRT_3 * x).exp();
    let d = 2.0 * x.cos() * e + 1.0;
    c(e * e / (d * d * d), 0.0)
}

/// The three integrands whose sum integrates to 1 for small |a|:
/// 1/(e^x + e^{-x} + e^{a+i√3x})², e^a/(e^{a+x} + e^{-x} + e^{i√3x})² and
/// e^a/(e^{a+x} + e^{-x} + e^{-i√3x})².
pub fn parametric_terms(x: f64, a: Complex64) -> [Complex64; 3] {
    let ea = a.exp();
    [
        exp_sum_pow(&[c(x, 0.0), c(-x, 0.0), a + c(0.0, SQRT_3 * x)], 2.0),
        ea * exp_sum_pow(&[a + x, c(-x, 0.0), c(0.0, SQRT_3 * x)], 2.0),
        ea * exp_sum_pow(&[a + x, c(-x, 0.0), c(0.0, -SQRT_3 * x)], 2.0),
    ]
}

pub fn parametric(x: f64, a: Complex64) -> Complex64 {
    parametric_terms(x, a).iter().sum()
}

/// The numerator (-ie^{-α})^{-ωx} sin πx - (-ie^{-α})^{-x/ω} sin πωx, built
/// from principal complex powers.
pub fn sine_numerator(x: f64, alpha: Complex64) -> Complex64 {
    let w = omega();
    let log_base = -alpha + c(0.0, -PI / 2.0);
    let first = (-w * x * log_base).exp() * (PI * x).sin();
    let second = (-w.conj() * x * log_base).exp() * (PI * w * x).sin();
    first - second
}

/// A real function written as Σ coef_k · e^{rate_k x}.
type ExpTerms = [(f64, f64); 2];

fn sine_rate(alpha: f64) -> f64 {
    -(SQRT_3 * PI / 4.0 + alpha / 2.0)
}

/// Real part of the numerator:
/// ½e^{-√3πx/4 - αx/2}(e^{√3πx} sin((π - 2√3α)x/4) + 2sin((2√3α + 3π)x/4) - sin((2√3α - 5π)x/4)).
fn f_terms(x: f64, alpha: f64) -> ExpTerms {
    let s = 2.0 * SQRT_3 * alpha;
    let r = sine_rate(alpha);
    [
        (0.5 * ((PI - s) * x / 4.0).sin(), r + SQRT_3 * PI),
        (0.5 * (2.0 * ((s + 3.0 * PI) * x / 4.0).sin() - ((s - 5.0 * PI) * x / 4.0).sin()), r),
    ]
}

/// Imaginary part of the numerator:
/// ½e^{-√3πx/4 - αx/2}(cos((2√3α - 5π)x/4) - e^{√3πx} cos((π - 2√3α)x/4)).
fn g_terms(x: f64, alpha: f64) -> ExpTerms {
    let s = 2.0 * SQRT_3 * alpha;
    let r = sine_rate(alpha);
    [
        (-0.5 * ((PI - s) * x / 4.0).cos(), r + SQRT_3 * PI),
        (0.5 * ((s - 5.0 * PI) * x / 4.0).cos(), r),
    ]
}

/// (1 - e^{π√3x} cos πx) e^{-2πx/√3}
fn g_short_terms(x: f64) -> ExpTerms {
    let r = -2.0 * PI / SQRT_3;
    [(-(PI * x).cos(), r + PI * SQRT_3), (1.0, r)]
}

/// sin πx (4cos πx - e^{π√3x}) e^{-2πx/√3}
fn f_short_terms(x: f64) -> ExpTerms {
    let r = -2.0 * PI / SQRT_3;
    let s = (PI * x).sin();
    [(-s, r + PI * SQRT_3), (4.0 * s * (PI * x).cos(), r)]
}

fn eval_terms(x: f64, terms: ExpTerms) -> f64 {
    terms.iter().map(|(coef, rate)| coef * (rate * x).exp()).sum()
}

/// Σ coef_k e^{rate_k x} · P_1(x) / x with every exponential merged into
/// ln P_1 first.
fn over_product(x: f64, terms: ExpTerms) -> Result<f64> {
    let lp = log_product(ProductParams::new(1.0)?, c(x, 0.0))?.re - x.ln();
    Ok(terms.iter().map(|(coef, rate)| coef * (lp + rate * x).exp()).sum())
}

pub fn f_part(x: f64, alpha: f64) -> f64 {
    eval_terms(x, f_terms(x, alpha))
}

pub fn g_part(x: f64, alpha: f64) -> f64 {
    eval_terms(x, g_terms(x, alpha))
}

/// f(x, α) P_1(x) / x
pub fn f_over_product(x: f64, alpha: f64) -> Result<f64> {
    over_product(x, f_terms(x, alpha))
}

/// g(x, α) P_1(x) / x
pub fn g_over_product(x: f64, alpha: f64) -> Result<f64> {
    over_product(x, g_terms(x, alpha))
}

/// (1 - e^{π√3x} cos πx) e^{-2πx/√3} P_1(x) / x
pub fn g_short_over_product(x: f64) -> Result<f64> {
    over_product(x, g_short_terms(x))
}

/// sin πx (4cos πx - e^{π√3x}) e^{-2πx/√3} P_1(x) / x
pub fn f_short_over_product(x: f64) -> Result<f64> {
    over_product(x, f_short_terms(x))
}

/// sin y / (cos y - √3 sin y)³
pub fn sine_ratio_cubed(y: f64) -> f64 {
    let d = y.cos() - SQRT_3 * y.sin();
    y.sin() / (d * d * d)
}

/// ln(2 sinh t) for t > 0.
pub fn log_two_sinh(t: f64) -> f64 {
    t + (-(-2.0 * t).exp_m1()).ln()
}

/// 1 / (it√3 + ln(2 sinh t))²
pub fn log_trig(t: f64) -> Complex64 {
    c(log_two_sinh(t), SQRT_3 * t).powi(-2)
}

/// t ln(2 sinh t) / (3t² + ln²(2 sinh t))²
pub fn log_trig_real(t: f64) -> f64 {
    let l = log_two_sinh(t);
    let d = 3.0 * t * t + l * l;
    t * l / (d * d)
}

/// Γ(1 - ωx) Γ(1 - x/ω) / Γ(1 + x) = |Γ(1 - ωx)|² / Γ(1 + x) for real x ≥ 0.
pub fn beta_ratio(x: f64) -> Result<f64> {
    let g = log_gamma(1.0 - omega() * x)?;
    Ok((2.0 * g.re - ln_gamma_real(1.0 + x)?).exp())
}

/// sin πx / (x ∏_{k≥1}(1 - x³/k³)) = sin πx · P_1(-x) / x at non-integer x.
pub fn sine_over_product(x: f64) -> Result<Complex64> {
    Ok(product(-x, ProductParams::new(1.0)?)? * ((PI * x).sin() / x))
}
