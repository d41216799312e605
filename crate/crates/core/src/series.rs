//! The residue series
//!
//! ```text
//! Σ_{n≥0} (-1)^n / n! · |Γ(b - ω(n+b))|² / (n+b)        (= Γ(b)³/3)
//! ```
//!
//! and the Ramanujan-type series in the variable α,
//!
//! ```text
//! Σ_{k≥1} (-1)^k / k! · |Γ(1 - ωk)|² · sin(πk e^{iπ/3}) · (-i e^{-α})^k
//! ```
//!
//! together with the scalar solve for y in 2e^{-√3y} sin y = e^{-α}.
//!
//! Both series have Gamma factors that overflow long before the terms
//! become negligible, so every term is built as a log-magnitude plus a phase
//! and exponentiated once.

use std::f64::consts::{FRAC_PI_6, LN_2, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::constants::{alpha_boundary, omega, SQRT_3};
use crate::error::{Error, Result};
use crate::special::{ln_gamma_real, log_gamma};

pub const DEFAULT_MAX_TERMS: usize = 400;

/// Extra distance from the convergence boundary required by
/// [`ramanujan_series`].
pub const ALPHA_MARGIN: f64 = 0.05;

/// Consecutive negligible terms required to stop.
const QUIET_TERMS: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesResult {
    pub value: Complex64,
    pub terms_used: usize,
    /// Magnitude of the last term summed.
    pub tail_estimate: f64,
}

/// The convergence variable α, with Re α > π/(2√3).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AlphaParam {
    alpha: Complex64,
}

impl AlphaParam {
    pub fn new(alpha: Complex64) -> Result<Self> {
        if !(alpha.re.is_finite() && alpha.im.is_finite()) || alpha.re <= alpha_boundary() {
            return Err(Error::Domain(format!(
                "alpha needs Re α > π/(2√3) ≈ {:.6}, got {alpha}",
                alpha_boundary()
            )));
        }
        Ok(Self { alpha })
    }

    pub fn real(alpha: f64) -> Result<Self> {
        Self::new(Complex64::new(alpha, 0.0))
    }

    pub fn value(&self) -> Complex64 {
        self.alpha
    }
}

/// Sums `term(n)` for n = start.. until `QUIET_TERMS` consecutive terms fall
/// below `tol · |partial sum|`.
fn sum_until_quiet<F>(
    routine: &'static str,
    start: usize,
    tol: f64,
    max_terms: usize,
    mut term: F,
) -> Result<SeriesResult>
where
    F: FnMut(usize) -> Result<Complex64>,
{
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("{routine}: tolerance must be positive")));
    }
    let mut sum = Complex64::new(0.0, 0.0);
    let mut quiet = 0;
    let mut last = f64::INFINITY;
    for used in 1..=max_terms {
        let t = term(start + used - 1)?;
        sum += t;
        last = t.norm();
        if last < tol * sum.norm() {
            quiet += 1;
            if quiet >= QUIET_TERMS {
                return Ok(SeriesResult {
                    value: sum,
                    terms_used: used,
                    tail_estimate: last,
                });
            }
        } else {
            quiet = 0;
        }
    }
    Err(Error::NoConvergence {
        routine,
        iterations: max_terms,
        best_re: sum.re,
        best_im: sum.im,
        err_estimate: last,
    })
}

/// The n-th term (-1)^n/n! · |Γ(b - ω(n+b))|² / (n+b) of the residue series.
pub fn residue_term(b: f64, n: usize) -> Result<f64> {
    let nb = n as f64 + b;
    let arg = Complex64::new(b, 0.0) - omega() * nb;
    let log_mag = 2.0 * log_gamma(arg)?.re - ln_gamma_real(n as f64 + 1.0)? - nb.ln();
    let sign = if n & 1 == 0 { 1.0 } else { -1.0 };
    Ok(sign * log_mag.exp())
}

/// Residue series with the default term budget.
pub fn residue_sum(b: f64, tol: f64) -> Result<SeriesResult> {
    residue_sum_with(b, tol, DEFAULT_MAX_TERMS)
}

pub fn residue_sum_with(b: f64, tol: f64, max_terms: usize) -> Result<SeriesResult> {
    if !(b > 0.0 && b.is_finite()) {
        return Err(Error::Domain(format!("residue_sum needs b > 0, got {b}")));
    }
    sum_until_quiet("residue_sum", 0, tol, max_terms, |n| {
        residue_term(b, n).map(|t| Complex64::new(t, 0.0))
    })
}

/// sin(a + ib) for b ≥ 0 as (log-magnitude, unit phase), with the growing
/// exponential e^{b} pulled out analytically:
/// sin(a + ib) = (i/2) e^{b} e^{-ia} (1 - e^{2ia - 2b}).
fn log_sin_split(a: f64, b: f64) -> (f64, Complex64) {
    let rest = Complex64::new(1.0, 0.0) - Complex64::from_polar((-2.0 * b).exp(), 2.0 * a);
    let log_mag = b - LN_2 + rest.norm().ln();
    let phase = Complex64::i() * Complex64::from_polar(1.0, -a) * (rest / rest.norm());
    (log_mag, phase)
}

/// The k-th term (k ≥ 1) of the Ramanujan-type series.
pub fn ramanujan_term(alpha: AlphaParam, k: usize) -> Result<Complex64> {
    let kf = k as f64;
    let alpha = alpha.value();
    let gamma_log = 2.0 * log_gamma(1.0 - omega() * kf)?.re - ln_gamma_real(kf + 1.0)?;
    // sin(πk e^{iπ/3}) = sin(πk/2 + iπk√3/2)
    let (sin_log, sin_phase) = log_sin_split(PI * kf / 2.0, PI * kf * SQRT_3 / 2.0);
    // (-i e^{-α})^k = e^{-kα} (-i)^k
    let power_log = -kf * alpha.re;
    let power_phase = Complex64::from_polar(1.0, -kf * (alpha.im + PI / 2.0));
    let sign = if k & 1 == 0 { 1.0 } else { -1.0 };
    let mag = (gamma_log + sin_log + power_log).exp();
    Ok(sign * mag * sin_phase * power_phase)
}

/// Ramanujan-type series, requiring Re α > π/(2√3) + [`ALPHA_MARGIN`].
pub fn ramanujan_series(alpha: AlphaParam, tol: f64) -> Result<SeriesResult> {
    ramanujan_series_with(alpha, tol, DEFAULT_MAX_TERMS)
}

pub fn ramanujan_series_with(alpha: AlphaParam, tol: f64, max_terms: usize) -> Result<SeriesResult> {
    if alpha.value().re <= alpha_boundary() + ALPHA_MARGIN {
        return Err(Error::Domain(format!(
            "ramanujan_series needs Re α > π/(2√3) + {ALPHA_MARGIN}, got {}",
            alpha.value()
        )));
    }
    sum_until_quiet("ramanujan_series", 1, tol, max_terms, |k| ramanujan_term(alpha, k))
}

/// 2πi sin y / (cos y - √3 sin y)³, the closed form the Ramanujan-type series
/// sums to.
pub fn ramanujan_closed_form(y: f64) -> Complex64 {
    let d = y.cos() - SQRT_3 * y.sin();
    Complex64::new(0.0, 2.0 * PI * y.sin() / (d * d * d))
}

/// 2e^{-√3y} sin y - e^{-α}
fn alpha_residual(y: f64, alpha: f64) -> f64 {
    2.0 * (-SQRT_3 * y).exp() * y.sin() - (-alpha).exp()
}

/// Root of 2e^{-√3y} sin y = e^{-α} on (0, π/6), the branch through y = 0.
///
/// π/6 is the first maximum of the left side, so the root exists and is
/// unique for real α > π/(2√3). Newton from y = e^{-α}/2, kept inside a
/// shrinking bracket.
pub fn solve_y(alpha: AlphaParam) -> Result<f64> {
    let a = alpha.value();
    if a.im != 0.0 {
        return Err(Error::Domain(format!("solve_y needs real α, got {a}")));
    }
    let alpha = a.re;
    let (mut lo, mut hi) = (0.0, FRAC_PI_6);
    let mut y = (-alpha).exp() / 2.0;
    for _ in 0..100 {
        let r = alpha_residual(y, alpha);
        if r < 0.0 {
            lo = y;
        } else {
            hi = y;
        }
        let slope = 2.0 * (-SQRT_3 * y).exp() * (y.cos() - SQRT_3 * y.sin());
        let mut next = y - r / slope;
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        let step = (next - y).abs();
        y = next;
        if alpha_residual(y, alpha).abs() < 1e-14 && step <= 4.0 * f64::EPSILON * y {
            return Ok(y);
        }
    }
    if alpha_residual(y, alpha).abs() < 1e-14 {
        return Ok(y);
    }
    Err(Error::NoConvergence {
        routine: "solve_y",
        iterations: 100,
        best_re: y,
        best_im: 0.0,
        err_estimate: alpha_residual(y, alpha).abs(),
    })
}
