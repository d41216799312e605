//! Complex special functions: log-gamma, |Γ|², the Gauss hypergeometric
//! series and complex powers of positive reals.
//!
//! `log_gamma` uses upward recurrence into the Stirling region for
//! `Re z >= 1/2` and the reflection formula below that line. The branch is
//! the one continuous on the plane cut along the negative real axis; on the
//! cut itself the limit from above is returned.

use std::f64::consts::{LN_2, PI};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Minimum distance from a pole of Γ before an argument is rejected.
pub const POLE_THRESHOLD: f64 = 1e-12;

/// Guard on the number of terms summed by [`hyp2f1`].
pub const HYP2F1_MAX_TERMS: usize = 500;

/// Largest |z| accepted by [`hyp2f1`].
pub const HYP2F1_MAX_ABS_Z: f64 = 0.75;

const LN_PI: f64 = 1.144_729_885_849_400_2;
const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;

/// Stirling series coefficients B_{2k} / (2k (2k - 1)).
const STIRLING: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
];

/// |z| at which the asymptotic series is used directly.
const STIRLING_RADIUS: f64 = 16.0;

fn check_finite(z: Complex64, what: &str) -> Result<()> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("{what} must be finite, got {z}")))
    }
}

/// Distance from `z` to the nearest non-positive integer.
pub(crate) fn pole_distance(z: Complex64) -> f64 {
    let n = z.re.round().min(0.0);
    (z - Complex64::new(n, 0.0)).norm()
}

fn stirling(z: Complex64) -> Complex64 {
    let inv = z.inv();
    let inv2 = inv * inv;
    let mut corr = Complex64::new(0.0, 0.0);
    for c in STIRLING.iter().rev() {
        corr = corr * inv2 + c;
    }
    (z - 0.5) * z.ln() - z + HALF_LN_2PI + corr * inv
}

/// ln Γ(z) for `Re z >= 1/2`.
fn log_gamma_right(z: Complex64) -> Complex64 {
    let mut shifted = z;
    let mut shift_log = Complex64::new(0.0, 0.0);
    while shifted.norm() < STIRLING_RADIUS {
        shift_log += shifted.ln();
        shifted += 1.0;
    }
    stirling(shifted) - shift_log
}

/// Analytic continuation of ln sin(πz) into the closed upper half plane,
/// real on (0, 1).
fn log_sin_pi_upper(z: Complex64) -> Complex64 {
    let i = Complex64::i();
    let e = (2.0 * PI * i * z).exp();
    Complex64::new(-LN_2, PI / 2.0) - i * PI * z + (Complex64::new(1.0, 0.0) - e).ln()
}

/// Principal branch of ln Γ(z).
pub fn log_gamma(z: Complex64) -> Result<Complex64> {
    check_finite(z, "log_gamma argument")?;
    if z.re < 0.5 && pole_distance(z) < POLE_THRESHOLD {
        return Err(Error::Pole {
            what: format!("log_gamma argument {z}"),
            threshold: POLE_THRESHOLD,
        });
    }
    if z.re >= 0.5 {
        return Ok(log_gamma_right(z));
    }
    let upper = z.im >= 0.0;
    let w = if upper { z } else { z.conj() };
    let v = LN_PI - log_sin_pi_upper(w) - log_gamma_right(1.0 - w);
    Ok(if upper { v } else { v.conj() })
}

/// Γ(z), evaluated as exp(ln Γ(z)).
pub fn gamma(z: Complex64) -> Result<Complex64> {
    log_gamma(z).map(Complex64::exp)
}

/// |Γ(z)|², assembled as exp(2 Re ln Γ(z)) so that it never squares an
/// overflowing value.
pub fn gamma_abs_sq(z: Complex64) -> Result<f64> {
    Ok((2.0 * log_gamma(z)?.re).exp())
}

/// ln Γ(x) for real positive `x`.
pub fn ln_gamma_real(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("ln_gamma_real needs x > 0, got {x}")));
    }
    Ok(log_gamma_right_or_reflect(x))
}

fn log_gamma_right_or_reflect(x: f64) -> f64 {
    let z = Complex64::new(x, 0.0);
    if x >= 0.5 {
        log_gamma_right(z).re
    } else {
        // Γ(x) = Γ(x + 1) / x keeps everything on the positive axis.
        log_gamma_right(z + 1.0).re - x.ln()
    }
}

/// Gauss hypergeometric function ₂F₁(a, b; c; z) by its power series,
/// restricted to `|z| <= 0.75`.
pub fn hyp2f1(a: Complex64, b: Complex64, c: Complex64, z: Complex64) -> Result<Complex64> {
    for (v, name) in [(a, "a"), (b, "b"), (c, "c"), (z, "z")] {
        check_finite(v, name)?;
    }
    if z.norm() > HYP2F1_MAX_ABS_Z {
        return Err(Error::Domain(format!(
            "hyp2f1 series needs |z| <= {HYP2F1_MAX_ABS_Z}, got |z| = {}",
            z.norm()
        )));
    }
    if c.im == 0.0 && c.re <= 0.0 && (c.re - c.re.round()).abs() < POLE_THRESHOLD {
        return Err(Error::Pole {
            what: format!("hyp2f1 parameter c = {c}"),
            threshold: POLE_THRESHOLD,
        });
    }

    let mut sum = Complex64::new(1.0, 0.0);
    let mut term = Complex64::new(1.0, 0.0);
    let mut tail = f64::INFINITY;
    for n in 0..HYP2F1_MAX_TERMS {
        let nf = n as f64;
        let ratio = (a + nf) * (b + nf) / ((c + nf) * (nf + 1.0)) * z;
        term *= ratio;
        sum += term;
        if term == Complex64::new(0.0, 0.0) {
            return Ok(sum);
        }
        // Geometric bound on the remainder once the ratio settles below one.
        let r = ratio.norm().max(z.norm());
        if r < 1.0 {
            tail = term.norm() * r / (1.0 - r);
            if tail <= 1e-16 * sum.norm() {
                return Ok(sum);
            }
        }
    }
    Err(Error::NoConvergence {
        routine: "hyp2f1",
        iterations: HYP2F1_MAX_TERMS,
        best_re: sum.re,
        best_im: sum.im,
        err_estimate: tail,
    })
}

/// t^p = exp(p ln t) for real `t > 0`.
pub fn complex_pow(t: f64, p: Complex64) -> Result<Complex64> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::Domain(format!("complex_pow needs t > 0, got {t}")));
    }
    check_finite(p, "exponent")?;
    Ok((p * t.ln()).exp())
}
