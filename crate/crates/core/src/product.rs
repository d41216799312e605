//! The reciprocal triple product
//!
//! ```text
//! P_b(z) = 1 / ∏_{k≥0} (1 + z³/(k+b)³) = Γ(b+z) Γ(b+ωz) Γ(b+z/ω) / Γ(b)³
//! ```
//!
//! with ω = e^{2πi/3}. The Gamma form is the production evaluator. The
//! truncated product is slow (relative tail ~ |z|³/(2K²)) and exists only as
//! an independent oracle.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::constants::{omega, SQRT_3};
use crate::error::{Error, Result};
use crate::special::{log_gamma, pole_distance};

/// Distance from a Gamma pole at which [`product_gamma_form`] refuses to
/// evaluate.
pub const PRODUCT_POLE_THRESHOLD: f64 = 1e-10;

/// Smallest |z| at which the asymptotic magnitude model is offered.
pub const ASYMPTOTIC_MIN_RADIUS: f64 = 5.0;

/// Shift parameter `b > 0` of the product.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProductParams {
    b: f64,
}

impl ProductParams {
    pub fn new(b: f64) -> Result<Self> {
        if b > 0.0 && b.is_finite() {
            Ok(Self { b })
        } else {
            Err(Error::Domain(format!("product shift b must be > 0, got {b}")))
        }
    }

    pub fn b(&self) -> f64 {
        self.b
    }
}

/// P_b(z) via the Gamma closed form, summed in log space and exponentiated
/// once.
pub fn product_gamma_form(params: ProductParams, z: Complex64) -> Result<Complex64> {
    log_product(params, z).map(Complex64::exp)
}

/// ln P_b(z) (imaginary part defined modulo 2π).
pub fn log_product(params: ProductParams, z: Complex64) -> Result<Complex64> {
    let b = params.b;
    let w = omega();
    let args = [
        ("b + z", b + z),
        ("b + ωz", b + w * z),
        ("b + z/ω", b + z * w.conj()),
    ];
    let mut acc = Complex64::new(0.0, 0.0);
    for (name, arg) in args {
        if arg.re < 0.5 && pole_distance(arg) < PRODUCT_POLE_THRESHOLD {
            return Err(Error::Pole {
                what: format!("factor Γ({name}) at {arg}"),
                threshold: PRODUCT_POLE_THRESHOLD,
            });
        }
        acc += log_gamma(arg)?;
    }
    Ok(acc - 3.0 * log_gamma(Complex64::new(b, 0.0))?)
}

/// Truncated product with an a-priori bound on the neglected tail.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncatedProduct {
    /// 1 / ∏_{k<K} (1 + z³/(k+b)³)
    pub value: Complex64,
    /// Bound on |P_b(z) / value - 1|.
    pub rel_tail: f64,
    pub terms: usize,
}

/// Direct evaluation of the first `terms` factors of the product.
pub fn product_truncated(params: ProductParams, z: Complex64, terms: usize) -> Result<TruncatedProduct> {
    if terms == 0 {
        return Err(Error::Domain("product_truncated needs at least one factor".into()));
    }
    let b = params.b;
    let z3 = z * z * z;
    // Σ ln(1 + w_k) with compensated summation; the factors themselves
    // would lose the low bits of every small w_k.
    let (mut sum, mut comp) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
    for k in 0..terms {
        let kb = k as f64 + b;
        let w = z3 / (kb * kb * kb);
        if (1.0 + w).norm() <= 1e-14 {
            return Err(Error::ZeroFactor { k });
        }
        let term = ln_1p(w);
        let t = sum + term;
        comp += Complex64::new(
            neumaier_carry(sum.re, term.re, t.re),
            neumaier_carry(sum.im, term.im, t.im),
        );
        sum = t;
    }
    let prod = (sum + comp).exp();
    // Σ_{k≥K} (k+b)^{-3} ≤ ∫_{K-1}^∞ (x+b)^{-3} dx
    let edge = terms as f64 - 1.0 + b;
    let tail_sum = 1.0 / (2.0 * edge * edge);
    let rel_tail = (z3.norm() * tail_sum).exp_m1();
    Ok(TruncatedProduct {
        value: prod.inv(),
        rel_tail,
        terms,
    })
}

/// ln(1 + w) without cancellation for small |w|.
fn ln_1p(w: Complex64) -> Complex64 {
    let re = 0.5 * (w.re * (2.0 + w.re) + w.im * w.im).ln_1p();
    Complex64::new(re, w.im.atan2(1.0 + w.re))
}

fn neumaier_carry(sum: f64, term: f64, total: f64) -> f64 {
    if sum.abs() >= term.abs() {
        (sum - total) + term
    } else {
        (term - total) + sum
    }
}

/// Power-times-exponential magnitude model for |P_b(z)| with unit constant.
///
/// Covers the closed sector 0 ≤ arg z ≤ 2π/3 for |z| ≥ 5:
/// `|z|^{3b-3/2} e^{-2πx/√3}` below arg z = π/3, and
/// `|z|^{3b-3/2} e^{πx/√3 - πy}` above it. The two laws coincide on the ray
/// arg z = π/3.
pub fn asymptotic_mag(params: ProductParams, z: Complex64) -> Result<f64> {
    let arg = z.arg();
    let r = z.norm();
    if !(0.0..=2.0 * PI / 3.0).contains(&arg) || !(r >= ASYMPTOTIC_MIN_RADIUS) {
        return Err(Error::Domain(format!(
            "asymptotic model needs 0 <= arg z <= 2π/3 and |z| >= {ASYMPTOTIC_MIN_RADIUS}, got {z}"
        )));
    }
    Ok((log_power(params, r) + decay_exponent(z)).exp())
}

fn log_power(params: ProductParams, r: f64) -> f64 {
    (3.0 * params.b - 1.5) * r.ln()
}

/// Exponent of the exponential part of the magnitude model.
pub fn decay_exponent(z: Complex64) -> f64 {
    if z.arg() <= PI / 3.0 {
        -2.0 * PI * z.re / SQRT_3
    } else {
        PI * z.re / SQRT_3 - PI * z.im
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn p(b: f64) -> ProductParams {
        ProductParams::new(b).unwrap()
    }

    #[test]
    fn params_reject_non_positive_b() {
        assert!(ProductParams::new(0.0).is_err());
        assert!(ProductParams::new(-1.0).is_err());
        assert!(ProductParams::new(f64::NAN).is_err());
    }

    #[test]
    fn gamma_form_at_origin_is_one() {
        for b in [0.3, 1.0, 2.5] {
            let v = product_gamma_form(p(b), c(0.0, 0.0)).unwrap();
            assert!((v - 1.0).norm() < 1e-14);
        }
    }

    #[test]
    fn gamma_form_matches_cosh_closed_form() {
        // ∏_{k≥1} (1 + 1/k³) = cosh(π√3/2) / π
        let expected = PI / (PI * SQRT_3 / 2.0).cosh();
        let v = product_gamma_form(p(1.0), c(1.0, 0.0)).unwrap();
        assert!((v.re - expected).abs() < 1e-13);
        assert!(v.im.abs() < 1e-14);
        assert!((expected - 0.411_829_422_582_171_2).abs() < 1e-15);
    }

    #[test]
    fn gamma_form_reports_poles() {
        // b + z = 0
        let err = product_gamma_form(p(1.0), c(-1.0, 0.0)).unwrap_err();
        assert!(matches!(err, Error::Pole { ref what, .. } if what.contains("b + z")));
        // b + ωz = -1 with z = -2/ω
        let z = -2.0 * omega().conj();
        let err = product_gamma_form(p(1.0), z).unwrap_err();
        assert!(matches!(err, Error::Pole { ref what, .. } if what.contains("ωz")));
    }

    #[test]
    fn truncated_examples() {
        let t = product_truncated(p(0.7), c(0.0, 0.0), 17).unwrap();
        assert_eq!(t.value, c(1.0, 0.0));
        assert_eq!(t.rel_tail, 0.0);

        let t = product_truncated(p(1.0), c(1.0, 0.0), 100_000).unwrap();
        let expected = PI / (PI * SQRT_3 / 2.0).cosh();
        assert!((t.value.re - expected).abs() <= t.rel_tail * expected * 1.01 + 1e-15);
        assert!(t.rel_tail < 1e-10);

        assert_eq!(
            product_truncated(p(1.0), c(-2.0, 0.0), 10).unwrap_err(),
            Error::ZeroFactor { k: 1 }
        );
    }

    #[test]
    fn gamma_form_vs_truncation_at_half() {
        let t = product_truncated(p(0.5), c(0.3, 0.0), 1_000_000).unwrap();
        let v = product_gamma_form(p(0.5), c(0.3, 0.0)).unwrap();
        assert!((v - t.value).norm() <= t.rel_tail * t.value.norm() + 1e-13);
        assert!((v.re - 0.813_245_739_663_424_3).abs() < 1e-13);
    }

    #[test]
    fn asymptotic_sector_laws() {
        let params = p(1.0);
        // Positive real axis: e^{-2πx/√3}
        let x = 12.0;
        let m = asymptotic_mag(params, c(x, 0.0)).unwrap();
        assert!((m.ln() - (1.5 * x.ln() - 2.0 * PI * x / SQRT_3)).abs() < 1e-12);
        // Imaginary axis: e^{-πy}
        let y = 9.0;
        let m = asymptotic_mag(params, c(0.0, y)).unwrap();
        assert!((m.ln() - (1.5 * y.ln() - PI * y)).abs() < 1e-9);
        // Continuity on arg z = π/3
        assert!((decay_exponent(c(0.5, SQRT_3 / 2.0)) + PI / SQRT_3).abs() < 1e-12);
    }

    #[test]
    fn asymptotic_domain() {
        assert!(asymptotic_mag(p(1.0), c(1.0, 1.0)).is_err());
        assert!(asymptotic_mag(p(1.0), c(-10.0, 1.0)).is_err());
        assert!(asymptotic_mag(p(1.0), c(10.0, -1.0)).is_err());
    }

    #[test]
    fn asymptotic_ratio_is_stable() {
        let params = p(1.0);
        let dir = Complex64::from_polar(1.0, PI / 6.0);
        let ratio = |r: f64| {
            let z = dir * r;
            product_gamma_form(params, z).unwrap().norm() / asymptotic_mag(params, z).unwrap()
        };
        let (a, b) = (ratio(20.0), ratio(40.0));
        assert!((a / b - 1.0).abs() < 0.1);
    }
}
