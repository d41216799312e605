//! Shared constants.

use std::f64::consts::PI;

use num_complex::Complex64;

pub const SQRT_3: f64 = 1.732_050_807_568_877_2;

/// ω = e^{2πi/3}
pub fn omega() -> Complex64 {
    Complex64::new(-0.5, SQRT_3 / 2.0)
}

/// e^{iπ/3} = (1 + i√3)/2, the exponent in t^α of the half-line forms.
pub fn alpha_sixth() -> Complex64 {
    Complex64::new(0.5, SQRT_3 / 2.0)
}

/// 5π/(2√3), where the sine-weighted product integrands collapse to short forms.
pub fn special_alpha() -> f64 {
    5.0 * PI / (2.0 * SQRT_3)
}

/// π/(2√3), the convergence boundary of the Ramanujan-type series.
pub fn alpha_boundary() -> f64 {
    PI / (2.0 * SQRT_3)
}
