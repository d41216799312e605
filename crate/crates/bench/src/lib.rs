//! Fixed inputs shared by the benchmarks.

use num_complex::Complex64;
use triprod_core::product::ProductParams;

/// Points in the upper half of |z| ≤ 5 where P_b is evaluated.
pub fn product_points() -> Vec<Complex64> {
    (0..64)
        .map(|k| {
            let t = k as f64 / 64.0;
            Complex64::from_polar(0.5 + 4.5 * t, std::f64::consts::PI * t)
        })
        .collect()
}

pub fn unit_product() -> ProductParams {
    ProductParams::new(1.0).expect("b = 1 is valid")
}

/// Arguments of log Γ spanning both the reflection and the Stirling branch.
pub fn gamma_points() -> Vec<Complex64> {
    (0..64)
        .map(|k| Complex64::new(-10.0 + 0.4 * k as f64, 3.0 - 0.1 * k as f64))
        .collect()
}
