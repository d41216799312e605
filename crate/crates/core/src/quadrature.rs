//! Double-exponential quadrature for complex-valued integrands on the real
//! line and on the half line.
//!
//! Each transform maps `u ∈ ℝ` onto the integration range so that the
//! transformed integrand decays doubly exponentially; the trapezoidal rule in
//! `u` then converges geometrically. Levels halve the step and reuse all
//! previous nodes. Node sums are pairwise in a fixed order, so equal inputs
//! give bit-identical results.

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Change of variable used by the trapezoidal rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Transform {
    /// `x = sinh(π/2 · sinh u)` over (-∞, ∞).
    FullLineExpDecay,
    /// `x = exp(u - e^{-u})` over (0, ∞), for exponentially decaying integrands.
    HalfLineExpDecay,
    /// `x = exp(π/2 · sinh u)` over (0, ∞), for algebraic decay.
    HalfLineAlgebraicDecay,
}

impl Transform {
    /// Node position and Jacobian at `u`.
    fn map(self, u: f64) -> (f64, f64) {
        match self {
            Transform::FullLineExpDecay => {
                let s = FRAC_PI_2 * u.sinh();
                (s.sinh(), FRAC_PI_2 * u.cosh() * s.cosh())
            }
            Transform::HalfLineExpDecay => {
                let e = (-u).exp();
                let x = (u - e).exp();
                (x, x * (1.0 + e))
            }
            Transform::HalfLineAlgebraicDecay => {
                let x = (FRAC_PI_2 * u.sinh()).exp();
                (x, x * FRAC_PI_2 * u.cosh())
            }
        }
    }

    /// Largest |u| visited; keeps `x` and the Jacobian finite.
    fn u_limit(self) -> f64 {
        match self {
            Transform::FullLineExpDecay | Transform::HalfLineAlgebraicDecay => 6.5,
            Transform::HalfLineExpDecay => 7.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_level: u32,
    /// Convergence is not declared before this level.
    pub min_level: u32,
    pub transform: Transform,
}

impl QuadConfig {
    pub const DEFAULT_TOL: f64 = 1e-10;
    pub const DEFAULT_MAX_LEVEL: u32 = 12;
    pub const DEFAULT_MIN_LEVEL: u32 = 3;

    pub fn new(transform: Transform) -> Self {
        Self {
            abs_tol: Self::DEFAULT_TOL,
            rel_tol: Self::DEFAULT_TOL,
            max_level: Self::DEFAULT_MAX_LEVEL,
            min_level: Self::DEFAULT_MIN_LEVEL,
            transform,
        }
    }

    pub fn with_tol(mut self, abs_tol: f64, rel_tol: f64) -> Self {
        self.abs_tol = abs_tol;
        self.rel_tol = rel_tol;
        self
    }

    pub fn with_transform(mut self, transform: Transform) -> Self {
        self.transform = transform;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0 && self.rel_tol > 0.0) {
            return Err(Error::Domain(format!(
                "quadrature tolerances must be positive (abs {}, rel {})",
                self.abs_tol, self.rel_tol
            )));
        }
        if !(3..=16).contains(&self.max_level) {
            return Err(Error::Domain(format!(
                "max_level must lie in [3, 16], got {}",
                self.max_level
            )));
        }
        if self.min_level > self.max_level {
            return Err(Error::Domain(format!(
                "min_level {} exceeds max_level {}",
                self.min_level, self.max_level
            )));
        }
        Ok(())
    }
}

impl Default for QuadConfig {
    fn default() -> Self {
        Self::new(Transform::FullLineExpDecay)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadResult {
    pub value: Complex64,
    pub err_estimate: f64,
    pub evaluations: usize,
    pub converged: bool,
    /// |I_l - I_{l-1}| for l = 1, 2, ...
    pub level_diffs: Vec<f64>,
}

/// Step of level 0.
const BASE_STEP: f64 = 0.5;

/// Consecutive negligible nodes required before the scan stops.
const TAIL_RUN: usize = 3;

/// Deterministic pairwise sum.
pub(crate) fn pairwise_sum(xs: &[Complex64]) -> Complex64 {
    if xs.len() <= 8 {
        return xs.iter().fold(Complex64::new(0.0, 0.0), |acc, &x| acc + x);
    }
    let mid = xs.len() / 2;
    pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
}

struct Engine<'a, F> {
    f: &'a F,
    transform: Transform,
    evaluations: usize,
}

impl<F> Engine<'_, F>
where
    F: Fn(f64) -> Result<Complex64>,
{
    /// Weighted integrand at `u`; zero where the map collapses to a point.
    fn term(&mut self, u: f64) -> Result<Complex64> {
        let (x, w) = self.transform.map(u);
        if w == 0.0 || !x.is_finite() || !w.is_finite() {
            return Ok(Complex64::new(0.0, 0.0));
        }
        if self.transform != Transform::FullLineExpDecay && x == 0.0 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        self.evaluations += 1;
        let v = (self.f)(x)? * w;
        if v.re.is_finite() && v.im.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFinite { x })
        }
    }

    /// Walks outward from u = 0 at the base step until the terms stay below
    /// `cutoff`. Returns the visited terms and the last index on each side.
    fn scan(&mut self, cutoff: f64) -> Result<(Vec<Complex64>, i64, i64)> {
        let limit = (self.transform.u_limit() / BASE_STEP).floor() as i64;
        let mut terms = vec![self.term(0.0)?];
        let mut bounds = [0i64; 2];
        for (side, sign) in [(0usize, -1i64), (1, 1)] {
            let mut quiet = 0;
            let mut k = 0;
            while k < limit {
                k += 1;
                let t = self.term((sign * k) as f64 * BASE_STEP)?;
                terms.push(t);
                if t.norm() < cutoff {
                    quiet += 1;
                    if quiet >= TAIL_RUN {
                        break;
                    }
                } else {
                    quiet = 0;
                }
            }
            bounds[side] = sign * k;
        }
        Ok((terms, bounds[0], bounds[1]))
    }
}

/// Integrates a fallible integrand with the transform named in `cfg`.
pub fn try_integrate<F>(f: F, cfg: &QuadConfig) -> Result<QuadResult>
where
    F: Fn(f64) -> Result<Complex64>,
{
    cfg.validate()?;
    let mut engine = Engine {
        f: &f,
        transform: cfg.transform,
        evaluations: 0,
    };
    let cutoff = cfg.abs_tol * 1e-2;
    let (terms, lo, hi) = engine.scan(cutoff)?;
    let mut abs_sum: f64 = terms.iter().map(|t| t.norm()).sum();
    let mut total = pairwise_sum(&terms);
    let mut h = BASE_STEP;
    let mut estimate = total * h;
    let mut diffs = Vec::new();
    let (u_lo, u_hi) = (lo as f64 * BASE_STEP, hi as f64 * BASE_STEP);

    for level in 1..=cfg.max_level {
        h *= 0.5;
        let count = ((u_hi - u_lo) / h).round() as i64;
        let mut fresh = Vec::with_capacity(count as usize / 2 + 1);
        // Odd multiples of the new step are the new nodes.
        let mut j = 1;
        while j < count {
            let t = engine.term(u_lo + j as f64 * h)?;
            abs_sum += t.norm();
            fresh.push(t);
            j += 2;
        }
        total += pairwise_sum(&fresh);
        let next = total * h;
        let diff = (next - estimate).norm();
        diffs.push(diff);
        estimate = next;

        let roundoff = 16.0 * f64::EPSILON * abs_sum * h;
        let err = diff.max(roundoff);
        let target = cfg.abs_tol.max(cfg.rel_tol * estimate.norm());
        if level >= cfg.min_level && err <= target {
            return Ok(QuadResult {
                value: estimate,
                err_estimate: err,
                evaluations: engine.evaluations,
                converged: true,
                level_diffs: diffs,
            });
        }
    }
    let last = diffs.last().copied().unwrap_or(f64::INFINITY);
    Err(Error::NoConvergence {
        routine: "quadrature",
        iterations: cfg.max_level as usize,
        best_re: estimate.re,
        best_im: estimate.im,
        err_estimate: last,
    })
}

/// ∫_{-∞}^{∞} f(x) dx for an exponentially decaying integrand.
pub fn integrate_full_line<F>(f: F, cfg: &QuadConfig) -> Result<QuadResult>
where
    F: Fn(f64) -> Complex64,
{
    let cfg = cfg.with_transform(Transform::FullLineExpDecay);
    try_integrate(|x| Ok(f(x)), &cfg)
}

/// ∫_0^∞ f(x) dx. `cfg.transform` selects the decay class; a full-line
/// transform in `cfg` is replaced by the exponential half-line one.
pub fn integrate_half_line<F>(f: F, cfg: &QuadConfig) -> Result<QuadResult>
where
    F: Fn(f64) -> Complex64,
{
    let cfg = half_line_config(cfg);
    try_integrate(|x| Ok(f(x)), &cfg)
}

pub(crate) fn half_line_config(cfg: &QuadConfig) -> QuadConfig {
    match cfg.transform {
        Transform::FullLineExpDecay => cfg.with_transform(Transform::HalfLineExpDecay),
        _ => *cfg,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn real(f: impl Fn(f64) -> f64) -> impl Fn(f64) -> Complex64 {
        move |x| Complex64::new(f(x), 0.0)
    }

    #[test]
    fn gaussian() {
        let r = integrate_full_line(real(|x| (-x * x).exp()), &QuadConfig::default()).unwrap();
        assert!((r.value.re - PI.sqrt()).abs() < 1e-13);
        assert!(r.converged);
    }

    #[test]
    fn sech_squared() {
        let r = integrate_full_line(real(|x| 1.0 / x.cosh().powi(2)), &QuadConfig::default()).unwrap();
        assert!((r.value.re - 2.0).abs() < 1e-13);
    }

    #[test]
    fn half_line_exponential() {
        let cfg = QuadConfig::new(Transform::HalfLineExpDecay);
        let r = integrate_half_line(real(|x| (-x).exp()), &cfg).unwrap();
        assert!((r.value.re - 1.0).abs() < 1e-13);
    }

    #[test]
    fn half_line_algebraic() {
        let cfg = QuadConfig::new(Transform::HalfLineAlgebraicDecay);
        let r = integrate_half_line(real(|x| 1.0 / (1.0 + x * x)), &cfg).unwrap();
        assert!((r.value.re - PI / 2.0).abs() < 1e-12);
        // Integrable endpoint singularity: ∫_0^∞ x^{-1/2} / (1 + x) dx = π
        let r = integrate_half_line(real(|x| 1.0 / (x.sqrt() * (1.0 + x))), &cfg).unwrap();
        assert!((r.value.re - PI).abs() < 1e-11);
    }

    #[test]
    fn non_finite_integrand_is_reported() {
        let err = integrate_full_line(|_| Complex64::new(f64::NAN, 0.0), &QuadConfig::default())
            .unwrap_err();
        assert!(matches!(err, Error::NonFinite { .. }));
    }

    #[test]
    fn budget_exhaustion_carries_best_value() {
        let cfg = QuadConfig {
            max_level: 3,
            ..QuadConfig::default().with_tol(1e-300, 1e-300)
        };
        let err = integrate_full_line(real(|x| (-x * x).exp()), &cfg).unwrap_err();
        match err {
            Error::NoConvergence { best_re, .. } => assert!((best_re - PI.sqrt()).abs() < 1e-6),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn config_validation() {
        for max_level in [2, 17] {
            let cfg = QuadConfig {
                max_level,
                ..QuadConfig::default()
            };
            assert!(cfg.validate().is_err());
        }
        let cfg = QuadConfig::default().with_tol(0.0, 1e-10);
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn repeated_runs_are_bit_identical() {
        let f = |x: f64| Complex64::new(0.0, x).exp() / x.cosh().powi(3);
        let a = integrate_full_line(f, &QuadConfig::default()).unwrap();
        let b = integrate_full_line(f, &QuadConfig::default()).unwrap();
        assert_eq!(a.value.re.to_bits(), b.value.re.to_bits());
        assert_eq!(a.value.im.to_bits(), b.value.im.to_bits());
    }

    #[test]
    fn pairwise_sum_matches_naive_on_small_input() {
        let xs: Vec<Complex64> = (0..37).map(|k| Complex64::new(k as f64, -(k as f64))).collect();
        let s = pairwise_sum(&xs);
        assert_eq!(s, Complex64::new(666.0, -666.0));
    }
}
