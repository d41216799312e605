//! Zeros of F(z) = e^{i√3z} + 2cosh z.
//!
//! In the upper half plane the zeros sit on the imaginary axis next to the
//! zeros iπ(n + 1/2) of 2cosh z; the perturbation e^{i√3z} has magnitude
//! e^{-√3 Im z} there. The zero set is invariant under z → ωz.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::constants::{omega, SQRT_3};
use crate::error::{Error, Result};

pub const NEWTON_MAX_ITER: usize = 100;

/// Smallest sample count accepted by [`winding_count`].
pub const MIN_WINDING_SAMPLES: usize = 2000;

/// Below this |F| a contour sample counts as hitting a zero.
pub const CONTOUR_ZERO_THRESHOLD: f64 = 1e-12;

const MAX_REFINE_DEPTH: u32 = 40;

/// F(z) = e^{i√3z} + 2cosh z
pub fn f(z: Complex64) -> Complex64 {
    (Complex64::i() * SQRT_3 * z).exp() + 2.0 * z.cosh()
}

/// F'(z) = i√3 e^{i√3z} + 2sinh z
pub fn f_prime(z: Complex64) -> Complex64 {
    Complex64::i() * SQRT_3 * (Complex64::i() * SQRT_3 * z).exp() + 2.0 * z.sinh()
}

/// Seed iπ(n + 1/2) for the n-th zero in the upper half plane.
pub fn seed(n: usize) -> Complex64 {
    Complex64::new(0.0, PI * (n as f64 + 0.5))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RootRecord {
    pub index: usize,
    pub seed: Complex64,
    pub root: Complex64,
    /// |F(root)|
    pub residual: f64,
    pub iterations: usize,
}

/// Newton iteration on F from `start`. Returns the root and the number of
/// steps taken, or `None` if the budget runs out.
pub fn newton(start: Complex64, tol: f64) -> Option<(Complex64, usize)> {
    let mut z = start;
    for it in 1..=NEWTON_MAX_ITER {
        let d = f_prime(z);
        if d.norm() == 0.0 {
            return None;
        }
        let step = f(z) / d;
        z -= step;
        if !(z.re.is_finite() && z.im.is_finite()) {
            return None;
        }
        if f(z).norm() < tol && step.norm() <= 1e-14 * z.norm().max(1.0) {
            return Some((z, it));
        }
    }
    (f(z).norm() < tol).then_some((z, NEWTON_MAX_ITER))
}

/// The first `count` zeros of F in the upper half plane, n = 0..count-1.
pub fn find_roots_upper(count: usize, tol: f64) -> Result<Vec<RootRecord>> {
    if count == 0 {
        return Err(Error::Domain("find_roots_upper needs count >= 1".into()));
    }
    (0..count)
        .map(|n| {
            let s = seed(n);
            let (root, iterations) = newton(s, tol).ok_or(Error::RootNoConvergence { index: n })?;
            Ok(RootRecord {
                index: n,
                seed: s,
                root,
                residual: f(root).norm(),
                iterations,
            })
        })
        .collect()
}

/// Closed polyline; the last vertex connects back to the first.
#[derive(Debug, Clone, PartialEq)]
pub struct Contour {
    vertices: Vec<Complex64>,
}

impl Contour {
    pub fn polyline(vertices: Vec<Complex64>) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(Error::Domain("a closed contour needs at least 3 vertices".into()));
        }
        Ok(Self { vertices })
    }

    /// Counter-clockwise circle through `sides` vertices.
    pub fn circle(center: Complex64, radius: f64, sides: usize) -> Result<Self> {
        let sides = sides.max(3);
        Self::polyline(
            (0..sides)
                .map(|k| center + Complex64::from_polar(radius, 2.0 * PI * k as f64 / sides as f64))
                .collect(),
        )
    }

    /// The diameter [-R, R] followed by the upper half circle back to -R.
    pub fn upper_semicircle(radius: f64, arc_sides: usize) -> Result<Self> {
        let arc_sides = arc_sides.max(2);
        let vertices = (0..arc_sides)
            .map(|k| Complex64::from_polar(radius, PI * k as f64 / arc_sides as f64))
            .chain(std::iter::once(Complex64::new(-radius, 0.0)))
            .collect();
        Self::polyline(vertices)
    }

    pub fn vertices(&self) -> &[Complex64] {
        &self.vertices
    }

    fn edges(&self) -> impl Iterator<Item = (Complex64, Complex64)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    fn length(&self) -> f64 {
        self.edges().map(|(a, b)| (b - a).norm()).sum()
    }
}

struct Winder<'a, G> {
    g: &'a G,
}

impl<G> Winder<'_, G>
where
    G: Fn(Complex64) -> Complex64,
{
    fn value(&self, z: Complex64, sample: usize) -> Result<Complex64> {
        let v = (self.g)(z);
        let m = v.norm();
        if !(m >= CONTOUR_ZERO_THRESHOLD) || !m.is_finite() {
            return Err(Error::NearZeroOnContour { sample, magnitude: m });
        }
        Ok(v)
    }

    /// Argument change from `a` to `b`, bisecting until every step turns
    /// by less than π/2.
    fn turn(&self, a: Complex64, fa: Complex64, b: Complex64, fb: Complex64, depth: u32, sample: usize) -> Result<f64> {
        let d = (fb / fa).arg();
        if d.abs() < PI / 2.0 || depth >= MAX_REFINE_DEPTH {
            return Ok(d);
        }
        let m = 0.5 * (a + b);
        let fm = self.value(m, sample)?;
        Ok(self.turn(a, fa, m, fm, depth + 1, sample)? + self.turn(m, fm, b, fb, depth + 1, sample)?)
    }
}

/// Winding number of `g` around the closed `contour`, i.e. the number of
/// zeros enclosed when `g` has no poles inside.
pub fn winding_count<G>(g: G, contour: &Contour, samples: usize) -> Result<i64>
where
    G: Fn(Complex64) -> Complex64,
{
    winding_raw(g, contour, samples).and_then(|raw| {
        let n = raw.round();
        if (raw - n).abs() > 0.1 {
            Err(Error::AmbiguousWinding { raw })
        } else {
            Ok(n as i64)
        }
    })
}

/// Accumulated argument change divided by 2π, before rounding.
pub fn winding_raw<G>(g: G, contour: &Contour, samples: usize) -> Result<f64>
where
    G: Fn(Complex64) -> Complex64,
{
    if samples < MIN_WINDING_SAMPLES {
        return Err(Error::Domain(format!(
            "winding_count needs at least {MIN_WINDING_SAMPLES} samples, got {samples}"
        )));
    }
    let winder = Winder { g: &g };
    let total_len = contour.length();
    let mut sample = 0usize;
    let mut total = 0.0;
    let first = contour.vertices[0];
    let f_first = winder.value(first, 0)?;
    let (mut prev, mut f_prev) = (first, f_first);
    for (a, b) in contour.edges() {
        let pieces = ((samples as f64 * (b - a).norm() / total_len).ceil() as usize).max(1);
        for j in 1..=pieces {
            sample += 1;
            let z = a + (b - a) * (j as f64 / pieces as f64);
            let fz = winder.value(z, sample)?;
            total += winder.turn(prev, f_prev, z, fz, 0, sample)?;
            prev = z;
            f_prev = fz;
        }
    }
    Ok(total / (2.0 * PI))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SymmetryReport {
    pub checked: usize,
    /// Largest |F(ω^{±1} r)| scaled by |e^{i√3z}| + |2cosh z| at the rotated point.
    pub max_rotated_residual: f64,
    /// Largest |Re r|.
    pub max_axis_offset: f64,
}

fn scaled_residual(z: Complex64) -> f64 {
    let e = (Complex64::i() * SQRT_3 * z).exp();
    let c = 2.0 * z.cosh();
    f(z).norm() / (e.norm() + c.norm())
}

/// Checks that each root rotated by ω and 1/ω is again a zero and that the
/// upper-half-plane roots lie on the imaginary axis.
pub fn ray_symmetry_check(records: &[RootRecord], tol: f64) -> Result<SymmetryReport> {
    if records.is_empty() {
        return Err(Error::Domain("ray_symmetry_check needs at least one root".into()));
    }
    let w = omega();
    let mut report = SymmetryReport {
        checked: 0,
        max_rotated_residual: 0.0,
        max_axis_offset: 0.0,
    };
    for rec in records {
        for (label, z) in [("ωr", w * rec.root), ("r/ω", rec.root * w.conj())] {
            let res = scaled_residual(z);
            if !(res < tol) {
                return Err(Error::SymmetryViolation {
                    index: rec.index,
                    detail: format!("scaled |F({label})| = {res:e} at {z}"),
                });
            }
            report.max_rotated_residual = report.max_rotated_residual.max(res);
        }
        let offset = rec.root.re.abs();
        if !(offset < tol) {
            return Err(Error::SymmetryViolation {
                index: rec.index,
                detail: format!("root {} is {offset:e} off the imaginary axis", rec.root),
            });
        }
        report.max_axis_offset = report.max_axis_offset.max(offset);
        report.checked += 1;
    }
    Ok(report)
}
