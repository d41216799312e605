//! Kernels and an identity-verification harness for integrals built on the
//! reciprocal triple-Gamma product
//!
//! ```text
//! P_b(z) = 1 / ∏_{k≥0} (1 + z³/(k+b)³)
//! ```
//!
//! The crate provides complex log-gamma and hypergeometric kernels
//! ([`special`]), two evaluators for `P_b` ([`product`]), double-exponential
//! quadrature ([`quadrature`]), the residue and Ramanujan-type series
//! ([`series`]), the zeros of `e^{i√3z} + 2cosh z` ([`roots`]) and a registry
//! of closed-form identities that is checked numerically ([`catalog`]).

pub mod catalog;
pub mod constants;
pub mod error;
pub mod integrands;
pub mod product;
pub mod quadrature;
pub mod report;
pub mod roots;
pub mod series;
pub mod special;

pub use num_complex::Complex64;

/// The scalar used for every integrand, Gamma value and root.
pub type ComplexValue = Complex64;

pub use catalog::{run_all, verify, verify_with_tol, IdentityCase, CATALOG_IDS};
pub use error::{Error, Result};
pub use product::{product_gamma_form, product_truncated, ProductParams};
pub use quadrature::{integrate_full_line, integrate_half_line, QuadConfig, QuadResult, Transform};
pub use report::{IdentityReport, ParamValue, Params, Summary};
pub use roots::{find_roots_upper, RootRecord};
pub use series::{ramanujan_series, residue_sum, solve_y, AlphaParam, SeriesResult};
pub use special::{complex_pow, gamma_abs_sq, hyp2f1, log_gamma};
