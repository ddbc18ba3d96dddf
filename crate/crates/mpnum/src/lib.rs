//! Arbitrary-precision numeric tower: scalars ([`Big`], [`CBig`]), univariate
//! polynomials ([`UPoly`]), Sylvester resultants, generalized resultants,
//! approximate GCD, and real/complex root finding.
//!
//! All arithmetic is binary floating point with round-to-nearest-even at a
//! per-value precision (default 256 bits). The exponent range is ±2³¹, wide
//! enough for the resultant magnitudes this workspace produces (~10^±10⁵).

mod big;
mod cbig;
mod gcd;
mod resultant;
mod roots;
mod upoly;

pub use big::{Big, Sign, DEFAULT_PREC};
pub use cbig::CBig;
pub use gcd::approx_gcd;
pub use resultant::{generalized_resultants, resultant, GenResultants};
pub use roots::{complex_roots, real_roots, RootError};
pub use upoly::UPoly;

use thiserror::Error;

/// Errors surfaced by polynomial-algebra entry points.
#[derive(Debug, Error)]
pub enum PolyError {
    #[error("zero polynomial input to {0}")]
    ZeroPolynomial(&'static str),
    #[error("root finding failed: {0}")]
    Roots(#[from] RootError),
}
