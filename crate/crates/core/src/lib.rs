//! Fractional colouring of triangle-free subcubic graphs: a randomized
//! independent-set sampler with exact probability enumeration, a template
//! calculus for event bounds, and an exact rational LP for `chi_f`.

pub mod augment;
pub mod bits;
pub mod error;
pub mod graph;
pub mod lp;
pub mod sampler;
pub mod scalar;
pub mod templates;
pub mod two_factor;

pub use error::{Error, Result};
pub use graph::Graph;
pub use scalar::{Rational, Scalar};
pub use two_factor::TwoFactor;

/// The target bound `k = 32/11`.
pub fn k_bound() -> Rational {
    scalar::ratio(32, 11)
}

/// The per-vertex probability target `88/256 = 1/k`.
pub fn target_marginal() -> Rational {
    scalar::ratio(88, 256)
}
