//! Numerical verification of product identities for pairs of Dirichlet
//! series satisfying a Hecke-type functional equation
//! (2π)^{-s} Γ(s) φ(s) = (2π)^{s-δ} Γ(δ-s) ψ(δ-s).
//!
//! The crate evaluates, by at least two independent routes each, the objects
//! that appear in the product formula for φ(u)ψ(v): Riesz-weighted double
//! sums, Perron line integrals, closed-contour integrals, Meijer-G series,
//! and the residue correction terms, for three built-in coefficient families
//! (Ramanujan τ, the ζ normalization with frequencies n²/2, and odd divisor
//! functions σ_l).

pub mod arith;
pub mod error;
pub mod gseries;
pub mod lfun;
pub mod quad;
pub mod report;
pub mod riesz;
pub mod special;
pub mod sum;

pub use error::{Error, Result};

use num_complex::Complex64;

/// A computed value together with an absolute error estimate.
#[derive(Debug, Clone, Copy)]
pub struct Estimated {
    pub value: Complex64,
    pub err: f64,
}

impl Estimated {
    pub fn exact(value: Complex64) -> Self {
        Self { value, err: 0.0 }
    }

    pub fn add(self, other: Estimated) -> Estimated {
        Estimated {
            value: self.value + other.value,
            err: self.err + other.err,
        }
    }

    pub fn sub(self, other: Estimated) -> Estimated {
        Estimated {
            value: self.value - other.value,
            err: self.err + other.err,
        }
    }

    pub fn scale(self, k: Complex64) -> Estimated {
        Estimated {
            value: self.value * k,
            err: self.err * k.norm(),
        }
    }
}
