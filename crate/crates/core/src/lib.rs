//! Length bounds for degree-bounded ascending chains of polynomial ideals,
//! with a certifying batch Buchberger algorithm and brute-force oracles.

pub mod antichain;
pub mod bounds;
pub mod division;
pub mod error;
pub mod groebner;
pub mod membership;
pub mod ring;

pub use error::{BudgetExceeded, Error, Resource, Result};

/// Serialises big naturals as decimal strings.
pub(crate) mod decimal {
    use num_bigint::BigUint;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(value: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(value)
    }
}
