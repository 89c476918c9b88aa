//! Exact integer and rational arithmetic: scalars, square testing,
//! factorization with explicit budgets, and small-prime utilities.

mod factor;
mod primes;
mod rat;

pub use factor::{factorize, is_prime, FactorBudget, Factorization};
pub use primes::{legendre, primes_up_to};
pub(crate) use primes::powmod;
pub use rat::{int_sqrt, Rat, RatError};

pub use num_bigint::BigInt;
