//! Exact arithmetic shared by every other module: primes and quadratic
//! characters, linear algebra over ℚ and 𝔽_p, and integer polynomials.

pub mod decimal;
mod linalg;
mod poly;
mod prime;

pub use linalg::{determinant, echelon, rank, reduce_against, Field, PrimeField, RationalField, RationalMatrix};
pub use poly::IntPolynomial;
pub use prime::{is_prime, legendre, odd_primes_up_to, primes_up_to, PrimeModulus, SquareTable};
