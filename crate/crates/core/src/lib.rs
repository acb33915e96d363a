//! Exact exponential sums over the points of a hypersurface modulo `p` and
//! `p^2`, and the stratification of frequency space by the dimension of the
//! auxiliary cones `W_{F,h}`.
//!
//! ```
//! use stratsum::{poly::parse_poly, expsum};
//!
//! let f = parse_poly("x1^2 + x2^2", 2).unwrap();
//! let a = expsum::sum_reduction(&f, &[1, 0], 3).unwrap();
//! let z9 = stratsum::ffield::ModulusSpec::prime_square(3).unwrap();
//! let b = expsum::sum_bruteforce(&f, &[1, 0], &z9).unwrap();
//! assert_eq!(a.exact, b.exact);
//! ```

pub mod cli;
pub mod corpus;
pub mod cyclo;
pub mod error;
pub mod expsum;
pub mod ffield;
pub mod poly;
pub mod strata;
pub mod varieties;

pub use error::{Error, HypothesisError, Result};

/// Extension depth used by the smoothness screen and dimension estimates unless overridden.
pub const DEFAULT_KMAX: u32 = 2;
