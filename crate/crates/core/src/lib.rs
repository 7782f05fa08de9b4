//! Real-rooted polynomial families with exact coefficients, their limiting
//! empirical zero distributions, exponential coefficient profiles, finite
//! free convolutions, and the coefficient law of sample covariance matrices.
//!
//! The crate is organized around the pipeline
//!
//! ```text
//! families  --coefficients-->  profiles  --inversion-->  limitlaws
//!     |                                                     ^
//!     v                                                     |
//!   roots  ----empirical measures----> ks distance ---------+
//! ```
//!
//! plus [`freeconv`] for the finite free convolutions `⊠ₙ` / `⊞ₙ` and the
//! free-probability transforms, and [`randmat`] for sample covariance
//! matrices and the strong law of their secular coefficients.
//!
//! Exact coefficient work is done in `num`-stack big rationals; everything
//! that genuinely needs more than `f64` (transcendental coefficient families,
//! certified sign evaluation during root isolation) runs on MPFR floats via
//! [`rug`].

pub mod error;
pub mod exact;
pub mod families;
pub mod freeconv;
pub mod hp;
pub mod limitlaws;
pub mod profiles;
pub mod quadrature;
pub mod randmat;
pub mod roots;
pub mod specialfn;

pub use error::{Error, Result};
