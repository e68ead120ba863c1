//! Existence of the maximum likelihood estimate for degree-sequence network
//! models.
//!
//! The crate decides whether the MLE exists for the generalized beta model
//! (binomial edge counts with node-specific propensities) and for the related
//! Rasch, Bradley-Terry, Poisson and Holland-Leinhardt p1 models, using the
//! geometry of the polytope of degree sequences and its lifting to a marginal
//! cone. When the MLE does not exist it identifies the facial set (the cells
//! whose probabilities remain estimable), computes the extended MLE on the
//! corresponding face, and certifies everything with exact rational linear
//! programming. Desk-scale facet and vertex enumeration plus Monte Carlo
//! existence experiments round out the toolkit.

pub mod asym;
pub mod design;
pub mod error;
pub mod estimation;
pub mod geometry;
mod linalg;
pub mod lp;
pub mod rat;
pub mod table;
pub mod zoo;

pub use error::{Error, Result};
pub use rat::Rat;
