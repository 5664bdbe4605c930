//! Randomized computation of row means of `N1 × N2` arrays
//! (discrete parametric integration) with exact oracle-call accounting.
//!
//! The crate provides the normed spaces and the solution operator
//! ([`tensor_space`]), reproducible random streams ([`rng`]), non-adaptive and
//! adaptive Monte Carlo estimators ([`estimators`]), adversarial input
//! distributions ([`instances`]) and an experiment harness ([`harness`]).

pub mod error;
pub mod estimators;
pub mod exponent;
pub mod harness;
pub mod instances;
pub mod rng;
pub mod summation;
pub mod tensor_space;

pub use error::{Error, Result};
pub use estimators::{AdaptiveConfig, AlgoKind, Algorithm, BudgetAudit, MeanEstimate};
pub use exponent::{Exponent, ExponentPair};
pub use instances::{HardFamily, InstanceFamily, InstanceSource, InstanceSpec};
pub use rng::{SeedSpec, Stream};
pub use tensor_space::DiscreteFunction;
