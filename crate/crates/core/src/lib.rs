//! Discrete-time quantum walks on the line: exact position distributions,
//! Tsallis and Rényi entropies (plus five conditional Rényi variants) and
//! the limits these entropies approach as the walk runs.
//!
//! The numerical modules are generic over [`Real`] (`f32` or `f64`); the
//! aliases below fix the scalar to `f64`, which is what the tolerances in
//! the tests and the command-line tool assume.
//!
//! ```
//! use dtqw::{named_coin, run, renyi, Order, QubitState};
//!
//! let coin = named_coin("hadamard").unwrap();
//! let dist = run(&coin, &QubitState::symmetric(), 100);
//! let r = renyi(&dist, Order::Finite(0.5));
//! assert!(r > 5.0 && r < 7.0);
//! ```

// NaN must fail range checks, so `!(x >= lo)` is used on purpose
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod closedform;
pub mod coin;
pub mod complex;
pub mod convergence;
pub mod entropy;
pub mod error;
pub mod evolve;
pub mod limitdist;
pub mod quadrature;
pub mod sample;
pub mod scalar;
pub mod scaled;

#[doc(hidden)]
pub mod cli;

pub use closedform::{
    closed_distribution, hypergeom2f1_poly, jacobi, jacobi_hypergeometric, prob_at, prob_extremes, sum_identity_check,
    SumIdentity,
};
pub use coin::{decompose, make_coin, make_state, named_coin, parse_state};
pub use complex::parse_complex;
pub use entropy::{conditional_renyi, conditional_renyi_direct, renyi, tsallis, tsallis_from_renyi, Order, Variant};
pub use error::{Error, Result};
pub use evolve::{initial_field, run, step};
pub use limitdist::{
    conditional_renyi_limit, density_at, integral_falpha, make_limit_density, renyi_limit, tsallis_limit_const,
};
pub use scalar::Real;

pub type Coin = coin::Coin<f64>;
pub type QubitState = coin::QubitState<f64>;
pub type CoinDecomposition = coin::CoinDecomposition<f64>;
pub type AmplitudeField = evolve::AmplitudeField<f64>;
pub type Distribution = evolve::Distribution<f64>;
pub type EnsemblePrior = entropy::EnsemblePrior<f64>;
pub type LimitDensity = limitdist::LimitDensity<f64>;
pub type ScaledReal = scaled::ScaledReal<f64>;
pub type JacobiEval = closedform::JacobiEval<f64>;
