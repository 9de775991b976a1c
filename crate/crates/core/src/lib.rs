//! Implicit time-stepping of sign-switching dynamical systems
//! `ẋ ∈ f(x, t) − g(x) Sgn(h(x))`, with one box-constrained MLCP solved per
//! step, plus sampled-data sliding-mode controllers and analysis helpers.
//!
//! Everything is generic over [`Scalar`] (`f32` or `f64`); the `*F64` aliases
//! below name the double-precision instantiations.

// `!(a > b)` is used on purpose so that NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod controllers;
pub mod error;
pub mod integrators;
pub mod mlcp;
pub mod scalar;
pub mod systems;

pub use error::{Error, Result};
pub use scalar::Scalar;

pub type LinearSignSystemF64 = systems::LinearSignSystem<f64>;
pub type AffineGainSignSystemF64 = systems::AffineGainSignSystem<f64>;
pub type NonlinearSignSystemF64 = systems::NonlinearSignSystem<f64>;
pub type DisturbedLinearSystemF64 = systems::DisturbedLinearSystem<f64>;
pub type MlcpProblemF64 = mlcp::MlcpProblem<f64>;
pub type MlcpSolutionF64 = mlcp::MlcpSolution<f64>;
pub type SchemeConfigF64 = integrators::SchemeConfig<f64>;
pub type TrajectoryF64 = integrators::Trajectory<f64>;
pub type ZohPairF64 = integrators::ZohPair<f64>;

pub type LinearSignSystemF32 = systems::LinearSignSystem<f32>;
pub type MlcpProblemF32 = mlcp::MlcpProblem<f32>;
pub type SchemeConfigF32 = integrators::SchemeConfig<f32>;
pub type TrajectoryF32 = integrators::Trajectory<f32>;
