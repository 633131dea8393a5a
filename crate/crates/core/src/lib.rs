//! Exact solutions of the two-dimensional stationary continuity equation whose
//! density is a generalized Maxwell distribution of the flow speed.
//!
//! The crate builds the solutions in momentum space, where the problem is
//! linear ([`momentum`]), maps them to coordinate space through the inverse
//! Legendre transform ([`mapper`]), derives the quantum and classical
//! potentials ([`potentials`]) and checks every closed form against
//! independent numerical oracles ([`verifier`]).
//!
//! Everything numeric is generic over [`Scalar`] (`f32` or `f64`); the
//! `*F64` aliases below fix the usual double-precision instantiation.

// `!(x > 0)` is used on purpose so NaN lands in the rejecting branch.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod mapper;
pub mod maxwell;
pub mod momentum;
pub mod potentials;
pub mod scalar;
pub mod specfun;
pub mod verifier;

pub use error::{Error, Result};
pub use scalar::Scalar;

pub type ModelParamsF64 = maxwell::ModelParams<f64>;
pub type ModelParamsF32 = maxwell::ModelParams<f32>;
pub type RadialSolutionF64 = momentum::RadialSolution<f64>;
pub type AngularFactorF64 = momentum::AngularFactor<f64>;
pub type SectorDomainF64 = mapper::SectorDomain<f64>;
pub type MapPointF64 = mapper::MapPoint<f64>;
pub type FieldSampleF64 = mapper::FieldSample<f64>;
pub type PsiModelF64 = potentials::PsiModel<f64>;
pub type SeriesControlF64 = specfun::SeriesControl<f64>;
