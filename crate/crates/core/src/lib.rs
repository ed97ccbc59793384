//! Zitterbewegung of two-component dark-state atomic wave packets.
//!
//! Three laser beams couple three ground states to a common excited state
//! (tripod scheme). The two dark states see a non-Abelian vector potential
//! and obey, in one dimension, an effective Dirac-like equation. This crate
//! builds the gauge potentials, evolves Gaussian packets exactly in momentum
//! space and extracts the centre of mass and the dark-state populations,
//! together with the closed-form oracles they are checked against.
//!
//! ```
//! use zitter::{analytic::{drift_rederived, zitter_term_rederived}, evolve::{propagate, Limit},
//!              grid::KGrid, observables::centre_of_mass, params::DimensionlessParams,
//!              spinor::{sample_gaussian, GaussianSpec}};
//!
//! let p = DimensionlessParams::with_gap(1.0);
//! let spec = GaussianSpec::equal_superposition(0.0, 0.1).unwrap();
//! let psi0 = sample_gaussian(&spec, &KGrid::standard()).unwrap();
//! let psi = propagate(&psi0, 2.0, &p, Limit::Full).unwrap();
//! assert!((psi.norm() - 1.0).abs() < 1e-12);
//! let x = centre_of_mass(&psi).unwrap();
//! let model = drift_rederived(2.0, &p, 0.1).unwrap().x_d + zitter_term_rederived(2.0, &p, 0.1).unwrap().x_z;
//! assert!((x - model).abs() < 1e-2);
//! ```

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analytic;
pub mod error;
pub mod evolve;
pub mod grid;
pub mod observables;
pub mod params;
pub mod signal;
pub mod spinor;
pub mod su2;
pub mod tripod;
pub mod twolevel;

pub use error::{Error, Result};
