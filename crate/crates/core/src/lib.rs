//! Seeded communication simulation on organizational network topologies.
//!
//! The crate is organised bottom-up:
//!
//! - [`netgen`] builds the benchmark topologies (star, tree, tree with
//!   jumper edges, Watts-Strogatz, Barabási-Albert, hypercube) and computes
//!   their graph features and degree histograms.
//! - [`commsim`] runs the stochastic generation / diffusion / disappearance
//!   model and yields the information-set time series `Q(0..t_max)`.
//! - [`msm`] turns a series into per-step change statistics and aggregates
//!   them into the mixbiotic society measures.
//! - [`trajectory`] embeds a series into polar coordinates.
//! - [`experiment`] runs repetitions and cross-network comparisons.
//!
//! Every random choice flows through an explicit [`rng::SimRng`] so that a
//! result is fully determined by its inputs and seed.

pub mod commsim;
pub mod error;
pub mod experiment;
pub mod fmt;
pub mod msm;
pub mod netgen;
pub mod rng;
pub mod specfile;
pub mod svg;
pub mod trajectory;

pub use error::{Error, Result};
