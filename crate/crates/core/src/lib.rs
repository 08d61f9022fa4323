//! Information gain, fidelity and efficiency of rank-`r` projective
//! measurements performed on a completely unknown pure state of a
//! `d`-level system.
//!
//! The crate is split into:
//!
//! * [`state`]: pure states, the hyperspherical-angle parametrization and
//!   Haar-uniform sampling.
//! * [`measurement`]: the scaled rank-`r` projector, outcome probabilities and
//!   state reduction.
//! * [`closed_form`]: analytic moments, information gain, mean fidelity,
//!   efficiency and the sine-power integral identities.
//! * [`quadrature`]: adaptive Gauss–Kronrod integration used as an oracle.
//! * [`estimator`]: Monte Carlo and hyperspherical-quadrature estimates that
//!   cross-check the closed forms.

#![allow(clippy::needless_range_loop)]

pub mod closed_form;
pub mod error;
pub mod estimator;
pub mod measurement;
pub mod quadrature;
pub mod state;

pub use closed_form::AnalyticReport;
pub use error::{Error, Result};
pub use estimator::{MomentEstimate, Quantity, VerificationRow};
pub use measurement::{OutcomeRecord, RankProjector};
pub use state::{HypersphericalAngles, PureState, SampleStream};
