//! Occupation-time statistics of aged processes.
//!
//! * [`analytic`]: closed-form densities (propagator, first-passage and
//!   forward-recurrence densities, arcsine and Lamperti laws, atom masses).
//! * [`aging`]: quadrature for the aged arcsine and aged generalized arcsine
//!   laws, tabulated into [`TheoreticalCdf`]s.
//! * [`simulate`]: Brownian, renewal and intermittent-map samplers with
//!   per-trajectory RNG streams.
//! * [`stats`]: empirical distributions with atoms, KS distance and DKW bands.

pub mod aging;
pub mod analytic;
pub mod error;
pub mod io;
pub mod params;
pub mod quadrature;
pub mod simulate;
pub mod stats;

pub use aging::{Law, TheoreticalCdf};
pub use error::{Error, Result};
pub use params::{AgingRatio, AsymmetryParams, MapParams, TailIndex};
pub use quadrature::QuadratureConfig;
