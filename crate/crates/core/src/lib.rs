//! Incompressible flow around a shrinking slit: conformal maps, Biot-Savart
//! assembly in the slit exterior and in the plane, vortex-particle transport,
//! cutoff functions and power-law fitting.
//!
//! The crate is `no_std` and needs only `alloc`.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod biotsavart;
pub mod complexplane;
pub mod conformal;
pub mod cutoff;
pub mod error;
pub mod rate;
pub mod transport;

pub use biotsavart::{ExteriorField, ExteriorModel, LimitField, LimitModel, VortexParticleSet};
pub use complexplane::CPoint;
pub use conformal::{ExteriorMap, MapJet, ScaledSlitMap, SlitMap, ThickenedMap};
pub use error::{Error, Result};
pub use rate::{fit_loglog, RateFit};
pub use transport::{ConservationReport, TransportState, VelocityModel, VorticityPreset};
