//! Isomorphism-class census of genus-6 curves over F_2.
//!
//! The census is assembled stratum by stratum: hyperelliptic, bielliptic,
//! smooth plane quintics, trigonal curves of Maroni invariant 0 and 2, and the
//! Brill–Noether-general curves cut on quintic del Pezzo surfaces. Each stratum
//! produces one [`census::CurveRecord`] per isomorphism class.

pub mod binfield;
pub mod census;
pub mod error;
pub mod groupact;
pub mod linalg;
pub mod orbitree;
pub mod polyform;
pub mod smoothcert;
pub mod strata;
pub mod weilzeta;

pub use error::{CensusError, Result};
