//! Exact wall-and-chamber computations for tilt stability.
//!
//! The crate covers Picard-rank-one surfaces (walls, wall enumeration,
//! largest walls and nef divisors on Hilbert schemes of points), generic
//! Harder–Narasimhan polygons, and tilt stability on P³ including the
//! Castelnuovo genus-bound pipeline. Everything is exact rational arithmetic.

pub mod error;
pub mod hilbert;
pub mod hn;
pub mod lattice;
pub mod p3;
pub mod rational;
pub mod tilt;
pub mod walls;

pub use error::{Error, Result};
pub use hilbert::DivisorHilb;
pub use hn::{ChargeSpec, HnFactor, HnInput, HnResult, SubobjectModel};
pub use p3::{ChernP3, QuadraticNumber};
pub use lattice::{ChernSurface, DiscriminantReport, SurfaceData};
pub use rational::Rational;
pub use tilt::{SlopeValue, Wall, WallRelation};
pub use walls::WallCandidate;
