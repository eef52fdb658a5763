//! Invariant bookkeeping for torus surgery on rational surfaces.
//!
//! [`lattice`] decides the essential-torus obstruction in `<1> + b<-1>`;
//! [`manifold`] holds invariant records; [`surgery`] applies the torus
//! surgery rule table; [`seiberg_witten`] does formal SW arithmetic and the
//! gluing formula; [`pinwheel`] assembles cyclic sums; [`pipeline`] runs the
//! reverse-engineering plan end to end.

pub mod lattice;
pub mod manifold;
pub mod pinwheel;
pub mod pipeline;
pub mod seiberg_witten;
pub mod surgery;

pub use lattice::{HomClass, IntersectionLattice, LatticeError};
pub use manifold::{FourManifold, ManifoldError, PairingSign, SymplecticData};
pub use pipeline::{PipelineError, ReverseEngineeringPlan};
pub use seiberg_witten::{FormalClass, SwError, SwInvariant};
pub use surgery::{SurgeryError, TorusSurgerySpec};
