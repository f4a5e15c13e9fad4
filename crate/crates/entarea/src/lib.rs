//! Entanglement measures for harmonic lattice ground states.
//!
//! `entarea` computes the entanglement entropy and logarithmic negativity of
//! hypercubic regions in the ground state of a `d`-dimensional harmonic
//! lattice with periodic boundary conditions, and certifies the analytical
//! bounds that pin both measures between multiples of the region's surface
//! area `m^{d-1}`.
//!
//! The potential matrix is block circulant, so everything runs through its
//! symbol: fractional powers are pointwise, matrix elements come from the
//! inverse transform, and dense work is confined to the region blocks that
//! the entanglement measures actually need.
//!
//! Quick tour:
//!
//! ```
//! use entarea::lattice::{LatticeSpec, Model, Region};
//! use entarea::circulant::build_potential;
//! use entarea::gaussian::{ground_covariance, region_entropy, log_negativity};
//!
//! let spec = LatticeSpec::new(1, 32, 0.2, Model::NearestNeighbor).unwrap();
//! let v = build_potential(&spec).unwrap();
//! let gamma = ground_covariance(&v).unwrap();
//! let region = Region::at_origin(&spec, 6).unwrap();
//!
//! let s = region_entropy(&gamma, &region).unwrap();
//! let en = log_negativity(&v, &region).unwrap();
//! assert!(0.0 < s && s <= en);
//! ```
//!
//! The runnable examples under `examples/` walk through each capability:
//! single-point measures, the bound chain, decay envelopes, the area-law
//! fit, the squared-interaction model, and convergence in the lattice size.

pub mod bounds;
pub mod circulant;
pub mod error;
pub mod gaussian;
pub mod harness;
pub mod lattice;
pub mod squared;

pub use error::{Error, Result};
pub use lattice::{LatticeSpec, Model, Region};
