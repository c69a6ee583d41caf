//! Circle packings of triangulations with boundary, vertex extremal length
//! of boundary and winding path families, and mated-CRT random maps.
//!
//! The crate is `no_std` (with `alloc`). Everything here is a pure function
//! of its inputs; file formats, reports and the command line live in the
//! `cpvel` companion crate.
//!
//! Module map:
//!
//! - [`planar`]: rotation-system planar maps, triangulation validation and the
//!   block / hole-filling / parallel-collapse pipeline.
//! - [`pack`]: maximal circle packing in the unit disk and disk-automorphism
//!   normalization.
//! - [`vel`]: vertex metrics, shortest-path separation oracles, the
//!   cutting-plane VEL solver, annulus lower bounds and certificate paths.
//! - [`crt`]: correlated Brownian traces, the mated-CRT adjacency sweep and
//!   window triangulations.
//! - [`generate`]: deterministic corpus generators (wheels, meshes, flips).

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod crt;
pub mod generate;
pub mod pack;
pub mod planar;
pub mod rng;
pub mod vel;

pub use crt::{CorrelatedTrace, EdgeSide, MatedCrtMap};
pub use pack::{Circle, Packing};
pub use planar::{PlanarMap, RootedTriangulation, Triangulation, ValidationReport};
pub use vel::{PathFamily, VelResult, VertexMetric};
