//! Kaleidoscopical configurations in finite G-spaces.
//!
//! A subset `A` of a G-space `X` is kaleidoscopical when `X` admits a
//! coloring with `|A|` colors that is bijective on every translate `gA`. This
//! crate decides and constructs such configurations and returns a
//! re-checkable certificate with every positive answer:
//!
//! - [`space`]: transitive permutation actions, set orbits, the lattice of
//!   invariant equivalence relations and group orders.
//! - [`transversal`]: kaleidoscopic colorings and transversal partitions.
//! - [`factorization`]: complements and periodicity in finite abelian groups,
//!   exhaustive Hajós-type checks and the Hajós–Sands classifier.
//! - [`splitting`]: splitting chains, relative position of a configuration to
//!   nested equivalences and the splitting construction.
//! - [`metric`]: homogeneous finite ultrametric spaces as leveled trees and
//!   exact rigidity of planar point sets.
//! - [`quasigroup`]: Latin squares, Ryser completion and kaleidoscopic
//!   subsets of quasigroups.
//!
//! The exhaustive sweeps take an [`Exec`] strategy; with the default
//! `parallel` feature they run on rayon, otherwise sequentially. Both paths
//! return identical, canonically ordered results.

pub mod config;
pub mod error;
pub mod factorization;
pub mod group;
pub mod metric;
pub mod par;
pub mod partition;
pub mod quasigroup;
pub mod rainbow;
pub mod space;
pub mod splitting;
pub mod transversal;

pub use config::Configuration;
pub use error::{Error, Result};
pub use group::{parse_group_spec, AbelianGroupSpec, GroupElement};
pub use par::Exec;
pub use partition::Partition;
pub use rainbow::{Coloring, Search, SearchReport};
pub use space::{cayley_space, congruences, set_orbit, GSpace};
