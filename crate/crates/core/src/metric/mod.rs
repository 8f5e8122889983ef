//! Finite metric spaces: homogeneous ultrametric spaces realized as leveled
//! trees, and exact rigidity of planar point sets.

mod rigidity;
mod ultrametric;

pub use rigidity::{
    parse_planar_points, rigidity_check, verify_witness, PlanarPointSet, QuadraticCoord,
    RigidityVerdict, Witness, WitnessPoint,
};
pub use ultrametric::{
    epsilon_chain, ultrametric_space, verify_ultrametric_splittability, SplitEntry,
    UltrametricReport, UltrametricSpec, DEFAULT_LEAF_CAP,
};
