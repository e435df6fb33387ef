//! Exact-arithmetic instances of the construction.

pub mod affine_lattice;
pub mod dyadic;
pub mod power_affine;
pub mod tower;

pub use affine_lattice::{AffineLattice, AffineLatticeMap, LatticePoint, RationalVector};
pub use dyadic::{DyadicStepMap, DyadicStepValue, DyadicSteps, StepFunction};
pub use power_affine::{PowerAffine, PowerAffineMap, RootValue};
pub use tower::{Tower, TowerConfig, TowerMap, TowerPoint, TowerValue};
