//! Branch-and-bound tree generation and post-hoc tree compression.

pub mod lp;
pub mod scalar;

pub use scalar::{ExtendedValue, Rational, Scalar, Tolerances};
pub mod fixtures;
pub mod instance;
pub mod tree;

pub use tree::{BbTree, Disjunction, NodeId};

/// Tree over exact rationals.
pub type ExactTree = BbTree<Rational>;
/// Tree over `f64`.
pub type FloatTree = BbTree<f64>;
pub mod branching;
pub mod clock;
pub mod compress;
pub mod ordering;
