//! Exact truncated-series arithmetic for the tropical vertex group,
//! ordered-product factorization of commutators into wall automorphisms,
//! and the invariants and permissibility combinatorics attached to the walls.

pub mod analysis;
pub mod error;
pub mod permissible;
pub mod scatter;
pub mod series;
pub mod vertex;

pub use analysis::{DimensionVector, EulerSeries, Framing, GWCoefficients};
pub use error::{Error, Result};
pub use permissible::{Classification, OrderedPartitionPair, QuadraticData};
pub use scatter::{
    commutator, factorize, ordered_product, verify_factorization, Generators, ScatteringDiagram,
};
pub use series::{Monomial, Rational, Series, UniSeries};
pub use vertex::{Direction, VertexAutomorphism, Wall};
