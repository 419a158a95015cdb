//! Exact finite constructions around the topological Tverberg problem.
//!
//! Deleted products of simplicial complexes with their symmetric-group
//! action, integer homology, exact Radon and Tverberg partitions, signed
//! r-fold points of PL maps, the equivariant null-cohomology test and the
//! Sylow arithmetic that decides when it can vanish.

pub mod complex;
pub mod convex;
pub mod deleted_product;
pub mod equivariant;
pub mod error;
pub mod homology;
pub mod io;
pub mod linalg;
pub mod lp;
pub mod pl_maps;
pub mod point;
pub mod random;
pub mod scalar;
pub mod sym_group;

pub use complex::{are_disjoint, boundary_chain, full_simplex, join, simplex_skeleton, Complex, OrientedSimplex, Simplex};
pub use error::{Error, Result};
pub use point::Point;
pub use scalar::{Field, RingInt};

pub type Rational = num_rational::BigRational;
pub type Integer = num_bigint::BigInt;
pub type RationalPoint = Point<Rational>;
pub type RationalMatrix = linalg::Matrix<Rational>;
