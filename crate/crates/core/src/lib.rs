//! Symbolic and numeric tools for the braid groups of the projective plane.
//!
//! The crate mechanizes the computable side of the splitting problem for the
//! generalized Fadell–Neuwirth sequence over the projective plane:
//!
//! - [`word`]: words over the named generator families, free reduction,
//!   substitution, exponent counts;
//! - [`catalog`]: the presentations of the braid groups and of the kernels
//!   of the strand-forgetting maps, as data;
//! - [`intlinear`]: exact Smith/Hermite normal forms, abelianizations,
//!   lattice intersections;
//! - [`class2`]: class-2 nilpotent quotients of the lower central series;
//! - [`models`]: dicyclic/quaternion normal forms, strand forgetting, and
//!   the section checks for one and two base strands;
//! - [`splitting`]: the symbolic splitting obstruction and the congruences
//!   it forces on the fiber strand count;
//! - [`geometry`]: numeric construction of the two geometric cross-sections;
//! - [`selftest`]: the acceptance suite shared by tests and the CLI.

pub mod catalog;
pub mod class2;
pub mod geometry;
pub mod intlinear;
pub mod models;
pub mod selftest;
pub mod splitting;
pub mod word;

pub use catalog::{build, Family, Presentation};
pub use intlinear::{abelianization, AbelianStructure, IntMat};
pub use word::{Generator, Word};
