//! Enumeration and combinatorial classification of 2-neighborly
//! 0/1-polytopes.
//!
//! Polytopes are handled through their vertex sets, subsets of `{0,1}^d`
//! encoded as integers. Classes under the symmetries of the cube are
//! represented by their lexicographically smallest member ([`canon`]).
//! Levels of representatives are grown one vertex at a time
//! ([`pipeline`]), with adjacency decided exactly ([`adjacency`],
//! [`ratlin`]). Full-dimensional classes are then described by their
//! facets ([`hull`]), face lattice ([`lattice`]) and a canonical form of
//! their facet-vertex incidence matrix ([`combclass`]).

pub mod adjacency;
pub mod canon;
pub mod combclass;
pub mod cube;
pub mod error;
pub mod gale;
pub mod hull;
pub mod lattice;
pub mod levelfile;
pub mod pipeline;
pub mod ratlin;
pub mod special;

pub use cube::{
    apply_symmetry, decode_point, encode_point, lex_compare, CubeSymmetry, Point, Polytope,
};
pub use error::{Error, Result};
