//! Named polytopes used as fixtures by tests, the CLI and the bindings.

use crate::cube::Polytope;

/// Coordinates of the 2-neighborly 7-polytope with 14 vertices and
/// 16 facets. It is 2-simple and all of its vertex figures are
/// combinatorially equivalent.
pub const P14_16_COORDS: [[u8; 7]; 14] = [
    [0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 1],
    [0, 0, 0, 0, 0, 1, 0],
    [0, 0, 0, 0, 1, 0, 0],
    [0, 0, 0, 1, 0, 0, 0],
    [0, 0, 1, 0, 0, 0, 0],
    [0, 1, 0, 0, 0, 0, 0],
    [1, 0, 0, 0, 0, 1, 1],
    [1, 0, 0, 1, 1, 0, 0],
    [1, 0, 1, 0, 1, 0, 1],
    [1, 0, 1, 1, 0, 1, 0],
    [1, 1, 0, 0, 1, 1, 0],
    [1, 1, 0, 1, 0, 0, 1],
    [1, 1, 1, 0, 0, 0, 0],
];

pub fn p14_16() -> Polytope {
    Polytope::from_coordinates(7, &P14_16_COORDS).expect("valid fixture")
}

/// `{0, e_1, ..., e_d}`.
pub fn standard_simplex(dim: usize) -> Polytope {
    let mut v = vec![0u16];
    v.extend((0..dim).map(|i| 1u16 << i));
    Polytope::from_points(dim, v).expect("valid simplex")
}

/// All `2^d` points of the cube.
pub fn full_cube(dim: usize) -> Polytope {
    Polytope::from_points(dim, (0..(1u16 << dim)).collect()).expect("valid cube")
}
