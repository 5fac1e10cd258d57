//! Points of the 0/1-cube, vertex sets, and the hyperoctahedral symmetries
//! acting on them.
//!
//! A point `x = (x1, ..., xd)` is stored as the integer whose binary numeral
//! is `x1 x2 ... xd`, so `x1` is the most significant of the `d` bits. With
//! this encoding, comparing two sorted vertex lists element by element is the
//! lexicographic order used to pick class representatives.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// A vertex of the 0/1-cube. The dimension is carried by the owning
/// [`Polytope`] or passed alongside.
pub type Point = u16;

pub const MAX_DIM: usize = 16;

pub fn check_dim(dim: usize) -> Result<()> {
    if (1..=MAX_DIM).contains(&dim) {
        Ok(())
    } else {
        Err(Error::UnsupportedDimension(dim))
    }
}

/// Number of points of `{0,1}^dim`.
#[inline]
pub fn cube_size(dim: usize) -> u32 {
    1u32 << dim
}

/// Encodes a coordinate vector, `coords[0]` being the most significant bit.
pub fn encode_point(coords: &[u8], dim: usize) -> Result<Point> {
    check_dim(dim)?;
    if coords.len() != dim {
        return Err(Error::CoordinateCount {
            expected: dim,
            found: coords.len(),
        });
    }
    let mut value: u32 = 0;
    for &c in coords {
        if c > 1 {
            return Err(Error::NonBinaryCoordinate(i64::from(c)));
        }
        value = (value << 1) | u32::from(c);
    }
    Ok(value as Point)
}

pub fn decode_point(point: Point, dim: usize) -> Vec<u8> {
    (0..dim)
        .map(|i| ((point >> (dim - 1 - i)) & 1) as u8)
        .collect()
}

/// Bit of coordinate `coord` (0-based, coordinate 0 is the most significant).
#[inline]
pub(crate) fn coord_bit(point: Point, coord: usize, dim: usize) -> u16 {
    (point >> (dim - 1 - coord)) & 1
}

/// A nonempty, strictly increasing list of cube points.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Polytope {
    dim: u8,
    vertices: Vec<Point>,
}

impl Polytope {
    pub fn new(dim: usize, vertices: Vec<Point>) -> Result<Self> {
        check_dim(dim)?;
        if vertices.is_empty() {
            return Err(Error::EmptyPolytope);
        }
        if !vertices.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::UnsortedVertices);
        }
        let limit = cube_size(dim);
        if let Some(&bad) = vertices.iter().find(|&&v| u32::from(v) >= limit) {
            return Err(Error::PointOutOfRange {
                value: u32::from(bad),
                dim,
            });
        }
        Ok(Self {
            dim: dim as u8,
            vertices,
        })
    }

    /// Sorts and deduplicates before validating.
    pub fn from_points(dim: usize, mut vertices: Vec<Point>) -> Result<Self> {
        vertices.sort_unstable();
        vertices.dedup();
        Self::new(dim, vertices)
    }

    /// Builds from coordinate rows (one row per vertex).
    pub fn from_coordinates<R: AsRef<[u8]>>(dim: usize, rows: &[R]) -> Result<Self> {
        let points = rows
            .iter()
            .map(|r| encode_point(r.as_ref(), dim))
            .collect::<Result<Vec<_>>>()?;
        Self::from_points(dim, points)
    }

    pub(crate) fn from_sorted_unchecked(dim: usize, vertices: Vec<Point>) -> Self {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(!vertices.is_empty());
        Self {
            dim: dim as u8,
            vertices,
        }
    }

    /// The single-point polytope `{0}`.
    pub fn origin(dim: usize) -> Result<Self> {
        Self::new(dim, vec![0])
    }

    #[inline]
    pub fn dim(&self) -> usize {
        usize::from(self.dim)
    }

    #[inline]
    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn into_vertices(self) -> Vec<Point> {
        self.vertices
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, point: Point) -> bool {
        self.vertices.binary_search(&point).is_ok()
    }

    pub fn index_of(&self, point: Point) -> Option<usize> {
        self.vertices.binary_search(&point).ok()
    }

    /// Returns `self ∪ {point}`.
    pub fn with_vertex(&self, point: Point) -> Result<Self> {
        if u32::from(point) >= cube_size(self.dim()) {
            return Err(Error::PointOutOfRange {
                value: u32::from(point),
                dim: self.dim(),
            });
        }
        match self.vertices.binary_search(&point) {
            Ok(_) => Err(Error::AlreadyAVertex(u32::from(point))),
            Err(pos) => {
                let mut v = Vec::with_capacity(self.vertices.len() + 1);
                v.extend_from_slice(&self.vertices[..pos]);
                v.push(point);
                v.extend_from_slice(&self.vertices[pos..]);
                Ok(Self::from_sorted_unchecked(self.dim(), v))
            }
        }
    }

    /// Returns `self \ {point}`; fails if the result would be empty.
    pub fn without_vertex(&self, point: Point) -> Result<Self> {
        let pos = self
            .vertices
            .binary_search(&point)
            .map_err(|_| Error::NotAVertex(u32::from(point)))?;
        if self.vertices.len() == 1 {
            return Err(Error::EmptyPolytope);
        }
        let mut v = self.vertices.clone();
        v.remove(pos);
        Ok(Self::from_sorted_unchecked(self.dim(), v))
    }

    /// Coordinate rows, one per vertex.
    pub fn coordinates(&self) -> Vec<Vec<u8>> {
        self.vertices
            .iter()
            .map(|&v| decode_point(v, self.dim()))
            .collect()
    }

    /// Applies `x -> x XOR mask` to every vertex.
    pub fn switched(&self, mask: Point) -> Self {
        let mut v: Vec<Point> = self.vertices.iter().map(|&x| x ^ mask).collect();
        v.sort_unstable();
        Self::from_sorted_unchecked(self.dim(), v)
    }
}

impl fmt::Display for Polytope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = if self.dim() <= 8 { 2 } else { 4 };
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v:0width$x}")?;
        }
        Ok(())
    }
}

/// Compares two polytopes of the same dimension by their sorted vertex lists.
pub fn lex_compare(p: &Polytope, q: &Polytope) -> Result<Ordering> {
    if p.dim() != q.dim() {
        return Err(Error::DimensionMismatch {
            expected: p.dim(),
            found: q.dim(),
        });
    }
    Ok(p.vertices.cmp(&q.vertices))
}

/// A symmetry of the 0/1-cube: switch the coordinates in `switch`, then send
/// source coordinate `i` to target position `perm[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CubeSymmetry {
    perm: Vec<u8>,
    switch: Point,
}

impl CubeSymmetry {
    pub fn new(perm: Vec<u8>, switch: Point) -> Result<Self> {
        let dim = perm.len();
        check_dim(dim)?;
        let mut seen = 0u32;
        for &t in &perm {
            if usize::from(t) >= dim || seen & (1 << t) != 0 {
                return Err(Error::InvalidArgument(format!(
                    "{perm:?} is not a permutation"
                )));
            }
            seen |= 1 << t;
        }
        if u32::from(switch) >= cube_size(dim) {
            return Err(Error::PointOutOfRange {
                value: u32::from(switch),
                dim,
            });
        }
        Ok(Self { perm, switch })
    }

    pub fn identity(dim: usize) -> Result<Self> {
        Self::new((0..dim as u8).collect(), 0)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[u8] {
        &self.perm
    }

    pub fn switch(&self) -> Point {
        self.switch
    }

    /// Moves bits only (no switching).
    fn permute_bits(&self, x: Point) -> Point {
        let d = self.dim();
        let mut out = 0;
        for (src, &target) in self.perm.iter().enumerate() {
            out |= coord_bit(x, src, d) << (d - 1 - usize::from(target));
        }
        out
    }

    #[inline]
    pub fn apply_point(&self, x: Point) -> Point {
        self.permute_bits(x ^ self.switch)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u8; self.dim()];
        for (src, &target) in self.perm.iter().enumerate() {
            inv[usize::from(target)] = src as u8;
        }
        Self {
            switch: self.permute_bits(self.switch),
            perm: inv,
        }
    }
}

pub fn apply_symmetry(p: &Polytope, g: &CubeSymmetry) -> Result<Polytope> {
    if p.dim() != g.dim() {
        return Err(Error::DimensionMismatch {
            expected: p.dim(),
            found: g.dim(),
        });
    }
    let mut v: Vec<Point> = p.vertices.iter().map(|&x| g.apply_point(x)).collect();
    v.sort_unstable();
    Ok(Polytope::from_sorted_unchecked(p.dim(), v))
}
