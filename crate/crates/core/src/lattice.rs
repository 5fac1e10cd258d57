//! Face lattices from facet-vertex incidences.
//!
//! Faces are built top-down. The facets of a face F are the
//! inclusion-maximal sets among the nonempty proper intersections of F with
//! facet rows, so each level of the lattice follows from the one above.
//! Vertex sets fit in one `u32`, so each intersection is a single AND.
//! Face dimensions are affine ranks; the f-vector alone is read off the
//! level sizes.

use std::fmt;

use crate::cube::Polytope;
use crate::error::{Error, Result};
use crate::hull::IncidenceMatrix;
use crate::ratlin::affine_rank_unchecked;

pub const MAX_LATTICE_VERTICES: usize = 32;

/// A set of facet indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FacetSet {
    words: Vec<u64>,
}

impl FacetSet {
    fn empty(k: usize) -> Self {
        Self {
            words: vec![0; k.div_ceil(64).max(1)],
        }
    }

    fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn contains(&self, i: usize) -> bool {
        self.words
            .get(i / 64)
            .is_some_and(|w| w >> (i % 64) & 1 == 1)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            (0..64)
                .filter(move |b| w >> b & 1 == 1)
                .map(move |b| wi * 64 + b)
        })
    }
}

/// A nonempty face: its vertices, the facets containing it, and its
/// dimension.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Face {
    pub vertex_set: u32,
    pub facet_set: FacetSet,
    pub dim: usize,
}

/// `(f_0, ..., f_{d-1})`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FVector(pub Vec<u64>);

impl FVector {
    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// `Σ (-1)^i f_i`, which equals `1 - (-1)^d` for any d-polytope.
    pub fn euler_characteristic(&self) -> i64 {
        self.0
            .iter()
            .enumerate()
            .map(|(i, &f)| if i % 2 == 0 { f as i64 } else { -(f as i64) })
            .sum()
    }

    pub fn satisfies_euler(&self) -> bool {
        let d = self.dim() as u32;
        self.euler_characteristic() == 1 - (-1i64).pow(d)
    }

    /// `f0,f1,...` without spaces.
    pub fn to_csv(&self) -> String {
        self.0
            .iter()
            .map(|f| f.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn parse_csv(s: &str) -> Option<Self> {
        s.split(',')
            .map(|t| t.trim().parse().ok())
            .collect::<Option<Vec<u64>>>()
            .map(FVector)
    }
}

impl fmt::Display for FVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

fn check_inputs(m: &IncidenceMatrix, x: &Polytope) -> Result<()> {
    let n = m.num_vertices();
    if n > MAX_LATTICE_VERTICES {
        return Err(Error::TooManyVertices(n, MAX_LATTICE_VERTICES));
    }
    if n != x.len() {
        return Err(Error::InvalidArgument(format!(
            "incidence matrix has {n} columns but the polytope has {} vertices",
            x.len()
        )));
    }
    if m.num_facets() == 0 {
        return Err(Error::InvalidArgument(
            "incidence matrix has no rows".into(),
        ));
    }
    if let Some(i) = m.rows().iter().position(|&r| r == 0) {
        return Err(Error::InvalidArgument(format!("facet {i} has no vertices")));
    }
    Ok(())
}

/// Facets of the face `f`, appended to `out` in no particular order.
fn subfaces(f: u32, rows: &[u32], out: &mut Vec<u32>) {
    let start = out.len();
    for &r in rows {
        let g = f & r;
        if g == f || g == 0 || out[start..].iter().any(|&h| h & g == g) {
            continue;
        }
        let mut i = start;
        while i < out.len() {
            if out[i] & g == out[i] {
                out.swap_remove(i);
            } else {
                i += 1;
            }
        }
        out.push(g);
    }
}

/// Vertex sets of the nonempty faces grouped by codimension, each level
/// sorted; `levels[0]` holds only `full`.
fn face_levels(rows: &[u32], full: u32) -> Vec<Vec<u32>> {
    let mut levels = vec![vec![full]];
    loop {
        let mut next = Vec::new();
        for &f in levels.last().unwrap() {
            subfaces(f, rows, &mut next);
        }
        if next.is_empty() {
            return levels;
        }
        next.sort_unstable();
        next.dedup();
        levels.push(next);
    }
}

fn prepared(m: &IncidenceMatrix, x: &Polytope) -> Result<(Vec<u32>, u32)> {
    check_inputs(m, x)?;
    let n = m.num_vertices();
    let rows = m.rows().iter().map(|&r| r as u32).collect();
    let full = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    Ok((rows, full))
}

/// All nonempty faces including the polytope itself, ordered by dimension
/// and then by vertex set.
pub fn enumerate_faces(m: &IncidenceMatrix, x: &Polytope) -> Result<Vec<Face>> {
    let (rows, full) = prepared(m, x)?;
    let k = rows.len();
    let verts = x.vertices();
    let mut pts = Vec::with_capacity(verts.len());
    let mut faces: Vec<Face> = face_levels(&rows, full)
        .into_iter()
        .flatten()
        .map(|vs| {
            let mut facet_set = FacetSet::empty(k);
            for (i, &r) in rows.iter().enumerate() {
                if r & vs == vs {
                    facet_set.insert(i);
                }
            }
            pts.clear();
            pts.extend(
                (0..verts.len())
                    .filter(|j| vs >> j & 1 == 1)
                    .map(|j| verts[j]),
            );
            Face {
                vertex_set: vs,
                facet_set,
                dim: affine_rank_unchecked(&pts, pts[0], x.dim()),
            }
        })
        .collect();
    faces.sort_by(|a, b| a.dim.cmp(&b.dim).then(a.vertex_set.cmp(&b.vertex_set)));
    Ok(faces)
}

/// Counts faces by dimension `0..d`, where `d` is the dimension of the
/// polytope (the largest face).
pub fn f_vector_from_faces(faces: &[Face]) -> FVector {
    let d = faces.iter().map(|f| f.dim).max().unwrap_or(0);
    let mut f = vec![0u64; d];
    for face in faces {
        if face.dim < d {
            f[face.dim] += 1;
        }
    }
    FVector(f)
}

pub fn f_vector(m: &IncidenceMatrix, x: &Polytope) -> Result<FVector> {
    let (rows, full) = prepared(m, x)?;
    let levels = face_levels(&rows, full);
    Ok(FVector(
        levels[1..].iter().rev().map(|l| l.len() as u64).collect(),
    ))
}

/// Every `(d-3)`-face lies on exactly three facets.
pub fn is_2simple(faces: &[Face], d: usize) -> Result<bool> {
    if d < 3 {
        return Err(Error::InvalidArgument(format!(
            "2-simplicity needs dimension at least 3, got {d}"
        )));
    }
    Ok(faces
        .iter()
        .filter(|f| f.dim == d - 3)
        .all(|f| f.facet_set.len() == 3))
}

/// Atom/coatom incidences of the interval above vertex `v`: rows are the
/// facets through `v` in facet order, columns the edges through `v` ordered
/// by vertex set.
pub fn vertex_figure_incidence(faces: &[Face], v: usize) -> Result<IncidenceMatrix> {
    let d = faces.iter().map(|f| f.dim).max().unwrap_or(0);
    if v >= MAX_LATTICE_VERTICES || !faces.iter().any(|f| f.dim == 0 && f.vertex_set == 1 << v) {
        return Err(Error::InvalidVertexIndex(v));
    }
    if d < 2 {
        return Err(Error::InvalidArgument(
            "vertex figures need dimension at least 2".into(),
        ));
    }
    let bit = 1u32 << v;
    let mut edges: Vec<u32> = faces
        .iter()
        .filter(|f| f.dim == 1 && f.vertex_set & bit != 0)
        .map(|f| f.vertex_set)
        .collect();
    edges.sort_unstable();
    let mut facets: Vec<(usize, u32)> = faces
        .iter()
        .filter(|f| f.dim + 1 == d && f.vertex_set & bit != 0)
        .map(|f| {
            (
                f.facet_set.iter().next().unwrap_or(usize::MAX),
                f.vertex_set,
            )
        })
        .collect();
    facets.sort_unstable();
    let rows = facets
        .iter()
        .map(|&(_, fv)| {
            edges
                .iter()
                .enumerate()
                .filter(|&(_, &e)| e & fv == e)
                .fold(0u128, |acc, (j, _)| acc | 1 << j)
        })
        .collect();
    IncidenceMatrix::new(edges.len(), rows)
}
