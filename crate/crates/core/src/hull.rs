//! Facets of full-dimensional 0/1-polytopes and their facet-vertex incidence
//! matrices.
//!
//! Facets are computed by beneath-beyond insertion in exact integer
//! arithmetic. Starting from a simplex, each new point `p` keeps the facets
//! it lies beneath, extends the ones whose hyperplane contains it, and adds
//! `conv(R ∪ {p})` for every ridge `R` between a facet it lies beyond and one
//! it lies beneath. Points lying in many common hyperplanes are the norm for
//! 0/1 input, so facets carry their full set of tight points rather than
//! assuming simpliciality.

use std::fmt;

use crate::cube::Polytope;
use crate::cube::MAX_DIM;
use crate::error::{Error, Result};
use crate::ratlin::coordinates_i64;

/// Maximum number of vertices the hull and incidence routines accept.
pub const MAX_VERTICES: usize = 128;

/// The inequality `a·x <= b`, primitive (gcd 1) and valid for every vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FacetInequality {
    pub a: Vec<i64>,
    pub b: i64,
}

impl FacetInequality {
    pub fn slack(&self, x: &[i64]) -> i64 {
        self.b - dot(&self.a, x)
    }
}

impl fmt::Display for FacetInequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, a) in self.a.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, " ≤ {}", self.b)
    }
}

/// Facet × vertex 0/1 matrix; bit `j` of row `i` is set iff vertex `j`
/// lies on facet `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IncidenceMatrix {
    num_vertices: usize,
    rows: Vec<u128>,
}

impl IncidenceMatrix {
    pub fn new(num_vertices: usize, rows: Vec<u128>) -> Result<Self> {
        if num_vertices > MAX_VERTICES {
            return Err(Error::TooManyVertices(num_vertices, MAX_VERTICES));
        }
        let mask = column_mask(num_vertices);
        if rows.iter().any(|r| r & !mask != 0) {
            return Err(Error::InvalidArgument(format!(
                "row has bits beyond column {num_vertices}"
            )));
        }
        Ok(Self { num_vertices, rows })
    }

    pub fn from_bits<R: AsRef<[u8]>>(rows: &[R]) -> Result<Self> {
        let n = rows.first().map_or(0, |r| r.as_ref().len());
        let mut packed = Vec::with_capacity(rows.len());
        for r in rows {
            let r = r.as_ref();
            if r.len() != n {
                return Err(Error::InvalidArgument("ragged incidence rows".into()));
            }
            let mut word = 0u128;
            for (j, &b) in r.iter().enumerate() {
                match b {
                    0 => {}
                    1 => word |= 1 << j,
                    other => return Err(Error::NonBinaryCoordinate(i64::from(other))),
                }
            }
            packed.push(word);
        }
        Self::new(n, packed)
    }

    pub fn num_facets(&self) -> usize {
        self.rows.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn rows(&self) -> &[u128] {
        &self.rows
    }

    pub fn get(&self, facet: usize, vertex: usize) -> bool {
        self.rows[facet] >> vertex & 1 == 1
    }

    /// Facets containing vertex `j`, as a bitset over rows.
    pub fn column(&self, j: usize) -> Vec<bool> {
        self.rows.iter().map(|r| r >> j & 1 == 1).collect()
    }

    pub fn column_sums(&self) -> Vec<usize> {
        (0..self.num_vertices)
            .map(|j| self.rows.iter().filter(|&&r| r >> j & 1 == 1).count())
            .collect()
    }

    pub fn row_sums(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.count_ones() as usize).collect()
    }
}

impl fmt::Display for IncidenceMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rows {
            for j in 0..self.num_vertices {
                f.write_str(if r >> j & 1 == 1 { "1" } else { "0" })?;
            }
            f.write_str("\n")?;
        }
        Ok(())
    }
}

#[inline]
pub(crate) fn column_mask(n: usize) -> u128 {
    if n >= 128 {
        u128::MAX
    } else {
        (1u128 << n) - 1
    }
}

#[inline]
fn dot(a: &[i64], x: &[i64]) -> i64 {
    a.iter().zip(x).map(|(a, x)| a * x).sum()
}

fn bits(mask: u128) -> impl Iterator<Item = usize> {
    let mut m = mask;
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(i)
        }
    })
}

// Vectors live in fixed arrays; only the first `dim` entries are used.
// Every matrix reduced below has entries in {-1, 0, 1}, so Bareiss
// intermediates are minors bounded by k^(k/2) <= 15^7.5 and products of two
// of them stay below 2^63.
type Vector = [i64; MAX_DIM];

/// Determinant of the leading `n x n` block (Bareiss elimination).
fn det(m: &mut [Vector; MAX_DIM], n: usize) -> i64 {
    let mut sign = 1;
    let mut prev = 1i64;
    for k in 0..n {
        if m[k][k] == 0 {
            let Some(s) = (k + 1..n).find(|&i| m[i][k] != 0) else {
                return 0;
            };
            m.swap(k, s);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]) / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    if n == 0 {
        1
    } else {
        sign * m[n - 1][n - 1]
    }
}

/// Fraction-free row echelon form used for independence tests.
struct SmallEchelon {
    rows: [Vector; MAX_DIM],
    pivots: [usize; MAX_DIM],
    rank: usize,
    dim: usize,
}

impl SmallEchelon {
    fn new(dim: usize) -> Self {
        Self {
            rows: [[0; MAX_DIM]; MAX_DIM],
            pivots: [0; MAX_DIM],
            rank: 0,
            dim,
        }
    }

    fn add(&mut self, v: &Vector) -> bool {
        let d = self.dim;
        let mut v = *v;
        for r in 0..self.rank {
            let col = self.pivots[r];
            let c = v[col];
            if c == 0 {
                continue;
            }
            let row = &self.rows[r];
            let p = row[col];
            let g = gcd(p, c);
            let (mp, mc) = (p / g, c / g);
            for j in 0..d {
                v[j] = v[j] * mp - row[j] * mc;
            }
            let g = v[..d].iter().fold(0, |g, &x| gcd(g, x));
            if g > 1 {
                v[..d].iter_mut().for_each(|x| *x /= g);
            }
        }
        match v[..d].iter().position(|&x| x != 0) {
            None => false,
            Some(col) => {
                self.rows[self.rank] = v;
                self.pivots[self.rank] = col;
                self.rank += 1;
                true
            }
        }
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Primitive normal of the hyperplane spanned by `dim - 1` independent
/// rows, by cofactor expansion.
fn cofactor_normal(rows: &[Vector; MAX_DIM], dim: usize) -> Vector {
    let mut normal = [0i64; MAX_DIM];
    let mut minor = [[0i64; MAX_DIM]; MAX_DIM];
    for (skip, entry) in normal.iter_mut().enumerate().take(dim) {
        for (i, row) in rows.iter().take(dim - 1).enumerate() {
            let mut k = 0;
            for (j, &x) in row.iter().take(dim).enumerate() {
                if j != skip {
                    minor[i][k] = x;
                    k += 1;
                }
            }
        }
        let det = det(&mut minor, dim - 1);
        *entry = if skip % 2 == 0 { det } else { -det };
    }
    let g = normal[..dim].iter().fold(0, |g, &x| gcd(g, x));
    if g > 1 {
        normal[..dim].iter_mut().for_each(|x| *x /= g);
    }
    normal
}

struct WorkFacet {
    normal: Vector,
    offset: i64,
    tight: u128,
}

struct Hull<'a> {
    dim: usize,
    pts: &'a [Vector],
}

impl Hull<'_> {
    fn diff(&self, i: usize, base: usize) -> Vector {
        let mut v = [0i64; MAX_DIM];
        for (j, x) in v.iter_mut().enumerate().take(self.dim) {
            *x = self.pts[i][j] - self.pts[base][j];
        }
        v
    }

    fn dot(&self, normal: &Vector, i: usize) -> i64 {
        dot(&normal[..self.dim], &self.pts[i][..self.dim])
    }

    /// Affine rank of the points in `mask`, stopping once `cap` is reached.
    fn rank_at_least(&self, mask: u128, cap: usize) -> bool {
        let mut it = bits(mask);
        let Some(base) = it.next() else {
            return cap == 0;
        };
        if cap == 0 {
            return true;
        }
        let mut e = SmallEchelon::new(self.dim);
        for i in it {
            if e.add(&self.diff(i, base)) && e.rank >= cap {
                return true;
            }
        }
        false
    }

    /// Hyperplane through `apex` and the points of `mask`, oriented so that
    /// every point in `inserted` lies on its nonpositive side.
    fn hyperplane(&self, mask: u128, apex: usize, inserted: u128) -> WorkFacet {
        let mut e = SmallEchelon::new(self.dim);
        let mut rows = [[0i64; MAX_DIM]; MAX_DIM];
        let mut found = 0;
        for i in bits(mask) {
            if i == apex {
                continue;
            }
            let d = self.diff(i, apex);
            if e.add(&d) {
                rows[found] = d;
                found += 1;
                if found == self.dim - 1 {
                    break;
                }
            }
        }
        debug_assert_eq!(found, self.dim - 1);
        let mut normal = cofactor_normal(&rows, self.dim);
        let mut offset = self.dot(&normal, apex);
        let flip = bits(inserted).any(|i| self.dot(&normal, i) > offset);
        if flip {
            normal.iter_mut().for_each(|x| *x = -*x);
            offset = -offset;
        }
        let tight = bits(inserted | 1 << apex)
            .filter(|&i| self.dot(&normal, i) == offset)
            .fold(0u128, |m, i| m | 1 << i);
        WorkFacet {
            normal,
            offset,
            tight,
        }
    }

    fn run(&self) -> Result<Vec<WorkFacet>> {
        let n = self.pts.len();
        let d = self.dim;
        let mut simplex = vec![0usize];
        let mut e = SmallEchelon::new(d);
        for i in 1..n {
            if simplex.len() == d + 1 {
                break;
            }
            if e.add(&self.diff(i, 0)) {
                simplex.push(i);
            }
        }
        if simplex.len() < d + 1 {
            return Err(Error::NotFullDimensional {
                rank: simplex.len() - 1,
                dim: d,
            });
        }
        let mut inserted = simplex.iter().fold(0u128, |m, &i| m | 1 << i);
        let mut facets: Vec<WorkFacet> = simplex
            .iter()
            .map(|&omit| {
                let others = inserted & !(1 << omit);
                let apex = others.trailing_zeros() as usize;
                self.hyperplane(others, apex, inserted)
            })
            .collect();

        let mut visible = Vec::new();
        let mut kept = Vec::new();
        for p in 0..n {
            if inserted >> p & 1 == 1 {
                continue;
            }
            visible.clear();
            kept.clear();
            for mut f in facets.drain(..) {
                let s = self.dot(&f.normal, p) - f.offset;
                if s > 0 {
                    visible.push(f);
                } else {
                    if s == 0 {
                        f.tight |= 1 << p;
                    }
                    kept.push(f);
                }
            }
            debug_assert!(!visible.is_empty(), "0/1 points are always extreme");
            let grown = inserted | 1 << p;
            let mut created: Vec<WorkFacet> = Vec::new();
            for f in &visible {
                for g in &kept {
                    // Ridges only separate a visible facet from one the new
                    // point lies strictly beneath.
                    if g.tight >> p & 1 == 1 {
                        continue;
                    }
                    let ridge = f.tight & g.tight;
                    if (ridge.count_ones() as usize) < d - 1 || !self.rank_at_least(ridge, d - 2) {
                        continue;
                    }
                    let h = self.hyperplane(ridge, p, grown);
                    if !created
                        .iter()
                        .any(|c| c.offset == h.offset && c.normal == h.normal)
                    {
                        created.push(h);
                    }
                }
            }
            facets.append(&mut kept);
            facets.append(&mut created);
            inserted = grown;
        }
        Ok(facets)
    }
}

fn coordinate_rows(x: &Polytope) -> Vec<Vec<i64>> {
    x.vertices()
        .iter()
        .map(|&v| coordinates_i64(v, x.dim()))
        .collect()
}

fn coordinate_vectors(x: &Polytope) -> Vec<Vector> {
    let d = x.dim();
    x.vertices()
        .iter()
        .map(|&v| {
            let mut a = [0i64; MAX_DIM];
            for (j, c) in a.iter_mut().enumerate().take(d) {
                *c = i64::from(v >> (d - 1 - j) & 1);
            }
            a
        })
        .collect()
}

/// Facet inequalities of `conv(X)` sorted by `(a, b)`, together with the
/// incidence matrix in the same facet order.
pub fn facets_with_incidence(x: &Polytope) -> Result<(Vec<FacetInequality>, IncidenceMatrix)> {
    if x.len() > MAX_VERTICES {
        return Err(Error::TooManyVertices(x.len(), MAX_VERTICES));
    }
    let pts = coordinate_vectors(x);
    let hull = Hull {
        dim: x.dim(),
        pts: &pts,
    };
    let mut found: Vec<(FacetInequality, u128)> = hull
        .run()?
        .into_iter()
        .map(|f| {
            (
                FacetInequality {
                    a: f.normal[..x.dim()].to_vec(),
                    b: f.offset,
                },
                f.tight,
            )
        })
        .collect();
    found.sort_by(|a, b| a.0.cmp(&b.0));
    let (ineqs, rows): (Vec<_>, Vec<_>) = found.into_iter().unzip();
    let m = IncidenceMatrix::new(x.len(), rows)?;
    Ok((ineqs, m))
}

pub fn facets(x: &Polytope) -> Result<Vec<FacetInequality>> {
    facets_with_incidence(x).map(|(f, _)| f)
}

/// Incidence of the given inequalities with the vertices of `X`.
pub fn incidence_matrix(x: &Polytope, facets: &[FacetInequality]) -> Result<IncidenceMatrix> {
    if x.len() > MAX_VERTICES {
        return Err(Error::TooManyVertices(x.len(), MAX_VERTICES));
    }
    let pts = coordinate_rows(x);
    let mut rows = Vec::with_capacity(facets.len());
    for (i, f) in facets.iter().enumerate() {
        if f.a.len() != x.dim() {
            return Err(Error::DimensionMismatch {
                expected: x.dim(),
                found: f.a.len(),
            });
        }
        let mut row = 0u128;
        for (j, p) in pts.iter().enumerate() {
            match f.slack(p) {
                0 => row |= 1 << j,
                s if s < 0 => {
                    return Err(Error::InconsistentIncidence {
                        facet: i,
                        vertex: j,
                    })
                }
                _ => {}
            }
        }
        rows.push(row);
    }
    IncidenceMatrix::new(x.len(), rows)
}
