//! Exact linear algebra over the rationals for 0/1 point sets.
//!
//! Two routes are provided for everything the enumeration relies on:
//! integer, fraction-free routines on the hot path, and plain
//! [`Rational`] arithmetic used as the overflow fallback and as a
//! cross-check in tests.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::cube::{check_dim, cube_size, Point};
use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

/// Dense row-major matrix of rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.as_ref().len(), cols, "ragged rows");
            for (j, &x) in r.as_ref().iter().enumerate() {
                m[(i, j)] = Rational::from_integer(BigInt::from(x));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.entries.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    /// Reduces in place to row echelon form and returns the rank.
    pub fn row_echelon(&mut self) -> usize {
        let mut rank = 0;
        for col in 0..self.cols {
            if rank == self.rows {
                break;
            }
            let Some(piv) = (rank..self.rows).find(|&i| !self[(i, col)].is_zero()) else {
                continue;
            };
            self.swap_rows(piv, rank);
            let pivot = self[(rank, col)].clone();
            for i in rank + 1..self.rows {
                if self[(i, col)].is_zero() {
                    continue;
                }
                let factor = &self[(i, col)] / &pivot;
                for j in col..self.cols {
                    let delta = &factor * &self[(rank, j)];
                    self[(i, j)] -= delta;
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn rank(&self) -> usize {
        self.clone().row_echelon()
    }
}

impl std::ops::Index<(usize, usize)> for RationalMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RationalMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.entries[i * self.cols + j]
    }
}

/// Coordinates of a point as signed integers.
pub fn coordinates_i64(p: Point, dim: usize) -> Vec<i64> {
    (0..dim)
        .map(|i| i64::from((p >> (dim - 1 - i)) & 1))
        .collect()
}

fn gcd_i64(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

/// Divides a vector by the gcd of its entries.
pub(crate) fn make_primitive(v: &mut [i64]) {
    let g = v.iter().fold(0i64, |g, &x| gcd_i64(g, x));
    if g > 1 {
        for x in v.iter_mut() {
            *x /= g;
        }
    }
}

/// Incrementally built integer row echelon form. Rows are kept primitive so
/// entries stay small for 0/1 input.
#[derive(Clone, Debug, Default)]
pub(crate) struct Echelon {
    rows: Vec<(usize, Vec<i64>)>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the basis; returns `true` and keeps it if it is
    /// independent. Returns `None` on arithmetic overflow.
    pub fn try_add(&mut self, mut v: Vec<i64>) -> Option<bool> {
        for (col, row) in &self.rows {
            let c = v[*col];
            if c == 0 {
                continue;
            }
            let p = row[*col];
            let g = gcd_i64(p, c);
            let (mp, mc) = (p / g, c / g);
            for (x, &r) in v.iter_mut().zip(row) {
                let t = i128::from(*x) * i128::from(mp) - i128::from(r) * i128::from(mc);
                *x = i64::try_from(t).ok()?;
            }
            make_primitive(&mut v);
        }
        match v.iter().position(|&x| x != 0) {
            None => Some(false),
            Some(col) => {
                if v[col] < 0 {
                    v.iter_mut().for_each(|x| *x = -*x);
                }
                self.rows.push((col, v));
                Some(true)
            }
        }
    }
}

/// Rank over the rationals of integer row vectors.
pub fn int_rank<R: AsRef<[i64]>>(rows: &[R]) -> usize {
    let mut e = Echelon::new();
    for r in rows {
        match e.try_add(r.as_ref().to_vec()) {
            Some(_) => {}
            None => return RationalMatrix::from_rows(rows).rank(),
        }
    }
    e.rank()
}

/// Determinant of a square integer matrix (Bareiss elimination).
#[cfg(test)]
pub(crate) fn det_i128(m: &mut [Vec<i128>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut sign = 1;
    let mut prev = 1i128;
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
    sign * m[n - 1][n - 1]
}

/// Primitive integer normal of the hyperplane spanned by `rows`, which must
/// be `dim - 1` linearly independent vectors in `dim` space.
#[cfg(test)]
pub(crate) fn normal_of(rows: &[Vec<i64>], dim: usize) -> Vec<i64> {
    debug_assert_eq!(rows.len() + 1, dim);
    let mut normal = Vec::with_capacity(dim);
    for skip in 0..dim {
        let mut minor: Vec<Vec<i128>> = rows
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|&(j, _)| j != skip)
                    .map(|(_, &x)| i128::from(x))
                    .collect()
            })
            .collect();
        let det = det_i128(&mut minor);
        let signed = if skip % 2 == 0 { det } else { -det };
        normal.push(i64::try_from(signed).expect("cofactor fits in i64"));
    }
    make_primitive(&mut normal);
    normal
}

/// Dimension of the affine hull of a set of cube points.
pub fn affine_rank(points: &[Point], dim: usize) -> Result<usize> {
    check_dim(dim)?;
    let Some(&base) = points.first() else {
        return Err(Error::EmptyInput);
    };
    if let Some(&bad) = points.iter().find(|&&p| u32::from(p) >= cube_size(dim)) {
        return Err(Error::PointOutOfRange {
            value: u32::from(bad),
            dim,
        });
    }
    Ok(affine_rank_unchecked(points, base, dim))
}

pub(crate) fn affine_rank_unchecked(points: &[Point], base: Point, dim: usize) -> usize {
    let b = coordinates_i64(base, dim);
    let mut e = Echelon::new();
    for &p in points {
        if p == base {
            continue;
        }
        let v: Vec<i64> = coordinates_i64(p, dim)
            .iter()
            .zip(&b)
            .map(|(x, y)| x - y)
            .collect();
        e.try_add(v).expect("0/1 differences cannot overflow");
        if e.rank() == dim {
            break;
        }
    }
    e.rank()
}

/// Rational-route affine rank, independent of [`Echelon`].
pub fn affine_rank_rational(points: &[Point], dim: usize) -> Result<usize> {
    let Some(&base) = points.first() else {
        return Err(Error::EmptyInput);
    };
    let b = coordinates_i64(base, dim);
    let rows: Vec<Vec<i64>> = points
        .iter()
        .map(|&p| {
            coordinates_i64(p, dim)
                .iter()
                .zip(&b)
                .map(|(x, y)| x - y)
                .collect()
        })
        .collect();
    Ok(RationalMatrix::from_rows(&rows).rank())
}

/// Decides whether `y` is a nonnegative combination of the points in `z`.
pub fn cone_member(z: &[Point], y: Point, dim: usize) -> Result<bool> {
    check_dim(dim)?;
    let limit = cube_size(dim);
    if let Some(&bad) = z
        .iter()
        .chain(std::iter::once(&y))
        .find(|&&p| u32::from(p) >= limit)
    {
        return Err(Error::PointOutOfRange {
            value: u32::from(bad),
            dim,
        });
    }
    Ok(cone_member_unchecked(z, y))
}

/// Generators that can carry weight: nonzero, distinct, and supported inside
/// `y` (every coordinate is nonnegative, so any generator with a 1 where `y`
/// has a 0 must get coefficient 0).
fn useful_generators(z: &[Point], y: Point) -> Vec<Point> {
    let mut gens: Vec<Point> = z
        .iter()
        .copied()
        .filter(|&g| g != 0 && g & !y == 0)
        .collect();
    gens.sort_unstable();
    gens.dedup();
    gens
}

/// Rows of the reduced system: one per coordinate in the support of `y`.
fn support_bits(y: Point) -> Vec<u32> {
    (0..16).filter(|b| y >> b & 1 == 1).collect()
}

pub(crate) fn cone_member_unchecked(z: &[Point], y: Point) -> bool {
    if y == 0 {
        return true;
    }
    let gens = useful_generators(z, y);
    if gens.iter().fold(0, |acc, &g| acc | g) != y {
        return false;
    }
    if gens.contains(&y) {
        return true;
    }
    match phase1_fraction_free(&gens, y) {
        Some(feasible) => feasible,
        None => phase1_rational(&gens, y),
    }
}

/// Same decision, computed only with [`Rational`] arithmetic.
pub fn cone_member_rational(z: &[Point], y: Point, dim: usize) -> Result<bool> {
    check_dim(dim)?;
    if y == 0 {
        return Ok(true);
    }
    let gens = useful_generators(z, y);
    if gens.is_empty() {
        return Ok(false);
    }
    Ok(phase1_rational(&gens, y))
}

/// Phase-1 simplex for `A λ = 1, λ >= 0` where the columns of `A` are the
/// generators restricted to the support of `y`. Artificial variables start
/// basic; Bland's rule picks both the entering and the leaving variable.
///
/// The tableau is stored scaled by the current basis determinant so every
/// entry is an integer; each pivot divides exactly by the previous pivot.
/// Returns `None` if an intermediate value overflows.
fn phase1_fraction_free(gens: &[Point], y: Point) -> Option<bool> {
    let bits = support_bits(y);
    let r = bits.len();
    let m = gens.len();
    let width = m + r + 1;
    let rhs = m + r;
    let mut t = vec![0i64; (r + 1) * width];
    for (i, &b) in bits.iter().enumerate() {
        let row = &mut t[i * width..(i + 1) * width];
        for (j, &g) in gens.iter().enumerate() {
            row[j] = i64::from(g >> b & 1);
        }
        row[m + i] = 1;
        row[rhs] = 1;
    }
    // Reduced costs of the phase-1 objective (sum of artificials).
    for j in 0..m {
        let s: i64 = (0..r).map(|i| t[i * width + j]).sum();
        t[r * width + j] = -s;
    }
    t[r * width + rhs] = -(r as i64);

    let mut basis: Vec<usize> = (m..m + r).collect();
    let mut denom: i64 = 1;
    loop {
        if t[r * width + rhs] == 0 {
            return Some(true);
        }
        let Some(q) = (0..m).find(|&j| t[r * width + j] < 0) else {
            return Some(false);
        };
        let mut leave: Option<usize> = None;
        for i in 0..r {
            let a = t[i * width + q];
            if a <= 0 {
                continue;
            }
            leave = Some(match leave {
                None => i,
                Some(p) => {
                    // Compare rhs_i / a_i with rhs_p / a_p.
                    let lhs = i128::from(t[i * width + rhs]) * i128::from(t[p * width + q]);
                    let cur = i128::from(t[p * width + rhs]) * i128::from(a);
                    if lhs < cur || (lhs == cur && basis[i] < basis[p]) {
                        i
                    } else {
                        p
                    }
                }
            });
        }
        // The phase-1 objective is bounded below, so some row qualifies.
        let p = leave?;
        let pivot = t[p * width + q];
        for i in 0..=r {
            if i == p {
                continue;
            }
            let f = t[i * width + q];
            for j in 0..width {
                let (a, b) = (t[i * width + j], t[p * width + j]);
                let num = match pivot
                    .checked_mul(a)
                    .zip(f.checked_mul(b))
                    .and_then(|(x, y)| x.checked_sub(y))
                {
                    Some(num) => num,
                    None => {
                        let wide =
                            i128::from(pivot) * i128::from(a) - i128::from(f) * i128::from(b);
                        if wide % i128::from(denom) != 0 {
                            return None;
                        }
                        t[i * width + j] = i64::try_from(wide / i128::from(denom)).ok()?;
                        continue;
                    }
                };
                if num % denom != 0 {
                    return None;
                }
                t[i * width + j] = num / denom;
            }
        }
        denom = pivot;
        basis[p] = q;
    }
}

fn phase1_rational(gens: &[Point], y: Point) -> bool {
    let bits = support_bits(y);
    let r = bits.len();
    let m = gens.len();
    let width = m + r + 1;
    let rhs = m + r;
    let one = Rational::one();
    let mut t = RationalMatrix::zeros(r + 1, width);
    for (i, &b) in bits.iter().enumerate() {
        for (j, &g) in gens.iter().enumerate() {
            if g >> b & 1 == 1 {
                t[(i, j)] = one.clone();
            }
        }
        t[(i, m + i)] = one.clone();
        t[(i, rhs)] = one.clone();
    }
    for j in 0..m {
        let s = (0..r).fold(Rational::zero(), |acc, i| acc + &t[(i, j)]);
        t[(r, j)] = -s;
    }
    t[(r, rhs)] = Rational::from_integer(BigInt::from(-(r as i64)));

    let mut basis: Vec<usize> = (m..m + r).collect();
    loop {
        if t[(r, rhs)].is_zero() {
            return true;
        }
        let Some(q) = (0..m).find(|&j| t[(r, j)].is_negative()) else {
            return false;
        };
        let mut leave: Option<(usize, Rational)> = None;
        for i in 0..r {
            if !t[(i, q)].is_positive() {
                continue;
            }
            let ratio = &t[(i, rhs)] / &t[(i, q)];
            let better = match &leave {
                None => true,
                Some((p, best)) => ratio < *best || (ratio == *best && basis[i] < basis[*p]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        let Some((p, _)) = leave else {
            return false;
        };
        let pivot = t[(p, q)].clone();
        for j in 0..width {
            t[(p, j)] = &t[(p, j)] / &pivot;
        }
        for i in 0..=r {
            if i == p || t[(i, q)].is_zero() {
                continue;
            }
            let f = t[(i, q)].clone();
            for j in 0..width {
                let delta = &f * &t[(p, j)];
                t[(i, j)] -= delta;
            }
        }
        basis[p] = q;
    }
}
