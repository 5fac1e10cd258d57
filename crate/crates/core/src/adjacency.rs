//! Edge tests for 0/1-polytopes and the incremental 2-neighborliness test.
//!
//! After switching so that one endpoint is the origin, `{0, y}` is an edge of
//! `conv(Y ∪ {0})` iff it is an edge of `conv(Z ∪ {0})` where `Z` keeps only
//! the points of `Y` lying coordinatewise below `y`, and that holds iff `y`
//! is not in the cone spanned by the rest of `Z`.

use crate::cube::{check_dim, Point, Polytope};
use crate::error::{Error, Result};
use crate::ratlin::cone_member_unchecked;

/// True when `{0, y}` is *not* an edge of `conv(Y ∪ {0})`. The origin is
/// implicit and need not be listed in `ys`.
pub(crate) fn no_edge_0y_unchecked(ys: &[Point], y: Point) -> bool {
    let mut z: [Point; 64] = [0; 64];
    let mut len = 0;
    let mut cover: Point = 0;
    let mut spill: Vec<Point> = Vec::new();
    for &p in ys {
        if p != y && p != 0 && p & y == p {
            cover |= p;
            if len < z.len() {
                z[len] = p;
                len += 1;
            } else {
                spill.push(p);
            }
        }
    }
    // Some coordinate of y is unreachable: the cone cannot contain y.
    if cover != y {
        return false;
    }
    if spill.is_empty() {
        cone_member_unchecked(&z[..len], y)
    } else {
        spill.extend_from_slice(&z[..len]);
        cone_member_unchecked(&spill, y)
    }
}

/// Is `{0, y}` a non-edge of `conv(Y ∪ {0})`? `y` must be listed in `Y`.
pub fn no_edge_0y(ys: &Polytope, y: Point) -> Result<bool> {
    if !ys.contains(y) {
        return Err(Error::NotAVertex(u32::from(y)));
    }
    Ok(no_edge_0y_unchecked(ys.vertices(), y))
}

/// Is `[u, v]` an edge of `conv(X)`?
pub fn is_edge(x: &Polytope, u: Point, v: Point) -> Result<bool> {
    if u == v {
        return Err(Error::DegenerateEdge);
    }
    for p in [u, v] {
        if !x.contains(p) {
            return Err(Error::NotAVertex(u32::from(p)));
        }
    }
    Ok(is_edge_unchecked(x.vertices(), u, v))
}

pub(crate) fn is_edge_unchecked(x: &[Point], u: Point, v: Point) -> bool {
    let switched: Vec<Point> = x.iter().map(|&p| p ^ u).filter(|&p| p != 0).collect();
    !no_edge_0y_unchecked(&switched, v ^ u)
}

/// Given that `conv(X)` is 2-neighborly, decides whether `conv(X ∪ {v})` is.
///
/// Edges through `v` are tested directly. For an old pair `{x, y}` only the
/// new point can destroy the edge, and only if, after switching `x` to the
/// origin, the new point `w = v ⊕ x` lies below `y ⊕ x`; all other pairs
/// are skipped.
pub fn extend_is_2neighborly(x: &Polytope, v: Point) -> Result<bool> {
    check_dim(x.dim())?;
    if u32::from(v) >= 1 << x.dim() {
        return Err(Error::PointOutOfRange {
            value: u32::from(v),
            dim: x.dim(),
        });
    }
    if x.contains(v) {
        return Err(Error::AlreadyAVertex(u32::from(v)));
    }
    Ok(extend_is_2neighborly_unchecked(x.vertices(), v))
}

pub(crate) fn extend_is_2neighborly_unchecked(x: &[Point], v: Point) -> bool {
    let n = x.len();
    let mut ys: Vec<Point> = Vec::with_capacity(n + 1);

    // Edges {v, x}: switch v to the origin.
    ys.extend(x.iter().map(|&p| p ^ v));
    for &y in &ys {
        if no_edge_0y_unchecked(&ys, y) {
            return false;
        }
    }

    // Edges {x, y} of the old polytope that the new point may cover.
    for &base in x {
        let w = v ^ base;
        ys.clear();
        ys.extend(x.iter().filter(|&&p| p != base).map(|&p| p ^ base));
        if !ys.iter().any(|&y| w & y == w) {
            continue;
        }
        let old_len = ys.len();
        ys.push(w);
        for i in 0..old_len {
            let y = ys[i];
            if w & y == w && no_edge_0y_unchecked(&ys, y) {
                return false;
            }
        }
    }
    true
}

/// Checks every pair of vertices independently.
pub fn is_2neighborly_bruteforce(x: &Polytope) -> bool {
    let v = x.vertices();
    for (i, &a) in v.iter().enumerate() {
        for &b in &v[i + 1..] {
            if !is_edge_unchecked(v, a, b) {
                return false;
            }
        }
    }
    true
}

/// Number of vertex pairs of `X` that are edges of `conv(X)`.
pub fn edge_count(x: &Polytope) -> usize {
    let v = x.vertices();
    let mut count = 0;
    for (i, &a) in v.iter().enumerate() {
        for &b in &v[i + 1..] {
            if is_edge_unchecked(v, a, b) {
                count += 1;
            }
        }
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cube::{apply_symmetry, CubeSymmetry};
    use crate::special;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn poly(d: usize, v: &[Point]) -> Polytope {
        Polytope::from_points(d, v.to_vec()).unwrap()
    }

    #[test]
    fn no_edge_examples() {
        assert!(!no_edge_0y(&poly(3, &[5]), 5).unwrap());
        assert!(no_edge_0y(&poly(2, &[1, 2, 3]), 3).unwrap());
        assert!(no_edge_0y(&poly(3, &[1, 2, 3]), 3).unwrap());
        assert!(!no_edge_0y(&poly(3, &[1, 2, 3]), 1).unwrap());
        assert!(no_edge_0y(&poly(3, &[1, 2]), 4).is_err());
    }

    #[test]
    fn is_edge_examples() {
        let seg = poly(4, &[3, 12]);
        assert!(is_edge(&seg, 3, 12).unwrap());
        let square = poly(2, &[0, 1, 2, 3]);
        assert!(!is_edge(&square, 0, 3).unwrap());
        assert!(is_edge(&square, 0, 1).unwrap());
        assert!(!is_edge(&square, 1, 2).unwrap());
        assert!(is_edge(&square, 0, 0).is_err());
        assert!(is_edge(&seg, 3, 1).is_err());
    }

    #[test]
    fn p14_16_is_2neighborly() {
        let p = special::p14_16();
        let v = p.vertices();
        let mut pairs = 0;
        for (i, &a) in v.iter().enumerate() {
            for &b in &v[i + 1..] {
                assert!(is_edge(&p, a, b).unwrap());
                pairs += 1;
            }
        }
        assert_eq!(pairs, 91);
        assert!(is_2neighborly_bruteforce(&p));

        let (&last, first) = v.split_last().unwrap();
        let head = poly(7, first);
        assert!(extend_is_2neighborly(&head, last).unwrap());
    }

    #[test]
    fn extend_examples() {
        for v in 1..8 {
            assert!(extend_is_2neighborly(&poly(3, &[0]), v).unwrap());
        }
        assert!(!extend_is_2neighborly(&poly(2, &[0, 1, 2]), 3).unwrap());
        assert!(extend_is_2neighborly(&poly(2, &[0, 1]), 1).is_err());
        assert!(!is_2neighborly_bruteforce(&poly(2, &[0, 1, 2, 3])));
    }

    #[test]
    fn small_sets_are_2neighborly() {
        for d in 1..=4u32 {
            let m = 1u16 << d;
            for a in 0..m {
                for b in a + 1..m {
                    for c in b + 1..m {
                        assert!(is_2neighborly_bruteforce(&poly(d as usize, &[a, b, c])));
                    }
                }
            }
        }
    }

    fn random_2neighborly(rng: &mut ChaCha8Rng, d: usize, max_n: usize) -> Polytope {
        let mut x = poly(d, &[rng.gen_range(0..(1u16 << d))]);
        let target = rng.gen_range(1..=max_n);
        let mut order: Vec<Point> = (0..(1u16 << d)).collect();
        order.shuffle(rng);
        for v in order {
            if x.len() >= target {
                break;
            }
            if !x.contains(v) && is_2neighborly_bruteforce(&x.with_vertex(v).unwrap()) {
                x = x.with_vertex(v).unwrap();
            }
        }
        x
    }

    #[test]
    fn fast_path_matches_bruteforce() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..600 {
            let d = rng.gen_range(2..=6);
            let x = random_2neighborly(&mut rng, d, 8);
            let v = rng.gen_range(0..(1u16 << d));
            if x.contains(v) {
                continue;
            }
            let fast = extend_is_2neighborly(&x, v).unwrap();
            let slow = is_2neighborly_bruteforce(&x.with_vertex(v).unwrap());
            assert_eq!(fast, slow, "X = {x}, v = {v}");
        }
    }

    #[test]
    fn edges_are_symmetry_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let d = rng.gen_range(2..=6);
            let n = rng.gen_range(2..=10);
            let pts: Vec<Point> = (0..n).map(|_| rng.gen_range(0..(1u16 << d))).collect();
            let x = Polytope::from_points(d, pts).unwrap();
            if x.len() < 2 {
                continue;
            }
            let mut perm: Vec<u8> = (0..d as u8).collect();
            perm.shuffle(&mut rng);
            let g = CubeSymmetry::new(perm, rng.gen_range(0..(1u16 << d))).unwrap();
            let gx = apply_symmetry(&x, &g).unwrap();
            let (u, v) = (x.vertices()[0], x.vertices()[x.len() - 1]);
            assert_eq!(
                is_edge(&x, u, v).unwrap(),
                is_edge(&gx, g.apply_point(u), g.apply_point(v)).unwrap()
            );
        }
    }

    #[test]
    fn failure_persists_on_supersets() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut checked = 0;
        while checked < 150 {
            let d = rng.gen_range(3..=6);
            let x = random_2neighborly(&mut rng, d, 4);
            let v = rng.gen_range(0..(1u16 << d));
            if x.contains(v) || extend_is_2neighborly(&x, v).unwrap() {
                continue;
            }
            // Grow X to a larger 2-neighborly superset avoiding v.
            let mut bigger = x.clone();
            for w in 0..(1u16 << d) {
                if w != v && !bigger.contains(w) && extend_is_2neighborly(&bigger, w).unwrap() {
                    bigger = bigger.with_vertex(w).unwrap();
                    if bigger.len() >= x.len() + 3 {
                        break;
                    }
                }
            }
            assert!(!extend_is_2neighborly(&bigger, v).unwrap());
            checked += 1;
        }
    }
}
