//! Lexicographically minimal representatives of 0/1-equivalence classes.
//!
//! A set containing the origin precedes every set that does not, so the
//! representative is reached by switching some vertex `u` to the origin and
//! then permuting coordinates. For each `u` the permutation is searched by
//! fixing target positions from the most significant one down. After `k`
//! positions every vertex has a known `k`-bit prefix and a known number of
//! ones among the free coordinates. Vertices sharing a prefix must end with
//! distinct suffixes of those weights, so the smallest such suffixes bound
//! every completion from below. Branches whose bound exceeds the best
//! complete candidate are cut.

use std::cmp::Ordering;
use std::sync::OnceLock;

use crate::cube::{CubeSymmetry, Point, Polytope};

/// Target positions `0..assigned.len()` are fixed: position `k` receives
/// source coordinate `assigned[k].0`, switched if `assigned[k].1` is set.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PartialAssignment {
    assigned: Vec<(u8, bool)>,
    remaining: u32,
}

impl PartialAssignment {
    pub fn new(dim: usize) -> Self {
        Self {
            assigned: Vec::with_capacity(dim),
            remaining: (1u32 << dim) - 1,
        }
    }

    pub fn assigned(&self) -> &[(u8, bool)] {
        &self.assigned
    }

    pub fn is_free(&self, source: usize) -> bool {
        self.remaining >> source & 1 == 1
    }

    fn push(&mut self, source: usize, switched: bool) {
        debug_assert!(self.is_free(source));
        self.assigned.push((source as u8, switched));
        self.remaining &= !(1 << source);
    }

    fn pop(&mut self) {
        let (source, _) = self.assigned.pop().expect("nonempty assignment");
        self.remaining |= 1 << source;
    }

    /// The cube symmetry realizing a complete assignment.
    pub fn to_symmetry(&self) -> Option<CubeSymmetry> {
        if self.remaining != 0 {
            return None;
        }
        let d = self.assigned.len();
        let mut perm = vec![0u8; d];
        let mut switch: Point = 0;
        for (target, &(source, switched)) in self.assigned.iter().enumerate() {
            perm[usize::from(source)] = target as u8;
            if switched {
                switch |= 1 << (d - 1 - usize::from(source));
            }
        }
        CubeSymmetry::new(perm, switch).ok()
    }
}

/// All 16-bit values grouped by popcount, ascending within each group,
/// with the start offset of every group.
fn weight_table() -> &'static (Vec<u16>, [usize; 18]) {
    static TABLE: OnceLock<(Vec<u16>, [usize; 18])> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut values: Vec<u16> = (0..=u16::MAX).collect();
        values.sort_by_key(|v| (v.count_ones(), *v));
        let mut offsets = [0usize; 18];
        for w in 0..=16 {
            offsets[w + 1] = offsets[w]
                + values
                    .iter()
                    .filter(|v| v.count_ones() as usize == w)
                    .count();
        }
        (values, offsets)
    })
}

/// The `k`-th smallest integer with `w` one bits.
#[inline]
fn kth_with_weight(w: u32, k: usize) -> u32 {
    let (values, offsets) = weight_table();
    u32::from(values[offsets[w as usize] + k])
}

/// Vertex state packed as `prefix << 8 | remaining weight`.
#[inline]
fn key(prefix: u32, weight: u32) -> u32 {
    prefix << 8 | weight
}

/// Lower bound on every completion of the sorted keys, with `shift` bits
/// still free below each prefix.
fn lower_bound(sorted_keys: &[u32], shift: usize, out: &mut Vec<Point>) {
    out.clear();
    let mut i = 0;
    while i < sorted_keys.len() {
        let prefix = sorted_keys[i] >> 8;
        let run_start = out.len();
        let mut j = i;
        while j < sorted_keys.len() && sorted_keys[j] >> 8 == prefix {
            let w = sorted_keys[j] & 0xff;
            let mut k = j;
            while k < sorted_keys.len() && sorted_keys[k] == sorted_keys[j] {
                out.push(((prefix << shift) | kth_with_weight(w, k - j)) as Point);
                k += 1;
            }
            j = k;
        }
        out[run_start..].sort_unstable();
        i = j;
    }
}

struct Search {
    dim: usize,
    /// The vertices after switching the current `u` to the origin.
    ys: Vec<Point>,
    switch: Point,
    best: Vec<Point>,
    best_assignment: Option<PartialAssignment>,
    /// Stop at the first strictly smaller candidate.
    first_improvement: bool,
    improved: bool,
    /// Keep exploring ties with the incumbent until a symmetry reaching it
    /// is known.
    need_assignment: bool,
}

impl Search {
    /// Whether no completion under `bound` can be useful.
    fn cut(&self, bound: &[Point]) -> bool {
        match bound.cmp(self.best.as_slice()) {
            Ordering::Less => false,
            Ordering::Equal => !self.need_assignment || self.best_assignment.is_some(),
            Ordering::Greater => true,
        }
    }

    fn bit(&self, y: Point, source: usize) -> u32 {
        u32::from(y >> (self.dim - 1 - source) & 1)
    }

    fn dfs(&mut self, depth: usize, keys: &[u32], assignment: &mut PartialAssignment) {
        let n = keys.len();
        let shift = self.dim - depth - 1;
        // Surviving children, stored flat: `n` keys and `n` bound values each.
        let mut child_keys: Vec<u32> = Vec::with_capacity(n * (self.dim - depth));
        let mut bounds: Vec<Point> = Vec::with_capacity(n * (self.dim - depth));
        let mut sources: Vec<usize> = Vec::with_capacity(self.dim - depth);
        let mut seen_columns: Vec<u64> = Vec::with_capacity(self.dim - depth);
        let mut sorted = Vec::with_capacity(n);
        let mut bound = Vec::with_capacity(n);
        let wide = n > 64;
        for source in 0..self.dim {
            if !assignment.is_free(source) {
                continue;
            }
            // Identical columns give equivalent subtrees.
            if !wide {
                let col = self
                    .ys
                    .iter()
                    .enumerate()
                    .fold(0u64, |m, (i, &y)| m | u64::from(self.bit(y, source)) << i);
                if seen_columns.contains(&col) {
                    continue;
                }
                seen_columns.push(col);
            }
            let start = child_keys.len();
            child_keys.extend(keys.iter().zip(&self.ys).map(|(&k, &y)| {
                let b = self.bit(y, source);
                key((k >> 8) << 1 | b, (k & 0xff) - b)
            }));
            sorted.clear();
            sorted.extend_from_slice(&child_keys[start..]);
            sorted.sort_unstable();
            lower_bound(&sorted, shift, &mut bound);
            if self.cut(&bound) {
                child_keys.truncate(start);
                continue;
            }
            bounds.extend_from_slice(&bound);
            sources.push(source);
        }
        let mut order: Vec<usize> = (0..sources.len()).collect();
        order.sort_by(|&a, &b| {
            bounds[a * n..(a + 1) * n]
                .cmp(&bounds[b * n..(b + 1) * n])
                .then(sources[a].cmp(&sources[b]))
        });
        for c in order {
            if self.first_improvement && self.improved {
                return;
            }
            let child_bound = &bounds[c * n..(c + 1) * n];
            if self.cut(child_bound) {
                continue;
            }
            let source = sources[c];
            let switched = self.switch >> (self.dim - 1 - source) & 1 == 1;
            assignment.push(source, switched);
            if shift == 0 {
                // Prefixes are complete, so the bound is the image itself.
                if child_bound < self.best.as_slice() {
                    self.best.copy_from_slice(child_bound);
                    self.best_assignment = Some(assignment.clone());
                    self.improved = true;
                } else if self.best_assignment.is_none() {
                    self.best_assignment = Some(assignment.clone());
                }
            } else {
                self.dfs(depth + 1, &child_keys[c * n..(c + 1) * n], assignment);
            }
            assignment.pop();
        }
    }
}

fn search(p: &Polytope, first_improvement: bool, need_assignment: bool) -> Search {
    let dim = p.dim();
    let vertices = p.vertices();
    let mut s = Search {
        dim,
        ys: Vec::with_capacity(vertices.len()),
        switch: 0,
        best: vertices.to_vec(),
        best_assignment: None,
        first_improvement,
        improved: false,
        need_assignment,
    };
    // Order the origin candidates by the bound before any coordinate is
    // fixed; it depends only on the Hamming weights.
    let mut starts: Vec<(Vec<Point>, Point)> = vertices
        .iter()
        .map(|&u| {
            let mut keys: Vec<u32> = vertices
                .iter()
                .map(|&x| key(0, (x ^ u).count_ones()))
                .collect();
            keys.sort_unstable();
            let mut bound = Vec::new();
            lower_bound(&keys, dim, &mut bound);
            (bound, u)
        })
        .collect();
    starts.sort();
    let mut assignment = PartialAssignment::new(dim);
    for (bound, u) in starts {
        if s.cut(&bound) || (s.first_improvement && s.improved) {
            break;
        }
        s.switch = u;
        s.ys.clear();
        s.ys.extend(vertices.iter().map(|&x| x ^ u));
        let keys: Vec<u32> = s.ys.iter().map(|&y| key(0, y.count_ones())).collect();
        s.dfs(0, &keys, &mut assignment);
    }
    s
}

/// The lexicographically smallest polytope 0/1-equivalent to `p`.
pub fn representative(p: &Polytope) -> Polytope {
    let s = search(p, false, false);
    Polytope::from_sorted_unchecked(p.dim(), s.best)
}

/// The representative together with a symmetry mapping `p` onto it.
pub fn representative_with_symmetry(p: &Polytope) -> (Polytope, CubeSymmetry) {
    let s = search(p, false, true);
    let g = s
        .best_assignment
        .and_then(|a| a.to_symmetry())
        .expect("the search always completes one assignment");
    (Polytope::from_sorted_unchecked(p.dim(), s.best), g)
}

/// Whether `p` is already the representative of its class.
pub fn is_representative(p: &Polytope) -> bool {
    !search(p, true, false).improved
}
