//! Canonical forms of facet-vertex incidence matrices under independent row
//! and column permutations.
//!
//! Individualization-refinement over the bipartite structure: rows and
//! columns keep separate ordered partitions, refined until every row's
//! neighbour counts per column cell (and vice versa) are constant on cells.
//! Non-discrete partitions branch on the smallest non-singleton cell. Each
//! discrete leaf gives a relabelled matrix, and the certificate is the least
//! one. Leaves that reproduce an earlier matrix yield automorphisms, which
//! prune sibling branches lying in the same orbit.

use std::fmt;

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::hull::IncidenceMatrix;

/// Canonical byte string: `k` and `n` as little-endian `u16`, then the `k`
/// canonical rows, each packed into `ceil(n/8)` bytes with the first column
/// in the most significant bit.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Certificate(Vec<u8>);

impl Certificate {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn into_bytes(self) -> Vec<u8> {
        self.0
    }

    pub fn num_rows(&self) -> usize {
        usize::from(u16::from_le_bytes([self.0[0], self.0[1]]))
    }

    pub fn num_cols(&self) -> usize {
        usize::from(u16::from_le_bytes([self.0[2], self.0[3]]))
    }

    /// The canonical matrix itself.
    pub fn to_matrix(&self) -> IncidenceMatrix {
        let (k, n) = (self.num_rows(), self.num_cols());
        let stride = n.div_ceil(8);
        let rows = (0..k)
            .map(|i| {
                let row = &self.0[4 + i * stride..4 + (i + 1) * stride];
                (0..n)
                    .filter(|j| row[j / 8] >> (7 - j % 8) & 1 == 1)
                    .fold(0u128, |acc, j| acc | 1 << j)
            })
            .collect();
        IncidenceMatrix::new(n, rows).expect("certificate shape")
    }

    pub fn to_hex(&self) -> String {
        hex::encode(&self.0)
    }

    /// SHA-256 of the certificate bytes, in hex.
    pub fn digest_hex(&self) -> String {
        hex::encode(Sha256::digest(&self.0))
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

const WORDS: usize = 8;
type RowSet = [u64; WORDS];

fn popcount_and(a: &RowSet, b: &RowSet) -> u32 {
    a.iter().zip(b).map(|(x, y)| (x & y).count_ones()).sum()
}

/// Ordered partition of `0..len` into cells.
#[derive(Clone)]
struct Partition {
    cells: Vec<Vec<u16>>,
}

impl Partition {
    fn unit(len: usize) -> Self {
        Self {
            cells: vec![(0..len as u16).collect()],
        }
    }

    fn is_discrete(&self) -> bool {
        self.cells.iter().all(|c| c.len() == 1)
    }

    fn order(&self) -> Vec<u16> {
        self.cells.iter().flatten().copied().collect()
    }

    fn individualize(&mut self, cell: usize, v: u16) {
        let rest: Vec<u16> = self.cells[cell]
            .iter()
            .copied()
            .filter(|&x| x != v)
            .collect();
        self.cells[cell] = vec![v];
        self.cells.insert(cell + 1, rest);
    }

    /// Splits every cell by the given signature, ordering the pieces by
    /// signature. Returns whether anything split.
    fn split_by<S: Ord>(&mut self, sig: impl Fn(u16) -> S) -> bool {
        let mut changed = false;
        let mut out = Vec::with_capacity(self.cells.len());
        for cell in self.cells.drain(..) {
            if cell.len() == 1 {
                out.push(cell);
                continue;
            }
            let mut keyed: Vec<(S, u16)> = cell.into_iter().map(|v| (sig(v), v)).collect();
            keyed.sort();
            let mut start = 0;
            for i in 1..=keyed.len() {
                if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                    out.push(keyed[start..i].iter().map(|&(_, v)| v).collect());
                    start = i;
                }
            }
            changed |= out.last().map_or(0, |c: &Vec<u16>| c.len()) != keyed.len();
        }
        self.cells = out;
        changed
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Side {
    Row,
    Col,
}

struct Automorphism {
    rows: Vec<u16>,
    cols: Vec<u16>,
}

struct Leaf {
    matrix: Vec<u128>,
    rows: Vec<u16>,
    cols: Vec<u16>,
}

struct Search<'a> {
    k: usize,
    n: usize,
    rows: &'a [u128],
    cols: Vec<RowSet>,
    first: Option<Leaf>,
    best: Option<Leaf>,
    autos: Vec<Automorphism>,
}

impl Search<'_> {
    fn refine(&self, rp: &mut Partition, cp: &mut Partition) {
        loop {
            let col_masks: Vec<u128> = cp
                .cells
                .iter()
                .map(|c| c.iter().fold(0u128, |m, &j| m | 1 << j))
                .collect();
            let rows = self.rows;
            let a = rp.split_by(|r| {
                col_masks
                    .iter()
                    .map(|m| (rows[usize::from(r)] & m).count_ones())
                    .collect::<Vec<_>>()
            });
            let row_masks: Vec<RowSet> = rp
                .cells
                .iter()
                .map(|c| {
                    let mut s = [0u64; WORDS];
                    for &i in c {
                        s[usize::from(i) / 64] |= 1 << (i % 64);
                    }
                    s
                })
                .collect();
            let cols = &self.cols;
            let b = cp.split_by(|c| {
                row_masks
                    .iter()
                    .map(|m| popcount_and(&cols[usize::from(c)], m))
                    .collect::<Vec<_>>()
            });
            if !a && !b {
                return;
            }
        }
    }

    fn leaf(&self, rp: &Partition, cp: &Partition) -> Leaf {
        let rows = rp.order();
        let cols = cp.order();
        let matrix = rows
            .iter()
            .map(|&r| {
                let src = self.rows[usize::from(r)];
                cols.iter()
                    .enumerate()
                    .filter(|&(_, &c)| src >> c & 1 == 1)
                    .fold(0u128, |acc, (j, _)| acc | 1 << (127 - j))
            })
            .collect();
        Leaf { matrix, rows, cols }
    }

    fn record_automorphism(&mut self, from: &Leaf, to: &Leaf) {
        let mut rows = vec![0u16; self.k];
        let mut cols = vec![0u16; self.n];
        for (a, b) in from.rows.iter().zip(&to.rows) {
            rows[usize::from(*a)] = *b;
        }
        for (a, b) in from.cols.iter().zip(&to.cols) {
            cols[usize::from(*a)] = *b;
        }
        if rows.iter().enumerate().all(|(i, &x)| usize::from(x) == i)
            && cols.iter().enumerate().all(|(i, &x)| usize::from(x) == i)
        {
            return;
        }
        self.autos.push(Automorphism { rows, cols });
    }

    fn visit_leaf(&mut self, leaf: Leaf) {
        let Some(first) = self.first.take() else {
            self.first = Some(Leaf {
                matrix: leaf.matrix.clone(),
                rows: leaf.rows.clone(),
                cols: leaf.cols.clone(),
            });
            self.best = Some(leaf);
            return;
        };
        if leaf.matrix == first.matrix {
            self.record_automorphism(&first, &leaf);
        }
        self.first = Some(first);
        let best = self.best.take().expect("best is set with first");
        match leaf.matrix.cmp(&best.matrix) {
            std::cmp::Ordering::Less => self.best = Some(leaf),
            std::cmp::Ordering::Equal => {
                self.record_automorphism(&best, &leaf);
                self.best = Some(best);
            }
            std::cmp::Ordering::Greater => self.best = Some(best),
        }
    }

    /// Orbit representatives: `orbit[x]` is the least element reachable from
    /// `x` by automorphisms fixing every individualized element.
    fn orbits(&self, side: Side, path: &[(Side, u16)]) -> Vec<u16> {
        let len = if side == Side::Row { self.k } else { self.n };
        let mut parent: Vec<u16> = (0..len as u16).collect();
        fn find(p: &mut [u16], mut x: u16) -> u16 {
            while p[usize::from(x)] != x {
                let up = p[usize::from(p[usize::from(x)])];
                p[usize::from(x)] = up;
                x = up;
            }
            x
        }
        for g in &self.autos {
            let fixes = path.iter().all(|&(s, v)| match s {
                Side::Row => g.rows[usize::from(v)] == v,
                Side::Col => g.cols[usize::from(v)] == v,
            });
            if !fixes {
                continue;
            }
            let perm = if side == Side::Row { &g.rows } else { &g.cols };
            for (x, &y) in perm.iter().enumerate() {
                let a = find(&mut parent, x as u16);
                let b = find(&mut parent, y);
                if a != b {
                    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                    parent[usize::from(hi)] = lo;
                }
            }
        }
        (0..len as u16).map(|x| find(&mut parent, x)).collect()
    }

    fn dfs(&mut self, rp: Partition, cp: Partition, path: &mut Vec<(Side, u16)>) {
        if rp.is_discrete() && cp.is_discrete() {
            let leaf = self.leaf(&rp, &cp);
            self.visit_leaf(leaf);
            return;
        }
        let pick = |p: &Partition| {
            p.cells
                .iter()
                .enumerate()
                .filter(|(_, c)| c.len() > 1)
                .min_by_key(|&(i, c)| (c.len(), i))
                .map(|(i, c)| (c.len(), i))
        };
        let (side, cell) = match (pick(&rp), pick(&cp)) {
            (Some(r), Some(c)) if c.0 < r.0 => (Side::Col, c.1),
            (Some(r), _) => (Side::Row, r.1),
            (None, Some(c)) => (Side::Col, c.1),
            (None, None) => unreachable!("non-discrete partition has a cell"),
        };
        let members = match side {
            Side::Row => rp.cells[cell].clone(),
            Side::Col => cp.cells[cell].clone(),
        };
        let mut tried: Vec<u16> = Vec::new();
        let mut seen_autos = usize::MAX;
        let mut orbit = Vec::new();
        for v in members {
            if !tried.is_empty() {
                if seen_autos != self.autos.len() {
                    orbit = self.orbits(side, path);
                    seen_autos = self.autos.len();
                }
                let o = orbit[usize::from(v)];
                if tried.iter().any(|&t| orbit[usize::from(t)] == o) {
                    continue;
                }
            }
            tried.push(v);
            let (mut r2, mut c2) = (rp.clone(), cp.clone());
            match side {
                Side::Row => r2.individualize(cell, v),
                Side::Col => c2.individualize(cell, v),
            }
            self.refine(&mut r2, &mut c2);
            path.push((side, v));
            self.dfs(r2, c2, path);
            path.pop();
        }
    }
}

/// Canonical certificate of `m` under row and column permutations.
pub fn canonical_incidence(m: &IncidenceMatrix) -> Result<Certificate> {
    let k = m.num_facets();
    let n = m.num_vertices();
    if k == 0 || n == 0 {
        return Err(Error::InvalidArgument("empty incidence matrix".into()));
    }
    if k > WORDS * 64 || k > usize::from(u16::MAX) {
        return Err(Error::InvalidArgument(format!(
            "too many rows for canonical labelling: {k}"
        )));
    }
    let mut cols = vec![[0u64; WORDS]; n];
    for (i, r) in m.rows().iter().enumerate() {
        for (j, col) in cols.iter_mut().enumerate() {
            if r >> j & 1 == 1 {
                col[i / 64] |= 1 << (i % 64);
            }
        }
    }
    let mut search = Search {
        k,
        n,
        rows: m.rows(),
        cols,
        first: None,
        best: None,
        autos: Vec::new(),
    };
    let (mut rp, mut cp) = (Partition::unit(k), Partition::unit(n));
    search.refine(&mut rp, &mut cp);
    search.dfs(rp, cp, &mut Vec::new());
    let best = search.best.expect("search reaches at least one leaf");

    let stride = n.div_ceil(8);
    let mut bytes = Vec::with_capacity(4 + k * stride);
    bytes.extend_from_slice(&(k as u16).to_le_bytes());
    bytes.extend_from_slice(&(n as u16).to_le_bytes());
    for row in best.matrix {
        bytes.extend_from_slice(&row.to_be_bytes()[..stride]);
    }
    Ok(Certificate(bytes))
}

pub fn same_combinatorial_type(m1: &IncidenceMatrix, m2: &IncidenceMatrix) -> Result<bool> {
    if (m1.num_facets(), m1.num_vertices()) != (m2.num_facets(), m2.num_vertices()) {
        return Ok(false);
    }
    Ok(canonical_incidence(m1)? == canonical_incidence(m2)?)
}
