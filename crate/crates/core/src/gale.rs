//! Combinatorial types of d-polytopes with d+2 vertices.
//!
//! A Gale diagram of such a polytope is a configuration on the line: `m0`
//! points at the origin and `m1`, `m_minus1` points on either side, each
//! side holding at least two. Swapping the sides gives the same type.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GaleTuple {
    pub m0: usize,
    pub m1: usize,
    pub m_minus1: usize,
}

impl GaleTuple {
    pub fn is_2neighborly(&self) -> bool {
        self.m1.min(self.m_minus1) >= 3
    }
}

impl fmt::Display for GaleTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {{{}, {}}})", self.m0, self.m1, self.m_minus1)
    }
}

fn check(d: usize) -> Result<()> {
    if d < 2 {
        return Err(Error::InvalidArgument(format!(
            "Gale tuples need dimension at least 2, got {d}"
        )));
    }
    Ok(())
}

/// All tuples for dimension `d`, sorted by `(m0, m1)`.
pub fn enumerate_d_plus_2(d: usize) -> Result<Vec<GaleTuple>> {
    check(d)?;
    let total = d + 2;
    let mut out = Vec::new();
    for m0 in 0..=total - 4 {
        let rest = total - m0;
        for m1 in 2..=rest / 2 {
            out.push(GaleTuple {
                m0,
                m1,
                m_minus1: rest - m1,
            });
        }
    }
    Ok(out)
}

pub fn count_2neighborly_d_plus_2(d: usize) -> Result<usize> {
    Ok(enumerate_d_plus_2(d)?
        .iter()
        .filter(|t| t.is_2neighborly())
        .count())
}
