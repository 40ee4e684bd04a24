//! Integer partitions in an n x n box: conjugation, majorization, the
//! Karamata comparison and the Gale-Ryser bigraphic test.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::rational::{int, Rat};
use crate::{Error, Result};

/// An integer sequence `b = (b_1, ..., b_n)` with every entry in `[0, n]`.
///
/// The canonical form is weakly decreasing; constructors that require it
/// sort on entry. Stored entries are kept as given so that callers can
/// round-trip arbitrary box sequences.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Partition {
    pub n: usize,
    pub parts: Vec<usize>,
}

impl Partition {
    /// Builds a partition after validating the box constraints.
    pub fn new(n: usize, parts: Vec<usize>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidPartition("box size must be positive".into()));
        }
        if parts.len() != n {
            return Err(Error::InvalidPartition(format!(
                "expected {} parts, got {}",
                n,
                parts.len()
            )));
        }
        if let Some(&p) = parts.iter().find(|&&p| p > n) {
            return Err(Error::InvalidPartition(format!(
                "part {} exceeds box size {}",
                p, n
            )));
        }
        Ok(Partition { n, parts })
    }

    /// The parts sorted weakly decreasing.
    pub fn sorted_desc(&self) -> Vec<usize> {
        let mut v = self.parts.clone();
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    }

    pub fn sum(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn is_sorted_desc(&self) -> bool {
        self.parts.windows(2).all(|w| w[0] >= w[1])
    }
}

/// Conjugate partition: `b*_k = |{i : b_i >= k}|`.
///
/// The input is canonicalised (sorted descending) first; the result is
/// always weakly decreasing and preserves the sum.
pub fn conjugate(b: &Partition) -> Partition {
    let sorted = b.sorted_desc();
    let parts = conjugate_raw(&sorted, b.n);
    Partition { n: b.n, parts }
}

/// Conjugation on a raw weakly-decreasing slice. `n` is the box size and
/// also the length of the result.
pub fn conjugate_raw(sorted_desc: &[usize], n: usize) -> Vec<usize> {
    (1..=n)
        .map(|k| sorted_desc.iter().take_while(|&&b| b >= k).count())
        .collect()
}

/// Majorization `x > y`: after sorting both descending, every prefix sum of
/// `x` dominates the one of `y`, with equal totals.
pub fn majorizes(x: &[Rat], y: &[Rat]) -> Result<bool> {
    match majorization_failure(x, y)? {
        None => Ok(true),
        Some(_) => Ok(false),
    }
}

/// Integer convenience wrapper for [`majorizes`].
pub fn majorizes_int(x: &[usize], y: &[usize]) -> Result<bool> {
    let xr: Vec<Rat> = x.iter().map(|&v| int(v as i64)).collect();
    let yr: Vec<Rat> = y.iter().map(|&v| int(v as i64)).collect();
    majorizes(&xr, &yr)
}

/// Returns the first failing prefix index (1-based), or `None` when `x > y`.
/// The total-sum equality is reported as prefix `n`.
pub fn majorization_failure(x: &[Rat], y: &[Rat]) -> Result<Option<usize>> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch(x.len(), y.len()));
    }
    let n = x.len();
    let mut xs = x.to_vec();
    let mut ys = y.to_vec();
    xs.sort_by(|a, b| b.cmp(a));
    ys.sort_by(|a, b| b.cmp(a));
    let mut px = Rat::zero();
    let mut py = Rat::zero();
    for i in 0..n {
        px += &xs[i];
        py += &ys[i];
        if i + 1 < n {
            if px < py {
                return Ok(Some(i + 1));
            }
        } else if px != py {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

/// Gale-Ryser: `(a, b)` is bigraphic iff `b*` majorizes `a`.
pub fn is_bigraphic(a: &Partition, b: &Partition) -> Result<bool> {
    if a.n != b.n {
        return Err(Error::BoxMismatch(a.n, b.n));
    }
    let bstar = conjugate(b);
    majorizes_int(&bstar.parts, &a.sorted_desc())
}

/// An exactly-evaluable convex function for the Karamata comparison.
pub trait ConvexFn {
    fn eval(&self, x: &Rat) -> Rat;
}

/// The shipped family `f(x) = |x - j|^k`, convex for `k >= 1`.
pub struct AbsPower {
    pub shift: Rat,
    pub exponent: u32,
}

impl AbsPower {
    pub fn new(shift: Rat, exponent: u32) -> Self {
        AbsPower { shift, exponent }
    }
}

impl ConvexFn for AbsPower {
    fn eval(&self, x: &Rat) -> Rat {
        let d = x - &self.shift;
        let abs = if d < Rat::zero() { -d } else { d };
        num_traits::pow::pow(abs, self.exponent as usize)
    }
}

/// Karamata comparison: requires `x > y` and returns
/// `sum f(x_i) - sum f(y_j)`, which is `>= 0` for convex `f`.
pub fn karamata_compare(f: &dyn ConvexFn, x: &[Rat], y: &[Rat]) -> Result<Rat> {
    if let Some(prefix) = majorization_failure(x, y)? {
        return Err(Error::MajorizationFailed { prefix });
    }
    let sx: Rat = x.iter().map(|v| f.eval(v)).sum();
    let sy: Rat = y.iter().map(|v| f.eval(v)).sum();
    Ok(sx - sy)
}
