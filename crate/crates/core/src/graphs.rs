//! Bipartite graphs via biadjacency matrices: degree-sequence objectives,
//! the first Zagreb index, total irregularity and the extremal construction
//! that maximises the Zagreb index at a fixed edge count.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::rational::Rat;
use crate::{Error, Result};

/// A bipartite graph on parts of size `n`, stored as its 0-1 biadjacency
/// matrix; `adj[i][j] = 1` iff `(x_i, y_j)` is an edge. Simple by
/// construction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BipartiteGraph {
    pub n: usize,
    pub adj: Vec<Vec<u8>>,
}

impl BipartiteGraph {
    pub fn new(adj: Vec<Vec<u8>>) -> Result<Self> {
        let n = adj.len();
        if n == 0 {
            return Err(Error::InvalidPair("empty graph matrix".into()));
        }
        for row in &adj {
            if row.len() != n {
                return Err(Error::InvalidPair("biadjacency matrix must be square".into()));
            }
            if row.iter().any(|&v| v > 1) {
                return Err(Error::InvalidPair("entries must be 0 or 1".into()));
            }
        }
        Ok(BipartiteGraph { n, adj })
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let raw: BipartiteGraph =
            serde_json::from_str(s).map_err(|e| Error::InvalidPair(e.to_string()))?;
        BipartiteGraph::new(raw.adj)
    }

    pub fn edges(&self) -> usize {
        self.adj.iter().flatten().map(|&v| v as usize).sum()
    }
}

/// Row sums and column sums of the biadjacency matrix.
pub fn degrees(g: &BipartiteGraph) -> (Vec<usize>, Vec<usize>) {
    let n = g.n;
    let x: Vec<usize> = (0..n)
        .map(|i| g.adj[i].iter().map(|&v| v as usize).sum())
        .collect();
    let y: Vec<usize> = (0..n)
        .map(|j| (0..n).map(|i| g.adj[i][j] as usize).sum())
        .collect();
    (x, y)
}

/// `(1/n^{2+k}) sum_ij |deg(x_i) - deg(y_j)|^k` as an exact rational.
pub fn objective(g: &BipartiteGraph, k: u32) -> Rat {
    let (x, y) = degrees(g);
    let mut sum = num_bigint::BigInt::zero();
    for &dx in &x {
        for &dy in &y {
            let d = (dx as i64 - dy as i64).unsigned_abs();
            sum += num_bigint::BigInt::from(d).pow(k);
        }
    }
    let norm = num_bigint::BigInt::from(g.n as u64).pow(2 + k);
    Rat::new(sum, norm)
}

/// First Zagreb index: sum of squared degrees over both parts.
pub fn zagreb_m1(g: &BipartiteGraph) -> u64 {
    let (x, y) = degrees(g);
    x.iter().chain(y.iter()).map(|&d| (d * d) as u64).sum()
}

/// Total irregularity `(1/2) sum_{u,v in V} |deg(u) - deg(v)|^k`, with both
/// parts pooled into one vertex set. For the cross-part-only objective see
/// [`objective`].
pub fn total_irregularity(g: &BipartiteGraph, k: u32) -> Rat {
    let (x, y) = degrees(g);
    let all: Vec<i64> = x.iter().chain(y.iter()).map(|&d| d as i64).collect();
    let mut sum = num_bigint::BigInt::zero();
    for &u in &all {
        for &v in &all {
            sum += num_bigint::BigInt::from((u - v).unsigned_abs()).pow(k);
        }
    }
    Rat::new(sum, 2.into())
}

/// The extremal graph `B1(n, n, e)`: with `e = qn + r`, `q` full columns and
/// one extra column adjacent to the first `r` rows. Maximises the Zagreb
/// index among all bipartite graphs with `e` edges.
pub fn extremal_b1(n: usize, e: usize) -> Result<BipartiteGraph> {
    if n == 0 || e > n * n {
        return Err(Error::OutOfRange(format!("e = {} outside 0..={}", e, n * n)));
    }
    let q = e / n;
    let r = e % n;
    let mut adj = vec![vec![0u8; n]; n];
    for j in 0..q {
        for row in adj.iter_mut() {
            row[j] = 1;
        }
    }
    if r > 0 {
        for row in adj.iter_mut().take(r) {
            row[q] = 1;
        }
    }
    BipartiteGraph::new(adj)
}

/// Closed-form upper bound `(n-r)q^2 + r(q+1)^2 + qn^2 + r^2` on the Zagreb
/// index at `e = qn + r` edges.
pub fn m1_upper(n: usize, e: usize) -> Result<u64> {
    if n == 0 || e > n * n {
        return Err(Error::OutOfRange(format!("e = {} outside 0..={}", e, n * n)));
    }
    let (n, e) = (n as u64, e as u64);
    let q = e / n;
    let r = e % n;
    Ok((n - r) * q * q + r * (q + 1) * (q + 1) + q * n * n + r * r)
}
