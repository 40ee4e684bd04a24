//! Discrete coherent pairs as matrix pairs `(A, B)`, the slicing-invariant
//! objective, the independent factorisation `B = R C^T`, and the reduced
//! objective on `[0,1]` matrices.
//!
//! The objective sums `b_ij |rowratio_i - colratio_j|^k` over cells with
//! `b_ij != 0`, where the ratios are conditional means of the underlying
//! event given the row and column partitions. Cells in all-zero rows or
//! columns contribute nothing and no ratio is ever formed over a zero
//! denominator.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::rational::{mat_rat_str, vec_rat_str, Rat};
use crate::{Error, Result};

/// A pair `(A, B)` with `0 <= a_ij <= b_ij` and `sum b_ij = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoherentMatrixPair {
    pub n: usize,
    #[serde(rename = "A", with = "mat_rat_str")]
    pub a: Vec<Vec<Rat>>,
    #[serde(rename = "B", with = "mat_rat_str")]
    pub b: Vec<Vec<Rat>>,
}

/// Product weights `R`, `C`: nonnegative, each summing to 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductWeights {
    #[serde(rename = "R", with = "vec_rat_str")]
    pub rows: Vec<Rat>,
    #[serde(rename = "C", with = "vec_rat_str")]
    pub cols: Vec<Rat>,
}

impl CoherentMatrixPair {
    pub fn new(a: Vec<Vec<Rat>>, b: Vec<Vec<Rat>>) -> Result<Self> {
        let n = b.len();
        if n == 0 || a.len() != n {
            return Err(Error::InvalidPair("empty or mismatched matrices".into()));
        }
        let mut total = Rat::zero();
        for i in 0..n {
            if a[i].len() != n || b[i].len() != n {
                return Err(Error::InvalidPair("matrices must be square".into()));
            }
            for j in 0..n {
                if a[i][j] < Rat::zero() || a[i][j] > b[i][j] {
                    return Err(Error::InvalidPair(format!(
                        "0 <= a <= b violated at ({}, {})",
                        i, j
                    )));
                }
                total += &b[i][j];
            }
        }
        if total != Rat::one() {
            return Err(Error::InvalidPair(format!("entries of B sum to {}", total)));
        }
        Ok(CoherentMatrixPair { n, a, b })
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let raw: CoherentMatrixPair =
            serde_json::from_str(s).map_err(|e| Error::InvalidPair(e.to_string()))?;
        CoherentMatrixPair::new(raw.a, raw.b)
    }
}

fn abs_pow(d: Rat, k: u32) -> Rat {
    let abs = if d < Rat::zero() { -d } else { d };
    num_traits::pow::pow(abs, k as usize)
}

/// The objective `sum_{b_ij != 0} b_ij |rowratio_i - colratio_j|^k`.
pub fn phi(pair: &CoherentMatrixPair, k: u32) -> Rat {
    let n = pair.n;
    let row_a: Vec<Rat> = (0..n).map(|i| pair.a[i].iter().cloned().sum()).collect();
    let row_b: Vec<Rat> = (0..n).map(|i| pair.b[i].iter().cloned().sum()).collect();
    let col_a: Vec<Rat> = (0..n)
        .map(|j| (0..n).map(|i| pair.a[i][j].clone()).sum())
        .collect();
    let col_b: Vec<Rat> = (0..n)
        .map(|j| (0..n).map(|i| pair.b[i][j].clone()).sum())
        .collect();
    let mut sum = Rat::zero();
    for i in 0..n {
        if row_b[i].is_zero() {
            continue;
        }
        let rr = &row_a[i] / &row_b[i];
        for j in 0..n {
            if pair.b[i][j].is_zero() || col_b[j].is_zero() {
                continue;
            }
            let cr = &col_a[j] / &col_b[j];
            sum += &pair.b[i][j] * abs_pow(&rr - &cr, k);
        }
    }
    sum
}

fn slice_axis(pair: &CoherentMatrixPair, idx: usize, l: usize, rows: bool) -> Result<CoherentMatrixPair> {
    let n = pair.n;
    let bound = n;
    if idx >= bound {
        return Err(Error::OutOfRange(format!("index {} out of {}", idx, bound)));
    }
    let get = |m: &Vec<Vec<Rat>>, i: usize, j: usize| -> Rat {
        if rows { m[i][j].clone() } else { m[j][i].clone() }
    };
    if l == 0 {
        let zero_line = (0..n).all(|j| get(&pair.b, idx, j).is_zero());
        if !zero_line {
            return Err(Error::SliceNonzero(idx));
        }
    }
    // Build the sliced rectangle, then pad with zero lines on the other axis
    // to stay square. Zero rows/columns are redundant for the objective.
    let new_lines = n + l - 1;
    let dim = new_lines.max(n);
    let scale = if l > 0 { Rat::new(1.into(), (l as i64).into()) } else { Rat::zero() };
    let build = |m: &Vec<Vec<Rat>>| -> Vec<Vec<Rat>> {
        let mut out: Vec<Vec<Rat>> = Vec::with_capacity(dim);
        for i in 0..n {
            if i == idx {
                for _ in 0..l {
                    out.push((0..n).map(|j| get(m, i, j) * &scale).collect());
                }
            } else {
                out.push((0..n).map(|j| get(m, i, j)).collect());
            }
        }
        while out.len() < dim {
            out.push(vec![Rat::zero(); n]);
        }
        for line in out.iter_mut() {
            while line.len() < dim {
                line.push(Rat::zero());
            }
        }
        out
    };
    let (a2, b2) = (build(&pair.a), build(&pair.b));
    let (a2, b2) = if rows {
        (a2, b2)
    } else {
        (transpose(&a2), transpose(&b2))
    };
    CoherentMatrixPair::new(a2, b2)
}

fn transpose(m: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let n = m.len();
    (0..n).map(|j| (0..n).map(|i| m[i][j].clone()).collect()).collect()
}

/// Replaces row `i` by `l` copies scaled by `1/l`; `l = 0` removes the row,
/// allowed only when it is all zero. The objective is preserved exactly.
pub fn slice_row(pair: &CoherentMatrixPair, i: usize, l: usize) -> Result<CoherentMatrixPair> {
    slice_axis(pair, i, l, true)
}

/// Column analogue of [`slice_row`].
pub fn slice_col(pair: &CoherentMatrixPair, j: usize, l: usize) -> Result<CoherentMatrixPair> {
    slice_axis(pair, j, l, false)
}

/// The reduced objective `sum_ij |rowsum_i - colsum_j|^k` on `[0,1]` entries.
pub fn xi(a: &[Vec<Rat>], k: u32) -> Result<Rat> {
    let n = a.len();
    for row in a {
        if row.len() != n {
            return Err(Error::InvalidPair("matrix must be square".into()));
        }
        for v in row {
            if v < &Rat::zero() || v > &Rat::one() {
                return Err(Error::OutOfRange("entries must lie in [0,1]".into()));
            }
        }
    }
    let row_sums: Vec<Rat> = (0..n).map(|i| a[i].iter().cloned().sum()).collect();
    let col_sums: Vec<Rat> = (0..n)
        .map(|j| (0..n).map(|i| a[i][j].clone()).sum())
        .collect();
    let mut sum = Rat::zero();
    for r in &row_sums {
        for c in &col_sums {
            sum += abs_pow(r - c, k);
        }
    }
    Ok(sum)
}

/// Builds `B = R C^T`, checks `0 <= a_ij <= r_i c_j`, and evaluates the
/// objective.
pub fn from_independent(a: &[Vec<Rat>], w: &ProductWeights, k: u32) -> Result<Rat> {
    let n = w.rows.len();
    if w.cols.len() != n || a.len() != n {
        return Err(Error::InvalidPair("dimension mismatch".into()));
    }
    for v in w.rows.iter().chain(w.cols.iter()) {
        if v < &Rat::zero() {
            return Err(Error::InvalidPair("negative weight".into()));
        }
    }
    let sum_r: Rat = w.rows.iter().cloned().sum();
    let sum_c: Rat = w.cols.iter().cloned().sum();
    if sum_r != Rat::one() || sum_c != Rat::one() {
        return Err(Error::InvalidPair("weights must sum to 1".into()));
    }
    let b: Vec<Vec<Rat>> = (0..n)
        .map(|i| (0..n).map(|j| &w.rows[i] * &w.cols[j]).collect())
        .collect();
    let pair = CoherentMatrixPair::new(a.to_vec(), b)?;
    Ok(phi(&pair, k))
}

/// `xi(A, k) / n^{2+k}` for a binary matrix; equals the independent
/// objective at uniform weights with `A / n^2`.
pub fn uniformize(a: &[Vec<u8>], k: u32) -> Result<Rat> {
    let n = a.len();
    let rational: Vec<Vec<Rat>> = a
        .iter()
        .map(|row| {
            row.iter()
                .map(|&v| {
                    if v > 1 {
                        Err(Error::OutOfRange("binary matrix expected".into()))
                    } else {
                        Ok(Rat::from_integer(v.into()))
                    }
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    let x = xi(&rational, k)?;
    let norm = num_traits::pow::pow(Rat::from_integer((n as i64).into()), (2 + k) as usize);
    Ok(x / norm)
}
