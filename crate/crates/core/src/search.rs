//! Exhaustive and heuristic maximisation of the degree-difference
//! objectives over box partitions, diagrams and bipartite graphs, plus
//! counterexample hunting for high exponents and tail-supremum exploration.
//!
//! Only conjugate pairs `(b*, b)` are scored when searching partitions:
//! general bigraphic pairs are dominated by the Karamata argument, so the
//! space collapses to single partitions.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::diagrams::{self, StepFn};
use crate::graphs::{self, BipartiteGraph};
use crate::partitions::{conjugate_raw, Partition};
use crate::rational::{format_rat, rat, rat_str, to_f64, Rat};
use crate::{Error, Result};

/// Hard ceiling for exhaustive partition enumeration (`C(2n, n)` growth).
pub const PARTITION_GUARD: usize = 14;
/// Hard ceiling for exhaustive graph enumeration (`2^{n^2}` growth).
pub const GRAPH_GUARD: usize = 4;

/// The best witness found by a search.
#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    Partition(Partition),
    Diagram(StepFn),
    Graph(BipartiteGraph),
}

/// A named bound the best value was compared against.
#[derive(Debug, Clone, Serialize)]
pub struct BoundCheck {
    pub name: String,
    #[serde(with = "rat_str")]
    pub value: Rat,
    pub satisfied: bool,
}

/// Outcome of one search run. The witness re-evaluates exactly to
/// `best_value` through the public evaluators.
#[derive(Debug, Clone, Serialize)]
pub struct SearchReport {
    pub objective: String,
    pub parameter: String,
    pub n: usize,
    #[serde(with = "rat_str")]
    pub best_value: Rat,
    pub best_value_float: f64,
    pub witness: Witness,
    pub candidates: u64,
    pub method: String,
    pub bounds: Vec<BoundCheck>,
    /// Set by the counterexample hunt: best value exceeds `2^-k`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exceeds_power_bound: Option<bool>,
}

/// All weakly decreasing sequences in `{0..n}^n`; there are `C(2n, n)`.
pub fn enumerate_box_partitions(n: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    fn rec(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if cur.len() == n {
            out.push(Partition { n, parts: cur.clone() });
            return;
        }
        for v in (0..=max).rev() {
            cur.push(v);
            rec(n, v, cur, out);
            cur.pop();
        }
    }
    rec(n, n, &mut cur, &mut out);
    out
}

/// `sum_ij |b*_i - b_j|^k` in integer units (denominator `n^{2+k}`).
fn partition_units(parts: &[usize], n: usize, k: u32) -> u128 {
    let conj = conjugate_raw(parts, n);
    let mut pow = vec![0u128; n + 1];
    for (d, slot) in pow.iter_mut().enumerate() {
        *slot = (d as u128).pow(k);
    }
    let mut sum = 0u128;
    for &bi in &conj {
        for &bj in parts {
            sum += pow[bi.abs_diff(bj)];
        }
    }
    sum
}

fn units_to_value(units: u128, n: usize, k: u32) -> Rat {
    let denom = num_bigint::BigInt::from(n as u64).pow(2 + k);
    Rat::new(units.into(), denom)
}

/// The partition objective `(1/n^{2+k}) sum_ij |b*_i - b_j|^k`.
pub fn partition_objective(b: &Partition, k: u32) -> Rat {
    units_to_value(partition_units(&b.sorted_desc(), b.n, k), b.n, k)
}

fn standard_bounds(k: u32, best: &Rat) -> Vec<BoundCheck> {
    let mut out = Vec::new();
    if k <= 2 {
        let value = crate::rational::pow2_neg(k);
        out.push(BoundCheck {
            name: format!("power_bound(2^-{})", k),
            satisfied: best <= &value,
            value,
        });
    }
    let value = crate::bounds::eps_moment_bound(k);
    out.push(BoundCheck {
        name: "eps_layer_cake".into(),
        satisfied: best <= &value,
        value,
    });
    if k >= 3 {
        let value = crate::bounds::new_bound(k).expect("k >= 3");
        out.push(BoundCheck {
            name: "new_bound".into(),
            satisfied: best <= &value,
            value,
        });
    }
    out
}

/// Exhaustive maximum of the partition objective over the `n x n` box.
pub fn exhaustive_best(n: usize, k: u32) -> Result<SearchReport> {
    if n == 0 {
        return Err(Error::OutOfRange("n must be >= 1".into()));
    }
    if n > PARTITION_GUARD {
        return Err(Error::GuardExceeded { n, limit: PARTITION_GUARD });
    }
    let mut best_units = 0u128;
    let mut best_parts: Vec<usize> = vec![0; n];
    let mut candidates = 0u64;
    for b in enumerate_box_partitions(n) {
        candidates += 1;
        let units = partition_units(&b.parts, n, k);
        if units > best_units || (units == best_units && b.parts < best_parts) {
            best_units = units;
            best_parts = b.parts;
        }
    }
    let best = units_to_value(best_units, n, k);
    Ok(SearchReport {
        objective: "partition_moment".into(),
        parameter: format!("k={}", k),
        n,
        best_value_float: to_f64(&best),
        bounds: standard_bounds(k, &best),
        best_value: best,
        witness: Witness::Partition(Partition { n, parts: best_parts }),
        candidates,
        method: "exhaustive".into(),
        exceeds_power_bound: None,
    })
}

/// Exhaustive maximum of the graph objective over all `2^{n^2}` biadjacency
/// matrices; agrees with [`exhaustive_best`] by the degree-sequence
/// reduction.
pub fn exhaustive_graphs(n: usize, k: u32) -> Result<SearchReport> {
    if n == 0 || n > GRAPH_GUARD {
        return Err(Error::GuardExceeded { n, limit: GRAPH_GUARD });
    }
    let cells = n * n;
    let mut best_units = 0u128;
    let mut best_mask = 0u32;
    let mut pow = vec![0u128; n + 1];
    for (d, slot) in pow.iter_mut().enumerate() {
        *slot = (d as u128).pow(k);
    }
    for mask in 0..(1u64 << cells) as u32 {
        let mut rows = [0usize; GRAPH_GUARD];
        let mut cols = [0usize; GRAPH_GUARD];
        for i in 0..n {
            for j in 0..n {
                if (mask >> (i * n + j)) & 1 == 1 {
                    rows[i] += 1;
                    cols[j] += 1;
                }
            }
        }
        let mut units = 0u128;
        for &r in rows.iter().take(n) {
            for &c in cols.iter().take(n) {
                units += pow[r.abs_diff(c)];
            }
        }
        if units > best_units {
            best_units = units;
            best_mask = mask;
        }
    }
    let adj: Vec<Vec<u8>> = (0..n)
        .map(|i| (0..n).map(|j| ((best_mask >> (i * n + j)) & 1) as u8).collect())
        .collect();
    let g = BipartiteGraph::new(adj)?;
    let best = units_to_value(best_units, n, k);
    debug_assert_eq!(graphs::objective(&g, k), best);
    Ok(SearchReport {
        objective: "graph_moment".into(),
        parameter: format!("k={}", k),
        n,
        best_value_float: to_f64(&best),
        bounds: standard_bounds(k, &best),
        best_value: best,
        witness: Witness::Graph(g),
        candidates: 1u64 << cells,
        method: "exhaustive".into(),
        exceeds_power_bound: None,
    })
}

const RESTARTS: usize = 32;

/// Hill climbing over box partitions. Moves add or remove one cell of the
/// Ferrer shape, preserving weak monotonicity; deterministic given the
/// seed. Reports a lower bound on the supremum.
pub fn local_search(n: usize, k: u32, seed: u64, max_iters: u64) -> Result<SearchReport> {
    if n == 0 {
        return Err(Error::OutOfRange("n must be >= 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best_units = 0u128;
    let mut best_parts = vec![0usize; n];
    let mut candidates = 0u64;

    let evaluate = |parts: &[usize], candidates: &mut u64| -> u128 {
        *candidates += 1;
        partition_units(parts, n, k)
    };

    for restart in 0..RESTARTS {
        let mut parts: Vec<usize> = if restart == 0 {
            vec![0; n]
        } else {
            let mut p: Vec<usize> = (0..n).map(|_| rng.gen_range(0..=n)).collect();
            p.sort_unstable_by(|a, b| b.cmp(a));
            p
        };
        let mut cur = evaluate(&parts, &mut candidates);
        if cur > best_units || (cur == best_units && parts < best_parts) {
            best_units = cur;
            best_parts = parts.clone();
        }
        let mut iters = 0u64;
        while iters < max_iters {
            iters += 1;
            let mut improved = false;
            // single-cell moves, first improving neighbour wins
            for i in 0..n {
                // add a cell in row i
                if parts[i] < n && (i == 0 || parts[i - 1] > parts[i]) {
                    parts[i] += 1;
                    let v = evaluate(&parts, &mut candidates);
                    if v > cur {
                        cur = v;
                        improved = true;
                        break;
                    }
                    parts[i] -= 1;
                }
                // remove a cell from row i
                if parts[i] > 0 && (i + 1 == n || parts[i + 1] < parts[i]) {
                    parts[i] -= 1;
                    let v = evaluate(&parts, &mut candidates);
                    if v > cur {
                        cur = v;
                        improved = true;
                        break;
                    }
                    parts[i] += 1;
                }
            }
            if !improved {
                break;
            }
        }
        if cur > best_units || (cur == best_units && parts < best_parts) {
            best_units = cur;
            best_parts = parts;
        }
        if max_iters == 0 {
            break; // seed partition only, per contract
        }
    }

    let best = units_to_value(best_units, n, k);
    Ok(SearchReport {
        objective: "partition_moment".into(),
        parameter: format!("k={}", k),
        n,
        best_value_float: to_f64(&best),
        bounds: standard_bounds(k, &best),
        best_value: best,
        witness: Witness::Partition(Partition { n, parts: best_parts }),
        candidates,
        method: "local".into(),
        exceeds_power_bound: None,
    })
}

/// Grid resolution for the two-level analytic family.
pub const TWO_LEVEL_GRID: i64 = 1000;

/// Maximises `g(a) = a(1-a)^k + (1-a)a^k` over the rational grid
/// `a = 1/m ... (m-1)/m`; this is `E|X - Y|^k` for `X = 1_A`, `Y = E 1_A`
/// with `P(A) = a`, the canonical counterexample family.
pub fn two_level_family(k: u32) -> Result<(Rat, Rat)> {
    if k < 2 {
        return Err(Error::OutOfRange("k must be >= 2".into()));
    }
    let mut best_a = rat(1, 2);
    let mut best = Rat::zero();
    for i in 1..TWO_LEVEL_GRID {
        let a = rat(i, TWO_LEVEL_GRID);
        let one_minus = Rat::one() - &a;
        let value = &a * num_traits::pow::pow(one_minus.clone(), k as usize)
            + &one_minus * num_traits::pow::pow(a.clone(), k as usize);
        if value > best {
            best = value;
            best_a = a;
        }
    }
    Ok((best_a, best))
}

/// The two-level diagram realising `g(a)`: `X = 1_A` with `P(A) = a` and
/// `Y` its mean, as a step function.
pub fn two_level_witness(a: &Rat) -> StepFn {
    diagrams::two_level(a, &Rat::zero()).expect("two-level diagram is valid")
}

/// Hunts for `E|X - Y|^k > 2^-k`, which the theory predicts for `k >= 4`.
/// Combines the analytic two-level family, exhaustive search up to
/// `min(n_max, 8)`, and local search beyond.
pub fn counterexample_hunt(k: u32, n_max: usize) -> Result<SearchReport> {
    if k < 4 {
        return Err(Error::OutOfRange(
            "k must be >= 4; the range (2, 3] is open".into(),
        ));
    }
    let (a, family_value) = two_level_family(k)?;
    let mut best = family_value.clone();
    let mut witness = Witness::Diagram(two_level_witness(&a));
    let mut candidates = (TWO_LEVEL_GRID - 1) as u64;
    let mut method = String::from("analytic-family");

    let exhaustive_cap = n_max.min(8);
    for n in 1..=exhaustive_cap {
        let report = exhaustive_best(n, k)?;
        candidates += report.candidates;
        if report.best_value > best {
            best = report.best_value;
            witness = report.witness;
            method = "exhaustive".into();
        }
    }
    if n_max > exhaustive_cap {
        let report = local_search(n_max, k, 0, 10_000)?;
        candidates += report.candidates;
        if report.best_value > best {
            best = report.best_value;
            witness = report.witness;
            method = "local".into();
        }
    }

    let threshold = crate::rational::pow2_neg(k);
    let exceeds = best > threshold;
    let mut bounds = standard_bounds(k, &best);
    bounds.push(BoundCheck {
        name: format!("2^-{} (disproved hypothesis)", k),
        value: threshold,
        satisfied: true, // informational: the hunt is expected to beat it
    });
    Ok(SearchReport {
        objective: "counterexample_hunt".into(),
        parameter: format!("k={}", k),
        n: n_max,
        best_value_float: to_f64(&best),
        bounds,
        best_value: best,
        witness,
        candidates,
        method,
        exceeds_power_bound: Some(exceeds),
    })
}

/// Maximises the strict tail `P(|X_f - Y_f| > delta)` over all diagrams of
/// box partitions in an `m x m` box, plus the analytic near-extremal
/// two-level member with `delta' = delta + 1/m`. Reports the gap to the
/// supremum `2 delta (1 - delta)`.
pub fn tail_search(delta: &Rat, resolution: usize) -> Result<SearchReport> {
    if delta <= &rat(1, 2) || delta > &Rat::one() {
        return Err(Error::OutOfRange(format!(
            "delta = {} outside (1/2, 1]",
            delta
        )));
    }
    let m = resolution;
    if m == 0 || m > 12 {
        return Err(Error::GuardExceeded { n: m, limit: 12 });
    }

    // Integer threshold: |b*_i - b_j|/m > delta = p/q  <=>  q|b*_i - b_j| > p m.
    let p = delta.numer().clone();
    let q = delta.denom().clone();
    let mut best_count = 0u64; // tail in units of 1/m^2
    let mut best_parts = vec![0usize; m];
    let mut candidates = 0u64;
    for b in enumerate_box_partitions(m) {
        candidates += 1;
        let conj = conjugate_raw(&b.parts, m);
        let mut count = 0u64;
        for &bi in &conj {
            for &bj in &b.parts {
                let d = bi.abs_diff(bj);
                if &q * num_bigint::BigInt::from(d as u64)
                    > &p * num_bigint::BigInt::from(m as u64)
                {
                    count += 1;
                }
            }
        }
        if count > best_count {
            best_count = count;
            best_parts = b.parts;
        }
    }
    let mut best = rat(best_count as i64, (m * m) as i64);
    let mut witness = Witness::Partition(Partition { n: m, parts: best_parts });
    let mut method = String::from("exhaustive");

    // The analytic two-level member: heights (1, 1 - delta'), widths
    // (1 - delta', delta'), whose strict tail is exactly 2 delta'(1 - delta').
    let delta_prime = delta + rat(1, m as i64);
    if delta_prime < Rat::one() {
        let w = Rat::one() - &delta_prime;
        let f = diagrams::two_level(&w, &w)?;
        let t = diagrams::tail(&f, delta, true);
        candidates += 1;
        if t > best {
            best = t;
            witness = Witness::Diagram(f);
            method = "analytic-family".into();
        }
    }

    let sup = crate::bounds::independent_tail_curve(delta)?;
    let gap = &sup - &best;
    let bounds = vec![
        BoundCheck {
            name: "2*delta*(1-delta)".into(),
            satisfied: best <= sup,
            value: sup.clone(),
        },
        BoundCheck {
            name: "gap_to_supremum".into(),
            satisfied: gap <= rat(2, m as i64),
            value: gap,
        },
    ];
    Ok(SearchReport {
        objective: "tail".into(),
        parameter: format!("delta={}", format_rat(delta)),
        n: m,
        best_value_float: to_f64(&best),
        bounds,
        best_value: best,
        witness,
        candidates,
        method,
        exceeds_power_bound: None,
    })
}

/// Re-evaluates a report's witness through the public evaluators; used by
/// the verification suites and tests.
pub fn reevaluate(report: &SearchReport, k: Option<u32>, delta: Option<&Rat>) -> Result<Rat> {
    match (&report.witness, k, delta) {
        (Witness::Partition(b), Some(k), None) => Ok(partition_objective(b, k)),
        (Witness::Partition(b), None, Some(d)) => {
            Ok(diagrams::tail(&diagrams::from_partition(b), d, true))
        }
        (Witness::Diagram(f), Some(k), None) => Ok(diagrams::moment(f, k)),
        (Witness::Diagram(f), None, Some(d)) => Ok(diagrams::tail(f, d, true)),
        (Witness::Graph(g), Some(k), None) => Ok(graphs::objective(g, k)),
        _ => Err(Error::OutOfRange("unsupported witness/parameter combination".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, pow2_neg};

    #[test]
    fn enumeration_counts() {
        // C(2n, n)
        assert_eq!(enumerate_box_partitions(1).len(), 2);
        assert_eq!(enumerate_box_partitions(2).len(), 6);
        assert_eq!(enumerate_box_partitions(3).len(), 20);
        assert_eq!(enumerate_box_partitions(5).len(), 252);
        for b in enumerate_box_partitions(4) {
            assert!(b.is_sorted_desc());
        }
    }

    #[test]
    fn exhaustive_best_examples() {
        let r = exhaustive_best(2, 2).unwrap();
        assert_eq!(r.best_value, rat(1, 4));
        if let Witness::Partition(b) = &r.witness {
            assert_eq!(partition_objective(b, 2), rat(1, 4));
        } else {
            panic!("expected partition witness");
        }

        let r = exhaustive_best(1, 3).unwrap();
        assert_eq!(r.best_value, int(0));

        assert!(matches!(
            exhaustive_best(20, 2),
            Err(Error::GuardExceeded { .. })
        ));
    }

    #[test]
    fn exhaustive_best_even_n_attains_quarter() {
        for n in [2usize, 4, 6] {
            let r = exhaustive_best(n, 2).unwrap();
            assert_eq!(r.best_value, rat(1, 4), "n = {}", n);
        }
        for n in [3usize, 5] {
            let r = exhaustive_best(n, 2).unwrap();
            assert!(r.best_value < rat(1, 4));
        }
    }

    #[test]
    fn exhaustive_graphs_examples() {
        assert_eq!(exhaustive_graphs(2, 2).unwrap().best_value, rat(1, 4));
        assert_eq!(exhaustive_graphs(2, 4).unwrap().best_value, rat(1, 16));
        assert_eq!(
            exhaustive_graphs(3, 3).unwrap().best_value,
            exhaustive_best(3, 3).unwrap().best_value
        );
        assert!(exhaustive_graphs(5, 2).is_err());
    }

    #[test]
    fn local_search_reaches_global_on_small_boxes() {
        for seed in [0u64, 1, 42] {
            let r = local_search(2, 2, seed, 1000).unwrap();
            assert_eq!(r.best_value, rat(1, 4));
        }
    }

    #[test]
    fn local_search_zero_iters_returns_seed_value() {
        let r = local_search(3, 2, 7, 0).unwrap();
        // empty partition scores 0
        assert_eq!(r.best_value, int(0));
        assert_eq!(r.candidates, 1);
    }

    #[test]
    fn local_never_beats_exhaustive() {
        for n in 1..=5usize {
            for k in [2u32, 3, 4] {
                let local = local_search(n, k, 123, 500).unwrap();
                let exact = exhaustive_best(n, k).unwrap();
                assert!(local.best_value <= exact.best_value, "n={} k={}", n, k);
            }
        }
    }

    #[test]
    fn local_search_tracks_two_level_family_at_n20() {
        // the rounded two-level shape lives in the 20-box, so the climber
        // should land within 1/20 of g(1/5) = 52/625
        let r = local_search(20, 4, 1, 100_000).unwrap();
        assert!(r.best_value >= rat(52, 625) - rat(1, 20), "got {}", r.best_value);
    }

    #[test]
    fn two_level_family_examples() {
        let (_, v) = two_level_family(2).unwrap();
        assert_eq!(v, rat(1, 4));
        let (_, v) = two_level_family(3).unwrap();
        assert_eq!(v, rat(1, 8));
        let (a, v) = two_level_family(4).unwrap();
        assert!(v >= rat(52, 625), "a = {} v = {}", a, v);
        assert!(v > pow2_neg(4));
    }

    #[test]
    fn two_level_witness_reevaluates() {
        let (a, v) = two_level_family(4).unwrap();
        let f = two_level_witness(&a);
        assert_eq!(diagrams::moment(&f, 4), v);
    }

    #[test]
    fn counterexample_hunt_examples() {
        let r = counterexample_hunt(4, 4).unwrap();
        assert_eq!(r.exceeds_power_bound, Some(true));
        assert!(r.best_value >= rat(52, 625));

        let r = counterexample_hunt(5, 3).unwrap();
        assert_eq!(r.exceeds_power_bound, Some(true));
        assert!(r.best_value > pow2_neg(5));

        assert!(counterexample_hunt(3, 4).is_err());
    }

    #[test]
    fn tail_search_examples() {
        let delta = rat(3, 5);
        let r = tail_search(&delta, 10).unwrap();
        let sup = crate::bounds::independent_tail_curve(&delta).unwrap();
        assert!(r.best_value <= sup);
        assert!(&sup - &r.best_value <= rat(2, 10));
        // the two-level member with delta' = delta + 1/m scores 2 delta'(1-delta')
        let dp = &delta + rat(1, 10);
        let expected = int(2) * &dp * (Rat::one() - &dp);
        assert!(r.best_value >= expected);

        let r = tail_search(&int(1), 5).unwrap();
        assert_eq!(r.best_value, int(0));

        assert!(tail_search(&rat(1, 2), 5).is_err());
        assert!(tail_search(&rat(3, 5), 13).is_err());
    }

    #[test]
    fn reports_reevaluate_exactly() {
        let r = exhaustive_best(4, 3).unwrap();
        assert_eq!(reevaluate(&r, Some(3), None).unwrap(), r.best_value);
        let r = exhaustive_graphs(3, 2).unwrap();
        assert_eq!(reevaluate(&r, Some(2), None).unwrap(), r.best_value);
        let d = rat(7, 10);
        let r = tail_search(&d, 6).unwrap();
        assert_eq!(reevaluate(&r, None, Some(&d)).unwrap(), r.best_value);
    }

    #[test]
    fn partition_objective_matches_diagram_moment() {
        for n in 1..=4usize {
            for b in enumerate_box_partitions(n) {
                for k in [2u32, 3] {
                    assert_eq!(
                        partition_objective(&b, k),
                        diagrams::moment(&diagrams::from_partition(&b), k)
                    );
                }
            }
        }
    }
}
