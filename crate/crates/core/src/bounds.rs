//! Closed-form bounds and identities: the Dubins expectation bound, the
//! power-moment supremum, tail envelopes with an exact layer-cake
//! integrator, the independent-pair and dependent-pair tail curves, the
//! multivariate spread bound, and the sphere chord-sum identity.

use num_traits::{One, Zero};

use crate::rational::{int, pow2_neg, rat, Rat};
use crate::{Error, Result};

/// A polynomial with rational coefficients, `coeffs[i]` multiplying `u^i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    pub coeffs: Vec<Rat>,
}

impl Poly {
    pub fn constant(c: Rat) -> Self {
        Poly { coeffs: vec![c] }
    }

    pub fn eval(&self, u: &Rat) -> Rat {
        self.coeffs
            .iter()
            .rev()
            .fold(Rat::zero(), |acc, c| acc * u + c)
    }
}

/// An upper bound on a tail probability as a function of the threshold.
/// Shipped envelopes are piecewise polynomial and integrate exactly; other
/// closed forms fall back to numeric quadrature in [`layer_cake`].
pub enum TailEnvelope {
    PiecewisePoly {
        name: &'static str,
        /// `(lo, hi, poly)` pieces covering `[0, 1]`.
        pieces: Vec<(Rat, Rat, Poly)>,
    },
    Custom {
        name: &'static str,
        eval: fn(f64) -> f64,
    },
}

impl TailEnvelope {
    pub fn name(&self) -> &'static str {
        match self {
            TailEnvelope::PiecewisePoly { name, .. } => name,
            TailEnvelope::Custom { name, .. } => name,
        }
    }

    pub fn eval_f64(&self, u: f64) -> f64 {
        match self {
            TailEnvelope::PiecewisePoly { pieces, .. } => pieces
                .iter()
                .find(|(lo, hi, _)| {
                    crate::rational::to_f64(lo) <= u && u <= crate::rational::to_f64(hi)
                })
                .map(|(_, _, p)| {
                    p.coeffs
                        .iter()
                        .rev()
                        .fold(0.0, |acc, c| acc * u + crate::rational::to_f64(c))
                })
                .unwrap_or(0.0),
            TailEnvelope::Custom { eval, .. } => eval(u),
        }
    }

    /// The proven envelope `min(2(1 - u), 1)`.
    pub fn eps() -> Self {
        TailEnvelope::PiecewisePoly {
            name: "eps",
            pieces: vec![
                (int(0), rat(1, 2), Poly::constant(int(1))),
                (rat(1, 2), int(1), Poly { coeffs: vec![int(2), int(-2)] }),
            ],
        }
    }

    /// The conjectured independent-pair envelope: 1 on `[0, 1/2]`, then
    /// `2u(1 - u)`.
    pub fn conjecture() -> Self {
        TailEnvelope::PiecewisePoly {
            name: "conjecture",
            pieces: vec![
                (int(0), rat(1, 2), Poly::constant(int(1))),
                (rat(1, 2), int(1), Poly { coeffs: vec![int(0), int(2), int(-2)] }),
            ],
        }
    }

    /// The dependent-pair tail curve: 1 on `[0, 1/2]`, then
    /// `2(1 - u)/(2 - u)`; not polynomial, integrates numerically.
    pub fn burdzy_pal() -> Self {
        TailEnvelope::Custom {
            name: "burdzy-pal",
            eval: |u| {
                if u <= 0.5 {
                    1.0
                } else {
                    2.0 * (1.0 - u) / (2.0 - u)
                }
            },
        }
    }
}

/// Result of a layer-cake integration: exact for piecewise-polynomial
/// envelopes, numeric with a reported tolerance otherwise.
#[derive(Debug, Clone, PartialEq)]
pub enum LayerCakeValue {
    Exact(Rat),
    Approximate { value: f64, tolerance: f64 },
}

impl LayerCakeValue {
    pub fn to_f64(&self) -> f64 {
        match self {
            LayerCakeValue::Exact(r) => crate::rational::to_f64(r),
            LayerCakeValue::Approximate { value, .. } => *value,
        }
    }

    pub fn exact(&self) -> Option<&Rat> {
        match self {
            LayerCakeValue::Exact(r) => Some(r),
            LayerCakeValue::Approximate { .. } => None,
        }
    }
}

/// `integral_0^1 k u^{k-1} env(u) du`, symbolically for piecewise
/// polynomials via `integral k u^{k-1} u^i du = k/(k+i) u^{k+i}`.
pub fn layer_cake(env: &TailEnvelope, k: u32) -> Result<LayerCakeValue> {
    if k == 0 {
        return Err(Error::OutOfRange("k must be positive".into()));
    }
    match env {
        TailEnvelope::PiecewisePoly { pieces, .. } => {
            let mut total = Rat::zero();
            for (lo, hi, poly) in pieces {
                for (i, c) in poly.coeffs.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let exp = (k as usize) + i;
                    let factor = rat(k as i64, exp as i64);
                    let term = num_traits::pow::pow(hi.clone(), exp)
                        - num_traits::pow::pow(lo.clone(), exp);
                    total += factor * c * term;
                }
            }
            Ok(LayerCakeValue::Exact(total))
        }
        TailEnvelope::Custom { eval, .. } => {
            // composite Simpson on a fine uniform grid
            let n = 20_000usize;
            let h = 1.0 / n as f64;
            let f = |u: f64| k as f64 * u.powi(k as i32 - 1) * eval(u);
            let mut sum = f(0.0) + f(1.0);
            for i in 1..n {
                let u = i as f64 * h;
                sum += if i % 2 == 0 { 2.0 * f(u) } else { 4.0 * f(u) };
            }
            Ok(LayerCakeValue::Approximate {
                value: sum * h / 3.0,
                tolerance: 1e-8,
            })
        }
    }
}

/// Dubins bound `p(n - p)/(1 + p(n - 2))` on `E max X_i` at `E X_1 = p`.
pub fn dubins_bound(n: u32, p: &Rat) -> Result<Rat> {
    if n < 1 {
        return Err(Error::OutOfRange("n must be >= 1".into()));
    }
    if p < &Rat::zero() || p > &Rat::one() {
        return Err(Error::OutOfRange("p must lie in [0,1]".into()));
    }
    let n = int(n as i64);
    let num = p * (&n - p);
    let den = Rat::one() + p * (&n - int(2));
    if den.is_zero() {
        // only possible at n = 1, p = 1: the bound degenerates to p
        return Ok(p.clone());
    }
    Ok(num / den)
}

/// `sup E|X - Y|^alpha = 2^-alpha`, proven only for `alpha in [0, 2]`;
/// rejects larger exponents (counterexamples exist for exponents > 3 and
/// the range (2, 3] is open).
pub fn power_bound(alpha: f64) -> Result<f64> {
    if !(0.0..=2.0).contains(&alpha) {
        return Err(Error::OutOfRange(format!(
            "alpha = {} outside [0, 2], where the formula is proven",
            alpha
        )));
    }
    Ok(2f64.powf(-alpha))
}

/// The new moment bound `2k/((k+1)(k+2)) + 2^-k - 2^{-k-1} k(k+3)/((k+1)(k+2))`
/// for `k >= 3`; equals the layer-cake integral of the conjecture envelope.
pub fn new_bound(k: u32) -> Result<Rat> {
    if k < 3 {
        return Err(Error::OutOfRange("k must be >= 3".into()));
    }
    let kk = int(k as i64);
    let denom = (&kk + int(1)) * (&kk + int(2));
    let first = int(2) * &kk / &denom;
    let third = pow2_neg(k + 1) * &kk * (&kk + int(3)) / &denom;
    Ok(first + pow2_neg(k) - third)
}

/// Dependent-pair tail supremum `2(1 - delta)/(2 - delta)` on `(1/2, 1]`.
pub fn burdzy_pal_tail(delta: &Rat) -> Result<Rat> {
    if delta <= &rat(1, 2) || delta > &Rat::one() {
        return Err(Error::OutOfRange(format!(
            "delta = {} outside (1/2, 1]",
            delta
        )));
    }
    Ok(int(2) * (Rat::one() - delta) / (int(2) - delta))
}

/// Independent diagram tail supremum `2 delta (1 - delta)` on `(1/2, 1]`.
pub fn independent_tail_curve(delta: &Rat) -> Result<Rat> {
    if delta <= &rat(1, 2) || delta > &Rat::one() {
        return Err(Error::OutOfRange(format!(
            "delta = {} outside (1/2, 1]",
            delta
        )));
    }
    Ok(int(2) * delta * (Rat::one() - delta))
}

/// Multivariate spread bound `n^2/4 * p(1 - p)`.
pub fn multivariate_bound(n: u32, p: &Rat) -> Result<Rat> {
    if n < 2 {
        return Err(Error::OutOfRange("n must be >= 2".into()));
    }
    if p < &Rat::zero() || p > &Rat::one() {
        return Err(Error::OutOfRange("p must lie in [0,1]".into()));
    }
    Ok(rat((n as i64) * (n as i64), 4) * p * (Rat::one() - p))
}

/// The pairwise-spread value of the alternating configuration
/// `X_i in {1_A, P(A)}` for even `n`: `(1/2) sum_{i != j} E|X_i - X_j|^2`.
/// Equals [`multivariate_bound`].
pub fn equality_config(n: u32, p: &Rat) -> Result<Rat> {
    if n < 2 || n % 2 != 0 {
        return Err(Error::OutOfRange("n must be even and >= 2".into()));
    }
    if p < &Rat::zero() || p > &Rat::one() {
        return Err(Error::OutOfRange("p must lie in [0,1]".into()));
    }
    // k indicators and k constants: the k^2 mixed unordered pairs each
    // contribute E|1_A - p|^2 = p(1 - p); same-type pairs contribute 0.
    let half = (n / 2) as i64;
    Ok(int(half * half) * p * (Rat::one() - p))
}

/// A multiset of points constrained to a sphere.
#[derive(Debug, Clone)]
pub struct SpherePoints {
    pub points: Vec<Vec<f64>>,
    pub radius: f64,
    pub center: Vec<f64>,
}

const ON_SPHERE_TOL: f64 = 1e-12;

impl SpherePoints {
    pub fn new(points: Vec<Vec<f64>>, radius: f64, center: Vec<f64>) -> Result<Self> {
        for (i, p) in points.iter().enumerate() {
            if p.len() != center.len() {
                return Err(Error::LengthMismatch(p.len(), center.len()));
            }
            let dist: f64 = p
                .iter()
                .zip(&center)
                .map(|(a, b)| (a - b) * (a - b))
                .sum::<f64>()
                .sqrt();
            let off = (dist - radius).abs();
            if off > ON_SPHERE_TOL * radius.max(1.0) {
                return Err(Error::OffSphere(i, off));
            }
        }
        Ok(SpherePoints { points, radius, center })
    }
}

/// Chord-sum identity: returns `(lhs, rhs)` with
/// `lhs = sum over unordered pairs of squared chord lengths` and
/// `rhs = m^2 (radius^2 - |centroid - center|^2)`. The two agree to
/// floating-point accuracy for any sphere configuration.
pub fn chord_sum_check(pts: &SpherePoints) -> (f64, f64) {
    let m = pts.points.len();
    let dim = pts.center.len();
    let mut lhs = 0.0;
    for i in 0..m {
        for j in (i + 1)..m {
            lhs += pts.points[i]
                .iter()
                .zip(&pts.points[j])
                .map(|(a, b)| (a - b) * (a - b))
                .sum::<f64>();
        }
    }
    let centroid: Vec<f64> = (0..dim)
        .map(|d| pts.points.iter().map(|p| p[d]).sum::<f64>() / m as f64)
        .collect();
    let d2: f64 = centroid
        .iter()
        .zip(&pts.center)
        .map(|(a, b)| (a - b) * (a - b))
        .sum();
    let rhs = (m as f64) * (m as f64) * (pts.radius * pts.radius - d2);
    (lhs, rhs)
}

/// Convenience: the `(2 - 2^-k)/(1 + k)` closed form for the eps
/// envelope integral.
pub fn eps_moment_bound(k: u32) -> Rat {
    (int(2) - pow2_neg(k)) / int(1 + k as i64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dubins_examples() {
        assert_eq!(dubins_bound(2, &rat(1, 2)).unwrap(), rat(3, 4));
        assert_eq!(dubins_bound(1, &rat(2, 7)).unwrap(), rat(2, 7));
        assert_eq!(dubins_bound(5, &int(0)).unwrap(), int(0));
    }

    #[test]
    fn power_bound_examples() {
        assert_eq!(power_bound(1.0).unwrap(), 0.5);
        assert_eq!(power_bound(2.0).unwrap(), 0.25);
        assert_eq!(power_bound(0.0).unwrap(), 1.0);
        assert!(power_bound(2.5).is_err());
    }

    #[test]
    fn layer_cake_eps_closed_form() {
        for k in 1..=16 {
            let v = layer_cake(&TailEnvelope::eps(), k).unwrap();
            assert_eq!(v.exact().unwrap(), &eps_moment_bound(k));
        }
        let v = layer_cake(&TailEnvelope::eps(), 2).unwrap();
        assert_eq!(v.exact().unwrap(), &rat(7, 12));
    }

    #[test]
    fn layer_cake_constant_envelope() {
        let one = TailEnvelope::PiecewisePoly {
            name: "one",
            pieces: vec![(int(0), int(1), Poly::constant(int(1)))],
        };
        for k in [1u32, 3, 7] {
            assert_eq!(layer_cake(&one, k).unwrap().exact().unwrap(), &int(1));
        }
    }

    #[test]
    fn layer_cake_conjecture_matches_new_bound() {
        for k in 3..=16 {
            let v = layer_cake(&TailEnvelope::conjecture(), k).unwrap();
            assert_eq!(v.exact().unwrap(), &new_bound(k).unwrap());
        }
        assert_eq!(new_bound(3).unwrap(), rat(59, 160));
    }

    #[test]
    fn layer_cake_numeric_fallback() {
        let v = layer_cake(&TailEnvelope::burdzy_pal(), 3).unwrap();
        match v {
            LayerCakeValue::Approximate { value, tolerance } => {
                // dominates the independent-envelope exact value
                let exact = crate::rational::to_f64(&new_bound(3).unwrap());
                assert!(value + tolerance >= exact);
            }
            LayerCakeValue::Exact(_) => panic!("expected numeric fallback"),
        }
    }

    #[test]
    fn new_bound_monotone_to_zero() {
        let mut prev = new_bound(3).unwrap();
        for k in 4..=64 {
            let cur = new_bound(k).unwrap();
            assert!(cur < prev, "k = {}", k);
            assert!(cur > Rat::zero());
            prev = cur;
        }
        assert!(new_bound(2).is_err());
    }

    #[test]
    fn tail_curve_examples() {
        assert_eq!(burdzy_pal_tail(&int(1)).unwrap(), int(0));
        assert_eq!(burdzy_pal_tail(&rat(3, 4)).unwrap(), rat(2, 5));
        assert_eq!(burdzy_pal_tail(&rat(3, 5)).unwrap(), rat(4, 7));
        assert!(burdzy_pal_tail(&rat(1, 2)).is_err());

        assert_eq!(independent_tail_curve(&rat(3, 4)).unwrap(), rat(3, 8));
        assert_eq!(independent_tail_curve(&int(1)).unwrap(), int(0));
        assert_eq!(independent_tail_curve(&rat(3, 5)).unwrap(), rat(12, 25));
    }

    #[test]
    fn independence_lowers_the_tail_supremum() {
        for i in 51..=100 {
            let d = rat(i, 100);
            assert!(
                independent_tail_curve(&d).unwrap() <= burdzy_pal_tail(&d).unwrap(),
                "delta = {}",
                d
            );
        }
    }

    #[test]
    fn multivariate_examples() {
        assert_eq!(multivariate_bound(2, &rat(1, 2)).unwrap(), rat(1, 4));
        assert_eq!(equality_config(4, &rat(1, 3)).unwrap(), rat(8, 9));
        assert_eq!(
            equality_config(4, &rat(1, 3)).unwrap(),
            multivariate_bound(4, &rat(1, 3)).unwrap()
        );
        assert_eq!(multivariate_bound(3, &int(0)).unwrap(), int(0));
        assert!(equality_config(3, &rat(1, 2)).is_err());
    }

    #[test]
    fn chord_examples() {
        let antipodal = SpherePoints::new(
            vec![vec![1.0, 0.0], vec![-1.0, 0.0]],
            1.0,
            vec![0.0, 0.0],
        )
        .unwrap();
        let (lhs, rhs) = chord_sum_check(&antipodal);
        assert!((lhs - 4.0).abs() < 1e-12 && (rhs - 4.0).abs() < 1e-12);

        let third = (2.0 * std::f64::consts::PI) / 3.0;
        let equilateral = SpherePoints::new(
            (0..3)
                .map(|i| vec![(i as f64 * third).cos(), (i as f64 * third).sin()])
                .collect(),
            1.0,
            vec![0.0, 0.0],
        )
        .unwrap();
        let (lhs, rhs) = chord_sum_check(&equilateral);
        assert!((lhs - 9.0).abs() < 1e-9 && (rhs - 9.0).abs() < 1e-9);

        let identical = SpherePoints::new(
            vec![vec![0.0, 1.0], vec![0.0, 1.0]],
            1.0,
            vec![0.0, 0.0],
        )
        .unwrap();
        let (lhs, rhs) = chord_sum_check(&identical);
        assert!(lhs.abs() < 1e-12 && rhs.abs() < 1e-9);
    }

    #[test]
    fn off_sphere_rejected() {
        assert!(SpherePoints::new(vec![vec![1.1, 0.0]], 1.0, vec![0.0, 0.0]).is_err());
    }
}
