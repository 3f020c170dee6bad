//! Points of the open probability simplex and pairs of them.
//!
//! A [`Distribution`] has at least two components, every component strictly
//! positive, and a sum within [`SUM_TOLERANCE`] of one. Zero components are
//! rejected rather than clamped: several measures (Kullback-Leibler, the
//! ratio bounds) are singular there.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution as _, Exp1};

use crate::error::{Error, Result};
use crate::numeric::compensated_sum;

/// Maximum allowed absolute deviation of the component sum from one.
pub const SUM_TOLERANCE: f64 = 1e-9;

/// A validated discrete probability distribution with strictly positive mass.
#[derive(Debug, Clone, PartialEq)]
pub struct Distribution {
    values: Box<[f64]>,
    mass_defect: f64,
}

impl Distribution {
    /// Validates `raw` as a distribution.
    ///
    /// With `renormalize`, components are divided by their sum before the
    /// checks; otherwise the sum must already be within [`SUM_TOLERANCE`] of 1.
    pub fn validate(raw: &[f64], renormalize: bool) -> Result<Self> {
        if raw.len() < 2 {
            return Err(Error::DimensionTooSmall { len: raw.len() });
        }
        for (index, &value) in raw.iter().enumerate() {
            if !value.is_finite() {
                return Err(Error::NonFiniteComponent { index, value });
            }
            if value <= 0.0 {
                return Err(Error::NonPositiveComponent { index, value });
            }
        }

        let values: Box<[f64]> = if renormalize {
            let total = compensated_sum(raw.iter().copied());
            raw.iter().map(|v| v / total).collect()
        } else {
            raw.into()
        };

        let sum = compensated_sum(values.iter().copied());
        if (sum - 1.0).abs() > SUM_TOLERANCE {
            return Err(Error::SumOutOfTolerance { sum });
        }
        if let Some((index, &value)) = values.iter().enumerate().find(|(_, v)| **v <= 0.0) {
            // only reachable through underflow during renormalization
            return Err(Error::NonPositiveComponent { index, value });
        }

        Ok(Self {
            values,
            mass_defect: sum - 1.0,
        })
    }

    /// Shorthand for `validate(raw, false)`.
    pub fn new(raw: &[f64]) -> Result<Self> {
        Self::validate(raw, false)
    }

    /// The uniform distribution on `n` points.
    pub fn uniform(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::DimensionTooSmall { len: n });
        }
        Self::validate(&vec![1.0 / n as f64; n], true)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }

    /// `sum(values) - 1`, computed with compensated summation at construction.
    ///
    /// Formulas of the form `sum(w_i * t_i) - 1` are evaluated as
    /// `sum(w_i * (t_i - 1)) + mass_defect`, which is exact for any input.
    pub fn mass_defect(&self) -> f64 {
        self.mass_defect
    }

    /// Componentwise midpoint `(P + Q) / 2`.
    pub fn midpoint(&self, other: &Distribution) -> Result<Distribution> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                p: self.dim(),
                q: other.dim(),
            });
        }
        let mid: Vec<f64> = self
            .values
            .iter()
            .zip(other.values.iter())
            .map(|(a, b)| 0.5 * (a + b))
            .collect();
        Distribution::new(&mid)
    }
}

impl AsRef<[f64]> for Distribution {
    fn as_ref(&self) -> &[f64] {
        &self.values
    }
}

/// An ordered pair `(P, Q)` of distributions of equal dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct DistributionPair {
    p: Distribution,
    q: Distribution,
}

impl DistributionPair {
    pub fn new(p: Distribution, q: Distribution) -> Result<Self> {
        if p.dim() != q.dim() {
            return Err(Error::DimensionMismatch {
                p: p.dim(),
                q: q.dim(),
            });
        }
        Ok(Self { p, q })
    }

    /// Validates both slices without renormalization and pairs them.
    pub fn from_slices(p: &[f64], q: &[f64]) -> Result<Self> {
        Self::new(Distribution::new(p)?, Distribution::new(q)?)
    }

    pub fn p(&self) -> &Distribution {
        &self.p
    }

    pub fn q(&self) -> &Distribution {
        &self.q
    }

    pub fn dim(&self) -> usize {
        self.p.dim()
    }

    /// `(Q, P)`.
    pub fn swapped(&self) -> Self {
        Self {
            p: self.q.clone(),
            q: self.p.clone(),
        }
    }

    /// Iterates over `(p_i, q_i)`.
    pub fn iter(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.p.values.iter().copied().zip(self.q.values.iter().copied())
    }

    /// The tightest `(r, R)` with `r <= p_i / q_i <= R` for every `i`.
    pub fn ratio_bounds(&self) -> RatioBounds {
        let (mut r, mut big_r) = (f64::INFINITY, 0.0f64);
        for (p, q) in self.iter() {
            let x = p / q;
            r = r.min(x);
            big_r = big_r.max(x);
        }
        // the sums are equal only up to SUM_TOLERANCE, so clamp onto 1
        RatioBounds {
            r: r.min(1.0),
            big_r: big_r.max(1.0),
        }
    }

    /// Whether every ratio `p_i / q_i` lies in `[r, R]`.
    pub fn is_bracketed_by(&self, rb: &RatioBounds) -> bool {
        self.iter().all(|(p, q)| {
            let x = p / q;
            x >= rb.r && x <= rb.big_r
        })
    }
}

/// Constants `(r, R)` bracketing the likelihood ratios of a pair.
///
/// Two distributions with equal mass always have `min p/q <= 1 <= max p/q`,
/// so `0 < r <= 1 <= R` is an invariant of the type.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatioBounds {
    r: f64,
    big_r: f64,
}

impl RatioBounds {
    pub fn new(r: f64, big_r: f64) -> Result<Self> {
        let ok = r.is_finite() && big_r.is_finite() && r > 0.0 && r <= 1.0 && big_r >= 1.0;
        if !ok {
            return Err(Error::InvalidRatioBounds { r, big_r });
        }
        Ok(Self { r, big_r })
    }

    /// Lower bound `r`.
    pub fn lower(&self) -> f64 {
        self.r
    }

    /// Upper bound `R`.
    pub fn upper(&self) -> f64 {
        self.big_r
    }

    pub fn is_degenerate(&self) -> bool {
        self.r == self.big_r
    }

    /// `r < 1 < R`, the hypothesis of the chord and gap bounds.
    pub fn straddles_one(&self) -> bool {
        self.r < 1.0 && 1.0 < self.big_r
    }

    pub(crate) fn require_nondegenerate(&self) -> Result<()> {
        if self.r < self.big_r {
            Ok(())
        } else {
            Err(Error::DegenerateInterval { r: self.r })
        }
    }

    pub(crate) fn require_straddle(&self) -> Result<()> {
        if self.straddles_one() {
            Ok(())
        } else {
            Err(Error::IntervalNotStraddlingOne {
                r: self.r,
                big_r: self.big_r,
            })
        }
    }
}

/// Deterministic random pair of `n`-point distributions.
///
/// Each distribution is a vector of independent unit exponentials divided by
/// its sum, i.e. a uniform draw from the simplex. With `min_ratio_floor = Some(f)`,
/// both members are mixed with the uniform distribution (same weight for
/// both) just enough that `min_i p_i / q_i >= f`; `f` must lie in `(0, 1]`.
pub fn random_pair(n: usize, seed: u64, min_ratio_floor: Option<f64>) -> Result<DistributionPair> {
    if n < 2 {
        return Err(Error::InvalidDimension { n });
    }
    if let Some(floor) = min_ratio_floor {
        if !(floor > 0.0 && floor <= 1.0) {
            return Err(Error::InvalidRatioFloor { floor });
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draw = || -> Vec<f64> {
        let raw: Vec<f64> = (0..n)
            .map(|_| loop {
                let x: f64 = Exp1.sample(&mut rng);
                if x > 0.0 {
                    break x;
                }
            })
            .collect();
        let total = compensated_sum(raw.iter().copied());
        raw.into_iter().map(|x| x / total).collect()
    };
    let mut p = draw();
    let mut q = draw();

    if let Some(floor) = min_ratio_floor {
        mix_to_ratio_floor(&mut p, &mut q, floor);
    }

    DistributionPair::new(Distribution::new(&p)?, Distribution::new(&q)?)
}

fn mix_to_ratio_floor(p: &mut [f64], q: &mut [f64], floor: f64) {
    let n = p.len() as f64;
    let min_ratio = |p: &[f64], q: &[f64]| {
        p.iter()
            .zip(q)
            .map(|(a, b)| a / b)
            .fold(f64::INFINITY, f64::min)
    };
    if min_ratio(p, q) >= floor {
        return;
    }

    // component i needs (1 - w)(p_i - f q_i) + w (1 - f)/n >= 0
    let mut weight = p
        .iter()
        .zip(q.iter())
        .filter(|(a, b)| **a < floor * **b)
        .map(|(a, b)| {
            let deficit = floor * b - a;
            deficit / (deficit + (1.0 - floor) / n)
        })
        .fold(0.0f64, f64::max);

    let (p0, q0) = (p.to_vec(), q.to_vec());
    loop {
        for i in 0..p.len() {
            p[i] = (1.0 - weight) * p0[i] + weight / n;
            q[i] = (1.0 - weight) * q0[i] + weight / n;
        }
        if weight >= 1.0 || min_ratio(p, q) >= floor {
            break;
        }
        // rounding left us a hair short
        weight = (weight + (1.0 - weight) * 1e-9 + f64::EPSILON).min(1.0);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validate_accepts_valid() {
        let d = Distribution::validate(&[0.5, 0.5], false).unwrap();
        assert_eq!(d.values(), &[0.5, 0.5]);
    }

    #[test]
    fn validate_renormalizes() {
        let d = Distribution::validate(&[1.0, 3.0], true).unwrap();
        assert_eq!(d.values(), &[0.25, 0.75]);
    }

    #[test]
    fn validate_rejects_zero() {
        assert_eq!(
            Distribution::validate(&[0.5, 0.0], false),
            Err(Error::NonPositiveComponent { index: 1, value: 0.0 })
        );
    }

    #[test]
    fn validate_rejects_negative_even_with_renormalize() {
        assert!(matches!(
            Distribution::validate(&[2.0, -1.0], true),
            Err(Error::NonPositiveComponent { index: 1, .. })
        ));
    }

    #[test]
    fn validate_rejects_bad_sum() {
        assert!(matches!(
            Distribution::validate(&[0.5, 0.6], false),
            Err(Error::SumOutOfTolerance { .. })
        ));
        // just inside the tolerance is fine
        assert!(Distribution::validate(&[0.5, 0.5 + 5e-10], false).is_ok());
        assert!(Distribution::validate(&[0.5, 0.5 + 2e-9], false).is_err());
    }

    #[test]
    fn validate_rejects_short_and_nan() {
        assert_eq!(
            Distribution::validate(&[1.0], false),
            Err(Error::DimensionTooSmall { len: 1 })
        );
        assert!(matches!(
            Distribution::validate(&[f64::NAN, 0.5], true),
            Err(Error::NonFiniteComponent { index: 0, .. })
        ));
    }

    #[test]
    fn validate_is_idempotent() {
        let d = Distribution::validate(&[0.2, 0.3, 0.5], false).unwrap();
        let again = Distribution::validate(d.values(), false).unwrap();
        assert_eq!(d, again);
    }

    #[test]
    fn pair_dimension_mismatch() {
        let err = DistributionPair::from_slices(&[0.2, 0.3, 0.5], &[0.5, 0.5]).unwrap_err();
        assert_eq!(err, Error::DimensionMismatch { p: 3, q: 2 });
    }

    #[test]
    fn ratio_bounds_examples() {
        let pair = DistributionPair::from_slices(&[0.5, 0.5], &[0.25, 0.75]).unwrap();
        let rb = pair.ratio_bounds();
        assert_eq!(rb.lower(), 2.0 / 3.0);
        assert_eq!(rb.upper(), 2.0);

        let third = [1.0 / 3.0; 3];
        let rb = DistributionPair::from_slices(&third, &third).unwrap().ratio_bounds();
        assert_eq!((rb.lower(), rb.upper()), (1.0, 1.0));
        assert!(rb.is_degenerate());

        let rb = DistributionPair::from_slices(&[0.1, 0.9], &[0.9, 0.1])
            .unwrap()
            .ratio_bounds();
        assert!((rb.lower() - 1.0 / 9.0).abs() < 1e-16);
        assert!((rb.upper() - 9.0).abs() < 1e-14);
    }

    #[test]
    fn ratio_bounds_constructor_checks() {
        assert!(RatioBounds::new(0.5, 2.0).is_ok());
        assert!(RatioBounds::new(1.0, 1.0).is_ok());
        assert!(RatioBounds::new(1.5, 2.0).is_err());
        assert!(RatioBounds::new(0.0, 2.0).is_err());
        assert!(RatioBounds::new(0.5, 0.9).is_err());
    }

    #[test]
    fn random_pair_is_valid_and_deterministic() {
        let a = random_pair(3, 42, None).unwrap();
        let b = random_pair(3, 42, None).unwrap();
        assert_eq!(a, b);
        assert!(Distribution::new(a.p().values()).is_ok());
        assert!(Distribution::new(a.q().values()).is_ok());
        let c = random_pair(3, 43, None).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn random_pair_rejects_small_n() {
        assert_eq!(random_pair(1, 0, None), Err(Error::InvalidDimension { n: 1 }));
        assert!(random_pair(4, 0, Some(1.5)).is_err());
    }

    #[test]
    fn random_pair_respects_floor() {
        for seed in 0..200 {
            let pair = random_pair(16, seed, Some(0.5)).unwrap();
            assert!(pair.ratio_bounds().lower() >= 0.5, "seed {seed}");
        }
        let pair = random_pair(5, 9, Some(1.0)).unwrap();
        assert_eq!(pair.ratio_bounds().lower(), 1.0);
    }

    #[test]
    fn ratio_bounds_bracket_one_over_many_pairs() {
        for seed in 0..10_000u64 {
            let n = 2 + (seed % 63) as usize;
            let rb = random_pair(n, seed, None).unwrap().ratio_bounds();
            assert!(rb.lower() <= 1.0 && 1.0 <= rb.upper());
            assert!(rb.lower() > 0.0);
        }
    }
}
