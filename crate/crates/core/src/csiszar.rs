//! Generic Csiszar f-divergence engine.
//!
//! For a convex `f` on `(0, inf)` with `f(1) = 0`,
//! `C_f(P||Q) = sum q_i f(p_i / q_i)` is nonnegative and jointly convex in
//! `(P, Q)`. This module evaluates `C_f` for any [`Generator`] together with
//! the functionals that bound it:
//!
//! - [`dragomir_e`]: `E = sum (p_i - q_i) f'(p_i/q_i)`, with `0 <= C_f <= E`;
//! - [`dragomir_e_star`]: `E* = sum (p_i - q_i) f'((p_i + q_i)/(2 q_i))`;
//! - [`bound_a`]: `A(r, R) = (R - r)(f'(R) - f'(r)) / 4`;
//! - [`bound_b`]: the chord `B(r, R) = ((R - 1) f(r) + (1 - r) f(R)) / (R - r)`;
//! - [`gap_bounds`]: the three-way bounds on `|C_f - E/2|` and
//!   `|C_f - E*|` for generators whose second derivative is monotone.
//!
//! Generators carry analytic derivatives up to order three. Bound formulas
//! amplify derivative error, so nothing here differentiates numerically.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric::{compensated_sum, sup_abs_on};
use crate::simplex::{DistributionPair, RatioBounds};

/// A convex, normalized function with its first three derivatives.
pub trait Generator {
    fn label(&self) -> String;
    fn eval(&self, x: f64) -> f64;
    fn d1(&self, x: f64) -> f64;
    fn d2(&self, x: f64) -> f64;
    fn d3(&self, x: f64) -> f64;
}

impl<G: Generator + ?Sized> Generator for &G {
    fn label(&self) -> String {
        (**self).label()
    }
    fn eval(&self, x: f64) -> f64 {
        (**self).eval(x)
    }
    fn d1(&self, x: f64) -> f64 {
        (**self).d1(x)
    }
    fn d2(&self, x: f64) -> f64 {
        (**self).d2(x)
    }
    fn d3(&self, x: f64) -> f64 {
        (**self).d3(x)
    }
}

/// Points at which convexity is probed when a generator is constructed.
pub const CONVEXITY_PROBES: [f64; 7] = [0.1, 0.25, 0.5, 1.0, 2.0, 5.0, 10.0];

/// Allowed `|f(1)|` for a normalized generator.
pub const NORMALIZATION_TOLERANCE: f64 = 1e-12;

/// Checks `f(1) = 0` and `f'' >= 0` at [`CONVEXITY_PROBES`].
pub fn check_generator<G: Generator + ?Sized>(gen: &G) -> Result<()> {
    let at_one = gen.eval(1.0);
    if !(at_one.abs() <= NORMALIZATION_TOLERANCE) {
        return Err(Error::NotNormalized {
            label: gen.label(),
            value: at_one,
        });
    }
    for &x in &CONVEXITY_PROBES {
        let value = gen.d2(x);
        if !(value >= 0.0) {
            return Err(Error::NotConvex {
                label: gen.label(),
                x,
                value,
            });
        }
    }
    Ok(())
}

type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A generator assembled from closures, validated at construction.
#[derive(Clone)]
pub struct GeneratorFunction {
    label: String,
    f: RealFn,
    d1: RealFn,
    d2: RealFn,
    d3: RealFn,
}

impl fmt::Debug for GeneratorFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GeneratorFunction")
            .field("label", &self.label)
            .finish_non_exhaustive()
    }
}

impl GeneratorFunction {
    /// Builds a generator from `f` and its derivatives `f'`, `f''`, `f'''`.
    ///
    /// Fails unless `f(1) = 0` (within 1e-12) and `f'' >= 0` on the probe grid.
    pub fn new<F, D1, D2, D3>(label: impl Into<String>, f: F, d1: D1, d2: D2, d3: D3) -> Result<Self>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
        D1: Fn(f64) -> f64 + Send + Sync + 'static,
        D2: Fn(f64) -> f64 + Send + Sync + 'static,
        D3: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        let gen = Self {
            label: label.into(),
            f: Arc::new(f),
            d1: Arc::new(d1),
            d2: Arc::new(d2),
            d3: Arc::new(d3),
        };
        check_generator(&gen)?;
        Ok(gen)
    }

    /// `x ln x`; `C_f = K(P||Q)`.
    pub fn kullback_leibler() -> Self {
        Self::new(
            "x ln x",
            |x| x * x.ln(),
            |x| x.ln() + 1.0,
            |x| 1.0 / x,
            |x| -1.0 / (x * x),
        )
        .expect("built-in generator")
    }

    /// `-ln x`; `C_f = K(Q||P)`.
    pub fn reverse_kullback_leibler() -> Self {
        Self::new(
            "-ln x",
            |x| -x.ln(),
            |x| -1.0 / x,
            |x| 1.0 / (x * x),
            |x| -2.0 / (x * x * x),
        )
        .expect("built-in generator")
    }

    /// `(x - 1)^2`; `C_f = chi^2(P||Q)`.
    pub fn chi_squared() -> Self {
        Self::new(
            "(x-1)^2",
            |x| (x - 1.0) * (x - 1.0),
            |x| 2.0 * (x - 1.0),
            |_| 2.0,
            |_| 0.0,
        )
        .expect("built-in generator")
    }

    /// `(sqrt x - 1)^2 / 2`; `C_f = h(P||Q)`.
    pub fn hellinger() -> Self {
        Self::new(
            "(sqrt(x)-1)^2/2",
            |x| {
                let d = x.sqrt() - 1.0;
                0.5 * d * d
            },
            |x| 0.5 * (1.0 - 1.0 / x.sqrt()),
            |x| 0.25 / (x * x.sqrt()),
            |x| -0.375 / (x * x * x.sqrt()),
        )
        .expect("built-in generator")
    }

    /// The fixed built-in generators (the type-s generators live in
    /// [`crate::type_s::PsiGenerator`]).
    pub fn builtins() -> Vec<Self> {
        vec![
            Self::kullback_leibler(),
            Self::reverse_kullback_leibler(),
            Self::chi_squared(),
            Self::hellinger(),
        ]
    }
}

impl Generator for GeneratorFunction {
    fn label(&self) -> String {
        self.label.clone()
    }
    fn eval(&self, x: f64) -> f64 {
        (self.f)(x)
    }
    fn d1(&self, x: f64) -> f64 {
        (self.d1)(x)
    }
    fn d2(&self, x: f64) -> f64 {
        (self.d2)(x)
    }
    fn d3(&self, x: f64) -> f64 {
        (self.d3)(x)
    }
}

/// `C_f(P||Q) = sum q_i f(p_i / q_i)`.
pub fn csiszar_divergence<G: Generator + ?Sized>(pair: &DistributionPair, gen: &G) -> f64 {
    compensated_sum(
        pair.iter()
            .map(|(p, q)| if p == q { 0.0 } else { q * gen.eval(p / q) }),
    )
}

/// `E(P||Q) = sum (p_i - q_i) f'(p_i / q_i)`.
pub fn dragomir_e<G: Generator + ?Sized>(pair: &DistributionPair, gen: &G) -> f64 {
    compensated_sum(
        pair.iter()
            .map(|(p, q)| if p == q { 0.0 } else { (p - q) * gen.d1(p / q) }),
    )
}

/// `E*(P||Q) = sum (p_i - q_i) f'((p_i + q_i) / (2 q_i))`.
pub fn dragomir_e_star<G: Generator + ?Sized>(pair: &DistributionPair, gen: &G) -> f64 {
    compensated_sum(pair.iter().map(|(p, q)| {
        if p == q {
            0.0
        } else {
            (p - q) * gen.d1(0.5 * (p + q) / q)
        }
    }))
}

/// `A(r, R) = (R - r)(f'(R) - f'(r)) / 4`; requires `r < R`.
pub fn bound_a<G: Generator + ?Sized>(rb: &RatioBounds, gen: &G) -> Result<f64> {
    rb.require_nondegenerate()?;
    let (r, big_r) = (rb.lower(), rb.upper());
    Ok(0.25 * (big_r - r) * (gen.d1(big_r) - gen.d1(r)))
}

/// Chord bound `B(r, R) = ((R - 1) f(r) + (1 - r) f(R)) / (R - r)`; requires
/// `r < 1 < R`.
pub fn bound_b<G: Generator + ?Sized>(rb: &RatioBounds, gen: &G) -> Result<f64> {
    rb.require_straddle()?;
    let (r, big_r) = (rb.lower(), rb.upper());
    Ok(((big_r - 1.0) * gen.eval(r) + (1.0 - r) * gen.eval(big_r)) / (big_r - r))
}

/// Which approximation of `C_f` a gap bound refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GapTarget {
    /// `|C_f - E/2|`
    HalfE,
    /// `|C_f - E*|`
    EStar,
}

impl GapTarget {
    /// Weights on the (curvature, third-derivative, variation) candidates.
    pub(crate) fn weights(self) -> [f64; 3] {
        match self {
            GapTarget::HalfE => [1.0 / 8.0, 1.0 / 12.0, 1.0],
            GapTarget::EStar => [1.0 / 8.0, 1.0 / 24.0, 0.5],
        }
    }

    /// Weights of the r,R-only forms, each multiplied by `(R - r)^2 / 4`;
    /// the second is further multiplied by `R - r` and the third divided by it.
    pub(crate) fn ratio_only_weights(self) -> [f64; 3] {
        match self {
            GapTarget::HalfE => [1.0 / 8.0, 1.0 / 24.0, 2.0],
            GapTarget::EStar => [1.0 / 8.0, 1.0 / 48.0, 1.0],
        }
    }
}

/// Three upper-bound candidates for a gap; the bound is their minimum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GapCandidates {
    /// Built from `|f''(R) - f''(r)|` and `chi^2(P||Q)`.
    pub curvature: f64,
    /// Built from `sup |f'''|` and `|chi|^3(P||Q)`.
    pub third_derivative: f64,
    /// Built from `f'(R) - f'(r)` and `V(P||Q)`.
    pub variation: f64,
}

impl GapCandidates {
    pub fn min(&self) -> f64 {
        self.curvature.min(self.third_derivative).min(self.variation)
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.curvature, self.third_derivative, self.variation]
    }
}

/// Result of a gap-bound computation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GapBounds {
    pub target: GapTarget,
    /// `|C_f - E/2|` or `|C_f - E*|` as evaluated on the pair.
    pub observed_gap: f64,
    /// Candidates that use `chi^2`, `|chi|^3` and `V` of the pair.
    pub data: GapCandidates,
    /// The same candidates with `chi^2`, `|chi|^3`, `V` replaced by their
    /// `(R - r)` caps.
    pub ratio_only: GapCandidates,
    /// `k(f)`: `-1` when `f''` is decreasing on `[r, R]`, `+1` when increasing.
    pub monotonicity: i8,
    /// `sup |f'''|` on `[r, R]`.
    pub third_derivative_sup: f64,
}

impl GapBounds {
    pub fn bound(&self) -> f64 {
        self.data.min()
    }

    pub fn ratio_only_bound(&self) -> f64 {
        self.ratio_only.min()
    }
}

/// Sample points used to decide the sign of `f'''` on `[r, R]`.
pub const MONOTONICITY_SAMPLES: usize = 33;

/// `|f'''|` below this is treated as zero when deciding monotonicity.
pub const THIRD_DERIVATIVE_ZERO: f64 = 1e-14;

/// `k(f)` on `[r, R]`: `-1` if `f'''` is nonpositive at every sample point,
/// `+1` if nonnegative.
pub fn monotonicity_indicator<G: Generator + ?Sized>(rb: &RatioBounds, gen: &G) -> Result<i8> {
    let (r, big_r) = (rb.lower(), rb.upper());
    let (mut neg, mut pos) = (false, false);
    for i in 0..MONOTONICITY_SAMPLES {
        let x = if i == MONOTONICITY_SAMPLES - 1 {
            big_r
        } else {
            r + (big_r - r) * i as f64 / (MONOTONICITY_SAMPLES - 1) as f64
        };
        let v = gen.d3(x);
        if v < -THIRD_DERIVATIVE_ZERO {
            neg = true;
        } else if v > THIRD_DERIVATIVE_ZERO {
            pos = true;
        }
    }
    match (neg, pos) {
        (true, true) => Err(Error::NonMonotoneSecondDerivative {
            label: gen.label(),
            r,
            big_r,
        }),
        (true, false) => Ok(-1),
        _ => Ok(1),
    }
}

/// Gap bounds for `|C_f - E/2|` or `|C_f - E*|`.
///
/// Requires `r < 1 < R`, `rb` bracketing every ratio of `pair`, and `f''`
/// monotone on `[r, R]` (checked by sampling the sign of `f'''`). The
/// remaining analytic hypotheses (bounded variation, `f'''` essentially
/// bounded) are assumed, not checked. `sup |f'''|` is found numerically with
/// [`sup_abs_on`].
pub fn gap_bounds<G: Generator + ?Sized>(
    pair: &DistributionPair,
    rb: &RatioBounds,
    gen: &G,
    target: GapTarget,
) -> Result<GapBounds> {
    rb.require_straddle()?;
    if !pair.is_bracketed_by(rb) {
        return Err(Error::RatioBoundsViolated {
            r: rb.lower(),
            big_r: rb.upper(),
        });
    }
    let k = monotonicity_indicator(rb, gen)?;
    let (r, big_r) = (rb.lower(), rb.upper());
    let sup3 = sup_abs_on(|x| gen.d3(x), r, big_r);
    let curvature = f64::from(k) * (gen.d2(big_r) - gen.d2(r));
    let slope = gen.d1(big_r) - gen.d1(r);

    let c = csiszar_divergence(pair, gen);
    let observed_gap = match target {
        GapTarget::HalfE => (c - 0.5 * dragomir_e(pair, gen)).abs(),
        GapTarget::EStar => (c - dragomir_e_star(pair, gen)).abs(),
    };
    Ok(assemble_gap_bounds(
        pair,
        rb,
        target,
        observed_gap,
        GapIngredients {
            curvature,
            third_derivative_sup: sup3,
            slope,
            monotonicity: k,
        },
    ))
}

/// Derivative data of a generator on `[r, R]` that the gap bounds need.
pub(crate) struct GapIngredients {
    /// `k(f) (f''(R) - f''(r))`
    pub curvature: f64,
    pub third_derivative_sup: f64,
    /// `f'(R) - f'(r)`
    pub slope: f64,
    pub monotonicity: i8,
}

pub(crate) fn assemble_gap_bounds(
    pair: &DistributionPair,
    rb: &RatioBounds,
    target: GapTarget,
    observed_gap: f64,
    ing: GapIngredients,
) -> GapBounds {
    use crate::measures::{chi_squared, total_variation, vajda_abs_chi};

    let chi2 = chi_squared(pair);
    let chi3 = vajda_abs_chi(pair, 3.0).expect("m = 3 is in range");
    let v = total_variation(pair);
    let width = rb.upper() - rb.lower();
    let [w1, w2, w3] = target.weights();
    let [u1, u2, u3] = target.ratio_only_weights();
    let cap = 0.25 * width * width;

    GapBounds {
        target,
        observed_gap,
        data: GapCandidates {
            curvature: w1 * ing.curvature * chi2,
            third_derivative: w2 * ing.third_derivative_sup * chi3,
            variation: w3 * ing.slope * v,
        },
        ratio_only: GapCandidates {
            curvature: cap * u1 * ing.curvature,
            third_derivative: cap * u2 * width * ing.third_derivative_sup,
            variation: cap * u3 * ing.slope / width,
        },
        monotonicity: ing.monotonicity,
        third_derivative_sup: ing.third_derivative_sup,
    }
}
