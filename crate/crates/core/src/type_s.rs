//! The one-parameter families `Phi_s` and `Omega_s`.
//!
//! For real `s` outside `{0, 1}`,
//!
//! ```text
//! Phi_s(P||Q)   = [s(s-1)]^-1 [ sum p^s q^(1-s) - 1 ]
//! Omega_s(P||Q) = [s(s-1)]^-1 [ sum p ((p+q)/(2p))^s - 1 ]
//! ```
//!
//! with the removable singularities filled by `Phi_0 = K(Q||P)`,
//! `Phi_1 = K(P||Q)`, `Omega_0 = F(P||Q)` and `Omega_1 = G(P||Q)`.
//! `Omega_s` is the f-divergence of the convex generator `psi_s`
//! ([`psi_s`], [`PsiGenerator`]), which ties it to the bound machinery in
//! [`crate::csiszar`].
//!
//! Special members of `Phi_s`: `Phi_-1 = chi^2(Q||P)/2`, `Phi_1/2 = 4 h(P||Q)`,
//! `Phi_2 = chi^2(P||Q)/2`. Of `Omega_s`: `Omega_-1 = Delta/4`,
//! `Omega_1/2 = 4 h(P||(P+Q)/2)`, `Omega_2 = chi^2(Q||P)/8`.

use serde::Serialize;

use crate::csiszar::Generator;
use crate::error::{Error, Result};
use crate::measures;
use crate::numeric::compensated_sum;
use crate::simplex::DistributionPair;

/// Distance from 0 or 1 within which `s` is routed to the limit branch.
pub const S_SWITCH: f64 = 1e-5;

/// How a value of `s` is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    Generic,
    LimitAtZero,
    LimitAtOne,
}

/// The family parameter `s` together with its evaluation regime.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SParameter {
    s: f64,
    regime: Regime,
}

impl SParameter {
    pub fn new(s: f64) -> Self {
        let regime = if s.abs() <= S_SWITCH {
            Regime::LimitAtZero
        } else if (s - 1.0).abs() <= S_SWITCH {
            Regime::LimitAtOne
        } else {
            Regime::Generic
        };
        Self { s, regime }
    }

    pub fn value(&self) -> f64 {
        self.s
    }

    pub fn regime(&self) -> Regime {
        self.regime
    }

    /// The value actually used in formulas: `0` or `1` in the limit regimes.
    pub(crate) fn effective(&self) -> f64 {
        match self.regime {
            Regime::Generic => self.s,
            Regime::LimitAtZero => 0.0,
            Regime::LimitAtOne => 1.0,
        }
    }
}

impl From<f64> for SParameter {
    fn from(s: f64) -> Self {
        Self::new(s)
    }
}

/// `Phi_s(P||Q)`, the relative information of type `s`.
pub fn phi_s(pair: &DistributionPair, s: impl Into<SParameter>) -> f64 {
    let s = s.into().effective();
    compensated_sum(
        pair.iter()
            .filter(|(p, q)| p != q)
            .map(|(p, q)| q * kernel(s, (p / q).ln())),
    )
}

/// `Omega_s(P||Q)`, the unified relative AG and JS divergence of type `s`.
pub fn omega_s(pair: &DistributionPair, s: impl Into<SParameter>) -> f64 {
    let s = s.into().effective();
    compensated_sum(
        pair.iter()
            .filter(|(p, q)| p != q)
            .map(|(p, q)| p * kernel(s, ((q - p) / (2.0 * p)).ln_1p())),
    )
}

/// Largest `|u| max(1, |s|)` for which [`kernel`] sums its power series.
const KERNEL_SERIES_RADIUS: f64 = 0.25;

/// `K(s, u) = [e^(su) - 1 - s (e^u - 1)] / (s (s - 1))`.
///
/// Both families are sums of this kernel: with a normalized pair the
/// first-order terms `s (e^u - 1)` sum to zero, and dropping them removes the
/// cancellation that otherwise costs about `1/|u|` in relative accuracy
/// when `P` is close to `Q`. The Taylor coefficients
/// `c_k(s) = 1 + s + ... + s^(k-2)` are polynomials, so `s = 0` and `s = 1`
/// need no special treatment:
///
/// ```text
/// K(s, u) = sum_{k >= 2} c_k(s) u^k / k!
/// K(0, u) = e^u - 1 - u
/// K(1, u) = u e^u - (e^u - 1)
/// ```
fn kernel(s: f64, u: f64) -> f64 {
    if u.abs() * s.abs().max(1.0) <= KERNEL_SERIES_RADIUS {
        kernel_series(s, u)
    } else {
        kernel_direct(s, u)
    }
}

fn kernel_series(s: f64, u: f64) -> f64 {
    // |c_k| <= (k - 1) m^(k-2); individual terms can vanish (c_3 = 0 at s = -1)
    let m = s.abs().max(1.0);
    let mut c = 1.0;
    let mut c_bound = 1.0;
    let mut power = 0.5 * u * u;
    let mut sum = power;
    for k in 3..60 {
        c = 1.0 + s * c;
        c_bound *= m;
        power *= u / k as f64;
        sum += c * power;
        if (k - 1) as f64 * c_bound * power.abs() <= 1e-17 * sum.abs() {
            break;
        }
    }
    sum
}

fn kernel_direct(s: f64, u: f64) -> f64 {
    if s == 0.0 {
        u.exp_m1() - u
    } else if s == 1.0 {
        u * u.exp() - u.exp_m1()
    } else if (s - 1.0).abs() < 0.5 {
        // e^(su) - 1 - s(e^u - 1) = e^u expm1((s-1)u) - (s-1) expm1(u)
        let a = s - 1.0;
        (u.exp() * (a * u).exp_m1() - a * u.exp_m1()) / (s * a)
    } else {
        ((s * u).exp_m1() - s * u.exp_m1()) / (s * (s - 1.0))
    }
}

/// `expm1(a u) / a`, equal to `u` at `a = 0`.
fn expm1_over(a: f64, u: f64) -> f64 {
    if a == 0.0 {
        u
    } else {
        (a * u).exp_m1() / a
    }
}

fn require_positive(x: f64) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::NonPositiveArgument { x })
    }
}

// ln((x+1)/(2x))
#[inline]
fn ln_t(x: f64) -> f64 {
    ((1.0 - x) / (2.0 * x)).ln_1p()
}

// psi_s(x) = x K(s, ln t)
fn psi_unchecked(x: f64, s: SParameter) -> f64 {
    x * kernel(s.effective(), ln_t(x))
}

// d/dx [x K(s, u(x))] with u' = -1/(x(x+1)) and dK/du = e^u expm1((s-1)u)/(s-1)
fn psi_d1_unchecked(x: f64, s: SParameter) -> f64 {
    let s = s.effective();
    let u = ln_t(x);
    kernel(s, u) - u.exp() * expm1_over(s - 1.0, u) / (x + 1.0)
}

fn psi_d2_unchecked(x: f64, s: f64) -> f64 {
    ((s - 2.0) * ln_t(x)).exp() / (4.0 * x * x * x)
}

fn psi_d3_unchecked(x: f64, s: f64) -> f64 {
    let x1 = x + 1.0;
    -(s + 1.0 + 3.0 * x) / (x * x * x1 * x1 * x1) * (s * ln_t(x)).exp()
}

/// `psi_s(x)`, the generator with `C_psi_s = Omega_s`; `psi_s(1) = 0`.
pub fn psi_s(x: f64, s: impl Into<SParameter>) -> Result<f64> {
    require_positive(x)?;
    Ok(psi_unchecked(x, s.into()))
}

/// `psi_s'(x)`.
pub fn psi_s_d1(x: f64, s: impl Into<SParameter>) -> Result<f64> {
    require_positive(x)?;
    Ok(psi_d1_unchecked(x, s.into()))
}

/// `psi_s''(x) = (1/(4x^3)) ((x+1)/(2x))^(s-2)`, positive for every `s`.
///
/// The single formula covers `s = 0` and `s = 1` exactly, so no regime
/// routing is needed.
pub fn psi_s_d2(x: f64, s: impl Into<SParameter>) -> Result<f64> {
    require_positive(x)?;
    Ok(psi_d2_unchecked(x, s.into().s))
}

/// `psi_s'''(x) = -(s+1+3x) / (x^2 (x+1)^3) ((x+1)/(2x))^s`, nonpositive for
/// `s >= -1`.
pub fn psi_s_d3(x: f64, s: impl Into<SParameter>) -> Result<f64> {
    require_positive(x)?;
    Ok(psi_d3_unchecked(x, s.into().s))
}

/// `psi_s` as a [`Generator`] for the Csiszar engine.
///
/// Arguments are not range-checked; callers pass likelihood ratios, which
/// are positive by construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PsiGenerator {
    s: SParameter,
}

impl PsiGenerator {
    pub fn new(s: impl Into<SParameter>) -> Self {
        Self { s: s.into() }
    }

    pub fn s(&self) -> SParameter {
        self.s
    }
}

impl Generator for PsiGenerator {
    fn label(&self) -> String {
        format!("psi_{}", self.s.s)
    }
    fn eval(&self, x: f64) -> f64 {
        psi_unchecked(x, self.s)
    }
    fn d1(&self, x: f64) -> f64 {
        psi_d1_unchecked(x, self.s)
    }
    fn d2(&self, x: f64) -> f64 {
        psi_d2_unchecked(x, self.s.s)
    }
    fn d3(&self, x: f64) -> f64 {
        psi_d3_unchecked(x, self.s.s)
    }
}

/// One row of a special-case table: the family evaluated at `s` next to an
/// independent evaluation through the base measures.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpecialCase {
    pub name: &'static str,
    pub s: f64,
    pub family_value: f64,
    pub base_value: f64,
}

impl SpecialCase {
    pub fn relative_error(&self) -> f64 {
        crate::numeric::relative_difference(self.family_value, self.base_value, f64::MIN_POSITIVE)
    }
}

/// The five named members of `Omega_s` with their base-measure counterparts.
pub fn omega_special_cases(pair: &DistributionPair) -> Vec<SpecialCase> {
    let swapped = pair.swapped();
    let midpoint = pair
        .p()
        .midpoint(pair.q())
        .and_then(|m| DistributionPair::new(pair.p().clone(), m))
        .expect("midpoint of a valid pair is valid");
    vec![
        SpecialCase {
            name: "Delta/4",
            s: -1.0,
            family_value: omega_s(pair, -1.0),
            base_value: 0.25 * measures::triangular_discrimination(pair),
        },
        SpecialCase {
            name: "F",
            s: 0.0,
            family_value: omega_s(pair, 0.0),
            base_value: measures::relative_js_divergence(pair),
        },
        SpecialCase {
            name: "4h(P||(P+Q)/2)",
            s: 0.5,
            family_value: omega_s(pair, 0.5),
            base_value: 4.0 * measures::hellinger(&midpoint),
        },
        SpecialCase {
            name: "G",
            s: 1.0,
            family_value: omega_s(pair, 1.0),
            base_value: measures::relative_ag_divergence(pair),
        },
        SpecialCase {
            name: "chi2(Q||P)/8",
            s: 2.0,
            family_value: omega_s(pair, 2.0),
            base_value: measures::chi_squared(&swapped) / 8.0,
        },
    ]
}

/// The five named members of `Phi_s` with their base-measure counterparts.
pub fn phi_special_cases(pair: &DistributionPair) -> Vec<SpecialCase> {
    let swapped = pair.swapped();
    vec![
        SpecialCase {
            name: "chi2(Q||P)/2",
            s: -1.0,
            family_value: phi_s(pair, -1.0),
            base_value: 0.5 * measures::chi_squared(&swapped),
        },
        SpecialCase {
            name: "K(Q||P)",
            s: 0.0,
            family_value: phi_s(pair, 0.0),
            base_value: measures::relative_information(&swapped),
        },
        SpecialCase {
            name: "4h(P||Q)",
            s: 0.5,
            family_value: phi_s(pair, 0.5),
            base_value: 4.0 * measures::hellinger(pair),
        },
        SpecialCase {
            name: "K(P||Q)",
            s: 1.0,
            family_value: phi_s(pair, 1.0),
            base_value: measures::relative_information(pair),
        },
        SpecialCase {
            name: "chi2(P||Q)/2",
            s: 2.0,
            family_value: phi_s(pair, 2.0),
            base_value: 0.5 * measures::chi_squared(pair),
        },
    ]
}
