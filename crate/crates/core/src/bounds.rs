//! Bounds on `Omega_s` and the consolidated inequality report.
//!
//! Every bound functional here exists in two forms: the generic Csiszar
//! evaluation with `f = psi_s` (authoritative), and a closed form in terms of
//! `r`, `R` and the p-logarithmic power mean (a cross-check). The two agree
//! to rounding for every `s`; the closed form of `E` at `s = 1` is
//! `(chi^2(Q||P) - D(Q||P)) / 2`.
//!
//! [`verify_all`] evaluates each inequality on a pair and records its slack
//! (right side minus left side) in a [`BoundReport`].

use std::cmp::Ordering;

use serde::Serialize;

use crate::csiszar::{
    assemble_gap_bounds, bound_a, bound_b, dragomir_e, dragomir_e_star, GapBounds, GapIngredients,
    GapTarget, Generator,
};
use crate::error::{Error, Result};
use crate::means::lp_power;
use crate::measures::{
    chi_squared, relative_j_divergence, total_variation, triangular_discrimination, vajda_abs_chi,
};
use crate::numeric::{compensated_sum, pow_real, relative_difference};
use crate::simplex::{DistributionPair, RatioBounds};
use crate::type_s::{omega_s, PsiGenerator, Regime, SParameter};

/// Slack below which an inequality is reported as violated.
pub const VIOLATION_TOLERANCE: f64 = 1e-10;

/// Width `R - r` below which [`verify_all`] skips the interval-based checks:
/// both sides of those inequalities are then indistinguishable from rounding.
pub const DEGENERATE_WIDTH: f64 = 1e-9;

/// `E_{Omega_s}(P||Q) = sum (p_i - q_i) psi_s'(p_i / q_i)`.
pub fn e_omega(pair: &DistributionPair, s: impl Into<SParameter>) -> f64 {
    dragomir_e(pair, &PsiGenerator::new(s))
}

/// Closed form of [`e_omega`].
pub fn e_omega_closed_form(pair: &DistributionPair, s: impl Into<SParameter>) -> f64 {
    let s = s.into();
    let swapped = pair.swapped();
    match s.regime() {
        Regime::LimitAtZero => {
            relative_j_divergence(&swapped) - 0.5 * triangular_discrimination(pair)
        }
        Regime::LimitAtOne => 0.5 * (chi_squared(&swapped) - relative_j_divergence(&swapped)),
        Regime::Generic => {
            let s = s.value();
            let sum = compensated_sum(pair.iter().map(|(p, q)| {
                let t = 0.5 * (p + q) / p;
                (p - q) / (p + q) * t.powf(s) * (p + (1.0 - s) * q)
            }));
            sum / (s * (s - 1.0))
        }
    }
}

/// `E*_{Omega_s}(P||Q) = sum (p_i - q_i) psi_s'((p_i + q_i) / (2 q_i))`.
pub fn e_star_omega(pair: &DistributionPair, s: impl Into<SParameter>) -> f64 {
    dragomir_e_star(pair, &PsiGenerator::new(s))
}

/// Closed form of [`e_star_omega`], written with `u = (p + 3q) / (2(p + q))`.
pub fn e_star_omega_closed_form(pair: &DistributionPair, s: impl Into<SParameter>) -> f64 {
    let s = s.into();
    let ln_u = |p: f64, q: f64| ((p + 3.0 * q) / (2.0 * (p + q))).ln();
    match s.regime() {
        Regime::LimitAtZero => compensated_sum(pair.iter().map(|(p, q)| {
            let d = p - q;
            -d * ln_u(p, q) - 0.5 * d * d / (p + 3.0 * q)
        })),
        Regime::LimitAtOne => {
            0.5 * triangular_discrimination(pair)
                + 0.5 * compensated_sum(pair.iter().map(|(p, q)| (p - q) * ln_u(p, q)))
        }
        Regime::Generic => {
            let s = s.value();
            let sum = compensated_sum(pair.iter().map(|(p, q)| {
                let u = (p + 3.0 * q) / (2.0 * (p + q));
                (p - q) * u.powf(s) * (p + (3.0 - 2.0 * s) * q) / (p + 3.0 * q)
            }));
            sum / (s * (s - 1.0))
        }
    }
}

/// `A_{Omega_s}(r, R)`, written through the power mean:
/// `(R-r)^2/(4rR) 2^-s [L_{s-1}^{s-1}(a, b) - L_{s-2}^{s-2}(a, b)]` with
/// `a = (r+1)/r`, `b = (R+1)/R`. Equals `bound_a(rb, psi_s)`.
pub fn a_omega(rb: &RatioBounds, s: f64) -> Result<f64> {
    rb.require_nondegenerate()?;
    let (r, big_r) = (rb.lower(), rb.upper());
    let a = (r + 1.0) / r;
    let b = (big_r + 1.0) / big_r;
    let width = big_r - r;
    let braces = lp_power(s - 1.0, a, b)? - lp_power(s - 2.0, a, b)?;
    Ok(width * width / (4.0 * r * big_r) * (-s).exp2() * braces)
}

/// Chord bound `B_{Omega_s}(r, R) = bound_b(rb, psi_s)`; needs `r < 1 < R`.
pub fn b_omega(rb: &RatioBounds, s: impl Into<SParameter>) -> Result<f64> {
    bound_b(rb, &PsiGenerator::new(s))
}

/// Closed form of [`b_omega`] in terms of the power mean at
/// `a = (r+1)/(2r)`, `b = (R+1)/(2R)`.
pub fn b_omega_closed_form(rb: &RatioBounds, s: impl Into<SParameter>) -> Result<f64> {
    rb.require_straddle()?;
    let s = s.into();
    let (r, big_r) = (rb.lower(), rb.upper());
    let a = (r + 1.0) / (2.0 * r);
    let b = (big_r + 1.0) / (2.0 * big_r);
    let width = big_r - r;
    Ok(match s.regime() {
        Regime::LimitAtZero => {
            (r * a.ln() - big_r * b.ln()) / width - 0.5 * lp_power(-1.0, a, b)?
        }
        Regime::LimitAtOne => {
            (r * big_r - 1.0) / (4.0 * r * big_r) * lp_power(-1.0, a, b)?
                + 0.5 * ((big_r + 1.0) * (r + 1.0) / (4.0 * r * big_r)).ln()
        }
        Regime::Generic => {
            let s = s.value();
            lp_power(s - 1.0, a, b)? / (2.0 * (s - 1.0))
                + (big_r * (b.powf(s) - 1.0) - r * (a.powf(s) - 1.0)) / (s * (s - 1.0) * width)
        }
    })
}

fn require_s_at_least_minus_one(s: f64) -> Result<()> {
    if s >= -1.0 {
        Ok(())
    } else {
        Err(Error::SOutOfRange { s })
    }
}

/// `delta_{Omega_s}(r, R) = psi_s''(r) - psi_s''(R)`, for `s >= -1`.
pub fn delta_omega(rb: &RatioBounds, s: f64) -> Result<f64> {
    require_s_at_least_minus_one(s)?;
    rb.require_nondegenerate()?;
    let (r, big_r) = (rb.lower(), rb.upper());
    let term = |x: f64| pow_real((x + 1.0) / (2.0 * x), s - 2.0) / (x * x * x);
    Ok(0.25 * (term(r) - term(big_r)))
}

/// `sup |psi_s'''|` on `[r, R]`, attained at `x = r` for `s >= -1`:
/// `(s + 1 + 3r) / (r^2 (r+1)^3) ((r+1)/(2r))^s`.
pub fn psi3_sup(rb: &RatioBounds, s: f64) -> Result<f64> {
    require_s_at_least_minus_one(s)?;
    let r = rb.lower();
    let r1 = r + 1.0;
    Ok((s + 1.0 + 3.0 * r) / (r * r * r1 * r1 * r1) * pow_real(r1 / (2.0 * r), s))
}

/// Gap bounds for `|Omega_s - E/2|` or `|Omega_s - E*|`, `s >= -1`.
///
/// `psi_s''` is decreasing for `s >= -1`, so the monotonicity indicator is
/// `-1` and the curvature term is [`delta_omega`]; the third-derivative term
/// uses [`psi3_sup`].
pub fn omega_gap_bounds(
    pair: &DistributionPair,
    rb: &RatioBounds,
    s: f64,
    target: GapTarget,
) -> Result<GapBounds> {
    require_s_at_least_minus_one(s)?;
    rb.require_straddle()?;
    if !pair.is_bracketed_by(rb) {
        return Err(Error::RatioBoundsViolated {
            r: rb.lower(),
            big_r: rb.upper(),
        });
    }
    let psi = PsiGenerator::new(s);
    let omega = omega_s(pair, s);
    let observed_gap = match target {
        GapTarget::HalfE => (omega - 0.5 * e_omega(pair, s)).abs(),
        GapTarget::EStar => (omega - e_star_omega(pair, s)).abs(),
    };
    Ok(assemble_gap_bounds(
        pair,
        rb,
        target,
        observed_gap,
        GapIngredients {
            curvature: delta_omega(rb, s)?,
            third_derivative_sup: psi3_sup(rb, s)?,
            slope: psi.d1(rb.upper()) - psi.d1(rb.lower()),
            monotonicity: -1,
        },
    ))
}

/// Outcome of one inequality check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
}

/// Where an entry was evaluated.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EntryContext {
    pub pair_id: Option<String>,
    pub s: Option<f64>,
    pub m: Option<f64>,
    pub r: f64,
    #[serde(rename = "R")]
    pub big_r: f64,
}

/// One verified inequality `lhs <= rhs`, or a chain `lhs <= mid <= rhs`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundEntry {
    pub inequality_id: &'static str,
    pub lhs: f64,
    pub mid: Option<f64>,
    pub rhs: f64,
    /// `rhs - lhs`, or for a chain the smaller of its two links.
    pub slack: f64,
    pub verdict: Verdict,
    /// The named measure this entry reduces to at the current `s`, if any.
    pub special_case: Option<&'static str>,
    pub context: EntryContext,
}

/// An inequality that was not evaluated, and why.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SkippedCheck {
    pub inequality_id: &'static str,
    pub s: Option<f64>,
    pub m: Option<f64>,
    pub reason: String,
}

/// Generic evaluation against its closed form.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CrossCheck {
    pub quantity: &'static str,
    pub s: f64,
    pub generic: f64,
    pub closed_form: f64,
    pub relative_difference: f64,
}

/// Result of [`verify_all`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub tolerance: f64,
    pub entries: Vec<BoundEntry>,
    pub skipped: Vec<SkippedCheck>,
    pub cross_checks: Vec<CrossCheck>,
    pub notes: Vec<String>,
}

impl BoundReport {
    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(|e| e.verdict == Verdict::Pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &BoundEntry> {
        self.entries.iter().filter(|e| e.verdict == Verdict::Fail)
    }

    /// Smallest slack over all entries (`+inf` when there are none).
    pub fn min_slack(&self) -> f64 {
        self.entries.iter().map(|e| e.slack).fold(f64::INFINITY, f64::min)
    }

    pub fn with_pair_id(mut self, id: &str) -> Self {
        for e in &mut self.entries {
            e.context.pair_id = Some(id.to_string());
        }
        self
    }

    /// Recomputes every verdict against `tolerance`.
    pub fn reclassify(&mut self, tolerance: f64) {
        self.tolerance = tolerance;
        for e in &mut self.entries {
            e.verdict = verdict(e.slack, tolerance);
        }
    }
}

fn verdict(slack: f64, tolerance: f64) -> Verdict {
    if slack >= -tolerance {
        Verdict::Pass
    } else {
        Verdict::Fail
    }
}

/// Vajda orders checked by [`verify_all`].
pub const VAJDA_ORDERS: [f64; 4] = [1.0, 2.0, 2.5, 3.0];

/// Default `s` grid for reports.
pub const DEFAULT_S_VALUES: [f64; 6] = [-1.0, -0.5, 0.0, 0.5, 1.0, 2.0];

struct Builder {
    tolerance: f64,
    r: f64,
    big_r: f64,
    entries: Vec<BoundEntry>,
    skipped: Vec<SkippedCheck>,
}

impl Builder {
    fn push(
        &mut self,
        id: &'static str,
        (lhs, mid, rhs): (f64, Option<f64>, f64),
        s: Option<f64>,
        m: Option<f64>,
        special_case: Option<&'static str>,
    ) {
        let slack = match mid {
            Some(mid) => (mid - lhs).min(rhs - mid),
            None => rhs - lhs,
        };
        // NaN slack must not pass
        let slack = if slack.is_nan() { f64::NEG_INFINITY } else { slack };
        self.entries.push(BoundEntry {
            inequality_id: id,
            lhs,
            mid,
            rhs,
            slack,
            verdict: verdict(slack, self.tolerance),
            special_case,
            context: EntryContext {
                pair_id: None,
                s,
                m,
                r: self.r,
                big_r: self.big_r,
            },
        });
    }

    fn skip(&mut self, id: &'static str, s: Option<f64>, m: Option<f64>, reason: impl Into<String>) {
        self.skipped.push(SkippedCheck {
            inequality_id: id,
            s,
            m,
            reason: reason.into(),
        });
    }
}

const DEGENERATE: &str = "degenerate ratio interval (R - r below 1e-9)";
const NO_STRADDLE: &str = "needs r < 1 < R";

fn special_case(id: &str, s: f64) -> Option<&'static str> {
    Some(match (id, s) {
        ("omega_e_a_chain", 0.0) => "F <= D(Q||P) - Delta/2",
        ("omega_e_a_chain", 1.0) => "G <= (chi2(Q||P) - D(Q||P))/2",
        ("omega_b_a_chain", -1.0) => "Delta <= 2(R-1)(1-r)/((R+1)(r+1))",
        ("omega_b_a_chain", 0.0) => "F <= chord of psi_0",
        ("omega_b_a_chain", 1.0) => "G <= chord of psi_1",
        ("omega_b_a_chain", 2.0) => "chi2(Q||P) <= (R-1)(1-r)/(rR)",
        ("half_e_gap", -1.0) => "|Delta - 2 sum q((p-q)/(p+q))^2|",
        ("half_e_gap", 0.0) => "|F - D(Q||P)/2 + Delta/4|",
        ("half_e_gap", 1.0) => "|G - (chi2(Q||P) - D(Q||P))/4|",
        ("e_star_gap", -1.0) => "|Delta - sum (p+7q)((p-q)/(p+3q))^2|",
        ("e_star_gap", 0.0) => "|F - E*_0|",
        ("e_star_gap", 1.0) => "|G - E*_1|",
        _ => return None,
    })
}

/// Runs every inequality check on `pair` for each `s` in `s_values`, with
/// the default [`VIOLATION_TOLERANCE`].
pub fn verify_all(pair: &DistributionPair, s_values: &[f64]) -> BoundReport {
    verify_all_with_tolerance(pair, s_values, VIOLATION_TOLERANCE)
}

/// [`verify_all`] with an explicit violation tolerance.
pub fn verify_all_with_tolerance(pair: &DistributionPair, s_values: &[f64], tolerance: f64) -> BoundReport {
    let rb = pair.ratio_bounds();
    let (r, big_r) = (rb.lower(), rb.upper());
    let mut b = Builder {
        tolerance,
        r,
        big_r,
        entries: Vec::new(),
        skipped: Vec::new(),
    };
    let mut notes = Vec::new();
    let mut cross_checks = Vec::new();

    let degenerate = big_r - r < DEGENERATE_WIDTH;
    let swapped = pair.swapped();
    let chi2 = chi_squared(pair);
    let v = total_variation(pair);

    b.push(
        "delta_jdiv_chi2_chain",
        (
            0.5 * triangular_discrimination(pair),
            Some(relative_j_divergence(&swapped)),
            chi_squared(&swapped),
        ),
        None,
        None,
        None,
    );

    for m in VAJDA_ORDERS {
        let chi_m = vajda_abs_chi(pair, m).expect("orders are >= 1");
        if degenerate {
            b.skip("vajda_chord", None, Some(m), DEGENERATE);
        } else {
            let (a, c) = (1.0 - r, big_r - 1.0);
            let chord = a * c / (big_r - r) * (pow_real(a, m - 1.0) + pow_real(c, m - 1.0));
            let cap = pow_real(0.5 * (big_r - r), m);
            b.push("vajda_chord", (chi_m, Some(chord), cap), None, Some(m), None);
        }
        if rb.straddles_one() {
            let upper = (pow_real(big_r, m) - 1.0) / (big_r - 1.0) * v;
            b.push("vajda_variation_upper", (chi_m, None, upper), None, Some(m), None);
            if m == 1.0 {
                b.push("vajda_variation_lower", (v, None, chi_m), None, Some(m), None);
            } else {
                b.skip(
                    "vajda_variation_lower",
                    None,
                    Some(m),
                    "((1-r^m)/(1-r)) V <= |chi|^m is false for m > 1 \
                     (P=(1/2,1/2), Q=(1/4,3/4), m=2: 5/6 > 1/3); not checked",
                );
            }
        } else {
            b.skip("vajda_variation_upper", None, Some(m), NO_STRADDLE);
        }
    }

    if degenerate {
        for id in ["chi2_ratio_cap", "abs_chi3_ratio_cap", "variation_ratio_cap"] {
            b.skip(id, None, None, DEGENERATE);
        }
    } else {
        let w = big_r - r;
        let (a, c) = (1.0 - r, big_r - 1.0);
        b.push("chi2_ratio_cap", (chi2, Some(a * c), 0.25 * w * w), None, None, None);
        let chi3 = vajda_abs_chi(pair, 3.0).expect("m = 3");
        b.push(
            "abs_chi3_ratio_cap",
            (chi3, Some(a * c / w * (a * a + c * c)), w * w * w / 8.0),
            None,
            None,
            None,
        );
        b.push("variation_ratio_cap", (v, Some(2.0 * a * c / w), 0.5 * w), None, None, None);
    }

    let mut grid: Vec<f64> = s_values.iter().copied().filter(|s| s.is_finite()).collect();
    grid.sort_by(f64::total_cmp);
    grid.dedup();

    for &s in &grid {
        let param = SParameter::new(s);
        let psi = PsiGenerator::new(param);
        let omega = omega_s(pair, param);
        let e = e_omega(pair, param);
        let sc = |id: &'static str| special_case(id, s);

        let e_closed = e_omega_closed_form(pair, param);
        cross_checks.push(CrossCheck {
            quantity: "E",
            s,
            generic: e,
            closed_form: e_closed,
            relative_difference: relative_difference(e, e_closed, 1e-300),
        });
        let es = e_star_omega(pair, param);
        let es_closed = e_star_omega_closed_form(pair, param);
        cross_checks.push(CrossCheck {
            quantity: "E*",
            s,
            generic: es,
            closed_form: es_closed,
            relative_difference: relative_difference(es, es_closed, 1e-300),
        });
        if param.regime() == Regime::LimitAtOne {
            notes.push(format!(
                "s = {s}: E is (chi2(Q||P) - D(Q||P))/2; the variant with chi2(P||Q) \
                 would give {:.17e}",
                0.5 * (chi2 - relative_j_divergence(&swapped))
            ));
        }

        b.push("omega_nonneg_le_e", (0.0, Some(omega), e), Some(s), None, None);

        if degenerate {
            for id in ["omega_e_a_chain", "omega_b_a_chain", "chord_gap_le_a", "half_e_gap", "e_star_gap"] {
                b.skip(id, Some(s), None, DEGENERATE);
            }
            continue;
        }

        let a = bound_a(&rb, &psi).expect("nondegenerate");
        if let Ok(closed) = a_omega(&rb, s) {
            cross_checks.push(CrossCheck {
                quantity: "A",
                s,
                generic: a,
                closed_form: closed,
                relative_difference: relative_difference(a, closed, 1e-300),
            });
        }
        b.push("omega_e_a_chain", (omega, Some(e), a), Some(s), None, sc("omega_e_a_chain"));

        if !rb.straddles_one() {
            for id in ["omega_b_a_chain", "chord_gap_le_a", "half_e_gap", "e_star_gap"] {
                b.skip(id, Some(s), None, NO_STRADDLE);
            }
            continue;
        }

        let chord = bound_b(&rb, &psi).expect("straddles one");
        if let Ok(closed) = b_omega_closed_form(&rb, param) {
            cross_checks.push(CrossCheck {
                quantity: "B",
                s,
                generic: chord,
                closed_form: closed,
                relative_difference: relative_difference(chord, closed, 1e-300),
            });
        }
        b.push("omega_b_a_chain", (omega, Some(chord), a), Some(s), None, sc("omega_b_a_chain"));
        b.push("chord_gap_le_a", (0.0, Some(chord - omega), a), Some(s), None, None);

        if s < -1.0 {
            for id in ["half_e_gap", "e_star_gap"] {
                b.skip(id, Some(s), None, "gap bounds need s >= -1");
            }
            continue;
        }
        for (id, target) in [("half_e_gap", GapTarget::HalfE), ("e_star_gap", GapTarget::EStar)] {
            let g = omega_gap_bounds(pair, &rb, s, target).expect("preconditions checked");
            b.push(
                id,
                (g.observed_gap, Some(g.bound()), g.ratio_only_bound()),
                Some(s),
                None,
                sc(id),
            );
        }
    }

    let mut entries = b.entries;
    entries.sort_by(entry_order);
    BoundReport {
        tolerance,
        entries,
        skipped: b.skipped,
        cross_checks,
        notes,
    }
}

fn entry_order(x: &BoundEntry, y: &BoundEntry) -> Ordering {
    let key = |o: Option<f64>| o.map_or((0, 0.0), |v| (1, v));
    let (xs, ys) = (key(x.context.s), key(y.context.s));
    xs.0.cmp(&ys.0)
        .then(xs.1.total_cmp(&ys.1))
        .then(x.inequality_id.cmp(y.inequality_id))
        .then(key(x.context.m).1.total_cmp(&key(y.context.m).1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::type_s::psi_s_d2;

    fn standard() -> DistributionPair {
        DistributionPair::from_slices(&[0.5, 0.5], &[0.25, 0.75]).unwrap()
    }

    fn rb() -> RatioBounds {
        RatioBounds::new(2.0 / 3.0, 2.0).unwrap()
    }

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn e_examples() {
        let pair = standard();
        assert!(rel(e_omega(&pair, 0.0), 0.061_039_739_274_831_004) < 1e-13);
        assert!(rel(e_omega_closed_form(&pair, 0.0), 0.061_039_739_274_831_004) < 1e-13);
        assert!(rel(e_omega(&pair, 1.0), 0.061_146_797_029_251_165) < 1e-13);
        assert!(rel(e_omega_closed_form(&pair, 1.0), 0.061_146_797_029_251_165) < 1e-13);
        let same = DistributionPair::from_slices(&[0.4, 0.6], &[0.4, 0.6]).unwrap();
        assert_eq!(e_omega(&same, 0.7), 0.0);
    }

    #[test]
    fn e_star_examples() {
        let pair = standard();
        assert!(rel(e_star_omega(&pair, 1.0), 0.031_962_699_591_881_731) < 1e-13);
        assert!(rel(e_star_omega_closed_form(&pair, 1.0), 0.031_962_699_591_881_731) < 1e-13);
        assert!(rel(e_star_omega(&pair, 0.0), 0.033_044_297_785_933_508) < 1e-13);
        let g = PsiGenerator::new(2.0);
        assert!(rel(e_star_omega(&pair, 2.0), dragomir_e_star(&pair, &g)) < 1e-12);
        assert!(rel(e_star_omega_closed_form(&pair, 2.0), e_star_omega(&pair, 2.0)) < 1e-12);
    }

    #[test]
    fn a_examples() {
        assert!(rel(a_omega(&rb(), 1.0).unwrap(), 0.081_529_062_705_668_219) < 1e-13);
        let braces = lp_power(0.0, 2.5, 1.5).unwrap() - lp_power(-1.0, 2.5, 1.5).unwrap();
        assert!(rel(braces, 1.0 - 0.510_825_623_765_990_68) < 1e-14);
        let tiny = RatioBounds::new(1.0 - 5e-7, 1.0 + 5e-7).unwrap();
        assert!(a_omega(&tiny, 1.0).unwrap().abs() < 1e-11);
        assert!(matches!(
            a_omega(&RatioBounds::new(1.0, 1.0).unwrap(), 1.0),
            Err(Error::DegenerateInterval { .. })
        ));
    }

    #[test]
    fn b_examples() {
        assert!(rel(b_omega(&rb(), 1.0).unwrap(), 0.031_583_942_401_963_250) < 1e-13);
        let sym = RatioBounds::new(0.25, 4.0).unwrap();
        let v = b_omega(&sym, 0.3).unwrap();
        assert!(v.is_finite() && v > 0.0);
        assert!(b_omega(&RatioBounds::new(1.0, 2.0).unwrap(), 1.0).is_err());
    }

    #[test]
    fn chord_closed_forms_for_named_members() {
        for (r, big_r) in [(2.0 / 3.0, 2.0), (0.1, 7.0), (0.5, 1.25)] {
            let rb = RatioBounds::new(r, big_r).unwrap();
            let tri = 2.0 * (big_r - 1.0) * (1.0 - r) / ((big_r + 1.0) * (r + 1.0));
            assert!(rel(4.0 * b_omega(&rb, -1.0).unwrap(), tri) < 1e-13);
            let chi = (big_r - 1.0) * (1.0 - r) / (r * big_r);
            assert!(rel(8.0 * b_omega(&rb, 2.0).unwrap(), chi) < 1e-13);
            for s in [-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0, 3.0] {
                let g = b_omega(&rb, s).unwrap();
                let c = b_omega_closed_form(&rb, s).unwrap();
                assert!(rel(c, g) < 1e-12, "s = {s}");
            }
        }
    }

    #[test]
    fn delta_examples() {
        assert!(rel(delta_omega(&rb(), 1.0).unwrap(), 0.633_333_333_333_333_33) < 1e-14);
        assert!(rel(delta_omega(&rb(), 2.0).unwrap(), 0.8125) < 1e-14);
        let via_psi = psi_s_d2(2.0 / 3.0, 1.0).unwrap() - psi_s_d2(2.0, 1.0).unwrap();
        assert!(rel(delta_omega(&rb(), 1.0).unwrap(), via_psi) < 1e-14);
        assert_eq!(delta_omega(&rb(), -1.5), Err(Error::SOutOfRange { s: -1.5 }));
        let narrow = RatioBounds::new(1.0 - 1e-9, 1.0).unwrap();
        assert!(delta_omega(&narrow, 1.0).unwrap() < 1e-7);
    }

    #[test]
    fn psi3_sup_examples() {
        assert!(rel(psi3_sup(&rb(), 1.0).unwrap(), 2.43) < 1e-14);
        let half = RatioBounds::new(0.5, 2.0).unwrap();
        let d3 = crate::type_s::psi_s_d3(0.5, -1.0).unwrap().abs();
        assert!(rel(psi3_sup(&half, -1.0).unwrap(), d3) < 1e-14);
        let one = RatioBounds::new(1.0, 1.0).unwrap();
        for s in [-1.0, 0.0, 2.0] {
            assert!(rel(psi3_sup(&one, s).unwrap(), (s + 4.0) / 8.0) < 1e-15);
        }
        assert!(psi3_sup(&one, -2.0).is_err());
    }

    #[test]
    fn gap_examples() {
        let pair = standard();
        let g = omega_gap_bounds(&pair, &rb(), 1.0, GapTarget::HalfE).unwrap();
        let [c1, c2, c3] = g.data.as_array();
        assert!(rel(c1, 0.026_388_888_888_888_889) < 1e-13);
        assert!(rel(c2, 0.056_25) < 1e-13);
        assert!(rel(c3, 0.122_293_594_058_502_33) < 1e-13);
        assert!(rel(g.observed_gap, 0.001_010_543_887_337_667_3) < 1e-9);
        assert!(g.observed_gap <= g.bound());

        let g = omega_gap_bounds(&pair, &rb(), 1.0, GapTarget::EStar).unwrap();
        assert!(rel(g.bound(), 0.026_388_888_888_888_889) < 1e-13);
        assert!(rel(g.observed_gap, 0.000_378_757_189_918_481_32) < 1e-9);
    }

    #[test]
    fn generic_gap_engine_agrees_with_closed_forms() {
        let pair = standard();
        for s in [-1.0, 0.0, 1.0, 2.0] {
            for target in [GapTarget::HalfE, GapTarget::EStar] {
                let closed = omega_gap_bounds(&pair, &rb(), s, target).unwrap();
                let generic = crate::csiszar::gap_bounds(&pair, &rb(), &PsiGenerator::new(s), target).unwrap();
                assert_eq!(generic.monotonicity, -1);
                assert!(rel(generic.third_derivative_sup, closed.third_derivative_sup) < 1e-12);
                assert!(rel(generic.bound(), closed.bound()) < 1e-12);
                assert!((generic.observed_gap - closed.observed_gap).abs() < 1e-15 || rel(generic.observed_gap, closed.observed_gap) < 1e-9);
            }
        }
    }

    #[test]
    fn verify_standard_pair() {
        let report = verify_all(&standard(), &[-1.0, 0.0, 1.0, 2.0]);
        assert!(report.all_pass(), "{:#?}", report.failures().collect::<Vec<_>>());
        let chain = report
            .entries
            .iter()
            .find(|e| e.inequality_id == "delta_jdiv_chi2_chain")
            .unwrap();
        assert!(rel(chain.lhs, 1.0 / 15.0) < 1e-14);
        assert!(rel(chain.mid.unwrap(), 0.127_706_405_941_497_67) < 1e-13);
        assert!(rel(chain.rhs, 0.25) < 1e-14);

        let cap = report
            .entries
            .iter()
            .find(|e| e.inequality_id == "chi2_ratio_cap")
            .unwrap();
        assert!(rel(cap.lhs, 1.0 / 3.0) < 1e-14);
        assert!(rel(cap.mid.unwrap(), 1.0 / 3.0) < 1e-14);
        assert!(rel(cap.rhs, 4.0 / 9.0) < 1e-14);
        assert!(cap.slack.abs() < 1e-15);

        assert!(report.notes.iter().any(|n| n.starts_with("s = 1")));
        for c in &report.cross_checks {
            assert!(c.relative_difference < 1e-12, "{c:?}");
        }
        assert!(report
            .skipped
            .iter()
            .all(|s| s.inequality_id == "vajda_variation_lower"));
    }

    #[test]
    fn verify_identical_pair_only_trivial_entries() {
        let pair = DistributionPair::from_slices(&[0.3, 0.7], &[0.3, 0.7]).unwrap();
        let report = verify_all(&pair, &[-1.0, 0.5, 1.0]);
        assert!(report.all_pass());
        assert!(report.entries.iter().all(|e| e.slack >= 0.0));
        assert!(report.skipped.iter().any(|s| s.reason == DEGENERATE));
    }

    #[test]
    fn verify_near_identical_pair_skips_interval_checks() {
        let pair = DistributionPair::from_slices(&[0.5, 0.5], &[0.5 + 1e-12, 0.5 - 1e-12]).unwrap();
        let report = verify_all(&pair, &[-1.0, 0.0, 1.0, 2.0]);
        assert!(report.all_pass());
        assert!(report
            .skipped
            .iter()
            .any(|s| s.inequality_id == "omega_b_a_chain" && s.reason == DEGENERATE));
    }

    #[test]
    fn verify_skips_gap_bounds_below_minus_one() {
        let report = verify_all(&standard(), &[-2.0]);
        assert!(report.all_pass());
        assert!(report
            .skipped
            .iter()
            .any(|s| s.inequality_id == "half_e_gap" && s.s == Some(-2.0)));
    }

    #[test]
    fn entries_are_ordered_by_s_then_id() {
        let report = verify_all(&standard(), &[2.0, -1.0, 0.5]);
        let keys: Vec<_> = report
            .entries
            .iter()
            .map(|e| (e.context.s.unwrap_or(f64::NEG_INFINITY), e.inequality_id))
            .collect();
        let mut sorted = keys.clone();
        sorted.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(b.1)));
        assert_eq!(keys, sorted);
    }

    #[test]
    fn tolerance_reclassification() {
        let mut report = verify_all(&standard(), &[1.0]);
        report.entries[0].slack = -1e-9;
        report.reclassify(1e-10);
        assert!(!report.all_pass());
        report.reclassify(1e-8);
        assert!(report.all_pass());
    }
}
