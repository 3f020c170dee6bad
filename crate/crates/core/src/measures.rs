//! Concrete divergence measures and their symmetric combinations.
//!
//! Every function takes a validated [`DistributionPair`] `(P, Q)` and sums in
//! input order with compensated accumulation. Terms with `p_i == q_i`
//! contribute exactly zero.
//!
//! | function | formula |
//! |---|---|
//! | [`chi_squared`] | `sum (p-q)^2 / q` |
//! | [`relative_information`] | `sum p ln(p/q)` |
//! | [`relative_j_divergence`] | `sum (p-q) ln((p+q)/(2q))` |
//! | [`relative_js_divergence`] | `sum p ln(2p/(p+q))` |
//! | [`relative_ag_divergence`] | `sum (p+q)/2 ln((p+q)/(2p))` |
//! | [`triangular_discrimination`] | `sum (p-q)^2 / (p+q)` |
//! | [`bhattacharyya`] | `sum sqrt(pq)` |
//! | [`hellinger`] | `1/2 sum (sqrt p - sqrt q)^2` |
//! | [`vajda_abs_chi`] | `sum |p-q|^m / q^(m-1)` |

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric::{compensated_sum, pow_real};
use crate::simplex::DistributionPair;
use crate::type_s;

fn sum_terms<F: Fn(f64, f64) -> f64>(pair: &DistributionPair, term: F) -> f64 {
    compensated_sum(
        pair.iter()
            .map(|(p, q)| if p == q { 0.0 } else { term(p, q) }),
    )
}

/// Pearson chi-square divergence `chi^2(P||Q)`.
pub fn chi_squared(pair: &DistributionPair) -> f64 {
    sum_terms(pair, |p, q| {
        let d = p - q;
        d * d / q
    })
}

/// Kullback-Leibler relative information `K(P||Q)`.
pub fn relative_information(pair: &DistributionPair) -> f64 {
    sum_terms(pair, |p, q| p * (p / q).ln())
}

/// Relative J-divergence `D(P||Q)`.
pub fn relative_j_divergence(pair: &DistributionPair) -> f64 {
    sum_terms(pair, |p, q| (p - q) * ((p - q) / (2.0 * q)).ln_1p())
}

/// Relative Jensen-Shannon divergence `F(P||Q)`.
pub fn relative_js_divergence(pair: &DistributionPair) -> f64 {
    sum_terms(pair, |p, q| -p * ((q - p) / (2.0 * p)).ln_1p())
}

/// Relative arithmetic-geometric divergence `G(P||Q)`.
pub fn relative_ag_divergence(pair: &DistributionPair) -> f64 {
    sum_terms(pair, |p, q| 0.5 * (p + q) * ((q - p) / (2.0 * p)).ln_1p())
}

/// Triangular discrimination `Delta(P||Q)`; symmetric in `P` and `Q`.
pub fn triangular_discrimination(pair: &DistributionPair) -> f64 {
    sum_terms(pair, |p, q| {
        let d = p - q;
        d * d / (p + q)
    })
}

/// Bhattacharyya coefficient `B(P||Q)`, in `(0, 1]`.
pub fn bhattacharyya(pair: &DistributionPair) -> f64 {
    compensated_sum(pair.iter().map(|(p, q)| (p * q).sqrt())).min(1.0)
}

/// Hellinger discrimination `h(P||Q) = 1 - B(P||Q)`.
///
/// Evaluated in the sum-of-squares form, which stays nonnegative and exact
/// for nearby distributions.
pub fn hellinger(pair: &DistributionPair) -> f64 {
    0.5 * sum_terms(pair, |p, q| {
        let d = p.sqrt() - q.sqrt();
        d * d
    })
}

/// Total variation `V(P||Q) = sum |p - q|`, the `m = 1` Vajda divergence.
pub fn total_variation(pair: &DistributionPair) -> f64 {
    sum_terms(pair, |p, q| (p - q).abs())
}

/// Vajda `|chi|^m(P||Q)` for `m >= 1`.
pub fn vajda_abs_chi(pair: &DistributionPair, m: f64) -> Result<f64> {
    if !(m >= 1.0) || !m.is_finite() {
        return Err(Error::MOutOfRange { m });
    }
    if m == 1.0 {
        return Ok(total_variation(pair));
    }
    if m == 2.0 {
        return Ok(chi_squared(pair));
    }
    Ok(sum_terms(pair, |p, q| {
        let d = (p - q).abs();
        d * pow_real(d / q, m - 1.0)
    }))
}

/// The symmetric combinations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Symmetric {
    /// `chi^2(P||Q) + chi^2(Q||P)`
    Psi,
    /// `K(P||Q) + K(Q||P)`
    J,
    /// `[F(P||Q) + F(Q||P)] / 2`
    I,
    /// `[G(P||Q) + G(Q||P)] / 2`
    T,
}

/// Evaluates one of the symmetric measures; invariant under swapping.
pub fn symmetric_divergence(pair: &DistributionPair, id: Symmetric) -> f64 {
    // each term is written symmetrically in (p, q), so swapping is bit-exact
    match id {
        Symmetric::Psi => sum_terms(pair, |p, q| {
            let d = p - q;
            d * d * (p + q) / (p * q)
        }),
        Symmetric::J => sum_terms(pair, |p, q| {
            let (lo, hi) = if p < q { (p, q) } else { (q, p) };
            (hi - lo) * (hi / lo).ln()
        }),
        Symmetric::I => {
            0.5 * sum_terms(pair, |p, q| {
                let m = 0.5 * (p + q);
                p * (p / m).ln() + q * (q / m).ln()
            })
        }
        Symmetric::T => sum_terms(pair, |p, q| {
            let m = 0.5 * (p + q);
            m * (m * m / (p * q)).ln() * 0.5
        }),
    }
}

/// A measure name from the registry used by the command line.
///
/// Names: `chi2`, `kl`, `rel_j`, `rel_js`, `rel_ag`, `delta`, `bhat`,
/// `hellinger`, `v`, `vajda:m`, `psi_sym`, `j`, `i`, `t`, `phi:s`, `omega:s`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Measure {
    ChiSquared,
    RelativeInformation,
    RelativeJ,
    RelativeJs,
    RelativeAg,
    Triangular,
    Bhattacharyya,
    Hellinger,
    TotalVariation,
    Vajda(f64),
    Symmetric(Symmetric),
    Phi(f64),
    Omega(f64),
}

impl Measure {
    pub fn evaluate(&self, pair: &DistributionPair) -> Result<f64> {
        Ok(match *self {
            Measure::ChiSquared => chi_squared(pair),
            Measure::RelativeInformation => relative_information(pair),
            Measure::RelativeJ => relative_j_divergence(pair),
            Measure::RelativeJs => relative_js_divergence(pair),
            Measure::RelativeAg => relative_ag_divergence(pair),
            Measure::Triangular => triangular_discrimination(pair),
            Measure::Bhattacharyya => bhattacharyya(pair),
            Measure::Hellinger => hellinger(pair),
            Measure::TotalVariation => total_variation(pair),
            Measure::Vajda(m) => vajda_abs_chi(pair, m)?,
            Measure::Symmetric(id) => symmetric_divergence(pair, id),
            Measure::Phi(s) => type_s::phi_s(pair, s),
            Measure::Omega(s) => type_s::omega_s(pair, s),
        })
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Measure::ChiSquared => f.write_str("chi2"),
            Measure::RelativeInformation => f.write_str("kl"),
            Measure::RelativeJ => f.write_str("rel_j"),
            Measure::RelativeJs => f.write_str("rel_js"),
            Measure::RelativeAg => f.write_str("rel_ag"),
            Measure::Triangular => f.write_str("delta"),
            Measure::Bhattacharyya => f.write_str("bhat"),
            Measure::Hellinger => f.write_str("hellinger"),
            Measure::TotalVariation => f.write_str("v"),
            Measure::Vajda(m) => write!(f, "vajda:{m}"),
            Measure::Symmetric(Symmetric::Psi) => f.write_str("psi_sym"),
            Measure::Symmetric(Symmetric::J) => f.write_str("j"),
            Measure::Symmetric(Symmetric::I) => f.write_str("i"),
            Measure::Symmetric(Symmetric::T) => f.write_str("t"),
            Measure::Phi(s) => write!(f, "phi:{s}"),
            Measure::Omega(s) => write!(f, "omega:{s}"),
        }
    }
}

/// Error for unknown or malformed measure names.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown measure `{0}`")]
pub struct UnknownMeasure(pub String);

impl FromStr for Measure {
    type Err = UnknownMeasure;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let name = s.trim();
        let bad = || UnknownMeasure(name.to_string());
        if let Some((head, arg)) = name.split_once(':') {
            let x: f64 = arg.trim().parse().map_err(|_| bad())?;
            if !x.is_finite() {
                return Err(bad());
            }
            return match head {
                "vajda" if x >= 1.0 => Ok(Measure::Vajda(x)),
                "phi" => Ok(Measure::Phi(x)),
                "omega" => Ok(Measure::Omega(x)),
                _ => Err(bad()),
            };
        }
        Ok(match name {
            "chi2" => Measure::ChiSquared,
            "kl" => Measure::RelativeInformation,
            "rel_j" => Measure::RelativeJ,
            "rel_js" => Measure::RelativeJs,
            "rel_ag" => Measure::RelativeAg,
            "delta" => Measure::Triangular,
            "bhat" => Measure::Bhattacharyya,
            "hellinger" => Measure::Hellinger,
            "v" => Measure::TotalVariation,
            "psi_sym" => Measure::Symmetric(Symmetric::Psi),
            "j" => Measure::Symmetric(Symmetric::J),
            "i" => Measure::Symmetric(Symmetric::I),
            "t" => Measure::Symmetric(Symmetric::T),
            _ => return Err(bad()),
        })
    }
}

/// A computed measure value.
#[derive(Debug, Clone, PartialEq)]
pub struct DivergenceValue {
    pub measure: Measure,
    pub value: f64,
}
