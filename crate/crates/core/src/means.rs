//! The p-logarithmic power mean of two positive numbers.
//!
//! For `a != b`,
//!
//! ```text
//! L_p(a, b)   = [ (b^(p+1) - a^(p+1)) / ((p+1)(b-a)) ]^(1/p)   p != -1, 0
//!             = (b - a) / (ln b - ln a)                        p = -1  (logarithmic mean)
//!             = (1/e) (b^b / a^a)^(1/(b-a))                    p = 0   (identric mean)
//!
//! L_p^p(a, b) = (b^(p+1) - a^(p+1)) / ((p+1)(b-a))             p != -1
//!             = (ln b - ln a) / (b - a)                        p = -1
//! ```
//!
//! Both extend continuously to `a == b` (`L_p(a, a) = a`, `L_p^p(a, a) = a^p`).
//! Endpoints are ordered before evaluation, so both functions are exactly
//! symmetric in `(a, b)`.

use crate::error::{Error, Result};
use crate::numeric::pow_real;

/// `|p + 1|` (resp. `|p|`) below which the logarithmic (resp. identric)
/// branch is used.
pub const BRANCH_SWITCH: f64 = 1e-8;

/// Relative endpoint gap below which the continuous extension at `a == b` is used.
pub const EQUAL_ENDPOINTS: f64 = 1e-12;

struct Endpoints {
    lo: f64,
    hi: f64,
    // hi - lo
    gap: f64,
    // ln(hi / lo)
    log_ratio: f64,
}

fn endpoints(a: f64, b: f64) -> Result<Option<Endpoints>> {
    if !(a > 0.0 && b > 0.0) || !a.is_finite() || !b.is_finite() {
        return Err(Error::NonPositiveEndpoint { a, b });
    }
    let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
    let gap = hi - lo;
    if gap < EQUAL_ENDPOINTS * hi {
        return Ok(None);
    }
    Ok(Some(Endpoints {
        lo,
        hi,
        gap,
        log_ratio: (gap / lo).ln_1p(),
    }))
}

/// `L_p^p(a, b)`.
pub fn lp_power(p: f64, a: f64, b: f64) -> Result<f64> {
    let Some(e) = endpoints(a, b)? else {
        let x = a.min(b);
        return Ok(if p == 0.0 { 1.0 } else { pow_real(x, p) });
    };
    if (p + 1.0).abs() < BRANCH_SWITCH {
        return Ok(e.log_ratio / e.gap);
    }
    if p == 0.0 {
        return Ok(1.0);
    }
    let k = p + 1.0;
    // b^k - a^k = a^k * expm1(k ln(b/a))
    Ok(pow_real(e.lo, k) * (k * e.log_ratio).exp_m1() / (k * e.gap))
}

/// `L_p(a, b)`; the result lies in `[min(a, b), max(a, b)]`.
pub fn lp_mean(p: f64, a: f64, b: f64) -> Result<f64> {
    let Some(e) = endpoints(a, b)? else {
        return Ok(a.min(b));
    };
    let mean = if (p + 1.0).abs() < BRANCH_SWITCH {
        e.gap / e.log_ratio
    } else if p.abs() < BRANCH_SWITCH {
        // (b ln b - a ln a)/(b - a) - 1 = ln b - 1 + a ln(b/a)/(b - a)
        e.hi * (e.lo * e.log_ratio / e.gap - 1.0).exp()
    } else {
        let power = lp_power(p, a, b)?;
        (power.ln() / p).exp()
    };
    Ok(mean.clamp(e.lo, e.hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn lp_mean_examples() {
        assert!(rel(lp_mean(1.0, 1.0, 2.0).unwrap(), 1.5) < 1e-15);
        assert!(rel(lp_mean(-1.0, 1.0, 2.0).unwrap(), 1.0 / 2.0f64.ln()) < 1e-15);
        assert!(rel(lp_mean(0.0, 1.0, 2.0).unwrap(), 4.0 / std::f64::consts::E) < 1e-15);
    }

    #[test]
    fn lp_power_examples() {
        assert_eq!(lp_power(0.0, 1.5, 2.5).unwrap(), 1.0);
        assert!(rel(lp_power(-1.0, 1.5, 2.5).unwrap(), 0.510_825_623_765_990_68) < 1e-15);
        assert!(rel(lp_power(-2.0, 1.0, 2.0).unwrap(), 0.5) < 1e-15);
    }

    #[test]
    fn equal_endpoints_extend_continuously() {
        assert_eq!(lp_mean(3.0, 2.0, 2.0).unwrap(), 2.0);
        assert_eq!(lp_power(3.0, 2.0, 2.0).unwrap(), 8.0);
        assert_eq!(lp_power(0.0, 2.0, 2.0).unwrap(), 1.0);
        assert_eq!(lp_power(-1.0, 2.0, 2.0).unwrap(), 0.5);
        let near = lp_power(-2.0, 2.0, 2.0 + 1e-13).unwrap();
        assert!(rel(near, 0.25) < 1e-12);
    }

    #[test]
    fn rejects_nonpositive_endpoints() {
        assert_eq!(
            lp_mean(1.0, 0.0, 1.0),
            Err(Error::NonPositiveEndpoint { a: 0.0, b: 1.0 })
        );
        assert!(lp_power(1.0, 1.0, -2.0).is_err());
    }

    #[test]
    fn branch_switches_are_continuous() {
        let (a, b) = (1.5, 2.5);
        let at = lp_power(-1.0, a, b).unwrap();
        for dp in [1e-8, -1e-8, 2e-8, -2e-8, 1e-6] {
            assert!((lp_power(-1.0 + dp, a, b).unwrap() - at).abs() <= 1e-6);
        }
        let at = lp_mean(0.0, a, b).unwrap();
        for dp in [1e-8, -1e-8, 2e-8, -2e-8, 1e-6] {
            assert!((lp_mean(dp, a, b).unwrap() - at).abs() <= 1e-6);
        }
        let at = lp_mean(-1.0, a, b).unwrap();
        assert!((lp_mean(-1.0 + 2e-8, a, b).unwrap() - at).abs() <= 1e-6);
    }

    #[test]
    fn symmetric_in_endpoints() {
        for p in [-3.0, -2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.5] {
            assert_eq!(lp_power(p, 0.7, 3.1).unwrap(), lp_power(p, 3.1, 0.7).unwrap());
            assert_eq!(lp_mean(p, 0.7, 3.1).unwrap(), lp_mean(p, 3.1, 0.7).unwrap());
        }
    }
}
