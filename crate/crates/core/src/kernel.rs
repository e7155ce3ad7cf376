//! The correlated conjunction primitive.
//!
//! Two Bernoulli events with marginals `a`, `b` and Pearson correlation `rho`
//! have joint success probability `ab + rho * sqrt(a(1-a)b(1-b))` whenever that
//! value is attainable. Outside the attainable correlation range the value is
//! clamped to the Fréchet–Hoeffding bounds `W(a, b) = max(a + b - 1, 0)` and
//! `M(a, b) = min(a, b)`. The resulting family `C_rho` is a copula for every
//! `rho` in `[-1, 1]`, with `C_-1 = W`, `C_0 = Π` and `C_1 = M`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A closed sub-interval of `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UnitInterval {
    lo: f64,
    hi: f64,
}

impl UnitInterval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&lo) || !(0.0..=1.0).contains(&hi) {
            return Err(Error::Domain(format!("probability interval [{lo}, {hi}] is not inside [0, 1]")));
        }
        if lo > hi {
            return Err(Error::Domain(format!("probability interval [{lo}, {hi}] has lo > hi")));
        }
        Ok(Self { lo, hi })
    }

    /// Degenerate interval `[p, p]`.
    pub fn point(p: f64) -> Result<Self> {
        Self::new(p, p)
    }

    /// Builds an interval from endpoints that are known to be valid up to
    /// rounding; values are clamped into `[0, 1]` and reordered.
    pub(crate) fn clamped(lo: f64, hi: f64) -> Self {
        let lo = lo.clamp(0.0, 1.0);
        let hi = hi.clamp(0.0, 1.0);
        Self { lo: lo.min(hi), hi: hi.max(lo) }
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, p: f64) -> bool {
        self.lo <= p && p <= self.hi
    }

    pub fn contains_interval(&self, other: &UnitInterval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    /// `1 - [lo, hi] = [1 - hi, 1 - lo]`.
    pub fn complement(&self) -> Self {
        Self { lo: 1.0 - self.hi, hi: 1.0 - self.lo }
    }
}

impl fmt::Display for UnitInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match f.precision() {
            Some(p) => write!(f, "[{:.*e}, {:.*e}]", p, self.lo, p, self.hi),
            None => write!(f, "[{}, {}]", self.lo, self.hi),
        }
    }
}

/// A closed sub-interval of `[-1, 1]` of Pearson correlations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RhoInterval {
    lo: f64,
    hi: f64,
}

impl RhoInterval {
    pub const FULL: RhoInterval = RhoInterval { lo: -1.0, hi: 1.0 };
    pub const ZERO: RhoInterval = RhoInterval { lo: 0.0, hi: 0.0 };

    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(-1.0..=1.0).contains(&lo) || !(-1.0..=1.0).contains(&hi) {
            return Err(Error::Domain(format!("correlation interval [{lo}, {hi}] is not inside [-1, 1]")));
        }
        if lo > hi {
            return Err(Error::Domain(format!("correlation interval [{lo}, {hi}] has lo > hi")));
        }
        Ok(Self { lo, hi })
    }

    pub(crate) fn clamped(lo: f64, hi: f64) -> Self {
        let lo = lo.clamp(-1.0, 1.0);
        let hi = hi.clamp(-1.0, 1.0);
        Self { lo: lo.min(hi), hi: hi.max(lo) }
    }

    pub fn point(r: f64) -> Result<Self> {
        Self::new(r, r)
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, r: f64) -> bool {
        self.lo <= r && r <= self.hi
    }

    pub fn contains_interval(&self, other: &RhoInterval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    /// Correlation after complementing exactly one of the two events.
    pub fn negate(&self) -> Self {
        Self { lo: -self.hi, hi: -self.lo }
    }
}

impl fmt::Display for RhoInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// Lower Fréchet–Hoeffding bound. Exact on the edges `u = 1` and `v = 1`.
pub fn w(u: f64, v: f64) -> f64 {
    if u == 1.0 {
        v
    } else if v == 1.0 {
        u
    } else {
        (u + v - 1.0).max(0.0)
    }
}

/// Upper Fréchet–Hoeffding bound.
pub fn m(u: f64, v: f64) -> f64 {
    u.min(v)
}

/// Independence copula.
pub fn pi(u: f64, v: f64) -> f64 {
    u * v
}

fn spread(a: f64, b: f64) -> f64 {
    (a * (1.0 - a) * b * (1.0 - b)).sqrt()
}

fn is_degenerate(a: f64, b: f64) -> bool {
    a == 0.0 || a == 1.0 || b == 0.0 || b == 1.0
}

/// Unclamped correlated conjunction; may leave `[0, 1]` when `rho` is not
/// attainable for these marginals.
pub fn lucas_and(a: f64, b: f64, rho: f64) -> f64 {
    a * b + rho * spread(a, b)
}

/// Range of `P(A and B)` over every possible dependence between the events.
pub fn frechet_and(a: f64, b: f64) -> UnitInterval {
    UnitInterval { lo: w(a, b), hi: m(a, b) }
}

/// Pearson correlations attainable by Bernoulli events with marginals `a`, `b`.
///
/// When either marginal is 0 or 1 the correlation is undefined and every
/// value of `rho` leads to the same conjunction, so the full range is returned.
pub fn rho_feasible(a: f64, b: f64) -> RhoInterval {
    if is_degenerate(a, b) {
        return RhoInterval::FULL;
    }
    let s = spread(a, b);
    let ab = a * b;
    RhoInterval { lo: ((w(a, b) - ab) / s).max(-1.0), hi: ((m(a, b) - ab) / s).min(1.0) }
}

/// Correlated conjunction `C_rho(a, b)`.
///
/// Non-decreasing in each of `a`, `b` and `rho`, and always inside
/// [`frechet_and`]`(a, b)`.
pub fn c_and(a: f64, b: f64, rho: f64) -> f64 {
    if is_degenerate(a, b) {
        return a * b;
    }
    let feasible = rho_feasible(a, b);
    if rho <= feasible.lo {
        w(a, b)
    } else if rho >= feasible.hi {
        m(a, b)
    } else {
        // Rounding can push the Lucas value a hair past the Fréchet bounds
        // right next to the branch boundaries.
        lucas_and(a, b, rho).clamp(w(a, b), m(a, b))
    }
}

/// `∂C_rho(u, v) / ∂u`, using the same branch selection as [`c_and`].
///
/// On the clamped branches this is the derivative of `W` or `M`. Needs
/// `u, v` strictly inside `(0, 1)`.
pub fn c_and_partial_u(u: f64, v: f64, rho: f64) -> Result<f64> {
    if is_degenerate(u, v) {
        return Err(Error::Domain(format!("partial derivative undefined at u = {u}, v = {v}")));
    }
    let feasible = rho_feasible(u, v);
    let step = |on: bool| if on { 1.0 } else { 0.0 };
    if rho <= feasible.lo {
        Ok(step(u + v > 1.0))
    } else if rho >= feasible.hi {
        Ok(step(u < v))
    } else {
        let num = v * (1.0 - u) * (1.0 - v) - u * v * (1.0 - v);
        let den = 2.0 * (u * v * (1.0 - u) * (1.0 - v)).sqrt();
        Ok(v + rho * num / den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lucas_goes_negative_for_unattainable_rho() {
        assert!((lucas_and(0.3, 0.2, -1.0) - (-0.123)).abs() < 5e-4);
        assert_eq!(lucas_and(0.5, 0.5, 0.0), 0.25);
        assert_eq!(lucas_and(0.5, 0.5, 1.0), 0.5);
    }

    #[test]
    fn frechet_examples() {
        assert_eq!(frechet_and(0.3, 0.2), UnitInterval { lo: 0.0, hi: 0.2 });
        let f = frechet_and(0.7, 0.8);
        assert!((f.lo() - 0.5).abs() < 1e-15);
        assert_eq!(f.hi(), 0.7);
        let f = frechet_and(1.0, 0.35);
        assert!((f.lo() - 0.35).abs() < 1e-15 && f.hi() == 0.35);
    }

    #[test]
    fn feasible_rho_examples() {
        let r = rho_feasible(0.3, 0.2);
        assert!((r.lo() + 0.327).abs() < 1e-3, "{r}");
        assert!((r.hi() - 0.763).abs() < 1e-3, "{r}");
        assert_eq!(rho_feasible(0.5, 0.5), RhoInterval::FULL);
        assert_eq!(rho_feasible(1.0, 0.3), RhoInterval::FULL);
        assert_eq!(rho_feasible(0.0, 0.3), RhoInterval::FULL);
    }

    #[test]
    fn c_and_examples() {
        assert_eq!(c_and(0.3, 0.2, -1.0), 0.0);
        assert!((c_and(0.2, 0.45, -0.2) - 0.0502).abs() < 1e-4);
        assert!((c_and(0.3, 0.5, 0.4) - 0.2417).abs() < 1e-4);
        for rho in [-1.0, -0.3, 0.0, 0.6, 1.0] {
            assert_eq!(c_and(0.37, 1.0, rho), 0.37);
            assert_eq!(c_and(1.0, 0.37, rho), 0.37);
            assert_eq!(c_and(0.0, 0.37, rho), 0.0);
        }
    }

    #[test]
    fn partial_derivative_branches() {
        assert_eq!(c_and_partial_u(0.5, 0.5, 0.0).unwrap(), 0.5);
        assert_eq!(c_and_partial_u(0.3, 0.2, -1.0).unwrap(), 0.0);
        assert_eq!(c_and_partial_u(0.3, 0.2, 0.9).unwrap(), 0.0);
        assert_eq!(c_and_partial_u(0.2, 0.3, 0.9).unwrap(), 1.0);
        // Clamped to W with u + v > 1, where W grows one-for-one in u.
        assert_eq!(c_and_partial_u(0.7, 0.8, -1.0).unwrap(), 1.0);
        assert!(c_and_partial_u(0.0, 0.4, 0.1).is_err());
        assert!(c_and_partial_u(0.4, 1.0, 0.1).is_err());
    }

    #[test]
    fn partial_derivative_matches_central_difference() {
        let h = 1e-6;
        let fd = (c_and(0.5 + h, 0.4, 0.2) - c_and(0.5 - h, 0.4, 0.2)) / (2.0 * h);
        let cf = c_and_partial_u(0.5, 0.4, 0.2).unwrap();
        assert!((cf - fd).abs() <= 1e-6, "{cf} vs {fd}");
    }

    #[test]
    fn interval_constructors_validate() {
        assert!(UnitInterval::new(0.4, 0.3).is_err());
        assert!(UnitInterval::new(-0.1, 0.3).is_err());
        assert!(RhoInterval::new(-1.2, 0.3).is_err());
        assert!(RhoInterval::new(0.5, 0.3).is_err());
        let r = RhoInterval::new(-0.2, 0.4).unwrap();
        assert_eq!(r.negate(), RhoInterval::new(-0.4, 0.2).unwrap());
    }
}
