//! Probability boxes over `[0, 1]`: distributional uncertainty about the
//! probability of an event.
//!
//! A [`PBox`] stores `N` lower and `N` upper quantile values. Entry `i`
//! (0-based) carries probability mass `1/N` spanning levels `[i/N, (i+1)/N]`:
//! `q_lo[i]` is at most the lower-bound quantile at `i/N` and `q_hi[i]` at
//! least the upper-bound quantile at `(i+1)/N`, so the stored box contains the
//! continuous one. The lower quantile sequence is the left edge of the box
//! (the upper CDF bound) and the upper sequence is its right edge (the lower
//! CDF bound).

mod conv;
mod copula;
mod export;

pub use conv::{apply_op_pbox, conv_and, conv_and_frechet};
pub use copula::{copula_eval, CopulaSpec};
pub use export::{read_csv, to_csv, to_svg};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernel::UnitInterval;
use crate::special::beta_quantile;

/// Default number of quantile levels.
pub const DEFAULT_STEPS: usize = 200;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PBox {
    q_lo: Vec<f64>,
    q_hi: Vec<f64>,
}

impl PBox {
    /// Validates monotonicity, ordering and range of the two quantile sequences.
    pub fn new(q_lo: Vec<f64>, q_hi: Vec<f64>) -> Result<Self> {
        if q_lo.is_empty() || q_lo.len() != q_hi.len() {
            return Err(Error::Domain(format!(
                "p-box needs two non-empty sequences of equal length, got {} and {}",
                q_lo.len(),
                q_hi.len()
            )));
        }
        let in_range = |x: &f64| (0.0..=1.0).contains(x);
        if !q_lo.iter().chain(&q_hi).all(in_range) {
            return Err(Error::Domain("p-box quantiles must lie in [0, 1]".into()));
        }
        let sorted = |q: &[f64]| q.windows(2).all(|w| w[0] <= w[1]);
        if !sorted(&q_lo) || !sorted(&q_hi) {
            return Err(Error::Domain("p-box quantiles must be non-decreasing".into()));
        }
        if q_lo.iter().zip(&q_hi).any(|(lo, hi)| lo > hi) {
            return Err(Error::Domain("p-box lower quantile exceeds upper quantile".into()));
        }
        Ok(Self { q_lo, q_hi })
    }

    /// Internal constructor for sequences produced by this crate's algorithms,
    /// which are sorted by construction; values are clamped into `[0, 1]`.
    pub(crate) fn from_sorted(mut q_lo: Vec<f64>, mut q_hi: Vec<f64>) -> Self {
        for q in q_lo.iter_mut().chain(q_hi.iter_mut()) {
            *q = q.clamp(0.0, 1.0);
        }
        for (lo, hi) in q_lo.iter_mut().zip(q_hi.iter_mut()) {
            if *lo > *hi {
                std::mem::swap(lo, hi);
            }
        }
        debug_assert!(q_lo.windows(2).all(|w| w[0] <= w[1]));
        debug_assert!(q_hi.windows(2).all(|w| w[0] <= w[1]));
        Self { q_lo, q_hi }
    }

    pub fn steps(&self) -> usize {
        self.q_lo.len()
    }

    pub fn q_lo(&self) -> &[f64] {
        &self.q_lo
    }

    pub fn q_hi(&self) -> &[f64] {
        &self.q_hi
    }

    /// Midpoint of the probability levels covered by entry `i`.
    pub fn level(&self, i: usize) -> f64 {
        (i as f64 + 0.5) / self.steps() as f64
    }

    /// Smallest interval containing every value the box allows.
    pub fn support(&self) -> UnitInterval {
        UnitInterval::clamped(self.q_lo[0], self.q_hi[self.steps() - 1])
    }

    /// Whether `other` lies inside this box at every level (within `tol`).
    pub fn encloses(&self, other: &PBox, tol: f64) -> bool {
        self.steps() == other.steps()
            && self.q_lo.iter().zip(&other.q_lo).all(|(a, b)| *a <= b + tol)
            && self.q_hi.iter().zip(&other.q_hi).all(|(a, b)| *a >= b - tol)
    }

    /// Mean interval, from averaging each quantile sequence.
    pub fn mean(&self) -> UnitInterval {
        let n = self.steps() as f64;
        UnitInterval::clamped(self.q_lo.iter().sum::<f64>() / n, self.q_hi.iter().sum::<f64>() / n)
    }

    /// Re-discretises onto `steps` levels, rounding outward.
    pub fn resample(&self, steps: usize) -> Result<PBox> {
        if steps == 0 {
            return Err(Error::Domain("p-box needs at least one step".into()));
        }
        let n = self.steps();
        if steps == n {
            return Ok(self.clone());
        }
        // New cell k spans [k/steps, (k+1)/steps); take the old cells that
        // overlap its left and right edge respectively.
        let q_lo = (0..steps)
            .map(|k| {
                let idx = (k * n) / steps;
                self.q_lo[idx.min(n - 1)]
            })
            .collect();
        let q_hi = (0..steps)
            .map(|k| {
                let idx = ((k + 1) * n).div_ceil(steps) - 1;
                self.q_hi[idx.min(n - 1)]
            })
            .collect();
        Ok(PBox::from_sorted(q_lo, q_hi))
    }
}

fn check_steps(steps: usize) -> Result<()> {
    if steps == 0 {
        Err(Error::Domain("p-box needs at least one step".into()))
    } else {
        Ok(())
    }
}

/// A precise probability as a degenerate p-box.
pub fn pbox_point(p: f64, steps: usize) -> Result<PBox> {
    check_steps(steps)?;
    let p = UnitInterval::point(p)?.lo();
    Ok(PBox::from_sorted(vec![p; steps], vec![p; steps]))
}

/// The vacuous p-box on an interval: nothing is known inside it.
pub fn pbox_interval(u: UnitInterval, steps: usize) -> Result<PBox> {
    check_steps(steps)?;
    Ok(PBox::from_sorted(vec![u.lo(); steps], vec![u.hi(); steps]))
}

/// Confidence box for a binomial rate after `k` successes in `n` trials,
/// bounded by `Beta(k, n - k + 1)` and `Beta(k + 1, n - k)`, discretised
/// outward.
pub fn cbox_kn(k: u64, n: u64, steps: usize) -> Result<PBox> {
    check_steps(steps)?;
    if n == 0 || k > n {
        return Err(Error::Domain(format!("c-box needs 0 <= k <= n and n >= 1, got k = {k}, n = {n}")));
    }
    let (kf, nf) = (k as f64, n as f64);
    let level = |i: usize| i as f64 / steps as f64;
    let q_lo = if k == 0 {
        vec![0.0; steps]
    } else {
        (0..steps).map(|i| beta_quantile(kf, nf - kf + 1.0, level(i))).collect()
    };
    let q_hi = if k == n {
        vec![1.0; steps]
    } else {
        (0..steps).map(|i| beta_quantile(kf + 1.0, nf - kf, level(i + 1))).collect()
    };
    Ok(PBox::from_sorted(q_lo, q_hi))
}

/// Complement `1 - X`.
pub fn not_pbox(x: &PBox) -> PBox {
    let q_lo = x.q_hi.iter().rev().map(|q| 1.0 - q).collect();
    let q_hi = x.q_lo.iter().rev().map(|q| 1.0 - q).collect();
    PBox::from_sorted(q_lo, q_hi)
}

/// Bounds on `P(X <= t)`.
pub fn cdf_bounds_at(x: &PBox, t: f64) -> UnitInterval {
    let n = x.steps() as f64;
    let below = |q: &[f64]| q.iter().filter(|&&v| v <= t).count() as f64 / n;
    UnitInterval::clamped(below(&x.q_hi), below(&x.q_lo))
}
