//! Interval-valued probabilities and correlations.
//!
//! `C_rho(u, v)` is non-decreasing in `u`, `v` and `rho`, so the monotone
//! operations are evaluated exactly at interval endpoints. Which endpoint
//! feeds which bound is read off [`Form::signs`].

use serde::{Deserialize, Serialize};

use crate::boolean_ops::{apply_op, OpCode, Sign};
use crate::kernel::{c_and, RhoInterval, UnitInterval};

/// Which end of an input interval a bound is evaluated at.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum End {
    Lo,
    Hi,
}

impl End {
    fn pick(self, lo: f64, hi: f64) -> f64 {
        match self {
            End::Lo => lo,
            End::Hi => hi,
        }
    }
}

/// For a monotone op, the endpoints of `(u, v, rho)` that produce the lower
/// and upper bound of the result. `None` for XOR/EQUIV and for constant or
/// unary ops where the choice is immaterial.
pub fn endpoint_table(op: OpCode) -> Option<([End; 3], [End; 3])> {
    let signs = op.form()?.signs();
    let for_lower = signs.map(|s| match s {
        Sign::Decreasing => End::Hi,
        _ => End::Lo,
    });
    let for_upper = signs.map(|s| match s {
        Sign::Decreasing => End::Lo,
        _ => End::Hi,
    });
    Some((for_lower, for_upper))
}

pub fn and_i(u: UnitInterval, v: UnitInterval, rho: RhoInterval) -> UnitInterval {
    UnitInterval::clamped(c_and(u.lo(), v.lo(), rho.lo()), c_and(u.hi(), v.hi(), rho.hi()))
}

pub fn apply_op_i(op: OpCode, u: UnitInterval, v: UnitInterval, rho: RhoInterval) -> UnitInterval {
    use OpCode::*;
    if let Some((lower, upper)) = endpoint_table(op) {
        let form = op.form().expect("endpoint table implies a form");
        let at = |ends: [End; 3]| {
            form.eval(ends[0].pick(u.lo(), u.hi()), ends[1].pick(v.lo(), v.hi()), ends[2].pick(rho.lo(), rho.hi()))
        };
        return UnitInterval::clamped(at(lower), at(upper));
    }
    match op {
        Xor => xor_i(u, v, rho),
        Equiv => xor_i(u, v, rho).complement(),
        NotA => u.complement(),
        NotB => v.complement(),
        IdentA => u,
        IdentB => v,
        Zero | One => {
            let p = apply_op(op, 0.0, 0.0, 0.0);
            UnitInterval::clamped(p, p)
        }
        _ => unreachable!("monotone ops handled above"),
    }
}

/// Sub-boxes per non-degenerate input dimension in [`xor_i`].
const XOR_SPLITS: usize = 8;

/// Outer bound on `P(A xor B)`.
///
/// XOR is not monotone in the marginals, so endpoint evaluation is not
/// enough. On each sub-box two enclosures are intersected: `p10 + p01` with
/// each cell bounded by endpoints, and `u + v - 2 p11`. The result is the hull
/// over a grid of sub-boxes.
fn xor_i(u: UnitInterval, v: UnitInterval, rho: RhoInterval) -> UnitInterval {
    let split = |lo: f64, hi: f64| -> Vec<(f64, f64)> {
        if lo == hi {
            return vec![(lo, hi)];
        }
        let edge = |i: usize| if i == XOR_SPLITS { hi } else { lo + (hi - lo) * i as f64 / XOR_SPLITS as f64 };
        (0..XOR_SPLITS).map(|i| (edge(i), edge(i + 1))).collect()
    };
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for &(ul, uh) in &split(u.lo(), u.hi()) {
        for &(vl, vh) in &split(v.lo(), v.hi()) {
            for &(rl, rh) in &split(rho.lo(), rho.hi()) {
                let (l, h) = xor_enclosure(
                    UnitInterval::clamped(ul, uh),
                    UnitInterval::clamped(vl, vh),
                    RhoInterval::clamped(rl, rh),
                );
                lo = lo.min(l);
                hi = hi.max(h);
            }
        }
    }
    UnitInterval::clamped(lo, hi)
}

fn xor_enclosure(u: UnitInterval, v: UnitInterval, rho: RhoInterval) -> (f64, f64) {
    let t = joint_i(u, v, rho);
    let by_cells = (t.p10.lo() + t.p01.lo(), t.p10.hi() + t.p01.hi());
    let by_margins = (u.lo() + v.lo() - 2.0 * t.p11.hi(), u.hi() + v.hi() - 2.0 * t.p11.lo());
    (by_cells.0.max(by_margins.0), by_cells.1.min(by_margins.1))
}

/// Cell-wise interval bounds on a bivariate Bernoulli joint table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntervalJointTable {
    pub p11: UnitInterval,
    pub p10: UnitInterval,
    pub p01: UnitInterval,
    pub p00: UnitInterval,
}

impl IntervalJointTable {
    pub fn cells(&self) -> [UnitInterval; 4] {
        [self.p11, self.p10, self.p01, self.p00]
    }
}

pub fn joint_i(u: UnitInterval, v: UnitInterval, rho: RhoInterval) -> IntervalJointTable {
    let neg = rho.negate();
    IntervalJointTable {
        p11: and_i(u, v, rho),
        p10: and_i(u, v.complement(), neg),
        p01: and_i(u.complement(), v, neg),
        p00: and_i(u.complement(), v.complement(), rho),
    }
}
