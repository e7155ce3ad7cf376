use crate::boolean_ops::OpCode;
use crate::error::{Error, Result};
use crate::kernel::{c_and, RhoInterval};

use super::{copula_eval, not_pbox, CopulaSpec, PBox};

const MASS_TOLERANCE: f64 = 1e-9;
// Slack when comparing cumulative masses with level boundaries.
const LEVEL_SLACK: f64 = 1e-10;

struct Cell {
    i: usize,
    j: usize,
    mass: f64,
}

/// Probability mass of each grid cell `[i/N, (i+1)/N] x [j/N, (j+1)/N]`.
fn cell_masses(c: CopulaSpec, n: usize) -> Result<Vec<Cell>> {
    let nf = n as f64;
    let cells = match c {
        CopulaSpec::Pi => {
            let mass = 1.0 / (nf * nf);
            (0..n).flat_map(|i| (0..n).map(move |j| Cell { i, j, mass })).collect()
        }
        CopulaSpec::M => (0..n).map(|i| Cell { i, j: i, mass: 1.0 / nf }).collect(),
        CopulaSpec::W => (0..n).map(|i| Cell { i, j: n - 1 - i, mass: 1.0 / nf }).collect(),
        CopulaSpec::Gaussian(_) => {
            let grid: Vec<f64> = (0..=n).map(|i| i as f64 / nf).collect();
            let mut table = vec![0.0; (n + 1) * (n + 1)];
            for (i, &u) in grid.iter().enumerate() {
                for (j, &v) in grid.iter().enumerate() {
                    table[i * (n + 1) + j] = copula_eval(c, u, v)?;
                }
            }
            let at = |i: usize, j: usize| table[i * (n + 1) + j];
            let mut cells = Vec::with_capacity(n * n);
            for i in 0..n {
                for j in 0..n {
                    let mass = at(i + 1, j + 1) - at(i + 1, j) - at(i, j + 1) + at(i, j);
                    if mass > 0.0 {
                        cells.push(Cell { i, j, mass });
                    }
                }
            }
            cells
        }
        CopulaSpec::FrechetUnknown => {
            return Err(Error::Domain("unknown upper-level dependence needs conv_and_frechet".into()))
        }
    };
    let total: f64 = cells.iter().map(|c| c.mass).sum();
    if (total - 1.0).abs() > MASS_TOLERANCE {
        return Err(Error::MassDefect(total));
    }
    Ok(cells)
}

fn same_steps(x: &PBox, y: &PBox) -> Result<(PBox, PBox)> {
    let n = x.steps().max(y.steps());
    Ok((x.resample(n)?, y.resample(n)?))
}

/// Condenses weighted values into `n` quantile levels. `lower` rounds each
/// level down to the smallest value whose mass reaches into it; otherwise
/// the largest.
fn condense(mut values: Vec<(f64, f64)>, n: usize, lower: bool) -> Vec<f64> {
    values.sort_by(|a, b| a.0.total_cmp(&b.0));
    let nf = n as f64;
    let mut out = Vec::with_capacity(n);
    let mut it = values.iter();
    // `cum` is the cumulative mass up to and including `current`.
    let (mut current, mut cum) = it.next().copied().unwrap_or((0.0, 0.0));
    let mut k = 0;
    while k < n {
        let reached = if lower { cum > k as f64 / nf + LEVEL_SLACK } else { cum >= (k + 1) as f64 / nf - LEVEL_SLACK };
        if reached {
            out.push(current);
            k += 1;
            continue;
        }
        match it.next() {
            Some(&(v, mass)) => {
                current = v;
                cum += mass;
            }
            None => {
                // Mass exhausted by rounding; the remaining levels take the
                // largest value.
                out.push(current);
                k += 1;
            }
        }
    }
    out
}

/// Conjunction of two p-boxes whose events have correlation `rho`, with
/// upper-level dependence `cxy` between the uncertain probabilities.
pub fn conv_and(x: &PBox, y: &PBox, rho: RhoInterval, cxy: CopulaSpec) -> Result<PBox> {
    let (x, y) = same_steps(x, y)?;
    let n = x.steps();
    let cells = cell_masses(cxy, n)?;
    let lows = cells.iter().map(|c| (c_and(x.q_lo[c.i], y.q_lo[c.j], rho.lo()), c.mass)).collect();
    let highs = cells.iter().map(|c| (c_and(x.q_hi[c.i], y.q_hi[c.j], rho.hi()), c.mass)).collect();
    Ok(PBox::from_sorted(condense(lows, n, true), condense(highs, n, false)))
}

/// Conjunction under unknown upper-level dependence: best-possible bounds over
/// every copula between the two uncertain probabilities.
pub fn conv_and_frechet(x: &PBox, y: &PBox, rho: RhoInterval) -> Result<PBox> {
    let (x, y) = same_steps(x, y)?;
    let n = x.steps();
    // Level k is bounded below by any split i + j = k and above by any split
    // i + j = k + n - 1 (0-based).
    let q_lo = (0..n)
        .map(|k| (0..=k).map(|i| c_and(x.q_lo[i], y.q_lo[k - i], rho.lo())).fold(f64::NEG_INFINITY, f64::max))
        .collect();
    let q_hi = (0..n)
        .map(|k| (k..n).map(|i| c_and(x.q_hi[i], y.q_hi[k + n - 1 - i], rho.hi())).fold(f64::INFINITY, f64::min))
        .collect();
    Ok(PBox::from_sorted(q_lo, q_hi))
}

/// Monotone binary operation on p-boxes, composed from the conjunction and
/// complements. Complementing a single operand also flips the correlation and
/// the upper-level copula.
pub fn apply_op_pbox(op: OpCode, x: &PBox, y: &PBox, rho: RhoInterval, cxy: CopulaSpec) -> Result<PBox> {
    let form = op.form().ok_or_else(|| Error::UnsupportedOp(op.to_string()))?;
    let x = if form.complement_a { not_pbox(x) } else { x.clone() };
    let y = if form.complement_b { not_pbox(y) } else { y.clone() };
    let (rho, cxy) = if form.negates_rho() { (rho.negate(), cxy.flip()) } else { (rho, cxy) };
    let inner = match cxy {
        CopulaSpec::FrechetUnknown => conv_and_frechet(&x, &y, rho)?,
        c => conv_and(&x, &y, rho, c)?,
    };
    Ok(if form.complement_out { not_pbox(&inner) } else { inner })
}
