//! Seeded sampling of correlated Bernoulli pairs, compared with the
//! closed-form conjunction and the requested correlation.
//!
//! ```text
//! cargo run --release --example monte_carlo_oracle
//! ```

use unclogic::boolean_ops::{sample_pairs, sample_pearson};
use unclogic::kernel::{c_and, rho_feasible};

fn main() -> unclogic::Result<()> {
    let n = 200_000;
    println!("{:>5} {:>5} {:>8}  {:>9} {:>9}  {:>8} {:>8}", "a", "b", "rho", "P(A,B)", "freq", "target", "r");
    for (seed, &(a, b, t)) in [(0.3, 0.2, 0.25), (0.5, 0.5, 0.9), (0.1, 0.7, 0.05), (0.8, 0.6, 0.6)].iter().enumerate()
    {
        let s = rho_feasible(a, b);
        let r = s.lo() + t * (s.hi() - s.lo());
        let (x, y) = sample_pairs(a, b, r, n, seed as u64)?;
        let hits = x.bits().iter().zip(y.bits()).filter(|(p, q)| **p && **q).count();
        let freq = hits as f64 / n as f64;
        let rhat = sample_pearson(&x, &y)?;
        println!("{a:>5} {b:>5} {r:>8.4}  {:>9.5} {freq:>9.5}  {r:>8.4} {rhat:>8.4}", c_and(a, b, r));
    }
    Ok(())
}
