//! Conjunction of two binomial confidence boxes under several dependence
//! assumptions between the uncertain probabilities.
//!
//! ```text
//! cargo run --release --example pbox_cbox_and
//! ```

use unclogic::kernel::RhoInterval;
use unclogic::pbox::{cbox_kn, cdf_bounds_at, conv_and, conv_and_frechet, CopulaSpec};

fn main() -> unclogic::Result<()> {
    // 5 failures in 6 trials and 16 in 20.
    let x = cbox_kn(5, 6, 200)?;
    let y = cbox_kn(16, 20, 200)?;
    let rho = RhoInterval::ZERO;
    println!("{:<16} {:>18} {:>18}", "copula", "mean", "P(Z <= 0.5)");
    for c in [CopulaSpec::W, CopulaSpec::Gaussian(-0.5), CopulaSpec::Pi, CopulaSpec::Gaussian(0.5), CopulaSpec::M] {
        let z = conv_and(&x, &y, rho, c)?;
        let (m, p) = (z.mean(), cdf_bounds_at(&z, 0.5));
        println!("{:<16} [{:.4}, {:.4}]   [{:.4}, {:.4}]", c.to_string(), m.lo(), m.hi(), p.lo(), p.hi());
    }
    let z = conv_and_frechet(&x, &y, rho)?;
    let (m, p) = (z.mean(), cdf_bounds_at(&z, 0.5));
    println!("{:<16} [{:.4}, {:.4}]   [{:.4}, {:.4}]", "unknown", m.lo(), m.hi(), p.lo(), p.hi());
    Ok(())
}
