//! Conjunction of two events as their correlation sweeps the feasible range.
//!
//! ```text
//! cargo run --example correlated_and
//! ```

use unclogic::kernel::{c_and, frechet_and, lucas_and, rho_feasible};

fn main() {
    let (a, b) = (0.3, 0.2);
    let s = rho_feasible(a, b);
    let f = frechet_and(a, b);
    println!("P(A) = {a}, P(B) = {b}");
    println!("feasible correlation [{:.3}, {:.3}]", s.lo(), s.hi());
    println!("Frechet bounds on P(A and B): [{}, {}]", f.lo(), f.hi());
    println!();
    println!("{:>6}  {:>10}  {:>10}", "rho", "raw", "clamped");
    for k in 0..=10 {
        let r = -1.0 + 0.2 * k as f64;
        println!("{r:>6.1}  {:>10.5}  {:>10.5}", lucas_and(a, b, r), c_and(a, b, r));
    }
}
