//! The correlation-indexed copula on a coarse grid, next to the independence
//! copula it perturbs.
//!
//! ```text
//! cargo run --example copula_grid
//! ```

use unclogic::kernel::c_and;

fn main() {
    let grid: Vec<f64> = (1..10).map(|i| i as f64 / 10.0).collect();
    for r in [-1.0, -0.5, 0.0, 0.5, 1.0] {
        println!("rho = {r}");
        print!("{:>6}", "u\\v");
        for v in &grid {
            print!("{v:>6.1}");
        }
        println!();
        for &u in &grid {
            print!("{u:>6.1}");
            for &v in &grid {
                print!("{:>6.3}", c_and(u, v, r));
            }
            println!();
        }
        println!();
    }
}
