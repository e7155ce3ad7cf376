//! The bundled pressure-tank fault tree under three dependence assumptions,
//! with interval and c-box inputs.
//!
//! ```text
//! cargo run --release --example pressure_tank
//! ```

use unclogic::fault_tree::{evaluate_interval, evaluate_pbox, explain, fixtures, parse_tree, ExplainMode};
use unclogic::pbox::cdf_bounds_at;

fn main() -> unclogic::Result<()> {
    println!("interval inputs");
    for (name, label, text) in &fixtures::ALL[..3] {
        let r = evaluate_interval(&parse_tree(text)?)?;
        println!("  {label:<20} [{:.4e}, {:.4e}]  ({name})", r.lo(), r.hi());
    }
    println!();
    println!("c-box inputs, P(E1 <= 1e-4)");
    for (_, label, text) in &fixtures::ALL[3..] {
        let top = evaluate_pbox(&parse_tree(text)?, 200)?;
        let b = cdf_bounds_at(&top, 1e-4);
        println!("  {label:<20} [{:.4}, {:.4}]", b.lo(), b.hi());
    }
    println!();
    println!("node by node, mixed dependence:");
    print!("{}", explain(&parse_tree(fixtures::INTERVAL_MIXED)?, ExplainMode::Interval)?.to_text());
    Ok(())
}
