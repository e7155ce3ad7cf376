//! Interval probabilities with an interval of correlations: bounds on every
//! cell of the joint table and on a few derived operations.
//!
//! ```text
//! cargo run --example interval_joint_table
//! ```

use unclogic::boolean_ops::OpCode;
use unclogic::interval::{apply_op_i, joint_i};
use unclogic::kernel::{RhoInterval, UnitInterval};

fn main() -> unclogic::Result<()> {
    let u = UnitInterval::new(0.2, 0.3)?;
    let v = UnitInterval::new(0.45, 0.5)?;
    let r = RhoInterval::new(-0.2, 0.4)?;
    println!("P(A) in {u}, P(B) in {v}, rho in {r}");
    let t = joint_i(u, v, r);
    for (name, cell) in ["p11", "p10", "p01", "p00"].iter().zip(t.cells()) {
        println!("  {name}  [{:.5}, {:.5}]", cell.lo(), cell.hi());
    }
    println!();
    for op in [OpCode::And, OpCode::Or, OpCode::InhibitAb, OpCode::Xor, OpCode::Equiv] {
        let z = apply_op_i(op, u, v, r);
        println!("  {:<10} [{:.5}, {:.5}]", op.name(), z.lo(), z.hi());
    }
    Ok(())
}
