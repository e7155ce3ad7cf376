//! Every binary operation on two correlated point probabilities, with the
//! full joint table and a De Morgan check.
//!
//! ```text
//! cargo run --example boolean_algebra
//! ```

use unclogic::boolean_ops::{apply_op, joint_bernoulli, not_p, OpCode};

fn main() {
    let (a, b, r) = (0.4, 0.7, 0.25);
    let t = joint_bernoulli(a, b, r);
    println!("P(A) = {a}, P(B) = {b}, rho = {r}");
    println!("joint: p11 {:.4}  p10 {:.4}  p01 {:.4}  p00 {:.4}", t.p11, t.p10, t.p01, t.p00);
    println!();
    for op in OpCode::ALL {
        println!("{:<12} {:.4}", op.name(), apply_op(op, a, b, r));
    }
    // not(A or B) = not A and not B; complementing both keeps the correlation.
    let lhs = not_p(apply_op(OpCode::Or, a, b, r));
    let rhs = apply_op(OpCode::And, not_p(a), not_p(b), r);
    println!();
    println!("De Morgan: {lhs:.6} = {rhs:.6}");
}
