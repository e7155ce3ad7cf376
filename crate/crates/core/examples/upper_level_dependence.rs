//! Two levels of dependence: the correlation between the events and the
//! copula between their uncertain probabilities. Writes one SVG per case.
//!
//! ```text
//! cargo run --release --example upper_level_dependence -- [OUT_DIR]
//! ```

use std::path::PathBuf;

use unclogic::boolean_ops::OpCode;
use unclogic::kernel::RhoInterval;
use unclogic::pbox::{apply_op_pbox, cbox_kn, to_svg, CopulaSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let out = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| std::env::temp_dir().display().to_string()));
    std::fs::create_dir_all(&out)?;
    let x = cbox_kn(2, 10, 200)?;
    let y = cbox_kn(7, 12, 200)?;
    let cases = [
        ("indep", RhoInterval::ZERO, CopulaSpec::Pi),
        ("lower_only", RhoInterval::new(0.2, 0.6)?, CopulaSpec::Pi),
        ("upper_only", RhoInterval::ZERO, CopulaSpec::Gaussian(0.8)),
        ("both", RhoInterval::new(0.2, 0.6)?, CopulaSpec::Gaussian(0.8)),
        ("unknown", RhoInterval::FULL, CopulaSpec::FrechetUnknown),
    ];
    for (name, rho, c) in cases {
        let z = apply_op_pbox(OpCode::Or, &x, &y, rho, c)?;
        let m = z.mean();
        let path = out.join(format!("or_{name}.svg"));
        std::fs::write(&path, to_svg(&z, &format!("A or B, rho {rho}, copula {c}")))?;
        println!("{name:<11} mean [{:.4}, {:.4}]  -> {}", m.lo(), m.hi(), path.display());
    }
    Ok(())
}
