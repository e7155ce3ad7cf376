//! Fault trees over uncertain basic events with correlated binary gates.
//!
//! Trees are written in a small line-oriented language:
//!
//! ```text
//! event <name> point <p>
//! event <name> interval <lo> <hi>
//! event <name> cbox <k> <n>
//! gate  <name> (and|or) <child> <child> rho <r> [<r_hi>] [copula (pi|w|m|gaussian <r>|frechet)]
//! top   <name>
//! ```
//!
//! `#` starts a comment. Each name may be used as a child at most once, so the
//! structure is always a tree.

mod eval;
pub mod fixtures;
mod parser;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::boolean_ops::OpCode;
use crate::kernel::{RhoInterval, UnitInterval};
use crate::pbox::CopulaSpec;

pub use eval::{evaluate_interval, evaluate_pbox, explain, ExplainMode, NodeValue, Report, ReportRow};
pub(crate) use eval::{fmt_iv, sig4};
pub use parser::parse_tree;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum EventProb {
    Point(f64),
    Interval(UnitInterval),
    CBox { k: u64, n: u64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EventSpec {
    pub name: String,
    pub prob: EventProb,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GateOp {
    And,
    Or,
}

impl GateOp {
    pub fn op_code(self) -> OpCode {
        match self {
            GateOp::And => OpCode::And,
            GateOp::Or => OpCode::Or,
        }
    }
}

impl fmt::Display for GateOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GateOp::And => "and",
            GateOp::Or => "or",
        })
    }
}

/// A binary gate. `rho` correlates the two child events; `upper` is the
/// dependence between their uncertain probabilities (p-box mode only).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GateSpec {
    pub name: String,
    pub op: GateOp,
    pub left: String,
    pub right: String,
    pub rho: RhoInterval,
    pub upper: CopulaSpec,
}

/// A validated fault tree. Declaration order is kept so that serialisation is
/// stable.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FaultTree {
    pub events: Vec<EventSpec>,
    pub gates: Vec<GateSpec>,
    pub top: String,
}

pub(crate) enum Node<'a> {
    Event(&'a EventSpec),
    Gate(&'a GateSpec),
}

impl FaultTree {
    pub(crate) fn node(&self, name: &str) -> Option<Node<'_>> {
        if let Some(e) = self.events.iter().find(|e| e.name == name) {
            return Some(Node::Event(e));
        }
        self.gates.iter().find(|g| g.name == name).map(Node::Gate)
    }

    /// Writes the tree back in the text format accepted by [`parse_tree`].
    pub fn to_dsl(&self) -> String {
        let mut out = String::new();
        for e in &self.events {
            let prob = match e.prob {
                EventProb::Point(p) => format!("point {p}"),
                EventProb::Interval(iv) => format!("interval {} {}", iv.lo(), iv.hi()),
                EventProb::CBox { k, n } => format!("cbox {k} {n}"),
            };
            out.push_str(&format!("event {} {prob}\n", e.name));
        }
        for g in &self.gates {
            let rho =
                if g.rho.is_point() { format!("{}", g.rho.lo()) } else { format!("{} {}", g.rho.lo(), g.rho.hi()) };
            out.push_str(&format!("gate {} {} {} {} rho {rho}", g.name, g.op, g.left, g.right));
            if g.upper != CopulaSpec::Pi {
                out.push_str(&format!(" copula {}", g.upper));
            }
            out.push('\n');
        }
        out.push_str(&format!("top {}\n", self.top));
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DiagCode {
    Syntax,
    UnknownReference,
    DuplicateName,
    ChildReused,
    Cycle,
    MissingTop,
    RhoRange,
    ProbRange,
    CountOrder,
    Unreachable,
}

impl DiagCode {
    pub fn code(self) -> &'static str {
        match self {
            DiagCode::Syntax => "E001",
            DiagCode::UnknownReference => "E002",
            DiagCode::DuplicateName => "E003",
            DiagCode::ChildReused => "E004",
            DiagCode::Cycle => "E005",
            DiagCode::MissingTop => "E006",
            DiagCode::RhoRange => "E007",
            DiagCode::ProbRange => "E008",
            DiagCode::CountOrder => "E009",
            DiagCode::Unreachable => "E010",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnostic {
    pub code: DiagCode,
    /// 1-based; 0 when the problem is not tied to a line (e.g. no `top`).
    pub line: usize,
    pub column: usize,
    pub token: String,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line > 0 {
            write!(f, "{}:{}: ", self.line, self.column)?;
        }
        write!(f, "error[{}]: {}", self.code.code(), self.message)?;
        if !self.token.is_empty() {
            write!(f, " (at `{}`)", self.token)?;
        }
        Ok(())
    }
}
