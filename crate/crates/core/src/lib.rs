//! Uncertainty logic: Boolean operations on events whose probabilities are
//! known exactly, as intervals, or as probability boxes, with dependence
//! between events given as a (possibly interval) Pearson correlation.
//!
//! The building block is the correlated conjunction [`kernel::c_and`]; every
//! other operation is composed from it and the complement. The
//! [`fault_tree`] module applies these operations bottom-up through a fault
//! tree described in a small text format.
//!
//! ```
//! use unclogic::interval::and_i;
//! use unclogic::kernel::{RhoInterval, UnitInterval};
//!
//! let u = UnitInterval::new(0.2, 0.3).unwrap();
//! let v = UnitInterval::new(0.45, 0.5).unwrap();
//! let rho = RhoInterval::new(-0.2, 0.4).unwrap();
//! let p = and_i(u, v, rho);
//! assert!((p.lo() - 0.0502).abs() < 1e-4 && (p.hi() - 0.2417).abs() < 1e-4);
//! ```

pub mod boolean_ops;
pub mod cli;
pub mod error;
pub mod fault_tree;
pub mod interval;
pub mod kernel;
pub mod pbox;
pub mod special;

pub use error::{Error, Result};
