use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::interval::apply_op_i;
use crate::kernel::UnitInterval;
use crate::pbox::{apply_op_pbox, cbox_kn, pbox_interval, pbox_point, PBox};

use super::{EventProb, EventSpec, FaultTree, GateSpec, Node};

/// Post-order fold from the leaves up to the top event. Returns every node's
/// value; the top event comes last.
fn fold<T: Clone>(
    tree: &FaultTree,
    leaf: &impl Fn(&EventSpec) -> Result<T>,
    gate: &impl Fn(&GateSpec, &T, &T) -> Result<T>,
) -> Result<Vec<(String, T)>> {
    fn go<T: Clone>(
        tree: &FaultTree,
        name: &str,
        leaf: &impl Fn(&EventSpec) -> Result<T>,
        gate: &impl Fn(&GateSpec, &T, &T) -> Result<T>,
        out: &mut Vec<(String, T)>,
    ) -> Result<T> {
        let value = match tree.node(name) {
            Some(Node::Event(e)) => leaf(e)?,
            Some(Node::Gate(g)) => {
                let l = go(tree, &g.left, leaf, gate, out)?;
                let r = go(tree, &g.right, leaf, gate, out)?;
                gate(g, &l, &r)?
            }
            None => return Err(Error::Domain(format!("fault tree has no node `{name}`"))),
        };
        out.push((name.to_string(), value.clone()));
        Ok(value)
    }
    let mut out = Vec::new();
    go(tree, &tree.top, leaf, gate, &mut out)?;
    Ok(out)
}

fn interval_leaf(e: &EventSpec) -> Result<UnitInterval> {
    match e.prob {
        EventProb::Point(p) => UnitInterval::point(p),
        EventProb::Interval(iv) => Ok(iv),
        EventProb::CBox { .. } => Err(Error::Mode(format!("event `{}` is a c-box; evaluate in p-box mode", e.name))),
    }
}

fn interval_gate(g: &GateSpec, l: &UnitInterval, r: &UnitInterval) -> Result<UnitInterval> {
    Ok(apply_op_i(g.op.op_code(), *l, *r, g.rho))
}

fn pbox_leaf(steps: usize) -> impl Fn(&EventSpec) -> Result<PBox> {
    move |e| match e.prob {
        EventProb::Point(p) => pbox_point(p, steps),
        EventProb::Interval(iv) => pbox_interval(iv, steps),
        EventProb::CBox { k, n } => cbox_kn(k, n, steps),
    }
}

fn pbox_gate(g: &GateSpec, l: &PBox, r: &PBox) -> Result<PBox> {
    apply_op_pbox(g.op.op_code(), l, r, g.rho, g.upper)
}

/// Top-event probability interval. Gate copulas are ignored; c-box events are
/// rejected.
pub fn evaluate_interval(tree: &FaultTree) -> Result<UnitInterval> {
    let rows = fold(tree, &interval_leaf, &interval_gate)?;
    Ok(rows.last().expect("fold yields the top event").1)
}

/// Top-event p-box on `steps` quantile levels.
pub fn evaluate_pbox(tree: &FaultTree, steps: usize) -> Result<PBox> {
    let rows = fold(tree, &pbox_leaf(steps), &pbox_gate)?;
    Ok(rows.into_iter().last().expect("fold yields the top event").1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExplainMode {
    Interval,
    PBox { steps: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NodeValue {
    Interval(UnitInterval),
    PBox {
        support: UnitInterval,
        mean: UnitInterval,
        /// Lower/upper quantile bounds at roughly 5%, 50% and 95%.
        q05: UnitInterval,
        q50: UnitInterval,
        q95: UnitInterval,
    },
}

impl NodeValue {
    fn summarise(x: &PBox) -> Self {
        let at = |p: f64| {
            let i = ((p * x.steps() as f64) as usize).min(x.steps() - 1);
            UnitInterval::clamped(x.q_lo()[i], x.q_hi()[i])
        };
        NodeValue::PBox { support: x.support(), mean: x.mean(), q05: at(0.05), q50: at(0.5), q95: at(0.95) }
    }

    /// The interval that best describes this node at a glance.
    pub fn range(&self) -> UnitInterval {
        match self {
            NodeValue::Interval(iv) => *iv,
            NodeValue::PBox { support, .. } => *support,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportRow {
    pub name: String,
    /// `event`, `and` or `or`.
    pub kind: String,
    pub rho: Option<String>,
    pub value: NodeValue,
}

/// Per-node results in evaluation order (children before parents).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub rows: Vec<ReportRow>,
}

pub fn explain(tree: &FaultTree, mode: ExplainMode) -> Result<Report> {
    let values: Vec<(String, NodeValue)> = match mode {
        ExplainMode::Interval => {
            fold(tree, &interval_leaf, &interval_gate)?.into_iter().map(|(n, v)| (n, NodeValue::Interval(v))).collect()
        }
        ExplainMode::PBox { steps } => {
            fold(tree, &pbox_leaf(steps), &pbox_gate)?.into_iter().map(|(n, v)| (n, NodeValue::summarise(&v))).collect()
        }
    };
    let rows = values
        .into_iter()
        .map(|(name, value)| {
            let (kind, rho) = match tree.node(&name) {
                Some(Node::Gate(g)) => (g.op.to_string(), Some(g.rho.to_string())),
                _ => ("event".to_string(), None),
            };
            ReportRow { name, kind, rho, value }
        })
        .collect();
    Ok(Report { rows })
}

/// Four significant digits: fixed notation for magnitudes in `[1e-3, 1e4)`,
/// scientific otherwise.
pub(crate) fn sig4(x: f64) -> String {
    if x == 0.0 || x == 1.0 || !x.is_finite() {
        return format!("{x}");
    }
    // The exponent of the rounded mantissa, so 0.0099999 reads as 0.01000.
    let sci = format!("{x:.3e}");
    let exp: i32 = sci[sci.find('e').unwrap() + 1..].parse().unwrap();
    if (-3..4).contains(&exp) {
        format!("{x:.prec$}", prec = (3 - exp) as usize)
    } else {
        sci
    }
}

pub(crate) fn fmt_iv(iv: UnitInterval) -> String {
    format!("[{}, {}]", sig4(iv.lo()), sig4(iv.hi()))
}

impl Report {
    pub fn to_text(&self) -> String {
        let width = self.rows.iter().map(|r| r.name.len()).max().unwrap_or(4).max(4);
        let mut out = String::new();
        let _ = writeln!(out, "{:<width$}  {:<5}  {:<12}  result", "node", "kind", "rho");
        for r in &self.rows {
            let value = match &r.value {
                NodeValue::Interval(iv) => fmt_iv(*iv),
                NodeValue::PBox { support, mean, q50, .. } => {
                    format!("support {}  mean {}  median {}", fmt_iv(*support), fmt_iv(*mean), fmt_iv(*q50))
                }
            };
            let rho = r.rho.as_deref().unwrap_or("-");
            let _ = writeln!(out, "{:<width$}  {:<5}  {:<12}  {value}", r.name, r.kind, rho);
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("node,kind,rho,lo,hi\n");
        for r in &self.rows {
            let range = r.value.range();
            let rho = r.rho.as_deref().unwrap_or("");
            let _ = writeln!(out, "{},{},\"{}\",{},{}", r.name, r.kind, rho, range.lo(), range.hi());
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fault_tree::{fixtures, parse_tree};

    #[test]
    fn single_event_tree() {
        let t = parse_tree("event A interval 0.1 0.2\ntop A\n").unwrap();
        let r = explain(&t, ExplainMode::Interval).unwrap();
        assert_eq!(r.rows.len(), 1);
        assert_eq!(r.rows[0].value, NodeValue::Interval(UnitInterval::new(0.1, 0.2).unwrap()));
        assert_eq!(evaluate_interval(&t).unwrap(), UnitInterval::new(0.1, 0.2).unwrap());
    }

    #[test]
    fn cbox_rejected_in_interval_mode() {
        let t = parse_tree(fixtures::PBOX_INDEP).unwrap();
        assert!(matches!(evaluate_interval(&t), Err(Error::Mode(_))));
    }

    #[test]
    fn hand_folded_intermediate_rows() {
        let t = parse_tree(fixtures::INTERVAL_INDEP).unwrap();
        let r = explain(&t, ExplainMode::Interval).unwrap();
        let e5 = r.rows.iter().find(|r| r.name == "E5").unwrap().value.range();
        // K1 or R under independence: a + b - ab at each end.
        assert!((e5.lo() - (2.5e-5 + 0.5e-4 - 2.5e-5 * 0.5e-4)).abs() < 1e-15);
        assert!((e5.hi() - (3.5e-5 + 1.5e-4 - 3.5e-5 * 1.5e-4)).abs() < 1e-15);
        assert_eq!(r.rows.last().unwrap().name, "E1");

        let t = parse_tree(fixtures::INTERVAL_MIXED).unwrap();
        let r = explain(&t, ExplainMode::Interval).unwrap();
        let e4 = r.rows.iter().find(|r| r.name == "E4").unwrap().value.range();
        assert!((e4.hi() - 1.85e-4).abs() < 1e-15, "{e4}");
    }

    #[test]
    fn four_significant_digits() {
        assert_eq!(sig4(2.95048e-5), "2.950e-5");
        assert_eq!(sig4(0.985), "0.9850");
        assert_eq!(sig4(0.0502), "0.05020");
        assert_eq!(sig4(12.5), "12.50");
        assert_eq!(sig4(0.0), "0");
        assert_eq!(sig4(0.009_999_999), "0.01000");
        assert_eq!(sig4(9.99996e-4), "0.001000");
        assert_eq!(sig4(9999.7), "1.000e4");
    }

    #[test]
    fn report_renders() {
        let t = parse_tree(fixtures::INTERVAL_INDEP).unwrap();
        let r = explain(&t, ExplainMode::Interval).unwrap();
        let text = r.to_text();
        assert!(text.lines().count() == 12);
        assert!(text.contains("E1"));
        assert_eq!(r.to_csv().lines().count(), 12);
    }
}
