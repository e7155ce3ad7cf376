//! Helpers shared by integration test targets.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use unclogic::fault_tree::{EventProb, EventSpec, FaultTree, GateOp, GateSpec};
use unclogic::kernel::{RhoInterval, UnitInterval};
use unclogic::pbox::CopulaSpec;

type Gate = (String, GateOp, String, String, RhoInterval);

/// Three versions of one random tree: independent gates, gates with a random
/// correlation interval around 0, and fully unknown correlation.
pub fn random_trees(rng: &mut ChaCha8Rng) -> [FaultTree; 3] {
    let mut events = Vec::new();
    let mut gates: Vec<Gate> = Vec::new();

    fn grow(rng: &mut ChaCha8Rng, depth: usize, events: &mut Vec<EventSpec>, gates: &mut Vec<Gate>) -> String {
        if depth == 0 || rng.gen_bool(0.3) {
            let name = format!("X{}", events.len());
            let lo: f64 = rng.gen_range(0.0..0.6);
            let hi = (lo + rng.gen_range(0.0..0.3)).min(1.0);
            events
                .push(EventSpec { name: name.clone(), prob: EventProb::Interval(UnitInterval::new(lo, hi).unwrap()) });
            return name;
        }
        let left = grow(rng, depth - 1, events, gates);
        let right = grow(rng, depth - 1, events, gates);
        let name = format!("G{}", gates.len());
        let op = if rng.gen_bool(0.5) { GateOp::And } else { GateOp::Or };
        let mixed = RhoInterval::new(-rng.gen_range(0.0..1.0), rng.gen_range(0.0..1.0)).unwrap();
        gates.push((name.clone(), op, left, right, mixed));
        name
    }

    let depth = rng.gen_range(1..=5);
    let top = grow(rng, depth, &mut events, &mut gates);
    let with = |pick: &dyn Fn(RhoInterval) -> RhoInterval| FaultTree {
        events: events.clone(),
        gates: gates
            .iter()
            .map(|(name, op, left, right, mixed)| GateSpec {
                name: name.clone(),
                op: *op,
                left: left.clone(),
                right: right.clone(),
                rho: pick(*mixed),
                upper: CopulaSpec::Pi,
            })
            .collect(),
        top: top.clone(),
    };
    [with(&|_| RhoInterval::ZERO), with(&|m| m), with(&|_| RhoInterval::FULL)]
}
