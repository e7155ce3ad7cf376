//! Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
//! criterion fails. Built without the libtest harness so every line prints.

mod common;

use std::path::Path;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use unclogic::boolean_ops::{sample_pairs, sample_pearson, BitVector};
use unclogic::fault_tree::{evaluate_interval, evaluate_pbox, fixtures, parse_tree};
use unclogic::interval::{and_i, joint_i};
use unclogic::kernel::{c_and, frechet_and, lucas_and, m, pi, rho_feasible, w, RhoInterval, UnitInterval};
use unclogic::pbox::{cbox_kn, cdf_bounds_at, conv_and, conv_and_frechet, pbox_interval, pbox_point, CopulaSpec, PBox};
use unclogic::Error;

type Outcome = (bool, String);
type Criterion = (&'static str, fn() -> Outcome);

fn iv(lo: f64, hi: f64) -> UnitInterval {
    UnitInterval::new(lo, hi).unwrap()
}

fn rho(lo: f64, hi: f64) -> RhoInterval {
    RhoInterval::new(lo, hi).unwrap()
}

fn near(got: UnitInterval, lo: f64, hi: f64, tol: f64) -> bool {
    (got.lo() - lo).abs() <= tol && (got.hi() - hi).abs() <= tol
}

fn feasible_correlation() -> Outcome {
    let s = rho_feasible(0.3, 0.2);
    let ok = (s.lo() + 0.327).abs() <= 1e-3 && (s.hi() - 0.763).abs() <= 1e-3;
    (ok, format!("rho_feasible(0.3, 0.2) = [{:.5}, {:.5}]", s.lo(), s.hi()))
}

fn lucas_and_clamp() -> Outcome {
    let raw = lucas_and(0.3, 0.2, -1.0);
    let clamped = c_and(0.3, 0.2, -1.0);
    let ok = (raw + 0.123).abs() <= 5e-4 && clamped == 0.0;
    (ok, format!("lucas_and = {raw:.5}, c_and = {clamped}"))
}

fn table_two_inputs() -> (UnitInterval, UnitInterval, RhoInterval) {
    (iv(0.2, 0.3), iv(0.45, 0.5), rho(-0.2, 0.4))
}

fn interval_conjunction() -> Outcome {
    let (u, v, r) = table_two_inputs();
    let got = and_i(u, v, r);
    (near(got, 0.0502, 0.2417, 1e-4), format!("and_i = [{:.6}, {:.6}]", got.lo(), got.hi()))
}

fn joint_table() -> Outcome {
    let (u, v, r) = table_two_inputs();
    let t = joint_i(u, v, r);
    let want = [
        ("p00", t.p00, 0.304, 0.52),
        ("p01", t.p01, 0.223, 0.44),
        ("p10", t.p10, 0.02, 0.2106),
        ("p11", t.p11, 0.0502, 0.2417),
    ];
    let mut ok = true;
    let mut parts = Vec::new();
    for (name, got, lo, hi) in want {
        let hit = near(got, lo, hi, 1e-4);
        ok &= hit;
        let mark = if hit { "" } else { " (off)" };
        parts.push(format!("{name} [{:.5}, {:.5}] vs [{lo}, {hi}]{mark}", got.lo(), got.hi()));
    }
    (ok, parts.join("; "))
}

fn interval_fault_tree() -> Outcome {
    let want = [(2.950e-5, 4.053e-5), (2.949e-5, 6.551e-5), (2.499e-5, 1.905e-4)];
    let texts = [fixtures::INTERVAL_INDEP, fixtures::INTERVAL_MIXED, fixtures::INTERVAL_UNKNOWN];
    let mut ok = true;
    let mut parts = Vec::new();
    for (text, (lo, hi)) in texts.iter().zip(want) {
        let r = evaluate_interval(&parse_tree(text).unwrap()).unwrap();
        let (el, eh) = ((r.lo() / lo - 1.0).abs(), (r.hi() / hi - 1.0).abs());
        ok &= el <= 2e-3 && eh <= 2e-3;
        parts.push(format!("[{:.4e}, {:.4e}]", r.lo(), r.hi()));
    }
    (ok, parts.join(" "))
}

fn pbox_fault_tree() -> Outcome {
    let cases = [
        (fixtures::PBOX_INDEP, 0.969, 1.0, 0.01),
        (fixtures::PBOX_MIXED, 0.88, 1.0, 0.02),
        (fixtures::PBOX_UNKNOWN, 0.0, 1.0, 0.01),
    ];
    let mut ok = true;
    let mut parts = Vec::new();
    for (text, lo, hi, tol) in cases {
        let top = evaluate_pbox(&parse_tree(text).unwrap(), 200).unwrap();
        let b = cdf_bounds_at(&top, 1e-4);
        ok &= near(b, lo, hi, tol);
        parts.push(format!("[{:.4}, {:.4}]", b.lo(), b.hi()));
    }
    (ok, format!("P(E1 <= 1e-4) at N = 200: {}", parts.join(" ")))
}

fn copula_axioms() -> Outcome {
    let us: Vec<f64> = (0..101).map(|i| i as f64 / 100.0).collect();
    let mut worst = f64::INFINITY;
    let mut exact = true;
    for k in 0..21 {
        let r = -1.0 + 0.1 * k as f64;
        for &u in &us {
            exact &= c_and(u, 0.0, r) == 0.0 && c_and(0.0, u, r) == 0.0;
            exact &= c_and(u, 1.0, r) == u && c_and(1.0, u, r) == u;
        }
        for i in 1..us.len() {
            for j in 1..us.len() {
                let vol = c_and(us[i], us[j], r) - c_and(us[i - 1], us[j], r) - c_and(us[i], us[j - 1], r)
                    + c_and(us[i - 1], us[j - 1], r);
                worst = worst.min(vol);
            }
        }
    }
    for &u in &us {
        for &v in &us {
            exact &= c_and(u, v, -1.0) == w(u, v) && c_and(u, v, 0.0) == pi(u, v) && c_and(u, v, 1.0) == m(u, v);
        }
    }
    (exact && worst >= -1e-12, format!("identities exact: {exact}; smallest rectangle volume {worst:.3e}"))
}

/// Delta-method standard error of the sample Pearson correlation of `n`
/// pairs drawn from a joint table with cells `(p11, p10, p01, p00)`.
fn pearson_se(cells: [f64; 4], n: usize) -> f64 {
    let corr = |p: [f64; 3]| {
        let (px, py) = (p[0] + p[1], p[0] + p[2]);
        (p[0] - px * py) / (px * (1.0 - px) * py * (1.0 - py)).sqrt()
    };
    let p = [cells[0], cells[1], cells[2]];
    let h = 1e-6;
    let grad: Vec<f64> = (0..3)
        .map(|i| {
            let (mut up, mut dn) = (p, p);
            up[i] += h;
            dn[i] -= h;
            (corr(up) - corr(dn)) / (2.0 * h)
        })
        .collect();
    let mut var = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            let cov = if i == j { p[i] * (1.0 - p[i]) } else { -p[i] * p[j] };
            var += grad[i] * grad[j] * cov;
        }
    }
    (var / n as f64).sqrt()
}

fn monte_carlo() -> Outcome {
    let n = 1_000_000;
    let avals = [0.1, 0.25, 0.5, 0.7, 0.9];
    let bvals = [0.15, 0.4, 0.6, 0.85, 0.3];
    let fracs = [0.1, 0.3, 0.5, 0.7, 0.9];
    let (mut worst_freq, mut worst_corr) = (0.0f64, 0.0f64);
    for (i, &a) in avals.iter().enumerate() {
        for (j, &b) in bvals.iter().enumerate() {
            let s = rho_feasible(a, b);
            let r = s.lo() + fracs[(i + j) % 5] * (s.hi() - s.lo());
            let (x, y) = sample_pairs(a, b, r, n, (100 * i + j) as u64).unwrap();
            let p11 = c_and(a, b, r);
            let hits = x.bits().iter().zip(y.bits()).filter(|(p, q)| **p && **q).count();
            let freq = hits as f64 / n as f64;
            worst_freq = worst_freq.max((freq - p11).abs() / (p11 * (1.0 - p11) / n as f64).sqrt());
            let cells = [p11, a - p11, b - p11, 1.0 - a - b + p11];
            let rhat = sample_pearson(&x, &y).unwrap();
            worst_corr = worst_corr.max((rhat - r).abs() / pearson_se(cells, n));
        }
    }
    let xa = BitVector::from_bits(&[0, 1, 1, 1, 1, 0, 0, 1, 1, 1, 0, 0, 1]).unwrap();
    let xb = BitVector::from_bits(&[0, 0, 0, 1, 1, 1, 1, 1, 1, 1, 0, 0, 1]).unwrap();
    let fixture = sample_pearson(&xa, &xb).unwrap();
    let ok = worst_freq <= 3.0 && worst_corr <= 3.0 && (fixture - 0.35).abs() <= 0.02;
    (
        ok,
        format!(
            "25 triples x 1e6: max |freq - p11| = {worst_freq:.2} SE, max |r - rho| = {worst_corr:.2} SE; \
             fixture r = {fixture:.4}"
        ),
    )
}

fn degenerate_reduction() -> Outcome {
    let copulas = [CopulaSpec::W, CopulaSpec::Pi, CopulaSpec::M, CopulaSpec::Gaussian(0.5)];
    let probs = [0.0, 0.13, 0.5, 0.77, 1.0];
    let rhos = [-1.0, -0.4, 0.0, 0.6, 1.0];
    let boxes = [(iv(0.2, 0.3), iv(0.45, 0.5)), (iv(0.0, 1.0), iv(0.3, 0.9)), (iv(0.6, 0.6), iv(0.1, 0.8))];
    let ranges = [rho(-0.2, 0.4), rho(-1.0, 1.0), rho(0.0, 0.0), rho(0.5, 0.9)];
    let mut worst = 0.0f64;
    let mut ok = true;
    for steps in [50, 200] {
        let tol = 1.0 / steps as f64;
        let mut gap = 0.0f64;
        for &a in &probs {
            for &b in &probs {
                let (x, y) = (pbox_point(a, steps).unwrap(), pbox_point(b, steps).unwrap());
                for &r in &rhos {
                    let want = c_and(a, b, r);
                    for c in copulas {
                        let z = conv_and(&x, &y, RhoInterval::point(r).unwrap(), c).unwrap();
                        gap = gap.max((z.support().lo() - want).abs()).max((z.support().hi() - want).abs());
                    }
                }
                let f = conv_and_frechet(&x, &y, RhoInterval::FULL).unwrap().support();
                let want = frechet_and(a, b);
                gap = gap.max((f.lo() - want.lo()).abs()).max((f.hi() - want.hi()).abs());
            }
        }
        for (u, v) in boxes {
            let (x, y) = (pbox_interval(u, steps).unwrap(), pbox_interval(v, steps).unwrap());
            for r in ranges {
                let want = and_i(u, v, r);
                for c in copulas {
                    let z = conv_and(&x, &y, r, c).unwrap().support();
                    gap = gap.max((z.lo() - want.lo()).abs()).max((z.hi() - want.hi()).abs());
                }
            }
        }
        ok &= gap <= tol;
        worst = worst.max(gap * steps as f64);
    }
    (ok, format!("largest deviation {worst:.3} grid steps (limit 1)"))
}

/// First index where `a` exceeds `b` by more than rounding error.
fn first_violation(a: &[f64], b: &[f64]) -> Option<(usize, f64, f64)> {
    a.iter().zip(b).enumerate().find(|(_, (x, y))| **x > **y + 1e-12).map(|(i, (x, y))| (i, *x, *y))
}

fn envelope_nesting() -> Outcome {
    let (x, y) = (cbox_kn(5, 6, 200).unwrap(), cbox_kn(16, 20, 200).unwrap());
    let chain = [CopulaSpec::W, CopulaSpec::Gaussian(-0.5), CopulaSpec::Pi, CopulaSpec::Gaussian(0.5), CopulaSpec::M];
    let outs: Vec<PBox> = chain.iter().map(|&c| conv_and(&x, &y, RhoInterval::ZERO, c).unwrap()).collect();
    let frechet = conv_and_frechet(&x, &y, RhoInterval::ZERO).unwrap();
    let contained = outs.iter().all(|z| frechet.encloses(z, 1e-12));
    let mut breaks = Vec::new();
    for (k, pair) in outs.windows(2).enumerate() {
        for (side, a, b) in [("lo", pair[0].q_lo(), pair[1].q_lo()), ("hi", pair[0].q_hi(), pair[1].q_hi())] {
            if let Some((i, p, q)) = first_violation(a, b) {
                breaks.push(format!("{} > {} on q_{side}[{i}] ({p:.4} > {q:.4})", chain[k], chain[k + 1]));
            }
        }
    }
    let ordered = breaks.is_empty();
    let detail = if ordered { "quantile order holds".to_owned() } else { breaks.join("; ") };
    (ordered && contained, format!("Frechet contains all: {contained}; {detail}"))
}

fn parser() -> Outcome {
    let mut ok = true;
    for (_, _, text) in fixtures::ALL {
        let tree = parse_tree(text).unwrap();
        ok &= tree.events.len() == 6 && tree.gates.len() == 5 && tree.top == "E1";
        ok &= parse_tree(&tree.to_dsl()).unwrap() == tree;
    }
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/malformed");
    let mut paths: Vec<_> = std::fs::read_dir(&dir).unwrap().map(|e| e.unwrap().path()).collect();
    paths.sort();
    let mut seen = Vec::new();
    for path in &paths {
        let stem = path.file_stem().unwrap().to_str().unwrap().to_owned();
        let text = std::fs::read_to_string(path).unwrap();
        match parse_tree(&text) {
            Err(Error::Parse(d)) if d.len() == 1 && d[0].code.code()[1..] == stem[1..4] => seen.push(d[0].code),
            _ => ok = false,
        }
    }
    seen.dedup();
    ok &= seen.len() == 10;
    (ok, format!("6 fixtures round-trip; {} distinct codes from {} malformed files", seen.len(), paths.len()))
}

fn dependence_widening() -> Outcome {
    let eval = |t: &str| evaluate_interval(&parse_tree(t).unwrap()).unwrap();
    let (i, m, u) = (eval(fixtures::INTERVAL_INDEP), eval(fixtures::INTERVAL_MIXED), eval(fixtures::INTERVAL_UNKNOWN));
    let nested = m.contains_interval(&i) && u.contains_interval(&m);
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut failures = 0;
    for _ in 0..100 {
        let [ti, tm, tu] = common::random_trees(&mut rng);
        let (ri, rm, ru) =
            (evaluate_interval(&ti).unwrap(), evaluate_interval(&tm).unwrap(), evaluate_interval(&tu).unwrap());
        if !(rm.contains_interval(&ri) && ru.contains_interval(&rm)) {
            failures += 1;
        }
    }
    (nested && failures == 0, format!("pressure tank nested: {nested}; random trees violating: {failures}/100"))
}

fn main() {
    let criteria: [Criterion; 12] = [
        ("feasible correlation bounds", feasible_correlation),
        ("Lucas model and clamp", lucas_and_clamp),
        ("interval conjunction", interval_conjunction),
        ("interval joint table", joint_table),
        ("interval fault tree", interval_fault_tree),
        ("p-box fault tree", pbox_fault_tree),
        ("copula axioms", copula_axioms),
        ("Monte Carlo oracle", monte_carlo),
        ("degenerate reduction", degenerate_reduction),
        ("envelope and nesting", envelope_nesting),
        ("parser fixtures and diagnostics", parser),
        ("dependence widening", dependence_widening),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let (ok, detail) = check();
        failed += usize::from(!ok);
        let verdict = if ok { "PASS" } else { "FAIL" };
        println!("{verdict} criterion {:>2} ({name}): {detail} [{:.2?}]", k + 1, t.elapsed());
    }
    println!("{} of 12 criteria passed in {:.2?}", 12 - failed, start.elapsed());
    if failed > 0 {
        std::process::exit(1);
    }
}
