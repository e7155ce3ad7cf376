//! All sixteen binary/unary Boolean operations on precise probabilities.
//!
//! Every monotone operation is a correlated conjunction of (possibly
//! complemented) inputs, possibly complemented on output. Complementing one
//! input flips the sign of the correlation; complementing both leaves it
//! unchanged. That bookkeeping lives in [`Form`], attached to each [`OpCode`].

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernel::{c_and, RhoInterval};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum OpCode {
    And,
    Or,
    Nand,
    Nor,
    Xor,
    Equiv,
    /// `A ⇒ B`
    ImpliesAb,
    /// `B ⇒ A`
    ImpliesBa,
    /// `¬(A ⇒ B)`
    InhibitAb,
    /// `¬(B ⇒ A)`
    InhibitBa,
    NotA,
    NotB,
    IdentA,
    IdentB,
    Zero,
    One,
}

/// Direction in which an operation moves when one argument increases.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Increasing,
    Decreasing,
    Constant,
}

impl Sign {
    fn from_flips(flips: usize) -> Self {
        if flips.is_multiple_of(2) {
            Sign::Increasing
        } else {
            Sign::Decreasing
        }
    }
}

/// `out = [1 -] C_{±rho}(a or 1-a, b or 1-b)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Form {
    pub complement_a: bool,
    pub complement_b: bool,
    pub complement_out: bool,
}

impl Form {
    const fn new(complement_a: bool, complement_b: bool, complement_out: bool) -> Self {
        Self { complement_a, complement_b, complement_out }
    }

    /// The inner conjunction sees `-rho` when exactly one input is complemented.
    pub fn negates_rho(&self) -> bool {
        self.complement_a != self.complement_b
    }

    /// Monotonicity in `(a, b, rho)`.
    pub fn signs(&self) -> [Sign; 3] {
        let out = usize::from(self.complement_out);
        [
            Sign::from_flips(usize::from(self.complement_a) + out),
            Sign::from_flips(usize::from(self.complement_b) + out),
            Sign::from_flips(usize::from(self.negates_rho()) + out),
        ]
    }

    pub fn eval(&self, a: f64, b: f64, rho: f64) -> f64 {
        let a = if self.complement_a { 1.0 - a } else { a };
        let b = if self.complement_b { 1.0 - b } else { b };
        let rho = if self.negates_rho() { -rho } else { rho };
        let inner = c_and(a, b, rho);
        if self.complement_out {
            1.0 - inner
        } else {
            inner
        }
    }
}

impl OpCode {
    pub const ALL: [OpCode; 16] = [
        OpCode::IdentA,
        OpCode::IdentB,
        OpCode::Zero,
        OpCode::One,
        OpCode::And,
        OpCode::NotA,
        OpCode::NotB,
        OpCode::Or,
        OpCode::Nand,
        OpCode::Nor,
        OpCode::Xor,
        OpCode::Equiv,
        OpCode::ImpliesAb,
        OpCode::ImpliesBa,
        OpCode::InhibitAb,
        OpCode::InhibitBa,
    ];

    /// Conjunction form for the operations that are monotone in every argument.
    pub fn form(self) -> Option<Form> {
        use OpCode::*;
        match self {
            And => Some(Form::new(false, false, false)),
            Or => Some(Form::new(true, true, true)),
            Nand => Some(Form::new(false, false, true)),
            Nor => Some(Form::new(true, true, false)),
            ImpliesAb => Some(Form::new(false, true, true)),
            ImpliesBa => Some(Form::new(true, false, true)),
            InhibitAb => Some(Form::new(false, true, false)),
            InhibitBa => Some(Form::new(true, false, false)),
            _ => None,
        }
    }

    /// Output column of the truth table, in the order
    /// `(A, B) = (1, 1), (1, 0), (0, 1), (0, 0)`.
    pub fn truth_table(self) -> [bool; 4] {
        use OpCode::*;
        let bits = match self {
            IdentA => [1, 1, 0, 0],
            IdentB => [1, 0, 1, 0],
            Zero => [0, 0, 0, 0],
            One => [1, 1, 1, 1],
            And => [1, 0, 0, 0],
            NotA => [0, 0, 1, 1],
            NotB => [0, 1, 0, 1],
            Or => [1, 1, 1, 0],
            Nand => [0, 1, 1, 1],
            Nor => [0, 0, 0, 1],
            Xor => [0, 1, 1, 0],
            Equiv => [1, 0, 0, 1],
            ImpliesAb => [1, 0, 1, 1],
            ImpliesBa => [1, 1, 0, 1],
            InhibitAb => [0, 1, 0, 0],
            InhibitBa => [0, 0, 1, 0],
        };
        bits.map(|b| b == 1)
    }

    pub fn name(self) -> &'static str {
        use OpCode::*;
        match self {
            And => "and",
            Or => "or",
            Nand => "nand",
            Nor => "nor",
            Xor => "xor",
            Equiv => "equiv",
            ImpliesAb => "implies_ab",
            ImpliesBa => "implies_ba",
            InhibitAb => "inhibit_ab",
            InhibitBa => "inhibit_ba",
            NotA => "not_a",
            NotB => "not_b",
            IdentA => "ident_a",
            IdentB => "ident_b",
            Zero => "zero",
            One => "one",
        }
    }
}

impl fmt::Display for OpCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for OpCode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.to_ascii_lowercase().replace('-', "_");
        OpCode::ALL
            .into_iter()
            .find(|op| op.name() == lower)
            .ok_or_else(|| Error::Domain(format!("unknown operation `{s}`")))
    }
}

pub fn not_p(a: f64) -> f64 {
    1.0 - a
}

pub fn neg_rho(r: RhoInterval) -> RhoInterval {
    r.negate()
}

pub fn or_p(a: f64, b: f64, rho: f64) -> f64 {
    1.0 - c_and(1.0 - a, 1.0 - b, rho)
}

/// `P(A xor B) = p10 + p01`, taken straight from the joint table.
pub fn xor_p(a: f64, b: f64, rho: f64) -> f64 {
    let t = joint_bernoulli(a, b, rho);
    (t.p10 + t.p01).clamp(0.0, 1.0)
}

pub fn apply_op(op: OpCode, a: f64, b: f64, rho: f64) -> f64 {
    use OpCode::*;
    if op == Nor {
        // Keeps NOR = 1 - OR exact in floating point.
        return 1.0 - apply_op(Or, a, b, rho);
    }
    if let Some(form) = op.form() {
        return form.eval(a, b, rho);
    }
    match op {
        Xor => xor_p(a, b, rho),
        Equiv => 1.0 - xor_p(a, b, rho),
        NotA => 1.0 - a,
        NotB => 1.0 - b,
        IdentA => a,
        IdentB => b,
        Zero => 0.0,
        One => 1.0,
        _ => unreachable!("monotone ops handled above"),
    }
}

/// Joint distribution of a bivariate Bernoulli pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JointTable {
    pub p11: f64,
    pub p10: f64,
    pub p01: f64,
    pub p00: f64,
}

impl JointTable {
    pub fn total(&self) -> f64 {
        self.p11 + self.p10 + self.p01 + self.p00
    }

    pub fn cells(&self) -> [f64; 4] {
        [self.p11, self.p10, self.p01, self.p00]
    }
}

pub fn joint_bernoulli(a: f64, b: f64, rho: f64) -> JointTable {
    JointTable {
        p11: c_and(a, b, rho),
        p10: c_and(a, 1.0 - b, -rho),
        p01: c_and(1.0 - a, b, -rho),
        p00: c_and(1.0 - a, 1.0 - b, rho),
    }
}

/// A non-empty sequence of 0/1 outcomes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitVector(Vec<bool>);

impl BitVector {
    pub fn new(bits: Vec<bool>) -> Result<Self> {
        if bits.is_empty() {
            return Err(Error::Domain("bit vector must be non-empty".into()));
        }
        Ok(Self(bits))
    }

    pub fn from_bits(bits: &[u8]) -> Result<Self> {
        Self::new(bits.iter().map(|&b| b != 0).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn mean(&self) -> f64 {
        self.0.iter().filter(|&&b| b).count() as f64 / self.0.len() as f64
    }

    pub fn complement(&self) -> Self {
        Self(self.0.iter().map(|b| !b).collect())
    }
}

/// Draws `n` i.i.d. pairs from `joint_bernoulli(a, b, rho)`.
pub fn sample_pairs(a: f64, b: f64, rho: f64, n: usize, seed: u64) -> Result<(BitVector, BitVector)> {
    if n == 0 {
        return Err(Error::Domain("sample size must be at least 1".into()));
    }
    let t = joint_bernoulli(a, b, rho);
    let c11 = t.p11;
    let c10 = c11 + t.p10;
    let c01 = c10 + t.p01;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut xs = Vec::with_capacity(n);
    let mut ys = Vec::with_capacity(n);
    for _ in 0..n {
        let u: f64 = rng.gen();
        let (x, y) = if u < c11 {
            (true, true)
        } else if u < c10 {
            (true, false)
        } else if u < c01 {
            (false, true)
        } else {
            (false, false)
        };
        xs.push(x);
        ys.push(y);
    }
    Ok((BitVector(xs), BitVector(ys)))
}

pub fn sample_pearson(x: &BitVector, y: &BitVector) -> Result<f64> {
    if x.len() != y.len() {
        return Err(Error::Domain(format!("bit vectors differ in length ({} vs {})", x.len(), y.len())));
    }
    let n = x.len() as f64;
    let (mut sx, mut sy, mut sxy) = (0u64, 0u64, 0u64);
    for (&a, &b) in x.bits().iter().zip(y.bits()) {
        sx += u64::from(a);
        sy += u64::from(b);
        sxy += u64::from(a && b);
    }
    let (mx, my) = (sx as f64 / n, sy as f64 / n);
    let vx = mx * (1.0 - mx);
    let vy = my * (1.0 - my);
    if vx == 0.0 || vy == 0.0 {
        return Err(Error::Degenerate("sample correlation of a constant sequence".into()));
    }
    Ok((sxy as f64 / n - mx * my) / (vx * vy).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-12
    }

    #[test]
    fn not_and_neg_rho() {
        assert_eq!(not_p(0.0), 1.0);
        assert!(close(not_p(0.3), 0.7));
        assert_eq!(not_p(not_p(0.25)), 0.25);
        let r = RhoInterval::new(-0.2, 0.4).unwrap();
        assert_eq!(neg_rho(r), RhoInterval::new(-0.4, 0.2).unwrap());
        assert_eq!(neg_rho(neg_rho(r)), r);
        assert_eq!(neg_rho(RhoInterval::ZERO).lo(), 0.0);
    }

    #[test]
    fn or_examples() {
        assert!(close(or_p(0.5, 0.5, 0.0), 0.75));
        assert!(close(or_p(0.3, 0.2, 1.0), 0.3));
        assert!(close(or_p(0.42, 0.0, -0.7), 0.42));
    }

    #[test]
    fn xor_examples() {
        assert!(close(xor_p(0.5, 0.5, 1.0), 0.0));
        assert!(close(xor_p(0.5, 0.5, 0.0), 0.5));
        assert!(close(xor_p(0.3, 0.2, 0.0), 0.38));
    }

    #[test]
    fn apply_op_examples() {
        assert!(close(apply_op(OpCode::Nand, 0.3, 0.2, 0.0), 0.94));
        assert!(close(apply_op(OpCode::ImpliesAb, 0.3, 0.2, 0.0), 0.76));
        assert!(close(apply_op(OpCode::Nor, 0.3, 0.2, 0.0), 0.56));
    }

    #[test]
    fn joint_table_examples() {
        let t = joint_bernoulli(0.5, 0.5, 0.3);
        for (got, want) in t.cells().iter().zip([0.325, 0.175, 0.175, 0.325]) {
            assert!(close(*got, want), "{t:?}");
        }
        let t = joint_bernoulli(0.5, 0.5, 1.0);
        assert_eq!(t.cells(), [0.5, 0.0, 0.0, 0.5]);
        let (a, b) = (0.3, 0.65);
        let t = joint_bernoulli(a, b, 0.0);
        let want = [a * b, a * (1.0 - b), (1.0 - a) * b, (1.0 - a) * (1.0 - b)];
        for (got, want) in t.cells().iter().zip(want) {
            assert!(close(*got, want));
        }
    }

    #[test]
    fn sampling_edge_cases() {
        let (x, y) = sample_pairs(0.5, 0.5, 1.0, 1000, 7).unwrap();
        assert_eq!(x, y);
        let (x, y) = sample_pairs(0.3, 0.2, -1.0, 5000, 7).unwrap();
        assert!(!x.bits().iter().zip(y.bits()).any(|(&a, &b)| a && b));
        assert!(sample_pairs(0.3, 0.2, 0.0, 0, 1).is_err());
        let again = sample_pairs(0.3, 0.2, -1.0, 5000, 7).unwrap();
        assert_eq!(again.0, x);
    }

    #[test]
    fn pearson_edge_cases() {
        let x = BitVector::from_bits(&[0, 1, 1, 0, 1]).unwrap();
        assert!(close(sample_pearson(&x, &x).unwrap(), 1.0));
        assert!(close(sample_pearson(&x, &x.complement()).unwrap(), -1.0));
        let c = BitVector::from_bits(&[1, 1, 1, 1, 1]).unwrap();
        assert!(matches!(sample_pearson(&x, &c), Err(Error::Degenerate(_))));
        let short = BitVector::from_bits(&[1, 0]).unwrap();
        assert!(sample_pearson(&x, &short).is_err());
        assert!(BitVector::new(vec![]).is_err());
    }

    #[test]
    fn fair_coin_fixture_correlation() {
        let a = BitVector::from_bits(&[0, 1, 1, 1, 1, 0, 0, 1, 1, 1, 0, 0, 1]).unwrap();
        let b = BitVector::from_bits(&[0, 0, 0, 1, 1, 1, 1, 1, 1, 1, 0, 0, 1]).unwrap();
        let r = sample_pearson(&a, &b).unwrap();
        assert!((r - 0.35).abs() <= 0.02, "{r}");
    }

    #[test]
    fn op_names_round_trip() {
        for op in OpCode::ALL {
            assert_eq!(op.name().parse::<OpCode>().unwrap(), op);
        }
        assert!("bogus".parse::<OpCode>().is_err());
    }
}
