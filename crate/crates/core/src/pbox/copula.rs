use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernel::{m, pi, w};
use crate::special::{bvn_cdf, norm_quantile};

/// Dependence between the uncertain probabilities of two events.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum CopulaSpec {
    /// Countermonotone.
    W,
    /// Independent.
    Pi,
    /// Comonotone.
    M,
    Gaussian(f64),
    /// Dependence entirely unknown; handled by the Fréchet convolution.
    FrechetUnknown,
}

impl CopulaSpec {
    pub fn gaussian(r: f64) -> Result<Self> {
        if !(-1.0..=1.0).contains(&r) {
            return Err(Error::Domain(format!("Gaussian copula parameter {r} outside [-1, 1]")));
        }
        Ok(CopulaSpec::Gaussian(r))
    }

    /// Copula of `(1 - X, Y)` given the copula of `(X, Y)`.
    pub fn flip(self) -> Self {
        match self {
            CopulaSpec::W => CopulaSpec::M,
            CopulaSpec::M => CopulaSpec::W,
            CopulaSpec::Gaussian(r) => CopulaSpec::Gaussian(-r),
            other => other,
        }
    }
}

impl fmt::Display for CopulaSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CopulaSpec::W => f.write_str("w"),
            CopulaSpec::Pi => f.write_str("pi"),
            CopulaSpec::M => f.write_str("m"),
            CopulaSpec::Gaussian(r) => write!(f, "gaussian {r}"),
            CopulaSpec::FrechetUnknown => f.write_str("frechet"),
        }
    }
}

pub fn copula_eval(c: CopulaSpec, u: f64, v: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&u) || !(0.0..=1.0).contains(&v) {
        return Err(Error::Domain(format!("copula arguments ({u}, {v}) outside [0, 1]")));
    }
    Ok(match c {
        CopulaSpec::W => w(u, v),
        CopulaSpec::Pi => pi(u, v),
        CopulaSpec::M => m(u, v),
        CopulaSpec::Gaussian(r) => gaussian(r, u, v),
        CopulaSpec::FrechetUnknown => {
            return Err(Error::Domain("unknown dependence has no pointwise copula value".into()))
        }
    })
}

fn gaussian(r: f64, u: f64, v: f64) -> f64 {
    if u == 0.0 || v == 0.0 {
        return 0.0;
    }
    if u == 1.0 {
        return v;
    }
    if v == 1.0 {
        return u;
    }
    if r >= 1.0 {
        return m(u, v);
    }
    if r <= -1.0 {
        return w(u, v);
    }
    bvn_cdf(norm_quantile(u), norm_quantile(v), r).clamp(w(u, v), m(u, v))
}
