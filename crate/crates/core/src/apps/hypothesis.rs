//! Error exponents: Chernoff information and the universal-coding exponent.

use crate::entropy::{require_dim_at_least, shannon_entropy};
use crate::error::{Error, Result};
use crate::mbound::{compute_m, RANGE_TOL};
use crate::prob::{check_same_dim, ExtReal, ProbVector};
use crate::search::golden_section;

use super::gap_formula;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Chernoff {
    /// `-log min_{0≤s≤1} Σ p^s q^{1-s}`.
    pub xi: ExtReal,
    /// Minimizing exponent `s`.
    pub s_opt: f64,
    /// Entropy-difference lower bound on `xi`.
    pub lower_bound: f64,
}

/// `Σ p^s q^{1-s}` extended continuously to `s ∈ {0, 1}`.
fn chernoff_sum(p: &ProbVector, q: &ProbVector, s: f64) -> f64 {
    if s <= 0.0 {
        return p.iter().zip(q.iter()).filter(|(a, _)| **a > 0.0).map(|(_, b)| b).sum();
    }
    if s >= 1.0 {
        return p.iter().zip(q.iter()).filter(|(_, b)| **b > 0.0).map(|(a, _)| a).sum();
    }
    p.iter()
        .zip(q.iter())
        .filter(|(a, b)| **a > 0.0 && **b > 0.0)
        .map(|(a, b)| (s * a.ln() + (1.0 - s) * b.ln()).exp())
        .sum()
}

/// Chernoff information between `p` and `q` and its lower bound
/// `|ΔS|²/(2A) - |ΔS|³/(3A²)`, `A = log²(d-1) + 4`.
///
/// `log Σ p^s q^{1-s}` is convex in `s`, so a golden-section search applies;
/// the endpoints are compared explicitly because the minimum may sit on them
/// when the supports differ.
pub fn chernoff(p: &ProbVector, q: &ProbVector) -> Result<Chernoff> {
    check_same_dim(p, q)?;
    let d = p.dim();
    let lower_bound = if d >= 2 {
        gap_formula((shannon_entropy(p) - shannon_entropy(q)).abs(), d)
    } else {
        0.0
    };
    let overlaps = p.iter().zip(q.iter()).any(|(a, b)| *a > 0.0 && *b > 0.0);
    if !overlaps {
        return Ok(Chernoff {
            xi: ExtReal::Infinite,
            s_opt: 0.5,
            lower_bound,
        });
    }
    let interior = golden_section(|s| chernoff_sum(p, q, s).ln(), 0.0, 1.0, 1e-12);
    let mut best = (interior.x, interior.value);
    for s in [0.0, 1.0] {
        let v = chernoff_sum(p, q, s).ln();
        if v < best.1 {
            best = (s, v);
        }
    }
    Ok(Chernoff {
        xi: ExtReal::Finite((-best.1).max(0.0)),
        s_opt: best.0,
        lower_bound,
    })
}

/// `M(rate - S(p), d)`, a lower bound on `inf { D(σ‖p) : S(σ) > rate }`, the
/// error exponent of a universal code of rate `rate` for source `p`.
pub fn universal_exponent_lb(rate: f64, p: &ProbVector) -> Result<ExtReal> {
    let d = p.dim();
    require_dim_at_least(d, 2)?;
    let ln_d = (d as f64).ln();
    let h = shannon_entropy(p);
    if rate.is_nan() || rate <= h {
        return Err(Error::InvalidParameter(format!(
            "rate {rate} must exceed the source entropy {h}"
        )));
    }
    if rate > ln_d + RANGE_TOL {
        return Err(Error::OutOfRange {
            name: "rate",
            value: rate,
            lo: h,
            hi: ln_d,
        });
    }
    Ok(compute_m(d, (rate - h).min(ln_d))?.value)
}
