//! Entropic primitives on probability vectors. All logarithms are natural.

use crate::error::{clamp_within, Error, Result};
use crate::prob::{check_same_dim, ExtReal, ProbVector};

const UNIT_TOL: f64 = 1e-12;

/// `x log x` with `0 log 0 = 0`.
#[inline]
pub(crate) fn xlogx(x: f64) -> f64 {
    if x > 0.0 {
        x * x.ln()
    } else {
        0.0
    }
}

/// `x log(x/y)` for `x, y > 0`, evaluated through `ln_1p` when the ratio is
/// close to one.
#[inline]
pub(crate) fn xlog_ratio(x: f64, y: f64) -> f64 {
    let u = (x - y) / y;
    if u.abs() < 0.5 {
        x * u.ln_1p()
    } else {
        x * (x / y).ln()
    }
}

/// Shannon entropy `-Σ p log p` in nats.
pub fn shannon_entropy(p: &ProbVector) -> f64 {
    let h = -p.iter().map(|&x| xlogx(x)).sum::<f64>();
    h.max(0.0)
}

/// Relative entropy `D(p‖q) = Σ p log(p/q)`, `+∞` when `p` puts mass where
/// `q` does not.
pub fn relative_entropy(p: &ProbVector, q: &ProbVector) -> Result<ExtReal> {
    check_same_dim(p, q)?;
    let mut acc = 0.0;
    for (&pi, &qi) in p.iter().zip(q.iter()) {
        if pi == 0.0 {
            continue;
        }
        if qi == 0.0 {
            return Ok(ExtReal::Infinite);
        }
        acc += xlog_ratio(pi, qi);
    }
    Ok(ExtReal::Finite(acc.max(0.0)))
}

/// Binary entropy `H₂(x)`.
pub fn binary_entropy(x: f64) -> Result<f64> {
    let x = clamp_within("x", x, 0.0, 1.0, UNIT_TOL)?;
    Ok(binary_entropy_unchecked(x))
}

#[inline]
pub(crate) fn binary_entropy_unchecked(x: f64) -> f64 {
    -(xlogx(x) + xlogx(1.0 - x))
}

/// Binary relative entropy `D₂(x‖y)`.
pub fn binary_relative_entropy(x: f64, y: f64) -> Result<ExtReal> {
    let x = clamp_within("x", x, 0.0, 1.0, UNIT_TOL)?;
    let y = clamp_within("y", y, 0.0, 1.0, UNIT_TOL)?;
    Ok(binary_relative_entropy_unchecked(x, y))
}

pub(crate) fn binary_relative_entropy_unchecked(x: f64, y: f64) -> ExtReal {
    let mut acc = 0.0;
    for (a, b) in [(x, y), (1.0 - x, 1.0 - y)] {
        if a == 0.0 {
            continue;
        }
        if b == 0.0 {
            return ExtReal::Infinite;
        }
        acc += xlog_ratio(a, b);
    }
    ExtReal::Finite(acc.max(0.0))
}

/// Variance of the surprisal `-log p` under `p`, in nats².
pub fn surprisal_variance(p: &ProbVector) -> f64 {
    let h = shannon_entropy(p);
    // Centered form avoids cancellation between the two moments.
    let var: f64 = p
        .iter()
        .filter(|&&x| x > 0.0)
        .map(|&x| {
            let dev = -x.ln() - h;
            x * dev * dev
        })
        .sum();
    var.max(0.0)
}

/// Trace distance (total variation) `½ Σ |p - q|`.
pub fn trace_distance(p: &ProbVector, q: &ProbVector) -> Result<f64> {
    check_same_dim(p, q)?;
    let t: f64 = p.iter().zip(q.iter()).map(|(a, b)| (a - b).abs()).sum();
    Ok((0.5 * t).min(1.0))
}

/// Entropy difference `S(σ) - S(ρ)`.
pub fn entropy_difference(sigma: &ProbVector, rho: &ProbVector) -> Result<f64> {
    check_same_dim(sigma, rho)?;
    Ok(shannon_entropy(sigma) - shannon_entropy(rho))
}

pub(crate) fn require_dim_at_least(d: usize, min: usize) -> Result<()> {
    if d < min {
        Err(Error::DimensionTooSmall(d))
    } else {
        Ok(())
    }
}
