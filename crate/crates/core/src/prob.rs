//! Finite probability vectors and the extended-real values that entropic
//! quantities take on them.

use std::fmt;
use std::ops::Deref;

use crate::error::{Error, Result};

/// Entries in `[-NEGATIVE_TOL, 0)` are clamped to zero on construction.
pub const NEGATIVE_TOL: f64 = 1e-12;
/// Accepted deviation of the entry sum from one before renormalizing.
pub const NORMALIZATION_TOL: f64 = 1e-9;

/// A real number or `+∞`.
///
/// Relative entropies are `+∞` on support violations. Keeping that as its own
/// variant separates it from a finite computation that overflowed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtReal {
    Finite(f64),
    Infinite,
}

impl ExtReal {
    pub fn is_finite(self) -> bool {
        matches!(self, ExtReal::Finite(_))
    }

    pub fn is_infinite(self) -> bool {
        !self.is_finite()
    }

    /// The value as an `f64`, with the sentinel mapped to `f64::INFINITY`.
    pub fn to_f64(self) -> f64 {
        match self {
            ExtReal::Finite(v) => v,
            ExtReal::Infinite => f64::INFINITY,
        }
    }

    pub fn finite(self) -> Option<f64> {
        match self {
            ExtReal::Finite(v) => Some(v),
            ExtReal::Infinite => None,
        }
    }
}

impl fmt::Display for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtReal::Finite(v) => write!(f, "{v}"),
            ExtReal::Infinite => f.write_str("inf"),
        }
    }
}

/// A validated probability distribution over `dim()` outcomes.
///
/// Entries are non-negative and sum to one in working precision.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbVector {
    probs: Vec<f64>,
}

impl ProbVector {
    /// Validate and renormalize `probs`.
    ///
    /// Tiny negatives (down to `-1e-12`) are clamped to zero and a sum within
    /// `1e-9` of one is accepted and divided out exactly.
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::Empty);
        }
        let mut probs = probs;
        for (index, p) in probs.iter_mut().enumerate() {
            if !p.is_finite() {
                return Err(Error::NonFinite { index, value: *p });
            }
            if *p < -NEGATIVE_TOL {
                return Err(Error::NegativeProbability { index, value: *p });
            }
            if *p < 0.0 {
                *p = 0.0;
            }
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::NotNormalized { sum });
        }
        probs.iter_mut().for_each(|p| *p /= sum);
        Ok(ProbVector { probs })
    }

    /// Normalize an arbitrary non-negative weight vector with positive mass.
    pub fn from_weights(weights: Vec<f64>) -> Result<Self> {
        let sum: f64 = weights.iter().sum();
        if sum.is_nan() || sum <= 0.0 || !sum.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "weights must have positive finite mass, got sum {sum}"
            )));
        }
        ProbVector::new(weights.into_iter().map(|w| w / sum).collect())
    }

    pub fn uniform(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Empty);
        }
        Ok(ProbVector {
            probs: vec![1.0 / dim as f64; dim],
        })
    }

    /// The point mass on outcome `index`.
    pub fn point_mass(dim: usize, index: usize) -> Result<Self> {
        if index >= dim {
            return Err(Error::InvalidParameter(format!(
                "point mass index {index} out of range for dimension {dim}"
            )));
        }
        let mut probs = vec![0.0; dim];
        probs[index] = 1.0;
        Ok(ProbVector { probs })
    }

    /// `(1 - s, s/(d-1), ..., s/(d-1))`, the two-level family on which the
    /// tight bound is attained.
    pub fn two_level(dim: usize, s: f64) -> Result<Self> {
        if dim < 2 {
            return Err(Error::DimensionTooSmall(dim));
        }
        if !(0.0..=1.0).contains(&s) {
            return Err(Error::OutOfRange {
                name: "s",
                value: s,
                lo: 0.0,
                hi: 1.0,
            });
        }
        let rest = s / (dim - 1) as f64;
        let mut probs = vec![rest; dim];
        probs[0] = 1.0 - s;
        Ok(ProbVector { probs })
    }

    /// `(1 - t)·self + t·other`.
    pub fn mix(&self, other: &ProbVector, t: f64) -> Result<Self> {
        check_same_dim(self, other)?;
        let probs = self
            .probs
            .iter()
            .zip(&other.probs)
            .map(|(a, b)| (1.0 - t) * a + t * b)
            .collect();
        ProbVector::new(probs)
    }

    pub fn dim(&self) -> usize {
        self.probs.len()
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.probs
    }

    /// True when every entry is strictly positive.
    pub fn has_full_support(&self) -> bool {
        self.probs.iter().all(|&p| p > 0.0)
    }

    /// Index of the largest entry (first one on ties).
    pub fn argmax(&self) -> usize {
        let mut best = 0;
        for (i, &p) in self.probs.iter().enumerate() {
            if p > self.probs[best] {
                best = i;
            }
        }
        best
    }
}

impl Deref for ProbVector {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.probs
    }
}

pub(crate) fn check_same_dim(p: &ProbVector, q: &ProbVector) -> Result<()> {
    if p.dim() != q.dim() {
        return Err(Error::DimensionMismatch {
            left: p.dim(),
            right: q.dim(),
        });
    }
    Ok(())
}
