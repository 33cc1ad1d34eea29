//! Discrete memoryless channels: exact capacity by Blahut-Arimoto and the
//! entropy-gap lower bound.
//!
//! Convention: row `x` of the matrix is the output distribution `T(·|x)`.
//! These rows are the "columns" in the column-stochastic convention.

use crate::entropy::{require_dim_at_least, shannon_entropy};
use crate::error::{clamp_within, Error, Result};
use crate::mbound::compute_m;
use crate::prob::{ExtReal, ProbVector};

use super::gap_formula;

/// Default stopping tolerance on `upper - lower` capacity estimates.
pub const DEFAULT_TOL: f64 = 1e-10;
const MAX_ITERATIONS: usize = 1_000_000;

/// Row-stochastic transition matrix `T(y|x)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Channel {
    rows: Vec<ProbVector>,
}

impl Channel {
    /// Every row must be a probability vector (sum within `1e-9` of one) and
    /// all rows must have the same length.
    pub fn new(matrix: Vec<Vec<f64>>) -> Result<Self> {
        if matrix.is_empty() {
            return Err(Error::Empty);
        }
        let width = matrix[0].len();
        let mut rows = Vec::with_capacity(matrix.len());
        for (x, row) in matrix.into_iter().enumerate() {
            if row.len() != width {
                return Err(Error::InvalidParameter(format!(
                    "row {x} has {} entries, expected {width}",
                    row.len()
                )));
            }
            rows.push(ProbVector::new(row).map_err(|e| {
                Error::InvalidParameter(format!("row {x} is not a distribution: {e}"))
            })?);
        }
        Ok(Channel { rows })
    }

    pub fn identity(d: usize) -> Result<Self> {
        let rows = (0..d)
            .map(|i| ProbVector::point_mass(d, i))
            .collect::<Result<Vec<_>>>()?;
        Ok(Channel { rows })
    }

    pub fn input_dim(&self) -> usize {
        self.rows.len()
    }

    pub fn output_dim(&self) -> usize {
        self.rows[0].dim()
    }

    pub fn rows(&self) -> &[ProbVector] {
        &self.rows
    }

    /// Output distribution induced by the input distribution `p`.
    pub fn output(&self, p: &[f64]) -> Vec<f64> {
        let mut q = vec![0.0; self.output_dim()];
        for (px, row) in p.iter().zip(&self.rows) {
            for (qy, t) in q.iter_mut().zip(row.iter()) {
                *qy += px * t;
            }
        }
        q
    }

    /// Mutual information `I(X;Y)` for input distribution `p`.
    pub fn mutual_information(&self, p: &ProbVector) -> Result<f64> {
        if p.dim() != self.input_dim() {
            return Err(Error::DimensionMismatch {
                left: p.dim(),
                right: self.input_dim(),
            });
        }
        let q = self.output(p);
        Ok(p.iter()
            .zip(&self.rows)
            .map(|(px, row)| px * divergence_to(row, &q))
            .sum())
    }
}

/// `D(row‖q)` where `q` dominates `row` (guaranteed for induced outputs).
fn divergence_to(row: &ProbVector, q: &[f64]) -> f64 {
    row.iter()
        .zip(q)
        .filter(|(t, _)| **t > 0.0)
        .map(|(t, qy)| t * (t / qy).ln())
        .sum()
}

#[derive(Debug, Clone, PartialEq)]
pub struct CapacityEstimate {
    /// Certified lower estimate; the capacity lies in `[capacity, upper]`.
    pub capacity: f64,
    pub upper: f64,
    pub iterations: usize,
    pub input: ProbVector,
}

/// Shannon capacity in nats by Blahut-Arimoto alternating maximization,
/// started from the uniform input. Iterates until the standard bounds
/// `log Σ p_x c_x ≤ C ≤ log max c_x` are within `tol`.
pub fn blahut_arimoto(ch: &Channel, tol: f64) -> Result<CapacityEstimate> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidParameter(format!("tolerance must be positive, got {tol}")));
    }
    let nx = ch.input_dim();
    let mut p = vec![1.0 / nx as f64; nx];
    let mut iterations = 0;
    loop {
        iterations += 1;
        let q = ch.output(&p);
        let logc: Vec<f64> = ch.rows.iter().map(|row| divergence_to(row, &q)).collect();
        let max_logc = logc.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        // Σ p_x c_x, scaled by exp(-max) to stay in range.
        let scaled: Vec<f64> = p
            .iter()
            .zip(&logc)
            .map(|(px, lc)| px * (lc - max_logc).exp())
            .collect();
        let total: f64 = scaled.iter().sum();
        let lower = max_logc + total.ln();
        let upper = max_logc;
        if upper - lower < tol || iterations >= MAX_ITERATIONS {
            let input = ProbVector::from_weights(p)?;
            return Ok(CapacityEstimate {
                capacity: lower.max(0.0),
                upper: upper.max(0.0),
                iterations,
                input,
            });
        }
        p = scaled.into_iter().map(|w| w / total).collect();
    }
}

/// `(G²)/(2(log²(d-1)+4)) - G³/(3(log²(d-1)+4)²)` with `G = s_max - s_min`.
pub fn entropy_gap_bound(s_max: f64, s_min: f64, d: usize) -> Result<f64> {
    require_dim_at_least(d, 2)?;
    let ln_d = (d as f64).ln();
    let s_max = clamp_within("s_max", s_max, 0.0, ln_d, 1e-9)?;
    let s_min = clamp_within("s_min", s_min, 0.0, ln_d, 1e-9)?;
    if s_min > s_max {
        return Err(Error::InvalidParameter(format!(
            "s_min = {s_min} exceeds s_max = {s_max}"
        )));
    }
    Ok(gap_formula(s_max - s_min, d))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CapacityLowerBound {
    pub bound: f64,
    pub s_max: f64,
    pub s_min: f64,
    /// `M(-(s_max - s_min)/2, |Y|)`. Valid only if `M(Δ,d) ≥ M(-Δ,d)` holds
    /// for `Δ ≥ 0`, which is unproven; never use it as a bound.
    pub conjectural_bound: ExtReal,
}

/// Capacity lower bound from the extreme row entropies. The dimension is the
/// output alphabet size; the input size plays no role.
pub fn capacity_lower_bound(ch: &Channel) -> Result<CapacityLowerBound> {
    let d = ch.output_dim();
    require_dim_at_least(d, 2)?;
    let entropies: Vec<f64> = ch.rows.iter().map(shannon_entropy).collect();
    let s_max = entropies.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let s_min = entropies.iter().cloned().fold(f64::INFINITY, f64::min);
    let bound = entropy_gap_bound(s_max, s_min, d)?;
    let conjectural_bound = compute_m(d, -(s_max - s_min) / 2.0)?.value;
    Ok(CapacityLowerBound {
        bound,
        s_max,
        s_min,
        conjectural_bound,
    })
}
