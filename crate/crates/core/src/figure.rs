//! Tabulated curves of `M(Δ, d)` against its closed-form bounds, and the
//! table of `N(d)` against `N_d`.

use crate::error::Result;
use crate::exec::Strategy;
use crate::mbound::{compute_m, compute_n, cubic_bound, exp_bound, pinsker_fa_bound, quad_bound};

/// Dimensions plotted by default.
pub const DEFAULT_DIMS: [usize; 3] = [2, 10, 50];
/// Points per curve, spanning `[-log d, log d]`.
pub const DEFAULT_POINTS: usize = 401;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveRow {
    pub d: usize,
    pub delta: f64,
    /// `M(Δ, d)`; infinite at `Δ = log d`.
    pub m: f64,
    pub exp_bound: f64,
    pub cubic_bound: f64,
    pub quad_bound: f64,
    pub pinsker_fa: f64,
}

pub const CURVE_HEADER: [&str; 7] = [
    "d",
    "delta",
    "M",
    "exp_bound_Nd",
    "cubic_bound_Nd",
    "quad_bound",
    "pinsker_fa",
];

pub fn curves(dims: &[usize], points: usize, strategy: Strategy) -> Result<Vec<CurveRow>> {
    let mut rows = Vec::with_capacity(dims.len() * points);
    for &d in dims {
        let n = compute_n(d)?.n_value;
        let ln_d = (d as f64).ln();
        let deltas: Vec<f64> = (0..points)
            .map(|i| {
                if points == 1 {
                    0.0
                } else {
                    -ln_d + 2.0 * ln_d * i as f64 / (points - 1) as f64
                }
            })
            .collect();
        let computed = strategy.map_indices(points, |i| -> Result<CurveRow> {
            let delta = deltas[i];
            Ok(CurveRow {
                d,
                delta,
                m: compute_m(d, delta)?.value_f64(),
                exp_bound: exp_bound(delta, n),
                cubic_bound: cubic_bound(delta, n),
                quad_bound: quad_bound(d, delta),
                pinsker_fa: pinsker_fa_bound(d, delta)?.exact,
            })
        });
        for row in computed {
            rows.push(row?);
        }
    }
    Ok(rows)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NRow {
    pub d: usize,
    pub n: f64,
    pub n_closed: f64,
    /// `N_d - 1 = log²(d-1)/4`, the lower envelope of `N(d)`.
    pub n_closed_minus_one: f64,
}

pub const N_HEADER: [&str; 4] = ["d", "N", "N_d", "N_d_minus_1"];

pub fn n_table(d_min: usize, d_max: usize) -> Result<Vec<NRow>> {
    (d_min..=d_max)
        .map(|d| {
            let v = compute_n(d)?;
            Ok(NRow {
                d,
                n: v.n_value,
                n_closed: v.n_closed,
                n_closed_minus_one: v.n_closed - 1.0,
            })
        })
        .collect()
}
