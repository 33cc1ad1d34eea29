//! The tight lower bound `M(Δ, d)` on relative entropy in terms of the entropy
//! difference `Δ = S(σ) - S(ρ)`, the maximal surprisal variance `N(d)`, and
//! the closed-form bounds derived from them.
//!
//! `M(Δ, d)` is the minimum of `D₂(s‖r)` over `s, r ∈ [0, (d-1)/d]` subject to
//! `g_d(s) - g_d(r) = Δ`, where `g_d(s) = H₂(s) + s·log(d-1)` is the entropy of
//! the two-level state `(1-s, s/(d-1), …, s/(d-1))`. Since `g_d` is strictly
//! increasing on that interval, `r` is eliminated through its inverse and the
//! problem becomes a one-dimensional search over `s`.

use std::f64::consts::E;

use crate::entropy::{
    binary_entropy_unchecked, binary_relative_entropy_unchecked, require_dim_at_least,
};
use crate::error::{clamp_within, Error, Result};
use crate::prob::{ExtReal, ProbVector};
use crate::search::{bisect_increasing, golden_section, newton_increasing};

/// Inputs this close outside their admissible interval are clamped.
pub const RANGE_TOL: f64 = 1e-9;
/// Grid size used to bracket the minimizer before golden-section refinement.
pub const GRID_POINTS: usize = 4096;
/// Final golden-section bracket width in `s`.
pub const GOLDEN_TOL: f64 = 1e-12;
/// Bracket width for [`entropy_curve_inverse`].
pub const INVERSE_TOL: f64 = 1e-13;
/// Entropy differences smaller than this are treated as zero.
pub const ZERO_DELTA: f64 = 1e-12;
/// `Δ` within this relative distance above `-log d` is taken as the endpoint,
/// absorbing rounding in computed entropies near the square-root singularity
/// of `M` there.
pub const ENDPOINT_SNAP: f64 = 4.0 * f64::EPSILON;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundStatus {
    Finite,
    Infinite,
}

/// The optimized value of `M(Δ, d)` with its minimizer and solver diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundResult {
    pub value: ExtReal,
    pub s_opt: f64,
    pub r_opt: f64,
    pub status: BoundStatus,
    /// Objective evaluations spent (grid plus refinement).
    pub iterations: usize,
    /// Final bracket width in `s`.
    pub residual: f64,
    /// Other minimizers whose objective ties the reported one within `1e-10`
    /// (relative). Empty whenever the minimizer is unique, which is the
    /// expected case for every `Δ ≠ 0`.
    pub ties: Vec<(f64, f64)>,
}

impl BoundResult {
    pub fn value_f64(&self) -> f64 {
        self.value.to_f64()
    }

    pub fn is_infinite(&self) -> bool {
        self.status == BoundStatus::Infinite
    }
}

/// `N(d)`, the maximizer `r_d` and the closed-form upper bound `N_d`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VarianceBound {
    pub n_value: f64,
    pub r_d: f64,
    pub n_closed: f64,
}

impl VarianceBound {
    /// Residual of the stationarity equation `(1-2r)·log((1-r)(d-1)/r) = 2`.
    pub fn root_residual(&self, d: usize) -> f64 {
        stationarity(self.r_d, ((d - 1) as f64).ln())
    }
}

/// The three closed-form lower bounds on `M(Δ, d)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedFormBounds {
    /// `N(e^{Δ/N} - 1 - Δ/N)`
    pub exp_bound: f64,
    /// `Δ²/(2N) + Δ³/(6N²)`
    pub cubic_bound: f64,
    /// `Δ²/(3 log² d)`
    pub quad_bound: f64,
}

/// Lower bounds obtained by chaining the Fannes-Audenaert continuity bound
/// with Pinsker's inequality.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PinskerFaBound {
    /// Smallest trace distance compatible with `|Δ|`, by exact inversion.
    pub trace_distance_lb: f64,
    /// `2·T²` with the exact inversion.
    pub exact: f64,
    /// `2·T²` with the closed-form inversion
    /// `T ≥ (e-1)/e · |Δ| / (1 + log(d-1) - log|Δ|)`.
    pub closed_form: f64,
}

/// Precomputed constants for dimension `d`.
#[derive(Debug, Clone, Copy)]
struct Curve {
    /// `log(d - 1)`
    ln_dm1: f64,
    /// `log d`
    ln_d: f64,
    /// `(d - 1)/d`, the right end of the admissible interval.
    s_max: f64,
}

impl Curve {
    fn new(d: usize) -> Self {
        let df = d as f64;
        Curve {
            ln_dm1: (df - 1.0).ln(),
            ln_d: df.ln(),
            s_max: (df - 1.0) / df,
        }
    }

    #[inline]
    fn value(&self, s: f64) -> f64 {
        binary_entropy_unchecked(s) + s * self.ln_dm1
    }

    #[inline]
    fn slope(&self, s: f64) -> f64 {
        ((1.0 - s) / s).ln() + self.ln_dm1
    }

    /// Fast inversion used inside the minimizer; `v` must lie in `[0, log d]`.
    fn invert(&self, v: f64, guess: f64) -> f64 {
        if v <= 0.0 {
            return 0.0;
        }
        if v >= self.ln_d {
            return self.s_max;
        }
        newton_increasing(
            |s| (self.value(s) - v, self.slope(s)),
            0.0,
            self.s_max,
            guess,
            1e-16,
        )
        .x
    }

    /// `D₂(s‖r)` along the constraint `g(r) = g(s) - Δ`, with `+∞` mapped to
    /// `f64::INFINITY`. Returns the objective and `r`.
    fn objective(&self, s: f64, delta: f64, guess: f64) -> (f64, f64) {
        let v = (self.value(s) - delta).clamp(0.0, self.ln_d);
        let r = self.invert(v, guess);
        (binary_relative_entropy_unchecked(s, r).to_f64(), r)
    }
}

fn check_dim(d: usize) -> Result<()> {
    require_dim_at_least(d, 2)
}

/// `g_d(s) = H₂(s) + s·log(d-1)`, the entropy of the two-level state with
/// parameter `s`. Strictly increasing from `0` to `log d` on `[0, (d-1)/d]`.
pub fn entropy_curve(d: usize, s: f64) -> Result<f64> {
    check_dim(d)?;
    let curve = Curve::new(d);
    let s = clamp_within("s", s, 0.0, curve.s_max, 1e-12)?;
    Ok(curve.value(s))
}

/// Derivative `log((1-s)(d-1)/s)` of [`entropy_curve`].
pub fn entropy_curve_slope(d: usize, s: f64) -> Result<f64> {
    check_dim(d)?;
    let curve = Curve::new(d);
    let s = clamp_within("s", s, 0.0, curve.s_max, 1e-12)?;
    Ok(curve.slope(s))
}

/// The unique `s ∈ [0, (d-1)/d]` with `g_d(s) = v`, found by bisection.
pub fn entropy_curve_inverse(d: usize, v: f64) -> Result<f64> {
    check_dim(d)?;
    let curve = Curve::new(d);
    let v = clamp_within("v", v, 0.0, curve.ln_d, RANGE_TOL)?;
    if v == 0.0 {
        return Ok(0.0);
    }
    if v == curve.ln_d {
        return Ok(curve.s_max);
    }
    Ok(bisect_increasing(|s| curve.value(s) - v, 0.0, curve.s_max, INVERSE_TOL).x)
}

/// The tight lower bound `M(Δ, d)` together with its minimizing `(s, r)`.
///
/// `Δ` outside `[-log d, log d]` by at most `1e-9` is clamped. The endpoints
/// take their closed-form values: `M(-log d, d) = log d` at `(0, (d-1)/d)` and
/// `M(log d, d) = +∞` at `((d-1)/d, 0)`. `Δ` within a few ulps above `-log d`
/// takes the endpoint value; the upper end is not snapped since `M` is finite
/// just below it. For `|Δ| < 1e-12` the value is zero at
/// `s = r = r_d`, the limit of the minimizer curve.
pub fn compute_m(d: usize, delta: f64) -> Result<BoundResult> {
    check_dim(d)?;
    let curve = Curve::new(d);
    let delta = clamp_within("delta", delta, -curve.ln_d, curve.ln_d, RANGE_TOL)?;

    if delta.abs() < ZERO_DELTA {
        let r_d = compute_n(d)?.r_d;
        return Ok(finite_result(0.0, r_d, r_d, 0, 0.0));
    }
    if delta <= -curve.ln_d * (1.0 - ENDPOINT_SNAP) {
        return Ok(finite_result(curve.ln_d, 0.0, curve.s_max, 0, 0.0));
    }
    if delta >= curve.ln_d {
        return Ok(BoundResult {
            value: ExtReal::Infinite,
            s_opt: curve.s_max,
            r_opt: 0.0,
            status: BoundStatus::Infinite,
            iterations: 0,
            residual: 0.0,
            ties: Vec::new(),
        });
    }
    Ok(minimize_on_curve(&curve, delta))
}

fn finite_result(value: f64, s: f64, r: f64, iterations: usize, residual: f64) -> BoundResult {
    BoundResult {
        value: ExtReal::Finite(value),
        s_opt: s,
        r_opt: r,
        status: BoundStatus::Finite,
        iterations,
        residual,
        ties: Vec::new(),
    }
}

/// Interior solve for `Δ ∈ (-log d, log d)`, `Δ ≠ 0`.
fn minimize_on_curve(curve: &Curve, delta: f64) -> BoundResult {
    // Admissible s: g(s) - Δ ∈ [0, log d].
    let s_lo = if delta > 0.0 {
        curve.invert(delta, 0.5 * curve.s_max)
    } else {
        0.0
    };
    let s_hi = if delta < 0.0 {
        curve.invert(curve.ln_d + delta, 0.5 * curve.s_max)
    } else {
        curve.s_max
    };

    let n = GRID_POINTS;
    let h = (s_hi - s_lo) / (n - 1) as f64;
    let mut grid = Vec::with_capacity(n);
    let mut guess = if delta > 0.0 { 0.0 } else { curve.invert(-delta, 0.5) };
    for i in 0..n {
        let s = if i == n - 1 { s_hi } else { s_lo + h * i as f64 };
        let (value, r) = curve.objective(s, delta, guess);
        guess = r;
        grid.push((s, value, r));
    }

    let refine = |i: usize| {
        let a = grid[i.saturating_sub(1)].0;
        let b = grid[(i + 1).min(n - 1)].0;
        let guess = grid[i].2;
        let m = golden_section(|s| curve.objective(s, delta, guess).0, a, b, GOLDEN_TOL);
        let mut best = (m.x, m.value, curve.objective(m.x, delta, guess).1);
        // The golden-section probes never touch the bracket ends.
        for &(s, v, r) in [grid[i], grid[i.saturating_sub(1)], grid[(i + 1).min(n - 1)]].iter() {
            if v < best.1 {
                best = (s, v, r);
            }
        }
        (best, m.iterations + 2, m.bracket)
    };

    let best_index = (0..n)
        .min_by(|&a, &b| grid[a].1.total_cmp(&grid[b].1))
        .expect("grid is non-empty");
    let ((s_opt, value, r_opt), iters, bracket) = refine(best_index);

    let ties = competing_minima(&grid, best_index)
        .into_iter()
        .filter_map(|i| {
            let ((s, v, r), _, _) = refine(i);
            let scale = value.abs().max(f64::MIN_POSITIVE);
            ((v - value).abs() <= 1e-10 * scale).then_some((s, r))
        })
        .collect();

    BoundResult {
        value: ExtReal::Finite(value),
        s_opt,
        r_opt,
        status: BoundStatus::Finite,
        iterations: n + iters,
        residual: bracket,
        ties,
    }
}

/// Grid local minima well separated from `best` whose values are close enough
/// to it to be worth refining.
fn competing_minima(grid: &[(f64, f64, f64)], best: usize) -> Vec<usize> {
    let n = grid.len();
    let min_sep = n / 100;
    let best_value = grid[best].1;
    (0..n)
        .filter(|&i| i.abs_diff(best) > min_sep)
        .filter(|&i| {
            let v = grid[i].1;
            let left = if i > 0 { grid[i - 1].1 } else { f64::INFINITY };
            let right = if i + 1 < n { grid[i + 1].1 } else { f64::INFINITY };
            v <= left && v <= right && v <= best_value * (1.0 + 1e-6) + f64::MIN_POSITIVE
        })
        .collect()
}

/// The commuting pair `σ = (1-s, s/(d-1), …)`, `ρ = (1-r, r/(d-1), …)` that
/// attains `M(Δ, d)`.
pub fn optimal_pair(d: usize, delta: f64) -> Result<(ProbVector, ProbVector)> {
    check_dim(d)?;
    let ln_d = (d as f64).ln();
    let clamped = clamp_within("delta", delta, -ln_d, ln_d, RANGE_TOL)?;
    if clamped >= ln_d {
        return Err(Error::InfiniteDivergence(format!(
            "delta = log d = {ln_d} forces a pure rho; M(log d, d) is infinite"
        )));
    }
    let m = compute_m(d, clamped)?;
    Ok((
        ProbVector::two_level(d, m.s_opt)?,
        ProbVector::two_level(d, m.r_opt)?,
    ))
}

/// `(1-2r)·log((1-r)(d-1)/r) - 2`, strictly decreasing on `(0, 1/2)`.
fn stationarity(r: f64, ln_dm1: f64) -> f64 {
    (1.0 - 2.0 * r) * (((1.0 - r) / r).ln() + ln_dm1) - 2.0
}

/// `N(d) = max_{0<r<1/2} r(1-r)·log²((1-r)(d-1)/r)` via the root `r_d` of its
/// stationarity equation.
pub fn compute_n(d: usize) -> Result<VarianceBound> {
    check_dim(d)?;
    let ln_dm1 = ((d - 1) as f64).ln();
    // The equation is decreasing in r, so bisect its negation.
    let r_d = bisect_increasing(|r| -stationarity(r, ln_dm1), 0.0, 0.5, 1e-17).x;
    let log_term = ((1.0 - r_d) / r_d).ln() + ln_dm1;
    Ok(VarianceBound {
        n_value: r_d * (1.0 - r_d) * log_term * log_term,
        r_d,
        n_closed: 0.25 * ln_dm1 * ln_dm1 + 1.0,
    })
}

/// `N(e^{Δ/N} - 1 - Δ/N)`.
pub fn exp_bound(delta: f64, n: f64) -> f64 {
    let x = delta / n;
    n * (x.exp_m1() - x)
}

/// `Δ²/(2N) + Δ³/(6N²)`.
pub fn cubic_bound(delta: f64, n: f64) -> f64 {
    delta * delta / (2.0 * n) + delta.powi(3) / (6.0 * n * n)
}

/// `Δ²/(3 log² d)`.
pub fn quad_bound(d: usize, delta: f64) -> f64 {
    let ln_d = (d as f64).ln();
    delta * delta / (3.0 * ln_d * ln_d)
}

/// The closed-form lower bounds on `M(Δ, d)`, valid for any `N ≥ N(d)`.
/// `n` defaults to `N(d)`; a smaller value is rejected.
pub fn closed_form_lower_bounds(d: usize, delta: f64, n: Option<f64>) -> Result<ClosedFormBounds> {
    check_dim(d)?;
    if !delta.is_finite() {
        return Err(Error::InvalidParameter(format!("delta must be finite, got {delta}")));
    }
    let n_d = compute_n(d)?.n_value;
    let n = match n {
        None => n_d,
        Some(n) if n.is_finite() && n >= n_d * (1.0 - 1e-12) => n,
        Some(n) => {
            return Err(Error::InvalidParameter(format!(
                "N = {n} is below N({d}) = {n_d}; the bounds would be invalid"
            )))
        }
    };
    Ok(ClosedFormBounds {
        exp_bound: exp_bound(delta, n),
        cubic_bound: cubic_bound(delta, n),
        quad_bound: quad_bound(d, delta),
    })
}

/// Pinsker combined with Fannes-Audenaert: the smallest trace distance `T`
/// compatible with `|Δ|` is found by inverting `h_d(T) = T·log(d-1) + H₂(T)`,
/// then `D ≥ 2T²`.
pub fn pinsker_fa_bound(d: usize, delta: f64) -> Result<PinskerFaBound> {
    check_dim(d)?;
    let curve = Curve::new(d);
    let gap = clamp_within("delta", delta, -curve.ln_d, curve.ln_d, RANGE_TOL)?.abs();
    if gap == 0.0 {
        return Ok(PinskerFaBound {
            trace_distance_lb: 0.0,
            exact: 0.0,
            closed_form: 0.0,
        });
    }
    // h_d coincides with the entropy curve g_d.
    let t = entropy_curve_inverse(d, gap)?;
    let t_cf = (E - 1.0) / E * gap / (1.0 + curve.ln_dm1 - gap.ln());
    Ok(PinskerFaBound {
        trace_distance_lb: t,
        exact: 2.0 * t * t,
        closed_form: 2.0 * t_cf * t_cf,
    })
}
