//! Brute-force verification of the bounds over random states.
//!
//! Every run is a pure function of its parameters and seed: trial `k` draws
//! from the ChaCha8 stream `k` of the seed, so the worker count and the
//! execution strategy never change a report.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::Exp1;

use crate::entropy::{
    binary_entropy_unchecked, binary_relative_entropy_unchecked, relative_entropy,
    require_dim_at_least, shannon_entropy, surprisal_variance,
};
use crate::error::{Error, Result};
use crate::exec::Strategy;
use crate::mbound::{compute_m, compute_n, optimal_pair, RANGE_TOL};
use crate::prob::ProbVector;

/// Gaps below `-M_GAP_TOL` count as violations of the relative-entropy bound.
pub const M_GAP_TOL: f64 = 1e-7;
/// Gaps below `-VARIANCE_GAP_TOL` count as violations of the variance bound.
pub const VARIANCE_GAP_TOL: f64 = 1e-9;
/// Required accuracy of the entropy matching in [`verify_m_bound`].
pub const ENTROPY_MATCH_TOL: f64 = 1e-9;
/// Largest targeted entropy difference, as a fraction of `log d`.
pub const DELTA_CAP: f64 = 0.99;

const MAX_ATTEMPTS: usize = 64;

#[derive(Debug, Clone, PartialEq)]
pub struct OracleReport {
    pub samples: usize,
    /// Smallest `lhs - rhs` over all samples.
    pub min_gap: f64,
    pub worst_case: String,
    pub seed: u64,
    pub violations: usize,
    pub tolerance: f64,
    /// Trials that had to be redrawn because entropy matching failed.
    pub resamples: usize,
    /// Largest `|gap|` over the injected equality cases.
    pub witness_max_abs_gap: f64,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

impl fmt::Display for OracleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "samples={} violations={} min_gap={:.3e} witness_gap={:.3e} resamples={} worst: {}",
            self.samples,
            self.violations,
            self.min_gap,
            self.witness_max_abs_gap,
            self.resamples,
            self.worst_case
        )
    }
}

/// The RNG for trial `index` of a run seeded with `seed`.
pub fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// One flat-Dirichlet draw on the `d`-simplex from normalized exponentials.
pub fn draw_simplex<R: Rng + ?Sized>(d: usize, rng: &mut R) -> ProbVector {
    loop {
        let weights: Vec<f64> = (0..d).map(|_| rng.sample(Exp1)).collect();
        if let Ok(p) = ProbVector::from_weights(weights) {
            return p;
        }
    }
}

fn draw_full_support<R: Rng + ?Sized>(d: usize, rng: &mut R) -> ProbVector {
    loop {
        let p = draw_simplex(d, rng);
        if p.has_full_support() {
            return p;
        }
    }
}

/// `n` independent uniform samples from the `d`-simplex.
pub fn sample_simplex(d: usize, n: usize, seed: u64) -> Result<Vec<ProbVector>> {
    sample_simplex_with(d, n, seed, Strategy::default())
}

pub fn sample_simplex_with(d: usize, n: usize, seed: u64, strategy: Strategy) -> Result<Vec<ProbVector>> {
    require_dim_at_least(d, 1)?;
    if n == 0 {
        return Err(Error::InvalidParameter("sample count must be positive".into()));
    }
    Ok(strategy.map_indices(n, |k| draw_simplex(d, &mut trial_rng(seed, k as u64))))
}

/// Move `base` along `(1-t)·base + t·end` until its entropy equals `target`.
///
/// Both families used here (toward the uniform state, toward the point mass on
/// the largest entry) have entropy monotone in `t`, so bisection applies.
fn match_entropy(base: &ProbVector, end: &ProbVector, target: f64) -> Option<ProbVector> {
    let h0 = shannon_entropy(base);
    let h1 = shannon_entropy(end);
    let increasing = h1 >= h0;
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    let mut best = base.clone();
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let p = base.mix(end, mid).ok()?;
        let h = shannon_entropy(&p);
        best = p;
        if (h - target).abs() <= 1e-13 || hi - lo < 1e-17 {
            break;
        }
        if (h < target) == increasing {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    ((shannon_entropy(&best) - target).abs() <= ENTROPY_MATCH_TOL).then_some(best)
}

fn toward_entropy(p: &ProbVector, target: f64) -> Option<ProbVector> {
    let h = shannon_entropy(p);
    let end = if target >= h {
        ProbVector::uniform(p.dim()).ok()?
    } else {
        ProbVector::point_mass(p.dim(), p.argmax()).ok()?
    };
    match_entropy(p, &end, target)
}

struct Trial {
    gap: f64,
    attempts: usize,
    description: String,
}

fn m_trial(d: usize, seed: u64, index: u64) -> Result<Trial> {
    let ln_d = (d as f64).ln();
    let mut rng = trial_rng(seed, index);
    for attempt in 1..=MAX_ATTEMPTS {
        let target = rng.random_range(-ln_d..=DELTA_CAP * ln_d);
        let rho0 = draw_full_support(d, &mut rng);
        let sigma0 = draw_simplex(d, &mut rng);
        let u: f64 = rng.random_range(f64::EPSILON..=1.0);

        // S(ρ) must leave room for S(σ) = S(ρ) + Δ inside [0, log d].
        let lo = (-target).max(0.0);
        let hi = (ln_d - target).min(ln_d);
        let h_rho = shannon_entropy(&rho0);
        let rho = if h_rho > hi {
            toward_entropy(&rho0, u * hi)
        } else if h_rho < lo {
            toward_entropy(&rho0, lo + u * (ln_d - lo))
        } else {
            Some(rho0)
        };
        let Some(rho) = rho.filter(ProbVector::has_full_support) else {
            continue;
        };
        let Some(sigma) = toward_entropy(&sigma0, shannon_entropy(&rho) + target) else {
            continue;
        };

        let delta = shannon_entropy(&sigma) - shannon_entropy(&rho);
        if delta.abs() > ln_d + RANGE_TOL {
            continue;
        }
        let delta = delta.clamp(-ln_d, ln_d);
        let divergence = relative_entropy(&sigma, &rho)?.to_f64();
        let m = compute_m(d, delta)?.value_f64();
        return Ok(Trial {
            gap: divergence - m,
            attempts: attempt,
            description: format!("d={d} trial={index} delta={delta:.12} D={divergence:.12} M={m:.12}"),
        });
    }
    Err(Error::InvalidParameter(format!(
        "trial {index}: entropy matching failed {MAX_ATTEMPTS} times"
    )))
}

fn summarize(
    trials: Vec<Trial>,
    seed: u64,
    tolerance: f64,
    witness_max_abs_gap: f64,
) -> OracleReport {
    let samples = trials.len();
    let violations = trials.iter().filter(|t| t.gap < -tolerance).count();
    let resamples = trials.iter().map(|t| t.attempts - 1).sum();
    let worst = trials
        .into_iter()
        .min_by(|a, b| a.gap.total_cmp(&b.gap))
        .expect("at least one trial");
    OracleReport {
        samples,
        min_gap: worst.gap,
        worst_case: worst.description,
        seed,
        violations,
        tolerance,
        resamples,
        witness_max_abs_gap,
    }
}

/// Check `D(σ‖ρ) ≥ M(S(σ) - S(ρ), d)` on `n` random pairs.
///
/// Each trial draws a full-support `ρ` and an arbitrary `σ₀`, a target
/// `Δ ∈ [-log d, 0.99·log d]`, and moves `σ₀` along a mixing family (toward the
/// uniform state or toward its largest-entry point mass) until
/// `S(σ) - S(ρ) = Δ`. When `S(ρ)` leaves no room for the target, `ρ` is first
/// moved the same way. The gap is measured at the achieved `Δ`.
///
/// Equality witnesses (`σ = ρ`, and the optimal pairs on a `Δ` grid) are
/// evaluated separately and reported in `witness_max_abs_gap`.
pub fn verify_m_bound(d: usize, n: usize, seed: u64) -> Result<OracleReport> {
    verify_m_bound_with(d, n, seed, Strategy::default())
}

pub fn verify_m_bound_with(d: usize, n: usize, seed: u64, strategy: Strategy) -> Result<OracleReport> {
    require_dim_at_least(d, 2)?;
    if n == 0 {
        return Err(Error::InvalidParameter("sample count must be positive".into()));
    }
    let trials = strategy
        .map_indices(n, |k| m_trial(d, seed, k as u64))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let witness = m_witness_gap(d)?;
    Ok(summarize(trials, seed, M_GAP_TOL, witness))
}

/// Largest `|D(σ‖ρ) - M(Δ, d)|` over the equality cases: `σ = ρ` and the
/// optimal pairs for 21 values of `Δ` across `[-log d, 0.99·log d]`.
pub fn m_witness_gap(d: usize) -> Result<f64> {
    let ln_d = (d as f64).ln();
    let rho = draw_full_support(d, &mut trial_rng(0, 0));
    let mut worst = relative_entropy(&rho, &rho)?.to_f64() - compute_m(d, 0.0)?.value_f64();
    for i in 0..=20 {
        let delta = -ln_d + (1.0 + DELTA_CAP) * ln_d * i as f64 / 20.0;
        let (sigma, rho) = optimal_pair(d, delta)?;
        // M has a square-root singularity at -log d, so the pair is compared
        // at the requested Δ rather than the rounded entropy difference.
        let gap = relative_entropy(&sigma, &rho)?.to_f64() - compute_m(d, delta)?.value_f64();
        worst = worst.max(gap.abs());
    }
    Ok(worst)
}

/// Check `var(-log p) ≤ N(d)` on `n` random samples, plus the optimal
/// spectrum `(1-r_d, r_d/(d-1), …)` as an equality witness.
pub fn verify_variance_bound(d: usize, n: usize, seed: u64) -> Result<OracleReport> {
    verify_variance_bound_with(d, n, seed, Strategy::default())
}

pub fn verify_variance_bound_with(
    d: usize,
    n: usize,
    seed: u64,
    strategy: Strategy,
) -> Result<OracleReport> {
    require_dim_at_least(d, 2)?;
    if n == 0 {
        return Err(Error::InvalidParameter("sample count must be positive".into()));
    }
    let vb = compute_n(d)?;
    let trials = strategy.map_indices(n, |k| {
        let p = draw_simplex(d, &mut trial_rng(seed, k as u64));
        let var = surprisal_variance(&p);
        Trial {
            gap: vb.n_value - var,
            attempts: 1,
            description: format!("d={d} trial={k} variance={var:.12} N={:.12}", vb.n_value),
        }
    });
    let optimal = ProbVector::two_level(d, vb.r_d)?;
    let witness = (vb.n_value - surprisal_variance(&optimal)).abs();
    Ok(summarize(trials, seed, VARIANCE_GAP_TOL, witness))
}

/// Lagrange stationarity residuals at the computed minimizer of `M(Δ, d)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Stationarity {
    pub s: f64,
    pub r: f64,
    /// `Δ(s, r) - delta`.
    pub constraint_residual: f64,
    /// Normalized parallel-gradient residual; `None` on the `s = 0` (or other
    /// boundary) branch where the interior condition does not apply.
    pub f_residual: Option<f64>,
}

impl Stationarity {
    pub fn on_boundary(&self) -> bool {
        self.f_residual.is_none()
    }
}

/// Evaluate the interior optimality conditions at the solver's minimizer:
///
/// `Δ(s,r) = H₂(s) - H₂(r) + (s - r)·L = delta` and
/// `F(s,r) = (ℓ(r) - ℓ(s))(L + ℓ(r)) - (s/r - (1-s)/(1-r))(L + ℓ(s)) = 0`,
/// with `L = log(d-1)` and `ℓ(x) = log((1-x)/x)`. `F` is divided by
/// `(1+|ℓ(r)-ℓ(s)|)(1+|L+ℓ(r)|) + (1+|s/r-(1-s)/(1-r)|)(1+|L+ℓ(s)|)` to make
/// it scale-free.
pub fn check_stationarity(d: usize, delta: f64) -> Result<Stationarity> {
    require_dim_at_least(d, 2)?;
    let ln_d = (d as f64).ln();
    if !(delta.abs() > 1e-6 && delta.abs() < ln_d) {
        return Err(Error::OutOfRange {
            name: "delta",
            value: delta,
            lo: -ln_d,
            hi: ln_d,
        });
    }
    let m = compute_m(d, delta)?;
    let (s, r) = (m.s_opt, m.r_opt);
    let big_l = ((d - 1) as f64).ln();
    let s_max = (d - 1) as f64 / d as f64;
    let constraint = binary_entropy_unchecked(s) - binary_entropy_unchecked(r) + (s - r) * big_l;

    let edge = 1e-9;
    let interior = s > edge && r > edge && s < s_max - edge && r < s_max - edge;
    let f_residual = interior.then(|| {
        let ell = |x: f64| ((1.0 - x) / x).ln();
        let a = ell(r) - ell(s);
        let b = big_l + ell(r);
        let c = s / r - (1.0 - s) / (1.0 - r);
        let e = big_l + ell(s);
        let f = a * b - c * e;
        f / ((1.0 + a.abs()) * (1.0 + b.abs()) + (1.0 + c.abs()) * (1.0 + e.abs()))
    });
    Ok(Stationarity {
        s,
        r,
        constraint_residual: constraint - delta,
        f_residual,
    })
}

/// Evidence for `M(Δ, d) ≥ M(-Δ, d)` on `Δ ∈ (0, log d)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConjectureScan {
    pub min_diff: f64,
    pub argmin_delta: f64,
    /// `(Δ, M(Δ,d) - M(-Δ,d))` on the grid.
    pub diffs: Vec<(f64, f64)>,
}

/// Scan `M(Δ, d) - M(-Δ, d)` on `grid_n` interior points of `(0, log d)`.
/// This only reports; nothing is asserted about the sign.
pub fn conjecture_scan(d: usize, grid_n: usize) -> Result<ConjectureScan> {
    conjecture_scan_with(d, grid_n, Strategy::default())
}

pub fn conjecture_scan_with(d: usize, grid_n: usize, strategy: Strategy) -> Result<ConjectureScan> {
    require_dim_at_least(d, 2)?;
    if grid_n == 0 {
        return Err(Error::InvalidParameter("grid size must be positive".into()));
    }
    let ln_d = (d as f64).ln();
    let diffs = strategy
        .map_indices(grid_n, |i| {
            let delta = ln_d * (i + 1) as f64 / (grid_n + 1) as f64;
            let diff = compute_m(d, delta)?.value_f64() - compute_m(d, -delta)?.value_f64();
            Ok((delta, diff))
        })
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let &(argmin_delta, min_diff) = diffs
        .iter()
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .expect("grid is non-empty");
    Ok(ConjectureScan {
        min_diff,
        argmin_delta,
        diffs,
    })
}

/// `M(±Δ, d)` next to the binary divergences of the minimizer in both
/// directions, `D₂(s‖r)` and `D₂(r‖s)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Asymmetry {
    pub m_plus: f64,
    pub m_minus: f64,
    pub d2_forward: f64,
    pub d2_reverse: f64,
}

pub fn asymmetry(d: usize, delta: f64) -> Result<Asymmetry> {
    let plus = compute_m(d, delta)?;
    let minus = compute_m(d, -delta)?;
    Ok(Asymmetry {
        m_plus: plus.value_f64(),
        m_minus: minus.value_f64(),
        d2_forward: binary_relative_entropy_unchecked(plus.s_opt, plus.r_opt).to_f64(),
        d2_reverse: binary_relative_entropy_unchecked(plus.r_opt, plus.s_opt).to_f64(),
    })
}
