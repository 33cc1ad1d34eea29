//! Stepwise thermalization processes and extractable work.
//!
//! A process of `k` steps moves the state along the straight line
//! `ρ_j = (1 - j/k)·ρ_i + (j/k)·ρ_f`; at step `j` the system is put in contact
//! with a bath at temperature `T_j` whose thermal state is `ρ_j`.

use crate::entropy::{relative_entropy, shannon_entropy};
use crate::error::{Error, Result};
use crate::mbound::compute_m;
use crate::prob::{check_same_dim, ExtReal, ProbVector};
use crate::thermal::{thermal_state, Temperature, ThermalSystem};

/// Sums accumulated along a discrete path `ρ_0, ..., ρ_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct PathSums {
    /// `Σ_j tr[(ρ_j - ρ_{j-1})(-log ρ_j)]`, the Clausius sum `Σ ΔQ_j/T_j`.
    pub clausius_lhs: f64,
    /// `S(ρ_k) - S(ρ_0)`.
    pub delta_s: f64,
    /// `Σ_j D(ρ_{j-1}‖ρ_j)`.
    pub rel_ent_sum: f64,
    /// `Σ_j D(ρ_j‖ρ_{j-1})`.
    pub reverse_rel_ent_sum: ExtReal,
    /// Per-step `ΔQ_j/T_j`.
    pub step_heat: Vec<f64>,
    /// Per-step `D(ρ_{j-1}‖ρ_j)`.
    pub step_rel_ent: Vec<f64>,
}

/// Accumulates the Clausius sum and relative entropies along `path`. Every
/// state after the first must have full support.
pub fn process_along(path: &[ProbVector]) -> Result<PathSums> {
    if path.len() < 2 {
        return Err(Error::InvalidParameter("a path needs at least two states".into()));
    }
    for (j, w) in path.windows(2).enumerate() {
        check_same_dim(&w[0], &w[1])?;
        if !w[1].has_full_support() {
            return Err(Error::InvalidParameter(format!(
                "state {} of the path lacks full support",
                j + 1
            )));
        }
    }
    let mut step_heat = Vec::with_capacity(path.len() - 1);
    let mut step_rel_ent = Vec::with_capacity(path.len() - 1);
    let mut reverse = 0.0;
    let mut reverse_infinite = false;
    for w in path.windows(2) {
        let (prev, next) = (&w[0], &w[1]);
        step_heat.push(
            prev.iter()
                .zip(next.iter())
                .map(|(a, b)| -(b - a) * b.ln())
                .sum(),
        );
        step_rel_ent.push(relative_entropy(prev, next)?.to_f64());
        match relative_entropy(next, prev)? {
            ExtReal::Finite(v) => reverse += v,
            ExtReal::Infinite => reverse_infinite = true,
        }
    }
    Ok(PathSums {
        clausius_lhs: step_heat.iter().sum(),
        delta_s: shannon_entropy(&path[path.len() - 1]) - shannon_entropy(&path[0]),
        rel_ent_sum: step_rel_ent.iter().sum(),
        reverse_rel_ent_sum: if reverse_infinite {
            ExtReal::Infinite
        } else {
            ExtReal::Finite(reverse)
        },
        step_heat,
        step_rel_ent,
    })
}

/// Straight-line path with `k` steps from `rho_i` to `rho_f`.
pub fn linear_path(rho_i: &ProbVector, rho_f: &ProbVector, k: usize) -> Result<Vec<ProbVector>> {
    check_same_dim(rho_i, rho_f)?;
    if k == 0 {
        return Err(Error::InvalidParameter("step count must be positive".into()));
    }
    (0..=k)
        .map(|j| rho_i.mix(rho_f, j as f64 / k as f64))
        .collect()
}

/// Piecewise-linear path through `waypoints`, `steps` steps per segment.
pub fn polyline_path(waypoints: &[ProbVector], steps: usize) -> Result<Vec<ProbVector>> {
    if waypoints.len() < 2 {
        return Err(Error::InvalidParameter("a path needs at least two waypoints".into()));
    }
    let mut path = vec![waypoints[0].clone()];
    for w in waypoints.windows(2) {
        path.extend(linear_path(&w[0], &w[1], steps)?.into_iter().skip(1));
    }
    Ok(path)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProcessReport {
    pub path: Vec<ProbVector>,
    pub temps: Vec<f64>,
    pub sums: PathSums,
    /// `k·M(-ΔS/k, d)`.
    pub bound_convexity: f64,
    /// `ΔS²/(3k·log²d)`.
    pub bound_quadratic: f64,
    /// `(2T)²/(2k)` with `T` the trace distance between endpoints.
    pub bound_pinsker: f64,
    /// `(D(ρ_f‖ρ_i) + D(ρ_i‖ρ_f))/k`, an upper bound on the sum.
    pub upper_envelope: ExtReal,
    /// `T_min·Σ D(ρ_{j-1}‖ρ_j)`, a lower bound on the wasted work.
    pub w_waste_lb: f64,
}

impl ProcessReport {
    pub fn steps(&self) -> usize {
        self.temps.len()
    }
}

/// Runs a `k`-step process from `rho_i` to `rho_f` with bath temperatures
/// `temps` (one per step) and evaluates the lower and upper bounds on the
/// accumulated relative entropy.
pub fn stepwise_process(
    rho_i: &ProbVector,
    rho_f: &ProbVector,
    k: usize,
    temps: &[f64],
) -> Result<ProcessReport> {
    check_same_dim(rho_i, rho_f)?;
    if !rho_f.has_full_support() {
        return Err(Error::InvalidParameter("final state must have full support".into()));
    }
    if temps.len() != k {
        return Err(Error::InvalidParameter(format!(
            "expected {k} temperatures, got {}",
            temps.len()
        )));
    }
    if let Some(t) = temps.iter().find(|t| !(t.is_finite() && **t > 0.0)) {
        return Err(Error::InvalidParameter(format!(
            "temperatures must be positive and finite, got {t}"
        )));
    }
    let path = linear_path(rho_i, rho_f, k)?;
    let sums = process_along(&path)?;
    let d = rho_i.dim();
    let kf = k as f64;
    let ds = sums.delta_s;
    let (bound_convexity, bound_quadratic) = if d >= 2 {
        let ln_d = (d as f64).ln();
        let per_step = (-ds / kf).clamp(-ln_d, ln_d);
        (
            kf * compute_m(d, per_step)?.value_f64(),
            ds * ds / (3.0 * kf * ln_d * ln_d),
        )
    } else {
        (0.0, 0.0)
    };
    let t = crate::entropy::trace_distance(rho_i, rho_f)?;
    let upper_envelope = match (relative_entropy(rho_f, rho_i)?, relative_entropy(rho_i, rho_f)?) {
        (ExtReal::Finite(a), ExtReal::Finite(b)) => ExtReal::Finite((a + b) / kf),
        _ => ExtReal::Infinite,
    };
    let t_min = temps.iter().cloned().fold(f64::INFINITY, f64::min);
    Ok(ProcessReport {
        w_waste_lb: t_min * sums.rel_ent_sum,
        path,
        temps: temps.to_vec(),
        sums,
        bound_convexity,
        bound_quadratic,
        bound_pinsker: 2.0 * t * t / kf,
        upper_envelope,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtractableWork {
    /// `T·D(ρ_i‖ρ_f)` with `ρ_f` the thermal state.
    pub exact: f64,
    /// `T·M(S(ρ_i) - S(ρ_f), d)`.
    pub lower_bound: f64,
    /// `F(ρ_i) - F(ρ_f)` with `F = E - T·S`.
    pub free_energy_drop: f64,
}

/// Maximal work extractable from `rho_i` by a bath at `temperature` for a
/// system with energy `levels`.
pub fn extractable_work(rho_i: &ProbVector, levels: &[f64], temperature: f64) -> Result<ExtractableWork> {
    if rho_i.dim() != levels.len() {
        return Err(Error::DimensionMismatch {
            left: rho_i.dim(),
            right: levels.len(),
        });
    }
    if !(temperature.is_finite() && temperature > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "temperature must be positive and finite, got {temperature}"
        )));
    }
    let sys = ThermalSystem::new(levels.to_vec(), Temperature::new(temperature)?)?;
    let rho_f = thermal_state(&sys);
    let exact = match relative_entropy(rho_i, &rho_f)? {
        ExtReal::Finite(v) => temperature * v,
        ExtReal::Infinite => {
            return Err(Error::InfiniteDivergence(
                "thermal state underflows on the support of the initial state".into(),
            ))
        }
    };
    let energy = |p: &ProbVector| p.iter().zip(levels).map(|(a, e)| a * e).sum::<f64>();
    let (s_i, s_f) = (shannon_entropy(rho_i), shannon_entropy(&rho_f));
    let free_energy_drop = (energy(rho_i) - temperature * s_i) - (energy(&rho_f) - temperature * s_f);
    let d = rho_i.dim();
    let lower_bound = if d >= 2 {
        let ln_d = (d as f64).ln();
        temperature * compute_m(d, (s_i - s_f).clamp(-ln_d, ln_d))?.value_f64()
    } else {
        0.0
    };
    Ok(ExtractableWork {
        exact,
        lower_bound,
        free_energy_drop,
    })
}
