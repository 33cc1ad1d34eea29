//! Cost of coding a source with a code built for the wrong distribution.

use crate::entropy::{relative_entropy, require_dim_at_least, shannon_entropy};
use crate::error::{Error, Result};
use crate::mbound::compute_m;
use crate::prob::{check_same_dim, ExtReal, ProbVector};

/// Size of the code alphabet; lengths are measured in its symbols.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Alphabet {
    Symbols(u32),
    /// Lengths in nats (`log` of the alphabet size equal to one).
    Natural,
}

impl Alphabet {
    pub fn ln(self) -> f64 {
        match self {
            Alphabet::Symbols(n) => (n as f64).ln(),
            Alphabet::Natural => 1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WrongCodePenalty {
    /// `D(p‖q)/log D`, the excess expected length.
    pub penalty: ExtReal,
    /// `M(δ·log D, d)/log D`.
    pub lower_bound: ExtReal,
    /// `2δ²·log D/(log²(d-1)+4)`, only when `δ ≥ 0`.
    pub quadratic_bound: Option<f64>,
    /// `δ = (S(p) - S(q))/log D`.
    pub delta: f64,
}

/// Penalty for coding a source `p` with a code built for `q`.
pub fn wrong_code_penalty(p: &ProbVector, q: &ProbVector, alphabet: Alphabet) -> Result<WrongCodePenalty> {
    check_same_dim(p, q)?;
    let d = p.dim();
    require_dim_at_least(d, 2)?;
    if let Alphabet::Symbols(n) = alphabet {
        if n < 2 {
            return Err(Error::InvalidParameter(format!(
                "alphabet needs at least 2 symbols, got {n}"
            )));
        }
    }
    let ln_alpha = alphabet.ln();
    let gap = shannon_entropy(p) - shannon_entropy(q);
    let delta = gap / ln_alpha;
    let scale = |v: ExtReal| match v {
        ExtReal::Finite(x) => ExtReal::Finite(x / ln_alpha),
        ExtReal::Infinite => ExtReal::Infinite,
    };
    let l = ((d - 1) as f64).ln();
    Ok(WrongCodePenalty {
        penalty: scale(relative_entropy(p, q)?),
        lower_bound: scale(compute_m(d, gap)?.value),
        quadratic_bound: (delta >= 0.0).then(|| 2.0 * delta * delta * ln_alpha / (l * l + 4.0)),
        delta,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mbound::optimal_pair;

    #[test]
    fn matching_code_costs_nothing() {
        let p = ProbVector::new(vec![0.5, 0.25, 0.25]).unwrap();
        let w = wrong_code_penalty(&p, &p, Alphabet::Symbols(2)).unwrap();
        assert_eq!(w.penalty, ExtReal::Finite(0.0));
        assert_eq!(w.lower_bound, ExtReal::Finite(0.0));
        assert_eq!(w.quadratic_bound, Some(0.0));
    }

    #[test]
    fn worked_example_in_nats() {
        // True source σ and assumed ρ from the optimal pair at Δ = 6, d = 1000.
        let (sigma, rho) = optimal_pair(1000, 6.0).unwrap();
        let w = wrong_code_penalty(&sigma, &rho, Alphabet::Natural).unwrap();
        assert!((w.lower_bound.to_f64() - 2.30).abs() < 0.01);
        assert!((w.penalty.to_f64() - w.lower_bound.to_f64()).abs() < 1e-8);
        assert!(w.quadratic_bound.unwrap() <= w.lower_bound.to_f64());
    }

    #[test]
    fn quadratic_bound_only_for_savings() {
        let p = ProbVector::new(vec![0.9, 0.05, 0.05]).unwrap();
        let q = ProbVector::uniform(3).unwrap();
        let w = wrong_code_penalty(&p, &q, Alphabet::Symbols(2)).unwrap();
        assert!(w.delta < 0.0);
        assert_eq!(w.quadratic_bound, None);
        assert!(w.penalty.to_f64() >= w.lower_bound.to_f64());
    }

    #[test]
    fn support_violation_is_infinite() {
        let p = ProbVector::new(vec![0.5, 0.5]).unwrap();
        let q = ProbVector::new(vec![1.0, 0.0]).unwrap();
        let w = wrong_code_penalty(&p, &q, Alphabet::Symbols(2)).unwrap();
        assert_eq!(w.penalty, ExtReal::Infinite);
        assert!(wrong_code_penalty(&p, &q, Alphabet::Symbols(1)).is_err());
    }
}
