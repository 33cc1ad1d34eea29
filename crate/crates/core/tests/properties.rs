use proptest::prelude::*;

use relent_core::apps::{chernoff, extractable_work, wrong_code_penalty, Alphabet};
use relent_core::entropy::{
    relative_entropy, shannon_entropy, surprisal_variance, trace_distance,
};
use relent_core::mbound::{compute_m, compute_n, exp_bound, pinsker_fa_bound, quad_bound};
use relent_core::thermal::{heat_capacity, Temperature, ThermalSystem};
use relent_core::ProbVector;

fn weights(d: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Vec<f64>> {
    d.prop_flat_map(|d| prop::collection::vec(0.0f64..1.0, d))
        .prop_filter("non-zero mass", |w| w.iter().sum::<f64>() > 1e-3)
}

fn state(d: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = ProbVector> {
    weights(d).prop_map(|w| ProbVector::from_weights(w).unwrap())
}

fn pair(d: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = (ProbVector, ProbVector)> {
    d.prop_flat_map(|d| (state(d..=d), state(d..=d)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn klein_and_pinsker((p, q) in pair(2..=8)) {
        let dv = relative_entropy(&p, &q).unwrap().to_f64();
        let t = trace_distance(&p, &q).unwrap();
        prop_assert!(dv >= 0.0);
        prop_assert!(dv >= 2.0 * t * t - 1e-12);
    }

    #[test]
    fn relative_entropy_dominates_bound((sigma, rho) in pair(2..=8)) {
        let d = sigma.dim();
        let delta = shannon_entropy(&sigma) - shannon_entropy(&rho);
        let dv = relative_entropy(&sigma, &rho).unwrap().to_f64();
        let m = compute_m(d, delta).unwrap().value_f64();
        prop_assert!(dv >= m - 1e-7, "D={dv} M={m} delta={delta}");
        let n = compute_n(d).unwrap().n_value;
        prop_assert!(m >= exp_bound(delta, n) - 1e-10);
        prop_assert!(m >= quad_bound(d, delta) - 1e-10);
        prop_assert!(m >= pinsker_fa_bound(d, delta).unwrap().exact - 1e-10);
    }

    #[test]
    fn variance_below_n(p in state(2..=32)) {
        prop_assert!(surprisal_variance(&p) <= compute_n(p.dim()).unwrap().n_value + 1e-9);
    }

    #[test]
    fn entropy_in_range(p in state(1..=32)) {
        let h = shannon_entropy(&p);
        prop_assert!(h >= 0.0 && h <= (p.dim() as f64).ln() + 1e-12);
    }

    #[test]
    fn heat_capacity_is_shift_invariant(
        levels in prop::collection::vec(-3.0f64..3.0, 2..8),
        shift in -10.0f64..10.0,
        t in 0.05f64..20.0,
    ) {
        let temp = Temperature::new(t).unwrap();
        let a = heat_capacity(&ThermalSystem::new(levels.clone(), temp).unwrap());
        let shifted = levels.iter().map(|e| e + shift).collect();
        let b = heat_capacity(&ThermalSystem::new(shifted, temp).unwrap());
        prop_assert!((a - b).abs() <= 1e-9 * (1.0 + a));
        prop_assert!(a <= compute_n(levels.len()).unwrap().n_value + 1e-9);
    }

    #[test]
    fn chernoff_symmetric_and_bounded((p, q) in pair(2..=8)) {
        let a = chernoff(&p, &q).unwrap();
        let b = chernoff(&q, &p).unwrap();
        prop_assert!((a.xi.to_f64() - b.xi.to_f64()).abs() <= 1e-10);
        prop_assert!(a.xi.to_f64() >= a.lower_bound - 1e-9);
    }

    #[test]
    fn wrong_code_penalty_bounded((p, q) in pair(2..=8), n in 2u32..6) {
        let w = wrong_code_penalty(&p, &q, Alphabet::Symbols(n)).unwrap();
        prop_assert!(w.penalty.to_f64() >= w.lower_bound.to_f64() - 1e-9);
        if let Some(qb) = w.quadratic_bound {
            prop_assert!(w.penalty.to_f64() >= qb - 1e-9);
        }
    }

    #[test]
    fn work_lower_bound(
        rho in state(2..=16),
        seed_levels in prop::collection::vec(0.0f64..4.0, 16),
        t in 0.1f64..10.0,
    ) {
        let levels = &seed_levels[..rho.dim()];
        let w = extractable_work(&rho, levels, t).unwrap();
        prop_assert!(w.exact >= w.lower_bound - 1e-9);
        prop_assert!((w.exact - w.free_energy_drop).abs() <= 1e-9 * (1.0 + w.exact.abs()));
    }
}
