//! Acceptance suite. Prints one PASS/FAIL line per criterion.
//!
//! A check marked unattainable is one that cannot hold mathematically for
//! this quantity. It is still evaluated and printed as FAIL. The test then
//! asserts that it keeps failing, so a change in behavior is noticed.

use std::f64::consts::LN_2;
use std::time::Instant;

use relent_core::apps::{
    blahut_arimoto, capacity_lower_bound, entropy_gap_bound, stepwise_process, Channel,
};
use relent_core::entropy::{binary_relative_entropy, relative_entropy};
use relent_core::figure::{curves, CurveRow};
use relent_core::mbound::{
    compute_m, compute_n, cubic_bound, exp_bound, pinsker_fa_bound, quad_bound,
};
use relent_core::oracle::{
    asymmetry, check_stationarity, conjecture_scan, draw_simplex, trial_rng, verify_m_bound,
    verify_variance_bound,
};
use relent_core::{ProbVector, Strategy};

const SEED: u64 = 42;

struct Check {
    name: String,
    ok: bool,
    unattainable: bool,
}

struct Criterion {
    id: u32,
    title: &'static str,
    checks: Vec<Check>,
    notes: Vec<String>,
}

impl Criterion {
    fn new(id: u32, title: &'static str) -> Self {
        Criterion {
            id,
            title,
            checks: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn check(&mut self, name: impl Into<String>, ok: bool) {
        self.checks.push(Check {
            name: name.into(),
            ok,
            unattainable: false,
        });
    }

    fn check_unattainable(&mut self, name: impl Into<String>, ok: bool) {
        self.checks.push(Check {
            name: name.into(),
            ok,
            unattainable: true,
        });
    }

    fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }
}

fn ln(d: usize) -> f64 {
    (d as f64).ln()
}

fn grid(d: usize, points: usize) -> Vec<f64> {
    let l = ln(d);
    (0..points)
        .map(|i| -l + 2.0 * l * i as f64 / (points - 1) as f64)
        .collect()
}

fn criterion_1() -> Criterion {
    let mut c = Criterion::new(1, "endpoint values");
    for d in [2usize, 3, 5, 10, 50, 1000] {
        let zero = compute_m(d, 0.0).unwrap().value_f64();
        let low = compute_m(d, -ln(d)).unwrap().value_f64();
        let high = compute_m(d, ln(d)).unwrap();
        c.check(format!("M(0,{d})={zero:e}"), zero.abs() <= 1e-10);
        c.check(format!("M(-log d,{d})-log d={:e}", low - ln(d)), (low - ln(d)).abs() <= 1e-8);
        c.check(format!("M(log d,{d}) infinite"), high.is_infinite());
    }
    c
}

fn criterion_2() -> Criterion {
    let mut c = Criterion::new(2, "worked example d=1000, delta=6");
    let m = compute_m(1000, 6.0).unwrap();
    let reverse = binary_relative_entropy(m.r_opt, m.s_opt).unwrap().to_f64();
    c.check(format!("s_opt={:.6}", m.s_opt), (m.s_opt - 0.9497).abs() <= 5e-4);
    c.check(format!("r_opt={:.6}", m.r_opt), (m.r_opt - 0.0723).abs() <= 5e-4);
    c.check(format!("M={:.6}", m.value_f64()), (m.value_f64() - 2.30).abs() <= 0.01);
    c.check(format!("D2(r||s)={reverse:.6}"), (reverse - 2.51).abs() <= 0.01);
    c
}

fn criterion_3() -> Criterion {
    let mut c = Criterion::new(3, "relative-entropy oracle sweep");
    for d in [2usize, 3, 5, 10, 50] {
        let r = verify_m_bound(d, 10_000, SEED).unwrap();
        c.check(
            format!("d={d} violations={} min_gap={:.3e}", r.violations, r.min_gap),
            r.violations == 0 && r.min_gap >= -1e-7 && r.samples == 10_000,
        );
        c.check(
            format!("d={d} witness |gap|={:.3e}", r.witness_max_abs_gap),
            r.witness_max_abs_gap <= 1e-8,
        );
    }
    c
}

fn criterion_4() -> Criterion {
    let mut c = Criterion::new(4, "surprisal variance bound");
    for d in [2usize, 4, 16, 64] {
        let r = verify_variance_bound(d, 10_000, SEED).unwrap();
        c.check(
            format!("d={d} violations={} min_gap={:.3e}", r.violations, r.min_gap),
            r.violations == 0,
        );
    }
    let mut envelope = true;
    let mut below_log_sq = true;
    let mut worst_residual: f64 = 0.0;
    for d in 2..=200usize {
        let v = compute_n(d).unwrap();
        envelope &= v.n_closed - 1.0 < v.n_value && v.n_value < v.n_closed;
        below_log_sq &= v.n_value < ln(d) * ln(d);
        worst_residual = worst_residual.max(v.root_residual(d).abs());
    }
    c.check("N_d-1 < N(d) < N_d for d in 2..200", envelope);
    c.check("N(d) < log^2 d for d in 2..200", below_log_sq);
    c.check(format!("max root residual={worst_residual:.3e}"), worst_residual <= 1e-10);
    c
}

fn figure_rows() -> Vec<CurveRow> {
    curves(&[2, 10, 50], 401, Strategy::default()).unwrap()
}

fn criterion_5(rows: &[CurveRow]) -> Criterion {
    let mut c = Criterion::new(5, "bound-chain ordering");
    for d in [2usize, 10, 50] {
        let v = compute_n(d).unwrap();
        let ns = [
            ("N(d)", v.n_value),
            ("N_d", v.n_closed),
            ("log^2 d", ln(d) * ln(d)),
        ];
        for (label, n) in ns {
            let mut worst = f64::INFINITY;
            for r in rows.iter().filter(|r| r.d == d) {
                let e = exp_bound(r.delta, n);
                let cb = cubic_bound(r.delta, n);
                worst = worst.min(r.m - e).min(e - cb);
            }
            c.check(format!("d={d} N={label} min slack={worst:.3e}"), worst >= -1e-10);
        }
        let worst = rows
            .iter()
            .filter(|r| r.d == d)
            .map(|r| r.m - quad_bound(d, r.delta))
            .fold(f64::INFINITY, f64::min);
        c.check(format!("d={d} quadratic min slack={worst:.3e}"), worst >= -1e-10);
    }
    c
}

fn criterion_6(rows: &[CurveRow]) -> Criterion {
    let mut c = Criterion::new(6, "convexity and monotonicity");
    for d in [2usize, 10, 50] {
        let m: Vec<f64> = rows.iter().filter(|r| r.d == d).map(|r| r.m).collect();
        let worst = m
            .windows(3)
            .filter(|w| w.iter().all(|x| x.is_finite()))
            .map(|w| w[0] - 2.0 * w[1] + w[2])
            .fold(f64::INFINITY, f64::min);
        c.check(format!("d={d} min second difference={worst:.3e}"), worst >= -1e-7);

        let mut strict = true;
        for delta in grid(d, 401).into_iter().filter(|x| x.abs() > 1e-12) {
            let full = compute_m(d, delta).unwrap().value_f64();
            for lambda in [0.25, 0.5, 0.75] {
                strict &= compute_m(d, lambda * delta).unwrap().value_f64() < lambda * full;
            }
        }
        c.check(format!("d={d} M(lambda delta) < lambda M(delta)"), strict);
    }
    let mut decreasing = true;
    for delta in grid(2, 41).into_iter().filter(|x| x.abs() > 1e-12) {
        let values: Vec<f64> = (2..=12)
            .map(|d| compute_m(d, delta).unwrap().value_f64())
            .collect();
        decreasing &= values.windows(2).all(|w| w[1] < w[0]);
    }
    c.check("M strictly decreasing in d on 2..12", decreasing);
    c
}

fn criterion_7() -> Criterion {
    let mut c = Criterion::new(7, "Pinsker/Fannes-Audenaert comparison");
    let mut worst_margin = f64::INFINITY;
    let mut exact_valid = true;
    let mut exact_wins = 0usize;
    let mut total = 0usize;
    for d in 2..=50usize {
        let n = compute_n(d).unwrap().n_value;
        for delta in grid(d, 401).into_iter().filter(|x| x.abs() > 1e-12) {
            let p = pinsker_fa_bound(d, delta).unwrap();
            let e = exp_bound(delta, n);
            worst_margin = worst_margin.min(e - p.closed_form);
            exact_valid &= p.exact <= compute_m(d, delta).unwrap().value_f64() + 1e-10;
            exact_wins += usize::from(p.exact >= e);
            total += 1;
        }
    }
    c.check(
        format!("closed-form composite < exp bound, min margin={worst_margin:.3e}"),
        worst_margin > 0.0,
    );
    c.check("exact composite <= M", exact_valid);
    c.note(format!(
        "exact-inversion composite reaches the exp bound at {exact_wins}/{total} grid points"
    ));
    c
}

fn random_channel(k: u64) -> Channel {
    let mut rng = trial_rng(SEED, k);
    use rand::Rng;
    let nx = rng.random_range(1..=8usize);
    let ny = rng.random_range(2..=8usize);
    let rows = (0..nx)
        .map(|_| draw_simplex(ny, &mut rng).into_inner())
        .collect();
    Channel::new(rows).unwrap()
}

fn criterion_8() -> Criterion {
    let mut c = Criterion::new(8, "channel capacity bound");
    let mut sandwich = true;
    let mut below_ln2 = true;
    let mut worst_slack = f64::INFINITY;
    for k in 0..100 {
        let ch = random_channel(k);
        let lb = capacity_lower_bound(&ch).unwrap();
        let cap = blahut_arimoto(&ch, 1e-10).unwrap();
        sandwich &= lb.bound >= 0.0 && lb.bound <= cap.capacity + 1e-9;
        below_ln2 &= lb.bound <= LN_2;
        worst_slack = worst_slack.min(cap.capacity - lb.bound);
    }
    c.check(
        format!("0 <= bound <= capacity + 1e-9 on 100 channels, min slack={worst_slack:.3e}"),
        sandwich,
    );
    c.check("bound <= log 2", below_ln2);

    let equal = Channel::new(vec![
        vec![0.5, 0.3, 0.2, 0.0],
        vec![0.0, 0.2, 0.5, 0.3],
        vec![0.3, 0.0, 0.2, 0.5],
    ])
    .unwrap();
    let eb = capacity_lower_bound(&equal).unwrap().bound;
    c.check(format!("equal-entropy rows bound={eb:e}"), eb.abs() <= 1e-15);
    for d in [2usize, 3, 8] {
        let cap = blahut_arimoto(&Channel::identity(d).unwrap(), 1e-10).unwrap();
        c.check(
            format!("identity d={d} capacity-log d={:.3e}", cap.capacity - ln(d)),
            (cap.capacity - ln(d)).abs() <= 1e-9,
        );
    }
    let at2 = entropy_gap_bound(LN_2, 0.0, 2).unwrap();
    let big = 1_000_000_000usize;
    let at_big = entropy_gap_bound(ln(big), 0.0, big).unwrap();
    c.note(format!(
        "gap=log d: formula {at2:.4} nats at d=2, {at_big:.4} nats at d=1e9 \
         (quoted figures 0.111 and log sqrt 3 = {:.4}; reported, not asserted)",
        3f64.sqrt().ln()
    ));
    c
}

fn criterion_9() -> Criterion {
    let mut c = Criterion::new(9, "stepwise process bounds");
    let rho_i = ProbVector::new(vec![0.7, 0.15, 0.1, 0.05]).unwrap();
    let rho_f = ProbVector::new(vec![0.1, 0.2, 0.3, 0.4]).unwrap();
    let envelope_full = relative_entropy(&rho_f, &rho_i).unwrap().to_f64()
        + relative_entropy(&rho_i, &rho_f).unwrap().to_f64();
    let mut sums = Vec::new();
    let mut identity = 0.0f64;
    let mut envelope = true;
    let mut lower = true;
    let mut k = 1;
    while k <= 1024 {
        let r = stepwise_process(&rho_i, &rho_f, k, &vec![1.0; k]).unwrap();
        let s = &r.sums;
        identity = identity.max((s.clausius_lhs - (s.delta_s - s.rel_ent_sum)).abs());
        envelope &= s.rel_ent_sum <= envelope_full / k as f64 + 1e-15
            && s.rel_ent_sum <= r.upper_envelope.to_f64() + 1e-15;
        lower &= s.rel_ent_sum >= r.bound_convexity - 1e-12
            && s.rel_ent_sum >= r.bound_quadratic - 1e-12
            && s.rel_ent_sum >= r.bound_pinsker - 1e-12;
        sums.push((k, s.rel_ent_sum));
        k *= 2;
    }
    c.check(format!("Clausius identity max residual={identity:.3e}"), identity <= 1e-10);
    c.check("envelope (D(f||i)+D(i||f))/k holds for k=1..1024", envelope);
    c.check("convexity, quadratic and Pinsker lower bounds hold", lower);
    let worst_ratio = sums
        .windows(2)
        .filter(|w| w[0].0 >= 16)
        .map(|w| w[1].1 / w[0].1)
        .fold(0.0f64, f64::max);
    c.check(format!("sum(2k)/sum(k) max ratio={worst_ratio:.4} for k>=16"), worst_ratio <= 0.6);
    c
}

fn criterion_10(rows: &[CurveRow]) -> Criterion {
    let mut c = Criterion::new(10, "figure reproduction");
    let mut ordered = true;
    for r in rows {
        ordered &= r.m >= r.exp_bound - 1e-10 && r.exp_bound >= r.cubic_bound - 1e-10;
    }
    c.check("curves ordered M >= exp >= cubic", ordered);
    for d in [2usize, 10, 50] {
        let curve: Vec<&CurveRow> = rows.iter().filter(|r| r.d == d).collect();
        let first = curve[0].m;
        let mid = curve[curve.len() / 2].m;
        let last = curve[curve.len() - 1].m;
        c.check(
            format!("d={d} endpoints M(-log d)={first:.10} M(0)={mid:e} M(log d)={last}"),
            (first - ln(d)).abs() <= 1e-8 && mid.abs() <= 1e-10 && last.is_infinite(),
        );
    }
    for sign in [-1.0, 1.0] {
        let values: Vec<f64> = [100usize, 10_000, 1_000_000]
            .iter()
            .map(|&d| exp_bound(sign * ln(d), compute_n(d).unwrap().n_value))
            .collect();
        let label = if sign < 0.0 { "-log d" } else { "+log d" };
        c.check(
            format!(
                "exp bound at {label}: {:.4}, {:.4}, {:.4} approaches 2",
                values[0], values[1], values[2]
            ),
            values.windows(2).all(|w| (w[1] - 2.0).abs() < (w[0] - 2.0).abs()),
        );
        let above = values[2] > 1.9;
        let name = format!("exp bound at {label}, d=1e6 exceeds 1.9: {:.4}", values[2]);
        if sign < 0.0 {
            c.check_unattainable(name, above);
        } else {
            c.check(name, above);
        }
    }
    c
}

fn criterion_11() -> Criterion {
    let mut c = Criterion::new(11, "stationarity residuals");
    let mut interior = Vec::new();
    'outer: for d in [2usize, 3, 5, 10, 50, 1000] {
        for frac in [0.6, 0.3, -0.3, -0.6, 0.9] {
            let s = check_stationarity(d, frac * ln(d)).unwrap();
            if let Some(f) = s.f_residual {
                interior.push((d, frac, f, s.constraint_residual));
                if interior.len() == 20 {
                    break 'outer;
                }
            }
        }
    }
    c.check(format!("{} interior optima found", interior.len()), interior.len() == 20);
    let worst_f = interior.iter().map(|t| t.2.abs()).fold(0.0, f64::max);
    let worst_g = interior.iter().map(|t| t.3.abs()).fold(0.0, f64::max);
    c.check(format!("max |F| residual={worst_f:.3e}"), worst_f <= 1e-6);
    c.check(format!("max constraint residual={worst_g:.3e}"), worst_g <= 1e-6);
    c
}

fn report_only() {
    for d in [2usize, 3, 10] {
        let scan = conjecture_scan(d, 200).unwrap();
        println!(
            "  report: d={d} min M(delta)-M(-delta) on (0, log d) = {:.3e} at delta={:.4}",
            scan.min_diff, scan.argmin_delta
        );
    }
    let a = asymmetry(1000, 6.0).unwrap();
    println!(
        "  report: d=1000 delta=6 M(+)={:.4} M(-)={:.4} D2(s||r)={:.4} D2(r||s)={:.4}",
        a.m_plus, a.m_minus, a.d2_forward, a.d2_reverse
    );
}

#[test]
fn acceptance() {
    let start = Instant::now();
    let rows = figure_rows();
    let runs: Vec<Box<dyn Fn() -> Criterion>> = vec![
        Box::new(criterion_1),
        Box::new(criterion_2),
        Box::new(criterion_3),
        Box::new(criterion_4),
        Box::new(|| criterion_5(&rows)),
        Box::new(|| criterion_6(&rows)),
        Box::new(criterion_7),
        Box::new(criterion_8),
        Box::new(criterion_9),
        Box::new(|| criterion_10(&rows)),
        Box::new(criterion_11),
    ];
    let mut unexpected = Vec::new();
    for run in &runs {
        let t = Instant::now();
        let c = run();
        let status = if c.passed() { "PASS" } else { "FAIL" };
        println!("{status} criterion {:>2}: {} ({:.1?})", c.id, c.title, t.elapsed());
        for check in &c.checks {
            let mark = match (check.ok, check.unattainable) {
                (true, _) => "ok",
                (false, false) => "FAILED",
                (false, true) => "FAILED (unattainable, see README)",
            };
            println!("    [{mark}] {}", check.name);
            if check.ok == check.unattainable {
                unexpected.push(format!("criterion {}: {}", c.id, check.name));
            }
        }
        for n in &c.notes {
            println!("    note: {n}");
        }
    }
    report_only();
    println!("total {:.1?}", start.elapsed());
    assert!(unexpected.is_empty(), "unexpected outcomes: {unexpected:#?}");
}
