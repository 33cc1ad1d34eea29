use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use relent_core::apps::{
    blahut_arimoto, capacity_lower_bound, chernoff, extractable_work, stepwise_process,
};
use relent_core::figure::{curves, n_table, CURVE_HEADER, DEFAULT_DIMS, DEFAULT_POINTS, N_HEADER};
use relent_core::mbound::{closed_form_lower_bounds, compute_m, compute_n, pinsker_fa_bound};
use relent_core::oracle::{check_stationarity, verify_m_bound, verify_variance_bound, OracleReport};
use relent_core::{ProbVector, Strategy};
use thiserror::Error;

mod input;
mod output;

use output::{Format, Table, Units};

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] relent_core::Error),
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("{0}")]
    Input(String),
}

/// Relative-entropy bounds from entropy differences. Inputs are in nats;
/// `--units` only changes how entropic outputs are displayed.
#[derive(Debug, Parser)]
#[command(name = "relent", version)]
struct Cli {
    #[arg(long, value_enum, default_value = "json", global = true)]
    format: Format,
    #[arg(long, value_enum, default_value = "nats", global = true)]
    units: Units,
    #[arg(long, default_value_t = 42, global = true)]
    seed: u64,
    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// M(delta, d) with the closed-form lower bounds.
    MBound {
        #[arg(long)]
        d: usize,
        #[arg(long, allow_negative_numbers = true)]
        delta: f64,
        /// Variance constant for the closed forms; defaults to N(d).
        #[arg(long)]
        n: Option<f64>,
    },
    /// Maximal surprisal variance N(d) and its closed-form envelope.
    NBound {
        #[arg(long)]
        d: usize,
    },
    /// Blahut-Arimoto capacity and the entropy-gap lower bound.
    Capacity {
        /// Channel file: CSV rows T(.|x), or JSON {"matrix": [...]}.
        #[arg(long)]
        channel: PathBuf,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Chernoff information and its entropy-gap lower bound.
    Chernoff {
        #[arg(long, value_delimiter = ',', required = true)]
        p: Vec<f64>,
        #[arg(long, value_delimiter = ',', required = true)]
        q: Vec<f64>,
    },
    /// k-step linear thermalization from rho-i to rho-f.
    Process {
        #[arg(long, value_delimiter = ',', required = true)]
        rho_i: Vec<f64>,
        #[arg(long, value_delimiter = ',', required = true)]
        rho_f: Vec<f64>,
        #[arg(long)]
        k: usize,
        /// One temperature per step, or a single value used for every step.
        #[arg(long, value_delimiter = ',', default_value = "1")]
        temps: Vec<f64>,
    },
    /// Extractable work from rho against a thermal bath.
    Work {
        #[arg(long, value_delimiter = ',', required = true)]
        rho: Vec<f64>,
        #[arg(long, value_delimiter = ',', required = true, allow_negative_numbers = true)]
        levels: Vec<f64>,
        #[arg(long)]
        temperature: f64,
    },
    /// Run the brute-force oracle suite; exits with 1 on any violation.
    Verify {
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
    },
    /// Curve data for M and its bounds, plus the N(d) table.
    Figure {
        #[arg(long, default_value_t = DEFAULT_POINTS)]
        points: usize,
        #[arg(long, default_value_t = 100)]
        d_max: usize,
    },
}

/// Rendered output: the main document plus an optional second CSV table
/// written next to `--out`.
struct Rendered {
    main: String,
    extra: Option<(String, String)>,
    failed: bool,
}

impl Rendered {
    fn table(t: Table, format: Format) -> Self {
        Rendered {
            main: t.render(format),
            extra: None,
            failed: false,
        }
    }
}

fn prob(v: Vec<f64>) -> Result<ProbVector, CliError> {
    Ok(ProbVector::new(v)?)
}

fn run(cli: &Cli) -> Result<Rendered, CliError> {
    let u = cli.units;
    let f = cli.format;
    Ok(match &cli.command {
        Command::MBound { d, delta, n } => {
            let m = compute_m(*d, *delta)?;
            let cf = closed_form_lower_bounds(*d, *delta, *n)?;
            let pf = pinsker_fa_bound(*d, *delta)?;
            let status = if m.is_infinite() { "Infinite" } else { "Finite" };
            Rendered::table(
                Table::single(vec![
                    ("d", (*d).into()),
                    ("delta", u.entropy(*delta).into()),
                    ("M", u.ext(m.value).into()),
                    ("status", status.into()),
                    ("s_opt", m.s_opt.into()),
                    ("r_opt", m.r_opt.into()),
                    ("iterations", m.iterations.into()),
                    ("exp_bound", u.entropy(cf.exp_bound).into()),
                    ("cubic_bound", u.entropy(cf.cubic_bound).into()),
                    ("quad_bound", u.entropy(cf.quad_bound).into()),
                    ("pinsker_fa", u.entropy(pf.exact).into()),
                    ("pinsker_fa_closed_form", u.entropy(pf.closed_form).into()),
                ]),
                f,
            )
        }
        Command::NBound { d } => {
            let v = compute_n(*d)?;
            Rendered::table(
                Table::single(vec![
                    ("d", (*d).into()),
                    ("N", u.variance(v.n_value).into()),
                    ("r_d", v.r_d.into()),
                    ("N_d", u.variance(v.n_closed).into()),
                    ("N_d_minus_1", u.variance(v.n_closed - 1.0).into()),
                    ("root_residual", v.root_residual(*d).into()),
                ]),
                f,
            )
        }
        Command::Capacity { channel, tol } => {
            let ch = input::read_channel(channel)?;
            let cap = blahut_arimoto(&ch, *tol)?;
            let lb = capacity_lower_bound(&ch)?;
            Rendered::table(
                Table::single(vec![
                    ("input_dim", ch.input_dim().into()),
                    ("output_dim", ch.output_dim().into()),
                    ("capacity", u.entropy(cap.capacity).into()),
                    ("capacity_upper", u.entropy(cap.upper).into()),
                    ("iterations", cap.iterations.into()),
                    ("bound", u.entropy(lb.bound).into()),
                    ("s_max", u.entropy(lb.s_max).into()),
                    ("s_min", u.entropy(lb.s_min).into()),
                    ("conjectural_bound", u.ext(lb.conjectural_bound).into()),
                ]),
                f,
            )
        }
        Command::Chernoff { p, q } => {
            let c = chernoff(&prob(p.clone())?, &prob(q.clone())?)?;
            Rendered::table(
                Table::single(vec![
                    ("xi", u.ext(c.xi).into()),
                    ("s_opt", c.s_opt.into()),
                    ("lower_bound", u.entropy(c.lower_bound).into()),
                ]),
                f,
            )
        }
        Command::Process { rho_i, rho_f, k, temps } => {
            let temps = if temps.len() == 1 { vec![temps[0]; *k] } else { temps.clone() };
            let r = stepwise_process(&prob(rho_i.clone())?, &prob(rho_f.clone())?, *k, &temps)?;
            let s = &r.sums;
            Rendered::table(
                Table::single(vec![
                    ("k", (*k).into()),
                    ("clausius_lhs", u.entropy(s.clausius_lhs).into()),
                    ("delta_S", u.entropy(s.delta_s).into()),
                    ("rel_ent_sum", u.entropy(s.rel_ent_sum).into()),
                    ("bound_convexity", u.entropy(r.bound_convexity).into()),
                    ("bound_quadratic", u.entropy(r.bound_quadratic).into()),
                    ("bound_pinsker", u.entropy(r.bound_pinsker).into()),
                    ("upper_envelope", u.ext(r.upper_envelope).into()),
                    ("w_waste_lb", r.w_waste_lb.into()),
                ]),
                f,
            )
        }
        Command::Work { rho, levels, temperature } => {
            let w = extractable_work(&prob(rho.clone())?, levels, *temperature)?;
            Rendered::table(
                Table::single(vec![
                    ("exact", w.exact.into()),
                    ("lower_bound", w.lower_bound.into()),
                    ("free_energy_drop", w.free_energy_drop.into()),
                ]),
                f,
            )
        }
        Command::Verify { samples } => verify(*samples, cli.seed, u, f)?,
        Command::Figure { points, d_max } => figure(*points, *d_max, u, f)?,
    })
}

fn oracle_row(t: &mut Table, check: &str, d: usize, r: &OracleReport, scale: impl Fn(f64) -> f64) {
    t.push(vec![
        check.into(),
        d.into(),
        r.samples.into(),
        r.violations.into(),
        scale(r.min_gap).into(),
        scale(r.witness_max_abs_gap).into(),
        r.worst_case.clone().into(),
        r.passed().into(),
    ]);
}

fn verify(samples: usize, seed: u64, u: Units, f: Format) -> Result<Rendered, CliError> {
    let mut t = Table::new(vec![
        "check",
        "d",
        "samples",
        "violations",
        "min_gap",
        "witness_gap",
        "worst_case",
        "passed",
    ]);
    let mut failed = false;
    for d in [2usize, 3, 5, 10, 50] {
        let r = verify_m_bound(d, samples, seed)?;
        failed |= !r.passed() || r.witness_max_abs_gap > 1e-8;
        oracle_row(&mut t, "relative_entropy", d, &r, |x| u.entropy(x));
    }
    for d in [2usize, 4, 16, 64] {
        let r = verify_variance_bound(d, samples, seed)?;
        failed |= !r.passed();
        oracle_row(&mut t, "variance", d, &r, |x| u.variance(x));
    }
    for d in [3usize, 10, 1000] {
        let ln_d = (d as f64).ln();
        for frac in [-0.6, -0.3, 0.3, 0.6] {
            let s = check_stationarity(d, frac * ln_d)?;
            let residual = s.f_residual.unwrap_or(0.0).abs().max(s.constraint_residual.abs());
            let ok = residual <= 1e-6;
            failed |= !ok;
            t.push(vec![
                "stationarity".into(),
                d.into(),
                1usize.into(),
                usize::from(!ok).into(),
                (-residual).into(),
                0.0.into(),
                format!("delta={:.6} s={:.9} r={:.9}", frac * ln_d, s.s, s.r).into(),
                ok.into(),
            ]);
        }
    }
    Ok(Rendered {
        main: t.render(f),
        extra: None,
        failed,
    })
}

fn figure(points: usize, d_max: usize, u: Units, f: Format) -> Result<Rendered, CliError> {
    if points < 2 {
        return Err(CliError::Input("figure needs at least 2 points".into()));
    }
    let mut c = Table::new(CURVE_HEADER.to_vec());
    for r in curves(&DEFAULT_DIMS, points, Strategy::default())? {
        c.push(vec![
            r.d.into(),
            u.entropy(r.delta).into(),
            u.entropy(r.m).into(),
            u.entropy(r.exp_bound).into(),
            u.entropy(r.cubic_bound).into(),
            u.entropy(r.quad_bound).into(),
            u.entropy(r.pinsker_fa).into(),
        ]);
    }
    let mut n = Table::new(N_HEADER.to_vec());
    for r in n_table(2, d_max)? {
        n.push(vec![
            r.d.into(),
            u.variance(r.n).into(),
            u.variance(r.n_closed).into(),
            u.variance(r.n_closed_minus_one).into(),
        ]);
    }
    Ok(match f {
        Format::Json => {
            let doc = serde_json::json!({
                "curves": c.to_json_array(),
                "n_table": n.to_json_array(),
            });
            Rendered {
                main: serde_json::to_string_pretty(&doc).expect("serializable") + "\n",
                extra: None,
                failed: false,
            }
        }
        Format::Csv => Rendered {
            main: c.to_csv(),
            extra: Some(("n".into(), n.to_csv())),
            failed: false,
        },
    })
}

/// `fig1.csv` -> `fig1_n.csv`.
fn sibling(path: &Path, suffix: &str) -> PathBuf {
    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let name = match path.extension() {
        Some(ext) => format!("{stem}_{suffix}.{}", ext.to_string_lossy()),
        None => format!("{stem}_{suffix}"),
    };
    path.with_file_name(name)
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn emit(cli: &Cli, r: &Rendered) -> Result<(), CliError> {
    match &cli.out {
        Some(path) => {
            write_file(path, &r.main)?;
            if let Some((suffix, text)) = &r.extra {
                write_file(&sibling(path, suffix), text)?;
            }
        }
        None => {
            let mut text = r.main.clone();
            if let Some((_, extra)) = &r.extra {
                text.push('\n');
                text.push_str(extra);
            }
            io::stdout().write_all(text.as_bytes()).map_err(|source| CliError::Io {
                path: "<stdout>".into(),
                source,
            })?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli).and_then(|r| emit(&cli, &r).map(|_| r.failed)) {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => {
            eprintln!("error: oracle violations found");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
