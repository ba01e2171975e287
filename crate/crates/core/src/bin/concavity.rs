//! Command-line surface: radius queries, parameter sweeps, sharpness
//! verification reports, disk grids and witness property suites.

use std::io::Write;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;

use concavity::catalog::CatalogFunction;
use concavity::error::Error;
use concavity::function::FunctionSpec;
use concavity::functional::ConcavityParam;
use concavity::least_root;
use concavity::report::{
    fmt_g17, run_radius, run_verify, ClassId, ParamValue, RadiusQuery, VerifyOptions,
    WitnessSummary,
};
use concavity::scan::{empirical_concavity_radius_with, ScanOptions};
use concavity::series::SeriesFunction;
use concavity::witness::{
    close_to_star_distortion_violation, lemma_a_violation, lemma_b_violation,
    random_close_to_star_member, schwarz_pick_violation, starlike_from_p, WitnessP,
};
use concavity::{eval_tf, PhiSpec};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const EXIT_OK: i32 = 0;
const EXIT_USAGE: i32 = 1;
const EXIT_NO_CONVERGENCE: i32 = 2;
const EXIT_VIOLATION: i32 = 3;

const AFTER_HELP: &str = "\
Configuration:
  Flags override keys from the file named by CONCAVITY_CONFIG (lines of
  `key = value`, `#` comments), which override the defaults:
      samples = 2048     circle-scan sample count
      tol     = 1e-10    root-solver bracket tolerance
      seed    = 0        witness generator seed

Exit codes:
  0  success
  1  usage error (malformed input; the diagnostic names the parameter)
  2  non-convergence or evaluation failure
  3  property violation in witness suites";

#[derive(Parser)]
#[command(
    name = "concavity",
    version,
    about = "Concavity radii for families of analytic functions on the unit disk",
    after_help = AFTER_HELP
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct ClassArgs {
    /// Function class: s0n | kab | strongly_starlike | starlike_order | close_to_star
    #[arg(long)]
    class: String,
    /// Gap order n (class s0n)
    #[arg(long)]
    n: Option<u32>,
    /// Parameter alpha (classes kab, starlike_order)
    #[arg(long)]
    alpha: Option<f64>,
    /// Parameter beta (classes kab, strongly_starlike)
    #[arg(long)]
    beta: Option<f64>,
    /// Concavity parameter A in (1, 2]
    #[arg(long = "A")]
    a: f64,
    /// Solver bracket tolerance
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Least-root radius of concavity for a class (one JSON record)
    Radius(ClassArgs),
    /// Radii over parameter and A grids (CSV)
    Scan {
        /// Function class: s0n | kab | strongly_starlike | starlike_order | close_to_star
        #[arg(long)]
        class: String,
        /// Grid of n values, comma separated (class s0n)
        #[arg(long, value_delimiter = ',')]
        n: Vec<u32>,
        /// Grid of alpha values, comma separated
        #[arg(long, value_delimiter = ',')]
        alpha: Vec<f64>,
        /// Grid of beta values, comma separated
        #[arg(long, value_delimiter = ',')]
        beta: Vec<f64>,
        /// Grid of A values, comma separated
        #[arg(long = "A", value_delimiter = ',')]
        a: Vec<f64>,
        /// Solver bracket tolerance
        #[arg(long)]
        tol: Option<f64>,
        /// Output file (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solver radius vs extremal circle scans, with comparison flags
    Verify {
        #[command(flatten)]
        class: ClassArgs,
        /// Circle-scan sample count
        #[arg(long)]
        samples: Option<usize>,
        /// Bisection tolerance for the empirical radius
        #[arg(long, default_value_t = 1e-9)]
        radius_tol: f64,
        /// Moment parameter of the strongly-starlike extremal
        #[arg(long, default_value_t = 1.0)]
        lambda: f64,
        /// Vanishing order of the strongly-starlike extremal
        #[arg(long, default_value_t = 1)]
        monomial_n: u32,
        /// Second parameter of the starlike-order extremal
        #[arg(long, default_value_t = -1.0, allow_hyphen_values = true)]
        b: f64,
    },
    /// Re T over a square grid (CSV of x, y, re_tf)
    Grid {
        /// Function id: identity | generalized_koebe | rotated_koebe |
        /// power_distortion | monomial | schild | close_to_star_extremal
        #[arg(long)]
        function: String,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long)]
        beta: Option<f64>,
        #[arg(long)]
        lambda: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        b: Option<f64>,
        /// Concavity parameter A in (1, 2]
        #[arg(long = "A")]
        a: f64,
        /// Half-width of the grid (must be below 1)
        #[arg(long)]
        r_max: f64,
        /// Points per axis (at most 4096)
        #[arg(long)]
        resolution: usize,
        /// Output file (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Seeded witness property suites (one JSON summary)
    WitnessTest {
        /// Function class: s0n | close_to_star
        #[arg(long)]
        class: String,
        /// Gap order n (class s0n)
        #[arg(long, default_value_t = 1)]
        n: u32,
        /// Number of random witnesses
        #[arg(long, default_value_t = 100)]
        count: u32,
        /// Witness generator seed
        #[arg(long)]
        seed: Option<u64>,
        /// Angular samples per inequality circle
        #[arg(long, default_value_t = 64)]
        circle_samples: usize,
        /// Concavity parameter A for the radius margin
        #[arg(long = "A", default_value_t = 2.0)]
        a: f64,
        /// Truncation order of witness series
        #[arg(long, default_value_t = 64)]
        order: usize,
    },
}

/// Keys accepted in the CONCAVITY_CONFIG file.
#[derive(Default, Clone, Copy)]
struct FileConfig {
    samples: Option<usize>,
    tol: Option<f64>,
    seed: Option<u64>,
}

fn load_config() -> Result<FileConfig, String> {
    let Some(path) = std::env::var_os("CONCAVITY_CONFIG") else {
        return Ok(FileConfig::default());
    };
    let text = std::fs::read_to_string(&path)
        .map_err(|e| format!("cannot read CONCAVITY_CONFIG file {path:?}: {e}"))?;
    let mut config = FileConfig::default();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(format!("config line {}: expected key = value", lineno + 1));
        };
        let key = key.trim();
        let value = value.trim();
        let parse_err = |what: &str| format!("config line {}: bad {what}: {value}", lineno + 1);
        match key {
            "samples" => config.samples = Some(value.parse().map_err(|_| parse_err("samples"))?),
            "tol" => config.tol = Some(value.parse().map_err(|_| parse_err("tol"))?),
            "seed" => config.seed = Some(value.parse().map_err(|_| parse_err("seed"))?),
            _ => return Err(format!("config line {}: unknown key {key}", lineno + 1)),
        }
    }
    Ok(config)
}

fn main() {
    std::process::exit(real_main());
}

fn real_main() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return EXIT_OK;
        }
        Err(e) => {
            eprint!("{e}");
            return EXIT_USAGE;
        }
    };
    let config = match load_config() {
        Ok(c) => c,
        Err(msg) => {
            eprintln!("error: {msg}");
            return EXIT_USAGE;
        }
    };
    match cli.command {
        Command::Radius(args) => cmd_radius(&args, &config),
        Command::Scan {
            class,
            n,
            alpha,
            beta,
            a,
            tol,
            out,
        } => cmd_scan(&class, &n, &alpha, &beta, &a, tol, out.as_deref(), &config),
        Command::Verify {
            class,
            samples,
            radius_tol,
            lambda,
            monomial_n,
            b,
        } => cmd_verify(&class, samples, radius_tol, lambda, monomial_n, b, &config),
        Command::Grid {
            function,
            n,
            alpha,
            beta,
            lambda,
            b,
            a,
            r_max,
            resolution,
            out,
        } => cmd_grid(
            &function,
            n,
            alpha,
            beta,
            lambda,
            b,
            a,
            r_max,
            resolution,
            out.as_deref(),
        ),
        Command::WitnessTest {
            class,
            n,
            count,
            seed,
            circle_samples,
            a,
            order,
        } => cmd_witness_test(&class, n, count, seed, circle_samples, a, order, &config),
    }
}

fn usage_error(msg: &str) -> i32 {
    eprintln!("error: {msg}");
    EXIT_USAGE
}

fn eval_error(e: &Error) -> i32 {
    eprintln!("error: {e}");
    match e {
        Error::InvalidParameter { .. } => EXIT_USAGE,
        _ => EXIT_NO_CONVERGENCE,
    }
}

fn build_query(args: &ClassArgs, config: &FileConfig) -> Result<RadiusQuery, String> {
    let class = ClassId::parse(&args.class)
        .ok_or_else(|| format!("unknown class {:?} (parameter class)", args.class))?;
    let tol = args.tol.or(config.tol).unwrap_or(1e-10);
    let mut params: Vec<(&'static str, ParamValue)> = Vec::new();
    for &name in class.param_names() {
        let value = match name {
            "n" => args
                .n
                .map(ParamValue::Int)
                .ok_or(format!("class {} requires parameter n", class.name()))?,
            "alpha" => args
                .alpha
                .map(ParamValue::Real)
                .ok_or(format!("class {} requires parameter alpha", class.name()))?,
            "beta" => args
                .beta
                .map(ParamValue::Real)
                .ok_or(format!("class {} requires parameter beta", class.name()))?,
            _ => unreachable!(),
        };
        params.push((name, value));
    }
    Ok(RadiusQuery {
        class,
        params,
        a: args.a,
        tol,
    })
}

fn cmd_radius(args: &ClassArgs, config: &FileConfig) -> i32 {
    let query = match build_query(args, config) {
        Ok(q) => q,
        Err(msg) => return usage_error(&msg),
    };
    match run_radius(&query) {
        Ok((record, solver)) => {
            println!("{}", record.to_json());
            if solver.converged {
                EXIT_OK
            } else {
                EXIT_NO_CONVERGENCE
            }
        }
        Err(e) => eval_error(&e),
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_scan(
    class: &str,
    n: &[u32],
    alpha: &[f64],
    beta: &[f64],
    a: &[f64],
    tol: Option<f64>,
    out: Option<&std::path::Path>,
    config: &FileConfig,
) -> i32 {
    let Some(class) = ClassId::parse(class) else {
        return usage_error(&format!("unknown class {class:?} (parameter class)"));
    };
    let tol = tol.or(config.tol).unwrap_or(1e-10);
    if a.is_empty() {
        return usage_error("empty A grid (parameter A)");
    }
    // Sorted grids; rows come out lexicographic in (params..., A).
    let mut a = a.to_vec();
    a.sort_by(f64::total_cmp);
    let param_grid: Vec<Vec<ParamValue>> = match class {
        ClassId::S0n => {
            if n.is_empty() {
                return usage_error("class s0n requires an n grid (parameter n)");
            }
            let mut n = n.to_vec();
            n.sort_unstable();
            n.into_iter().map(|v| vec![ParamValue::Int(v)]).collect()
        }
        ClassId::Kab => {
            if alpha.is_empty() || beta.is_empty() {
                return usage_error("class kab requires alpha and beta grids");
            }
            let (mut al, mut be) = (alpha.to_vec(), beta.to_vec());
            al.sort_by(f64::total_cmp);
            be.sort_by(f64::total_cmp);
            let mut combos = Vec::new();
            for &x in &al {
                for &y in &be {
                    combos.push(vec![ParamValue::Real(x), ParamValue::Real(y)]);
                }
            }
            combos
        }
        ClassId::StronglyStarlike => {
            if beta.is_empty() {
                return usage_error("class strongly_starlike requires a beta grid");
            }
            let mut be = beta.to_vec();
            be.sort_by(f64::total_cmp);
            be.into_iter().map(|v| vec![ParamValue::Real(v)]).collect()
        }
        ClassId::StarlikeOrder => {
            if alpha.is_empty() {
                return usage_error("class starlike_order requires an alpha grid");
            }
            let mut al = alpha.to_vec();
            al.sort_by(f64::total_cmp);
            al.into_iter().map(|v| vec![ParamValue::Real(v)]).collect()
        }
        ClassId::CloseToStar => vec![Vec::new()],
    };

    let mut csv = String::new();
    csv.push_str("class");
    for name in class.param_names() {
        csv.push(',');
        csv.push_str(name);
    }
    csv.push_str(",A,radius,converged,residual,iterations\n");

    let mut failures = 0usize;
    let mut rows = 0usize;
    for params in &param_grid {
        for &av in &a {
            rows += 1;
            let query = RadiusQuery {
                class,
                params: class
                    .param_names()
                    .iter()
                    .zip(params.iter())
                    .map(|(&name, &value)| (name, value))
                    .collect(),
                a: av,
                tol,
            };
            csv.push_str(class.name());
            for value in params {
                csv.push(',');
                match value {
                    ParamValue::Int(v) => csv.push_str(&v.to_string()),
                    ParamValue::Real(v) => csv.push_str(&fmt_g17(*v)),
                }
            }
            csv.push(',');
            csv.push_str(&fmt_g17(av));
            match query.phi_spec().and_then(|phi| least_root(&phi, tol)) {
                Ok(res) => {
                    csv.push(',');
                    csv.push_str(&fmt_g17(res.value));
                    csv.push(',');
                    csv.push_str(if res.converged { "true" } else { "false" });
                    csv.push(',');
                    csv.push_str(&fmt_g17(res.residual));
                    csv.push(',');
                    csv.push_str(&res.iterations.to_string());
                    if !res.converged {
                        failures += 1;
                    }
                }
                Err(_) => {
                    csv.push_str(",,false,,0");
                    failures += 1;
                }
            }
            csv.push('\n');
        }
    }

    if write_output(out, &csv).is_err() {
        return EXIT_NO_CONVERGENCE;
    }
    if failures == rows && rows > 0 {
        EXIT_NO_CONVERGENCE
    } else {
        EXIT_OK
    }
}

fn cmd_verify(
    args: &ClassArgs,
    samples: Option<usize>,
    radius_tol: f64,
    lambda: f64,
    monomial_n: u32,
    b: f64,
    config: &FileConfig,
) -> i32 {
    let query = match build_query(args, config) {
        Ok(q) => q,
        Err(msg) => return usage_error(&msg),
    };
    let opts = VerifyOptions {
        samples: samples.or(config.samples).unwrap_or(2048),
        radius_tol,
        lambda,
        monomial_n,
        b,
    };
    match run_verify(&query, &opts) {
        Ok(records) => {
            for record in &records {
                println!("{}", record.to_json());
            }
            EXIT_OK
        }
        Err(e) => eval_error(&e),
    }
}

fn grid_function(
    id: &str,
    n: Option<u32>,
    alpha: Option<f64>,
    beta: Option<f64>,
    lambda: Option<f64>,
    b: Option<f64>,
) -> Result<FunctionSpec, String> {
    let catalog = match id {
        "identity" => return Ok(SeriesFunction::identity().into()),
        "generalized_koebe" => CatalogFunction::GeneralizedKoebe {
            n: n.ok_or("function generalized_koebe requires parameter n")?,
        },
        "rotated_koebe" => CatalogFunction::RotatedKoebe,
        "power_distortion" => CatalogFunction::PowerDistortion {
            alpha: alpha.ok_or("function power_distortion requires parameter alpha")?,
            beta: beta.ok_or("function power_distortion requires parameter beta")?,
        },
        "monomial" => CatalogFunction::Monomial {
            lambda: lambda.ok_or("function monomial requires parameter lambda")?,
            n: n.ok_or("function monomial requires parameter n")?,
        },
        "schild" => CatalogFunction::Schild {
            alpha: alpha.ok_or("function schild requires parameter alpha")?,
            b: b.ok_or("function schild requires parameter b")?,
        },
        "close_to_star_extremal" => CatalogFunction::CloseToStarExtremal,
        "kp" => return Err("function kp is excluded from grid output (T is for the normalized analytic class)".to_string()),
        other => return Err(format!("unknown function id {other:?} (parameter function)")),
    };
    catalog.validate().map_err(|e| e.to_string())?;
    Ok(catalog.into())
}

#[allow(clippy::too_many_arguments)]
fn cmd_grid(
    function: &str,
    n: Option<u32>,
    alpha: Option<f64>,
    beta: Option<f64>,
    lambda: Option<f64>,
    b: Option<f64>,
    a: f64,
    r_max: f64,
    resolution: usize,
    out: Option<&std::path::Path>,
) -> i32 {
    let f = match grid_function(function, n, alpha, beta, lambda, b) {
        Ok(f) => f,
        Err(msg) => return usage_error(&msg),
    };
    let a = match ConcavityParam::new(a) {
        Ok(a) => a,
        Err(e) => return usage_error(&e.to_string()),
    };
    if !(r_max.is_finite() && 0.0 < r_max && r_max < 1.0) {
        return usage_error("r_max must lie in (0, 1) (parameter r_max)");
    }
    if resolution == 0 || resolution > 4096 {
        return usage_error("resolution must lie in 1..=4096 (parameter resolution)");
    }

    let coordinate = |k: usize| -> f64 {
        if resolution == 1 {
            0.0
        } else {
            -r_max + 2.0 * r_max * k as f64 / (resolution - 1) as f64
        }
    };
    let mut csv = String::with_capacity(resolution * resolution * 48);
    csv.push_str("x,y,re_tf\n");
    for iy in 0..resolution {
        let y = coordinate(iy);
        for ix in 0..resolution {
            let x = coordinate(ix);
            csv.push_str(&fmt_g17(x));
            csv.push(',');
            csv.push_str(&fmt_g17(y));
            csv.push(',');
            let z = Complex64::new(x, y);
            if z.norm() < 1.0 {
                if let Ok(t) = eval_tf(&f, a, z) {
                    csv.push_str(&fmt_g17(t.re));
                }
                // Poles, cuts and out-of-validity points stay empty.
            }
            csv.push('\n');
        }
    }
    if write_output(out, &csv).is_err() {
        return EXIT_NO_CONVERGENCE;
    }
    EXIT_OK
}

#[allow(clippy::too_many_arguments)]
fn cmd_witness_test(
    class: &str,
    n: u32,
    count: u32,
    seed: Option<u64>,
    circle_samples: usize,
    a: f64,
    order: usize,
    config: &FileConfig,
) -> i32 {
    let Some(class) = ClassId::parse(class) else {
        return usage_error(&format!("unknown class {class:?} (parameter class)"));
    };
    if !matches!(class, ClassId::S0n | ClassId::CloseToStar) {
        return usage_error("witness suites exist for classes s0n and close_to_star");
    }
    if count == 0 {
        return usage_error("count must be at least 1 (parameter count)");
    }
    if n == 0 {
        return usage_error("n must be a positive integer (parameter n)");
    }
    let seed = seed.or(config.seed).unwrap_or(0);
    let a = match ConcavityParam::new(a) {
        Ok(a) => a,
        Err(e) => return usage_error(&e.to_string()),
    };
    match run_witness_suites(class, n, count, seed, circle_samples, a, order) {
        Ok(summary) => {
            println!("{}", summary.to_json());
            if summary.violations == 0 && summary.min_margin >= -1e-6 {
                EXIT_OK
            } else {
                EXIT_VIOLATION
            }
        }
        Err(e) => eval_error(&e),
    }
}

fn run_witness_suites(
    class: ClassId,
    n: u32,
    count: u32,
    seed: u64,
    circle_samples: usize,
    a: ConcavityParam,
    order: usize,
) -> Result<WitnessSummary, Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut violations = 0u32;
    let mut max_violation = f64::NEG_INFINITY;
    let mut min_margin = f64::INFINITY;
    let mut suite_maxima: Vec<(&'static str, f64)> = Vec::new();
    let bump = |suite_max: &mut f64, v: f64, violations: &mut u32| {
        if v > 1e-9 {
            *violations += 1;
        }
        *suite_max = suite_max.max(v);
    };

    let scan_opts = ScanOptions {
        samples: 512,
        tol: 1e-7,
        ceiling: None,
    };

    match class {
        ClassId::S0n => {
            let phi = PhiSpec::phi1(n, a)?;
            let solver = least_root(&phi, 1e-10)?;
            let rs = [0.25, 0.5, 0.75, 0.9];
            let (mut max_a, mut max_b, mut max_sp) =
                (f64::NEG_INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
            for _ in 0..count {
                let witness = WitnessP::random(&mut rng, n, 1.0, -1.0)?;
                for &r in &rs {
                    let va = lemma_a_violation(&witness, n, r, circle_samples)?;
                    bump(&mut max_a, va, &mut violations);
                    let vb = lemma_b_violation(&witness, n, r, circle_samples)?;
                    bump(&mut max_b, vb, &mut violations);
                }
                for _ in 0..8 {
                    let z = Complex64::from_polar(
                        0.95 * rng.gen::<f64>().sqrt(),
                        rng.gen::<f64>() * std::f64::consts::TAU,
                    );
                    let vsp = schwarz_pick_violation(&witness.schwarz, z)?;
                    bump(&mut max_sp, vsp, &mut violations);
                }
                let member = starlike_from_p(&witness.p_minus_one_series(order), order)?;
                let f: FunctionSpec = member.into();
                let res = empirical_concavity_radius_with(&f, a, scan_opts)?;
                min_margin = min_margin.min(res.value - solver.value);
            }
            max_violation = max_a.max(max_b).max(max_sp);
            suite_maxima.push(("lemma_a", max_a));
            suite_maxima.push(("lemma_b", max_b));
            suite_maxima.push(("schwarz_pick", max_sp));
            Ok(WitnessSummary {
                class,
                n,
                count,
                seed,
                violations,
                max_violation,
                min_margin,
                solver_radius: solver.value,
                suite_maxima,
            })
        }
        ClassId::CloseToStar => {
            let phi = PhiSpec::phi6(a);
            let solver = least_root(&phi, 1e-10)?;
            let rs = [0.1, 0.2, 0.3, 0.4];
            let mut max_d = f64::NEG_INFINITY;
            for _ in 0..count {
                let member = random_close_to_star_member(&mut rng, order)?;
                let f: FunctionSpec = member.into();
                for &r in &rs {
                    let vd = close_to_star_distortion_violation(&f, r, circle_samples)?;
                    bump(&mut max_d, vd, &mut violations);
                }
                let res = empirical_concavity_radius_with(&f, a, scan_opts)?;
                min_margin = min_margin.min(res.value - solver.value);
            }
            max_violation = max_violation.max(max_d);
            suite_maxima.push(("distortion", max_d));
            Ok(WitnessSummary {
                class,
                n,
                count,
                seed,
                violations,
                max_violation,
                min_margin,
                solver_radius: solver.value,
                suite_maxima,
            })
        }
        _ => unreachable!(),
    }
}

fn write_output(path: Option<&std::path::Path>, text: &str) -> std::io::Result<()> {
    match path {
        Some(p) => {
            if let Err(e) = std::fs::write(p, text) {
                eprintln!("error: cannot write {p:?}: {e}");
                return Err(e);
            }
            Ok(())
        }
        None => std::io::stdout().write_all(text.as_bytes()),
    }
}
