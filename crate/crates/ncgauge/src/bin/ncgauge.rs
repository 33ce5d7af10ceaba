use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use ncgauge::ambiguity::obstruction_class;
use ncgauge::dga::AElement;
use ncgauge::io::{parse_polynomial, read_morphism, write_morphism, SessionConfig};
use ncgauge::solver::{extend, first_component, mc_residual, verify_component_equations, Morphism};
use ncgauge::sw::{evaluate_gauge_field, evaluate_gauge_param, GaugeConfig};
use ncgauge::{Error, VerificationReport};

#[derive(Parser)]
#[command(
    name = "ncgauge",
    version,
    about = "Exact Seiberg-Witten maps from A-infinity morphisms"
)]
struct Cli {
    /// Worker threads for parallel verification (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve the recursion and write the morphism.
    Solve(SolveArgs),
    /// Check a morphism file: component equations, MC residual, gauge conditions.
    Verify(VerifyArgs),
    /// Evaluate the map on a gauge field and parameter.
    Apply(ApplyArgs),
    /// First order at which two morphisms differ and the class there.
    Compare { first: PathBuf, second: PathBuf },
}

#[derive(Args)]
struct SolveArgs {
    /// Session configuration file; replaces the individual flags.
    #[arg(long, conflicts_with_all = ["n", "theta", "theta_prime", "order", "degree"])]
    config: Option<PathBuf>,
    #[arg(long)]
    n: Option<usize>,
    /// `0`, `sym`, `sym:PREFIX` or rows `a,b;c,d`.
    #[arg(long, default_value = "0")]
    theta: String,
    #[arg(long = "theta-prime", default_value = "sym")]
    theta_prime: String,
    #[arg(long = "L", default_value_t = 2)]
    order: usize,
    #[arg(long = "D", default_value_t = 2)]
    degree: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct VerifyArgs {
    file: PathBuf,
    /// Largest x-degree of basis monomials (default: min(D, 2)).
    #[arg(long)]
    basis: Option<u32>,
    /// Random gauge configurations for the gauge conditions.
    #[arg(long, default_value_t = 5)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct ApplyArgs {
    file: PathBuf,
    /// Components of A separated by `;`, e.g. `x2^2; 0`.
    #[arg(long)]
    field: String,
    #[arg(long, default_value = "0")]
    lambda: String,
    /// Truncation order (default: all stored orders).
    #[arg(long = "L")]
    order: Option<usize>,
}

enum Failure {
    Verification,
    Usage(Error),
    Solver(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::CocycleAssertion { .. } | Error::NonNormal { .. } | Error::NotUnital => {
                Failure::Solver(e)
            }
            e => Failure::Usage(e),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(j) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let result = match &cli.command {
        Command::Solve(a) => solve(a, cli.json),
        Command::Verify(a) => verify(a, cli.json),
        Command::Apply(a) => apply(a, cli.json),
        Command::Compare { first, second } => compare(first, second, cli.json),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(Failure::Solver(e)) => {
            eprintln!("solver assertion failed: {e}");
            ExitCode::from(3)
        }
    }
}

fn solve(a: &SolveArgs, as_json: bool) -> Result<(), Failure> {
    let config = match &a.config {
        Some(path) => SessionConfig::load(path)?,
        None => {
            let n =
                a.n.ok_or_else(|| Error::Config("--n is required without --config".into()))?;
            SessionConfig::new(n, &a.theta, &a.theta_prime, a.order, a.degree, a.seed)
        }
    };
    let setting = config.setting()?;
    let order = setting.order;
    let start = Instant::now();
    let mut f = first_component(setting)?;
    let mut timings = vec![start.elapsed().as_secs_f64()];
    for l in 2..=order {
        let t = Instant::now();
        extend(&mut f, l)?;
        timings.push(t.elapsed().as_secs_f64());
    }
    write_morphism(&f, &a.out)?;
    let counts = f.term_counts();
    if as_json {
        let orders: Vec<_> = counts
            .iter()
            .zip(&timings)
            .map(|((l, p, d), t)| json!({"order": l, "prime_terms": p, "doubleprime_terms": d, "seconds": t}))
            .collect();
        println!("{}", json!({"out": a.out, "orders": orders}));
    } else {
        for ((l, p, d), t) in counts.iter().zip(&timings) {
            println!("order {l}: {p} prime terms, {d} doubleprime terms, {t:.3} s");
        }
        println!("wrote {}", a.out.display());
    }
    Ok(())
}

fn verify(a: &VerifyArgs, as_json: bool) -> Result<(), Failure> {
    let f = read_morphism(&a.file)?;
    let s = &f.setting;
    let basis = a.basis.unwrap_or(s.degree_bound.min(2));
    let mut reports: Vec<VerificationReport> = Vec::new();

    let mut structure = VerificationReport::new("unital and normal");
    structure.instances = f.order();
    if !f.is_unital() {
        structure.fail("f''_1 does not map 1 to 1".into());
    }
    if !f.is_normal_above_one() {
        structure.fail("a component of order ≥ 2 does not vanish on the unit".into());
    }
    reports.push(structure);

    for l in 1..=f.order() {
        reports.push(verify_component_equations(&f, l, basis)?);
    }

    let mut mc = VerificationReport::new("mc residual");
    for (i, r) in mc_residual(&f).iter().enumerate() {
        mc.instances += 1;
        mc.degrees_checked.push(i as u32 + 1);
        if !r.is_zero() {
            mc.fail(format!(
                "order {}: {} nonzero terms, first {}",
                i + 1,
                r.num_terms(),
                first_line(&r.render(&s.symbols))
            ));
        }
    }
    reports.push(mc);

    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let field_degree = s.degree_bound.min(2);
    let mut sw1 = VerificationReport::new("sw1");
    let mut sw2 = VerificationReport::new("sw2");
    for _ in 0..a.samples {
        let g = GaugeConfig::random(s.n, field_degree, &mut rng);
        let (r1, r2) = g.check(&f, f.order())?;
        merge(&mut sw1, r1);
        merge(&mut sw2, r2);
    }
    if a.samples > 0 {
        reports.push(sw1);
        reports.push(sw2);
    }

    let pass = reports.iter().all(|r| r.pass);
    if as_json {
        println!(
            "{}",
            json!({"file": a.file, "basis_degree": basis, "pass": pass, "reports": reports})
        );
    } else {
        for r in &reports {
            println!("{}", r.summary());
        }
        println!(
            "{}",
            if pass {
                "all checks passed"
            } else {
                "verification FAILED"
            }
        );
    }
    if pass {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn first_line(s: &str) -> &str {
    s.lines().next().unwrap_or("")
}

fn merge(total: &mut VerificationReport, r: VerificationReport) {
    total.instances += r.instances;
    for d in r.degrees_checked {
        if !total.degrees_checked.contains(&d) {
            total.degrees_checked.push(d);
        }
    }
    if let Some(w) = r.witness {
        total.fail(w);
    }
}

fn apply(a: &ApplyArgs, as_json: bool) -> Result<(), Failure> {
    let f: Morphism = read_morphism(&a.file)?;
    let s = &f.setting;
    let parts: Vec<&str> = a.field.split(';').collect();
    if parts.len() != s.n {
        return Err(Error::DimensionMismatch {
            expected: s.n,
            found: parts.len(),
        }
        .into());
    }
    let field = AElement::one_form(
        parts
            .iter()
            .map(|p| parse_polynomial(p, s.n, &s.symbols))
            .collect::<Result<_, _>>()?,
    );
    let lambda = parse_polynomial(&a.lambda, s.n, &s.symbols)?;
    let order = a.order.unwrap_or(f.order());
    let ahat = evaluate_gauge_field(&f, &field, order)?;
    let lhat = evaluate_gauge_param(&f, &lambda, &field, order)?;
    let comps: Vec<String> = (0..s.n)
        .map(|i| ahat.component(i + 1).render(&s.symbols))
        .collect();
    let lrender = lhat.render(&s.symbols);
    if as_json {
        println!(
            "{}",
            json!({"order": order, "A_hat": comps, "lambda_hat": lrender})
        );
    } else {
        for (i, c) in comps.iter().enumerate() {
            println!("A_hat_{} = {c}", i + 1);
        }
        println!("lambda_hat = {lrender}");
    }
    Ok(())
}

fn compare(first: &Path, second: &Path, as_json: bool) -> Result<(), Failure> {
    let f = read_morphism(first)?;
    let g = read_morphism(second)?;
    let report = obstruction_class(&f, &g)?;
    let summary = report.summary(&f);
    if as_json {
        println!(
            "{}",
            serde_json::to_string(&summary).expect("plain data serializes")
        );
    } else {
        match summary.order {
            None => println!("identical"),
            Some(l) if summary.is_zero => {
                println!("first difference at order {l}: exact, class is zero")
            }
            Some(l) => println!(
                "first difference at order {l}: nonzero class, representative\n{}",
                summary.representative
            ),
        }
    }
    Ok(())
}
