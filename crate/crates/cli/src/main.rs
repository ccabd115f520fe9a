use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::Serialize;

use sternct::cache::{CacheDir, CacheKind};
use sternct::holonomic::{derive_rec_u, derive_rec_v, preload};
use sternct::omega_gf::{
    build_coeff_table, h_support_ok, omega_gf_with, omega_series, partial_fraction_residual,
    u_recurrence_mismatch, v_recurrence_mismatch, x_quadratic_residual,
};
use sternct::stern::{nu_def, omega_def, u_alpha_def, OMEGA_SMALL, ORACLE_CUTOFF};
use sternct::transfer::{choose_split, omega_transfer};
use sternct::{nu, Error};

/// Above this the transfer method needs `--allow-large`.
const TRANSFER_ADVISORY: u64 = 2000;

#[derive(Parser)]
#[command(
    name = "sternct",
    version,
    about = "Exact sums of squared coefficients of Stern-like products"
)]
struct Cli {
    /// Print a human-readable report instead of the bare value.
    #[arg(long, global = true)]
    verbose: bool,
    /// Print the run report as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Cap on worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[arg(
        long,
        global = true,
        env = "STERNCT_CACHE_DIR",
        default_value = ".sternct-cache"
    )]
    cache_dir: PathBuf,
    /// Neither read nor write the cache.
    #[arg(long, global = true)]
    no_cache: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// nu(n), the sum of squared coefficients of F_n.
    Nu {
        #[arg(long)]
        n: u64,
        #[arg(long, value_enum, default_value_t = NuMethod::Gf)]
        method: NuMethod,
    },
    /// omega(n), the sum of squared coefficients of G_n.
    Omega {
        #[arg(long)]
        n: u64,
        #[arg(long, value_enum)]
        method: Option<OmegaMethod>,
        /// Drop x-powers that can no longer reach the constant term.
        #[arg(long)]
        prune: bool,
        /// Write the value to this file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Run the transfer method beyond its advisory bound.
        #[arg(long)]
        allow_large: bool,
    },
    /// Cross-validation suites; exit status 1 on the first failure.
    Verify {
        #[arg(long, default_value_t = 20)]
        max_n: u64,
        #[arg(long, value_enum, value_delimiter = ',', default_value = "all")]
        suites: Vec<Suite>,
    },
    /// u_alpha(n) = sum_k prod_i a(n, k+i)^alpha_i over the row of F_n.
    Ualpha {
        /// Comma-separated exponents, e.g. `2` or `2,1`.
        #[arg(long, value_delimiter = ',', required = true)]
        alpha: Vec<u32>,
        #[arg(long)]
        n: u32,
    },
    /// Inspect or fill the cache directory.
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

#[derive(Subcommand)]
enum CacheAction {
    List,
    Clear,
    /// Precompute the recurrences and the coefficient table for a target.
    Warm {
        #[arg(long)]
        n: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum NuMethod {
    Gf,
    Definition,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OmegaMethod {
    Definition,
    Transfer,
    Gf,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Oracle,
    Cross,
    Series,
    All,
}

#[derive(Serialize)]
struct RunReport {
    target: &'static str,
    n: u64,
    method: String,
    digits: usize,
    value: String,
    elapsed_ms: u128,
    cache_hits: u32,
}

/// Bad input or a method bound; maps to exit status 2.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    Usage(msg.into()).into()
}

fn library(e: Error) -> anyhow::Error {
    match e {
        Error::BelowMinimum { .. }
        | Error::SplitConstraint { .. }
        | Error::InvalidArgument(_)
        | Error::SeedTooLarge(_) => usage(e.to_string()),
        other => other.into(),
    }
}

fn digits(v: &BigInt) -> usize {
    v.magnitude().to_string().len()
}

struct Ctx {
    cache: Option<CacheDir>,
    hits: u32,
}

impl Ctx {
    /// Loads cached recurrences into the library, or derives and stores them.
    fn recurrences(&mut self) -> anyhow::Result<()> {
        let Some(cache) = &self.cache else {
            return Ok(());
        };
        let u = cache.load_recurrence(CacheKind::RecU)?;
        let v = cache.load_recurrence(CacheKind::RecV)?;
        let (had_u, had_v) = (u.is_some(), v.is_some());
        let (took_u, took_v) = preload(u, v);
        self.hits += took_u as u32 + took_v as u32;
        if !had_u {
            cache.store_recurrence(CacheKind::RecU, derive_rec_u()?)?;
        }
        if !had_v {
            cache.store_recurrence(CacheKind::RecV, derive_rec_v()?)?;
        }
        Ok(())
    }

    fn omega_gf(&mut self, n: u64) -> anyhow::Result<BigInt> {
        let split = choose_split(n).map_err(library)?;
        self.recurrences()?;
        let table = match &self.cache {
            Some(cache) => match cache.load_coeff_table(split.n, split.m)? {
                Some(t) => {
                    self.hits += 1;
                    t
                }
                None => {
                    let t = build_coeff_table(split.n, split.m)?;
                    cache.store_coeff_table(&t)?;
                    t
                }
            },
            None => build_coeff_table(split.n, split.m)?,
        };
        Ok(omega_gf_with(n, Some(table)).map_err(library)?.value)
    }
}

fn default_method(n: u64) -> OmegaMethod {
    match n {
        0..=20 => OmegaMethod::Definition,
        21..=300 => OmegaMethod::Transfer,
        _ => OmegaMethod::Gf,
    }
}

fn oracle_n(n: u64) -> anyhow::Result<u32> {
    if n > ORACLE_CUTOFF as u64 {
        return Err(usage(format!(
            "n = {n} exceeds the definition cutoff {ORACLE_CUTOFF}"
        )));
    }
    Ok(n as u32)
}

fn emit(cli: &Cli, report: &RunReport, out: Option<&PathBuf>) -> anyhow::Result<()> {
    if let Some(path) = out {
        std::fs::write(path, format!("{}\n", report.value))
            .with_context(|| format!("writing {}", path.display()))?;
    }
    if cli.json {
        println!("{}", serde_json::to_string(report)?);
    } else if cli.verbose {
        println!("target:     {}", report.target);
        println!("n:          {}", report.n);
        println!("method:     {}", report.method);
        println!("digits:     {}", report.digits);
        println!("elapsed:    {} ms", report.elapsed_ms);
        println!("cache hits: {}", report.cache_hits);
        if out.is_none() {
            println!("value:      {}", report.value);
        }
    } else if out.is_none() {
        println!("{}", report.value);
    }
    Ok(())
}

fn method_name(m: impl ValueEnum) -> String {
    m.to_possible_value()
        .map(|p| p.get_name().to_string())
        .unwrap_or_default()
}

fn run(cli: &Cli) -> anyhow::Result<bool> {
    if let Some(k) = cli.threads {
        if k == 0 {
            return Err(usage("--threads must be at least 1"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build_global()?;
    }
    let mut ctx = Ctx {
        cache: (!cli.no_cache).then(|| CacheDir::new(&cli.cache_dir)),
        hits: 0,
    };
    let start = Instant::now();
    match &cli.cmd {
        Cmd::Nu { n, method } => {
            let value = match method {
                NuMethod::Gf => nu::nu_fast(*n),
                NuMethod::Definition => nu_def(oracle_n(*n)?),
            };
            let report = report("nu", *n, method_name(*method), &value, start, 0);
            emit(cli, &report, None)?;
        }
        Cmd::Omega {
            n,
            method,
            prune,
            out,
            allow_large,
        } => {
            let method = method.unwrap_or_else(|| default_method(*n));
            let value = match method {
                OmegaMethod::Definition => omega_def(oracle_n(*n)?),
                OmegaMethod::Transfer => {
                    if *n > TRANSFER_ADVISORY && !allow_large {
                        return Err(usage(format!(
                            "transfer above n = {TRANSFER_ADVISORY} is slow; pass --allow-large or use --method gf"
                        )));
                    }
                    omega_transfer(*n, *prune).map_err(library)?
                }
                OmegaMethod::Gf => ctx.omega_gf(*n)?,
            };
            let report = report("omega", *n, method_name(method), &value, start, ctx.hits);
            emit(cli, &report, out.as_ref())?;
        }
        Cmd::Ualpha { alpha, n } => {
            if alpha.iter().all(|&a| a == 0) {
                return Err(usage("alpha needs a positive entry"));
            }
            let value = u_alpha_def(alpha, oracle_n(*n as u64)?);
            let name = alpha
                .iter()
                .map(u32::to_string)
                .collect::<Vec<_>>()
                .join(",");
            let report = report(
                "ualpha",
                *n as u64,
                format!("definition[{name}]"),
                &value,
                start,
                0,
            );
            emit(cli, &report, None)?;
        }
        Cmd::Verify { max_n, suites } => return verify(*max_n, suites),
        Cmd::Cache { action } => {
            let cache = CacheDir::new(&cli.cache_dir);
            match action {
                CacheAction::List => {
                    for (name, h) in cache.list()? {
                        println!("{name}\t{}\t{}\t{}", h.kind.tag(), h.n_seed, h.m);
                    }
                }
                CacheAction::Clear => println!("removed {} files", cache.clear()?),
                CacheAction::Warm { n } => {
                    let mut ctx = Ctx {
                        cache: Some(cache),
                        hits: 0,
                    };
                    ctx.recurrences()?;
                    let split = choose_split(*n).map_err(library)?;
                    let c = ctx.cache.as_ref().unwrap();
                    if c.load_coeff_table(split.n, split.m)?.is_none() {
                        c.store_coeff_table(&build_coeff_table(split.n, split.m)?)?;
                    }
                    println!(
                        "{}",
                        c.path(CacheKind::CoeffTable, split.n, split.m).display()
                    );
                }
            }
        }
    }
    Ok(true)
}

fn report(
    target: &'static str,
    n: u64,
    method: String,
    value: &BigInt,
    start: Instant,
    hits: u32,
) -> RunReport {
    RunReport {
        target,
        n,
        method,
        digits: digits(value),
        value: value.to_string(),
        elapsed_ms: start.elapsed().as_millis(),
        cache_hits: hits,
    }
}

/// One named check; `Err` carries the first failing case.
type Check = (String, Box<dyn Fn() -> anyhow::Result<Result<(), String>>>);

fn checks(max_n: u64, suites: &[Suite]) -> Vec<Check> {
    let on = |s: Suite| suites.contains(&s) || suites.contains(&Suite::All);
    let mut out: Vec<Check> = Vec::new();
    if on(Suite::Oracle) {
        let top = max_n.min(20);
        out.push((
            format!("oracle: omega_def(n) = listed value, n <= {top}"),
            Box::new(move || {
                Ok((0..=top)
                    .find(|&n| omega_def(n as u32) != BigInt::from(OMEGA_SMALL[n as usize]))
                    .map_or(Ok(()), |n| Err(format!("n = {n}"))))
            }),
        ));
        let top = max_n.min(20);
        out.push((
            format!("oracle: nu_def(n) = nu_fast(n), n <= {top}"),
            Box::new(move || {
                Ok((0..=top)
                    .find(|&n| nu_def(n as u32) != nu::nu_fast(n))
                    .map_or(Ok(()), |n| Err(format!("n = {n}"))))
            }),
        ));
    }
    if on(Suite::Cross) {
        let top = max_n.min(TRANSFER_ADVISORY);
        out.push((
            format!("cross: transfer = definition = gf, 2 <= n <= {top}"),
            Box::new(move || {
                for n in 2..=top {
                    let tr = omega_transfer(n, true)?;
                    if n <= 20 && tr != omega_def(n as u32) {
                        return Ok(Err(format!("definition vs transfer, n = {n}")));
                    }
                    if tr != omega_transfer(n, false)? {
                        return Ok(Err(format!("pruned vs unpruned transfer, n = {n}")));
                    }
                    if tr != omega_gf_with(n, None)?.value {
                        return Ok(Err(format!("transfer vs gf, n = {n}")));
                    }
                }
                Ok(Ok(()))
            }),
        ));
        let top = max_n.min(30);
        out.push((
            format!("cross: series expansion = transfer, 2 <= n <= {top}"),
            Box::new(move || {
                for n in 2..=top {
                    if omega_series(n)? != omega_transfer(n, false)? {
                        return Ok(Err(format!("n = {n}")));
                    }
                }
                Ok(Ok(()))
            }),
        ));
    }
    if on(Suite::Series) {
        out.push((
            "series: X(t) solves its quadratic to order 200".into(),
            Box::new(|| {
                Ok(if x_quadratic_residual(200)?.is_zero() {
                    Ok(())
                } else {
                    Err("nonzero residual".into())
                })
            }),
        ));
        out.push((
            "series: u recurrence = closed form, j in {0,-1,-2,-5,-10,-20}, k <= 100".into(),
            Box::new(|| {
                for j in [0, -1, -2, -5, -10, -20] {
                    if let Some(k) = u_recurrence_mismatch(j, 100)? {
                        return Ok(Err(format!("j = {j}, k = {k}")));
                    }
                }
                Ok(Ok(()))
            }),
        ));
        out.push((
            "series: v recurrence = closed form, k <= 100".into(),
            Box::new(
                || Ok(v_recurrence_mismatch(100)?.map_or(Ok(()), |k| Err(format!("k = {k}")))),
            ),
        ));
        out.push((
            "series: partial fractions reconstruct H to order 50".into(),
            Box::new(|| {
                let bad = partial_fraction_residual(50)?
                    .iter()
                    .position(|s| !s.is_zero());
                Ok(bad.map_or(Ok(()), |i| Err(format!("x^{i} coefficient"))))
            }),
        ));
        out.push((
            "series: h_n support in [-n, n] and symmetric, n <= 200".into(),
            Box::new(|| Ok(h_support_ok(200)?.map_err(|n| format!("n = {n}")))),
        ));
    }
    out
}

fn verify(max_n: u64, suites: &[Suite]) -> anyhow::Result<bool> {
    for (name, check) in checks(max_n, suites) {
        let outcome = check()?;
        match outcome {
            Ok(()) => println!("PASS  {name}"),
            Err(case) => {
                println!("FAIL  {name}: first failure at {case}");
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<Usage>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
