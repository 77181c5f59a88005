mod gf;

use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use parkfn::distributions::{self as dist, LimitReport, Pmf, UrLaw};
use parkfn::exactalg::json::to_json;
use parkfn::oracle::Exec;
use parkfn::verify::{self, Params, Suite};
use parkfn::ParkError;

use gf::{Family, Method, Request};

/// Exact enumeration of parking functions and labelled forests.
#[derive(Parser)]
#[command(name = "parkfn", version)]
struct Cli {
    /// Walk preference spaces on the calling thread only.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print a generating polynomial.
    Gf(GfArgs),
    /// Run identity suites; exits 1 if any check fails.
    Verify(VerifyArgs),
    /// Print exact laws or limit distances as CSV.
    Dist(DistArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct GfArgs {
    #[arg(long, value_enum)]
    family: Family,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    /// Comma-separated u-vector, e.g. 1,2,4.
    #[arg(long, value_delimiter = ',')]
    u: Option<Vec<usize>>,
    /// Variable bindings, e.g. x=unl,y=dis. Statistics: unl lucky dis des
    /// rlm rep lel one nlel sameS.
    #[arg(long, default_value = "")]
    stats: String,
    #[arg(long, value_enum, default_value = "oracle")]
    method: Method,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Weight by branch probabilities under the probabilistic protocol.
    #[arg(long)]
    prob: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite name, or `all`.
    suite: String,
    /// Largest size the suite enumerates.
    #[arg(long = "max-n")]
    max_n: Option<usize>,
    /// Seed for sampled u-vectors.
    #[arg(long, default_value_t = 20)]
    seed: u64,
    /// Print every check, not only failures.
    #[arg(long)]
    verbose: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum PmfKind {
    /// Displacement of car i+1 given PF(m, n).
    Displacement,
    /// Joint unluckiness and repeats law over PF_m(r, k).
    Ur,
    /// Joint unluckiness and repeats law over prime parking functions.
    PpfUr,
}

#[derive(Args)]
struct DistArgs {
    #[arg(long, value_enum, conflicts_with = "limits")]
    pmf: Option<PmfKind>,
    /// Distances to the Poisson and normal limits, one row per --m.
    #[arg(long)]
    limits: bool,
    /// Use prime parking functions of length --m for --limits.
    #[arg(long, requires = "limits")]
    ppf: bool,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    i: Option<usize>,
    #[arg(long)]
    m: Vec<usize>,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    c: Option<usize>,
}

enum Failure {
    Usage(String),
    Resource(String),
    Identity,
    Io(io::Error),
}

impl From<ParkError> for Failure {
    fn from(e: ParkError) -> Self {
        match e {
            ParkError::TooLarge { .. } => Failure::Resource(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Io(io::Error::other(e))
    }
}

fn ratio(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn need(v: Option<usize>, flag: &str) -> Result<usize, Failure> {
    v.ok_or_else(|| Failure::Usage(format!("--{flag} is required")))
}

fn cmd_gf(a: GfArgs, exec: Exec) -> Result<(), Failure> {
    let req = Request {
        family: a.family,
        n: a.n,
        m: a.m,
        r: a.r,
        k: a.k,
        u: a.u,
        stats: gf::parse_stats(&a.stats)?,
        method: a.method,
        prob: a.prob,
        exec,
    };
    let poly = gf::compute(&req)?;
    let text = match a.format {
        Format::Json => to_json(&poly),
        Format::Text => poly.to_string(),
    };
    writeln!(io::stdout().lock(), "{text}")?;
    Ok(())
}

fn cmd_verify(a: VerifyArgs, exec: Exec) -> Result<(), Failure> {
    let suites: Vec<Suite> = if a.suite == "all" { Suite::ALL.to_vec() } else { vec![a.suite.parse()?] };
    let params = Params { max: a.max_n, exec, seed: a.seed };
    let mut out = io::stdout().lock();
    let mut ok = true;
    for s in suites {
        let rep = verify::run(s, &params)?;
        for c in &rep.checks {
            if !c.pass {
                writeln!(out, "FAIL {s}: {} {}", c.label, c.detail)?;
            } else if a.verbose {
                writeln!(out, "pass {s}: {}", c.label)?;
            }
        }
        let verdict = if rep.passed() { "PASS" } else { "FAIL" };
        writeln!(out, "{verdict} {s}: {}/{} checks", rep.pass_count(), rep.checks.len())?;
        ok &= rep.passed();
    }
    if ok {
        Ok(())
    } else {
        Err(Failure::Identity)
    }
}

fn write_pmf(w: &mut csv::Writer<io::StdoutLock>, pmf: &Pmf) -> Result<(), Failure> {
    w.write_record(["k", "probability"])?;
    for (k, p) in pmf.iter() {
        w.write_record([k.to_string(), ratio(p)])?;
    }
    Ok(())
}

fn write_ur(w: &mut csv::Writer<io::StdoutLock>, law: &UrLaw) -> Result<(), Failure> {
    w.write_record(["u", "r", "probability"])?;
    for (&(u, r), p) in law.probs() {
        w.write_record([u.to_string(), r.to_string(), ratio(p)])?;
    }
    Ok(())
}

fn write_limits(w: &mut csv::Writer<io::StdoutLock>, rows: &[LimitReport]) -> Result<(), Failure> {
    w.write_record(["m", "k", "lambda", "tv_r", "tv_l", "ks_u"])?;
    for r in rows {
        w.write_record([
            r.m.to_string(),
            r.k.to_string(),
            format!("{}", r.lambda),
            format!("{:.12}", r.tv_r),
            format!("{:.12}", r.tv_l),
            format!("{:.12}", r.ks_u),
        ])?;
    }
    Ok(())
}

fn cmd_dist(a: DistArgs) -> Result<(), Failure> {
    let mut w = csv::Writer::from_writer(io::stdout().lock());
    if a.limits {
        if a.m.is_empty() {
            return Err(Failure::Usage("--limits needs at least one --m".into()));
        }
        let rows = a
            .m
            .iter()
            .map(|&m| {
                if a.ppf {
                    dist::ppf_limit_checks(m)
                } else {
                    dist::limit_checks(m, a.c.unwrap_or(0), a.r.unwrap_or(1))
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        write_limits(&mut w, &rows)?;
    } else {
        let single_m = || match a.m.as_slice() {
            [m] => Ok(*m),
            _ => Err(Failure::Usage("exactly one --m is required".into())),
        };
        match a.pmf {
            Some(PmfKind::Displacement) => {
                write_pmf(&mut w, &dist::displacement_pmf(need(a.n, "n")?, need(a.i, "i")?)?)?
            }
            Some(PmfKind::Ur) => {
                write_ur(&mut w, &dist::exact_ur_law(single_m()?, need(a.r, "r")?, need(a.k, "k")?)?)?
            }
            Some(PmfKind::PpfUr) => write_ur(&mut w, &dist::ppf_ur_law(need(a.n, "n")?)?)?,
            None => return Err(Failure::Usage("one of --pmf or --limits is required".into())),
        }
    }
    w.flush()?;
    Ok(())
}

fn configure_threads() -> Result<(), Failure> {
    if let Ok(v) = std::env::var("PARKFN_THREADS") {
        let n: usize = v
            .parse()
            .map_err(|_| Failure::Usage(format!("PARKFN_THREADS must be a positive integer, got {v:?}")))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure::Usage(e.to_string()))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let exec = if cli.sequential { Exec::Sequential } else { Exec::Parallel };
    let result = configure_threads().and_then(|()| match cli.cmd {
        Cmd::Gf(a) => cmd_gf(a, exec),
        Cmd::Verify(a) => cmd_verify(a, exec),
        Cmd::Dist(a) => cmd_dist(a),
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Identity) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Resource(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
        Err(Failure::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
