mod output;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::json;

use output::{aligned, Format, Report};
use pgc_core::census::{census_report, CensusParams, ExplicitMode};
use pgc_core::fplinalg::{module_type, FpMatrix, IrreducibleSieve, Partition};
use pgc_core::freelie::{layer_ranks, lyndon_words, standard_bracketing, LayerModule};
use pgc_core::qcomb::{galois, gauss, theta_constants};
use pgc_core::serde_util::format_rational;
use pgc_core::submodcount::{
    bound_checks, brute_invariant_subspaces, count_by_type, fixed_subspace_count_with, layer_bound_check, BoundKind,
    TypePair,
};
use pgc_core::verify::{run_suite, Suite};
use pgc_core::{Budget, Error};

const EXIT_COMPUTE: u8 = 1;
const EXIT_VERIFY: u8 = 2;
const EXIT_USAGE: u8 = 64;

#[derive(Parser, Debug)]
#[command(name = "pgc", version, about = "Counting p-groups of lower p-length two and their layer censuses")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, value_enum, global = true, default_value = "text")]
    format: Format,

    /// Suppress the timestamp header on stderr.
    #[arg(long, global = true)]
    no_header: bool,

    /// Budget preset (small, default, large) and/or key=value overrides.
    #[arg(long, global = true)]
    budget: Option<String>,

    /// TOML file with budget keys.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Worker threads for parallel sums.
    #[arg(long, global = true)]
    workers: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Gaussian binomial coefficient [n choose k]_q.
    Gauss {
        #[arg(long)]
        n: i64,
        #[arg(long)]
        k: i64,
        #[arg(long)]
        q: u64,
    },
    /// Number of subspaces of F_q^n.
    Galois {
        #[arg(long)]
        n: i64,
        #[arg(long)]
        q: u64,
    },
    /// Enclosures of C(q), D(q) and log_q(C D).
    Constants {
        #[arg(long)]
        q: u64,
    },
    /// Lyndon words of length n on d letters with their standard bracketings.
    Lyndon {
        #[arg(long)]
        d: u8,
        #[arg(long)]
        n: usize,
    },
    /// Witt dimensions and cumulative layer ranks.
    Ranks {
        #[arg(long)]
        d: u64,
        #[arg(long)]
        n: usize,
    },
    /// Submodules of type beta in a module of type alpha over a DVR with residue field of size q.
    Count {
        /// Comma-separated parts of alpha.
        #[arg(long)]
        alpha: String,
        /// Comma-separated parts of beta; all types are summed when omitted.
        #[arg(long)]
        beta: Option<String>,
        #[arg(long)]
        q: u64,
    },
    /// Invariant subspaces of a matrix: rows separated by ';', entries by ','.
    Fixed {
        #[command(flatten)]
        m: MatrixArgs,
        /// Also count by enumeration.
        #[arg(long)]
        brute: bool,
    },
    /// Orbits of GL(d,p) on subspaces of the n-th layer.
    Census(CensusArgs),
    /// Checks an upper bound on the number of invariant subspaces.
    Bounds {
        #[command(flatten)]
        m: MatrixArgs,
        #[arg(long, value_enum, default_value = "upper")]
        kind: KindArg,
        /// Treat the matrix as an element of GL(d,p) acting on this layer.
        #[arg(long)]
        layer: Option<usize>,
    },
    /// Runs a verification suite.
    Verify {
        #[arg(value_enum, default_value = "all")]
        suite: SuiteArg,
    },
}

#[derive(Args, Debug)]
struct MatrixArgs {
    #[arg(long)]
    matrix: String,
    #[arg(long)]
    p: u32,
}

#[derive(Args, Debug)]
struct CensusArgs {
    #[arg(long)]
    d: usize,
    #[arg(long)]
    p: u32,
    #[arg(long, default_value_t = 2)]
    n: usize,
    /// Require explicit orbit enumeration.
    #[arg(long, conflicts_with = "cf_only")]
    explicit: bool,
    /// Skip explicit enumeration even when it fits the budget.
    #[arg(long)]
    cf_only: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum KindArg {
    Upper,
    Stronger,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SuiteArg {
    Qcomb,
    Freelie,
    Submod,
    Pgroup,
    Census,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Suite {
        match s {
            SuiteArg::Qcomb => Suite::Qcomb,
            SuiteArg::Freelie => Suite::Freelie,
            SuiteArg::Submod => Suite::Submod,
            SuiteArg::Pgroup => Suite::Pgroup,
            SuiteArg::Census => Suite::Census,
            SuiteArg::All => Suite::All,
        }
    }
}

enum Failure {
    Usage(String),
    Compute(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidParameter(m) => Failure::Usage(m),
            e => Failure::Compute(e),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Compute(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_COMPUTE)
        }
    }
}

fn load_budget(cli: &Cli) -> Result<Budget, Failure> {
    let mut b = match &cli.config {
        Some(path) => {
            let s = std::fs::read_to_string(path)
                .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
            toml::from_str::<Budget>(&s).map_err(|e| Failure::Usage(format!("bad config {}: {e}", path.display())))?
        }
        None => Budget::default(),
    };
    if let Ok(env) = std::env::var(Budget::ENV_VAR) {
        if !env.trim().is_empty() {
            b = apply_overrides(b, &env)?;
        }
    }
    if let Some(flag) = &cli.budget {
        b = apply_overrides(b, flag)?;
    }
    Ok(b)
}

/// A leading preset name replaces the budget; key=value items adjust it.
fn apply_overrides(mut b: Budget, spec: &str) -> Result<Budget, Failure> {
    for (i, item) in spec.split(',').map(str::trim).filter(|s| !s.is_empty()).enumerate() {
        match item.split_once('=') {
            Some((k, v)) => b.set(k.trim(), v.trim())?,
            None if i == 0 => {
                b = Budget::preset(item).ok_or_else(|| Failure::Usage(format!("unknown budget preset {item:?}")))?
            }
            None => return Err(Failure::Usage(format!("expected key=value, got {item:?}"))),
        }
    }
    Ok(b)
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    let budget = load_budget(cli)?;
    if let Some(w) = cli.workers {
        if w == 0 {
            return Err(Failure::Usage("--workers must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build_global()
            .map_err(|e| Failure::Usage(format!("cannot start workers: {e}")))?;
    }
    if !cli.no_header {
        let secs = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        eprintln!("# pgc {} unix-time {secs}", env!("CARGO_PKG_VERSION"));
    }
    let (report, code) = dispatch(&cli.command, &budget, cli.format)?;
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(report.render(cli.format).as_bytes());
    Ok(code)
}

fn parse_parts(s: &str) -> Result<Partition, Failure> {
    let parts = s
        .split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(|x| x.parse::<u32>().map_err(|_| Failure::Usage(format!("bad part {x:?}"))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Partition::new(parts)?)
}

fn parse_matrix(m: &MatrixArgs) -> Result<FpMatrix, Failure> {
    let rows = m
        .matrix
        .split(';')
        .map(|r| {
            r.split(',')
                .map(|x| x.trim().parse::<i64>().map_err(|_| Failure::Usage(format!("bad entry {x:?}"))))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    let g = FpMatrix::from_rows(m.p, &rows)?;
    if !g.is_square() {
        return Err(Failure::Usage("matrix must be square".into()));
    }
    Ok(g)
}

fn sieve_for(g: &FpMatrix) -> Result<IrreducibleSieve, Failure> {
    Ok(IrreducibleSieve::new(g.p(), g.rows().max(1))?)
}

fn dispatch(cmd: &Command, budget: &Budget, format: Format) -> Result<(Report, u8), Failure> {
    let report = match cmd {
        Command::Gauss { n, k, q } => {
            let v = gauss(*n, *k, *q)?;
            Report::new("pgc.gauss/1", json!({"n": n, "k": k, "q": q, "value": v.to_string()}))
                .text(v.to_string())
                .table(vec!["n", "k", "q", "value"], vec![vec![n.to_string(), k.to_string(), q.to_string(), v.to_string()]])
        }
        Command::Galois { n, q } => {
            let v = galois(*n, *q)?;
            Report::new("pgc.galois/1", json!({"n": n, "q": q, "value": v.to_string()}))
                .text(v.to_string())
                .table(vec!["n", "q", "value"], vec![vec![n.to_string(), q.to_string(), v.to_string()]])
        }
        Command::Constants { q } => {
            let k = theta_constants(*q, &budget.tol)?;
            let rows: Vec<Vec<String>> = [("C", &k.c), ("D", &k.d), ("epsilon", &k.epsilon)]
                .iter()
                .map(|(name, e)| {
                    vec![
                        name.to_string(),
                        format!("{:.15}", e.lo.to_f64().unwrap_or(f64::NAN)),
                        format!("{:.15}", e.hi.to_f64().unwrap_or(f64::NAN)),
                    ]
                })
                .collect();
            let text = format!("q = {q}, tolerance {}\n{}", format_rational(&k.tol), aligned(&["name", "lower", "upper"], &rows));
            Report::new("pgc.constants/1", &k).text(text).table(vec!["name", "lower", "upper"], rows)
        }
        Command::Lyndon { d, n } => {
            let words = lyndon_words(*d, *n);
            let mut rows = Vec::new();
            for w in &words {
                rows.push(vec![w.to_string(), standard_bracketing(w)?.to_string()]);
            }
            let text = format!("{} Lyndon words\n{}", words.len(), aligned(&["word", "bracketing"], &rows));
            Report::new(
                "pgc.lyndon/1",
                json!({"d": d, "n": n, "count": words.len(),
                    "words": rows.iter().map(|r| json!({"word": r[0], "bracketing": r[1]})).collect::<Vec<_>>()}),
            )
            .text(text)
            .table(vec!["word", "bracketing"], rows)
        }
        Command::Ranks { d, n } => {
            let r = layer_ranks(*d, *n)?;
            let rows: Vec<Vec<String>> = (1..=*n)
                .map(|i| vec![i.to_string(), r.w_at(i).to_string(), r.d_at(i).to_string()])
                .collect();
            Report::new("pgc.ranks/1", &r)
                .text(aligned(&["i", "witt", "cumulative"], &rows))
                .table(vec!["i", "witt", "cumulative"], rows)
        }
        Command::Count { alpha, beta, q } => {
            let a = parse_parts(alpha)?;
            let betas = match beta {
                Some(b) => vec![parse_parts(b)?],
                None => a.subpartitions(),
            };
            let mut rows = Vec::new();
            let mut total = BigInt::from(0);
            for b in betas {
                let c = count_by_type(&TypePair::new(*q, a.clone(), b.clone())?)?;
                total += &c;
                rows.push(vec![a.to_string(), b.to_string(), c.to_string()]);
            }
            let text = if beta.is_some() { total.to_string() } else { format!("{}\ntotal {total}", aligned(&["alpha", "beta", "count"], &rows)) };
            Report::new(
                "pgc.count/1",
                json!({"q": q, "alpha": a, "total": total.to_string(),
                    "rows": rows.iter().map(|r| json!({"beta": r[1], "count": r[2]})).collect::<Vec<_>>()}),
            )
            .text(text)
            .table(vec!["alpha", "beta", "count"], rows)
        }
        Command::Fixed { m, brute } => {
            let g = parse_matrix(m)?;
            let sieve = sieve_for(&g)?;
            let mt = module_type(&g, &sieve)?;
            let s = fixed_subspace_count_with(&g, &sieve)?;
            let b = if *brute { Some(brute_invariant_subspaces(&g, budget)?) } else { None };
            if let Some(b) = b {
                if BigInt::from(b) != s {
                    return Err(Failure::Compute(Error::Internal(format!("formula {s} but enumeration {b}"))));
                }
            }
            let mut text = format!("{s}\nmodule type {mt}");
            if let Some(b) = b {
                text.push_str(&format!("\nenumeration {b}"));
            }
            Report::new(
                "pgc.fixed/1",
                json!({"p": m.p, "module_type": mt.to_string(), "count": s.to_string(), "enumerated": b}),
            )
            .text(text)
            .table(
                vec!["module_type", "count", "enumerated"],
                vec![vec![mt.to_string(), s.to_string(), b.map(|x| x.to_string()).unwrap_or_default()]],
            )
        }
        Command::Census(a) => {
            let params = CensusParams::new(a.d, a.n, a.p)?;
            let mode = if a.explicit {
                ExplicitMode::Always
            } else if a.cf_only {
                ExplicitMode::Never
            } else {
                ExplicitMode::Auto
            };
            let r = census_report(params, mode, budget)?;
            let opt = |x: &Option<BigInt>| x.as_ref().map(|v| v.to_string()).unwrap_or_else(|| "-".into());
            let fields = vec![
                ("layer_dim", r.layer_dim.to_string()),
                ("gl_order", r.gl_order.to_string()),
                ("subspaces", r.c_count.to_string()),
                ("orbits", r.orbit_count.to_string()),
                ("regular_orbits", opt(&r.regular_count)),
                ("regular_lower", format_rational(&r.regular_lower)),
                ("b_count", opt(&r.b_count)),
                ("r_lower", format_rational(&r.r_lower)),
                ("r_exact", r.r_exact.to_string()),
            ];
            let mut text = format!("census d={} n={} p={}\n", a.d, a.n, a.p);
            text.push_str(&aligned(&["quantity", "value"], &fields.iter().map(|(k, v)| vec![k.to_string(), v.clone()]).collect::<Vec<_>>()));
            if let Some(e) = &r.est2 {
                text.push_str(&format!(
                    "\nratio |orbits||GL|/|subspaces| = {} (>= 1: {}), upper bound {:?}{}",
                    format_rational(&e.ratio),
                    e.lower_holds,
                    e.upper,
                    if e.applicable { "" } else { " (outside the estimate's range)" }
                ));
            }
            let headers = fields.iter().map(|(k, _)| *k).collect();
            let row = fields.into_iter().map(|(_, v)| v).collect();
            Report::new("pgc.census/1", &r).text(text).table(headers, vec![row])
        }
        Command::Bounds { m, kind, layer } => {
            let g = parse_matrix(m)?;
            let k = theta_constants(u64::from(m.p), &budget.tol)?;
            let r = match layer {
                Some(n) => {
                    let l = LayerModule::new(g.rows(), *n, m.p)?;
                    let sieve = IrreducibleSieve::new(m.p, l.dim().max(1))?;
                    layer_bound_check(&g, &l, &k, &sieve)?
                }
                None => {
                    let kind = match kind {
                        KindArg::Upper => BoundKind::Upper,
                        KindArg::Stronger => BoundKind::Stronger,
                    };
                    bound_checks(&g, kind, &k, &sieve_for(&g)?)?
                }
            };
            let bound = r.bound.as_ref().map(|b| format!("{:.6e}", b.approx())).unwrap_or_else(|| "-".into());
            let text = format!(
                "S_M = {} (m = {}), bound {bound}: {:?}",
                r.s_m, r.m, r.verdict
            );
            let row = vec![r.m.to_string(), r.s_m.to_string(), bound, format!("{:?}", r.verdict)];
            let code = if r.satisfied { 0 } else { EXIT_VERIFY };
            return Ok((
                Report::new("pgc.bounds/1", &r).text(text).table(vec!["m", "s_m", "bound", "verdict"], vec![row]),
                code,
            ));
        }
        Command::Verify { suite } => {
            let live = format == Format::Text;
            let r = run_suite((*suite).into(), budget, |c| {
                if live {
                    println!("{c}");
                }
            })?;
            let failed = r.criteria.iter().filter(|c| !c.passed).count();
            let text = if live {
                format!("{} of {} criteria passed", r.criteria.len() - failed, r.criteria.len())
            } else {
                String::new()
            };
            let rows = r
                .criteria
                .iter()
                .map(|c| {
                    vec![
                        c.id.to_string(),
                        c.name.clone(),
                        if c.passed { "PASS" } else { "FAIL" }.to_string(),
                        c.elapsed_ms.to_string(),
                        c.detail.clone(),
                    ]
                })
                .collect();
            let code = if r.passed { 0 } else { EXIT_VERIFY };
            return Ok((
                Report::new("pgc.verify/1", &r)
                    .text(text)
                    .table(vec!["id", "name", "status", "elapsed_ms", "detail"], rows),
                code,
            ));
        }
    };
    Ok((report, 0))
}
