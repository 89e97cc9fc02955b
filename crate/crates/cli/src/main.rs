//! Batch front end: reads a quiver document, runs one computation and
//! prints a table on standard output.

mod table;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use wklr::hall::check_hq_algebra_map;
use wklr::io::{load_quiver, parse_charge, parse_loading, parse_nu};
use wklr::loading::enumerate_chambers;
use wklr::rat::parse_rat;
use wklr::steady::{steadied_graded_dim, Charge};
use wklr::wklr::relations::check_all;
use wklr::{Error, Limits, Loading, MultiPoly, Quiver, Wklr, WklrElement};

use table::Table;

#[derive(Parser)]
#[command(name = "wklr", version, about = "Exact computations in weighted KLR algebras")]
struct Cli {
    /// Quiver document, TOML or JSON.
    #[arg(long, global = true)]
    quiver: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Worker threads; defaults to the number of cores.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Table,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Chamber representatives and signatures for a dimension vector.
    Chambers {
        #[arg(long)]
        nu: String,
    },
    /// Basis `b_π · y^m` of `e_tgt W e_src` by degree.
    Basis {
        #[arg(long)]
        src: String,
        #[arg(long)]
        tgt: String,
        #[arg(long, default_value_t = 4)]
        cutoff: i64,
    },
    /// Product of generators, applied left to right starting at `src`.
    Mult {
        #[arg(long)]
        src: String,
        /// Comma-separated generators `yK` (dot on strand K) and `psiK`
        /// (crossing of strands K, K+1), numbered from 1 as in the output.
        #[arg(long)]
        word: String,
    },
    /// Graded dimensions between all chamber representatives.
    GradedDim {
        #[arg(long)]
        nu: String,
        #[arg(long, default_value_t = 6)]
        cutoff: i64,
    },
    /// Exhaustive relation check on up to `max-strands` strands.
    RelationsCheck {
        #[arg(long, default_value_t = 3)]
        max_strands: u32,
    },
    /// Graded dimensions of the steadied quotient.
    SteadyDim {
        #[arg(long)]
        nu: String,
        /// `re/im` per vertex; defaults to the Crawley-Boevey preset.
        #[arg(long)]
        charge: Option<String>,
        #[arg(long, default_value_t = 6)]
        cutoff: i64,
        /// Also kill dots on the Crawley-Boevey strand.
        #[arg(long)]
        reduced: bool,
    },
    /// Pointwise comparison of the trace function of `i ∘ j` with the Hall
    /// product of those of `i` and `j`.
    HallCheck {
        #[arg(long)]
        i: String,
        #[arg(long)]
        j: String,
        #[arg(long, default_value_t = 2)]
        prime: u32,
    },
    /// Operator of the straight-line interpolation to new edge weights.
    Interp {
        #[arg(long)]
        src: String,
        #[arg(long)]
        tgt: String,
        /// One target weight per edge of the normalized quiver.
        #[arg(long)]
        weights: String,
    },
}

enum Failure {
    Engine(Error),
    Input(String),
    CheckFailed,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Engine(e)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::CheckFailed => 1,
            Failure::Input(_) => 2,
            Failure::Engine(e) => match e {
                Error::Parse(_)
                | Error::NonGeneric(_)
                | Error::WeightMismatch
                | Error::LabelMismatch
                | Error::StrandOutOfRange { .. }
                | Error::NotInChamberSet
                | Error::NoCbVertex
                | Error::CbMultiplicity(_)
                | Error::InvalidArgument(_) => 2,
                Error::Validation(_) => 3,
                Error::TooLarge { .. } => 4,
                _ => 5,
            },
        }
    }
}

fn env_bound<T: std::str::FromStr>(name: &str, default: T) -> Result<T, Failure> {
    match std::env::var(name) {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| Failure::Input(format!("{name}: not a non-negative integer: {s:?}"))),
        Err(_) => Ok(default),
    }
}

fn limits() -> Result<Limits, Failure> {
    let d = Limits::default();
    Ok(Limits {
        max_points: env_bound("WKLR_MAX_POINTS", d.max_points)?,
        max_hall_points: env_bound("WKLR_MAX_HALL_POINTS", d.max_hall_points)?,
    })
}

fn read_quiver(path: &Option<PathBuf>) -> Result<Quiver, Failure> {
    let path = path.as_ref().ok_or_else(|| Failure::Input("--quiver is required".into()))?;
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    Ok(load_quiver(&text)?)
}

fn check_points(i: &Loading, limits: &Limits) -> Result<(), Failure> {
    if i.len() > limits.max_points {
        return Err(Error::TooLarge {
            what: "points",
            size: i.len() as u64,
            bound: limits.max_points as u64,
        }
        .into());
    }
    Ok(())
}

fn element_rows(x: &WklrElement) -> Table {
    let mut t = Table::new(["src", "tgt", "perm", "coefficient"]);
    for (pi, p) in &x.coeffs {
        t.push([x.src.to_string(), x.tgt.to_string(), pi.to_string(), p.to_string()]);
    }
    t
}

fn run(cli: &Cli) -> Result<(Table, bool), Failure> {
    let limits = limits()?;
    let q = read_quiver(&cli.quiver)?;
    let nv = q.vertex_count();
    match &cli.command {
        Command::Chambers { nu } => {
            let b = enumerate_chambers(&q, &parse_nu(nu)?, &limits)?;
            let mut t = Table::new(["index", "loading", "signature"]);
            for (k, (l, s)) in b.reps().iter().zip(b.signatures()).enumerate() {
                t.push([k.to_string(), l.to_string(), s.to_string()]);
            }
            Ok((t, true))
        }
        Command::Basis { src, tgt, cutoff } => {
            let (src, tgt) = (parse_loading(src)?, parse_loading(tgt)?);
            check_points(&src, &limits)?;
            let w = Wklr::new(q)?;
            let mut t = Table::new(["degree", "perm", "monomial"]);
            if let Some(lo) = w.min_degree(&src, &tgt)? {
                for d in lo..=*cutoff {
                    for (pi, m) in w.graded_basis(&src, &tgt, d)? {
                        let mono = MultiPoly::from_terms(src.len(), [(m, wklr::rat::int(1))]);
                        t.push([d.to_string(), pi.to_string(), mono.to_string()]);
                    }
                }
            }
            Ok((t, true))
        }
        Command::Mult { src, word } => {
            let src = parse_loading(src)?;
            check_points(&src, &limits)?;
            let w = Wklr::new(q.clone())?;
            let chambers = enumerate_chambers(&q, &src.weight(nv), &limits)?;
            let mut x = w.idempotent(&src);
            for g in word.split(',').map(str::trim).filter(|g| !g.is_empty()) {
                let strand = |s: &str| match s.parse::<usize>() {
                    Ok(k) if k >= 1 => Ok(k - 1),
                    _ => Err(Failure::Input(format!("bad generator {g:?}"))),
                };
                let gen = if let Some(k) = g.strip_prefix("psi") {
                    w.psi(&x.tgt, strand(k)?, &chambers)?
                } else if let Some(k) = g.strip_prefix('y') {
                    w.dot(&x.tgt, strand(k)?)?
                } else {
                    return Err(Failure::Input(format!("bad generator {g:?}")));
                };
                x = w
                    .multiply(&gen, &x)?
                    .value()
                    .expect("generator starts where the product ends");
            }
            Ok((element_rows(&x), true))
        }
        Command::GradedDim { nu, cutoff } => {
            let b = enumerate_chambers(&q, &parse_nu(nu)?, &limits)?;
            let w = Wklr::new(q)?;
            let pairs: Vec<(usize, usize)> = (0..b.len()).flat_map(|s| (0..b.len()).map(move |t| (s, t))).collect();
            let dims = pairs
                .par_iter()
                .map(|&(s, t)| w.graded_dim(b.rep(s), b.rep(t), *cutoff).map(|v| (s, t, v)))
                .collect::<Result<Vec<_>, _>>()?;
            let mut t = Table::new(["src_index", "tgt_index", "degree", "dim"]);
            for (s, tg, v) in dims {
                for (d, dim) in v {
                    t.push([s.to_string(), tg.to_string(), d.to_string(), dim.to_string()]);
                }
            }
            Ok((t, true))
        }
        Command::RelationsCheck { max_strands } => {
            let w = Wklr::new(q)?;
            let report = check_all(&w, *max_strands, &limits)?;
            let mut t = Table::new(["relation", "loading", "detail", "result"]);
            for c in &report.checks {
                let result = if c.passed { "pass" } else { "FAIL" };
                t.push([c.relation.clone(), c.loading.clone(), c.detail.clone(), result.into()]);
            }
            eprintln!(
                "{} checks, {} failed, {} skipped",
                report.checks.len(),
                report.failures().count(),
                report.skipped
            );
            Ok((t, report.passed()))
        }
        Command::SteadyDim {
            nu,
            charge,
            cutoff,
            reduced,
        } => {
            let c = match charge {
                Some(s) => parse_charge(s)?,
                None => Charge::crawley_boevey_preset(&q)?,
            };
            let b = enumerate_chambers(&q, &parse_nu(nu)?, &limits)?;
            let w = Wklr::new(q)?;
            let table = steadied_graded_dim(&w, &b, &c, *cutoff, *reduced, &limits)?;
            let mut t = Table::new(["src_index", "tgt_index", "degree", "dim"]);
            for r in &table.rows {
                t.push([r.src.to_string(), r.tgt.to_string(), r.degree.to_string(), r.dim.to_string()]);
            }
            Ok((t, true))
        }
        Command::HallCheck { i, j, prime } => {
            let (i, j) = (parse_loading(i)?, parse_loading(j)?);
            let check = check_hq_algebra_map(&q, &i, &j, *prime, &limits)?;
            let mut t = Table::new(["rep", "composite", "convolution"]);
            for r in &check.rows {
                t.push([r.rep.clone(), r.lhs.to_string(), r.rhs.to_string()]);
            }
            Ok((t, check.passed))
        }
        Command::Interp { src, tgt, weights } => {
            let (src, tgt) = (parse_loading(src)?, parse_loading(tgt)?);
            check_points(&src, &limits)?;
            let weights = weights.split(',').map(parse_rat).collect::<Result<Vec<_>, _>>()?;
            let w = Wklr::new(q)?;
            let op = w.interp_operator(&weights, &src, &tgt)?;
            let mut t = Table::new(["perm", "coefficient"]);
            for (pi, f) in op.components() {
                t.push([pi.to_string(), f.to_string()]);
            }
            Ok((t, true))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok((table, passed)) => {
            print!("{}", table.render(matches!(cli.format, Format::Csv)));
            if passed {
                ExitCode::SUCCESS
            } else {
                eprintln!("check failed");
                ExitCode::from(Failure::CheckFailed.exit_code())
            }
        }
        Err(f) => {
            match &f {
                Failure::Engine(e) => eprintln!("error: {e}"),
                Failure::Input(s) => eprintln!("error: {s}"),
                Failure::CheckFailed => {}
            }
            ExitCode::from(f.exit_code())
        }
    }
}
