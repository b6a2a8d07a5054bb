//! `expcx`: expansion complexity of sequences over prime fields.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use expcx::experiments::{self, ExperimentReport, MonteCarloParams};
use expcx::generators::{inversive_prefix, random_prefix};
use expcx::poly::count_normalized_irreducible;
use expcx::{
    expansion_complexity, extend_sequence, find_defining_poly_with, i_expansion_complexity,
    BivariatePoly, ComplexityResult, Error, ExtensionStatus, PrimeField, SearchConfig,
    SequencePrefix, Status,
};

const EXIT_USAGE: u8 = 1;
const EXIT_FAIL: u8 = 2;
const EXIT_INCONCLUSIVE: u8 = 3;

#[derive(Parser)]
#[command(
    name = "expcx",
    version,
    about = "Expansion complexity of sequences over prime fields"
)]
struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for experiments (output does not depend on it).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct SearchArgs {
    /// Enumerate a degree level when it has at most this many elements.
    #[arg(long, default_value_t = SearchConfig::default().enum_cap)]
    enum_cap: u128,
    /// Random elements tried on larger levels.
    #[arg(long, default_value_t = SearchConfig::default().sample_cap)]
    sample_cap: u64,
    /// Seed of the sampler.
    #[arg(long = "search-seed", default_value_t = 0)]
    search_seed: u64,
}

impl SearchArgs {
    fn config(self) -> SearchConfig {
        SearchConfig {
            enum_cap: self.enum_cap,
            sample_cap: self.sample_cap,
            seed: self.search_seed,
            ..SearchConfig::default()
        }
    }
}

#[derive(Args)]
struct ReportArgs {
    /// Also write the per-case table as CSV.
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// E_N (and optionally E*_N) for N = 1..nmax.
    Profile {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        nmax: usize,
        #[arg(long)]
        istar: bool,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// E_N with a witness.
    En {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        n: usize,
    },
    /// E*_N with an irreducible witness.
    Istar {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Write a sequence file.
    #[command(subcommand)]
    Gen(Gen),
    /// Least-degree irreducible polynomial annihilating the whole prefix.
    FindPoly {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        dmax: u32,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Continue a sequence with a defining polynomial.
    Predict {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        extend: usize,
    },
    #[command(subcommand)]
    Verify(Verify),
    /// Shifts of the inversive generator with less than maximal E_N.
    Shifts {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        d: u32,
        #[command(flatten)]
        report: ReportArgs,
    },
    /// Number of normalized irreducible polynomials of total degree d.
    CountIrr {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        d: u32,
    },
    /// Irreducible counts against Carlitz's main term.
    Carlitz {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        dmax: u32,
        #[command(flatten)]
        report: ReportArgs,
    },
    /// Share of random sequences with small E*_n.
    Mc2 {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        trials: usize,
        #[arg(long)]
        epsilon: f64,
        #[arg(long)]
        seed: u64,
        /// Largest fraction below the threshold that passes.
        #[arg(long, default_value_t = 0.05)]
        max_fraction: f64,
        #[command(flatten)]
        search: SearchArgs,
        #[command(flatten)]
        report: ReportArgs,
    },
}

#[derive(Subcommand)]
enum Gen {
    /// s_n = (n + shift)^(p-2) mod p.
    Inversive {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 0)]
        shift: u64,
        #[arg(long)]
        len: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Uniform symbols from a seeded ChaCha8 stream.
    Random {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        len: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum Verify {
    /// Maximal E_N profile of the inversive generator for N = 2..p-1.
    Theorem3 {
        #[arg(long)]
        p: u64,
        #[command(flatten)]
        report: ReportArgs,
    },
    /// E*_N = d' on the admissible windows.
    Star {
        #[arg(long)]
        p: u64,
        #[command(flatten)]
        search: SearchArgs,
        #[command(flatten)]
        report: ReportArgs,
    },
    /// Derivative of the inversive generating function.
    Gprime {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        report: ReportArgs,
    },
}

enum Failure {
    Usage(String),
    Inconclusive(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExceeded { .. } => Failure::Inconclusive(e.to_string()),
            e => Failure::Usage(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<u8, Failure>;

fn field(p: u64) -> Result<PrimeField, Failure> {
    Ok(PrimeField::new(p)?)
}

fn read(path: &Path) -> Result<SequencePrefix, Failure> {
    SequencePrefix::read_file(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn emit(
    out: &mut impl Write,
    json: bool,
    value: &impl serde::Serialize,
    text: impl FnOnce() -> String,
) -> io::Result<()> {
    if json {
        writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(value).expect("serializable")
        )
    } else {
        write!(out, "{}", text())
    }
}

fn describe(r: &ComplexityResult, star: bool) -> String {
    let name = if star { "E*" } else { "E" };
    let mut s = match r.status {
        Status::Exact => format!("{name}_{} = {}\n", r.n, r.value),
        Status::LowerBound => format!(
            "{name}_{} >= {} (lower bound; an irreducible solution of degree {} exists)\n",
            r.n,
            r.value,
            r.upper_bound.unwrap_or(r.value)
        ),
    };
    if let Some(w) = &r.witness {
        s.push_str(&format!("witness: {w}\n"));
    }
    s
}

fn status_code(r: &ComplexityResult) -> u8 {
    if r.is_exact() {
        0
    } else {
        EXIT_INCONCLUSIVE
    }
}

fn write_sequence(out: &mut impl Write, s: &SequencePrefix, path: Option<&Path>) -> Outcome {
    match path {
        Some(p) => s.write_file(p)?,
        None => write!(out, "{}", s.to_file_string())?,
    }
    Ok(0)
}

fn report(out: &mut impl Write, json: bool, r: &ExperimentReport, args: &ReportArgs) -> Outcome {
    if let Some(path) = &args.csv {
        r.write_csv(fs::File::create(path)?)?;
    }
    if json {
        writeln!(out, "{}", r.to_json())?;
    } else {
        writeln!(out, "{}: {:?}", r.experiment, r.verdict)?;
        writeln!(out, "params: {}", r.params)?;
        if let Some(seed) = r.seed {
            writeln!(out, "seed: {seed}")?;
        }
        writeln!(out, "summary: {}", r.summary)?;
        writeln!(out, "cases: {}", r.cases.len())?;
    }
    Ok(r.verdict.exit_code() as u8)
}

fn run(cli: Cli, out: &mut impl Write) -> Outcome {
    if let Some(t) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(|e| Failure::Usage(e.to_string()))?;
    }
    let json = cli.json;
    match cli.command {
        Command::Profile {
            input,
            nmax,
            istar,
            search,
        } => {
            let s = read(&input)?;
            let profile = if istar {
                expcx::complexity::expansion_profile_with_istar(&s, nmax, &search.config())?
            } else {
                expcx::expansion_profile(&s, nmax)?
            };
            emit(out, json, &profile, || {
                let mut t = String::from(if istar {
                    "N\tE_N\tE*_N\twitness\n"
                } else {
                    "N\tE_N\twitness\n"
                });
                for (k, e) in profile.entries.iter().enumerate() {
                    let w = e
                        .witness
                        .as_ref()
                        .map_or("-".into(), BivariatePoly::to_string);
                    match &profile.istar_entries {
                        Some(star) => {
                            let st = &star[k];
                            let v = if st.is_exact() {
                                st.value.to_string()
                            } else {
                                format!(">={}", st.value)
                            };
                            t.push_str(&format!("{}\t{}\t{v}\t{w}\n", e.n, e.value));
                        }
                        None => t.push_str(&format!("{}\t{}\t{w}\n", e.n, e.value)),
                    }
                }
                t
            })?;
            let inexact = profile
                .istar_entries
                .iter()
                .flatten()
                .any(|r| !r.is_exact());
            Ok(if inexact { EXIT_INCONCLUSIVE } else { 0 })
        }
        Command::En { input, n } => {
            let r = expansion_complexity(&read(&input)?, n)?;
            emit(out, json, &r, || describe(&r, false))?;
            Ok(0)
        }
        Command::Istar { input, n, search } => {
            let r = i_expansion_complexity(&read(&input)?, n, &search.config())?;
            emit(out, json, &r, || describe(&r, true))?;
            Ok(status_code(&r))
        }
        Command::Gen(Gen::Inversive {
            p,
            shift,
            len,
            out: path,
        }) => {
            let s = inversive_prefix(field(p)?, shift, len)?;
            write_sequence(out, &s, path.as_deref())
        }
        Command::Gen(Gen::Random {
            q,
            len,
            seed,
            out: path,
        }) => {
            let s = random_prefix(field(q)?, len, seed);
            write_sequence(out, &s, path.as_deref())
        }
        Command::FindPoly {
            input,
            dmax,
            search,
        } => {
            let h = find_defining_poly_with(&read(&input)?, dmax, &search.config())?;
            emit(
                out,
                json,
                &json!({ "found": h.is_some(), "poly": h, "text": h.as_ref().map(|h| h.to_string()) }),
                || match &h {
                    Some(h) => format!("{h}\n"),
                    None => "not found\n".into(),
                },
            )?;
            Ok(0)
        }
        Command::Predict {
            poly,
            input,
            extend,
        } => {
            let s = read(&input)?;
            let h = BivariatePoly::parse(s.field(), &poly)
                .map_err(|e| Failure::Usage(format!("--poly: {e}")))?;
            let ext = extend_sequence(&h, &s, extend)?;
            emit(out, json, &ext, || {
                let mut t = ext.sequence.to_file_string();
                match &ext.status {
                    ExtensionStatus::Complete => {}
                    ExtensionStatus::Ambiguous {
                        position,
                        candidates,
                    } => t.push_str(&format!(
                        "# ambiguous at position {position}: candidates {candidates:?}\n"
                    )),
                    ExtensionStatus::Inconsistent { position } => t.push_str(&format!(
                        "# inconsistent at position {position}: no symbol fits\n"
                    )),
                }
                t
            })?;
            Ok(match ext.status {
                ExtensionStatus::Complete => 0,
                ExtensionStatus::Ambiguous { .. } => EXIT_INCONCLUSIVE,
                ExtensionStatus::Inconsistent { .. } => EXIT_FAIL,
            })
        }
        Command::Verify(Verify::Theorem3 { p, report: args }) => {
            report(out, json, &experiments::verify_theorem3(field(p)?)?, &args)
        }
        Command::Verify(Verify::Star {
            p,
            search,
            report: args,
        }) => report(
            out,
            json,
            &experiments::verify_theorem_star(field(p)?, &search.config())?,
            &args,
        ),
        Command::Verify(Verify::Gprime { p, n, report: args }) => report(
            out,
            json,
            &experiments::verify_derivative_identity(field(p)?, n)?,
            &args,
        ),
        Command::Shifts { p, d, report: args } => report(
            out,
            json,
            &experiments::count_exceptional_shifts(field(p)?, d)?,
            &args,
        ),
        Command::CountIrr { q, d } => {
            let count = count_normalized_irreducible(field(q)?, d)?;
            emit(
                out,
                json,
                &json!({ "q": q, "d": d, "count": count }),
                || format!("{count}\n"),
            )?;
            Ok(0)
        }
        Command::Carlitz {
            q,
            dmax,
            report: args,
        } => report(
            out,
            json,
            &experiments::compare_carlitz(field(q)?, dmax)?,
            &args,
        ),
        Command::Mc2 {
            q,
            n,
            trials,
            epsilon,
            seed,
            max_fraction,
            search,
            report: args,
        } => {
            let params = MonteCarloParams {
                n,
                trials,
                epsilon,
                seed,
                max_fraction,
            };
            report(
                out,
                json,
                &experiments::montecarlo_theorem2(field(q)?, &params, &search.config())?,
                &args,
            )
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match run(cli, &mut out) {
        Ok(code) => {
            let _ = out.flush();
            ExitCode::from(code)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Inconclusive(msg)) => {
            eprintln!("inconclusive: {msg}");
            ExitCode::from(EXIT_INCONCLUSIVE)
        }
    }
}
