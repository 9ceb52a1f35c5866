//! `qlp` command-line front end.
//!
//! Exit codes: `0` success (feasible / valid / all checks pass), `1` a
//! negative verdict (infeasible / invalid certificate / audit failure),
//! `2` usage or input errors.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use qlp_core::bound::{self, Formulation, SearchStrategy, DEFAULT_MAX_N};
use qlp_core::enumerator::{self, EnumeratorRecord};
use qlp_core::lp::{verify_certificate, Certificate};
use qlp_core::stabilizer::StabilizerCode;
use qlp_core::{CodeParams, HomPoly, LinearMap2, Rational};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "qlp", version, about = "Exact quantum linear programming bound engine")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct CodeArgs {
    #[arg(long)]
    n: usize,
    #[arg(long = "K")]
    k: u64,
    #[arg(long)]
    d: usize,
    #[arg(long)]
    pure: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormulationArg {
    Abs,
    Cd,
}

impl From<FormulationArg> for Formulation {
    fn from(f: FormulationArg) -> Self {
        match f {
            FormulationArg::Abs => Formulation::Abs,
            FormulationArg::Cd => Formulation::Cd,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum StrategyArg {
    Binary,
    Linear,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MapArg {
    Macwilliams,
    Shadow,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide feasibility of the LP bound for ((n,K,d)).
    Check {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long, value_enum, default_value = "abs")]
        formulation: FormulationArg,
        /// Write the certificate JSON here.
        #[arg(long)]
        cert: Option<PathBuf>,
    },
    /// Largest K in [1, 2^n] passing the bound, or NONE.
    Maxk {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        pure: bool,
        #[arg(long, value_enum, default_value = "binary")]
        strategy: StrategyArg,
    },
    /// CSV table of max_k over 1 <= d <= min(n, dmax), n <= nmax.
    Table {
        #[arg(long)]
        nmax: usize,
        #[arg(long)]
        dmax: usize,
        #[arg(long)]
        pure: bool,
        #[arg(long)]
        out: PathBuf,
        /// Worker threads; defaults to the number of CPUs.
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Apply the MacWilliams or shadow substitution to a polynomial.
    Transform {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum)]
        map: MapArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Averaged-subcode image of an enumerator at dimension K'.
    AverageSubcode {
        #[arg(long = "in")]
        input: PathBuf,
        /// Dimension of the input code; must match the file when both are given.
        #[arg(long = "K")]
        k: Option<String>,
        #[arg(long = "Kprime")]
        kprime: String,
    },
    /// Average weight enumerator of a random ((n,K)) code.
    RandomEnum {
        #[arg(long)]
        n: usize,
        #[arg(long = "K")]
        k: u64,
    },
    /// Brute-force enumerators of a stabilizer code (one generator per line).
    StabEnum {
        #[arg(long)]
        code: PathBuf,
    },
    /// Check a certificate against the LP rebuilt from "n,K,d,pure,formulation".
    VerifyCert {
        #[arg(long = "lp-params")]
        lp_params: String,
        #[arg(long)]
        cert: PathBuf,
    },
    /// Push an LP witness down to every K' <= K and re-check membership.
    MonotonicityAudit {
        #[command(flatten)]
        code: CodeArgs,
    },
}

/// Command failure with the diagnostic printed on stderr.
#[derive(Debug)]
struct Failure(String);

impl From<qlp_core::Error> for Failure {
    fn from(e: qlp_core::Error) -> Self {
        match e {
            qlp_core::Error::Json(e) => Failure(format!("malformed input: {e}")),
            e => Failure(e.to_string()),
        }
    }
}

type CmdResult = Result<i32, Failure>;

fn read_file(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure(format!("cannot read {}: {e}", path.display())))
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| Failure(format!("cannot write {}: {e}", path.display())))
}

fn parse_rational(label: &str, s: &str) -> Result<Rational, Failure> {
    s.parse()
        .map_err(|_| Failure(format!("invalid parameters: {label} must be a rational, got {s:?}")))
}

fn code_params(code: &CodeArgs) -> Result<CodeParams, Failure> {
    Ok(CodeParams::new(code.n, code.k, code.d, code.pure)?)
}

fn parse_lp_params(s: &str) -> Result<(CodeParams, Formulation), Failure> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let bad = || {
        Failure(format!(
            "invalid parameters: --lp-params expects \"n,K,d,pure,formulation\", got {s:?}"
        ))
    };
    if parts.len() != 5 {
        return Err(bad());
    }
    let n: usize = parts[0].parse().map_err(|_| bad())?;
    let k: u64 = parts[1].parse().map_err(|_| bad())?;
    let d: usize = parts[2].parse().map_err(|_| bad())?;
    let pure = match parts[3].to_ascii_lowercase().as_str() {
        "true" | "1" | "pure" | "yes" => true,
        "false" | "0" | "impure" | "no" => false,
        _ => return Err(bad()),
    };
    let formulation: Formulation = parts[4].parse().map_err(|_| bad())?;
    Ok((CodeParams::new(n, k, d, pure)?, formulation))
}

fn run_command(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let mut say = |line: String| -> Result<(), Failure> {
        writeln!(out, "{line}").map_err(|e| Failure(format!("cannot write output: {e}")))
    };
    match command {
        Command::Check {
            code,
            formulation,
            cert,
        } => {
            let params = code_params(&code)?;
            let requested: Formulation = formulation.into();
            let result = bound::check(&params, requested)?;
            if result.formulation != requested {
                let _ = writeln!(err, "note: K = 1 has no C/D system; using the abs formulation");
            }
            if let Some(path) = cert {
                write_file(&path, &format!("{}\n", result.certificate.to_json(&result.lp)))?;
            }
            if result.feasible {
                say("FEASIBLE".into())?;
                if let Some(w) = &result.witness {
                    say(format!("A = {}", w.weight_enumerator(&params.k)?))?;
                }
                Ok(EXIT_OK)
            } else {
                say("INFEASIBLE".into())?;
                Ok(EXIT_NEGATIVE)
            }
        }
        Command::Maxk {
            n,
            d,
            pure,
            strategy,
        } => {
            let strategy = match strategy {
                StrategyArg::Binary => SearchStrategy::Binary,
                StrategyArg::Linear => SearchStrategy::Linear,
            };
            let k = bound::max_k(n, d, pure, strategy)?;
            say(k.map_or_else(|| "NONE".to_string(), |k| k.to_string()))?;
            Ok(EXIT_OK)
        }
        Command::Table {
            nmax,
            dmax,
            pure,
            out: path,
            jobs,
        } => {
            let limit = match std::env::var("QLP_MAX_N") {
                Ok(v) => v.trim().parse::<usize>().map_err(|_| {
                    Failure(format!("invalid parameters: QLP_MAX_N must be an integer, got {v:?}"))
                })?,
                Err(_) => DEFAULT_MAX_N,
            };
            let mut pool = rayon::ThreadPoolBuilder::new();
            if let Some(j) = jobs {
                if j == 0 {
                    return Err(Failure("invalid parameters: --jobs must be at least 1".into()));
                }
                pool = pool.num_threads(j);
            }
            let pool = pool
                .build()
                .map_err(|e| Failure(format!("cannot start worker pool: {e}")))?;
            let table = pool.install(|| bound::table(nmax, dmax, pure, limit))?;
            write_file(&path, &table.to_csv())?;
            Ok(EXIT_OK)
        }
        Command::Transform { input, map, out: path } => {
            let p: HomPoly = serde_json::from_str(&read_file(&input)?)
                .map_err(|e| Failure(format!("malformed input: {}: {e}", input.display())))?;
            let m = match map {
                MapArg::Macwilliams => LinearMap2::macwilliams(),
                MapArg::Shadow => LinearMap2::shadow(),
            };
            let text = serde_json::to_string(&p.substitute_linear(&m))
                .map_err(|e| Failure(format!("cannot serialize: {e}")))?;
            match path {
                Some(path) => write_file(&path, &format!("{text}\n"))?,
                None => say(text)?,
            }
            Ok(EXIT_OK)
        }
        Command::AverageSubcode { input, k, kprime } => {
            let record = EnumeratorRecord::from_json(&read_file(&input)?)?;
            if let Some(k) = k {
                let k = parse_rational("--K", &k)?;
                if k != record.k {
                    return Err(Failure(format!(
                        "invalid parameters: --K {k} disagrees with K = {} in {}",
                        record.k,
                        input.display()
                    )));
                }
            }
            let kp = parse_rational("--Kprime", &kprime)?;
            let (a_hat, _) =
                enumerator::average_subcode(&record.abs.a, &record.abs.b, &record.k, &kp)?;
            say(EnumeratorRecord::new(a_hat, kp).to_json())?;
            Ok(EXIT_OK)
        }
        Command::RandomEnum { n, k } => {
            let a = enumerator::random_code_enumerator(n, &Rational::from(k))?;
            say(serde_json::to_string(&a).map_err(|e| Failure(format!("cannot serialize: {e}")))?)?;
            Ok(EXIT_OK)
        }
        Command::StabEnum { code } => {
            let code = StabilizerCode::parse(&read_file(&code)?)?;
            let (a, b) = code.enumerators_dense()?;
            let k = code.dimension()?;
            let record = EnumeratorRecord::new(a, k);
            if record.abs.b != b {
                return Err(Failure(
                    "internal inconsistency: dense B differs from the MacWilliams transform of A"
                        .into(),
                ));
            }
            say(record.to_json())?;
            Ok(EXIT_OK)
        }
        Command::VerifyCert { lp_params, cert } => {
            let (params, formulation) = parse_lp_params(&lp_params)?;
            let formulation = bound::effective_formulation(&params, formulation);
            let lp = bound::build_constraints(&params, formulation)?;
            let (certificate, hash) = Certificate::from_json(&read_file(&cert)?)?;
            if hash != lp.hash_hex() {
                say("INVALID (lp_hash does not match the rebuilt LP)".into())?;
                return Ok(EXIT_NEGATIVE);
            }
            if verify_certificate(&lp, &certificate)? {
                say("VALID".into())?;
                Ok(EXIT_OK)
            } else {
                say("INVALID".into())?;
                Ok(EXIT_NEGATIVE)
            }
        }
        Command::MonotonicityAudit { code } => {
            let params = code_params(&code)?;
            let report = bound::monotonicity_audit(&params)?;
            write!(out, "{report}").map_err(|e| Failure(format!("cannot write output: {e}")))?;
            if report.all_passed() {
                writeln!(out, "ALL PASS").map_err(|e| Failure(format!("cannot write output: {e}")))?;
                Ok(EXIT_OK)
            } else {
                writeln!(out, "FAILURES").map_err(|e| Failure(format!("cannot write output: {e}")))?;
                Ok(EXIT_NEGATIVE)
            }
        }
    }
}

/// Parses `args` (including the program name) and runs the command, writing
/// results to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
            } else {
                let _ = write!(out, "{text}");
            }
            return code;
        }
    };
    match run_command(cli.command, out, err) {
        Ok(code) => code,
        Err(Failure(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_ERROR
        }
    }
}
