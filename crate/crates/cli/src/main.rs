//! `nfa-approx`: command-line front end. Every subcommand prints one JSON
//! object on stdout (except `sample`, which prints one word per line). Exit
//! status is 0 for a true verdict or success, 1 for a false verdict, 2 for
//! invalid input.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use nfa_approx::estimators::{
    self, amplify, pax_unary_univ, prax_adfa_subset_nfa, prax_block_univ, prax_emptiness,
    prax_maxlen_univ_bounded, prax_univ, EmptinessMode, EstimateReport, Tolerance,
};
use nfa_approx::oracle::{Limits, DEFAULT_SUBSET_LIMIT};
use nfa_approx::reduction::{reduce_to_threshold, reduce_to_threshold_dyadic, DeltaBits};
use nfa_approx::sampling::AugmentedSampler;
use nfa_approx::{
    certify_acyclic, certify_block, parse_dfa, parse_nfa, Dfa, LengthDistribution, Nfa, RngStream,
    WordDistribution,
};

const SCHEMA: u32 = 1;

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: io::Error },
    #[error("{path}: {source}")]
    Input {
        path: PathBuf,
        source: nfa_approx::Error,
    },
    #[error(transparent)]
    Core(#[from] nfa_approx::Error),
    #[error("{0}")]
    Usage(String),
}

#[derive(Parser)]
#[command(name = "nfa-approx", version, about = "Approximate NFA universality by sampling")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Sampling {
    /// Tolerance in (0,1)
    #[arg(long)]
    eps: f64,
    /// Random seed; a fresh one is drawn and reported when absent
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Is L(ADFA) included in L(NFA)? Samples uniformly from the ADFA's language
    PraxSubset {
        #[arg(long)]
        nfa: PathBuf,
        #[arg(long)]
        adfa: PathBuf,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Universality of a block NFA under the uniform distribution on its block length
    PraxBlock {
        #[arg(long)]
        nfa: PathBuf,
        #[command(flatten)]
        sampling: Sampling,
        #[arg(long, default_value_t = 1)]
        amplify: u32,
    },
    /// Universality under the uniform distribution on words of length at most --len
    PraxMaxlen {
        #[arg(long)]
        nfa: PathBuf,
        #[arg(long)]
        len: usize,
        #[command(flatten)]
        sampling: Sampling,
        /// Largest accepted --len
        #[arg(long, env = "NFA_APPROX_MAX_LEN", default_value_t = estimators::DEFAULT_MAX_LENGTH)]
        max_len: usize,
    },
    /// Universality under a length-based distribution
    PraxUniv {
        #[arg(long)]
        nfa: PathBuf,
        /// uniform:M=<int> | lambert:base=<real>,d=<int> | dirichlet:t=<real>,d=<int>
        #[arg(long)]
        dist: LengthDistribution,
        #[command(flatten)]
        sampling: Sampling,
        #[arg(long, default_value_t = 1)]
        amplify: u32,
    },
    /// Deterministic universality test for unary NFAs
    PaxUnary {
        #[arg(long)]
        nfa: PathBuf,
        #[arg(long)]
        dist: LengthDistribution,
        #[arg(long)]
        eps: f64,
    },
    /// Is the intersection of the DFAs' languages eps-empty?
    #[command(group(ArgGroup::new("mode").required(true).args(["dist", "len"])))]
    Emptiness {
        /// Comma-separated DFA files
        #[arg(long, value_delimiter = ',', required = true)]
        dfas: Vec<PathBuf>,
        #[arg(long)]
        dist: Option<LengthDistribution>,
        /// Uniform distribution on words of exactly this length
        #[arg(long)]
        len: Option<usize>,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Exact universality index by brute force
    Oracle {
        #[arg(long)]
        nfa: PathBuf,
        #[arg(long, value_enum)]
        mode: OracleMode,
        /// Required for --mode truncated
        #[arg(long)]
        dist: Option<LengthDistribution>,
        /// Required for --mode truncated
        #[arg(long)]
        cutoff: Option<u64>,
        #[arg(long, env = "NFA_APPROX_SUBSET_LIMIT", default_value_t = DEFAULT_SUBSET_LIMIT)]
        subset_limit: usize,
    },
    /// Draw words from the truncation of a length-based distribution
    Sample {
        #[arg(long)]
        dist: LengthDistribution,
        #[arg(long)]
        cutoff: u64,
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 2)]
        alphabet: u32,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Build the threshold-problem instance for a binary block NFA
    Reduce {
        #[arg(long)]
        bnfa: PathBuf,
        /// Rational threshold P/Q in (0,1)
        #[arg(long)]
        delta: DeltaBits,
        /// Use the exact-size gadget; requires a dyadic delta
        #[arg(long)]
        dyadic: bool,
        /// Write the automaton here instead of embedding it in the report
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleMode {
    Block,
    Truncated,
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_owned(),
        source,
    })
}

fn load_nfa(path: &Path) -> Result<Nfa, CliError> {
    parse_nfa(&read(path)?).map_err(|source| CliError::Input {
        path: path.to_owned(),
        source,
    })
}

fn load_dfa(path: &Path) -> Result<Dfa, CliError> {
    parse_dfa(&read(path)?).map_err(|source| CliError::Input {
        path: path.to_owned(),
        source,
    })
}

fn stream(seed: Option<u64>) -> RngStream {
    RngStream::new(seed.unwrap_or_else(rand::random))
}

/// Decimal with 15 significant digits, trailing zeros trimmed.
fn decimal(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x:?}");
    }
    let digits = (14 - x.abs().log10().floor() as i32).max(0) as usize;
    let mut s = format!("{x:.digits$}");
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.push('0');
        }
    } else {
        s.push_str(".0");
    }
    s
}

struct Outcome {
    stdout: String,
    code: u8,
}

fn report_json(command: &str, report: &EstimateReport, extra: Value) -> Outcome {
    let mut obj = Map::new();
    obj.insert("schema".into(), json!(SCHEMA));
    obj.insert("command".into(), json!(command));
    if let Value::Object(fields) = serde_json::to_value(report).expect("reports serialize") {
        obj.extend(fields);
    }
    if let Value::Object(fields) = extra {
        obj.extend(fields);
    }
    Outcome {
        stdout: Value::Object(obj).to_string(),
        code: if report.verdict { 0 } else { 1 },
    }
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    let tolerance = |eps: f64| Tolerance::new(eps);
    match cli.command {
        Command::PraxSubset {
            nfa,
            adfa,
            sampling,
        } => {
            let a = load_nfa(&nfa)?;
            let b = certify_acyclic(&load_dfa(&adfa)?)?;
            let eps = tolerance(sampling.eps)?;
            let report = prax_adfa_subset_nfa(&a, &b, eps, &mut stream(sampling.seed))?;
            Ok(report_json("prax-subset", &report, json!({ "eps": sampling.eps })))
        }
        Command::PraxBlock {
            nfa,
            sampling,
            amplify: k,
        } => {
            let a = load_nfa(&nfa)?;
            let eps = tolerance(sampling.eps)?;
            let mut rng = stream(sampling.seed);
            let amplified = amplify(k, || prax_block_univ(&a, eps, &mut rng))?;
            Ok(report_json(
                "prax-block",
                &amplified.report,
                json!({ "eps": sampling.eps, "amplify": k, "runs": amplified.runs }),
            ))
        }
        Command::PraxMaxlen {
            nfa,
            len,
            sampling,
            max_len,
        } => {
            let a = load_nfa(&nfa)?;
            let eps = tolerance(sampling.eps)?;
            let report = prax_maxlen_univ_bounded(&a, len, eps, max_len, &mut stream(sampling.seed))?;
            Ok(report_json("prax-maxlen", &report, json!({ "eps": sampling.eps })))
        }
        Command::PraxUniv {
            nfa,
            dist,
            sampling,
            amplify: k,
        } => {
            let a = load_nfa(&nfa)?;
            let eps = tolerance(sampling.eps)?;
            let mut rng = stream(sampling.seed);
            let amplified = amplify(k, || prax_univ(&a, eps, &dist, &mut rng))?;
            Ok(report_json(
                "prax-univ",
                &amplified.report,
                json!({
                    "eps": sampling.eps,
                    "dist": dist.to_string(),
                    "amplify": k,
                    "runs": amplified.runs,
                }),
            ))
        }
        Command::PaxUnary { nfa, dist, eps } => {
            let a = load_nfa(&nfa)?;
            let report = pax_unary_univ(&a, tolerance(eps)?, &dist)?;
            Ok(report_json("pax-unary", &report, json!({ "eps": eps, "dist": dist.to_string() })))
        }
        Command::Emptiness {
            dfas,
            dist,
            len,
            sampling,
        } => {
            let ds = dfas.iter().map(|p| load_dfa(p)).collect::<Result<Vec<_>, _>>()?;
            let eps = tolerance(sampling.eps)?;
            let (mode, label) = match (dist, len) {
                (Some(l), None) => {
                    let label = l.to_string();
                    (EmptinessMode::Tractable(l), json!(label))
                }
                (None, Some(n)) => (EmptinessMode::Block(n), Value::Null),
                _ => return Err(CliError::Usage("give exactly one of --dist and --len".into())),
            };
            let report = prax_emptiness(&ds, eps, &mode, &mut stream(sampling.seed))?;
            Ok(report_json(
                "emptiness",
                &report,
                json!({ "eps": sampling.eps, "dist": label, "len": len }),
            ))
        }
        Command::Oracle {
            nfa,
            mode,
            dist,
            cutoff,
            subset_limit,
        } => {
            let a = load_nfa(&nfa)?;
            let limits = Limits {
                subsets: subset_limit,
                ..Limits::default()
            };
            let body = match mode {
                OracleMode::Block => {
                    let len = certify_block(&a)?.word_length();
                    json!({
                        "mode": "block",
                        "length": len,
                        "index": decimal(limits.exact_index_block(&a)?),
                    })
                }
                OracleMode::Truncated => {
                    let (Some(l), Some(m)) = (dist, cutoff) else {
                        return Err(CliError::Usage("--mode truncated needs --dist and --cutoff".into()));
                    };
                    let interval = limits.exact_index_truncated(&a, &l, m)?;
                    json!({
                        "mode": "truncated",
                        "dist": l.to_string(),
                        "M": m,
                        "lower": decimal(interval.lower),
                        "upper": decimal(interval.upper),
                    })
                }
            };
            let mut obj = json!({ "schema": SCHEMA, "command": "oracle" });
            obj.as_object_mut().unwrap().extend(body.as_object().unwrap().clone());
            Ok(Outcome {
                stdout: obj.to_string(),
                code: 0,
            })
        }
        Command::Sample {
            dist,
            cutoff,
            n,
            alphabet,
            seed,
        } => {
            let w = WordDistribution::length_based(dist, alphabet)?;
            let sampler = AugmentedSampler::new(&w, cutoff)?;
            let mut rng = stream(seed);
            let mut out = String::new();
            for _ in 0..n {
                out.push_str(&sampler.sample(&mut rng).to_string());
                out.push('\n');
            }
            eprintln!("{}", json!({ "schema": SCHEMA, "seed": rng.seed() }));
            out.pop();
            Ok(Outcome { stdout: out, code: 0 })
        }
        Command::Reduce {
            bnfa,
            delta,
            dyadic,
            out,
        } => {
            let b = certify_block(&load_nfa(&bnfa)?)?;
            let r = if dyadic {
                reduce_to_threshold_dyadic(&b, &delta)?
            } else {
                reduce_to_threshold(&b, &delta)?
            };
            let text = r.nfa.to_string();
            let mut obj = json!({
                "schema": SCHEMA,
                "command": "reduce",
                "delta": delta.to_string(),
                "n": r.n,
                "k": r.k,
                "m_k": r.m_k.to_string(),
                "p1": r.p1,
                "states": r.nfa.num_states(),
                "transitions": r.nfa.num_transitions(),
            });
            let fields = obj.as_object_mut().unwrap();
            match out {
                Some(path) => {
                    fs::write(&path, text).map_err(|source| CliError::Write {
                        path: path.clone(),
                        source,
                    })?;
                    fields.insert("out".into(), json!(path.display().to_string()));
                }
                None => {
                    fields.insert("nfa".into(), json!(text));
                }
            }
            Ok(Outcome {
                stdout: obj.to_string(),
                code: 0,
            })
        }
    }
}

fn fail(message: &str) -> ExitCode {
    eprintln!("{}", json!({ "schema": SCHEMA, "error": message }));
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            let rendered = e.to_string();
            let first = rendered.lines().next().unwrap_or("invalid arguments");
            return fail(first.trim_start_matches("error: "));
        }
    };
    match run(cli) {
        Ok(outcome) => {
            let mut stdout = io::stdout().lock();
            // a closed pipe is not an input error
            let _ = writeln!(stdout, "{}", outcome.stdout);
            ExitCode::from(outcome.code)
        }
        Err(e) => fail(&e.to_string()),
    }
}
