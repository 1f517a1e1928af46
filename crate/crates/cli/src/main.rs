//! `skewconv`: encode, decode and analyze skew convolutional codes.
//!
//! Exit codes: 0 success, 1 usage or parse error, 2 analysis failure.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};

use skewconv::codespec::{format_sequence, parse_sequence, FieldSpec};
use skewconv::decoder::{bcjr, viterbi, QsChannel};
use skewconv::dual::syndrome_former;
use skewconv::report::analyze;
use skewconv::sim::{simulate, SimConfig};
use skewconv::{AnyCode, CodeSpec, Execution, ModuleSide};

#[derive(Parser)]
#[command(
    name = "skewconv",
    version,
    about = "Skew convolutional and skew trellis codes over finite fields"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Encode an information sequence (one k-block per line).
    Encode {
        #[arg(long)]
        code: PathBuf,
        /// Input file; standard input when omitted.
        #[arg(long)]
        input: Option<PathBuf>,
        /// Append `memory` zero blocks to return the encoder to state 0.
        #[arg(long)]
        terminate: bool,
        /// Write field elements as powers of the primitive element.
        #[arg(long)]
        pretty: bool,
    },
    /// Decode a received sequence (one n-block per line).
    Decode {
        #[arg(long)]
        code: PathBuf,
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Algo::Viterbi)]
        algo: Algo,
        /// Channel symbol error probability (BCJR only).
        #[arg(long, default_value_t = 0.05)]
        eps: f64,
        /// The frame ends with `memory` zero-input tail blocks.
        #[arg(long)]
        terminated: bool,
        #[arg(long)]
        pretty: bool,
    },
    /// Distance analysis as JSON.
    Analyze {
        #[arg(long)]
        code: PathBuf,
        /// Largest loop length in the burst distance table.
        #[arg(long, default_value_t = 10)]
        lmax: usize,
        #[arg(long)]
        sequential: bool,
    },
    /// Syndrome former H(D) as a code-spec JSON document.
    Dual {
        #[arg(long)]
        code: PathBuf,
        /// Largest dual memory to try (default n * mu).
        #[arg(long)]
        max_mu_perp: Option<usize>,
    },
    /// Graphviz DOT rendering of the trellis.
    Trellis {
        #[arg(long)]
        code: PathBuf,
        /// Number of sections to draw (default: one period).
        #[arg(long)]
        sections: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        pretty: bool,
    },
    /// Monte-Carlo error rates over the q-ary symmetric channel, as JSON.
    Simulate {
        #[arg(long)]
        code: PathBuf,
        #[arg(long)]
        eps: f64,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        /// Information blocks per frame.
        #[arg(long, default_value_t = 100)]
        frame_len: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        sequential: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Algo {
    Viterbi,
    Bcjr,
}

struct Failure {
    code: u8,
    err: anyhow::Error,
}

type CmdResult = Result<Vec<u8>, Failure>;

fn usage<E: Into<anyhow::Error>>(e: E) -> Failure {
    Failure {
        code: 1,
        err: e.into(),
    }
}

fn analysis<E: Into<anyhow::Error>>(e: E) -> Failure {
    Failure {
        code: 2,
        err: e.into(),
    }
}

fn load_code(path: &Path) -> Result<AnyCode, Failure> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))
        .map_err(usage)?;
    let spec = CodeSpec::from_json(&text)
        .with_context(|| path.display().to_string())
        .map_err(usage)?;
    spec.build()
        .with_context(|| path.display().to_string())
        .map_err(usage)
}

fn read_input(path: Option<&Path>) -> Result<String, Failure> {
    match path {
        Some(p) => fs::read_to_string(p)
            .with_context(|| format!("reading {}", p.display()))
            .map_err(usage),
        None => {
            let mut s = String::new();
            io::stdin()
                .read_to_string(&mut s)
                .context("reading standard input")
                .map_err(usage)?;
            Ok(s)
        }
    }
}

fn exec(sequential: bool) -> Execution {
    if sequential {
        Execution::Sequential
    } else {
        Execution::Parallel
    }
}

fn json(value: &impl serde::Serialize) -> Vec<u8> {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s.into_bytes()
}

fn run(cmd: Command) -> CmdResult {
    match cmd {
        Command::Encode {
            code,
            input,
            terminate,
            pretty,
        } => {
            let code = load_code(&code)?;
            let text = read_input(input.as_deref())?;
            let u = parse_sequence(&text, code.k(), code.field()).map_err(usage)?;
            let v = code.encode(&u, terminate).map_err(usage)?;
            Ok(format_sequence(&v, code.field(), pretty).into_bytes())
        }
        Command::Decode {
            code,
            input,
            algo,
            eps,
            terminated,
            pretty,
        } => {
            let code = load_code(&code)?;
            let text = read_input(input.as_deref())?;
            let r = parse_sequence(&text, code.n(), code.field()).map_err(usage)?;
            let tr = code.trellis().map_err(analysis)?;
            let info = match algo {
                Algo::Viterbi => viterbi(&tr, &r, terminated).map_err(usage)?.info,
                Algo::Bcjr => {
                    let ch = QsChannel::new(code.field().size(), eps).map_err(usage)?;
                    bcjr(&tr, &r, &ch, terminated).map_err(usage)?.info
                }
            };
            Ok(format_sequence(&info, code.field(), pretty).into_bytes())
        }
        Command::Analyze {
            code,
            lmax,
            sequential,
        } => {
            let code = load_code(&code)?;
            if lmax == 0 {
                return Err(usage(anyhow!("--lmax must be at least 1")));
            }
            let report = analyze(&code, lmax, exec(sequential)).map_err(analysis)?;
            Ok(json(&report))
        }
        Command::Dual { code, max_mu_perp } => {
            let code = load_code(&code)?;
            let AnyCode::Left(left) = &code else {
                return Err(usage(anyhow!(
                    "syndrome formers are only defined for left (module_side \"left\") codes"
                )));
            };
            let sf = syndrome_former(left, max_mu_perp).map_err(analysis)?;
            let f = code.field();
            let spec = CodeSpec {
                field: FieldSpec {
                    p: f.characteristic(),
                    n: f.degree(),
                    modulus: Some(f.modulus().to_vec()),
                    theta_r: f.theta_r(),
                },
                k: sf.h().rows(),
                n: sf.h().cols(),
                module_side: ModuleSide::Left,
                g: sf.h().to_nested(),
            };
            Ok(spec.to_json().into_bytes())
        }
        Command::Trellis {
            code,
            sections,
            out,
            pretty,
        } => {
            let code = load_code(&code)?;
            let tr = code.trellis().map_err(analysis)?;
            let dot = tr.to_dot(sections.unwrap_or(tr.period()), pretty);
            match out {
                Some(path) => {
                    fs::write(&path, dot)
                        .with_context(|| format!("writing {}", path.display()))
                        .map_err(usage)?;
                    Ok(Vec::new())
                }
                None => Ok(dot.into_bytes()),
            }
        }
        Command::Simulate {
            code,
            eps,
            trials,
            frame_len,
            seed,
            sequential,
        } => {
            let code = load_code(&code)?;
            let q = code.field().size();
            QsChannel::new(q, eps).map_err(usage)?;
            let cfg = SimConfig {
                eps,
                trials,
                frame_len,
                seed,
            };
            let report = simulate(&code, &cfg, exec(sequential)).map_err(analysis)?;
            Ok(json(&report))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli.command) {
        Ok(bytes) => {
            let mut stdout = io::stdout().lock();
            if stdout
                .write_all(&bytes)
                .and_then(|_| stdout.flush())
                .is_err()
            {
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(Failure { code, err }) => {
            eprintln!("error: {err:#}");
            ExitCode::from(code)
        }
    }
}
