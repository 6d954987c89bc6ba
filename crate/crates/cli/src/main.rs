use std::fs;
use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use psi_pascal::matrix::MatrixKind;
use psi_pascal::{
    fermat, k_matrix, list_identities, pascal_closed, run_identity, run_suite, AdmissibleSequence,
    Error, MatrixDocument, Params, Polynomial, Profile,
};

mod render;

/// Exact ψ-Pascal, Fermat and q̂ operator matrices, and identity checks.
#[derive(Parser, Debug)]
#[command(name = "psi-pascal", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Tabulate n_ψ, n_ψ! and the binomial row n.
    Seq {
        #[command(flatten)]
        common: Common,
    },
    /// Generate a matrix: K, pascal or fermat.
    Gen {
        kind: String,
        #[command(flatten)]
        common: Common,
        /// Value of x for the Pascal matrix; omitted or "x" means symbolic.
        #[arg(long)]
        x: Option<String>,
    },
    /// Check one identity (see `list`).
    Check {
        id: String,
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        knobs: Knobs,
    },
    /// Run every identity over the built-in sequences and operators.
    Suite {
        #[arg(long, default_value = "quick")]
        profile: String,
        #[arg(short = 'f', long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(short = 'o', long)]
        out: Option<String>,
    },
    /// List registered identities.
    List {
        #[arg(short = 'f', long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Args, Debug)]
struct Common {
    /// Sequence or operator selector, as a positional argument.
    target: Option<String>,
    /// Sequence or operator selector.
    #[arg(short = 's', long = "sequence", conflicts_with = "target")]
    sequence: Option<String>,
    #[arg(short = 'n', long = "size")]
    size: Option<usize>,
    #[arg(short = 'f', long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(short = 'o', long)]
    out: Option<String>,
}

impl Common {
    fn selector(&self) -> &str {
        self.target.as_deref().or(self.sequence.as_deref()).unwrap_or("classical")
    }
}

#[derive(Args, Debug)]
struct Knobs {
    #[arg(long)]
    x: Option<String>,
    #[arg(long)]
    y: Option<String>,
    #[arg(long)]
    i: Option<usize>,
    #[arg(long)]
    j: Option<usize>,
    /// Monomial degree for operator identities.
    #[arg(short = 'm', long = "degree")]
    degree: Option<usize>,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long = "s")]
    s: Option<usize>,
    #[arg(long = "max-degree")]
    max_degree: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
    Latex,
}

/// A usage error: bad selector, kind, size or parameter. Exit status 2.
struct Usage(String);

impl From<Error> for Usage {
    fn from(e: Error) -> Self {
        Usage(e.to_string())
    }
}

type Outcome = Result<(String, Option<String>, u8), Usage>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match dispatch(cli.command) {
        Ok((text, out, code)) => match emit(&text, out.as_deref()) {
            Ok(()) => ExitCode::from(code),
            Err(e) => {
                eprintln!("psi-pascal: {e}");
                ExitCode::from(2)
            }
        },
        Err(Usage(msg)) => {
            eprintln!("psi-pascal: {msg}");
            eprintln!("Run `psi-pascal --help` for usage.");
            ExitCode::from(2)
        }
    }
}

fn emit(text: &str, out: Option<&str>) -> io::Result<()> {
    match out {
        Some(path) => fs::write(path, text),
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()
        }
    }
}

fn dispatch(command: Command) -> Outcome {
    match command {
        Command::Seq { common } => cmd_seq(&common),
        Command::Gen { kind, common, x } => cmd_gen(&kind, &common, x.as_deref()),
        Command::Check { id, common, knobs } => cmd_check(&id, &common, knobs),
        Command::Suite { profile, format, out } => cmd_suite(&profile, format, out),
        Command::List { format } => {
            let text = match format {
                Format::Json => {
                    let mut s = serde_json::to_string(list_identities()).expect("specs serialize");
                    s.push('\n');
                    s
                }
                _ => render::identity_list(list_identities()),
            };
            Ok((text, None, 0))
        }
    }
}

fn cmd_seq(common: &Common) -> Outcome {
    let seq = AdmissibleSequence::from_selector(common.selector())?;
    let n = common.size.unwrap_or(6);
    let table = render::SequenceTable::build(&seq, n)?;
    let text = match common.format {
        Format::Json => table.to_json(),
        Format::Csv => table.to_csv(),
        Format::Text => table.to_text(),
        Format::Latex => return Err(Usage("seq supports text, json and csv".into())),
    };
    Ok((text, common.out.clone(), 0))
}

fn cmd_gen(kind: &str, common: &Common, x: Option<&str>) -> Outcome {
    let kind = MatrixKind::parse(kind)?;
    let seq = AdmissibleSequence::from_selector(common.selector())?;
    let n = common.size.unwrap_or(5);
    if n == 0 {
        return Err(Usage("size must be at least 1".into()));
    }
    let name = seq.selector();
    let doc = match kind {
        MatrixKind::K => MatrixDocument::from_lower(kind, &name, None, &k_matrix(&seq, n)?),
        MatrixKind::Fermat => MatrixDocument::from_square(kind, &name, &fermat(&seq, n)?),
        MatrixKind::Pascal => match x.map(str::trim) {
            None | Some("x") => {
                let x = Polynomial::x(seq.domain());
                MatrixDocument::from_lower(kind, &name, Some("x".into()), &pascal_closed(&seq, n, &x)?)
            }
            Some(value) => {
                let x = psi_pascal::scalar_parse(value, seq.domain())?;
                MatrixDocument::from_lower(kind, &name, Some(x.to_string()), &pascal_closed(&seq, n, &x)?)
            }
        },
    };
    let text = match common.format {
        Format::Text => doc.to_text(),
        Format::Json => doc.to_json(),
        Format::Csv => doc.to_csv(),
        Format::Latex => doc.to_latex(),
    };
    Ok((text, common.out.clone(), 0))
}

fn cmd_check(id: &str, common: &Common, k: Knobs) -> Outcome {
    if matches!(common.format, Format::Csv | Format::Latex) {
        return Err(Usage("check supports text and json".into()));
    }
    let params = Params {
        n: common.size,
        x: k.x,
        y: k.y,
        i: k.i,
        j: k.j,
        m: k.degree,
        r: k.r,
        s: k.s,
        max_degree: k.max_degree,
    };
    let report = run_identity(id, common.selector(), &params)?;
    let text = match common.format {
        Format::Json => format!("{}\n", report.to_json_line()),
        _ => render::report_text(&report),
    };
    let code = if report.passed() { 0 } else { 1 };
    Ok((text, common.out.clone(), code))
}

fn cmd_suite(profile: &str, format: Format, out: Option<String>) -> Outcome {
    let profile = Profile::parse(profile)?;
    let outcome = run_suite(profile);
    let text = match format {
        Format::Json => outcome.to_json_lines(),
        Format::Text => render::suite_text(&outcome),
        _ => return Err(Usage("suite supports text and json".into())),
    };
    let code = if outcome.summary.healthy { 0 } else { 1 };
    Ok((text, out, code))
}
