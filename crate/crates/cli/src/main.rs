//! `orbimirror`: tables and verification suites for weighted projective
//! spaces and their Landau-Ginzburg mirrors.

mod commands;
mod emit;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use orbimirror::{Error, Weights};

use emit::Format;

#[derive(Debug, Parser)]
#[command(
    name = "orbimirror",
    version,
    about = "Exact orbifold quantum cohomology of weighted projective spaces and its mirror"
)]
struct Cli {
    #[command(subcommand)]
    verb: Verb,

    /// Output format; json is the stable machine format.
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,

    /// Write the output to a file instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Refuse weight vectors whose sum exceeds this bound.
    #[arg(
        long,
        global = true,
        env = "ORBIMIRROR_MAX_MU",
        default_value_t = 64,
        hide_env_values = true
    )]
    max_mu: usize,
}

#[derive(Debug, Args)]
struct WeightArg {
    /// Comma-separated positive integers, e.g. 1,2,2,3,3,3.
    #[arg(long, short = 'w')]
    weights: Weights,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Side {
    /// Orbifold cohomology.
    A,
    /// Landau-Ginzburg mirror.
    B,
}

#[derive(Debug, Subcommand)]
enum Verb {
    /// Invariants of the weights, sectors and spectrum.
    Info(WeightArg),
    /// The flat basis with degrees and mirror images.
    Basis(WeightArg),
    /// The orbifold Poincare pairing.
    Pairing(WeightArg),
    /// The orbifold cup product table (upper triangle).
    CupTable(WeightArg),
    /// Three-point tensors; all nonzero ones unless classes are given.
    Triple {
        #[command(flatten)]
        w: WeightArg,
        /// Three classes, each a flat index or a label like eta[0,1/3].
        #[arg(long, num_args = 3, value_name = "CLASS")]
        classes: Option<Vec<String>>,
    },
    /// Obstruction bundles for sector triples with integral sum.
    Obstruction {
        #[command(flatten)]
        w: WeightArg,
        /// Three sectors as p/q, e.g. 1/3,1/3,1/3.
        #[arg(long, value_delimiter = ',', num_args = 3, value_name = "GAMMA")]
        gammas: Option<Vec<String>>,
    },
    /// Three-point Gromov-Witten values with one divisor insertion.
    Gw {
        #[command(flatten)]
        w: WeightArg,
        /// Two flat indices (or labels); all pairs otherwise.
        #[arg(long, num_args = 2, value_name = "CLASS")]
        classes: Option<Vec<String>>,
        /// Treat the conjectured closed-form values as established.
        #[arg(long)]
        assume_conjecture: bool,
    },
    /// Mirror basis, or the product of two basis elements.
    Bside {
        #[command(flatten)]
        w: WeightArg,
        /// Two flat indices i j: print omega~_i * omega~_j.
        #[arg(long, num_args = 2, value_name = "INDEX")]
        classes: Option<Vec<usize>>,
    },
    /// Initial conditions (A0, A_inf, metric, unit) on one side.
    Frobenius {
        #[command(flatten)]
        w: WeightArg,
        #[arg(long, value_enum, default_value = "b")]
        side: Side,
        #[arg(long)]
        assume_conjecture: bool,
    },
    /// Verify the mirror correspondence; exit code 1 on failure.
    Correspond {
        #[command(flatten)]
        w: WeightArg,
        /// Only the classical (degree-zero) correspondence.
        #[arg(long)]
        classical: bool,
        /// Only the comparison of initial conditions.
        #[arg(long)]
        quantum: bool,
    },
    /// Taylor coefficients of the potential from WDVV reconstruction.
    Potential {
        #[command(flatten)]
        w: WeightArg,
        #[arg(long, default_value_t = 8)]
        max_length: usize,
        /// Source of the initial three-point values.
        #[arg(long, value_enum, default_value = "b")]
        side: Side,
        #[arg(long)]
        assume_conjecture: bool,
    },
    /// Run every invariant suite; exit code 1 if any check fails.
    Check {
        #[command(flatten)]
        w: WeightArg,
        /// Length for the WDVV audit (default depends on mu).
        #[arg(long)]
        max_length: Option<usize>,
    },
}

impl Verb {
    fn weights(&self) -> &Weights {
        match self {
            Verb::Info(a) | Verb::Basis(a) | Verb::Pairing(a) | Verb::CupTable(a) => &a.weights,
            Verb::Triple { w, .. }
            | Verb::Obstruction { w, .. }
            | Verb::Gw { w, .. }
            | Verb::Bside { w, .. }
            | Verb::Frobenius { w, .. }
            | Verb::Correspond { w, .. }
            | Verb::Potential { w, .. }
            | Verb::Check { w, .. } => &w.weights,
        }
    }
}

/// What went wrong, mapped to an exit code.
enum Failure {
    /// Bad input: exit code 2.
    Usage(String),
    /// A verification did not hold: exit code 1.
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidWeights(_)
            | Error::IndexOutOfRange { .. }
            | Error::NotInSpectrum(_)
            | Error::Parse(_)
            | Error::Degenerate(_)
            | Error::Overflow(_) => Failure::Usage(e.to_string()),
            _ => Failure::Verification(e.to_string()),
        }
    }
}

/// A rendered table plus whether its verification passed.
pub struct Output {
    table: emit::Table,
    passed: bool,
}

fn run(cli: Cli) -> Result<bool, Failure> {
    let weights = cli.verb.weights().clone();
    if weights.mu() > cli.max_mu {
        return Err(Failure::Usage(format!(
            "mu = {} exceeds the limit {} (raise it with ORBIMIRROR_MAX_MU)",
            weights.mu(),
            cli.max_mu
        )));
    }
    let output = commands::dispatch(&cli.verb)?;
    let text = output.table.render(cli.format);
    match &cli.out {
        Some(path) => {
            std::fs::write(path, &text).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))?
        }
        None => print!("{text}"),
    }
    if cli.format != Format::Md {
        for note in &output.table.notes {
            eprintln!("note: {note}");
        }
    }
    Ok(output.passed)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn errors_map_to_exit_classes() {
        let usage = Failure::from(Error::InvalidWeights("empty".into()));
        assert!(matches!(usage, Failure::Usage(_)));
        let failed = Failure::from(Error::ZeroPivot("A[0, 0, 3]".into()));
        assert!(matches!(failed, Failure::Verification(_)));
    }
}
