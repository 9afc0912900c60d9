use std::io::IsTerminal;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use nzflow::{Error, Limits};

mod commands;
mod verify;

#[derive(Parser, Debug)]
#[command(name = "nzflow", version, about = "Nowhere-zero flows through polynomial normal forms")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Cap on enumerated states and polynomial terms.
    #[arg(long, global = true, value_name = "N")]
    bound: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Method {
    Membership,
    Conformal,
    Brute,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Normal form of the flow polynomial modulo 1 + x + ... + x^(p-1).
    NormalForm {
        #[arg(short, value_parser = clap::value_parser!(u32).range(2..=255))]
        p: u32,
        file: PathBuf,
    },
    /// Decide whether a nowhere-zero p-flow exists.
    NzFlow {
        #[arg(short, value_parser = clap::value_parser!(u32).range(2..=255))]
        p: u32,
        #[arg(long, value_enum, default_value = "membership")]
        method: Method,
        file: PathBuf,
    },
    /// Even and odd ψ-conformal counts and c(ψ).
    Conformal {
        #[arg(short, value_parser = clap::value_parser!(u32).range(2..=255))]
        p: u32,
        /// File holding ψ (`p=3; e1=1; ...` or JSON).
        #[arg(long)]
        psi: PathBuf,
        /// Count ψ-conformal flows on the plane dual (needs `rot` records).
        #[arg(long)]
        dual: bool,
        file: PathBuf,
    },
    /// Nonzero c(ψ) over all ψ, from the conformal dual flows.
    CoeffTable {
        #[arg(short, value_parser = clap::value_parser!(u32).range(2..=255))]
        p: u32,
        file: PathBuf,
    },
    /// Z2 x Z2 normal form and the three four-flow verdicts.
    FourFlow {
        /// Print the Klein coefficient table instead.
        #[arg(long)]
        table: bool,
        file: PathBuf,
    },
    /// Orient a bridgeless chordal graph so that 0 is the only conformal dual 4-flow.
    ChordalOrient { file: PathBuf },
    /// Compare nowhere-zero flows with conformal flow counts on the plane dual.
    PlanarCheck {
        #[arg(short, value_parser = clap::value_parser!(u32).range(2..=255))]
        p: u32,
        file: PathBuf,
    },
    /// Plane dual, in graph file format.
    Dual { file: PathBuf },
    /// p-colorability, or the coloring induced by a dual flow.
    Color {
        #[arg(short, value_parser = clap::value_parser!(u32).range(2..=255))]
        p: u32,
        #[arg(long, value_name = "MAPFILE")]
        from_dual_flow: Option<PathBuf>,
        file: PathBuf,
    },
    /// Run every applicable cross-check.
    Verify {
        #[arg(short, value_parser = clap::value_parser!(u32).range(2..=255))]
        p: u32,
        file: PathBuf,
    },
}

/// What a command prints and how it exits.
pub struct Output {
    pub text: String,
    pub json: serde_json::Value,
    pub ok: bool,
}

pub enum Failure {
    Input(String),
    Bound(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BoundExceeded { .. } => Failure::Bound(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

pub struct Style {
    color: bool,
}

impl Style {
    pub fn verdict(&self, yes: bool) -> String {
        let (word, code) = if yes { ("YES", "32") } else { ("NO", "31") };
        if self.color {
            format!("\x1b[{code}m{word}\x1b[0m")
        } else {
            word.to_string()
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let limits = match cli.bound {
        Some(n) => Limits {
            states: n,
            terms: usize::try_from(n).unwrap_or(usize::MAX),
        },
        None => Limits::default(),
    };
    let style = Style {
        color: !cli.json && std::env::var_os("NO_COLOR").is_none() && std::io::stdout().is_terminal(),
    };
    match commands::run(&cli.command, limits, &style) {
        Ok(out) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&out.json).expect("serializable"));
            } else {
                print!("{}", out.text);
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Bound(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
