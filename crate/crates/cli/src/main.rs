mod commands;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "rfsms", version, about = "Configurations and simple-minded systems of representation-finite self-injective algebras")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Tsv, alias = "out")]
    format: Format,
    /// Maximum number of worker threads.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Tsv,
    Json,
    Dot,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Validate an RFS type such as A:5/f=1/t=2.
    Classify { rfs_type: String },
    /// Hom dimensions between the vertices of a stable translation quiver.
    Hom(TypeArg),
    /// List the configurations of a stable translation quiver.
    Enumerate(TypeArg),
    /// Automorphism orbits of configurations.
    Orbits(TypeArg),
    /// Count Brauer trees.
    Brauer {
        #[arg(long)]
        edges: usize,
        #[arg(long, default_value_t = 1)]
        multiplicity: usize,
        /// Count multiplicity-one trees with a distinguished leaf instead.
        #[arg(long)]
        marked_leaf: bool,
    },
    /// Simple-minded systems of a Nakayama algebra.
    Sms {
        #[command(flatten)]
        algebra: AlgebraArg,
        /// List every sms instead of only counting them.
        #[arg(long)]
        list: bool,
        /// Largest admissible number of non-projectives.
        #[arg(long, default_value_t = sms_core::nakayama::DEFAULT_SMS_BOUND)]
        bound: usize,
    },
    /// Mutate an sms at some of its members.
    Mutate {
        #[command(flatten)]
        algebra: AlgebraArg,
        /// `simples` or a comma-separated list of top:length pairs.
        #[arg(long, default_value = "simples")]
        sms: String,
        /// 1-based positions of the members to mutate at.
        #[arg(long, value_delimiter = ',', required = true)]
        at: Vec<usize>,
        #[arg(long, value_enum, default_value_t = Dir::Left)]
        dir: Dir,
        /// Allow any Nakayama-stable subset, not only a single ν-orbit.
        #[arg(long)]
        allow_composite: bool,
    },
    /// The mutation quiver reachable from a starting sms.
    Quiver {
        #[command(flatten)]
        algebra: AlgebraArg,
        #[arg(long, default_value = "simples")]
        start: String,
        #[arg(long, value_enum, default_value_t = Dirs::Left)]
        dir: Dirs,
        #[arg(long)]
        allow_composite: bool,
        #[arg(long, default_value_t = 256)]
        max_depth: usize,
    },
    /// Run the acceptance criteria.
    Check {
        /// Run only these criteria.
        #[arg(long, value_delimiter = ',')]
        only: Vec<usize>,
    },
}

#[derive(Args, Debug)]
struct TypeArg {
    /// RFS type, e.g. D:4/f=1/t=1.
    #[arg(long = "type")]
    rfs_type: String,
}

#[derive(Args, Debug)]
struct AlgebraArg {
    /// Algebra in the form nakayama:E:L.
    #[arg(long)]
    algebra: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Dir {
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Dirs {
    Left,
    Right,
    Both,
}

/// Exit 2 for bad arguments, 1 when a computation fails.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Compute(String),
}

impl From<sms_core::Error> for CliError {
    fn from(e: sms_core::Error) -> Self {
        CliError::Compute(e.to_string())
    }
}

fn one_line(s: &str) -> String {
    s.lines().map(str::trim).find(|l| !l.is_empty()).unwrap_or("invalid arguments").trim_start_matches("error: ").to_string()
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            eprintln!("error: usage: {}", one_line(&e.to_string()));
            return ExitCode::from(2);
        }
    };
    if let Some(n) = cli.threads {
        if n == 0 {
            eprintln!("error: usage: --threads must be positive");
            return ExitCode::from(2);
        }
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    match commands::run(cli.command, cli.format) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(CliError::Usage(m)) => {
            eprintln!("error: usage: {}", one_line(&m));
            ExitCode::from(2)
        }
        Err(CliError::Compute(m)) => {
            eprintln!("error: compute: {}", one_line(&m));
            ExitCode::from(1)
        }
    }
}
