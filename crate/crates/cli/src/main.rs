//! `cyclemat`: command-line front end for cycle matrices.
//!
//! Exit status: 0 on success, 1 on a negative answer (invalid matrix, no
//! isomorphism, not transpose, irretractable), 2 on usage or input errors.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cyclemat::enumerate::{DedupMode, EnumFilter};
use cyclemat::Permutation;

use report::Status;

#[derive(Parser, Debug)]
#[command(
    name = "cyclemat",
    version,
    about = "Finite non-degenerate cycle sets as cycle matrices"
)]
struct Cli {
    /// Machine-readable JSON on stdout.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

/// A matrix file in text or JSON format, or `-` for stdin.
type Input = PathBuf;

#[derive(Subcommand, Debug)]
enum Command {
    /// Validate the cycle-matrix axioms.
    Check { matrix: Input },
    /// Canonical representative of the isomorphism class.
    Canon { matrix: Input },
    /// Find a relabelling carrying the first matrix to the second.
    Iso {
        a: Input,
        b: Input,
        /// List every isomorphism instead of the least one.
        #[arg(long)]
        all: bool,
    },
    /// Automorphism group.
    Aut {
        matrix: Input,
        /// Print only the group order.
        #[arg(long)]
        count: bool,
    },
    /// Quotient by equal rows.
    Retract {
        matrix: Input,
        /// Retract repeatedly and print every stage.
        #[arg(long)]
        chain: bool,
    },
    /// Multipermutation level.
    Level { matrix: Input },
    /// Orbits of the group generated by the rows.
    Orbits { matrix: Input },
    /// Exact determinant of the integer matrix.
    Det { matrix: Input },
    /// Whether the transpose is again a cycle matrix.
    TransposeCheck { matrix: Input },
    /// Build a matrix from a recipe.
    Build(BuildArgs),
    /// Every matrix of order n up to isomorphism.
    Enumerate {
        n: usize,
        /// Every valid matrix, not one per class.
        #[arg(long)]
        raw: bool,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, value_enum, default_value_t = ModeArg::Auto)]
        mode: ModeArg,
        /// Write one file per matrix into this directory instead of printing.
        #[arg(long)]
        dump: Option<PathBuf>,
        #[command(flatten)]
        filter: FilterArgs,
    },
    /// Class counts and predicate tallies for order n.
    Census {
        n: usize,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, value_enum, default_value_t = ModeArg::Auto)]
        mode: ModeArg,
        #[command(flatten)]
        filter: FilterArgs,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Check { .. } => "check",
            Command::Canon { .. } => "canon",
            Command::Iso { .. } => "iso",
            Command::Aut { .. } => "aut",
            Command::Retract { .. } => "retract",
            Command::Level { .. } => "level",
            Command::Orbits { .. } => "orbits",
            Command::Det { .. } => "det",
            Command::TransposeCheck { .. } => "transpose-check",
            Command::Build(_) => "build",
            Command::Enumerate { .. } => "enumerate",
            Command::Census { .. } => "census",
        }
    }
}

#[derive(Args, Debug)]
#[command(args_conflicts_with_subcommands = true, subcommand_required = false)]
struct BuildArgs {
    /// Construction described by a JSON file.
    #[arg(long)]
    spec: Option<PathBuf>,
    #[command(subcommand)]
    kind: Option<BuildKind>,
}

#[derive(Subcommand, Debug)]
enum BuildKind {
    /// Trivial solution: every row is the identity.
    Trivial {
        #[arg(long)]
        n: usize,
    },
    /// Every row equal to one permutation.
    Permutation {
        #[arg(long)]
        sigma: Permutation,
    },
    /// Tower matrix of order 2^m.
    Tower {
        #[arg(long)]
        m: usize,
    },
    /// Product of two or more matrices.
    Tensor {
        #[arg(num_args = 2.., required = true)]
        factors: Vec<Input>,
    },
    /// Two-block union.
    Union2 {
        x1: Input,
        x2: Input,
        #[arg(long)]
        alpha1: Permutation,
        #[arg(long)]
        alpha2: Permutation,
    },
    /// Left-nested unions of several factors.
    UnionIterated {
        #[arg(num_args = 2.., required = true)]
        factors: Vec<Input>,
        /// One automorphism per factor, in order.
        #[arg(long = "alpha", required = true)]
        alphas: Vec<Permutation>,
        /// Automorphism of each partial union, stages 2 onwards.
        #[arg(long)]
        cumulative: Vec<Permutation>,
    },
    /// Blocks placed by an image table on factor indices.
    Theta {
        #[arg(num_args = 1.., required = true)]
        factors: Vec<Input>,
        #[arg(long = "alpha", required = true)]
        alphas: Vec<Permutation>,
        #[arg(long)]
        theta: Permutation,
    },
    /// Two trivial factors glued along a partition of the first.
    Partitioned {
        #[arg(long)]
        k1: usize,
        #[arg(long)]
        k2: usize,
        /// Block sizes of the first factor, e.g. `2,1`.
        #[arg(long, value_delimiter = ',', required = true)]
        partition: Vec<usize>,
        /// Permutation of each block's local labels, one per block.
        #[arg(long, required = true)]
        alpha1: Vec<Permutation>,
        /// Permutation of the second factor used by each block.
        #[arg(long, required = true)]
        alpha2: Vec<Permutation>,
    },
    /// Solution whose permutation group is generated by commuting generators.
    Abelian {
        #[arg(long)]
        m: usize,
        #[arg(long = "gen")]
        generators: Vec<Permutation>,
    },
}

#[derive(Args, Debug, Default)]
struct FilterArgs {
    /// Keep only matrices with identity diagonal.
    #[arg(long)]
    square_free: bool,
    /// Keep only matrices with a transitive permutation group.
    #[arg(long)]
    indecomposable: bool,
    /// Keep only matrices whose transpose is a cycle matrix.
    #[arg(long)]
    transpose: bool,
    /// Keep only matrices of multipermutation level at most this.
    #[arg(long)]
    max_level: Option<usize>,
    /// Keep only matrices with all rows equal.
    #[arg(long)]
    permutation_only: bool,
}

impl FilterArgs {
    fn to_filter(&self) -> EnumFilter {
        let flag = |b: bool| b.then_some(true);
        EnumFilter {
            square_free: flag(self.square_free),
            indecomposable: flag(self.indecomposable),
            transpose: flag(self.transpose),
            max_level: self.max_level,
            permutation_only: flag(self.permutation_only),
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum ModeArg {
    Auto,
    Keys,
    Orderly,
}

impl From<ModeArg> for DedupMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Auto => DedupMode::Auto,
            ModeArg::Keys => DedupMode::CanonicalKeys,
            ModeArg::Orderly => DedupMode::Orderly,
        }
    }
}

fn main() -> ExitCode {
    let args: Vec<std::ffi::OsString> = std::env::args_os().collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() && args.iter().any(|a| a == "--json") => {
            // usage errors keep the JSON envelope when it was asked for
            let command = args.iter().skip(1).find_map(|a| {
                let a = a.to_str()?;
                (!a.starts_with('-')).then(|| a.to_string())
            });
            report::print_usage_error(command.as_deref(), &e.to_string());
            return ExitCode::from(2);
        }
        Err(e) => e.exit(),
    };
    let name = cli.command.name();
    match commands::run(cli.command, cli.json) {
        Ok(report) => {
            report.print(name, cli.json);
            match report.status {
                Status::Ok => ExitCode::SUCCESS,
                Status::Negative => ExitCode::from(1),
            }
        }
        Err(err) => {
            report::print_error(name, &err, cli.json);
            ExitCode::from(2)
        }
    }
}
