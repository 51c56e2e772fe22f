use std::path::PathBuf;
use std::process::ExitCode;

use brandt_cli::commands::{self, Build, MorphismQuery};
use brandt_cli::CliError;
use clap::{Parser, Subcommand};

/// Build, validate and analyze finite groupoids stored as JSON documents.
///
/// Exit codes: 0 success, 1 validation or claim failure, 2 parse error,
/// 3 size bound exceeded.
#[derive(Parser)]
#[command(name = "brandt", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the groupoid axioms and any kind-specific laws.
    Verify { file: PathBuf },
    /// Print a groupoid document on standard output.
    #[command(subcommand)]
    Build(BuildCmd),
    /// Type, transitivity, units and isotropy orders.
    Analyze { file: PathBuf },
    /// List the subgroupoid lattice.
    Subgroupoids {
        file: PathBuf,
        /// Only normal subgroupoids.
        #[arg(long)]
        normal: bool,
    },
    /// Closed-form sizes of the symmetric and alternating groupoids next to enumeration.
    Counts {
        n: usize,
        /// Skip enumeration, which is limited to small degrees.
        #[arg(long)]
        formulas_only: bool,
    },
    /// Queries on a morphism document.
    #[command(subcommand)]
    Morphism(MorphismCmd),
}

#[derive(Subcommand)]
enum BuildCmd {
    /// Pair groupoid on n points.
    Pair { n: usize },
    /// Null groupoid on k points.
    Null { k: usize },
    /// Cyclic group of order n as a one-unit groupoid.
    Cyclic { n: usize },
    /// Symmetric groupoid of quasipermutations of degree n.
    Symmetric { n: usize },
    /// Alternating groupoid of degree n.
    Alternating { n: usize },
    /// Disjoint union.
    Union {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Direct product.
    Product { f: PathBuf, g: PathBuf },
    /// Whitney sum over a common base.
    Whitney { f: PathBuf, g: PathBuf },
    /// Induced groupoid along a map of points into the base.
    Induced { f: PathBuf, map_file: PathBuf },
    /// Groupoid of left translations.
    Cayley { file: PathBuf },
    /// Pair group-groupoid on a group document.
    PairGg { group_file: PathBuf },
    /// Pair vector space groupoid on GF(p)^dim.
    PairVsg { p: u32, dim: usize },
}

#[derive(Subcommand)]
enum MorphismCmd {
    /// Check the morphism axioms.
    Verify { file: PathBuf },
    /// Decide strongness, with a witness pair when it fails.
    Strong { file: PathBuf },
    /// The kernel and whether it is normal.
    Kernel { file: PathBuf },
    /// The image of a strong morphism.
    Image { file: PathBuf },
    /// Check the correspondence between subgroupoids over the kernel and of the codomain.
    Correspondence { file: PathBuf },
}

fn run(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Verify { file } => commands::verify(&file),
        Command::Build(b) => commands::build(&match b {
            BuildCmd::Pair { n } => Build::Pair(n),
            BuildCmd::Null { k } => Build::Null(k),
            BuildCmd::Cyclic { n } => Build::Cyclic(n),
            BuildCmd::Symmetric { n } => Build::Symmetric(n),
            BuildCmd::Alternating { n } => Build::Alternating(n),
            BuildCmd::Union { files } => Build::Union(files),
            BuildCmd::Product { f, g } => Build::Product(f, g),
            BuildCmd::Whitney { f, g } => Build::Whitney(f, g),
            BuildCmd::Induced { f, map_file } => Build::Induced(f, map_file),
            BuildCmd::Cayley { file } => Build::Cayley(file),
            BuildCmd::PairGg { group_file } => Build::PairGg(group_file),
            BuildCmd::PairVsg { p, dim } => Build::PairVsg(p, dim),
        }),
        Command::Analyze { file } => commands::analyze(&file),
        Command::Subgroupoids { file, normal } => commands::subgroupoids(&file, normal),
        Command::Counts { n, formulas_only } => commands::counts(n, formulas_only),
        Command::Morphism(m) => {
            let (query, file) = match m {
                MorphismCmd::Verify { file } => (MorphismQuery::Verify, file),
                MorphismCmd::Strong { file } => (MorphismQuery::Strong, file),
                MorphismCmd::Kernel { file } => (MorphismQuery::Kernel, file),
                MorphismCmd::Image { file } => (MorphismQuery::Image, file),
                MorphismCmd::Correspondence { file } => (MorphismQuery::Correspondence, file),
            };
            commands::morphism(query, &file)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            match &e {
                CliError::Failed(report) if report.ends_with('\n') => print!("{report}"),
                CliError::Failed(report) => println!("{report}"),
                other => eprintln!("error: {other}"),
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
