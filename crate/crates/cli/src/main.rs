use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use hopfstate::suite::{self, AlgebraSource, ChainSpec, RunConfig, Suite};

#[derive(Parser)]
#[command(name = "hopfstate", version, about = "Hopf-algebra cluster states: verification suites")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the suites listed with --suite (default: axioms,haar,reps).
    Verify(Common),
    /// Entangler inverses and stabilizer eigen-relations.
    Cluster(Common),
    /// Commuting-projector checks on a chain.
    Lcp(Common),
    /// Global symmetries of the chain model.
    Symmetry(Common),
    /// Chain model against the folded quantum-double lattice.
    Qd(Common),
    /// Tensor-network rules and contraction against the circuit.
    Tn(Common),
    /// Fusion ring and fused gauge operators.
    Fusion(Common),
    /// Hypergraph states.
    Hypergraph(Common),
}

#[derive(Args)]
struct Common {
    /// Built-in algebra name, e.g. Z2, S3, F(S3).
    #[arg(long, conflicts_with = "file")]
    zoo: Option<String>,
    /// Algebra or group JSON file.
    #[arg(long)]
    file: Option<PathBuf>,
    /// Cluster graph JSON file.
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Hypergraph JSON file.
    #[arg(long)]
    hypergraph: Option<PathBuf>,
    /// Chain as `L=2,periodic` or `3,open`.
    #[arg(long)]
    chain: Option<String>,
    /// Comma-separated suites, or `all`.
    #[arg(long)]
    suite: Option<String>,
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Random samples per randomized check.
    #[arg(long, default_value_t = 3)]
    samples: usize,
    /// Maximum number of amplitudes in any state or intermediate tensor.
    #[arg(long)]
    budget: Option<u128>,
    /// Also write the report to this file.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn config(default: &[Suite], c: Common) -> hopfstate::Result<RunConfig> {
    let algebra = match (c.zoo, c.file) {
        (_, Some(p)) => AlgebraSource::File(p),
        (Some(z), None) => AlgebraSource::Zoo(z),
        (None, None) => AlgebraSource::Zoo("Z2".into()),
    };
    let suites = match c.suite {
        Some(s) => Suite::parse_list(&s)?,
        None => default.to_vec(),
    };
    Ok(RunConfig {
        algebra,
        suites,
        chain: c.chain.as_deref().map(ChainSpec::parse).transpose()?,
        graph: c.graph,
        hypergraph: c.hypergraph,
        tol: c.tol,
        budget: c.budget,
        seed: c.seed,
        samples: c.samples,
        out: c.out,
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (default, common): (&[Suite], Common) = match cli.command {
        Command::Verify(c) => (&[Suite::Axioms, Suite::Haar, Suite::Reps], c),
        Command::Cluster(c) => (&[Suite::Cluster], c),
        Command::Lcp(c) => (&[Suite::Lcp], c),
        Command::Symmetry(c) => (&[Suite::Symmetry], c),
        Command::Qd(c) => (&[Suite::Qd], c),
        Command::Tn(c) => (&[Suite::Tn], c),
        Command::Fusion(c) => (&[Suite::Fusion], c),
        Command::Hypergraph(c) => (&[Suite::Hypergraph], c),
    };
    let result = config(default, common).and_then(|cfg| suite::run_suite(&cfg));
    match result {
        Ok(report) => {
            print!("{}", report.render());
            ExitCode::from(report.exit_code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(suite::exit_code(&e) as u8)
        }
    }
}
