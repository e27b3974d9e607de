//! `pcsp`: command-line access to homomorphism search, polymorphisms, box complexes,
//! circle maps, graph functors and the reduction checks.

mod commands;

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(name = "pcsp", version, about = "Promise CSP workbench for digraph templates")]
struct Cli {
    /// Print a JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for every randomised step.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Search for a homomorphism.
    Hom(HomArgs),
    /// Chromatic number with an optimal colouring.
    Chrom(GraphArg),
    /// Polymorphisms `H^n -> G`.
    Poly(PolyArgs),
    /// Degree vectors of polymorphisms through a circle map on `G`.
    Degrees(DegreeArgs),
    /// The box complex of a graph.
    Complex(ComplexArgs),
    /// Applies a functor pipeline.
    Functor(FunctorArgs),
    /// Seeded adjunction law sweep.
    AdjointCheck(AdjointArgs),
    /// Checks one of the concrete lemmas.
    Verify {
        #[command(subcommand)]
        lemma: Lemma,
    },
}

#[derive(Args, Debug)]
struct GraphArg {
    /// Graph: `K<n>`, `C<n>`, `K<p>:<q>` or `@<path>`.
    #[arg(long)]
    graph: String,
}

#[derive(Args, Debug)]
struct HomArgs {
    #[arg(long)]
    from: String,
    #[arg(long)]
    to: String,
    /// List every homomorphism, up to `--cap`.
    #[arg(long)]
    all: bool,
    #[arg(long, default_value_t = 1000)]
    cap: usize,
}

#[derive(Args, Debug)]
struct PolyArgs {
    #[arg(long)]
    from: String,
    #[arg(long)]
    to: String,
    #[arg(long)]
    arity: usize,
    /// List every polymorphism, up to `--cap`.
    #[arg(long)]
    all: bool,
    /// Draw this many seeded random polymorphisms instead of enumerating.
    #[arg(long)]
    random: Option<usize>,
    /// Most polymorphisms enumerated.
    #[arg(long, default_value_t = 100_000)]
    cap: usize,
}

#[derive(Args, Debug)]
struct DegreeArgs {
    #[arg(long)]
    from: String,
    #[arg(long)]
    to: String,
    #[arg(long)]
    arity: usize,
    /// `auto`, `square-free` or `<p>:<q>`.
    #[arg(long, default_value = "auto")]
    map: String,
    /// Draw this many seeded random polymorphisms instead of enumerating.
    #[arg(long)]
    random: Option<usize>,
    /// Print every degree vector, not only the summary.
    #[arg(long)]
    all: bool,
    /// Most polymorphisms enumerated.
    #[arg(long, default_value_t = 100_000)]
    cap: usize,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Export {
    Json,
    Off,
}

#[derive(Args, Debug)]
struct ComplexArgs {
    #[arg(long)]
    graph: String,
    /// List all faces, not only the maximal ones.
    #[arg(long)]
    expand: bool,
    #[arg(long, value_enum)]
    export: Option<Export>,
    /// Write the export to this file.
    #[arg(long)]
    out: Option<String>,
    /// Most faces listed by `--expand`.
    #[arg(long, default_value_t = 100_000)]
    cap: usize,
}

#[derive(Args, Debug)]
struct FunctorArgs {
    /// Comma-separated steps, applied left to right.
    #[arg(long)]
    apply: String,
    #[arg(long)]
    graph: String,
    /// Write the resulting graph here instead of printing it.
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args, Debug)]
struct AdjointArgs {
    /// Left adjoint step, such as `lambda:3`, `gamma:3`, `delta`, `sym`, `gadget:path3`.
    #[arg(long, required_unless_present = "all", conflicts_with = "all")]
    left: Option<String>,
    /// Run the standard set of pairs.
    #[arg(long)]
    all: bool,
    #[arg(long, default_value_t = 100)]
    samples: usize,
    /// Largest sampled graph; defaults to 5, or 4 for `gamma`.
    #[arg(long)]
    max_vertices: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Lemma {
    /// Clique and colouring certificates for `sub delta_R K_n`.
    PoljakRodl {
        #[arg(long)]
        n: usize,
        /// Also decide hom-equivalence with `K_{b(n)}` by search.
        #[arg(long)]
        exhaustive: bool,
    },
    /// The explicit 3-colouring of `delta delta K_4`.
    DeltaDeltaK4,
    /// `chi(delta G)` against the central binomial formula.
    ChiDelta {
        #[arg(long)]
        graph: String,
        #[arg(long, default_value_t = 10)]
        n_max: usize,
    },
    /// `K_{b(n)} -> delta_R K_n -> K_{2^n}`.
    CliqueSandwich {
        #[arg(long)]
        n: usize,
    },
    /// Least `i` with `delta^i D -> K_3`.
    MinDeltaIter {
        #[arg(long)]
        graph: String,
        #[arg(long, default_value_t = 3)]
        cap: usize,
    },
    /// Adjunction sweep for one pair.
    Adjoint {
        #[arg(long)]
        pair: String,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long)]
        max_vertices: Option<usize>,
    },
    /// Conditions and instance checks for a reduction given in a TOML file.
    Reduction {
        /// `@<path>` or a path to the TOML spec.
        #[arg(long)]
        spec: String,
        #[arg(long, default_value_t = 5)]
        max_vertices: usize,
        #[arg(long, default_value_t = 100)]
        random: usize,
    },
    /// `delta sym G -> K_n` exactly when `G -> K_{b(n)}`, over small connected graphs.
    DeltaSym {
        #[arg(long, default_value_t = 5)]
        max_vertices: usize,
        #[arg(long, default_value_t = 3)]
        n_max: usize,
    },
    /// Least odd `k` with `Omega_k H -> G`.
    MinOmega {
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long, default_value_t = 3)]
        cap_k: usize,
        /// Largest `Omega_k H` built.
        #[arg(long, default_value_t = 100_000)]
        cap: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(out) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&out.json()).expect("serialisable"));
            } else {
                print!("{}", out.text);
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
