use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use oramsey::commands::{self, EXIT_INPUT};

#[derive(Parser)]
#[command(
    name = "oramsey",
    about = "Oriented Ramsey machinery for graded digraphs: generators, median orders, the embedding pipeline, lower-bound constructions and exact search",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate digraphs and tournaments.
    Gen {
        #[command(subcommand)]
        what: GenCommand,
    },
    /// Compute a relocation-stable (median) order of a tournament.
    Median {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = oramsey_core::median::DEFAULT_RESTARTS)]
        restarts: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Dependent-random-choice selection along a median order.
    Drc {
        #[arg(long)]
        tournament: PathBuf,
        #[arg(long)]
        order: PathBuf,
        #[arg(long)]
        params: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        trials: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Embed one bipartite layer by resampling.
    EmbedLayer {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        cap: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the full embedding pipeline.
    Pipeline {
        #[arg(long)]
        digraph: PathBuf,
        #[arg(long)]
        tournament: PathBuf,
        #[arg(long, default_value = "scaled")]
        mode: String,
        /// Shrink factors for scaled mode, e.g. "s=1/4,b=1/250,a=1".
        #[arg(long)]
        shrink: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Run attempts (consecutive seeds) until one succeeds.
        #[arg(long, default_value_t = 1)]
        trials: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the upper-bound expression for a graded digraph.
    Bound {
        #[arg(long)]
        digraph: PathBuf,
    },
    /// Lower-bound constructions and checkers.
    Lower {
        #[command(subcommand)]
        what: LowerCommand,
    },
    /// Exact containment and oriented Ramsey search.
    Brute {
        #[command(subcommand)]
        what: BruteCommand,
    },
    /// Audit a claimed embedding of a layered construction (alias of
    /// `lower audit`).
    Audit {
        #[arg(long)]
        layered: PathBuf,
        #[arg(long)]
        phi: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Convert between JSON, DOT and tournament bitstring files.
    Convert {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run a cross-product experiment from a spec file.
    Experiment {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        jobs: Option<usize>,
        /// Record wall-clock times (non-deterministic output bytes).
        #[arg(long, default_value_t = false)]
        timing: bool,
    },
}

#[derive(Subcommand)]
enum GenCommand {
    Grid {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        out: PathBuf,
    },
    Hypercube {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        out: PathBuf,
    },
    Path {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        out: PathBuf,
    },
    /// Transitive pattern TT_n as a digraph (for brute / contains).
    Transitive {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        out: PathBuf,
    },
    RandomGraded {
        #[arg(long)]
        h: usize,
        #[arg(long, default_value_t = 6)]
        max_width: u32,
        #[arg(long, default_value_t = 2)]
        max_in: u32,
        #[arg(long, default_value_t = 2)]
        max_out: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    Tournament {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = false)]
        transitive: bool,
        #[arg(long)]
        out: PathBuf,
    },
    Blowup {
        #[arg(long)]
        outer: PathBuf,
        /// Comma-separated part sizes, e.g. "3,3,2".
        #[arg(long)]
        sizes: String,
        #[arg(long, default_value = "random")]
        fill: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Subcommand)]
enum LowerCommand {
    /// Sample the bipartite guest graph.
    Guest {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        delta: u32,
        #[arg(long, default_value = "desk")]
        profile: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Check the large-pair intersection property of a guest.
    CheckGuest {
        #[arg(long)]
        guest: PathBuf,
        #[arg(long)]
        threshold: usize,
        #[arg(long, default_value = "exact")]
        mode: String,
        #[arg(long, default_value_t = 10_000)]
        budget: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sample partitions and evaluate the cross sum.
    Partition {
        #[arg(long)]
        guest: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        part_cap: u64,
        #[arg(long, default_value_t = 0)]
        dust_cap: u64,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the host weight-function property.
    Host {
        #[arg(long)]
        tournament: PathBuf,
        /// Mass parameter as a rational, e.g. "3/2".
        #[arg(long)]
        x: String,
        #[arg(long, default_value = "exact")]
        mode: String,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the guest/host pair.
    Pair {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        delta: u32,
        #[arg(long, default_value = "desk")]
        profile: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out_guest: PathBuf,
        #[arg(long)]
        out_host: PathBuf,
    },
    /// Build the layered height-h construction bundle.
    Layered {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        delta: u32,
        #[arg(long)]
        h: usize,
        #[arg(long, default_value = "desk")]
        profile: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Search for a copy of a digraph in a tournament.
    NoCopy {
        #[arg(long)]
        digraph: PathBuf,
        #[arg(long)]
        tournament: PathBuf,
        #[arg(long, default_value = "randomized")]
        mode: String,
        #[arg(long, default_value_t = 1000)]
        attempts: u64,
        #[arg(long, default_value_t = 50_000_000)]
        node_budget: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Audit a claimed embedding of a layered bundle.
    Audit {
        #[arg(long)]
        layered: PathBuf,
        #[arg(long)]
        phi: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum BruteCommand {
    /// Exact oriented Ramsey number by host enumeration.
    Ramsey {
        #[arg(long)]
        pattern: PathBuf,
        #[arg(long)]
        nmax: u32,
        #[arg(long, default_value = "labeled")]
        mode: String,
        /// Largest labeled level attempted, as a host count.
        #[arg(long, default_value_t = 1 << 28)]
        budget: u64,
        #[arg(long)]
        cache: Option<PathBuf>,
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// One containment query.
    Contains {
        #[arg(long)]
        pattern: PathBuf,
        #[arg(long)]
        host: PathBuf,
        #[arg(long, default_value_t = 50_000_000)]
        node_budget: u64,
    },
    /// Randomized extremal-witness search.
    Witness {
        #[arg(long)]
        pattern: PathBuf,
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100_000)]
        budget: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn run() -> anyhow::Result<i32> {
    let cli = Cli::parse();
    match cli.command {
        Command::Gen { what } => match what {
            GenCommand::Grid { d, k, out } => commands::gen_grid(d, k, &out),
            GenCommand::Hypercube { d, out } => commands::gen_hypercube(d, &out),
            GenCommand::Path { n, out } => commands::gen_path(n, &out),
            GenCommand::Transitive { n, out } => commands::gen_transitive_pattern(n, &out),
            GenCommand::RandomGraded { h, max_width, max_in, max_out, seed, out } => {
                commands::gen_random_graded(h, max_width, max_in, max_out, seed, &out)
            }
            GenCommand::Tournament { n, seed, transitive, out } => {
                commands::gen_tournament(n, seed, transitive, &out)
            }
            GenCommand::Blowup { outer, sizes, fill, seed, out } => {
                commands::gen_blowup(&outer, &sizes, &fill, seed, &out)
            }
        },
        Command::Median { input, seed, restarts, out } => {
            commands::median(&input, seed, restarts, out.as_deref())
        }
        Command::Drc { tournament, order, params, seed, trials, out } => {
            commands::drc_cmd(&tournament, &order, &params, seed, trials, out.as_deref())
        }
        Command::EmbedLayer { instance, seed, cap, out } => {
            commands::embed_layer_cmd(&instance, seed, cap, out.as_deref())
        }
        Command::Pipeline { digraph, tournament, mode, shrink, seed, trials, out } => {
            commands::pipeline_cmd(
                &digraph,
                &tournament,
                &mode,
                shrink.as_deref(),
                seed,
                trials,
                out.as_deref(),
            )
        }
        Command::Bound { digraph } => commands::bound_cmd(&digraph),
        Command::Lower { what } => match what {
            LowerCommand::Guest { n, delta, profile, seed, out } => {
                commands::lower_guest(n, delta, &profile, seed, &out)
            }
            LowerCommand::CheckGuest { guest, threshold, mode, budget, seed, out } => {
                commands::lower_check_guest(&guest, threshold, &mode, budget, seed, out.as_deref())
            }
            LowerCommand::Partition { guest, k, part_cap, dust_cap, trials, seed, out } => {
                commands::lower_partition(&guest, k, part_cap, dust_cap, trials, seed, out.as_deref())
            }
            LowerCommand::Host { tournament, x, mode, trials, seed, out } => {
                commands::lower_host(&tournament, &x, &mode, trials, seed, out.as_deref())
            }
            LowerCommand::Pair { n, delta, profile, seed, out_guest, out_host } => {
                commands::lower_pair(n, delta, &profile, seed, &out_guest, &out_host)
            }
            LowerCommand::Layered { n, delta, h, profile, seed, out } => {
                commands::lower_layered(n, delta, h, &profile, seed, &out)
            }
            LowerCommand::NoCopy {
                digraph,
                tournament,
                mode,
                attempts,
                node_budget,
                seed,
                out,
            } => commands::lower_no_copy(
                &digraph,
                &tournament,
                &mode,
                attempts,
                node_budget,
                seed,
                out.as_deref(),
            ),
            LowerCommand::Audit { layered, phi, out } => {
                commands::lower_audit(&layered, &phi, out.as_deref())
            }
        },
        Command::Brute { what } => match what {
            BruteCommand::Ramsey { pattern, nmax, mode, budget, cache, jobs, out } => {
                commands::brute_ramsey(
                    &pattern,
                    nmax,
                    &mode,
                    budget,
                    cache.as_deref(),
                    jobs,
                    out.as_deref(),
                )
            }
            BruteCommand::Contains { pattern, host, node_budget } => {
                commands::brute_contains(&pattern, &host, node_budget)
            }
            BruteCommand::Witness { pattern, n, seed, budget, out } => {
                commands::brute_witness(&pattern, n, seed, budget, out.as_deref())
            }
        },
        Command::Audit { layered, phi, out } => {
            commands::lower_audit(&layered, &phi, out.as_deref())
        }
        Command::Convert { input, out } => commands::convert(&input, &out),
        Command::Experiment { spec, jobs, timing } => {
            commands::experiment_cmd(&spec, jobs, timing)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code as u8),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(EXIT_INPUT as u8)
        }
    }
}
