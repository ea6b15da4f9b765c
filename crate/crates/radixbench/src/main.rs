use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use radixbench::bench::{summarize, InputSpec};
use radixbench::csv_io::emit_csv;
use radixbench::model::model_command;
use radixbench::plot::emit_plot;
use radixbench::{run_benchmark, verify_once, Algo, DistKind, SortParams};

const DEFAULT_GRID: [usize; 5] = [1_000, 10_000, 100_000, 1_000_000, 10_000_000];
const LARGE_SIZES: [usize; 1] = [100_000_000];

#[derive(Parser)]
#[command(name = "radixbench", version, about = "Benchmark and verify stable radix sorts")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Time sorts over generated inputs and verify every trial.
    ///
    /// The timed region covers scratch allocation and the sort itself.
    /// Input generation happens before the timer starts and the oracle
    /// check after it stops.
    Sort {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = 3)]
        trials: u32,
        /// Write one CSV row per trial.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Write an SVG of mean time against log_256(N).
        #[arg(long)]
        plot: Option<PathBuf>,
    },
    /// Sort once per algorithm and size and diff against the oracle, untimed.
    Verify {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Compare the overflow recursion with a balls-into-bins simulation.
    Model {
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 256)]
        m: u64,
        #[arg(long, default_value_t = 100_000)]
        mc_trials: u64,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Enumerate all m^n assignments instead of simulating.
        #[arg(long)]
        exhaustive: bool,
    },
}

#[derive(Args)]
struct InputArgs {
    /// Algorithms to run (comma separated).
    #[arg(long, value_enum, value_delimiter = ',', default_value = "dfr")]
    algo: Vec<Algo>,
    #[arg(long, value_enum, default_value_t = DistKind::Uniform)]
    dist: DistKind,
    /// Input sizes (comma separated); defaults to 1e3..1e7.
    #[arg(long, value_delimiter = ',')]
    n: Vec<usize>,
    /// Add 1e8 to the default grid (needs about 3.2 GB).
    #[arg(long)]
    large: bool,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, default_value_t = 8)]
    radix_bits: u32,
    /// Diversion threshold shared by msd and dfr.
    #[arg(long, default_value_t = 64)]
    threshold: usize,
    /// Ladle length in records.
    #[arg(long, default_value_t = 64)]
    block_size: usize,
    /// Issue write prefetch hints while dealing.
    #[arg(long)]
    write_hints: bool,
    #[arg(long, default_value_t = dfr_core::datagen::DEFAULT_ZIPF_EXPONENT)]
    zipf_s: f64,
    #[arg(long, default_value_t = dfr_core::datagen::DEFAULT_ZIPF_UNIVERSE)]
    zipf_universe: u64,
}

impl InputArgs {
    fn sizes(&self) -> Vec<usize> {
        if !self.n.is_empty() {
            return self.n.clone();
        }
        let mut sizes = DEFAULT_GRID.to_vec();
        if self.large {
            sizes.extend(LARGE_SIZES);
        }
        sizes
    }

    fn params(&self) -> Result<SortParams> {
        let mut params = SortParams::new(self.radix_bits, self.threshold)?;
        params.block_size = self.block_size;
        params.write_hints = self.write_hints;
        Ok(params)
    }

    fn input(&self, n: usize) -> InputSpec {
        InputSpec {
            zipf_s: self.zipf_s,
            zipf_universe: self.zipf_universe,
            ..InputSpec::new(self.dist, n, self.seed)
        }
    }
}

fn sort(input: &InputArgs, trials: u32, csv: Option<PathBuf>, plot: Option<PathBuf>) -> Result<()> {
    let params = input.params()?;
    let mut rows = Vec::new();
    for n in input.sizes() {
        for &algo in &input.algo {
            rows.extend(run_benchmark(&input.input(n), algo, trials, &params)?);
        }
    }
    println!(
        "{:>7} {:>14} {:>12} {:>7} {:>16} {:>16}",
        "algo", "dist", "n", "trials", "mean_s", "median_s"
    );
    for s in summarize(&rows) {
        println!(
            "{:>7} {:>14} {:>12} {:>7} {:>16.9} {:>16.9}",
            s.algo,
            s.dist,
            s.n,
            s.trials,
            s.mean_ns * 1e-9,
            s.median_ns * 1e-9
        );
    }
    if let Some(path) = csv {
        emit_csv(&rows, &path)?;
    }
    if let Some(path) = plot {
        emit_plot(&rows, &path).context("plot")?;
    }
    Ok(())
}

fn verify(input: &InputArgs) -> Result<()> {
    let params = input.params()?;
    for n in input.sizes() {
        for &algo in &input.algo {
            let stats = verify_once(&input.input(n), algo, &params)?;
            println!(
                "ok {algo} {} n={n} seed={} passes={} count_ops={} overflow={}",
                input.dist, input.seed, stats.passes, stats.count_ops, stats.overflow_records
            );
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Sort {
            input,
            trials,
            csv,
            plot,
        } => sort(&input, trials, csv, plot),
        Command::Verify { input } => verify(&input),
        Command::Model {
            n,
            m,
            mc_trials,
            seed,
            exhaustive,
        } => {
            print!("{}", model_command(n, m, mc_trials, seed, exhaustive)?);
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use radixbench::csv_io::load_csv;

    fn run_args(args: &[&str]) -> Result<()> {
        let cli = Cli::try_parse_from(std::iter::once("radixbench").chain(args.iter().copied()))?;
        run(cli)
    }

    #[test]
    fn zero_size_is_rejected() {
        let err = run_args(&["sort", "--n", "0"]).unwrap_err();
        assert!(err.to_string().contains("at least 1"));
    }

    #[test]
    fn invalid_arguments_are_rejected() {
        assert!(run_args(&["verify", "--n", "10", "--radix-bits", "7"]).is_err());
        assert!(run_args(&["sort", "--algo", "quick", "--n", "10"]).is_err());
        assert!(run_args(&["sort", "--n", "10", "--trials", "0"]).is_err());
        assert!(run_args(&["model", "--n", "10", "--m", "1"]).is_err());
    }

    #[test]
    fn default_grid() {
        let cli = Cli::try_parse_from(["radixbench", "verify"]).unwrap();
        let Command::Verify { input } = cli.command else { unreachable!() };
        assert_eq!(input.sizes(), DEFAULT_GRID);
        assert_eq!(input.algo, [Algo::Dfr]);
        let cli = Cli::try_parse_from(["radixbench", "verify", "--large"]).unwrap();
        let Command::Verify { input } = cli.command else { unreachable!() };
        assert_eq!(input.sizes().last(), Some(&100_000_000));
    }

    #[test]
    fn verify_all_algorithms() {
        run_args(&["verify", "--algo", "lsd,msd,fast,dfr", "--dist", "zipf", "--n", "5000,20000"]).unwrap();
    }

    #[test]
    fn dfr_counts_less_than_lsd() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("rows.csv");
        run_args(&[
            "sort",
            "--algo",
            "lsd,dfr",
            "--n",
            "1000000",
            "--trials",
            "1",
            "--csv",
            path.to_str().unwrap(),
        ])
        .unwrap();
        let rows = load_csv(&path).unwrap();
        let ops = |algo| rows.iter().find(|r| r.algo == algo).unwrap().stats.count_ops;
        assert_eq!(ops(Algo::Lsd), 8_000_000);
        assert!(ops(Algo::Dfr) < ops(Algo::Lsd));
    }

    #[test]
    fn plot_needs_two_sizes() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("p.svg");
        assert!(run_args(&["sort", "--n", "1000", "--trials", "1", "--plot", path.to_str().unwrap()]).is_err());
        assert!(!path.exists());
    }

    #[test]
    fn exhaustive_model_runs() {
        run_args(&["model", "--n", "4", "--m", "2", "--exhaustive"]).unwrap();
    }
}
