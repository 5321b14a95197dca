use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use kaf::harness::{emit_csv, emit_summary, presets, run_experiment, ExperimentConfig, ExperimentResult, Scale};

#[derive(Parser)]
#[command(name = "kaf", about = "Complex kernel adaptive filtering equalization benchmarks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an experiment described by a config file.
    Run {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        overrides: Overrides,
    },
    /// Soft nonlinear channel preset: kernel filters vs NCLMS/NACLMS.
    PaperFig1(PresetArgs),
    /// Strong nonlinear channel preset: kernel filters vs MLP/CNGD.
    PaperFig2(PresetArgs),
    /// Check a config file without running it.
    Validate {
        #[arg(long)]
        config: PathBuf,
    },
}

#[derive(Args)]
struct Overrides {
    /// Base seed; trial t uses seed + t.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    samples: Option<usize>,
}

#[derive(Args)]
struct PresetArgs {
    #[arg(long, value_enum, default_value_t = ScaleArg::Fast)]
    scale: ScaleArg,
    /// `a` for circular input, `b` for non-circular input (rho = 0.1).
    #[arg(long, value_enum, default_value_t = Panel::B)]
    panel: Panel,
    #[arg(long, default_value = "out")]
    out: PathBuf,
    /// Print the preset config instead of running it.
    #[arg(long)]
    dump_config: bool,
    #[command(flatten)]
    overrides: Overrides,
}

#[derive(Clone, Copy, ValueEnum)]
enum ScaleArg {
    Fast,
    Full,
}

#[derive(Clone, Copy, ValueEnum)]
enum Panel {
    A,
    B,
}

impl Overrides {
    fn apply(&self, cfg: &mut ExperimentConfig) {
        if let Some(s) = self.seed {
            cfg.base_seed = s;
        }
        if let Some(t) = self.trials {
            cfg.n_trials = t;
        }
        if let Some(n) = self.samples {
            cfg.n_samples = n;
        }
    }
}

fn load(path: &Path) -> kaf::Result<ExperimentConfig> {
    let text = fs::read_to_string(path)?;
    let cfg = ExperimentConfig::parse(&text)?;
    cfg.validate()?;
    Ok(cfg)
}

fn execute(cfg: &ExperimentConfig, out: &Path) -> kaf::Result<ExperimentResult> {
    cfg.validate()?;
    fs::create_dir_all(out)?;
    let started = Instant::now();
    let result = run_experiment(cfg)?;
    emit_csv(&result.curves, &out.join("curves.csv"))?;
    emit_summary(&result.summary, &out.join("summary.csv"))?;
    println!(
        "{} trials x {} samples in {:.1}s -> {}",
        cfg.n_trials,
        cfg.n_samples,
        started.elapsed().as_secs_f64(),
        out.display()
    );
    println!("{:<12} {:>16} {:>12}", "algorithm", "steady-state dB", "dict size");
    for row in &result.summary {
        let dict = row.dictionary_size.map(|d| format!("{d:.1}")).unwrap_or_else(|| "-".into());
        println!("{:<12} {:>16.3} {:>12}", row.name, row.steady_state_db, dict);
    }
    Ok(result)
}

fn preset(args: &PresetArgs, build: fn(f64, Scale) -> ExperimentConfig) -> kaf::Result<()> {
    let scale = match args.scale {
        ScaleArg::Fast => Scale::Fast,
        ScaleArg::Full => Scale::Full,
    };
    let rho = match args.panel {
        Panel::A => presets::RHO_CIRCULAR,
        Panel::B => presets::RHO_NONCIRCULAR,
    };
    let mut cfg = build(rho, scale);
    args.overrides.apply(&mut cfg);
    if args.dump_config {
        print!("{}", cfg.to_config_string());
        return Ok(());
    }
    execute(&cfg, &args.out).map(|_| ())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Run { config, out, overrides } => load(config).and_then(|mut cfg| {
            overrides.apply(&mut cfg);
            execute(&cfg, out).map(|_| ())
        }),
        Command::PaperFig1(args) => preset(args, presets::fig1),
        Command::PaperFig2(args) => preset(args, presets::fig2),
        Command::Validate { config } => load(config).map(|cfg| {
            println!(
                "ok: {} algorithm(s), {} trials x {} samples",
                cfg.algorithms.len(),
                cfg.n_trials,
                cfg.n_samples
            );
        }),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
