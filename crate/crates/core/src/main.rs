use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use sumsq::dist::ContaminationModel;
use sumsq::shell::{
    cmd_anova, cmd_describe, cmd_regress, cmd_study, cmd_ttest, parse_csv, CsvOptions, Dataset, Predictor,
    Report, ShellError,
};
use sumsq::{Design, DivisorMode, StudyConfig, StudyKind};

#[derive(Parser)]
#[command(
    name = "sumsq",
    version,
    about = "Variance, ANOVA, t-test and regression from one sum-of-squares kernel"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// n, mean, sum of squares, variance, SD and mean absolute deviation of a column
    Describe {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        value: String,
        /// Divide by N instead of n-1
        #[arg(long)]
        population: bool,
    },
    /// One-way ANOVA table
    Anova {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        value: String,
        #[arg(long)]
        group: String,
        #[arg(long, value_enum, default_value_t = DesignArg::Observational)]
        design: DesignArg,
    },
    /// Pooled-variance independent-samples t-test (exactly two groups)
    Ttest {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        value: String,
        #[arg(long)]
        group: String,
    },
    /// Simple least-squares regression on a numeric column or a two-level group
    Regress {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        y: String,
        #[arg(long, conflicts_with = "group", required_unless_present = "group")]
        x: Option<String>,
        #[arg(long)]
        group: Option<String>,
    },
    /// Monte Carlo estimator studies
    Study {
        #[arg(value_enum)]
        kind: StudyArg,
        #[command(flatten)]
        opts: StudyOpts,
    },
}

#[derive(Args)]
struct Input {
    /// CSV file
    file: PathBuf,
    #[arg(long, default_value = ",")]
    delimiter: char,
    /// Treat the first row as data; columns are named col1, col2, ...
    #[arg(long)]
    no_header: bool,
    /// Emit JSON instead of a text table
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct StudyOpts {
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Default: 100000 (unbiasedness), 10000 (scale-efficiency)
    #[arg(long)]
    replicates: Option<usize>,
    /// Observations per replicate. Default: 4 (unbiasedness), 100 (scale-efficiency)
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    mean: f64,
    #[arg(long, default_value_t = 1.0)]
    sd: f64,
    /// Draw from the contaminated normal (implied by --epsilon or --scale-factor)
    #[arg(long)]
    contaminated: bool,
    #[arg(long)]
    epsilon: Option<f64>,
    #[arg(long)]
    scale_factor: Option<f64>,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum DesignArg {
    Experimental,
    Observational,
}

#[derive(Clone, Copy, ValueEnum)]
enum StudyArg {
    Unbiasedness,
    ScaleEfficiency,
}

fn load(input: &Input) -> Result<Dataset, ShellError> {
    if !input.delimiter.is_ascii() {
        return Err(ShellError::Usage(format!("delimiter must be ASCII, got '{}'", input.delimiter)));
    }
    let options = CsvOptions { delimiter: input.delimiter as u8, has_header: !input.no_header };
    parse_csv(&input.file, options)
}

fn study_config(kind: StudyKind, o: &StudyOpts) -> StudyConfig {
    let (default_replicates, default_n) = match kind {
        StudyKind::Unbiasedness => (100_000, 4),
        StudyKind::ScaleEfficiency => (10_000, 100),
    };
    let defaults = ContaminationModel::default();
    let contamination =
        (o.contaminated || o.epsilon.is_some() || o.scale_factor.is_some()).then(|| ContaminationModel {
            epsilon: o.epsilon.unwrap_or(defaults.epsilon),
            scale_factor: o.scale_factor.unwrap_or(defaults.scale_factor),
            base_sd: o.sd,
        });
    StudyConfig {
        seed: o.seed,
        replicates: o.replicates.unwrap_or(default_replicates),
        sample_size: o.n.unwrap_or(default_n),
        true_mean: o.mean,
        true_sd: o.sd,
        contamination,
    }
}

fn run(cli: Cli) -> Result<(Report, bool), ShellError> {
    match cli.command {
        Command::Describe { input, value, population } => {
            let mode = if population { DivisorMode::Population } else { DivisorMode::Sample };
            Ok((cmd_describe(&load(&input)?, &value, mode)?, input.json))
        }
        Command::Anova { input, value, group, design } => {
            let design = match design {
                DesignArg::Experimental => Design::Experimental,
                DesignArg::Observational => Design::Observational,
            };
            Ok((cmd_anova(&load(&input)?, &value, &group, design)?, input.json))
        }
        Command::Ttest { input, value, group } => {
            Ok((cmd_ttest(&load(&input)?, &value, &group)?, input.json))
        }
        Command::Regress { input, y, x, group } => {
            let predictor = match (&x, &group) {
                (Some(x), None) => Predictor::Continuous(x),
                (None, Some(g)) => Predictor::Groups(g),
                _ => return Err(ShellError::Usage("give exactly one of --x or --group".into())),
            };
            Ok((cmd_regress(&load(&input)?, &y, predictor)?, input.json))
        }
        Command::Study { kind, opts } => {
            let kind = match kind {
                StudyArg::Unbiasedness => StudyKind::Unbiasedness,
                StudyArg::ScaleEfficiency => StudyKind::ScaleEfficiency,
            };
            Ok((cmd_study(kind, &study_config(kind, &opts))?, opts.json))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => e.exit(),
        Err(e) => {
            // keep diagnostics to one line; --help has the full usage
            let rendered = e.to_string();
            eprintln!("{}", rendered.lines().next().unwrap_or("error: invalid arguments"));
            return ExitCode::from(sumsq::shell::exit::USAGE as u8);
        }
    };
    match run(cli) {
        Ok((report, json)) => {
            if json {
                println!("{}", report.to_json());
            } else {
                print!("{}", report.render_text());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
