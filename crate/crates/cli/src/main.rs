use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use log::{debug, info};

use cumlift::report::Timing;
use cumlift::{
    emit_model_fragment, emit_report, export_parallelism_graph, fixtures, parse_instance, run, InferenceReport,
    InstanceError, InstanceFormat, LiftingConfig, PipelineError, ReportFormat, SchedulingInstance, TemporalError,
};

mod check;

#[derive(Parser, Debug)]
#[command(name = "cumlift", version, about = "Infer auxiliary cumulative constraints by lifting cover inequalities")]
struct Cli {
    /// Write the bundled example instances into DIR and exit.
    #[arg(long, value_name = "DIR", global = true)]
    seed_fixtures: Option<PathBuf>,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run inference and write a report.
    Infer {
        #[command(flatten)]
        common: Common,
        /// json or text
        #[arg(long, default_value = "json")]
        report_format: ReportFormat,
        /// Record wall-clock time in the report (breaks byte-for-byte reproducibility).
        #[arg(long)]
        timing: bool,
    },
    /// Print the search-less and precedence-path lower bounds.
    Bound {
        #[command(flatten)]
        common: Common,
    },
    /// Re-verify the constraints of a saved report against the instance.
    Check {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_name = "FILE")]
        report: PathBuf,
    },
    /// Write the inferred constraints as MiniZinc cumulative constraints.
    Emit {
        #[command(flatten)]
        common: Common,
    },
    /// Write the parallelism graph in DOT format.
    Graph {
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args, Debug)]
struct Common {
    /// Instance file.
    instance: PathBuf,
    /// psplib-sm, sch, rcp or json; guessed from the extension by default.
    #[arg(long)]
    format: Option<InstanceFormat>,
    /// Short covers kept after ranking.
    #[arg(long, default_value_t = 100)]
    n_cover: usize,
    /// Constraints reported.
    #[arg(long, default_value_t = 5)]
    n_out: usize,
    /// Largest cover considered; 2 restricts inference to disjunctive constraints.
    #[arg(long, value_name = "K")]
    max_cover_card: Option<usize>,
    /// Skip brute-force verification of small instances.
    #[arg(long)]
    no_verify: bool,
    /// Write output here instead of stdout.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

impl Common {
    fn config(&self) -> LiftingConfig {
        LiftingConfig {
            n_cover: self.n_cover,
            n_out: self.n_out,
            max_cover_cardinality: self.max_cover_card,
            bruteforce_verify: !self.no_verify,
            ..LiftingConfig::default()
        }
    }
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Instance { path: PathBuf, source: InstanceError },
    #[error("{0}")]
    Pipeline(#[from] PipelineError),
    #[error("report {path}: {source}")]
    Report { path: PathBuf, source: serde_json::Error },
    #[error("{0}")]
    Verification(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Io { .. } | CliError::Report { .. } => 2,
            CliError::Instance { source, .. } | CliError::Pipeline(PipelineError::Instance(source)) => {
                instance_code(source)
            }
            CliError::Pipeline(PipelineError::Temporal(TemporalError::PositiveCycle { .. })) => 3,
            CliError::Pipeline(PipelineError::Lift(_)) => 1,
            CliError::Pipeline(PipelineError::VerificationFailed { .. }) | CliError::Verification(_) => 4,
        }
    }
}

fn instance_code(err: &InstanceError) -> u8 {
    match err {
        InstanceError::InfeasibleTask { .. } => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn dispatch(cli: Cli) -> Result<(), CliError> {
    if let Some(dir) = &cli.seed_fixtures {
        seed_fixtures(dir)?;
        if cli.command.is_none() {
            return Ok(());
        }
    }
    let Some(command) = cli.command else {
        return Err(CliError::Usage("a subcommand is required (see --help)".into()));
    };
    match command {
        Command::Infer { common, report_format, timing } => {
            let instance = load(&common)?;
            let start = Instant::now();
            let mut report = run(&instance, &common.config())?.report;
            if timing {
                report.timing = Some(Timing { wall_time_ms: start.elapsed().as_millis() as u64 });
            }
            write_output(common.out.as_deref(), &emit_report(&report, report_format))
        }
        Command::Bound { common } => {
            let instance = load(&common)?;
            let report = run(&instance, &common.config())?.report;
            let text = format!(
                "searchless_lb {}\nprecedence_lb {}\ncertificate {}\n",
                report.searchless_lb,
                report.precedence_lb,
                serde_json::to_string(&report.certificate).expect("certificate serializes")
            );
            write_output(common.out.as_deref(), &text)
        }
        Command::Check { common, report } => {
            let instance = load(&common)?;
            let text = read(&report)?;
            let parsed =
                InferenceReport::from_json(&text).map_err(|source| CliError::Report { path: report.clone(), source })?;
            let summary = check::check_report(&instance, &parsed)?;
            write_output(common.out.as_deref(), &summary)
        }
        Command::Emit { common } => {
            let instance = load(&common)?;
            let pipeline = run(&instance, &common.config())?;
            let inequalities: Vec<_> =
                pipeline.inference.constraints.iter().map(|c| c.inequality.clone()).collect();
            write_output(common.out.as_deref(), &emit_model_fragment(&instance, &pipeline.system, &inequalities))
        }
        Command::Graph { common } => {
            let instance = load(&common)?;
            instance.validate().map_err(|source| CliError::Instance { path: common.instance.clone(), source })?;
            let system = instance
                .to_demand_system()
                .map_err(|source| CliError::Instance { path: common.instance.clone(), source })?;
            write_output(common.out.as_deref(), &export_parallelism_graph(&system))
        }
    }
}

fn seed_fixtures(dir: &Path) -> Result<(), CliError> {
    fs::create_dir_all(dir).map_err(|source| CliError::Io { path: dir.to_path_buf(), source })?;
    for (name, text) in fixtures::ALL {
        let path = dir.join(name);
        fs::write(&path, text).map_err(|source| CliError::Io { path: path.clone(), source })?;
        info!("wrote {}", path.display());
    }
    Ok(())
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn load(common: &Common) -> Result<SchedulingInstance, CliError> {
    let path = &common.instance;
    let format = match common.format {
        Some(f) => f,
        None => path
            .extension()
            .and_then(|e| e.to_str())
            .and_then(InstanceFormat::from_extension)
            .ok_or_else(|| CliError::Usage(format!("cannot guess the format of {}; pass --format", path.display())))?,
    };
    debug!("reading {} as {format}", path.display());
    let text = read(path)?;
    parse_instance(&text, format).map_err(|source| CliError::Instance { path: path.clone(), source })
}

fn write_output(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, text).map_err(|source| CliError::Io { path: path.to_path_buf(), source }),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|source| CliError::Io { path: PathBuf::from("<stdout>"), source })
        }
    }
}
