//! Command-line front end: scripted trials, free simulation, cueing
//! comparison, trial ordering, and frame streaming.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use surfsim::scenario::{
    generate_trial, run_scenario, trial_metrics, Posture, Scenario, TrialLevel, TrialRun, TrialSpec,
};
use surfsim::stream::{stream_frames, FileSink, FrameSink, UdpSink};
use surfsim::{
    compare_cueing, load_config, session_order, KinematicSample, SimConfig, SimulationLog,
    CONFIG_ENV_VAR,
};

#[derive(Parser)]
#[command(
    name = "surfsim",
    version,
    about = "Headless surfing-dynamics and motion-cueing simulator"
)]
struct Cli {
    /// Config file (JSON). Falls back to $SURFSIM_CONFIG, then defaults.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a passive float or a paddle-trace scenario and write the log.
    Simulate(SimulateArgs),
    /// Run one scripted acceleration trial; write the log and metrics.
    Trial(TrialArgs),
    /// Compare the EMA pipeline against the washout baseline on a log.
    BenchCueing(BenchCueingArgs),
    /// Print the counterbalanced 18-trial session order for a seed.
    Order(OrderArgs),
    /// Stream a log's command frames to a file or UDP sink.
    EmitFrames(EmitFramesArgs),
}

#[derive(Args)]
struct SimulateArgs {
    /// Passive-float duration, s. Ignored when --trace is given.
    #[arg(long, default_value_t = 30.0)]
    duration: f64,
    /// Hand-trace CSV (t,lx,ly,lz,rx,ry,rz) driving the board.
    #[arg(long)]
    trace: Option<PathBuf>,
    /// Output log CSV.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct TrialArgs {
    /// Acceleration level: LA, MA, HA, or a number in m/s².
    #[arg(long, value_parser = parse_level)]
    level: f64,
    /// Enable the ocean-ripples condition.
    #[arg(long)]
    ripples: bool,
    /// Rider posture label (metadata only).
    #[arg(long, value_enum, default_value_t = PostureArg::Sitting)]
    posture: PostureArg,
    /// Acceleration phase length, s.
    #[arg(long, default_value_t = 5.0)]
    duration: f64,
    /// Output log CSV.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Metrics JSON path; stdout when omitted.
    #[arg(long)]
    metrics: Option<PathBuf>,
}

#[derive(Args)]
struct BenchCueingArgs {
    /// Simulation log CSV to analyze.
    #[arg(long)]
    log: PathBuf,
    /// Report JSON path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct OrderArgs {
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Order JSON path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct EmitFramesArgs {
    /// Simulation log CSV supplying the frames.
    #[arg(long)]
    log: PathBuf,
    /// Which frame stream to emit.
    #[arg(long, value_enum, default_value_t = ChannelArg::Commanded)]
    channel: ChannelArg,
    /// Emission rate, Hz.
    #[arg(long, default_value_t = 100.0)]
    rate: f64,
    /// Sink spec: file:PATH or udp:HOST:PORT.
    #[arg(long)]
    sink: String,
    /// Bounded queue capacity between the pacer and the sink.
    #[arg(long, default_value_t = 64)]
    capacity: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum ChannelArg {
    /// Envelope-legal commands from the cueing pipeline.
    Commanded,
    /// Pose the platform model actually reached.
    Achieved,
}

#[derive(Clone, Copy, ValueEnum)]
enum PostureArg {
    Sitting,
    Kneeling,
    Standing,
}

impl From<PostureArg> for Posture {
    fn from(p: PostureArg) -> Posture {
        match p {
            PostureArg::Sitting => Posture::Sitting,
            PostureArg::Kneeling => Posture::Kneeling,
            PostureArg::Standing => Posture::Standing,
        }
    }
}

fn parse_level(s: &str) -> std::result::Result<f64, String> {
    match s.to_ascii_uppercase().as_str() {
        "LA" => Ok(TrialLevel::Low.acceleration()),
        "MA" => Ok(TrialLevel::Medium.acceleration()),
        "HA" => Ok(TrialLevel::High.acceleration()),
        other => other
            .parse::<f64>()
            .map_err(|_| format!("expected LA, MA, HA, or a number in m/s², got '{s}'")),
    }
}

fn resolve_config(path: &Option<PathBuf>) -> Result<SimConfig> {
    let chosen = path
        .clone()
        .or_else(|| std::env::var_os(CONFIG_ENV_VAR).map(PathBuf::from));
    match chosen {
        Some(p) => load_config(&p).with_context(|| format!("loading config {}", p.display())),
        None => Ok(SimConfig::default()),
    }
}

fn write_json<T: serde::Serialize>(value: &T, out: &Option<PathBuf>) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    match out {
        Some(path) => {
            std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?
        }
        None => print!("{text}"),
    }
    Ok(())
}

/// Relative output paths land in the config's output_dir when one is set.
fn resolve_out(config: &SimConfig, path: &Path) -> PathBuf {
    match (&config.output_dir, path.is_relative()) {
        (Some(dir), true) => dir.join(path),
        _ => path.to_path_buf(),
    }
}

fn save_log(config: &SimConfig, log: &SimulationLog, path: &Path) -> Result<()> {
    let path = resolve_out(config, path);
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        std::fs::create_dir_all(parent)
            .with_context(|| format!("creating {}", parent.display()))?;
    }
    log.save_csv(&path)
        .with_context(|| format!("writing log {}", path.display()))
}

fn cmd_simulate(config: &SimConfig, args: &SimulateArgs) -> Result<()> {
    let scenario = match &args.trace {
        Some(path) => {
            let samples = surfsim::load_trace(path)
                .with_context(|| format!("loading trace {}", path.display()))?;
            Scenario::PaddleTrace { samples }
        }
        None => Scenario::Passive {
            duration: args.duration,
        },
    };
    let log = run_scenario(config, &scenario)?;
    save_log(config, &log, &args.out)?;
    eprintln!(
        "wrote {} rows to {}",
        log.rows.len(),
        resolve_out(config, &args.out).display()
    );
    Ok(())
}

fn cmd_trial(config: &SimConfig, args: &TrialArgs) -> Result<()> {
    let spec = TrialSpec {
        level: args.level,
        ripples: args.ripples,
        posture: args.posture.into(),
        accel_duration: args.duration,
    };
    let log = run_scenario(config, &generate_trial(spec))?;
    if let Some(out) = &args.out {
        save_log(config, &log, out)?;
    }
    let report = trial_metrics(&[TrialRun { spec, log }])?;
    write_json(&report, &args.metrics)
}

fn cmd_bench_cueing(config: &SimConfig, args: &BenchCueingArgs) -> Result<()> {
    let log = SimulationLog::load_csv(&args.log)
        .with_context(|| format!("loading log {}", args.log.display()))?;
    let samples: Vec<KinematicSample> = log
        .rows
        .iter()
        .map(|r| KinematicSample {
            lin_accel: r.raw_lin_accel,
            lin_vel: r.body.linear_velocity,
        })
        .collect();
    let report = compare_cueing(&samples, log.dt, &config.cueing)?;
    write_json(&report, &args.out)
}

fn cmd_order(args: &OrderArgs) -> Result<()> {
    let order = session_order(args.seed);
    write_json(&order, &args.out)
}

fn cmd_emit_frames(args: &EmitFramesArgs) -> Result<()> {
    let log = SimulationLog::load_csv(&args.log)
        .with_context(|| format!("loading log {}", args.log.display()))?;
    let sink: Box<dyn FrameSink> = match args.sink.split_once(':') {
        Some(("file", path)) => Box::new(FileSink::create(path)?),
        Some(("udp", addr)) => Box::new(UdpSink::connect(addr)?),
        _ => bail!(
            "sink must be file:PATH or udp:HOST:PORT, got '{}'",
            args.sink
        ),
    };
    let frames = match args.channel {
        ChannelArg::Commanded => log.commanded_frames(),
        ChannelArg::Achieved => log.achieved_frames(),
    };
    let stats = stream_frames(frames, args.rate, sink, args.capacity)?;
    println!("sent {} dropped {}", stats.sent, stats.dropped);
    Ok(())
}

fn main() {
    let cli = Cli::parse();
    let outcome = (|| -> Result<()> {
        match &cli.command {
            Command::Order(args) => cmd_order(args),
            Command::Simulate(args) => cmd_simulate(&resolve_config(&cli.config)?, args),
            Command::Trial(args) => cmd_trial(&resolve_config(&cli.config)?, args),
            Command::BenchCueing(args) => cmd_bench_cueing(&resolve_config(&cli.config)?, args),
            Command::EmitFrames(args) => cmd_emit_frames(args),
        }
    })();
    if let Err(e) = outcome {
        eprintln!("error: {e:#}");
        std::process::exit(1);
    }
}
