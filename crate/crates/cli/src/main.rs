use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use matdiv_cli::commands::{cmd_dims, cmd_flag_germ, cmd_flag_scene, cmd_lax_dim, cmd_reduce, cmd_verify_quot, RunOptions};
use matdiv_cli::germ::load_germ;
use matdiv_cli::scene::load_scene;
use matdiv_cli::verify::verify_all;
use matdiv_cli::{CliError, Report};

#[derive(Parser, Debug)]
#[command(name = "matdiv", version, about = "Matrix divisors, gradings and genus-0 Lax operator spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Scene file (JSON).
    #[arg(long, global = true)]
    scene: Option<PathBuf>,

    /// Germ file (JSON).
    #[arg(long, global = true)]
    germ: Option<PathBuf>,

    /// Cap on the number of known terms of germs.
    #[arg(long, global = true)]
    precision: Option<usize>,

    /// Extra terms demanded beyond the exponent spread in reductions.
    #[arg(long, global = true)]
    guard: Option<i64>,

    /// Seed for randomized instances; MATDIV_SEED takes precedence.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand, Debug, Clone, Copy)]
enum Command {
    /// Moduli dimension counts in every mode.
    Dims,
    /// Smith reduction of a type-A germ.
    Reduce,
    /// Flag of a germ, or of z^h at every marked point of a scene.
    Flag,
    /// Dimensions of L, M, M/L and the section space.
    LaxDim,
    /// Quotient report with its assertions.
    VerifyQuot,
    /// Every property suite against a scene.
    VerifyAll,
}

fn run(cli: &Cli) -> Result<Report, CliError> {
    let need_scene = || {
        let path = cli.scene.as_ref().ok_or_else(|| CliError::input("this command needs --scene FILE"))?;
        load_scene(path)
    };
    let need_germ = || {
        let path = cli.germ.as_ref().ok_or_else(|| CliError::input("this command needs --germ FILE"))?;
        load_germ(path, cli.precision)
    };
    let options = |scene_opts: Option<&matdiv_cli::scene::Options>| -> Result<RunOptions, CliError> {
        let env_seed = match std::env::var("MATDIV_SEED") {
            Ok(s) => Some(
                s.trim()
                    .parse::<u64>()
                    .map_err(|_| CliError::input(format!("MATDIV_SEED={s:?} is not an unsigned integer")))?,
            ),
            Err(_) => None,
        };
        let defaults = RunOptions::default();
        Ok(RunOptions {
            precision: cli.precision.or(scene_opts.and_then(|o| o.precision)),
            guard: cli.guard.or(scene_opts.and_then(|o| o.guard)).unwrap_or(defaults.guard),
            seed: env_seed
                .or(cli.seed)
                .or(scene_opts.and_then(|o| o.seed))
                .unwrap_or(defaults.seed),
        })
    };
    match cli.command {
        Command::Dims => cmd_dims(&need_scene()?),
        Command::Reduce => cmd_reduce(&need_germ()?, &options(None)?),
        Command::Flag => match (&cli.germ, &cli.scene) {
            (Some(_), _) => cmd_flag_germ(&need_germ()?),
            (None, Some(_)) => cmd_flag_scene(&need_scene()?),
            (None, None) => Err(CliError::input("flag needs --germ FILE or --scene FILE")),
        },
        Command::LaxDim => cmd_lax_dim(&need_scene()?),
        Command::VerifyQuot => cmd_verify_quot(&need_scene()?),
        Command::VerifyAll => {
            let scene = need_scene()?;
            let opts = options(Some(&scene.file.options))?;
            verify_all(&scene, &opts)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&report.json).expect("serializable"));
            } else {
                print!("{}", report.text);
            }
            if let Some(f) = &report.failure {
                eprintln!("property failed: {f}");
            }
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
