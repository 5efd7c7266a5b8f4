use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use syzlab_cli::{run_path, Outcome, RunOptions};

/// Runs syzlab session files and directories of session files.
#[derive(Parser, Debug)]
#[command(name = "syzlab", version)]
struct Args {
    /// Session files (`*.syz`) or directories run as a corpus.
    paths: Vec<PathBuf>,

    /// Characteristic used instead of the one each session declares.
    #[arg(long = "char", value_name = "P")]
    characteristic: Option<u64>,

    /// Largest homological index checked by verifiers.
    #[arg(long, default_value_t = 6)]
    bound: usize,

    /// Directory for cached resolutions; SYZLAB_CACHE takes precedence.
    #[arg(long, value_name = "DIR")]
    cache_dir: Option<PathBuf>,

    /// Write one tab-separated record per check to this file.
    #[arg(long, value_name = "PATH")]
    report: Option<PathBuf>,

    /// Worker threads for corpus runs (0 picks one per core).
    #[arg(long, default_value_t = 0)]
    jobs: usize,
}

fn main() -> ExitCode {
    let args = Args::parse();
    if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(args.jobs).build_global() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    let opts = RunOptions {
        bound: args.bound,
        char_override: args.characteristic,
        cache_dir: std::env::var_os("SYZLAB_CACHE").map(PathBuf::from).or(args.cache_dir),
    };
    let mut outcome = Outcome::default();
    for path in &args.paths {
        match run_path(path, &opts) {
            Ok(o) => outcome.fragments.extend(o.fragments),
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
        }
    }
    print!("{}", outcome.human());
    if let Some(path) = &args.report {
        if let Err(e) = outcome.write_report(path) {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    if outcome.failed() {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}
