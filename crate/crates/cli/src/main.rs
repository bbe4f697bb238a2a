use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use autoarc_cli::{render_report, render_text, run, Format, Job, JobError};

/// Run an arc-space job file and print its report.
#[derive(Parser)]
#[command(name = "autoarc", version)]
struct Args {
    /// Job file.
    job: PathBuf,
    /// Report format; defaults to the job's `output.format`. With a result
    /// file, stdout always gets the text summary.
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Result file; defaults to the job's `output.file`.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

fn execute(args: &Args) -> Result<(), JobError> {
    let text = std::fs::read_to_string(&args.job)
        .map_err(|source| JobError::Io { path: args.job.display().to_string(), source })?;
    let job = Job::parse(&text)?;
    let report = run(&job)?;
    let format = args.format.unwrap_or(job.output.format);
    // relative result paths are resolved against the job file
    let file = args.output.clone().or_else(|| {
        job.output.file.as_ref().map(|f| args.job.parent().map_or_else(|| f.clone(), |dir| dir.join(f)))
    });
    match file {
        Some(path) => {
            std::fs::write(&path, render_report(&report, format))
                .map_err(|source| JobError::Io { path: path.display().to_string(), source })?;
            print!("{}", render_text(&report));
        }
        None => print!("{}", render_report(&report, format)),
    }
    Ok(())
}

fn main() -> ExitCode {
    let args = Args::parse();
    match execute(&args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
