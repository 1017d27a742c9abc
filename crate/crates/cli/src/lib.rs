//! Command-line front end for `blowup-core`.
//!
//! [`run_source`] is the whole program minus argument parsing and I/O, so
//! tests drive it directly.

pub mod commands;
pub mod config;
pub mod problem;

use std::path::Path;

use blowup_core::limits::with_limits;

pub use commands::COMMANDS;
pub use config::{OutputMode, RunConfig};
pub use problem::{parse_problem, DivisorBlock, ProblemError, ProblemFile};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CAP: i32 = 3;

/// What a run prints and how it exits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl RunOutput {
    fn failure(code: i32, message: String) -> RunOutput {
        RunOutput { code, stdout: String::new(), stderr: format!("error: {message}\n") }
    }
}

/// Runs `command` on an already parsed file.
pub fn dispatch(command: &str, file: &ProblemFile, config: &RunConfig) -> RunOutput {
    if let Err(e) = config.validate() {
        return RunOutput::failure(EXIT_INPUT, e);
    }
    if !COMMANDS.contains(&command) {
        return RunOutput::failure(EXIT_INPUT, format!("unknown command `{command}`; expected one of {}", COMMANDS.join(", ")));
    }
    log::debug!("running {command} over {} variables", file.ring.arity());
    match with_limits(config.limits(), || commands::run(command, file, config)) {
        Ok(report) => {
            let stdout = match config.output {
                OutputMode::Json => {
                    let mut s = serde_json::to_string_pretty(&report.json).expect("JSON values serialize");
                    s.push('\n');
                    s
                }
                OutputMode::Text => report.text,
            };
            RunOutput { code: EXIT_OK, stdout, stderr: String::new() }
        }
        Err(e) if e.is_resource_cap() => RunOutput::failure(EXIT_CAP, e.to_string()),
        Err(e) => RunOutput::failure(EXIT_INPUT, e.to_string()),
    }
}

/// Parses `source` and runs `command` on it. `origin` is the problem file's
/// path, used to resolve relative paths inside it.
pub fn run_source(command: &str, source: &str, origin: Option<&Path>, config: &RunConfig) -> RunOutput {
    let mut file = match parse_problem(source, config.order) {
        Ok(f) => f,
        Err(e) => {
            let name = origin.map_or("<input>".to_string(), |p| p.display().to_string());
            return RunOutput::failure(EXIT_INPUT, format!("{name}: {e}"));
        }
    };
    file.origin = origin.and_then(Path::parent).map(Path::to_path_buf);
    dispatch(command, &file, config)
}
