use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use blowup_cli::{run_source, OutputMode, RunConfig, EXIT_INPUT};
use blowup_core::MonomialOrder;
use clap::Parser;

/// Exact blow ups, smoothness and normal-crossing checks, and plane-curve
/// resolution over the rationals.
///
/// Log verbosity for diagnostics is read from BLOWUP_LOG (error, warn, info,
/// debug, trace); it never changes the output document.
#[derive(Parser, Debug)]
#[command(name = "blowup", version)]
struct Cli {
    /// One of: gb, membership, saturate, blowup, transform, jacobian-ideal,
    /// smooth-check, singular-locus, max-order, snc-check, monomial-check,
    /// separate, principalize, strnorm, resolve-curve, verify.
    command: String,
    /// Problem file; `-` reads standard input.
    file: PathBuf,
    /// Override the ring's monomial order (lex, grevlex, block(k)).
    #[arg(long, value_parser = parse_order)]
    order: Option<MonomialOrder>,
    /// Write the result as a JSON document.
    #[arg(long)]
    json: bool,
    /// Blow-up budget for strnorm, resolve-curve and verify.
    #[arg(long, default_value_t = 32)]
    max_steps: usize,
    /// Largest stabilization exponent a saturation may report.
    #[arg(long, default_value_t = 64)]
    sat_cap: usize,
    /// S-pair budget of one Gröbner computation.
    #[arg(long, default_value_t = 200_000)]
    gb_cap: usize,
    /// Largest degree of an intermediate Gröbner basis element.
    #[arg(long, default_value_t = 64)]
    degree_cap: u32,
    /// One line per blow up instead of the full text report.
    #[arg(long)]
    summary: bool,
    /// Raise the default log level (repeatable).
    #[arg(short, long, action = clap::ArgAction::Count)]
    verbose: u8,
}

fn parse_order(text: &str) -> Result<MonomialOrder, String> {
    MonomialOrder::parse(text).ok_or_else(|| format!("unknown monomial order `{text}`"))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT as u8 } else { 0 });
        }
    };
    let default_level = match cli.verbose {
        0 => "warn",
        1 => "info",
        2 => "debug",
        _ => "trace",
    };
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("BLOWUP_LOG", default_level)).target(env_logger::Target::Stderr).init();

    let config = RunConfig {
        order: cli.order,
        saturation_cap: cli.sat_cap,
        gb_pair_cap: cli.gb_cap,
        gb_degree_cap: cli.degree_cap,
        max_steps: cli.max_steps,
        output: if cli.json { OutputMode::Json } else { OutputMode::Text },
        summary: cli.summary,
        verbosity: cli.verbose,
    };
    if config.validate().is_ok() {
        // Worker threads read the process-wide caps.
        config.limits().install();
    }
    let (source, origin) = if cli.file.as_os_str() == "-" {
        let mut s = String::new();
        if let Err(e) = std::io::Read::read_to_string(&mut std::io::stdin(), &mut s) {
            eprintln!("error: cannot read standard input: {e}");
            return ExitCode::from(EXIT_INPUT as u8);
        }
        (s, None)
    } else {
        match std::fs::read_to_string(&cli.file) {
            Ok(s) => (s, Some(cli.file.clone())),
            Err(e) => {
                eprintln!("error: cannot read {}: {e}", cli.file.display());
                return ExitCode::from(EXIT_INPUT as u8);
            }
        }
    };
    let out = run_source(&cli.command, &source, origin.as_deref(), &config);
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    ExitCode::from(out.code as u8)
}
