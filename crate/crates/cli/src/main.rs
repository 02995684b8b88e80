//! `rnds`: configuration-driven driver for the black-hole mode laboratory.
//!
//! Exit codes: 0 ok, 1 usage/configuration, 2 inadmissible parameters,
//! 3 invariant failure, 4 numeric failure.

mod commands;
mod config;

use std::process::ExitCode;

use rnds_core::error::Error;

use config::RunConfig;

const USAGE: &str = "\
usage: rnds <command> [--config <path>] [--out <path>] [key=value ...]

commands:
  geometry   admissibility report, horizon radii, photon sphere, tortoise
             coefficients, trapping interval
  scan       admissibility and photon sphere over an (M, Q) grid (CSV)
  evolve     one mode evolution; record table as CSV plus state snapshots
  flux       energy flux through a family of achronal surfaces (CSV)
  check      full invariant suite; exit 0 iff every check passes
  help       this text

Configuration is flat `section.key = value` text; trailing `key=value`
arguments override file values. Key listing and defaults are in the README.

exit codes: 0 ok, 1 usage/config, 2 inadmissible parameters,
            3 invariant failure, 4 numeric failure";

fn exit_code_for(error: &Error) -> u8 {
    match error {
        Error::Config(_)
        | Error::InvalidInput(_)
        | Error::Domain(_)
        | Error::ExcludedMode
        | Error::InsufficientData(_)
        | Error::Coverage(_)
        | Error::Fit(_) => 1,
        Error::Inadmissible { .. } => 2,
        Error::Numeric(_)
        | Error::DegenerateGeometry(_)
        | Error::Instability { .. }
        | Error::ConstraintBlowup { .. } => 4,
    }
}

fn run() -> Result<u8, (u8, String)> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let Some(command) = args.first() else {
        return Err((1, "missing command".into()));
    };
    if matches!(command.as_str(), "help" | "--help" | "-h") {
        println!("{USAGE}");
        return Ok(0);
    }

    let mut config = RunConfig::default();
    let mut out_path: Option<String> = None;
    let mut rest = args[1..].iter();
    while let Some(arg) = rest.next() {
        match arg.as_str() {
            "--config" => {
                let path = rest
                    .next()
                    .ok_or_else(|| (1u8, "--config needs a path".to_string()))?;
                config
                    .apply_file(path)
                    .map_err(|err| (exit_code_for(&err), err.to_string()))?;
            }
            "--out" => {
                let path =
                    rest.next().ok_or_else(|| (1u8, "--out needs a path".to_string()))?;
                out_path = Some(path.clone());
            }
            other => {
                let Some((key, value)) = other.split_once('=') else {
                    return Err((1, format!("unrecognized argument `{other}`")));
                };
                config
                    .apply(key.trim(), value.trim())
                    .map_err(|err| (exit_code_for(&err), err.to_string()))?;
            }
        }
    }

    let result = match command.as_str() {
        "geometry" => commands::cmd_geometry(&config, out_path.as_deref()),
        "scan" => commands::cmd_scan(&config, out_path.as_deref()),
        "evolve" => commands::cmd_evolve(&config, out_path.as_deref()),
        "flux" => commands::cmd_flux(&config, out_path.as_deref()),
        "check" => commands::cmd_check(&config),
        other => return Err((1, format!("unknown command `{other}`"))),
    };
    result.map_err(|err| (exit_code_for(&err), err.to_string()))
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code),
        Err((code, message)) => {
            eprintln!("error: {message}");
            if code == 1 {
                eprintln!("{USAGE}");
            }
            ExitCode::from(code)
        }
    }
}
