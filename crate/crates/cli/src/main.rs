//! Command-line front end over the bouncer-core library.
//!
//! Subcommands: `spectrum`, `profile`, `bound`, `lifetime`, `rate`.
//! Exit codes: 0 success, 2 configuration error, 3 numerical failure,
//! 4 partial results (some table cells recorded errors).

mod commands;
mod config;
mod report;

use std::collections::HashMap;
use std::process::ExitCode;

use commands::Outcome;
use config::{parse_s_list, ConfigFile, Format, RunConfig, CONFIG_ENV_VAR};
use report::Render;

const USAGE: &str = "\
usage: bouncer <command> [options]

commands:
  spectrum   energy table over the lattice-ratio grid (both solver routes)
  profile    density profile overlay for one (s, n)
  bound      critical heights and spacing bounds from level energies
  lifetime   vibration lifetime shift and the spacing bound from it
  rate       quadrupole rate ratio sweep and its fitted coefficient

options:
  --config <path>      JSON config file (default: $BOUNCER_CONFIG if set)
  --format <fmt>       csv | json | table           (default csv)
  --out <path>         write to a file instead of stdout
  --s <list>           comma-separated lattice ratios (spectrum, rate)
                       or a single ratio (profile)
  --n <int>            level index (profile)
  --nmax <int>         highest level (spectrum)
  --g-factor <float>   gravity enhancement for the centrifugal bound
  --L <int>            perturbation-sum truncation (rate)
";

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    match run(&args) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(args: &[String]) -> Result<ExitCode, String> {
    if args.is_empty() || args[0] == "--help" || args[0] == "-h" {
        print!("{USAGE}");
        return Ok(ExitCode::SUCCESS);
    }
    let command = args[0].as_str();
    let flags = parse_flags(&args[1..])?;
    let cfg = resolve_config(&flags)?;

    let rendered: Result<(String, Outcome), String> = match command {
        "spectrum" => commands::cmd_spectrum(&cfg)
            .map(|(rep, outcome)| (rep.render(cfg.format), outcome)),
        "profile" => {
            let s = match flags.get("s") {
                Some(raw) => {
                    let list = parse_s_list(raw)?;
                    if list.len() != 1 {
                        return Err("profile takes a single --s value".into());
                    }
                    list[0]
                }
                None => 10.0,
            };
            let n = parse_flag(&flags, "n")?.unwrap_or(1u32);
            commands::cmd_profile(&cfg, s, n)
                .map(|rep| (rep.render(cfg.format), Outcome::Full))
        }
        "bound" => commands::cmd_bound(&cfg).map(|rep| (rep.render(cfg.format), Outcome::Full)),
        "lifetime" => {
            commands::cmd_lifetime(&cfg).map(|rep| (rep.render(cfg.format), Outcome::Full))
        }
        "rate" => {
            let sweep = match flags.get("s") {
                Some(raw) => parse_s_list(raw)?,
                None => vec![10.0, 14.0, 20.0],
            };
            commands::cmd_rate(&cfg, &sweep).map(|rep| (rep.render(cfg.format), Outcome::Full))
        }
        other => return Err(format!("unknown command '{other}'\n{USAGE}")),
    };

    let (text, outcome) = match rendered {
        Ok(pair) => pair,
        Err(msg) => {
            eprintln!("error: {msg}");
            return Ok(ExitCode::from(3));
        }
    };

    match &cfg.out {
        Some(path) => std::fs::write(path, &text)
            .map_err(|e| format!("cannot write output file {path}: {e}"))?,
        None => print!("{text}"),
    }

    Ok(match outcome {
        Outcome::Full => ExitCode::SUCCESS,
        Outcome::Partial => ExitCode::from(4),
        Outcome::AllFailed => ExitCode::from(3),
    })
}

fn parse_flags(args: &[String]) -> Result<HashMap<String, String>, String> {
    const KNOWN: [&str; 8] = [
        "config", "format", "out", "s", "n", "nmax", "g-factor", "L",
    ];
    let mut map = HashMap::new();
    let mut i = 0;
    while i < args.len() {
        let arg = &args[i];
        let name = arg
            .strip_prefix("--")
            .ok_or_else(|| format!("unexpected argument '{arg}'\n{USAGE}"))?;
        if !KNOWN.contains(&name) {
            return Err(format!("unknown option '--{name}'\n{USAGE}"));
        }
        let value = args
            .get(i + 1)
            .ok_or_else(|| format!("option '--{name}' needs a value"))?;
        map.insert(name.to_string(), value.clone());
        i += 2;
    }
    Ok(map)
}

fn parse_flag<T: std::str::FromStr>(
    flags: &HashMap<String, String>,
    name: &str,
) -> Result<Option<T>, String> {
    match flags.get(name) {
        None => Ok(None),
        Some(raw) => raw
            .parse::<T>()
            .map(Some)
            .map_err(|_| format!("cannot parse --{name} value '{raw}'")),
    }
}

fn resolve_config(flags: &HashMap<String, String>) -> Result<RunConfig, String> {
    let mut cfg = RunConfig::default();
    let path = flags
        .get("config")
        .cloned()
        .or_else(|| std::env::var(CONFIG_ENV_VAR).ok());
    if let Some(path) = path {
        let raw = std::fs::read_to_string(&path)
            .map_err(|e| format!("cannot read config file {path}: {e}"))?;
        let file: ConfigFile =
            serde_json::from_str(&raw).map_err(|e| format!("config file {path}: {e}"))?;
        cfg.apply_file(file)?;
    }
    if let Some(raw) = flags.get("s") {
        cfg.s_values = parse_s_list(raw)?;
    }
    if let Some(nmax) = parse_flag(flags, "nmax")? {
        cfg.n_max = nmax;
    }
    if let Some(g) = parse_flag(flags, "g-factor")? {
        cfg.g_factor = g;
    }
    if let Some(l) = parse_flag(flags, "L")? {
        cfg.truncation_l = l;
    }
    if let Some(fmt) = flags.get("format") {
        cfg.format = Format::parse(fmt)?;
    }
    if let Some(out) = flags.get("out") {
        cfg.out = Some(out.clone());
    }
    cfg.validate()?;
    Ok(cfg)
}
