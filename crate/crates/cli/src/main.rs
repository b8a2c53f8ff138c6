mod args;
mod commands;
mod reproduce;

use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::Parser;
use serde::Serialize;
use tclab::localring::PresentationJson;
use tclab::poly::PrimeField;

use args::{parse_h, Cli, Command, RunConfig};

fn emit<T: Serialize>(cfg: &RunConfig, value: &T, text: impl FnOnce(&T) -> String) -> Result<()> {
    if cfg.json {
        println!("{}", serde_json::to_string_pretty(value)?);
    } else {
        println!("{}", text(value));
    }
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode> {
    let cfg = RunConfig::try_from(&cli.config)?;
    match cli.command {
        Command::Analyze { h } => emit(&cfg, &commands::analyze(&h)?, |r| r.to_string())?,
        Command::Build { h, schedule } => {
            let h = parse_h(&h)?;
            let schedule = commands::read_schedule(schedule.as_deref())?;
            emit(&cfg, &commands::build(&h, &schedule, &cfg)?, commands::build_text)?;
        }
        Command::Ci {
            c,
            e,
            d_seq,
            dim,
            enumerate,
            build,
        } => {
            if enumerate {
                emit(&cfg, &commands::ci_enumerate(&c)?, commands::ci_enumeration_text)?;
            } else {
                let out = commands::ci(&c, e.as_deref(), d_seq.as_deref(), dim, build, &cfg)?;
                emit(&cfg, &out, commands::ci_text)?;
            }
        }
        Command::Enumerate { h, target, certify } => {
            emit(&cfg, &commands::enumerate(&h, target, certify, &cfg)?, commands::enumeration_text)?
        }
        Command::Verify { file } => {
            let text = std::fs::read_to_string(&file).with_context(|| format!("reading {}", file.display()))?;
            let json: PresentationJson = serde_json::from_str(&text).context("parsing presentation JSON")?;
            emit(&cfg, &commands::verify(&json, &cfg)?, commands::verify_text)?;
        }
        Command::Reproduce { case, bless, fixtures } => {
            if cfg.field != PrimeField::default() {
                eprintln!("note: reproduce always runs over F_{}", PrimeField::DEFAULT_PRIME);
            }
            let cases: Vec<&str> = match &case {
                Some(c) if reproduce::CASES.contains(&c.as_str()) => vec![c.as_str()],
                Some(c) => anyhow::bail!("unknown case {c:?}; known cases: {}", reproduce::CASES.join(", ")),
                None => reproduce::CASES.to_vec(),
            };
            let results = reproduce::reproduce(&cases, &fixtures, bless);
            let mut all = true;
            for r in &results {
                if r.failures.is_empty() {
                    let what = if r.blessed { "blessed" } else { "PASS" };
                    println!("{}: {what}", r.name);
                } else {
                    all = false;
                    println!("{}: FAIL", r.name);
                    for f in &r.failures {
                        println!("  {f}");
                    }
                }
            }
            if !all {
                return Ok(ExitCode::FAILURE);
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
