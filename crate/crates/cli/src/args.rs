use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use tclab::localring::DEFAULT_TRUNCATION_CAP;
use tclab::oseq::OSequence;
use tclab::poly::PrimeField;

#[derive(Parser, Debug)]
#[command(name = "tclab", version, about = "Hilbert functions, Betti tables and generator counts of Artinian quotients of k[[x, y]]")]
pub struct Cli {
    #[command(flatten)]
    pub config: ConfigArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct ConfigArgs {
    /// Characteristic of the coefficient field.
    #[arg(long, global = true, env = "TCLAB_PRIME", default_value_t = PrimeField::DEFAULT_PRIME)]
    pub prime: u32,
    /// Largest truncation order tried when certifying.
    #[arg(long, global = true, default_value_t = DEFAULT_TRUNCATION_CAP)]
    pub cap: u32,
    /// Largest order d accepted by `enumerate`.
    #[arg(long, global = true, default_value_t = 8)]
    pub max_order: u32,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Differences, degree sets, generator bounds and the minimal I* table of h.
    Analyze {
        #[arg(long)]
        h: String,
    },
    /// Lex matrix, perturbed matrices, minors and their certification.
    Build {
        #[arg(long)]
        h: String,
        /// Schedule as a JSON file, or inline JSON such as '{"zero":[12],"negative":[[6,8]]}'.
        #[arg(long)]
        schedule: Option<String>,
    },
    /// Complete intersection sequences: h, Hilbert series, multiplicity, a-invariant.
    Ci {
        #[arg(long)]
        c: String,
        /// Either all of e (starting with 0) or e_2, ..., e_n.
        #[arg(long, conflicts_with_all = ["d_seq", "enumerate"])]
        e: Option<String>,
        #[arg(long = "d-seq", conflicts_with = "enumerate")]
        d_seq: Option<String>,
        #[arg(long, default_value_t = 2)]
        dim: u32,
        /// List every admissible e for the given c.
        #[arg(long)]
        enumerate: bool,
        /// Also build and certify the complete intersection.
        #[arg(long)]
        build: bool,
    },
    /// Every cancellation schedule from the lex table down to `target` generators.
    Enumerate {
        #[arg(long)]
        h: String,
        #[arg(long)]
        target: u32,
        /// Certify each outcome with the local engine.
        #[arg(long)]
        certify: bool,
    },
    /// Certify a raw presentation given as a JSON file {"gens": [...], "N": .., "p": ..}.
    Verify { file: PathBuf },
    /// Run the pinned worked examples and diff against the stored fixtures.
    Reproduce {
        /// Run only this case.
        #[arg(long)]
        case: Option<String>,
        /// Overwrite the fixtures with the current output.
        #[arg(long)]
        bless: bool,
        #[arg(long, default_value = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures"))]
        fixtures: PathBuf,
    },
}

/// Validated run settings.
#[derive(Clone, Copy, Debug)]
pub struct RunConfig {
    pub field: PrimeField,
    pub cap: u32,
    pub max_order: u32,
    pub json: bool,
}

impl TryFrom<&ConfigArgs> for RunConfig {
    type Error = anyhow::Error;

    fn try_from(a: &ConfigArgs) -> Result<Self> {
        if a.cap == 0 || a.max_order == 0 {
            bail!("caps must be positive");
        }
        Ok(Self {
            field: PrimeField::new(a.prime)?,
            cap: a.cap,
            max_order: a.max_order,
            json: a.json,
        })
    }
}

/// Comma-separated non-negative integers, optionally in parentheses or brackets.
pub fn parse_list(s: &str) -> Result<Vec<u32>> {
    let inner = s.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    inner
        .split(',')
        .enumerate()
        .map(|(i, t)| {
            t.trim()
                .parse::<u32>()
                .with_context(|| format!("entry {} ({:?}) is not a non-negative integer", i + 1, t.trim()))
        })
        .collect()
}

pub fn parse_h(s: &str) -> Result<OSequence> {
    let v = parse_list(s)?;
    OSequence::from_values(&v).with_context(|| format!("invalid Hilbert function {s:?}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lists() {
        assert_eq!(parse_list("1,2, 3").unwrap(), vec![1, 2, 3]);
        assert_eq!(parse_list("(4,5)").unwrap(), vec![4, 5]);
        let err = parse_list("1,x,3").unwrap_err().to_string();
        assert!(err.contains("entry 2"), "{err}");
        assert!(parse_h("1,3").is_err());
    }
}
