//! Batch front end for exact computations on ordinal intervals: parse and
//! combine ordinals, manipulate step functions as JSON, apply the embedding
//! operators by name, and run overlap searches that emit JSON certificates.
//!
//! Exit codes: 0 success, 1 a verified bound failed, 2 usage or parse error.

mod basis;
mod json;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand};
use serde_json::{Map, Value};

use sprck_core::embed::{
    c0_coeffs, c0_coeffs_w2, c0_embed, glued_embed, glued_embed_w2, pair_embed, self_embed_w2,
    spr_embed_into, urysohn_embed,
};
use sprck_core::ordinal::Ordinal;
use sprck_core::rational::{format_rational, parse_rational, Rational};
use sprck_core::spr::{adp_search, spr_ratio, verify_spr_bound};

use crate::basis::parse_basis;
use crate::json::{
    certificate_to_value, finseq_from_value, finseq_to_value, pair_to_value, stepfn_from_value,
    stepfn_to_value,
};

#[derive(Parser)]
#[command(name = "sprck", version, about = "Exact step-function algebra on ordinal intervals")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Ordinal arithmetic in Cantor normal form (`w^3*2 + w*5 + 7`)
    Ord {
        #[command(subcommand)]
        cmd: OrdCmd,
    },
    /// Step-function algebra; functions travel as JSON files
    #[command(name = "fn")]
    Func {
        #[command(subcommand)]
        cmd: FnCmd,
    },
    /// Apply an embedding operator by name
    Embed {
        #[command(subcommand)]
        cmd: EmbedCmd,
    },
    /// Overlap metrics, searches, and certificates
    Spr {
        #[command(subcommand)]
        cmd: SprCmd,
    },
}

#[derive(Subcommand)]
enum OrdCmd {
    /// Ordinal sum (left-absorbing)
    Add { a: String, b: String },
    /// Compare two ordinals: prints less | equal | greater
    Cmp { a: String, b: String },
    /// Round up to the next limit one level above: prints an ordinal
    Ell {
        t: String,
        #[arg(long)]
        alpha: u64,
    },
    /// Least exponent present in t (alpha at the right endpoint)
    Beta0 {
        t: String,
        #[arg(long)]
        alpha: u64,
    },
}

#[derive(Subcommand)]
enum FnCmd {
    /// Value at a point
    Eval {
        file: PathBuf,
        #[arg(long)]
        at: String,
    },
    /// Exact sup norm
    Norm { file: PathBuf },
    /// Pointwise minimum of two functions
    Meet {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Pointwise maximum of two functions
    Join {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Pointwise absolute value
    Abs {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Concatenate intervals: g on the first, f shifted behind it
    Glue {
        g: PathBuf,
        f: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Indicator of the clopen interval (a, b] inside [1, gamma]
    Indicator {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long)]
        gamma: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum EmbedCmd {
    /// Apply an operator: S, R, R2, T, T-glued, T-glued-w2, self-w2,
    /// urysohn, spr-embed. Parameters ride on the name (`R:alpha=3`,
    /// `urysohn:alpha=2,gamma=w^2*2`) or on --alpha/--gamma.
    Apply {
        #[arg(long)]
        op: String,
        #[arg(long)]
        alpha: Option<u64>,
        #[arg(long)]
        gamma: Option<String>,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum SprCmd {
    /// Minimize the meet norm over normalized pairs from a basis
    Search {
        #[arg(long)]
        basis: String,
        /// Unit fraction like 1/4: exhaustive grid mode; omit for random
        /// restarts
        #[arg(long)]
        grid: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 32)]
        budget: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exhaustively check meet norm >= 1/C on a grid; exit 1 on failure
    Verify {
        #[arg(long)]
        basis: String,
        #[arg(long = "C")]
        c: String,
        #[arg(long)]
        grid: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sign-recovery ratio of two functions (prints `inf` when unbounded)
    Ratio { a: PathBuf, b: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cmd: Cmd) -> Result<u8> {
    match cmd {
        Cmd::Ord { cmd } => run_ord(cmd),
        Cmd::Func { cmd } => run_fn(cmd),
        Cmd::Embed { cmd } => run_embed(cmd),
        Cmd::Spr { cmd } => run_spr(cmd),
    }
}

fn parse_ordinal(s: &str) -> Result<Ordinal> {
    s.parse().map_err(|e| anyhow!("{e}"))
}

fn read_value(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn read_stepfn(path: &Path) -> Result<sprck_core::StepFn> {
    stepfn_from_value(&read_value(path)?).with_context(|| format!("in {}", path.display()))
}

fn write_output(value: &Value, out: Option<&Path>) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    match out {
        Some(path) => std::fs::write(path, text)
            .with_context(|| format!("writing {}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(())
}

fn run_ord(cmd: OrdCmd) -> Result<u8> {
    match cmd {
        OrdCmd::Add { a, b } => {
            println!("{}", parse_ordinal(&a)?.add(&parse_ordinal(&b)?));
        }
        OrdCmd::Cmp { a, b } => {
            let word = match parse_ordinal(&a)?.compare(&parse_ordinal(&b)?) {
                std::cmp::Ordering::Less => "less",
                std::cmp::Ordering::Equal => "equal",
                std::cmp::Ordering::Greater => "greater",
            };
            println!("{word}");
        }
        OrdCmd::Ell { t, alpha } => {
            println!("{}", parse_ordinal(&t)?.ell(alpha).map_err(|e| anyhow!("{e}"))?);
        }
        OrdCmd::Beta0 { t, alpha } => {
            println!("{}", parse_ordinal(&t)?.beta0(alpha).map_err(|e| anyhow!("{e}"))?);
        }
    }
    Ok(0)
}

fn run_fn(cmd: FnCmd) -> Result<u8> {
    match cmd {
        FnCmd::Eval { file, at } => {
            let f = read_stepfn(&file)?;
            let t = parse_ordinal(&at)?;
            println!("{}", format_rational(&f.eval(&t).map_err(|e| anyhow!("{e}"))?));
        }
        FnCmd::Norm { file } => {
            println!("{}", format_rational(&read_stepfn(&file)?.sup_norm()));
        }
        FnCmd::Meet { a, b, out } => {
            let f = read_stepfn(&a)?.meet(&read_stepfn(&b)?).map_err(|e| anyhow!("{e}"))?;
            write_output(&stepfn_to_value(&f), out.as_deref())?;
        }
        FnCmd::Join { a, b, out } => {
            let f = read_stepfn(&a)?.join(&read_stepfn(&b)?).map_err(|e| anyhow!("{e}"))?;
            write_output(&stepfn_to_value(&f), out.as_deref())?;
        }
        FnCmd::Abs { file, out } => {
            write_output(&stepfn_to_value(&read_stepfn(&file)?.abs()), out.as_deref())?;
        }
        FnCmd::Glue { g, f, out } => {
            let glued = read_stepfn(&g)?.glue(&read_stepfn(&f)?);
            write_output(&stepfn_to_value(&glued), out.as_deref())?;
        }
        FnCmd::Indicator { a, b, gamma, out } => {
            let f = sprck_core::StepFn::indicator(
                &parse_ordinal(&a)?,
                &parse_ordinal(&b)?,
                &parse_ordinal(&gamma)?,
            )
            .map_err(|e| anyhow!("{e}"))?;
            write_output(&stepfn_to_value(&f), out.as_deref())?;
        }
    }
    Ok(0)
}

struct OpSpec {
    name: String,
    alpha: Option<u64>,
    gamma: Option<Ordinal>,
}

/// Accepts `name`, `name:key=val,...`, with flag values as fallback.
fn parse_op_spec(op: &str, alpha: Option<u64>, gamma: Option<&str>) -> Result<OpSpec> {
    let (name, params) = match op.split_once(':') {
        Some((n, p)) => (n, Some(p)),
        None => (op, None),
    };
    let mut spec = OpSpec {
        name: name.to_string(),
        alpha,
        gamma: gamma.map(parse_ordinal).transpose()?,
    };
    if let Some(params) = params {
        for kv in params.split(',') {
            let (key, val) = kv
                .split_once('=')
                .ok_or_else(|| anyhow!("operator parameter `{kv}` is not key=value"))?;
            match key {
                "alpha" => spec.alpha = Some(val.parse().context("alpha must be a natural")?),
                "gamma" => spec.gamma = Some(parse_ordinal(val)?),
                other => bail!("unknown operator parameter `{other}`"),
            }
        }
    }
    Ok(spec)
}

fn need_alpha(spec: &OpSpec) -> Result<u64> {
    spec.alpha.ok_or_else(|| anyhow!("operator `{}` needs --alpha", spec.name))
}

fn need_gamma(spec: &OpSpec) -> Result<Ordinal> {
    spec.gamma.clone().ok_or_else(|| anyhow!("operator `{}` needs --gamma", spec.name))
}

fn run_embed(cmd: EmbedCmd) -> Result<u8> {
    let EmbedCmd::Apply { op, alpha, gamma, input, out } = cmd;
    let spec = parse_op_spec(&op, alpha, gamma.as_deref())?;
    let err = |e: sprck_core::embed::EmbedError| anyhow!("{e}");
    let result: Value = match spec.name.as_str() {
        "S" => {
            let lambda = finseq_from_value(&read_value(&input)?)?;
            stepfn_to_value(&c0_embed(&lambda).map_err(err)?)
        }
        "R" => {
            let f = read_stepfn(&input)?;
            finseq_to_value(&c0_coeffs(&f, need_alpha(&spec)?).map_err(err)?)
        }
        "R2" => {
            let f = read_stepfn(&input)?;
            finseq_to_value(&c0_coeffs_w2(&f).map_err(err)?)
        }
        "T" => {
            let f = read_stepfn(&input)?;
            pair_to_value(&pair_embed(&f, need_alpha(&spec)?).map_err(err)?)
        }
        "T-glued" => {
            let f = read_stepfn(&input)?;
            stepfn_to_value(&glued_embed(&f, need_alpha(&spec)?).map_err(err)?)
        }
        "T-glued-w2" => {
            let f = read_stepfn(&input)?;
            stepfn_to_value(&glued_embed_w2(&f).map_err(err)?)
        }
        "self-w2" => {
            let f = read_stepfn(&input)?;
            stepfn_to_value(&self_embed_w2(&f).map_err(err)?)
        }
        "urysohn" => {
            let op = urysohn_embed(need_alpha(&spec)?, &need_gamma(&spec)?).map_err(err)?;
            stepfn_to_value(&op.apply(&read_stepfn(&input)?).map_err(err)?)
        }
        "spr-embed" => {
            let op = spr_embed_into(need_alpha(&spec)?, &need_gamma(&spec)?).map_err(err)?;
            stepfn_to_value(&op.apply(&read_stepfn(&input)?).map_err(err)?)
        }
        other => bail!(
            "unknown operator `{other}` (expected S, R, R2, T, T-glued, T-glued-w2, self-w2, \
             urysohn or spr-embed)"
        ),
    };
    write_output(&result, out.as_deref())?;
    Ok(0)
}

fn timestamp_value(wall: Instant) -> Value {
    let unix_ms = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_millis() as u64)
        .unwrap_or(0);
    let mut m = Map::new();
    m.insert("unix_ms".into(), Value::from(unix_ms));
    m.insert("wall_ms".into(), Value::from(wall.elapsed().as_millis() as u64));
    Value::Object(m)
}

fn parse_grid(grid: &str) -> Result<Rational> {
    parse_rational(grid).map_err(|e| anyhow!("{e}"))
}

fn run_spr(cmd: SprCmd) -> Result<u8> {
    match cmd {
        SprCmd::Search { basis, grid, seed, budget, out } => {
            let basis = parse_basis(&basis)?;
            let grid = grid.as_deref().map(parse_grid).transpose()?;
            let started = Instant::now();
            let cert =
                adp_search(&basis, budget, seed, grid.as_ref()).map_err(|e| anyhow!("{e}"))?;
            write_output(&certificate_to_value(&cert, timestamp_value(started)), out.as_deref())?;
            Ok(0)
        }
        SprCmd::Verify { basis, c, grid, out } => {
            let basis = parse_basis(&basis)?;
            let c = parse_rational(&c).map_err(|e| anyhow!("{e}"))?;
            let grid = parse_grid(&grid)?;
            let started = Instant::now();
            let (ok, cert) = verify_spr_bound(&basis, &c, &grid).map_err(|e| anyhow!("{e}"))?;
            write_output(&certificate_to_value(&cert, timestamp_value(started)), out.as_deref())?;
            Ok(if ok { 0 } else { 1 })
        }
        SprCmd::Ratio { a, b } => {
            let ratio =
                spr_ratio(&read_stepfn(&a)?, &read_stepfn(&b)?).map_err(|e| anyhow!("{e}"))?;
            println!("{ratio}");
            Ok(0)
        }
    }
}
