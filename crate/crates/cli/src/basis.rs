//! Named basis generators for the search commands.
//!
//! * `xbasis:N` — the overlapping basis functions 1..N of the `c0` copy in
//!   `C_0[1, w^2)` (a family with a guaranteed overlap floor)
//! * `blocks:ALPHA,N` — the first N top-level block indicators in
//!   `[1, w^ALPHA]` (pairwise disjoint, so a guaranteed negative family)
//! * `file:PATH` — a JSON array of step functions

use anyhow::{anyhow, bail, Context, Result};
use serde_json::Value;

use sprck_core::embed::c0_basis;
use sprck_core::stepfn::StepFn;

use crate::json::stepfn_from_value;

pub fn parse_basis(spec: &str) -> Result<Vec<StepFn>> {
    let (kind, rest) = spec
        .split_once(':')
        .ok_or_else(|| anyhow!("basis spec must be xbasis:N, blocks:ALPHA,N or file:PATH"))?;
    match kind {
        "xbasis" => {
            let n: u64 = rest.parse().context("xbasis:N needs a positive count N")?;
            if n == 0 {
                bail!("xbasis:N needs N >= 1");
            }
            (1..=n).map(|i| c0_basis(i).map_err(|e| anyhow!("{e}"))).collect()
        }
        "blocks" => {
            let (alpha, n) = rest
                .split_once(',')
                .ok_or_else(|| anyhow!("blocks spec is blocks:ALPHA,N"))?;
            let alpha: u64 = alpha.parse().context("blocks:ALPHA,N needs a level ALPHA")?;
            let n: u64 = n.parse().context("blocks:ALPHA,N needs a positive count N")?;
            if alpha == 0 || n == 0 {
                bail!("blocks:ALPHA,N needs ALPHA >= 1 and N >= 1");
            }
            (1..=n)
                .map(|m| StepFn::block_indicator(&[m.into()], alpha).map_err(|e| anyhow!("{e}")))
                .collect()
        }
        "file" => {
            let text = std::fs::read_to_string(rest)
                .with_context(|| format!("reading basis file {rest}"))?;
            let value: Value = serde_json::from_str(&text).context("parsing basis JSON")?;
            let arr = value
                .as_array()
                .ok_or_else(|| anyhow!("basis file must hold a JSON array of step functions"))?;
            arr.iter().map(stepfn_from_value).collect()
        }
        other => bail!("unknown basis kind `{other}` (expected xbasis, blocks or file)"),
    }
}
