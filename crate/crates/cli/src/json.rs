//! Pinned JSON encodings.
//!
//! * ordinal: array of `[exponent, coefficient]` pairs, descending; `[]` is 0
//! * rational: reduced string `"p/q"` (`"p"` when the denominator is 1)
//! * step function: `{"domain": <ord>, "cells": [{"end": <ord>, "value": "p/q"}, ...]}`
//! * sequence: `{"entries": [{"index": <ord>, "value": "p/q"}, ...]}`
//! * pair: `{"left": <stepfn>, "right": <stepfn>}`
//!
//! Number literals round-trip at arbitrary precision; maps serialize with
//! sorted keys, so equal values print byte-identically.

use anyhow::{anyhow, bail, Context, Result};
use serde_json::{Map, Number, Value};

use sprck_core::ordinal::{Nat, Ordinal};
use sprck_core::rational::{format_rational, parse_rational, Rational};
use sprck_core::seqspace::FinSeq;
use sprck_core::spr::{SearchMethod, SprCertificate};
use sprck_core::stepfn::{FnPair, StepFn};

fn nat_to_number(n: &Nat) -> Number {
    serde_json::from_str(&n.to_string()).expect("a natural is a valid JSON number")
}

fn nat_from_value(v: &Value) -> Result<Nat> {
    let n = v.as_number().ok_or_else(|| anyhow!("expected a number, got {v}"))?;
    n.to_string()
        .parse::<Nat>()
        .map_err(|_| anyhow!("expected a non-negative integer, got {n}"))
}

pub fn ordinal_to_value(o: &Ordinal) -> Value {
    Value::Array(
        o.terms()
            .iter()
            .map(|(e, k)| Value::Array(vec![
                Value::Number(nat_to_number(e)),
                Value::Number(nat_to_number(k)),
            ]))
            .collect(),
    )
}

pub fn ordinal_from_value(v: &Value) -> Result<Ordinal> {
    let arr = v.as_array().ok_or_else(|| anyhow!("ordinal must be an array of pairs"))?;
    let mut terms = Vec::with_capacity(arr.len());
    for pair in arr {
        let pair = pair.as_array().filter(|p| p.len() == 2).ok_or_else(|| {
            anyhow!("ordinal term must be a two-element array [exponent, coefficient]")
        })?;
        terms.push((nat_from_value(&pair[0])?, nat_from_value(&pair[1])?));
    }
    Ordinal::from_terms(terms).map_err(|e| anyhow!("{e}"))
}

pub fn rational_to_value(r: &Rational) -> Value {
    Value::String(format_rational(r))
}

pub fn rational_from_value(v: &Value) -> Result<Rational> {
    let s = v.as_str().ok_or_else(|| anyhow!("rational must be a string \"p/q\""))?;
    parse_rational(s).map_err(|e| anyhow!("{e}"))
}

pub fn stepfn_to_value(f: &StepFn) -> Value {
    let cells: Vec<Value> = f
        .cells()
        .iter()
        .map(|c| {
            let mut m = Map::new();
            m.insert("end".into(), ordinal_to_value(&c.end));
            m.insert("value".into(), rational_to_value(&c.value));
            Value::Object(m)
        })
        .collect();
    let mut m = Map::new();
    m.insert("domain".into(), ordinal_to_value(f.domain_end()));
    m.insert("cells".into(), Value::Array(cells));
    Value::Object(m)
}

pub fn stepfn_from_value(v: &Value) -> Result<StepFn> {
    let obj = v.as_object().ok_or_else(|| anyhow!("step function must be an object"))?;
    let domain = ordinal_from_value(
        obj.get("domain").ok_or_else(|| anyhow!("missing \"domain\""))?,
    )
    .context("in \"domain\"")?;
    let cells_v = obj
        .get("cells")
        .and_then(Value::as_array)
        .ok_or_else(|| anyhow!("missing \"cells\" array"))?;
    let mut cells = Vec::with_capacity(cells_v.len());
    for cell in cells_v {
        let cell = cell.as_object().ok_or_else(|| anyhow!("cell must be an object"))?;
        let end = ordinal_from_value(cell.get("end").ok_or_else(|| anyhow!("missing \"end\""))?)?;
        let value = rational_from_value(
            cell.get("value").ok_or_else(|| anyhow!("missing \"value\""))?,
        )?;
        cells.push((end, value));
    }
    StepFn::from_cells(domain, cells).map_err(|e| anyhow!("{e}"))
}

pub fn finseq_to_value(s: &FinSeq) -> Value {
    let entries: Vec<Value> = s
        .iter()
        .map(|(t, v)| {
            let mut m = Map::new();
            m.insert("index".into(), ordinal_to_value(t));
            m.insert("value".into(), rational_to_value(v));
            Value::Object(m)
        })
        .collect();
    let mut m = Map::new();
    m.insert("entries".into(), Value::Array(entries));
    Value::Object(m)
}

pub fn finseq_from_value(v: &Value) -> Result<FinSeq> {
    let entries = v
        .as_object()
        .and_then(|o| o.get("entries"))
        .and_then(Value::as_array)
        .ok_or_else(|| anyhow!("sequence must be an object with an \"entries\" array"))?;
    let mut s = FinSeq::new();
    let mut seen = std::collections::BTreeSet::new();
    for entry in entries {
        let entry = entry.as_object().ok_or_else(|| anyhow!("entry must be an object"))?;
        let index =
            ordinal_from_value(entry.get("index").ok_or_else(|| anyhow!("missing \"index\""))?)?;
        let value = rational_from_value(
            entry.get("value").ok_or_else(|| anyhow!("missing \"value\""))?,
        )?;
        if !seen.insert(index.clone()) {
            bail!("duplicate index {index} in sequence");
        }
        s.set(index, value);
    }
    Ok(s)
}

pub fn pair_to_value(p: &FnPair) -> Value {
    let mut m = Map::new();
    m.insert("left".into(), stepfn_to_value(&p.left));
    m.insert("right".into(), stepfn_to_value(&p.right));
    Value::Object(m)
}

/// Certificate encoding; `timestamp` is the only field that varies between
/// identical runs and is excluded from determinism comparisons.
pub fn certificate_to_value(cert: &SprCertificate, timestamp: Value) -> Value {
    let mut m = Map::new();
    m.insert(
        "basis".into(),
        Value::Array(cert.basis.iter().map(stepfn_to_value).collect()),
    );
    m.insert("method".into(), Value::String(cert.method.name().into()));
    m.insert(
        "grid_step".into(),
        match &cert.method {
            SearchMethod::ExhaustiveGrid { grid_step } => rational_to_value(grid_step),
            SearchMethod::RandomRestart => Value::Null,
        },
    );
    m.insert("seed".into(), Value::from(cert.seed));
    m.insert("budget".into(), Value::from(cert.budget));
    m.insert("min_value".into(), rational_to_value(&cert.min_value));
    m.insert(
        "witness_a".into(),
        Value::Array(cert.witness_a.iter().map(rational_to_value).collect()),
    );
    m.insert(
        "witness_b".into(),
        Value::Array(cert.witness_b.iter().map(rational_to_value).collect()),
    );
    m.insert("conclusion".into(), Value::String(cert.conclusion.clone()));
    m.insert("pairs".into(), Value::from(cert.pairs_evaluated));
    m.insert("timestamp".into(), timestamp);
    Value::Object(m)
}
