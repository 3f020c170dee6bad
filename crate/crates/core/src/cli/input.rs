//! Reading pairs from CSV or JSON.
//!
//! CSV: a header row starting with `pair_id,role`, then one row per member,
//! `pair_id,P,v1,...,vn` and `pair_id,Q,v1,...,vn`. Rows may have different
//! lengths; empty trailing cells are ignored.
//!
//! JSON: `{"pairs": [{"id": "...", "p": [...], "q": [...]}]}`.

use std::collections::BTreeMap;
use std::io::Read;

use anyhow::{anyhow, bail, Context};
use serde::Deserialize;

use crate::simplex::{Distribution, DistributionPair};

/// A validated input pair.
#[derive(Debug, Clone)]
pub struct NamedPair {
    pub id: String,
    pub pair: DistributionPair,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonDocument {
    pairs: Vec<JsonPair>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonPair {
    id: String,
    p: Vec<f64>,
    q: Vec<f64>,
}

#[derive(Default)]
struct RawPair {
    p: Option<Vec<f64>>,
    q: Option<Vec<f64>>,
}

/// Parses `text`, choosing JSON when its first non-blank character is `{`.
///
/// The result is sorted by pair id.
pub fn parse_pairs(text: &str, renormalize: bool) -> anyhow::Result<Vec<NamedPair>> {
    let raw = if text.trim_start().starts_with('{') {
        parse_json(text)?
    } else {
        parse_csv(text)?
    };
    if raw.is_empty() {
        bail!("input contains no pairs");
    }
    raw.into_iter()
        .map(|(id, raw)| {
            let p = raw.p.ok_or_else(|| anyhow!("pair `{id}`: missing role P"))?;
            let q = raw.q.ok_or_else(|| anyhow!("pair `{id}`: missing role Q"))?;
            if p.len() != q.len() {
                bail!(
                    "pair `{id}`: P has {} components but Q has {}",
                    p.len(),
                    q.len()
                );
            }
            let p = Distribution::validate(&p, renormalize).with_context(|| format!("pair `{id}`, role P"))?;
            let q = Distribution::validate(&q, renormalize).with_context(|| format!("pair `{id}`, role Q"))?;
            let pair = DistributionPair::new(p, q).with_context(|| format!("pair `{id}`"))?;
            Ok(NamedPair { id, pair })
        })
        .collect()
}

/// Reads `path`, or standard input when `path` is `None` or `-`.
pub fn read_input(path: Option<&std::path::Path>) -> anyhow::Result<String> {
    match path {
        Some(p) if p.as_os_str() != "-" => {
            std::fs::read_to_string(p).with_context(|| format!("cannot read `{}`", p.display()))
        }
        _ => {
            let mut text = String::new();
            std::io::stdin()
                .read_to_string(&mut text)
                .context("cannot read standard input")?;
            Ok(text)
        }
    }
}

fn parse_json(text: &str) -> anyhow::Result<BTreeMap<String, RawPair>> {
    let doc: JsonDocument = serde_json::from_str(text).context("malformed JSON input")?;
    let mut out = BTreeMap::new();
    for pair in doc.pairs {
        if out.contains_key(&pair.id) {
            bail!("pair `{}`: duplicate id", pair.id);
        }
        out.insert(
            pair.id,
            RawPair {
                p: Some(pair.p),
                q: Some(pair.q),
            },
        );
    }
    Ok(out)
}

fn parse_csv(text: &str) -> anyhow::Result<BTreeMap<String, RawPair>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut out: BTreeMap<String, RawPair> = BTreeMap::new();
    let mut seen_header = false;

    for (line, record) in reader.records().enumerate() {
        let record = record.with_context(|| format!("malformed CSV near line {}", line + 1))?;
        if record.iter().all(str::is_empty) {
            continue;
        }
        if !seen_header {
            if record.get(0) != Some("pair_id") || record.get(1) != Some("role") {
                bail!("CSV input must start with a `pair_id,role,v1,...` header");
            }
            seen_header = true;
            continue;
        }
        let id = record.get(0).unwrap_or_default().to_string();
        if id.is_empty() {
            bail!("line {}: empty pair_id", line + 1);
        }
        let role = record.get(1).unwrap_or_default();
        let values = record
            .iter()
            .skip(2)
            .filter(|cell| !cell.is_empty())
            .map(|cell| {
                cell.parse::<f64>()
                    .map_err(|_| anyhow!("pair `{id}`, role {role}: `{cell}` is not a number"))
            })
            .collect::<anyhow::Result<Vec<f64>>>()?;
        let slot = out.entry(id.clone()).or_default();
        let target = match role {
            "P" => &mut slot.p,
            "Q" => &mut slot.q,
            other => bail!("pair `{id}`: unknown role `{other}` (expected P or Q)"),
        };
        if target.is_some() {
            bail!("pair `{id}`: role {role} appears more than once");
        }
        *target = Some(values);
    }
    if !seen_header {
        bail!("CSV input must start with a `pair_id,role,v1,...` header");
    }
    Ok(out)
}
