//! Click-log ingestion.
//!
//! One impression per line, tab-separated:
//! `query_id<TAB>shown ids, comma-separated<TAB>clicked id or "-"`.
//! Blank lines and lines starting with `#` are skipped. Each item's state
//! mean is its click-through rate; items keep their order of first
//! appearance.

use std::io::BufRead;
use std::path::Path;

use crate::error::{Error, Result};
use crate::harness::config::ExperimentConfig;
use crate::model::{ArmParams, BanditInstance, CostDist, DEFAULT_EPSILON};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClickLogRecord {
    pub query_id: String,
    pub shown: Vec<String>,
    pub clicked: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ItemCounts {
    pub item: String,
    pub impressions: u64,
    pub clicks: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClickLogInstance {
    pub instance: BanditInstance,
    pub items: Vec<ItemCounts>,
    /// Items whose raw click rate was 0 or 1 and got clamped.
    pub clamped: Vec<String>,
}

impl ClickLogInstance {
    /// Simulation config for the known-cost learner on this instance.
    pub fn to_config(&self, horizon: u64, runs: u64, base_seed: u64) -> ExperimentConfig {
        let mut cfg = ExperimentConfig::new(self.instance.clone(), horizon, runs, base_seed);
        cfg.known_cost = true;
        cfg
    }
}

pub fn parse_line(line: &str, line_no: usize) -> Result<ClickLogRecord> {
    let err = |msg: String| Error::Parse { line: line_no, msg };
    let fields: Vec<&str> = line.split('\t').collect();
    if fields.len() != 3 {
        return Err(err(format!("expected 3 tab-separated fields, found {}", fields.len())));
    }
    let query_id = fields[0].trim();
    if query_id.is_empty() {
        return Err(err("empty query id".into()));
    }
    let shown: Vec<String> = fields[1].split(',').map(|s| s.trim().to_owned()).collect();
    if shown.iter().any(String::is_empty) {
        return Err(err("empty item id in shown list".into()));
    }
    for (i, id) in shown.iter().enumerate() {
        if shown[..i].contains(id) {
            return Err(err(format!("item {id:?} shown twice")));
        }
    }
    let clicked = match fields[2].trim() {
        "-" => None,
        "" => return Err(err("missing clicked field".into())),
        id => {
            if !shown.iter().any(|s| s == id) {
                return Err(err(format!("clicked item {id:?} was not shown")));
            }
            Some(id.to_owned())
        }
    };
    Ok(ClickLogRecord {
        query_id: query_id.to_owned(),
        shown,
        clicked,
    })
}

pub fn parse_clicklog(reader: impl BufRead) -> Result<Vec<ClickLogRecord>> {
    let mut records = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let trimmed = line.trim_end_matches('\r');
        if trimmed.trim().is_empty() || trimmed.starts_with('#') {
            continue;
        }
        records.push(parse_line(trimmed, i + 1)?);
    }
    if records.is_empty() {
        return Err(Error::EmptyLog);
    }
    Ok(records)
}

/// Impressions and clicks per item, in order of first appearance.
pub fn tally(records: &[ClickLogRecord]) -> Vec<ItemCounts> {
    let mut items: Vec<ItemCounts> = Vec::new();
    let mut slot = std::collections::HashMap::new();
    for rec in records {
        for id in &rec.shown {
            let idx = *slot.entry(id.clone()).or_insert_with(|| {
                items.push(ItemCounts {
                    item: id.clone(),
                    impressions: 0,
                    clicks: 0,
                });
                items.len() - 1
            });
            items[idx].impressions += 1;
            if rec.clicked.as_ref() == Some(id) {
                items[idx].clicks += 1;
            }
        }
    }
    items
}

/// Builds an instance with click-rate state means and one constant, known
/// cost. Rates of exactly 0 or 1 are clamped to `[1/(2n), 1 - 1/(2n)]`.
pub fn instance_from_counts(items: Vec<ItemCounts>, cost: f64) -> Result<ClickLogInstance> {
    if items.is_empty() {
        return Err(Error::EmptyLog);
    }
    let mut clamped = Vec::new();
    let mut arms = Vec::with_capacity(items.len());
    for it in &items {
        if it.impressions == 0 {
            return Err(Error::ZeroImpressions(it.item.clone()));
        }
        let n = it.impressions as f64;
        let raw = it.clicks as f64 / n;
        let theta = raw.clamp(0.5 / n, 1.0 - 0.5 / n);
        if theta != raw {
            log::warn!("item {:?}: click rate {raw} clamped to {theta}", it.item);
            clamped.push(it.item.clone());
        }
        arms.push(ArmParams::new(theta, cost, CostDist::Constant));
    }
    let instance = BanditInstance::new(arms, DEFAULT_EPSILON)?;
    Ok(ClickLogInstance {
        instance,
        items,
        clamped,
    })
}

pub fn ingest_clicklog(path: impl AsRef<Path>, cost: f64) -> Result<ClickLogInstance> {
    let file = std::fs::File::open(path)?;
    let records = parse_clicklog(std::io::BufReader::new(file))?;
    instance_from_counts(tally(&records), cost)
}
