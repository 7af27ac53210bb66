//! Sharded, checkpointed enumeration of a search box.
//!
//! Per shard `i` of `K` the output directory holds
//! `shard-i-of-K.survivors` (one `b3,…,c2,depth` line per survivor, in
//! enumeration order), `shard-i-of-K.checkpoint` (global index of the last
//! completed tuple) and `shard-i-of-K.config.json`.

use std::fs::{self, File, OpenOptions};
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::probe::probe_tuple;
use super::tuple::{integer_coefficients, SearchBox, SearchTuple, TupleKind};
use crate::error::{Error, Result};

pub const DEFAULT_DEPTH: usize = 60;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub search_box: SearchBox,
    pub depth: usize,
    pub shard_index: u64,
    pub shard_count: u64,
    pub checkpoint_every: u64,
    pub include_order_three: bool,
    pub allow_negative_c2: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            search_box: SearchBox::default(),
            depth: DEFAULT_DEPTH,
            shard_index: 0,
            shard_count: 1,
            checkpoint_every: 10_000,
            include_order_three: false,
            allow_negative_c2: false,
        }
    }
}

impl SearchConfig {
    pub fn validate(&self) -> Result<()> {
        if self.shard_count == 0 || self.shard_index >= self.shard_count {
            return Err(Error::Config(format!("shard index {} not below shard count {}", self.shard_index, self.shard_count)));
        }
        if self.depth < 8 {
            return Err(Error::Config(format!("depth {} below 8", self.depth)));
        }
        if self.checkpoint_every == 0 {
            return Err(Error::Config("checkpoint interval must be positive".into()));
        }
        self.search_box.validate(self.allow_negative_c2)
    }

    /// Half-open range of global indices owned by this shard.
    pub fn shard_range(&self) -> (u64, u64) {
        let total = self.search_box.len() as u128;
        let k = self.shard_count as u128;
        let i = self.shard_index as u128;
        ((total * i / k) as u64, (total * (i + 1) / k) as u64)
    }

    pub fn with_shard(&self, index: u64, count: u64) -> Self {
        SearchConfig { shard_index: index, shard_count: count, ..self.clone() }
    }

    fn stem(&self) -> String {
        format!("shard-{}-of-{}", self.shard_index, self.shard_count)
    }

    pub fn survivors_path(&self, dir: &Path) -> PathBuf {
        dir.join(format!("{}.survivors", self.stem()))
    }

    pub fn checkpoint_path(&self, dir: &Path) -> PathBuf {
        dir.join(format!("{}.checkpoint", self.stem()))
    }

    fn config_path(&self, dir: &Path) -> PathBuf {
        dir.join(format!("{}.config.json", self.stem()))
    }

    /// Fields that must agree for a resume; the checkpoint interval may change.
    fn resume_key(&self) -> SearchConfig {
        SearchConfig { checkpoint_every: 0, ..self.clone() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurvivorRecord {
    pub tuple: SearchTuple,
    pub depth: usize,
    pub first_coefficients: Vec<BigInt>,
    pub order_three: bool,
}

impl SurvivorRecord {
    fn new(tuple: SearchTuple, depth: usize) -> Self {
        SurvivorRecord {
            tuple,
            depth,
            first_coefficients: integer_coefficients(&tuple, 11).unwrap_or_default(),
            order_three: tuple.kind() == TupleKind::OrderThree,
        }
    }

    pub fn line(&self) -> String {
        format!("{},{}", self.tuple, self.depth)
    }

    pub fn parse_line(line: &str) -> Result<Self> {
        let (t, d) = line.rsplit_once(',').ok_or_else(|| Error::Checkpoint(format!("survivor line '{line}'")))?;
        let tuple: SearchTuple = t.parse().map_err(|_| Error::Checkpoint(format!("survivor line '{line}'")))?;
        let depth = d.trim().parse().map_err(|_| Error::Checkpoint(format!("survivor line '{line}'")))?;
        Ok(SurvivorRecord::new(tuple, depth))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "tuple": self.tuple.0,
            "depth": self.depth,
            "first_coefficients": self.first_coefficients.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "order_three": self.order_three,
        })
    }
}

#[derive(Clone, Debug)]
pub struct ShardReport {
    pub shard_index: u64,
    pub shard_count: u64,
    pub start: u64,
    pub end: u64,
    /// Last completed index found in the checkpoint at start-up.
    pub resumed_from: Option<u64>,
    /// Tuples examined in this invocation.
    pub processed: u64,
    pub skipped_degenerate: u64,
    /// Every survivor of the shard so far, including earlier invocations.
    pub survivors: Vec<SurvivorRecord>,
    pub complete: bool,
}

impl ShardReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "shard_index": self.shard_index,
            "shard_count": self.shard_count,
            "range": [self.start.to_string(), self.end.to_string()],
            "resumed_from": self.resumed_from.map(|x| x.to_string()),
            "processed": self.processed.to_string(),
            "skipped_degenerate": self.skipped_degenerate.to_string(),
            "complete": self.complete,
            "survivors": self.survivors.iter().map(SurvivorRecord::to_json).collect::<Vec<_>>(),
        })
    }
}

fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let tmp = path.with_extension("tmp");
    {
        let mut f = File::create(&tmp)?;
        f.write_all(contents.as_bytes())?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)?;
    if let Some(dir) = path.parent() {
        if let Ok(d) = File::open(dir) {
            let _ = d.sync_all();
        }
    }
    Ok(())
}

/// Reads the survivors file, keeping complete lines whose index does not
/// exceed `last_done`, and truncates the file to exactly those lines.
fn reconcile_survivors(cfg: &SearchConfig, path: &Path, last_done: Option<u64>) -> Result<Vec<SurvivorRecord>> {
    let Some(last_done) = last_done else {
        File::create(path)?;
        return Ok(Vec::new());
    };
    let mut text = String::new();
    if path.exists() {
        File::open(path)?.read_to_string(&mut text)?;
    }
    let mut kept = Vec::new();
    let mut keep_bytes = 0usize;
    let mut last_index = None;
    for line in text.split_inclusive('\n') {
        if !line.ends_with('\n') {
            break; // torn write
        }
        let rec = SurvivorRecord::parse_line(line.trim_end())?;
        let idx = cfg
            .search_box
            .index_of(&rec.tuple)
            .ok_or_else(|| Error::Checkpoint(format!("survivor {} outside the box", rec.tuple)))?;
        if last_index.is_some_and(|p| idx <= p) {
            return Err(Error::Checkpoint("survivors out of order".into()));
        }
        last_index = Some(idx);
        if idx > last_done {
            break;
        }
        keep_bytes += line.len();
        kept.push(rec);
    }
    let f = OpenOptions::new().write(true).create(true).truncate(false).open(path)?;
    f.set_len(keep_bytes as u64)?;
    f.sync_all()?;
    Ok(kept)
}

fn load_checkpoint(cfg: &SearchConfig, dir: &Path) -> Result<Option<u64>> {
    let cp = cfg.checkpoint_path(dir);
    if !cp.exists() {
        return Ok(None);
    }
    let stored = fs::read_to_string(cfg.config_path(dir))
        .map_err(|_| Error::Checkpoint("checkpoint without configuration; start fresh".into()))?;
    let stored: SearchConfig = serde_json::from_str(&stored)
        .map_err(|e| Error::Checkpoint(format!("unreadable configuration ({e}); start fresh")))?;
    if stored.resume_key() != cfg.resume_key() {
        return Err(Error::Checkpoint("configuration differs from the checkpointed run; start fresh".into()));
    }
    let text = fs::read_to_string(&cp)?;
    let idx: u64 = text
        .trim()
        .parse()
        .map_err(|_| Error::Checkpoint(format!("corrupt checkpoint '{}'; start fresh", text.trim())))?;
    let (start, end) = cfg.shard_range();
    if idx < start || idx >= end {
        return Err(Error::Checkpoint(format!("checkpoint {idx} outside shard range {start}..{end}; start fresh")));
    }
    Ok(Some(idx))
}

/// Removes the files of a shard so that it restarts from scratch.
pub fn reset_shard(cfg: &SearchConfig, dir: &Path) -> Result<()> {
    for p in [cfg.checkpoint_path(dir), cfg.survivors_path(dir), cfg.config_path(dir)] {
        if p.exists() {
            fs::remove_file(p)?;
        }
    }
    Ok(())
}

enum Outcome {
    Skipped,
    Failed,
    Survived(SearchTuple),
}

pub fn run_shard(cfg: &SearchConfig, dir: &Path) -> Result<ShardReport> {
    run_shard_until(cfg, dir, None)
}

/// Like [`run_shard`] but returns after at least `budget` tuples have been
/// processed in this call, at a checkpoint boundary.
pub fn run_shard_until(cfg: &SearchConfig, dir: &Path, budget: Option<u64>) -> Result<ShardReport> {
    cfg.validate()?;
    fs::create_dir_all(dir)?;
    let (start, end) = cfg.shard_range();
    let resumed_from = load_checkpoint(cfg, dir)?;
    let sp = cfg.survivors_path(dir);
    let mut survivors = reconcile_survivors(cfg, &sp, resumed_from)?;
    if resumed_from.is_none() {
        write_atomic(&cfg.config_path(dir), &serde_json::to_string_pretty(cfg).expect("config serializes"))?;
    }
    let mut next = resumed_from.map_or(start, |i| i + 1);
    let mut out = OpenOptions::new().append(true).open(&sp)?;
    let mut processed = 0u64;
    let mut skipped = 0u64;
    while next < end {
        if budget.is_some_and(|b| processed >= b) {
            break;
        }
        let chunk_end = (next + cfg.checkpoint_every).min(end);
        let outcomes: Vec<Outcome> = (next..chunk_end)
            .into_par_iter()
            .map(|i| {
                let t = cfg.search_box.at(i);
                match t.kind() {
                    TupleKind::Trivial => Outcome::Skipped,
                    TupleKind::OrderThree if !cfg.include_order_three => Outcome::Skipped,
                    _ if probe_tuple(&t, cfg.depth).survives => Outcome::Survived(t),
                    _ => Outcome::Failed,
                }
            })
            .collect();
        let mut block = String::new();
        for o in outcomes {
            match o {
                Outcome::Skipped => skipped += 1,
                Outcome::Failed => {}
                Outcome::Survived(t) => {
                    let rec = SurvivorRecord::new(t, cfg.depth);
                    block.push_str(&rec.line());
                    block.push('\n');
                    survivors.push(rec);
                }
            }
        }
        out.write_all(block.as_bytes())?;
        out.sync_data()?;
        write_atomic(&cfg.checkpoint_path(dir), &format!("{}\n", chunk_end - 1))?;
        processed += chunk_end - next;
        next = chunk_end;
    }
    Ok(ShardReport {
        shard_index: cfg.shard_index,
        shard_count: cfg.shard_count,
        start,
        end,
        resumed_from,
        processed,
        skipped_degenerate: skipped,
        survivors,
        complete: next >= end,
    })
}

/// Runs every shard of `cfg.shard_count`, shards in parallel.
pub fn run_all_shards(cfg: &SearchConfig, dir: &Path) -> Result<Vec<ShardReport>> {
    (0..cfg.shard_count).into_par_iter().map(|i| run_shard(&cfg.with_shard(i, cfg.shard_count), dir)).collect()
}

/// Re-runs the probe for a survivor at a greater depth.
pub fn reverify(rec: &SurvivorRecord, extra: usize) -> bool {
    probe_tuple(&rec.tuple, rec.depth + extra).survives
}
