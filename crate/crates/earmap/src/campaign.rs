// Copyright 2026 The earmap Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Batch mapping of random splats onto the canonical targets.

use std::collections::BTreeMap;
use std::fs;
use std::ops::RangeInclusive;
use std::panic::{self, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::time::Duration;

use earmap_core::{run_with_clock, EarStrategy, MappingRequest, Side};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::clock::StdClock;
use crate::export::{emit_svg, Coloring};
use crate::generate::{gen_splat, gen_target, GenError, SplatParams, TargetKind};

/// Environment variable capping the worker count.
pub const THREADS_ENV: &str = "EARMAP_THREADS";

#[derive(Debug, Error)]
pub enum CampaignError {
    #[error(transparent)]
    Generate(#[from] GenError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error("thread pool: {0}")]
    Pool(#[from] rayon::ThreadPoolBuildError),
}

pub fn strategy_name(strategy: EarStrategy) -> &'static str {
    match strategy {
        EarStrategy::Sequential => "seq",
        EarStrategy::AnglePrioritized => "prio",
    }
}

#[derive(Debug, Clone)]
pub struct CampaignConfig {
    pub count: usize,
    pub seed: u64,
    pub n_range: RangeInclusive<usize>,
    pub irregularity: f64,
    pub spikiness: f64,
    pub targets: Vec<TargetKind>,
    pub strategies: Vec<EarStrategy>,
    /// Worker count; falls back to [`THREADS_ENV`], then to rayon's default.
    pub threads: Option<usize>,
    /// Directory for one stretch-colored SVG per valid mapping.
    pub svg_dir: Option<PathBuf>,
}

impl CampaignConfig {
    pub fn new(count: usize, seed: u64) -> Self {
        CampaignConfig {
            count,
            seed,
            n_range: 10..=500,
            irregularity: 0.5,
            spikiness: 0.3,
            targets: vec![TargetKind::Circle, TargetKind::Square, TargetKind::STAR],
            strategies: vec![EarStrategy::AnglePrioritized, EarStrategy::Sequential],
            threads: None,
            svg_dir: None,
        }
    }
}

/// Result of one (shape, target, strategy) mapping.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CampaignRow {
    pub shape: usize,
    pub seed: u64,
    pub n: usize,
    pub target: &'static str,
    pub strategy: &'static str,
    pub route: &'static str,
    pub valid: bool,
    pub triangles: usize,
    pub added_vertices: usize,
    pub max_stretch: Option<f64>,
    pub mean_stretch: Option<f64>,
    pub error: String,
    #[serde(skip)]
    pub timings: TimingRow,
}

const ROW_COLUMNS: [&str; 12] = [
    "shape",
    "seed",
    "n",
    "target",
    "strategy",
    "route",
    "valid",
    "triangles",
    "added_vertices",
    "max_stretch",
    "mean_stretch",
    "error",
];

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct TimingRow {
    pub offsetting_ms: f64,
    pub earcut_ms: f64,
    pub merge_ms: f64,
    pub validate_ms: f64,
    pub stretch_ms: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Tally {
    pub mappings: usize,
    pub valid: usize,
    pub failed: usize,
    pub valid_rate: f64,
}

impl Tally {
    fn add(&mut self, valid: bool) {
        self.mappings += 1;
        if valid {
            self.valid += 1;
        } else {
            self.failed += 1;
        }
        self.valid_rate = self.valid as f64 / self.mappings as f64;
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CampaignSummary {
    pub shapes: usize,
    pub seed: u64,
    pub mappings: usize,
    pub by_strategy: BTreeMap<String, Tally>,
    /// Keyed by `target/strategy`.
    pub by_target: BTreeMap<String, Tally>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CampaignReport {
    pub rows: Vec<CampaignRow>,
    pub summary: CampaignSummary,
}

impl CampaignReport {
    pub fn failures(&self, strategy: EarStrategy) -> usize {
        self.summary
            .by_strategy
            .get(strategy_name(strategy))
            .map_or(0, |t| t.failed)
    }
}

struct Job {
    shape: usize,
    seed: u64,
    n: usize,
    target: TargetKind,
    strategy: EarStrategy,
}

fn ms(d: Duration) -> f64 {
    d.as_secs_f64() * 1e3
}

fn panic_message(payload: &(dyn std::any::Any + Send)) -> String {
    if let Some(s) = payload.downcast_ref::<&str>() {
        (*s).to_string()
    } else if let Some(s) = payload.downcast_ref::<String>() {
        s.clone()
    } else {
        "unknown panic".to_string()
    }
}

fn run_job(job: &Job, config: &CampaignConfig) -> Result<CampaignRow, CampaignError> {
    let params = SplatParams {
        seed: job.seed,
        n: job.n,
        irregularity: config.irregularity,
        spikiness: config.spikiness,
    };
    let source = gen_splat(params)?;
    let target = gen_target(job.target, job.n)?;
    let request = MappingRequest::new(source, target).with_strategy(job.strategy);
    let mut row = CampaignRow {
        shape: job.shape,
        seed: job.seed,
        n: job.n,
        target: job.target.name(),
        strategy: strategy_name(job.strategy),
        route: "",
        valid: false,
        triangles: 0,
        added_vertices: 0,
        max_stretch: None,
        mean_stretch: None,
        error: String::new(),
        timings: TimingRow::default(),
    };
    let clock = StdClock::new();
    match panic::catch_unwind(AssertUnwindSafe(|| run_with_clock(&request, &clock))) {
        Ok(Ok(outcome)) => {
            row.route = outcome.route_taken.as_str();
            row.valid = outcome.report.valid;
            row.triangles = outcome.pair.tris().len();
            row.added_vertices = outcome.added_vertices;
            row.max_stretch = Some(outcome.stretch.max);
            row.mean_stretch = Some(outcome.stretch.mean);
            let t = outcome.timings;
            row.timings = TimingRow {
                offsetting_ms: ms(t.offsetting),
                earcut_ms: ms(t.earcut),
                merge_ms: ms(t.merge),
                validate_ms: ms(t.validate),
                stretch_ms: ms(t.stretch),
            };
            if let Some(dir) = &config.svg_dir {
                let name = format!("shape{:04}_{}_{}.svg", job.shape, row.target, row.strategy);
                emit_svg(
                    dir.join(name),
                    &outcome.pair,
                    Side::A,
                    Coloring::LogL2Stretch,
                    Some(&outcome.stretch.per_tri),
                )?;
            }
        }
        Ok(Err(e)) => row.error = e.to_string(),
        Err(payload) => row.error = format!("panic: {}", panic_message(payload.as_ref())),
    }
    Ok(row)
}

fn worker_count(config: &CampaignConfig) -> Option<usize> {
    config
        .threads
        .or_else(|| std::env::var(THREADS_ENV).ok()?.trim().parse().ok())
        .filter(|&n| n > 0)
}

/// Runs every (shape, target, strategy) combination. Rows come back in job
/// order regardless of the worker count.
pub fn run_campaign(config: &CampaignConfig) -> Result<CampaignReport, CampaignError> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let shapes: Vec<(u64, usize)> = (0..config.count)
        .map(|_| (rng.random(), rng.random_range(config.n_range.clone())))
        .collect();
    let jobs: Vec<Job> = shapes
        .iter()
        .enumerate()
        .flat_map(|(shape, &(seed, n))| {
            config.targets.iter().flat_map(move |&target| {
                config.strategies.iter().map(move |&strategy| Job {
                    shape,
                    seed,
                    n,
                    target,
                    strategy,
                })
            })
        })
        .collect();
    if let Some(dir) = &config.svg_dir {
        fs::create_dir_all(dir)?;
    }

    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = worker_count(config) {
        builder = builder.num_threads(n);
    }
    let pool = builder.build()?;
    let rows = pool.install(|| {
        jobs.par_iter()
            .map(|job| run_job(job, config))
            .collect::<Result<Vec<_>, _>>()
    })?;

    let mut summary = CampaignSummary {
        shapes: config.count,
        seed: config.seed,
        mappings: rows.len(),
        by_strategy: BTreeMap::new(),
        by_target: BTreeMap::new(),
    };
    for row in &rows {
        summary
            .by_strategy
            .entry(row.strategy.to_string())
            .or_default()
            .add(row.valid);
        summary
            .by_target
            .entry(format!("{}/{}", row.target, row.strategy))
            .or_default()
            .add(row.valid);
    }
    Ok(CampaignReport { rows, summary })
}

/// The result table. Timings go to [`format_timings_csv`].
pub fn format_rows_csv(rows: &[CampaignRow]) -> Result<String, CampaignError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    if rows.is_empty() {
        w.write_record(ROW_COLUMNS)?;
    }
    for row in rows {
        w.serialize(row)?;
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn format_timings_csv(rows: &[CampaignRow]) -> Result<String, CampaignError> {
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(Vec::new());
    w.write_record([
        "shape",
        "target",
        "strategy",
        "offsetting_ms",
        "earcut_ms",
        "merge_ms",
        "validate_ms",
        "stretch_ms",
    ])?;
    for row in rows {
        let t = row.timings;
        w.serialize((
            row.shape,
            row.target,
            row.strategy,
            t.offsetting_ms,
            t.earcut_ms,
            t.merge_ms,
            t.validate_ms,
            t.stretch_ms,
        ))?;
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

/// Writes `campaign.csv`, `timings.csv` and `summary.json` into `dir`.
pub fn write_campaign(report: &CampaignReport, dir: impl AsRef<Path>) -> Result<(), CampaignError> {
    let dir = dir.as_ref();
    fs::create_dir_all(dir)?;
    fs::write(dir.join("campaign.csv"), format_rows_csv(&report.rows)?)?;
    fs::write(dir.join("timings.csv"), format_timings_csv(&report.rows)?)?;
    let mut json = serde_json::to_string_pretty(&report.summary)?;
    json.push('\n');
    fs::write(dir.join("summary.json"), json)?;
    Ok(())
}
