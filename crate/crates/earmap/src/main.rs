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

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use earmap::campaign::{run_campaign, write_campaign, CampaignConfig};
use earmap::export::{emit_obj_pair, emit_svg, Coloring};
use earmap::generate::{gen_splat, gen_target, SplatParams, TargetKind};
use earmap::polyfile::{format_polygon, read_polygon};
use earmap::StdClock;
use earmap_core::offset::{auto_disk, kernel, DEFAULT_SHRINK};
use earmap_core::{
    diagnose, is_simple, is_strictly_convex, run_with_clock, Disk, EarStrategy, MappingRequest,
    Orientation, Point2, Route, Side, StretchDirection,
};
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "earmap",
    version,
    about = "Bijective piecewise-linear maps between simple polygons"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Map a source polygon onto a target polygon with the same vertex count.
    Map(MapArgs),
    /// Generate a polygon file.
    Gen {
        #[command(subcommand)]
        shape: GenShape,
        /// Output file; standard output when omitted.
        #[arg(short, long, global = true)]
        out: Option<PathBuf>,
    },
    /// Map random splats onto the canonical targets with both ear strategies.
    Campaign(CampaignArgs),
    /// Report violated preconditions.
    Check {
        source: PathBuf,
        target: Option<PathBuf>,
        #[arg(long, num_args = 3, value_names = ["CX", "CY", "R"], allow_negative_numbers = true)]
        disk: Option<Vec<f64>>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Seq,
    Prio,
}

impl From<StrategyArg> for EarStrategy {
    fn from(s: StrategyArg) -> Self {
        match s {
            StrategyArg::Seq => EarStrategy::Sequential,
            StrategyArg::Prio => EarStrategy::AnglePrioritized,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum RouteArg {
    Auto,
    Direct,
    WeaklyVisible,
}

#[derive(Clone, Copy, ValueEnum)]
enum ColorArg {
    Stretch,
    None,
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    A,
    B,
}

#[derive(Clone, Copy, ValueEnum)]
enum DirectionArg {
    AToB,
    BToA,
}

#[derive(Args)]
struct MapArgs {
    source: PathBuf,
    target: PathBuf,
    /// Disk inside the target kernel used for offsetting.
    #[arg(long, num_args = 3, value_names = ["CX", "CY", "R"], allow_negative_numbers = true)]
    disk: Option<Vec<f64>>,
    #[arg(long, value_enum, default_value = "prio")]
    strategy: StrategyArg,
    /// Ear order of the triangulation guiding the source offset.
    #[arg(long, value_enum)]
    guide_strategy: Option<StrategyArg>,
    #[arg(long, value_enum, default_value = "auto")]
    route: RouteArg,
    /// Shift target vertex indices by this amount before mapping.
    #[arg(long, default_value_t = 0)]
    rotate_target: usize,
    /// Shrink factor of the automatic disk.
    #[arg(long, default_value_t = DEFAULT_SHRINK)]
    shrink: f64,
    #[arg(long, value_enum, default_value = "a-to-b")]
    direction: DirectionArg,
    /// Write `<PREFIX>_a.obj` and `<PREFIX>_b.obj`.
    #[arg(long, value_name = "PREFIX")]
    obj: Option<PathBuf>,
    #[arg(long)]
    svg: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "stretch")]
    color: ColorArg,
    /// Mesh side drawn in the SVG.
    #[arg(long, value_enum, default_value = "a")]
    svg_side: SideArg,
}

#[derive(Subcommand)]
enum GenShape {
    Circle {
        #[arg(short, long)]
        n: usize,
    },
    Square {
        #[arg(short, long)]
        n: usize,
    },
    Star {
        #[arg(short, long)]
        n: usize,
        #[arg(short, long, default_value_t = 5)]
        k: usize,
        #[arg(long, default_value_t = 0.5)]
        inner_ratio: f64,
    },
    Splat {
        #[arg(short, long)]
        n: usize,
        #[arg(short, long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0.5)]
        irregularity: f64,
        #[arg(long, default_value_t = 0.3)]
        spikiness: f64,
    },
}

#[derive(Args)]
struct CampaignArgs {
    #[arg(long, default_value_t = 200)]
    count: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
    #[arg(long, default_value_t = 10)]
    min_n: usize,
    #[arg(long, default_value_t = 500)]
    max_n: usize,
    #[arg(long, default_value_t = 0.5)]
    irregularity: f64,
    #[arg(long, default_value_t = 0.3)]
    spikiness: f64,
    /// Worker threads; defaults to EARMAP_THREADS or the core count.
    #[arg(long)]
    threads: Option<usize>,
    /// Also write one stretch-colored SVG per valid mapping.
    #[arg(long)]
    svg: bool,
}

fn disk_arg(values: Option<Vec<f64>>) -> Result<Option<Disk>> {
    values
        .map(|v| {
            let center = Point2::try_new(v[0], v[1]).context("disk center")?;
            Disk::new(center, v[2]).context("disk radius")
        })
        .transpose()
}

fn map(args: MapArgs) -> Result<bool> {
    let source =
        read_polygon(&args.source).with_context(|| format!("reading {}", args.source.display()))?;
    let mut target =
        read_polygon(&args.target).with_context(|| format!("reading {}", args.target.display()))?;
    if args.rotate_target != 0 {
        target = target.rotated(args.rotate_target % target.len());
    }
    let mut request = MappingRequest::new(source, target).with_strategy(args.strategy.into());
    if let Some(g) = args.guide_strategy {
        request.guide_strategy = g.into();
    }
    request.route = match args.route {
        RouteArg::Auto => Route::Auto,
        RouteArg::Direct => Route::DirectConvex,
        RouteArg::WeaklyVisible => Route::WeaklyVisible,
    };
    request.disk = disk_arg(args.disk)?;
    request.shrink = args.shrink;
    request.stretch_direction = match args.direction {
        DirectionArg::AToB => StretchDirection::AtoB,
        DirectionArg::BToA => StretchDirection::BtoA,
    };

    let outcome = match run_with_clock(&request, &StdClock::new()) {
        Ok(outcome) => outcome,
        Err(e) => {
            println!("{}", json!({ "valid": false, "error": e.to_string() }));
            return Ok(false);
        }
    };
    if let Some(prefix) = &args.obj {
        emit_obj_pair(&outcome.pair, prefix)?;
    }
    if let Some(path) = &args.svg {
        let side = match args.svg_side {
            SideArg::A => Side::A,
            SideArg::B => Side::B,
        };
        let coloring = match args.color {
            ColorArg::Stretch => Coloring::LogL2Stretch,
            ColorArg::None => Coloring::None,
        };
        emit_svg(
            path,
            &outcome.pair,
            side,
            coloring,
            Some(&outcome.stretch.per_tri),
        )?;
    }
    let ms = |d: std::time::Duration| d.as_secs_f64() * 1e3;
    let t = outcome.timings;
    let summary = json!({
        "valid": outcome.report.valid,
        "route": outcome.route_taken.as_str(),
        "vertices": outcome.pair.vertex_count(),
        "triangles": outcome.pair.tris().len(),
        "added_vertices": outcome.added_vertices,
        "flipped": { "a": outcome.report.flipped_a, "b": outcome.report.flipped_b },
        "stretch": {
            "min": outcome.stretch.min,
            "max": outcome.stretch.max,
            "mean": outcome.stretch.mean,
            "global": outcome.stretch.global,
        },
        "timings_ms": {
            "offsetting": ms(t.offsetting),
            "earcut": ms(t.earcut),
            "merge": ms(t.merge),
            "validate": ms(t.validate),
            "stretch": ms(t.stretch),
        },
    });
    println!("{}", serde_json::to_string_pretty(&summary)?);
    Ok(outcome.report.valid)
}

fn generate(shape: GenShape, out: Option<PathBuf>) -> Result<bool> {
    let poly = match shape {
        GenShape::Circle { n } => gen_target(TargetKind::Circle, n)?,
        GenShape::Square { n } => gen_target(TargetKind::Square, n)?,
        GenShape::Star { n, k, inner_ratio } => gen_target(
            TargetKind::Star {
                points: k,
                inner_ratio,
            },
            n,
        )?,
        GenShape::Splat {
            n,
            seed,
            irregularity,
            spikiness,
        } => gen_splat(SplatParams {
            seed,
            n,
            irregularity,
            spikiness,
        })?,
    };
    let text = format_polygon(&poly);
    match out {
        Some(path) => {
            std::fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?
        }
        None => print!("{text}"),
    }
    Ok(true)
}

fn campaign(args: CampaignArgs) -> Result<bool> {
    if args.min_n > args.max_n {
        bail!("--min-n exceeds --max-n");
    }
    let mut config = CampaignConfig::new(args.count, args.seed);
    config.n_range = args.min_n..=args.max_n;
    config.irregularity = args.irregularity;
    config.spikiness = args.spikiness;
    config.threads = args.threads;
    if args.svg {
        config.svg_dir = Some(args.out.join("svg"));
    }
    let report = run_campaign(&config)?;
    write_campaign(&report, &args.out)?;
    println!(
        "{}",
        serde_json::to_string_pretty(&report.summary.by_strategy)?
    );
    Ok(report.summary.by_strategy.values().all(|t| t.failed == 0))
}

fn check(source: PathBuf, target: Option<PathBuf>, disk: Option<Vec<f64>>) -> Result<bool> {
    let src = read_polygon(&source).with_context(|| format!("reading {}", source.display()))?;
    let Some(target) = target else {
        let simple = is_simple(&src);
        let has_kernel = simple && src.orientation() != Orientation::Collinear && {
            let ccw = earmap_core::normalize_ccw(&src)?;
            kernel(&ccw).is_some() && auto_disk(&ccw, DEFAULT_SHRINK).is_ok()
        };
        let facts = json!({
            "vertices": src.len(),
            "simple": simple,
            "counter_clockwise": src.orientation() == Orientation::Ccw,
            "strictly_convex": is_strictly_convex(&src),
            "signed_area": src.signed_area(),
            "star_shaped": has_kernel,
        });
        println!("{}", serde_json::to_string_pretty(&facts)?);
        return Ok(simple);
    };
    let dst = read_polygon(&target).with_context(|| format!("reading {}", target.display()))?;
    let mut request = MappingRequest::new(src, dst);
    request.disk = disk_arg(disk)?;
    let violations = diagnose(&request);
    for v in &violations {
        println!("{v:?}");
    }
    if violations.is_empty() {
        println!("ok");
    }
    Ok(violations.is_empty())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Map(args) => map(args),
        Command::Gen { shape, out } => generate(shape, out),
        Command::Campaign(args) => campaign(args),
        Command::Check {
            source,
            target,
            disk,
        } => check(source, target, disk),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
