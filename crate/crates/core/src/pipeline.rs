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

//! Route selection and the end-to-end mapping run.

use alloc::vec::Vec;
use core::time::Duration;

use thiserror::Error;

use crate::earcut::{earcut_compatible, EarStrategy, EarcutError};
use crate::geom::{is_simple, is_strictly_convex, normalize_ccw, GeomError, Polygon};
use crate::mesh::{
    l2_stretch, merge, validate, BandStage, CompatibleMeshPair, MergeError, Side, StretchDirection,
    StretchError, StretchReport, ValidationReport,
};
use crate::offset::{
    auto_disk, check_disk, geometric_offset, topological_offset_with, Disk, OffsetError,
    DEFAULT_SHRINK,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Route {
    #[default]
    Auto,
    DirectConvex,
    WeaklyVisible,
}

/// The route a run actually took.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RouteTaken {
    DirectConvex,
    WeaklyVisible,
}

impl RouteTaken {
    pub fn as_str(self) -> &'static str {
        match self {
            RouteTaken::DirectConvex => "direct",
            RouteTaken::WeaklyVisible => "weakly_visible",
        }
    }
}

/// Picks the route: direct whenever the target is strictly convex, unless
/// forced.
pub fn resolve_route(route: Route, target: &Polygon) -> RouteTaken {
    match route {
        Route::DirectConvex => RouteTaken::DirectConvex,
        Route::WeaklyVisible => RouteTaken::WeaklyVisible,
        Route::Auto => {
            if is_strictly_convex(target) {
                RouteTaken::DirectConvex
            } else {
                RouteTaken::WeaklyVisible
            }
        }
    }
}

/// Inputs of one mapping. Vertex `i` of `source` corresponds to vertex `i`
/// of `target` once both are wound counter-clockwise (vertex 0 stays put).
#[derive(Debug, Clone, PartialEq)]
pub struct MappingRequest {
    pub source: Polygon,
    pub target: Polygon,
    pub disk: Option<Disk>,
    /// Ear order for the core mapping.
    pub strategy: EarStrategy,
    /// Ear order for the triangulation guiding the topological offset.
    pub guide_strategy: EarStrategy,
    pub route: Route,
    /// Used by the automatic disk when none is given.
    pub shrink: f64,
    pub stretch_direction: StretchDirection,
}

impl MappingRequest {
    pub fn new(source: Polygon, target: Polygon) -> Self {
        MappingRequest {
            source,
            target,
            disk: None,
            strategy: EarStrategy::AnglePrioritized,
            guide_strategy: EarStrategy::AnglePrioritized,
            route: Route::Auto,
            shrink: DEFAULT_SHRINK,
            stretch_direction: StretchDirection::AtoB,
        }
    }

    /// Uses `strategy` for both the core and the guiding triangulation.
    pub fn with_strategy(mut self, strategy: EarStrategy) -> Self {
        self.strategy = strategy;
        self.guide_strategy = strategy;
        self
    }

    pub fn with_route(mut self, route: Route) -> Self {
        self.route = route;
        self
    }

    pub fn with_disk(mut self, disk: Disk) -> Self {
        self.disk = Some(disk);
        self
    }
}

/// Monotonic time source for stage timings.
pub trait Clock {
    fn now(&self) -> Duration;
}

/// Reports zero for every stage.
#[derive(Debug, Clone, Copy, Default)]
pub struct NoClock;

impl Clock for NoClock {
    fn now(&self) -> Duration {
        Duration::ZERO
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct StageTimings {
    pub offsetting: Duration,
    pub earcut: Duration,
    pub merge: Duration,
    pub validate: Duration,
    pub stretch: Duration,
}

/// Where a validation failure was found.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage {
    Band,
    Core,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PipelineError {
    #[error("polygon {0:?}: {1}")]
    Geometry(Side, GeomError),
    #[error("polygon {0:?} is not simple")]
    NotSimple(Side),
    #[error("source has {source_len} vertices, target has {target_len}")]
    SizeMismatch {
        source_len: usize,
        target_len: usize,
    },
    #[error("target is not strictly convex")]
    NotStrictlyConvex,
    #[error("offsetting needs more than 3 vertices")]
    TooFewVertices,
    #[error("target kernel is empty and no disk was given")]
    EmptyKernel,
    #[error("offset of {0:?}: {1}")]
    Offset(Side, OffsetError),
    #[error(transparent)]
    Earcut(#[from] EarcutError),
    #[error(transparent)]
    Merge(#[from] MergeError),
    #[error(transparent)]
    Stretch(#[from] StretchError),
    #[error("mapping failed validation in the {stage:?} stage ({} bad triangles)", report.failures())]
    ValidationFailed {
        stage: Stage,
        report: ValidationReport,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct MappingOutcome {
    pub pair: CompatibleMeshPair,
    pub report: ValidationReport,
    pub stretch: StretchReport,
    pub timings: StageTimings,
    pub route_taken: RouteTaken,
    /// Vertices per side beyond the input boundary.
    pub added_vertices: usize,
}

/// One violated precondition, as listed by [`diagnose`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    Degenerate(Side, GeomError),
    NotSimple(Side),
    SizeMismatch {
        source_len: usize,
        target_len: usize,
    },
    NotStrictlyConvex,
    TooFewVertices,
    EmptyKernel,
    Disk(OffsetError),
}

/// Lists every violated precondition without running the mapping.
pub fn diagnose(request: &MappingRequest) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut normalized = [None, None];
    for (slot, (side, poly)) in [(Side::A, &request.source), (Side::B, &request.target)]
        .into_iter()
        .enumerate()
    {
        if !is_simple(poly) {
            out.push(Violation::NotSimple(side));
            continue;
        }
        match normalize_ccw(poly) {
            Ok(p) => normalized[slot] = Some(p),
            Err(e) => out.push(Violation::Degenerate(side, e)),
        }
    }
    let (n_src, n_dst) = (request.source.len(), request.target.len());
    if n_src != n_dst {
        out.push(Violation::SizeMismatch {
            source_len: n_src,
            target_len: n_dst,
        });
    }
    let Some(target) = &normalized[1] else {
        return out;
    };
    match resolve_route(request.route, target) {
        RouteTaken::DirectConvex => {
            if !is_strictly_convex(target) {
                out.push(Violation::NotStrictlyConvex);
            }
        }
        RouteTaken::WeaklyVisible => {
            if n_src <= 3 {
                out.push(Violation::TooFewVertices);
            }
            match &request.disk {
                Some(disk) => {
                    if let Err(e) = check_disk(target, disk) {
                        out.push(Violation::Disk(e));
                    }
                }
                None => {
                    if let Err(e) = auto_disk(target, request.shrink) {
                        out.push(match e {
                            OffsetError::EmptyKernel => Violation::EmptyKernel,
                            other => Violation::Disk(other),
                        });
                    }
                }
            }
        }
    }
    out
}

/// Runs the mapping without timing the stages.
pub fn run(request: &MappingRequest) -> Result<MappingOutcome, PipelineError> {
    run_with_clock(request, &NoClock)
}

fn prepare(poly: &Polygon, side: Side) -> Result<Polygon, PipelineError> {
    if !is_simple(poly) {
        return Err(PipelineError::NotSimple(side));
    }
    normalize_ccw(poly).map_err(|e| PipelineError::Geometry(side, e))
}

/// Runs the direct or the offset route and certifies the result. Never
/// returns a mapping that fails validation.
pub fn run_with_clock<C: Clock + ?Sized>(
    request: &MappingRequest,
    clock: &C,
) -> Result<MappingOutcome, PipelineError> {
    let source = prepare(&request.source, Side::A)?;
    let target = prepare(&request.target, Side::B)?;
    if source.len() != target.len() {
        return Err(PipelineError::SizeMismatch {
            source_len: source.len(),
            target_len: target.len(),
        });
    }
    let n = source.len();
    let route_taken = resolve_route(request.route, &target);
    let mut timings = StageTimings::default();

    let (pair, band_len) = match route_taken {
        RouteTaken::DirectConvex => {
            if !is_strictly_convex(&target) {
                return Err(PipelineError::NotStrictlyConvex);
            }
            let t0 = clock.now();
            let pair = earcut_compatible(&source, &target, request.strategy)?;
            timings.earcut = clock.now().saturating_sub(t0);
            (pair, 0)
        }
        RouteTaken::WeaklyVisible => {
            if n <= 3 {
                return Err(PipelineError::TooFewVertices);
            }
            let disk = match request.disk {
                Some(disk) => {
                    check_disk(&target, &disk).map_err(|e| PipelineError::Offset(Side::B, e))?;
                    disk
                }
                None => auto_disk(&target, request.shrink).map_err(|e| match e {
                    OffsetError::EmptyKernel => PipelineError::EmptyKernel,
                    other => PipelineError::Offset(Side::B, other),
                })?,
            };

            let t0 = clock.now();
            let off_a = topological_offset_with(&source, request.guide_strategy)
                .map_err(|e| PipelineError::Offset(Side::A, e))?;
            let off_b = geometric_offset(&target, &disk, &off_a.multiplicities)
                .map_err(|e| PipelineError::Offset(Side::B, e))?;
            let t1 = clock.now();
            timings.offsetting = t1.saturating_sub(t0);

            let core = earcut_compatible(&off_a.inner, &off_b.inner, request.strategy)?;
            let t2 = clock.now();
            timings.earcut = t2.saturating_sub(t1);

            let stage_a = BandStage {
                outer: &source,
                offset: &off_a,
            };
            let stage_b = BandStage {
                outer: &target,
                offset: &off_b,
            };
            let pair = merge(&core, Some((stage_a, stage_b)))?;
            timings.merge = clock.now().saturating_sub(t2);
            (pair, off_a.band.len())
        }
    };

    let t0 = clock.now();
    let report = validate(&pair);
    timings.validate = clock.now().saturating_sub(t0);
    if !report.valid {
        let bad = report
            .flipped_a
            .iter()
            .chain(&report.flipped_b)
            .chain(&report.degenerate_a)
            .chain(&report.degenerate_b);
        let stage = if bad.clone().any(|&t| t < band_len) {
            Stage::Band
        } else {
            Stage::Core
        };
        return Err(PipelineError::ValidationFailed { stage, report });
    }

    let t0 = clock.now();
    let stretch = l2_stretch(&pair, request.stretch_direction)?;
    timings.stretch = clock.now().saturating_sub(t0);

    let added_vertices = pair.vertex_count() - n;
    Ok(MappingOutcome {
        pair,
        report,
        stretch,
        timings,
        route_taken,
        added_vertices,
    })
}
