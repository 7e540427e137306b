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

//! Bijective piecewise-linear maps between simple polygons.
//!
//! A map is produced by growing the same triangle mesh inside both domains
//! at once: ears are cut from the source polygon and the same cuts are
//! replayed on a strictly convex target, so both meshes share one
//! connectivity. Targets that are not strictly convex but have a kernel
//! point are reached through an offset band (see [`offset`]).
//!
//! Validity is certified with exact orientation predicates; the crate is
//! `no_std` and only needs `alloc`.
//!
//! ```
//! use earmap_core::{run, MappingRequest, Point2, Polygon, Side};
//!
//! # fn main() -> Result<(), Box<dyn core::error::Error>> {
//! let source = Polygon::from_coords(&[(0.0, 0.0), (2.0, 0.0), (2.0, 1.0), (1.0, 1.0), (1.0, 2.0), (0.0, 2.0)])?;
//! let target = Polygon::from_coords(&[(0.0, 0.0), (1.0, 0.0), (2.0, 0.0), (2.0, 2.0), (1.0, 2.0), (0.0, 2.0)])?;
//! let outcome = run(&MappingRequest::new(source, target))?;
//! assert!(outcome.report.valid);
//! let image = outcome.pair.map_point(Side::A, Point2::new(0.5, 0.5))?;
//! assert!(image.x > 0.0 && image.x < 2.0 && image.y > 0.0 && image.y < 2.0);
//! # Ok(())
//! # }
//! ```

#![no_std]
extern crate alloc;

pub mod earcut;
pub mod geom;
pub mod mesh;
pub mod offset;
pub mod pipeline;

pub use earcut::{
    earcut_compatible, earcut_single, find_valid_ear, EarStrategy, EarcutError, Front,
};
pub use geom::{
    interior_angle, is_simple, is_strictly_convex, normalize_ccw, orient2d, point_in_triangle,
    GeomError, Orientation, Point2, Polygon,
};
pub use mesh::{
    l2_stretch, locate, map_point, merge, validate, BarycentricLocation, CompatibleMeshPair, Side,
    StretchDirection, StretchReport, Triangle, ValidationReport,
};
pub use offset::{
    auto_disk, band_triangulate, geometric_offset, topological_offset, Disk, OffsetError,
    OffsetResult,
};
pub use pipeline::{
    diagnose, run, run_with_clock, Clock, MappingOutcome, MappingRequest, PipelineError, Route,
    RouteTaken, StageTimings, Violation,
};
