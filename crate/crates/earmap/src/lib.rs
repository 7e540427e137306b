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

//! File formats, shape generators, the batch campaign and the `earmap`
//! command line tool, on top of [`earmap_core`].

pub mod campaign;
pub mod clock;
pub mod export;
pub mod generate;
pub mod polyfile;

pub use campaign::{
    run_campaign, write_campaign, CampaignConfig, CampaignReport, CampaignRow, CampaignSummary,
};
pub use clock::StdClock;
pub use export::{emit_obj_pair, emit_svg, format_obj, format_svg, parse_obj, Coloring};
pub use generate::{gen_splat, gen_target, SplatParams, TargetKind};
pub use polyfile::{format_polygon, parse_polygon, read_polygon, write_polygon};
