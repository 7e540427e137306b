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

//! Plain-text polygon files: one `x y` pair per line, `#` starts a comment
//! line, blank lines are ignored. Coordinates are written in the shortest
//! form that parses back to the same `f64`.

use std::fmt::Write as _;
use std::path::Path;

use earmap_core::{GeomError, Point2, Polygon};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: expected two numbers")]
    Malformed { line: usize },
    #[error("line {line}: {source}")]
    Number {
        line: usize,
        #[source]
        source: std::num::ParseFloatError,
    },
    #[error(transparent)]
    Geometry(#[from] GeomError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub fn parse_polygon(text: &str) -> Result<Polygon, FormatError> {
    let mut pts = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut fields = line.split_whitespace();
        let (Some(x), Some(y), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(FormatError::Malformed { line: idx + 1 });
        };
        let parse = |s: &str| {
            s.parse::<f64>().map_err(|source| FormatError::Number {
                line: idx + 1,
                source,
            })
        };
        pts.push(Point2::try_new(parse(x)?, parse(y)?)?);
    }
    Ok(Polygon::new(pts)?)
}

pub fn format_polygon(poly: &Polygon) -> String {
    let mut out = String::new();
    for v in poly.vertices() {
        let _ = writeln!(out, "{} {}", v.x, v.y);
    }
    out
}

pub fn read_polygon(path: impl AsRef<Path>) -> Result<Polygon, FormatError> {
    parse_polygon(&std::fs::read_to_string(path)?)
}

pub fn write_polygon(path: impl AsRef<Path>, poly: &Polygon) -> Result<(), FormatError> {
    std::fs::write(path, format_polygon(poly))?;
    Ok(())
}
