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

//! Wavefront OBJ and SVG output for compatible mesh pairs.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use earmap_core::{CompatibleMeshPair, Point2, Side, Triangle};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ObjError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: &'static str },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// One side of the pair as OBJ text: `v x y 0` records followed by 1-based
/// `f` records. Both sides share the face list verbatim.
pub fn format_obj(pair: &CompatibleMeshPair, side: Side) -> String {
    let mut out = String::new();
    let name = match side {
        Side::A => "A",
        Side::B => "B",
    };
    let _ = writeln!(out, "# earmap compatible mesh, side {name}");
    let _ = writeln!(out, "o side_{name}");
    for v in pair.verts(side) {
        let _ = writeln!(out, "v {} {} 0", v.x, v.y);
    }
    for t in pair.tris() {
        let _ = writeln!(out, "f {} {} {}", t.i + 1, t.j + 1, t.k + 1);
    }
    out
}

/// Writes `<prefix>_a.obj` and `<prefix>_b.obj`, returning both paths.
pub fn emit_obj_pair(
    pair: &CompatibleMeshPair,
    prefix: impl AsRef<Path>,
) -> Result<[PathBuf; 2], ObjError> {
    let prefix = prefix.as_ref().as_os_str();
    let mut paths = [PathBuf::from(prefix), PathBuf::from(prefix)];
    for (path, (side, suffix)) in paths
        .iter_mut()
        .zip([(Side::A, "_a.obj"), (Side::B, "_b.obj")])
    {
        let mut name = prefix.to_owned();
        name.push(suffix);
        *path = PathBuf::from(name);
        std::fs::write(&*path, format_obj(pair, side))?;
    }
    Ok(paths)
}

/// Reads the planar vertices and triangles of an OBJ file. Only `v` and `f`
/// records are interpreted; faces must be triangles and may use the
/// `i/t/n` form.
pub fn parse_obj(text: &str) -> Result<(Vec<Point2>, Vec<Triangle>), ObjError> {
    let mut verts = Vec::new();
    let mut raw_faces = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let err = |msg| ObjError::Parse { line, msg };
        let mut fields = raw.split_whitespace();
        match fields.next() {
            Some("v") => {
                let mut coord = || -> Result<f64, ObjError> {
                    fields
                        .next()
                        .ok_or(err("missing coordinate"))?
                        .parse()
                        .map_err(|_| err("bad coordinate"))
                };
                let (x, y) = (coord()?, coord()?);
                verts.push(Point2::try_new(x, y).map_err(|_| err("non-finite coordinate"))?);
            }
            Some("f") => {
                let ids: Vec<usize> = fields
                    .map(|f| {
                        f.split('/')
                            .next()
                            .unwrap_or("")
                            .parse::<usize>()
                            .map_err(|_| err("bad face index"))
                    })
                    .collect::<Result<_, _>>()?;
                if ids.len() != 3 {
                    return Err(err("face is not a triangle"));
                }
                raw_faces.push((line, [ids[0], ids[1], ids[2]]));
            }
            _ => {}
        }
    }
    let tris = raw_faces
        .into_iter()
        .map(|(line, ids)| {
            if ids.iter().any(|&i| i == 0 || i > verts.len()) {
                return Err(ObjError::Parse {
                    line,
                    msg: "face index out of range",
                });
            }
            Ok(Triangle::new(ids[0] - 1, ids[1] - 1, ids[2] - 1))
        })
        .collect::<Result<_, _>>()?;
    Ok((verts, tris))
}

/// Triangle fill for [`format_svg`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Coloring {
    #[default]
    None,
    /// White at stretch 1 shading to red at the largest `|ln s|` in the mesh.
    LogL2Stretch,
}

const SVG_WIDTH: f64 = 800.0;
const SVG_MARGIN: f64 = 20.0;

fn shade(t: f64) -> String {
    let g = (255.0 * (1.0 - t.clamp(0.0, 1.0))).round() as u8;
    format!("#ff{g:02x}{g:02x}")
}

/// Renders one side of the pair. `stretch` holds one value per triangle and
/// is required for [`Coloring::LogL2Stretch`].
pub fn format_svg(
    pair: &CompatibleMeshPair,
    side: Side,
    coloring: Coloring,
    stretch: Option<&[f64]>,
) -> String {
    let verts = pair.verts(side);
    let (mut lo, mut hi) = (verts[0], verts[0]);
    for v in verts {
        lo = Point2::new(lo.x.min(v.x), lo.y.min(v.y));
        hi = Point2::new(hi.x.max(v.x), hi.y.max(v.y));
    }
    let span = (hi.x - lo.x).max(hi.y - lo.y).max(f64::MIN_POSITIVE);
    let scale = (SVG_WIDTH - 2.0 * SVG_MARGIN) / span;
    let width = (hi.x - lo.x) * scale + 2.0 * SVG_MARGIN;
    let height = (hi.y - lo.y) * scale + 2.0 * SVG_MARGIN;
    let project = |p: Point2| {
        (
            (p.x - lo.x) * scale + SVG_MARGIN,
            (hi.y - p.y) * scale + SVG_MARGIN,
        )
    };
    let points = |ids: &mut dyn Iterator<Item = usize>| {
        let mut s = String::new();
        for (n, i) in ids.enumerate() {
            let (x, y) = project(verts[i]);
            if n > 0 {
                s.push(' ');
            }
            let _ = write!(s, "{x:.3},{y:.3}");
        }
        s
    };

    let fills: Vec<String> = match (coloring, stretch) {
        (Coloring::LogL2Stretch, Some(values)) => {
            assert_eq!(
                values.len(),
                pair.tris().len(),
                "one stretch value per triangle"
            );
            let peak = values.iter().map(|s| s.ln().abs()).fold(0.0, f64::max);
            values
                .iter()
                .map(|s| shade(if peak > 0.0 { s.ln().abs() / peak } else { 0.0 }))
                .collect()
        }
        (Coloring::LogL2Stretch, None) => panic!("stretch coloring needs per-triangle values"),
        (Coloring::None, _) => vec!["#ffffff".to_string(); pair.tris().len()],
    };

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.3}" height="{height:.3}" viewBox="0 0 {width:.3} {height:.3}">"#
    );
    let _ = writeln!(
        out,
        r##"<rect width="100%" height="100%" fill="#ffffff"/>"##
    );
    let _ = writeln!(
        out,
        r##"<g stroke="#808080" stroke-width="0.4" stroke-linejoin="round">"##
    );
    for (t, fill) in pair.tris().iter().zip(&fills) {
        let _ = writeln!(
            out,
            r#"<polygon class="tri" points="{}" fill="{fill}"/>"#,
            points(&mut t.indices().into_iter())
        );
    }
    let _ = writeln!(out, "</g>");
    let _ = writeln!(
        out,
        r##"<polygon class="boundary" points="{}" fill="none" stroke="#000000" stroke-width="1.5"/>"##,
        points(&mut pair.boundary(side).iter().copied())
    );
    let _ = writeln!(out, "</svg>");
    out
}

pub fn emit_svg(
    path: impl AsRef<Path>,
    pair: &CompatibleMeshPair,
    side: Side,
    coloring: Coloring,
    stretch: Option<&[f64]>,
) -> std::io::Result<()> {
    std::fs::write(path, format_svg(pair, side, coloring, stretch))
}

#[cfg(test)]
mod tests {
    use super::*;
    use earmap_core::{earcut_compatible, EarStrategy, Polygon};

    fn pair() -> CompatibleMeshPair {
        let a = Polygon::from_coords(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]).unwrap();
        let b = Polygon::from_coords(&[(0.0, 0.0), (2.0, 0.0), (2.0, 1.0), (0.0, 1.0)]).unwrap();
        earcut_compatible(&a, &b, EarStrategy::AnglePrioritized).unwrap()
    }

    #[test]
    fn obj_round_trip() {
        let p = pair();
        for side in [Side::A, Side::B] {
            let (verts, tris) = parse_obj(&format_obj(&p, side)).unwrap();
            assert_eq!(verts, p.verts(side));
            assert_eq!(tris, p.tris());
        }
    }

    #[test]
    fn obj_rejects_bad_faces() {
        assert!(parse_obj("v 0 0 0\nv 1 0 0\nv 0 1 0\nf 1 2 4\n").is_err());
        assert!(parse_obj("v 0 0 0\nf 1 1\n").is_err());
        let (_, tris) = parse_obj("v 0 0 0\nv 1 0 0\nv 0 1 0\nf 1/1/1 2/2/2 3/3/3\n").unwrap();
        assert_eq!(tris, vec![Triangle::new(0, 1, 2)]);
    }

    #[test]
    fn svg_has_one_polygon_per_triangle() {
        let p = pair();
        let svg = format_svg(&p, Side::B, Coloring::LogL2Stretch, Some(&[2.0, 1.0]));
        assert_eq!(svg.matches(r#"class="tri""#).count(), 2);
        assert!(svg.contains("#ff0000"));
        assert!(svg.contains(r##"fill="#ffffff""##));
        assert_eq!(
            svg,
            format_svg(&p, Side::B, Coloring::LogL2Stretch, Some(&[2.0, 1.0]))
        );
    }

    #[test]
    fn svg_flips_y() {
        let svg = format_svg(&pair(), Side::A, Coloring::None, None);
        let boundary = svg.lines().find(|l| l.contains("boundary")).unwrap();
        assert!(boundary
            .contains(r#"points="20.000,780.000 780.000,780.000 780.000,20.000 20.000,20.000""#));
    }
}
