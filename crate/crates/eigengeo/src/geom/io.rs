//! Mesh ingestion: OFF and OBJ triangle meshes (positions and faces
//! only), and CSV polylines (one point per line).

use crate::error::{Error, Result};
use crate::geom::mesh::{Cells, ImmersedComplex};
use std::io::BufRead;
use std::path::Path;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeshFormat {
    Off,
    Obj,
    CsvPolyline,
}

impl MeshFormat {
    /// Guesses the format from a file extension.
    pub fn from_path(path: &Path) -> Option<MeshFormat> {
        match path.extension()?.to_str()?.to_ascii_lowercase().as_str() {
            "off" => Some(MeshFormat::Off),
            "obj" => Some(MeshFormat::Obj),
            "csv" | "txt" => Some(MeshFormat::CsvPolyline),
            _ => None,
        }
    }
}

/// Loads a mesh or polyline from disk.
pub fn load_complex(path: &Path, format: MeshFormat) -> Result<ImmersedComplex> {
    let file = std::fs::File::open(path)?;
    let reader = std::io::BufReader::new(file);
    let name = path.display().to_string();
    match format {
        MeshFormat::Off => parse_off(reader, &name),
        MeshFormat::Obj => parse_obj(reader, &name),
        MeshFormat::CsvPolyline => parse_csv_polyline(reader, &name),
    }
}

fn parse_err(path: &str, message: impl Into<String>) -> Error {
    Error::Parse {
        path: path.to_string(),
        message: message.into(),
    }
}

pub fn parse_off<R: BufRead>(reader: R, path: &str) -> Result<ImmersedComplex> {
    let mut lines = reader
        .lines()
        .collect::<std::io::Result<Vec<_>>>()?
        .into_iter()
        .map(|l| l.trim().to_string())
        .filter(|l| !l.is_empty() && !l.starts_with('#'));

    let header = lines.next().ok_or_else(|| parse_err(path, "empty file"))?;
    if header != "OFF" {
        return Err(parse_err(path, format!("expected OFF header, got {header:?}")));
    }
    let counts = lines
        .next()
        .ok_or_else(|| parse_err(path, "missing count line"))?;
    let counts: Vec<usize> = counts
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| parse_err(path, "bad count line")))
        .collect::<Result<_>>()?;
    if counts.len() < 2 {
        return Err(parse_err(path, "count line needs at least nv and nf"));
    }
    let (nv, nf) = (counts[0], counts[1]);

    let mut coords = Vec::with_capacity(3 * nv);
    for i in 0..nv {
        let line = lines
            .next()
            .ok_or_else(|| parse_err(path, format!("missing vertex {i}")))?;
        let vals: Vec<f64> = line
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| parse_err(path, format!("bad vertex {i}"))))
            .collect::<Result<_>>()?;
        if vals.len() < 3 {
            return Err(parse_err(path, format!("vertex {i} needs 3 coordinates")));
        }
        coords.extend_from_slice(&vals[..3]);
    }
    let mut tris = Vec::with_capacity(nf);
    for i in 0..nf {
        let line = lines
            .next()
            .ok_or_else(|| parse_err(path, format!("missing face {i}")))?;
        let vals: Vec<usize> = line
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| parse_err(path, format!("bad face {i}"))))
            .collect::<Result<_>>()?;
        if vals.is_empty() || vals[0] + 1 != vals.len() {
            return Err(parse_err(path, format!("face {i} is malformed")));
        }
        // Fan-triangulate polygons.
        for k in 2..vals[0] {
            tris.push([vals[1], vals[k], vals[k + 1]]);
        }
    }
    ImmersedComplex::new(3, coords, Cells::Triangles(tris))
}

pub fn parse_obj<R: BufRead>(reader: R, path: &str) -> Result<ImmersedComplex> {
    let mut coords = Vec::new();
    let mut tris: Vec<[usize; 3]> = Vec::new();
    for line in reader.lines() {
        let line = line?;
        let mut tokens = line.split_whitespace();
        match tokens.next() {
            Some("v") => {
                let vals: Vec<f64> = tokens
                    .map(|t| t.parse().map_err(|_| parse_err(path, "bad vertex line")))
                    .collect::<Result<_>>()?;
                if vals.len() < 3 {
                    return Err(parse_err(path, "vertex line needs 3 coordinates"));
                }
                coords.extend_from_slice(&vals[..3]);
            }
            Some("f") => {
                let ids: Vec<usize> = tokens
                    .map(|t| {
                        // `f v`, `f v/vt`, `f v/vt/vn`, `f v//vn` all start
                        // with the position index; indices are 1-based.
                        let head = t.split('/').next().unwrap_or("");
                        head.parse::<usize>()
                            .map_err(|_| parse_err(path, "bad face index"))
                            .and_then(|v| {
                                v.checked_sub(1)
                                    .ok_or_else(|| parse_err(path, "face index 0"))
                            })
                    })
                    .collect::<Result<_>>()?;
                if ids.len() < 3 {
                    return Err(parse_err(path, "face needs at least 3 vertices"));
                }
                for k in 1..ids.len() - 1 {
                    tris.push([ids[0], ids[k], ids[k + 1]]);
                }
            }
            _ => {} // comments, normals, uvs, groups: ignored
        }
    }
    ImmersedComplex::new(3, coords, Cells::Triangles(tris))
}

/// CSV polyline: one point per line, comma-separated coordinates, all
/// lines with the same column count. Consecutive points are joined by
/// segments. The loop is closed when the gap between the last and first
/// point is at most twice the median segment length (so a sampled closed
/// curve round-trips as closed); repeat the first point at the end to
/// force closure.
pub fn parse_csv_polyline<R: BufRead>(reader: R, path: &str) -> Result<ImmersedComplex> {
    let mut points: Vec<Vec<f64>> = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let vals: Vec<f64> = line
            .split(',')
            .map(|t| {
                t.trim()
                    .parse()
                    .map_err(|_| parse_err(path, format!("bad number on line {}", i + 1)))
            })
            .collect::<Result<_>>()?;
        if let Some(first) = points.first() {
            if vals.len() != first.len() {
                return Err(parse_err(path, format!("inconsistent column count on line {}", i + 1)));
            }
        }
        points.push(vals);
    }
    if points.len() < 2 {
        return Err(parse_err(path, "a polyline needs at least 2 points"));
    }
    let dim = points[0].len();
    if dim < 2 {
        return Err(Error::AmbientDimension { expected: 2, found: dim });
    }

    // Drop an explicitly repeated closing point.
    let explicit_close = crate::linalg::dist(&points[0], points.last().unwrap()) < 1e-12;
    if explicit_close {
        points.pop();
    }
    let n = points.len();
    let mut gaps: Vec<f64> = points
        .windows(2)
        .map(|w| crate::linalg::dist(&w[0], &w[1]))
        .collect();
    gaps.sort_by(|a, b| a.total_cmp(b));
    let median_gap = gaps[gaps.len() / 2];
    let closing_gap = crate::linalg::dist(&points[0], &points[n - 1]);
    let closed = explicit_close || closing_gap <= 2.0 * median_gap;

    let coords: Vec<f64> = points.into_iter().flatten().collect();
    let mut segs: Vec<[usize; 2]> = (0..n - 1).map(|i| [i, i + 1]).collect();
    if closed {
        segs.push([n - 1, 0]);
    }
    ImmersedComplex::new(dim, coords, Cells::Segments(segs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;
    use std::io::Cursor;

    const ICOSAHEDRON_OFF: &str = "\
OFF
12 20 30
0 -0.5257311 0.8506508
0 0.5257311 0.8506508
0 -0.5257311 -0.8506508
0 0.5257311 -0.8506508
0.8506508 0 0.5257311
0.8506508 0 -0.5257311
-0.8506508 0 0.5257311
-0.8506508 0 -0.5257311
0.5257311 0.8506508 0
-0.5257311 0.8506508 0
0.5257311 -0.8506508 0
-0.5257311 -0.8506508 0
3 1 0 4
3 0 1 6
3 2 3 5
3 3 2 7
3 4 5 10
3 5 4 8
3 6 7 9
3 7 6 11
3 8 9 1
3 9 8 3
3 10 11 0
3 11 10 2
3 0 11 6
3 0 6 1
3 1 4 8
3 1 8 9
3 2 5 10
3 2 10 11
3 3 7 9
3 3 9 8
";

    #[test]
    fn off_icosahedron_loads_closed() {
        let c = parse_off(Cursor::new(ICOSAHEDRON_OFF), "ico.off").unwrap();
        assert_eq!(c.n_vertices(), 12);
        assert_eq!(c.n_simplices(), 20);
        assert!(c.is_closed());
    }

    #[test]
    fn off_with_repeated_vertex_reports_zero_measure() {
        let text = "OFF\n3 1 0\n0 0 0\n1 0 0\n0 1 0\n3 0 1 1\n";
        let err = parse_off(Cursor::new(text), "bad.off").unwrap_err();
        assert!(matches!(err, crate::error::Error::ZeroMeasureSimplex { .. }));
    }

    #[test]
    fn csv_circle_round_trips_closed() {
        let mut csv = String::new();
        for i in 0..360 {
            let t = 2.0 * PI * i as f64 / 360.0;
            csv.push_str(&format!("{},{}\n", t.cos(), t.sin()));
        }
        let c = parse_csv_polyline(Cursor::new(csv), "circle.csv").unwrap();
        assert_eq!(c.dim_m(), 1);
        assert_eq!(c.codim_p(), 1);
        assert!(c.is_closed());
        assert_eq!(c.n_simplices(), 360);
        assert_relative_eq!(c.riemannian_volume(), 2.0 * PI, max_relative = 1e-3);
    }

    #[test]
    fn csv_open_polyline_stays_open() {
        let csv = "0,0\n1,0\n2,0\n3,0\n";
        let c = parse_csv_polyline(Cursor::new(csv), "line.csv").unwrap();
        assert!(!c.is_closed());
        assert_eq!(c.n_simplices(), 3);
    }

    #[test]
    fn obj_triangles_with_slashes() {
        let obj = "v 0 0 0\nv 1 0 0\nv 0 1 0\nvn 0 0 1\nf 1/1/1 2/2/1 3/3/1\n";
        let c = parse_obj(Cursor::new(obj), "tri.obj").unwrap();
        assert_eq!(c.n_simplices(), 1);
        assert_relative_eq!(c.riemannian_volume(), 0.5);
    }
}
