//! Discretized immersed submanifolds.
//!
//! An [`ImmersedComplex`] is a polyline (`m = 1`) or triangle mesh
//! (`m = 2`) immersed in `R^{m+p}`. Self-intersections are allowed —
//! nothing requires distinct simplices to be disjoint in space — but the
//! combinatorics must be manifold: a vertex joins at most two segments,
//! an edge at most two triangles.

use crate::error::{Error, Result};
use crate::linalg;
use std::collections::HashMap;

/// Simplices of an immersed complex: segments for curves, triangles for
/// surfaces.
#[derive(Debug, Clone, PartialEq)]
pub enum Cells {
    Segments(Vec<[usize; 2]>),
    Triangles(Vec<[usize; 3]>),
}

impl Cells {
    pub fn len(&self) -> usize {
        match self {
            Cells::Segments(s) => s.len(),
            Cells::Triangles(t) => t.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Intrinsic dimension of the simplices.
    pub fn dim(&self) -> usize {
        match self {
            Cells::Segments(_) => 1,
            Cells::Triangles(_) => 2,
        }
    }

    pub fn vertex_ids(&self, simplex: usize) -> &[usize] {
        match self {
            Cells::Segments(s) => &s[simplex],
            Cells::Triangles(t) => &t[simplex],
        }
    }
}

/// A piecewise-linear immersed submanifold of `R^{m+p}`.
#[derive(Debug, Clone)]
pub struct ImmersedComplex {
    ambient_dim: usize,
    coords: Vec<f64>,
    cells: Cells,
    measures: Vec<f64>,
    boundary_flags: Vec<bool>,
    closed: bool,
}

impl ImmersedComplex {
    /// Validates and builds a complex from flat vertex coordinates and
    /// simplices. Rejects degenerate simplices, out-of-range indices,
    /// non-manifold incidences, and ambient dimension `< m + 1`.
    pub fn new(ambient_dim: usize, coords: Vec<f64>, cells: Cells) -> Result<Self> {
        let m = cells.dim();
        if ambient_dim < m + 1 {
            return Err(Error::AmbientDimension {
                expected: m + 1,
                found: ambient_dim,
            });
        }
        if coords.len() % ambient_dim != 0 {
            return Err(Error::AmbientDimension {
                expected: ambient_dim,
                found: coords.len() % ambient_dim,
            });
        }
        let n_vertices = coords.len() / ambient_dim;
        for s in 0..cells.len() {
            for &v in cells.vertex_ids(s) {
                if v >= n_vertices {
                    return Err(Error::IndexOutOfRange {
                        simplex: s,
                        vertex: v,
                        n_vertices,
                    });
                }
            }
        }

        // Degeneracy threshold tied to the overall scale of the complex.
        let mut scale: f64 = 0.0;
        for d in 0..ambient_dim {
            let mut lo = f64::INFINITY;
            let mut hi = f64::NEG_INFINITY;
            for v in 0..n_vertices {
                let x = coords[v * ambient_dim + d];
                lo = lo.min(x);
                hi = hi.max(x);
            }
            if n_vertices > 0 {
                scale = scale.max(hi - lo);
            }
        }
        let floor = 1e-14 * scale.powi(m as i32).max(f64::MIN_POSITIVE);

        let vertex = |i: usize| &coords[i * ambient_dim..(i + 1) * ambient_dim];
        let mut measures = Vec::with_capacity(cells.len());
        for s in 0..cells.len() {
            let ids = cells.vertex_ids(s);
            let measure = match cells.dim() {
                1 => linalg::segment_length(vertex(ids[0]), vertex(ids[1])),
                _ => linalg::triangle_area(vertex(ids[0]), vertex(ids[1]), vertex(ids[2])),
            };
            if !(measure > floor) || !measure.is_finite() {
                return Err(Error::ZeroMeasureSimplex { index: s });
            }
            measures.push(measure);
        }

        let (boundary_flags, closed) = Self::boundary_structure(&cells, n_vertices)?;
        Ok(Self {
            ambient_dim,
            coords,
            cells,
            measures,
            boundary_flags,
            closed,
        })
    }

    fn boundary_structure(cells: &Cells, n_vertices: usize) -> Result<(Vec<bool>, bool)> {
        match cells {
            Cells::Segments(segs) => {
                let mut degree = vec![0usize; n_vertices];
                for (i, seg) in segs.iter().enumerate() {
                    for &v in seg {
                        degree[v] += 1;
                        if degree[v] > 2 {
                            let _ = i;
                            return Err(Error::NonManifoldVertex { vertex: v });
                        }
                    }
                }
                let flags: Vec<bool> = segs
                    .iter()
                    .map(|seg| seg.iter().any(|&v| degree[v] == 1))
                    .collect();
                let closed = !segs.is_empty() && flags.iter().all(|&f| !f);
                Ok((flags, closed))
            }
            Cells::Triangles(tris) => {
                let mut edge_count: HashMap<(usize, usize), usize> = HashMap::new();
                for tri in tris {
                    for e in 0..3 {
                        let (a, b) = (tri[e], tri[(e + 1) % 3]);
                        let key = (a.min(b), a.max(b));
                        let c = edge_count.entry(key).or_insert(0);
                        *c += 1;
                        if *c > 2 {
                            return Err(Error::NonManifoldEdge { a: key.0, b: key.1 });
                        }
                    }
                }
                let flags: Vec<bool> = tris
                    .iter()
                    .map(|tri| {
                        (0..3).any(|e| {
                            let (a, b) = (tri[e], tri[(e + 1) % 3]);
                            edge_count[&(a.min(b), a.max(b))] == 1
                        })
                    })
                    .collect();
                let closed = !tris.is_empty() && flags.iter().all(|&f| !f);
                Ok((flags, closed))
            }
        }
    }

    /// Intrinsic dimension `m` (1 for polylines, 2 for triangle meshes).
    pub fn dim_m(&self) -> usize {
        self.cells.dim()
    }

    /// Codimension `p = (ambient dimension) - m`.
    pub fn codim_p(&self) -> usize {
        self.ambient_dim - self.dim_m()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn n_vertices(&self) -> usize {
        self.coords.len() / self.ambient_dim
    }

    pub fn n_simplices(&self) -> usize {
        self.cells.len()
    }

    pub fn cells(&self) -> &Cells {
        &self.cells
    }

    pub fn vertex(&self, i: usize) -> &[f64] {
        &self.coords[i * self.ambient_dim..(i + 1) * self.ambient_dim]
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    /// Measure (length or area) of one simplex.
    pub fn simplex_measure(&self, s: usize) -> f64 {
        self.measures[s]
    }

    pub fn measures(&self) -> &[f64] {
        &self.measures
    }

    /// True when the simplex touches the boundary of the complex.
    pub fn is_boundary_simplex(&self, s: usize) -> bool {
        self.boundary_flags[s]
    }

    pub fn boundary_flags(&self) -> &[bool] {
        &self.boundary_flags
    }

    /// True when the complex has no boundary (and is nonempty).
    pub fn is_closed(&self) -> bool {
        self.closed
    }

    /// Total Riemannian volume: sum of segment lengths for `m = 1`,
    /// triangle areas for `m = 2`.
    pub fn riemannian_volume(&self) -> f64 {
        self.measures.iter().sum()
    }

    /// Barycenter of one simplex.
    pub fn barycenter(&self, s: usize) -> Vec<f64> {
        let ids = self.cells.vertex_ids(s);
        let mut b = vec![0.0; self.ambient_dim];
        for &v in ids {
            for d in 0..self.ambient_dim {
                b[d] += self.coords[v * self.ambient_dim + d];
            }
        }
        let inv = 1.0 / ids.len() as f64;
        for x in &mut b {
            *x *= inv;
        }
        b
    }

    /// Euclidean distance from an ambient point to a simplex.
    pub fn distance_to_simplex(&self, point: &[f64], s: usize) -> f64 {
        let ids = self.cells.vertex_ids(s);
        match self.cells.dim() {
            1 => point_segment_distance(point, self.vertex(ids[0]), self.vertex(ids[1])),
            _ => point_triangle_distance(
                point,
                self.vertex(ids[0]),
                self.vertex(ids[1]),
                self.vertex(ids[2]),
            ),
        }
    }

    /// Diameter of the vertex set (max pairwise distance); O(n^2).
    pub fn diameter(&self) -> f64 {
        let n = self.n_vertices();
        let mut d: f64 = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                d = d.max(linalg::dist(self.vertex(i), self.vertex(j)));
            }
        }
        d
    }

    /// Returns the complex with every vertex coordinate multiplied by `t`.
    pub fn scaled(&self, t: f64) -> Result<Self> {
        let coords = self.coords.iter().map(|x| x * t).collect();
        Self::new(self.ambient_dim, coords, self.cells.clone())
    }

    /// Deletes the region's simplices, keeping all vertices, and
    /// recomputes boundary flags. This realizes the perturbed complex
    /// whose volume is exactly the original minus the region's measure.
    pub fn remove_region(&self, region: &Region) -> Result<Self> {
        let keep: Vec<bool> = {
            let mut keep = vec![true; self.n_simplices()];
            for &s in &region.simplex_ids {
                if s >= keep.len() {
                    return Err(Error::InvalidRegion {
                        message: format!("simplex id {s} out of range"),
                    });
                }
                keep[s] = false;
            }
            keep
        };
        if keep.iter().all(|&k| !k) {
            return Err(Error::RegionCoversEverything);
        }
        let cells = match &self.cells {
            Cells::Segments(segs) => Cells::Segments(
                segs.iter()
                    .zip(&keep)
                    .filter(|(_, &k)| k)
                    .map(|(s, _)| *s)
                    .collect(),
            ),
            Cells::Triangles(tris) => Cells::Triangles(
                tris.iter()
                    .zip(&keep)
                    .filter(|(_, &k)| k)
                    .map(|(t, _)| *t)
                    .collect(),
            ),
        };
        Self::new(self.ambient_dim, self.coords.clone(), cells)
    }
}

/// A subset of simplices, used both as a removable perturbation region
/// and as the `D` in the restricted measure.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Region {
    pub simplex_ids: Vec<usize>,
    pub volume_fraction: f64,
}

impl Region {
    pub fn empty() -> Self {
        Region {
            simplex_ids: Vec::new(),
            volume_fraction: 0.0,
        }
    }

    /// Builds a region from simplex ids, computing its volume fraction.
    pub fn from_simplices(complex: &ImmersedComplex, mut ids: Vec<usize>) -> Result<Self> {
        ids.sort_unstable();
        ids.dedup();
        if let Some(&max) = ids.last() {
            if max >= complex.n_simplices() {
                return Err(Error::InvalidRegion {
                    message: format!("simplex id {max} out of range"),
                });
            }
        }
        let removed: f64 = ids.iter().map(|&s| complex.simplex_measure(s)).sum();
        let fraction = removed / complex.riemannian_volume();
        if fraction >= 1.0 {
            return Err(Error::RegionCoversEverything);
        }
        Ok(Region {
            simplex_ids: ids,
            volume_fraction: fraction,
        })
    }

    /// All simplices whose barycenter lies within `radius` of `center`.
    pub fn ball(complex: &ImmersedComplex, center: &[f64], radius: f64) -> Result<Self> {
        let ids = (0..complex.n_simplices())
            .filter(|&s| linalg::dist(&complex.barycenter(s), center) <= radius)
            .collect();
        Self::from_simplices(complex, ids)
    }

    pub fn measure(&self, complex: &ImmersedComplex) -> f64 {
        self.simplex_ids
            .iter()
            .map(|&s| complex.simplex_measure(s))
            .sum()
    }

    pub fn contains(&self, simplex: usize) -> bool {
        self.simplex_ids.binary_search(&simplex).is_ok()
    }
}

/// Distance from a point to a segment, any ambient dimension.
pub fn point_segment_distance(p: &[f64], a: &[f64], b: &[f64]) -> f64 {
    let ab = linalg::sub(b, a);
    let ap = linalg::sub(p, a);
    let len2 = linalg::dot(&ab, &ab);
    let t = if len2 > 0.0 {
        (linalg::dot(&ap, &ab) / len2).clamp(0.0, 1.0)
    } else {
        0.0
    };
    let closest: Vec<f64> = a.iter().zip(&ab).map(|(x, d)| x + t * d).collect();
    linalg::dist(p, &closest)
}

/// Distance from a point to a triangle, any ambient dimension.
///
/// Projects onto the triangle plane and clamps to the closest feature.
pub fn point_triangle_distance(p: &[f64], a: &[f64], b: &[f64], c: &[f64]) -> f64 {
    let e1 = linalg::sub(b, a);
    let e2 = linalg::sub(c, a);
    let ap = linalg::sub(p, a);
    let g11 = linalg::dot(&e1, &e1);
    let g12 = linalg::dot(&e1, &e2);
    let g22 = linalg::dot(&e2, &e2);
    let r1 = linalg::dot(&ap, &e1);
    let r2 = linalg::dot(&ap, &e2);
    let det = g11 * g22 - g12 * g12;
    if det > 1e-30 {
        let u = (g22 * r1 - g12 * r2) / det;
        let v = (g11 * r2 - g12 * r1) / det;
        if u >= 0.0 && v >= 0.0 && u + v <= 1.0 {
            let foot: Vec<f64> = a
                .iter()
                .zip(e1.iter().zip(&e2))
                .map(|(x, (d1, d2))| x + u * d1 + v * d2)
                .collect();
            return linalg::dist(p, &foot);
        }
    }
    point_segment_distance(p, a, b)
        .min(point_segment_distance(p, b, c))
        .min(point_segment_distance(p, a, c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn unit_segment() -> ImmersedComplex {
        ImmersedComplex::new(
            2,
            vec![0.0, 0.0, 1.0, 0.0],
            Cells::Segments(vec![[0, 1]]),
        )
        .unwrap()
    }

    #[test]
    fn single_unit_segment_has_measure_one() {
        let c = unit_segment();
        assert_relative_eq!(c.riemannian_volume(), 1.0);
        assert!(!c.is_closed());
        assert!(c.is_boundary_simplex(0));
    }

    #[test]
    fn repeated_vertex_in_triangle_is_zero_measure() {
        let err = ImmersedComplex::new(
            3,
            vec![0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0, 0.0],
            Cells::Triangles(vec![[0, 1, 1]]),
        )
        .unwrap_err();
        assert!(matches!(err, Error::ZeroMeasureSimplex { index: 0 }));
    }

    #[test]
    fn ambient_dimension_must_exceed_m() {
        let err = ImmersedComplex::new(
            1,
            vec![0.0, 1.0],
            Cells::Segments(vec![[0, 1]]),
        )
        .unwrap_err();
        assert!(matches!(err, Error::AmbientDimension { .. }));
    }

    #[test]
    fn non_manifold_edge_rejected() {
        // Three triangles sharing the edge (0,1).
        let err = ImmersedComplex::new(
            3,
            vec![
                0.0, 0.0, 0.0, //
                1.0, 0.0, 0.0, //
                0.0, 1.0, 0.0, //
                0.0, 0.0, 1.0, //
                0.0, -1.0, 0.0,
            ],
            Cells::Triangles(vec![[0, 1, 2], [0, 1, 3], [0, 1, 4]]),
        )
        .unwrap_err();
        assert!(matches!(err, Error::NonManifoldEdge { .. }));
    }

    #[test]
    fn remove_empty_region_is_identity() {
        let c = crate::geom::generators::circle(16).unwrap();
        let out = c.remove_region(&Region::empty()).unwrap();
        assert_eq!(out.n_simplices(), c.n_simplices());
        assert_relative_eq!(out.riemannian_volume(), c.riemannian_volume());
        assert!(out.is_closed());
    }

    #[test]
    fn remove_everything_fails() {
        let c = unit_segment();
        let region = Region {
            simplex_ids: vec![0],
            volume_fraction: 1.0,
        };
        assert!(matches!(
            c.remove_region(&region),
            Err(Error::RegionCoversEverything)
        ));
    }

    #[test]
    fn volume_additivity_is_exact() {
        let c = crate::geom::generators::sphere(2).unwrap();
        let ids: Vec<usize> = (0..40).collect();
        let region = Region::from_simplices(&c, ids).unwrap();
        let removed = region.measure(&c);
        let rest = c.remove_region(&region).unwrap();
        assert_relative_eq!(
            rest.riemannian_volume() + removed,
            c.riemannian_volume(),
            max_relative = 1e-12
        );
        assert!(!rest.is_closed());
    }

    #[test]
    fn point_triangle_distance_cases() {
        let a = [0.0, 0.0, 0.0];
        let b = [1.0, 0.0, 0.0];
        let c = [0.0, 1.0, 0.0];
        // Above the interior.
        assert_relative_eq!(point_triangle_distance(&[0.2, 0.2, 0.5], &a, &b, &c), 0.5);
        // Closest to a vertex.
        assert_relative_eq!(
            point_triangle_distance(&[2.0, 0.0, 0.0], &a, &b, &c),
            1.0
        );
        // Closest to an edge.
        assert_relative_eq!(
            point_triangle_distance(&[0.5, -1.0, 0.0], &a, &b, &c),
            1.0
        );
    }
}
