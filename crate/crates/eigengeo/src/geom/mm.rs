//! Metric-measure views of a complex.
//!
//! A [`MetricMeasureSpace`] is the finite sample `(X, d, mu)` used by the
//! covering and capacitor machinery: one point per simplex barycenter,
//! weighted by the simplex measure. The distance is either the ambient
//! Euclidean distance (which bounds any intrinsic distance from below)
//! or the graph-geodesic distance on the simplex adjacency graph (which
//! dominates it).

use crate::error::{Error, Result};
use crate::geom::mesh::{Cells, ImmersedComplex, Region};
use crate::linalg;
use std::collections::BinaryHeap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MetricKind {
    Euclidean,
    GraphGeodesic,
}

impl std::str::FromStr for MetricKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "euclidean" => Ok(MetricKind::Euclidean),
            "graph-geodesic" => Ok(MetricKind::GraphGeodesic),
            other => Err(Error::InvalidConfig {
                message: format!("unknown metric {other:?}"),
            }),
        }
    }
}

#[derive(Debug, Clone)]
enum Metric {
    Euclidean,
    /// Dense symmetric all-pairs geodesic matrix, row-major.
    Matrix(Vec<f64>),
}

/// A finite metric-measure space `(X, d, mu)`.
#[derive(Debug, Clone)]
pub struct MetricMeasureSpace {
    ambient_dim: usize,
    points: Vec<f64>,
    weights: Vec<f64>,
    metric: Metric,
    kind: MetricKind,
}

impl MetricMeasureSpace {
    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.points[i * self.ambient_dim..(i + 1) * self.ambient_dim]
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn total_mass(&self) -> f64 {
        self.weights.iter().sum()
    }

    pub fn metric_kind(&self) -> MetricKind {
        self.kind
    }

    pub fn distance(&self, i: usize, j: usize) -> f64 {
        match &self.metric {
            Metric::Euclidean => linalg::dist(self.point(i), self.point(j)),
            Metric::Matrix(d) => d[i * self.len() + j],
        }
    }

    /// Mass of the closed metric ball around point `i`.
    pub fn ball_mass(&self, i: usize, r: f64) -> f64 {
        (0..self.len())
            .filter(|&j| self.distance(i, j) <= r)
            .map(|j| self.weights[j])
            .sum()
    }

    /// Indices inside the closed metric ball around point `i`.
    pub fn ball_members(&self, i: usize, r: f64) -> Vec<usize> {
        (0..self.len())
            .filter(|&j| self.distance(i, j) <= r)
            .collect()
    }

    /// Max pairwise distance; O(n^2).
    pub fn diameter(&self) -> f64 {
        let n = self.len();
        let mut d: f64 = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                d = d.max(self.distance(i, j));
            }
        }
        d
    }

    /// Returns a copy with the weights of `region`'s simplices zeroed,
    /// realizing the restricted measure `nu <= mu`.
    pub fn restricted(&self, region: &Region) -> Self {
        let mut out = self.clone();
        for &s in &region.simplex_ids {
            if s < out.weights.len() {
                out.weights[s] = 0.0;
            }
        }
        out
    }
}

/// Builds the metric-measure space of a complex: points are simplex
/// barycenters, weights are simplex measures. When `excluded` is given,
/// the weights of its simplices are set to zero (the measure `nu`
/// restricted to the complement), while the point set and metric are
/// unchanged.
pub fn to_mm_space(
    complex: &ImmersedComplex,
    metric: MetricKind,
    excluded: Option<&Region>,
) -> MetricMeasureSpace {
    let n = complex.n_simplices();
    let dim = complex.ambient_dim();
    let mut points = Vec::with_capacity(n * dim);
    for s in 0..n {
        points.extend_from_slice(&complex.barycenter(s));
    }
    let mut weights: Vec<f64> = (0..n).map(|s| complex.simplex_measure(s)).collect();
    if let Some(region) = excluded {
        for &s in &region.simplex_ids {
            weights[s] = 0.0;
        }
    }
    let metric_data = match metric {
        MetricKind::Euclidean => Metric::Euclidean,
        MetricKind::GraphGeodesic => Metric::Matrix(geodesic_matrix(complex, &points, dim)),
    };
    MetricMeasureSpace {
        ambient_dim: dim,
        points,
        weights,
        metric: metric_data,
        kind: metric,
    }
}

/// Adjacency of simplices: shared vertex for segments, shared edge for
/// triangles.
fn adjacency(complex: &ImmersedComplex) -> Vec<Vec<usize>> {
    let n = complex.n_simplices();
    let mut adj = vec![Vec::new(); n];
    match complex.cells() {
        Cells::Segments(segs) => {
            let mut by_vertex: std::collections::HashMap<usize, Vec<usize>> = Default::default();
            for (i, seg) in segs.iter().enumerate() {
                for &v in seg {
                    by_vertex.entry(v).or_default().push(i);
                }
            }
            for incident in by_vertex.values() {
                for &a in incident {
                    for &b in incident {
                        if a != b {
                            adj[a].push(b);
                        }
                    }
                }
            }
        }
        Cells::Triangles(tris) => {
            let mut by_edge: std::collections::HashMap<(usize, usize), Vec<usize>> =
                Default::default();
            for (i, tri) in tris.iter().enumerate() {
                for e in 0..3 {
                    let (a, b) = (tri[e], tri[(e + 1) % 3]);
                    by_edge.entry((a.min(b), a.max(b))).or_default().push(i);
                }
            }
            for incident in by_edge.values() {
                for &a in incident {
                    for &b in incident {
                        if a != b {
                            adj[a].push(b);
                        }
                    }
                }
            }
        }
    }
    for list in &mut adj {
        list.sort_unstable();
        list.dedup();
    }
    adj
}

/// All-pairs shortest paths on the barycenter adjacency graph with
/// Euclidean edge lengths (Dijkstra from every source). Quadratic
/// memory; intended for meshes up to a few thousand simplices.
fn geodesic_matrix(complex: &ImmersedComplex, points: &[f64], dim: usize) -> Vec<f64> {
    let n = complex.n_simplices();
    let adj = adjacency(complex);
    let pt = |i: usize| &points[i * dim..(i + 1) * dim];
    let mut matrix = vec![f64::INFINITY; n * n];

    #[derive(PartialEq)]
    struct Entry(f64, usize);
    impl Eq for Entry {}
    impl Ord for Entry {
        fn cmp(&self, other: &Self) -> std::cmp::Ordering {
            other.0.total_cmp(&self.0) // min-heap
        }
    }
    impl PartialOrd for Entry {
        fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
            Some(self.cmp(other))
        }
    }

    for src in 0..n {
        let dist = &mut matrix[src * n..(src + 1) * n];
        dist[src] = 0.0;
        let mut heap = BinaryHeap::new();
        heap.push(Entry(0.0, src));
        while let Some(Entry(d, u)) = heap.pop() {
            if d > dist[u] {
                continue;
            }
            for &v in &adj[u] {
                let nd = d + linalg::dist(pt(u), pt(v));
                if nd < dist[v] {
                    dist[v] = nd;
                    heap.push(Entry(nd, v));
                }
            }
        }
    }
    matrix
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::generators;
    use approx::assert_relative_eq;

    #[test]
    fn circle_antipodal_barycenters_nearly_diametral() {
        let c = generators::circle(256).unwrap();
        let x = to_mm_space(&c, MetricKind::Euclidean, None);
        let d = x.distance(0, 128);
        assert_relative_eq!(d, 2.0, max_relative = 1e-3);
    }

    #[test]
    fn restriction_preserves_total_weight_identity() {
        let c = generators::sphere(2).unwrap();
        let vol = c.riemannian_volume();
        // Remove simplices until the region holds roughly 5% of the area.
        let mut ids = Vec::new();
        let mut acc = 0.0;
        for s in 0..c.n_simplices() {
            if acc >= 0.05 * vol {
                break;
            }
            acc += c.simplex_measure(s);
            ids.push(s);
        }
        let region = Region::from_simplices(&c, ids).unwrap();
        let x = to_mm_space(&c, MetricKind::Euclidean, Some(&region));
        assert_relative_eq!(
            x.total_mass(),
            vol - region.measure(&c),
            max_relative = 1e-12
        );
        // Pointwise domination by the unrestricted weights.
        let full = to_mm_space(&c, MetricKind::Euclidean, None);
        for i in 0..x.len() {
            assert!(x.weights()[i] <= full.weights()[i] + 1e-15);
        }
    }

    #[test]
    fn graph_geodesic_dominates_euclidean_on_icosphere() {
        let c = generators::sphere(2).unwrap();
        let eu = to_mm_space(&c, MetricKind::Euclidean, None);
        let gg = to_mm_space(&c, MetricKind::GraphGeodesic, None);
        for i in 0..eu.len() {
            for j in (i + 1)..eu.len() {
                assert!(
                    gg.distance(i, j) >= eu.distance(i, j) - 1e-12,
                    "geodesic must dominate chord at ({i},{j})"
                );
            }
        }
    }

    #[test]
    fn triangle_inequality_spot_check() {
        let c = generators::torus(2.0, 0.5, 12).unwrap();
        let x = to_mm_space(&c, MetricKind::Euclidean, None);
        let n = x.len();
        let mut s = 0usize;
        for i in (0..n).step_by(17) {
            for j in (1..n).step_by(23) {
                let k = (i * 31 + j * 7) % n;
                let (a, b, c_) = (x.distance(i, j), x.distance(j, k), x.distance(i, k));
                assert!(c_ <= a + b + 1e-12);
                s += 1;
            }
        }
        assert!(s > 100);
    }
}
