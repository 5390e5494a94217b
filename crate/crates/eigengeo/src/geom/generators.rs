//! Closed test-fixture generators: circles, icospheres, tori, ellipsoids,
//! and spiky spheres (a sphere that is convex outside a few small caps).

use crate::error::{Error, Result};
use crate::geom::mesh::{Cells, ImmersedComplex};
use std::collections::HashMap;
use std::f64::consts::PI;

/// Regular `n`-gon inscribed in the unit circle (closed polyline in R²).
pub fn circle(n: usize) -> Result<ImmersedComplex> {
    if n < 3 {
        return Err(Error::ResolutionTooSmall {
            message: format!("a closed polyline needs at least 3 segments, got {n}"),
        });
    }
    let mut coords = Vec::with_capacity(2 * n);
    for i in 0..n {
        let t = 2.0 * PI * i as f64 / n as f64;
        coords.push(t.cos());
        coords.push(t.sin());
    }
    let segs = (0..n).map(|i| [i, (i + 1) % n]).collect();
    ImmersedComplex::new(2, coords, Cells::Segments(segs))
}

/// Icosphere: the icosahedron subdivided `subdiv` times, vertices
/// projected to the unit sphere. Has `20 * 4^subdiv` triangles.
pub fn sphere(subdiv: usize) -> Result<ImmersedComplex> {
    let (coords, tris) = icosphere_raw(subdiv);
    ImmersedComplex::new(3, coords, Cells::Triangles(tris))
}

/// Icosphere scaled anisotropically to semi-axes `(a, b, c)`.
pub fn ellipsoid(a: f64, b: f64, c: f64, subdiv: usize) -> Result<ImmersedComplex> {
    if a <= 0.0 || b <= 0.0 || c <= 0.0 {
        return Err(Error::ResolutionTooSmall {
            message: "ellipsoid semi-axes must be positive".into(),
        });
    }
    let (mut coords, tris) = icosphere_raw(subdiv);
    for v in coords.chunks_mut(3) {
        v[0] *= a;
        v[1] *= b;
        v[2] *= c;
    }
    ImmersedComplex::new(3, coords, Cells::Triangles(tris))
}

/// Torus of revolution with major radius `big_r`, minor radius `small_r`,
/// on a `res x res` grid (so `2 res^2` triangles).
pub fn torus(big_r: f64, small_r: f64, res: usize) -> Result<ImmersedComplex> {
    if res < 3 {
        return Err(Error::ResolutionTooSmall {
            message: format!("torus needs res >= 3, got {res}"),
        });
    }
    if small_r <= 0.0 || big_r <= small_r {
        return Err(Error::ResolutionTooSmall {
            message: "torus needs 0 < r < R".into(),
        });
    }
    let mut coords = Vec::with_capacity(3 * res * res);
    for i in 0..res {
        let theta = 2.0 * PI * i as f64 / res as f64;
        for j in 0..res {
            let phi = 2.0 * PI * j as f64 / res as f64;
            let ring = big_r + small_r * phi.cos();
            coords.push(ring * theta.cos());
            coords.push(ring * theta.sin());
            coords.push(small_r * phi.sin());
        }
    }
    let idx = |i: usize, j: usize| (i % res) * res + (j % res);
    let mut tris = Vec::with_capacity(2 * res * res);
    for i in 0..res {
        for j in 0..res {
            tris.push([idx(i, j), idx(i + 1, j), idx(i + 1, j + 1)]);
            tris.push([idx(i, j), idx(i + 1, j + 1), idx(i, j + 1)]);
        }
    }
    ImmersedComplex::new(3, coords, Cells::Triangles(tris))
}

/// Unit icosphere with `spike_count` radial bumps. Vertices within
/// angular distance `spike_radius` of a spike center are pushed outward
/// by up to `spike_height`, with a smooth cosine profile; everything
/// else is untouched, so the mesh stays convex outside the caps.
pub fn spiky_sphere(
    subdiv: usize,
    spike_count: usize,
    spike_height: f64,
    spike_radius: f64,
) -> Result<ImmersedComplex> {
    if spike_radius <= 0.0 || spike_radius >= PI / 2.0 {
        return Err(Error::ResolutionTooSmall {
            message: "spike_radius must lie in (0, pi/2)".into(),
        });
    }
    let (mut coords, tris) = icosphere_raw(subdiv);
    let centers = fibonacci_directions(spike_count);
    for v in coords.chunks_mut(3) {
        let mut lift: f64 = 0.0;
        for c in &centers {
            let cosang = (v[0] * c[0] + v[1] * c[1] + v[2] * c[2]).clamp(-1.0, 1.0);
            let ang = cosang.acos();
            if ang < spike_radius {
                let bump = 0.5 * (1.0 + (PI * ang / spike_radius).cos());
                lift = lift.max(spike_height * bump);
            }
        }
        if lift > 0.0 {
            let s = 1.0 + lift;
            v[0] *= s;
            v[1] *= s;
            v[2] *= s;
        }
    }
    ImmersedComplex::new(3, coords, Cells::Triangles(tris))
}

/// The simplices a spiky sphere's spikes occupy: triangles with a vertex
/// strictly outside the unit sphere.
pub fn spike_region(spiky: &ImmersedComplex) -> Result<crate::geom::mesh::Region> {
    let ids = (0..spiky.n_simplices())
        .filter(|&s| {
            spiky
                .cells()
                .vertex_ids(s)
                .iter()
                .any(|&v| crate::linalg::norm(spiky.vertex(v)) > 1.0 + 1e-9)
        })
        .collect();
    crate::geom::mesh::Region::from_simplices(spiky, ids)
}

/// `count` well-spread unit directions (spiral points).
fn fibonacci_directions(count: usize) -> Vec<[f64; 3]> {
    if count == 0 {
        return Vec::new();
    }
    if count == 1 {
        return vec![[0.0, 0.0, 1.0]];
    }
    let golden = PI * (3.0 - 5.0_f64.sqrt());
    (0..count)
        .map(|i| {
            let z = 1.0 - 2.0 * i as f64 / (count as f64 - 1.0).max(1.0);
            let z = z.clamp(-1.0, 1.0);
            let rad = (1.0 - z * z).sqrt();
            let th = golden * i as f64;
            [rad * th.cos(), rad * th.sin(), z]
        })
        .collect()
}

fn icosphere_raw(subdiv: usize) -> (Vec<f64>, Vec<[usize; 3]>) {
    // Icosahedron from the three golden rectangles.
    let phi = (1.0 + 5.0_f64.sqrt()) / 2.0;
    let raw = [
        [-1.0, phi, 0.0],
        [1.0, phi, 0.0],
        [-1.0, -phi, 0.0],
        [1.0, -phi, 0.0],
        [0.0, -1.0, phi],
        [0.0, 1.0, phi],
        [0.0, -1.0, -phi],
        [0.0, 1.0, -phi],
        [phi, 0.0, -1.0],
        [phi, 0.0, 1.0],
        [-phi, 0.0, -1.0],
        [-phi, 0.0, 1.0],
    ];
    let mut verts: Vec<[f64; 3]> = raw.iter().map(|v| normalize(*v)).collect();
    let mut tris: Vec<[usize; 3]> = vec![
        [0, 11, 5],
        [0, 5, 1],
        [0, 1, 7],
        [0, 7, 10],
        [0, 10, 11],
        [1, 5, 9],
        [5, 11, 4],
        [11, 10, 2],
        [10, 7, 6],
        [7, 1, 8],
        [3, 9, 4],
        [3, 4, 2],
        [3, 2, 6],
        [3, 6, 8],
        [3, 8, 9],
        [4, 9, 5],
        [2, 4, 11],
        [6, 2, 10],
        [8, 6, 7],
        [9, 8, 1],
    ];
    for _ in 0..subdiv {
        let mut midpoint: HashMap<(usize, usize), usize> = HashMap::new();
        let mut next = Vec::with_capacity(tris.len() * 4);
        for tri in &tris {
            let mut mid = [0usize; 3];
            for e in 0..3 {
                let (a, b) = (tri[e], tri[(e + 1) % 3]);
                let key = (a.min(b), a.max(b));
                mid[e] = *midpoint.entry(key).or_insert_with(|| {
                    let (va, vb) = (verts[a], verts[b]);
                    verts.push(normalize([
                        0.5 * (va[0] + vb[0]),
                        0.5 * (va[1] + vb[1]),
                        0.5 * (va[2] + vb[2]),
                    ]));
                    verts.len() - 1
                });
            }
            next.push([tri[0], mid[0], mid[2]]);
            next.push([tri[1], mid[1], mid[0]]);
            next.push([tri[2], mid[2], mid[1]]);
            next.push([mid[0], mid[1], mid[2]]);
        }
        tris = next;
    }
    let coords = verts.iter().flat_map(|v| v.iter().copied()).collect();
    (coords, tris)
}

fn normalize(v: [f64; 3]) -> [f64; 3] {
    let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    [v[0] / n, v[1] / n, v[2] / n]
}

/// A shape request, parseable from strings like `sphere(3)` or
/// `torus(2,0.5,64)` — the grammar the CLI and config files use.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ShapeSpec {
    Circle { n: usize },
    Sphere { subdiv: usize },
    Torus { big_r: f64, small_r: f64, res: usize },
    Ellipsoid { a: f64, b: f64, c: f64, subdiv: usize },
    SpikySphere {
        subdiv: usize,
        spike_count: usize,
        spike_height: f64,
        spike_radius: f64,
    },
}

impl ShapeSpec {
    pub fn build(&self) -> Result<ImmersedComplex> {
        match *self {
            ShapeSpec::Circle { n } => circle(n),
            ShapeSpec::Sphere { subdiv } => sphere(subdiv),
            ShapeSpec::Torus {
                big_r,
                small_r,
                res,
            } => torus(big_r, small_r, res),
            ShapeSpec::Ellipsoid { a, b, c, subdiv } => ellipsoid(a, b, c, subdiv),
            ShapeSpec::SpikySphere {
                subdiv,
                spike_count,
                spike_height,
                spike_radius,
            } => spiky_sphere(subdiv, spike_count, spike_height, spike_radius),
        }
    }

    /// Stable identifier used in report provenance.
    pub fn id(&self) -> String {
        match self {
            ShapeSpec::Circle { n } => format!("circle({n})"),
            ShapeSpec::Sphere { subdiv } => format!("sphere({subdiv})"),
            ShapeSpec::Torus {
                big_r,
                small_r,
                res,
            } => format!("torus({big_r},{small_r},{res})"),
            ShapeSpec::Ellipsoid { a, b, c, subdiv } => {
                format!("ellipsoid({a},{b},{c},{subdiv})")
            }
            ShapeSpec::SpikySphere {
                subdiv,
                spike_count,
                spike_height,
                spike_radius,
            } => format!("spiky_sphere({subdiv},{spike_count},{spike_height},{spike_radius})"),
        }
    }
}

impl std::str::FromStr for ShapeSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (name, args) = match s.find('(') {
            Some(open) if s.ends_with(')') => {
                (&s[..open], s[open + 1..s.len() - 1].to_string())
            }
            _ => (s, String::new()),
        };
        let parts: Vec<&str> = if args.trim().is_empty() {
            Vec::new()
        } else {
            args.split(',').map(|p| p.trim()).collect()
        };
        let bad = || Error::UnsupportedShape { name: s.to_string() };
        let fnum = |i: usize| -> Result<f64> { parts.get(i).ok_or_else(bad)?.parse().map_err(|_| bad()) };
        let inum = |i: usize| -> Result<usize> { parts.get(i).ok_or_else(bad)?.parse().map_err(|_| bad()) };
        match name {
            "circle" => Ok(ShapeSpec::Circle { n: inum(0)? }),
            "sphere" => Ok(ShapeSpec::Sphere { subdiv: inum(0)? }),
            "torus" => Ok(ShapeSpec::Torus {
                big_r: fnum(0)?,
                small_r: fnum(1)?,
                res: inum(2)?,
            }),
            "ellipsoid" => Ok(ShapeSpec::Ellipsoid {
                a: fnum(0)?,
                b: fnum(1)?,
                c: fnum(2)?,
                subdiv: inum(3)?,
            }),
            "spiky_sphere" => Ok(ShapeSpec::SpikySphere {
                subdiv: inum(0)?,
                spike_count: inum(1)?,
                spike_height: fnum(2)?,
                spike_radius: fnum(3)?,
            }),
            _ => Err(bad()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn square_polyline_perimeter() {
        // Inscribed n-gon perimeter is 2 n sin(pi/n); n = 4 gives 4*sqrt(2).
        let c = circle(4).unwrap();
        assert_relative_eq!(c.riemannian_volume(), 8.0 * (PI / 4.0).sin(), epsilon = 1e-12);
        assert!(c.is_closed());
    }

    #[test]
    fn circle_volume_converges_to_circumference() {
        let c = circle(1024).unwrap();
        assert_relative_eq!(c.riemannian_volume(), 2.0 * PI, max_relative = 1e-4);
    }

    #[test]
    fn too_few_segments_rejected() {
        assert!(circle(2).is_err());
    }

    #[test]
    fn icosphere_counts_and_area() {
        let s = sphere(3).unwrap();
        assert_eq!(s.n_simplices(), 1280);
        assert_eq!(s.n_vertices(), 642);
        assert!(s.is_closed());
        assert_relative_eq!(s.riemannian_volume(), 4.0 * PI, max_relative = 5e-3);
    }

    #[test]
    fn generator_volumes_increase_with_resolution() {
        let circles: Vec<f64> = [8, 32, 128, 512]
            .iter()
            .map(|&n| circle(n).unwrap().riemannian_volume())
            .collect();
        for w in circles.windows(2) {
            assert!(w[0] < w[1] && w[1] < 2.0 * PI);
        }
        let spheres: Vec<f64> = [0, 1, 2, 3]
            .iter()
            .map(|&s| sphere(s).unwrap().riemannian_volume())
            .collect();
        for w in spheres.windows(2) {
            assert!(w[0] < w[1] && w[1] < 4.0 * PI);
        }
    }

    #[test]
    fn torus_is_closed_with_correct_area() {
        let t = torus(2.0, 0.5, 64).unwrap();
        assert!(t.is_closed());
        assert_eq!(t.n_simplices(), 2 * 64 * 64);
        assert_relative_eq!(
            t.riemannian_volume(),
            4.0 * PI * PI * 2.0 * 0.5,
            max_relative = 1e-2
        );
    }

    #[test]
    fn spiky_sphere_perturbs_only_caps() {
        let s = spiky_sphere(3, 2, 0.5, 0.25).unwrap();
        assert!(s.is_closed());
        let mut outside = 0usize;
        for v in 0..s.n_vertices() {
            let r = crate::linalg::norm(s.vertex(v));
            assert!(r >= 1.0 - 1e-12);
            if r > 1.0 + 1e-9 {
                outside += 1;
            }
        }
        assert!(outside > 0, "some vertices must be lifted");
        assert!(outside < s.n_vertices() / 4, "most vertices must stay put");
    }

    #[test]
    fn shape_spec_parses_and_round_trips() {
        let spec: ShapeSpec = "torus(2,0.5,64)".parse().unwrap();
        assert_eq!(
            spec,
            ShapeSpec::Torus {
                big_r: 2.0,
                small_r: 0.5,
                res: 64
            }
        );
        assert_eq!(spec.id(), "torus(2,0.5,64)");
        assert!("dodecahedron(1)".parse::<ShapeSpec>().is_err());
    }
}
