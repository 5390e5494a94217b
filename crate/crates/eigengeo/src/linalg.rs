//! Small helpers for vectors stored as flat `&[f64]` slices.
//!
//! Points live in ambient dimension `m + p` which is only known at run
//! time, so everything here works on slices instead of fixed-size arrays.

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

pub fn scale(a: &[f64], s: f64) -> Vec<f64> {
    a.iter().map(|x| x * s).collect()
}

pub fn axpy(y: &mut [f64], alpha: f64, x: &[f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

/// Length of a segment with the given endpoints.
pub fn segment_length(a: &[f64], b: &[f64]) -> f64 {
    dist(a, b)
}

/// Area of a triangle in any ambient dimension, via the Gram determinant.
pub fn triangle_area(a: &[f64], b: &[f64], c: &[f64]) -> f64 {
    let e1 = sub(b, a);
    let e2 = sub(c, a);
    let g11 = dot(&e1, &e1);
    let g22 = dot(&e2, &e2);
    let g12 = dot(&e1, &e2);
    0.5 * (g11 * g22 - g12 * g12).max(0.0).sqrt()
}

/// Gram–Schmidt orthonormalization of `k` vectors of length `dim`,
/// stored row-major in `rows`. Returns false if the vectors are
/// numerically dependent.
pub fn orthonormalize(rows: &mut [f64], k: usize, dim: usize) -> bool {
    for i in 0..k {
        for j in 0..i {
            let proj = {
                let (a, b) = (&rows[i * dim..(i + 1) * dim], &rows[j * dim..(j + 1) * dim]);
                dot(a, b)
            };
            for d in 0..dim {
                rows[i * dim + d] -= proj * rows[j * dim + d];
            }
        }
        let n = norm(&rows[i * dim..(i + 1) * dim]);
        if n < 1e-12 {
            return false;
        }
        for d in 0..dim {
            rows[i * dim + d] /= n;
        }
    }
    true
}

/// Max deviation of the pairwise inner products from the identity.
pub fn orthonormality_defect(rows: &[f64], k: usize, dim: usize) -> f64 {
    let mut defect: f64 = 0.0;
    for i in 0..k {
        for j in 0..k {
            let g = dot(&rows[i * dim..(i + 1) * dim], &rows[j * dim..(j + 1) * dim]);
            let target = if i == j { 1.0 } else { 0.0 };
            defect = defect.max((g - target).abs());
        }
    }
    defect
}

/// Deterministic per-task seed derivation (splitmix64 step).
pub fn derive_seed(base: u64, index: u64) -> u64 {
    let mut z = base
        .wrapping_add(0x9e3779b97f4a7c15u64.wrapping_mul(index.wrapping_add(1)));
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn triangle_area_matches_cross_product_in_3d() {
        let a = [0.0, 0.0, 0.0];
        let b = [1.0, 0.0, 0.0];
        let c = [0.0, 2.0, 0.0];
        assert_relative_eq!(triangle_area(&a, &b, &c), 1.0);
    }

    #[test]
    fn triangle_area_in_higher_ambient_dimension() {
        // Right triangle with legs 3 and 4 embedded in R^5.
        let a = [0.0, 0.0, 0.0, 1.0, 2.0];
        let b = [3.0, 0.0, 0.0, 1.0, 2.0];
        let c = [0.0, 0.0, 4.0, 1.0, 2.0];
        assert_relative_eq!(triangle_area(&a, &b, &c), 6.0);
    }

    #[test]
    fn orthonormalize_produces_orthonormal_rows() {
        let mut rows = vec![1.0, 1.0, 0.0, 0.0, 1.0, 1.0];
        assert!(orthonormalize(&mut rows, 2, 3));
        assert!(orthonormality_defect(&rows, 2, 3) < 1e-12);
    }

    #[test]
    fn derive_seed_is_stable_and_spread() {
        assert_eq!(derive_seed(42, 0), derive_seed(42, 0));
        assert_ne!(derive_seed(42, 0), derive_seed(42, 1));
        assert_ne!(derive_seed(42, 0), derive_seed(43, 0));
    }
}
