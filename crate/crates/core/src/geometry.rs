//! Low-dimensional geometry on the weight simplex.
//!
//! Points of the simplex in `R^n` are mapped isometrically onto `R^(n-1)`
//! through an orthonormal basis of the sum-zero subspace centred at the
//! barycentre. Only `n = 2` (intervals) and `n = 3` (polygons) are handled.

use crate::error::{Error, Result};

const EPS: f64 = 1e-13;

/// Orthonormal basis of `{x : Σx = 0}` for `n ∈ {2, 3}`.
pub fn plane_basis(n: usize) -> Result<Vec<Vec<f64>>> {
    match n {
        2 => Ok(vec![vec![1.0 / 2f64.sqrt(), -1.0 / 2f64.sqrt()]]),
        3 => {
            let s2 = 2f64.sqrt();
            let s6 = 6f64.sqrt();
            Ok(vec![vec![1.0 / s2, -1.0 / s2, 0.0], vec![1.0 / s6, 1.0 / s6, -2.0 / s6]])
        }
        _ => Err(Error::Unsupported(format!("plane geometry for n = {n}"))),
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Plane coordinates of a simplex point.
pub fn to_plane(basis: &[Vec<f64>], mu: &[f64]) -> Vec<f64> {
    let n = mu.len() as f64;
    let centred: Vec<f64> = mu.iter().map(|m| m - 1.0 / n).collect();
    basis.iter().map(|b| dot(b, &centred)).collect()
}

/// Simplex point from plane coordinates.
pub fn from_plane(basis: &[Vec<f64>], x: &[f64]) -> Vec<f64> {
    let n = basis[0].len();
    (0..n)
        .map(|i| 1.0 / n as f64 + basis.iter().zip(x).map(|(b, c)| b[i] * c).sum::<f64>())
        .collect()
}

pub type Point = [f64; 2];

fn sub(a: Point, b: Point) -> Point {
    [a[0] - b[0], a[1] - b[1]]
}

fn cross(a: Point, b: Point) -> f64 {
    a[0] * b[1] - a[1] * b[0]
}

fn norm(a: Point) -> f64 {
    a[0].hypot(a[1])
}

/// Convex hull in counter-clockwise order (monotone chain). Collinear and
/// duplicate points are dropped.
pub fn convex_hull(points: &[Point]) -> Vec<Point> {
    let mut pts = points.to_vec();
    pts.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    pts.dedup_by(|a, b| norm(sub(*a, *b)) <= EPS);
    if pts.len() <= 2 {
        return pts;
    }
    let mut hull: Vec<Point> = Vec::with_capacity(pts.len() * 2);
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &Point>> =
            if pass == 0 { Box::new(pts.iter()) } else { Box::new(pts.iter().rev()) };
        for &p in iter {
            while hull.len() >= start + 2 {
                let k = hull.len();
                if cross(sub(hull[k - 1], hull[k - 2]), sub(p, hull[k - 2])) <= EPS {
                    hull.pop();
                } else {
                    break;
                }
            }
            hull.push(p);
        }
        hull.pop();
    }
    hull
}

/// A halfplane `a·x >= b` in plane coordinates.
#[derive(Debug, Clone, Copy)]
pub struct HalfPlane {
    pub a: Point,
    pub b: f64,
}

impl HalfPlane {
    fn slack(&self, p: Point) -> f64 {
        self.a[0] * p[0] + self.a[1] * p[1] - self.b
    }
}

/// Clips a convex counter-clockwise polygon by a halfplane.
pub fn clip(polygon: &[Point], h: &HalfPlane) -> Vec<Point> {
    let tol = EPS * (1.0 + norm(h.a));
    let mut out = Vec::with_capacity(polygon.len() + 1);
    for k in 0..polygon.len() {
        let p = polygon[k];
        let q = polygon[(k + 1) % polygon.len()];
        let (sp, sq) = (h.slack(p), h.slack(q));
        if sp >= -tol {
            out.push(p);
        }
        if (sp >= -tol) != (sq >= -tol) {
            let t = sp / (sp - sq);
            out.push([p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])]);
        }
    }
    dedup_ring(out)
}

fn dedup_ring(mut pts: Vec<Point>) -> Vec<Point> {
    pts.dedup_by(|a, b| norm(sub(*a, *b)) <= 1e-12);
    while pts.len() > 1 && norm(sub(pts[0], *pts.last().unwrap())) <= 1e-12 {
        pts.pop();
    }
    pts
}

/// Drops vertices lying within `tol` of the segment joining their neighbours,
/// so slivers collapse to segments before they turn ill-conditioned.
pub fn drop_collinear(mut poly: Vec<Point>, tol: f64) -> Vec<Point> {
    loop {
        let m = poly.len();
        if m <= 2 {
            return poly;
        }
        let flat = (0..m).find(|&k| {
            let (a, w, b) = (poly[(k + m - 1) % m], poly[k], poly[(k + 1) % m]);
            point_segment_distance(w, a, b) <= tol
        });
        match flat {
            Some(k) => {
                poly.remove(k);
            }
            None => return poly,
        }
    }
}

fn point_segment_distance(p: Point, a: Point, b: Point) -> f64 {
    let ab = sub(b, a);
    let len2 = ab[0] * ab[0] + ab[1] * ab[1];
    if len2 <= 0.0 {
        return norm(sub(p, a));
    }
    let t = ((p[0] - a[0]) * ab[0] + (p[1] - a[1]) * ab[1]) / len2;
    let t = t.clamp(0.0, 1.0);
    norm(sub(p, [a[0] + t * ab[0], a[1] + t * ab[1]]))
}

/// Euclidean distance from a point to a convex hull given in CCW order.
pub fn distance_to_hull(p: Point, hull: &[Point]) -> f64 {
    match hull.len() {
        0 => f64::INFINITY,
        1 => norm(sub(p, hull[0])),
        2 => point_segment_distance(p, hull[0], hull[1]),
        k => {
            let inside = (0..k).all(|i| cross(sub(hull[(i + 1) % k], hull[i]), sub(p, hull[i])) >= -EPS);
            if inside {
                0.0
            } else {
                (0..k)
                    .map(|i| point_segment_distance(p, hull[i], hull[(i + 1) % k]))
                    .fold(f64::INFINITY, f64::min)
            }
        }
    }
}

/// Hausdorff distance between the convex hulls of two finite point sets of
/// the simplex. For convex sets the supremum is attained at a vertex.
pub fn hausdorff_between_hulls(a: &[Vec<f64>], b: &[Vec<f64>]) -> Result<f64> {
    let n = a.first().or(b.first()).map_or(0, Vec::len);
    if a.is_empty() || b.is_empty() {
        return Err(Error::InvalidVector("empty point set".into()));
    }
    if a.iter().chain(b).any(|p| p.len() != n) {
        return Err(Error::DimensionMismatch { expected: n, found: 0 });
    }
    if n == 1 {
        return Ok(0.0);
    }
    let basis = plane_basis(n)?;
    let lift = |set: &[Vec<f64>]| -> Vec<Point> {
        set.iter()
            .map(|p| {
                let x = to_plane(&basis, p);
                [x[0], x.get(1).copied().unwrap_or(0.0)]
            })
            .collect()
    };
    let (pa, pb) = (lift(a), lift(b));
    let (ha, hb) = (convex_hull(&pa), convex_hull(&pb));
    let directed = |from: &[Point], hull: &[Point]| {
        from.iter().map(|&p| distance_to_hull(p, hull)).fold(0.0, f64::max)
    };
    Ok(directed(&pa, &hb).max(directed(&pb, &ha)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plane_round_trip() {
        let basis = plane_basis(3).unwrap();
        let mu = [0.2, 0.5, 0.3];
        let back = from_plane(&basis, &to_plane(&basis, &mu));
        for (a, b) in mu.iter().zip(&back) {
            assert!((a - b).abs() < 1e-15);
        }
        // isometry
        let nu = [0.6, 0.1, 0.3];
        let d3 = mu.iter().zip(&nu).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt();
        let (x, y) = (to_plane(&basis, &mu), to_plane(&basis, &nu));
        assert!(((x[0] - y[0]).hypot(x[1] - y[1]) - d3).abs() < 1e-15);
    }

    #[test]
    fn hull_drops_interior_points() {
        let pts = [[0.0, 0.0], [1.0, 0.0], [0.0, 1.0], [0.2, 0.2], [1.0, 0.0]];
        assert_eq!(convex_hull(&pts).len(), 3);
    }

    #[test]
    fn clip_square() {
        let sq = vec![[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]];
        let half = clip(&sq, &HalfPlane { a: [1.0, 0.0], b: 0.5 });
        assert_eq!(half.len(), 4);
        assert!(half.iter().all(|p| p[0] >= 0.5 - 1e-15));
    }

    #[test]
    fn slivers_collapse() {
        let sliver = vec![[0.0, 0.0], [1.0, 0.0], [0.5, 1e-13]];
        assert_eq!(drop_collinear(sliver, 1e-11), vec![[0.0, 0.0], [1.0, 0.0]]);
        // the far tip of a sliver is on the neighbours' line but not between them
        let tip = vec![[0.0, 0.0], [1.0, 0.0], [0.5, 1e-13], [0.2, 1e-13]];
        assert_eq!(drop_collinear(tip, 1e-11), vec![[0.0, 0.0], [1.0, 0.0]]);
        let tri = vec![[0.0, 0.0], [1.0, 0.0], [0.5, 0.5]];
        assert_eq!(drop_collinear(tri.clone(), 1e-11), tri);
    }

    #[test]
    fn hausdorff_examples() {
        let simplex = vec![vec![1.0, 0.0], vec![0.0, 1.0]];
        let mid = vec![vec![0.5, 0.5]];
        let d = hausdorff_between_hulls(&simplex, &mid).unwrap();
        assert!((d - 2f64.sqrt() / 2.0).abs() < 1e-15);
        assert_eq!(hausdorff_between_hulls(&simplex, &simplex).unwrap(), 0.0);
        let tri = vec![vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0], vec![0.0, 0.0, 1.0]];
        let inner = vec![vec![0.5, 0.5, 0.0], vec![0.0, 0.5, 0.5], vec![0.5, 0.0, 0.5]];
        let d = hausdorff_between_hulls(&tri, &inner).unwrap();
        // vertex e1 to edge between (0.5,0.5,0) and (0.5,0,0.5): distance to (0.5,0.25,0.25)
        let expected = (0.25f64 + 0.0625 + 0.0625).sqrt();
        assert!((d - expected).abs() < 1e-12);
    }
}
