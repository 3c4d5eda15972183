//! Small planar geometry helpers shared by the mesh and basis code.

use nalgebra::{Matrix2, Vector2};

pub type Point = Vector2<f64>;
pub type Vec2 = Vector2<f64>;
pub type Tensor = Matrix2<f64>;

#[inline]
pub fn point(x: f64, y: f64) -> Point {
    Point::new(x, y)
}

/// 2D cross product `a × b`.
#[inline]
pub fn cross(a: &Vec2, b: &Vec2) -> f64 {
    a.x * b.y - a.y * b.x
}

/// Counterclockwise rotation by 90 degrees.
#[inline]
pub fn rotate_ccw(v: &Vec2) -> Vec2 {
    Vec2::new(-v.y, v.x)
}

/// Signed area of the triangle `(a, b, c)`; positive when counterclockwise.
#[inline]
pub fn triangle_signed_area(a: &Point, b: &Point, c: &Point) -> f64 {
    0.5 * cross(&(b - a), &(c - a))
}

/// Signed area by the shoelace formula.
pub fn polygon_signed_area(pts: &[Point]) -> f64 {
    let m = pts.len();
    let mut s = 0.0;
    for i in 0..m {
        let a = &pts[i];
        let b = &pts[(i + 1) % m];
        s += a.x * b.y - a.y * b.x;
    }
    0.5 * s
}

/// Area centroid of a simple polygon.
pub fn polygon_centroid(pts: &[Point]) -> Point {
    let m = pts.len();
    // shift to the first vertex to limit cancellation
    let o = pts[0];
    let mut a = 0.0;
    let mut c = Vec2::zeros();
    for i in 0..m {
        let p = pts[i] - o;
        let q = pts[(i + 1) % m] - o;
        let w = p.x * q.y - p.y * q.x;
        a += w;
        c += (p + q) * w;
    }
    o + c / (3.0 * a)
}

/// Largest vertex-to-vertex distance.
pub fn diameter(pts: &[Point]) -> f64 {
    let mut d: f64 = 0.0;
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            d = d.max((pts[i] - pts[j]).norm());
        }
    }
    d
}

/// Unit normal to the directed segment `a → b`, pointing to its right.
///
/// For a counterclockwise polygon this is the outward normal of the edge.
#[inline]
pub fn right_normal(a: &Point, b: &Point) -> Vec2 {
    let t = b - a;
    Vec2::new(t.y, -t.x) / t.norm()
}

/// Ratio of the diameter to the diameter of the inscribed circle.
pub fn triangle_aspect_ratio(a: &Point, b: &Point, c: &Point) -> f64 {
    let la = (b - c).norm();
    let lb = (c - a).norm();
    let lc = (a - b).norm();
    let area = triangle_signed_area(a, b, c).abs();
    let inradius = 2.0 * area / (la + lb + lc);
    la.max(lb).max(lc) / (2.0 * inradius)
}
