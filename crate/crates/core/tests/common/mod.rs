//! Independent oracles shared by the integration suites.
#![allow(dead_code)]

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use sdg_core::geometry::{point, polygon_signed_area, Point, Vec2};
use sdg_core::hdivrec::RtBasis;
use sdg_core::mesh::{generate_triangular, StaggeredMesh};
use sdg_core::spaces::{GradientField, PressureField, VelocityField};
use sdg_core::sparse::SparseMatrix;
use sdg_core::wachspress::PolygonGeom;

/// Unit square cut along its diagonal: 5 primal edges, 6 dual edges, 17 unknowns.
pub fn two_triangle_mesh() -> StaggeredMesh {
    sdg_core::build_staggered(generate_triangular(1).unwrap()).unwrap()
}

/// `B_h^*(v, ψ) = Σ_{e ∈ F_u} (v, [ψ n])_e`, with ψ recovered per sub-triangle
/// and the jump taken across the primal edge.
pub fn bh_star_oracle(mesh: &StaggeredMesh, v: &VelocityField, psi: &GradientField) -> f64 {
    let mut total = 0.0;
    for (e, pe) in mesh.primal_edges().iter().enumerate() {
        let (s0, s1) = pe.region;
        let side = |s: usize| {
            let t = psi.tensor(mesh, s).unwrap() * pe.normal;
            if mesh.subs()[s].cell == pe.cells.0 {
                t
            } else {
                -t
            }
        };
        let mut jump = side(s0);
        if let Some(s1) = s1 {
            jump += side(s1);
        }
        total += pe.length * v.values[e].dot(&jump);
    }
    total
}

/// `b_h^*(q, v) = -Σ_T q_T ∫_T ∇·Π^RT v`.
pub fn b_star_oracle(mesh: &StaggeredMesh, q: &PressureField, v: &VelocityField) -> f64 {
    (0..mesh.num_cells())
        .map(|c| {
            let info = &mesh.cells()[c];
            let basis = RtBasis::new(&mesh.cell_points(c), info.split).unwrap();
            let fluxes = v.cell_fluxes(mesh, c);
            -q.values[c] * basis.reconstruct(&fluxes).divergence() * info.area
        })
        .sum()
}

pub fn to_dense(a: &SparseMatrix) -> DMatrix<f64> {
    let mut d = DMatrix::zeros(a.nrows(), a.ncols());
    for (r, c, v) in a.iter() {
        d[(r, c)] += v;
    }
    d
}

pub fn dense_solve(a: &SparseMatrix, b: &[f64]) -> Vec<f64> {
    let x = to_dense(a)
        .lu()
        .solve(&DVector::from_column_slice(b))
        .expect("dense oracle: singular");
    x.iter().copied().collect()
}

/// Random strictly convex CCW polygon with `m` vertices: sorted angles on a
/// circle with a minimum gap, followed by an orientation-preserving affine map.
pub fn random_convex_polygon<R: Rng>(rng: &mut R, m: usize) -> Vec<Point> {
    loop {
        let mut angles: Vec<f64> = (0..m).map(|_| rng.random_range(0.0..std::f64::consts::TAU)).collect();
        angles.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let min_gap = (0..m)
            .map(|i| {
                let next = if i + 1 < m { angles[i + 1] } else { angles[0] + std::f64::consts::TAU };
                next - angles[i]
            })
            .fold(f64::INFINITY, f64::min);
        if min_gap < 0.25 / m as f64 {
            continue;
        }
        let (a, b, c, d) = (
            rng.random_range(0.5..2.0),
            rng.random_range(-0.5..0.5),
            rng.random_range(-0.5..0.5),
            rng.random_range(0.5..2.0),
        );
        if a * d - b * c < 0.2 {
            continue;
        }
        let shift = Vec2::new(rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0));
        let pts: Vec<Point> = angles
            .iter()
            .map(|t| {
                let (x, y) = (t.cos(), t.sin());
                point(a * x + b * y, c * x + d * y) + shift
            })
            .collect();
        debug_assert!(polygon_signed_area(&pts) > 0.0);
        if PolygonGeom::new(&pts).is_ok() {
            return pts;
        }
    }
}

/// Uniform random point in the polygon, kept away from the boundary by
/// sampling a fan triangle around its vertex average.
pub fn random_interior_point<R: Rng>(rng: &mut R, pts: &[Point]) -> Point {
    let m = pts.len();
    let c = pts.iter().fold(Vec2::zeros(), |a, p| a + p) / m as f64;
    let k = rng.random_range(0..m);
    let (mut s, mut t): (f64, f64) = (rng.random(), rng.random());
    if s + t > 1.0 {
        s = 1.0 - s;
        t = 1.0 - t;
    }
    c + ((pts[k] - c) * s + (pts[(k + 1) % m] - c) * t) * 0.98
}

/// Distance from an interior point to the boundary of a convex CCW polygon.
pub fn boundary_distance(pts: &[Point], x: &Point) -> f64 {
    let m = pts.len();
    (0..m)
        .map(|i| {
            let n = sdg_core::geometry::right_normal(&pts[i], &pts[(i + 1) % m]);
            (pts[i] - x).dot(&n)
        })
        .fold(f64::INFINITY, f64::min)
}

/// Lowest-order Raviart-Thomas basis on a CCW triangle, edge `e_i = (v_i, v_{i+1})`.
pub fn rt0(tri: &[Point], i: usize, x: &Point) -> Vec2 {
    let len = (tri[(i + 1) % 3] - tri[i]).norm();
    let area = polygon_signed_area(tri);
    (x - tri[(i + 2) % 3]) * (len / (2.0 * area))
}

/// Normal trace `φ_i·n` at the point `a + t (b - a)` of edge `(a, b)`, by quintic
/// extrapolation of samples moved towards the split point. The step is a small
/// fraction of the distance to the lines of the other edges, where the
/// coordinates become singular.
pub fn extrapolated_trace(basis: &RtBasis, i: usize, a: &Point, b: &Point, t: f64, n: &Vec2) -> f64 {
    let s = a + (b - a) * t;
    let pts = basis.geom().vertices();
    let m = pts.len();
    let reach = (0..m)
        .map(|k| {
            let (p, q) = (pts[k], pts[(k + 1) % m]);
            let nk = sdg_core::geometry::right_normal(&p, &q);
            (p - s).dot(&nk).abs()
        })
        .filter(|d| *d > 1e-12 * (b - a).norm())
        .fold(f64::INFINITY, f64::min);
    let dir = (basis.split() - s).normalize();
    let eps = 5e-3 * reach;
    let w = [6.0, -15.0, 20.0, -15.0, 6.0, -1.0];
    (1..=6)
        .zip(w)
        .map(|(k, wk)| wk * basis.eval(i, &(s + dir * (k as f64 * eps))).unwrap().dot(n))
        .sum()
}

/// Stratified Monte-Carlo estimate of `∫_T f·φ_i` over the fan triangles of
/// the basis, `samples` points per stratum on a regular sub-grid.
pub fn stratified_moments<R: Rng, F: Fn(Point) -> Vec2>(
    rng: &mut R,
    basis: &RtBasis,
    f: F,
    grid: usize,
) -> Vec<f64> {
    let pts = basis.geom().vertices().to_vec();
    let m = pts.len();
    let xs = basis.split();
    let mut out = vec![0.0; m];
    for t in 0..m {
        let (a, b, c) = (xs, pts[t], pts[(t + 1) % m]);
        let area = basis.sub_areas()[t];
        // split the triangle into grid² congruent sub-triangles
        let n = grid as f64;
        let mut cells = Vec::new();
        for i in 0..grid {
            for j in 0..grid - i {
                let p = |u: f64, v: f64| a + (b - a) * (u / n) + (c - a) * (v / n);
                let (u, v) = (i as f64, j as f64);
                cells.push([p(u, v), p(u + 1.0, v), p(u, v + 1.0)]);
                if i + j + 1 < grid {
                    cells.push([p(u + 1.0, v), p(u + 1.0, v + 1.0), p(u, v + 1.0)]);
                }
            }
        }
        let w = area / cells.len() as f64;
        for tri in cells {
            let (mut r1, mut r2): (f64, f64) = (rng.random(), rng.random());
            if r1 + r2 > 1.0 {
                r1 = 1.0 - r1;
                r2 = 1.0 - r2;
            }
            let x = tri[0] + (tri[1] - tri[0]) * r1 + (tri[2] - tri[0]) * r2;
            let fx = f(x);
            for (i, o) in out.iter_mut().enumerate() {
                *o += w * fx.dot(&basis.eval(i, &x).unwrap());
            }
        }
    }
    out
}

pub fn random_velocity<R: Rng>(rng: &mut R, mesh: &StaggeredMesh) -> VelocityField {
    VelocityField {
        values: (0..mesh.primal_edges().len())
            .map(|_| Vec2::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
            .collect(),
    }
}

/// Random velocity with zero boundary values.
pub fn random_interior_velocity<R: Rng>(rng: &mut R, mesh: &StaggeredMesh) -> VelocityField {
    let mut v = random_velocity(rng, mesh);
    for (e, pe) in mesh.primal_edges().iter().enumerate() {
        if pe.is_boundary() {
            v.values[e] = Vec2::zeros();
        }
    }
    v
}

pub fn random_gradient<R: Rng>(rng: &mut R, mesh: &StaggeredMesh) -> GradientField {
    GradientField {
        traces: (0..mesh.dual_edges().len())
            .map(|_| Vec2::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
            .collect(),
    }
}

pub fn random_pressure<R: Rng>(rng: &mut R, mesh: &StaggeredMesh) -> PressureField {
    PressureField {
        values: (0..mesh.num_cells()).map(|_| rng.random_range(-1.0..1.0)).collect(),
    }
}

pub fn inf_norm(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}
