//! Wachspress barycentric coordinates on strictly convex polygons.
//!
//! With vertices `v_0..v_{m-1}` (counterclockwise), edge `e_i = (v_i, v_{i+1})`
//! and its outward unit normal `n_i`, the distance from `x` to the edge line is
//! `d_i = (v_i - x)·n_i`. The weight attached to vertex `v_i`, which sits
//! between edges `e_{i-1}` and `e_i`, is
//!
//! ```text
//! w_i = det(n_{i-1}, n_i) / (d_{i-1} d_i)
//! ```
//!
//! and `λ_i = w_i / Σ_j w_j`. Since `∇d_k = -n_k`, `∇w_i / w_i = n_{i-1}/d_{i-1} + n_i/d_i`,
//! and `∇λ_i = λ_i (R_i - Σ_j λ_j R_j)` with `R_i = ∇w_i / w_i`.

use thiserror::Error;

use crate::geometry::{cross, diameter, polygon_signed_area, right_normal, rotate_ccw, Point, Vec2};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum WachspressError {
    #[error("polygon needs at least 3 vertices")]
    TooFewVertices,
    #[error("polygon is not strictly convex and counterclockwise")]
    NotConvex,
    #[error("point ({x}, {y}) is not strictly inside the polygon (distance {distance:e} to edge {edge})")]
    OutsideDomain { x: f64, y: f64, edge: usize, distance: f64 },
}

/// Geometry of one convex polygon, ready for coordinate evaluation.
#[derive(Debug, Clone)]
pub struct PolygonGeom {
    vertices: Vec<Point>,
    normals: Vec<Vec2>,
    /// `det(n_{i-1}, n_i)` per vertex.
    corner: Vec<f64>,
    diam: f64,
}

/// Coordinates and gradients at one point.
#[derive(Debug, Clone)]
pub struct CoordEval {
    pub lambda: Vec<f64>,
    pub grad: Vec<Vec2>,
}

impl PolygonGeom {
    pub fn new(vertices: &[Point]) -> Result<Self, WachspressError> {
        let m = vertices.len();
        if m < 3 {
            return Err(WachspressError::TooFewVertices);
        }
        if polygon_signed_area(vertices) <= 0.0 {
            return Err(WachspressError::NotConvex);
        }
        let normals: Vec<Vec2> = (0..m).map(|i| right_normal(&vertices[i], &vertices[(i + 1) % m])).collect();
        let corner: Vec<f64> = (0..m).map(|i| cross(&normals[(i + m - 1) % m], &normals[i])).collect();
        if corner.iter().any(|&c| c <= 1e-14) {
            return Err(WachspressError::NotConvex);
        }
        Ok(Self {
            vertices: vertices.to_vec(),
            normals,
            corner,
            diam: diameter(vertices),
        })
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    /// Outward unit normal of edge `e_i`.
    pub fn normal(&self, i: usize) -> Vec2 {
        self.normals[i]
    }

    pub fn diameter(&self) -> f64 {
        self.diam
    }

    fn distances(&self, x: &Point) -> Result<Vec<f64>, WachspressError> {
        let eps = 1e-12 * self.diam;
        self.vertices
            .iter()
            .zip(&self.normals)
            .enumerate()
            .map(|(i, (v, n))| {
                let d = (v - x).dot(n);
                if d > eps {
                    Ok(d)
                } else {
                    Err(WachspressError::OutsideDomain {
                        x: x.x,
                        y: x.y,
                        edge: i,
                        distance: d,
                    })
                }
            })
            .collect()
    }

    /// `λ_0..λ_{m-1}` at `x`.
    pub fn coords(&self, x: &Point) -> Result<Vec<f64>, WachspressError> {
        let d = self.distances(x)?;
        let m = d.len();
        let mut w: Vec<f64> = (0..m).map(|i| self.corner[i] / (d[(i + m - 1) % m] * d[i])).collect();
        let total: f64 = w.iter().sum();
        for wi in &mut w {
            *wi /= total;
        }
        Ok(w)
    }

    /// Coordinates and their gradients in one pass.
    pub fn eval(&self, x: &Point) -> Result<CoordEval, WachspressError> {
        let d = self.distances(x)?;
        let m = d.len();
        let scaled: Vec<Vec2> = self.normals.iter().zip(&d).map(|(n, di)| n / *di).collect();
        let mut lambda: Vec<f64> = (0..m).map(|i| self.corner[i] / (d[(i + m - 1) % m] * d[i])).collect();
        let total: f64 = lambda.iter().sum();
        for l in &mut lambda {
            *l /= total;
        }
        // ∇λ_i = λ_i Σ_k λ_k (r_i - r_k) with r_i = n_{i-1}/d_{i-1} + n_i/d_i.
        // Shared edges drop out of each difference exactly, which keeps the
        // gradient accurate next to an edge where d_j -> 0.
        let edges = |i: usize| [(i + m - 1) % m, i];
        let grad = (0..m)
            .map(|i| {
                let mut acc = Vec2::zeros();
                for k in (0..m).filter(|&k| k != i) {
                    let (ei, ek) = (edges(i), edges(k));
                    let mut diff = Vec2::zeros();
                    for e in ei.iter().filter(|e| !ek.contains(e)) {
                        diff += scaled[*e];
                    }
                    for e in ek.iter().filter(|e| !ei.contains(e)) {
                        diff -= scaled[*e];
                    }
                    acc += diff * lambda[k];
                }
                acc * lambda[i]
            })
            .collect();
        Ok(CoordEval { lambda, grad })
    }

    pub fn grads(&self, x: &Point) -> Result<Vec<Vec2>, WachspressError> {
        Ok(self.eval(x)?.grad)
    }

    /// `curl λ_i = (-∂_y λ_i, ∂_x λ_i)`.
    pub fn curls(&self, x: &Point) -> Result<Vec<Vec2>, WachspressError> {
        Ok(self.eval(x)?.grad.iter().map(rotate_ccw).collect())
    }

    /// Nodal interpolant `Σ_i values[i] λ_i(x)`.
    pub fn interp_nodal(&self, values: &[f64], x: &Point) -> Result<f64, WachspressError> {
        assert_eq!(values.len(), self.num_vertices());
        Ok(self.coords(x)?.iter().zip(values).map(|(l, v)| l * v).sum())
    }
}
