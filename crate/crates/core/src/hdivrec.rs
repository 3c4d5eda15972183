//! Lowest-order H(div) basis on convex polygons and the flux reconstruction
//! `Π^RT v = Σ_i r_i(v) φ_i`.
//!
//! For a cell with edges `e_i = (v_i, v_{i+1})`, split point `x*` and fan
//! triangle areas `|T_i| = |(x*, v_i, v_{i+1})|`,
//!
//! ```text
//! φ_i(x) = c_{i,0} (x - x*) + Σ_k c_{i,k} curl λ_k(x)
//! c_{i,0} = |e_i| / (2|T|)
//! b_{i,l} = δ_{il} |e_l| - |e_i| |T_l| / |T|
//! c_{i,k} = -(1/m) Σ_{l=1}^{m-1} l · b_{i,(k+l) mod m}
//! ```
//!
//! with `λ_k` the Wachspress coordinates. The normal component of `φ_i` on
//! `e_j` is `δ_ij` and `∇·φ_i = 2 c_{i,0}`.

use crate::geometry::{polygon_signed_area, triangle_signed_area, Point, Vec2};
use crate::quadrature::{edge_rule, integrate_segment, integrate_triangle, triangle_rule, QuadratureError};
use crate::wachspress::{PolygonGeom, WachspressError};

pub const DEFAULT_MOMENT_DEGREE: usize = 8;

#[derive(Debug, Clone)]
pub struct RtBasis {
    geom: PolygonGeom,
    split: Point,
    area: f64,
    sub_areas: Vec<f64>,
    edge_lengths: Vec<f64>,
    c0: Vec<f64>,
    /// `c[i][k]`
    c: Vec<Vec<f64>>,
    b: Vec<Vec<f64>>,
}

impl RtBasis {
    pub fn new(vertices: &[Point], split: Point) -> Result<Self, WachspressError> {
        let geom = PolygonGeom::new(vertices)?;
        let m = vertices.len();
        let area = polygon_signed_area(vertices);
        let sub_areas: Vec<f64> = (0..m)
            .map(|i| triangle_signed_area(&split, &vertices[i], &vertices[(i + 1) % m]))
            .collect();
        if sub_areas.iter().any(|&a| a <= 0.0) {
            return Err(WachspressError::OutsideDomain {
                x: split.x,
                y: split.y,
                edge: sub_areas.iter().position(|&a| a <= 0.0).unwrap(),
                distance: 0.0,
            });
        }
        let edge_lengths: Vec<f64> = (0..m).map(|i| (vertices[(i + 1) % m] - vertices[i]).norm()).collect();
        let c0: Vec<f64> = edge_lengths.iter().map(|l| l / (2.0 * area)).collect();
        let b: Vec<Vec<f64>> = (0..m)
            .map(|i| {
                (0..m)
                    .map(|l| {
                        let delta = if i == l { edge_lengths[l] } else { 0.0 };
                        delta - edge_lengths[i] * sub_areas[l] / area
                    })
                    .collect()
            })
            .collect();
        let c: Vec<Vec<f64>> = (0..m)
            .map(|i| {
                (0..m)
                    .map(|k| -(1..m).map(|l| l as f64 * b[i][(k + l) % m]).sum::<f64>() / m as f64)
                    .collect()
            })
            .collect();
        Ok(Self {
            geom,
            split,
            area,
            sub_areas,
            edge_lengths,
            c0,
            c,
            b,
        })
    }

    pub fn num_sides(&self) -> usize {
        self.c0.len()
    }

    pub fn geom(&self) -> &PolygonGeom {
        &self.geom
    }

    pub fn split(&self) -> Point {
        self.split
    }

    pub fn area(&self) -> f64 {
        self.area
    }

    pub fn sub_areas(&self) -> &[f64] {
        &self.sub_areas
    }

    pub fn edge_lengths(&self) -> &[f64] {
        &self.edge_lengths
    }

    pub fn c0(&self, i: usize) -> f64 {
        self.c0[i]
    }

    pub fn c(&self, i: usize, k: usize) -> f64 {
        self.c[i][k]
    }

    pub fn b(&self, i: usize, l: usize) -> f64 {
        self.b[i][l]
    }

    /// `φ_i(x)`.
    pub fn eval(&self, i: usize, x: &Point) -> Result<Vec2, WachspressError> {
        Ok(self.eval_all(x)?.swap_remove(i))
    }

    /// All `φ_0(x)..φ_{m-1}(x)` sharing one coordinate evaluation.
    pub fn eval_all(&self, x: &Point) -> Result<Vec<Vec2>, WachspressError> {
        let curls = self.geom.curls(x)?;
        let r = x - self.split;
        Ok((0..self.num_sides())
            .map(|i| {
                let mut v = r * self.c0[i];
                for (k, ck) in self.c[i].iter().enumerate() {
                    v += curls[k] * *ck;
                }
                v
            })
            .collect())
    }

    pub fn divergence(&self, i: usize) -> f64 {
        2.0 * self.c0[i]
    }

    /// Edge-averaged outward normal fluxes `r_i = |e_i|⁻¹ ∫_{e_i} v·n_i` of a
    /// smooth field, by 8-point Gauss quadrature.
    pub fn edge_fluxes<F: Fn(Point) -> Vec2>(&self, v: F) -> Vec<f64> {
        let rule = edge_rule(8).expect("8-point rule");
        let pts = self.geom.vertices();
        let m = pts.len();
        (0..m)
            .map(|i| {
                let n = self.geom.normal(i);
                let a = pts[i];
                let b = pts[(i + 1) % m];
                integrate_segment(rule, &a, &b, |x| v(x).dot(&n)) / self.edge_lengths[i]
            })
            .collect()
    }

    /// The reconstructed field `Σ_i r_i φ_i` for the given fluxes.
    pub fn reconstruct<'a>(&'a self, fluxes: &[f64]) -> Reconstruction<'a> {
        assert_eq!(fluxes.len(), self.num_sides());
        Reconstruction {
            basis: self,
            fluxes: fluxes.to_vec(),
        }
    }

    /// `∫_T f·φ_i dx` for every `i`, integrating each fan triangle with the
    /// symmetric rule of the given degree.
    pub fn moments<F: Fn(Point) -> Vec2>(&self, f: F, degree: usize) -> Result<Vec<f64>, QuadratureError> {
        let rule = triangle_rule(degree)?;
        let m = self.num_sides();
        let pts = self.geom.vertices();
        let mut out = vec![0.0; m];
        for t in 0..m {
            let a = self.split;
            let b = pts[t];
            let c = pts[(t + 1) % m];
            let jac = 2.0 * self.sub_areas[t];
            for (p, w) in rule.points.iter().zip(&rule.weights) {
                let x = a + (b - a) * p[0] + (c - a) * p[1];
                let phis = self.eval_all(&x).expect("quadrature node inside cell");
                let fx = f(x);
                for (o, phi) in out.iter_mut().zip(&phis) {
                    *o += w * jac * fx.dot(phi);
                }
            }
        }
        Ok(out)
    }

    /// `‖φ_i‖_{0,T}` by fan quadrature.
    pub fn basis_l2_norm(&self, i: usize) -> f64 {
        let rule = triangle_rule(DEFAULT_MOMENT_DEGREE).expect("degree 8 rule");
        let pts = self.geom.vertices();
        let m = pts.len();
        let mut s = 0.0;
        for t in 0..m {
            s += integrate_triangle(rule, &self.split, &pts[t], &pts[(t + 1) % m], |x| {
                self.eval(i, &x).expect("interior node").norm_squared()
            });
        }
        s.sqrt()
    }
}

/// A cell-local reconstructed field.
#[derive(Debug, Clone)]
pub struct Reconstruction<'a> {
    basis: &'a RtBasis,
    fluxes: Vec<f64>,
}

impl Reconstruction<'_> {
    pub fn eval(&self, x: &Point) -> Result<Vec2, WachspressError> {
        let phis = self.basis.eval_all(x)?;
        Ok(phis.iter().zip(&self.fluxes).fold(Vec2::zeros(), |acc, (p, r)| acc + p * *r))
    }

    /// The constant divergence `Σ_i 2 c_{i,0} r_i`.
    pub fn divergence(&self) -> f64 {
        self.fluxes.iter().enumerate().map(|(i, r)| self.basis.divergence(i) * r).sum()
    }

    pub fn fluxes(&self) -> &[f64] {
        &self.fluxes
    }
}
