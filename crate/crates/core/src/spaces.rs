//! Discrete fields, interpolation operators, norms and error functionals.
//!
//! * velocity: one vector per primal edge, constant on the dual region `D(e)`;
//!   boundary edges carry Dirichlet values.
//! * velocity gradient: one vector `q_e = ψ n_e` per dual edge; the tensor on
//!   a sub-triangle is recovered from its two dual-edge traces, so normal
//!   continuity across dual edges holds by construction.
//! * pressure: one value per primal cell.

use thiserror::Error;

use crate::geometry::{Point, Tensor, Vec2};
use crate::mesh::StaggeredMesh;
use crate::quadrature::{edge_rule, integrate_segment, integrate_triangle, triangle_rule, QuadRule};

/// Degree of the triangle rule used by interpolants and error norms.
pub const ERROR_QUADRATURE_DEGREE: usize = 8;

#[derive(Debug, Error, Clone, PartialEq)]
#[error("sub-triangle {sub}: dual-edge normals are parallel (det {det:e})")]
pub struct SingularTrace {
    pub sub: usize,
    pub det: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VelocityField {
    pub values: Vec<Vec2>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GradientField {
    pub traces: Vec<Vec2>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PressureField {
    pub values: Vec<f64>,
}

impl VelocityField {
    pub fn zeros(mesh: &StaggeredMesh) -> Self {
        Self {
            values: vec![Vec2::zeros(); mesh.primal_edges().len()],
        }
    }

    /// Value on sub-triangle `sub` (that of its base edge).
    pub fn on_sub(&self, mesh: &StaggeredMesh, sub: usize) -> Vec2 {
        self.values[mesh.subs()[sub].base_edge]
    }

    /// Interior values flattened as `[x_0, y_0, x_1, y_1, ...]` over interior edges.
    pub fn interior_vector(&self, mesh: &StaggeredMesh) -> Vec<f64> {
        mesh.interior_edges()
            .iter()
            .flat_map(|&e| [self.values[e].x, self.values[e].y])
            .collect()
    }

    /// Outward normal flux averages `r_i = v_{e_i}·n_i` of cell `c`.
    pub fn cell_fluxes(&self, mesh: &StaggeredMesh, c: usize) -> Vec<f64> {
        let info = &mesh.cells()[c];
        info.edges
            .iter()
            .zip(&info.edge_signs)
            .map(|(&e, s)| s * self.values[e].dot(&mesh.primal_edges()[e].normal))
            .collect()
    }
}

impl GradientField {
    pub fn zeros(mesh: &StaggeredMesh) -> Self {
        Self {
            traces: vec![Vec2::zeros(); mesh.dual_edges().len()],
        }
    }

    /// Per-sub-triangle tensors sampled from a function, stored by traces.
    pub fn from_tensors<F: Fn(usize) -> Tensor>(mesh: &StaggeredMesh, tensor: F) -> Self {
        let traces = mesh
            .dual_edges()
            .iter()
            .map(|d| tensor(d.subs.0) * d.normal)
            .collect();
        Self { traces }
    }

    /// The constant tensor `ψ_τ` solving `ψ [n_a n_b] = [q_a q_b]`.
    pub fn tensor(&self, mesh: &StaggeredMesh, sub: usize) -> Result<Tensor, SingularTrace> {
        let [a, b] = mesh.subs()[sub].dual_edges;
        let (na, nb) = (mesh.dual_edges()[a].normal, mesh.dual_edges()[b].normal);
        let n = Tensor::from_columns(&[na, nb]);
        let q = Tensor::from_columns(&[self.traces[a], self.traces[b]]);
        let det = n.determinant();
        match n.try_inverse() {
            Some(inv) if det.abs() > 1e-14 => Ok(q * inv),
            _ => Err(SingularTrace { sub, det }),
        }
    }

    pub fn flat(&self) -> Vec<f64> {
        self.traces.iter().flat_map(|q| [q.x, q.y]).collect()
    }
}

impl PressureField {
    /// `Σ_T |T| p_T`.
    pub fn integral(&self, mesh: &StaggeredMesh) -> f64 {
        mesh.cells().iter().zip(&self.values).map(|(c, p)| c.area * p).sum()
    }
}

fn edge_quad() -> &'static QuadRule {
    edge_rule(8).expect("8-point edge rule")
}

fn tri_quad() -> &'static QuadRule {
    triangle_rule(ERROR_QUADRATURE_DEGREE).expect("degree 8 rule")
}

/// `I_h u`: edge averages on every primal edge, boundary included.
pub fn interp_ih<F: Fn(Point) -> Vec2>(mesh: &StaggeredMesh, u: F) -> VelocityField {
    let rule = edge_quad();
    let values = mesh
        .primal_edges()
        .iter()
        .map(|e| integrate_segment(rule, &e.points[0], &e.points[1], &u) / e.length)
        .collect();
    VelocityField { values }
}

/// `J_h ω`: edge averages of `ω n_e` on every dual edge.
pub fn interp_jh<F: Fn(Point) -> Tensor>(mesh: &StaggeredMesh, omega: F) -> GradientField {
    let rule = edge_quad();
    let traces = mesh
        .dual_edges()
        .iter()
        .map(|d| integrate_segment(rule, &d.points[0], &d.points[1], |x| omega(x) * d.normal) / d.length)
        .collect();
    GradientField { traces }
}

/// `π_h p`: cell means.
pub fn interp_pih<F: Fn(Point) -> f64>(mesh: &StaggeredMesh, p: F) -> PressureField {
    let rule = tri_quad();
    let values = (0..mesh.num_cells())
        .map(|c| {
            let total: f64 = mesh
                .cell_subs(c)
                .iter()
                .map(|s| integrate_triangle(rule, &s.points[0], &s.points[1], &s.points[2], &p))
                .sum();
            total / mesh.cells()[c].area
        })
        .collect();
    PressureField { values }
}

/// `‖v‖_h² = Σ_{e ∈ F_p} |e|⁻¹ ‖[v]‖²_{0,e}`, with `h_e = |e|`.
pub fn norm_h(mesh: &StaggeredMesh, v: &VelocityField) -> f64 {
    mesh.dual_edges()
        .iter()
        .map(|d| {
            let jump = v.on_sub(mesh, d.subs.0) - v.on_sub(mesh, d.subs.1);
            jump.norm_squared()
        })
        .sum::<f64>()
        .sqrt()
}

/// `‖v‖_X² = ‖v‖_0² + Σ_{e ∈ F_u^0} |e| ‖v‖²_{0,e}`.
pub fn norm_x(mesh: &StaggeredMesh, v: &VelocityField) -> f64 {
    let l2: f64 = mesh
        .subs()
        .iter()
        .map(|s| s.area * v.values[s.base_edge].norm_squared())
        .sum();
    let edges: f64 = mesh
        .interior_edges()
        .iter()
        .map(|&e| {
            let len = mesh.primal_edges()[e].length;
            len * len * v.values[e].norm_squared()
        })
        .sum();
    (l2 + edges).sqrt()
}

/// `‖q‖_P² = ‖q‖_0² + Σ_{e ∈ F_p} |e| ‖q‖²_{0,e}`.
pub fn norm_p(mesh: &StaggeredMesh, q: &PressureField) -> f64 {
    let l2: f64 = mesh.cells().iter().zip(&q.values).map(|(c, p)| c.area * p * p).sum();
    let edges: f64 = mesh
        .dual_edges()
        .iter()
        .map(|d| d.length * d.length * q.values[d.cell].powi(2))
        .sum();
    (l2 + edges).sqrt()
}

/// `‖u - u_h‖_0`.
pub fn error_velocity<F: Fn(Point) -> Vec2>(mesh: &StaggeredMesh, uh: &VelocityField, u: F) -> f64 {
    let rule = tri_quad();
    mesh.subs()
        .iter()
        .map(|s| {
            let val = uh.values[s.base_edge];
            integrate_triangle(rule, &s.points[0], &s.points[1], &s.points[2], |x| (u(x) - val).norm_squared())
        })
        .sum::<f64>()
        .sqrt()
}

/// `‖ω - ω_h‖_0` (Frobenius norm pointwise).
pub fn error_gradient<F: Fn(Point) -> Tensor>(
    mesh: &StaggeredMesh,
    wh: &GradientField,
    omega: F,
) -> Result<f64, SingularTrace> {
    let rule = tri_quad();
    let mut total = 0.0;
    for (k, s) in mesh.subs().iter().enumerate() {
        let t = wh.tensor(mesh, k)?;
        total += integrate_triangle(rule, &s.points[0], &s.points[1], &s.points[2], |x| {
            (omega(x) - t).norm_squared()
        });
    }
    Ok(total.sqrt())
}

/// `‖p - p_h‖_0`.
pub fn error_pressure<F: Fn(Point) -> f64>(mesh: &StaggeredMesh, ph: &PressureField, p: F) -> f64 {
    let rule = tri_quad();
    mesh.subs()
        .iter()
        .map(|s| {
            let val = ph.values[s.cell];
            integrate_triangle(rule, &s.points[0], &s.points[1], &s.points[2], |x| (p(x) - val).powi(2))
        })
        .sum::<f64>()
        .sqrt()
}

/// `‖I_h u - u_h‖_0`, an exact finite sum.
pub fn error_super<F: Fn(Point) -> Vec2>(mesh: &StaggeredMesh, uh: &VelocityField, u: F) -> f64 {
    let iu = interp_ih(mesh, u);
    mesh.subs()
        .iter()
        .map(|s| s.area * (iu.values[s.base_edge] - uh.values[s.base_edge]).norm_squared())
        .sum::<f64>()
        .sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::point;
    use crate::mesh::{build_staggered, generate_polygonal, generate_triangular, PrimalMesh};

    fn two_quads() -> StaggeredMesh {
        let pts = vec![
            point(0.0, 0.0),
            point(0.5, 0.0),
            point(1.0, 0.0),
            point(1.0, 1.0),
            point(0.5, 1.0),
            point(0.0, 1.0),
        ];
        build_staggered(PrimalMesh::new(pts, vec![vec![0, 1, 4, 5], vec![1, 2, 3, 4]]).unwrap()).unwrap()
    }

    #[test]
    fn ih_reproduces_constants_and_linears() {
        let mesh = build_staggered(generate_polygonal(3).unwrap()).unwrap();
        let c = interp_ih(&mesh, |_| Vec2::new(3.0, -1.0));
        assert!(c.values.iter().all(|v| (v - Vec2::new(3.0, -1.0)).norm() < 1e-14));
        let lin = interp_ih(&mesh, |x| x);
        for (e, v) in mesh.primal_edges().iter().zip(&lin.values) {
            assert!((v - e.midpoint()).norm() < 1e-12);
        }
    }

    #[test]
    fn jh_of_constant_tensor() {
        let mesh = two_quads();
        let w = Tensor::new(1.0, 2.0, -0.5, 3.0);
        let g = interp_jh(&mesh, |_| w);
        for (d, q) in mesh.dual_edges().iter().zip(&g.traces) {
            assert!((q - w * d.normal).norm() < 1e-14);
        }
        for s in 0..mesh.subs().len() {
            assert!((g.tensor(&mesh, s).unwrap() - w).abs().max() < 1e-13);
        }
    }

    #[test]
    fn pih_means() {
        let mesh = two_quads();
        let c = interp_pih(&mesh, |_| 2.5);
        assert!(c.values.iter().all(|v| (v - 2.5).abs() < 1e-14));
        let x = interp_pih(&mesh, |x| x.x);
        assert!((x.values[0] - 0.25).abs() < 1e-14);
        assert!((x.values[1] - 0.75).abs() < 1e-14);
        // projection
        let p = interp_pih(&mesh, |x| x.x * x.y);
        let pp = interp_pih(&mesh, |x| {
            let c = if x.x < 0.5 { 0 } else { 1 };
            p.values[c]
        });
        for (a, b) in p.values.iter().zip(&pp.values) {
            assert!((a - b).abs() < 1e-14);
        }
    }

    #[test]
    fn norm_h_single_interior_dof() {
        let mesh = two_quads();
        let mut v = VelocityField::zeros(&mesh);
        v.values[mesh.interior_edges()[0]] = Vec2::new(1.0, 0.0);
        // D(e) is bounded by four dual edges, each with unit jump
        let direct: f64 = mesh
            .dual_edges()
            .iter()
            .filter(|d| {
                let e = mesh.interior_edges()[0];
                (mesh.subs()[d.subs.0].base_edge == e) != (mesh.subs()[d.subs.1].base_edge == e)
            })
            .map(|d| d.length / d.length)
            .sum();
        assert_eq!(direct, 4.0);
        assert!((norm_h(&mesh, &v).powi(2) - direct).abs() < 1e-14);
        let mut w = v.clone();
        for x in &mut w.values {
            *x *= -3.0;
        }
        assert!((norm_h(&mesh, &w) - 3.0 * norm_h(&mesh, &v)).abs() < 1e-14);
        let c = VelocityField {
            values: vec![Vec2::new(1.0, 2.0); mesh.primal_edges().len()],
        };
        assert_eq!(norm_h(&mesh, &c), 0.0);
        assert!(norm_x(&mesh, &c) > 0.0);
    }

    #[test]
    fn trace_round_trip() {
        let mesh = build_staggered(generate_polygonal(3).unwrap()).unwrap();
        let g = GradientField {
            traces: (0..mesh.dual_edges().len())
                .map(|k| Vec2::new((k as f64).sin(), (k as f64 * 0.7).cos()))
                .collect(),
        };
        for d in mesh.dual_edges().iter().enumerate() {
            let (k, de) = d;
            for s in [de.subs.0, de.subs.1] {
                let t = g.tensor(&mesh, s).unwrap();
                assert!((t * de.normal - g.traces[k]).norm() < 1e-13);
            }
        }
    }

    #[test]
    fn errors_vanish_for_interpolants() {
        let mesh = build_staggered(generate_triangular(3).unwrap()).unwrap();
        let u = |x: Point| Vec2::new(x.x.sin(), x.y * x.x);
        let uh = interp_ih(&mesh, u);
        assert_eq!(error_super(&mesh, &uh, u), 0.0);
        let c = |_: Point| Vec2::new(3.0, -1.0);
        assert!(error_velocity(&mesh, &interp_ih(&mesh, c), c) < 1e-13);
        let p = PressureField { values: vec![1.0; mesh.num_cells()] };
        assert!((p.integral(&mesh) - 1.0).abs() < 1e-14);
        assert!(error_pressure(&mesh, &p, |_| 1.0) < 1e-14);
        assert!(norm_p(&mesh, &p) > 1.0);
    }
}
