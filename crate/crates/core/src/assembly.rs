//! Assembly of the staggered saddle-point system.
//!
//! Unknowns are ordered `(ω | u | p | μ)`:
//!
//! * `ω`: two trace components per dual edge, index `2d + c`;
//! * `u`: two components per interior primal edge, index `2k + c` with `k`
//!   the edge's interior index;
//! * `p`: one value per cell;
//! * `μ`: multiplier for `Σ_T |T| p_T = 0`.
//!
//! The second equation is multiplied by `ν`, so the system reads
//!
//! ```text
//! [ M      -ν Bᵀ   0    0 ] [ω]   [ ν B_∂ᵀ g    ]
//! [ B       0      Dᵀ   0 ] [u] = [ load        ]
//! [ 0       D      0    a ] [p]   [ -D_∂ g      ]
//! [ 0       0      aᵀ   0 ] [μ]   [ 0           ]
//! ```
//!
//! where `B` is the matrix of `B_h(ψ, v)`, `D` that of `b_h(v, q)`, `g` the
//! edge averages of the boundary velocity and `a_T = |T|`. `B_h^*` and
//! `b_h^*` enter only through the transposes.

use thiserror::Error;

use crate::geometry::{Point, Tensor, Vec2};
use crate::hdivrec::{RtBasis, DEFAULT_MOMENT_DEGREE};
use crate::mesh::StaggeredMesh;
use crate::quadrature::{edge_rule, integrate_segment, integrate_triangle, triangle_rule, QuadratureError};
use crate::sparse::{SparseMatrix, TripletBuilder};
use crate::spaces::{SingularTrace, VelocityField};
use crate::wachspress::WachspressError;

#[derive(Debug, Error)]
pub enum AssemblyError {
    #[error("mass matrix: {0}")]
    SingularTrace(#[from] SingularTrace),
    #[error("cell {cell}: {source}")]
    Basis { cell: usize, source: WachspressError },
    #[error(transparent)]
    Quadrature(#[from] QuadratureError),
}

/// Discretisation of the load term.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    /// `(f, Π^RT v)`: pressure-robust.
    Sdg1,
    /// `(f, v)`: the plain staggered scheme.
    Sdg2,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Sdg1 => "sdg1",
            Method::Sdg2 => "sdg2",
        }
    }
}

impl std::str::FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "sdg1" => Ok(Method::Sdg1),
            "sdg2" => Ok(Method::Sdg2),
            other => Err(format!("unknown method '{other}' (expected sdg1 or sdg2)")),
        }
    }
}

/// Body force and Dirichlet velocity of a Stokes problem.
pub trait StokesProblem {
    fn forcing(&self, x: Point) -> Vec2;
    fn boundary_velocity(&self, x: Point) -> Vec2;
}

/// Closure-backed problem data.
pub struct FnProblem<F, G> {
    pub forcing: F,
    pub boundary: G,
}

impl<F: Fn(Point) -> Vec2, G: Fn(Point) -> Vec2> StokesProblem for FnProblem<F, G> {
    fn forcing(&self, x: Point) -> Vec2 {
        (self.forcing)(x)
    }

    fn boundary_velocity(&self, x: Point) -> Vec2 {
        (self.boundary)(x)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DofLayout {
    pub gradient: usize,
    pub velocity: usize,
    pub pressure: usize,
}

impl DofLayout {
    pub fn new(mesh: &StaggeredMesh) -> Self {
        Self {
            gradient: 2 * mesh.dual_edges().len(),
            velocity: 2 * mesh.interior_edges().len(),
            pressure: mesh.num_cells(),
        }
    }

    pub fn velocity_offset(&self) -> usize {
        self.gradient
    }

    pub fn pressure_offset(&self) -> usize {
        self.gradient + self.velocity
    }

    pub fn multiplier(&self) -> usize {
        self.gradient + self.velocity + self.pressure
    }

    /// Field unknowns, multiplier excluded.
    pub fn dofs(&self) -> usize {
        self.multiplier()
    }

    pub fn total(&self) -> usize {
        self.multiplier() + 1
    }
}

/// `B_h(ψ, v) = -Σ_{e ∈ F_p} |e| q_e · [v]_e` with rows over every primal edge
/// (`2e + c`, boundary edges included) and columns over dual-edge traces.
pub fn assemble_gradient_coupling(mesh: &StaggeredMesh) -> SparseMatrix {
    let mut t = TripletBuilder::new(2 * mesh.primal_edges().len(), 2 * mesh.dual_edges().len());
    for (d, de) in mesh.dual_edges().iter().enumerate() {
        let lo = mesh.subs()[de.subs.0].base_edge;
        let hi = mesh.subs()[de.subs.1].base_edge;
        for c in 0..2 {
            t.add(2 * lo + c, 2 * d + c, -de.length);
            t.add(2 * hi + c, 2 * d + c, de.length);
        }
    }
    t.build()
}

/// `b_h(v, q) = -Σ_T q_T Σ_{e ⊂ ∂T} |e| v_e·n_T` with columns over every
/// primal edge. Restricted to interior columns this is
/// `-Σ_{e ∈ F_u^0} |e| (v·n_e) [q]`.
pub fn assemble_divergence_full(mesh: &StaggeredMesh) -> SparseMatrix {
    let mut t = TripletBuilder::new(mesh.num_cells(), 2 * mesh.primal_edges().len());
    for (e, pe) in mesh.primal_edges().iter().enumerate() {
        let (c0, c1) = pe.cells;
        for c in 0..2 {
            t.add(c0, 2 * e + c, -pe.length * pe.normal[c]);
            if let Some(c1) = c1 {
                t.add(c1, 2 * e + c, pe.length * pe.normal[c]);
            }
        }
    }
    t.build()
}

fn interior_dofs(mesh: &StaggeredMesh) -> Vec<usize> {
    mesh.interior_edges().iter().flat_map(|&e| [2 * e, 2 * e + 1]).collect()
}

fn boundary_dofs(mesh: &StaggeredMesh) -> Vec<usize> {
    mesh.primal_edges()
        .iter()
        .enumerate()
        .filter(|(_, e)| e.is_boundary())
        .flat_map(|(e, _)| [2 * e, 2 * e + 1])
        .collect()
}

/// Matrix of `B_h(ψ, v)` for interior velocity test functions:
/// `B_h(ψ, v) = v_intᵀ B ψ`.
pub fn assemble_bh(mesh: &StaggeredMesh) -> SparseMatrix {
    assemble_gradient_coupling(mesh).select_rows(&interior_dofs(mesh))
}

/// Matrix of `b_h(v, q)` on interior velocity dofs: `b_h(v, q) = qᵀ D v_int`.
pub fn assemble_div(mesh: &StaggeredMesh) -> SparseMatrix {
    assemble_divergence_full(mesh)
        .transpose()
        .select_rows(&interior_dofs(mesh))
        .transpose()
}

/// `(ω, ψ)` with tensors recovered from dual-edge traces per sub-triangle.
pub fn assemble_mass(mesh: &StaggeredMesh) -> Result<SparseMatrix, AssemblyError> {
    let n = 2 * mesh.dual_edges().len();
    let mut t = TripletBuilder::new(n, n);
    for (k, s) in mesh.subs().iter().enumerate() {
        let [a, b] = s.dual_edges;
        let normals = Tensor::from_columns(&[mesh.dual_edges()[a].normal, mesh.dual_edges()[b].normal]);
        let det = normals.determinant();
        let inv = match normals.try_inverse() {
            Some(inv) if det.abs() > 1e-14 => inv,
            _ => return Err(SingularTrace { sub: k, det }.into()),
        };
        let g = inv * inv.transpose() * s.area;
        let ids = [a, b];
        for c in 0..2 {
            for (i, &di) in ids.iter().enumerate() {
                for (j, &dj) in ids.iter().enumerate() {
                    t.add(2 * di + c, 2 * dj + c, g[(i, j)]);
                }
            }
        }
    }
    Ok(t.build())
}

/// Edge averages of the boundary velocity on boundary edges, zero elsewhere.
pub fn boundary_values<P: StokesProblem + ?Sized>(mesh: &StaggeredMesh, problem: &P) -> VelocityField {
    let rule = edge_rule(8).expect("8-point rule");
    let values = mesh
        .primal_edges()
        .iter()
        .map(|e| {
            if e.is_boundary() {
                integrate_segment(rule, &e.points[0], &e.points[1], |x| problem.boundary_velocity(x)) / e.length
            } else {
                Vec2::zeros()
            }
        })
        .collect();
    VelocityField { values }
}

/// Load vector over interior velocity dofs: `(f, Π^RT v)` for SDG1 and
/// `(f, v)` for SDG2.
pub fn load_vector<F: Fn(Point) -> Vec2>(
    mesh: &StaggeredMesh,
    f: F,
    method: Method,
) -> Result<Vec<f64>, AssemblyError> {
    let mut out = vec![0.0; 2 * mesh.interior_edges().len()];
    match method {
        Method::Sdg1 => {
            for (c, info) in mesh.cells().iter().enumerate() {
                if info.edges.iter().all(|&e| mesh.primal_edges()[e].is_boundary()) {
                    continue;
                }
                let basis = RtBasis::new(&mesh.cell_points(c), info.split)
                    .map_err(|source| AssemblyError::Basis { cell: c, source })?;
                let moments = basis.moments(&f, DEFAULT_MOMENT_DEGREE)?;
                for (i, (&e, sign)) in info.edges.iter().zip(&info.edge_signs).enumerate() {
                    if let Some(k) = mesh.primal_edges()[e].interior_index {
                        let n = mesh.primal_edges()[e].normal * *sign;
                        out[2 * k] += moments[i] * n.x;
                        out[2 * k + 1] += moments[i] * n.y;
                    }
                }
            }
        }
        Method::Sdg2 => {
            let rule = triangle_rule(DEFAULT_MOMENT_DEGREE)?;
            for &e in mesh.interior_edges() {
                let pe = &mesh.primal_edges()[e];
                let k = pe.interior_index.expect("interior edge");
                let (s0, s1) = pe.region;
                for s in std::iter::once(s0).chain(s1) {
                    let st = &mesh.subs()[s];
                    let v: Vec2 = integrate_triangle(rule, &st.points[0], &st.points[1], &st.points[2], &f);
                    out[2 * k] += v.x;
                    out[2 * k + 1] += v.y;
                }
            }
        }
    }
    Ok(out)
}

/// The system matrix; identical for both methods.
pub fn assemble_lhs(mesh: &StaggeredMesh, nu: f64) -> Result<SparseMatrix, AssemblyError> {
    let layout = DofLayout::new(mesh);
    let mass = assemble_mass(mesh)?;
    let b = assemble_bh(mesh);
    let bt = b.transpose();
    let d = assemble_div(mesh);
    let dt = d.transpose();
    let (ou, op, om) = (layout.velocity_offset(), layout.pressure_offset(), layout.multiplier());
    let mut t = TripletBuilder::new(layout.total(), layout.total());
    t.add_block(&mass, 0, 0, 1.0);
    t.add_block(&bt, 0, ou, -nu);
    t.add_block(&b, ou, 0, 1.0);
    t.add_block(&dt, ou, op, 1.0);
    t.add_block(&d, op, ou, 1.0);
    for (c, info) in mesh.cells().iter().enumerate() {
        t.add(op + c, om, info.area);
        t.add(om, op + c, info.area);
    }
    Ok(t.build())
}

pub fn assemble_rhs<P: StokesProblem + ?Sized>(
    mesh: &StaggeredMesh,
    problem: &P,
    method: Method,
    nu: f64,
) -> Result<Vec<f64>, AssemblyError> {
    let layout = DofLayout::new(mesh);
    let mut rhs = vec![0.0; layout.total()];
    let g = boundary_values(mesh, problem);
    let bdofs = boundary_dofs(mesh);
    let g_flat: Vec<f64> = bdofs.iter().map(|&i| g.values[i / 2][i % 2]).collect();

    let b_bdy = assemble_gradient_coupling(mesh).select_rows(&bdofs);
    let lift_grad = b_bdy.transpose().matvec(&g_flat);
    for (r, v) in rhs[..layout.gradient].iter_mut().zip(lift_grad) {
        *r = nu * v;
    }

    let load = load_vector(mesh, |x| problem.forcing(x), method)?;
    rhs[layout.velocity_offset()..layout.pressure_offset()].copy_from_slice(&load);

    let d_bdy = assemble_divergence_full(mesh).transpose().select_rows(&bdofs).transpose();
    let lift_div = d_bdy.matvec(&g_flat);
    for (r, v) in rhs[layout.pressure_offset()..layout.multiplier()].iter_mut().zip(lift_div) {
        *r = -v;
    }
    Ok(rhs)
}

/// An assembled system with everything needed to rebuild the fields.
#[derive(Debug, Clone)]
pub struct SaddleSystem {
    pub matrix: SparseMatrix,
    pub rhs: Vec<f64>,
    pub layout: DofLayout,
    pub nu: f64,
    pub method: Method,
    /// Dirichlet values on boundary edges (zero on interior edges).
    pub boundary: VelocityField,
    /// Primal edge of each interior velocity slot.
    pub interior_edges: Vec<usize>,
}

pub fn assemble_system<P: StokesProblem + ?Sized>(
    mesh: &StaggeredMesh,
    problem: &P,
    method: Method,
    nu: f64,
) -> Result<SaddleSystem, AssemblyError> {
    Ok(SaddleSystem {
        matrix: assemble_lhs(mesh, nu)?,
        rhs: assemble_rhs(mesh, problem, method, nu)?,
        layout: DofLayout::new(mesh),
        nu,
        method,
        boundary: boundary_values(mesh, problem),
        interior_edges: mesh.interior_edges().to_vec(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::point;
    use crate::mesh::{build_staggered, generate_triangular, PrimalMesh};

    fn single_triangle() -> StaggeredMesh {
        let pts = vec![point(0.0, 0.0), point(1.0, 0.0), point(0.0, 1.0)];
        build_staggered(PrimalMesh::new(pts, vec![vec![0, 1, 2]]).unwrap()).unwrap()
    }

    #[test]
    fn gradient_coupling_on_single_triangle() {
        // hand evaluation: dual edge j separates τ_{j-1} and τ_j, so the full
        // coupling row for edge e_i collects -|d_j| from the dual edge where τ_i
        // is the lower sub-triangle and +|d_j| where it is the higher one
        let s = single_triangle();
        let b = assemble_gradient_coupling(&s);
        assert_eq!((b.nrows(), b.ncols()), (6, 6));
        let c = s.cells()[0].split;
        let len = |v: Point| (v - c).norm();
        let l0 = len(point(0.0, 0.0));
        let l1 = len(point(1.0, 0.0));
        let l2 = len(point(0.0, 1.0));
        // sub-triangle i has base edge i; dual 0 = (τ0, τ2), dual 1 = (τ0, τ1), dual 2 = (τ1, τ2)
        let e = |i: usize| s.subs()[i].base_edge;
        assert_eq!(b.get(2 * e(0), 0), -l0);
        assert_eq!(b.get(2 * e(2), 0), l0);
        assert_eq!(b.get(2 * e(0), 2), -l1);
        assert_eq!(b.get(2 * e(1), 2), l1);
        assert_eq!(b.get(2 * e(1), 4), -l2);
        assert_eq!(b.get(2 * e(2), 4), l2);
        assert_eq!(assemble_bh(&s).nrows(), 0);
    }

    #[test]
    fn constant_velocity_has_no_dual_jumps() {
        let s = build_staggered(generate_triangular(3).unwrap()).unwrap();
        let b = assemble_gradient_coupling(&s);
        let v: Vec<f64> = (0..s.primal_edges().len()).flat_map(|_| [2.0, -1.0]).collect();
        let bt = b.transpose().matvec(&v);
        assert!(bt.iter().all(|x| x.abs() < 1e-14));
    }

    #[test]
    fn divergence_columns_telescope() {
        let s = build_staggered(generate_triangular(3).unwrap()).unwrap();
        let d = assemble_div(&s);
        let ones = vec![1.0; s.num_cells()];
        let colsum = d.transpose().matvec(&ones);
        assert!(colsum.iter().all(|x| x.abs() < 1e-15));
        // a constant field has zero net flux out of every closed cell
        let full = assemble_divergence_full(&s);
        let v: Vec<f64> = (0..s.primal_edges().len()).flat_map(|_| [0.3, 1.7]).collect();
        assert!(full.matvec(&v).iter().all(|x| x.abs() < 1e-14));
    }

    #[test]
    fn mass_is_symmetric_and_exact_for_constants() {
        let s = build_staggered(generate_triangular(2).unwrap()).unwrap();
        let m = assemble_mass(&s).unwrap();
        assert_eq!(m.max_abs_diff(&m.transpose()), 0.0);
        let w = Tensor::new(1.0, -2.0, 0.5, 3.0);
        let g = crate::spaces::GradientField::from_tensors(&s, |_| w).flat();
        let e = m.bilinear(&g, &g);
        assert!((e - w.norm_squared()).abs() < 1e-12);
    }

    #[test]
    fn zero_data_gives_zero_rhs() {
        let s = build_staggered(generate_triangular(2).unwrap()).unwrap();
        let p = FnProblem {
            forcing: |_| Vec2::zeros(),
            boundary: |_| Vec2::zeros(),
        };
        for m in [Method::Sdg1, Method::Sdg2] {
            assert!(assemble_rhs(&s, &p, m, 1.0).unwrap().iter().all(|&x| x == 0.0));
        }
    }

    #[test]
    fn method_parsing() {
        assert_eq!("sdg1".parse::<Method>().unwrap(), Method::Sdg1);
        assert!("sdg3".parse::<Method>().is_err());
    }
}
