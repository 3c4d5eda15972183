//! Sparse direct solve of the assembled saddle-point system.

use faer::prelude::Solve;
use faer::sparse::{SparseColMat, Triplet};
use faer::Mat;
use thiserror::Error;

use crate::assembly::SaddleSystem;
use crate::geometry::Vec2;
use crate::sparse::SparseMatrix;
use crate::spaces::{GradientField, PressureField, VelocityField};

/// Residual threshold for an accepted solve (normwise backward error).
pub const RESIDUAL_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Error)]
pub enum SolveError {
    #[error("matrix is {rows}x{cols}, rhs has {rhs} entries")]
    Shape { rows: usize, cols: usize, rhs: usize },
    #[error("structurally singular matrix (no pivot at step {index})")]
    Singular { index: usize },
    #[error("factorization failed: {0}")]
    Factorization(String),
    #[error("solution is not finite (component {index})")]
    NonFinite { index: usize },
    #[error("backward error {residual:e} exceeds {tolerance:e}")]
    Residual { residual: f64, tolerance: f64 },
}

/// Solution vector with its normwise backward error
/// `‖b - A x‖_∞ / (‖A‖_∞ ‖x‖_∞ + ‖b‖_∞)`.
#[derive(Debug, Clone)]
pub struct SparseSolution {
    pub x: Vec<f64>,
    pub residual: f64,
}

fn inf_norm(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

pub fn backward_error(a: &SparseMatrix, x: &[f64], b: &[f64]) -> f64 {
    let ax = a.matvec(x);
    let r: Vec<f64> = b.iter().zip(&ax).map(|(b, ax)| b - ax).collect();
    let denom = a.norm_inf() * inf_norm(x) + inf_norm(b);
    if denom == 0.0 {
        0.0
    } else {
        inf_norm(&r) / denom
    }
}

/// LU with partial pivoting followed by one step of iterative refinement.
pub fn solve_sparse(a: &SparseMatrix, b: &[f64]) -> Result<SparseSolution, SolveError> {
    let n = a.nrows();
    if a.ncols() != n || b.len() != n {
        return Err(SolveError::Shape {
            rows: n,
            cols: a.ncols(),
            rhs: b.len(),
        });
    }
    let triplets: Vec<Triplet<usize, usize, f64>> = a.iter().map(|(r, c, v)| Triplet::new(r, c, v)).collect();
    let mat = SparseColMat::<usize, f64>::try_new_from_triplets(n, n, &triplets)
        .map_err(|e| SolveError::Factorization(format!("{e:?}")))?;
    let lu = mat.sp_lu().map_err(|e| match e {
        faer::sparse::linalg::LuError::SymbolicSingular { index } => SolveError::Singular { index },
        other => SolveError::Factorization(format!("{other:?}")),
    })?;

    let mut x = Mat::<f64>::from_fn(n, 1, |i, _| b[i]);
    lu.solve_in_place(&mut x);
    let mut sol: Vec<f64> = (0..n).map(|i| x[(i, 0)]).collect();
    if let Some(index) = sol.iter().position(|v| !v.is_finite()) {
        return Err(SolveError::NonFinite { index });
    }

    let ax = a.matvec(&sol);
    let mut r = Mat::<f64>::from_fn(n, 1, |i, _| b[i] - ax[i]);
    lu.solve_in_place(&mut r);
    for (i, s) in sol.iter_mut().enumerate() {
        *s += r[(i, 0)];
    }
    if let Some(index) = sol.iter().position(|v| !v.is_finite()) {
        return Err(SolveError::NonFinite { index });
    }
    let residual = backward_error(a, &sol, b);
    Ok(SparseSolution { x: sol, residual })
}

/// Discrete fields recovered from the solution vector.
#[derive(Debug, Clone)]
pub struct FieldSolution {
    pub gradient: GradientField,
    /// Values on every primal edge; boundary edges carry the Dirichlet data.
    pub velocity: VelocityField,
    pub pressure: PressureField,
    pub multiplier: f64,
    pub residual: f64,
}

impl FieldSolution {
    pub fn from_vector(system: &SaddleSystem, x: &[f64], residual: f64) -> Self {
        let layout = system.layout;
        let gradient = GradientField {
            traces: x[..layout.gradient].chunks(2).map(|c| Vec2::new(c[0], c[1])).collect(),
        };
        let mut velocity = system.boundary.clone();
        let interior = &x[layout.velocity_offset()..layout.pressure_offset()];
        for (k, c) in interior.chunks(2).enumerate() {
            let e = system.interior_edges[k];
            velocity.values[e] = Vec2::new(c[0], c[1]);
        }
        let pressure = PressureField {
            values: x[layout.pressure_offset()..layout.multiplier()].to_vec(),
        };
        Self {
            gradient,
            velocity,
            pressure,
            multiplier: x[layout.multiplier()],
            residual,
        }
    }
}

/// Solve and check the backward error against [`RESIDUAL_TOLERANCE`].
pub fn solve(system: &SaddleSystem) -> Result<FieldSolution, SolveError> {
    let s = solve_sparse(&system.matrix, &system.rhs)?;
    if s.residual > RESIDUAL_TOLERANCE {
        return Err(SolveError::Residual {
            residual: s.residual,
            tolerance: RESIDUAL_TOLERANCE,
        });
    }
    Ok(FieldSolution::from_vector(system, &s.x, s.residual))
}
