//! Convergence studies and viscosity sweeps.

use std::fs::File;
use std::io::BufReader;
use std::path::PathBuf;

use thiserror::Error;

use super::cases::ManufacturedCase;
use crate::assembly::{assemble_system, AssemblyError, Method};
use crate::mesh::{
    build_staggered, generate_polygonal, generate_trapezoidal, generate_triangular, generate_triangular_jittered,
    read_mesh, MeshError, PrimalMesh, StaggeredMesh,
};
use crate::solver::{solve, FieldSolution, SolveError};
use crate::spaces::{error_gradient, error_pressure, error_super, error_velocity, SingularTrace};

#[derive(Debug, Error)]
pub enum StudyError {
    #[error(transparent)]
    Mesh(#[from] MeshError),
    #[error(transparent)]
    Assembly(#[from] AssemblyError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error("error evaluation: {0}")]
    Trace(#[from] SingularTrace),
    #[error("{0}")]
    Spec(String),
}

#[derive(Debug, Clone, PartialEq)]
pub enum MeshFamily {
    /// Right triangles, optionally with jittered interior nodes.
    Triangular { jitter: f64, seed: u64 },
    Trapezoidal,
    Polygonal,
    /// A single mesh read from disk; the level only labels it.
    File(PathBuf),
}

impl MeshFamily {
    pub fn triangular() -> Self {
        MeshFamily::Triangular { jitter: 0.0, seed: 0 }
    }

    pub fn name(&self) -> String {
        match self {
            MeshFamily::Triangular { .. } => "tri".into(),
            MeshFamily::Trapezoidal => "trap".into(),
            MeshFamily::Polygonal => "poly".into(),
            MeshFamily::File(p) => format!("file:{}", p.display()),
        }
    }

    pub fn primal(&self, n: usize) -> Result<PrimalMesh, MeshError> {
        match self {
            MeshFamily::Triangular { jitter, .. } if *jitter == 0.0 => generate_triangular(n),
            MeshFamily::Triangular { jitter, seed } => generate_triangular_jittered(n, *jitter, *seed),
            MeshFamily::Trapezoidal => generate_trapezoidal(n),
            MeshFamily::Polygonal => generate_polygonal(n),
            MeshFamily::File(path) => {
                let f = File::open(path)?;
                read_mesh(BufReader::new(f))
            }
        }
    }

    pub fn build(&self, n: usize) -> Result<StaggeredMesh, MeshError> {
        build_staggered(self.primal(n)?)
    }
}

impl std::str::FromStr for MeshFamily {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "tri" => Ok(MeshFamily::triangular()),
            "trap" => Ok(MeshFamily::Trapezoidal),
            "poly" => Ok(MeshFamily::Polygonal),
            _ => match s.strip_prefix("file:") {
                Some(p) if !p.is_empty() => Ok(MeshFamily::File(PathBuf::from(p))),
                _ => Err(format!("unknown mesh family '{s}' (expected tri, trap, poly or file:<path>)")),
            },
        }
    }
}

/// One experiment: refinement levels `n = start, 2 start, ...` (`h ≈ 1/n`).
#[derive(Debug, Clone)]
pub struct CaseSpec {
    pub case: ManufacturedCase,
    pub method: Method,
    pub family: MeshFamily,
    pub levels: Vec<usize>,
    pub nus: Vec<f64>,
}

impl CaseSpec {
    /// `count` dyadic levels starting from `start`.
    pub fn dyadic(start: usize, count: usize) -> Vec<usize> {
        (0..count).map(|k| start << k).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Orders {
    pub omega: f64,
    pub u: f64,
    pub p: f64,
    pub super_: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ErrorRecord {
    pub level: usize,
    /// Largest sub-triangle diameter.
    pub h: f64,
    /// Field unknowns (ω, u, p).
    pub dof: usize,
    pub err_omega: f64,
    pub err_u: f64,
    pub err_p: f64,
    pub err_super: f64,
    pub residual: f64,
    /// Relative to the previous level; absent on the first.
    pub orders: Option<Orders>,
}

pub fn observed_order(coarse: f64, fine: f64) -> f64 {
    (coarse / fine).log2()
}

/// Errors of a solved system against the exact solution.
pub fn measure(
    mesh: &StaggeredMesh,
    sol: &FieldSolution,
    case: &ManufacturedCase,
    nu: f64,
    level: usize,
) -> Result<ErrorRecord, StudyError> {
    let err_omega = error_gradient(mesh, &sol.gradient, |x| case.omega(x, nu))?;
    Ok(ErrorRecord {
        level,
        h: mesh.h(),
        dof: 2 * mesh.dual_edges().len() + 2 * mesh.interior_edges().len() + mesh.num_cells(),
        err_omega,
        err_u: error_velocity(mesh, &sol.velocity, |x| case.velocity(x)),
        err_p: error_pressure(mesh, &sol.pressure, |x| case.pressure(x)),
        err_super: error_super(mesh, &sol.velocity, |x| case.velocity(x)),
        residual: sol.residual,
        orders: None,
    })
}

/// Assemble, solve and measure on one mesh.
pub fn run_case(
    mesh: &StaggeredMesh,
    case: &ManufacturedCase,
    method: Method,
    nu: f64,
    level: usize,
) -> Result<(ErrorRecord, FieldSolution), StudyError> {
    let system = assemble_system(mesh, &case.with_nu(nu), method, nu)?;
    let sol = solve(&system)?;
    Ok((measure(mesh, &sol, case, nu, level)?, sol))
}

/// Fill `orders` from consecutive records.
pub fn attach_orders(records: &mut [ErrorRecord]) {
    for k in 1..records.len() {
        let (a, b) = (&records[k - 1], &records[k]);
        let o = Orders {
            omega: observed_order(a.err_omega, b.err_omega),
            u: observed_order(a.err_u, b.err_u),
            p: observed_order(a.err_p, b.err_p),
            super_: observed_order(a.err_super, b.err_super),
        };
        records[k].orders = Some(o);
    }
}

/// Runs every level of `spec` at its first viscosity.
pub fn convergence_study(spec: &CaseSpec) -> Result<Vec<ErrorRecord>, StudyError> {
    let nu = *spec
        .nus
        .first()
        .ok_or_else(|| StudyError::Spec("no viscosity given".into()))?;
    if spec.levels.is_empty() {
        return Err(StudyError::Spec("no refinement levels given".into()));
    }
    let results: Vec<Result<ErrorRecord, StudyError>> = std::thread::scope(|s| {
        let handles: Vec<_> = spec
            .levels
            .iter()
            .map(|&n| {
                s.spawn(move || {
                    let mesh = spec.family.build(n)?;
                    Ok(run_case(&mesh, &spec.case, spec.method, nu, n)?.0)
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("level worker panicked")).collect()
    });
    let mut records = results.into_iter().collect::<Result<Vec<_>, _>>()?;
    records.sort_by_key(|r| r.level);
    attach_orders(&mut records);
    Ok(records)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRecord {
    pub nu: f64,
    pub method: Method,
    pub err_omega: f64,
    pub err_u: f64,
    pub err_p: f64,
    pub err_super: f64,
}

/// Both methods at every viscosity on one mesh; sorted by method, then by
/// decreasing `ν`.
pub fn robustness_sweep(
    case: &ManufacturedCase,
    family: &MeshFamily,
    level: usize,
    nus: &[f64],
) -> Result<Vec<SweepRecord>, StudyError> {
    let mesh = family.build(level)?;
    let jobs: Vec<(Method, f64)> = [Method::Sdg1, Method::Sdg2]
        .into_iter()
        .flat_map(|m| nus.iter().map(move |&nu| (m, nu)))
        .collect();
    let results: Vec<Result<SweepRecord, StudyError>> = std::thread::scope(|s| {
        let mesh = &mesh;
        let handles: Vec<_> = jobs
            .iter()
            .map(|&(method, nu)| {
                s.spawn(move || {
                    let r = run_case(mesh, case, method, nu, level)?.0;
                    Ok(SweepRecord {
                        nu,
                        method,
                        err_omega: r.err_omega,
                        err_u: r.err_u,
                        err_p: r.err_p,
                        err_super: r.err_super,
                    })
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("sweep worker panicked")).collect()
    });
    let mut out = results.into_iter().collect::<Result<Vec<_>, _>>()?;
    out.sort_by(|a, b| {
        (a.method as u8)
            .cmp(&(b.method as u8))
            .then(b.nu.partial_cmp(&a.nu).expect("finite viscosity"))
    });
    Ok(out)
}

/// `values[k] / values[k + 1]`.
pub fn consecutive_ratios(values: &[f64]) -> Vec<f64> {
    values.windows(2).map(|w| w[0] / w[1]).collect()
}
