//! Closed-form Stokes solutions on the unit square.

use std::f64::consts::PI;

use crate::assembly::StokesProblem;
use crate::geometry::{point, Point, Tensor, Vec2};
use crate::quadrature::{integrate_triangle, triangle_rule};

/// Rayleigh number of the no-flow benchmark.
pub const DEFAULT_RA: f64 = 1000.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CaseKind {
    /// Polynomial-trigonometric vortex with a unit offset.
    Taylor,
    /// `u = 0`, quadratic pressure, irrotational forcing.
    NoFlow { ra: f64 },
    /// Exponential-trigonometric field with `Δu = ∇p`.
    Trig,
    /// Constant velocity, zero pressure and forcing.
    Constant { u: Vec2 },
}

/// An exact solution `(u, p)` with `∇·u = 0` and `∫_Ω p = 0`.
///
/// Gradients follow `(∇u)_{ij} = ∂_j u_i`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ManufacturedCase {
    kind: CaseKind,
    /// Added to the raw pressure formula.
    pressure_shift: f64,
}

/// `x²(1-x)²` and its first three derivatives.
fn quartic(x: f64) -> [f64; 4] {
    let a = x * x * (1.0 - x) * (1.0 - x);
    let a1 = 2.0 * x * (1.0 - x) * (1.0 - 2.0 * x);
    let a2 = 2.0 * (1.0 - 6.0 * x + 6.0 * x * x);
    let a3 = 12.0 * (2.0 * x - 1.0);
    [a, a1, a2, a3]
}

pub fn case_taylor() -> ManufacturedCase {
    ManufacturedCase {
        kind: CaseKind::Taylor,
        pressure_shift: (1f64.cos() - 1.0) * 1f64.sin(),
    }
}

pub fn case_noflow() -> ManufacturedCase {
    case_noflow_with(DEFAULT_RA)
}

pub fn case_noflow_with(ra: f64) -> ManufacturedCase {
    ManufacturedCase {
        kind: CaseKind::NoFlow { ra },
        pressure_shift: -ra / 3.0,
    }
}

/// The shift is the negated mean of `2eˣ sin y`, by degree-10 quadrature.
pub fn case_trig() -> ManufacturedCase {
    let raw = ManufacturedCase {
        kind: CaseKind::Trig,
        pressure_shift: 0.0,
    };
    let rule = triangle_rule(10).expect("degree 10 rule");
    let corners = [point(0.0, 0.0), point(1.0, 0.0), point(1.0, 1.0), point(0.0, 1.0)];
    let mean = integrate_triangle(rule, &corners[0], &corners[1], &corners[2], |x| raw.pressure(x))
        + integrate_triangle(rule, &corners[0], &corners[2], &corners[3], |x| raw.pressure(x));
    ManufacturedCase {
        pressure_shift: -mean,
        ..raw
    }
}

pub fn case_constant(u: Vec2) -> ManufacturedCase {
    ManufacturedCase {
        kind: CaseKind::Constant { u },
        pressure_shift: 0.0,
    }
}

impl ManufacturedCase {
    pub fn kind(&self) -> CaseKind {
        self.kind
    }

    pub fn id(&self) -> &'static str {
        match self.kind {
            CaseKind::Taylor => "taylor",
            CaseKind::NoFlow { .. } => "noflow",
            CaseKind::Trig => "trig",
            CaseKind::Constant { .. } => "constant",
        }
    }

    pub fn velocity(&self, x: Point) -> Vec2 {
        match self.kind {
            CaseKind::Taylor => {
                let [a, a1, ..] = quartic(x.x);
                let s = (PI * x.y).sin();
                Vec2::new(PI * a * (2.0 * PI * x.y).sin() + 1.0, -a1 * s * s + 1.0)
            }
            CaseKind::NoFlow { .. } => Vec2::zeros(),
            CaseKind::Trig => {
                let (s, c, e) = (x.y.sin(), x.y.cos(), x.x.exp());
                Vec2::new(-e * (x.y * c + s), e * x.y * s)
            }
            CaseKind::Constant { u } => u,
        }
    }

    pub fn grad(&self, x: Point) -> Tensor {
        match self.kind {
            CaseKind::Taylor => {
                let [a, a1, a2, _] = quartic(x.x);
                let s = (PI * x.y).sin();
                let s2 = (2.0 * PI * x.y).sin();
                let c2 = (2.0 * PI * x.y).cos();
                Tensor::new(PI * a1 * s2, 2.0 * PI * PI * a * c2, -a2 * s * s, -PI * a1 * s2)
            }
            CaseKind::NoFlow { .. } | CaseKind::Constant { .. } => Tensor::zeros(),
            CaseKind::Trig => {
                let (s, c, e) = (x.y.sin(), x.y.cos(), x.x.exp());
                let y = x.y;
                Tensor::new(-e * (y * c + s), -e * (2.0 * c - y * s), e * y * s, e * (s + y * c))
            }
        }
    }

    pub fn laplacian(&self, x: Point) -> Vec2 {
        match self.kind {
            CaseKind::Taylor => {
                let [a, a1, a2, a3] = quartic(x.x);
                let s = (PI * x.y).sin();
                let s2 = (2.0 * PI * x.y).sin();
                let c2 = (2.0 * PI * x.y).cos();
                Vec2::new(
                    PI * a2 * s2 - 4.0 * PI.powi(3) * a * s2,
                    -a3 * s * s - 2.0 * PI * PI * a1 * c2,
                )
            }
            CaseKind::NoFlow { .. } | CaseKind::Constant { .. } => Vec2::zeros(),
            CaseKind::Trig => self.pressure_grad(x),
        }
    }

    pub fn pressure(&self, x: Point) -> f64 {
        let raw = match self.kind {
            CaseKind::Taylor => x.x.sin() * x.y.cos(),
            CaseKind::NoFlow { ra } => -0.5 * ra * x.y * x.y + ra * x.y,
            CaseKind::Trig => 2.0 * x.x.exp() * x.y.sin(),
            CaseKind::Constant { .. } => 0.0,
        };
        raw + self.pressure_shift
    }

    pub fn pressure_grad(&self, x: Point) -> Vec2 {
        match self.kind {
            CaseKind::Taylor => Vec2::new(x.x.cos() * x.y.cos(), -x.x.sin() * x.y.sin()),
            CaseKind::NoFlow { ra } => Vec2::new(0.0, ra * (1.0 - x.y)),
            CaseKind::Trig => 2.0 * x.x.exp() * Vec2::new(x.y.sin(), x.y.cos()),
            CaseKind::Constant { .. } => Vec2::zeros(),
        }
    }

    /// `f = -νΔu + ∇p`.
    pub fn forcing(&self, x: Point, nu: f64) -> Vec2 {
        self.pressure_grad(x) - self.laplacian(x) * nu
    }

    /// `ω = ν∇u`.
    pub fn omega(&self, x: Point, nu: f64) -> Tensor {
        self.grad(x) * nu
    }

    pub fn with_nu(&self, nu: f64) -> CaseProblem {
        CaseProblem { case: *self, nu }
    }
}

/// A case paired with a viscosity, as consumed by assembly.
#[derive(Debug, Clone, Copy)]
pub struct CaseProblem {
    pub case: ManufacturedCase,
    pub nu: f64,
}

impl StokesProblem for CaseProblem {
    fn forcing(&self, x: Point) -> Vec2 {
        self.case.forcing(x, self.nu)
    }

    fn boundary_velocity(&self, x: Point) -> Vec2 {
        self.case.velocity(x)
    }
}

impl std::str::FromStr for ManufacturedCase {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "taylor" => Ok(case_taylor()),
            "noflow" => Ok(case_noflow()),
            "trig" => Ok(case_trig()),
            other => Err(format!("unknown case '{other}' (expected taylor, noflow or trig)")),
        }
    }
}
