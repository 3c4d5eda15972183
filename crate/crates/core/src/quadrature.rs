//! Fixed-degree quadrature on triangles and segments.
//!
//! Triangle rules are the symmetric Dunavant rules of degree 2, 4, 6, 8 and 10.
//! Every node lies strictly inside the reference triangle and every weight is
//! positive, so rules can be applied to integrands that blow up on edge lines.
//! Segment rules are Gauss-Legendre.

use std::sync::LazyLock;

use thiserror::Error;

use crate::geometry::{triangle_signed_area, Point};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QuadratureError {
    #[error("no triangle rule of degree {0} (supported: 2, 4, 6, 8, 10)")]
    UnsupportedTriangleDegree(usize),
    #[error("no edge rule with {0} points (supported: 2, 4, 8)")]
    UnsupportedEdgePoints(usize),
}

/// Nodes and weights on a reference element.
///
/// Triangle nodes are `(ξ, η)` on the triangle `(0,0), (1,0), (0,1)` with
/// weights summing to 1/2. Segment nodes use only the first coordinate on
/// `[0, 1]` with weights summing to 1.
#[derive(Debug, Clone)]
pub struct QuadRule {
    pub points: Vec<[f64; 2]>,
    pub weights: Vec<f64>,
    pub degree: usize,
}

impl QuadRule {
    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }
}

enum Orbit {
    Centroid,
    /// (a, a, 1 - 2a)
    Pair(f64),
    /// (a, b, 1 - a - b)
    General(f64, f64),
}

// (weight normalised to unit area, orbit)
const DUNAVANT_2: &[(f64, Orbit)] = &[(1.0 / 3.0, Orbit::Pair(1.0 / 6.0))];

const DUNAVANT_4: &[(f64, Orbit)] = &[
    (0.223381589678011, Orbit::Pair(0.445948490915965)),
    (0.109951743655322, Orbit::Pair(0.091576213509771)),
];

const DUNAVANT_6: &[(f64, Orbit)] = &[
    (0.116786275726379, Orbit::Pair(0.249286745170910)),
    (0.050844906370207, Orbit::Pair(0.063089014491502)),
    (0.082851075618374, Orbit::General(0.053145049844817, 0.310352451033784)),
];

const DUNAVANT_8: &[(f64, Orbit)] = &[
    (0.144315607677787, Orbit::Centroid),
    (0.095091634267285, Orbit::Pair(0.459292588292723)),
    (0.103217370534718, Orbit::Pair(0.170569307751760)),
    (0.032458497623198, Orbit::Pair(0.050547228317031)),
    (0.027230314174435, Orbit::General(0.008394777409958, 0.263112829634638)),
];

const DUNAVANT_10: &[(f64, Orbit)] = &[
    (0.090817990382754, Orbit::Centroid),
    (0.036725957756467, Orbit::Pair(0.485577633383657)),
    (0.045321059435528, Orbit::Pair(0.109481575485037)),
    (0.072757916845420, Orbit::General(0.141707219414880, 0.307939838764121)),
    (0.028327242531057, Orbit::General(0.025003534762686, 0.246672560639903)),
    (0.009421666963733, Orbit::General(0.009540815400299, 0.066803251012200)),
];

fn expand(table: &[(f64, Orbit)], degree: usize) -> QuadRule {
    let mut points = Vec::new();
    let mut weights = Vec::new();
    for (w, orbit) in table {
        let bary: Vec<[f64; 3]> = match *orbit {
            Orbit::Centroid => vec![[1.0 / 3.0; 3]],
            Orbit::Pair(a) => {
                let b = 1.0 - 2.0 * a;
                vec![[a, a, b], [a, b, a], [b, a, a]]
            }
            Orbit::General(a, b) => {
                let c = 1.0 - a - b;
                vec![[a, b, c], [a, c, b], [b, a, c], [b, c, a], [c, a, b], [c, b, a]]
            }
        };
        for l in bary {
            points.push([l[1], l[2]]);
            weights.push(0.5 * w);
        }
    }
    QuadRule {
        points,
        weights,
        degree,
    }
}

static TRIANGLE_RULES: LazyLock<[QuadRule; 5]> = LazyLock::new(|| {
    [
        expand(DUNAVANT_2, 2),
        expand(DUNAVANT_4, 4),
        expand(DUNAVANT_6, 6),
        expand(DUNAVANT_8, 8),
        expand(DUNAVANT_10, 10),
    ]
});

static EDGE_RULES: LazyLock<[QuadRule; 3]> =
    LazyLock::new(|| [gauss_legendre(2), gauss_legendre(4), gauss_legendre(8)]);

/// Symmetric interior rule exact for polynomials of total degree `degree`.
pub fn triangle_rule(degree: usize) -> Result<&'static QuadRule, QuadratureError> {
    let idx = match degree {
        2 => 0,
        4 => 1,
        6 => 2,
        8 => 3,
        10 => 4,
        d => return Err(QuadratureError::UnsupportedTriangleDegree(d)),
    };
    Ok(&TRIANGLE_RULES[idx])
}

/// Gauss-Legendre rule on `[0, 1]` with `points` nodes.
pub fn edge_rule(points: usize) -> Result<&'static QuadRule, QuadratureError> {
    let idx = match points {
        2 => 0,
        4 => 1,
        8 => 2,
        n => return Err(QuadratureError::UnsupportedEdgePoints(n)),
    };
    Ok(&EDGE_RULES[idx])
}

fn gauss_legendre(n: usize) -> QuadRule {
    let mut points = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    for i in 0..n {
        // Newton on P_n starting from the Chebyshev-like guess
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        points.push([0.5 * (1.0 - x), 0.0]);
        weights.push(0.5 * w);
    }
    QuadRule {
        points,
        weights,
        degree: 2 * n - 1,
    }
}

fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// Integrate `f` over the triangle `(a, b, c)` with `rule`.
pub fn integrate_triangle<T, F>(rule: &QuadRule, a: &Point, b: &Point, c: &Point, mut f: F) -> T
where
    T: std::ops::Add<Output = T> + std::ops::Mul<f64, Output = T> + Default,
    F: FnMut(Point) -> T,
{
    let jac = 2.0 * triangle_signed_area(a, b, c).abs();
    let e1 = b - a;
    let e2 = c - a;
    let mut acc = T::default();
    for (p, w) in rule.points.iter().zip(&rule.weights) {
        let x = a + e1 * p[0] + e2 * p[1];
        acc = acc + f(x) * (w * jac);
    }
    acc
}

/// Integrate `f` over the segment `a → b` with a segment `rule`.
pub fn integrate_segment<T, F>(rule: &QuadRule, a: &Point, b: &Point, mut f: F) -> T
where
    T: std::ops::Add<Output = T> + std::ops::Mul<f64, Output = T> + Default,
    F: FnMut(Point) -> T,
{
    let len = (b - a).norm();
    let mut acc = T::default();
    for (p, w) in rule.points.iter().zip(&rule.weights) {
        let x = a + (b - a) * p[0];
        acc = acc + f(x) * (w * len);
    }
    acc
}
