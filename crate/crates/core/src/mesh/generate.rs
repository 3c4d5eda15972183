use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{MeshError, PrimalMesh};
use crate::geometry::{point, Point};

/// `n × n` squares on the unit square, each cut along its lower-left to
/// upper-right diagonal: `2n²` triangles and `(n+1)²` vertices.
pub fn generate_triangular(n: usize) -> Result<PrimalMesh, MeshError> {
    generate_triangular_jittered(n, 0.0, 0)
}

/// As [`generate_triangular`], with interior vertices moved by a random
/// offset of at most `jitter · (1/n)` in each coordinate. `jitter` is clamped
/// to `[0, 0.2]`, which keeps every triangle positively oriented.
pub fn generate_triangular_jittered(n: usize, jitter: f64, seed: u64) -> Result<PrimalMesh, MeshError> {
    if n < 1 {
        return Err(MeshError::InvalidSubdivision(n, "need n >= 1"));
    }
    let jitter = jitter.clamp(0.0, 0.2);
    let h = 1.0 / n as f64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let idx = |i: usize, j: usize| j * (n + 1) + i;
    let mut vertices = Vec::with_capacity((n + 1) * (n + 1));
    for j in 0..=n {
        for i in 0..=n {
            let mut p = point(i as f64 * h, j as f64 * h);
            if jitter > 0.0 && i > 0 && i < n && j > 0 && j < n {
                p.x += jitter * h * rng.random_range(-1.0..1.0);
                p.y += jitter * h * rng.random_range(-1.0..1.0);
            }
            vertices.push(p);
        }
    }
    let mut cells = Vec::with_capacity(2 * n * n);
    for j in 0..n {
        for i in 0..n {
            let (a, b, c, d) = (idx(i, j), idx(i + 1, j), idx(i + 1, j + 1), idx(i, j + 1));
            cells.push(vec![a, b, c]);
            cells.push(vec![a, c, d]);
        }
    }
    PrimalMesh::new(vertices, cells)
}

/// `n × n` quadrilaterals whose interior grid nodes are shifted vertically by
/// `±h/4` in a checkerboard pattern (`h = 1/n`). Vertical cell sides stay
/// straight, so every cell is a trapezoid with two vertical parallel sides.
pub fn generate_trapezoidal(n: usize) -> Result<PrimalMesh, MeshError> {
    if n < 1 {
        return Err(MeshError::InvalidSubdivision(n, "need n >= 1"));
    }
    if !n.is_multiple_of(2) {
        return Err(MeshError::InvalidSubdivision(n, "trapezoidal pattern needs an even count"));
    }
    let h = 1.0 / n as f64;
    let idx = |i: usize, j: usize| j * (n + 1) + i;
    let mut vertices = Vec::with_capacity((n + 1) * (n + 1));
    for j in 0..=n {
        for i in 0..=n {
            let mut y = j as f64 * h;
            if j > 0 && j < n {
                let s = if (i + j) % 2 == 0 { 1.0 } else { -1.0 };
                y += s * 0.25 * h;
            }
            vertices.push(point(i as f64 * h, y));
        }
    }
    let mut cells = Vec::with_capacity(n * n);
    for j in 0..n {
        for i in 0..n {
            cells.push(vec![idx(i, j), idx(i + 1, j), idx(i + 1, j + 1), idx(i, j + 1)]);
        }
    }
    PrimalMesh::new(vertices, cells)
}

/// Hexagon tiling of the unit square clipped at the boundary.
///
/// Flat-topped hexagons sit in `n + 1` columns with centres at `x = i/n`;
/// even columns have centres at `y = j/n`, odd columns at `y = (j + ½)/n`.
/// The half-width is `2/(3n)` and the height `1/n`, so the boundary lines run
/// through hexagon centres or along hexagon edges and the clipped pieces are
/// convex quadrilaterals and pentagons. Interior cells are hexagons.
pub fn generate_polygonal(n: usize) -> Result<PrimalMesh, MeshError> {
    if n < 2 {
        return Err(MeshError::InvalidSubdivision(n, "need n >= 2"));
    }
    // Integer lattice: x in units of 1/(3n), y in units of 1/(2n).
    let xmax = 3 * n as i64;
    let ymax = 2 * n as i64;
    let mut index: HashMap<(i64, i64), usize> = HashMap::new();
    let mut lattice: Vec<(i64, i64)> = Vec::new();
    let mut cells = Vec::new();

    for col in 0..=n as i64 {
        let cx = 3 * col;
        let odd = col % 2 == 1;
        let rows = if odd { n as i64 } else { n as i64 + 1 };
        for row in 0..rows {
            let cy = if odd { 2 * row + 1 } else { 2 * row };
            let hex = [
                (cx + 2, cy),
                (cx + 1, cy + 1),
                (cx - 1, cy + 1),
                (cx - 2, cy),
                (cx - 1, cy - 1),
                (cx + 1, cy - 1),
            ];
            let mut poly: Vec<(i64, i64)> = Vec::with_capacity(6);
            for &(x, y) in &hex {
                let p = (x.clamp(0, xmax), y.clamp(0, ymax));
                if poly.last() != Some(&p) && !(poly.first() == Some(&p)) {
                    poly.push(p);
                }
            }
            let poly = drop_collinear(poly);
            if poly.len() < 3 {
                continue;
            }
            let cell = poly
                .into_iter()
                .map(|p| {
                    *index.entry(p).or_insert_with(|| {
                        lattice.push(p);
                        lattice.len() - 1
                    })
                })
                .collect();
            cells.push(cell);
        }
    }
    let sx = 1.0 / xmax as f64;
    let sy = 1.0 / ymax as f64;
    let vertices = lattice.iter().map(|&(x, y)| point(x as f64 * sx, y as f64 * sy)).collect::<Vec<Point>>();
    PrimalMesh::new(vertices, cells)
}

fn drop_collinear(mut poly: Vec<(i64, i64)>) -> Vec<(i64, i64)> {
    loop {
        let m = poly.len();
        if m < 3 {
            return poly;
        }
        let mut removed = false;
        for k in 0..m {
            let a = poly[(k + m - 1) % m];
            let b = poly[k];
            let c = poly[(k + 1) % m];
            let turn = (b.0 - a.0) * (c.1 - b.1) - (b.1 - a.1) * (c.0 - b.0);
            if turn == 0 {
                poly.remove(k);
                removed = true;
                break;
            }
        }
        if !removed {
            return poly;
        }
    }
}
