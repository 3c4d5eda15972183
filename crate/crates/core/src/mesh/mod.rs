//! Primal polygonal meshes and the staggered sub-triangulation built on them.

mod generate;
mod io;
mod staggered;

use std::collections::HashMap;

use thiserror::Error;

use crate::geometry::{cross, polygon_signed_area, Point};

pub use generate::{generate_polygonal, generate_trapezoidal, generate_triangular, generate_triangular_jittered};
pub use io::{read_mesh, write_mesh};
pub use staggered::{
    build_staggered, validate, validate_with, CellInfo, DualEdge, PrimalEdge, RegularityReport, StaggeredMesh,
    SubTriangle, DEFAULT_MAX_ASPECT, DEFAULT_MIN_RHO_E,
};

#[derive(Debug, Error)]
pub enum MeshError {
    #[error("line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("cell {cell}: vertex index {index} out of range ({count} vertices)")]
    IndexOutOfRange { cell: usize, index: usize, count: usize },
    #[error("cell {cell}: needs at least 3 vertices, got {count}")]
    TooFewVertices { cell: usize, count: usize },
    #[error("cell {cell}: vertex cycle is clockwise or degenerate (signed area {area:e})")]
    Orientation { cell: usize, area: f64 },
    #[error("cell {cell}: not strictly convex at local vertex {vertex}")]
    NonConvex { cell: usize, vertex: usize },
    #[error("cell {cell}: repeated vertex {index}")]
    RepeatedVertex { cell: usize, index: usize },
    #[error("edge ({a}, {b}) is not shared consistently by at most two cells")]
    NonConforming { a: usize, b: usize },
    #[error("vertex {index} has non-finite coordinates")]
    NonFinite { index: usize },
    #[error("subdivision count {0} is invalid: {1}")]
    InvalidSubdivision(usize, &'static str),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

/// A conforming partition of the domain into strictly convex polygons.
///
/// Cells are counterclockwise cycles of vertex indices. Construction checks
/// orientation, convexity and edge conformity, so every `PrimalMesh` value is
/// valid.
#[derive(Debug, Clone, PartialEq)]
pub struct PrimalMesh {
    vertices: Vec<Point>,
    cells: Vec<Vec<usize>>,
    boundary: Vec<bool>,
}

impl PrimalMesh {
    pub fn new(vertices: Vec<Point>, cells: Vec<Vec<usize>>) -> Result<Self, MeshError> {
        for (i, v) in vertices.iter().enumerate() {
            if !v.x.is_finite() || !v.y.is_finite() {
                return Err(MeshError::NonFinite { index: i });
            }
        }
        let nv = vertices.len();
        for (c, cell) in cells.iter().enumerate() {
            if cell.len() < 3 {
                return Err(MeshError::TooFewVertices { cell: c, count: cell.len() });
            }
            for &i in cell {
                if i >= nv {
                    return Err(MeshError::IndexOutOfRange { cell: c, index: i, count: nv });
                }
            }
            for (k, &i) in cell.iter().enumerate() {
                if cell[k + 1..].contains(&i) {
                    return Err(MeshError::RepeatedVertex { cell: c, index: i });
                }
            }
            let pts: Vec<Point> = cell.iter().map(|&i| vertices[i]).collect();
            let area = polygon_signed_area(&pts);
            if area <= 0.0 {
                return Err(MeshError::Orientation { cell: c, area });
            }
            let m = pts.len();
            let scale = area;
            for k in 0..m {
                let a = pts[(k + m - 1) % m];
                let b = pts[k];
                let d = pts[(k + 1) % m];
                let turn = cross(&(b - a), &(d - b));
                if turn <= 1e-12 * scale {
                    return Err(MeshError::NonConvex { cell: c, vertex: k });
                }
            }
        }

        // each directed edge at most once, each undirected edge at most twice
        let mut directed: HashMap<(usize, usize), usize> = HashMap::new();
        for cell in &cells {
            let m = cell.len();
            for k in 0..m {
                let key = (cell[k], cell[(k + 1) % m]);
                let n = directed.entry(key).or_insert(0);
                *n += 1;
                if *n > 1 {
                    return Err(MeshError::NonConforming { a: key.0, b: key.1 });
                }
            }
        }
        let mut boundary = vec![false; nv];
        for &(a, b) in directed.keys() {
            if !directed.contains_key(&(b, a)) {
                boundary[a] = true;
                boundary[b] = true;
            }
        }
        Ok(Self {
            vertices,
            cells,
            boundary,
        })
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn cells(&self) -> &[Vec<usize>] {
        &self.cells
    }

    pub fn num_cells(&self) -> usize {
        self.cells.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    /// Whether each vertex lies on the mesh boundary.
    pub fn boundary_flags(&self) -> &[bool] {
        &self.boundary
    }

    pub fn cell_points(&self, c: usize) -> Vec<Point> {
        self.cells[c].iter().map(|&i| self.vertices[i]).collect()
    }

    pub fn cell_area(&self, c: usize) -> f64 {
        polygon_signed_area(&self.cell_points(c))
    }

    pub fn total_area(&self) -> f64 {
        (0..self.num_cells()).map(|c| self.cell_area(c)).sum()
    }
}
