//! Fan subdivision of each primal cell from its centroid.
//!
//! A cell with `m` vertices `v_0..v_{m-1}` and split point `x*` yields the
//! sub-triangles `τ_i = (x*, v_i, v_{i+1})`, whose base is the primal edge
//! `e_i = (v_i, v_{i+1})`, and the dual edges `d_j = (x*, v_j)`. Sub-triangle
//! `i` and dual edge `j` of cell `c` both get the global index
//! `cells[c].offset + i` (resp. `+ j`). `τ_i` is bounded by the dual edges
//! `d_i` and `d_{i+1}`.
//!
//! Interior normals point from the lower-indexed neighbour (cell for primal
//! edges, sub-triangle for dual edges) to the higher-indexed one; boundary
//! normals point out of the domain. Jumps are `[v] = v_low - v_high`.

use std::collections::HashMap;

use super::{MeshError, PrimalMesh};
use crate::geometry::{diameter, polygon_centroid, right_normal, triangle_aspect_ratio, triangle_signed_area, Point, Vec2};

#[derive(Debug, Clone)]
pub struct CellInfo {
    pub split: Point,
    pub area: f64,
    pub diameter: f64,
    /// First sub-triangle / dual edge index of this cell.
    pub offset: usize,
    /// Global primal edge of each local edge `e_i`.
    pub edges: Vec<usize>,
    /// `+1` when the global edge normal is this cell's outward normal, else `-1`.
    pub edge_signs: Vec<f64>,
}

impl CellInfo {
    pub fn num_sides(&self) -> usize {
        self.edges.len()
    }
}

#[derive(Debug, Clone)]
pub struct SubTriangle {
    pub cell: usize,
    pub local: usize,
    /// `[x*, v_i, v_{i+1}]`, counterclockwise.
    pub points: [Point; 3],
    pub base_edge: usize,
    pub dual_edges: [usize; 2],
    pub area: f64,
    pub diameter: f64,
}

#[derive(Debug, Clone)]
pub struct PrimalEdge {
    pub vertices: [usize; 2],
    pub points: [Point; 2],
    pub length: f64,
    pub normal: Vec2,
    /// Lower-indexed cell first; `None` on the boundary.
    pub cells: (usize, Option<usize>),
    /// The dual region `D(e)`: the sub-triangles on this edge, ordered like `cells`.
    pub region: (usize, Option<usize>),
    /// Position among the interior edges, if interior.
    pub interior_index: Option<usize>,
}

impl PrimalEdge {
    pub fn is_boundary(&self) -> bool {
        self.cells.1.is_none()
    }

    pub fn midpoint(&self) -> Point {
        (self.points[0] + self.points[1]) * 0.5
    }
}

#[derive(Debug, Clone)]
pub struct DualEdge {
    pub cell: usize,
    /// `[x*, v_j]`.
    pub points: [Point; 2],
    pub length: f64,
    pub normal: Vec2,
    /// (lower, higher) sub-triangle; the normal points from the first into the second.
    pub subs: (usize, usize),
}

/// The primal mesh together with its sub-triangulation and edge sets.
#[derive(Debug, Clone)]
pub struct StaggeredMesh {
    primal: PrimalMesh,
    cells: Vec<CellInfo>,
    subs: Vec<SubTriangle>,
    primal_edges: Vec<PrimalEdge>,
    interior_edges: Vec<usize>,
    dual_edges: Vec<DualEdge>,
    h: f64,
}

impl StaggeredMesh {
    pub fn primal(&self) -> &PrimalMesh {
        &self.primal
    }

    pub fn cells(&self) -> &[CellInfo] {
        &self.cells
    }

    pub fn subs(&self) -> &[SubTriangle] {
        &self.subs
    }

    pub fn primal_edges(&self) -> &[PrimalEdge] {
        &self.primal_edges
    }

    /// Indices (into `primal_edges`) of the interior primal edges, in order.
    pub fn interior_edges(&self) -> &[usize] {
        &self.interior_edges
    }

    pub fn dual_edges(&self) -> &[DualEdge] {
        &self.dual_edges
    }

    /// Largest sub-triangle diameter.
    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn num_cells(&self) -> usize {
        self.cells.len()
    }

    pub fn cell_points(&self, c: usize) -> Vec<Point> {
        self.primal.cell_points(c)
    }

    /// Sub-triangles of cell `c` in local order.
    pub fn cell_subs(&self, c: usize) -> &[SubTriangle] {
        let info = &self.cells[c];
        &self.subs[info.offset..info.offset + info.num_sides()]
    }
}

pub fn build_staggered(primal: PrimalMesh) -> Result<StaggeredMesh, MeshError> {
    let nc = primal.num_cells();
    let verts = primal.vertices().to_vec();

    // primal edges keyed by sorted vertex pair, in order of first appearance
    let mut edge_of: HashMap<(usize, usize), usize> = HashMap::new();
    let mut edge_cells: Vec<(usize, Option<usize>)> = Vec::new();
    let mut edge_verts: Vec<[usize; 2]> = Vec::new();
    let mut cell_edges: Vec<Vec<usize>> = Vec::with_capacity(nc);
    for (c, cell) in primal.cells().iter().enumerate() {
        let m = cell.len();
        let mut list = Vec::with_capacity(m);
        for i in 0..m {
            let (a, b) = (cell[i], cell[(i + 1) % m]);
            let key = (a.min(b), a.max(b));
            let e = *edge_of.entry(key).or_insert_with(|| {
                edge_cells.push((c, None));
                edge_verts.push([a, b]);
                edge_cells.len() - 1
            });
            if edge_cells[e].0 != c {
                if edge_cells[e].1.is_some() {
                    return Err(MeshError::NonConforming { a, b });
                }
                edge_cells[e].1 = Some(c);
            }
            list.push(e);
        }
        cell_edges.push(list);
    }

    let mut cells = Vec::with_capacity(nc);
    let mut subs = Vec::new();
    let mut offset = 0;
    for c in 0..nc {
        let pts = primal.cell_points(c);
        let m = pts.len();
        let split = polygon_centroid(&pts);
        for i in 0..m {
            let a = triangle_signed_area(&split, &pts[i], &pts[(i + 1) % m]);
            assert!(a > 0.0, "centroid of convex cell {c} is not interior");
        }
        let mut signs = Vec::with_capacity(m);
        for i in 0..m {
            let e = cell_edges[c][i];
            // the global normal is the outward normal of the edge's first cell
            signs.push(if edge_cells[e].0 == c { 1.0 } else { -1.0 });
        }
        for i in 0..m {
            let p = [split, pts[i], pts[(i + 1) % m]];
            subs.push(SubTriangle {
                cell: c,
                local: i,
                points: p,
                base_edge: cell_edges[c][i],
                dual_edges: [offset + i, offset + (i + 1) % m],
                area: triangle_signed_area(&p[0], &p[1], &p[2]),
                diameter: diameter(&p),
            });
        }
        cells.push(CellInfo {
            split,
            area: primal.cell_area(c),
            diameter: diameter(&pts),
            offset,
            edges: cell_edges[c].clone(),
            edge_signs: signs,
        });
        offset += m;
    }

    let mut primal_edges = Vec::with_capacity(edge_cells.len());
    let mut interior_edges = Vec::new();
    for (e, (&(c0, c1), &[a, b])) in edge_cells.iter().zip(&edge_verts).enumerate() {
        // c0 is the first cell to reference the edge, which is also the lower index
        let local0 = cell_edges[c0].iter().position(|&x| x == e).unwrap();
        let cell = &primal.cells()[c0];
        let m = cell.len();
        let (pa, pb) = (verts[cell[local0]], verts[cell[(local0 + 1) % m]]);
        let normal = right_normal(&pa, &pb);
        let sub0 = cells[c0].offset + local0;
        let sub1 = c1.map(|c| cells[c].offset + cell_edges[c].iter().position(|&x| x == e).unwrap());
        let interior_index = c1.map(|_| {
            interior_edges.push(e);
            interior_edges.len() - 1
        });
        primal_edges.push(PrimalEdge {
            vertices: [a, b],
            points: [verts[a], verts[b]],
            length: (verts[b] - verts[a]).norm(),
            normal,
            cells: (c0, c1),
            region: (sub0, sub1),
            interior_index,
        });
    }

    let mut dual_edges = Vec::with_capacity(offset);
    for (c, info) in cells.iter().enumerate() {
        let pts = primal.cell_points(c);
        let m = pts.len();
        for j in 0..m {
            let prev = info.offset + (j + m - 1) % m;
            let next = info.offset + j;
            let (lo, hi) = (prev.min(next), prev.max(next));
            let a = info.split;
            let b = pts[j];
            // right of x* → v_j lies in τ_{j-1}
            let mut normal = right_normal(&a, &b);
            if lo == prev {
                normal = -normal;
            }
            dual_edges.push(DualEdge {
                cell: c,
                points: [a, b],
                length: (b - a).norm(),
                normal,
                subs: (lo, hi),
            });
        }
    }

    let h = subs.iter().map(|s| s.diameter).fold(0.0, f64::max);
    Ok(StaggeredMesh {
        primal,
        cells,
        subs,
        primal_edges,
        interior_edges,
        dual_edges,
        h,
    })
}

pub const DEFAULT_MIN_RHO_E: f64 = 0.1;
pub const DEFAULT_MAX_ASPECT: f64 = 20.0;

#[derive(Debug, Clone, PartialEq)]
pub struct RegularityReport {
    pub h: f64,
    pub min_aspect: f64,
    pub max_aspect: f64,
    /// `min |e| / h_T` over all cells and their edges.
    pub rho_e: f64,
    pub pass: bool,
}

pub fn validate(mesh: &StaggeredMesh) -> RegularityReport {
    validate_with(mesh, DEFAULT_MIN_RHO_E, DEFAULT_MAX_ASPECT)
}

pub fn validate_with(mesh: &StaggeredMesh, min_rho_e: f64, max_aspect: f64) -> RegularityReport {
    let mut lo = f64::INFINITY;
    let mut hi: f64 = 0.0;
    for s in mesh.subs() {
        let r = triangle_aspect_ratio(&s.points[0], &s.points[1], &s.points[2]);
        lo = lo.min(r);
        hi = hi.max(r);
    }
    let mut rho = f64::INFINITY;
    for info in mesh.cells() {
        for &e in &info.edges {
            rho = rho.min(mesh.primal_edges()[e].length / info.diameter);
        }
    }
    RegularityReport {
        h: mesh.h(),
        min_aspect: lo,
        max_aspect: hi,
        rho_e: rho,
        pass: rho >= min_rho_e && hi <= max_aspect,
    }
}
