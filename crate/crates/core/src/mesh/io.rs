//! Mesh text format: a JSON object with `"vertices"` (array of `[x, y]`) and
//! `"cells"` (arrays of 0-based, counterclockwise vertex indices).

use std::fmt::Write as _;
use std::io::Read;

use serde::Deserialize;

use super::{MeshError, PrimalMesh};
use crate::geometry::point;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MeshFile {
    vertices: Vec<[f64; 2]>,
    cells: Vec<Vec<usize>>,
}

pub fn read_mesh<R: Read>(reader: R) -> Result<PrimalMesh, MeshError> {
    let file: MeshFile = serde_json::from_reader(reader).map_err(|e| {
        if e.is_io() {
            MeshError::Io(std::io::Error::other(e.to_string()))
        } else {
            MeshError::Parse {
                line: e.line(),
                column: e.column(),
                message: e.to_string(),
            }
        }
    })?;
    let vertices = file.vertices.iter().map(|v| point(v[0], v[1])).collect();
    PrimalMesh::new(vertices, file.cells)
}

/// One vertex or cell per line. Coordinates use the shortest representation
/// that parses back to the same `f64`.
pub fn write_mesh(mesh: &PrimalMesh) -> String {
    let mut s = String::from("{\"vertices\":[\n");
    let nv = mesh.num_vertices();
    for (i, v) in mesh.vertices().iter().enumerate() {
        let sep = if i + 1 < nv { "," } else { "" };
        let _ = writeln!(s, "[{:?},{:?}]{sep}", v.x, v.y);
    }
    s.push_str("],\"cells\":[\n");
    let nc = mesh.num_cells();
    for (c, cell) in mesh.cells().iter().enumerate() {
        let idx: Vec<String> = cell.iter().map(|i| i.to_string()).collect();
        let sep = if c + 1 < nc { "," } else { "" };
        let _ = writeln!(s, "[{}]{sep}", idx.join(","));
    }
    s.push_str("]}\n");
    s
}
