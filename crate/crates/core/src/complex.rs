//! Finite regular cell complexes stored as graded face posets.
//!
//! A [`CellComplex`] keeps, for every cell, its dimension, the closed set of
//! faces (the cell itself included) and its vertex set. Vertices are
//! addressed by their ordinal among the 0-cells, in declaration order; this is
//! the total order used wherever a canonical choice is needed downstream.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use thiserror::Error;

/// Ordinal of a 0-cell among the vertices of a complex.
pub type Vertex = usize;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CellId {
    pub index: usize,
    pub dim: usize,
}

impl fmt::Display for CellId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}(dim {})", self.index, self.dim)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("cell {cell}: {reason}")]
    NonRegular { cell: String, reason: String },
    #[error("1-skeleton is disconnected")]
    Disconnected,
    #[error("complex has no vertices")]
    Empty,
    #[error("unknown cell {0}")]
    UnknownCell(String),
    #[error("cell {cell}: face {face} is not a previously declared cell of smaller dimension")]
    BadFace { cell: String, face: String },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// Input record for [`build_complex`]: faces and vertices refer to indices of
/// previously declared cells.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellDescriptor {
    pub label: String,
    pub dim: usize,
    pub faces: Vec<usize>,
    pub vertices: Vec<usize>,
}

impl CellDescriptor {
    pub fn new(dim: usize, faces: Vec<usize>, vertices: Vec<usize>) -> Self {
        CellDescriptor {
            label: String::new(),
            dim,
            faces,
            vertices,
        }
    }

    pub fn vertex() -> Self {
        CellDescriptor::new(0, Vec::new(), Vec::new())
    }

    pub fn labelled(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }
}

#[derive(Clone, Debug)]
struct Cell {
    dim: usize,
    label: String,
    /// Closed face set, sorted by index, including the cell itself.
    closure: Vec<usize>,
    vertices: Vec<Vertex>,
}

#[derive(Debug)]
pub struct CellComplex {
    cells: Vec<Cell>,
    vertex_cells: Vec<usize>,
    cell_vertex: Vec<Option<Vertex>>,
    adjacency: Vec<Vec<Vertex>>,
    edges: Vec<usize>,
    star: Vec<Vec<usize>>,
    labels: HashMap<String, usize>,
    distances: Vec<OnceLock<Vec<u32>>>,
}

impl Clone for CellComplex {
    fn clone(&self) -> Self {
        CellComplex {
            cells: self.cells.clone(),
            vertex_cells: self.vertex_cells.clone(),
            cell_vertex: self.cell_vertex.clone(),
            adjacency: self.adjacency.clone(),
            edges: self.edges.clone(),
            star: self.star.clone(),
            labels: self.labels.clone(),
            distances: self
                .distances
                .iter()
                .map(|d| match d.get() {
                    Some(v) => OnceLock::from(v.clone()),
                    None => OnceLock::new(),
                })
                .collect(),
        }
    }
}

/// Validates the descriptors and assembles the complex.
///
/// Face lists are closed transitively. An empty vertex list on a positive
/// dimensional cell is derived from its faces; a non-empty one must contain
/// every vertex of every declared face.
pub fn build_complex(descriptors: Vec<CellDescriptor>) -> Result<CellComplex, ComplexError> {
    let mut cells: Vec<Cell> = Vec::with_capacity(descriptors.len());
    let mut vertex_cells = Vec::new();
    let mut cell_vertex = Vec::with_capacity(descriptors.len());
    let mut labels = HashMap::new();

    for (index, desc) in descriptors.into_iter().enumerate() {
        let label = if desc.label.is_empty() {
            index.to_string()
        } else {
            desc.label
        };
        if labels.insert(label.clone(), index).is_some() {
            return Err(ComplexError::NonRegular {
                cell: label,
                reason: "duplicate cell id".into(),
            });
        }
        let mut closure: BTreeSet<usize> = BTreeSet::new();
        closure.insert(index);
        for &f in &desc.faces {
            if f >= index || cells[f].dim >= desc.dim {
                let face = if f < index {
                    cells[f].label.clone()
                } else {
                    f.to_string()
                };
                return Err(ComplexError::BadFace { cell: label, face });
            }
            closure.extend(cells[f].closure.iter().copied());
        }
        let face_vertices: BTreeSet<Vertex> = closure
            .iter()
            .filter(|&&c| c != index)
            .flat_map(|&c| cells[c].vertices.iter().copied())
            .collect();

        if desc.dim == 0 {
            if !desc.faces.is_empty() {
                return Err(ComplexError::NonRegular {
                    cell: label,
                    reason: "0-cell with faces".into(),
                });
            }
            if desc.vertices.iter().any(|&v| v != index) {
                return Err(ComplexError::NonRegular {
                    cell: label,
                    reason: "0-cell vertex set must be itself".into(),
                });
            }
            let v = vertex_cells.len();
            vertex_cells.push(index);
            cell_vertex.push(Some(v));
            cells.push(Cell {
                dim: 0,
                label,
                closure: vec![index],
                vertices: vec![v],
            });
            continue;
        }

        let mut declared = BTreeSet::new();
        let mut duplicate = false;
        for &c in &desc.vertices {
            if c >= index {
                return Err(ComplexError::BadFace {
                    cell: label,
                    face: c.to_string(),
                });
            }
            let Some(v) = cell_vertex[c] else {
                return Err(ComplexError::NonRegular {
                    cell: label,
                    reason: format!("vertex entry {} is not a 0-cell", cells[c].label),
                });
            };
            duplicate |= !declared.insert(v);
        }
        let vertices: BTreeSet<Vertex> = if declared.is_empty() {
            face_vertices
        } else {
            if !face_vertices.is_subset(&declared) {
                return Err(ComplexError::NonRegular {
                    cell: label,
                    reason: "vertex set of a face is not contained in the vertex set".into(),
                });
            }
            declared
        };
        if desc.dim == 1 && (vertices.len() != 2 || duplicate) {
            return Err(ComplexError::NonRegular {
                cell: label,
                reason: "a 1-cell needs two distinct endpoints".into(),
            });
        }
        if vertices.len() < desc.dim + 1 {
            return Err(ComplexError::NonRegular {
                cell: label,
                reason: format!("{}-cell with only {} vertices", desc.dim, vertices.len()),
            });
        }
        for &v in &vertices {
            closure.insert(vertex_cells[v]);
        }
        cell_vertex.push(None);
        cells.push(Cell {
            dim: desc.dim,
            label,
            closure: closure.into_iter().collect(),
            vertices: vertices.into_iter().collect(),
        });
    }

    if vertex_cells.is_empty() {
        return Err(ComplexError::Empty);
    }
    let nv = vertex_cells.len();
    let mut adjacency = vec![BTreeSet::new(); nv];
    let mut edges = Vec::new();
    let mut star = vec![Vec::new(); nv];
    for (i, cell) in cells.iter().enumerate() {
        if cell.dim == 1 {
            let (a, b) = (cell.vertices[0], cell.vertices[1]);
            adjacency[a].insert(b);
            adjacency[b].insert(a);
            edges.push(i);
        }
        for &v in &cell.vertices {
            star[v].push(i);
        }
    }
    let adjacency: Vec<Vec<Vertex>> = adjacency
        .into_iter()
        .map(|s| s.into_iter().collect())
        .collect();

    let complex = CellComplex {
        cells,
        vertex_cells,
        cell_vertex,
        adjacency,
        edges,
        star,
        labels,
        distances: (0..nv).map(|_| OnceLock::new()).collect(),
    };
    if complex.distances_from(0).contains(&u32::MAX) {
        return Err(ComplexError::Disconnected);
    }
    Ok(complex)
}

impl CellComplex {
    pub fn num_cells(&self) -> usize {
        self.cells.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.vertex_cells.len()
    }

    pub fn cell(&self, index: usize) -> CellId {
        CellId {
            index,
            dim: self.cells[index].dim,
        }
    }

    pub fn cells(&self) -> impl Iterator<Item = CellId> + '_ {
        (0..self.cells.len()).map(|i| self.cell(i))
    }

    pub fn cells_of_dim(&self, dim: usize) -> impl Iterator<Item = CellId> + '_ {
        self.cells().filter(move |c| c.dim == dim)
    }

    pub fn dim(&self) -> usize {
        self.cells.iter().map(|c| c.dim).max().unwrap_or(0)
    }

    /// Number of cells in each dimension.
    pub fn f_vector(&self) -> Vec<usize> {
        let mut f = vec![0; self.dim() + 1];
        for c in &self.cells {
            f[c.dim] += 1;
        }
        f
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .map(|(d, &n)| if d % 2 == 0 { n as i64 } else { -(n as i64) })
            .sum()
    }

    pub fn label(&self, index: usize) -> &str {
        &self.cells[index].label
    }

    pub fn lookup(&self, label: &str) -> Option<CellId> {
        self.labels.get(label).map(|&i| self.cell(i))
    }

    pub fn vertex_label(&self, v: Vertex) -> &str {
        self.label(self.vertex_cells[v])
    }

    /// Cell index of the 0-cell with ordinal `v`.
    pub fn vertex_cell(&self, v: Vertex) -> CellId {
        self.cell(self.vertex_cells[v])
    }

    /// Vertex ordinal of a 0-cell.
    pub fn as_vertex(&self, e: CellId) -> Option<Vertex> {
        self.cell_vertex.get(e.index).copied().flatten()
    }

    fn check(&self, e: CellId) -> Result<&Cell, ComplexError> {
        match self.cells.get(e.index) {
            Some(c) if c.dim == e.dim => Ok(c),
            _ => Err(ComplexError::UnknownCell(e.to_string())),
        }
    }

    /// V(e), sorted.
    pub fn vertices_of(&self, e: CellId) -> Result<&[Vertex], ComplexError> {
        Ok(&self.check(e)?.vertices)
    }

    /// Q(e): every cell contained in `e`, `e` included, sorted by index.
    pub fn faces_of(&self, e: CellId) -> Result<&[usize], ComplexError> {
        Ok(&self.check(e)?.closure)
    }

    pub(crate) fn verts(&self, index: usize) -> &[Vertex] {
        &self.cells[index].vertices
    }

    pub(crate) fn closure(&self, index: usize) -> &[usize] {
        &self.cells[index].closure
    }

    /// Faces of codimension one.
    pub fn facets_of(&self, e: CellId) -> Result<Vec<usize>, ComplexError> {
        let cell = self.check(e)?;
        Ok(cell
            .closure
            .iter()
            .copied()
            .filter(|&f| self.cells[f].dim + 1 == cell.dim)
            .collect())
    }

    /// Strict face relation `a < b`.
    pub fn is_proper_face(&self, a: usize, b: usize) -> bool {
        a != b && self.cells[b].closure.binary_search(&a).is_ok()
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adjacency[v]
    }

    /// Indices of the 1-cells.
    pub fn edges(&self) -> &[usize] {
        &self.edges
    }

    /// Indices of all cells having `v` as a vertex.
    pub fn star(&self, v: Vertex) -> &[usize] {
        &self.star[v]
    }

    /// Cells of dimension `dim` whose vertex set contains every vertex of `vs`.
    pub fn cells_containing(&self, vs: &[Vertex], dim: usize) -> Vec<usize> {
        let Some(&first) = vs.first() else {
            return Vec::new();
        };
        self.star[first]
            .iter()
            .copied()
            .filter(|&c| {
                self.cells[c].dim == dim
                    && vs
                        .iter()
                        .all(|v| self.cells[c].vertices.binary_search(v).is_ok())
            })
            .collect()
    }

    /// Breadth-first distances from `v` in the 1-skeleton, memoized.
    pub fn distances_from(&self, v: Vertex) -> &[u32] {
        self.distances[v].get_or_init(|| {
            let mut dist = vec![u32::MAX; self.num_vertices()];
            let mut queue = VecDeque::from([v]);
            dist[v] = 0;
            while let Some(u) = queue.pop_front() {
                for &w in &self.adjacency[u] {
                    if dist[w] == u32::MAX {
                        dist[w] = dist[u] + 1;
                        queue.push_back(w);
                    }
                }
            }
            dist
        })
    }

    pub fn distance(&self, v: Vertex, w: Vertex) -> usize {
        self.distances_from(v)[w] as usize
    }

    pub fn diameter(&self) -> usize {
        (0..self.num_vertices())
            .map(|v| *self.distances_from(v).iter().max().unwrap() as usize)
            .max()
            .unwrap_or(0)
    }

    /// Descriptors that rebuild this complex (facets only, labels kept).
    pub fn descriptors(&self) -> Vec<CellDescriptor> {
        self.cells
            .iter()
            .enumerate()
            .map(|(i, c)| CellDescriptor {
                label: c.label.clone(),
                dim: c.dim,
                faces: c
                    .closure
                    .iter()
                    .copied()
                    .filter(|&f| f != i && self.cells[f].dim + 1 == c.dim)
                    .collect(),
                vertices: if c.dim == 0 {
                    Vec::new()
                } else {
                    c.vertices.iter().map(|&v| self.vertex_cells[v]).collect()
                },
            })
            .collect()
    }

    /// Serializes in the line-oriented complex format.
    pub fn to_text(&self) -> String {
        let mut out = format!("cells {}\n", self.cells.len());
        for d in self.descriptors() {
            let faces: Vec<&str> = d.faces.iter().map(|&f| self.label(f)).collect();
            let verts: Vec<&str> = d.vertices.iter().map(|&v| self.label(v)).collect();
            out.push_str(&format!(
                "{} {} faces={} verts={}\n",
                d.label,
                d.dim,
                faces.join(","),
                verts.join(",")
            ));
        }
        out
    }

    /// The subcomplex formed by the closed cell `e`, with labels preserved.
    ///
    /// Returns the subcomplex together with the map from its cell indices to
    /// the indices of `self`.
    pub fn closed_cell(&self, e: CellId) -> Result<(CellComplex, Vec<usize>), ComplexError> {
        let members = self.faces_of(e)?.to_vec();
        let position: HashMap<usize, usize> =
            members.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let descriptors = members
            .iter()
            .map(|&c| {
                let cell = &self.cells[c];
                CellDescriptor {
                    label: cell.label.clone(),
                    dim: cell.dim,
                    faces: cell
                        .closure
                        .iter()
                        .filter(|&&f| f != c)
                        .map(|f| position[f])
                        .collect(),
                    vertices: if cell.dim == 0 {
                        Vec::new()
                    } else {
                        cell.vertices
                            .iter()
                            .map(|&v| position[&self.vertex_cells[v]])
                            .collect()
                    },
                }
            })
            .collect();
        Ok((build_complex(descriptors)?, members))
    }
}

/// Parses the line-oriented complex format:
///
/// ```text
/// cells 3
/// a 0 faces= verts=
/// b 0 faces= verts=
/// ab 1 faces=a,b verts=a,b
/// ```
pub fn parse_complex(text: &str) -> Result<CellComplex, ComplexError> {
    let mut expected = None;
    let mut descriptors: Vec<CellDescriptor> = Vec::new();
    let mut ids: HashMap<String, usize> = HashMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let err = |message: String| ComplexError::Parse {
            line: lineno + 1,
            message,
        };
        let mut tokens = line.split_whitespace();
        if expected.is_none() {
            match (tokens.next(), tokens.next()) {
                (Some("cells"), Some(n)) => {
                    expected = Some(
                        n.parse::<usize>()
                            .map_err(|e| err(format!("bad cell count: {e}")))?,
                    )
                }
                _ => return Err(err("expected header `cells <n>`".into())),
            }
            continue;
        }
        let id = tokens.next().unwrap().to_string();
        let dim = tokens
            .next()
            .ok_or_else(|| err("missing dimension".into()))?
            .parse::<usize>()
            .map_err(|e| err(format!("bad dimension: {e}")))?;
        let mut faces = Vec::new();
        let mut vertices = Vec::new();
        for tok in tokens {
            let (key, list) = tok
                .split_once('=')
                .ok_or_else(|| err(format!("unexpected token `{tok}`")))?;
            let target = match key {
                "faces" => &mut faces,
                "verts" => &mut vertices,
                _ => return Err(err(format!("unknown field `{key}`"))),
            };
            for name in list.split(',').filter(|s| !s.is_empty()) {
                let &idx = ids
                    .get(name)
                    .ok_or_else(|| err(format!("reference to undeclared cell `{name}`")))?;
                target.push(idx);
            }
        }
        if dim == 0 && vertices.len() == 1 && vertices[0] == descriptors.len() {
            vertices.clear();
        }
        if ids.insert(id.clone(), descriptors.len()).is_some() {
            return Err(err(format!("duplicate cell id `{id}`")));
        }
        descriptors.push(CellDescriptor {
            label: id,
            dim,
            faces,
            vertices,
        });
    }
    match expected {
        None => Err(ComplexError::Parse {
            line: 0,
            message: "empty complex file".into(),
        }),
        Some(n) if n != descriptors.len() => Err(ComplexError::Parse {
            line: 0,
            message: format!("header announces {n} cells, found {}", descriptors.len()),
        }),
        Some(_) => build_complex(descriptors),
    }
}

/// A cycle on `n` vertices, optionally filled with a single 2-cell.
pub fn polygon(n: usize, filled: bool) -> Result<CellComplex, ComplexError> {
    let mut cells: Vec<CellDescriptor> = (0..n).map(|_| CellDescriptor::vertex()).collect();
    for i in 0..n {
        cells.push(CellDescriptor::new(
            1,
            vec![i, (i + 1) % n],
            vec![i, (i + 1) % n],
        ));
    }
    if filled {
        cells.push(CellDescriptor::new(
            2,
            (n..2 * n).collect(),
            (0..n).collect(),
        ));
    }
    build_complex(cells)
}
