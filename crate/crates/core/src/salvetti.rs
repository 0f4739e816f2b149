//! The Salvetti complex of a QMH complex and positive paths in it.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::complex::{build_complex, CellComplex, CellDescriptor, CellId, ComplexError, Vertex};
use crate::mh::{check_qmh, HemisphereMaps, Verdict, Witness};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SalvettiError {
    #[error("complex is not QMH: {0}")]
    NotQmh(Witness),
    #[error("unknown Salvetti cell {0}")]
    UnknownCell(String),
    #[error("not a positive path: {0}")]
    NotPositive(String),
    #[error("bad letter `{0}`")]
    BadLetter(String),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// The cell ⟨e;v⟩ over the cell `base` of Q with apex vertex `apex`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SalCell {
    pub base: CellId,
    pub apex: Vertex,
}

#[derive(Clone, Debug)]
pub struct SalvettiComplex {
    complex: CellComplex,
    cells: Vec<SalCell>,
    index: HashMap<(usize, Vertex), usize>,
    /// Outgoing 1-cell for each directed skeleton edge of Q.
    out_edges: HashMap<(Vertex, Vertex), usize>,
}

/// Builds Sal(Q) dimension by dimension.
///
/// Cells are created in the order of the cells of Q, and for each cell in
/// ascending apex order, so 0-cells keep their ordinals. Labels are
/// `<base>@<apex>` except for 0-cells, which keep the label of Q.
pub fn build_salvetti(q: &CellComplex) -> Result<SalvettiComplex, SalvettiError> {
    if let Verdict::Fail(w) = check_qmh(q).qmh {
        return Err(SalvettiError::NotQmh(w));
    }
    let maps = HemisphereMaps::compute(q).expect("qmh verified");
    let mut order: Vec<usize> = (0..q.num_cells()).collect();
    order.sort_by_key(|&i| (q.cell(i).dim, i));

    let mut descriptors = Vec::new();
    let mut cells = Vec::new();
    let mut index = HashMap::new();
    for &e in &order {
        let base = q.cell(e);
        for &v in q.verts(e) {
            let label = if base.dim == 0 {
                q.label(e).to_string()
            } else {
                format!("{}@{}", q.label(e), q.vertex_label(v))
            };
            let faces = if base.dim == 0 {
                Vec::new()
            } else {
                q.facets_of(base)?
                    .into_iter()
                    .map(|f| index[&(f, maps.nearest(v, f))])
                    .collect()
            };
            let vertices = if base.dim == 0 {
                Vec::new()
            } else {
                q.verts(e)
                    .iter()
                    .map(|&w| index[&(q.vertex_cell(w).index, w)])
                    .collect()
            };
            index.insert((e, v), descriptors.len());
            cells.push(SalCell { base, apex: v });
            descriptors.push(CellDescriptor {
                label,
                dim: base.dim,
                faces,
                vertices,
            });
        }
    }
    let complex = build_complex(descriptors)?;
    let mut out_edges = HashMap::new();
    for (i, cell) in cells.iter().enumerate() {
        if cell.base.dim == 1 {
            let other = q
                .verts(cell.base.index)
                .iter()
                .copied()
                .find(|&w| w != cell.apex)
                .unwrap();
            out_edges.entry((cell.apex, other)).or_insert(i);
        }
    }
    Ok(SalvettiComplex {
        complex,
        cells,
        index,
        out_edges,
    })
}

impl SalvettiComplex {
    pub fn complex(&self) -> &CellComplex {
        &self.complex
    }

    pub fn cell(&self, index: usize) -> SalCell {
        self.cells[index]
    }

    pub fn cells(&self) -> &[SalCell] {
        &self.cells
    }

    pub fn index_of(&self, cell: SalCell) -> Option<usize> {
        self.index
            .get(&(cell.base.index, cell.apex))
            .copied()
            .filter(|&i| self.cells[i] == cell)
    }

    /// ψ(⟨e;v⟩) = e.
    pub fn project(&self, cell: SalCell) -> Result<CellId, SalvettiError> {
        self.index_of(cell)
            .map(|_| cell.base)
            .ok_or_else(|| SalvettiError::UnknownCell(format!("{cell:?}")))
    }

    /// Indices of the Sal cells lying over the cell `e` of Q.
    pub fn fiber(&self, e: CellId) -> Vec<usize> {
        (0..self.cells.len())
            .filter(|&i| self.cells[i].base == e)
            .collect()
    }

    /// Directed 1-cells, in cell order.
    pub fn edges(&self) -> Vec<usize> {
        (0..self.cells.len())
            .filter(|&i| self.cells[i].base.dim == 1)
            .collect()
    }

    /// Source and target of a directed 1-cell.
    pub fn endpoints(&self, edge: usize) -> Option<(Vertex, Vertex)> {
        let cell = self.cells.get(edge)?;
        if cell.base.dim != 1 {
            return None;
        }
        let verts = self.complex.verts(edge);
        let target = if verts[0] == cell.apex {
            verts[1]
        } else {
            verts[0]
        };
        Some((cell.apex, target))
    }

    /// The 1-cell lifting the Q-edge from `v` to `w`.
    pub fn edge_between(&self, v: Vertex, w: Vertex) -> Option<usize> {
        self.out_edges.get(&(v, w)).copied()
    }

    /// The oppositely oriented 1-cell over the same edge of Q.
    pub fn twin(&self, edge: usize) -> Option<usize> {
        let (s, t) = self.endpoints(edge)?;
        self.index_of(SalCell {
            base: self.cells[edge].base,
            apex: t,
        })
        .filter(|_| s != t)
    }

    pub fn lift(&self, path: &PositivePath) -> Vec<usize> {
        path.vertices
            .windows(2)
            .map(|p| self.edge_between(p[0], p[1]).expect("validated path"))
            .collect()
    }

    /// Vertex sequence of a positive edge path.
    pub fn project_path(&self, edges: &[usize]) -> Result<PositivePath, SalvettiError> {
        let mut vertices = Vec::with_capacity(edges.len() + 1);
        for &e in edges {
            let (s, t) = self
                .endpoints(e)
                .ok_or_else(|| SalvettiError::NotPositive(format!("cell {} is not a 1-cell", e)))?;
            match vertices.last() {
                None => vertices.extend([s, t]),
                Some(&last) if last == s => vertices.push(t),
                Some(_) => {
                    return Err(SalvettiError::NotPositive(format!(
                        "edge {} does not start where the previous one ends",
                        self.complex.label(e)
                    )))
                }
            }
        }
        if vertices.is_empty() {
            return Err(SalvettiError::NotPositive("empty edge list".into()));
        }
        Ok(PositivePath { vertices })
    }

    pub fn parse_letter(&self, token: &str) -> Result<Letter, SalvettiError> {
        let bad = || SalvettiError::BadLetter(token.to_string());
        let (body, inverse) = match token.strip_suffix("^-1") {
            Some(b) => (b, true),
            None => (token, false),
        };
        let label = body.strip_prefix('e').ok_or_else(bad)?;
        let id = self.complex.lookup(label).ok_or_else(bad)?;
        if id.dim != 1 {
            return Err(bad());
        }
        Ok(Letter {
            edge: id.index,
            inverse,
        })
    }

    pub fn parse_word(&self, text: &str) -> Result<Vec<Letter>, SalvettiError> {
        text.split_whitespace()
            .map(|t| self.parse_letter(t))
            .collect()
    }

    pub fn render_letter(&self, letter: Letter) -> String {
        let inv = if letter.inverse { "^-1" } else { "" };
        format!("e{}{}", self.complex.label(letter.edge), inv)
    }

    pub fn render_word(&self, word: &[Letter]) -> String {
        word.iter()
            .map(|&l| self.render_letter(l))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// A generator of the free groupoid on the directed 1-cells, or its inverse.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub edge: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn inverted(self) -> Letter {
        Letter {
            edge: self.edge,
            inverse: !self.inverse,
        }
    }
}

/// γ° for a positive path given as directed 1-cells: the twins in reverse order.
pub fn opposite_path(s: &SalvettiComplex, edges: &[usize]) -> Result<Vec<usize>, SalvettiError> {
    s.project_path(edges)?;
    Ok(edges
        .iter()
        .rev()
        .map(|&e| s.twin(e).expect("1-cell over a regular edge"))
        .collect())
}

/// A positive path, recorded as its vertex sequence in Q.
///
/// The lift to Sal(Q) is unique once consecutive vertices are adjacent.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PositivePath {
    vertices: Vec<Vertex>,
}

impl PositivePath {
    pub fn new(q: &CellComplex, vertices: Vec<Vertex>) -> Result<Self, SalvettiError> {
        if vertices.is_empty() {
            return Err(SalvettiError::NotPositive("empty vertex sequence".into()));
        }
        if let Some(&v) = vertices.iter().find(|&&v| v >= q.num_vertices()) {
            return Err(SalvettiError::NotPositive(format!("unknown vertex {v}")));
        }
        for p in vertices.windows(2) {
            if q.distance(p[0], p[1]) != 1 {
                return Err(SalvettiError::NotPositive(format!(
                    "{} and {} are not adjacent",
                    q.vertex_label(p[0]),
                    q.vertex_label(p[1])
                )));
            }
        }
        Ok(PositivePath { vertices })
    }

    pub(crate) fn from_vertices_unchecked(vertices: Vec<Vertex>) -> Self {
        debug_assert!(!vertices.is_empty());
        PositivePath { vertices }
    }

    pub fn trivial(v: Vertex) -> Self {
        PositivePath { vertices: vec![v] }
    }

    /// Parses whitespace-separated vertex labels.
    pub fn parse(q: &CellComplex, text: &str) -> Result<Self, SalvettiError> {
        let vertices = text
            .split_whitespace()
            .map(|tok| {
                q.lookup(tok)
                    .and_then(|id| q.as_vertex(id))
                    .ok_or_else(|| SalvettiError::NotPositive(format!("unknown vertex `{tok}`")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        PositivePath::new(q, vertices)
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn source(&self) -> Vertex {
        self.vertices[0]
    }

    pub fn target(&self) -> Vertex {
        *self.vertices.last().unwrap()
    }

    pub fn is_minimal(&self, q: &CellComplex) -> bool {
        q.distance(self.source(), self.target()) == self.len()
    }

    /// γ°: the same Q-edges traversed backwards.
    pub fn opposite(&self) -> PositivePath {
        let mut vertices = self.vertices.clone();
        vertices.reverse();
        PositivePath { vertices }
    }

    /// Concatenation; `other` must start where `self` ends.
    pub fn concat(&self, other: &PositivePath) -> Option<PositivePath> {
        if self.target() != other.source() {
            return None;
        }
        let mut vertices = self.vertices.clone();
        vertices.extend_from_slice(&other.vertices[1..]);
        Some(PositivePath { vertices })
    }

    pub fn prefix(&self, len: usize) -> PositivePath {
        PositivePath {
            vertices: self.vertices[..=len].to_vec(),
        }
    }

    pub fn render(&self, q: &CellComplex) -> String {
        self.vertices
            .iter()
            .map(|&v| q.vertex_label(v))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for PositivePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.vertices.iter().map(|v| v.to_string()).collect();
        f.write_str(&parts.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::polygon;
    use crate::mh::check_mh;

    #[test]
    fn hexagon_salvetti_counts() {
        let hex = polygon(6, false).unwrap();
        let sal = build_salvetti(&hex).unwrap();
        assert_eq!(sal.complex().f_vector(), vec![6, 12]);
        let filled = polygon(6, true).unwrap();
        let sal = build_salvetti(&filled).unwrap();
        assert_eq!(sal.complex().f_vector(), vec![6, 12, 6]);
        for e in filled.cells() {
            assert_eq!(sal.fiber(e).len(), filled.vertices_of(e).unwrap().len());
        }
    }

    #[test]
    fn single_edge_salvetti() {
        let edge = crate::complex::build_complex(vec![
            CellDescriptor::vertex(),
            CellDescriptor::vertex(),
            CellDescriptor::new(1, vec![0, 1], vec![]),
        ])
        .unwrap();
        let sal = build_salvetti(&edge).unwrap();
        assert_eq!(sal.complex().f_vector(), vec![2, 2]);
        assert_eq!(sal.endpoints(sal.edge_between(0, 1).unwrap()), Some((0, 1)));
        assert_eq!(sal.endpoints(sal.edge_between(1, 0).unwrap()), Some((1, 0)));
    }

    #[test]
    fn boundary_follows_nearest_vertices() {
        let filled = polygon(6, true).unwrap();
        let sal = build_salvetti(&filled).unwrap();
        let maps = HemisphereMaps::compute(&filled).unwrap();
        for (i, cell) in sal.cells().iter().enumerate() {
            let closure = sal.complex().faces_of(sal.complex().cell(i)).unwrap();
            let expected: std::collections::BTreeSet<usize> = filled
                .faces_of(cell.base)
                .unwrap()
                .iter()
                .map(|&f| {
                    sal.index_of(SalCell {
                        base: filled.cell(f),
                        apex: maps.nearest(cell.apex, f),
                    })
                    .unwrap()
                })
                .collect();
            assert_eq!(
                closure
                    .iter()
                    .copied()
                    .collect::<std::collections::BTreeSet<_>>(),
                expected
            );
        }
    }

    #[test]
    fn salvetti_of_mh_is_mh() {
        let filled = polygon(6, true).unwrap();
        let sal = build_salvetti(&filled).unwrap();
        let report = check_mh(sal.complex());
        assert!(
            report.qmh.passed() && report.lmh.passed() && report.mh.passed(),
            "{report:?}"
        );
    }

    #[test]
    fn projection() {
        let filled = polygon(6, true).unwrap();
        let sal = build_salvetti(&filled).unwrap();
        let top = filled.cell(12);
        assert_eq!(sal.project(SalCell { base: top, apex: 4 }).unwrap(), top);
        assert_eq!(
            sal.project(SalCell {
                base: filled.cell(2),
                apex: 2
            })
            .unwrap(),
            filled.cell(2)
        );
        assert!(sal
            .project(SalCell {
                base: filled.cell(2),
                apex: 3
            })
            .is_err());
    }

    #[test]
    fn opposite_paths() {
        let hex = polygon(6, false).unwrap();
        let sal = build_salvetti(&hex).unwrap();
        let one = vec![sal.edge_between(0, 1).unwrap()];
        assert_eq!(
            opposite_path(&sal, &one).unwrap(),
            vec![sal.edge_between(1, 0).unwrap()]
        );
        let geodesic = PositivePath::new(&hex, vec![0, 1, 2, 3]).unwrap();
        let edges = sal.lift(&geodesic);
        let opp = opposite_path(&sal, &edges).unwrap();
        assert_eq!(opp.len(), 3);
        assert_eq!(sal.project_path(&opp).unwrap(), geodesic.opposite());
        assert_eq!(opposite_path(&sal, &opp).unwrap(), edges);
        let broken = vec![
            sal.edge_between(0, 1).unwrap(),
            sal.edge_between(3, 4).unwrap(),
        ];
        assert!(matches!(
            opposite_path(&sal, &broken),
            Err(SalvettiError::NotPositive(_))
        ));
    }

    #[test]
    fn letters_round_trip() {
        let hex = polygon(6, false).unwrap();
        let sal = build_salvetti(&hex).unwrap();
        let word = sal.parse_word("e6@0 e7@1^-1").unwrap();
        assert_eq!(sal.render_word(&word), "e6@0 e7@1^-1");
        assert!(word[1].inverse);
        assert!(sal.parse_word("e6@5").is_err());
        assert!(sal.parse_word("x6@0").is_err());
    }

    #[test]
    fn triangle_has_no_salvetti_complex() {
        assert!(matches!(
            build_salvetti(&polygon(3, false).unwrap()),
            Err(SalvettiError::NotQmh(_))
        ));
    }
}
