//! Nearest/farthest vertex maps and the QMH, LMH and MH properties.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::complex::{CellComplex, CellId, ComplexError, Vertex};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Extremum {
    Nearest,
    Farthest,
}

impl fmt::Display for Extremum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Extremum::Nearest => "nearest",
            Extremum::Farthest => "farthest",
        })
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MhError {
    #[error("{extremum} vertex of cell {cell} from vertex {v} is not unique")]
    Tie {
        v: Vertex,
        cell: usize,
        extremum: Extremum,
    },
    #[error("complex is not involutive: {0}")]
    NotInvolutive(Witness),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// A tuple refuting one of the checked properties.
///
/// Vertex and cell indices refer to the complex the check ran on, except
/// inside [`Witness::InCell`], whose inner witness is expressed in the
/// closed subcomplex of that cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    Tie {
        v: Vertex,
        cell: usize,
        extremum: Extremum,
        candidates: (Vertex, Vertex),
    },
    ConditionA {
        v: Vertex,
        cell: usize,
        face: usize,
    },
    ConditionB {
        v: Vertex,
        cell: usize,
        face: usize,
    },
    Additive {
        v: Vertex,
        cell: usize,
        w: Vertex,
    },
    InCell {
        cell: usize,
        inner: Box<Witness>,
    },
    Incompatible {
        v: Vertex,
        face: usize,
        cells: (usize, usize),
        extremum: Extremum,
    },
    GlobalLocal {
        v: Vertex,
        cell: usize,
        face: usize,
        extremum: Extremum,
    },
    FarthestTie {
        v: Vertex,
        candidates: (Vertex, Vertex),
    },
    NotOrderTwo {
        v: Vertex,
    },
    NotAdditive {
        v: Vertex,
        w: Vertex,
    },
    NotAutomorphism {
        a: Vertex,
        b: Vertex,
    },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Tie {
                v,
                cell,
                extremum,
                candidates,
            } => {
                write!(
                    f,
                    "({v},#{cell}) {extremum} tie {}/{}",
                    candidates.0, candidates.1
                )
            }
            Witness::ConditionA { v, cell, face } => write!(f, "({v},#{cell},#{face}) condition A"),
            Witness::ConditionB { v, cell, face } => write!(f, "({v},#{cell},#{face}) condition B"),
            Witness::Additive { v, cell, w } => write!(f, "({v},#{cell},{w}) additivity"),
            Witness::InCell { cell, inner } => write!(f, "in #{cell}: {inner}"),
            Witness::Incompatible {
                v,
                face,
                cells,
                extremum,
            } => {
                write!(
                    f,
                    "({v},#{face}) {extremum} differs in #{} and #{}",
                    cells.0, cells.1
                )
            }
            Witness::GlobalLocal {
                v,
                cell,
                face,
                extremum,
            } => {
                write!(
                    f,
                    "({v},#{cell},#{face}) global and local {extremum} differ"
                )
            }
            Witness::FarthestTie { v, candidates } => {
                write!(f, "({v}) farthest tie {}/{}", candidates.0, candidates.1)
            }
            Witness::NotOrderTwo { v } => write!(f, "({v}) phi(phi(v)) != v"),
            Witness::NotAdditive { v, w } => write!(f, "({v},{w}) d(v,phi v) != d(v,w)+d(w,phi v)"),
            Witness::NotAutomorphism { a, b } => write!(f, "({a},{b}) edge not mapped to an edge"),
        }
    }
}

impl Witness {
    /// Renders the witness with the labels of `c`.
    pub fn render(&self, c: &CellComplex) -> String {
        let v = |x: &Vertex| c.vertex_label(*x).to_string();
        let e = |x: &usize| c.label(*x).to_string();
        match self {
            Witness::Tie {
                v: x,
                cell,
                extremum,
                candidates,
            } => format!(
                "({},{}) {extremum} tie {}/{}",
                v(x),
                e(cell),
                v(&candidates.0),
                v(&candidates.1)
            ),
            Witness::ConditionA { v: x, cell, face } => {
                format!("({},{},{}) condition A", v(x), e(cell), e(face))
            }
            Witness::ConditionB { v: x, cell, face } => {
                format!("({},{},{}) condition B", v(x), e(cell), e(face))
            }
            Witness::Additive { v: x, cell, w } => {
                format!("({},{},{}) additivity", v(x), e(cell), v(w))
            }
            Witness::InCell { cell, inner } => match c.closed_cell(c.cell(*cell)) {
                Ok((sub, _)) => format!("in {}: {}", e(cell), inner.render(&sub)),
                Err(_) => self.to_string(),
            },
            Witness::Incompatible {
                v: x,
                face,
                cells,
                extremum,
            } => format!(
                "({},{}) {extremum} differs in {} and {}",
                v(x),
                e(face),
                e(&cells.0),
                e(&cells.1)
            ),
            Witness::GlobalLocal {
                v: x,
                cell,
                face,
                extremum,
            } => {
                format!(
                    "({},{},{}) global and local {extremum} differ",
                    v(x),
                    e(cell),
                    e(face)
                )
            }
            Witness::FarthestTie { v: x, candidates } => {
                format!(
                    "({}) farthest tie {}/{}",
                    v(x),
                    v(&candidates.0),
                    v(&candidates.1)
                )
            }
            Witness::NotOrderTwo { v: x } => format!("({}) phi(phi(v)) != v", v(x)),
            Witness::NotAdditive { v: x, w } => {
                format!("({},{}) d(v,phi v) != d(v,w)+d(w,phi v)", v(x), v(w))
            }
            Witness::NotAutomorphism { a, b } => {
                format!("({},{}) edge not mapped to an edge", v(a), v(b))
            }
        }
    }

    /// Re-derives the refutation from skeleton distances alone.
    pub fn refutes(&self, c: &CellComplex) -> bool {
        let ext = |v: Vertex, cell: usize, x: Extremum| unique_extreme(c, v, c.verts(cell), x).ok();
        match *self {
            Witness::Tie {
                v, cell, extremum, ..
            } => ext(v, cell, extremum).is_none(),
            Witness::ConditionA { v, cell, face } => {
                let (Some(n), Some(f)) = (
                    ext(v, cell, Extremum::Nearest),
                    ext(v, cell, Extremum::Farthest),
                ) else {
                    return true;
                };
                let target = ext(v, face, Extremum::Nearest);
                target != ext(n, face, Extremum::Nearest)
                    || target != ext(f, face, Extremum::Farthest)
            }
            Witness::ConditionB { v, cell, face } => {
                let (Some(n), Some(f)) = (
                    ext(v, cell, Extremum::Nearest),
                    ext(v, cell, Extremum::Farthest),
                ) else {
                    return true;
                };
                let target = ext(v, face, Extremum::Farthest);
                target != ext(f, face, Extremum::Nearest)
                    || target != ext(n, face, Extremum::Farthest)
            }
            Witness::Additive { v, cell, w } => match ext(v, cell, Extremum::Farthest) {
                Some(f) => c.distance(v, f) != c.distance(v, w) + c.distance(w, f),
                None => true,
            },
            Witness::InCell { cell, ref inner } => match c.closed_cell(c.cell(cell)) {
                Ok((sub, _)) => inner.refutes(&sub),
                Err(_) => false,
            },
            Witness::Incompatible {
                v,
                face,
                cells,
                extremum,
            } => {
                local_extreme(c, cells.0, v, face, extremum)
                    != local_extreme(c, cells.1, v, face, extremum)
            }
            Witness::GlobalLocal {
                v,
                cell,
                face,
                extremum,
            } => ext(v, face, extremum) != local_extreme(c, cell, v, face, extremum),
            Witness::FarthestTie { v, .. } => {
                let all: Vec<Vertex> = (0..c.num_vertices()).collect();
                unique_extreme(c, v, &all, Extremum::Farthest).is_err()
            }
            Witness::NotOrderTwo { v } => {
                let far = |x| {
                    let all: Vec<Vertex> = (0..c.num_vertices()).collect();
                    unique_extreme(c, x, &all, Extremum::Farthest).ok()
                };
                far(v).and_then(far) != Some(v)
            }
            Witness::NotAdditive { v, w } => {
                let all: Vec<Vertex> = (0..c.num_vertices()).collect();
                match unique_extreme(c, v, &all, Extremum::Farthest) {
                    Ok(p) => c.distance(v, p) != c.distance(v, w) + c.distance(w, p),
                    Err(_) => true,
                }
            }
            Witness::NotAutomorphism { a, b } => {
                let all: Vec<Vertex> = (0..c.num_vertices()).collect();
                match (
                    unique_extreme(c, a, &all, Extremum::Farthest),
                    unique_extreme(c, b, &all, Extremum::Farthest),
                ) {
                    (Ok(pa), Ok(pb)) => c.distance(a, b) == 1 && c.distance(pa, pb) != 1,
                    _ => true,
                }
            }
        }
    }
}

/// Extremum of d(v, ·) over `verts`. On a tie returns two tied candidates.
fn unique_extreme(
    c: &CellComplex,
    v: Vertex,
    verts: &[Vertex],
    ext: Extremum,
) -> Result<Vertex, (Vertex, Vertex)> {
    let dist = c.distances_from(v);
    let mut best = verts[0];
    let mut tie: Option<Vertex> = None;
    for &w in &verts[1..] {
        let better = match ext {
            Extremum::Nearest => dist[w] < dist[best],
            Extremum::Farthest => dist[w] > dist[best],
        };
        if better {
            best = w;
            tie = None;
        } else if dist[w] == dist[best] {
            tie.get_or_insert(w);
        }
    }
    match tie {
        Some(t) => Err((best, t)),
        None => Ok(best),
    }
}

/// Extremum computed inside the closed subcomplex of `cell`, in global terms.
fn local_extreme(
    c: &CellComplex,
    cell: usize,
    v: Vertex,
    face: usize,
    ext: Extremum,
) -> Option<Vertex> {
    let (sub, map) = c.closed_cell(c.cell(cell)).ok()?;
    let to_sub = |x: Vertex| {
        let idx = map.iter().position(|&m| m == c.vertex_cell(x).index)?;
        sub.as_vertex(sub.cell(idx))
    };
    let face_sub = map.iter().position(|&m| m == face)?;
    let w = unique_extreme(&sub, to_sub(v)?, sub.verts(face_sub), ext).ok()?;
    c.as_vertex(c.cell(map[sub.vertex_cell(w).index]))
}

/// w̲(v,e): the unique vertex of `e` nearest to `v`.
pub fn nearest_vertex(c: &CellComplex, v: Vertex, e: CellId) -> Result<Vertex, MhError> {
    let verts = c.vertices_of(e)?;
    unique_extreme(c, v, verts, Extremum::Nearest).map_err(|_| MhError::Tie {
        v,
        cell: e.index,
        extremum: Extremum::Nearest,
    })
}

/// w̄(v,e): the unique vertex of `e` farthest from `v`.
pub fn farthest_vertex(c: &CellComplex, v: Vertex, e: CellId) -> Result<Vertex, MhError> {
    let verts = c.vertices_of(e)?;
    unique_extreme(c, v, verts, Extremum::Farthest).map_err(|_| MhError::Tie {
        v,
        cell: e.index,
        extremum: Extremum::Farthest,
    })
}

/// Tabulated w̲ and w̄ for every (vertex, cell) pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HemisphereMaps {
    nv: usize,
    nearest: Vec<Vertex>,
    farthest: Vec<Vertex>,
}

impl HemisphereMaps {
    pub fn compute(c: &CellComplex) -> Result<Self, MhError> {
        Self::tabulate(c).map_err(|w| match w {
            Witness::Tie {
                v, cell, extremum, ..
            } => MhError::Tie { v, cell, extremum },
            other => unreachable!("tabulate only reports ties, got {other}"),
        })
    }

    fn tabulate(c: &CellComplex) -> Result<Self, Witness> {
        let nv = c.num_vertices();
        let mut nearest = vec![0; nv * c.num_cells()];
        let mut farthest = vec![0; nv * c.num_cells()];
        for v in 0..nv {
            for cell in 0..c.num_cells() {
                let verts = c.verts(cell);
                for (ext, out) in [
                    (Extremum::Nearest, &mut nearest),
                    (Extremum::Farthest, &mut farthest),
                ] {
                    match unique_extreme(c, v, verts, ext) {
                        Ok(w) => out[cell * nv + v] = w,
                        Err(candidates) => {
                            return Err(Witness::Tie {
                                v,
                                cell,
                                extremum: ext,
                                candidates,
                            })
                        }
                    }
                }
            }
        }
        Ok(HemisphereMaps {
            nv,
            nearest,
            farthest,
        })
    }

    pub fn nearest(&self, v: Vertex, cell: usize) -> Vertex {
        self.nearest[cell * self.nv + v]
    }

    pub fn farthest(&self, v: Vertex, cell: usize) -> Vertex {
        self.farthest[cell * self.nv + v]
    }

    pub fn get(&self, v: Vertex, cell: usize, ext: Extremum) -> Vertex {
        match ext {
            Extremum::Nearest => self.nearest(v, cell),
            Extremum::Farthest => self.farthest(v, cell),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail(Witness),
}

impl Verdict {
    pub fn passed(&self) -> bool {
        matches!(self, Verdict::Pass)
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::Pass => None,
            Verdict::Fail(w) => Some(w),
        }
    }

    fn from_result(r: Result<(), Witness>) -> Self {
        match r {
            Ok(()) => Verdict::Pass,
            Err(w) => Verdict::Fail(w),
        }
    }

    /// `PASS` or `FAIL witness=...` with the labels of `c`.
    pub fn render(&self, c: &CellComplex) -> String {
        match self {
            Verdict::Pass => "PASS".to_string(),
            Verdict::Fail(w) => format!("FAIL witness={}", w.render(c)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QmhReport {
    /// Uniqueness together with conditions (A) and (B).
    pub qmh: Verdict,
    /// Uniqueness together with d(v,w̄) = d(v,w) + d(w,w̄) for w in V(e).
    pub additive_identity: Verdict,
    /// Whether the two formulations gave the same verdict.
    pub agree: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MhReport {
    pub qmh: Verdict,
    pub lmh: Verdict,
    pub mh: Verdict,
    pub additive_identity: Verdict,
    pub agree: bool,
}

impl MhReport {
    /// One line per property: `<prop> PASS|FAIL [witness=...]`.
    pub fn render(&self, c: &CellComplex) -> String {
        format!(
            "qmh {}\nlmh {}\nmh {}\nadditive-identity {}\n",
            self.qmh.render(c),
            self.lmh.render(c),
            self.mh.render(c),
            self.additive_identity.render(c)
        )
    }
}

fn conditions_ab(c: &CellComplex, maps: &HemisphereMaps) -> Result<(), Witness> {
    for v in 0..c.num_vertices() {
        for cell in 0..c.num_cells() {
            let n = maps.nearest(v, cell);
            let f = maps.farthest(v, cell);
            for &face in c.closure(cell) {
                let a = maps.nearest(v, face);
                if a != maps.nearest(n, face) || a != maps.farthest(f, face) {
                    return Err(Witness::ConditionA { v, cell, face });
                }
                let b = maps.farthest(v, face);
                if b != maps.nearest(f, face) || b != maps.farthest(n, face) {
                    return Err(Witness::ConditionB { v, cell, face });
                }
            }
        }
    }
    Ok(())
}

fn additive(c: &CellComplex, maps: &HemisphereMaps) -> Result<(), Witness> {
    for v in 0..c.num_vertices() {
        for cell in 0..c.num_cells() {
            let f = maps.farthest(v, cell);
            for &w in c.verts(cell) {
                if c.distance(v, f) != c.distance(v, w) + c.distance(w, f) {
                    return Err(Witness::Additive { v, cell, w });
                }
            }
        }
    }
    Ok(())
}

/// Checks conditions (i)-(iii) and, independently, the additive formulation.
pub fn check_qmh(c: &CellComplex) -> QmhReport {
    match HemisphereMaps::tabulate(c) {
        Err(tie) => QmhReport {
            qmh: Verdict::Fail(tie.clone()),
            additive_identity: Verdict::Fail(tie),
            agree: true,
        },
        Ok(maps) => {
            let qmh = Verdict::from_result(conditions_ab(c, &maps));
            let additive_identity = Verdict::from_result(additive(c, &maps));
            let agree = qmh.passed() == additive_identity.passed();
            QmhReport {
                qmh,
                additive_identity,
                agree,
            }
        }
    }
}

/// Maps of one closed cell, computed with its own skeleton distances and
/// keyed by global (vertex, cell) indices.
struct LocalTable {
    cell: usize,
    maps: HashMap<(Vertex, usize), (Vertex, Vertex)>,
}

fn local_table(c: &CellComplex, cell: usize) -> Result<LocalTable, Witness> {
    let (sub, map) = c
        .closed_cell(c.cell(cell))
        .expect("closed cell of a valid complex is valid");
    let report = check_qmh(&sub);
    if let Verdict::Fail(inner) = report.qmh {
        return Err(Witness::InCell {
            cell,
            inner: Box::new(inner),
        });
    }
    let local = HemisphereMaps::tabulate(&sub).expect("qmh passed");
    let global_vertex = |x: Vertex| c.as_vertex(c.cell(map[sub.vertex_cell(x).index])).unwrap();
    let mut maps = HashMap::new();
    for face in 0..sub.num_cells() {
        for v in 0..sub.num_vertices() {
            maps.insert(
                (global_vertex(v), map[face]),
                (
                    global_vertex(local.nearest(v, face)),
                    global_vertex(local.farthest(v, face)),
                ),
            );
        }
    }
    Ok(LocalTable { cell, maps })
}

fn local_tables(c: &CellComplex) -> Result<Vec<LocalTable>, Witness> {
    let tables = (0..c.num_cells())
        .map(|cell| local_table(c, cell))
        .collect::<Result<Vec<_>, _>>()?;
    let mut seen: HashMap<(Vertex, usize), (usize, Vertex, Vertex)> = HashMap::new();
    for table in &tables {
        let mut keys: Vec<_> = table.maps.keys().copied().collect();
        keys.sort_unstable();
        for key in keys {
            let (n, f) = table.maps[&key];
            match seen.get(&key) {
                None => {
                    seen.insert(key, (table.cell, n, f));
                }
                Some(&(other, n0, f0)) => {
                    let extremum = if n != n0 {
                        Extremum::Nearest
                    } else if f != f0 {
                        Extremum::Farthest
                    } else {
                        continue;
                    };
                    return Err(Witness::Incompatible {
                        v: key.0,
                        face: key.1,
                        cells: (other, table.cell),
                        extremum,
                    });
                }
            }
        }
    }
    Ok(tables)
}

/// Every closed cell is QMH in its own metric and the local maps agree on
/// shared faces.
pub fn check_lmh(c: &CellComplex) -> Verdict {
    Verdict::from_result(local_tables(c).map(|_| ()))
}

pub fn check_mh(c: &CellComplex) -> MhReport {
    let q = check_qmh(c);
    let local = local_tables(c);
    let lmh = match &local {
        Ok(_) => Verdict::Pass,
        Err(w) => Verdict::Fail(w.clone()),
    };
    let mh = match (&q.qmh, &local) {
        (Verdict::Fail(w), _) => Verdict::Fail(w.clone()),
        (_, Err(w)) => Verdict::Fail(w.clone()),
        (Verdict::Pass, Ok(tables)) => {
            let maps = HemisphereMaps::tabulate(c).expect("qmh passed");
            Verdict::from_result(global_local(c, &maps, tables))
        }
    };
    MhReport {
        qmh: q.qmh,
        lmh,
        mh,
        additive_identity: q.additive_identity,
        agree: q.agree,
    }
}

fn global_local(
    c: &CellComplex,
    maps: &HemisphereMaps,
    tables: &[LocalTable],
) -> Result<(), Witness> {
    for table in tables {
        let cell = table.cell;
        for &face in c.closure(cell) {
            for &v in c.verts(cell) {
                let (n, f) = table.maps[&(v, face)];
                if maps.nearest(v, face) != n {
                    return Err(Witness::GlobalLocal {
                        v,
                        cell,
                        face,
                        extremum: Extremum::Nearest,
                    });
                }
                if maps.farthest(v, face) != f {
                    return Err(Witness::GlobalLocal {
                        v,
                        cell,
                        face,
                        extremum: Extremum::Farthest,
                    });
                }
            }
        }
    }
    Ok(())
}

/// The involution φ: each vertex sent to its unique farthest vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Involution {
    phi: Vec<Vertex>,
}

impl Involution {
    pub fn apply(&self, v: Vertex) -> Vertex {
        self.phi[v]
    }

    /// φ applied `k` times.
    pub fn pow(&self, v: Vertex, k: usize) -> Vertex {
        if k.is_multiple_of(2) {
            v
        } else {
            self.phi[v]
        }
    }

    pub fn as_slice(&self) -> &[Vertex] {
        &self.phi
    }
}

pub fn find_involution(c: &CellComplex) -> Result<Involution, MhError> {
    let all: Vec<Vertex> = (0..c.num_vertices()).collect();
    let mut phi = Vec::with_capacity(all.len());
    for &v in &all {
        match unique_extreme(c, v, &all, Extremum::Farthest) {
            Ok(p) => phi.push(p),
            Err(candidates) => {
                return Err(MhError::NotInvolutive(Witness::FarthestTie {
                    v,
                    candidates,
                }))
            }
        }
    }
    for &v in &all {
        if phi[phi[v]] != v {
            return Err(MhError::NotInvolutive(Witness::NotOrderTwo { v }));
        }
        for &w in &all {
            if c.distance(v, phi[v]) != c.distance(v, w) + c.distance(w, phi[v]) {
                return Err(MhError::NotInvolutive(Witness::NotAdditive { v, w }));
            }
        }
        for &w in c.neighbors(v) {
            if c.distance(phi[v], phi[w]) != 1 {
                return Err(MhError::NotInvolutive(Witness::NotAutomorphism {
                    a: v,
                    b: w,
                }));
            }
        }
    }
    Ok(Involution { phi })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{build_complex, polygon, CellDescriptor};

    fn triangle() -> CellComplex {
        polygon(3, false).unwrap()
    }

    fn single_edge() -> CellComplex {
        build_complex(vec![
            CellDescriptor::vertex(),
            CellDescriptor::vertex(),
            CellDescriptor::new(1, vec![0, 1], vec![]),
        ])
        .unwrap()
    }

    #[test]
    fn hexagon_nearest_and_farthest() {
        let hex = polygon(6, false).unwrap();
        // edge 6 joins vertices 0 and 1; vertex 5 is adjacent to 0
        let e = hex.cell(6);
        assert_eq!(nearest_vertex(&hex, 0, e).unwrap(), 0);
        assert_eq!(nearest_vertex(&hex, 5, e).unwrap(), 0);
        assert_eq!(farthest_vertex(&hex, 5, e).unwrap(), 1);
        assert_eq!(farthest_vertex(&hex, 0, e).unwrap(), 1);
    }

    #[test]
    fn completed_hexagon_farthest_is_antipode() {
        let hex = polygon(6, true).unwrap();
        let top = hex.cell(12);
        for v in 0..6 {
            assert_eq!(farthest_vertex(&hex, v, top).unwrap(), (v + 3) % 6);
        }
    }

    #[test]
    fn triangle_ties() {
        let t = triangle();
        // edge 4 joins vertices 1 and 2
        let e = t.cell(4);
        assert_eq!(
            nearest_vertex(&t, 0, e).unwrap_err(),
            MhError::Tie {
                v: 0,
                cell: 4,
                extremum: Extremum::Nearest
            }
        );
        assert_eq!(farthest_vertex(&t, 1, e).unwrap(), 2);
        let report = check_qmh(&t);
        let w = report.qmh.witness().unwrap();
        assert!(matches!(w, Witness::Tie { v: 0, cell: 4, .. }));
        assert!(w.refutes(&t));
        assert!(!check_mh(&t).mh.passed());
    }

    #[test]
    fn hexagons_are_mh() {
        for filled in [false, true] {
            let hex = polygon(6, filled).unwrap();
            let report = check_mh(&hex);
            assert!(
                report.qmh.passed() && report.lmh.passed() && report.mh.passed(),
                "{report:?}"
            );
            assert!(report.additive_identity.passed());
            assert!(report.agree);
        }
    }

    #[test]
    fn odd_filled_polygon_fails_with_refuting_witness() {
        let p = polygon(5, true).unwrap();
        let report = check_mh(&p);
        let w = report.qmh.witness().unwrap();
        assert!(w.refutes(&p));
        let lw = report.lmh.witness().unwrap();
        assert!(lw.refutes(&p), "{lw}");
    }

    #[test]
    fn involutions() {
        let hex = polygon(6, false).unwrap();
        let phi = find_involution(&hex).unwrap();
        assert_eq!(phi.as_slice(), &[3, 4, 5, 0, 1, 2]);
        let edge = single_edge();
        assert_eq!(find_involution(&edge).unwrap().as_slice(), &[1, 0]);
        let t = triangle();
        let err = find_involution(&t).unwrap_err();
        let MhError::NotInvolutive(w) = err else {
            panic!()
        };
        assert!(w.refutes(&t));
    }

    #[test]
    fn path_of_three_is_not_involutive() {
        let p = build_complex(vec![
            CellDescriptor::vertex(),
            CellDescriptor::vertex(),
            CellDescriptor::vertex(),
            CellDescriptor::new(1, vec![0, 1], vec![]),
            CellDescriptor::new(1, vec![1, 2], vec![]),
        ])
        .unwrap();
        let MhError::NotInvolutive(w) = find_involution(&p).unwrap_err() else {
            panic!()
        };
        assert!(w.refutes(&p));
    }

    #[test]
    fn report_lines() {
        let t = triangle();
        let text = check_mh(&t).render(&t);
        assert!(
            text.starts_with("qmh FAIL witness=(0,4) nearest tie"),
            "{text}"
        );
        assert_eq!(text.lines().count(), 4);
    }
}
