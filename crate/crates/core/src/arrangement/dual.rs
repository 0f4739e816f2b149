//! Dual complexes of face lattices and simpliciality.

use std::collections::BTreeSet;
use std::fmt;

use super::sign::{FaceLattice, SignVector};
use super::ArrangementError;
use crate::complex::{build_complex, CellComplex, CellDescriptor, Vertex};

/// Upper covers and heights above the topes, indexed like the lattice.
struct Graded {
    covers: Vec<Vec<usize>>,
    height: Vec<usize>,
}

fn grade(fl: &FaceLattice) -> Result<Graded, ArrangementError> {
    let xs = fl.covectors();
    let mut order: Vec<usize> = (0..xs.len()).collect();
    order.sort_by_key(|&i| xs[i].zeros());
    let mut covers = vec![Vec::new(); xs.len()];
    let mut height = vec![usize::MAX; xs.len()];
    for &i in &order {
        if xs[i].is_tope() {
            height[i] = 0;
            continue;
        }
        let above: Vec<usize> = (0..xs.len())
            .filter(|&j| j != i && xs[i].is_face_of(&xs[j]))
            .collect();
        let minimal: Vec<usize> = above
            .iter()
            .copied()
            .filter(|&j| !above.iter().any(|&k| k != j && xs[k].is_face_of(&xs[j])))
            .collect();
        let heights: BTreeSet<usize> = minimal.iter().map(|&j| height[j]).collect();
        if heights.len() != 1 {
            return Err(ArrangementError::NotGraded(xs[i].clone()));
        }
        height[i] = heights.into_iter().next().unwrap() + 1;
        covers[i] = minimal;
    }
    Ok(Graded { covers, height })
}

/// The dual complex together with the covector of each cell.
#[derive(Clone, Debug)]
pub struct DualComplex {
    lattice: FaceLattice,
    complex: CellComplex,
    cell_covector: Vec<SignVector>,
    rank: usize,
}

impl DualComplex {
    /// One cell per nonzero covector, ordered by dimension and then by sign
    /// string; the topes come first, so vertex ordinals follow tope order.
    pub fn new(fl: &FaceLattice) -> Result<Self, ArrangementError> {
        if fl.topes().is_empty() {
            return Err(ArrangementError::NoTopes);
        }
        let g = grade(fl)?;
        let xs = fl.covectors();
        let zero = fl
            .position(&SignVector::zero(fl.n()))
            .expect("validated lattice");
        let mut cells: Vec<usize> = (0..xs.len()).filter(|&i| i != zero).collect();
        cells.sort_by_key(|&i| (g.height[i], i));
        let mut cell_of = vec![usize::MAX; xs.len()];
        for (c, &i) in cells.iter().enumerate() {
            cell_of[i] = c;
        }
        let topes: Vec<usize> = cells
            .iter()
            .copied()
            .filter(|&i| g.height[i] == 0)
            .collect();
        let descriptors = cells
            .iter()
            .map(|&i| {
                let dim = g.height[i];
                CellDescriptor {
                    label: xs[i].to_string(),
                    dim,
                    faces: if dim == 0 {
                        Vec::new()
                    } else {
                        g.covers[i].iter().map(|&j| cell_of[j]).collect()
                    },
                    vertices: if dim == 0 {
                        Vec::new()
                    } else {
                        topes
                            .iter()
                            .filter(|&&t| xs[i].is_face_of(&xs[t]))
                            .map(|&t| cell_of[t])
                            .collect()
                    },
                }
            })
            .collect();
        let complex = build_complex(descriptors)?;
        Ok(DualComplex {
            lattice: fl.clone(),
            complex,
            cell_covector: cells.iter().map(|&i| xs[i].clone()).collect(),
            rank: g.height[zero],
        })
    }

    pub fn complex(&self) -> &CellComplex {
        &self.complex
    }

    pub fn into_complex(self) -> CellComplex {
        self.complex
    }

    pub fn lattice(&self) -> &FaceLattice {
        &self.lattice
    }

    pub fn covector(&self, cell: usize) -> &SignVector {
        &self.cell_covector[cell]
    }

    pub fn tope(&self, v: Vertex) -> &SignVector {
        &self.cell_covector[self.complex.vertex_cell(v).index]
    }

    pub fn vertex_of(&self, tope: &SignVector) -> Option<Vertex> {
        self.complex
            .lookup(&tope.to_string())
            .and_then(|id| self.complex.as_vertex(id))
    }

    /// Height of the zero covector above the topes.
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Adds the cell of the zero covector, labelled by it.
    pub fn completed(&self) -> DualComplex {
        let zero = SignVector::zero(self.lattice.n());
        let complex = complete(&self.complex, zero.to_string());
        let mut cell_covector = self.cell_covector.clone();
        cell_covector.push(zero);
        DualComplex {
            lattice: self.lattice.clone(),
            complex,
            cell_covector,
            rank: self.rank,
        }
    }
}

pub fn dual_complex(fl: &FaceLattice) -> Result<CellComplex, ArrangementError> {
    DualComplex::new(fl).map(DualComplex::into_complex)
}

fn complete(q: &CellComplex, label: String) -> CellComplex {
    let mut descriptors = q.descriptors();
    let top = q.dim();
    descriptors.push(CellDescriptor {
        label,
        dim: top + 1,
        faces: q.cells_of_dim(top).map(|c| c.index).collect(),
        vertices: (0..q.num_vertices())
            .map(|v| q.vertex_cell(v).index)
            .collect(),
    });
    build_complex(descriptors).expect("adding a cone cell keeps the complex regular")
}

/// Q plus one cell of dimension dim(Q)+1 bounded by all of Q, labelled `top`.
pub fn completed_complex(q: &CellComplex) -> CellComplex {
    complete(q, "top".to_string())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialWitness {
    pub tope: SignVector,
    pub facets: usize,
    pub interval: usize,
    pub rank: usize,
}

impl fmt::Display for SimplicialWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "tope {} has {} facets and {} faces at rank {}",
            self.tope, self.facets, self.interval, self.rank
        )
    }
}

/// Whether every interval [0, T] below a tope is Boolean of the lattice rank.
/// Returns the first offending tope otherwise.
pub fn check_simplicial(fl: &FaceLattice) -> Result<Option<SimplicialWitness>, ArrangementError> {
    let g = grade(fl)?;
    let xs = fl.covectors();
    let zero = fl
        .position(&SignVector::zero(fl.n()))
        .expect("validated lattice");
    let rank = g.height[zero];
    for (t, tope) in xs.iter().enumerate().filter(|(_, x)| x.is_tope()) {
        let facets = g.covers.iter().filter(|c| c.contains(&t)).count();
        let interval = xs.iter().filter(|x| x.is_face_of(tope)).count();
        if facets != rank || interval != 1 << rank {
            return Ok(Some(SimplicialWitness {
                tope: tope.clone(),
                facets,
                interval,
                rank,
            }));
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexSimplicialWitness {
    pub vertex: Vertex,
    pub reason: String,
}

/// Local test on a complex: at every vertex with k incident edges, the cells
/// containing it correspond bijectively, by their edges at the vertex, to the
/// subsets of those edges of size at most D, where D is k or k-1 and each
/// cell has dimension equal to its number of edges.
pub fn check_simplicial_complex(q: &CellComplex) -> Option<ComplexSimplicialWitness> {
    for v in 0..q.num_vertices() {
        let fail = |reason: String| Some(ComplexSimplicialWitness { vertex: v, reason });
        let edges: Vec<usize> = q
            .star(v)
            .iter()
            .copied()
            .filter(|&c| q.cell(c).dim == 1)
            .collect();
        let k = edges.len();
        if k > 24 {
            return fail(format!("{k} edges at a vertex"));
        }
        let mut seen = BTreeSet::new();
        let mut top = 0;
        for &c in q.star(v) {
            let closure = q.closure(c);
            let mask: u32 = edges
                .iter()
                .enumerate()
                .filter(|(_, e)| closure.binary_search(e).is_ok())
                .fold(0, |m, (i, _)| m | (1 << i));
            let dim = q.cell(c).dim;
            if mask.count_ones() as usize != dim {
                return fail(format!(
                    "cell {} of dimension {dim} has {} edges here",
                    q.label(c),
                    mask.count_ones()
                ));
            }
            if !seen.insert(mask) {
                return fail(format!("two cells share the edges of cell {}", q.label(c)));
            }
            top = top.max(dim);
        }
        if top + 1 < k || top > k {
            return fail(format!("top dimension {top} with {k} edges"));
        }
        let expected = (0u32..1 << k)
            .filter(|m| m.count_ones() as usize <= top)
            .count();
        if seen.len() != expected {
            return fail(format!("{} cells where {expected} are needed", seen.len()));
        }
    }
    None
}
