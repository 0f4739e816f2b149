//! Wiring diagrams of pseudoline arrangements and their covectors.
//!
//! Wires are listed bottom to top at the far left. Each event reverses a
//! contiguous block of the current order. A point of the affine plane gets
//! sign `+` for every wire below it, so the covectors of the central
//! arrangement are the affine sign vectors, their negations and zero.

use std::collections::{BTreeMap, BTreeSet};

use num_rational::BigRational;
use thiserror::Error;

use crate::arrangement::{FaceLattice, Sign, SignVector};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WiringError {
    #[error("lines {0} and {1} are parallel")]
    Parallel(usize, usize),
    #[error("two crossings share the x-coordinate {0}")]
    SharedAbscissa(String),
    #[error("event {0} is not a block of adjacent wires")]
    NotContiguous(usize),
    #[error("event {0} does not exist or is not a triple crossing")]
    NotTriple(usize),
}

/// An affine line y = slope * x + intercept.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Line {
    pub slope: BigRational,
    pub intercept: BigRational,
}

impl Line {
    pub fn new(slope: BigRational, intercept: BigRational) -> Self {
        Line { slope, intercept }
    }

    /// Normal of the plane through the origin whose trace at z = 1 is this
    /// line, oriented so that points above the line are positive.
    pub fn normal(&self) -> Vec<BigRational> {
        vec![
            -self.slope.clone(),
            BigRational::from_integer(1.into()),
            -self.intercept.clone(),
        ]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WiringDiagram {
    initial: Vec<usize>,
    /// Events as (first position, block length) in the order current at that time.
    events: Vec<(usize, usize)>,
}

impl WiringDiagram {
    pub fn new(initial: Vec<usize>, events: Vec<(usize, usize)>) -> Self {
        WiringDiagram { initial, events }
    }

    /// Sweeps a line arrangement from left to right.
    pub fn from_lines(lines: &[Line]) -> Result<Self, WiringError> {
        let n = lines.len();
        let mut points: BTreeMap<(BigRational, BigRational), BTreeSet<usize>> = BTreeMap::new();
        for i in 0..n {
            for j in i + 1..n {
                let dm = &lines[i].slope - &lines[j].slope;
                if dm == BigRational::from_integer(0.into()) {
                    return Err(WiringError::Parallel(i, j));
                }
                let x = (&lines[j].intercept - &lines[i].intercept) / dm;
                let y = &lines[i].slope * &x + &lines[i].intercept;
                points.entry((x, y)).or_default().extend([i, j]);
            }
        }
        let mut xs = BTreeSet::new();
        for (x, _) in points.keys() {
            if !xs.insert(x.clone()) {
                return Err(WiringError::SharedAbscissa(x.to_string()));
            }
        }
        // far to the left, steeper lines lie lower
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| lines[b].slope.cmp(&lines[a].slope));
        let initial = order.clone();
        let mut events = Vec::new();
        for (index, wires) in points.values().enumerate() {
            let positions: Vec<usize> = order
                .iter()
                .enumerate()
                .filter(|(_, w)| wires.contains(w))
                .map(|(p, _)| p)
                .collect();
            let start = positions[0];
            if positions.last().unwrap() - start + 1 != positions.len() {
                return Err(WiringError::NotContiguous(index));
            }
            order[start..start + positions.len()].reverse();
            events.push((start, positions.len()));
        }
        Ok(WiringDiagram { initial, events })
    }

    pub fn events(&self) -> &[(usize, usize)] {
        &self.events
    }

    pub fn num_wires(&self) -> usize {
        self.initial.len()
    }

    /// Replaces a triple crossing by three crossings of two wires each.
    pub fn split_triple(&mut self, index: usize) -> Result<(), WiringError> {
        match self.events.get(index) {
            Some(&(start, 3)) => {
                self.events
                    .splice(index..=index, [(start, 2), (start + 1, 2), (start, 2)]);
                Ok(())
            }
            _ => Err(WiringError::NotTriple(index)),
        }
    }

    /// Sign vectors of all faces met by the sweep: regions and wire
    /// segments of every slab, and every crossing.
    pub fn affine_covectors(&self) -> BTreeSet<SignVector> {
        let n = self.num_wires();
        let mut order = self.initial.clone();
        let mut out = BTreeSet::new();
        let vector = |order: &[usize], below: usize, zero: usize| {
            let mut x = SignVector(vec![Sign::Minus; n]);
            for &w in &order[..below] {
                x.0[w] = Sign::Plus;
            }
            for &w in &order[below..below + zero] {
                x.0[w] = Sign::Zero;
            }
            x
        };
        let slab = |order: &[usize], out: &mut BTreeSet<SignVector>| {
            for gap in 0..=n {
                out.insert(vector(order, gap, 0));
            }
            for p in 0..n {
                out.insert(vector(order, p, 1));
            }
        };
        slab(&order, &mut out);
        for &(start, len) in &self.events {
            out.insert(vector(&order, start, len));
            order[start..start + len].reverse();
            slab(&order, &mut out);
        }
        out
    }

    pub fn covectors(&self) -> FaceLattice {
        let n = self.num_wires();
        let affine = self.affine_covectors();
        let all = affine
            .iter()
            .map(SignVector::neg)
            .chain(affine.iter().cloned())
            .chain([SignVector::zero(n)]);
        FaceLattice::new(n, all).expect("sweep output is symmetric by construction")
    }
}

fn q(num: i64, den: i64) -> BigRational {
    BigRational::new(num.into(), den.into())
}

/// Nine lines of a Pappus configuration: the two carrier lines, the six
/// joins of the two point triples, and the line through the three cross
/// points.
pub fn pappus_lines() -> Vec<Line> {
    [
        (q(0, 1), q(0, 1)),
        (q(1, 2), q(2, 1)),
        (q(11, 6), q(0, 1)),
        (q(9, 10), q(0, 1)),
        (q(-1, 3), q(1, 3)),
        (q(9, 8), q(-9, 8)),
        (q(-1, 5), q(3, 5)),
        (q(-11, 6), q(11, 2)),
        (q(8, 15), q(1, 5)),
    ]
    .into_iter()
    .map(|(m, k)| Line::new(m, k))
    .collect()
}

/// The Pappus wiring diagram with its last triple crossing split.
pub fn non_pappus_diagram() -> WiringDiagram {
    let mut diagram =
        WiringDiagram::from_lines(&pappus_lines()).expect("Pappus lines are in general x-position");
    let last = diagram
        .events()
        .iter()
        .rposition(|&(_, len)| len == 3)
        .expect("Pappus has triple points");
    diagram.split_triple(last).expect("triple crossing");
    diagram
}

pub fn non_pappus() -> FaceLattice {
    non_pappus_diagram().covectors()
}

/// Contents of the bundled covector file.
pub fn non_pappus_file() -> String {
    let mut out = String::from(
        "# non-Pappus arrangement of nine pseudolines\n# regenerate with: cargo run -p mhgarside --example gen_nonpappus\n",
    );
    out.push_str(&non_pappus().to_text());
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::{check_simplicial, covectors_from_hyperplanes, Arrangement};

    #[test]
    fn pappus_incidences() {
        let d = WiringDiagram::from_lines(&pappus_lines()).unwrap();
        let triples = d.events().iter().filter(|e| e.1 == 3).count();
        let doubles = d.events().iter().filter(|e| e.1 == 2).count();
        assert_eq!((triples, doubles), (9, 9));
    }

    #[test]
    fn sweep_matches_exact_covectors() {
        let lines = pappus_lines();
        let d = WiringDiagram::from_lines(&lines).unwrap();
        let arr = Arrangement::new(lines.iter().map(Line::normal).collect()).unwrap();
        assert_eq!(d.covectors(), covectors_from_hyperplanes(&arr));
    }

    #[test]
    fn non_pappus_counts() {
        let fl = non_pappus();
        assert_eq!(fl.topes().len(), 58);
        let vertices = fl
            .covectors()
            .iter()
            .filter(|x| x.zeros() >= 2 && !x.is_zero())
            .count();
        assert_eq!(vertices, 40);
        let triple = fl.covectors().iter().filter(|x| x.zeros() == 3).count();
        assert_eq!(triple, 16);
        assert!(check_simplicial(&fl).unwrap().is_some());
    }

    #[test]
    fn parallel_lines_rejected() {
        let lines = vec![Line::new(q(1, 1), q(0, 1)), Line::new(q(1, 1), q(1, 1))];
        assert_eq!(
            WiringDiagram::from_lines(&lines).unwrap_err(),
            WiringError::Parallel(0, 1)
        );
    }
}
