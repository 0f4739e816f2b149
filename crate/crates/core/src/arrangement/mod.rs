//! Central hyperplane arrangements and oriented-matroid data.

mod circuits;
mod dual;
pub mod feasibility;
mod sign;

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::complex::ComplexError;

pub use circuits::{
    check_om_circuit_axioms, circuits_from_topes, om_rank, CircuitAxiom, CircuitError,
    CircuitReport, CircuitSet,
};
pub use dual::{
    check_simplicial, check_simplicial_complex, completed_complex, dual_complex,
    ComplexSimplicialWitness, DualComplex, SimplicialWitness,
};
pub use sign::{
    check_symmetric, load_covectors, parse_sign_vectors, save_covectors, FaceLattice, Sign,
    SignVector,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArrangementError {
    #[error("line {line}: zero normal vector")]
    ZeroNormal { line: usize },
    #[error("line {line}: expected {expected} coordinates, found {found}")]
    Ragged {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("no hyperplanes or covectors given")]
    Empty,
    #[error("line {line}: bad sign character `{ch}`")]
    BadSignChar { line: usize, ch: char },
    #[error("sign vectors of unequal length ({expected} and {found})")]
    RaggedLengths { expected: usize, found: usize },
    #[error("negation of {0} is missing")]
    NotCentrallySymmetric(SignVector),
    #[error("zero covector is missing")]
    MissingZero,
    #[error("face lattice has no topes")]
    NoTopes,
    #[error("face lattice is not graded below the topes at {0}")]
    NotGraded(SignVector),
    #[error("dual is not a regular complex: {0}")]
    Complex(#[from] ComplexError),
}

/// A central arrangement given by one normal vector per hyperplane.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrangement {
    dim: usize,
    normals: Vec<Vec<BigRational>>,
}

impl Arrangement {
    pub fn new(normals: Vec<Vec<BigRational>>) -> Result<Self, ArrangementError> {
        let dim = normals.first().ok_or(ArrangementError::Empty)?.len();
        for (i, n) in normals.iter().enumerate() {
            if n.len() != dim {
                return Err(ArrangementError::Ragged {
                    line: i + 1,
                    expected: dim,
                    found: n.len(),
                });
            }
            if n.iter().all(Zero::is_zero) {
                return Err(ArrangementError::ZeroNormal { line: i + 1 });
            }
        }
        Ok(Arrangement { dim, normals })
    }

    pub fn from_integers(normals: &[Vec<i64>]) -> Result<Self, ArrangementError> {
        Arrangement::new(
            normals
                .iter()
                .map(|n| {
                    n.iter()
                        .map(|&x| BigRational::from_integer(BigInt::from(x)))
                        .collect()
                })
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.normals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.normals.is_empty()
    }

    pub fn normals(&self) -> &[Vec<BigRational>] {
        &self.normals
    }

    pub fn to_text(&self) -> String {
        self.normals
            .iter()
            .map(|n| {
                n.iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
                    + "\n"
            })
            .collect()
    }

    /// Multiplies each normal by the matching positive factor.
    pub fn rescaled(&self, factors: &[BigRational]) -> Arrangement {
        assert!(factors.iter().all(|f| f.is_positive()));
        Arrangement {
            dim: self.dim,
            normals: self
                .normals
                .iter()
                .zip(factors)
                .map(|(n, f)| n.iter().map(|x| x * f).collect())
                .collect(),
        }
    }
}

impl FromStr for Arrangement {
    type Err = ArrangementError;

    /// One hyperplane per line, rational coordinates such as `3/4`.
    fn from_str(text: &str) -> Result<Self, ArrangementError> {
        let mut normals = Vec::new();
        let mut lines = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let row = line
                .split_whitespace()
                .map(|tok| {
                    BigRational::from_str(tok).map_err(|_| ArrangementError::Parse {
                        line: lineno + 1,
                        message: format!("bad rational `{tok}`"),
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            normals.push(row);
            lines.push(lineno + 1);
        }
        Arrangement::new(normals).map_err(|e| match e {
            ArrangementError::ZeroNormal { line } => ArrangementError::ZeroNormal {
                line: lines[line - 1],
            },
            ArrangementError::Ragged {
                line,
                expected,
                found,
            } => ArrangementError::Ragged {
                line: lines[line - 1],
                expected,
                found,
            },
            other => other,
        })
    }
}

/// All feasible sign vectors, built one hyperplane at a time with pruning of
/// infeasible prefixes.
pub fn covectors_from_hyperplanes(arr: &Arrangement) -> FaceLattice {
    let normals = arr.normals();
    let mut partial: Vec<Vec<Sign>> = vec![Vec::new()];
    for k in 0..normals.len() {
        let mut next = Vec::new();
        for prefix in &partial {
            for s in [Sign::Plus, Sign::Minus, Sign::Zero] {
                let mut candidate = prefix.clone();
                candidate.push(s);
                if feasibility::sign_feasible(&normals[..=k], &candidate) {
                    next.push(candidate);
                }
            }
        }
        partial = next;
    }
    FaceLattice::new(normals.len(), partial.into_iter().map(SignVector))
        .expect("feasible sign vectors form a lattice")
}

/// Whether the normals span the ambient space.
pub fn check_proper(arr: &Arrangement) -> bool {
    feasibility::rank(arr.normals()) == arr.dim()
}

pub fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arr(rows: &[Vec<i64>]) -> Arrangement {
        Arrangement::from_integers(rows).unwrap()
    }

    #[test]
    fn small_lattices() {
        let one = covectors_from_hyperplanes(&arr(&[vec![1]]));
        assert_eq!(one.to_text(), "+\n-\n0\n");
        let two = covectors_from_hyperplanes(&arr(&[vec![1, 0], vec![0, 1]]));
        assert_eq!((two.len(), two.topes().len()), (9, 4));
        let three = covectors_from_hyperplanes(&arr(&[vec![1, 0], vec![0, 1], vec![1, 1]]));
        assert_eq!((three.len(), three.topes().len()), (13, 6));
    }

    #[test]
    fn parsing() {
        let a: Arrangement = "# three lines\n1 0\n0 1\n1/2 3/4\n".parse().unwrap();
        assert_eq!(a.len(), 3);
        assert_eq!(a.normals()[2][1], rational(3, 4));
        assert_eq!(
            "1 0\n\n0 0\n".parse::<Arrangement>().unwrap_err(),
            ArrangementError::ZeroNormal { line: 3 }
        );
        assert!(matches!(
            "1 0\n1\n".parse::<Arrangement>(),
            Err(ArrangementError::Ragged { line: 2, .. })
        ));
        assert!(matches!(
            "1 x\n".parse::<Arrangement>(),
            Err(ArrangementError::Parse { .. })
        ));
        assert_eq!(
            "".parse::<Arrangement>().unwrap_err(),
            ArrangementError::Empty
        );
    }

    #[test]
    fn properness() {
        assert!(check_proper(&arr(&[vec![1, 0], vec![0, 1]])));
        assert!(!check_proper(&arr(&[vec![1, 0], vec![2, 0]])));
        assert!(check_proper(&arr(&[vec![1, 0], vec![0, 1], vec![1, 1]])));
    }
}
