//! Circuits of the oriented matroid of a face lattice.
//!
//! A signed set of halfspaces is stored as a sign vector: entry `i` is the
//! halfspace of element `i` it contains, or zero when it contains neither.

use std::fmt;

use thiserror::Error;

use super::sign::{FaceLattice, Sign, SignVector};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircuitSet {
    n: usize,
    circuits: Vec<SignVector>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CircuitError {
    #[error("circuit set is empty")]
    NoCircuits,
}

impl CircuitSet {
    pub fn new(n: usize, mut circuits: Vec<SignVector>) -> Self {
        circuits.sort();
        circuits.dedup();
        CircuitSet { n, circuits }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn circuits(&self) -> &[SignVector] {
        &self.circuits
    }

    pub fn len(&self) -> usize {
        self.circuits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.circuits.is_empty()
    }
}

/// Whether the closed halfspaces of `c` cover the sphere: no tope lies
/// strictly on the opposite side of every member.
fn covers(topes: &[&SignVector], c: &SignVector) -> bool {
    let opposite = c.neg();
    !topes.iter().any(|t| opposite.is_face_of(t))
}

fn contained(a: &SignVector, b: &SignVector) -> bool {
    a.is_face_of(b)
}

/// Minimal covering signed sets, by increasing size with superset pruning.
pub fn circuits_from_topes(fl: &FaceLattice) -> CircuitSet {
    let n = fl.n();
    let topes = fl.topes();
    let mut found: Vec<SignVector> = Vec::new();
    for size in 1..=n {
        let mut batch = Vec::new();
        for support in subsets(n, size) {
            for pattern in 0u32..(1 << size) {
                let mut c = SignVector::zero(n);
                for (bit, &i) in support.iter().enumerate() {
                    c.0[i] = if pattern >> bit & 1 == 0 {
                        Sign::Plus
                    } else {
                        Sign::Minus
                    };
                }
                if found.iter().any(|f| contained(f, &c)) {
                    continue;
                }
                if covers(&topes, &c) {
                    batch.push(c);
                }
            }
        }
        found.extend(batch);
    }
    CircuitSet::new(n, found)
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum CircuitAxiom {
    Incomparable,
    Symmetric,
    Elimination,
}

impl fmt::Display for CircuitAxiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CircuitAxiom::Incomparable => "(1) incomparability",
            CircuitAxiom::Symmetric => "(2) symmetry",
            CircuitAxiom::Elimination => "(3) elimination",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircuitReport {
    /// The first violated axiom with the circuits involved.
    pub failure: Option<(CircuitAxiom, Vec<SignVector>)>,
}

impl CircuitReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

pub fn check_om_circuit_axioms(cs: &CircuitSet) -> CircuitReport {
    let fail = |axiom, cs: Vec<SignVector>| CircuitReport {
        failure: Some((axiom, cs)),
    };
    let cs_list = cs.circuits();
    for a in cs_list {
        if a.is_zero() {
            return fail(CircuitAxiom::Symmetric, vec![a.clone()]);
        }
        for b in cs_list {
            if a != b && contained(a, b) {
                return fail(CircuitAxiom::Incomparable, vec![a.clone(), b.clone()]);
            }
        }
    }
    for a in cs_list {
        if !cs_list.contains(&a.neg()) {
            return fail(CircuitAxiom::Symmetric, vec![a.clone()]);
        }
    }
    for s in cs_list {
        for t in cs_list {
            if *s == t.neg() {
                continue;
            }
            for x in s.separation(t) {
                let eliminated = cs_list.iter().any(|c| {
                    c.0[x] == Sign::Zero
                        && (0..cs.n())
                            .all(|j| c.0[j] == Sign::Zero || c.0[j] == s.0[j] || c.0[j] == t.0[j])
                });
                if !eliminated {
                    return fail(CircuitAxiom::Elimination, vec![s.clone(), t.clone()]);
                }
            }
        }
    }
    CircuitReport { failure: None }
}

/// Rank of the underlying matroid: the size of a maximal set of elements
/// containing the support of no circuit.
pub fn om_rank(cs: &CircuitSet) -> Result<usize, CircuitError> {
    if cs.is_empty() {
        return Err(CircuitError::NoCircuits);
    }
    let supports: Vec<Vec<usize>> = cs.circuits().iter().map(|c| c.support()).collect();
    let mut independent: Vec<usize> = Vec::new();
    for i in 0..cs.n() {
        independent.push(i);
        if supports
            .iter()
            .any(|s| s.iter().all(|j| independent.contains(j)))
        {
            independent.pop();
        }
    }
    Ok(independent.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::{covectors_from_hyperplanes, load_covectors, Arrangement};

    fn lattice(rows: &[Vec<i64>]) -> FaceLattice {
        covectors_from_hyperplanes(&Arrangement::from_integers(rows).unwrap())
    }

    fn sv(s: &str) -> SignVector {
        s.parse().unwrap()
    }

    #[test]
    fn three_lines() {
        let cs = circuits_from_topes(&lattice(&[vec![1, 0], vec![0, 1], vec![1, 1]]));
        assert_eq!(cs.circuits(), &[sv("++-"), sv("--+")]);
        assert!(check_om_circuit_axioms(&cs).passed());
        assert_eq!(om_rank(&cs), Ok(2));
    }

    #[test]
    fn no_circuits() {
        let cs = circuits_from_topes(&lattice(&[vec![1, 0], vec![0, 1]]));
        assert!(cs.is_empty());
        assert!(check_om_circuit_axioms(&cs).passed());
        let single = circuits_from_topes(&load_covectors("+\n-\n0\n").unwrap());
        assert!(single.is_empty());
        assert_eq!(om_rank(&single), Err(CircuitError::NoCircuits));
    }

    #[test]
    fn broken_axioms() {
        let lonely = CircuitSet::new(3, vec![sv("++-")]);
        assert_eq!(
            check_om_circuit_axioms(&lonely).failure.unwrap().0,
            CircuitAxiom::Symmetric
        );
        let nested = CircuitSet::new(3, vec![sv("++0"), sv("+++"), sv("--0"), sv("---")]);
        assert_eq!(
            check_om_circuit_axioms(&nested).failure.unwrap().0,
            CircuitAxiom::Incomparable
        );
        let stuck = CircuitSet::new(3, vec![sv("++0"), sv("--0"), sv("-0+"), sv("+0-")]);
        assert_eq!(
            check_om_circuit_axioms(&stuck).failure.unwrap().0,
            CircuitAxiom::Elimination
        );
    }

    #[test]
    fn subset_counts() {
        assert_eq!(subsets(5, 2).len(), 10);
        assert_eq!(subsets(4, 0), vec![Vec::<usize>::new()]);
    }
}
