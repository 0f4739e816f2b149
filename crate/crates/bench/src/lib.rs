//! Shared inputs for the benchmarks.

use mhgarside::arrangement::DualComplex;
use mhgarside::{fixtures, CellComplex, FixtureId, HemisphereMaps, PositivePath};

/// Completed dual complex of a bundled fixture with its hemisphere maps.
pub fn completed(id: FixtureId) -> (CellComplex, HemisphereMaps) {
    let q = DualComplex::new(&fixtures::lattice(id))
        .expect("fixture dual")
        .completed()
        .into_complex();
    let maps = HemisphereMaps::compute(&q).expect("fixture is QMH");
    (q, maps)
}

/// A deterministic walk of `len` steps from `start`, turning by `stride`.
pub fn walk(q: &CellComplex, start: usize, len: usize, stride: usize) -> PositivePath {
    let mut path = vec![start];
    for i in 0..len {
        let ns = q.neighbors(*path.last().unwrap());
        path.push(ns[(i * stride + 1) % ns.len()]);
    }
    PositivePath::new(q, path).expect("edge walk")
}
