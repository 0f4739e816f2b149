#![allow(dead_code)]

use std::collections::VecDeque;

use mhgarside::arrangement::DualComplex;
use mhgarside::fixtures;
use mhgarside::{CellComplex, FixtureId, Vertex};

pub fn fixture(name: &str) -> FixtureId {
    name.parse().expect("known fixture")
}

pub fn dual(name: &str) -> DualComplex {
    DualComplex::new(&fixtures::lattice(fixture(name))).expect("fixture dual")
}

pub fn completed(name: &str) -> CellComplex {
    dual(name).completed().into_complex()
}

/// BFS distances along the 1-skeleton.
pub fn bfs(q: &CellComplex, from: Vertex) -> Vec<usize> {
    let mut d = vec![usize::MAX; q.num_vertices()];
    d[from] = 0;
    let mut queue = VecDeque::from([from]);
    while let Some(u) = queue.pop_front() {
        for &n in q.neighbors(u) {
            if d[n] == usize::MAX {
                d[n] = d[u] + 1;
                queue.push_back(n);
            }
        }
    }
    d
}

/// Number of shortest edge paths from `from` to `to`.
pub fn count_geodesics(q: &CellComplex, from: Vertex, to: Vertex) -> u64 {
    let d = bfs(q, from);
    let mut order: Vec<Vertex> = (0..q.num_vertices()).collect();
    order.sort_by_key(|&v| d[v]);
    let mut count = vec![0u64; q.num_vertices()];
    count[from] = 1;
    for &v in &order {
        for &n in q.neighbors(v) {
            if d[n] == d[v] + 1 {
                count[n] += count[v];
            }
        }
    }
    count[to]
}

/// Every edge path of at most `max_len` steps out of `x`, as vertex lists.
pub fn paths_from(q: &CellComplex, x: Vertex, max_len: usize) -> Vec<Vec<Vertex>> {
    let mut all = vec![vec![x]];
    let mut frontier = vec![vec![x]];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for p in &frontier {
            for &n in q.neighbors(*p.last().unwrap()) {
                let mut e = p.clone();
                e.push(n);
                next.push(e);
            }
        }
        all.extend(next.iter().cloned());
        frontier = next;
    }
    all
}
