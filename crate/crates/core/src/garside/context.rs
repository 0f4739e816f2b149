use crate::arrangement::check_simplicial_complex;
use crate::complex::{CellComplex, Vertex};
use crate::mh::{check_mh, find_involution, HemisphereMaps, Involution, Verdict};
use crate::oracle::PathOracle;

use super::GarsideError;

/// A verified complex with its distance table.
#[derive(Clone, Debug)]
pub struct GarsideContext {
    q: CellComplex,
    maps: HemisphereMaps,
    phi: Involution,
    nv: usize,
    dist: Vec<u32>,
}

/// Checks MH, flatness, involutivity and simpliciality, in that order.
pub fn make_context(
    q: &CellComplex,
    maps: &HemisphereMaps,
) -> Result<GarsideContext, GarsideError> {
    if let Verdict::Fail(w) = check_mh(q).mh {
        return Err(GarsideError::NotMh(w));
    }
    let oracle = PathOracle::new(q, maps.clone());
    if let Some((a, b)) = oracle.check_flat()? {
        return Err(GarsideError::NotFlat(format!(
            "[{}] and [{}] are inequivalent",
            a.render(q),
            b.render(q)
        )));
    }
    let phi = find_involution(q).map_err(GarsideError::NotInvolutive)?;
    if let Some(w) = check_simplicial_complex(q) {
        return Err(GarsideError::NotSimplicial(format!(
            "at {}: {}",
            q.vertex_label(w.vertex),
            w.reason
        )));
    }
    let nv = q.num_vertices();
    let mut dist = Vec::with_capacity(nv * nv);
    for v in 0..nv {
        dist.extend_from_slice(q.distances_from(v));
    }
    Ok(GarsideContext {
        q: q.clone(),
        maps: maps.clone(),
        phi,
        nv,
        dist,
    })
}

impl GarsideContext {
    pub fn complex(&self) -> &CellComplex {
        &self.q
    }

    pub fn maps(&self) -> &HemisphereMaps {
        &self.maps
    }

    pub fn phi(&self) -> &Involution {
        &self.phi
    }

    pub fn num_vertices(&self) -> usize {
        self.nv
    }

    pub fn distance(&self, x: Vertex, y: Vertex) -> usize {
        self.dist[x * self.nv + y] as usize
    }

    /// d(x,y) + d(y,z) = d(x,z), i.e. u(x,y) ≼ u(x,z).
    pub fn between(&self, x: Vertex, y: Vertex, z: Vertex) -> bool {
        self.distance(x, y) + self.distance(y, z) == self.distance(x, z)
    }

    /// The geodesic from `x` to `y` that always steps to the smallest
    /// admissible neighbor.
    pub fn geodesic(&self, x: Vertex, y: Vertex) -> Vec<Vertex> {
        let mut path = vec![x];
        let mut cur = x;
        while cur != y {
            let d = self.distance(cur, y);
            cur = *self
                .q
                .neighbors(cur)
                .iter()
                .find(|&&n| self.distance(n, y) + 1 == d)
                .expect("connected");
            path.push(cur);
        }
        path
    }

    /// A fresh brute-force oracle over the same complex.
    pub fn oracle(&self) -> PathOracle<'_> {
        PathOracle::new(&self.q, self.maps.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::polygon;

    fn ctx(q: &CellComplex) -> Result<GarsideContext, GarsideError> {
        make_context(q, &HemisphereMaps::compute(q).unwrap())
    }

    #[test]
    fn completed_hexagon() {
        let q = polygon(6, true).unwrap();
        let c = ctx(&q).unwrap();
        assert_eq!(c.phi().as_slice(), &[3, 4, 5, 0, 1, 2]);
        assert!(c.between(0, 0, 3));
        assert!(c.between(0, 1, 3));
        assert!(!c.between(0, 1, 4));
        assert_eq!(c.geodesic(0, 3), vec![0, 1, 2, 3]);
    }

    #[test]
    fn rejections() {
        let bare = polygon(6, false).unwrap();
        assert!(matches!(ctx(&bare), Err(GarsideError::NotFlat(_))));
        let triangle = polygon(3, false).unwrap();
        let maps = HemisphereMaps::compute(&polygon(4, false).unwrap()).unwrap();
        assert!(matches!(
            make_context(&triangle, &maps),
            Err(GarsideError::NotMh(_))
        ));
    }
}
