use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use crate::complex::Vertex;
use crate::salvetti::PositivePath;

use super::{GarsideContext, GarsideError};

/// The simple morphism u(source, target).
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simple {
    pub source: Vertex,
    pub target: Vertex,
}

/// A morphism in left-weighted normal form.
///
/// `ys` lists the targets of the successive simple factors; the identity
/// has no factors.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Morphism {
    source: Vertex,
    ys: Vec<Vertex>,
}

impl Morphism {
    pub fn identity(x: Vertex) -> Self {
        Morphism {
            source: x,
            ys: Vec::new(),
        }
    }

    pub fn source(&self) -> Vertex {
        self.source
    }

    pub fn target(&self) -> Vertex {
        self.ys.last().copied().unwrap_or(self.source)
    }

    pub fn is_identity(&self) -> bool {
        self.ys.is_empty()
    }

    pub fn num_factors(&self) -> usize {
        self.ys.len()
    }

    /// Successive factor targets.
    pub fn ys(&self) -> &[Vertex] {
        &self.ys
    }

    pub fn factors(&self) -> Vec<Simple> {
        let mut from = self.source;
        self.ys
            .iter()
            .map(|&y| {
                let s = Simple {
                    source: from,
                    target: y,
                };
                from = y;
                s
            })
            .collect()
    }

    /// Wraps factor targets already known to be in normal form.
    pub(super) fn from_normal(source: Vertex, ys: Vec<Vertex>) -> Self {
        Morphism { source, ys }
    }

    pub fn head(&self) -> Vertex {
        self.ys.first().copied().unwrap_or(self.source)
    }
}

impl fmt::Display for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.source)?;
        for y in &self.ys {
            write!(f, " | {y}")?;
        }
        Ok(())
    }
}

impl GarsideContext {
    /// A vertex y' adjacent to y that can move from the second factor into
    /// the first.
    fn atom_witness(&self, x: Vertex, y: Vertex, z: Vertex) -> Option<Vertex> {
        let dxy = self.distance(x, y);
        let dyz = self.distance(y, z);
        self.complex()
            .neighbors(y)
            .iter()
            .copied()
            .find(|&n| self.distance(x, n) == dxy + 1 && self.distance(n, z) + 1 == dyz)
    }

    /// Left-weighted normal form of the product u(x,y1)u(y1,y2)...
    fn normalize(&self, x: Vertex, mut ys: Vec<Vertex>) -> Vec<Vertex> {
        loop {
            let mut prev = x;
            ys.retain(|&y| {
                let keep = y != prev;
                prev = y;
                keep
            });
            let mut changed = false;
            for i in (0..ys.len().saturating_sub(1)).rev() {
                let from = if i == 0 { x } else { ys[i - 1] };
                while let Some(n) = self.atom_witness(from, ys[i], ys[i + 1]) {
                    ys[i] = n;
                    changed = true;
                }
            }
            if !changed {
                return ys;
            }
        }
    }

    pub fn simple(&self, x: Vertex, y: Vertex) -> Morphism {
        Morphism {
            source: x,
            ys: if x == y { Vec::new() } else { vec![y] },
        }
    }

    /// Whether the factors are chained and left-weighted.
    pub fn is_normal(&self, f: &Morphism) -> bool {
        let mut from = f.source;
        for w in 0..f.ys.len() {
            if f.ys[w] == from {
                return false;
            }
            if w + 1 < f.ys.len() && self.atom_witness(from, f.ys[w], f.ys[w + 1]).is_some() {
                return false;
            }
            from = f.ys[w];
        }
        true
    }

    pub fn length(&self, f: &Morphism) -> usize {
        f.factors()
            .iter()
            .map(|s| self.distance(s.source, s.target))
            .sum()
    }

    pub fn delta(&self, x: Vertex) -> Morphism {
        self.simple(x, self.phi().apply(x))
    }

    pub fn delta_power(&self, x: Vertex, n: usize) -> Morphism {
        let ys = (1..=n).map(|k| self.phi().pow(x, k)).collect();
        Morphism {
            source: x,
            ys: if self.phi().apply(x) == x {
                Vec::new()
            } else {
                ys
            },
        }
    }

    /// u(x,y) ↦ u(φ(x),φ(y)) factorwise.
    pub fn apply_phi(&self, f: &Morphism) -> Morphism {
        let phi = self.phi();
        Morphism {
            source: phi.apply(f.source),
            ys: f.ys.iter().map(|&y| phi.apply(y)).collect(),
        }
    }

    pub fn compose(&self, f: &Morphism, g: &Morphism) -> Result<Morphism, GarsideError> {
        if f.target() != g.source {
            return Err(GarsideError::NotComposable);
        }
        let ys = f.ys.iter().chain(&g.ys).copied().collect();
        Ok(Morphism {
            source: f.source,
            ys: self.normalize(f.source, ys),
        })
    }

    /// The morphism of a positive path.
    pub fn from_path(&self, p: &PositivePath) -> Morphism {
        let v = p.vertices();
        Morphism {
            source: v[0],
            ys: self.normalize(v[0], v[1..].to_vec()),
        }
    }

    /// A representative path: the factors joined by canonical geodesics.
    pub fn to_path(&self, f: &Morphism) -> PositivePath {
        let mut vertices = vec![f.source];
        for s in f.factors() {
            vertices.extend_from_slice(&self.geodesic(s.source, s.target)[1..]);
        }
        PositivePath::from_vertices_unchecked(vertices)
    }

    /// The farthest vertex below both y1 and y2 in the betweenness order at x.
    pub fn simple_meet(&self, x: Vertex, y1: Vertex, y2: Vertex) -> Result<Vertex, GarsideError> {
        let below: Vec<Vertex> = (0..self.num_vertices())
            .filter(|&m| self.between(x, m, y1) && self.between(x, m, y2))
            .collect();
        let best = below
            .iter()
            .map(|&m| self.distance(x, m))
            .max()
            .expect("x lies below both");
        let top: Vec<Vertex> = below
            .iter()
            .copied()
            .filter(|&m| self.distance(x, m) == best)
            .collect();
        if top.len() != 1 || !below.iter().all(|&m| self.between(x, m, top[0])) {
            return Err(GarsideError::NotUniqueExtremum(format!(
                "meet of {y1} and {y2} at {x}: {top:?}"
            )));
        }
        Ok(top[0])
    }

    /// The nearest vertex above both y1 and y2 in the betweenness order at x.
    pub fn simple_join(&self, x: Vertex, y1: Vertex, y2: Vertex) -> Result<Vertex, GarsideError> {
        let above: Vec<Vertex> = (0..self.num_vertices())
            .filter(|&j| self.between(x, y1, j) && self.between(x, y2, j))
            .collect();
        let best = above
            .iter()
            .map(|&j| self.distance(x, j))
            .min()
            .ok_or_else(|| {
                GarsideError::NotUniqueExtremum(format!(
                    "no common upper bound of {y1} and {y2} at {x}"
                ))
            })?;
        let bottom: Vec<Vertex> = above
            .iter()
            .copied()
            .filter(|&j| self.distance(x, j) == best)
            .collect();
        if bottom.len() != 1 || !above.iter().all(|&j| self.between(x, bottom[0], j)) {
            return Err(GarsideError::NotUniqueExtremum(format!(
                "join of {y1} and {y2} at {x}: {bottom:?}"
            )));
        }
        Ok(bottom[0])
    }

    /// f with the simple u(source, t) cancelled on the left; t must lie
    /// below the head of f.
    fn cancel_head(&self, f: &Morphism, t: Vertex) -> Morphism {
        Morphism {
            source: t,
            ys: self.normalize(t, f.ys.clone()),
        }
    }

    /// Greatest common left divisor by iterated head meets.
    pub fn meet(&self, f: &Morphism, g: &Morphism) -> Result<Morphism, GarsideError> {
        if f.source != g.source {
            return Err(GarsideError::SourceMismatch);
        }
        let x = f.source;
        let (mut f, mut g) = (f.clone(), g.clone());
        let mut acc = Vec::new();
        let mut cur = x;
        loop {
            let t = self.simple_meet(cur, f.head(), g.head())?;
            if t == cur {
                break;
            }
            acc.push(t);
            f = self.cancel_head(&f, t);
            g = self.cancel_head(&g, t);
            cur = t;
        }
        Ok(Morphism {
            source: x,
            ys: self.normalize(x, acc),
        })
    }

    pub fn left_divides(&self, f: &Morphism, g: &Morphism) -> Result<bool, GarsideError> {
        Ok(self.meet(f, g)? == *f)
    }

    /// All left divisors, found by extending divisors one atom at a time.
    pub fn divisors(&self, f: &Morphism) -> Result<BTreeSet<Morphism>, GarsideError> {
        let start = Morphism::identity(f.source);
        let mut seen = BTreeSet::from([start.clone()]);
        let mut queue = VecDeque::from([start]);
        while let Some(h) = queue.pop_front() {
            let y = h.target();
            for &n in self.complex().neighbors(y) {
                let next = self.compose(&h, &self.simple(y, n))?;
                if !seen.contains(&next) && self.left_divides(&next, f)? {
                    seen.insert(next.clone());
                    queue.push_back(next);
                }
            }
        }
        Ok(seen)
    }

    /// Least common right multiple as the top of the smallest set holding
    /// both divisor sets that is closed under prefixes and square completion.
    pub fn join(&self, f: &Morphism, g: &Morphism) -> Result<Morphism, GarsideError> {
        if f.source != g.source {
            return Err(GarsideError::SourceMismatch);
        }
        let x = f.source;
        let bound = self.delta_power(x, f.num_factors().max(g.num_factors()));
        let mut set: BTreeSet<Morphism> = BTreeSet::new();
        let mut pending = vec![f.clone(), g.clone()];
        loop {
            while let Some(h) = pending.pop() {
                if set.contains(&h) {
                    continue;
                }
                if !self.left_divides(&h, &bound)? {
                    return Err(GarsideError::NotUniqueExtremum(format!(
                        "{h} escapes the bound {bound}"
                    )));
                }
                let divs = self.divisors(&h)?;
                pending.extend(divs.into_iter().filter(|d| !set.contains(d)));
                set.insert(h);
            }
            let mut added = Vec::new();
            for h in &set {
                let y = h.target();
                let present: Vec<Vertex> = self
                    .complex()
                    .neighbors(y)
                    .iter()
                    .copied()
                    .filter(|&n| {
                        self.compose(h, &self.simple(y, n))
                            .map(|m| set.contains(&m))
                            .unwrap_or(false)
                    })
                    .collect();
                for (a, &y1) in present.iter().enumerate() {
                    for &y2 in &present[a + 1..] {
                        let cells = self.complex().cells_containing(&[y, y1, y2], 2);
                        if cells.len() != 1 {
                            return Err(GarsideError::MissingTwoCell(y, y1, y2));
                        }
                        let z = self.maps().farthest(y, cells[0]);
                        let next = self.compose(h, &self.simple(y, z))?;
                        if !set.contains(&next) {
                            added.push(next);
                        }
                    }
                }
            }
            if added.is_empty() {
                break;
            }
            pending = added;
        }
        let top = set
            .iter()
            .max_by_key(|m| self.length(m))
            .expect("nonempty")
            .clone();
        for m in &set {
            if !self.left_divides(m, &top)? {
                return Err(GarsideError::NotUniqueExtremum(format!(
                    "{m} does not divide {top}"
                )));
            }
        }
        Ok(top)
    }

    /// Factors as `label -> label` pairs joined by ` | `.
    pub fn render(&self, f: &Morphism) -> String {
        let q = self.complex();
        if f.is_identity() {
            return format!("id({})", q.vertex_label(f.source));
        }
        f.factors()
            .iter()
            .map(|s| format!("{}->{}", q.vertex_label(s.source), q.vertex_label(s.target)))
            .collect::<Vec<_>>()
            .join(" | ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::polygon;
    use crate::garside::make_context;
    use crate::mh::HemisphereMaps;

    fn hexagon() -> GarsideContext {
        let q = polygon(6, true).unwrap();
        make_context(&q, &HemisphereMaps::compute(&q).unwrap()).unwrap()
    }

    fn path(c: &GarsideContext, vs: &[usize]) -> Morphism {
        c.from_path(&PositivePath::new(c.complex(), vs.to_vec()).unwrap())
    }

    #[test]
    fn normal_forms() {
        let c = hexagon();
        assert_eq!(path(&c, &[0, 1, 2, 3]), c.delta(0));
        assert_eq!(path(&c, &[0, 5, 4, 3]), c.delta(0));
        assert_eq!(path(&c, &[0, 1, 0]).ys(), &[1, 0]);
        assert_eq!(c.length(&c.delta(2)), 3);
        assert_eq!(c.apply_phi(&c.delta(0)), c.delta(3));
        let f = path(&c, &[0, 1, 2]);
        assert_eq!(c.compose(&f, &Morphism::identity(2)).unwrap(), f);
        assert_eq!(
            c.compose(&f, &c.simple(5, 0)),
            Err(GarsideError::NotComposable)
        );
        let long = path(&c, &[0, 1, 0, 5, 4, 3, 2, 1]);
        assert!(c.is_normal(&long));
        assert_eq!(long.ys()[0], 3);
    }

    #[test]
    fn simple_lattice() {
        let c = hexagon();
        assert_eq!(c.simple_meet(0, 2, 2).unwrap(), 2);
        assert_eq!(c.simple_meet(0, 1, 5).unwrap(), 0);
        assert_eq!(c.simple_join(0, 1, 5).unwrap(), 3);
        assert_eq!(c.simple_join(0, 0, 4).unwrap(), 4);
    }

    #[test]
    fn meets_and_joins() {
        let c = hexagon();
        let a = c.simple(0, 1);
        let b = c.simple(0, 5);
        assert_eq!(c.meet(&a, &b).unwrap(), Morphism::identity(0));
        assert_eq!(c.join(&a, &b).unwrap(), c.delta(0));
        let ab = c.compose(&a, &c.simple(1, 0)).unwrap();
        assert_eq!(c.meet(&a, &ab).unwrap(), a);
        assert!(c.left_divides(&a, &c.delta(0)).unwrap());
        assert!(!c.left_divides(&a, &b).unwrap());
        assert!(c.left_divides(&Morphism::identity(0), &ab).unwrap());
        assert_eq!(c.divisors(&c.delta(0)).unwrap().len(), 6);
        assert_eq!(
            c.meet(&a, &c.simple(1, 2)),
            Err(GarsideError::SourceMismatch)
        );
    }
}
