//! Brute-force path equivalence.
//!
//! Everything here works on explicit vertex sequences and closes them under
//! elementary moves. It is slow and independent of the normal-form engine,
//! which it is used to check.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::sync::{Arc, Mutex};

use thiserror::Error;

use crate::complex::{CellComplex, Vertex};
use crate::mh::{find_involution, HemisphereMaps, Involution, MhError};
use crate::salvetti::{Letter, PositivePath, SalvettiComplex};

pub const DEFAULT_CAP: usize = 100_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("equivalence class exceeds {0} paths")]
    ExplosionGuard(usize),
    #[error("extremum is not unique: {0}")]
    NotUniqueExtremum(String),
    #[error("paths start at different vertices")]
    SourceMismatch,
    #[error("word is not composable at letter {0}")]
    NotComposable(usize),
    #[error("no unique 2-cell through {0}, {1} and {2}")]
    MissingTwoCell(Vertex, Vertex, Vertex),
    #[error(transparent)]
    Mh(#[from] MhError),
}

/// An equivalence class with its lexicographically least member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathClass {
    pub representative: PositivePath,
    pub members: Vec<PositivePath>,
}

impl PathClass {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, p: &PositivePath) -> bool {
        self.members.binary_search(p).is_ok()
    }
}

/// A groupoid element Δ^{-p}·P, with P given by its class representative.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OracleElement {
    pub p: usize,
    pub positive: PositivePath,
}

/// Minimal paths between two vertices, as vertex lists.
type Geodesics = Arc<Vec<Vec<Vertex>>>;

pub struct PathOracle<'a> {
    q: &'a CellComplex,
    maps: HemisphereMaps,
    confine: bool,
    cap: usize,
    /// Far endpoints w̄(u,e) over the cells e containing u, with those cells.
    far: Vec<HashMap<Vertex, Vec<usize>>>,
    geodesics: Mutex<HashMap<(Vertex, Vertex), Geodesics>>,
    classes: Mutex<HashMap<Vec<Vertex>, Arc<PathClass>>>,
    divisors: Mutex<HashMap<Vec<Vertex>, Arc<BTreeSet<PositivePath>>>>,
    phi: Option<Involution>,
}

impl<'a> PathOracle<'a> {
    pub fn new(q: &'a CellComplex, maps: HemisphereMaps) -> Self {
        let far = (0..q.num_vertices())
            .map(|u| {
                let mut m: HashMap<Vertex, Vec<usize>> = HashMap::new();
                for &e in q.star(u) {
                    m.entry(maps.farthest(u, e)).or_default().push(e);
                }
                m
            })
            .collect();
        PathOracle {
            q,
            maps,
            confine: false,
            cap: DEFAULT_CAP,
            far,
            geodesics: Mutex::default(),
            classes: Mutex::default(),
            divisors: Mutex::default(),
            phi: find_involution(q).ok(),
        }
    }

    /// Restricts elementary moves to subpaths inside the vertex set of the cell.
    pub fn confined(mut self, confine: bool) -> Self {
        self.confine = confine;
        self.classes.lock().unwrap().clear();
        self.divisors.lock().unwrap().clear();
        self
    }

    pub fn with_cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self
    }

    pub fn complex(&self) -> &CellComplex {
        self.q
    }

    pub fn maps(&self) -> &HemisphereMaps {
        &self.maps
    }

    fn phi(&self) -> Result<&Involution, OracleError> {
        match &self.phi {
            Some(phi) => Ok(phi),
            None => Err(find_involution(self.q).unwrap_err().into()),
        }
    }

    fn geodesic_list(&self, v: Vertex, w: Vertex) -> Arc<Vec<Vec<Vertex>>> {
        if let Some(g) = self.geodesics.lock().unwrap().get(&(v, w)) {
            return g.clone();
        }
        let mut out = Vec::new();
        let mut stack = vec![vec![v]];
        while let Some(path) = stack.pop() {
            let last = *path.last().unwrap();
            if last == w {
                out.push(path);
                continue;
            }
            let d = self.q.distance(last, w);
            for &n in self.q.neighbors(last).iter().rev() {
                if self.q.distance(n, w) + 1 == d {
                    let mut next = path.clone();
                    next.push(n);
                    stack.push(next);
                }
            }
        }
        out.sort();
        let out = Arc::new(out);
        self.geodesics.lock().unwrap().insert((v, w), out.clone());
        out
    }

    /// All geodesic vertex sequences from `v` to `w`, sorted.
    pub fn enumerate_minimal_paths(&self, v: Vertex, w: Vertex) -> Vec<PositivePath> {
        self.geodesic_list(v, w)
            .iter()
            .cloned()
            .map(PositivePath::from_vertices_unchecked)
            .collect()
    }

    fn moves(&self, p: &[Vertex], out: &mut dyn FnMut(Vec<Vertex>)) {
        let q = self.q;
        for i in 0..p.len() {
            let u = p[i];
            for j in i + 2..p.len() {
                if q.distance(u, p[j]) != j - i {
                    break;
                }
                let Some(cells) = self.far[u].get(&p[j]) else {
                    continue;
                };
                let sub = &p[i..=j];
                let allowed: Vec<usize> = if self.confine {
                    cells
                        .iter()
                        .copied()
                        .filter(|&e| sub.iter().all(|v| q.verts(e).binary_search(v).is_ok()))
                        .collect()
                } else {
                    Vec::new()
                };
                if self.confine && allowed.is_empty() {
                    continue;
                }
                for g in self.geodesic_list(u, p[j]).iter() {
                    if g.as_slice() == sub {
                        continue;
                    }
                    if self.confine
                        && !allowed
                            .iter()
                            .any(|&e| g.iter().all(|v| q.verts(e).binary_search(v).is_ok()))
                    {
                        continue;
                    }
                    let mut next = Vec::with_capacity(p.len());
                    next.extend_from_slice(&p[..i]);
                    next.extend_from_slice(g);
                    next.extend_from_slice(&p[j + 1..]);
                    out(next);
                }
            }
        }
    }

    /// Paths differing from `p` by one elementary move (`p` excluded).
    pub fn elementary_moves(&self, p: &PositivePath) -> BTreeSet<PositivePath> {
        let mut out = BTreeSet::new();
        self.moves(p.vertices(), &mut |v| {
            out.insert(PositivePath::from_vertices_unchecked(v));
        });
        out
    }

    fn closure(&self, p: &[Vertex]) -> Result<Vec<Vec<Vertex>>, OracleError> {
        let mut seen: HashSet<Vec<Vertex>> = HashSet::from([p.to_vec()]);
        let mut queue = VecDeque::from([p.to_vec()]);
        let mut overflow = false;
        while let Some(cur) = queue.pop_front() {
            self.moves(&cur, &mut |next| {
                if !seen.contains(&next) {
                    seen.insert(next.clone());
                    queue.push_back(next);
                }
            });
            if seen.len() > self.cap {
                overflow = true;
                break;
            }
        }
        if overflow {
            return Err(OracleError::ExplosionGuard(self.cap));
        }
        let mut members: Vec<Vec<Vertex>> = seen.into_iter().collect();
        members.sort();
        Ok(members)
    }

    /// The class of `p`, memoized for every member.
    pub fn class(&self, p: &PositivePath) -> Result<Arc<PathClass>, OracleError> {
        if let Some(c) = self.classes.lock().unwrap().get(p.vertices()) {
            return Ok(c.clone());
        }
        let members = self.closure(p.vertices())?;
        let class = Arc::new(PathClass {
            representative: PositivePath::from_vertices_unchecked(members[0].clone()),
            members: members
                .iter()
                .cloned()
                .map(PositivePath::from_vertices_unchecked)
                .collect(),
        });
        let mut memo = self.classes.lock().unwrap();
        for m in members {
            memo.insert(m, class.clone());
        }
        Ok(class)
    }

    /// Canonical key of the class of `p`.
    pub fn key(&self, p: &PositivePath) -> Result<PositivePath, OracleError> {
        Ok(self.class(p)?.representative.clone())
    }

    pub fn equivalent(&self, a: &PositivePath, b: &PositivePath) -> Result<bool, OracleError> {
        Ok(self.class(a)?.contains(b))
    }

    /// Every ordered pair of vertices has a single class of geodesics.
    /// The witness is a pair of inequivalent geodesics.
    pub fn check_flat(&self) -> Result<Option<(PositivePath, PositivePath)>, OracleError> {
        let n = self.q.num_vertices();
        for v in 0..n {
            for w in 0..n {
                let geos = self.enumerate_minimal_paths(v, w);
                let class = self.class(&geos[0])?;
                if let Some(other) = geos.iter().find(|g| !class.contains(g)) {
                    return Ok(Some((geos[0].clone(), other.clone())));
                }
            }
        }
        Ok(None)
    }

    /// Keys of the classes of all prefixes of all members of the class of `p`.
    pub fn divisors(&self, p: &PositivePath) -> Result<Arc<BTreeSet<PositivePath>>, OracleError> {
        let key = self.key(p)?;
        if let Some(d) = self.divisors.lock().unwrap().get(key.vertices()) {
            return Ok(d.clone());
        }
        let class = self.class(p)?;
        let mut prefixes = BTreeSet::new();
        for m in &class.members {
            for len in 0..=m.len() {
                prefixes.insert(m.prefix(len));
            }
        }
        let mut out = BTreeSet::new();
        for prefix in &prefixes {
            out.insert(self.key(prefix)?);
        }
        let out = Arc::new(out);
        self.divisors
            .lock()
            .unwrap()
            .insert(key.vertices().to_vec(), out.clone());
        Ok(out)
    }

    pub fn left_divides(&self, f: &PositivePath, g: &PositivePath) -> Result<bool, OracleError> {
        if f.source() != g.source() {
            return Err(OracleError::SourceMismatch);
        }
        Ok(self.divisors(g)?.contains(&self.key(f)?))
    }

    /// Whether g = h·f for some positive h.
    pub fn right_divides(&self, f: &PositivePath, g: &PositivePath) -> Result<bool, OracleError> {
        if f.target() != g.target() {
            return Err(OracleError::SourceMismatch);
        }
        if f.len() > g.len() {
            return Ok(false);
        }
        let key = self.key(f)?;
        let offset = g.len() - f.len();
        for m in &self.class(g)?.members {
            let suffix = PositivePath::from_vertices_unchecked(m.vertices()[offset..].to_vec());
            if self.key(&suffix)? == key {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// The unique element of `set` divisible by every other member.
    fn unique_top(&self, set: &BTreeSet<PositivePath>) -> Result<PositivePath, OracleError> {
        let top = set
            .iter()
            .max_by_key(|p| (p.len(), std::cmp::Reverse((*p).clone())))
            .expect("set holds the identity");
        let below = self.divisors(top)?;
        if set.iter().all(|p| below.contains(p)) {
            Ok(top.clone())
        } else {
            Err(OracleError::NotUniqueExtremum(format!(
                "{} maximal candidates below {}",
                set.len(),
                top
            )))
        }
    }

    /// Greatest common left divisor as the top of the common divisor set.
    pub fn meet(&self, f: &PositivePath, g: &PositivePath) -> Result<PositivePath, OracleError> {
        if f.source() != g.source() {
            return Err(OracleError::SourceMismatch);
        }
        let df = self.divisors(f)?;
        let dg = self.divisors(g)?;
        let common: BTreeSet<PositivePath> = df.intersection(&dg).cloned().collect();
        self.unique_top(&common)
    }

    /// Least common right multiple as the top of the smallest set containing
    /// both divisor sets and closed under prefixes and square completion.
    pub fn join(&self, f: &PositivePath, g: &PositivePath) -> Result<PositivePath, OracleError> {
        if f.source() != g.source() {
            return Err(OracleError::SourceMismatch);
        }
        let q = self.q;
        let mut set: BTreeSet<PositivePath> = BTreeSet::new();
        let mut pending: Vec<PositivePath> = vec![self.key(f)?, self.key(g)?];
        loop {
            while let Some(h) = pending.pop() {
                if set.contains(&h) {
                    continue;
                }
                for d in self.divisors(&h)?.iter() {
                    if !set.contains(d) {
                        pending.push(d.clone());
                    }
                }
                set.insert(h);
                if set.len() > self.cap {
                    return Err(OracleError::ExplosionGuard(self.cap));
                }
            }
            let mut added = Vec::new();
            for h in &set {
                let y = h.target();
                let present: Vec<Vertex> = q
                    .neighbors(y)
                    .iter()
                    .copied()
                    .filter(|&n| {
                        let mut v = h.vertices().to_vec();
                        v.push(n);
                        self.key(&PositivePath::from_vertices_unchecked(v))
                            .map(|k| set.contains(&k))
                            .unwrap_or(false)
                    })
                    .collect();
                for (a, &y1) in present.iter().enumerate() {
                    for &y2 in &present[a + 1..] {
                        let cells = q.cells_containing(&[y, y1, y2], 2);
                        if cells.len() != 1 {
                            return Err(OracleError::MissingTwoCell(y, y1, y2));
                        }
                        let z = self.maps.farthest(y, cells[0]);
                        let geo = &self.geodesic_list(y, z)[0];
                        let mut v = h.vertices().to_vec();
                        v.extend_from_slice(&geo[1..]);
                        let k = self.key(&PositivePath::from_vertices_unchecked(v))?;
                        if !set.contains(&k) {
                            added.push(k);
                        }
                    }
                }
            }
            if added.is_empty() {
                break;
            }
            pending = added;
        }
        self.unique_top(&set)
    }

    /// Applies φ vertexwise.
    fn twist(&self, path: &[Vertex], times: usize) -> Result<Vec<Vertex>, OracleError> {
        let phi = self.phi()?;
        Ok(path.iter().map(|&v| phi.pow(v, times)).collect())
    }

    /// Strips leading Δ factors against the denominator.
    fn reduce(&self, mut p: usize, mut path: Vec<Vertex>) -> Result<OracleElement, OracleError> {
        let phi = self.phi()?.clone();
        while p > 0 && path.len() > 1 {
            let s = path[0];
            let len = self.q.distance(s, phi.apply(s));
            if path.len() <= len {
                break;
            }
            let class = self.class(&PositivePath::from_vertices_unchecked(path.clone()))?;
            match class
                .members
                .iter()
                .find(|m| m.vertices()[len] == phi.apply(s))
            {
                Some(m) => {
                    path = m.vertices()[len..].to_vec();
                    p -= 1;
                }
                None => break,
            }
        }
        let positive = self.key(&PositivePath::from_vertices_unchecked(path))?;
        Ok(OracleElement { p, positive })
    }

    /// Evaluates a word in the directed 1-cells of Sal(Q) and their inverses.
    ///
    /// A letter a: s -> t contributes (0, s t); its inverse contributes
    /// Δ^{-1}·u(φ(t), s). Products use (p1,P1)(p2,P2) = (p1+p2, φ^{p2}(P1)·P2).
    pub fn word_element(
        &self,
        sal: &SalvettiComplex,
        start: Vertex,
        word: &[Letter],
    ) -> Result<OracleElement, OracleError> {
        let phi = self.phi()?.clone();
        let mut p = 0usize;
        let mut path = vec![start];
        let mut at = start;
        for (i, letter) in word.iter().enumerate() {
            let (s, t) = sal
                .endpoints(letter.edge)
                .ok_or(OracleError::NotComposable(i))?;
            let (from, to) = if letter.inverse { (t, s) } else { (s, t) };
            if from != at {
                return Err(OracleError::NotComposable(i));
            }
            at = to;
            if letter.inverse {
                path = self.twist(&path, 1)?;
                let geo = &self.geodesic_list(phi.apply(t), s)[0];
                path.extend_from_slice(&geo[1..]);
                p += 1;
                let reduced = self.reduce(p, path)?;
                p = reduced.p;
                path = reduced.positive.vertices().to_vec();
            } else {
                path.push(t);
            }
        }
        self.reduce(p, path)
    }
}
