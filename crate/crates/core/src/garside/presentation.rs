use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use crate::complex::{CellComplex, Vertex};
use crate::mh::{check_qmh, HemisphereMaps, Verdict};
use crate::salvetti::{Letter, SalvettiComplex, SalvettiError};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GenLetter {
    pub gen: usize,
    pub inverse: bool,
}

impl GenLetter {
    fn inverted(self) -> GenLetter {
        GenLetter {
            gen: self.gen,
            inverse: !self.inverse,
        }
    }
}

/// A groupoid or group presentation with relations `lhs = rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub generators: Vec<String>,
    /// The word in Sal(Q) letters each generator stands for.
    pub words: Vec<Vec<Letter>>,
    pub relations: Vec<(Vec<GenLetter>, Vec<GenLetter>)>,
}

/// Generators are the directed 1-cells; each 2-cell ⟨e;v⟩ equates the two
/// boundary paths from v to w̄(v,e).
pub fn presentation(q: &CellComplex, sal: &SalvettiComplex) -> Result<Presentation, SalvettiError> {
    if let Verdict::Fail(w) = check_qmh(q).qmh {
        return Err(SalvettiError::NotQmh(w));
    }
    let maps = HemisphereMaps::compute(q).expect("qmh verified");
    let edges = sal.edges();
    let gen_of = |e: usize| edges.binary_search(&e).expect("1-cell");
    let generators = edges
        .iter()
        .map(|&e| {
            sal.render_letter(Letter {
                edge: e,
                inverse: false,
            })
        })
        .collect();
    let words = edges
        .iter()
        .map(|&e| {
            vec![Letter {
                edge: e,
                inverse: false,
            }]
        })
        .collect();
    let mut relations = Vec::new();
    for cell in sal.cells() {
        if cell.base.dim != 2 {
            continue;
        }
        let v = cell.apex;
        let z = maps.farthest(v, cell.base.index);
        let ring: Vec<(Vertex, Vertex)> = q
            .closure(cell.base.index)
            .iter()
            .filter(|&&c| q.cell(c).dim == 1)
            .map(|&c| (q.verts(c)[0], q.verts(c)[1]))
            .collect();
        let step = |from: Vertex, prev: Vertex| {
            ring.iter()
                .filter_map(|&(a, b)| {
                    if a == from {
                        Some(b)
                    } else if b == from {
                        Some(a)
                    } else {
                        None
                    }
                })
                .find(|&w| w != prev)
                .expect("boundary is a cycle")
        };
        let mut arcs: Vec<Vec<Vertex>> = ring
            .iter()
            .filter_map(|&(a, b)| {
                if a == v {
                    Some(b)
                } else if b == v {
                    Some(a)
                } else {
                    None
                }
            })
            .map(|first| {
                let mut arc = vec![v, first];
                while *arc.last().unwrap() != z {
                    let n = arc.len();
                    arc.push(step(arc[n - 1], arc[n - 2]));
                }
                arc
            })
            .collect();
        arcs.sort();
        let lift = |arc: &[Vertex]| -> Vec<GenLetter> {
            arc.windows(2)
                .map(|p| GenLetter {
                    gen: gen_of(sal.edge_between(p[0], p[1]).expect("edge")),
                    inverse: false,
                })
                .collect()
        };
        relations.push((lift(&arcs[0]), lift(&arcs[1])));
    }
    Ok(Presentation {
        generators,
        words,
        relations,
    })
}

fn free_reduce(word: &mut Vec<GenLetter>) {
    let mut out: Vec<GenLetter> = Vec::with_capacity(word.len());
    for &l in word.iter() {
        if out.last() == Some(&l.inverted()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    *word = out;
}

fn cyclic_reduce(word: &mut Vec<GenLetter>) {
    free_reduce(word);
    let mut k = 0;
    while 2 * k + 2 <= word.len() && word[k] == word[word.len() - 1 - k].inverted() {
        k += 1;
    }
    word.truncate(word.len() - k);
    word.drain(..k);
}

fn invert(word: &[GenLetter]) -> Vec<GenLetter> {
    word.iter().rev().map(|l| l.inverted()).collect()
}

impl Presentation {
    /// Presentation of the vertex group at `base`: collapse a spanning tree,
    /// then repeatedly eliminate a generator occurring once in a relator.
    pub fn reduce(&self, sal: &SalvettiComplex, base: Vertex) -> Presentation {
        let n = self.generators.len();
        let ends: Vec<(Vertex, Vertex)> = self
            .words
            .iter()
            .map(|w| {
                let ends = |l: &Letter| {
                    let (s, t) = sal.endpoints(l.edge).expect("1-cell");
                    if l.inverse {
                        (t, s)
                    } else {
                        (s, t)
                    }
                };
                (ends(&w[0]).0, ends(&w[w.len() - 1]).1)
            })
            .collect();
        // BFS tree: for every vertex the generator path from base.
        let nv = sal.complex().num_vertices();
        let mut to: Vec<Option<Vec<GenLetter>>> = vec![None; nv];
        let mut tree = BTreeSet::new();
        to[base] = Some(Vec::new());
        let mut queue = VecDeque::from([base]);
        while let Some(u) = queue.pop_front() {
            for (g, &(s, t)) in ends.iter().enumerate() {
                let (next, letter) = if s == u {
                    (
                        t,
                        GenLetter {
                            gen: g,
                            inverse: false,
                        },
                    )
                } else if t == u {
                    (
                        s,
                        GenLetter {
                            gen: g,
                            inverse: true,
                        },
                    )
                } else {
                    continue;
                };
                if to[next].is_none() {
                    let mut path = to[u].clone().unwrap();
                    path.push(letter);
                    to[next] = Some(path);
                    tree.insert(g);
                    queue.push_back(next);
                }
            }
        }
        let to: Vec<Vec<GenLetter>> = to.into_iter().map(|p| p.expect("connected")).collect();
        // Loop words in the original generators.
        let mut expr: Vec<Option<Vec<GenLetter>>> = (0..n)
            .map(|g| {
                if tree.contains(&g) {
                    None
                } else {
                    Some(vec![GenLetter {
                        gen: g,
                        inverse: false,
                    }])
                }
            })
            .collect();
        let loops: Vec<Vec<GenLetter>> = (0..n)
            .map(|g| {
                let (s, t) = ends[g];
                let mut w = to[s].clone();
                w.push(GenLetter {
                    gen: g,
                    inverse: false,
                });
                w.extend(invert(&to[t]));
                w
            })
            .collect();
        let substitute = |word: &[GenLetter], expr: &[Option<Vec<GenLetter>>]| -> Vec<GenLetter> {
            let mut out = Vec::new();
            for &l in word {
                if let Some(e) = &expr[l.gen] {
                    if l.inverse {
                        out.extend(invert(e));
                    } else {
                        out.extend_from_slice(e);
                    }
                }
            }
            free_reduce(&mut out);
            out
        };
        // Tree generators become trivial; relators live in the original indices.
        let mut relators: Vec<Vec<GenLetter>> = self
            .relations
            .iter()
            .map(|(l, r)| {
                let mut w = l.clone();
                w.extend(invert(r));
                let mut w = substitute(&w, &expr);
                cyclic_reduce(&mut w);
                w
            })
            .filter(|w| !w.is_empty())
            .collect();
        let mut alive: BTreeSet<usize> = (0..n).filter(|g| !tree.contains(g)).collect();
        loop {
            let mut choice = None;
            let mut order: Vec<usize> = (0..relators.len()).collect();
            order.sort_by_key(|&i| (relators[i].len(), i));
            'search: for &i in &order {
                for &g in &alive {
                    if relators[i].iter().filter(|l| l.gen == g).count() == 1 {
                        choice = Some((i, g));
                        break 'search;
                    }
                }
            }
            let Some((i, g)) = choice else { break };
            let r = relators.remove(i);
            let pos = r.iter().position(|l| l.gen == g).unwrap();
            // r rotated to g^e W = 1, so g^e = W^-1.
            let mut w: Vec<GenLetter> = r[pos + 1..].to_vec();
            w.extend_from_slice(&r[..pos]);
            let value = if r[pos].inverse { w } else { invert(&w) };
            let value = substitute(&value, &expr);
            let mut sub: Vec<Option<Vec<GenLetter>>> = (0..n)
                .map(|k| {
                    Some(vec![GenLetter {
                        gen: k,
                        inverse: false,
                    }])
                })
                .collect();
            sub[g] = Some(value);
            for e in expr.iter_mut().flatten() {
                *e = substitute(e, &sub);
            }
            for rel in relators.iter_mut() {
                *rel = substitute(rel, &sub);
                cyclic_reduce(rel);
            }
            relators.retain(|w| !w.is_empty());
            alive.remove(&g);
        }
        let alive: Vec<usize> = alive.into_iter().collect();
        let renumber = |w: &[GenLetter]| -> Vec<GenLetter> {
            w.iter()
                .map(|l| GenLetter {
                    gen: alive.binary_search(&l.gen).expect("alive"),
                    inverse: l.inverse,
                })
                .collect()
        };
        let relations = relators
            .iter()
            .map(|r| {
                let half = r.len().div_ceil(2);
                (renumber(&r[..half]), renumber(&invert(&r[half..])))
            })
            .collect();
        let words = alive
            .iter()
            .map(|&g| {
                let mut out: Vec<Letter> = Vec::new();
                for l in &loops[g] {
                    let part = &self.words[l.gen];
                    let part: Vec<Letter> = if l.inverse {
                        part.iter().rev().map(|x| x.inverted()).collect()
                    } else {
                        part.clone()
                    };
                    for x in part {
                        if out.last() == Some(&x.inverted()) {
                            out.pop();
                        } else {
                            out.push(x);
                        }
                    }
                }
                out
            })
            .collect();
        Presentation {
            generators: alive.iter().map(|&g| self.generators[g].clone()).collect(),
            words,
            relations,
        }
    }

    /// Relators lhs·rhs⁻¹, cyclically reduced.
    pub fn relators(&self) -> Vec<Vec<GenLetter>> {
        self.relations
            .iter()
            .map(|(l, r)| {
                let mut w = l.clone();
                w.extend(invert(r));
                cyclic_reduce(&mut w);
                w
            })
            .collect()
    }

    fn render_word(&self, w: &[GenLetter]) -> String {
        if w.is_empty() {
            return "1".into();
        }
        w.iter()
            .map(|l| {
                format!(
                    "{}{}",
                    self.generators[l.gen],
                    if l.inverse { "^-1" } else { "" }
                )
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for g in &self.generators {
            writeln!(f, "gen {g}")?;
        }
        for (l, r) in &self.relations {
            writeln!(f, "rel {} = {}", self.render_word(l), self.render_word(r))?;
        }
        Ok(())
    }
}

/// Z^free_rank ⊕ Z/t1 ⊕ Z/t2 ⊕ ...
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Abelianization {
    pub free_rank: usize,
    pub torsion: Vec<u64>,
}

impl fmt::Display for Abelianization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if self.free_rank > 0 {
            parts.push(if self.free_rank == 1 {
                "Z".into()
            } else {
                format!("Z^{}", self.free_rank)
            });
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// Smith normal form of the exponent-sum matrix.
pub fn abelianization(p: &Presentation) -> Abelianization {
    let cols = p.generators.len();
    let mut m: Vec<Vec<i128>> = p
        .relators()
        .iter()
        .map(|r| {
            let mut row = vec![0i128; cols];
            for l in r {
                row[l.gen] += if l.inverse { -1 } else { 1 };
            }
            row
        })
        .collect();
    let rows = m.len();
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pr, pc)) = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| m[i][j] != 0)
            .min_by_key(|&(i, j)| m[i][j].abs())
        else {
            break;
        };
        m.swap(t, pr);
        for row in m.iter_mut() {
            row.swap(t, pc);
        }
        loop {
            let mut done = true;
            for i in t + 1..rows {
                let q = m[i][t] / m[t][t];
                if q != 0 {
                    for j in t..cols {
                        m[i][j] -= q * m[t][j];
                    }
                }
                if m[i][t] != 0 {
                    done = false;
                }
            }
            for j in t + 1..cols {
                let q = m[t][j] / m[t][t];
                if q != 0 {
                    for row in m.iter_mut().skip(t) {
                        row[j] -= q * row[t];
                    }
                }
                if m[t][j] != 0 {
                    done = false;
                }
            }
            if done {
                // divisibility of the remaining block
                if let Some(i) =
                    (t + 1..rows).find(|&i| (t + 1..cols).any(|j| m[i][j] % m[t][t] != 0))
                {
                    for j in t..cols {
                        m[t][j] += m[i][j];
                    }
                    continue;
                }
                break;
            }
            let (pr, pc) = (t..rows)
                .flat_map(|i| (t..cols).map(move |j| (i, j)))
                .filter(|&(i, j)| (i == t || j == t) && m[i][j] != 0)
                .min_by_key(|&(i, j)| m[i][j].abs())
                .expect("pivot row or column is nonzero");
            m.swap(t, pr);
            for row in m.iter_mut() {
                row.swap(t, pc);
            }
        }
        diag.push(m[t][t].unsigned_abs() as u64);
        t += 1;
    }
    Abelianization {
        free_rank: cols - diag.len(),
        torsion: diag.into_iter().filter(|&d| d != 1).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{build_complex, polygon, CellDescriptor};
    use crate::salvetti::build_salvetti;

    fn reduced(q: &CellComplex) -> (Presentation, Presentation) {
        let sal = build_salvetti(q).unwrap();
        let p = presentation(q, &sal).unwrap();
        let r = p.reduce(&sal, 0);
        (p, r)
    }

    #[test]
    fn completed_hexagon() {
        let (p, r) = reduced(&polygon(6, true).unwrap());
        assert_eq!((p.generators.len(), p.relations.len()), (12, 6));
        for (l, rr) in &p.relations {
            assert_eq!((l.len(), rr.len()), (3, 3));
        }
        assert_eq!(
            abelianization(&r),
            Abelianization {
                free_rank: 3,
                torsion: vec![]
            }
        );
        assert_eq!(r.generators.len(), 3);
    }

    #[test]
    fn completed_square() {
        let (p, r) = reduced(&polygon(4, true).unwrap());
        assert_eq!((p.generators.len(), p.relations.len()), (8, 4));
        assert_eq!(r.generators.len(), 2);
        assert_eq!(r.relations.len(), 1);
        assert_eq!(r.relators()[0].len(), 4);
        assert_eq!(
            abelianization(&r),
            Abelianization {
                free_rank: 2,
                torsion: vec![]
            }
        );
    }

    #[test]
    fn single_edge() {
        let q = build_complex(vec![
            CellDescriptor::vertex(),
            CellDescriptor::vertex(),
            CellDescriptor::new(1, vec![0, 1], vec![]),
        ])
        .unwrap();
        let (p, r) = reduced(&q);
        assert_eq!((p.generators.len(), p.relations.len()), (2, 0));
        assert_eq!((r.generators.len(), r.relations.len()), (1, 0));
        assert_eq!(abelianization(&r).to_string(), "Z");
    }

    #[test]
    fn smith_form_torsion() {
        let g = |gen| GenLetter {
            gen,
            inverse: false,
        };
        let p = Presentation {
            generators: vec!["a".into(), "b".into()],
            words: vec![vec![], vec![]],
            relations: vec![
                (vec![g(0), g(0)], vec![]),
                (vec![g(1); 6], vec![g(0), g(0)]),
            ],
        };
        assert_eq!(
            abelianization(&p),
            Abelianization {
                free_rank: 0,
                torsion: vec![2, 6]
            }
        );
    }

    #[test]
    fn reduced_loops_are_based() {
        let q = polygon(6, true).unwrap();
        let sal = build_salvetti(&q).unwrap();
        let r = presentation(&q, &sal).unwrap().reduce(&sal, 0);
        for w in &r.words {
            let mut at = 0;
            for l in w {
                let (s, t) = sal.endpoints(l.edge).unwrap();
                let (from, to) = if l.inverse { (t, s) } else { (s, t) };
                assert_eq!(from, at);
                at = to;
            }
            assert_eq!(at, 0);
        }
        assert_eq!(
            presentation(&polygon(3, false).unwrap(), &sal)
                .map(|_| ())
                .map_err(|e| matches!(e, SalvettiError::NotQmh(_))),
            Err(true)
        );
    }
}
