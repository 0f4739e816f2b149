use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;

use crate::complex::Vertex;
use crate::oracle::PathOracle;
use crate::salvetti::PositivePath;

use super::{GarsideContext, GarsideError, Morphism};

/// Outcome of one axiom over all the cases it was checked on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomCheck {
    pub name: &'static str,
    pub cases: usize,
    pub witness: Option<String>,
}

impl AxiomCheck {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GarsideReport {
    pub max_len: usize,
    pub checks: Vec<AxiomCheck>,
}

impl GarsideReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(AxiomCheck::passed)
    }

    pub fn check(&self, name: &str) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for GarsideReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            match &c.witness {
                None => writeln!(f, "{:<16} PASS ({} cases)", c.name, c.cases)?,
                Some(w) => writeln!(f, "{:<16} FAIL {w}", c.name)?,
            }
        }
        Ok(())
    }
}

/// Morphisms out of one vertex: oracle class key and engine normal form.
pub(crate) type Catalogue = Vec<(PositivePath, Morphism)>;

/// All morphisms of length at most `max_len` starting at `x`.
pub(crate) fn catalogue(
    ctx: &GarsideContext,
    oracle: &PathOracle,
    x: Vertex,
    max_len: usize,
) -> Result<(Catalogue, Option<String>), GarsideError> {
    let q = ctx.complex();
    let mut paths = vec![vec![x]];
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
        paths.extend(next.iter().cloned());
        frontier = next;
    }
    let mut by_key: BTreeMap<PositivePath, Morphism> = BTreeMap::new();
    let mut by_form: BTreeMap<Morphism, PositivePath> = BTreeMap::new();
    let mut witness = None;
    for p in paths {
        let p = PositivePath::from_vertices_unchecked(p);
        let key = oracle.key(&p)?;
        let form = ctx.from_path(&p);
        let mut fail = |w: String| {
            if witness.is_none() {
                witness = Some(w);
            }
        };
        if !ctx.is_normal(&form) {
            fail(format!("{} is not left-weighted", ctx.render(&form)));
        }
        if !oracle.class(&p)?.contains(&ctx.to_path(&form)) {
            fail(format!(
                "[{}] has normal form {} outside its class",
                p.render(q),
                ctx.render(&form)
            ));
        }
        match by_key.get(&key) {
            Some(f) if *f != form => fail(format!(
                "[{}] gives {} and {}",
                p.render(q),
                ctx.render(f),
                ctx.render(&form)
            )),
            _ => {}
        }
        match by_form.get(&form) {
            Some(k) if *k != key => fail(format!(
                "inequivalent [{}] and [{}] share {}",
                k.render(q),
                key.render(q),
                ctx.render(&form)
            )),
            _ => {}
        }
        by_key.insert(key.clone(), form.clone());
        by_form.insert(form, key);
    }
    Ok((by_key.into_iter().collect(), witness))
}

struct Tally {
    name: &'static str,
    cases: usize,
    witness: Option<String>,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Tally {
            name,
            cases: 0,
            witness: None,
        }
    }

    fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.witness.is_none() {
            self.witness = Some(witness());
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.cases += other.cases;
        if self.witness.is_none() {
            self.witness = other.witness;
        }
        self
    }

    fn finish(self) -> AxiomCheck {
        AxiomCheck {
            name: self.name,
            cases: self.cases,
            witness: self.witness,
        }
    }
}

const NAMES: [&str; 10] = [
    "normal-form",
    "homogeneity",
    "cancellativity",
    "naturality",
    "atoms-simple",
    "delta-bound",
    "head",
    "left-divides",
    "meet",
    "join",
];

/// Checks the Garside axioms exhaustively on morphisms of length at most
/// `max_len`, against the brute-force oracle where it applies.
pub fn verify_garside(ctx: &GarsideContext, max_len: usize) -> GarsideReport {
    let oracle = ctx.oracle();
    let nv = ctx.num_vertices();
    let catalogues: Vec<Result<(Catalogue, Option<String>), GarsideError>> = (0..nv)
        .into_par_iter()
        .map(|x| catalogue(ctx, &oracle, x, max_len))
        .collect();
    let mut cats = Vec::with_capacity(nv);
    let mut first_error = None;
    let mut nf = Tally::new(NAMES[0]);
    for c in catalogues {
        match c {
            Ok((cat, w)) => {
                nf.record(w.is_none(), || w.unwrap());
                cats.push(cat);
            }
            Err(e) => {
                first_error.get_or_insert(e.to_string());
                cats.push(Vec::new());
            }
        }
    }
    if let Some(e) = first_error {
        let checks = NAMES
            .iter()
            .map(|&name| AxiomCheck {
                name,
                cases: 0,
                witness: Some(format!("enumeration failed: {e}")),
            })
            .collect();
        return GarsideReport { max_len, checks };
    }
    let tallies: Vec<Vec<Tally>> = (0..nv)
        .into_par_iter()
        .map(|x| check_vertex(ctx, &oracle, &cats, x))
        .collect();
    let mut merged: Vec<Tally> = NAMES[1..].iter().map(|&n| Tally::new(n)).collect();
    for per_vertex in tallies {
        merged = merged
            .into_iter()
            .zip(per_vertex)
            .map(|(a, b)| a.merge(b))
            .collect();
    }
    let mut checks = vec![nf.finish()];
    checks.extend(merged.into_iter().map(Tally::finish));
    GarsideReport { max_len, checks }
}

fn check_vertex(
    ctx: &GarsideContext,
    oracle: &PathOracle,
    cats: &[Catalogue],
    x: Vertex,
) -> Vec<Tally> {
    let q = ctx.complex();
    let mut homogeneity = Tally::new(NAMES[1]);
    let mut cancel = Tally::new(NAMES[2]);
    let mut natural = Tally::new(NAMES[3]);
    let mut atoms = Tally::new(NAMES[4]);
    let mut bound = Tally::new(NAMES[5]);
    let mut head = Tally::new(NAMES[6]);
    let mut divides = Tally::new(NAMES[7]);
    let mut meet = Tally::new(NAMES[8]);
    let mut join = Tally::new(NAMES[9]);
    let key = |p: &PositivePath| oracle.key(p).map_err(|e| e.to_string());
    let concat = |a: &PositivePath, b: &PositivePath| a.concat(b).expect("composable");
    let show = |f: &Morphism| ctx.render(f);

    for (fk, f) in &cats[x] {
        let y = f.target();
        let dx = ctx.delta(x);
        // homogeneity and left cancellation against everything leaving y
        let mut seen: BTreeMap<PositivePath, &Morphism> = BTreeMap::new();
        for (gk, g) in &cats[y] {
            let fg = ctx.compose(f, g).expect("composable");
            homogeneity.record(ctx.length(&fg) == ctx.length(f) + ctx.length(g), || {
                format!(
                    "{} then {} has length {}",
                    show(f),
                    show(g),
                    ctx.length(&fg)
                )
            });
            match key(&concat(fk, gk)) {
                Ok(k) => {
                    let clash = seen.insert(k, g);
                    cancel.record(clash.is_none(), || {
                        format!(
                            "{} . {} ~ {} . {}",
                            show(f),
                            show(clash.unwrap()),
                            show(f),
                            show(g)
                        )
                    });
                }
                Err(e) => cancel.record(false, || e),
            }
        }
        // right cancellation against everything arriving at x
        let mut seen: BTreeMap<PositivePath, &Morphism> = BTreeMap::new();
        for (gk, g) in cats.iter().flatten().filter(|(_, g)| g.target() == x) {
            match key(&concat(gk, fk)) {
                Ok(k) => {
                    let clash = seen.insert(k, g);
                    cancel.record(clash.is_none(), || {
                        format!(
                            "{} . {} ~ {} . {}",
                            show(clash.unwrap()),
                            show(f),
                            show(g),
                            show(f)
                        )
                    });
                }
                Err(e) => cancel.record(false, || e),
            }
        }
        // naturality f Δ(y) = Δ(x) φ(f)
        let lhs = ctx.compose(f, &ctx.delta(y)).expect("composable");
        let rhs = ctx.compose(&dx, &ctx.apply_phi(f)).expect("composable");
        let oracle_ok = key(&concat(fk, &ctx.to_path(&ctx.delta(y)))).and_then(|a| {
            key(&concat(&ctx.to_path(&dx), &ctx.to_path(&ctx.apply_phi(f)))).map(|b| a == b)
        });
        natural.record(lhs == rhs && oracle_ok == Ok(true), || {
            format!("fails for {}", show(f))
        });
        // atoms are simple: a a* ~ Δ(x)
        if fk.len() == 1 {
            let star = PositivePath::from_vertices_unchecked(ctx.geodesic(y, ctx.phi().apply(x)));
            let ok = key(&concat(fk, &star)).and_then(|a| key(&ctx.to_path(&dx)).map(|b| a == b));
            atoms.record(ok == Ok(true), || {
                format!("atom {} has no complement", show(f))
            });
        }
        // Δ-power bound and head law
        let power = ctx.delta_power(x, f.num_factors());
        bound.record(ctx.left_divides(f, &power) == Ok(true), || {
            format!("{} does not divide {}", show(f), show(&power))
        });
        let h = ctx.meet(&dx, f).map(|m| m == ctx.simple(x, f.head()));
        head.record(h == Ok(true), || {
            format!("head of {} is not its meet with Delta", show(f))
        });

        for (gk, g) in &cats[x] {
            let engine = ctx.left_divides(f, g).map_err(|e| e.to_string());
            let brute = oracle.left_divides(fk, gk).map_err(|e| e.to_string());
            divides.record(engine.is_ok() && engine == brute, || {
                format!(
                    "{} vs {}: engine {:?}, oracle {:?}",
                    show(f),
                    show(g),
                    engine,
                    brute
                )
            });
            let agree =
                |engine: Result<Morphism, GarsideError>, brute: Result<PositivePath, _>| match (
                    engine, brute,
                ) {
                    (Ok(m), Ok(b)) => key(&ctx.to_path(&m)).map(|k| k == b).unwrap_or(false),
                    _ => false,
                };
            meet.record(agree(ctx.meet(f, g), oracle.meet(fk, gk)), || {
                format!(
                    "meet of {} and {} [{} / {}]",
                    show(f),
                    show(g),
                    fk.render(q),
                    gk.render(q)
                )
            });
            join.record(agree(ctx.join(f, g), oracle.join(fk, gk)), || {
                format!(
                    "join of {} and {} [{} / {}]",
                    show(f),
                    show(g),
                    fk.render(q),
                    gk.render(q)
                )
            });
        }
    }
    vec![
        homogeneity,
        cancel,
        natural,
        atoms,
        bound,
        head,
        divides,
        meet,
        join,
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::polygon;
    use crate::garside::make_context;
    use crate::mh::HemisphereMaps;

    #[test]
    fn completed_polygons_pass() {
        for n in [4, 6, 8] {
            let q = polygon(n, true).unwrap();
            let ctx = make_context(&q, &HemisphereMaps::compute(&q).unwrap()).unwrap();
            let report = verify_garside(&ctx, 3);
            assert!(report.all_passed(), "{n}-gon:\n{report}");
            assert_eq!(report.checks.len(), NAMES.len());
        }
    }

    #[test]
    fn catalogue_sizes() {
        let q = polygon(6, true).unwrap();
        let ctx = make_context(&q, &HemisphereMaps::compute(&q).unwrap()).unwrap();
        let oracle = ctx.oracle();
        let (cat, w) = catalogue(&ctx, &oracle, 0, 3).unwrap();
        assert_eq!(w, None);
        // 1 + 2 + 4 + 8 paths, and only the two sides of the hexagon merge
        assert_eq!(cat.len(), 14);
    }
}
