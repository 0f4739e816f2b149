mod common;

use std::sync::OnceLock;

use proptest::prelude::*;

use mhgarside::{
    abelianization, build_salvetti, make_context, presentation, CellComplex, GarsideContext,
    GarsideError, HemisphereMaps, Letter, Morphism, OracleError, PathOracle, PositivePath,
    SalvettiComplex,
};

use common::{completed, dual};

struct World {
    q: CellComplex,
    sal: SalvettiComplex,
    maps: HemisphereMaps,
}

fn s4() -> &'static World {
    static W: OnceLock<World> = OnceLock::new();
    W.get_or_init(|| {
        let q = completed("S4");
        let sal = build_salvetti(&q).unwrap();
        let maps = HemisphereMaps::compute(&q).unwrap();
        World { q, sal, maps }
    })
}

fn ctx() -> GarsideContext {
    let w = s4();
    make_context(&w.q, &w.maps).unwrap()
}

fn walk(q: &CellComplex, start: usize, steps: &[usize]) -> PositivePath {
    let mut path = vec![start % q.num_vertices()];
    for &s in steps {
        let ns = q.neighbors(*path.last().unwrap());
        path.push(ns[s % ns.len()]);
    }
    PositivePath::new(q, path).unwrap()
}

fn morphism(ctx: &GarsideContext, start: usize, steps: &[usize]) -> Morphism {
    ctx.from_path(&walk(ctx.complex(), start, steps))
}

fn steps() -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0usize..6, 0..9)
}

#[test]
fn delta_length_counts_hyperplanes() {
    for name in ["I22", "I24", "I26", "S4"] {
        let d = dual(name);
        let n = d.lattice().n();
        let q = d.completed().into_complex();
        let ctx = make_context(&q, &HemisphereMaps::compute(&q).unwrap()).unwrap();
        for x in 0..q.num_vertices() {
            let delta = ctx.delta(x);
            assert_eq!(ctx.length(&delta), n, "{name}");
            assert_eq!(delta.target(), ctx.phi().apply(x));
            assert_eq!(delta.num_factors(), 1);
        }
    }
}

#[test]
fn simplicial_completion_is_required() {
    let q = completed("GEN4");
    let err = make_context(&q, &HemisphereMaps::compute(&q).unwrap()).unwrap_err();
    assert!(matches!(err, GarsideError::NotSimplicial(_)), "{err}");
}

// H1 of the complement of n complex hyperplanes is free of rank n.
#[test]
fn abelianization_rank_counts_hyperplanes() {
    for name in ["I22", "I23", "I24", "I25", "S4", "GEN4"] {
        let d = dual(name);
        let q = d.completed().into_complex();
        let sal = build_salvetti(&q).unwrap();
        let full = presentation(&q, &sal).unwrap();
        assert_eq!(full.generators.len(), sal.complex().f_vector()[1]);
        assert_eq!(full.relations.len(), sal.complex().f_vector()[2]);
        let reduced = full.reduce(&sal, 0);
        let ab = abelianization(&reduced);
        assert_eq!(
            (ab.free_rank, ab.torsion.len()),
            (d.lattice().n(), 0),
            "{name}"
        );
        // before reduction every edge of a spanning tree is a free generator
        assert_eq!(
            abelianization(&full).free_rank,
            ab.free_rank + q.num_vertices() - 1,
            "{name}"
        );
    }
}

#[test]
fn relations_hold_in_the_groupoid() {
    let w = s4();
    let ctx = ctx();
    let full = presentation(&w.q, &w.sal).unwrap();
    let word = |side: &[mhgarside::garside::GenLetter]| -> Vec<Letter> {
        side.iter()
            .map(|g| Letter {
                edge: full.words[g.gen][0].edge,
                inverse: g.inverse,
            })
            .collect()
    };
    for (lhs, rhs) in &full.relations {
        let (l, r) = (word(lhs), word(rhs));
        let start = mhgarside::garside::word_source(&w.sal, &l).unwrap();
        assert!(ctx.equal(&w.sal, start, &l, &r).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn normal_forms_are_canonical(start in 0usize..24, s in steps()) {
        let ctx = ctx();
        let oracle = PathOracle::new(ctx.complex(), ctx.maps().clone());
        let p = walk(ctx.complex(), start, &s);
        let f = ctx.from_path(&p);
        prop_assert!(ctx.is_normal(&f));
        prop_assert_eq!(ctx.length(&f), p.len());
        prop_assert!(oracle.equivalent(&p, &ctx.to_path(&f)).unwrap());
        prop_assert_eq!(ctx.from_path(&ctx.to_path(&f)), f);
    }

    #[test]
    fn composition_is_associative_and_graded(start in 0usize..24, a in steps(), b in steps(), c in steps()) {
        let ctx = ctx();
        let f = morphism(&ctx, start, &a);
        let g = morphism(&ctx, f.target(), &b);
        let h = morphism(&ctx, g.target(), &c);
        let left = ctx.compose(&ctx.compose(&f, &g).unwrap(), &h).unwrap();
        let right = ctx.compose(&f, &ctx.compose(&g, &h).unwrap()).unwrap();
        prop_assert_eq!(&left, &right);
        prop_assert_eq!(ctx.length(&left), ctx.length(&f) + ctx.length(&g) + ctx.length(&h));
    }

    #[test]
    fn meet_and_join_are_lattice_operations(start in 0usize..24, a in steps(), b in steps()) {
        let ctx = ctx();
        let f = morphism(&ctx, start, &a);
        let g = morphism(&ctx, start, &b);
        let m = ctx.meet(&f, &g).unwrap();
        let j = ctx.join(&f, &g).unwrap();
        prop_assert_eq!(&m, &ctx.meet(&g, &f).unwrap());
        prop_assert_eq!(&j, &ctx.join(&g, &f).unwrap());
        prop_assert!(ctx.left_divides(&m, &f).unwrap() && ctx.left_divides(&m, &g).unwrap());
        prop_assert!(ctx.left_divides(&f, &j).unwrap() && ctx.left_divides(&g, &j).unwrap());
        prop_assert_eq!(ctx.meet(&f, &j).unwrap(), f.clone());
        prop_assert_eq!(ctx.join(&f, &m).unwrap(), f.clone());
        prop_assert_eq!(ctx.meet(&f, &f).unwrap(), f);
    }

    #[test]
    fn words_times_inverses_are_trivial(start in 0usize..24, s in prop::collection::vec(0usize..6, 0..7)) {
        let w = s4();
        let ctx = ctx();
        let p = walk(&w.q, start, &s);
        let word: Vec<Letter> = w.sal.lift(&p).into_iter().map(|edge| Letter { edge, inverse: false }).collect();
        let mut loop_word = word.clone();
        loop_word.extend(word.iter().rev().map(|l| l.inverted()));
        prop_assert!(ctx.is_trivial(&w.sal, p.source(), &loop_word).unwrap());
        let e = ctx.word_to_element(&w.sal, p.source(), &word).unwrap();
        prop_assert_eq!(e.p, 0);
        prop_assert_eq!(e.positive, ctx.from_path(&p));
    }

    #[test]
    fn equality_matches_the_oracle(start in 0usize..24, letters in prop::collection::vec((0usize..6, any::<bool>()), 0..6)) {
        let w = s4();
        let ctx = ctx();
        let oracle = PathOracle::new(&w.q, w.maps.clone());
        let mut at = start;
        let mut word = Vec::new();
        for &(k, inverse) in &letters {
            let n = w.q.neighbors(at)[k % w.q.neighbors(at).len()];
            let edge = if inverse { w.sal.edge_between(n, at) } else { w.sal.edge_between(at, n) }.unwrap();
            word.push(Letter { edge, inverse });
            at = n;
        }
        let e = ctx.word_to_element(&w.sal, start, &word).unwrap();
        // long denominators overflow the oracle's class cap
        let o = match oracle.word_element(&w.sal, start, &word) {
            Err(OracleError::ExplosionGuard(_)) => return Err(TestCaseError::reject("oracle cap")),
            r => r.unwrap(),
        };
        prop_assert_eq!(e.p, o.p);
        prop_assert!(oracle.equivalent(&ctx.to_path(&e.positive), &o.positive).unwrap());
    }
}
