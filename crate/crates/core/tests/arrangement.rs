use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_rational::Rational64;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

use mhgarside::arrangement::{check_simplicial, circuits_from_topes, om_rank, rational};
use mhgarside::{
    check_mh, covectors_from_hyperplanes, fixtures, make_context, Arrangement, DualComplex,
    FixtureId, HemisphereMaps, Sign, SignVector,
};

fn sign_of(x: i64) -> Sign {
    match x.cmp(&0) {
        Ordering::Greater => Sign::Plus,
        Ordering::Less => Sign::Minus,
        Ordering::Equal => Sign::Zero,
    }
}

fn signs_at(normals: &[[i64; 2]], p: [i64; 2]) -> SignVector {
    SignVector(
        normals
            .iter()
            .map(|n| sign_of(n[0] * p[0] + n[1] * p[1]))
            .collect(),
    )
}

fn cross(a: [i64; 2], b: [i64; 2]) -> i64 {
    a[0] * b[1] - a[1] * b[0]
}

/// Covectors of a central line arrangement, read off at the rays and at one
/// point strictly between consecutive rays.
fn planar_covectors(normals: &[[i64; 2]]) -> BTreeSet<SignVector> {
    let half = |r: [i64; 2]| r[1] < 0 || (r[1] == 0 && r[0] < 0);
    let mut rays: Vec<[i64; 2]> = normals
        .iter()
        .flat_map(|n| [[-n[1], n[0]], [n[1], -n[0]]])
        .collect();
    rays.sort_by(|&a, &b| half(a).cmp(&half(b)).then_with(|| 0.cmp(&cross(a, b))));
    rays.dedup_by(|a, b| cross(*a, *b) == 0 && a[0] * b[0] + a[1] * b[1] > 0);
    let mut out = BTreeSet::from([SignVector::zero(normals.len())]);
    for (k, &r) in rays.iter().enumerate() {
        let s = rays[(k + 1) % rays.len()];
        out.insert(signs_at(normals, r));
        let inside = if cross(r, s) > 0 {
            [r[0] + s[0], r[1] + s[1]]
        } else {
            [-r[1], r[0]]
        };
        out.insert(signs_at(normals, inside));
    }
    out
}

/// Null space of the columns `cols`, when it is a line.
fn kernel_line(cols: &[Vec<i64>]) -> Option<Vec<Rational64>> {
    let d = cols[0].len();
    let k = cols.len();
    let mut m: Vec<Vec<Rational64>> = (0..d)
        .map(|r| {
            (0..k)
                .map(|c| Rational64::from_integer(cols[c][r]))
                .collect()
        })
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for c in 0..k {
        let Some(p) = (row..d).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let lead = m[row][c];
        m[row].iter_mut().for_each(|x| *x /= lead);
        for r in 0..d {
            if r != row && !m[r][c].is_zero() {
                let f = m[r][c];
                let src = m[row].clone();
                m[r].iter_mut().zip(src).for_each(|(x, y)| *x -= f * y);
            }
        }
        pivots.push(c);
        row += 1;
    }
    if k - pivots.len() != 1 {
        return None;
    }
    let free = (0..k).find(|c| !pivots.contains(c)).unwrap();
    let mut v = vec![Rational64::zero(); k];
    v[free] = Rational64::from_integer(1);
    for (r, &p) in pivots.iter().enumerate() {
        v[p] = -m[r][free];
    }
    Some(v)
}

/// Signed minimal linear dependencies among the normals.
fn dependency_circuits(normals: &[Vec<i64>]) -> BTreeSet<SignVector> {
    let n = normals.len();
    let mut out = BTreeSet::new();
    for mask in 1u32..(1 << n) {
        let support: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        let cols: Vec<Vec<i64>> = support.iter().map(|&i| normals[i].clone()).collect();
        if let Some(v) = kernel_line(&cols) {
            if v.iter().all(|x| !x.is_zero()) {
                let mut c = SignVector::zero(n);
                for (&i, x) in support.iter().zip(&v) {
                    c.0[i] = if x.is_positive() {
                        Sign::Plus
                    } else {
                        Sign::Minus
                    };
                }
                out.insert(c.neg());
                out.insert(c);
            }
        }
    }
    out
}

fn planar() -> impl Strategy<Value = Vec<[i64; 2]>> {
    prop::collection::vec([-4i64..=4, -4i64..=4], 1..=6)
        .prop_map(|v| v.into_iter().filter(|n| n != &[0, 0]).collect::<Vec<_>>())
        .prop_filter("at least one line", |v| !v.is_empty())
}

fn distinct_lines(normals: &[[i64; 2]]) -> usize {
    let mut reps: Vec<[i64; 2]> = Vec::new();
    for &n in normals {
        if !reps.iter().any(|&r| cross(r, n) == 0) {
            reps.push(n);
        }
    }
    reps.len()
}

fn arrangement(normals: &[[i64; 2]]) -> Arrangement {
    Arrangement::from_integers(&normals.iter().map(|n| n.to_vec()).collect::<Vec<_>>()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn planar_covectors_match_ray_sweep(normals in planar()) {
        let fl = covectors_from_hyperplanes(&arrangement(&normals));
        let found: BTreeSet<SignVector> = fl.covectors().iter().cloned().collect();
        prop_assert_eq!(found, planar_covectors(&normals));
    }

    #[test]
    fn planar_dual_is_an_mh_polygon(normals in planar().prop_filter("rank two", |v| distinct_lines(v) >= 2)) {
        let k = distinct_lines(&normals);
        let d = DualComplex::new(&covectors_from_hyperplanes(&arrangement(&normals))).unwrap();
        let q = d.complex();
        prop_assert_eq!(q.num_vertices(), 2 * k);
        prop_assert!(check_mh(q).mh.passed());
        let qc = d.completed().into_complex();
        let ctx = make_context(&qc, &HemisphereMaps::compute(&qc).unwrap()).unwrap();
        prop_assert!((0..qc.num_vertices()).all(|x| ctx.length(&ctx.delta(x)) == k));
    }

    #[test]
    fn circuits_are_minimal_dependencies(
        normals in prop::collection::vec(prop::collection::vec(-2i64..=2, 3), 2..=5)
            .prop_filter("nonzero normals", |v| v.iter().all(|n| n.iter().any(|&x| x != 0)))
    ) {
        let arr = Arrangement::from_integers(&normals).unwrap();
        let cs = circuits_from_topes(&covectors_from_hyperplanes(&arr));
        let found: BTreeSet<SignVector> = cs.circuits().iter().cloned().collect();
        prop_assert_eq!(found, dependency_circuits(&normals));
    }

    #[test]
    fn covectors_are_closed_under_composition_and_negation(
        normals in prop::collection::vec(prop::collection::vec(-2i64..=2, 3), 1..=5)
            .prop_filter("nonzero normals", |v| v.iter().all(|n| n.iter().any(|&x| x != 0))),
        factors in prop::collection::vec((1i64..=9, 1i64..=9), 5)
    ) {
        let arr = Arrangement::from_integers(&normals).unwrap();
        let fl = covectors_from_hyperplanes(&arr);
        for x in fl.covectors() {
            prop_assert!(fl.contains(&x.neg()));
            for y in fl.covectors() {
                prop_assert!(fl.contains(&x.compose(y)));
            }
        }
        let scale: Vec<_> = factors[..arr.len()].iter().map(|&(a, b)| rational(a, b)).collect();
        prop_assert_eq!(covectors_from_hyperplanes(&arr.rescaled(&scale)), fl);
    }
}

#[test]
fn braid_arrangement_face_counts() {
    let fl = fixtures::lattice(FixtureId::S4);
    let by_zeros = |z: usize| fl.covectors().iter().filter(|x| x.zeros() == z).count();
    // permutohedron: 24 vertices, 36 edges, 14 facets (8 rays on three
    // planes, 6 on two), then the origin
    assert_eq!(
        [
            by_zeros(0),
            by_zeros(1),
            by_zeros(2),
            by_zeros(3),
            by_zeros(6)
        ],
        [24, 36, 6, 8, 1]
    );
    assert_eq!(fl.len(), 75);
    let cs = circuits_from_topes(&fl);
    assert_eq!(om_rank(&cs).unwrap(), 3);
    assert_eq!(
        cs.circuits().iter().map(|c| c.support().len()).min(),
        Some(3)
    );
}

#[test]
fn dihedral_fixtures_are_simplicial_and_rank_two() {
    for m in 2..=7 {
        let fl = fixtures::lattice(FixtureId::I2(m));
        assert_eq!(fl.topes().len(), 2 * m);
        assert!(check_simplicial(&fl).unwrap().is_none());
        let cs = circuits_from_topes(&fl);
        if m == 2 {
            assert!(cs.is_empty());
        } else {
            assert_eq!(om_rank(&cs).unwrap(), 2);
        }
    }
}

#[test]
fn generic_planes_have_the_generic_tope_count() {
    // 4 generic central planes in R^3: 2 (C(3,0) + C(3,1) + C(3,2)) = 14 regions
    let fl = fixtures::lattice(FixtureId::Gen4);
    assert_eq!(fl.topes().len(), 14);
    assert!(check_simplicial(&fl).unwrap().is_some());
}
