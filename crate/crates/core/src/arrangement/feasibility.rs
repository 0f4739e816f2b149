//! Exact feasibility of homogeneous sign conditions.
//!
//! A sign condition `sign(<n_i, x>) = s_i` is reduced to a strict system on
//! the null space of its equality rows, which is then decided by
//! Fourier-Motzkin elimination over the integers.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::sign::Sign;

/// Reduced row echelon form; returns the pivot columns.
pub fn rref(rows: &mut Vec<Vec<BigRational>>) -> Vec<usize> {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let factor = rows[i][c].clone();
                for j in 0..cols {
                    let delta = &factor * &rows[r][j];
                    rows[i][j] -= delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

pub fn rank(rows: &[Vec<BigRational>]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

/// A basis of {x : <r, x> = 0 for every row r}, as column vectors.
pub fn null_space(rows: &[Vec<BigRational>], dim: usize) -> Vec<Vec<BigRational>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m);
    let free: Vec<usize> = (0..dim).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); dim];
            v[f] = BigRational::one();
            for (row, &p) in m.iter().zip(&pivots) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect()
}

/// Clears denominators and divides by the content.
fn integer_row(row: &[BigRational]) -> Vec<BigInt> {
    let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = row
        .iter()
        .map(|x| (x * BigRational::from_integer(lcm.clone())).to_integer())
        .collect();
    normalize(ints)
}

fn normalize(row: Vec<BigInt>) -> Vec<BigInt> {
    let g = row.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() || g.is_one() {
        row
    } else {
        row.into_iter().map(|x| x / &g).collect()
    }
}

/// Whether some y satisfies <a, y> > 0 for every row a.
pub fn strictly_feasible(rows: Vec<Vec<BigInt>>) -> bool {
    let mut rows: BTreeSet<Vec<BigInt>> = rows.into_iter().map(normalize).collect();
    let dim = rows.iter().next().map_or(0, |r| r.len());
    for k in 0..dim {
        if rows.iter().any(|r| r.iter().all(Zero::is_zero)) {
            return false;
        }
        let (mut pos, mut neg, mut next) = (Vec::new(), Vec::new(), BTreeSet::new());
        for r in rows {
            if r[k].is_positive() {
                pos.push(r);
            } else if r[k].is_negative() {
                neg.push(r);
            } else {
                next.insert(r);
            }
        }
        for p in &pos {
            for q in &neg {
                let a = -q[k].clone();
                let b = p[k].clone();
                let combined: Vec<BigInt> = p.iter().zip(q).map(|(x, y)| &a * x + &b * y).collect();
                next.insert(normalize(combined));
            }
        }
        rows = next;
    }
    rows.is_empty()
}

/// Whether the sign condition `sign(<normals[i], x>) = signs[i]` has a
/// rational solution.
pub fn sign_feasible(normals: &[Vec<BigRational>], signs: &[Sign]) -> bool {
    let dim = normals.first().map_or(0, |r| r.len());
    let equalities: Vec<Vec<BigRational>> = normals
        .iter()
        .zip(signs)
        .filter(|(_, &s)| s == Sign::Zero)
        .map(|(n, _)| n.clone())
        .collect();
    let basis = null_space(&equalities, dim);
    let strict: Vec<Vec<BigInt>> = normals
        .iter()
        .zip(signs)
        .filter(|(_, &s)| s != Sign::Zero)
        .map(|(n, &s)| {
            let row: Vec<BigRational> = basis
                .iter()
                .map(|b| {
                    let dot: BigRational = n.iter().zip(b).map(|(x, y)| x * y).sum();
                    if s == Sign::Minus {
                        -dot
                    } else {
                        dot
                    }
                })
                .collect();
            integer_row(&row)
        })
        .collect();
    if strict.is_empty() {
        return true;
    }
    if basis.is_empty() {
        return false;
    }
    strictly_feasible(strict)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: &[i64]) -> Vec<BigRational> {
        v.iter()
            .map(|&x| BigRational::from_integer(x.into()))
            .collect()
    }

    fn z(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn strict_systems() {
        assert!(strictly_feasible(vec![z(&[1, 0]), z(&[0, 1])]));
        assert!(!strictly_feasible(vec![z(&[1, 0]), z(&[-1, 0])]));
        assert!(!strictly_feasible(vec![
            z(&[1, 0]),
            z(&[0, 1]),
            z(&[-1, -1])
        ]));
        assert!(strictly_feasible(vec![z(&[1, 0]), z(&[0, 1]), z(&[-1, 2])]));
        assert!(!strictly_feasible(vec![z(&[0, 0])]));
    }

    #[test]
    fn null_space_dimension() {
        let rows = vec![q(&[1, 1, 0])];
        let ns = null_space(&rows, 3);
        assert_eq!(ns.len(), 2);
        for v in ns {
            let dot: BigRational = rows[0].iter().zip(&v).map(|(a, b)| a * b).sum();
            assert!(dot.is_zero());
        }
        assert_eq!(rank(&[q(&[1, 0]), q(&[2, 0])]), 1);
    }

    #[test]
    fn sign_conditions() {
        let normals = vec![q(&[1, 0]), q(&[0, 1]), q(&[1, 1])];
        use Sign::*;
        assert!(sign_feasible(&normals, &[Plus, Plus, Plus]));
        assert!(!sign_feasible(&normals, &[Plus, Plus, Minus]));
        assert!(sign_feasible(&normals, &[Plus, Minus, Zero]));
        assert!(!sign_feasible(&normals, &[Plus, Zero, Zero]));
        assert!(sign_feasible(&normals, &[Zero, Zero, Zero]));
    }
}
