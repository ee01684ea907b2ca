//! Exact linear algebra over Q: fraction-free row reduction, kernels and
//! linear solves.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

/// Reduced row echelon form with pivots chosen in `col_order`.
#[derive(Clone, Debug)]
pub struct Echelon {
    /// Nonzero rows, scaled so each pivot entry is 1.
    pub rows: Vec<Vec<Rational>>,
    /// Pivot column of each row.
    pub pivots: Vec<usize>,
    pub ncols: usize,
}

fn integer_row(row: &[Rational]) -> Vec<BigInt> {
    let l = row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    row.iter().map(|q| q.numer() * (&l / q.denom())).collect()
}

fn remove_content(row: &mut [BigInt]) {
    let g = row.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if !g.is_zero() && !g.is_one() {
        for v in row.iter_mut() {
            *v = &*v / &g;
        }
    }
}

/// Integer (fraction-free) Gauss-Jordan elimination. Pivot search follows
/// `col_order`, and within a column takes the first eligible row.
pub fn echelon(rows: &[Vec<Rational>], ncols: usize, col_order: &[usize]) -> Echelon {
    let mut m: Vec<Vec<BigInt>> = rows.iter().map(|r| integer_row(r)).collect();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for &c in col_order {
        let Some(r) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, r);
        let piv_row = m[rank].clone();
        let p = piv_row[c].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == rank || row[c].is_zero() {
                continue;
            }
            let a = row[c].clone();
            for (v, pv) in row.iter_mut().zip(&piv_row) {
                *v = &p * &*v - &a * pv;
            }
            remove_content(row);
        }
        pivots.push(c);
        rank += 1;
    }
    let rows = m
        .into_iter()
        .take(rank)
        .zip(&pivots)
        .map(|(row, &c)| {
            let p = row[c].clone();
            row.into_iter().map(|v| Rational::new(v, p.clone())).collect()
        })
        .collect();
    Echelon { rows, pivots, ncols }
}

/// Basis of `{v : A v = 0}`, canonicalized to reduced echelon form over the
/// natural column order (first nonzero entry of each vector is 1).
pub fn kernel(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let order: Vec<usize> = (0..ncols).collect();
    kernel_with_order(rows, ncols, &order)
}

pub fn kernel_with_order(rows: &[Vec<Rational>], ncols: usize, col_order: &[usize]) -> Vec<Vec<Rational>> {
    let e = echelon(rows, ncols, col_order);
    let free: Vec<usize> = (0..ncols).filter(|c| !e.pivots.contains(c)).collect();
    let raw: Vec<Vec<Rational>> = free
        .iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); ncols];
            v[f] = Rational::one();
            for (row, &p) in e.rows.iter().zip(&e.pivots) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect();
    canonical_basis(&raw)
}

/// Reduced echelon form of a spanning set, as a list of row vectors.
pub fn canonical_basis(vectors: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let Some(n) = vectors.first().map(|v| v.len()) else {
        return Vec::new();
    };
    let order: Vec<usize> = (0..n).collect();
    echelon(vectors, n, &order).rows
}

pub fn rank(rows: &[Vec<Rational>], ncols: usize) -> usize {
    let order: Vec<usize> = (0..ncols).collect();
    echelon(rows, ncols, &order).pivots.len()
}

/// Some solution of `A x = b`, with free variables set to zero, or `None`
/// when the system is inconsistent.
pub fn solve(rows: &[Vec<Rational>], rhs: &[Rational], ncols: usize) -> Option<Vec<Rational>> {
    let aug: Vec<Vec<Rational>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            let mut r = r.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let order: Vec<usize> = (0..=ncols).collect();
    let e = echelon(&aug, ncols + 1, &order);
    if e.pivots.contains(&ncols) {
        return None;
    }
    let mut x = vec![Rational::zero(); ncols];
    for (row, &p) in e.rows.iter().zip(&e.pivots) {
        x[p] = row[ncols].clone();
    }
    Some(x)
}

pub fn mat_vec(rows: &[Vec<Rational>], v: &[Rational]) -> Vec<Rational> {
    rows.iter()
        .map(|r| r.iter().zip(v).fold(Rational::zero(), |acc, (a, b)| acc + a * b))
        .collect()
}

pub fn is_zero_vec(v: &[Rational]) -> bool {
    v.iter().all(|x| x.is_zero())
}

/// Largest absolute numerator, a cheap growth diagnostic for tests.
pub fn max_abs_numerator(rows: &[Vec<Rational>]) -> BigInt {
    rows.iter().flatten().map(|q| q.numer().abs()).max().unwrap_or_default()
}
