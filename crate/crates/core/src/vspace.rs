//! Bases of the spaces of homogeneous parameter forms of degree `d`, by
//! exact kernel computation.

use num_traits::Zero;

use crate::group::is_d4_invariant;
use crate::laws::{check_law, residuals, to_st, LawId};
use crate::linalg;
use crate::rational::{int, Rational};
use crate::series::Series2;

/// Reduced-echelon basis of the degree-`d` solutions. Each element is a
/// homogeneous polynomial stored at order `d + 2`, enough for every law to
/// be checked on its top-degree terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VdBasis {
    pub degree: u32,
    pub basis: Vec<Series2>,
}

impl VdBasis {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// The basis forms re-stamped at working order `order`.
    pub fn at_order(&self, order: u32) -> Vec<Series2> {
        self.basis.iter().map(|b| b.as_polynomial(order)).collect()
    }

    /// Each element satisfies the defining equation and is D4-invariant.
    pub fn verify(&self) -> bool {
        self.basis
            .iter()
            .all(|b| check_law(LawId::RhoFormula, b).holds && is_d4_invariant(b).invariant)
    }
}

fn monomial_columns(d: u32) -> Vec<Series2> {
    (0..=d).map(|i| Series2::monomial(d - i, i, int(1), d + 2)).collect()
}

/// Constraint matrix: one row per coefficient of each law residual, one
/// column per monomial `x^{d-i} y^i`.
fn constraint_rows(d: u32, laws: &[LawId]) -> Vec<Vec<Rational>> {
    let columns: Vec<Vec<Series2>> = monomial_columns(d)
        .iter()
        .map(|m| laws.iter().flat_map(|&l| residuals(l, m)).collect())
        .collect();
    let mut rows = Vec::new();
    for k in 0..columns[0].len() {
        for deg in [d, d + 1] {
            for q in 0..=deg {
                let row: Vec<Rational> = columns.iter().map(|c| c[k].coeff(deg - q, q)).collect();
                if row.iter().any(|v| !v.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    rows
}

fn to_forms(d: u32, vectors: Vec<Vec<Rational>>) -> Vec<Series2> {
    vectors
        .into_iter()
        .map(|v| Series2::from_terms(d + 2, v.into_iter().enumerate().map(|(i, c)| ((d - i as u32, i as u32), c))))
        .collect()
}

fn solve_kernel(d: u32, laws: &[LawId], reversed: bool) -> Vec<Series2> {
    let rows = constraint_rows(d, laws);
    let n = d as usize + 1;
    let order: Vec<usize> = if reversed { (0..n).rev().collect() } else { (0..n).collect() };
    to_forms(d, linalg::kernel_with_order(&rows, n, &order))
}

/// Degree-`d` forms satisfying (A′) and (E).
pub fn vd_basis(d: u32) -> VdBasis {
    VdBasis { degree: d, basis: solve_kernel(d, &[LawId::Aprime, LawId::E], false) }
}

/// Same kernel with pivots searched in the reversed monomial order; the
/// canonical basis must come out identical.
pub fn vd_basis_reversed_pivots(d: u32) -> VdBasis {
    VdBasis { degree: d, basis: solve_kernel(d, &[LawId::Aprime, LawId::E], true) }
}

/// Closed-form dimension: 0 for odd `d`, `⌊d/12⌋` when `d ≡ 2 (mod 12)`,
/// otherwise `⌊d/12⌋ + 1`.
pub fn predicted_dim(d: u32) -> usize {
    if d % 2 == 1 {
        0
    } else if d % 12 == 2 {
        (d / 12) as usize
    } else {
        (d / 12) as usize + 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimRow {
    pub d: u32,
    pub computed: usize,
    pub predicted: usize,
}

impl DimRow {
    pub fn matches(&self) -> bool {
        self.computed == self.predicted
    }
}

pub fn dims_table(d_max: u32) -> Vec<DimRow> {
    (0..=d_max)
        .map(|d| DimRow { d, computed: vd_basis(d).dim(), predicted: predicted_dim(d) })
        .collect()
}

/// Degree-`d` forms in `(s, t)` satisfying (A″) and `σ(-t, -s) = σ(s, t)`,
/// the image of (E) under the change of variables.
pub fn st_basis(d: u32) -> VdBasis {
    let rows = {
        let mut rows = constraint_rows(d, &[LawId::Adoubleprime]);
        let cols: Vec<Series2> = monomial_columns(d)
            .iter()
            .map(|m| &m.substitute_int(0, -1, -1, 0) - m)
            .collect();
        for q in 0..=d {
            rows.push(cols.iter().map(|c| c.coeff(d - q, q)).collect());
        }
        rows
    };
    VdBasis { degree: d, basis: to_forms(d, linalg::kernel(&rows, d as usize + 1)) }
}

/// Whether `to_st` maps the `(x, y)` basis onto a spanning set of the
/// `(s, t)` basis.
pub fn st_isomorphic(d: u32) -> bool {
    let xy = vd_basis(d);
    let st = st_basis(d);
    if xy.dim() != st.dim() {
        return false;
    }
    let vec_of = |s: &Series2| -> Vec<Rational> { (0..=d).map(|i| s.coeff(d - i, i)).collect() };
    let images: Vec<Vec<Rational>> = xy.basis.iter().map(|b| vec_of(&to_st(b))).collect();
    let targets: Vec<Vec<Rational>> = st.basis.iter().map(vec_of).collect();
    let mut both = images.clone();
    both.extend(targets);
    linalg::rank(&images, d as usize + 1) == st.dim() && linalg::rank(&both, d as usize + 1) == st.dim()
}
