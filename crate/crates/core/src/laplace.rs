//! The positive Laplace transform of lattice polygons, from exact moments.
//!
//! Kept independent of the series transforms: moments are integrated
//! triangle by triangle with plain polynomial arithmetic.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::geometry::{LatticePolygon, Point, Triangulation};
use crate::rational::{factorial, int, inv_factorial, Rational};
use crate::series::Series2;

type Poly = BTreeMap<(u32, u32), Rational>;

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (&(i, j), c) in a {
        for (&(k, l), d) in b {
            let e = out.entry((i + k, j + l)).or_insert_with(Rational::zero);
            *e += c * d;
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

fn affine_form(c0: i64, cu: i64, cv: i64) -> Poly {
    let mut p = Poly::new();
    for (e, c) in [((0, 0), c0), ((1, 0), cu), ((0, 1), cv)] {
        if c != 0 {
            p.insert(e, int(c));
        }
    }
    p
}

fn powers(p: &Poly, n: u32) -> Vec<Poly> {
    let mut out = vec![Poly::from([((0, 0), int(1))])];
    for k in 1..=n as usize {
        out.push(poly_mul(&out[k - 1], p));
    }
    out
}

/// `∫_T u^a v^b du dv = a! b! / (a+b+2)!` over the standard triangle.
pub fn triangle_moment(a: u32, b: u32) -> Rational {
    Rational::from_integer(factorial(a) * factorial(b)) * inv_factorial(a + b + 2)
}

/// Moments `∫_P s^a t^b ds dt` for `a + b ≤ max_degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MomentTable {
    pub polygon: LatticePolygon,
    pub max_degree: u32,
    pub values: BTreeMap<(u32, u32), Rational>,
}

impl MomentTable {
    pub fn get(&self, a: u32, b: u32) -> Rational {
        self.values.get(&(a, b)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn area(&self) -> Rational {
        self.get(0, 0)
    }
}

fn triangle_contribution(tri: [Point; 3], n: u32, acc: &mut BTreeMap<(u32, u32), Rational>) {
    let [v0, v1, v2] = tri;
    let s = affine_form(v0.0, v1.0 - v0.0, v2.0 - v0.0);
    let t = affine_form(v0.1, v1.1 - v0.1, v2.1 - v0.1);
    let sp = powers(&s, n);
    let tp = powers(&t, n);
    for a in 0..=n {
        for b in 0..=n - a {
            let integrand = poly_mul(&sp[a as usize], &tp[b as usize]);
            let value = integrand
                .iter()
                .fold(Rational::zero(), |m, (&(i, j), c)| m + c * triangle_moment(i, j));
            *acc.entry((a, b)).or_insert_with(Rational::zero) += value;
        }
    }
}

pub fn polygon_moments_with(poly: &LatticePolygon, tri: &Triangulation, max_degree: u32) -> MomentTable {
    let mut values = BTreeMap::new();
    for t in &tri.triangles {
        triangle_contribution(tri.triangle_points(t), max_degree, &mut values);
    }
    values.retain(|_, v: &mut Rational| !v.is_zero());
    MomentTable { polygon: poly.clone(), max_degree, values }
}

pub fn polygon_moments(poly: &LatticePolygon, max_degree: u32) -> Result<MomentTable> {
    if poly.dim() < 2 {
        return Err(Error::NotFullDimensional);
    }
    let tri = poly.unimodular_triangulation()?;
    Ok(polygon_moments_with(poly, &tri, max_degree))
}

/// `ℒ₊(P)(x, y) = Σ μ(a, b)/(a! b!) x^a y^b`; zero for points and segments.
pub fn laplace_plus(poly: &LatticePolygon, order: u32) -> Series2 {
    match polygon_moments(poly, order) {
        Ok(m) => Series2::from_terms(
            order,
            m.values
                .iter()
                .map(|(&(a, b), mu)| ((a, b), mu * inv_factorial(a) * inv_factorial(b))),
        ),
        Err(_) => Series2::zero(order),
    }
}
