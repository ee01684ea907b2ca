//! Truncated formal power series over the rationals in one and two
//! variables.
//!
//! Every series carries an explicit `order`: coefficients of total degree
//! `<= order` are exact, everything above is unknown. Binary operations
//! return the smaller of the two orders, and comparisons only look at the
//! common known range.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{binomial, int, inv_factorial, Rational};

pub const DEFAULT_ORDER: u32 = 12;

/// 2x2 matrix `[[a, b], [c, d]]` with rational entries.
pub type Mat2 = [[Rational; 2]; 2];

pub fn mat2(a: i64, b: i64, c: i64, d: i64) -> Mat2 {
    [[int(a), int(b)], [int(c), int(d)]]
}

// Dense triangular index for exponents (p, q) with p + q <= order.
#[inline]
fn tri(p: u32, q: u32) -> usize {
    let d = (p + q) as usize;
    d * (d + 1) / 2 + q as usize
}

#[inline]
fn tri_len(order: u32) -> usize {
    let n = order as usize + 1;
    n * (n + 1) / 2
}

/// Element of Q[[x]] known up to degree `order`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Series1 {
    order: u32,
    coeffs: BTreeMap<u32, Rational>,
}

impl Series1 {
    pub fn zero(order: u32) -> Self {
        Series1 { order, coeffs: BTreeMap::new() }
    }

    /// Builds a series from `(degree, coefficient)` pairs; terms above
    /// `order` are dropped and repeated degrees are summed.
    pub fn from_terms(order: u32, terms: impl IntoIterator<Item = (u32, Rational)>) -> Self {
        let mut coeffs: BTreeMap<u32, Rational> = BTreeMap::new();
        for (k, c) in terms {
            if k <= order {
                *coeffs.entry(k).or_insert_with(Rational::zero) += c;
            }
        }
        coeffs.retain(|_, c| !c.is_zero());
        Series1 { order, coeffs }
    }

    pub fn from_fn(order: u32, f: impl Fn(u32) -> Rational) -> Self {
        Self::from_terms(order, (0..=order).map(|k| (k, f(k))))
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeff(&self, k: u32) -> Rational {
        self.coeffs.get(&k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &Rational)> {
        self.coeffs.iter().map(|(k, c)| (*k, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn truncate(&self, order: u32) -> Self {
        let order = order.min(self.order);
        Self::from_terms(order, self.terms().map(|(k, c)| (k, c.clone())))
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self::from_terms(self.order, self.terms().map(|(k, c)| (k, c * s)))
    }

    /// Lowest degree with a nonzero coefficient.
    pub fn valuation(&self) -> Option<u32> {
        self.coeffs.keys().next().copied()
    }

    /// First degree where the two series differ, within their common order.
    pub fn first_difference(&self, other: &Series1) -> Option<(u32, Rational, Rational)> {
        let order = self.order.min(other.order);
        (0..=order).find_map(|k| {
            let (a, b) = (self.coeff(k), other.coeff(k));
            (a != b).then_some((k, a, b))
        })
    }

    pub fn eq_up_to_order(&self, other: &Series1) -> bool {
        self.first_difference(other).is_none()
    }

    /// `g(x)` as a bivariate series in `x` alone.
    pub fn in_x(&self) -> Series2 {
        Series2::from_terms(self.order, self.terms().map(|(k, c)| ((k, 0), c.clone())))
    }
}

impl Add for &Series1 {
    type Output = Series1;
    fn add(self, rhs: &Series1) -> Series1 {
        let order = self.order.min(rhs.order);
        Series1::from_terms(order, self.terms().chain(rhs.terms()).map(|(k, c)| (k, c.clone())))
    }
}

impl Sub for &Series1 {
    type Output = Series1;
    fn sub(self, rhs: &Series1) -> Series1 {
        let order = self.order.min(rhs.order);
        Series1::from_terms(
            order,
            self.terms()
                .map(|(k, c)| (k, c.clone()))
                .chain(rhs.terms().map(|(k, c)| (k, -c))),
        )
    }
}

impl Mul for &Series1 {
    type Output = Series1;
    fn mul(self, rhs: &Series1) -> Series1 {
        let order = self.order.min(rhs.order);
        let mut acc = vec![Rational::zero(); order as usize + 1];
        for (i, a) in self.terms() {
            for (j, b) in rhs.terms() {
                if i + j > order {
                    break;
                }
                acc[(i + j) as usize] += a * b;
            }
        }
        Series1::from_terms(order, acc.into_iter().enumerate().map(|(k, c)| (k as u32, c)))
    }
}

/// Element of Q[[x, y]] known up to total degree `order`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Series2 {
    order: u32,
    coeffs: BTreeMap<(u32, u32), Rational>,
}

/// Divisor selector for [`Series2::divide`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DivMode {
    ByUnit,
    ByX,
    ByY,
}

impl Series2 {
    pub fn zero(order: u32) -> Self {
        Series2 { order, coeffs: BTreeMap::new() }
    }

    pub fn constant(c: Rational, order: u32) -> Self {
        Self::from_terms(order, [((0, 0), c)])
    }

    pub fn one(order: u32) -> Self {
        Self::constant(Rational::one(), order)
    }

    pub fn monomial(p: u32, q: u32, c: Rational, order: u32) -> Self {
        Self::from_terms(order, [((p, q), c)])
    }

    /// The linear form `a x + b y`.
    pub fn linear(a: Rational, b: Rational, order: u32) -> Self {
        Self::from_terms(order, [((1, 0), a), ((0, 1), b)])
    }

    /// Builds a series from `((p, q), coefficient)` pairs; terms of total
    /// degree above `order` are dropped and repeats are summed.
    pub fn from_terms(order: u32, terms: impl IntoIterator<Item = ((u32, u32), Rational)>) -> Self {
        let mut coeffs: BTreeMap<(u32, u32), Rational> = BTreeMap::new();
        for ((p, q), c) in terms {
            if p + q <= order {
                *coeffs.entry((p, q)).or_insert_with(Rational::zero) += c;
            }
        }
        coeffs.retain(|_, c| !c.is_zero());
        Series2 { order, coeffs }
    }

    pub fn from_fn(order: u32, f: impl Fn(u32, u32) -> Rational) -> Self {
        let terms = (0..=order).flat_map(|d| (0..=d).map(move |q| (d - q, q)));
        Self::from_terms(order, terms.map(|(p, q)| ((p, q), f(p, q))).collect::<Vec<_>>())
    }

    fn from_dense(order: u32, dense: Vec<Rational>) -> Self {
        let mut coeffs = BTreeMap::new();
        let mut it = dense.into_iter();
        for d in 0..=order {
            for q in 0..=d {
                let c = it.next().expect("dense buffer sized by tri_len");
                if !c.is_zero() {
                    coeffs.insert((d - q, q), c);
                }
            }
        }
        Series2 { order, coeffs }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeff(&self, p: u32, q: u32) -> Rational {
        self.coeffs.get(&(p, q)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &Rational)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(0, 0)
    }

    /// Lowest total degree carrying a nonzero coefficient.
    pub fn valuation(&self) -> Option<u32> {
        self.coeffs.keys().map(|(p, q)| p + q).min()
    }

    /// Highest total degree carrying a nonzero coefficient.
    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().map(|(p, q)| p + q).max()
    }

    pub fn truncate(&self, order: u32) -> Self {
        let order = order.min(self.order);
        Self::from_terms(order, self.terms().map(|(e, c)| (e, c.clone())))
    }

    /// Reinterprets an exact polynomial at a larger order. Only sound when
    /// the series is known to be a polynomial of degree `<= self.order()`.
    pub fn as_polynomial(&self, order: u32) -> Self {
        Series2 { order, coeffs: self.coeffs.clone() }
    }

    pub fn scale(&self, s: &Rational) -> Self {
        if s.is_zero() {
            return Self::zero(self.order);
        }
        Series2 {
            order: self.order,
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, c * s)).collect(),
        }
    }

    /// `f(k x, k y)`.
    pub fn dilate(&self, k: &Rational) -> Self {
        Self::from_terms(
            self.order,
            self.terms()
                .map(|((p, q), c)| ((p, q), c * num_traits::pow(k.clone(), (p + q) as usize))),
        )
    }

    /// `f(a x + c y, b x + d y)` for `m = [[a, b], [c, d]]`; order preserved.
    pub fn linear_substitute(&self, m: &Mat2) -> Self {
        let order = self.order;
        let [[a, b], [c, d]] = m;
        let first = linear_form_powers(a, c, order);
        let second = linear_form_powers(b, d, order);
        let mut acc = vec![Rational::zero(); tri_len(order)];
        for ((p, q), coef) in self.terms() {
            let prod = mul_homogeneous(&first[p as usize], &second[q as usize]);
            let deg = p + q;
            for (j, v) in prod.into_iter().enumerate() {
                if !v.is_zero() {
                    acc[tri(deg - j as u32, j as u32)] += coef * v;
                }
            }
        }
        Self::from_dense(order, acc)
    }

    /// Integer-matrix convenience wrapper around [`Self::linear_substitute`].
    pub fn substitute_int(&self, a: i64, b: i64, c: i64, d: i64) -> Self {
        self.linear_substitute(&mat2(a, b, c, d))
    }

    /// `exp(alpha x + beta y)` truncated at `order`.
    pub fn exp_linear(alpha: &Rational, beta: &Rational, order: u32) -> Self {
        Self::from_fn(order, |p, q| {
            num_traits::pow(alpha.clone(), p as usize)
                * num_traits::pow(beta.clone(), q as usize)
                * inv_factorial(p)
                * inv_factorial(q)
        })
    }

    /// `f · exp(alpha x + beta y)`; order preserved.
    pub fn mul_exp_linear(&self, alpha: &Rational, beta: &Rational) -> Self {
        if alpha.is_zero() && beta.is_zero() {
            return self.clone();
        }
        self * &Self::exp_linear(alpha, beta, self.order)
    }

    /// Exact quotient. Unit division keeps the order; division by a
    /// variable lowers it by one.
    pub fn divide(&self, g: &Series2, mode: DivMode) -> Result<Series2> {
        match mode {
            DivMode::ByUnit => self.div_unit(g),
            DivMode::ByX => self.div_x(),
            DivMode::ByY => self.div_y(),
        }
    }

    pub fn div_unit(&self, g: &Series2) -> Result<Series2> {
        let g0 = g.constant_term();
        if g0.is_zero() {
            return Err(Error::DivisionByNonUnit);
        }
        let inv0 = g0.recip();
        let order = self.order.min(g.order);
        let mut quot = vec![Rational::zero(); tri_len(order)];
        let g_terms: Vec<((u32, u32), &Rational)> =
            g.terms().filter(|(e, _)| *e != (0, 0)).collect();
        for d in 0..=order {
            for q in 0..=d {
                let p = d - q;
                let mut v = self.coeff(p, q);
                for ((i, j), gc) in &g_terms {
                    if *i <= p && *j <= q {
                        let prev = &quot[tri(p - i, q - j)];
                        if !prev.is_zero() {
                            v -= *gc * prev;
                        }
                    }
                }
                quot[tri(p, q)] = v * &inv0;
            }
        }
        Ok(Self::from_dense(order, quot))
    }

    pub fn div_x(&self) -> Result<Series2> {
        if self.terms().any(|((p, _), _)| p == 0) {
            return Err(Error::NotDivisible("x"));
        }
        let order = self.order.saturating_sub(1);
        Ok(Self::from_terms(order, self.terms().map(|((p, q), c)| ((p - 1, q), c.clone()))))
    }

    pub fn div_y(&self) -> Result<Series2> {
        if self.terms().any(|((_, q), _)| q == 0) {
            return Err(Error::NotDivisible("y"));
        }
        let order = self.order.saturating_sub(1);
        Ok(Self::from_terms(order, self.terms().map(|((p, q), c)| ((p, q - 1), c.clone()))))
    }

    /// Division by `x - y`, done by the change of variables `x = u + y`.
    pub fn div_x_minus_y(&self) -> Result<Series2> {
        let shifted = self.substitute_int(1, 0, 1, 1); // f(u + v, v)
        let quot = shifted.div_x().map_err(|_| Error::NotDivisible("x - y"))?;
        Ok(quot.substitute_int(1, 0, -1, 1)) // q(x - y, y)
    }

    /// The homogeneous component of total degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> Result<Series2> {
        if d > self.order {
            return Err(Error::DegreeExceedsOrder { degree: d, order: self.order });
        }
        Ok(Self::from_terms(
            self.order,
            self.terms().filter(|((p, q), _)| p + q == d).map(|(e, c)| (e, c.clone())),
        ))
    }

    /// First exponent (in degree, then `x`-descending order) at which the
    /// two series differ within their common order.
    pub fn first_difference(&self, other: &Series2) -> Option<((u32, u32), Rational, Rational)> {
        let order = self.order.min(other.order);
        for d in 0..=order {
            for q in 0..=d {
                let (a, b) = (self.coeff(d - q, q), other.coeff(d - q, q));
                if a != b {
                    return Some(((d - q, q), a, b));
                }
            }
        }
        None
    }

    pub fn eq_up_to_order(&self, other: &Series2) -> bool {
        self.first_difference(other).is_none()
    }

    /// `true` if `f` only depends on `x`.
    pub fn is_free_of_y(&self) -> bool {
        self.terms().all(|((_, q), _)| q == 0)
    }

    /// Reads off the `x`-only part as a univariate series.
    pub fn x_part(&self) -> Series1 {
        Series1::from_terms(
            self.order,
            self.terms().filter(|((_, q), _)| *q == 0).map(|((p, _), c)| (p, c.clone())),
        )
    }
}

// Powers (lx + my)^k, k = 0..=order, as dense homogeneous coefficient
// vectors indexed by the y-exponent.
fn linear_form_powers(l: &Rational, m: &Rational, order: u32) -> Vec<Vec<Rational>> {
    let mut out = Vec::with_capacity(order as usize + 1);
    let mut lp = vec![Rational::one()];
    let mut mp = vec![Rational::one()];
    for k in 1..=order as usize {
        lp.push(&lp[k - 1] * l);
        mp.push(&mp[k - 1] * m);
    }
    for k in 0..=order {
        let ku = k as usize;
        out.push(
            (0..=ku)
                .map(|j| {
                    Rational::from_integer(binomial(k, j as u32)) * &lp[ku - j] * &mp[j]
                })
                .collect(),
        );
    }
    out
}

fn mul_homogeneous(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

impl Add for &Series2 {
    type Output = Series2;
    fn add(self, rhs: &Series2) -> Series2 {
        let order = self.order.min(rhs.order);
        Series2::from_terms(order, self.terms().chain(rhs.terms()).map(|(e, c)| (e, c.clone())))
    }
}

impl Sub for &Series2 {
    type Output = Series2;
    fn sub(self, rhs: &Series2) -> Series2 {
        let order = self.order.min(rhs.order);
        Series2::from_terms(
            order,
            self.terms()
                .map(|(e, c)| (e, c.clone()))
                .chain(rhs.terms().map(|(e, c)| (e, -c))),
        )
    }
}

impl Neg for &Series2 {
    type Output = Series2;
    fn neg(self) -> Series2 {
        self.scale(&-Rational::one())
    }
}

impl Mul for &Series2 {
    type Output = Series2;
    fn mul(self, rhs: &Series2) -> Series2 {
        let order = self.order.min(rhs.order);
        let mut acc = vec![Rational::zero(); tri_len(order)];
        for ((i, j), a) in self.terms() {
            if i + j > order {
                continue;
            }
            for ((k, l), b) in rhs.terms() {
                if i + j + k + l <= order {
                    acc[tri(i + k, j + l)] += a * b;
                }
            }
        }
        Series2::from_dense(order, acc)
    }
}

macro_rules! forward_owned {
    ($ty:ty, $($tr:ident :: $m:ident),*) => {$(
        impl $tr for $ty {
            type Output = $ty;
            fn $m(self, rhs: $ty) -> $ty { $tr::$m(&self, &rhs) }
        }
        impl $tr<&$ty> for $ty {
            type Output = $ty;
            fn $m(self, rhs: &$ty) -> $ty { $tr::$m(&self, rhs) }
        }
    )*};
}
forward_owned!(Series2, Add::add, Sub::sub, Mul::mul);
forward_owned!(Series1, Add::add, Sub::sub, Mul::mul);

impl fmt::Display for Series2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0 + O({})", self.order + 1);
        }
        let mut first = true;
        for d in 0..=self.order {
            for q in 0..=d {
                let p = d - q;
                let c = self.coeff(p, q);
                if c.is_zero() {
                    continue;
                }
                if !first {
                    write!(f, " + ")?;
                }
                first = false;
                write!(f, "{}", crate::rational::format(&c))?;
                match p {
                    0 => {}
                    1 => write!(f, "*x")?,
                    _ => write!(f, "*x^{p}")?,
                }
                match q {
                    0 => {}
                    1 => write!(f, "*y")?,
                    _ => write!(f, "*y^{q}")?,
                }
            }
        }
        write!(f, " + O({})", self.order + 1)
    }
}

/// `g(inner)` for `inner` with zero constant term.
///
/// The result is exact up to the smaller of `inner.order()` and the degree
/// where the unknown tail of `g` starts to contribute.
pub fn compose_univariate(g: &Series1, inner: &Series2) -> Result<Series2> {
    if !inner.constant_term().is_zero() {
        return Err(Error::ConstantTermNotZero);
    }
    let order = match inner.valuation() {
        Some(v) => inner.order().min((g.order() + 1) * v - 1),
        None => inner.order(),
    };
    let inner = inner.truncate(order);
    let mut acc = Series2::zero(order);
    for k in (0..=g.order()).rev() {
        acc = &acc * &inner;
        let c = g.coeff(k);
        if !c.is_zero() {
            acc = &acc + &Series2::constant(c, order);
        }
    }
    Ok(acc)
}

/// Which closed-form series [`special_series`] should produce.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpecialKind {
    /// `(e^t - 1)/t = Σ t^n/(n+1)!`
    Expm1OverT,
    /// `t/(e^t - 1) = Σ B_n t^n/n!`
    TOverExpm1,
    /// `e^t`
    ExpT,
    /// `(e^y - e^x)/(y - x)`, bivariate.
    DividedDiffExp,
}

pub enum Special {
    Uni(Series1),
    Bi(Series2),
}

pub fn special_series(kind: SpecialKind, order: u32) -> Special {
    match kind {
        SpecialKind::Expm1OverT => Special::Uni(expm1_over_t(order)),
        SpecialKind::TOverExpm1 => Special::Uni(t_over_expm1(order)),
        SpecialKind::ExpT => Special::Uni(exp_t(order)),
        SpecialKind::DividedDiffExp => Special::Bi(divided_diff_exp(order)),
    }
}

pub fn expm1_over_t(order: u32) -> Series1 {
    Series1::from_fn(order, |n| inv_factorial(n + 1))
}

pub fn t_over_expm1(order: u32) -> Series1 {
    let b = bernoulli_numbers(order);
    Series1::from_fn(order, |n| &b[n as usize] * inv_factorial(n))
}

pub fn exp_t(order: u32) -> Series1 {
    Series1::from_fn(order, inv_factorial)
}

/// `(e^y - e^x)/(y - x)` built from complete homogeneous sums: every
/// monomial of degree `n - 1` gets `1/n!`.
pub fn divided_diff_exp(order: u32) -> Series2 {
    Series2::from_fn(order, |p, q| inv_factorial(p + q + 1))
}

/// `B_0 ..= B_{n_max}` with `B_1 = -1/2`.
pub fn bernoulli_numbers(n_max: u32) -> Vec<Rational> {
    let mut b: Vec<Rational> = Vec::with_capacity(n_max as usize + 1);
    for n in 0..=n_max {
        if n == 0 {
            b.push(Rational::one());
            continue;
        }
        let mut s = Rational::zero();
        for (k, bk) in b.iter().enumerate() {
            s += Rational::from_integer(binomial(n + 1, k as u32)) * bk;
        }
        b.push(-s / Rational::from_integer(BigInt::from(n + 1)));
    }
    b
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn poly(order: u32, terms: &[((u32, u32), i64)]) -> Series2 {
        Series2::from_terms(order, terms.iter().map(|(e, c)| (*e, int(*c))))
    }

    #[test]
    fn difference_of_squares() {
        let a = poly(2, &[((0, 0), 1), ((1, 0), 1)]);
        let b = poly(2, &[((0, 0), 1), ((1, 0), -1)]);
        assert_eq!(&a * &b, poly(2, &[((0, 0), 1), ((2, 0), -1)]));
    }

    #[test]
    fn additive_identity_and_precision() {
        let f = poly(5, &[((1, 2), 3), ((0, 0), 1)]);
        assert_eq!(&f + &Series2::zero(5), f);
        let g = poly(3, &[((0, 0), 1)]);
        assert_eq!((&f * &g).order(), 3);
    }

    #[test]
    fn substitution_examples() {
        let x = poly(3, &[((1, 0), 1)]);
        assert_eq!(x.substitute_int(0, 1, 1, 0), poly(3, &[((0, 1), 1)]));
        let h = poly(4, &[((2, 0), 2), ((1, 1), 2), ((0, 2), 1)]);
        assert_eq!(h.substitute_int(1, 0, 1, -1), h);
        assert_eq!(h.substitute_int(1, -2, 0, -1), h);
    }

    #[test]
    fn exponential_examples() {
        let e = Series2::one(2).mul_exp_linear(&int(1), &int(0));
        assert_eq!(e, Series2::from_terms(2, [((0, 0), int(1)), ((1, 0), int(1)), ((2, 0), rat(1, 2))]));
        let back = e.mul_exp_linear(&int(-1), &int(0));
        assert_eq!(back, Series2::one(2));
        let exy = Series2::one(4).mul_exp_linear(&int(1), &int(1));
        assert_eq!(exy.coeff(1, 1), int(1));
    }

    #[test]
    fn division_examples() {
        let f = poly(4, &[((1, 0), 1), ((1, 1), 1)]);
        let q = f.divide(&Series2::zero(4), DivMode::ByX).unwrap();
        assert_eq!(q, poly(3, &[((0, 0), 1), ((0, 1), 1)]));
        let x = poly(4, &[((1, 0), 1)]);
        assert_eq!(x.divide(&Series2::zero(4), DivMode::ByY), Err(Error::NotDivisible("y")));
        let one_minus_x = poly(3, &[((0, 0), 1), ((1, 0), -1)]);
        let geo = Series2::one(3).div_unit(&one_minus_x).unwrap();
        assert_eq!(geo, poly(3, &[((0, 0), 1), ((1, 0), 1), ((2, 0), 1), ((3, 0), 1)]));
        assert_eq!(Series2::one(3).div_unit(&x), Err(Error::DivisionByNonUnit));
    }

    #[test]
    fn special_series_examples() {
        let e = expm1_over_t(4);
        assert_eq!((e.coeff(0), e.coeff(1), e.coeff(2)), (int(1), rat(1, 2), rat(1, 6)));
        let b = t_over_expm1(4);
        assert_eq!((b.coeff(0), b.coeff(1), b.coeff(2)), (int(1), rat(-1, 2), rat(1, 12)));
        assert_eq!(divided_diff_exp(4).constant_term(), int(1));
        assert!((&e * &b).eq_up_to_order(&Series1::from_terms(4, [(0, int(1))])));
    }

    #[test]
    fn bernoulli_values() {
        let b = bernoulli_numbers(12);
        assert_eq!(&b[..5], &[int(1), rat(-1, 2), rat(1, 6), int(0), rat(-1, 30)]);
        assert!(b.iter().enumerate().filter(|(n, _)| *n >= 3 && n % 2 == 1).all(|(_, v)| v.is_zero()));
        assert_eq!(b[12], rat(-691, 2730));
    }

    #[test]
    fn divided_difference_matches_definition() {
        // (e^y - e^x) = (y - x) * E(x, y)
        let n = 8;
        let lhs = &Series2::exp_linear(&int(0), &int(1), n) - &Series2::exp_linear(&int(1), &int(0), n);
        let rhs = &Series2::linear(int(-1), int(1), n) * &divided_diff_exp(n);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn composition_examples() {
        let x2 = poly(6, &[((2, 0), 1)]);
        let g = Series1::from_terms(6, [(0, int(1)), (1, int(1))]);
        assert_eq!(compose_univariate(&g, &x2).unwrap(), poly(6, &[((0, 0), 1), ((2, 0), 1)]));
        let cosh_type = Series1::from_fn(6, |k| {
            Rational::new(BigInt::one(), BigInt::from(4).pow(k) * crate::rational::factorial(2 * k))
        });
        let c = compose_univariate(&cosh_type, &x2).unwrap();
        assert_eq!(c.coeff(2, 0), rat(1, 8));
        let z = compose_univariate(&g, &Series2::zero(6)).unwrap();
        assert_eq!(z, Series2::one(6));
        assert_eq!(compose_univariate(&g, &Series2::one(3)), Err(Error::ConstantTermNotZero));
    }

    #[test]
    fn composition_order_tracks_g_precision() {
        // g known to degree 2 only: g(x^2) is exact up to degree 5.
        let g = Series1::from_terms(2, [(0, int(1))]);
        let x2 = poly(12, &[((2, 0), 1)]);
        assert_eq!(compose_univariate(&g, &x2).unwrap().order(), 5);
    }

    #[test]
    fn homogeneous_parts() {
        let e = Series2::exp_linear(&int(1), &int(0), 5);
        assert_eq!(e.homogeneous_part(2).unwrap(), Series2::from_terms(5, [((2, 0), rat(1, 2))]));
        assert_eq!(e.homogeneous_part(0).unwrap(), Series2::one(5));
        assert!(e.homogeneous_part(6).is_err());
        let mut sum = Series2::zero(5);
        for d in 0..=5 {
            sum = &sum + &e.homogeneous_part(d).unwrap();
        }
        assert_eq!(sum, e);
    }

    #[test]
    fn division_by_x_minus_y() {
        let n = 6;
        let f = poly(n, &[((0, 0), 1), ((1, 1), 3), ((0, 2), -2)]);
        let xmy = Series2::linear(int(1), int(-1), n);
        let prod = &f * &xmy;
        assert_eq!(prod.div_x_minus_y().unwrap(), f.truncate(n - 1));
        assert!(poly(n, &[((1, 0), 1)]).div_x_minus_y().is_err());
    }
}
