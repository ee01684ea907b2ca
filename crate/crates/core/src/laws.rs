//! The ♯, † and ◇ transforms between triangle values and parameter series,
//! and exact instance checks for the functional equations that tie them
//! together.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::group::{is_d4_invariant, GL2Z_GENERATORS};
use crate::linalg;
use crate::rational::{int, rat, Rational};
use crate::series::{compose_univariate, divided_diff_exp, expm1_over_t, t_over_expm1, Series2};

/// `f(a1 x + c1 y, a2 x + c2 y)`: each tuple gives the coefficients of one
/// argument.
fn at(f: &Series2, first: (i64, i64), second: (i64, i64)) -> Series2 {
    f.substitute_int(first.0, second.0, first.1, second.1)
}

fn lin(a: i64, b: i64, order: u32) -> Series2 {
    Series2::linear(int(a), int(b), order)
}

/// `t/(e^t - 1)` evaluated at `a x + b y`.
fn bernoulli_factor(a: i64, b: i64, order: u32) -> Series2 {
    compose_univariate(&t_over_expm1(order), &lin(a, b, order)).expect("linear form has no constant term")
}

/// `(e^t - 1)/t` evaluated at `a x + b y`.
fn expm1_factor(a: i64, b: i64, order: u32) -> Series2 {
    compose_univariate(&expm1_over_t(order), &lin(a, b, order)).expect("linear form has no constant term")
}

/// `f♯(x, y) = x/(e^x-1) · (x+y)/(e^{x+y}-1) · [f(x, x+y) + e^x f(y, x+y)]`.
pub fn sharp(f: &Series2) -> Series2 {
    let n = f.order();
    let bracket = &at(f, (1, 0), (1, 1)) + &at(f, (0, 1), (1, 1)).mul_exp_linear(&int(1), &int(0));
    &(&bernoulli_factor(1, 0, n) * &bernoulli_factor(1, 1, n)) * &bracket
}

/// `ϱ†(x, y) = [E(x, y) ϱ(y-x, x) - (e^x-1)/x · ϱ(x, y-x)] / y` with
/// `E = (e^y - e^x)/(y - x)`. Fails with `NotDivisible` when the bracket
/// has a pure-`x` term, which happens exactly when `ϱ` has odd-degree
/// terms that do not cancel.
pub fn dagger(rho: &Series2) -> Result<Series2> {
    let n = rho.order();
    let bracket = &(&divided_diff_exp(n) * &at(rho, (-1, 1), (1, 0)))
        - &(&expm1_factor(1, 0, n) * &at(rho, (1, 0), (-1, 1)));
    bracket.div_y()
}

/// `ϱ◇(x, y) = [(e^x-1)/x · ϱ(x, -y) - (e^y-1)/y · ϱ(y, -x)] / (x - y)`.
pub fn diamond(rho: &Series2) -> Result<Series2> {
    let n = rho.order();
    let bracket = &(&expm1_factor(1, 0, n) * &at(rho, (1, 0), (0, -1)))
        - &(&expm1_factor(0, 1, n) * &at(rho, (0, 1), (-1, 0)));
    bracket.div_x_minus_y()
}

/// `σ(s, t) = ϱ((s - t)/2, t)`, i.e. the coordinates `s = 2x + y`, `t = y`.
pub fn to_st(rho: &Series2) -> Series2 {
    rho.linear_substitute(&[[rat(1, 2), int(0)], [rat(-1, 2), int(1)]])
}

/// Inverse of [`to_st`]: `ϱ(x, y) = σ(2x + y, y)`.
pub fn from_st(sigma: &Series2) -> Series2 {
    sigma.substitute_int(2, 0, 1, 1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LawId {
    A,
    B,
    C,
    F2Simple2,
    F23Up,
    Aprime,
    Bprime,
    Cprime,
    D,
    E,
    RhoFormula,
    RhoSym1,
    RhoSym2,
    RhoSym3,
    Adoubleprime,
    F1Shift,
    F1Period,
    F1Neg,
    F0Gl2z,
}

impl LawId {
    pub const ALL: [LawId; 19] = [
        LawId::A,
        LawId::B,
        LawId::C,
        LawId::F2Simple2,
        LawId::F23Up,
        LawId::Aprime,
        LawId::Bprime,
        LawId::Cprime,
        LawId::D,
        LawId::E,
        LawId::RhoFormula,
        LawId::RhoSym1,
        LawId::RhoSym2,
        LawId::RhoSym3,
        LawId::Adoubleprime,
        LawId::F1Shift,
        LawId::F1Period,
        LawId::F1Neg,
        LawId::F0Gl2z,
    ];

    pub fn name(self) -> &'static str {
        match self {
            LawId::A => "A",
            LawId::B => "B",
            LawId::C => "C",
            LawId::F2Simple2 => "f2simple2",
            LawId::F23Up => "f23up",
            LawId::Aprime => "Aprime",
            LawId::Bprime => "Bprime",
            LawId::Cprime => "Cprime",
            LawId::D => "D",
            LawId::E => "E",
            LawId::RhoFormula => "rhoformula",
            LawId::RhoSym1 => "rho_sym1",
            LawId::RhoSym2 => "rho_sym2",
            LawId::RhoSym3 => "rho_sym3",
            LawId::Adoubleprime => "Adoubleprime",
            LawId::F1Shift => "f1shift",
            LawId::F1Period => "f1period",
            LawId::F1Neg => "f1neg",
            LawId::F0Gl2z => "f0gl2z",
        }
    }

    /// The equation in plain text.
    pub fn statement(self) -> &'static str {
        match self {
            LawId::A | LawId::F23Up => "f(x,y) + e^x f(y-x,y) = f(x,x+y) + f(y,x+y)",
            LawId::B => "f(x,y) = f(y,x)",
            LawId::C => "f(y-x,-x) = e^{-x} f(x,y)",
            LawId::F2Simple2 => "f(x,y) + e^{x+y} f(-x,-y) = f(x,x+y) + f(x+y,y)",
            LawId::Aprime => "(x+y) r(x,y-x) = y r(x,y) + x r(y,x)",
            LawId::Bprime => "(x-y) r(x,y-x) = x r(y,-x) - y r(x,-y)",
            LawId::Cprime => "(x-y) r(-x,x-y) = x r(y,-x) - y r(x,-y)",
            LawId::D => "r(-x,-y) = r(x,y)",
            LawId::E => "r(x,-2x-y) = r(x,y)",
            LawId::RhoFormula => "(2x+y) r(x,y) = (x+y) r(x,x+y) + x r(x+y,x)",
            LawId::RhoSym1 => "r(x,y-x) = r(y,x-y)",
            LawId::RhoSym2 => "r(y,-x) = r(y-x,x)",
            LawId::RhoSym3 => "r(x,y) = r(x+y,-y)",
            LawId::Adoubleprime => "(s+t) q(s+t,t-s) = s q(s+2t,s) + t q(2s+t,t)",
            LawId::F1Shift => "f(-x,-y) = e^{-x} f(x,y)",
            LawId::F1Period => "f(x,y) = f(x,x+y)",
            LawId::F1Neg => "f(x,y) = f(x,-y)",
            LawId::F0Gl2z => "f(ax+cy,bx+dy) = f(x,y) for GL(2,Z) generators",
        }
    }
}

impl fmt::Display for LawId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for LawId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        LawId::ALL
            .into_iter()
            .find(|l| l.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Malformed(format!("unknown law {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Violation {
    pub exponent: (u32, u32),
    pub lhs: Rational,
    pub rhs: Rational,
}

/// Result of checking one law on one instance.
#[derive(Clone, Debug, PartialEq)]
pub struct LawReport {
    pub law: LawId,
    pub holds: bool,
    pub verified_order: u32,
    pub first_violation: Option<Violation>,
}

impl LawReport {
    fn compare(law: LawId, lhs: &Series2, rhs: &Series2) -> Self {
        let verified_order = lhs.order().min(rhs.order());
        let first_violation = lhs
            .first_difference(rhs)
            .map(|(exponent, lhs, rhs)| Violation { exponent, lhs, rhs });
        LawReport { law, holds: first_violation.is_none(), verified_order, first_violation }
    }
}

/// Both sides of `law` for the series `f`, one pair per instance of the
/// equation (the GL(2, Z) law has one per generator).
pub fn sides(law: LawId, f: &Series2) -> Vec<(Series2, Series2)> {
    let n = f.order();
    let pair = match law {
        LawId::A | LawId::F23Up => (
            f + &at(f, (-1, 1), (0, 1)).mul_exp_linear(&int(1), &int(0)),
            &at(f, (1, 0), (1, 1)) + &at(f, (0, 1), (1, 1)),
        ),
        LawId::B => (f.clone(), at(f, (0, 1), (1, 0))),
        LawId::C => (at(f, (-1, 1), (-1, 0)), f.mul_exp_linear(&int(-1), &int(0))),
        LawId::F2Simple2 => (
            f + &at(f, (-1, 0), (0, -1)).mul_exp_linear(&int(1), &int(1)),
            &at(f, (1, 0), (1, 1)) + &at(f, (1, 1), (0, 1)),
        ),
        LawId::Aprime => (
            &lin(1, 1, n) * &at(f, (1, 0), (-1, 1)),
            &(&lin(0, 1, n) * f) + &(&lin(1, 0, n) * &at(f, (0, 1), (1, 0))),
        ),
        LawId::Bprime | LawId::Cprime => {
            let inner = if law == LawId::Bprime { at(f, (1, 0), (-1, 1)) } else { at(f, (-1, 0), (1, -1)) };
            (
                &lin(1, -1, n) * &inner,
                &(&lin(1, 0, n) * &at(f, (0, 1), (-1, 0))) - &(&lin(0, 1, n) * &at(f, (1, 0), (0, -1))),
            )
        }
        LawId::D => (at(f, (-1, 0), (0, -1)), f.clone()),
        LawId::E => (at(f, (1, 0), (-2, -1)), f.clone()),
        LawId::RhoFormula => (
            &lin(2, 1, n) * f,
            &(&lin(1, 1, n) * &at(f, (1, 0), (1, 1))) + &(&lin(1, 0, n) * &at(f, (1, 1), (1, 0))),
        ),
        LawId::RhoSym1 => (at(f, (1, 0), (-1, 1)), at(f, (0, 1), (1, -1))),
        LawId::RhoSym2 => (at(f, (0, 1), (-1, 0)), at(f, (-1, 1), (1, 0))),
        LawId::RhoSym3 => (f.clone(), at(f, (1, 1), (0, -1))),
        LawId::Adoubleprime => (
            &lin(1, 1, n) * &at(f, (1, 1), (-1, 1)),
            &(&lin(1, 0, n) * &at(f, (1, 2), (1, 0))) + &(&lin(0, 1, n) * &at(f, (2, 1), (0, 1))),
        ),
        LawId::F1Shift => (at(f, (-1, 0), (0, -1)), f.mul_exp_linear(&int(-1), &int(0))),
        LawId::F1Period => (f.clone(), at(f, (1, 0), (1, 1))),
        LawId::F1Neg => (f.clone(), at(f, (1, 0), (0, -1))),
        LawId::F0Gl2z => {
            return GL2Z_GENERATORS
                .iter()
                .map(|g| (f.substitute_int(g[0][0], g[0][1], g[1][0], g[1][1]), f.clone()))
                .collect()
        }
    };
    vec![pair]
}

/// `LHS - RHS` for each instance of the law; linear in `f`.
pub fn residuals(law: LawId, f: &Series2) -> Vec<Series2> {
    sides(law, f).into_iter().map(|(l, r)| &l - &r).collect()
}

/// Assembles both sides of `law` for the series `f` and compares them.
pub fn check_law(law: LawId, f: &Series2) -> LawReport {
    let mut report = None;
    for (lhs, rhs) in sides(law, f) {
        let r = LawReport::compare(law, &lhs, &rhs);
        if !r.holds {
            return r;
        }
        report.get_or_insert(r);
    }
    report.expect("every law has at least one instance")
}

pub fn holds(law: LawId, f: &Series2) -> bool {
    check_law(law, f).holds
}

/// One instance-level implication `premise ⇒ conclusion`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Implication {
    pub name: &'static str,
    pub premise: bool,
    pub conclusion: bool,
}

impl Implication {
    pub fn confirmed(&self) -> bool {
        !self.premise || self.conclusion
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceReport {
    pub implications: Vec<Implication>,
}

impl EquivalenceReport {
    pub fn all_confirmed(&self) -> bool {
        self.implications.iter().all(Implication::confirmed)
    }

    pub fn first_refuted(&self) -> Option<&Implication> {
        self.implications.iter().find(|i| !i.confirmed())
    }
}

/// Cross-checks the implications among the laws for a triangle value `f`.
pub fn equivalence_suite_f2(f: &Series2) -> EquivalenceReport {
    let a = holds(LawId::A, f);
    let b = holds(LawId::B, f);
    let c = holds(LawId::C, f);
    let s2 = holds(LawId::F2Simple2, f);
    let up = holds(LawId::F23Up, f);
    let rho = sharp(f);
    let back = dagger(&rho).map(|g| g.eq_up_to_order(f)).unwrap_or(false);
    let mut implications = vec![
        Implication { name: "C & B => (f2simple2 <=> f23up)", premise: b && c, conclusion: s2 == up },
        Implication { name: "dagger(sharp f) = f", premise: true, conclusion: back },
        Implication { name: "A => sharp(f) satisfies Aprime", premise: a, conclusion: holds(LawId::Aprime, &rho) },
    ];
    if a && b && c {
        implications.push(Implication {
            name: "A & B & C => sharp(f) satisfies E",
            premise: true,
            conclusion: holds(LawId::E, &rho),
        });
    }
    EquivalenceReport { implications }
}

/// Cross-checks the implications among the laws for a parameter series `ϱ`.
pub fn equivalence_suite_rho(rho: &Series2) -> EquivalenceReport {
    let ap = holds(LawId::Aprime, rho);
    let bp = holds(LawId::Bprime, rho);
    let cp = holds(LawId::Cprime, rho);
    let d = holds(LawId::D, rho);
    let e = holds(LawId::E, rho);
    let sym2 = holds(LawId::RhoSym2, rho);
    let mut implications = vec![
        Implication { name: "Aprime & E => Bprime", premise: ap && e, conclusion: bp },
        Implication { name: "Aprime & E => Cprime", premise: ap && e, conclusion: cp },
        Implication { name: "Aprime & E => D", premise: ap && e, conclusion: d },
        Implication {
            name: "Aprime & E => D4-invariant",
            premise: ap && e,
            conclusion: is_d4_invariant(rho).invariant,
        },
        Implication { name: "Aprime & Bprime & Cprime => E", premise: ap && bp && cp, conclusion: e },
        Implication { name: "Bprime & Cprime => D", premise: bp && cp, conclusion: d },
        Implication { name: "Aprime => rho_sym1", premise: ap, conclusion: holds(LawId::RhoSym1, rho) },
        Implication { name: "Aprime => rho_sym2", premise: ap, conclusion: sym2 },
        Implication { name: "Aprime => rho_sym3", premise: ap, conclusion: holds(LawId::RhoSym3, rho) },
        Implication {
            name: "Aprime <=> rhoformula",
            premise: true,
            conclusion: ap == holds(LawId::RhoFormula, rho),
        },
        Implication {
            name: "Aprime <=> Adoubleprime in (s,t)",
            premise: true,
            conclusion: ap == holds(LawId::Adoubleprime, &to_st(rho)),
        },
    ];
    if d {
        let f = dagger(rho);
        implications.push(Implication { name: "D => dagger defined", premise: true, conclusion: f.is_ok() });
        if let Ok(f) = f {
            let abc = holds(LawId::A, &f) && holds(LawId::B, &f) && holds(LawId::C, &f);
            implications.push(Implication { name: "Aprime & E => dagger(r) satisfies A, B, C", premise: ap && e, conclusion: abc });
            implications.push(Implication {
                name: "Aprime => dagger(r) satisfies A",
                premise: ap,
                conclusion: holds(LawId::A, &f),
            });
            let diamond_eq = diamond(rho).map(|g| g.eq_up_to_order(&f)).unwrap_or(false);
            implications.push(Implication {
                name: "Bprime & rho_sym2 => dagger = diamond",
                premise: bp && sym2,
                conclusion: diamond_eq,
            });
            let round = sharp(&f).eq_up_to_order(rho);
            implications.push(Implication { name: "sharp(dagger r) = r", premise: true, conclusion: round });
        }
    }
    EquivalenceReport { implications }
}

/// `g(a, b)` with `g(2x²+2xy+y², 4x²y²+4xy³+y⁴)` equal to a given invariant.
/// `weighted_order` bounds `2i + 4j` for the determined terms `a^i b^j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantRepr {
    pub terms: BTreeMap<(u32, u32), Rational>,
    pub weighted_order: u32,
}

pub fn d4_generators(order: u32) -> (Series2, Series2) {
    let p1 = Series2::from_terms(order, [((2, 0), int(2)), ((1, 1), int(2)), ((0, 2), int(1))]);
    let p2 = Series2::from_terms(order, [((2, 2), int(4)), ((1, 3), int(4)), ((0, 4), int(1))]);
    (p1, p2)
}

impl InvariantRepr {
    /// Substitutes the generators back in.
    pub fn evaluate(&self) -> Series2 {
        let n = self.weighted_order;
        let (p1, p2) = d4_generators(n);
        let mut acc = Series2::zero(n);
        for (&(i, j), c) in &self.terms {
            let mut term = Series2::constant(c.clone(), n);
            for _ in 0..i {
                term = &term * &p1;
            }
            for _ in 0..j {
                term = &term * &p2;
            }
            acc = &acc + &term;
        }
        acc
    }

    /// The representation as a series in `(a, b)`, keeping only terms whose
    /// weighted degree is determined.
    pub fn as_series(&self) -> Series2 {
        Series2::from_terms(self.weighted_order / 2, self.terms.iter().map(|(e, c)| (*e, c.clone())))
    }
}

/// Writes a D4-invariant series in the two invariant generators, degree by
/// degree, by an exact linear solve.
pub fn d4_decompose(h: &Series2) -> Result<InvariantRepr> {
    if !is_d4_invariant(h).invariant {
        return Err(Error::NotInvariant);
    }
    let n = h.order();
    let (p1, p2) = d4_generators(n);
    let mut p1_pows = vec![Series2::one(n)];
    let mut p2_pows = vec![Series2::one(n)];
    for k in 1..=(n / 2) as usize {
        p1_pows.push(&p1_pows[k - 1] * &p1);
        p2_pows.push(&p2_pows[k - 1] * &p2);
    }
    let mut terms = BTreeMap::new();
    for deg in 0..=n {
        let part = h.homogeneous_part(deg)?;
        if deg % 2 == 1 {
            if !part.is_zero() {
                return Err(Error::NoRepresentation(deg));
            }
            continue;
        }
        let k = deg / 2;
        let unknowns: Vec<(u32, u32)> = (0..=k / 2).map(|j| (k - 2 * j, j)).collect();
        let columns: Vec<Series2> = unknowns
            .iter()
            .map(|&(i, j)| &p1_pows[i as usize] * &p2_pows[j as usize])
            .collect();
        let rows: Vec<Vec<Rational>> = (0..=deg)
            .map(|q| columns.iter().map(|c| c.coeff(deg - q, q)).collect())
            .collect();
        let rhs: Vec<Rational> = (0..=deg).map(|q| part.coeff(deg - q, q)).collect();
        let x = linalg::solve(&rows, &rhs, unknowns.len()).ok_or(Error::NoRepresentation(deg))?;
        for (e, c) in unknowns.into_iter().zip(x) {
            if !c.is_zero() {
                terms.insert(e, c);
            }
        }
    }
    Ok(InvariantRepr { terms, weighted_order: n })
}

/// `ϱ` satisfies (A′) exactly when `to_st(ϱ)` satisfies (A″).
pub fn st_transfer_consistent(rho: &Series2) -> bool {
    holds(LawId::Aprime, rho) == holds(LawId::Adoubleprime, &to_st(rho))
}
