//! Valuations built from the parameters `(c, g, ϱ)`: evaluation on lattice
//! polygons, dilativity tests and the decomposition into dilative parts.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::geometry::{LatticePolygon, Point, Triangulation};
use crate::group::{complete_primitive, is_d4_invariant, triangle_frame, AffineUnimodular, IMat2, IDENTITY};
use crate::laws::{check_law, dagger, LawId, Violation};
use crate::rational::{factorial, int, inv_factorial, pow_i, rat, Rational};
use crate::series::{compose_univariate, divided_diff_exp, expm1_over_t, Series1, Series2};

/// `cosh(√x/2)` read as a series in `x`: coefficient of `x^k` is
/// `1/(4^k (2k)!)`.
pub fn cosh_type(order: u32) -> Series1 {
    Series1::from_fn(order, |k| {
        Rational::new(BigInt::one(), BigInt::from(4).pow(k) * factorial(2 * k))
    })
}

/// `x^{δ/2} sinh(√x/2)` for odd `δ ≥ -1`: coefficient of `x^{(δ+1)/2 + k}`
/// is `1/(2·4^k (2k+1)!)`.
pub fn odd_basis(delta: i32, order: u32) -> Result<Series1> {
    if delta < -1 || delta % 2 == 0 {
        return Err(Error::Malformed(format!("odd basis needs odd delta >= -1, got {delta}")));
    }
    let j0 = ((delta + 1) / 2) as u32;
    Ok(Series1::from_terms(
        order,
        (0..=order.saturating_sub(j0)).map(|k| {
            (j0 + k, Rational::new(BigInt::one(), BigInt::from(2) * BigInt::from(4).pow(k) * factorial(2 * k + 1)))
        }),
    ))
}

/// The parameters of a valuation, checked on construction.
#[derive(Clone, Debug, PartialEq)]
pub struct ValuationSpec {
    c: Rational,
    g: Series1,
    rho: Series2,
    order: u32,
}

impl ValuationSpec {
    /// Truncates `g` and `ϱ` to `order` and checks that `ϱ` satisfies the
    /// defining equation and is D4-invariant.
    pub fn new(c: Rational, g: Series1, rho: Series2, order: u32) -> Result<Self> {
        let g = g.truncate(order);
        let rho = rho.truncate(order);
        let r = check_law(LawId::RhoFormula, &rho);
        if !r.holds {
            return Err(Error::InvalidRho(Box::new(r)));
        }
        if !is_d4_invariant(&rho).invariant {
            for law in [LawId::E, LawId::RhoSym3] {
                let r = check_law(law, &rho);
                if !r.holds {
                    return Err(Error::InvalidRho(Box::new(r)));
                }
            }
        }
        Ok(ValuationSpec { c, g, rho, order })
    }

    /// `(0, 0, ϱ)`.
    pub fn simple(rho: Series2, order: u32) -> Result<Self> {
        Self::new(Rational::zero(), Series1::zero(order), rho, order)
    }

    /// The positive Laplace transform, `(0, 0, 1)`.
    pub fn laplace(order: u32) -> Self {
        Self::simple(Series2::one(order), order).expect("constant rho is valid")
    }

    pub fn c(&self) -> &Rational {
        &self.c
    }

    pub fn g(&self) -> &Series1 {
        &self.g
    }

    pub fn rho(&self) -> &Series2 {
        &self.rho
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_simple(&self) -> bool {
        self.c.is_zero() && self.g.is_zero()
    }
}

/// Values on a point, on `[o, e1]` and on `T`.
#[derive(Clone, Debug, PartialEq)]
pub struct TriangleData {
    pub f0: Series2,
    pub f1: Series2,
    pub f2: Series2,
    pub zt: Series2,
}

/// `g(x²)·exp(x/2)`.
pub fn f1_from_g(g: &Series1, order: u32) -> Series2 {
    if g.is_zero() {
        return Series2::zero(order);
    }
    let x2 = Series2::monomial(2, 0, int(1), order);
    compose_univariate(g, &x2)
        .expect("x^2 has no constant term")
        .mul_exp_linear(&rat(1, 2), &int(0))
}

pub fn build_triangle_data(spec: &ValuationSpec) -> Result<TriangleData> {
    let n = spec.order;
    let f0 = Series2::constant(spec.c.clone(), n);
    let f1 = f1_from_g(&spec.g, n);
    let f2 = dagger(&spec.rho).map_err(|_| Error::InvalidRho(Box::new(check_law(LawId::D, &spec.rho))))?;
    let half = rat(1, 2);
    let lower = &(&f1 + &f1.substitute_int(0, -1, 1, 0)) + &f1.substitute_int(-1, -1, 1, 0).mul_exp_linear(&int(1), &int(0));
    let zt = &f2 + &lower.scale(&half);
    Ok(TriangleData { f0, f1, f2, zt })
}

/// `Σ_v w_v exp(v_1 x + v_2 y)`.
fn exp_sum(points: &BTreeMap<Point, Rational>, order: u32) -> Series2 {
    Series2::from_fn(order, |p, q| {
        let s = points.iter().fold(Rational::zero(), |acc, (&(a, b), w)| {
            acc + w * Rational::from_integer(num_traits::pow(BigInt::from(a), p as usize) * num_traits::pow(BigInt::from(b), q as usize))
        });
        s * inv_factorial(p) * inv_factorial(q)
    })
}

/// Weighted sum `Σ w Ξ·f` over group elements, grouped by linear part so
/// each substitution is done once.
#[derive(Default)]
struct ActionSum {
    groups: BTreeMap<IMat2, BTreeMap<Point, Rational>>,
}

impl ActionSum {
    fn add(&mut self, xi: &AffineUnimodular, w: Rational) {
        let e = self
            .groups
            .entry(xi.matrix())
            .or_default()
            .entry(xi.translation_part())
            .or_insert_with(Rational::zero);
        *e += w;
    }

    fn apply(&self, f: &Series2) -> Series2 {
        let n = f.order();
        let mut acc = Series2::zero(n);
        for (m, pts) in &self.groups {
            let moved = if *m == IDENTITY { f.clone() } else { f.substitute_int(m[0][0], m[0][1], m[1][0], m[1][1]) };
            acc = &acc + &(&exp_sum(pts, n) * &moved);
        }
        acc
    }
}

/// A valuation with its triangle data cached.
#[derive(Clone, Debug)]
pub struct Valuation {
    spec: ValuationSpec,
    data: TriangleData,
}

impl Valuation {
    pub fn new(spec: ValuationSpec) -> Result<Self> {
        let data = build_triangle_data(&spec)?;
        Ok(Valuation { spec, data })
    }

    pub fn spec(&self) -> &ValuationSpec {
        &self.spec
    }

    pub fn triangle_data(&self) -> &TriangleData {
        &self.data
    }

    /// Order to which values on two-dimensional polygons are exact.
    pub fn effective_order(&self) -> u32 {
        self.data.zt.order()
    }

    pub fn z_point(&self, p: Point) -> Series2 {
        Series2::exp_linear(&int(p.0), &int(p.1), self.spec.order).scale(&self.spec.c)
    }

    pub fn z_segment(&self, seg: &LatticePolygon) -> Result<Series2> {
        let (u, w, len) = seg.segment_parts()?;
        let xi = AffineUnimodular::new(complete_primitive(w)?.matrix(), u)?;
        let n = self.spec.order;
        let mut inner = Series2::zero(n);
        for k in 0..len {
            let ek = Series2::exp_linear(&int(k), &int(0), n);
            inner = &inner + &(&ek * &self.data.f1);
            if k >= 1 {
                inner = &inner - &ek.scale(&self.spec.c);
            }
        }
        Ok(xi.act_on_series(&inner))
    }

    /// Value on any lattice polygon; two-dimensional ones go through the
    /// default unimodular triangulation.
    pub fn z_polygon(&self, poly: &LatticePolygon) -> Series2 {
        match poly.dim() {
            0 => self.z_point(poly.vertices()[0]),
            1 => self.z_segment(poly).expect("dimension checked"),
            _ => {
                let tri = poly.unimodular_triangulation().expect("dimension checked");
                self.z_triangulated(&tri)
            }
        }
    }

    pub fn z_polygon_seeded(&self, poly: &LatticePolygon, seed: u64) -> Series2 {
        match poly.unimodular_triangulation_seeded(seed) {
            Ok(tri) => self.z_triangulated(&tri),
            Err(_) => self.z_polygon(poly),
        }
    }

    /// `Σ_S Ξ_S·Z(T) - Σ_{interior e} Z(e) + Σ_{interior v} Z(v)`.
    pub fn z_triangulated(&self, tri: &Triangulation) -> Series2 {
        let mut triangles = ActionSum::default();
        for t in &tri.triangles {
            let [a, b, c] = tri.triangle_points(t);
            let frame = triangle_frame(a, b, c).expect("triangulation is unimodular");
            triangles.add(&frame, int(1));
        }
        let mut acc = triangles.apply(&self.data.zt);
        if !self.data.f1.is_zero() {
            let mut edges = ActionSum::default();
            for e in tri.interior_edges() {
                let seg = LatticePolygon::segment(tri.points[e.a], tri.points[e.b]);
                let (u, w, len) = seg.segment_parts().expect("edge is a segment");
                debug_assert_eq!(len, 1);
                let m = complete_primitive(w).expect("unimodular edges are primitive").matrix();
                edges.add(&AffineUnimodular::new(m, u).expect("determinant one"), int(-1));
            }
            acc = &acc + &edges.apply(&self.data.f1);
        }
        if !self.spec.c.is_zero() && !tri.interior_vertices.is_empty() {
            let pts: BTreeMap<Point, Rational> =
                tri.interior_vertices.iter().map(|&i| (tri.points[i], self.spec.c.clone())).collect();
            acc = &acc + &exp_sum(&pts, self.spec.order);
        }
        acc
    }

    /// `g_{m-1}·f + e^{x+y} g_{m-2}·f(-x,-y)` with `f = Z(T)`.
    pub fn z_mt_closed(&self, m: i64) -> Result<Series2> {
        if !self.spec.is_simple() {
            return Err(Error::NotSimpleSpec);
        }
        let f = &self.data.zt;
        let n = f.order();
        let first = &g_m_direct(m - 1, n) * f;
        let second = (&g_m_direct(m - 2, n) * &f.substitute_int(-1, 0, 0, -1)).mul_exp_linear(&int(1), &int(1));
        Ok(&first + &second)
    }

    /// Compares `Z(mP)` with `m^{-δ} Z(P)(mx, my)` for every pair.
    pub fn check_dilative(&self, delta: i32, ms: &[i64], polys: &[LatticePolygon]) -> DilativeReport {
        let mut cases = Vec::new();
        for p in polys {
            let base = self.z_polygon(p);
            for &m in ms {
                let lhs = self.z_polygon(&p.scale(m));
                let rhs = base.dilate(&int(m)).scale(&pow_i(&int(m), -delta));
                cases.push(DilativeCase { m, polygon: p.clone(), comparison: Comparison::of(&lhs, &rhs) });
            }
        }
        DilativeReport { delta, cases }
    }

    /// Compares `Z(P)` with half the sum of `Z` over the edges of `P`.
    pub fn surface_formula_check(&self, poly: &LatticePolygon) -> Result<Comparison> {
        if poly.dim() < 2 {
            return Err(Error::NotFullDimensional);
        }
        let mut edge_sum = Series2::zero(self.spec.order);
        for e in poly.edges() {
            edge_sum = &edge_sum + &self.z_segment(&e)?;
        }
        Ok(Comparison::of(&self.z_polygon(poly), &edge_sum.scale(&rat(1, 2))))
    }
}

/// Outcome of comparing two series up to their common order.
#[derive(Clone, Debug, PartialEq)]
pub struct Comparison {
    pub verified_order: u32,
    pub first_violation: Option<Violation>,
}

impl Comparison {
    pub fn of(lhs: &Series2, rhs: &Series2) -> Self {
        Comparison {
            verified_order: lhs.order().min(rhs.order()),
            first_violation: lhs.first_difference(rhs).map(|(exponent, lhs, rhs)| Violation { exponent, lhs, rhs }),
        }
    }

    pub fn holds(&self) -> bool {
        self.first_violation.is_none()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DilativeCase {
    pub m: i64,
    pub polygon: LatticePolygon,
    pub comparison: Comparison,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DilativeReport {
    pub delta: i32,
    pub cases: Vec<DilativeCase>,
}

impl DilativeReport {
    pub fn holds(&self) -> bool {
        self.cases.iter().all(|c| c.comparison.holds())
    }

    pub fn first_failure(&self) -> Option<&DilativeCase> {
        self.cases.iter().find(|c| !c.comparison.holds())
    }

    pub fn verified_order(&self) -> u32 {
        self.cases.iter().map(|c| c.comparison.verified_order).min().unwrap_or(0)
    }
}

/// `Σ_{s,t ≥ 0, s+t ≤ m} exp(s x + t y)`; zero for negative `m`.
pub fn g_m_direct(m: i64, order: u32) -> Series2 {
    let mut pts = BTreeMap::new();
    for s in 0..=m.max(-1) {
        for t in 0..=m - s {
            pts.insert((s, t), int(1));
        }
    }
    exp_sum(&pts, order)
}

/// The same sum from the closed form
/// `[e^{x+y}(e^{(m+1)x}-e^{(m+1)y}) - (e^{(m+2)x}-e^{(m+2)y}) + e^x - e^y]
///  / [(e^x-e^y)(e^x-1)(e^y-1)]`, with every difference of exponentials
/// written as `(x-y)·k·E(kx, ky)` so only unit divisions and the final
/// divisions by `x` and `y` remain.
pub fn g_m_closed(m: i64, order: u32) -> Series2 {
    if m < 0 {
        return Series2::zero(order);
    }
    let n = order + 2;
    let e = divided_diff_exp(n);
    let ek = |k: i64| e.dilate(&int(k)).scale(&int(k));
    let bracket = &(&ek(m + 1).mul_exp_linear(&int(1), &int(1)) - &ek(m + 2)) + &e;
    let phi_x = expm1_over_t(n).in_x();
    let phi_y = phi_x.substitute_int(0, 1, 1, 0);
    let denom = &(&e * &phi_x) * &phi_y;
    bracket
        .div_unit(&denom)
        .and_then(|q| q.div_x())
        .and_then(|q| q.div_y())
        .expect("closed form is a power series")
}

/// Spec `(1, cosh-type, κ)`.
pub fn val0_candidate(kappa: &Rational, order: u32) -> Result<ValuationSpec> {
    ValuationSpec::new(int(1), cosh_type(order), Series2::constant(kappa.clone(), order), order)
}

/// Per-candidate outcome of the `κ` calibration.
#[derive(Clone, Debug, PartialEq)]
pub struct Calibration {
    pub candidates: Vec<(Rational, DilativeReport)>,
}

impl Calibration {
    pub fn passing(&self) -> Vec<Rational> {
        self.candidates.iter().filter(|(_, r)| r.holds()).map(|(k, _)| k.clone()).collect()
    }

    pub fn verdict(&self) -> Result<Rational> {
        match self.passing().as_slice() {
            [k] => Ok(k.clone()),
            [] => Err(Error::NoCandidatePasses),
            _ => Err(Error::BothPass),
        }
    }
}

/// Tests 0-dilativity of `(1, cosh-type, κ)` for `κ ∈ {0, -1}` on `T`
/// (m = 2, 3) and the unit square (m = 2).
pub fn calibrate_val0_report(order: u32) -> Result<Calibration> {
    let mut candidates = Vec::new();
    for kappa in [int(0), int(-1)] {
        let v = Valuation::new(val0_candidate(&kappa, order)?)?;
        candidates.push((kappa, calibration_report(&v)));
    }
    Ok(Calibration { candidates })
}

pub fn calibrate_val0(order: u32) -> Result<Rational> {
    calibrate_val0_report(order)?.verdict()
}

/// `ϱ₀` making `(1, cosh-type, ϱ₀)` 0-dilative, fitted exactly over the
/// even-degree solution spaces.
#[derive(Clone, Debug, PartialEq)]
pub struct Val0Fit {
    pub rho: Series2,
    /// The fit is the only solution of the calibration system.
    pub unique: bool,
    /// Dilativity of the fitted spec on the calibration cases and on
    /// held-out polygons.
    pub report: DilativeReport,
}

fn calibration_report(v: &Valuation) -> DilativeReport {
    let mut report = v.check_dilative(0, &[2, 3], &[LatticePolygon::standard_triangle()]);
    report.cases.extend(v.check_dilative(0, &[2], &[LatticePolygon::rectangle(1, 1)]).cases);
    report
}

fn flat_coeffs(f: &Series2, order: u32) -> Vec<Rational> {
    (0..=order).flat_map(|d| (0..=d).map(move |q| f.coeff(d - q, q))).collect()
}

/// Solves for `ϱ₀ = Σ a_u v_u` over the bases of the spaces of degree
/// `d ≤ order` so that the calibration cases become 0-dilative.
pub fn fit_val0_rho(order: u32) -> Result<Val0Fit> {
    let tri = LatticePolygon::standard_triangle();
    let sq = LatticePolygon::rectangle(1, 1);
    let cases = [(tri.clone(), 2), (tri, 3), (sq, 2)];
    // Z(mP) - Z(P)(mx, my), linear in ϱ.
    let residual = |v: &Valuation| -> Vec<Rational> {
        let eff = v.effective_order();
        cases
            .iter()
            .flat_map(|(p, m)| {
                let d = &v.z_polygon(&p.scale(*m)) - &v.z_polygon(p).dilate(&int(*m));
                flat_coeffs(&d, eff)
            })
            .collect()
    };
    let base = Valuation::new(val0_candidate(&int(0), order)?)?;
    let rhs: Vec<Rational> = residual(&base).into_iter().map(|c| -c).collect();
    let mut unknowns = Vec::new();
    for d in (0..=order).step_by(2) {
        unknowns.extend(crate::vspace::vd_basis(d).at_order(order));
    }
    let columns: Vec<Vec<Rational>> = unknowns
        .iter()
        .map(|u| Ok(residual(&Valuation::new(ValuationSpec::simple(u.clone(), order)?)?)))
        .collect::<Result<_>>()?;
    let rows: Vec<Vec<Rational>> = (0..rhs.len()).map(|i| columns.iter().map(|c| c[i].clone()).collect()).collect();
    let a = crate::linalg::solve(&rows, &rhs, unknowns.len()).ok_or(Error::NoCandidatePasses)?;
    let unique = crate::linalg::rank(&rows, unknowns.len()) == unknowns.len();
    let rho = unknowns
        .iter()
        .zip(&a)
        .fold(Series2::zero(order), |acc, (u, c)| &acc + &u.scale(c));
    let v = Valuation::new(ValuationSpec::new(int(1), cosh_type(order), rho.clone(), order)?)?;
    let mut report = calibration_report(&v);
    let held_out = [LatticePolygon::rectangle(2, 1), LatticePolygon::hull(&[(0, 0), (2, 1), (1, 2)])?];
    report.cases.extend(v.check_dilative(0, &[2, 3], &held_out).cases);
    Ok(Val0Fit { rho, unique, report })
}

/// Splitting of a spec into dilative pieces.
#[derive(Clone, Debug, PartialEq)]
pub struct DilativeComponents {
    pub alpha0: Rational,
    /// Constant term of `rho0`.
    pub kappa: Rational,
    /// The `ϱ` of the 0-dilative generator `(1, cosh-type, ϱ₀)`.
    pub rho0: Series2,
    /// Coefficient of the odd basis series, per odd `δ`.
    pub odd: BTreeMap<i32, Rational>,
    /// Homogeneous part of `ϱ` of degree `δ + 2`, per even `δ`.
    pub even_simple: BTreeMap<i32, Series2>,
    /// Whatever lies beyond `δ_max`.
    pub residual_g: Series1,
    pub residual_rho: Series2,
    pub order: u32,
}

impl DilativeComponents {
    /// The spec of one component: `δ = 0` gives `α₀(1, cosh-type, κ)`.
    pub fn component_spec(&self, delta: i32) -> Result<ValuationSpec> {
        let n = self.order;
        if delta == 0 {
            return ValuationSpec::new(
                self.alpha0.clone(),
                cosh_type(n).scale(&self.alpha0),
                self.rho0.scale(&self.alpha0),
                n,
            );
        }
        if delta % 2 != 0 {
            let a = self.odd.get(&delta).cloned().unwrap_or_else(Rational::zero);
            return ValuationSpec::new(Rational::zero(), odd_basis(delta, n)?.scale(&a), Series2::zero(n), n);
        }
        let rho = self.even_simple.get(&delta).cloned().unwrap_or_else(|| Series2::zero(n));
        ValuationSpec::simple(rho, n)
    }

    pub fn reassemble(&self) -> Result<ValuationSpec> {
        let n = self.order;
        let mut g = &cosh_type(n).scale(&self.alpha0) + &self.residual_g;
        for (&d, a) in &self.odd {
            g = &g + &odd_basis(d, n)?.scale(a);
        }
        let mut rho = &self.rho0.scale(&self.alpha0) + &self.residual_rho;
        for part in self.even_simple.values() {
            rho = &rho + part;
        }
        ValuationSpec::new(self.alpha0.clone(), g, rho, n)
    }
}

/// Splits `spec` given the generator parameter `ϱ₀` (a constant `κ` or the
/// series from [`fit_val0_rho`]).
pub fn dilative_decompose(spec: &ValuationSpec, delta_max: i32, rho0: &Series2) -> Result<DilativeComponents> {
    let n = spec.order;
    let alpha0 = spec.c.clone();
    let mut g = &spec.g - &cosh_type(n).scale(&alpha0);
    let mut odd = BTreeMap::new();
    for j in 0..=g.order() {
        let delta = 2 * j as i32 - 1;
        if delta > delta_max {
            break;
        }
        let a = g.coeff(j) * int(2);
        if !a.is_zero() {
            g = &g - &odd_basis(delta, n)?.scale(&a);
            odd.insert(delta, a);
        }
    }
    let rho0 = rho0.truncate(n);
    let rho = &spec.rho - &rho0.scale(&alpha0);
    let mut even_simple = BTreeMap::new();
    let mut residual_rho = Series2::zero(rho.order());
    for d in 0..=rho.order() {
        let part = rho.homogeneous_part(d)?;
        if part.is_zero() {
            continue;
        }
        let delta = d as i32 - 2;
        if d % 2 == 1 {
            return Err(Error::InvalidRho(Box::new(check_law(LawId::D, &spec.rho))));
        }
        if delta <= delta_max {
            even_simple.insert(delta, part);
        } else {
            residual_rho = &residual_rho + &part;
        }
    }
    Ok(DilativeComponents {
        alpha0,
        kappa: rho0.constant_term(),
        rho0,
        odd,
        even_simple,
        residual_g: g,
        residual_rho,
        order: n,
    })
}

/// Recovers `g` from a segment value `f₁ = g(x²)·exp(x/2)`.
pub fn extract_g(f1: &Series2) -> Result<Series1> {
    for law in [LawId::F1Shift, LawId::F1Period, LawId::F1Neg] {
        let r = check_law(law, f1);
        if !r.holds {
            return Err(Error::LawViolation(Box::new(r)));
        }
    }
    let h = f1.mul_exp_linear(&rat(-1, 2), &int(0));
    let bad = |law| Error::LawViolation(Box::new(check_law(law, f1)));
    if !h.is_free_of_y() {
        return Err(bad(LawId::F1Period));
    }
    let hx = h.x_part();
    if hx.terms().any(|(k, _)| k % 2 == 1) {
        return Err(bad(LawId::F1Shift));
    }
    Ok(Series1::from_terms(h.order() / 2, hx.terms().map(|(k, c)| (k / 2, c.clone()))))
}
