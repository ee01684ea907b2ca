//! Shared corpora, seeded generators and the invariant suite behind
//! `latval selftest`.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::geometry::LatticePolygon;
use crate::group::{d4_elements, is_invariant_under, AffineUnimodular};
use crate::laplace::laplace_plus;
use crate::laws::{d4_generators, dagger, sharp};
use crate::rational::{int, rat, Rational};
use crate::series::Series2;
use crate::valuation::{
    calibrate_val0_report, cosh_type, fit_val0_rho, g_m_closed, g_m_direct, odd_basis, Valuation, ValuationSpec,
};
use crate::vspace::{dims_table, vd_basis};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Hull of a few random points in `[0, size]²`, retried until 2D.
pub fn random_polygon(rng: &mut impl Rng, size: i64) -> LatticePolygon {
    loop {
        let n = rng.gen_range(3..=6);
        let pts: Vec<_> = (0..n).map(|_| (rng.gen_range(0..=size), rng.gen_range(0..=size))).collect();
        let p = LatticePolygon::hull(&pts).expect("nonempty");
        if p.dim() == 2 {
            return p;
        }
    }
}

/// Random element with matrix entries in `[-max, max]`.
pub fn random_affine(rng: &mut impl Rng, max: i64) -> AffineUnimodular {
    loop {
        let m = [[rng.gen_range(-max..=max), rng.gen_range(-max..=max)], [rng.gen_range(-max..=max), rng.gen_range(-max..=max)]];
        let v = (rng.gen_range(-4..=4), rng.gen_range(-4..=4));
        if let Ok(xi) = AffineUnimodular::new(m, v) {
            return xi;
        }
    }
}

/// Sparse series with small rational coefficients.
pub fn random_series(rng: &mut impl Rng, order: u32, terms: usize) -> Series2 {
    Series2::from_terms(
        order,
        (0..terms).map(|_| {
            let d = rng.gen_range(0..=order);
            let q = rng.gen_range(0..=d);
            ((d - q, q), rat(rng.gen_range(-9..=9), rng.gen_range(1..=5)))
        }),
    )
}

/// Fixed polygon corpus: multiples of `T`, rectangles, trapezoids and two
/// seeded random hulls.
pub fn polygon_corpus() -> Vec<(String, LatticePolygon)> {
    let t = LatticePolygon::standard_triangle();
    let mut out = vec![
        ("T".to_string(), t.clone()),
        ("2T".to_string(), t.scale(2)),
        ("3T".to_string(), t.scale(3)),
        ("unit square".to_string(), LatticePolygon::rectangle(1, 1)),
        ("2x2 square".to_string(), LatticePolygon::rectangle(2, 2)),
        ("2x1 rectangle".to_string(), LatticePolygon::rectangle(2, 1)),
        ("trapezoid A".to_string(), LatticePolygon::hull(&[(0, 0), (3, 0), (2, 1), (0, 1)]).expect("nonempty")),
        ("trapezoid B".to_string(), LatticePolygon::hull(&[(0, 0), (4, 0), (3, 2), (1, 2)]).expect("nonempty")),
    ];
    let mut r = rng(7);
    for k in 0..2 {
        out.push((format!("random hull {k}"), random_polygon(&mut r, 3)));
    }
    out
}

/// Specs exercising every kind of parameter.
pub fn spec_corpus(order: u32) -> Result<Vec<(String, ValuationSpec)>> {
    let mut out = vec![("laplace".to_string(), ValuationSpec::laplace(order))];
    for d in [4, 6] {
        for (i, b) in vd_basis(d).at_order(order).into_iter().enumerate() {
            out.push((format!("V{d}[{i}]"), ValuationSpec::simple(b, order)?));
        }
    }
    out.push((
        "odd delta=1".to_string(),
        ValuationSpec::new(Rational::zero(), odd_basis(1, order)?, Series2::zero(order), order)?,
    ));
    out.push((
        "val0 type".to_string(),
        ValuationSpec::new(int(1), cosh_type(order), Series2::constant(int(-1), order), order)?,
    ));
    let v4 = vd_basis(4).at_order(order).remove(0);
    out.push((
        "mixed".to_string(),
        ValuationSpec::new(
            rat(2, 3),
            &cosh_type(order).scale(&rat(2, 3)) + &odd_basis(3, order)?.scale(&int(-5)),
            &Series2::constant(int(3), order) + &v4.scale(&rat(1, 7)),
            order,
        )?,
    ));
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &'static str, passed: bool, detail: impl Into<String>) -> CheckResult {
    CheckResult { name, passed, detail: detail.into() }
}

/// The invariant suite at working order `order`.
pub fn run(order: u32) -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    let polys = polygon_corpus();
    let specs = spec_corpus(order)?;

    let table = dims_table(30);
    let bad: Vec<u32> = table.iter().filter(|r| !r.matches()).map(|r| r.d).collect();
    out.push(check("dimension table d <= 30", bad.is_empty(), format!("mismatches at {bad:?}")));

    let lap = Valuation::new(ValuationSpec::laplace(order))?;
    let bad: Vec<&str> = polys
        .iter()
        .filter(|(_, p)| !lap.z_polygon(p).eq_up_to_order(&laplace_plus(p, order)))
        .map(|(n, _)| n.as_str())
        .collect();
    out.push(check("laplace oracle", bad.is_empty(), format!("mismatches on {bad:?}")));

    let mut r = rng(11);
    let mut axiom_bad = Vec::new();
    let mut equiv_bad = Vec::new();
    let mut tri_bad = Vec::new();
    for (name, spec) in &specs {
        let v = Valuation::new(spec.clone())?;
        for (pname, p) in polys.iter().take(5) {
            if let Ok(pairs) = p.split_pairs(4) {
                for s in pairs {
                    let lhs = &v.z_polygon(p) + &v.z_polygon(&s.chord);
                    let rhs = &v.z_polygon(&s.first) + &v.z_polygon(&s.second);
                    if !lhs.eq_up_to_order(&rhs) {
                        axiom_bad.push(format!("{name} on {pname}"));
                    }
                }
            }
            if v.z_polygon_seeded(p, 3) != v.z_polygon(p) {
                tri_bad.push(format!("{name} on {pname}"));
            }
        }
        for _ in 0..3 {
            let xi = random_affine(&mut r, 3);
            let p = random_polygon(&mut r, 2);
            if !v.z_polygon(&xi.act_on_polygon(&p)).eq_up_to_order(&xi.act_on_series(&v.z_polygon(&p))) {
                equiv_bad.push(name.clone());
            }
        }
    }
    out.push(check("valuation axiom", axiom_bad.is_empty(), axiom_bad.join(", ")));
    out.push(check("equivariance", equiv_bad.is_empty(), equiv_bad.join(", ")));
    out.push(check("triangulation independence", tri_bad.is_empty(), tri_bad.join(", ")));

    let trips = (0..10)
        .filter(|_| {
            let f = random_series(&mut r, order, 6);
            dagger(&sharp(&f)).map(|g| g.eq_up_to_order(&f)).unwrap_or(false)
        })
        .count();
    out.push(check("dagger(sharp f) = f", trips == 10, format!("{trips}/10 round trips")));

    let gm_ok = (0..=6).all(|m| g_m_closed(m, order) == g_m_direct(m, order));
    out.push(check("g_m closed form", gm_ok, "m <= 6"));

    let closed_ok = specs.iter().filter(|(_, s)| s.is_simple()).all(|(_, s)| {
        let v = Valuation::new(s.clone()).expect("validated");
        (1..=4).all(|m| {
            v.z_mt_closed(m).map(|c| c.eq_up_to_order(&v.z_polygon(&LatticePolygon::standard_triangle().scale(m)))).unwrap_or(false)
        })
    });
    out.push(check("Z(mT) closed form for simple specs", closed_ok, "m <= 4"));

    let elems = d4_elements();
    let (p1, p2) = d4_generators(order);
    let d4_ok = elems.len() == 8 && elems.iter().all(|m| is_invariant_under(&p1, m) && is_invariant_under(&p2, m));
    out.push(check("D4 group and generators", d4_ok, format!("{} elements", elems.len())));

    let cal = calibrate_val0_report(order)?;
    let fit = fit_val0_rho(order)?;
    let k0_const = cal.candidates[0]
        .1
        .first_failure()
        .and_then(|c| c.comparison.first_violation.as_ref())
        .is_some_and(|v| v.exponent == (0, 0));
    let passing = cal.passing();
    out.push(check(
        "0-dilative generator",
        k0_const && fit.unique && fit.report.holds(),
        format!(
            "constant candidates passing: {:?}; fitted rho0 unique: {}, dilative: {}",
            passing.iter().map(crate::rational::format).collect::<Vec<_>>(),
            fit.unique,
            fit.report.holds()
        ),
    ));
    Ok(out)
}
