//! One pass/fail line per acceptance criterion, at working order 12
//! (exact to order 11 on 2D polygons).
//!
//! Criterion 9 is not attainable as stated: neither constant candidate is
//! 0-dilative. The test prints it as FAIL with the measured facts and
//! asserts that it is the only failing criterion, so a regression anywhere
//! else, or a change in that finding, breaks the build.

use latval_core::laplace::laplace_plus;
use latval_core::laws::{
    check_law, d4_decompose, d4_generators, dagger, diamond, equivalence_suite_f2, equivalence_suite_rho, holds, sharp,
    to_st, LawId,
};
use latval_core::group::{d4_elements, is_invariant_under};
use latval_core::rational::{format, inv_factorial, int, rat};
use latval_core::selftest::{polygon_corpus, random_affine, random_polygon, random_series, rng, spec_corpus};
use latval_core::valuation::{
    calibrate_val0, calibrate_val0_report, cosh_type, dilative_decompose, fit_val0_rho, g_m_closed, g_m_direct,
    odd_basis, Comparison, Valuation, ValuationSpec,
};
use latval_core::vspace::{dims_table, st_isomorphic, vd_basis};
use latval_core::{LatticePolygon, Rational, Series2};
use num_traits::Zero;
use rand::Rng;

const N: u32 = 12;
const EXACT_TO: u32 = 11;

struct Outcome {
    id: u32,
    name: &'static str,
    pass: bool,
    detail: String,
}

fn exact(c: &Comparison) -> bool {
    c.holds() && c.verified_order >= EXACT_TO
}

fn describe(c: &Comparison) -> String {
    match &c.first_violation {
        Some(v) => format!("x^{} y^{}: {} vs {}", v.exponent.0, v.exponent.1, format(&v.lhs), format(&v.rhs)),
        None => format!("exact to order {}", c.verified_order),
    }
}

fn tri() -> LatticePolygon {
    LatticePolygon::standard_triangle()
}

fn criterion_1() -> Outcome {
    let expected_even = [1, 0, 1, 1, 1, 1, 2, 1, 2, 2, 2, 2, 3, 2, 3, 3];
    let table = dims_table(30);
    let even: Vec<usize> = table.iter().filter(|r| r.d % 2 == 0).map(|r| r.computed).collect();
    let odd_zero = table.iter().filter(|r| r.d % 2 == 1).all(|r| r.computed == 0);
    let listed = table.iter().all(|r| {
        let want = if r.d % 2 == 1 { 0 } else { expected_even[(r.d / 2) as usize] };
        r.computed == want && r.matches()
    });
    Outcome { id: 1, name: "dimension table", pass: listed && table.len() == 31, detail: format!("even d = 0..30: {even:?}; odd d all zero: {odd_zero}") }
}

fn criterion_2() -> Outcome {
    let lap = Valuation::new(ValuationSpec::laplace(N)).unwrap();
    let corpus = polygon_corpus();
    let mut bad = Vec::new();
    for (name, p) in &corpus {
        let c = Comparison::of(&lap.z_polygon(p), &laplace_plus(p, N));
        if !exact(&c) {
            bad.push(format!("{name}: {}", describe(&c)));
        }
    }
    let lt = laplace_plus(&tri(), N);
    let t_ok = (0..=N).all(|d| (0..=d).all(|b| lt.coeff(d - b, b) == inv_factorial(d + 2)));
    Outcome {
        id: 2,
        name: "laplace cross-oracle",
        pass: bad.is_empty() && corpus.len() >= 10 && t_ok,
        detail: format!("{} polygons, L+(T) = 1/(a+b+2)!: {t_ok}; failures {bad:?}", corpus.len()),
    }
}

fn criterion_3(specs: &[(String, ValuationSpec)]) -> Outcome {
    let mut pairs = Vec::new();
    for (_, p) in polygon_corpus() {
        if let Ok(ps) = p.split_pairs(6) {
            pairs.extend(ps.into_iter().map(|s| (p.clone(), s)));
        }
    }
    let mut bad = Vec::new();
    for (name, spec) in specs {
        let v = Valuation::new(spec.clone()).unwrap();
        for (p, s) in &pairs {
            let lhs = &v.z_polygon(p) + &v.z_polygon(&s.chord);
            let rhs = &v.z_polygon(&s.first) + &v.z_polygon(&s.second);
            let c = Comparison::of(&lhs, &rhs);
            if !exact(&c) {
                bad.push(format!("{name}: {}", describe(&c)));
            }
        }
    }
    Outcome {
        id: 3,
        name: "valuation axiom",
        pass: bad.is_empty() && pairs.len() >= 40 && specs.len() >= 5,
        detail: format!("{} split pairs x {} specs; failures {:?}", pairs.len(), specs.len(), bad),
    }
}

fn criterion_4(specs: &[(String, ValuationSpec)]) -> Outcome {
    let mut r = rng(2024);
    let mut bad = Vec::new();
    let per_spec = 20;
    for (name, spec) in specs {
        let v = Valuation::new(spec.clone()).unwrap();
        for _ in 0..per_spec {
            let xi = random_affine(&mut r, 3);
            let p = random_polygon(&mut r, 2);
            let c = Comparison::of(&v.z_polygon(&xi.act_on_polygon(&p)), &xi.act_on_series(&v.z_polygon(&p)));
            if !exact(&c) {
                bad.push(format!("{name}: {}", describe(&c)));
            }
        }
    }
    Outcome {
        id: 4,
        name: "equivariance",
        pass: bad.is_empty(),
        detail: format!("{per_spec} random maps x {} specs; failures {bad:?}", specs.len()),
    }
}

fn criterion_5() -> Outcome {
    let order = 10;
    let mut r = rng(5);
    let n = 50;
    let forward = (0..n)
        .filter(|_| {
            let f = random_series(&mut r, order, 8);
            dagger(&sharp(&f)).is_ok_and(|g| g.eq_up_to_order(&f))
        })
        .count();
    // ϱ with only even-degree terms is in the domain of †.
    let mut defined = 0;
    let backward = (0..n)
        .filter(|_| {
            let mut rho = random_series(&mut r, order, 8);
            rho = Series2::from_terms(order, rho.terms().filter(|((p, q), _)| (p + q) % 2 == 0).map(|(e, c)| (e, c.clone())));
            match dagger(&rho) {
                Ok(f) => {
                    defined += 1;
                    sharp(&f).eq_up_to_order(&rho)
                }
                Err(_) => false,
            }
        })
        .count();
    Outcome {
        id: 5,
        name: "transform round trips",
        pass: forward == n && backward == n && defined == n,
        detail: format!("order {order}: dagger(sharp f) = f {forward}/{n}, sharp(dagger r) = r {backward}/{n}"),
    }
}

fn criterion_6(specs: &[(String, ValuationSpec)]) -> Outcome {
    let mut bad = Vec::new();
    let mut checked = 0;
    for d in 0..=12 {
        for (i, b) in vd_basis(d).at_order(N).into_iter().enumerate() {
            let f = dagger(&b).unwrap();
            for law in [LawId::A, LawId::B, LawId::C] {
                if !holds(law, &f) {
                    bad.push(format!("dagger(V{d}[{i}]) fails {law}"));
                }
            }
            if diamond(&b).map(|g| !g.eq_up_to_order(&f)).unwrap_or(true) {
                bad.push(format!("diamond != dagger on V{d}[{i}]"));
            }
            let mut suites = vec![equivalence_suite_rho(&b), equivalence_suite_f2(&f)];
            let rho_sum = &b + &Series2::constant(int(1), N);
            suites.push(equivalence_suite_rho(&rho_sum));
            for s in suites {
                checked += s.implications.len();
                if let Some(imp) = s.first_refuted() {
                    bad.push(format!("V{d}[{i}]: {}", imp.name));
                }
            }
        }
    }
    for (name, spec) in specs {
        let v = Valuation::new(spec.clone()).unwrap();
        let suites = [equivalence_suite_rho(spec.rho()), equivalence_suite_f2(&v.triangle_data().f2)];
        for s in suites {
            checked += s.implications.len();
            if let Some(imp) = s.first_refuted() {
                bad.push(format!("{name}: {}", imp.name));
            }
        }
    }
    let mut r = rng(6);
    for _ in 0..10 {
        let f = random_series(&mut r, 8, 6);
        for s in [equivalence_suite_rho(&f), equivalence_suite_f2(&f)] {
            checked += s.implications.len();
            if let Some(imp) = s.first_refuted() {
                bad.push(format!("random: {}", imp.name));
            }
        }
    }
    Outcome {
        id: 6,
        name: "law equivalences",
        pass: bad.is_empty(),
        detail: format!("{checked} implication instances; refuted {bad:?}"),
    }
}

fn criterion_7() -> Outcome {
    let polys = [tri(), LatticePolygon::rectangle(1, 1)];
    let mut bad = Vec::new();
    let mut count = 0;
    for d in [0u32, 4, 6, 8, 12] {
        for (i, b) in vd_basis(d).at_order(N).into_iter().enumerate() {
            count += 1;
            let v = Valuation::new(ValuationSpec::simple(b, N).unwrap()).unwrap();
            let report = v.check_dilative(d as i32 - 2, &[2, 3], &polys);
            if let Some(c) = report.first_failure() {
                bad.push(format!("V{d}[{i}] m={}: {}", c.m, describe(&c.comparison)));
            }
            if report.verified_order() < EXACT_TO {
                bad.push(format!("V{d}[{i}] verified only to {}", report.verified_order()));
            }
            for m in 1..=4 {
                let c = Comparison::of(&v.z_mt_closed(m).unwrap(), &v.z_polygon(&tri().scale(m)));
                if !exact(&c) {
                    bad.push(format!("V{d}[{i}] closed form mT, m={m}: {}", describe(&c)));
                }
            }
        }
    }
    let gm = (0..=6).all(|m| g_m_closed(m, N) == g_m_direct(m, N));
    Outcome {
        id: 7,
        name: "dilativity of simple specs",
        pass: bad.is_empty() && gm && count >= 6,
        detail: format!("{count} basis elements; g_m closed form m <= 6: {gm}; failures {bad:?}"),
    }
}

fn criterion_8() -> Outcome {
    let segments = [
        LatticePolygon::segment((0, 0), (1, 0)),
        LatticePolygon::segment((0, 0), (1, 2)),
        LatticePolygon::segment((1, 1), (3, 2)),
    ];
    let polys = [tri(), LatticePolygon::rectangle(1, 1), LatticePolygon::hull(&[(0, 0), (3, 0), (2, 1), (0, 1)]).unwrap()];
    let mut bad = Vec::new();
    for delta in [-1, 1, 3] {
        let spec = ValuationSpec::new(Rational::zero(), odd_basis(delta, N).unwrap(), Series2::zero(N), N).unwrap();
        let v = Valuation::new(spec).unwrap();
        for report in [v.check_dilative(delta, &[2, 3], &segments), v.check_dilative(delta, &[2, 3], &polys)] {
            if let Some(c) = report.first_failure() {
                bad.push(format!("delta={delta} m={}: {}", c.m, describe(&c.comparison)));
            }
            if report.verified_order() < EXACT_TO {
                bad.push(format!("delta={delta} verified only to {}", report.verified_order()));
            }
        }
        for p in &polys {
            let c = v.surface_formula_check(p).unwrap();
            if !exact(&c) {
                bad.push(format!("delta={delta} edge formula: {}", describe(&c)));
            }
        }
    }
    Outcome { id: 8, name: "odd-delta dilativity", pass: bad.is_empty(), detail: format!("delta in -1, 1, 3; failures {bad:?}") }
}

fn reassembles(specs: &[(String, ValuationSpec)], rho0: &Series2) -> Vec<String> {
    specs
        .iter()
        .filter(|(_, s)| !dilative_decompose(s, 2 * N as i32, rho0).and_then(|c| c.reassemble()).is_ok_and(|r| &r == s))
        .map(|(n, _)| n.clone())
        .collect()
}

fn criterion_9(specs: &[(String, ValuationSpec)]) -> Outcome {
    let cal = calibrate_val0_report(N).unwrap();
    let verdict = calibrate_val0(N);
    let mut facts = Vec::new();
    for (kappa, report) in &cal.candidates {
        match report.first_failure() {
            Some(c) => facts.push(format!(
                "kappa={} fails on m={} {:?}: {}",
                format(kappa),
                c.m,
                c.polygon.vertices(),
                describe(&c.comparison)
            )),
            None => facts.push(format!("kappa={} passes", format(kappa))),
        }
    }
    let pass = match &verdict {
        Ok(kappa) => {
            let candidates_ok = *kappa == int(0) || *kappa == int(-1);
            let v = Valuation::new(ValuationSpec::new(int(1), cosh_type(N), Series2::constant(kappa.clone(), N), N).unwrap())
                .unwrap();
            let mut report = v.check_dilative(0, &[2, 3], &[tri()]);
            report.cases.extend(v.check_dilative(0, &[2], &[LatticePolygon::rectangle(1, 1)]).cases);
            candidates_ok && report.holds() && reassembles(specs, &Series2::constant(kappa.clone(), N)).is_empty()
        }
        Err(e) => {
            facts.push(format!("calibrate_val0: {e}"));
            false
        }
    };
    let fit = fit_val0_rho(N).unwrap();
    facts.push(format!(
        "fitted rho0 (constant {}): unique {}, dilative on T, square and held-out {}",
        format(&fit.rho.constant_term()),
        fit.unique,
        fit.report.holds()
    ));
    let not_reassembled = reassembles(specs, &fit.rho);
    facts.push(format!("decompose with fitted rho0 reassembles all specs: {}", not_reassembled.is_empty()));
    Outcome { id: 9, name: "0-dilative generator", pass, detail: facts.join("; ") }
}

fn criterion_10() -> Outcome {
    let elems = d4_elements();
    let (p1, p2) = d4_generators(N);
    let invariant = elems.iter().all(|m| is_invariant_under(&p1, m) && is_invariant_under(&p2, m));
    let mut bad = Vec::new();
    let mut r = rng(10);
    let mut invariants: Vec<Series2> = (0..=12).flat_map(|d| vd_basis(d).at_order(N)).collect();
    for _ in 0..10 {
        let mut h = Series2::zero(N);
        for i in 0..=6u32 {
            for j in 0..=3u32 {
                if 2 * i + 4 * j <= N && r.gen_bool(0.5) {
                    let mut term = Series2::constant(rat(r.gen_range(-9..=9), r.gen_range(1..=4)), N);
                    for _ in 0..i {
                        term = &term * &p1;
                    }
                    for _ in 0..j {
                        term = &term * &p2;
                    }
                    h = &h + &term;
                }
            }
        }
        invariants.push(h);
    }
    for (k, h) in invariants.iter().enumerate() {
        match d4_decompose(h) {
            Ok(repr) if repr.evaluate().eq_up_to_order(h) => {}
            Ok(_) => bad.push(format!("invariant {k}: evaluate differs")),
            Err(e) => bad.push(format!("invariant {k}: {e}")),
        }
    }
    let st_ok = (0..=12).all(|d| {
        st_isomorphic(d) && vd_basis(d).basis.iter().all(|b| check_law(LawId::Adoubleprime, &to_st(b)).holds)
    });
    Outcome {
        id: 10,
        name: "D4 suite",
        pass: elems.len() == 8 && invariant && bad.is_empty() && st_ok,
        detail: format!(
            "{} elements; generators invariant {invariant}; {} decompositions, failures {bad:?}; to_st d <= 12: {st_ok}",
            elems.len(),
            invariants.len()
        ),
    }
}

#[test]
fn acceptance() {
    let specs = spec_corpus(N).unwrap();
    let outcomes = vec![
        criterion_1(),
        criterion_2(),
        criterion_3(&specs),
        criterion_4(&specs),
        criterion_5(),
        criterion_6(&specs),
        criterion_7(),
        criterion_8(),
        criterion_9(&specs),
        criterion_10(),
    ];
    for o in &outcomes {
        println!("criterion {} [{}]: {} ({})", o.id, o.name, if o.pass { "PASS" } else { "FAIL" }, o.detail);
    }
    let failing: Vec<u32> = outcomes.iter().filter(|o| !o.pass).map(|o| o.id).collect();
    assert_eq!(failing, vec![9], "unexpected set of failing criteria");
}

/// The measured facts behind the criterion 9 verdict.
#[test]
fn constant_generator_finding() {
    let cal = calibrate_val0_report(N).unwrap();
    assert!(cal.passing().is_empty());
    let (k0, r0) = &cal.candidates[0];
    assert_eq!(*k0, int(0));
    let v = &r0.first_failure().unwrap().comparison.first_violation.clone().unwrap();
    assert_eq!((v.exponent, v.lhs.clone(), v.rhs.clone()), ((0, 0), int(3), rat(3, 2)));
    let (k1, r1) = &cal.candidates[1];
    assert_eq!(*k1, int(-1));
    let c = r1.first_failure().unwrap();
    let v = c.comparison.first_violation.clone().unwrap();
    assert_eq!((c.m, v.exponent, v.lhs, v.rhs), (2, (3, 0), rat(17, 30), rat(3, 5)));

    let fit = fit_val0_rho(N).unwrap();
    assert!(fit.unique && fit.report.holds());
    assert_eq!(fit.rho.constant_term(), int(-1));
    assert_eq!(fit.rho.coeff(4, 0), rat(-1, 240));
    let specs = spec_corpus(N).unwrap();
    assert!(reassembles(&specs, &fit.rho).is_empty());
}
