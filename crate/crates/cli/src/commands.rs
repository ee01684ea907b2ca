use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use latval_core::laws::{self, LawId};
use latval_core::rational::{format, parse};
use latval_core::valuation::{
    calibrate_val0, calibrate_val0_report, dilative_decompose, fit_val0_rho, DilativeReport, Valuation, ValuationSpec,
};
use latval_core::wire::{self, LawReportJson, PolygonJson, SeriesJson, SpecJson};
use latval_core::{laplace, selftest, vspace, Error, LatticePolygon, Series2};
use serde_json::{json, Value};

use crate::report::{violation, Failure, Outcome};
use crate::{Coords, TransformOp};

type CmdResult = Result<Outcome, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::malformed(format!("cannot read {}: {e}", path.display())))
}

fn read_series(path: &Path, order: u32) -> Result<Series2, Failure> {
    let f = wire::parse_series2(&read(path)?)?;
    Ok(f.truncate(order.min(f.order())))
}

fn read_polygon(path: &Path) -> Result<LatticePolygon, Failure> {
    Ok(wire::parse_polygon(&read(path)?)?)
}

fn read_spec(path: &Path, order: u32) -> Result<ValuationSpec, Failure> {
    let text = read(path)?;
    let raw: SpecJson = serde_json::from_str(&text).map_err(|e| Failure::malformed(e.to_string()))?;
    Ok(raw.to_spec(Some(order.min(raw.order)))?)
}

fn series(f: &Series2) -> Value {
    json!(SeriesJson::from_series2(f))
}

pub fn vd_basis(degree: u32, coords: Coords, order: u32) -> CmdResult {
    let n = order.max(degree);
    let (basis, vars) = match coords {
        Coords::Xy => (vspace::vd_basis(degree), ["x", "y"]),
        Coords::St => (vspace::st_basis(degree), ["s", "t"]),
    };
    let ok = match coords {
        Coords::Xy => basis.verify(),
        Coords::St => basis.basis.iter().all(|b| laws::holds(LawId::Adoubleprime, b)),
    };
    let forms = basis.at_order(n);
    let table = forms.iter().enumerate().map(|(i, b)| format!("[{i}] {b}")).collect();
    let list: Vec<SeriesJson> = forms.iter().map(|b| SeriesJson::from_series2_in(b, vars)).collect();
    Ok(Outcome::new(n, json!(list), table).failed_if(!ok))
}

pub fn vd_dims(max: u32, order: u32) -> CmdResult {
    let rows = vspace::dims_table(max);
    let mut table = vec![format!("{:>4} {:>9} {:>10}", "d", "computed", "predicted")];
    table.extend(rows.iter().map(|r| format!("{:>4} {:>9} {:>10}", r.d, r.computed, r.predicted)));
    let value: Vec<Value> = rows
        .iter()
        .map(|r| json!({"d": r.d, "computed": r.computed, "predicted": r.predicted, "matches": r.matches()}))
        .collect();
    let bad = rows.iter().any(|r| !r.matches());
    Ok(Outcome::new(order, json!(value), table).failed_if(bad))
}

pub fn check_law(law: &str, input: &Path, order: u32) -> CmdResult {
    let law: LawId = law.parse()?;
    let f = read_series(input, order)?;
    let r = laws::check_law(law, &f);
    let table = vec![format!("{law}: {}", law.statement())];
    let v = r.first_violation.as_ref().map(|v| violation(law.to_string(), v));
    Ok(Outcome::new(r.verified_order, json!(LawReportJson::from_report(&r)), table).violated_if(v))
}

pub fn transform(op: TransformOp, input: &Path, order: u32) -> CmdResult {
    let f = read_series(input, order)?;
    let undefined = |e: Error| -> CmdResult {
        match e {
            Error::NotDivisible(_) => {
                let r = laws::check_law(LawId::D, &f);
                let v = r.first_violation.as_ref().map(|v| violation(LawId::D.to_string(), v));
                Ok(Outcome::new(r.verified_order, Value::Null, vec![format!("undefined: {e}")])
                    .violated_if(v)
                    .failed_if(true))
            }
            e => Err(e.into()),
        }
    };
    let (out, vars) = match op {
        TransformOp::Sharp => (laws::sharp(&f), ["x", "y"]),
        TransformOp::Dagger => match laws::dagger(&f) {
            Ok(g) => (g, ["x", "y"]),
            Err(e) => return undefined(e),
        },
        TransformOp::Diamond => match laws::diamond(&f) {
            Ok(g) => (g, ["x", "y"]),
            Err(e) => return undefined(e),
        },
        TransformOp::ToSt => (laws::to_st(&f), ["s", "t"]),
        TransformOp::FromSt => (laws::from_st(&f), ["x", "y"]),
    };
    let table = vec![out.to_string()];
    Ok(Outcome::new(out.order(), json!(SeriesJson::from_series2_in(&out, vars)), table))
}

pub fn construct(spec: &Path, order: u32) -> CmdResult {
    let v = Valuation::new(read_spec(spec, order)?)?;
    let d = v.triangle_data();
    let table = vec![
        format!("f0 = {}", d.f0),
        format!("f1 = {}", d.f1),
        format!("f2 = {}", d.f2),
        format!("Z(T) = {}", d.zt),
    ];
    let value = json!({"f0": series(&d.f0), "f1": series(&d.f1), "f2": series(&d.f2), "zt": series(&d.zt)});
    Ok(Outcome::new(d.zt.order(), value, table))
}

pub fn evaluate(spec: &Path, polygon: &Path, seed: Option<u64>, order: u32) -> CmdResult {
    let v = Valuation::new(read_spec(spec, order)?)?;
    let p = read_polygon(polygon)?;
    let z = match seed {
        Some(s) if p.dim() == 2 => v.z_polygon_seeded(&p, s),
        _ => v.z_polygon(&p),
    };
    Ok(Outcome::new(z.order(), series(&z), vec![z.to_string()]))
}

pub fn laplace(polygon: &Path, order: u32) -> CmdResult {
    let p = read_polygon(polygon)?;
    let l = laplace::laplace_plus(&p, order);
    Ok(Outcome::new(l.order(), series(&l), vec![l.to_string()]))
}

fn polygon_files(path: &Path) -> Result<Vec<PathBuf>, Failure> {
    if !path.is_dir() {
        return Ok(vec![path.to_path_buf()]);
    }
    let entries = std::fs::read_dir(path).map_err(|e| Failure::malformed(format!("cannot read {}: {e}", path.display())))?;
    let mut files: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    if files.is_empty() {
        return Err(Failure::malformed(format!("no .json polygons in {}", path.display())));
    }
    Ok(files)
}

fn dilative_cases(report: &DilativeReport, names: &[String]) -> (Vec<Value>, Vec<String>) {
    let per_polygon = report.cases.len() / names.len().max(1);
    let mut rows = Vec::new();
    let mut table = Vec::new();
    for (k, c) in report.cases.iter().enumerate() {
        let name = &names[k / per_polygon.max(1)];
        let v = c.comparison.first_violation.as_ref().map(|v| violation("dilative", v));
        table.push(format!(
            "{name} m={}: {}",
            c.m,
            if c.comparison.holds() { "holds".to_string() } else { format!("violated at {:?}", v.as_ref().unwrap().exponent) }
        ));
        rows.push(json!({
            "polygon": name,
            "m": c.m,
            "holds": c.comparison.holds(),
            "verified_order": c.comparison.verified_order,
            "first_violation": v,
        }));
    }
    (rows, table)
}

pub fn dilative(spec: &Path, delta: i32, ms: &[i64], polygons: &Path, order: u32) -> CmdResult {
    let v = Valuation::new(read_spec(spec, order)?)?;
    let files = polygon_files(polygons)?;
    let mut polys = Vec::new();
    let mut names = Vec::new();
    for f in &files {
        polys.push(read_polygon(f)?);
        names.push(f.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default());
    }
    let report = v.check_dilative(delta, ms, &polys);
    let (rows, table) = dilative_cases(&report, &names);
    let first = report.first_failure().and_then(|c| c.comparison.first_violation.as_ref()).map(|v| violation(format!("dilative delta={delta}"), v));
    Ok(Outcome::new(report.verified_order(), json!({"delta": delta, "cases": rows}), table).violated_if(first))
}

pub fn decompose(spec: &Path, delta_max: i32, kappa: &str, order: u32) -> CmdResult {
    let spec = read_spec(spec, order)?;
    let n = spec.order();
    let (rho0, source) = if kappa == "auto" {
        match calibrate_val0(n) {
            Ok(k) => (Series2::constant(k, n), "calibrated"),
            Err(Error::NoCandidatePasses) => (fit_val0_rho(n)?.rho, "fit"),
            Err(e) => return Err(e.into()),
        }
    } else {
        (Series2::constant(parse(kappa)?, n), "forced")
    };
    let c = dilative_decompose(&spec, delta_max, &rho0)?;
    let reassembled = c.reassemble().is_ok_and(|r| r == spec);
    let odd: BTreeMap<String, String> = c.odd.iter().map(|(d, a)| (d.to_string(), format(a))).collect();
    let even: BTreeMap<String, Value> = c.even_simple.iter().map(|(d, s)| (d.to_string(), series(s))).collect();
    let mut table = vec![format!("alpha0 = {}", format(&c.alpha0)), format!("val0 source = {source}, rho0 = {}", c.rho0)];
    table.extend(c.odd.iter().map(|(d, a)| format!("delta {d}: odd coefficient {}", format(a))));
    table.extend(c.even_simple.iter().map(|(d, s)| format!("delta {d}: rho part {s}")));
    table.push(format!("reassembles exactly: {reassembled}"));
    let value = json!({
        "alpha0": format(&c.alpha0),
        "kappa": format(&c.kappa),
        "val0_source": source,
        "rho0": series(&c.rho0),
        "odd": odd,
        "even_simple": even,
        "residual_g": SeriesJson::from_series1(&c.residual_g),
        "residual_rho": series(&c.residual_rho),
        "reassembled": reassembled,
    });
    Ok(Outcome::new(c.order, value, table).failed_if(!reassembled))
}

pub fn calibrate(order: u32) -> CmdResult {
    let cal = calibrate_val0_report(order)?;
    let fit = fit_val0_rho(order)?;
    let mut candidates = Vec::new();
    let mut table = Vec::new();
    let mut first = None;
    for (kappa, report) in &cal.candidates {
        let fail = report.first_failure();
        let v = fail.and_then(|c| c.comparison.first_violation.as_ref()).map(|v| {
            violation(format!("kappa={} m={} on {:?}", format(kappa), fail.unwrap().m, fail.unwrap().polygon.vertices()), v)
        });
        table.push(format!(
            "kappa = {}: {}",
            format(kappa),
            match &v {
                Some(v) => format!("fails at x^{} y^{}: {} vs {}", v.exponent[0], v.exponent[1], v.lhs, v.rhs),
                None => "0-dilative".to_string(),
            }
        ));
        if first.is_none() {
            first = v.clone();
        }
        candidates.push(json!({
            "kappa": format(kappa),
            "holds": report.holds(),
            "verified_order": report.verified_order(),
            "first_violation": v,
            "polygon": fail.map(|c| PolygonJson::from_polygon(&c.polygon)),
        }));
    }
    let verdict = cal.verdict();
    let verdict_text = match &verdict {
        Ok(k) => format(k),
        Err(e) => e.to_string(),
    };
    table.push(format!("verdict: {verdict_text}"));
    table.push(format!("fitted rho0: unique {}, 0-dilative {}; rho0 = {}", fit.unique, fit.report.holds(), fit.rho));
    let value = json!({
        "candidates": candidates,
        "verdict": verdict_text,
        "kappa": verdict.as_ref().ok().map(format),
        "fit": {"rho0": series(&fit.rho), "unique": fit.unique, "dilative": fit.report.holds()},
    });
    let verified = cal.candidates.iter().map(|(_, r)| r.verified_order()).min().unwrap_or(0);
    let out = Outcome::new(verified, value, table);
    Ok(if verdict.is_ok() { out } else { out.violated_if(first).failed_if(true) })
}

pub fn selftest(order: u32) -> CmdResult {
    let checks = selftest::run(order)?;
    let table = checks
        .iter()
        .map(|c| format!("{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail))
        .collect();
    let value: Vec<Value> = checks
        .iter()
        .map(|c| json!({"name": c.name, "passed": c.passed, "detail": c.detail}))
        .collect();
    let bad = checks.iter().any(|c| !c.passed);
    Ok(Outcome::new(order.saturating_sub(1), json!(value), table).failed_if(bad))
}
