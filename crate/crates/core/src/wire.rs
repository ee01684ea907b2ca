//! JSON wire formats for series, polygons, group elements and specs.
//!
//! Rationals travel as canonical strings (`"3"`, `"-1/2"`), terms are
//! sorted by degree, so equal values always serialize to identical bytes.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::LatticePolygon;
use crate::group::AffineUnimodular;
use crate::laws::{LawReport, Violation};
use crate::rational::{format, parse};
use crate::series::{Series1, Series2};
use crate::valuation::ValuationSpec;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermJson {
    pub e: Vec<u32>,
    pub c: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeriesJson {
    pub vars: Vec<String>,
    pub order: u32,
    pub terms: Vec<TermJson>,
}

fn malformed(msg: impl Into<String>) -> Error {
    Error::Malformed(msg.into())
}

fn sorted_terms(mut terms: Vec<(Vec<u32>, String, u32)>) -> Vec<TermJson> {
    terms.sort_by(|a, b| (a.2, std::cmp::Reverse(a.0[0])).cmp(&(b.2, std::cmp::Reverse(b.0[0]))));
    terms.into_iter().map(|(e, c, _)| TermJson { e, c }).collect()
}

impl SeriesJson {
    pub fn from_series2(f: &Series2) -> Self {
        Self::from_series2_in(f, ["x", "y"])
    }

    pub fn from_series2_in(f: &Series2, vars: [&str; 2]) -> Self {
        let terms = f.terms().map(|((p, q), c)| (vec![p, q], format(c), p + q)).collect();
        SeriesJson { vars: vars.iter().map(|v| v.to_string()).collect(), order: f.order(), terms: sorted_terms(terms) }
    }

    pub fn from_series1(g: &Series1) -> Self {
        let terms = g.terms().map(|(k, c)| (vec![k], format(c), k)).collect();
        SeriesJson { vars: vec!["x".into()], order: g.order(), terms: sorted_terms(terms) }
    }

    fn parsed_terms(&self, arity: usize) -> Result<Vec<(Vec<u32>, crate::Rational)>> {
        let mut seen = BTreeSet::new();
        self.terms
            .iter()
            .map(|t| {
                if t.e.len() != arity {
                    return Err(malformed(format!("exponent {:?} must have {arity} entries", t.e)));
                }
                if t.e.iter().sum::<u32>() > self.order {
                    return Err(malformed(format!("exponent {:?} exceeds order {}", t.e, self.order)));
                }
                if !seen.insert(t.e.clone()) {
                    return Err(malformed(format!("duplicate exponent {:?}", t.e)));
                }
                Ok((t.e.clone(), parse(&t.c)?))
            })
            .collect()
    }

    pub fn to_series2(&self) -> Result<Series2> {
        if self.vars.len() != 2 {
            return Err(malformed(format!("expected two variables, got {:?}", self.vars)));
        }
        let terms = self.parsed_terms(2)?;
        Ok(Series2::from_terms(self.order, terms.into_iter().map(|(e, c)| ((e[0], e[1]), c))))
    }

    pub fn to_series1(&self) -> Result<Series1> {
        if self.vars.len() != 1 {
            return Err(malformed(format!("expected one variable, got {:?}", self.vars)));
        }
        let terms = self.parsed_terms(1)?;
        Ok(Series1::from_terms(self.order, terms.into_iter().map(|(e, c)| (e[0], c))))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolygonJson {
    pub vertices: Vec<[i64; 2]>,
}

impl PolygonJson {
    pub fn from_polygon(p: &LatticePolygon) -> Self {
        PolygonJson { vertices: p.vertices().iter().map(|&(x, y)| [x, y]).collect() }
    }

    pub fn to_polygon(&self) -> Result<LatticePolygon> {
        let pts: Vec<_> = self.vertices.iter().map(|v| (v[0], v[1])).collect();
        LatticePolygon::hull(&pts)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AffineJson {
    pub m: [[i64; 2]; 2],
    pub v: [i64; 2],
}

impl AffineJson {
    pub fn from_affine(xi: &AffineUnimodular) -> Self {
        let (a, b) = xi.translation_part();
        AffineJson { m: xi.matrix(), v: [a, b] }
    }

    pub fn to_affine(&self) -> Result<AffineUnimodular> {
        AffineUnimodular::new(self.m, (self.v[0], self.v[1]))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecJson {
    pub c: String,
    pub g: SeriesJson,
    pub rho: SeriesJson,
    pub order: u32,
}

impl SpecJson {
    pub fn from_spec(s: &ValuationSpec) -> Self {
        SpecJson {
            c: format(s.c()),
            g: SeriesJson::from_series1(s.g()),
            rho: SeriesJson::from_series2(s.rho()),
            order: s.order(),
        }
    }

    /// Parses and validates; `order` overrides the file's order when given.
    pub fn to_spec(&self, order: Option<u32>) -> Result<ValuationSpec> {
        ValuationSpec::new(
            parse(&self.c)?,
            self.g.to_series1()?,
            self.rho.to_series2()?,
            order.unwrap_or(self.order),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ViolationJson {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub law: Option<String>,
    pub exponent: [u32; 2],
    pub lhs: String,
    pub rhs: String,
}

impl ViolationJson {
    pub fn from_violation(law: Option<String>, v: &Violation) -> Self {
        ViolationJson { law, exponent: [v.exponent.0, v.exponent.1], lhs: format(&v.lhs), rhs: format(&v.rhs) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LawReportJson {
    pub law: String,
    pub holds: bool,
    pub verified_order: u32,
    pub first_violation: Option<ViolationJson>,
}

impl LawReportJson {
    pub fn from_report(r: &LawReport) -> Self {
        LawReportJson {
            law: r.law.to_string(),
            holds: r.holds,
            verified_order: r.verified_order,
            first_violation: r
                .first_violation
                .as_ref()
                .map(|v| ViolationJson::from_violation(Some(r.law.to_string()), v)),
        }
    }
}

fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| malformed(e.to_string()))
}

pub fn parse_series2(text: &str) -> Result<Series2> {
    from_json::<SeriesJson>(text)?.to_series2()
}

pub fn parse_series1(text: &str) -> Result<Series1> {
    from_json::<SeriesJson>(text)?.to_series1()
}

pub fn parse_polygon(text: &str) -> Result<LatticePolygon> {
    from_json::<PolygonJson>(text)?.to_polygon()
}

pub fn parse_affine(text: &str) -> Result<AffineUnimodular> {
    from_json::<AffineJson>(text)?.to_affine()
}

pub fn parse_spec(text: &str, order: Option<u32>) -> Result<ValuationSpec> {
    from_json::<SpecJson>(text)?.to_spec(order)
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("wire types always serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn series_round_trip() {
        let f = Series2::from_terms(4, [((1, 0), rat(-1, 2)), ((0, 2), int(3)), ((0, 0), int(1))]);
        let text = to_json(&SeriesJson::from_series2(&f));
        assert_eq!(parse_series2(&text).unwrap(), f);
        assert_eq!(to_json(&SeriesJson::from_series2(&parse_series2(&text).unwrap())), text);
        let g = Series1::from_terms(3, [(2, rat(1, 3))]);
        assert_eq!(parse_series1(&to_json(&SeriesJson::from_series1(&g))).unwrap(), g);
    }

    #[test]
    fn rejects_bad_series() {
        let dup = r#"{"vars":["x","y"],"order":2,"terms":[{"e":[1,0],"c":"1"},{"e":[1,0],"c":"2"}]}"#;
        assert!(matches!(parse_series2(dup), Err(Error::Malformed(_))));
        let high = r#"{"vars":["x","y"],"order":1,"terms":[{"e":[1,1],"c":"1"}]}"#;
        assert!(parse_series2(high).is_err());
        let zero_den = r#"{"vars":["x","y"],"order":1,"terms":[{"e":[1,0],"c":"1/0"}]}"#;
        assert!(parse_series2(zero_den).is_err());
        let float = r#"{"vars":["x","y"],"order":1,"terms":[{"e":[1,0],"c":"1.5"}]}"#;
        assert!(parse_series2(float).is_err());
        assert!(parse_series1(dup).is_err());
    }

    #[test]
    fn polygons_and_affine() {
        let p = parse_polygon(r#"{"vertices":[[0,0],[1,0],[0,1]]}"#).unwrap();
        assert_eq!(p, LatticePolygon::standard_triangle());
        assert!(parse_polygon(r#"{"vertices":[[0,0.5]]}"#).is_err());
        assert!(parse_polygon(r#"{"vertices":[]}"#).is_err());
        let xi = parse_affine(r#"{"m":[[1,1],[0,1]],"v":[2,-1]}"#).unwrap();
        assert_eq!(xi.apply((0, 0)), (2, -1));
        assert!(parse_affine(r#"{"m":[[2,0],[0,1]],"v":[0,0]}"#).is_err());
    }

    #[test]
    fn spec_round_trip() {
        let s = ValuationSpec::laplace(6);
        let text = to_json(&SpecJson::from_spec(&s));
        assert_eq!(parse_spec(&text, None).unwrap(), s);
        let bad = r#"{"c":"0","g":{"vars":["x"],"order":6,"terms":[]},"rho":{"vars":["x","y"],"order":6,"terms":[{"e":[1,0],"c":"1"}]},"order":6}"#;
        assert!(matches!(parse_spec(bad, None), Err(Error::InvalidRho(_))));
    }
}
