//! The affine unimodular group `Z^2 ⋊ GL(2, Z)` and its actions.
//!
//! An element `Ξ = (M, v)` maps a point `p` to `M p + v` and acts on a
//! series by `(Ξ·f)(x, y) = exp(α x + β y) · f(a x + c y, b x + d y)` where
//! `M = [[a, b], [c, d]]` and `v = (α, β)`.

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::geometry::{LatticePolygon, Point};
use crate::rational::int;
use crate::series::{mat2, Series2};

pub type IMat2 = [[i64; 2]; 2];

pub fn det(m: &IMat2) -> i64 {
    m[0][0] * m[1][1] - m[0][1] * m[1][0]
}

pub fn mat_mul(a: &IMat2, b: &IMat2) -> IMat2 {
    let mut out = [[0i64; 2]; 2];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

pub const IDENTITY: IMat2 = [[1, 0], [0, 1]];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AffineUnimodular {
    m: IMat2,
    v: Point,
}

impl AffineUnimodular {
    pub fn new(m: IMat2, v: Point) -> Result<Self> {
        let d = det(&m);
        if d.abs() != 1 {
            return Err(Error::NotUnimodular(d));
        }
        Ok(AffineUnimodular { m, v })
    }

    pub fn identity() -> Self {
        AffineUnimodular { m: IDENTITY, v: (0, 0) }
    }

    pub fn translation(v: Point) -> Self {
        AffineUnimodular { m: IDENTITY, v }
    }

    pub fn linear(m: IMat2) -> Result<Self> {
        Self::new(m, (0, 0))
    }

    pub fn matrix(&self) -> IMat2 {
        self.m
    }

    pub fn translation_part(&self) -> Point {
        self.v
    }

    pub fn det(&self) -> i64 {
        det(&self.m)
    }

    pub fn apply(&self, p: Point) -> Point {
        let [[a, b], [c, d]] = self.m;
        (a * p.0 + b * p.1 + self.v.0, c * p.0 + d * p.1 + self.v.1)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &AffineUnimodular) -> AffineUnimodular {
        let m = mat_mul(&self.m, &other.m);
        let mv = {
            let [[a, b], [c, d]] = self.m;
            (a * other.v.0 + b * other.v.1, c * other.v.0 + d * other.v.1)
        };
        AffineUnimodular { m, v: (mv.0 + self.v.0, mv.1 + self.v.1) }
    }

    pub fn inverse(&self) -> AffineUnimodular {
        let [[a, b], [c, d]] = self.m;
        let dt = det(&self.m); // ±1, so 1/dt = dt
        let mi = [[d * dt, -b * dt], [-c * dt, a * dt]];
        let v = (
            -(mi[0][0] * self.v.0 + mi[0][1] * self.v.1),
            -(mi[1][0] * self.v.0 + mi[1][1] * self.v.1),
        );
        AffineUnimodular { m: mi, v }
    }

    pub fn act_on_series(&self, f: &Series2) -> Series2 {
        let [[a, b], [c, d]] = self.m;
        let sub = if self.m == IDENTITY { f.clone() } else { f.substitute_int(a, b, c, d) };
        sub.mul_exp_linear(&int(self.v.0), &int(self.v.1))
    }

    pub fn act_on_polygon(&self, p: &LatticePolygon) -> LatticePolygon {
        let pts: Vec<Point> = p.vertices().iter().map(|&q| self.apply(q)).collect();
        LatticePolygon::hull(&pts).expect("image of a nonempty polygon is nonempty")
    }
}

/// First generator of the dihedral subgroup: `h(x + y, -y)`.
pub const D4_GEN_A: IMat2 = [[1, 0], [1, -1]];
/// Second generator of the dihedral subgroup: `h(x, -2x - y)`.
pub const D4_GEN_B: IMat2 = [[1, -2], [0, -1]];

/// Generators of `GL(2, Z)` used for invariance checks.
pub const GL2Z_GENERATORS: [IMat2; 3] = [[[1, 1], [0, 1]], [[0, -1], [1, 0]], [[1, 0], [0, -1]]];

/// All elements of the group generated by [`D4_GEN_A`] and [`D4_GEN_B`],
/// by closure under multiplication. Sorted for determinism.
pub fn d4_elements() -> Vec<IMat2> {
    let mut elems = vec![IDENTITY];
    let mut frontier = vec![IDENTITY];
    while let Some(g) = frontier.pop() {
        for gen in [D4_GEN_A, D4_GEN_B] {
            let h = mat_mul(&g, &gen);
            if !elems.contains(&h) {
                elems.push(h);
                frontier.push(h);
            }
        }
    }
    elems.sort();
    elems
}

/// Outcome of a D4 invariance test; `failing` names the generator that
/// moved the series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvarianceReport {
    pub invariant: bool,
    pub failing: Option<IMat2>,
}

pub fn is_d4_invariant(f: &Series2) -> InvarianceReport {
    for gen in [D4_GEN_A, D4_GEN_B] {
        let [[a, b], [c, d]] = gen;
        if !f.substitute_int(a, b, c, d).eq_up_to_order(f) {
            return InvarianceReport { invariant: false, failing: Some(gen) };
        }
    }
    InvarianceReport { invariant: true, failing: None }
}

pub fn is_invariant_under(f: &Series2, m: &IMat2) -> bool {
    f.linear_substitute(&mat2(m[0][0], m[0][1], m[1][0], m[1][1])).eq_up_to_order(f)
}

/// Linear map with first column `w` and determinant 1.
///
/// The second column is the Bézout solution minimizing
/// `(max(|b|, |d|), |b| + |d|)`, ties broken lexicographically on `(b, d)`.
pub fn complete_primitive(w: Point) -> Result<AffineUnimodular> {
    let (w1, w2) = w;
    let g = w1.extended_gcd(&w2);
    if g.gcd != 1 && g.gcd != -1 {
        return Err(Error::NotPrimitive(w1, w2));
    }
    // w1*x + w2*y = gcd; need w1*d - w2*b = 1.
    let s = g.gcd.signum();
    let (d0, b0) = (g.x * s, -g.y * s);
    // General solution: (b, d) = (b0 + k w1, d0 + k w2).
    let scale = w1.abs().max(w2.abs()).max(1);
    let reach = (b0.abs() + d0.abs()) / scale + 2;
    let best = (-reach..=reach)
        .map(|k| (b0 + k * w1, d0 + k * w2))
        .min_by_key(|&(b, d)| (b.abs().max(d.abs()), b.abs() + d.abs(), b, d))
        .expect("nonempty search range");
    let (b, d) = best;
    AffineUnimodular::linear([[w1, b], [w2, d]])
}

/// The map sending `T = [e1, e2, o]` onto `[v1, v2, v0]` with `o ↦ v0`,
/// `e1 ↦ v1`, `e2 ↦ v2`.
pub fn triangle_frame(v0: Point, v1: Point, v2: Point) -> Result<AffineUnimodular> {
    let e1 = (v1.0 - v0.0, v1.1 - v0.1);
    let e2 = (v2.0 - v0.0, v2.1 - v0.1);
    let m = [[e1.0, e2.0], [e1.1, e2.1]];
    let d = det(&m);
    if d.abs() != 1 {
        return Err(Error::NotUnimodularTriangle(d.abs()));
    }
    AffineUnimodular::new(m, v0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn p2(order: u32) -> Series2 {
        Series2::from_terms(order, [((2, 0), int(2)), ((1, 1), int(2)), ((0, 2), int(1))])
    }

    fn p4(order: u32) -> Series2 {
        Series2::from_terms(order, [((2, 2), int(4)), ((1, 3), int(4)), ((0, 4), int(1))])
    }

    #[test]
    fn translation_of_point_series() {
        let t = AffineUnimodular::translation((1, 0));
        let e = t.act_on_series(&Series2::one(5));
        assert_eq!(e, Series2::exp_linear(&int(1), &int(0), 5));
    }

    #[test]
    fn group_law_basics() {
        let xi = AffineUnimodular::new([[2, 1], [1, 1]], (3, -1)).unwrap();
        assert_eq!(xi.compose(&xi.inverse()), AffineUnimodular::identity());
        assert_eq!(xi.inverse().compose(&xi), AffineUnimodular::identity());
        let s = AffineUnimodular::translation((1, 2));
        let t = AffineUnimodular::translation((-3, 5));
        assert_eq!(s.compose(&t), t.compose(&s));
        let other = AffineUnimodular::new([[0, 1], [1, 0]], (0, 0)).unwrap();
        assert_eq!(xi.compose(&other).det(), xi.det() * other.det());
        assert!(AffineUnimodular::new([[2, 0], [0, 1]], (0, 0)).is_err());
    }

    #[test]
    fn d4_has_eight_elements_and_fixes_generators() {
        let elems = d4_elements();
        assert_eq!(elems.len(), 8);
        for m in &elems {
            assert!(is_invariant_under(&p2(8), m));
            assert!(is_invariant_under(&p4(8), m));
        }
        assert!(is_d4_invariant(&p2(6)).invariant);
        assert!(is_d4_invariant(&p4(6)).invariant);
        let x = Series2::from_terms(4, [((1, 0), int(1))]);
        let r = is_d4_invariant(&x);
        assert!(!r.invariant);
        assert!(r.failing.is_some());
    }

    #[test]
    fn complete_primitive_examples() {
        assert_eq!(complete_primitive((1, 0)).unwrap().matrix(), [[1, 0], [0, 1]]);
        assert_eq!(complete_primitive((2, 3)).unwrap().matrix(), [[2, -1], [3, -1]]);
        assert_eq!(complete_primitive((2, 4)), Err(Error::NotPrimitive(2, 4)));
        for w in [(0, 1), (0, -1), (-1, 0), (5, -7), (-3, -8), (13, 1)] {
            let m = complete_primitive(w).unwrap();
            assert_eq!(m.det(), 1);
            assert_eq!(m.apply((1, 0)), w);
        }
    }

    #[test]
    fn triangle_frame_examples() {
        assert_eq!(triangle_frame((0, 0), (1, 0), (0, 1)).unwrap(), AffineUnimodular::identity());
        let f = triangle_frame((1, 1), (0, 1), (1, 0)).unwrap();
        assert_eq!(f.translation_part(), (1, 1));
        assert_eq!(f.matrix(), [[-1, 0], [0, -1]]);
        assert_eq!(triangle_frame((0, 0), (2, 0), (0, 1)), Err(Error::NotUnimodularTriangle(2)));
    }

    #[test]
    fn polygon_action() {
        let t = LatticePolygon::hull(&[(0, 0), (1, 0), (0, 1)]).unwrap();
        assert_eq!(AffineUnimodular::identity().act_on_polygon(&t), t);
        let moved = AffineUnimodular::translation((1, 1)).act_on_polygon(&t);
        assert_eq!(moved, LatticePolygon::hull(&[(1, 1), (2, 1), (1, 2)]).unwrap());
        let xi = AffineUnimodular::new([[2, 3], [1, 2]], (-4, 7)).unwrap();
        let sq = LatticePolygon::hull(&[(0, 0), (2, 0), (2, 1), (0, 1)]).unwrap();
        assert_eq!(xi.act_on_polygon(&sq).area2().unwrap(), sq.area2().unwrap());
    }
}
