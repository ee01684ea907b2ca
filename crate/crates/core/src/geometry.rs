//! Lattice polygons, lattice point enumeration and unimodular
//! triangulations.

use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::rational::{int, Rational};

pub type Point = (i64, i64);

/// Twice the signed area of `(a, b, c)`; positive for a left turn.
pub fn orient(a: Point, b: Point, c: Point) -> i64 {
    (b.0 - a.0) * (c.1 - a.1) - (b.1 - a.1) * (c.0 - a.0)
}

/// Convex hull of finitely many lattice points, stored canonically:
/// counterclockwise, no collinear vertices, lexicographically smallest
/// vertex first. Segments keep their two endpoints in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticePolygon {
    vertices: Vec<Point>,
}

impl LatticePolygon {
    pub fn hull(points: &[Point]) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyInput);
        }
        let mut pts: Vec<Point> = points.to_vec();
        pts.sort();
        pts.dedup();
        if pts.len() <= 2 {
            return Ok(LatticePolygon { vertices: pts });
        }
        // Andrew's monotone chain, dropping collinear points.
        let mut lower: Vec<Point> = Vec::new();
        for &p in &pts {
            while lower.len() >= 2 && orient(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
                lower.pop();
            }
            lower.push(p);
        }
        let mut upper: Vec<Point> = Vec::new();
        for &p in pts.iter().rev() {
            while upper.len() >= 2 && orient(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
                upper.pop();
            }
            upper.push(p);
        }
        lower.pop();
        upper.pop();
        lower.extend(upper);
        if lower.len() <= 2 {
            // All input points collinear: keep the extreme pair.
            let (a, b) = (pts[0], pts[pts.len() - 1]);
            return Ok(LatticePolygon { vertices: vec![a, b] });
        }
        Ok(LatticePolygon { vertices: lower })
    }

    pub fn point(p: Point) -> Self {
        LatticePolygon { vertices: vec![p] }
    }

    pub fn segment(a: Point, b: Point) -> Self {
        Self::hull(&[a, b]).expect("nonempty")
    }

    /// The standard triangle `T = [e1, e2, o]`.
    pub fn standard_triangle() -> Self {
        Self::hull(&[(0, 0), (1, 0), (0, 1)]).expect("nonempty")
    }

    /// `[0, m] x [0, n]`.
    pub fn rectangle(m: i64, n: i64) -> Self {
        Self::hull(&[(0, 0), (m, 0), (m, n), (0, n)]).expect("nonempty")
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn dim(&self) -> u8 {
        match self.vertices.len() {
            1 => 0,
            2 => 1,
            _ => 2,
        }
    }

    pub fn scale(&self, m: i64) -> Self {
        let pts: Vec<Point> = self.vertices.iter().map(|&(x, y)| (m * x, m * y)).collect();
        Self::hull(&pts).expect("nonempty")
    }

    pub fn translate(&self, v: Point) -> Self {
        let pts: Vec<Point> = self.vertices.iter().map(|&(x, y)| (x + v.0, y + v.1)).collect();
        Self::hull(&pts).expect("nonempty")
    }

    /// Twice the Euclidean area.
    pub fn area2(&self) -> Result<i64> {
        if self.dim() < 2 {
            return Err(Error::NotFullDimensional);
        }
        let n = self.vertices.len();
        Ok((0..n)
            .map(|i| {
                let (a, b) = (self.vertices[i], self.vertices[(i + 1) % n]);
                a.0 * b.1 - a.1 * b.0
            })
            .sum())
    }

    /// Edges as segments, counterclockwise from the first vertex.
    pub fn edges(&self) -> Vec<LatticePolygon> {
        match self.dim() {
            2 => {
                let n = self.vertices.len();
                (0..n)
                    .map(|i| LatticePolygon::segment(self.vertices[i], self.vertices[(i + 1) % n]))
                    .collect()
            }
            1 => vec![self.clone()],
            _ => Vec::new(),
        }
    }

    /// Lattice length of a segment and its primitive direction from the
    /// first endpoint.
    pub fn segment_parts(&self) -> Result<(Point, Point, i64)> {
        if self.dim() != 1 {
            return Err(Error::NotSegment);
        }
        let (a, b) = (self.vertices[0], self.vertices[1]);
        let d = (b.0 - a.0, b.1 - a.1);
        let len = d.0.gcd(&d.1);
        Ok((a, (d.0 / len, d.1 / len), len))
    }

    pub fn contains(&self, p: Point) -> bool {
        match self.dim() {
            0 => self.vertices[0] == p,
            1 => {
                let (a, b) = (self.vertices[0], self.vertices[1]);
                orient(a, b, p) == 0
                    && p.0 >= a.0.min(b.0)
                    && p.0 <= a.0.max(b.0)
                    && p.1 >= a.1.min(b.1)
                    && p.1 <= a.1.max(b.1)
            }
            _ => {
                let n = self.vertices.len();
                (0..n).all(|i| orient(self.vertices[i], self.vertices[(i + 1) % n], p) >= 0)
            }
        }
    }

    /// Closed-set membership for a rational point.
    pub fn contains_rational(&self, p: &(Rational, Rational)) -> bool {
        let q = |v: Point| (int(v.0), int(v.1));
        let orient_q = |a: (Rational, Rational), b: (Rational, Rational)| {
            (&b.0 - &a.0) * (&p.1 - &a.1) - (&b.1 - &a.1) * (&p.0 - &a.0)
        };
        match self.dim() {
            0 => q(self.vertices[0]) == *p,
            1 => {
                let (a, b) = (q(self.vertices[0]), q(self.vertices[1]));
                let zero = Rational::from_integer(0.into());
                if orient_q(a.clone(), b.clone()) != zero {
                    return false;
                }
                let within = |lo: &Rational, hi: &Rational, v: &Rational| {
                    let (lo, hi) = if lo <= hi { (lo, hi) } else { (hi, lo) };
                    lo <= v && v <= hi
                };
                within(&a.0, &b.0, &p.0) && within(&a.1, &b.1, &p.1)
            }
            _ => {
                let n = self.vertices.len();
                let zero = Rational::from_integer(0.into());
                (0..n).all(|i| {
                    orient_q(q(self.vertices[i]), q(self.vertices[(i + 1) % n])) >= zero
                })
            }
        }
    }

    pub fn on_boundary(&self, p: Point) -> bool {
        match self.dim() {
            2 => self.edges().iter().any(|e| e.contains(p)),
            _ => self.contains(p),
        }
    }

    /// All lattice points, lexicographically sorted.
    pub fn lattice_points(&self) -> Vec<Point> {
        let (xmin, xmax) = minmax(self.vertices.iter().map(|v| v.0));
        let (ymin, ymax) = minmax(self.vertices.iter().map(|v| v.1));
        let mut out = Vec::new();
        for x in xmin..=xmax {
            for y in ymin..=ymax {
                if self.contains((x, y)) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    /// Boundary lattice points in counterclockwise order from the first
    /// vertex.
    pub fn boundary_lattice_points(&self) -> Vec<Point> {
        if self.dim() < 2 {
            return self.lattice_points();
        }
        let n = self.vertices.len();
        let mut out = Vec::new();
        for i in 0..n {
            let (a, b) = (self.vertices[i], self.vertices[(i + 1) % n]);
            let g = (b.0 - a.0).gcd(&(b.1 - a.1));
            let step = ((b.0 - a.0) / g, (b.1 - a.1) / g);
            for k in 0..g {
                out.push((a.0 + k * step.0, a.1 + k * step.1));
            }
        }
        out
    }

    pub fn unimodular_triangulation(&self) -> Result<Triangulation> {
        Triangulation::build(self, |p| (p.0, p.1))
    }

    /// Same construction with a seed-dependent insertion order.
    pub fn unimodular_triangulation_seeded(&self, seed: u64) -> Result<Triangulation> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b) = loop {
            let a: i64 = rng.gen_range(-5..=5);
            let b: i64 = rng.gen_range(-5..=5);
            if (a, b) != (0, 0) {
                break (a, b);
            }
        };
        // (a x + b y, -b x + a y) is injective, and its lexicographic
        // maximum over a point set is always a hull vertex.
        Triangulation::build(self, move |p| (a * p.0 + b * p.1, -b * p.0 + a * p.1))
    }

    /// Splits along chords between boundary lattice points that do not
    /// share an edge; at most `count` pairs, in a fixed order.
    pub fn split_pairs(&self, count: usize) -> Result<Vec<SplitPair>> {
        if self.dim() < 2 {
            return Err(Error::NoValidChord);
        }
        let boundary = self.boundary_lattice_points();
        let edges = self.edges();
        let on_edges: Vec<BTreeSet<usize>> = boundary
            .iter()
            .map(|&p| (0..edges.len()).filter(|&k| edges[k].contains(p)).collect())
            .collect();
        let n = boundary.len();
        let mut out = Vec::new();
        'outer: for i in 0..n {
            for j in i + 1..n {
                if !on_edges[i].is_disjoint(&on_edges[j]) {
                    continue;
                }
                let first = LatticePolygon::hull(&boundary[i..=j])?;
                let mut rest: Vec<Point> = boundary[j..].to_vec();
                rest.extend_from_slice(&boundary[..=i]);
                let second = LatticePolygon::hull(&rest)?;
                out.push(SplitPair {
                    first,
                    second,
                    chord: LatticePolygon::segment(boundary[i], boundary[j]),
                });
                if out.len() >= count {
                    break 'outer;
                }
            }
        }
        if out.is_empty() {
            return Err(Error::NoValidChord);
        }
        Ok(out)
    }
}

fn minmax(it: impl Iterator<Item = i64>) -> (i64, i64) {
    it.fold((i64::MAX, i64::MIN), |(lo, hi), v| (lo.min(v), hi.max(v)))
}

/// `first ∪ second` is the original polygon and `first ∩ second = chord`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitPair {
    pub first: LatticePolygon,
    pub second: LatticePolygon,
    pub chord: LatticePolygon,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Edge {
    pub a: usize,
    pub b: usize,
    pub interior: bool,
}

/// Triangulation of a lattice polygon using every lattice point as a
/// vertex; all triangles have twice-area 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangulation {
    pub points: Vec<Point>,
    /// Counterclockwise index triples.
    pub triangles: Vec<[usize; 3]>,
    pub edges: Vec<Edge>,
    pub interior_vertices: Vec<usize>,
}

impl Triangulation {
    // Incremental insertion in the order given by `key`; each new point
    // is fanned to the hull edges it sees.
    fn build<K: Ord>(poly: &LatticePolygon, key: impl Fn(Point) -> K) -> Result<Self> {
        if poly.dim() < 2 {
            return Err(Error::NotFullDimensional);
        }
        let mut order = poly.lattice_points();
        order.sort_by_key(|&p| key(p));
        let mut points = order.clone();
        points.sort();
        let index: BTreeMap<Point, usize> = points.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let id = |p: Point| index[&p];

        let mut triangles: Vec<[usize; 3]> = Vec::new();
        let push_tri = |a: Point, b: Point, c: Point, tris: &mut Vec<[usize; 3]>| {
            if orient(a, b, c) > 0 {
                tris.push([id(a), id(b), id(c)]);
            } else {
                tris.push([id(a), id(c), id(b)]);
            }
        };

        // Collinear prefix.
        let mut k = 2;
        while orient(order[0], order[1], order[k]) == 0 {
            k += 1;
        }
        let mut chain: Vec<Point> = order[..k].to_vec();
        // Points along a line sorted by an injective linear key are in
        // line order already.
        let apex = order[k];
        for w in chain.windows(2) {
            push_tri(w[0], w[1], apex, &mut triangles);
        }
        if orient(chain[0], chain[chain.len() - 1], apex) < 0 {
            chain.reverse();
        }
        let mut hull: Vec<Point> = chain;
        hull.push(apex);

        for &p in &order[k + 1..] {
            let n = hull.len();
            let visible: Vec<bool> =
                (0..n).map(|i| orient(hull[i], hull[(i + 1) % n], p) < 0).collect();
            let start = (0..n)
                .find(|&i| visible[i] && !visible[(i + n - 1) % n])
                .expect("inserted point is outside the current hull");
            let mut run = 0;
            while visible[(start + run) % n] {
                let (a, b) = (hull[(start + run) % n], hull[(start + run + 1) % n]);
                push_tri(a, b, p, &mut triangles);
                run += 1;
            }
            // Keep the cycle from the end of the visible run back to its
            // start; the vertices strictly inside the run disappear.
            let mut keep = Vec::with_capacity(n + 1);
            let mut i = (start + run) % n;
            loop {
                keep.push(hull[i]);
                if i == start {
                    break;
                }
                i = (i + 1) % n;
            }
            hull = keep;
            hull.push(p);
        }

        let mut edge_count: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for t in &triangles {
            for (a, b) in [(t[0], t[1]), (t[1], t[2]), (t[2], t[0])] {
                *edge_count.entry((a.min(b), a.max(b))).or_insert(0) += 1;
            }
        }
        let edges = edge_count
            .into_iter()
            .map(|((a, b), c)| Edge { a, b, interior: c == 2 })
            .collect();
        let interior_vertices =
            (0..points.len()).filter(|&i| !poly.on_boundary(points[i])).collect();
        Ok(Triangulation { points, triangles, edges, interior_vertices })
    }

    pub fn interior_edges(&self) -> impl Iterator<Item = &Edge> {
        self.edges.iter().filter(|e| e.interior)
    }

    pub fn triangle_points(&self, t: &[usize; 3]) -> [Point; 3] {
        [self.points[t[0]], self.points[t[1]], self.points[t[2]]]
    }

    /// `#triangles - #interior edges + #interior vertices`; equals 1.
    pub fn euler_characteristic(&self) -> i64 {
        self.triangles.len() as i64 - self.interior_edges().count() as i64
            + self.interior_vertices.len() as i64
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn tri() -> LatticePolygon {
        LatticePolygon::standard_triangle()
    }

    #[test]
    fn hull_examples() {
        assert_eq!(tri().vertices(), &[(0, 0), (1, 0), (0, 1)]);
        let seg = LatticePolygon::hull(&[(0, 0), (2, 0), (1, 0)]).unwrap();
        assert_eq!(seg.vertices(), &[(0, 0), (2, 0)]);
        assert_eq!(seg.dim(), 1);
        let pt = LatticePolygon::hull(&[(3, 4), (3, 4)]).unwrap();
        assert_eq!(pt.dim(), 0);
        assert_eq!(LatticePolygon::hull(&[]), Err(Error::EmptyInput));
        let sq = LatticePolygon::hull(&[(1, 1), (0, 0), (1, 0), (0, 1), (1, 0)]).unwrap();
        assert_eq!(sq.vertices(), &[(0, 0), (1, 0), (1, 1), (0, 1)]);
    }

    #[test]
    fn areas() {
        assert_eq!(tri().area2().unwrap(), 1);
        for m in 1..5 {
            assert_eq!(tri().scale(m).area2().unwrap(), m * m);
        }
        assert_eq!(LatticePolygon::rectangle(1, 1).area2().unwrap(), 2);
        assert_eq!(LatticePolygon::segment((0, 0), (1, 1)).area2(), Err(Error::NotFullDimensional));
    }

    #[test]
    fn lattice_point_counts() {
        assert_eq!(tri().lattice_points().len(), 3);
        assert_eq!(tri().scale(2).lattice_points().len(), 6);
        assert_eq!(LatticePolygon::segment((0, 0), (3, 0)).lattice_points().len(), 4);
        for m in 0..6i64 {
            let n = tri().scale(m.max(1)).lattice_points().len() as i64;
            let m = m.max(1);
            assert_eq!(n, (m + 1) * (m + 2) / 2);
        }
    }

    #[test]
    fn triangulation_examples() {
        let t = tri().unimodular_triangulation().unwrap();
        assert_eq!((t.triangles.len(), t.interior_edges().count()), (1, 0));

        let t2 = tri().scale(2).unimodular_triangulation().unwrap();
        assert_eq!(t2.triangles.len(), 4);
        assert_eq!(t2.interior_edges().count(), 3);
        assert!(t2.interior_vertices.is_empty());

        let sq = LatticePolygon::rectangle(2, 2).unimodular_triangulation().unwrap();
        assert_eq!(sq.triangles.len(), 8);
        assert_eq!(sq.interior_edges().count(), 8);
        assert_eq!(sq.interior_vertices.len(), 1);
        assert_eq!(sq.points[sq.interior_vertices[0]], (1, 1));
        assert_eq!(LatticePolygon::segment((0, 0), (2, 0)).unimodular_triangulation(),
                   Err(Error::NotFullDimensional));
    }

    #[test]
    fn triangulations_are_unimodular_and_tile() {
        let polys = [
            tri().scale(3),
            LatticePolygon::rectangle(3, 2),
            LatticePolygon::hull(&[(0, 0), (4, 1), (3, 3), (-1, 2)]).unwrap(),
            LatticePolygon::hull(&[(0, 0), (1, 0), (5, 3)]).unwrap(),
        ];
        for p in &polys {
            for t in [p.unimodular_triangulation().unwrap(), p.unimodular_triangulation_seeded(7).unwrap()] {
                let mut total = 0;
                for tr in &t.triangles {
                    let [a, b, c] = t.triangle_points(tr);
                    assert_eq!(orient(a, b, c), 1);
                    total += 1;
                }
                assert_eq!(total, p.area2().unwrap());
                assert_eq!(t.euler_characteristic(), 1);
                assert_eq!(t.points.len(), p.lattice_points().len());
            }
        }
    }

    #[test]
    fn split_examples() {
        let sq = LatticePolygon::rectangle(1, 1).split_pairs(10).unwrap();
        assert_eq!(sq.len(), 2);
        assert_eq!(sq[0].first, LatticePolygon::hull(&[(0, 0), (1, 0), (1, 1)]).unwrap());
        assert_eq!(sq[0].second, LatticePolygon::hull(&[(1, 1), (0, 1), (0, 0)]).unwrap());
        assert_eq!(sq[0].chord, LatticePolygon::segment((0, 0), (1, 1)));

        let t2 = tri().scale(2).split_pairs(20).unwrap();
        let want = SplitPair {
            first: LatticePolygon::hull(&[(1, 0), (2, 0), (0, 2), (0, 1)]).unwrap(),
            second: tri(),
            chord: LatticePolygon::segment((1, 0), (0, 1)),
        };
        let found = t2.iter().any(|s| {
            s.chord == want.chord
                && ((s.first == want.first && s.second == want.second)
                    || (s.first == want.second && s.second == want.first))
        });
        assert!(found);
        assert_eq!(tri().split_pairs(5), Err(Error::NoValidChord));
    }

    #[test]
    fn indicator_identity_on_rational_points() {
        let p = LatticePolygon::hull(&[(0, 0), (3, 0), (3, 2), (0, 2)]).unwrap();
        let t = p.unimodular_triangulation().unwrap();
        let mut samples = Vec::new();
        for i in -1..=13 {
            for j in -1..=9 {
                samples.push((rat(i, 4), rat(j, 4)));
            }
        }
        samples.push((rat(1, 3), rat(2, 3)));
        assert!(samples.len() >= 20);
        for z in &samples {
            let tri_sum: i64 = t
                .triangles
                .iter()
                .map(|tr| {
                    let [a, b, c] = t.triangle_points(tr);
                    LatticePolygon::hull(&[a, b, c]).unwrap().contains_rational(z) as i64
                })
                .sum();
            let edge_sum: i64 = t
                .interior_edges()
                .map(|e| LatticePolygon::segment(t.points[e.a], t.points[e.b]).contains_rational(z) as i64)
                .sum();
            let vert_sum: i64 = t
                .interior_vertices
                .iter()
                .map(|&v| LatticePolygon::point(t.points[v]).contains_rational(z) as i64)
                .sum();
            assert_eq!(p.contains_rational(z) as i64, tri_sum - edge_sum + vert_sum, "at {z:?}");
        }
    }
}
