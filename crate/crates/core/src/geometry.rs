//! Points and simplices of the sphere `Sⁿ = Δ₊ ∪ Δ₋`.
//!
//! Both charts are the standard simplex in `R^{n+1}`; they are glued by the
//! identity along their common boundary. A point with a zero coordinate lies on
//! that boundary and is always stored in the plus chart.

use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::lp::{feasible_point, maximize, Constraint, LpOutcome, Rel};
use crate::exactnum::matrix::{barycentric_coords, combine, dist2};
use crate::exactnum::rational::{self, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Chart {
    Plus,
    Minus,
}

impl Chart {
    pub fn other(self) -> Chart {
        match self {
            Chart::Plus => Chart::Minus,
            Chart::Minus => Chart::Plus,
        }
    }
}

impl fmt::Display for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Chart::Plus => "plus",
            Chart::Minus => "minus",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ChartPoint {
    pub chart: Chart,
    #[serde(with = "rational::serde_vec")]
    pub coords: Vec<Rational>,
}

impl ChartPoint {
    pub fn new(chart: Chart, coords: Vec<Rational>) -> Self {
        let chart = if coords.iter().any(|x| x.is_zero()) {
            Chart::Plus
        } else {
            chart
        };
        ChartPoint { chart, coords }
    }

    pub fn plus(coords: Vec<Rational>) -> Self {
        Self::new(Chart::Plus, coords)
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn on_boundary(&self) -> bool {
        self.coords.iter().any(|x| x.is_zero())
    }

    /// Checks membership in the closed standard simplex.
    pub fn validate(&self) -> Result<()> {
        if self.coords.iter().any(|x| x.is_negative()) {
            return Err(Error::Domain(format!("negative coordinate in {self}")));
        }
        let s: Rational = self.coords.iter().sum();
        if s != rational::one() {
            return Err(Error::Domain(format!("coordinates of {self} do not sum to 1")));
        }
        Ok(())
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.coords.iter().map(rational::to_f64).collect()
    }
}

impl fmt::Display for ChartPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.coords.iter().map(rational::to_string).collect();
        write!(f, "{}({})", self.chart, c.join(", "))
    }
}

/// Squared distance in the piecewise Euclidean metric.
///
/// Points in different charts are joined through the common boundary; the
/// returned value is then the square of the shortest broken path through a
/// boundary point, which is bounded below by the straight-line value. We only
/// ever compare points from the same chart or boundary points, so the exact
/// value is the Euclidean one in that case and `None` otherwise.
pub fn chart_dist2(a: &ChartPoint, b: &ChartPoint) -> Option<Rational> {
    if a.chart == b.chart || a.on_boundary() || b.on_boundary() {
        Some(dist2(&a.coords, &b.coords))
    } else {
        None
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ChartSimplex {
    pub chart: Chart,
    #[serde(with = "rational::serde_mat")]
    pub vertices: Vec<Vec<Rational>>,
}

impl ChartSimplex {
    pub fn new(chart: Chart, vertices: Vec<Vec<Rational>>) -> Self {
        ChartSimplex { chart, vertices }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertex_points(&self) -> Vec<ChartPoint> {
        self.vertices
            .iter()
            .map(|v| ChartPoint::new(self.chart, v.clone()))
            .collect()
    }

    pub fn barycenter(&self) -> ChartPoint {
        let m = self.vertices.len() as i64;
        let w = vec![rational::rat(1, m); self.vertices.len()];
        ChartPoint::new(self.chart, combine(&w, &self.vertices))
    }

    pub fn point_at(&self, lambda: &[Rational]) -> ChartPoint {
        ChartPoint::new(self.chart, combine(lambda, &self.vertices))
    }

    /// Affine coordinates of `p`, or `None` if `p` lives in the other open chart.
    pub fn coords_of(&self, p: &ChartPoint) -> Result<Option<Vec<Rational>>> {
        if p.chart != self.chart && !p.on_boundary() {
            return Ok(None);
        }
        barycentric_coords(&p.coords, &self.vertices).map(Some)
    }

    /// Closed-simplex membership.
    pub fn contains(&self, p: &ChartPoint) -> Result<bool> {
        match self.coords_of(p) {
            Ok(Some(l)) => Ok(l.iter().all(|x| !x.is_negative())),
            Ok(None) => Ok(false),
            Err(Error::Domain(_)) => Ok(false),
            Err(e) => Err(e),
        }
    }

    /// Largest squared edge length.
    pub fn diameter2(&self) -> Rational {
        let mut best = Rational::zero();
        for i in 0..self.vertices.len() {
            for j in i + 1..self.vertices.len() {
                let d = dist2(&self.vertices[i], &self.vertices[j]);
                if d > best {
                    best = d;
                }
            }
        }
        best
    }

    /// Volume up to the constant `1/N!`: `|det|` of the vertex matrix.
    pub fn det_volume(&self) -> Result<Rational> {
        let m = crate::exactnum::RMatrix::from_rows(&self.vertices)?;
        Ok(m.det()?.abs())
    }
}

/// Equality constraints tying `Σ λ_i a_i = Σ μ_j b_j` with both weight
/// vectors summing to one; variables are `λ`, then `μ`, then `extra` more.
fn coupling(a: &[Vec<Rational>], b: &[Vec<Rational>], extra: usize) -> Vec<Constraint> {
    let (na, nb) = (a.len(), b.len());
    let width = na + nb + extra;
    let mut cons = Vec::new();
    let mut sa = vec![Rational::zero(); width];
    let mut sb = vec![Rational::zero(); width];
    for i in 0..na {
        sa[i] = rational::one();
    }
    for j in 0..nb {
        sb[na + j] = rational::one();
    }
    cons.push(Constraint::new(sa, Rel::Eq, rational::one()));
    cons.push(Constraint::new(sb, Rel::Eq, rational::one()));
    let dim = a.first().or(b.first()).map_or(0, Vec::len);
    for c in 0..dim {
        let mut row = vec![Rational::zero(); width];
        for i in 0..na {
            row[i] = a[i][c].clone();
        }
        for j in 0..nb {
            row[na + j] = -b[j][c].clone();
        }
        cons.push(Constraint::new(row, Rel::Eq, Rational::zero()));
    }
    cons
}

/// Extra constraint forcing coordinate `c` of the common point to vanish.
fn on_face(a: &[Vec<Rational>], width: usize, c: usize) -> Constraint {
    let mut row = vec![Rational::zero(); width];
    for (i, v) in a.iter().enumerate() {
        row[i] = v[c].clone();
    }
    Constraint::new(row, Rel::Eq, Rational::zero())
}

/// Systems describing `a ∩ b`: one for a common chart, one per boundary
/// face when the charts differ.
fn meet_systems(a: &ChartSimplex, b: &ChartSimplex, extra: usize) -> Vec<Vec<Constraint>> {
    let base = coupling(&a.vertices, &b.vertices, extra);
    if a.chart == b.chart {
        return vec![base];
    }
    let width = a.len() + b.len() + extra;
    let dim = a.vertices.first().map_or(0, Vec::len);
    (0..dim)
        .map(|c| {
            let mut s = base.clone();
            s.push(on_face(&a.vertices, width, c));
            s
        })
        .collect()
}

/// Whether the closed simplices meet.
pub fn closed_intersect(a: &ChartSimplex, b: &ChartSimplex) -> bool {
    let width = a.len() + b.len();
    meet_systems(a, b, 0)
        .iter()
        .any(|s| feasible_point(width, s).is_some())
}

/// Disjoint coordinate ranges in some coordinate.
fn boxes_apart(a: &ChartSimplex, b: &ChartSimplex) -> bool {
    let dim = a.vertices.first().map_or(0, Vec::len);
    (0..dim).any(|c| {
        let lo = |s: &ChartSimplex| s.vertices.iter().map(|v| &v[c]).min().cloned();
        let hi = |s: &ChartSimplex| s.vertices.iter().map(|v| &v[c]).max().cloned();
        hi(a) <= lo(b) || hi(b) <= lo(a)
    })
}

/// Some facet hyperplane of `a` has all of `b` on its far side.
fn facet_separates(a: &ChartSimplex, b: &ChartSimplex) -> bool {
    let coords: Vec<Vec<Rational>> = match b
        .vertices
        .iter()
        .map(|v| barycentric_coords(v, &a.vertices))
        .collect::<Result<Vec<_>>>()
    {
        Ok(c) => c,
        Err(_) => return false,
    };
    (0..a.len()).any(|i| coords.iter().all(|l| !l[i].is_positive()))
}

/// Whether the open simplices (relative to their chart) meet. Both are
/// assumed full-dimensional.
pub fn interiors_intersect(a: &ChartSimplex, b: &ChartSimplex) -> bool {
    if a.chart != b.chart {
        return false;
    }
    if boxes_apart(a, b) || facet_separates(a, b) || facet_separates(b, a) {
        return false;
    }
    let (na, nb) = (a.len(), b.len());
    let width = na + nb + 1;
    let mut cons = coupling(&a.vertices, &b.vertices, 1);
    for i in 0..na + nb {
        let mut row = vec![Rational::zero(); width];
        row[i] = rational::one();
        row[na + nb] = -rational::one();
        cons.push(Constraint::new(row, Rel::Ge, Rational::zero()));
    }
    let mut c = vec![Rational::zero(); width];
    c[na + nb] = rational::one();
    match maximize(&c, &cons) {
        LpOutcome::Optimal { value, .. } => value.is_positive(),
        LpOutcome::Unbounded => true,
        LpOutcome::Infeasible => false,
    }
}

/// Vertices shared by the two simplices, as points of the sphere.
pub fn common_vertices(a: &ChartSimplex, b: &ChartSimplex) -> Vec<ChartPoint> {
    let pb = b.vertex_points();
    a.vertex_points().into_iter().filter(|p| pb.contains(p)).collect()
}

/// Whether `a ∩ b` lies in the convex hull of the common vertices (possibly empty).
/// Across charts the meet lies on the boundary sphere, so only containment is tested.
pub fn meet_is_common_face(a: &ChartSimplex, b: &ChartSimplex) -> bool {
    let common = common_vertices(a, b);
    let pts = a.vertex_points();
    let width = a.len() + b.len();
    let mut c = vec![Rational::zero(); width];
    for (i, p) in pts.iter().enumerate() {
        if !common.contains(p) {
            c[i] = rational::one();
        }
    }
    // a point of the meet using a non-common vertex of `a` or of `b`
    let pb = b.vertex_points();
    for (j, p) in pb.iter().enumerate() {
        if !common.contains(p) {
            c[a.len() + j] = rational::one();
        }
    }
    meet_systems(a, b, 0).iter().all(|s| match maximize(&c, s) {
        LpOutcome::Optimal { value, .. } => value.is_zero(),
        LpOutcome::Infeasible => true,
        LpOutcome::Unbounded => false,
    })
}

/// `a ⊆ b` for closed simplices in the same chart.
pub fn simplex_contains(b: &ChartSimplex, a: &ChartSimplex) -> Result<bool> {
    for p in a.vertex_points() {
        if !b.contains(&p)? {
            return Ok(false);
        }
    }
    Ok(a.chart == b.chart || a.vertex_points().iter().all(ChartPoint::on_boundary))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational::{int, rat};

    #[test]
    fn boundary_points_live_in_plus_chart() {
        let p = ChartPoint::new(Chart::Minus, vec![rat(1, 2), rat(1, 2), int(0)]);
        assert_eq!(p.chart, Chart::Plus);
        let q = ChartPoint::new(Chart::Minus, vec![rat(1, 2), rat(1, 4), rat(1, 4)]);
        assert_eq!(q.chart, Chart::Minus);
        assert!(q.validate().is_ok());
    }

    fn tri(chart: Chart, v: [[i64; 3]; 3], d: i64) -> ChartSimplex {
        ChartSimplex::new(chart, v.iter().map(|r| r.iter().map(|&x| rat(x, d)).collect()).collect())
    }

    #[test]
    fn intersection_predicates() {
        let whole = tri(Chart::Plus, [[1, 0, 0], [0, 1, 0], [0, 0, 1]], 1);
        let left = tri(Chart::Plus, [[2, 0, 0], [0, 2, 0], [1, 0, 1]], 2);
        let right = tri(Chart::Plus, [[0, 2, 0], [0, 0, 2], [1, 0, 1]], 2);
        assert!(interiors_intersect(&whole, &left));
        assert!(!interiors_intersect(&left, &right));
        assert!(closed_intersect(&left, &right));
        assert!(meet_is_common_face(&left, &right));
        assert!(simplex_contains(&whole, &left).unwrap());
        assert!(!simplex_contains(&left, &whole).unwrap());
        let minus = tri(Chart::Minus, [[1, 0, 0], [0, 1, 0], [0, 0, 1]], 1);
        assert!(!interiors_intersect(&minus, &left));
        assert!(closed_intersect(&minus, &left));
        assert!(meet_is_common_face(&minus, &whole));
        assert!(!meet_is_common_face(&minus, &left));
        let inner = tri(Chart::Minus, [[2, 1, 1], [1, 2, 1], [1, 1, 2]], 4);
        assert!(!closed_intersect(&inner, &left));
        assert!(meet_is_common_face(&inner, &left));
    }

    #[test]
    fn simplex_membership() {
        let s = ChartSimplex::new(
            Chart::Plus,
            vec![
                vec![int(1), int(0), int(0)],
                vec![int(0), int(1), int(0)],
                vec![rat(1, 3), rat(1, 3), rat(1, 3)],
            ],
        );
        assert!(s.contains(&s.barycenter()).unwrap());
        let out = ChartPoint::plus(vec![int(0), int(0), int(1)]);
        assert!(!s.contains(&out).unwrap());
        let minus = ChartPoint::new(Chart::Minus, vec![rat(1, 2), rat(1, 4), rat(1, 4)]);
        assert!(!s.contains(&minus).unwrap());
        assert_eq!(s.diameter2(), int(2));
    }
}
