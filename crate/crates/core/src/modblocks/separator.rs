//! Separators `[Δ, S]` and their partial prisms.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::matrix::barycentric_coords;
use crate::exactnum::rational::{self, Rational};
use crate::exactnum::RMatrix;
use crate::geometry::{Chart, ChartPoint, ChartSimplex};

/// Checks that every weight lies in `(0, 1]`.
pub fn check_weights(s: &[Rational]) -> Result<()> {
    for w in s {
        if !w.is_positive() || *w > rational::one() {
            return Err(Error::Domain(format!(
                "weight {} is outside (0, 1]",
                rational::to_string(w)
            )));
        }
    }
    Ok(())
}

/// `β_S = Σ S_i v_i / Σ S_i`.
pub fn weighted_center(v: &[Vec<Rational>], s: &[Rational]) -> Vec<Rational> {
    let total: Rational = s.iter().sum();
    let dim = v.first().map_or(0, Vec::len);
    (0..dim)
        .map(|c| v.iter().zip(s).map(|(p, w)| &p[c] * w).sum::<Rational>() / &total)
        .collect()
}

/// `v*_i = S_i v_i + (1 - S_i) β_S`.
pub fn shrink_vertices(v: &[Vec<Rational>], s: &[Rational]) -> Result<Vec<Vec<Rational>>> {
    if v.len() != s.len() {
        return Err(Error::Dimension(format!("{} vertices but {} weights", v.len(), s.len())));
    }
    check_weights(s)?;
    let beta = weighted_center(v, s);
    Ok(v.iter()
        .zip(s)
        .map(|(p, w)| {
            let u = rational::one() - w;
            p.iter().zip(&beta).map(|(x, b)| x * w + b * &u).collect()
        })
        .collect())
}

/// `Δ_S` as a simplex in the chart of `Δ`.
pub fn shrink(delta: &ChartSimplex, s: &[Rational]) -> Result<ChartSimplex> {
    Ok(ChartSimplex::new(delta.chart, shrink_vertices(&delta.vertices, s)?))
}

/// Vertex of a prism triangulation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PVert {
    Inner(usize),
    Outer(usize),
    /// Center of mass of the sub-prism over these indices.
    Center(Vec<usize>),
}

impl PVert {
    /// The canonical involution on triangulation vertices.
    pub fn flip(&self) -> PVert {
        match self {
            PVert::Inner(i) => PVert::Outer(*i),
            PVert::Outer(i) => PVert::Inner(*i),
            c => c.clone(),
        }
    }
}

/// The region between matched inner and outer cuts of a simplex cone.
///
/// `inner[l]` and `outer[l]` are indexed by the global vertex index `l` and
/// lie on a common ray from the cone apex.
#[derive(Clone, Debug, Serialize)]
pub struct PartialPrism {
    pub chart: Chart,
    pub index: Vec<usize>,
    #[serde(with = "rational::serde_mat")]
    pub inner: Vec<Vec<Rational>>,
    #[serde(with = "rational::serde_mat")]
    pub outer: Vec<Vec<Rational>>,
    pub degenerate: bool,
    pub simplices: Vec<Vec<PVert>>,
    #[serde(skip)]
    centers: BTreeMap<Vec<usize>, Vec<Rational>>,
}

impl PartialPrism {
    /// Prism over the indices `index`; `inner`, `outer` hold all `n + 1` vertices.
    pub fn new(chart: Chart, index: Vec<usize>, inner: Vec<Vec<Rational>>, outer: Vec<Vec<Rational>>) -> Self {
        let mut p = PartialPrism {
            chart,
            degenerate: index.iter().all(|&l| inner[l] == outer[l]),
            index,
            inner,
            outer,
            simplices: Vec::new(),
            centers: BTreeMap::new(),
        };
        let idx = p.index.clone();
        p.simplices = p.triangulate(&idx);
        p
    }

    pub fn point(&self, v: &PVert) -> &[Rational] {
        match v {
            PVert::Inner(l) => &self.inner[*l],
            PVert::Outer(l) => &self.outer[*l],
            PVert::Center(c) => &self.centers[c],
        }
    }

    fn flat(&self, idx: &[usize]) -> bool {
        idx.iter().all(|&l| self.inner[l] == self.outer[l])
    }

    /// Canonical triangulation: the boundary faces triangulated recursively,
    /// coned to the center of mass. A flat prism is its inner face.
    fn triangulate(&mut self, idx: &[usize]) -> Vec<Vec<PVert>> {
        if self.flat(idx) {
            return vec![idx.iter().map(|&l| PVert::Inner(l)).collect()];
        }
        if idx.len() == 1 {
            return vec![vec![PVert::Inner(idx[0]), PVert::Outer(idx[0])]];
        }
        let mut faces: Vec<Vec<PVert>> = vec![
            idx.iter().map(|&l| PVert::Inner(l)).collect(),
            idx.iter().map(|&l| PVert::Outer(l)).collect(),
        ];
        for j in 0..idx.len() {
            let sub: Vec<usize> = idx.iter().enumerate().filter(|&(i, _)| i != j).map(|(_, &l)| l).collect();
            for f in self.triangulate(&sub) {
                if f.len() == idx.len() {
                    faces.push(f);
                }
            }
        }
        let mut pts: Vec<Vec<Rational>> = Vec::new();
        for &l in idx {
            for p in [&self.inner[l], &self.outer[l]] {
                if !pts.contains(p) {
                    pts.push(p.clone());
                }
            }
        }
        let w = vec![rational::rat(1, pts.len() as i64); pts.len()];
        self.centers
            .insert(idx.to_vec(), crate::exactnum::matrix::combine(&w, &pts));
        faces
            .into_iter()
            .map(|mut f| {
                f.push(PVert::Center(idx.to_vec()));
                f
            })
            .collect()
    }

    pub fn simplex(&self, i: usize) -> ChartSimplex {
        ChartSimplex::new(
            self.chart,
            self.simplices[i].iter().map(|v| self.point(v).to_vec()).collect(),
        )
    }

    /// Sum of `|det|` over the triangulation; zero for a flat prism.
    pub fn volume(&self) -> Result<Rational> {
        if self.degenerate {
            return Ok(Rational::zero());
        }
        let mut total = Rational::zero();
        for i in 0..self.simplices.len() {
            total += self.simplex(i).det_volume()?;
        }
        Ok(total)
    }

    /// A triangulation simplex containing `p`, with barycentric coordinates.
    fn locate(&self, p: &ChartPoint) -> Result<Option<(usize, Vec<Rational>)>> {
        if p.chart != self.chart && !p.on_boundary() {
            return Ok(None);
        }
        for i in 0..self.simplices.len() {
            let verts = self.simplex(i).vertices;
            match barycentric_coords(&p.coords, &verts) {
                Ok(l) if l.iter().all(|x| !x.is_negative()) => return Ok(Some((i, l))),
                Ok(_) | Err(Error::Domain(_)) | Err(Error::Singular(_)) => {}
                Err(e) => return Err(e),
            }
        }
        Ok(None)
    }

    pub fn contains(&self, p: &ChartPoint) -> Result<bool> {
        Ok(self.locate(p)?.is_some())
    }

    /// The boundary-swapping involution, affine on each triangulation simplex.
    pub fn involution(&self, p: &ChartPoint) -> Result<ChartPoint> {
        let (i, l) = self
            .locate(p)?
            .ok_or_else(|| Error::Domain(format!("{p} is not in the prism")))?;
        let img: Vec<Vec<Rational>> = self.simplices[i].iter().map(|v| self.point(&v.flip()).to_vec()).collect();
        Ok(ChartSimplex::new(self.chart, img).point_at(&l))
    }
}

/// The collar `[Δ, S]` between `Δ` and `Δ_S`.
#[derive(Clone, Debug, Serialize)]
pub struct Separator {
    pub base: ChartSimplex,
    #[serde(with = "rational::serde_vec")]
    pub weights: Vec<Rational>,
    pub inner: ChartSimplex,
    #[serde(with = "rational::serde_vec")]
    pub center: Vec<Rational>,
    pub prisms: Vec<PartialPrism>,
}

pub fn make_separator(delta: &ChartSimplex, s: &[Rational]) -> Result<Separator> {
    let inner = shrink(delta, s)?;
    let n1 = delta.len();
    let prisms = (0..n1)
        .map(|i| {
            let idx: Vec<usize> = (0..n1).filter(|&l| l != i).collect();
            PartialPrism::new(delta.chart, idx, inner.vertices.clone(), delta.vertices.clone())
        })
        .collect();
    Ok(Separator {
        center: weighted_center(&delta.vertices, s),
        base: delta.clone(),
        weights: s.to_vec(),
        inner,
        prisms,
    })
}

impl Separator {
    pub fn is_flat(&self) -> bool {
        self.prisms.iter().all(|p| p.degenerate)
    }

    /// All triangulation simplices of the non-flat prisms.
    pub fn triangulation(&self) -> Vec<ChartSimplex> {
        self.prisms
            .iter()
            .filter(|p| !p.degenerate)
            .flat_map(|p| (0..p.simplices.len()).map(move |i| p.simplex(i)))
            .collect()
    }

    /// `vol(Δ) - vol(Δ_S)` and `Σ vol(Π_i)`.
    pub fn volume_identity(&self) -> Result<(Rational, Rational)> {
        let lhs = self.base.det_volume()? - self.inner.det_volume()?;
        let mut rhs = Rational::zero();
        for p in &self.prisms {
            rhs += p.volume()?;
        }
        Ok((lhs, rhs))
    }

    /// The canonical involution, turning the collar inside out.
    pub fn involution(&self, p: &ChartPoint) -> Result<ChartPoint> {
        for pr in self.prisms.iter().filter(|p| !p.degenerate) {
            if pr.contains(p)? {
                return pr.involution(p);
            }
        }
        for pr in &self.prisms {
            if pr.contains(p)? {
                return Ok(p.clone());
            }
        }
        Err(Error::Domain(format!("{p} is not in the separator")))
    }

    /// `T_S`: the affine map with `T_S(v*_i) = v_i`, as a matrix acting on columns.
    pub fn rescaling(&self) -> Result<RMatrix> {
        let inner = RMatrix::from_cols(&self.inner.vertices)?;
        let outer = RMatrix::from_cols(&self.base.vertices)?;
        outer.mul(&inner.inverse()?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational::{int, rat};
    use proptest::prelude::*;

    fn unit(n: usize) -> ChartSimplex {
        ChartSimplex::new(
            Chart::Plus,
            (0..n)
                .map(|i| (0..n).map(|j| int((i == j) as i64)).collect())
                .collect(),
        )
    }

    fn weights() -> impl Strategy<Value = Vec<Rational>> {
        prop::collection::vec(1i64..=8, 3).prop_map(|v| v.into_iter().map(|x| rat(x, 8)).collect())
    }

    #[test]
    fn unit_weights_are_flat() {
        let s = make_separator(&unit(3), &[int(1), int(1), int(1)]).unwrap();
        assert_eq!(s.inner, unit(3));
        assert!(s.is_flat());
        assert_eq!(s.volume_identity().unwrap(), (Rational::zero(), Rational::zero()));
    }

    #[test]
    fn half_weights_on_triangle() {
        let d = unit(3);
        let s = make_separator(&d, &[rat(1, 2), rat(1, 2), rat(1, 2)]).unwrap();
        let bary = d.barycenter().coords;
        assert_eq!(s.center, bary);
        for (v, w) in d.vertices.iter().zip(&s.inner.vertices) {
            let mid: Vec<Rational> = v.iter().zip(&bary).map(|(a, b)| (a + b) / int(2)).collect();
            assert_eq!(*w, mid);
        }
        assert_eq!(s.prisms.len(), 3);
        let (l, r) = s.volume_identity().unwrap();
        assert_eq!(l, r);
    }

    #[test]
    fn bad_weights() {
        assert!(matches!(make_separator(&unit(2), &[int(0), int(1)]), Err(Error::Domain(_))));
        assert!(matches!(make_separator(&unit(2), &[int(2), int(1)]), Err(Error::Domain(_))));
    }

    #[test]
    fn interval_prisms() {
        let s = make_separator(&unit(2), &[rat(1, 2), int(1)]).unwrap();
        // prism over vertex 0 reverses [v*_0, v_0]; prism over vertex 1 is a point
        let p0 = &s.prisms[1];
        assert!(!p0.degenerate);
        let a = ChartPoint::plus(s.inner.vertices[0].clone());
        let b = ChartPoint::plus(unit(2).vertices[0].clone());
        assert_eq!(p0.involution(&a).unwrap(), b);
        assert!(s.prisms[0].degenerate);
        let v1 = ChartPoint::plus(unit(2).vertices[1].clone());
        assert_eq!(s.prisms[0].involution(&v1).unwrap(), v1);
    }

    #[test]
    fn rescaling_inverts_shrink() {
        let d = unit(3);
        let s = make_separator(&d, &[rat(1, 3), rat(2, 3), int(1)]).unwrap();
        let t = s.rescaling().unwrap();
        for (i, v) in s.inner.vertices.iter().enumerate() {
            assert_eq!(t.mul_vec(v).unwrap(), d.vertices[i]);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(20))]

        #[test]
        fn center_is_barycenter_of_inner(s in weights()) {
            let sep = make_separator(&unit(3), &s).unwrap();
            prop_assert_eq!(sep.inner.barycenter().coords, sep.center.clone());
            let (l, r) = sep.volume_identity().unwrap();
            prop_assert_eq!(l, r);
            for (i, (v, w)) in unit(3).vertices.iter().zip(&sep.inner.vertices).enumerate() {
                prop_assert_eq!(v == w, s[i] == int(1));
            }
        }

        #[test]
        fn involution_is_an_involution(s in weights(), a in 0i64..50, b in 0i64..50) {
            let sep = make_separator(&unit(3), &s).unwrap();
            let tri = sep.triangulation();
            prop_assume!(!tri.is_empty());
            let cell = &tri[(a as usize) % tri.len()];
            let l = [rat(1 + b, 100), rat(1 + a, 100), rat(98 - a - b, 100)];
            prop_assume!(l[2].is_positive());
            let p = cell.point_at(&l);
            let q = sep.involution(&p).unwrap();
            prop_assert_eq!(sep.involution(&q).unwrap(), p);
        }

        #[test]
        fn affinely_natural(s in weights(), m in prop::collection::vec(1i64..5, 9)) {
            // columns of a positive matrix normalized to sum 1 map the unit simplex affinely
            let cols: Vec<Vec<Rational>> = (0..3)
                .map(|c| {
                    let tot: i64 = (0..3).map(|r| m[3 * r + c]).sum();
                    (0..3).map(|r| rat(m[3 * r + c], tot)).collect()
                })
                .collect();
            let t = RMatrix::from_cols(&cols).unwrap();
            prop_assume!(t.det().unwrap() != Rational::zero());
            let img = ChartSimplex::new(Chart::Plus, cols.clone());
            let a = make_separator(&img, &s).unwrap();
            let b = make_separator(&unit(3), &s).unwrap();
            for (x, y) in a.inner.vertices.iter().zip(&b.inner.vertices) {
                prop_assert_eq!(x.clone(), t.mul_vec(y).unwrap());
            }
        }
    }
}
