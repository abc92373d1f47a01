//! Warped blocks `Ω_S = P_S(Ω)`.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::separator::check_weights;
use crate::blockcore::{ModularBlock, VertexLabelABC};
use crate::error::{Error, Result};
use crate::exactnum::matrix::barycentric_coords;
use crate::exactnum::rational::{self, Rational};
use crate::geometry::{Chart, ChartPoint, ChartSimplex};
use crate::netbuild::labelling::{coord_id, terminal_ids};

/// `P_S` in barycentric coordinates: `λ_i ↦ S_i λ_i / Σ S_j λ_j`.
pub fn warp_coords(lambda: &[Rational], s: &[Rational]) -> Result<Vec<Rational>> {
    if lambda.len() != s.len() {
        return Err(Error::Dimension(format!("{} coordinates, {} weights", lambda.len(), s.len())));
    }
    let d: Rational = lambda.iter().zip(s).map(|(l, w)| l * w).sum();
    if !d.is_positive() {
        return Err(Error::Domain("point outside the simplex".into()));
    }
    Ok(lambda.iter().zip(s).map(|(l, w)| l * w / &d).collect())
}

/// `P_S` for the simplex `delta` weighted by `s`.
pub fn warp_point(delta: &ChartSimplex, s: &[Rational], p: &ChartPoint) -> Result<ChartPoint> {
    let l = delta
        .coords_of(p)?
        .ok_or_else(|| Error::Domain(format!("{p} is in the other chart")))?;
    Ok(delta.point_at(&warp_coords(&l, s)?))
}

/// A model block with its vertices moved by `P_S`.
///
/// `weights` are indexed by vertex id; only the `A ∪ C` weights enter `P_S`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WarpedBlock {
    pub model: ModularBlock,
    #[serde(with = "rational::serde_vec")]
    pub weights: Vec<Rational>,
    #[serde(with = "rational::serde_mat")]
    pub vertices: Vec<Vec<Rational>>,
}

/// Weights of the coordinate vertices of `Δ₀` taken from per-id weights.
pub fn coord_weights(k: usize, by_id: &[Rational]) -> Vec<Rational> {
    (0..2 * k).map(|i| by_id[coord_id(k, i)].clone()).collect()
}

pub fn warp(b: &ModularBlock, weights: &[Rational]) -> Result<WarpedBlock> {
    let k = b.k();
    if weights.len() != 3 * k {
        return Err(Error::Dimension(format!("{} weights for {} vertices", weights.len(), 3 * k)));
    }
    check_weights(weights)?;
    let s = coord_weights(k, weights);
    let vertices = (0..3 * k)
        .map(|id| warp_coords(b.vertex_by_id(id), &s))
        .collect::<Result<_>>()?;
    Ok(WarpedBlock {
        model: b.clone(),
        weights: weights.to_vec(),
        vertices,
    })
}

impl WarpedBlock {
    pub fn k(&self) -> usize {
        self.model.k()
    }

    fn simplex(&self, ids: &[usize]) -> ChartSimplex {
        ChartSimplex::new(Chart::Plus, ids.iter().map(|&i| self.vertices[i].clone()).collect())
    }

    pub fn core_simplex(&self, i: usize) -> ChartSimplex {
        self.simplex(&self.model.core_sets()[i].ids())
    }

    pub fn core_simplices(&self) -> Vec<ChartSimplex> {
        (0..self.model.core_sets().len()).map(|i| self.core_simplex(i)).collect()
    }

    /// The filled-in terminal `Δ_{j,S}` in terminal order.
    pub fn terminal(&self, j: usize) -> ChartSimplex {
        self.simplex(&terminal_ids(self.k(), j))
    }

    pub fn terminal_weights(&self, j: usize) -> Vec<Rational> {
        terminal_ids(self.k(), j)
            .into_iter()
            .map(|i| self.weights[i].clone())
            .collect()
    }

    fn locate(&self, verts: &dyn Fn(usize) -> Vec<Vec<Rational>>, p: &ChartPoint) -> Result<Option<(usize, Vec<Rational>)>> {
        if p.chart != Chart::Plus {
            return Ok(None);
        }
        for i in 0..self.model.core_sets().len() {
            match barycentric_coords(&p.coords, &verts(i)) {
                Ok(l) if l.iter().all(|x| !x.is_negative()) => return Ok(Some((i, l))),
                Ok(_) | Err(Error::Domain(_)) => {}
                Err(e) => return Err(e),
            }
        }
        Ok(None)
    }

    /// `W_S`: the simplexwise affine map `Ω → Ω_S`.
    pub fn w_s(&self, p: &ChartPoint) -> Result<ChartPoint> {
        let model = |i: usize| self.model.core_simplex(i).vertices;
        let (i, l) = self
            .locate(&model, p)?
            .ok_or_else(|| Error::Domain(format!("{p} is not in the block")))?;
        Ok(self.core_simplex(i).point_at(&l))
    }

    /// `W_S⁻¹`.
    pub fn w_s_inv(&self, p: &ChartPoint) -> Result<ChartPoint> {
        let warped = |i: usize| self.core_simplex(i).vertices;
        let (i, l) = self
            .locate(&warped, p)?
            .ok_or_else(|| Error::Domain(format!("{p} is not in the warped block")))?;
        Ok(self.model.core_simplex(i).point_at(&l))
    }

    /// `σ_S = W_S σ W_S⁻¹`.
    pub fn sigma_apply(&self, p: &ChartPoint) -> Result<ChartPoint> {
        self.w_s(&self.model.sigma_apply(&self.w_s_inv(p)?)?)
    }

    pub fn vertex(&self, l: VertexLabelABC) -> &[Rational] {
        &self.vertices[l.id(self.k())]
    }

    /// True when `P_S` is the identity (all coordinate weights equal).
    pub fn is_trivial(&self) -> bool {
        let s = coord_weights(self.k(), &self.weights);
        s.iter().all(|w| *w == s[0]) || s.iter().all(Zero::is_zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blockcore::build_block;
    use crate::exactnum::rational::{int, rat};
    use proptest::prelude::*;

    fn block_weights(k: usize, per_index: &[i64]) -> Vec<Rational> {
        (0..3 * k).map(|id| rat(per_index[id % k], 8)).collect()
    }

    #[test]
    fn constant_weights_do_nothing() {
        let b = build_block(3).unwrap();
        let w = warp(&b, &vec![rat(1, 3); 9]).unwrap();
        for id in 0..9 {
            assert_eq!(w.vertices[id], b.vertex_by_id(id));
        }
        assert!(w.is_trivial());
    }

    #[test]
    fn warp_fixes_outer_vertices() {
        let b = build_block(2).unwrap();
        let w = warp(&b, &block_weights(2, &[1, 6])).unwrap();
        assert_eq!(w.terminal(0), b.delta(0));
        assert_ne!(w.terminal(1), b.delta(1));
    }

    #[test]
    fn warp_is_projective() {
        let d = build_block(2).unwrap().delta(0);
        let s = [rat(1, 2), rat(1, 5), int(1), rat(3, 4)];
        let a = ChartPoint::plus(vec![rat(1, 2), rat(1, 4), rat(1, 8), rat(1, 8)]);
        let b = ChartPoint::plus(vec![rat(1, 8), rat(1, 8), rat(1, 4), rat(1, 2)]);
        let mid = ChartPoint::plus(a.coords.iter().zip(&b.coords).map(|(x, y)| (x + y) / int(2)).collect());
        let (pa, pb, pm) = (
            warp_point(&d, &s, &a).unwrap(),
            warp_point(&d, &s, &b).unwrap(),
            warp_point(&d, &s, &mid).unwrap(),
        );
        // pm = pa + t (pb - pa) for one t in every coordinate
        let t = (&pm.coords[0] - &pa.coords[0]) / (&pb.coords[0] - &pa.coords[0]);
        for c in 0..4 {
            assert_eq!(&pm.coords[c] - &pa.coords[c], &t * (&pb.coords[c] - &pa.coords[c]));
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(12))]

        #[test]
        fn sigma_s_has_order_three_and_is_affine_on_terminals(
            s in prop::collection::vec(1i64..=8, 2),
            l in prop::collection::vec(1i64..20, 4),
        ) {
            let b = build_block(2).unwrap();
            let w = warp(&b, &block_weights(2, &s)).unwrap();
            // a point of a facet of each terminal, and its σ_S image
            for j in 0..3 {
                let t = w.terminal(j);
                let mut lam: Vec<Rational> = l.iter().map(|&x| int(x)).collect();
                lam[j] = Rational::zero();
                let tot: Rational = lam.iter().sum();
                let lam: Vec<Rational> = lam.iter().map(|x| x / &tot).collect();
                let p = t.point_at(&lam);
                let q = w.sigma_apply(&p).unwrap();
                let img = ChartSimplex::new(
                    Chart::Plus,
                    t.vertex_points().iter().map(|v| w.sigma_apply(v).unwrap().coords).collect(),
                );
                prop_assert_eq!(&q, &img.point_at(&lam));
                let back = w.sigma_apply(&w.sigma_apply(&q).unwrap()).unwrap();
                prop_assert_eq!(back, p);
            }
        }

        #[test]
        fn warp_is_affinely_natural(s in prop::collection::vec(1i64..=8, 3), m in prop::collection::vec(1i64..5, 9)) {
            let cols: Vec<Vec<Rational>> = (0..3)
                .map(|c| {
                    let tot: i64 = (0..3).map(|r| m[3 * r + c]).sum();
                    (0..3).map(|r| rat(m[3 * r + c], tot)).collect()
                })
                .collect();
            let t = crate::exactnum::RMatrix::from_cols(&cols).unwrap();
            prop_assume!(t.det().unwrap() != Rational::zero());
            let unit = ChartSimplex::new(Chart::Plus, (0..3).map(|i| (0..3).map(|j| int((i == j) as i64)).collect()).collect());
            let img = ChartSimplex::new(Chart::Plus, cols.clone());
            let w: Vec<Rational> = s.iter().map(|&x| rat(x, 8)).collect();
            let p = ChartPoint::plus(vec![rat(1, 2), rat(1, 3), rat(1, 6)]);
            let tp = ChartPoint::plus(t.mul_vec(&p.coords).unwrap());
            let a = warp_point(&img, &w, &tp).unwrap();
            let b = warp_point(&unit, &w, &p).unwrap();
            prop_assert_eq!(a.coords, t.mul_vec(&b.coords).unwrap());
        }
    }
}
