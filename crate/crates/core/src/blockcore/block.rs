use std::collections::HashMap;

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use super::goodsets::{enumerate_core_sets, GoodSet};
use super::labels::{Letter, VertexLabelABC};
use crate::error::{Error, Result};
use crate::exactnum::matrix::barycentric_coords;
use crate::exactnum::rational::{self, Rational};
use crate::geometry::{Chart, ChartPoint, ChartSimplex};

/// Coordinates of `A_j`, `B_j`, `C_j` in `R^{2k}`, in label-id order.
pub fn standard_vertices(k: usize) -> Result<Vec<(VertexLabelABC, Vec<Rational>)>> {
    if k < 2 {
        return Err(Error::Input(format!("blocks need k >= 2, got {k}")));
    }
    Ok(standard_vertices_any(k))
}

/// Same as [`standard_vertices`] but also allows `k = 1` (the circle case).
pub(crate) fn standard_vertices_any(k: usize) -> Vec<(VertexLabelABC, Vec<Rational>)> {
    let n = 2 * k as i64 - 1;
    let mut out = Vec::with_capacity(3 * k);
    for letter in Letter::ALL {
        for j in 0..k {
            let mut v = vec![rational::zero(); 2 * k];
            match letter {
                Letter::A => v[j] = rational::one(),
                Letter::C => v[k + j] = rational::one(),
                Letter::B => {
                    for (i, x) in v.iter_mut().enumerate() {
                        let w = if i % k == j { 1 } else { 2 };
                        *x = rational::rat(w, 2 * n);
                    }
                }
            }
            out.push((VertexLabelABC::new(letter, j + 1), v));
        }
    }
    out
}

/// The separating vector `(1, …, 1, -1, …, -1)`.
pub fn separating_vector(k: usize) -> Vec<Rational> {
    (0..2 * k)
        .map(|i| rational::int(if i < k { 1 } else { -1 }))
        .collect()
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ModularBlock {
    k: usize,
    #[serde(with = "rational::serde_mat")]
    vertices: Vec<Vec<Rational>>,
    core: Vec<GoodSet>,
    sigma_perm: Vec<usize>,
}

pub fn build_block(k: usize) -> Result<ModularBlock> {
    if k < 2 {
        return Err(Error::Input(format!("blocks need k >= 2, got {k}")));
    }
    Ok(ModularBlock::build_any(k))
}

impl ModularBlock {
    pub(crate) fn build_any(k: usize) -> Self {
        let vertices = standard_vertices_any(k).into_iter().map(|(_, v)| v).collect();
        let core = if k >= 2 { enumerate_core_sets(k) } else { Vec::new() };
        let pos: HashMap<&GoodSet, usize> = core.iter().enumerate().map(|(i, s)| (s, i)).collect();
        let sigma_perm = core.iter().map(|s| pos[&s.sigma()]).collect();
        ModularBlock {
            k,
            vertices,
            core,
            sigma_perm,
        }
    }

    /// Reads the serde form of a block. Vertices may be arbitrary; the
    /// combinatorics must be those of the model block of the same `k`.
    pub fn from_json(text: &str) -> Result<Self> {
        let b: ModularBlock =
            serde_json::from_str(text).map_err(|e| Error::Input(format!("block file: {e}")))?;
        if b.k < 2 || b.vertices.len() != 3 * b.k || b.vertices.iter().any(|v| v.len() != 2 * b.k) {
            return Err(Error::Input(format!("block file: vertex table does not fit k = {}", b.k)));
        }
        let model = ModularBlock::build_any(b.k);
        if b.core != model.core || b.sigma_perm != model.sigma_perm {
            return Err(Error::Input("block file: core sets or σ differ from the model block".into()));
        }
        Ok(b)
    }

    /// Copy of the block with one vertex moved; used for corrupted fixtures.
    pub fn with_vertex(&self, label: VertexLabelABC, coords: Vec<Rational>) -> Result<Self> {
        if label.index == 0 || label.index > self.k || coords.len() != 2 * self.k {
            return Err(Error::Input(format!("cannot replace vertex {label}")));
        }
        let mut b = self.clone();
        b.vertices[label.id(self.k)] = coords;
        Ok(b)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        2 * self.k - 1
    }

    pub fn vertex(&self, label: VertexLabelABC) -> &[Rational] {
        &self.vertices[label.id(self.k)]
    }

    pub fn vertex_by_id(&self, id: usize) -> &[Rational] {
        &self.vertices[id]
    }

    pub fn vertex_table(&self) -> Vec<(VertexLabelABC, Vec<Rational>)> {
        self.vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (VertexLabelABC::from_id(i, self.k), v.clone()))
            .collect()
    }

    fn simplex_of(&self, labels: &[VertexLabelABC]) -> ChartSimplex {
        ChartSimplex::new(
            Chart::Plus,
            labels.iter().map(|&l| self.vertex(l).to_vec()).collect(),
        )
    }

    pub fn letter_labels(&self, letter: Letter) -> Vec<VertexLabelABC> {
        (1..=self.k).map(|j| VertexLabelABC::new(letter, j)).collect()
    }

    pub fn terminal_labels(&self, j: usize) -> Vec<VertexLabelABC> {
        let (x, y) = match j {
            0 => (Letter::A, Letter::C),
            1 => (Letter::A, Letter::B),
            _ => (Letter::B, Letter::C),
        };
        let mut l = self.letter_labels(x);
        l.extend(self.letter_labels(y));
        l
    }

    /// `Δ₀ = ⟨A ∪ C⟩`, `Δ₁ = ⟨A ∪ B⟩`, `Δ₂ = ⟨B ∪ C⟩` for `j = 0, 1, 2`.
    pub fn delta(&self, j: usize) -> ChartSimplex {
        self.simplex_of(&self.terminal_labels(j))
    }

    pub fn core_sets(&self) -> &[GoodSet] {
        &self.core
    }

    pub fn core_simplex(&self, i: usize) -> ChartSimplex {
        self.good_simplex(&self.core[i])
    }

    pub fn core_simplices(&self) -> Vec<ChartSimplex> {
        (0..self.core.len()).map(|i| self.core_simplex(i)).collect()
    }

    pub fn good_simplex(&self, s: &GoodSet) -> ChartSimplex {
        self.simplex_of(&s.labels())
    }

    /// Core index of `σ(S_i)`.
    pub fn sigma_index(&self, i: usize) -> usize {
        self.sigma_perm[i]
    }

    /// A core simplex containing `p` with its barycentric coordinates.
    pub fn locate(&self, p: &ChartPoint) -> Result<Option<(usize, Vec<Rational>)>> {
        if p.chart != Chart::Plus {
            return Ok(None);
        }
        for (i, s) in self.core.iter().enumerate() {
            let verts: Vec<Vec<Rational>> = s.ids().iter().map(|&id| self.vertices[id].clone()).collect();
            let l = match barycentric_coords(&p.coords, &verts) {
                Ok(l) => l,
                Err(Error::Domain(_)) => return Ok(None),
                Err(e) => return Err(e),
            };
            if l.iter().all(|x| !x.is_negative()) {
                return Ok(Some((i, l)));
            }
        }
        Ok(None)
    }

    /// The order-3 PL automorphism of the block, affine on each core simplex.
    pub fn sigma_apply(&self, p: &ChartPoint) -> Result<ChartPoint> {
        let (i, l) = self
            .locate(p)?
            .ok_or_else(|| Error::Domain(format!("{p} is not in the block")))?;
        let labels = self.core[i].labels();
        let img: Vec<Vec<Rational>> = labels.iter().map(|v| self.vertex(v.sigma()).to_vec()).collect();
        Ok(ChartSimplex::new(Chart::Plus, img).point_at(&l))
    }

    /// Label-level σ, `A_j → B_j → C_j → A_j`.
    pub fn sigma_label(&self, l: VertexLabelABC) -> VertexLabelABC {
        l.sigma()
    }

    /// JSON-friendly dump.
    pub fn dump(&self) -> BlockDump {
        BlockDump {
            format_version: 1,
            k: self.k,
            n: self.n(),
            chart: Chart::Plus,
            vertices: self
                .vertex_table()
                .into_iter()
                .map(|(l, v)| (l.to_string(), v.iter().map(rational::to_string).collect()))
                .collect(),
            terminals: (0..3)
                .map(|j| self.terminal_labels(j).iter().map(|l| l.to_string()).collect())
                .collect(),
            core: self
                .core
                .iter()
                .map(|s| s.labels().iter().map(|l| l.to_string()).collect())
                .collect(),
            sigma: self.sigma_perm.clone(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BlockDump {
    pub format_version: u32,
    pub k: usize,
    pub n: usize,
    pub chart: Chart,
    pub vertices: std::collections::BTreeMap<String, Vec<String>>,
    pub terminals: Vec<Vec<String>>,
    pub core: Vec<Vec<String>>,
    pub sigma: Vec<usize>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational::{int, rat};
    use crate::exactnum::RMatrix;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn k2_coordinates() {
        let v = standard_vertices(2).unwrap();
        assert_eq!(v[2].1, vec![rat(1, 6), rat(1, 3), rat(1, 6), rat(1, 3)]);
        assert!(standard_vertices(1).is_err());
        assert!(build_block(1).is_err());
    }

    #[test]
    fn separating_vector_values() {
        for k in 2..6 {
            let u = separating_vector(k);
            let dot = |v: &[Rational]| -> Rational { v.iter().zip(&u).map(|(a, b)| a * b).sum() };
            for (l, v) in standard_vertices(k).unwrap() {
                let want = match l.letter {
                    Letter::A => int(1),
                    Letter::B => int(0),
                    Letter::C => int(-1),
                };
                assert_eq!(dot(&v), want);
                let s: Rational = v.iter().sum();
                assert_eq!(s, int(1));
            }
        }
    }

    #[test]
    fn good_sets_are_bases() {
        let b = build_block(3).unwrap();
        for s in super::super::goodsets::enumerate_good_sets(3) {
            let m = RMatrix::from_rows(&b.good_simplex(&s).vertices).unwrap();
            assert_ne!(m.det().unwrap(), int(0));
        }
    }

    #[test]
    fn sigma_on_vertices_and_barycenters() {
        let b = build_block(2).unwrap();
        let a1 = VertexLabelABC::new(Letter::A, 1);
        let p = ChartPoint::plus(b.vertex(a1).to_vec());
        let q = b.sigma_apply(&p).unwrap();
        assert_eq!(q.coords, b.vertex(a1.sigma()));
        for i in 0..b.core_sets().len() {
            let bc = b.core_simplex(i).barycenter();
            let img = b.sigma_apply(&bc).unwrap();
            assert_eq!(img, b.core_simplex(b.sigma_index(i)).barycenter());
        }
    }

    #[test]
    fn sigma_cubed_is_identity_on_random_points() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for k in [2usize, 3] {
            let b = build_block(k).unwrap();
            for _ in 0..100 {
                let i = rng.gen_range(0..b.core_sets().len());
                let w: Vec<i64> = (0..2 * k).map(|_| rng.gen_range(1..20)).collect();
                let tot: i64 = w.iter().sum();
                let l: Vec<Rational> = w.iter().map(|&x| rat(x, tot)).collect();
                let p = b.core_simplex(i).point_at(&l);
                let q = b.sigma_apply(&b.sigma_apply(&b.sigma_apply(&p).unwrap()).unwrap()).unwrap();
                assert_eq!(p, q);
            }
        }
    }

    #[test]
    fn points_of_removed_simplices_are_outside() {
        let b = build_block(2).unwrap();
        let p = b.delta(1).barycenter();
        assert!(matches!(b.sigma_apply(&p), Err(Error::Domain(_))));
    }
}
