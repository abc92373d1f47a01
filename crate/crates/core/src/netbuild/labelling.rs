//! `τ`-labellings: bijections `Γ_τ → V(Ω)` intertwining the rotation of `τ` with `σ`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::blockcore::{Letter, VertexLabelABC};
use crate::error::{Error, Result};
use crate::modtiling::{FareyTriangle, GammaObj, Pattern};

/// Labels of the model vertices, indexed by vertex id (`A_j`, then `B_j`, then `C_j`).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TauLabelling {
    #[serde(skip, default = "crate::modtiling::base_triangle")]
    pub triangle: FareyTriangle,
    pub labels: Vec<GammaObj>,
}

impl TauLabelling {
    /// The canonical labelling of `t`.
    ///
    /// Each rotation orbit `{x, gx, g²x}` of `Γ_τ` has exactly one element
    /// `y` off `Γ_{edge(0)}`; it labels `B_j`, with `A_j = g⁻¹y` and
    /// `C_j = gy`. Orbits are ordered vertex orbit first, then by seed, then by
    /// the position of `A_j` in `Γ_τ`. `perm` reorders the orbits afterwards.
    pub fn new(p: &Pattern, t: &FareyTriangle, perm: Option<&[usize]>) -> Result<TauLabelling> {
        let gamma = p.gamma_tau(t)?;
        let k = gamma.len() / 3;
        let e0 = p.gamma_e(&t.edge(0))?;
        let g = t.rotation();
        let gi = g.inv();
        let pos: HashMap<&GammaObj, usize> = gamma.iter().enumerate().map(|(i, o)| (o, i)).collect();
        let mut orbits: Vec<((bool, usize, usize), [GammaObj; 3])> = Vec::with_capacity(k);
        for y in gamma.iter().filter(|o| !e0.contains(o)) {
            let x = y.translate(&gi);
            let z = y.translate(&g);
            let px = *pos.get(&x).ok_or_else(|| {
                Error::Construction(format!("{x} is missing from Γ_τ at {}", t.address_string()))
            })?;
            if !pos.contains_key(&z) || !e0.contains(&x) || !e0.contains(&z) {
                return Err(Error::Construction(format!(
                    "rotation orbit of {y} is not split by edge 0 at {}",
                    t.address_string()
                )));
            }
            let seed = x.as_geodesic().map_or(0, |g| g.orbit);
            orbits.push(((!x.is_vertex(), seed, px), [x, y.clone(), z]));
        }
        if orbits.len() != k {
            return Err(Error::Construction(format!(
                "{} rotation orbits at {}, expected {k}",
                orbits.len(),
                t.address_string()
            )));
        }
        orbits.sort_by(|a, b| a.0.cmp(&b.0));
        let order: Vec<usize> = match perm {
            None => (0..k).collect(),
            Some(pm) => {
                let mut seen = vec![false; k];
                if pm.len() != k || pm.iter().any(|&i| i >= k || std::mem::replace(&mut seen[i], true)) {
                    return Err(Error::Input(format!("{pm:?} is not a permutation of 0..{k}")));
                }
                pm.to_vec()
            }
        };
        let mut labels = vec![None; 3 * k];
        for (j, &src) in order.iter().enumerate() {
            for (l, obj) in orbits[src].1.iter().enumerate() {
                labels[VertexLabelABC::new(Letter::from_index(l), j + 1).id(k)] = Some(obj.clone());
            }
        }
        Ok(TauLabelling {
            triangle: t.clone(),
            labels: labels.into_iter().map(|o| o.expect("every slot filled")).collect(),
        })
    }

    pub fn k(&self) -> usize {
        self.labels.len() / 3
    }

    pub fn label(&self, id: usize) -> &GammaObj {
        &self.labels[id]
    }

    pub fn id_of(&self, obj: &GammaObj) -> Option<usize> {
        self.labels.iter().position(|o| o == obj)
    }

    /// Labels of the vertices of terminal `j`, in the block's terminal order.
    pub fn terminal(&self, j: usize) -> Vec<GammaObj> {
        terminal_ids(self.k(), j)
            .into_iter()
            .map(|id| self.labels[id].clone())
            .collect()
    }

    /// Checks `φ(g x) = σ(φ(x))` for every label.
    pub fn check_equivariance(&self) -> Result<()> {
        let k = self.k();
        let g = self.triangle.rotation();
        for (id, obj) in self.labels.iter().enumerate() {
            let s = VertexLabelABC::from_id(id, k).sigma().id(k);
            if obj.translate(&g) != self.labels[s] {
                return Err(Error::Construction(format!(
                    "labelling of {} is not equivariant at vertex {}",
                    self.triangle.address_string(),
                    VertexLabelABC::from_id(id, k)
                )));
            }
        }
        Ok(())
    }
}

/// Vertex ids of terminal `j` (`A∪C`, `A∪B`, `B∪C`).
pub fn terminal_ids(k: usize, j: usize) -> Vec<usize> {
    let (x, y) = match j {
        0 => (0, 2),
        1 => (0, 1),
        _ => (1, 2),
    };
    (0..k).map(|i| x * k + i).chain((0..k).map(|i| y * k + i)).collect()
}

/// Vertex id of the `i`-th coordinate vertex of `Δ₀` (`A_1..A_k, C_1..C_k`).
pub fn coord_id(k: usize, i: usize) -> usize {
    if i < k {
        i
    } else {
        2 * k + (i - k)
    }
}
