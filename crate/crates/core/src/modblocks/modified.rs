//! Modified blocks and modified networks.

use std::collections::HashMap;

use num_traits::{Signed, Zero};
use serde::Serialize;

use super::separator::{make_separator, shrink, Separator};
use super::warp::{warp, WarpedBlock};
use super::weighting::Weighting;
use crate::blockcore::ModularBlock;
use crate::error::{Error, Result};
use crate::exactnum::matrix::dist2;
use crate::exactnum::rational::{self, Rational};
use crate::geometry::{simplex_contains, Chart, ChartPoint, ChartSimplex};
use crate::modtiling::{GammaObj, Pattern};
use crate::netbuild::labelling::terminal_ids;
use crate::netbuild::{CloudPoint, Network};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BlockKind {
    /// `[Ω, S]`: the outer separator is `T_S([Δ₀, S])`.
    General,
    /// `]Ω₊, S[`: the outer separator is `[Δ₋, S]`.
    Special,
}

/// The warped core with one separator on each terminal.
#[derive(Clone, Debug, Serialize)]
pub struct ModifiedBlock {
    pub kind: BlockKind,
    pub core: WarpedBlock,
    /// Before rescaling, in terminal order.
    pub separators: Vec<Separator>,
    /// Filled-in terminals: the free separator boundaries, in terminal order.
    pub terminals: Vec<ChartSimplex>,
}

fn unit(dim: usize, chart: Chart) -> ChartSimplex {
    ChartSimplex::new(
        chart,
        (0..dim)
            .map(|i| (0..dim).map(|j| rational::int((i == j) as i64)).collect())
            .collect(),
    )
}

pub fn modified_block(b: &ModularBlock, weights: &[Rational], kind: BlockKind) -> Result<ModifiedBlock> {
    let core = warp(b, weights)?;
    let dim = 2 * b.k();
    let mut separators = Vec::with_capacity(3);
    let mut terminals = Vec::with_capacity(3);
    let s0 = core.terminal_weights(0);
    match kind {
        BlockKind::General => {
            let sep = make_separator(&core.terminal(0), &s0)?;
            let t = sep.rescaling()?;
            let outer = sep
                .base
                .vertices
                .iter()
                .map(|v| t.mul_vec(v))
                .collect::<Result<Vec<_>>>()?;
            terminals.push(ChartSimplex::new(Chart::Plus, outer));
            separators.push(sep);
        }
        BlockKind::Special => {
            let sep = make_separator(&unit(dim, Chart::Minus), &s0)?;
            terminals.push(sep.inner.clone());
            separators.push(sep);
        }
    }
    for j in 1..3 {
        let sep = make_separator(&core.terminal(j), &core.terminal_weights(j))?;
        terminals.push(shrink(&sep.base, &sep.weights)?);
        separators.push(sep);
    }
    Ok(ModifiedBlock {
        kind,
        core,
        separators,
        terminals,
    })
}

/// The two vertices of a modified block induced by one core vertex.
#[derive(Clone, Debug, Serialize)]
pub struct InducedPair {
    pub vertex: usize,
    #[serde(with = "rational::serde_str")]
    pub weight: Rational,
    pub first: ChartPoint,
    pub second: ChartPoint,
    pub coincide: bool,
}

impl ModifiedBlock {
    /// Whether `T_S(Δ₀)` stays in the closed standard simplex. Placement in a
    /// network never needs it, since there the outer terminal is `Δ_e`.
    pub fn fits_chart(&self) -> bool {
        self.terminals[0]
            .vertices
            .iter()
            .flatten()
            .all(|x| !x.is_negative())
    }

    pub fn induced_pairs(&self) -> Vec<InducedPair> {
        let k = self.core.k();
        (0..3 * k)
            .map(|id| {
                let pts: Vec<ChartPoint> = (0..3)
                    .filter_map(|j| {
                        terminal_ids(k, j)
                            .iter()
                            .position(|&i| i == id)
                            .map(|p| self.terminals[j].vertex_points().swap_remove(p))
                    })
                    .collect();
                InducedPair {
                    vertex: id,
                    weight: self.core.weights[id].clone(),
                    coincide: pts[0] == pts[1],
                    first: pts[0].clone(),
                    second: pts[1].clone(),
                }
            })
            .collect()
    }

    /// Every induced pair coincides exactly when its weight is 1.
    pub fn separation_holds(&self) -> bool {
        self.induced_pairs()
            .iter()
            .all(|p| p.coincide == (p.weight == rational::one()))
    }

    /// `Σ` volumes: core, plus the outer collar, minus nothing for the inner
    /// collars, which lie inside the core terminals.
    pub fn volume(&self) -> Result<Rational> {
        let mut v = Rational::zero();
        for s in self.core.core_simplices() {
            v += s.det_volume()?;
        }
        let outer = self.terminals[0].det_volume()?;
        let inner = self.separators[0].base.det_volume()?;
        Ok(v + outer - inner)
    }
}

/// The network of `[Ω, S]` blocks (special at `t₊`) for the weighting `f`.
///
/// Each placed outer separator must fit in the warped terminal it plugs.
pub fn build_modified_network(p: &Pattern, f: &Weighting, depth: usize) -> Result<Network> {
    let net = Network::build(p, depth, f, None)?;
    for b in net.blocks.iter().skip(1) {
        let e = b.triangle.parent().expect("not the base");
        let hole = &net.psi(e)?.outer;
        let outer = b.outer_terminal()?;
        if !simplex_contains(hole, &outer)? {
            return Err(Error::Geometry(format!(
                "outer terminal of {} leaves its hole: {:?}",
                b.triangle.address_string(),
                outer.vertices.iter().map(|v| v.iter().map(rational::to_string).collect::<Vec<_>>()).collect::<Vec<_>>()
            )));
        }
    }
    Ok(net)
}

/// The vertex cloud of a modified network with its identification pattern.
#[derive(Clone, Debug, Serialize)]
pub struct LimitSetF {
    pub cloud: Vec<CloudPoint>,
    /// Labels sitting at one point.
    pub pinned: usize,
    /// Labels spread over one point per simplex.
    pub spread: usize,
}

pub fn limit_set_f(net: &Network) -> LimitSetF {
    let cloud = net.limit_cloud();
    let mut count: HashMap<&GammaObj, usize> = HashMap::new();
    for c in &cloud {
        for l in &c.labels {
            *count.entry(l).or_default() += 1;
        }
    }
    let pinned = count.values().filter(|&&n| n == 1).count();
    LimitSetF {
        pinned,
        spread: count.len() - pinned,
        cloud: cloud.clone(),
    }
}

/// Positions of every vertex labelled by one object.
#[derive(Clone, Debug, Serialize)]
pub struct SeparationRow {
    pub label: String,
    #[serde(with = "rational::serde_str")]
    pub weight: Rational,
    pub records: usize,
    pub distinct: usize,
    /// Smallest squared distance between distinct positions.
    #[serde(with = "rational::serde_opt")]
    pub min_dist2: Option<Rational>,
}

/// One row per geodesic label seen in at least two simplices.
pub fn separation_report(net: &Network) -> Vec<SeparationRow> {
    let mut by: Vec<(GammaObj, Vec<ChartPoint>)> = Vec::new();
    let mut at: HashMap<GammaObj, usize> = HashMap::new();
    for r in net.vertex_records() {
        if r.label.is_vertex() {
            continue;
        }
        let i = *at.entry(r.label.clone()).or_insert_with(|| {
            by.push((r.label.clone(), Vec::new()));
            by.len() - 1
        });
        by[i].1.push(r.point);
    }
    by.into_iter()
        .filter(|(_, ps)| ps.len() > 1)
        .map(|(l, ps)| {
            let mut d: Vec<&ChartPoint> = Vec::new();
            for p in &ps {
                if !d.contains(&p) {
                    d.push(p);
                }
            }
            let min_dist2 = (0..d.len())
                .flat_map(|i| (i + 1..d.len()).map(move |j| (i, j)))
                .map(|(i, j)| dist2(&lift(d[i]), &lift(d[j])))
                .min();
            SeparationRow {
                label: l.to_string(),
                weight: net.weight(&l).unwrap_or_else(rational::one),
                records: ps.len(),
                distinct: d.len(),
                min_dist2,
            }
        })
        .collect()
}

/// The PL embedding of `Sⁿ` in `ℝⁿ⁺²`: chart coordinates plus the height
/// `±(n+1)·min_i p_i`, positive on the plus chart.
pub fn lift(p: &ChartPoint) -> Vec<Rational> {
    let m = p.coords.iter().min().cloned().unwrap_or_default() * rational::int(p.coords.len() as i64);
    let mut v = p.coords.clone();
    v.push(if p.chart == Chart::Minus { -m } else { m });
    v
}

/// Squared distance from `p` to the closest point of `q`, in the lifted embedding.
pub fn nearest2(p: &ChartPoint, q: &[ChartPoint]) -> Option<Rational> {
    let lp = lift(p);
    q.iter().map(|x| dist2(&lp, &lift(x))).min()
}

/// Squared Hausdorff distance of two finite sets, in the lifted embedding.
pub fn hausdorff2(a: &[ChartPoint], b: &[ChartPoint]) -> Result<Rational> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::Input("Hausdorff distance of an empty set".into()));
    }
    let one = |x: &[ChartPoint], y: &[ChartPoint]| {
        x.iter()
            .map(|p| nearest2(p, y).expect("nonempty"))
            .max()
            .expect("nonempty")
    };
    Ok(one(a, b).max(one(b, a)))
}
