//! Block networks: one placed (possibly warped) block per triangle of `T_m`.
//!
//! The unweighted network is the case `f ≡ 1`, where every separator is flat.

use std::collections::HashMap;

use num_traits::Signed;
use serde::Serialize;

use super::labelling::{coord_id, terminal_ids, TauLabelling};
use crate::blockcore::ModularBlock;
use crate::error::{Error, Result};
use crate::exactnum::matrix::combine;
use crate::exactnum::rational::{self, Rational};
use crate::exactnum::RMatrix;
use crate::geometry::{Chart, ChartPoint, ChartSimplex};
use crate::modblocks::separator::{check_weights, shrink, shrink_vertices};
use crate::modblocks::warp::warp_coords;
use crate::modtiling::{boundary_edges, expand, nesting_sequence, FareyEdge, FareyTriangle, GammaObj, Pattern, Target};

/// A weighting of `Γ`; ideal vertices always get weight 1.
pub trait WeightFn: Sync {
    fn weight(&self, obj: &GammaObj) -> Result<Rational>;
}

/// `f ≡ 1`.
#[derive(Clone, Copy, Debug, Default)]
pub struct UnitWeights;

impl WeightFn for UnitWeights {
    fn weight(&self, _: &GammaObj) -> Result<Rational> {
        Ok(rational::one())
    }
}

fn weight_of(f: &dyn WeightFn, obj: &GammaObj) -> Result<Rational> {
    if obj.is_vertex() {
        return Ok(rational::one());
    }
    let w = f.weight(obj)?;
    check_weights(std::slice::from_ref(&w)).map_err(|_| {
        Error::Input(format!("weight {} of {obj} is outside (0, 1]", rational::to_string(&w)))
    })?;
    Ok(w)
}

fn serialize_triangle<S: serde::Serializer>(t: &FareyTriangle, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&t.address_string())
}

/// The block `Ω[τ]`, the model block warped by `P_S` and placed by an affine map.
#[derive(Clone, Debug, Serialize)]
pub struct BlockInstance {
    #[serde(serialize_with = "serialize_triangle")]
    pub triangle: FareyTriangle,
    pub chart: Chart,
    pub labelling: TauLabelling,
    #[serde(with = "rational::serde_vec")]
    pub weights: Vec<Rational>,
    /// Images of the vertices of `Δ₀` (`A_1..A_k, C_1..C_k`).
    #[serde(with = "rational::serde_mat")]
    pub frame: Vec<Vec<Rational>>,
    /// Core vertex positions by vertex id.
    #[serde(with = "rational::serde_mat")]
    pub positions: Vec<Vec<Rational>>,
}

impl BlockInstance {
    pub fn k(&self) -> usize {
        self.labelling.k()
    }

    pub fn vertex(&self, id: usize) -> ChartPoint {
        ChartPoint::new(self.chart, self.positions[id].clone())
    }

    pub fn simplex(&self, ids: &[usize]) -> ChartSimplex {
        ChartSimplex::new(self.chart, ids.iter().map(|&i| self.positions[i].clone()).collect())
    }

    pub fn core_simplices(&self, model: &ModularBlock) -> Vec<ChartSimplex> {
        model.core_sets().iter().map(|s| self.simplex(&s.ids())).collect()
    }

    /// `Δ_{j,S}`: filled-in terminal `j` of the warped core.
    pub fn core_terminal(&self, j: usize) -> ChartSimplex {
        self.simplex(&terminal_ids(self.k(), j))
    }

    pub fn terminal_weights(&self, j: usize) -> Vec<Rational> {
        terminal_ids(self.k(), j).into_iter().map(|i| self.weights[i].clone()).collect()
    }

    /// The placement as a linear map on `R^{2k}`, sending `e_i` to `frame[i]`.
    pub fn placement(&self) -> Result<RMatrix> {
        RMatrix::from_cols(&self.frame)
    }

    /// Outer terminal of the modified block computed from this block alone:
    /// the placement of `T_S(Δ₀)`. For `t₊` this is the free side of `[Δ₋, S]`.
    pub fn outer_terminal(&self) -> Result<ChartSimplex> {
        let k = self.k();
        let s = self.terminal_weights(0);
        let unit: Vec<Vec<Rational>> = (0..2 * k)
            .map(|i| (0..2 * k).map(|j| rational::int((i == j) as i64)).collect())
            .collect();
        if self.triangle.is_base() {
            return shrink(&ChartSimplex::new(Chart::Minus, unit), &s);
        }
        let m = RMatrix::from_cols(&shrink_vertices(&unit, &s)?)?.inverse()?;
        Ok(ChartSimplex::new(
            self.chart,
            (0..2 * k).map(|i| combine(&m.col(i), &self.frame)).collect(),
        ))
    }
}

/// `Ψ(e) = (Δ_e, φ_e)` plus the warped core terminal `W_e` it was shrunk from.
#[derive(Clone, Debug, Serialize)]
pub struct PsiEntry {
    pub edge: FareyEdge,
    pub simplex: ChartSimplex,
    pub labels: Vec<GammaObj>,
    pub outer: ChartSimplex,
}

impl PsiEntry {
    pub fn position(&self, obj: &GammaObj) -> Option<ChartPoint> {
        let i = self.labels.iter().position(|o| o == obj)?;
        Some(self.simplex.vertex_points().swap_remove(i))
    }
}

/// A labelled vertex of some `Δ_e`.
#[derive(Clone, Debug, Serialize)]
pub struct VertexRecord {
    pub label: GammaObj,
    pub edge: FareyEdge,
    pub point: ChartPoint,
}

/// A distinct point of the vertex cloud with everything that labels it.
#[derive(Clone, Debug, Serialize)]
pub struct CloudPoint {
    pub point: ChartPoint,
    pub labels: Vec<GammaObj>,
    pub edges: Vec<FareyEdge>,
}

/// A point of `Ψ_∞(x)` up to a computable error.
#[derive(Clone, Debug, Serialize)]
pub struct PsiApprox {
    pub point: ChartPoint,
    /// Squared diameter of the simplex the point was taken from.
    #[serde(with = "rational::serde_str")]
    pub error2: Rational,
    pub edge: Option<FareyEdge>,
    pub exact: bool,
    /// The requested depth exceeded the network.
    pub partial: bool,
}

#[derive(Clone, Debug)]
pub struct Network {
    pub pattern: Pattern,
    pub depth: usize,
    pub model: ModularBlock,
    pub blocks: Vec<BlockInstance>,
    pub edges: Vec<FareyEdge>,
    pub weighted: bool,
    index: HashMap<FareyTriangle, usize>,
    psi: HashMap<FareyEdge, PsiEntry>,
}

/// The unweighted network on `T_m`.
pub fn build_network(p: &Pattern, depth: usize) -> Result<Network> {
    Network::build(p, depth, &UnitWeights, None)
}

impl Network {
    /// Builds the blocks of `T_m` in breadth-first order. `perm` reorders the
    /// `t₀`-labelling.
    pub fn build(p: &Pattern, depth: usize, f: &dyn WeightFn, perm: Option<&[usize]>) -> Result<Network> {
        let k = p.k()?;
        let model = ModularBlock::build_any(k);
        let mut net = Network {
            pattern: p.clone(),
            depth,
            model,
            blocks: Vec::new(),
            edges: Vec::new(),
            weighted: false,
            index: HashMap::new(),
            psi: HashMap::new(),
        };
        for t in expand(depth) {
            let lab = TauLabelling::new(p, &t, if t.is_base() { perm } else { None })?;
            lab.check_equivariance()?;
            let weights = lab
                .labels
                .iter()
                .map(|o| weight_of(f, o))
                .collect::<Result<Vec<_>>>()?;
            if weights.iter().any(|w| *w != rational::one()) {
                net.weighted = true;
            }
            let b = net.place(t, lab, weights)?;
            net.add_entries(&b)?;
            net.index.insert(b.triangle.clone(), net.blocks.len());
            net.blocks.push(b);
        }
        Ok(net)
    }

    fn place(&self, t: FareyTriangle, lab: TauLabelling, weights: Vec<Rational>) -> Result<BlockInstance> {
        let k = lab.k();
        let (chart, frame) = match t.parent() {
            None => (
                Chart::Plus,
                (0..2 * k)
                    .map(|i| (0..2 * k).map(|j| rational::int((i == j) as i64)).collect())
                    .collect(),
            ),
            Some(e) => {
                let h = self.psi(e)?;
                let s: Vec<Rational> = h
                    .labels
                    .iter()
                    .map(|o| weights[lab.id_of(o).unwrap_or(0)].clone())
                    .collect();
                let inner = shrink(&h.simplex, &s)?;
                let frame = (0..2 * k)
                    .map(|i| {
                        let obj = lab.label(coord_id(k, i));
                        h.labels
                            .iter()
                            .position(|o| o == obj)
                            .map(|pos| inner.vertices[pos].clone())
                            .ok_or_else(|| {
                                Error::Construction(format!(
                                    "label {obj} of {} is missing from the hole at {e}",
                                    t.address_string()
                                ))
                            })
                    })
                    .collect::<Result<Vec<_>>>()?;
                if lab.terminal(0).iter().any(|o| !h.labels.contains(o)) {
                    return Err(Error::Construction(format!(
                        "labels of {} do not match the hole at {e}",
                        t.address_string()
                    )));
                }
                (h.simplex.chart, frame)
            }
        };
        let s: Vec<Rational> = (0..2 * k).map(|i| weights[coord_id(k, i)].clone()).collect();
        let positions = (0..3 * k)
            .map(|id| Ok(combine(&warp_coords(self.model.vertex_by_id(id), &s)?, &frame)))
            .collect::<Result<Vec<_>>>()?;
        Ok(BlockInstance {
            triangle: t,
            chart,
            labelling: lab,
            weights,
            frame,
            positions,
        })
    }

    fn add_entries(&mut self, b: &BlockInstance) -> Result<()> {
        let k = b.k();
        let mut js = vec![1, 2];
        if b.triangle.is_base() {
            js.insert(0, 0);
        }
        for j in js {
            let outer = if j == 0 {
                ChartSimplex::new(
                    Chart::Minus,
                    (0..2 * k)
                        .map(|i| (0..2 * k).map(|c| rational::int((i == c) as i64)).collect())
                        .collect(),
                )
            } else {
                b.core_terminal(j)
            };
            let simplex = shrink(&outer, &b.terminal_weights(j))?;
            let edge = b.triangle.edge(j);
            self.edges.push(edge.clone());
            self.psi.insert(
                edge.clone(),
                PsiEntry {
                    edge,
                    simplex,
                    labels: b.labelling.terminal(j),
                    outer,
                },
            );
        }
        Ok(())
    }

    pub fn k(&self) -> usize {
        self.model.k()
    }

    pub fn psi(&self, e: &FareyEdge) -> Result<&PsiEntry> {
        self.psi
            .get(e)
            .ok_or_else(|| Error::OutOfRange(format!("edge {e} is beyond depth {}", self.depth)))
    }

    pub fn has_edge(&self, e: &FareyEdge) -> bool {
        self.psi.contains_key(e)
    }

    pub fn block_index(&self, t: &FareyTriangle) -> Option<usize> {
        self.index.get(t).copied()
    }

    pub fn block(&self, t: &FareyTriangle) -> Option<&BlockInstance> {
        self.block_index(t).map(|i| &self.blocks[i])
    }

    /// Weight of a label as used in the build.
    pub fn weight(&self, obj: &GammaObj) -> Option<Rational> {
        self.blocks.iter().find_map(|b| b.labelling.id_of(obj).map(|i| b.weights[i].clone()))
    }

    /// `Λ_m`: the simplices over the depth-`m` edges.
    pub fn lambda_m(&self, m: usize) -> Result<Vec<(FareyEdge, ChartSimplex)>> {
        if m > self.depth {
            return Err(Error::OutOfRange(format!("depth {m} exceeds the built depth {}", self.depth)));
        }
        boundary_edges(m)
            .into_iter()
            .map(|e| {
                let s = self.psi(&e)?.simplex.clone();
                Ok((e, s))
            })
            .collect()
    }

    /// Largest squared diameter over `Λ_m`, for `m = 0..=depth`.
    pub fn diameter_profile(&self) -> Result<Vec<Rational>> {
        (0..=self.depth)
            .map(|m| {
                Ok(self
                    .lambda_m(m)?
                    .iter()
                    .map(|(_, s)| s.diameter2())
                    .max()
                    .unwrap_or_default())
            })
            .collect()
    }

    /// Every labelled vertex of every built `Δ_e`, edges in build order.
    pub fn vertex_records(&self) -> Vec<VertexRecord> {
        let mut out = Vec::new();
        for e in &self.edges {
            let entry = &self.psi[e];
            for (label, point) in entry.labels.iter().zip(entry.simplex.vertex_points()) {
                out.push(VertexRecord {
                    label: label.clone(),
                    edge: e.clone(),
                    point,
                });
            }
        }
        out
    }

    /// Distinct points of the vertex cloud, in first-seen order.
    pub fn limit_cloud(&self) -> Vec<CloudPoint> {
        let mut out: Vec<CloudPoint> = Vec::new();
        let mut at: HashMap<ChartPoint, usize> = HashMap::new();
        for r in self.vertex_records() {
            let i = *at.entry(r.point.clone()).or_insert_with(|| {
                out.push(CloudPoint {
                    point: r.point.clone(),
                    labels: Vec::new(),
                    edges: Vec::new(),
                });
                out.len() - 1
            });
            let c = &mut out[i];
            if !c.labels.contains(&r.label) {
                c.labels.push(r.label);
            }
            c.edges.push(r.edge);
        }
        out
    }

    /// Position of the vertex labelled `obj` in `Δ_e`, or in any built
    /// simplex when `e` is `None`.
    pub fn labelled_vertex(&self, obj: &GammaObj, e: Option<&FareyEdge>) -> Result<ChartPoint> {
        match e {
            Some(e) => self
                .psi(e)?
                .position(obj)
                .ok_or_else(|| Error::Input(format!("{obj} does not label a vertex of Δ at {e}"))),
            None => self
                .edges
                .iter()
                .find_map(|e| self.psi[e].position(obj))
                .ok_or_else(|| Error::Depth(format!("{obj} labels no vertex within depth {}", self.depth))),
        }
    }

    /// `Ψ_∞(x)` approximated by the barycenter of `Δ_{e_m}`; exact for ideal vertices.
    pub fn psi_infinity(&self, x: &Target, m: usize) -> Result<PsiApprox> {
        if let Target::Rational { value } = x {
            let obj = GammaObj::Vertex { point: value.clone() };
            if let Some(e) = self.edges.iter().find(|e| self.psi[*e].labels.contains(&obj)) {
                return Ok(PsiApprox {
                    point: self.psi[e].position(&obj).expect("label present"),
                    error2: Rational::default(),
                    edge: Some(e.clone()),
                    exact: true,
                    partial: false,
                });
            }
        }
        let d = m.min(self.depth);
        let seq = nesting_sequence(x.clone(), d + 1)?;
        let e = seq.edges[d].clone();
        let s = &self.psi(&e)?.simplex;
        Ok(PsiApprox {
            point: s.barycenter(),
            error2: s.diameter2(),
            edge: Some(e),
            exact: false,
            partial: m > self.depth,
        })
    }

    /// Locates `p`: a core simplex of a block, or the region behind an edge
    /// that the network does not resolve.
    pub fn locate(&self, p: &ChartPoint) -> Result<Location> {
        let mut bi = 0usize;
        'descend: loop {
            let b = &self.blocks[bi];
            for (ci, s) in b.core_simplices(&self.model).iter().enumerate() {
                if let Some(l) = s.coords_of(p).ok().flatten() {
                    if l.iter().all(|x| !x.is_negative()) {
                        return Ok(Location::Core {
                            block: bi,
                            simplex: ci,
                            coords: l,
                        });
                    }
                }
            }
            for e in b.triangle.outward_edges() {
                let entry = self.psi(&e)?;
                if !entry.outer.contains(p)? {
                    continue;
                }
                if let Some(ci) = self.block_index(&e.triangle_beyond()) {
                    let child = &self.blocks[ci];
                    let inner = ChartSimplex::new(child.chart, child.frame.clone());
                    if inner.contains(p)? {
                        bi = ci;
                        continue 'descend;
                    }
                    return Ok(Location::Collar { edge: e });
                }
                return Ok(Location::Frontier { edge: e });
            }
            return Err(Error::Domain(format!("{p} lies in no block or hole")));
        }
    }
}

/// Where a point sits in the network.
#[derive(Clone, Debug, PartialEq)]
pub enum Location {
    Core {
        block: usize,
        simplex: usize,
        coords: Vec<Rational>,
    },
    /// Between `W_e` and the next core (weighted networks only).
    Collar { edge: FareyEdge },
    /// Inside `W_e` for an edge at the built depth.
    Frontier { edge: FareyEdge },
}
