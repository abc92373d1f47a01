//! The PL representation `ρ` on a built network.

use std::collections::HashSet;

use serde::Serialize;

use super::network::{Location, Network};
use crate::error::{Error, Result};
use crate::exactnum::rational::{self, Rational};
use crate::geometry::{closed_intersect, ChartPoint, ChartSimplex};
use crate::modblocks::separator::make_separator;
use crate::modtiling::{FareyEdge, GammaObj, Psl2};

/// A group element with the word it came from.
///
/// Letters: `S`; `T`/`R` and `t`/`r` for `T^{±1}`; `L`, `l` for `L^{±1}`;
/// `W`, `w` for `ω^{±1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RepElement {
    pub word: String,
    pub element: Psl2,
}

impl RepElement {
    pub fn parse(word: &str) -> Result<RepElement> {
        let mut m = Psl2::identity();
        for c in word.chars() {
            let g = match c {
                'S' => Psl2::s(),
                'T' | 'R' => Psl2::t(),
                't' | 'r' => Psl2::t().inv(),
                'L' => Psl2::l(),
                'l' => Psl2::l().inv(),
                'W' => Psl2::omega(),
                'w' => Psl2::omega().inv(),
                c if c.is_whitespace() => continue,
                c => return Err(Error::Input(format!("unknown letter {c:?} in word {word:?}"))),
            };
            m = m.mul(&g);
        }
        Ok(RepElement {
            word: word.to_string(),
            element: m,
        })
    }
}

/// `g(e)`.
pub fn edge_image(g: &Psl2, e: &FareyEdge) -> Result<FareyEdge> {
    let (a, b) = e.endpoints();
    FareyEdge::from_endpoints(&g.apply_proj(&a), &g.apply_proj(&b))
}

/// Maps `p ∈ src` to the simplex `dst`, matching the vertex labelled `x`
/// with the one labelled `g(x)`.
fn by_labels(
    g: &Psl2,
    p: &ChartPoint,
    src: &ChartSimplex,
    src_labels: &[GammaObj],
    dst: &ChartSimplex,
    dst_labels: &[GammaObj],
) -> Result<ChartPoint> {
    let l = src
        .coords_of(p)?
        .ok_or_else(|| Error::Domain(format!("{p} is not in the source simplex")))?;
    let img = src_labels
        .iter()
        .map(|o| {
            let t = o.translate(g);
            dst_labels
                .iter()
                .position(|d| *d == t)
                .map(|i| dst.vertices[i].clone())
                .ok_or_else(|| Error::Construction(format!("{t} is missing from the target simplex")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ChartSimplex::new(dst.chart, img).point_at(&l))
}

/// `ρ(g)` on the vertex labelled `obj` in `Δ_e`: the vertex labelled `g(obj)` in `Δ_{g(e)}`.
pub fn rho_vertex(net: &Network, g: &Psl2, obj: &GammaObj, e: &FareyEdge) -> Result<ChartPoint> {
    let ge = edge_image(g, e)?;
    if !net.has_edge(&ge) {
        return Err(Error::Depth(format!("{ge} is beyond depth {}", net.depth)));
    }
    net.labelled_vertex(&obj.translate(g), Some(&ge))
}

/// Whether `g` carries the triangle beyond `e` to the triangle beyond `g(e)`.
fn keeps_side(g: &Psl2, e: &FareyEdge, ge: &FareyEdge) -> Result<bool> {
    Ok(e.triangle_beyond().translate(g)? == ge.triangle_beyond())
}

fn weights_of(net: &Network, labels: &[GammaObj]) -> Vec<Rational> {
    labels
        .iter()
        .map(|o| net.weight(o).unwrap_or_else(rational::one))
        .collect()
}

/// `ρ(g)(p)`.
///
/// Core points map simplexwise by labels. Points in a separator collar map by
/// the affine map of the enclosing terminal, composed with the separator
/// involution when `g` swaps the two sides of the edge. Points behind a
/// frontier edge use the affine extension when `g` keeps the side, and are a
/// depth error otherwise.
pub fn rho_apply(net: &Network, g: &Psl2, p: &ChartPoint) -> Result<ChartPoint> {
    match net.locate(p)? {
        Location::Core { block, simplex, coords } => {
            let b = &net.blocks[block];
            let t = b.triangle.translate(g)?;
            let img = net
                .block(&t)
                .ok_or_else(|| Error::Depth(format!("block {} is beyond depth {}", t.address_string(), net.depth)))?;
            let mut ids = Vec::new();
            for &id in &net.model.core_sets()[simplex].ids() {
                let o = b.labelling.label(id).translate(g);
                ids.push(
                    img.labelling
                        .id_of(&o)
                        .ok_or_else(|| Error::Construction(format!("{o} does not label {}", t.address_string())))?,
                );
            }
            let mut sorted = ids.clone();
            sorted.sort_unstable();
            if !net.model.core_sets().iter().any(|s| s.ids() == sorted) {
                return Err(Error::Construction(format!(
                    "image of core simplex {simplex} is not a core simplex of {}",
                    t.address_string()
                )));
            }
            Ok(img.simplex(&ids).point_at(&coords))
        }
        Location::Frontier { edge } => {
            let ge = edge_image(g, &edge)?;
            if !net.has_edge(&ge) || !keeps_side(g, &edge, &ge)? {
                return Err(Error::Depth(format!("ρ at {p} needs the network beyond {edge}")));
            }
            let (src, dst) = (net.psi(&edge)?, net.psi(&ge)?);
            by_labels(g, p, &src.outer, &src.labels, &dst.outer, &dst.labels)
        }
        Location::Collar { edge } => {
            let ge = edge_image(g, &edge)?;
            if !net.has_edge(&ge) {
                return Err(Error::Depth(format!("{ge} is beyond depth {}", net.depth)));
            }
            let (src, dst) = (net.psi(&edge)?, net.psi(&ge)?);
            if keeps_side(g, &edge, &ge)? {
                return by_labels(g, p, &src.outer, &src.labels, &dst.outer, &dst.labels);
            }
            let s = weights_of(net, &src.labels);
            if src.simplex.contains(p)? {
                // child-side collar [H_e, S] turns into the parent side at g(e)
                let q = make_separator(&src.simplex, &s)?.involution(p)?;
                by_labels(g, &q, &src.simplex, &src.labels, &dst.outer, &dst.labels)
            } else {
                let q = make_separator(&src.outer, &s)?.involution(p)?;
                by_labels(g, &q, &src.outer, &src.labels, &dst.simplex, &dst.labels)
            }
        }
    }
}

/// Returns of a compact set `K` under `ρ(g)` for short words.
#[derive(Clone, Debug, Serialize)]
pub struct ProbeReport {
    pub max_len: usize,
    pub elements: usize,
    pub returns: Vec<String>,
    pub unresolved: Vec<String>,
}

/// `K` is core simplex 0 of `Ω[t₊]` shrunk by half towards its barycenter, a
/// compact set off the vertex cloud. Words are in `S`, `W`, `w`.
pub fn discontinuity_probe(net: &Network, max_len: usize) -> Result<ProbeReport> {
    if net.model.core_sets().is_empty() {
        return Err(Error::Input("the model block has no core simplices".into()));
    }
    let base = &net.blocks[0];
    let ids = net.model.core_sets()[0].ids();
    let core = base.simplex(&ids);
    let c = core.barycenter().coords;
    let half = rational::rat(1, 2);
    let kv: Vec<Vec<Rational>> = core
        .vertices
        .iter()
        .map(|v| v.iter().zip(&c).map(|(x, y)| (x + y) * &half).collect())
        .collect();
    let k = ChartSimplex::new(core.chart, kv);
    let lambdas: Vec<Vec<Rational>> = k
        .vertices
        .iter()
        .map(|v| core.coords_of(&ChartPoint::new(core.chart, v.clone())).map(|l| l.expect("same chart")))
        .collect::<Result<_>>()?;

    let mut seen: HashSet<Psl2> = HashSet::new();
    let mut layer = vec![RepElement::parse("")?];
    seen.insert(Psl2::identity());
    let mut all = layer.clone();
    for _ in 0..max_len {
        let mut next = Vec::new();
        for r in &layer {
            for l in ["S", "W", "w"] {
                let w = format!("{}{l}", r.word);
                let e = RepElement::parse(&w)?;
                if seen.insert(e.element.clone()) {
                    next.push(e);
                }
            }
        }
        all.extend(next.iter().cloned());
        layer = next;
    }
    let mut returns = Vec::new();
    let mut unresolved = Vec::new();
    for r in &all {
        let t = base.triangle.translate(&r.element)?;
        let Some(img) = net.block(&t) else {
            unresolved.push(r.word.clone());
            continue;
        };
        let img_ids: Vec<usize> = ids
            .iter()
            .map(|&id| img.labelling.id_of(&base.labelling.label(id).translate(&r.element)))
            .collect::<Option<_>>()
            .ok_or_else(|| Error::Construction(format!("labels of {} do not match", t.address_string())))?;
        let target = img.simplex(&img_ids);
        let moved = ChartSimplex::new(
            target.chart,
            lambdas.iter().map(|l| target.point_at(l).coords).collect(),
        );
        if closed_intersect(&moved, &k) {
            returns.push(if r.word.is_empty() { "1".into() } else { r.word.clone() });
        }
    }
    Ok(ProbeReport {
        max_len,
        elements: all.len(),
        returns,
        unresolved,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modtiling::Pattern;
    use crate::netbuild::network::build_network;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn golden(depth: usize) -> Network {
        build_network(&Pattern::with_cap(&["LR"], 16).unwrap(), depth).unwrap()
    }

    #[test]
    fn stabilizer_of_base_acts_as_sigma() {
        let net = golden(1);
        let w = Psl2::omega();
        let base = &net.blocks[0];
        for id in 0..net.model.core_sets().len() {
            let p = base.simplex(&net.model.core_sets()[id].ids()).barycenter();
            assert_eq!(rho_apply(&net, &w, &p).unwrap(), net.model.sigma_apply(&p).unwrap());
        }
    }

    #[test]
    fn relations_and_composition() {
        let net = golden(4);
        let s = Psl2::s();
        let w = Psl2::omega();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let cloud: Vec<ChartPoint> = net
            .blocks
            .iter()
            .filter(|b| b.triangle.distance() <= 1)
            .flat_map(|b| (0..b.positions.len()).map(move |i| b.vertex(i)))
            .collect();
        for p in &cloud {
            let q = rho_apply(&net, &s, p).unwrap();
            assert_eq!(&rho_apply(&net, &s, &q).unwrap(), p);
            let r = rho_apply(&net, &w, &rho_apply(&net, &w, &rho_apply(&net, &w, p).unwrap()).unwrap()).unwrap();
            assert_eq!(&r, p);
        }
        for _ in 0..10 {
            let a: String = (0..2).map(|_| ["S", "W", "w"][rng.gen_range(0..3)]).collect();
            let b: String = (0..2).map(|_| ["S", "W", "w"][rng.gen_range(0..3)]).collect();
            let ga = RepElement::parse(&a).unwrap().element;
            let gb = RepElement::parse(&b).unwrap().element;
            let gab = ga.mul(&gb);
            for p in cloud.iter().take(12) {
                let lhs = rho_apply(&net, &gab, p).unwrap();
                let rhs = rho_apply(&net, &ga, &rho_apply(&net, &gb, p).unwrap()).unwrap();
                assert_eq!(lhs, rhs, "{a} {b} at {p}");
            }
        }
    }

    #[test]
    fn vertices_follow_labels() {
        let net = golden(2);
        let e = FareyEdge::base(1);
        let entry = net.psi(&e).unwrap();
        let s = Psl2::s();
        for obj in &entry.labels {
            let img = rho_vertex(&net, &s, obj, &e).unwrap();
            let by_point = rho_apply(&net, &s, &entry.position(obj).unwrap()).unwrap();
            assert_eq!(img, by_point);
        }
    }

    #[test]
    fn frontier_points_need_depth_on_the_far_side() {
        let net = golden(1);
        let e = FareyEdge::base(1).child(crate::modtiling::Step::Left);
        let p = net.psi(&e).unwrap().simplex.barycenter();
        let (mut kept, mut deep) = (0, 0);
        for w in ["", "S", "W", "w", "SW", "Sw", "WS", "wS", "SWS", "SwS", "WSW", "wSw", "T", "t"] {
            let g = RepElement::parse(w).unwrap().element;
            let ge = edge_image(&g, &e).unwrap();
            match rho_apply(&net, &g, &p) {
                Ok(q) => {
                    kept += 1;
                    assert!(net.psi(&ge).unwrap().outer.contains(&q).unwrap(), "{w}");
                    assert!(keeps_side(&g, &e, &ge).unwrap());
                }
                Err(Error::Depth(_)) => deep += 1,
                Err(err) => panic!("{w}: {err}"),
            }
        }
        assert!(kept >= 2 && deep >= 2, "{kept} {deep}");
        assert_eq!(rho_apply(&net, &Psl2::identity(), &p).unwrap(), p);
    }

    #[test]
    fn probe_returns_are_finite() {
        let net = golden(5);
        let r = discontinuity_probe(&net, 6).unwrap();
        assert!(r.unresolved.is_empty(), "{:?}", r.unresolved);
        assert_eq!(r.returns, vec!["1".to_string()]);
    }
}
