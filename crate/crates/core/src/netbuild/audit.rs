//! Finite checks of the network axioms and of `Ψ`.

use std::collections::{HashMap, HashSet};

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use super::labelling::coord_id;
use super::network::Network;
use crate::error::{Error, Result};
use crate::exactnum::rational::{self, Rational};
use crate::exactnum::QuadSurd;
use crate::geometry::{
    closed_intersect, interiors_intersect, meet_is_common_face, simplex_contains, ChartPoint, ChartSimplex,
};
use crate::modblocks::separator::make_separator;
use crate::modtiling::{boundary_edges, nesting_sequence, FareyEdge, GammaObj, Target};

/// One named pass/fail line.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &str, pass: bool, detail: impl Into<String>) -> Check {
        Check {
            name: name.to_string(),
            pass,
            detail: detail.into(),
        }
    }
}

/// A top-dimensional piece of the network.
#[derive(Clone, Debug, Serialize)]
pub struct Cell {
    pub name: String,
    pub simplex: ChartSimplex,
}

/// Core simplices of every block, collar simplices of every internal edge, and
/// `W_e` for every frontier edge.
pub fn cells(net: &Network) -> Result<Vec<Cell>> {
    let mut out = Vec::new();
    for b in &net.blocks {
        for (i, s) in b.core_simplices(&net.model).into_iter().enumerate() {
            out.push(Cell {
                name: format!("{}:core{i}", b.triangle.address_string()),
                simplex: s,
            });
        }
    }
    for e in &net.edges {
        let entry = net.psi(e)?;
        if net.block(&e.triangle_beyond()).is_none() {
            out.push(Cell {
                name: format!("{e}:frontier"),
                simplex: entry.outer.clone(),
            });
            continue;
        }
        if !net.weighted {
            continue;
        }
        let s: Vec<Rational> = entry
            .labels
            .iter()
            .map(|o| net.weight(o).unwrap_or_else(rational::one))
            .collect();
        for (side, outer) in [("outer", &entry.outer), ("inner", &entry.simplex)] {
            let sep = make_separator(outer, &s)?;
            if sep.is_flat() {
                continue;
            }
            for (i, t) in sep.triangulation().into_iter().enumerate() {
                if !t.det_volume()?.is_zero() {
                    out.push(Cell {
                        name: format!("{e}:{side}collar{i}"),
                        simplex: t,
                    });
                }
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct DisjointReport {
    pub cells: usize,
    pub pairs: usize,
    pub overlaps: Vec<(String, String)>,
    /// Total volume of the cells; both charts together have volume 2.
    #[serde(with = "rational::serde_str")]
    pub volume: Rational,
    pub pass: bool,
}

/// Pairwise exact interior disjointness of all cells plus the volume count.
pub fn disjointness(net: &Network) -> Result<DisjointReport> {
    let cs = cells(net)?;
    let n = cs.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let overlaps: Vec<(String, String)> = pairs
        .par_iter()
        .filter(|&&(i, j)| interiors_intersect(&cs[i].simplex, &cs[j].simplex))
        .map(|&(i, j)| (cs[i].name.clone(), cs[j].name.clone()))
        .collect();
    let mut volume = Rational::zero();
    for c in &cs {
        volume += c.simplex.det_volume()?;
    }
    let pass = overlaps.is_empty() && volume == rational::int(2);
    Ok(DisjointReport {
        cells: n,
        pairs: pairs.len(),
        overlaps,
        volume,
        pass,
    })
}

/// Blocks across a built edge share the terminal with its labels: the child's
/// placed outer terminal is `Δ_e` and the parent's terminal is `W_e`.
pub fn terminal_sharing(net: &Network) -> Result<Vec<String>> {
    let mut bad = Vec::new();
    for b in net.blocks.iter().filter(|b| !b.triangle.is_base()) {
        let e = b.triangle.parent().expect("not the base");
        let entry = net.psi(e)?;
        let outer = b.outer_terminal()?;
        let k = b.k();
        for (i, v) in outer.vertex_points().into_iter().enumerate() {
            let label = b.labelling.label(coord_id(k, i));
            if entry.position(label).as_ref() != Some(&v) {
                bad.push(format!("{}: vertex {label} is off Δ at {e}", b.triangle.address_string()));
            }
        }
        let parent = if e.depth() == 0 {
            &net.blocks[0]
        } else {
            net.blocks
                .iter()
                .find(|p| p.triangle.outward_edges().contains(e))
                .ok_or_else(|| Error::Construction(format!("no parent block for {e}")))?
        };
        let j = (0..3).find(|&j| parent.triangle.edge(j) == *e).expect("edge of parent");
        if j == 0 {
            continue;
        }
        let w = parent.core_terminal(j);
        if parent.labelling.terminal(j) != entry.labels || w != entry.outer {
            bad.push(format!("{}: terminal {j} differs from W at {e}", parent.triangle.address_string()));
        }
    }
    Ok(bad)
}

/// Vertices of different `Δ_e` coincide iff they carry the same label of
/// weight 1.
pub fn vertex_coincidence(net: &Network) -> Vec<String> {
    let recs = net.vertex_records();
    let mut by_point: HashMap<&ChartPoint, Vec<usize>> = HashMap::new();
    let mut by_label: HashMap<&GammaObj, Vec<usize>> = HashMap::new();
    for (i, r) in recs.iter().enumerate() {
        by_point.entry(&r.point).or_default().push(i);
        by_label.entry(&r.label).or_default().push(i);
    }
    let mut bad = Vec::new();
    for (p, ids) in &by_point {
        let labels: HashSet<&GammaObj> = ids.iter().map(|&i| &recs[i].label).collect();
        if labels.len() > 1 {
            bad.push(format!("{} labels meet at {p}", labels.len()));
            continue;
        }
        let l = labels.into_iter().next().expect("nonempty");
        if ids.len() > 1 && net.weight(l).is_some_and(|w| w != rational::one()) {
            bad.push(format!("{l} has weight below 1 but repeats at {p}"));
        }
    }
    for (l, ids) in &by_label {
        let unit = net.weight(l).is_none_or(|w| w == rational::one());
        let pts: HashSet<&ChartPoint> = ids.iter().map(|&i| &recs[i].point).collect();
        let want = if unit { 1 } else { ids.len() };
        if pts.len() != want {
            bad.push(format!("{l} sits at {} points over {} simplices", pts.len(), ids.len()));
        }
    }
    bad.sort();
    bad
}

#[derive(Clone, Debug, Serialize)]
pub struct NestingReport {
    pub pairs: usize,
    pub nested: usize,
    pub apart: usize,
    pub failures: Vec<String>,
}

/// Arc nesting matches simplex containment; otherwise the simplices have
/// disjoint interiors and meet in the hull of their common vertices.
pub fn arc_nesting(net: &Network) -> Result<NestingReport> {
    let es = &net.edges;
    let pairs: Vec<(usize, usize)> = (0..es.len())
        .flat_map(|i| (i + 1..es.len()).map(move |j| (i, j)))
        .collect();
    let res: Vec<(bool, Option<String>)> = pairs
        .par_iter()
        .map(|&(i, j)| -> Result<(bool, Option<String>)> {
            let (a, b) = (&es[i], &es[j]);
            let (sa, sb) = (&net.psi(a)?.simplex, &net.psi(b)?.simplex);
            let (ab, ba) = (b.arc_contains_edge(a), a.arc_contains_edge(b));
            let msg = |what: &str| Some(format!("{a} / {b}: {what}"));
            if ab || ba {
                let (inner, outer) = if ab { (sa, sb) } else { (sb, sa) };
                let ok = simplex_contains(outer, inner)? && !simplex_contains(inner, outer)?;
                return Ok((true, if ok { None } else { msg("nested arcs, simplices not nested") }));
            }
            if interiors_intersect(sa, sb) {
                return Ok((false, msg("apart arcs, interiors meet")));
            }
            if !meet_is_common_face(sa, sb) {
                return Ok((false, msg("meet is not the common face")));
            }
            Ok((false, None))
        })
        .collect::<Result<_>>()?;
    let nested = res.iter().filter(|r| r.0).count();
    Ok(NestingReport {
        pairs: pairs.len(),
        nested,
        apart: pairs.len() - nested,
        failures: res.into_iter().filter_map(|r| r.1).collect(),
    })
}

/// `Λ_{m+1} ⊆ Λ_m`, simplex by simplex.
pub fn lambda_nesting(net: &Network) -> Result<Vec<String>> {
    let mut bad = Vec::new();
    for m in 0..net.depth {
        for e in boundary_edges(m) {
            let s = &net.psi(&e)?.simplex;
            for c in e.children() {
                if !simplex_contains(s, &net.psi(&c)?.simplex)? {
                    bad.push(format!("Δ at {c} leaves Δ at {e}"));
                }
            }
        }
    }
    Ok(bad)
}

/// Whether the profile of squared diameters strictly decreases.
pub fn strictly_decreasing(profile: &[Rational]) -> bool {
    profile.windows(2).all(|w| w[1] < w[0])
}

/// For one pattern geodesic: the two nesting sequences agree up to the split
/// and afterwards both simplices carry the vertex labelled by it.
#[derive(Clone, Debug, Serialize)]
pub struct EndpointTrace {
    pub geodesic: String,
    pub split: Option<usize>,
    pub pass: bool,
}

/// Checks every geodesic of `Γ_e` for `e` over `∂T_m` at every built depth.
pub fn endpoint_identification(net: &Network, m: usize) -> Result<Vec<EndpointTrace>> {
    let mut seen = HashSet::new();
    let mut gs = Vec::new();
    for e in boundary_edges(m) {
        for o in net.pattern.gamma_e(&e)?.iter() {
            if let Some(g) = o.as_geodesic() {
                if seen.insert(o.clone()) {
                    gs.push((o.clone(), g.clone()));
                }
            }
        }
    }
    gs.par_iter()
        .map(|(o, g)| {
            let (x, y) = g.key();
            let sx = nesting_sequence(Target::Surd { value: x.clone() }, net.depth + 1)?;
            let sy = nesting_sequence(Target::Surd { value: y.clone() }, net.depth + 1)?;
            let mut split = None;
            let mut pass = true;
            for d in 0..=net.depth {
                let (ex, ey) = (&sx.edges[d], &sy.edges[d]);
                if ex == ey {
                    pass &= split.is_none();
                    continue;
                }
                split.get_or_insert(d);
                let (px, py) = (net.psi(ex)?.position(o), net.psi(ey)?.position(o));
                pass &= px.is_some() && px == py;
            }
            Ok(EndpointTrace {
                geodesic: o.to_string(),
                split,
                pass,
            })
        })
        .collect()
}

/// Well separated irrational points, none an endpoint of a golden geodesic.
pub fn sample_point_pairs() -> Vec<(QuadSurd, QuadSurd)> {
    let s = |a: i64, b: i64, c: i64, d: i64| QuadSurd::new(a, b, c, d).expect("valid surd");
    vec![
        (s(0, 1, 1, 2), s(0, -1, 1, 2)),
        (s(0, 1, 1, 3), s(0, -1, 1, 7)),
        (s(0, 1, 2, 2), s(6, 1, 1, 2)),
        (s(0, 1, 4, 3), s(0, -1, 4, 3)),
        (s(1, 1, 1, 7), s(0, 1, 3, 2)),
        (s(-4, 1, 1, 3), s(4, 1, 1, 3)),
        (s(0, 1, 1, 11), s(0, 1, 5, 11)),
        (s(-5, 1, 1, 2), s(0, 1, 3, 7)),
        (s(1, 1, 5, 3), s(0, -1, 1, 13)),
        (s(-1, 1, 3, 2), s(9, 1, 2, 6)),
    ]
}

/// The first built depth at which the nesting simplices of `x` and `y` are
/// disjoint as closed sets.
pub fn separation_depth(net: &Network, x: &QuadSurd, y: &QuadSurd) -> Result<Option<usize>> {
    let sx = nesting_sequence(Target::Surd { value: x.clone() }, net.depth + 1)?;
    let sy = nesting_sequence(Target::Surd { value: y.clone() }, net.depth + 1)?;
    for d in 0..=net.depth {
        if !closed_intersect(&net.psi(&sx.edges[d])?.simplex, &net.psi(&sy.edges[d])?.simplex) {
            return Ok(Some(d));
        }
    }
    Ok(None)
}

/// `b` is `a` built from a permuted `t₀`-labelling: the same labelled vertices
/// up to the coordinate permutation it induces.
pub fn relabelling_agrees(a: &Network, b: &Network) -> Result<Vec<String>> {
    let (la, lb) = (&a.blocks[0].labelling, &b.blocks[0].labelling);
    let k = a.k();
    let mut q = vec![0usize; 2 * k];
    for (i, slot) in q.iter_mut().enumerate() {
        let obj = la.label(coord_id(k, i));
        let id = lb
            .id_of(obj)
            .ok_or_else(|| Error::Input(format!("{obj} is not a label of the second network")))?;
        *slot = (0..2 * k)
            .find(|&c| coord_id(k, c) == id)
            .ok_or_else(|| Error::Input(format!("{obj} moved off the outer terminal")))?;
    }
    let apply = |p: &ChartPoint| {
        let mut c = vec![Rational::zero(); 2 * k];
        for (i, x) in p.coords.iter().enumerate() {
            c[q[i]] = x.clone();
        }
        ChartPoint::new(p.chart, c)
    };
    let rb: HashMap<(FareyEdge, GammaObj), ChartPoint> = b
        .vertex_records()
        .into_iter()
        .map(|r| ((r.edge, r.label), r.point))
        .collect();
    let mut bad = Vec::new();
    for r in a.vertex_records() {
        match rb.get(&(r.edge.clone(), r.label.clone())) {
            Some(p) if *p == apply(&r.point) => {}
            _ => bad.push(format!("{} at {} moved", r.label, r.edge)),
        }
    }
    Ok(bad)
}

/// The network checks, one line each.
pub fn audit_network(net: &Network) -> Result<Vec<Check>> {
    let d = disjointness(net)?;
    let t = terminal_sharing(net)?;
    let v = vertex_coincidence(net);
    let n = arc_nesting(net)?;
    let l = lambda_nesting(net)?;
    let prof = net.diameter_profile()?;
    let first = |v: &[String]| v.first().cloned().unwrap_or_default();
    Ok(vec![
        Check::new(
            "disjoint interiors",
            d.pass,
            format!(
                "{} cells, {} pairs, {} overlaps, volume {}",
                d.cells,
                d.pairs,
                d.overlaps.len(),
                rational::to_string(&d.volume)
            ),
        ),
        Check::new("terminal sharing", t.is_empty(), first(&t)),
        Check::new("vertex coincidence", v.is_empty(), first(&v)),
        Check::new(
            "arc nesting",
            n.failures.is_empty(),
            format!("{} nested, {} apart {}", n.nested, n.apart, first(&n.failures)),
        ),
        Check::new("Λ nesting", l.is_empty(), first(&l)),
        Check::new(
            "diameter decay",
            strictly_decreasing(&prof),
            prof.iter().map(rational::to_string).collect::<Vec<_>>().join(" "),
        ),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modtiling::Pattern;
    use crate::netbuild::network::{build_network, UnitWeights};

    fn golden(depth: usize) -> Network {
        build_network(&Pattern::with_cap(&["LR"], 16).unwrap(), depth).unwrap()
    }

    #[test]
    fn golden_depth_two_passes_structural_checks() {
        let net = golden(2);
        let d = disjointness(&net).unwrap();
        assert!(d.pass, "{d:?}");
        assert_eq!(d.cells, 10 * 6 + 12);
        assert!(terminal_sharing(&net).unwrap().is_empty());
        assert_eq!(vertex_coincidence(&net), Vec::<String>::new());
        let n = arc_nesting(&net).unwrap();
        assert!(n.failures.is_empty(), "{:?}", n.failures);
        assert!(n.nested > 0 && n.apart > 0);
        assert!(lambda_nesting(&net).unwrap().is_empty());
    }

    #[test]
    fn geodesic_endpoints_share_their_vertex() {
        let net = golden(3);
        let tr = endpoint_identification(&net, 2).unwrap();
        assert!(!tr.is_empty());
        assert!(tr.iter().all(|t| t.pass), "{tr:?}");
    }

    #[test]
    fn sample_pairs_separate() {
        let net = golden(4);
        for (x, y) in sample_point_pairs() {
            assert!(separation_depth(&net, &x, &y).unwrap().is_some(), "{x} {y}");
        }
    }

    #[test]
    fn permuted_labelling_gives_the_same_network() {
        let p = Pattern::with_cap(&["LR"], 16).unwrap();
        let a = build_network(&p, 2).unwrap();
        let b = Network::build(&p, 2, &UnitWeights, Some(&[1, 0])).unwrap();
        assert_ne!(a.blocks[0].labelling.labels, b.blocks[0].labelling.labels);
        assert_eq!(relabelling_agrees(&a, &b).unwrap(), Vec::<String>::new());
    }

    #[test]
    fn broken_geometry_is_caught() {
        let mut net = golden(1);
        let v = net.blocks[1].positions[0].clone();
        net.blocks[1].positions[1] = v;
        assert!(!disjointness(&net).unwrap().pass);
    }

    #[test]
    fn decay_predicate() {
        let r = |a| rational::int(a);
        assert!(strictly_decreasing(&[r(3), r(2), r(1)]));
        assert!(!strictly_decreasing(&[r(2), r(2), r(1)]));
    }
}
