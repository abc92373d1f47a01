//! Degenerating a modified network onto the network of a sub-pattern, and the
//! standard action on the circle.

use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::modified::hausdorff2;
use super::weighting::Weighting;
use crate::error::{Error, Result};
use crate::exactnum::rational::{self, Rational};
use crate::geometry::{chart_dist2, Chart, ChartPoint};
use crate::modtiling::{base_triangle, GammaObj, Geodesic, Pattern};
use crate::netbuild::labelling::TauLabelling;
use crate::netbuild::network::WeightFn;
use crate::netbuild::{build_network, Network};

/// `i : S^{2k₁−1} → S^{2k₂−1}`: coordinate `j < k₁` goes to `j`, coordinate
/// `k₁ + j` to `k₂ + j`, the rest are zero.
pub fn natural_embed(p: &ChartPoint, k1: usize, k2: usize) -> Result<ChartPoint> {
    if p.dim() != 2 * k1 || k2 < k1 {
        return Err(Error::Input(format!(
            "cannot embed a point of dimension {} from k = {k1} into k = {k2}",
            p.dim()
        )));
    }
    let mut c = vec![Rational::zero(); 2 * k2];
    for j in 0..k1 {
        c[j] = p.coords[j].clone();
        c[k2 + j] = p.coords[k1 + j].clone();
    }
    Ok(ChartPoint::new(p.chart, c))
}

/// Seed orbits of `sub` as orbits of `p`. Each seed of `sub` must be a seed of `p`.
pub fn orbit_map(p: &Pattern, sub: &Pattern) -> Result<Vec<Option<usize>>> {
    let mut map = vec![None; p.seeds().len()];
    for (i, s) in sub.seeds().iter().enumerate() {
        let o = p
            .seeds()
            .iter()
            .position(|g| g == s)
            .ok_or_else(|| Error::Input(format!("seed {} of the sub-pattern is not a seed of the pattern", sub.spec().seeds[i])))?;
        map[o] = Some(i);
    }
    Ok(map)
}

/// `f_ε`: `f` on the sub-pattern, `ε` elsewhere.
pub struct Degenerate<'a> {
    pub map: Vec<Option<usize>>,
    pub f: &'a Weighting,
    pub eps: Rational,
}

impl WeightFn for Degenerate<'_> {
    fn weight(&self, obj: &GammaObj) -> Result<Rational> {
        let Some(g) = obj.as_geodesic() else {
            return Ok(rational::one());
        };
        match self.map[g.orbit] {
            Some(i) => self.f.weight(&GammaObj::Geodesic {
                geodesic: Geodesic { orbit: i, ..g.clone() },
            }),
            None => Ok(self.eps.clone()),
        }
    }
}

/// Orbit order on `t₊` for `p` putting the orbits of `sub` first, in the
/// order `sub` uses.
pub fn base_perm(p: &Pattern, sub: &Pattern) -> Result<Vec<usize>> {
    let t = base_triangle();
    let big = TauLabelling::new(p, &t, None)?;
    let small = TauLabelling::new(sub, &t, None)?;
    let (k1, k2) = (small.k(), big.k());
    let mut perm = Vec::with_capacity(k2);
    for j in 0..k1 {
        let obj = small.label(k1 + j);
        let id = big
            .id_of(obj)
            .filter(|id| (k2..2 * k2).contains(id))
            .ok_or_else(|| Error::Construction(format!("{obj} does not label a B vertex of t₊")))?;
        perm.push(id - k2);
    }
    let rest: Vec<usize> = (0..k2).filter(|i| !perm.contains(i)).collect();
    perm.extend(rest);
    Ok(perm)
}

#[derive(Clone, Debug, Serialize)]
pub struct DegenerationStep {
    pub m: usize,
    #[serde(with = "rational::serde_str")]
    pub eps: Rational,
    /// Largest squared vertex-to-target distance.
    #[serde(with = "rational::serde_str")]
    pub max_dist2: Rational,
    pub max_dist: f64,
    /// Squared Hausdorff distance from the vertex cloud to the embedded
    /// cloud of the sub-pattern network, in the lifted embedding.
    #[serde(with = "rational::serde_str")]
    pub cloud_hausdorff2: Rational,
}

/// One vertex of one filled-in terminal along the sequence.
#[derive(Clone, Debug, Serialize)]
pub struct VertexTrace {
    pub label: String,
    /// Labelled by the sub-pattern or an ideal vertex: the target is the
    /// namesake vertex, otherwise the barycenter.
    pub surviving: bool,
    #[serde(with = "rational::serde_vec")]
    pub dist2: Vec<Rational>,
    pub dist: Vec<f64>,
}

impl VertexTrace {
    pub fn nonincreasing(&self) -> bool {
        self.dist2.windows(2).all(|w| w[1] <= w[0])
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TerminalTrace {
    pub edge: String,
    pub vertices: Vec<VertexTrace>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DegenerationReport {
    pub pattern: Vec<String>,
    pub sub_pattern: Vec<String>,
    pub depth: usize,
    pub k: usize,
    pub sub_k: usize,
    pub steps: Vec<DegenerationStep>,
    pub terminals: Vec<TerminalTrace>,
    pub nonincreasing: bool,
    /// Largest final-over-initial distance among vertices that start off target.
    pub worst_ratio: f64,
}

impl DegenerationReport {
    pub fn traces(&self) -> impl Iterator<Item = &VertexTrace> {
        self.terminals.iter().flat_map(|t| &t.vertices)
    }

    /// Every distance nonincreasing, and each final distance at most `bound`
    /// times the initial one.
    pub fn converges(&self, bound: &Rational) -> bool {
        let b2 = bound * bound;
        self.nonincreasing
            && self.traces().all(|t| match (t.dist2.first(), t.dist2.last()) {
                (Some(a), Some(z)) => *z <= a * &b2,
                _ => false,
            })
    }
}

/// Vertex-to-target squared distances over every built `Δ_e` of `big`, in
/// build order.
///
/// Vertices labelled by the sub-pattern (or by ideal vertices) are compared
/// with their namesakes in `i(Δ_e)`; the others with its barycenter.
pub fn limit_distances(big: &Network, small: &Network) -> Result<Vec<(String, String, bool, Rational)>> {
    let (k1, k2) = (small.k(), big.k());
    let mut out = Vec::new();
    for e in &big.edges {
        let target = small.psi(e)?;
        let bary = natural_embed(&target.simplex.barycenter(), k1, k2)?;
        let here = big.psi(e)?;
        for (label, p) in here.labels.iter().zip(here.simplex.vertex_points()) {
            let (surviving, q) = match target.position(label) {
                Some(v) => (true, natural_embed(&v, k1, k2)?),
                None => (false, bary.clone()),
            };
            let d = chart_dist2(&p, &q).ok_or_else(|| {
                Error::Geometry(format!("{p} and {q} lie in the interiors of different charts"))
            })?;
            out.push((e.to_string(), label.to_string(), surviving, d));
        }
    }
    Ok(out)
}

/// Builds `N(sub, f)` and `N(p, f_ε)` for `ε = 2⁻ᵐ`, `m = 1..=steps`.
pub fn degenerate(p: &Pattern, sub: &Pattern, f: &Weighting, steps: usize, depth: usize) -> Result<DegenerationReport> {
    if steps == 0 || steps > 62 {
        return Err(Error::Input(format!("steps must lie in 1..=62, got {steps}")));
    }
    let map = orbit_map(p, sub)?;
    let perm = base_perm(p, sub)?;
    let small = Network::build(sub, depth, f, None)?;
    let (k1, k2) = (small.k(), p.k()?);
    let target_cloud = small
        .limit_cloud()
        .iter()
        .map(|c| natural_embed(&c.point, k1, k2))
        .collect::<Result<Vec<_>>>()?;
    let runs = (1..=steps)
        .into_par_iter()
        .map(|m| {
            let eps = rational::rat(1, 1i64 << m);
            let w = Degenerate {
                map: map.clone(),
                f,
                eps: eps.clone(),
            };
            let big = Network::build(p, depth, &w, Some(&perm))?;
            let d = limit_distances(&big, &small)?;
            let cloud: Vec<ChartPoint> = big.limit_cloud().into_iter().map(|c| c.point).collect();
            let max_dist2 = d.iter().map(|x| x.3.clone()).max().unwrap_or_default();
            let step = DegenerationStep {
                m,
                eps,
                max_dist: rational::to_f64(&max_dist2).sqrt(),
                max_dist2,
                cloud_hausdorff2: hausdorff2(&cloud, &target_cloud)?,
            };
            Ok((step, d))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut terminals: Vec<TerminalTrace> = Vec::new();
    for (i, (edge, label, surviving, _)) in runs[0].1.iter().enumerate() {
        if terminals.last().is_none_or(|t| &t.edge != edge) {
            terminals.push(TerminalTrace {
                edge: edge.clone(),
                vertices: Vec::new(),
            });
        }
        let dist2: Vec<Rational> = runs.iter().map(|r| r.1[i].3.clone()).collect();
        terminals.last_mut().expect("pushed").vertices.push(VertexTrace {
            label: label.clone(),
            surviving: *surviving,
            dist: dist2.iter().map(|x| rational::to_f64(x).sqrt()).collect(),
            dist2,
        });
    }
    let traces = terminals.iter().flat_map(|t| &t.vertices);
    let nonincreasing = traces.clone().all(VertexTrace::nonincreasing);
    let worst_ratio = traces
        .filter(|t| t.dist2[0].is_positive())
        .map(|t| t.dist[t.dist.len() - 1] / t.dist[0])
        .fold(0.0, f64::max);
    Ok(DegenerationReport {
        pattern: p.spec().seeds,
        sub_pattern: sub.spec().seeds,
        depth,
        k: k2,
        sub_k: k1,
        steps: runs.into_iter().map(|r| r.0).collect(),
        terminals,
        nonincreasing,
        worst_ratio,
    })
}

/// `ρ₀` on `S¹` (coordinates `(x, 1 − x)` in either chart) for a word in `S`,
/// `W` (the rotation of `t₊`) and `w` (its inverse), applied right to left.
pub fn standard_rep(word: &str, p: &ChartPoint) -> Result<ChartPoint> {
    if p.dim() != 2 {
        return Err(Error::Input(format!("{p} is not a point of the circle")));
    }
    p.validate()?;
    let mut q = p.clone();
    for c in word.chars().rev().filter(|c| !c.is_whitespace()) {
        q = match c {
            'S' => iota(&q),
            'W' => sigma(&q),
            'w' => sigma_inv(&q),
            _ => return Err(Error::Input(format!("letter {c:?} is not one of S, W, w"))),
        };
    }
    Ok(q)
}

fn pt(chart: Chart, x: Rational) -> ChartPoint {
    let y = rational::one() - &x;
    ChartPoint::new(chart, vec![x, y])
}

fn half() -> Rational {
    rational::rat(1, 2)
}

fn iota(p: &ChartPoint) -> ChartPoint {
    pt(p.chart.other(), p.coords[1].clone())
}

/// `I₋ → [A, B] → [B, C] → I₋`, affine on each arc; `A = (1, 0)`, `C = (0, 1)`.
fn sigma(p: &ChartPoint) -> ChartPoint {
    let x = &p.coords[0];
    if p.chart == Chart::Minus || x.is_zero() {
        // C ↦ A, A ↦ B along I₋ = {x from 0 to 1}
        pt(Chart::Plus, rational::one() - x * half())
    } else if x >= &half() {
        // [A, B]: x from 1 to 1/2 ↦ [B, C]: 1/2 to 0
        pt(Chart::Plus, x - half())
    } else {
        // [B, C]: x from 1/2 to 0 ↦ I₋: 0 to 1
        pt(Chart::Minus, rational::one() - x * rational::int(2))
    }
}

fn sigma_inv(p: &ChartPoint) -> ChartPoint {
    sigma(&sigma(p))
}

/// Checks `ρ₀(g)(v) = ρ(g)(v)` on every labelled vertex of the empty-pattern
/// network for each word; returns the number of comparisons made.
pub fn standard_rep_agrees(net: &Network, words: &[&str]) -> Result<usize> {
    if net.k() != 1 {
        return Err(Error::Input("the standard action lives on the empty pattern".into()));
    }
    let mut n = 0;
    for w in words {
        let g = crate::netbuild::RepElement::parse(w)?.element;
        for r in net.vertex_records() {
            let Ok(img) = crate::netbuild::rho_vertex(net, &g, &r.label, &r.edge) else {
                continue;
            };
            let want = standard_rep(w, &r.point)?;
            if img != want {
                return Err(Error::Construction(format!(
                    "{w} sends {} to {img} in the network, {want} in the standard action",
                    r.label
                )));
            }
            n += 1;
        }
    }
    Ok(n)
}

/// The empty-pattern network: the Farey tessellation on the circle.
#[derive(Clone, Debug, Serialize)]
pub struct EmptyLimit {
    pub depth: usize,
    pub arcs: usize,
    /// `Λ_m` tiles the circle: parameter lengths add up to 2 and consecutive
    /// arcs meet.
    pub tiles: bool,
    #[serde(with = "rational::serde_str")]
    pub max_len2: Rational,
}

pub fn empty_pattern_limit(depth: usize) -> Result<EmptyLimit> {
    let net = build_network(&Pattern::empty(), depth)?;
    let lam = net.lambda_m(depth)?;
    let mut total = Rational::zero();
    let mut ends: Vec<ChartPoint> = Vec::new();
    for (_, s) in &lam {
        let v = s.vertex_points();
        total += (v[0].coords[0].clone() - &v[1].coords[0]).abs();
        ends.extend(v);
    }
    ends.sort();
    let paired = ends.chunks(2).all(|c| c.len() == 2 && c[0] == c[1]);
    Ok(EmptyLimit {
        depth,
        arcs: lam.len(),
        tiles: paired && total == rational::int(2),
        max_len2: lam.iter().map(|(_, s)| s.diameter2()).max().unwrap_or_default(),
    })
}
