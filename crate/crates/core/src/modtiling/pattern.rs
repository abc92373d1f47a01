//! Modular patterns and their crossing sets `Γ_e`, `Γ_τ`.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock, RwLock};

use serde::{Deserialize, Serialize};

use super::farey::{base_triangle, FareyEdge, FareyTriangle};
use super::psl2::Psl2;
use crate::error::{Error, Result};
use crate::exactnum::{ProjRational, QuadSurd, Rational};

/// Environment variable overriding the default walk cap.
pub const CAP_ENV: &str = "CIRCLEQUOT_WORD_CAP";
pub const DEFAULT_CAP: usize = 256;

/// A geodesic of the pattern, the axis of `holonomy`.
///
/// Identity is the unordered endpoint pair. `witness` is a group element
/// carrying the axis of seed `orbit` onto this geodesic.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Geodesic {
    pub attracting: QuadSurd,
    pub repelling: QuadSurd,
    pub holonomy: Psl2,
    pub orbit: usize,
    pub witness: Psl2,
}

impl Geodesic {
    pub fn from_holonomy(h: Psl2, orbit: usize) -> Result<Geodesic> {
        let (attracting, repelling) = h.axis()?;
        if attracting.is_rational() {
            return Err(Error::Input(format!("{h} has rational fixed points")));
        }
        Ok(Geodesic {
            attracting,
            repelling,
            holonomy: h,
            orbit,
            witness: Psl2::identity(),
        })
    }

    /// Seed geodesic of a positive word in `L`, `R` using both letters.
    pub fn from_word(w: &str, orbit: usize) -> Result<Geodesic> {
        let w = w.trim();
        if w.is_empty() || !w.chars().all(|c| c == 'L' || c == 'R') || !w.contains('L') || !w.contains('R') {
            return Err(Error::Input(format!(
                "seed {w:?} must be a word in L and R using both letters"
            )));
        }
        Geodesic::from_holonomy(Psl2::from_word(w)?, orbit)
    }

    /// Endpoints in increasing order.
    pub fn key(&self) -> (&QuadSurd, &QuadSurd) {
        if self.attracting < self.repelling {
            (&self.attracting, &self.repelling)
        } else {
            (&self.repelling, &self.attracting)
        }
    }

    pub fn translate(&self, g: &Psl2) -> Geodesic {
        let im = |x: &QuadSurd| g.apply_surd(x).expect("irrational points stay finite");
        Geodesic {
            attracting: im(&self.attracting),
            repelling: im(&self.repelling),
            holonomy: self.holonomy.conj(g),
            orbit: self.orbit,
            witness: g.mul(&self.witness),
        }
    }

    pub fn shares_endpoint(&self, o: &Geodesic) -> bool {
        self != o
            && (self.attracting == o.attracting
                || self.attracting == o.repelling
                || self.repelling == o.attracting
                || self.repelling == o.repelling)
    }

    /// Squared height of the crossing point with the imaginary axis, for
    /// geodesics whose endpoints have opposite signs.
    fn height2(&self) -> Rational {
        let p = self
            .attracting
            .mul(&self.repelling)
            .expect("conjugate endpoints share a field");
        -p.to_rational().expect("norm is rational")
    }
}

impl PartialEq for Geodesic {
    fn eq(&self, o: &Self) -> bool {
        self.key() == o.key()
    }
}

impl Eq for Geodesic {}

impl Hash for Geodesic {
    fn hash<H: Hasher>(&self, h: &mut H) {
        self.key().hash(h)
    }
}

impl fmt::Display for Geodesic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.attracting, self.repelling)
    }
}

/// Result of the interleaving test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Crossing {
    pub crosses: bool,
    pub shared_endpoint: bool,
}

/// Whether the endpoints of `g` and `e` strictly interleave on the circle.
pub fn crosses(g: &Geodesic, e: &FareyEdge) -> Crossing {
    let (a, b) = e.endpoints();
    let shared = [&g.attracting, &g.repelling].iter().any(|x| {
        x.to_rational()
            .map(|r| {
                let p = ProjRational::from_rational(&r);
                p == a || p == b
            })
            .unwrap_or(false)
    });
    if shared {
        return Crossing {
            crosses: false,
            shared_endpoint: true,
        };
    }
    Crossing {
        crosses: e.arc_contains_surd(&g.attracting) != e.arc_contains_surd(&g.repelling),
        shared_endpoint: false,
    }
}

/// An element of `Γ_e` or `Γ_τ`: an ideal vertex or a geodesic.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum GammaObj {
    Vertex { point: ProjRational },
    Geodesic { geodesic: Geodesic },
}

impl GammaObj {
    pub fn translate(&self, g: &Psl2) -> GammaObj {
        match self {
            GammaObj::Vertex { point } => GammaObj::Vertex {
                point: g.apply_proj(point),
            },
            GammaObj::Geodesic { geodesic } => GammaObj::Geodesic {
                geodesic: geodesic.translate(g),
            },
        }
    }

    pub fn as_geodesic(&self) -> Option<&Geodesic> {
        match self {
            GammaObj::Geodesic { geodesic } => Some(geodesic),
            GammaObj::Vertex { .. } => None,
        }
    }

    pub fn is_vertex(&self) -> bool {
        matches!(self, GammaObj::Vertex { .. })
    }

    fn sort_cmp(&self, o: &GammaObj) -> Ordering {
        match (self, o) {
            (GammaObj::Vertex { point: a }, GammaObj::Vertex { point: b }) => a.cmp(b),
            (GammaObj::Vertex { .. }, _) => Ordering::Less,
            (_, GammaObj::Vertex { .. }) => Ordering::Greater,
            (GammaObj::Geodesic { geodesic: a }, GammaObj::Geodesic { geodesic: b }) => a.key().cmp(&b.key()),
        }
    }
}

impl fmt::Display for GammaObj {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GammaObj::Vertex { point } => write!(f, "{point}"),
            GammaObj::Geodesic { geodesic } => write!(f, "{geodesic}"),
        }
    }
}

/// Closure data for the walk along each seed axis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub cap: usize,
    /// Number of edges crossed per period, one entry per seed.
    pub periods: Vec<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CrossingList {
    pub edge: FareyEdge,
    pub geodesics: Vec<Geodesic>,
    pub certificate: Certificate,
}

#[derive(Clone, Debug)]
struct BaseSet {
    geodesics: Vec<Geodesic>,
    certificate: Certificate,
    stabilizers: Vec<Vec<Psl2>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternSpec {
    pub seeds: Vec<String>,
}

/// A finite union of `PSL₂(ℤ)`-orbits of closed geodesic axes.
#[derive(Debug)]
pub struct Pattern {
    words: Vec<String>,
    seeds: Vec<Geodesic>,
    cap: usize,
    base: OnceLock<Result<BaseSet>>,
    cache: RwLock<HashMap<FareyEdge, Arc<Vec<GammaObj>>>>,
}

impl Clone for Pattern {
    fn clone(&self) -> Self {
        Pattern::with_cap(&self.words, self.cap).expect("seeds were valid")
    }
}

pub fn cap_from_env() -> usize {
    std::env::var(CAP_ENV)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_CAP)
}

impl Pattern {
    pub fn new<S: AsRef<str>>(words: &[S]) -> Result<Pattern> {
        Pattern::with_cap(words, cap_from_env())
    }

    pub fn with_cap<S: AsRef<str>>(words: &[S], cap: usize) -> Result<Pattern> {
        let words: Vec<String> = words.iter().map(|w| w.as_ref().trim().to_string()).collect();
        let seeds = words
            .iter()
            .enumerate()
            .map(|(i, w)| Geodesic::from_word(w, i))
            .collect::<Result<_>>()?;
        Ok(Pattern {
            words,
            seeds,
            cap,
            base: OnceLock::new(),
            cache: RwLock::new(HashMap::new()),
        })
    }

    pub fn empty() -> Pattern {
        Pattern::with_cap::<&str>(&[], DEFAULT_CAP).expect("empty pattern")
    }

    pub fn from_spec(s: &PatternSpec) -> Result<Pattern> {
        Pattern::new(&s.seeds)
    }

    pub fn spec(&self) -> PatternSpec {
        PatternSpec {
            seeds: self.words.clone(),
        }
    }

    pub fn seeds(&self) -> &[Geodesic] {
        &self.seeds
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn is_empty(&self) -> bool {
        self.seeds.is_empty()
    }

    fn base(&self) -> Result<&BaseSet> {
        self.base
            .get_or_init(|| enumerate_base(&self.seeds, self.cap))
            .as_ref()
            .map_err(Clone::clone)
    }

    /// Geodesics crossing `e`, ordered from the `-∞` end of `e` to the other.
    pub fn orbit_enumerate(&self, e: &FareyEdge) -> Result<CrossingList> {
        let base = self.base()?;
        let f = e.frame();
        Ok(CrossingList {
            edge: e.clone(),
            geodesics: base.geodesics.iter().map(|g| g.translate(&f)).collect(),
            certificate: base.certificate.clone(),
        })
    }

    /// Elements fixing each seed, found while walking its axis: the period of
    /// the walk, and one element per pair of crossings related by `S`.
    pub fn seed_stabilizers(&self) -> Result<Vec<Vec<Psl2>>> {
        Ok(self.base()?.stabilizers.clone())
    }

    /// `|Γ|`: the number of geodesics crossing any edge, plus one.
    pub fn gamma_size(&self) -> Result<usize> {
        Ok(self.base()?.geodesics.len() + 1)
    }

    /// Half of `|Γ_e|`.
    pub fn k(&self) -> Result<usize> {
        Ok((self.gamma_size()? + 1) / 2)
    }

    pub fn gamma_e(&self, e: &FareyEdge) -> Result<Arc<Vec<GammaObj>>> {
        if let Some(v) = self.cache.read().expect("cache lock").get(e) {
            return Ok(v.clone());
        }
        let list = self.orbit_enumerate(e)?;
        let (a, b) = e.endpoints();
        let mut out = vec![GammaObj::Vertex { point: a }, GammaObj::Vertex { point: b }];
        out.extend(list.geodesics.into_iter().map(|g| GammaObj::Geodesic { geodesic: g }));
        let v = Arc::new(out);
        self.cache.write().expect("cache lock").insert(e.clone(), v.clone());
        Ok(v)
    }

    /// `Γ_τ`: vertices of `τ` by value, then geodesics by endpoints.
    pub fn gamma_tau(&self, t: &FareyTriangle) -> Result<Vec<GammaObj>> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for e in t.edges() {
            for o in self.gamma_e(&e)?.iter() {
                if seen.insert(o.clone()) {
                    out.push(o.clone());
                }
            }
        }
        out.sort_by(|a, b| a.sort_cmp(b));
        let k = self.k()?;
        if out.len() != 3 * k {
            return Err(Error::Geometry(format!(
                "Γ_τ of {t} has {} elements, expected {}",
                out.len(),
                3 * k
            )));
        }
        Ok(out)
    }

    /// Number of `2k`-subsets of `Γ_τ` containing no orbit of the rotation
    /// group of `τ` and not preserved by the involution of any side of `τ`.
    pub fn abstract_simplex_count(&self, t: &FareyTriangle) -> Result<usize> {
        let objs = self.gamma_tau(t)?;
        let k = self.k()?;
        let n = objs.len();
        let idx: HashMap<&GammaObj, usize> = objs.iter().enumerate().map(|(i, o)| (o, i)).collect();
        let perm = |g: &Psl2| -> Vec<Option<usize>> {
            objs.iter().map(|o| idx.get(&o.translate(g)).copied()).collect()
        };
        let rot = perm(&t.rotation());
        if rot.iter().any(Option::is_none) {
            return Err(Error::Geometry(format!("rotation of {t} does not preserve Γ_τ")));
        }
        let mut orbit_masks = Vec::new();
        let mut done = 0u64;
        for i in 0..n {
            if done >> i & 1 == 1 {
                continue;
            }
            let mut m = 0u64;
            let mut j = i;
            while m >> j & 1 == 0 {
                m |= 1 << j;
                j = rot[j].expect("checked");
            }
            done |= m;
            orbit_masks.push(m);
        }
        let invs: Vec<Vec<Option<usize>>> = t.edges().iter().map(|e| perm(&e.involution())).collect();
        let stable = |mask: u64, p: &[Option<usize>]| -> bool {
            (0..n)
                .filter(|&i| mask >> i & 1 == 1)
                .all(|i| matches!(p[i], Some(j) if mask >> j & 1 == 1))
        };
        let mut count = 0;
        for mask in combinations(n, 2 * k) {
            if orbit_masks.iter().any(|&o| mask & o == o) {
                continue;
            }
            if invs.iter().any(|p| stable(mask, p)) {
                continue;
            }
            count += 1;
        }
        Ok(count)
    }

    /// Largest number of geodesics shared by `Γ_{t₊}` and `Γ_τ` over the
    /// triangles at each distance `1..=max_depth`, and the smallest `m₀` from
    /// which on the value stays at most one.
    pub fn basic2_witness(&self, max_depth: usize) -> Result<Basic2Report> {
        let base: HashSet<GammaObj> = self
            .gamma_tau(&base_triangle())?
            .into_iter()
            .filter(|o| !o.is_vertex())
            .collect();
        let mut per_depth = Vec::new();
        let mut front: Vec<FareyEdge> = (0..3).map(FareyEdge::base).collect();
        for d in 1..=max_depth {
            let mut worst = 0;
            for e in &front {
                let g = self.gamma_tau(&e.triangle_beyond())?;
                let shared = g.iter().filter(|o| base.contains(*o)).count();
                worst = worst.max(shared);
            }
            per_depth.push((d, worst));
            front = front.iter().flat_map(|e| e.children()).collect();
        }
        let mut m0 = None;
        for &(d, w) in per_depth.iter().rev() {
            if w <= 1 {
                m0 = Some(d);
            } else {
                break;
            }
        }
        Ok(Basic2Report { per_depth, m0 })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Basic2Report {
    pub per_depth: Vec<(usize, usize)>,
    pub m0: Option<usize>,
}

/// All `r`-element subsets of `0..n` as bit masks, in increasing order.
fn combinations(n: usize, r: usize) -> impl Iterator<Item = u64> {
    assert!(n < 64);
    let mut cur: Option<u64> = if r <= n { Some((1u64 << r) - 1) } else { None };
    std::iter::from_fn(move || {
        let c = cur?;
        // Gosper's hack
        let next = if c == 0 {
            None
        } else {
            let u = c & c.wrapping_neg();
            let v = c + u;
            let nx = v + (((v ^ c) / u) >> 2);
            (nx < 1u64 << n).then_some(nx)
        };
        cur = next;
        Some(c)
    })
}

/// Walks every seed axis edge by edge, renormalizing the crossed edge to
/// `(0, ∞)` each time, until the walk closes up.
fn enumerate_base(seeds: &[Geodesic], cap: usize) -> Result<BaseSet> {
    let t_inv = Psl2::t().inv();
    let l_inv = Psl2::l().inv();
    let one = QuadSurd::from_int(1);
    let mut all: Vec<Geodesic> = Vec::new();
    let mut seen: HashMap<Geodesic, (usize, Psl2)> = HashMap::new();
    let mut periods = Vec::new();
    let mut stabilizers = vec![Vec::new(); seeds.len()];
    for s in seeds {
        if let Some((o, _)) = seen.get(s) {
            return Err(Error::Input(format!("seed {} repeats orbit {o}", s.orbit)));
        }
        let mut cur = s.clone();
        let mut states = Vec::new();
        loop {
            states.push(cur.clone());
            let step = if cur.attracting > one { &t_inv } else { &l_inv };
            cur = cur.translate(step);
            if cur.attracting == s.attracting && cur.repelling == s.repelling {
                break;
            }
            if states.len() >= cap {
                return Err(Error::Incomplete(format!(
                    "walk along seed {} did not close within {cap} edges (set {CAP_ENV} to raise)",
                    s.orbit
                )));
            }
        }
        periods.push(states.len());
        stabilizers[s.orbit].push(cur.witness.clone());
        let flipped: Vec<Geodesic> = states.iter().map(|g| g.translate(&Psl2::s())).collect();
        for g in states.into_iter().chain(flipped) {
            match seen.get(&g) {
                Some((o, _)) if *o != g.orbit => {
                    return Err(Error::Input(format!("seed {} repeats orbit {o}", g.orbit)));
                }
                Some((_, w)) => {
                    let h = w.inv().mul(&g.witness);
                    if !h.is_identity() && !stabilizers[g.orbit].contains(&h) {
                        stabilizers[g.orbit].push(h);
                    }
                }
                None => {
                    seen.insert(g.clone(), (g.orbit, g.witness.clone()));
                    all.push(g);
                }
            }
        }
    }
    if all.len() % 2 != 0 {
        return Err(Error::Parity(format!(
            "{} geodesics cross each edge; an even count was expected",
            all.len()
        )));
    }
    for (i, a) in all.iter().enumerate() {
        for b in &all[i + 1..] {
            if a.shares_endpoint(b) {
                return Err(Error::Geometry(format!("geodesics {a} and {b} share an endpoint")));
            }
        }
    }
    all.sort_by(|a, b| a.height2().cmp(&b.height2()).then_with(|| a.key().cmp(&b.key())));
    Ok(BaseSet {
        geodesics: all,
        certificate: Certificate { cap, periods },
        stabilizers,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modtiling::farey::{expand, Step};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn golden() -> Pattern {
        Pattern::with_cap(&["LR"], 16).unwrap()
    }

    fn random_edge(rng: &mut ChaCha8Rng, max_depth: usize) -> FareyEdge {
        let mut e = FareyEdge::base(rng.gen_range(0..3));
        for _ in 0..rng.gen_range(0..=max_depth) {
            e = e.child(if rng.gen() { Step::Left } else { Step::Right });
        }
        e
    }

    fn random_element(rng: &mut ChaCha8Rng) -> Psl2 {
        let mut g = Psl2::identity();
        for _ in 0..rng.gen_range(1..8) {
            let x = match rng.gen_range(0..3) {
                0 => Psl2::s(),
                1 => Psl2::t(),
                _ => Psl2::t().inv(),
            };
            g = g.mul(&x);
        }
        g
    }

    #[test]
    fn recorded_stabilizers_fix_their_seeds() {
        for words in [&["LR"][..], &["LR", "LLR"], &["LLRR"]] {
            let p = Pattern::with_cap(words, 64).unwrap();
            let st = p.seed_stabilizers().unwrap();
            for (seed, hs) in p.seeds().iter().zip(&st) {
                assert!(hs[0].trace().magnitude() > &num_bigint::BigUint::from(2u8));
                for h in hs {
                    assert_eq!(&seed.translate(h), seed);
                }
            }
        }
    }

    #[test]
    fn golden_crossing_examples() {
        let g = Geodesic::from_word("RL", 0).unwrap();
        assert_eq!(g.key().0, &QuadSurd::new(1, -1, 2, 5).unwrap());
        assert_eq!(g.key().1, &QuadSurd::new(1, 1, 2, 5).unwrap());
        let c = crosses(&g, &FareyEdge::parse("0/1,1/0").unwrap());
        assert!(c.crosses && !c.shared_endpoint);
        assert!(!crosses(&g, &FareyEdge::parse("2/1,3/1").unwrap()).crosses);
        assert!(!crosses(&g, &FareyEdge::parse("5/3,2/1").unwrap()).crosses);
        assert!(crosses(&g, &FareyEdge::parse("3/2,2/1").unwrap()).crosses);
    }

    #[test]
    fn empty_pattern() {
        let p = Pattern::empty();
        assert_eq!(p.gamma_size().unwrap(), 1);
        assert_eq!(p.k().unwrap(), 1);
        assert_eq!(p.gamma_e(&FareyEdge::base(1)).unwrap().len(), 2);
        let t = base_triangle();
        assert_eq!(p.gamma_tau(&t).unwrap().len(), 3);
        assert_eq!(p.abstract_simplex_count(&t).unwrap(), 0);
    }

    #[test]
    fn golden_gamma_sizes() {
        let p = golden();
        let e = FareyEdge::base(0);
        let l = p.orbit_enumerate(&e).unwrap();
        assert_eq!(l.geodesics.len(), 2);
        assert_eq!(l.certificate.periods, vec![2]);
        assert_eq!(p.gamma_size().unwrap(), 3);
        assert_eq!(p.k().unwrap(), 2);
        assert_eq!(p.gamma_tau(&base_triangle()).unwrap().len(), 6);
        assert_eq!(p.abstract_simplex_count(&base_triangle()).unwrap(), 6);
        let q = Pattern::with_cap(&["LR"], 12).unwrap();
        assert_eq!(
            q.orbit_enumerate(&e).unwrap().geodesics,
            p.orbit_enumerate(&e).unwrap().geodesics
        );
    }

    #[test]
    fn cap_is_enforced() {
        let p = Pattern::with_cap(&["LLLLLRRRRR"], 4).unwrap();
        assert!(matches!(p.gamma_e(&FareyEdge::base(0)), Err(Error::Incomplete(_))));
        assert!(Pattern::with_cap(&["LLLLLRRRRR"], 64).unwrap().k().is_ok());
    }

    #[test]
    fn bad_seeds() {
        assert!(Pattern::new(&["RR"]).is_err());
        assert!(Pattern::new(&["LXR"]).is_err());
        let p = Pattern::with_cap(&["LR", "RL"], 64).unwrap();
        assert!(matches!(p.k(), Err(Error::Input(_))));
    }

    #[test]
    fn every_listed_geodesic_crosses_its_edge() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for words in [vec!["LR"], vec!["LLR"], vec!["LR", "LLRRR"]] {
            let p = Pattern::with_cap(&words, 64).unwrap();
            let size = p.gamma_size().unwrap();
            assert_eq!(size % 2, 1);
            for _ in 0..20 {
                let e = random_edge(&mut rng, 5);
                let g = p.gamma_e(&e).unwrap();
                assert_eq!(g.len(), size + 1);
                for o in g.iter().filter_map(GammaObj::as_geodesic) {
                    assert!(crosses(o, &e).crosses);
                    assert_eq!(o.holonomy.apply_surd(&o.attracting).unwrap(), o.attracting);
                }
                // the edge involution permutes the list
                let inv = e.involution();
                let set: HashSet<&GammaObj> = g.iter().collect();
                for o in g.iter() {
                    assert!(set.contains(&o.translate(&inv)));
                }
            }
        }
    }

    // Independent oracle: translate each seed axis by every group element of
    // short word length and keep those crossing the edge.
    #[test]
    fn brute_force_agrees_on_base_edge() {
        let p = Pattern::with_cap(&["LLR"], 64).unwrap();
        let e = FareyEdge::base(0);
        let mut words = vec![Psl2::identity()];
        let gens = [Psl2::s(), Psl2::t(), Psl2::t().inv()];
        let mut found: HashSet<Geodesic> = HashSet::new();
        for _ in 0..9 {
            let mut next = Vec::new();
            for w in &words {
                let g = p.seeds()[0].translate(w);
                if crosses(&g, &e).crosses {
                    found.insert(g);
                }
                for x in &gens {
                    next.push(w.mul(x));
                }
            }
            words = next;
        }
        let listed: HashSet<Geodesic> = p.orbit_enumerate(&e).unwrap().geodesics.into_iter().collect();
        assert_eq!(found, listed);
    }

    #[test]
    fn gamma_tau_is_equivariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let p = Pattern::with_cap(&["LLR"], 64).unwrap();
        let tris = expand(3);
        for _ in 0..10 {
            let t = &tris[rng.gen_range(0..tris.len())];
            let g = random_element(&mut rng);
            let gt = t.translate(&g).unwrap();
            let a: HashSet<GammaObj> = p.gamma_tau(t).unwrap().iter().map(|o| o.translate(&g)).collect();
            let b: HashSet<GammaObj> = p.gamma_tau(&gt).unwrap().into_iter().collect();
            assert_eq!(a, b);
            assert_eq!(
                p.abstract_simplex_count(t).unwrap(),
                p.abstract_simplex_count(&gt).unwrap()
            );
        }
    }

    #[test]
    fn abstract_count_matches_formula() {
        for words in [vec!["LR"], vec!["LLR"], vec!["LLRR"]] {
            let p = Pattern::with_cap(&words, 64).unwrap();
            let k = p.k().unwrap() as u32;
            assert_eq!(
                p.abstract_simplex_count(&base_triangle()).unwrap(),
                3usize.pow(k) - 3,
                "{words:?}"
            );
        }
    }

    #[test]
    fn basic2_witness_golden() {
        let r = golden().basic2_witness(6).unwrap();
        assert_eq!(r.per_depth.len(), 6);
        assert!(r.m0.is_some());
    }

    #[test]
    fn gosper_combinations() {
        assert_eq!(combinations(6, 4).count(), 15);
        assert_eq!(combinations(3, 3).count(), 1);
        assert_eq!(combinations(5, 0).count(), 1);
    }
}
