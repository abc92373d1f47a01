//! The Farey tessellation, seen from the base triangle `t₊ = (0, 1, ∞)`.
//!
//! An edge `e` is stored through the closed arc of the boundary circle cut off
//! by its halfspace `h_e` (the side away from `t₊`). Arc endpoints are signed
//! pairs `(p, q)` with `q ≥ 0`; `(-1, 0)` is `-∞` and `(1, 0)` is `+∞`, so
//! the arc of `(∞, 0)` is `[-∞, 0]` and that of `(1, ∞)` is `[1, +∞]`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::psl2::Psl2;
use crate::error::{Error, Result};
use crate::exactnum::{ProjRational, QuadSurd};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Step {
    Left,
    Right,
}

/// Address of an edge: a side of `t₊` (0, 1, 2) followed by child steps.
///
/// Side 0 is `(∞, 0)`, side 1 is `(0, 1)`, side 2 is `(1, ∞)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Address {
    pub side: u8,
    pub path: Vec<Step>,
}

impl Address {
    pub fn depth(&self) -> usize {
        self.path.len()
    }

    pub fn child(&self, s: Step) -> Address {
        let mut path = self.path.clone();
        path.push(s);
        Address { side: self.side, path }
    }

    pub fn parse(s: &str) -> Result<Address> {
        let mut it = s.trim().chars();
        let side = match it.next() {
            Some(c @ '0'..='2') => c as u8 - b'0',
            _ => return Err(Error::Input(format!("bad edge address {s:?}"))),
        };
        let path = it
            .map(|c| match c {
                'L' => Ok(Step::Left),
                'R' => Ok(Step::Right),
                _ => Err(Error::Input(format!("bad edge address {s:?}"))),
            })
            .collect::<Result<_>>()?;
        Ok(Address { side, path })
    }
}

impl fmt::Display for Address {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.side)?;
        for s in &self.path {
            f.write_str(match s {
                Step::Left => "L",
                Step::Right => "R",
            })?;
        }
        Ok(())
    }
}

type Signed2 = (BigInt, BigInt);

fn sp(p: i64, q: i64) -> Signed2 {
    (p.into(), q.into())
}

/// Order on the extended line with `-∞ < finite < +∞`.
fn cmp_ext(a: &Signed2, b: &Signed2) -> Ordering {
    match (a.1.is_zero(), b.1.is_zero()) {
        (true, true) => a.0.signum().cmp(&b.0.signum()),
        (true, false) => {
            if a.0.is_negative() {
                Ordering::Less
            } else {
                Ordering::Greater
            }
        }
        (false, true) => cmp_ext(b, a).reverse(),
        (false, false) => (&a.0 * &b.1).cmp(&(&b.0 * &a.1)),
    }
}

fn to_proj(a: &Signed2) -> ProjRational {
    ProjRational::new(a.0.clone(), a.1.clone()).expect("nonzero pair")
}

fn signed_of(x: &ProjRational, neg_inf: bool) -> Signed2 {
    if x.is_infinite() {
        (if neg_inf { -BigInt::one() } else { BigInt::one() }, BigInt::zero())
    } else {
        (x.p().clone(), x.q().clone())
    }
}

fn root_arc(side: u8) -> (Signed2, Signed2) {
    match side {
        0 => (sp(-1, 0), sp(0, 1)),
        1 => (sp(0, 1), sp(1, 1)),
        _ => (sp(1, 1), sp(1, 0)),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FareyEdge {
    address: Address,
    lo: Signed2,
    hi: Signed2,
}

impl FareyEdge {
    pub fn base(side: u8) -> FareyEdge {
        assert!(side < 3, "t₊ has three sides");
        let (lo, hi) = root_arc(side);
        FareyEdge {
            address: Address { side, path: Vec::new() },
            lo,
            hi,
        }
    }

    pub fn from_address(a: &Address) -> Result<FareyEdge> {
        if a.side > 2 {
            return Err(Error::Input(format!("bad side {}", a.side)));
        }
        let mut e = FareyEdge::base(a.side);
        for &s in &a.path {
            e = e.child(s);
        }
        Ok(e)
    }

    /// The edge with the given endpoints, in either order.
    pub fn from_endpoints(u: &ProjRational, v: &ProjRational) -> Result<FareyEdge> {
        if u.cross(v) != BigInt::one() {
            return Err(Error::Input(format!("{u}, {v} are not Farey neighbours")));
        }
        let (lo, hi) = match (u.is_infinite(), v.is_infinite()) {
            (false, false) => {
                let (a, b) = if u < v { (u, v) } else { (v, u) };
                (signed_of(a, false), signed_of(b, false))
            }
            _ => {
                let p = if u.is_infinite() { v } else { u };
                if p >= &ProjRational::from_int(1) {
                    (signed_of(p, false), sp(1, 0))
                } else {
                    (sp(-1, 0), signed_of(p, false))
                }
            }
        };
        let side = (0..3u8)
            .find(|&s| {
                let (l, h) = root_arc(s);
                cmp_ext(&l, &lo) != Ordering::Greater && cmp_ext(&hi, &h) != Ordering::Greater
            })
            .ok_or_else(|| Error::Input(format!("edge ({u}, {v}) not found")))?;
        let mut e = FareyEdge::base(side);
        while e.lo != lo || e.hi != hi {
            let m = e.mediant_signed();
            e = if cmp_ext(&hi, &m) != Ordering::Greater {
                e.child(Step::Left)
            } else {
                e.child(Step::Right)
            };
            if e.depth() > 100_000 {
                return Err(Error::Input(format!("edge ({u}, {v}) not found")));
            }
        }
        Ok(e)
    }

    /// Parses `"p1/q1,p2/q2"`.
    pub fn parse(s: &str) -> Result<FareyEdge> {
        let (a, b) = s
            .split_once(',')
            .ok_or_else(|| Error::Input(format!("edge {s:?} must be \"p1/q1,p2/q2\"")))?;
        FareyEdge::from_endpoints(&ProjRational::parse(a)?, &ProjRational::parse(b)?)
    }

    pub fn address(&self) -> &Address {
        &self.address
    }

    pub fn depth(&self) -> usize {
        self.address.depth()
    }

    /// Endpoints in arc order (the `-∞` end first).
    pub fn endpoints(&self) -> (ProjRational, ProjRational) {
        (to_proj(&self.lo), to_proj(&self.hi))
    }

    fn mediant_signed(&self) -> Signed2 {
        (&self.lo.0 + &self.hi.0, &self.lo.1 + &self.hi.1)
    }

    /// Third vertex of the triangle beyond the edge.
    pub fn child_vertex(&self) -> ProjRational {
        to_proj(&self.mediant_signed())
    }

    pub fn child(&self, s: Step) -> FareyEdge {
        let m = self.mediant_signed();
        let (lo, hi) = match s {
            Step::Left => (self.lo.clone(), m),
            Step::Right => (m, self.hi.clone()),
        };
        FareyEdge {
            address: self.address.child(s),
            lo,
            hi,
        }
    }

    pub fn children(&self) -> [FareyEdge; 2] {
        [self.child(Step::Left), self.child(Step::Right)]
    }

    /// `|p₁q₂ - p₂q₁|` of the endpoints.
    pub fn unimodularity(&self) -> BigInt {
        (&self.lo.0 * &self.hi.1 - &self.hi.0 * &self.lo.1).abs()
    }

    /// The element sending `0 ↦ lo`, `1 ↦` child vertex, `∞ ↦ hi`.
    pub fn frame(&self) -> Psl2 {
        Psl2::new(
            self.hi.0.clone(),
            self.lo.0.clone(),
            self.hi.1.clone(),
            self.lo.1.clone(),
        )
        .expect("Farey frame is unimodular")
    }

    /// The order-2 element fixing the edge and swapping its endpoints.
    pub fn involution(&self) -> Psl2 {
        Psl2::s().conj(&self.frame())
    }

    /// Strictly inside the open arc of `h_e`.
    pub fn arc_contains_surd(&self, x: &QuadSurd) -> bool {
        let above = |a: &Signed2| -> bool {
            if a.1.is_zero() {
                a.0.is_negative()
            } else {
                x.cmp_proj(&to_proj(a)) == Ordering::Greater
            }
        };
        let below = |a: &Signed2| -> bool {
            if a.1.is_zero() {
                a.0.is_positive()
            } else {
                x.cmp_proj(&to_proj(a)) == Ordering::Less
            }
        };
        above(&self.lo) && below(&self.hi)
    }

    /// Closed-arc membership for a rational point; `∞` counts at either end.
    pub fn arc_contains_proj(&self, x: &ProjRational) -> bool {
        if x.is_infinite() {
            return self.lo.1.is_zero() || self.hi.1.is_zero();
        }
        let s = signed_of(x, false);
        cmp_ext(&self.lo, &s) != Ordering::Greater && cmp_ext(&s, &self.hi) != Ordering::Greater
    }

    /// `h_other ⊆ h_self`.
    pub fn arc_contains_edge(&self, o: &FareyEdge) -> bool {
        cmp_ext(&self.lo, &o.lo) != Ordering::Greater && cmp_ext(&o.hi, &self.hi) != Ordering::Greater
    }

    pub fn triangle_beyond(&self) -> FareyTriangle {
        FareyTriangle {
            parent: Some(self.clone()),
        }
    }
}

impl fmt::Display for FareyEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b) = self.endpoints();
        write!(f, "{a},{b}")
    }
}

impl Serialize for FareyEdge {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_string().serialize(s)
    }
}

impl<'de> Deserialize<'de> for FareyEdge {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        FareyEdge::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// `t₊` (no parent) or the triangle beyond `parent`, away from `t₊`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FareyTriangle {
    parent: Option<FareyEdge>,
}

pub fn base_triangle() -> FareyTriangle {
    FareyTriangle { parent: None }
}

impl FareyTriangle {
    pub fn is_base(&self) -> bool {
        self.parent.is_none()
    }

    pub fn parent(&self) -> Option<&FareyEdge> {
        self.parent.as_ref()
    }

    /// Combinatorial distance to `t₊`.
    pub fn distance(&self) -> usize {
        self.parent.as_ref().map_or(0, |e| e.depth() + 1)
    }

    pub fn address_string(&self) -> String {
        match &self.parent {
            None => "t+".to_string(),
            Some(e) => e.address().to_string(),
        }
    }

    pub fn parse_address(s: &str) -> Result<FareyTriangle> {
        match s.trim() {
            "t+" | "" => Ok(base_triangle()),
            a => Ok(FareyEdge::from_address(&Address::parse(a)?)?.triangle_beyond()),
        }
    }

    /// Maps `t₊` onto this triangle, `(∞, 0)` going to [`FareyTriangle::edge`]`(0)`.
    pub fn frame(&self) -> Psl2 {
        self.parent.as_ref().map_or_else(Psl2::identity, |e| e.frame())
    }

    /// Counterclockwise order-3 stabilizer: `edge(i) ↦ edge(i + 1)`.
    pub fn rotation(&self) -> Psl2 {
        Psl2::omega().conj(&self.frame())
    }

    /// Vertices in counterclockwise order, images of `(0, 1, ∞)`.
    pub fn vertices(&self) -> [ProjRational; 3] {
        let f = self.frame();
        [
            f.apply_proj(&ProjRational::from_int(0)),
            f.apply_proj(&ProjRational::from_int(1)),
            f.apply_proj(&ProjRational::infinity()),
        ]
    }

    /// Edge 0 faces `t₊` (for `t₊` itself it is `(∞, 0)`); edges 1, 2 are the
    /// left and right children.
    pub fn edge(&self, i: usize) -> FareyEdge {
        match &self.parent {
            None => FareyEdge::base(i as u8),
            Some(e) => match i {
                0 => e.clone(),
                1 => e.child(Step::Left),
                _ => e.child(Step::Right),
            },
        }
    }

    pub fn edges(&self) -> [FareyEdge; 3] {
        [self.edge(0), self.edge(1), self.edge(2)]
    }

    /// Edges whose halfspaces lead away from `t₊`.
    pub fn outward_edges(&self) -> Vec<FareyEdge> {
        match &self.parent {
            None => self.edges().to_vec(),
            Some(_) => vec![self.edge(1), self.edge(2)],
        }
    }

    /// The triangle with the given vertices, in any order.
    pub fn from_vertices(v: &[ProjRational; 3]) -> Result<FareyTriangle> {
        let base = base_triangle();
        let mut bv = base.vertices().to_vec();
        let mut vv = v.to_vec();
        bv.sort();
        vv.sort();
        if bv == vv {
            return Ok(base);
        }
        for (i, j, l) in [(0, 1, 2), (1, 2, 0), (0, 2, 1)] {
            if let Ok(e) = FareyEdge::from_endpoints(&v[i], &v[j]) {
                if e.child_vertex() == v[l] {
                    return Ok(e.triangle_beyond());
                }
            }
        }
        Err(Error::Input("vertices do not span a Farey triangle".into()))
    }

    /// Image under a group element.
    pub fn translate(&self, g: &Psl2) -> Result<FareyTriangle> {
        let v = self.vertices();
        FareyTriangle::from_vertices(&[g.apply_proj(&v[0]), g.apply_proj(&v[1]), g.apply_proj(&v[2])])
    }
}

impl fmt::Display for FareyTriangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = self.vertices();
        write!(f, "{}({}, {}, {})", self.address_string(), v[0], v[1], v[2])
    }
}

/// Boundary edges of `T_m`, in address order.
pub fn boundary_edges(m: usize) -> Vec<FareyEdge> {
    let mut cur: Vec<FareyEdge> = (0..3).map(FareyEdge::base).collect();
    for _ in 0..m {
        cur = cur.iter().flat_map(|e| e.children()).collect();
    }
    cur
}

/// Triangles of `T_m`, by distance then address.
pub fn expand(m: usize) -> Vec<FareyTriangle> {
    let mut out = vec![base_triangle()];
    let mut front: Vec<FareyEdge> = (0..3).map(FareyEdge::base).collect();
    for _ in 0..m {
        out.extend(front.iter().map(|e| e.triangle_beyond()));
        front = front.iter().flat_map(|e| e.children()).collect();
    }
    out
}

/// Continued fraction digits `[a₀; a₁, …]` of a positive number, with an
/// optional repeating tail.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CfDigits {
    pub prefix: Vec<u64>,
    pub period: Vec<u64>,
}

impl CfDigits {
    fn digit(&self, i: usize) -> Option<u64> {
        if i < self.prefix.len() {
            Some(self.prefix[i])
        } else if self.period.is_empty() {
            None
        } else {
            Some(self.period[(i - self.prefix.len()) % self.period.len()])
        }
    }

    fn validate(&self) -> Result<()> {
        let first = self.digit(0).ok_or_else(|| Error::Input("empty continued fraction".into()))?;
        let span = self.prefix.len() + self.period.len() + 1;
        let zero_later = (1..span).any(|i| self.digit(i) == Some(0));
        if zero_later || (first == 0 && self.digit(1).is_none()) {
            return Err(Error::Input("continued fraction must describe a positive number".into()));
        }
        Ok(())
    }

    /// Stern–Brocot moves from the root `1`, ending with `None` when the
    /// number itself is reached.
    fn moves(&self, limit: usize) -> Vec<Option<Step>> {
        let mut out = Vec::new();
        let mut i = 0;
        while out.len() < limit {
            let Some(a) = self.digit(i) else { break };
            let last = self.digit(i + 1).is_none();
            let s = if i % 2 == 0 { Step::Right } else { Step::Left };
            let reps = if last { a.saturating_sub(1) } else { a };
            for _ in 0..reps {
                out.push(Some(s));
            }
            if last {
                out.push(None);
            }
            i += 1;
        }
        out.truncate(limit);
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Target {
    Rational { value: ProjRational },
    Surd { value: QuadSurd },
    Cf { digits: CfDigits },
}

/// Prefix of the maximal nested sequence of edges `e` with `e | x`.
///
/// Rational targets take the sequence converging from below (from `+∞` side
/// for `∞`) and are flagged non-unique.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NestingSequence {
    pub target: Target,
    pub edges: Vec<FareyEdge>,
    pub unique: bool,
}

impl NestingSequence {
    pub fn new(target: Target) -> Result<NestingSequence> {
        let unique = match &target {
            Target::Rational { .. } => false,
            Target::Surd { value } => {
                if value.is_rational() {
                    return Err(Error::Input("use a rational target".into()));
                }
                true
            }
            Target::Cf { digits } => {
                digits.validate()?;
                !digits.period.is_empty()
            }
        };
        Ok(NestingSequence {
            target,
            edges: Vec::new(),
            unique,
        })
    }

    /// Extends the stored prefix to `m` edges.
    pub fn extend_to(&mut self, m: usize) {
        if self.edges.len() >= m {
            return;
        }
        if let Target::Cf { digits } = &self.target {
            let mv = digits.moves(m + 1);
            let mut e: Option<FareyEdge> = None;
            let mut reached = false;
            let mut out = Vec::with_capacity(m);
            let mut it = mv.into_iter();
            while out.len() < m {
                let s = if reached {
                    Step::Right
                } else {
                    match it.next().flatten() {
                        Some(s) => s,
                        None => {
                            reached = true;
                            Step::Left
                        }
                    }
                };
                let next = match &e {
                    None => FareyEdge::base(if s == Step::Right { 2 } else { 1 }),
                    Some(p) => p.child(s),
                };
                out.push(next.clone());
                e = Some(next);
            }
            self.edges = out;
            return;
        }
        while self.edges.len() < m {
            let next = match self.edges.last() {
                None => FareyEdge::base(self.root_side()),
                Some(p) => {
                    let s = match self.cmp_target(&p.child_vertex()) {
                        Ordering::Greater => Step::Right,
                        _ => Step::Left,
                    };
                    p.child(s)
                }
            };
            self.edges.push(next);
        }
    }

    pub fn prefix(&mut self, m: usize) -> &[FareyEdge] {
        self.extend_to(m);
        &self.edges[..m]
    }

    fn cmp_target(&self, y: &ProjRational) -> Ordering {
        match &self.target {
            Target::Rational { value } => value.cmp(y),
            Target::Surd { value } => value.cmp_proj(y),
            Target::Cf { .. } => unreachable!("continued fractions use moves"),
        }
    }

    fn root_side(&self) -> u8 {
        let zero = ProjRational::from_int(0);
        let one = ProjRational::from_int(1);
        match self.cmp_target(&zero) {
            Ordering::Less | Ordering::Equal => 0,
            Ordering::Greater => match self.cmp_target(&one) {
                Ordering::Greater => 2,
                _ => 1,
            },
        }
    }
}

/// Convenience wrapper returning the first `m` edges.
pub fn nesting_sequence(x: Target, m: usize) -> Result<NestingSequence> {
    let mut s = NestingSequence::new(x)?;
    s.extend_to(m);
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::HashSet;

    fn pr(p: i64, q: i64) -> ProjRational {
        ProjRational::new(p, q).unwrap()
    }

    #[test]
    fn base_triangle_and_children() {
        let t = base_triangle();
        assert_eq!(t.vertices(), [pr(0, 1), pr(1, 1), pr(1, 0)]);
        assert_eq!(FareyEdge::base(0).child_vertex(), pr(-1, 1));
        assert_eq!(FareyEdge::base(1).child_vertex(), pr(1, 2));
        assert_eq!(FareyEdge::base(2).child_vertex(), pr(2, 1));
        for m in 0..6 {
            assert_eq!(boundary_edges(m).len(), 3 << m);
        }
    }

    #[test]
    fn rotation_cycles_edges() {
        for t in expand(3) {
            let g = t.rotation();
            let e = t.edges();
            for i in 0..3 {
                let (a, b) = e[i].endpoints();
                let img = FareyEdge::from_endpoints(&g.apply_proj(&a), &g.apply_proj(&b)).unwrap();
                assert_eq!(img, e[(i + 1) % 3], "{t}");
            }
        }
    }

    // Brute force: a triangle of T_{m+1} - T_m shares exactly one edge with T_m.
    #[test]
    fn new_triangles_share_one_edge() {
        for m in 0..6 {
            let old = expand(m);
            let mut old_edges: HashSet<(ProjRational, ProjRational)> = HashSet::new();
            for t in &old {
                for e in t.edges() {
                    old_edges.insert(e.endpoints());
                }
            }
            let all = expand(m + 1);
            for t in &all[old.len()..] {
                assert_eq!(t.distance(), m + 1);
                let shared = t.edges().iter().filter(|e| old_edges.contains(&e.endpoints())).count();
                assert_eq!(shared, 1, "{t}");
            }
        }
    }

    #[test]
    fn edge_parsing_and_lookup() {
        let e = FareyEdge::parse("1/0,0/1").unwrap();
        assert_eq!(e, FareyEdge::base(0));
        let e = FareyEdge::parse("3/2,2/1").unwrap();
        assert_eq!(e.address().to_string(), "2LR");
        assert!(FareyEdge::parse("0/1,2/1").is_err());
        let t = FareyTriangle::from_vertices(&[pr(2, 1), pr(1, 1), pr(3, 2)]).unwrap();
        assert_eq!(t.address_string(), "2L");
        assert_eq!(FareyTriangle::parse_address("2L").unwrap(), t);
    }

    #[test]
    fn golden_nesting_follows_continued_fraction() {
        let phi = QuadSurd::new(1, 1, 2, 5).unwrap();
        let a = nesting_sequence(Target::Surd { value: phi }, 40).unwrap();
        let cf = CfDigits {
            prefix: vec![],
            period: vec![1],
        };
        let b = nesting_sequence(Target::Cf { digits: cf }, 40).unwrap();
        assert_eq!(a.edges, b.edges);
        assert!(a.unique);
        let path: String = a.edges[5].address().to_string();
        assert_eq!(path, "2LRLRL");
    }

    #[test]
    fn rational_targets_are_flagged() {
        for (x, side) in [(pr(0, 1), 0u8), (pr(1, 1), 1), (pr(1, 0), 2)] {
            let s = nesting_sequence(Target::Rational { value: x.clone() }, 20).unwrap();
            assert!(!s.unique);
            assert_eq!(s.edges[0].address().side, side);
            for e in &s.edges {
                assert_eq!(e.endpoints().1, x);
            }
        }
        let cf = CfDigits {
            prefix: vec![1, 2],
            period: vec![],
        };
        let a = nesting_sequence(Target::Cf { digits: cf }, 12).unwrap();
        let b = nesting_sequence(Target::Rational { value: pr(3, 2) }, 12).unwrap();
        assert_eq!(a.edges, b.edges);
    }

    #[test]
    fn nesting_is_strict_for_fifty_steps() {
        let x = QuadSurd::new(3, -2, 7, 11).unwrap();
        let s = nesting_sequence(Target::Surd { value: x.clone() }, 51).unwrap();
        for w in s.edges.windows(2) {
            assert!(w[0].arc_contains_edge(&w[1]));
            assert!(!w[1].arc_contains_edge(&w[0]));
        }
        for e in &s.edges {
            assert!(e.arc_contains_surd(&x));
        }
    }

    proptest! {
        #[test]
        fn edges_are_unimodular(side in 0u8..3, steps in proptest::collection::vec(any::<bool>(), 0..40)) {
            let mut e = FareyEdge::base(side);
            for s in steps {
                e = e.child(if s { Step::Right } else { Step::Left });
                prop_assert_eq!(e.unimodularity(), BigInt::one());
            }
            let (a, b) = e.endpoints();
            prop_assert_eq!(FareyEdge::from_endpoints(&b, &a).unwrap(), e.clone());
            prop_assert_eq!(e.frame().apply_proj(&ProjRational::from_int(1)), e.child_vertex());
        }
    }
}
