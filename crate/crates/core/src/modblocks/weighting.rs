//! Weightings `f: Γ → (0, 1]`.

use std::collections::{BTreeMap, HashMap};

use serde::Deserialize;

use super::separator::check_weights;
use crate::error::{Error, Result};
use crate::exactnum::rational::{self, Rational};
use crate::modtiling::{GammaObj, Gen, Geodesic, Pattern, Psl2};
use crate::netbuild::WeightFn;

/// Right action of `PSL₂(ℤ)` on the cosets `G\PSL₂(ℤ)` of a finite-index
/// subgroup `G`, given by the permutations of `S` and `T`. `G` is the
/// stabilizer of coset 0.
#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
pub struct CosetTable {
    pub s: Vec<usize>,
    pub t: Vec<usize>,
}

fn is_perm(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    p.iter().all(|&i| i < p.len() && !std::mem::replace(&mut seen[i], true))
}

impl CosetTable {
    /// The whole group.
    pub fn trivial() -> CosetTable {
        CosetTable { s: vec![0], t: vec![0] }
    }

    /// Kernel of `PSL₂(ℤ) → ℤ/3`, `S ↦ 0`, `T ↦ 1`.
    pub fn mod3() -> CosetTable {
        CosetTable {
            s: vec![0, 1, 2],
            t: vec![1, 2, 0],
        }
    }

    pub fn index(&self) -> usize {
        self.s.len()
    }

    /// Checks `S² = 1`, `(ST)³ = 1` and transitivity.
    pub fn validate(&self) -> Result<()> {
        let n = self.s.len();
        if n == 0 || self.t.len() != n || !is_perm(&self.s) || !is_perm(&self.t) {
            return Err(Error::Input("coset table: s and t must be permutations of one size".into()));
        }
        for c in 0..n {
            if self.s[self.s[c]] != c {
                return Err(Error::Input(format!("coset table: S² moves coset {c}")));
            }
            let mut x = c;
            for _ in 0..3 {
                x = self.t[self.s[x]];
            }
            if x != c {
                return Err(Error::Input(format!("coset table: (ST)³ moves coset {c}")));
            }
        }
        let mut reached = vec![false; n];
        let mut stack = vec![0];
        reached[0] = true;
        while let Some(c) = stack.pop() {
            for d in [self.s[c], self.t[c]] {
                if !std::mem::replace(&mut reached[d], true) {
                    stack.push(d);
                }
            }
        }
        if reached.iter().any(|r| !r) {
            return Err(Error::Input("coset table is not transitive".into()));
        }
        Ok(())
    }

    /// `c · g`.
    pub fn act(&self, c: usize, g: &Psl2) -> usize {
        let n = self.index();
        let inv_t: Vec<usize> = {
            let mut v = vec![0; n];
            for (i, &j) in self.t.iter().enumerate() {
                v[j] = i;
            }
            v
        };
        let mut c = c;
        for (gen, e) in g.to_st_word() {
            let p = match (gen, e >= 0) {
                (Gen::S, _) => &self.s,
                (Gen::T, true) => &self.t,
                (Gen::T, false) => &inv_t,
            };
            for _ in 0..e.unsigned_abs() {
                c = p[c];
            }
        }
        c
    }
}

/// A weighting of a pattern. Ideal vertices always weigh 1.
#[derive(Clone, Debug)]
pub enum Weighting {
    Unit,
    /// One weight per seed orbit: invariant under `PSL₂(ℤ)`.
    Orbit(Vec<Rational>),
    /// Listed geodesics, everything else `default`.
    Explicit {
        default: Rational,
        table: HashMap<Geodesic, Rational>,
    },
    /// `inside` on the geodesics `w·seed_i` with `(i, 0·w)` selected, `outside`
    /// on the rest: invariant under the subgroup of the table.
    Coset {
        table: CosetTable,
        selected: Vec<Vec<bool>>,
        inside: Rational,
        outside: Rational,
    },
}

impl WeightFn for Weighting {
    fn weight(&self, obj: &GammaObj) -> Result<Rational> {
        let Some(g) = obj.as_geodesic() else {
            return Ok(rational::one());
        };
        Ok(match self {
            Weighting::Unit => rational::one(),
            Weighting::Orbit(w) => w.get(g.orbit).cloned().unwrap_or_else(rational::one),
            Weighting::Explicit { default, table } => table.get(g).unwrap_or(default).clone(),
            Weighting::Coset {
                table,
                selected,
                inside,
                outside,
            } => {
                let c = table.act(0, &g.witness);
                if selected[g.orbit][c] {
                    inside.clone()
                } else {
                    outside.clone()
                }
            }
        })
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ExplicitEntry {
    seed: String,
    #[serde(default)]
    word: String,
    weight: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CosetSpec {
    s: Vec<usize>,
    t: Vec<usize>,
    selected: BTreeMap<String, Vec<usize>>,
    #[serde(default)]
    inside: Option<String>,
    #[serde(default)]
    outside: Option<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct WeightingFile {
    #[serde(default)]
    orbit_weights: Option<BTreeMap<String, String>>,
    #[serde(default)]
    explicit: Option<Vec<ExplicitEntry>>,
    #[serde(default)]
    default: Option<String>,
    #[serde(default)]
    coset: Option<CosetSpec>,
}

fn seed_index(p: &Pattern, word: &str) -> Result<usize> {
    p.spec()
        .seeds
        .iter()
        .position(|s| s == word.trim())
        .ok_or_else(|| Error::Input(format!("{word:?} is not a seed of the pattern")))
}

fn weight(s: &str) -> Result<Rational> {
    let w = rational::parse(s)?;
    check_weights(std::slice::from_ref(&w))
        .map_err(|_| Error::Input(format!("weight {s} is outside (0, 1]")))?;
    Ok(w)
}

impl Weighting {
    /// Reads `{"orbit_weights": {...}}`, `{"explicit": [...], "default": ...}`
    /// or `{"coset": {...}}`. An empty object is `f ≡ 1`.
    pub fn from_json(text: &str, p: &Pattern) -> Result<Weighting> {
        let f: WeightingFile =
            serde_json::from_str(text).map_err(|e| Error::Input(format!("weighting file: {e}")))?;
        let given = [f.orbit_weights.is_some(), f.explicit.is_some(), f.coset.is_some()]
            .iter()
            .filter(|b| **b)
            .count();
        if given > 1 {
            return Err(Error::Input("weighting file: give one of orbit_weights, explicit, coset".into()));
        }
        if f.default.is_some() && f.explicit.is_none() {
            return Err(Error::Input("weighting file: default only applies to explicit".into()));
        }
        if let Some(m) = f.orbit_weights {
            let mut w = vec![rational::one(); p.seeds().len()];
            for (seed, s) in &m {
                w[seed_index(p, seed)?] = weight(s)?;
            }
            return Weighting::orbit(w);
        }
        if let Some(list) = f.explicit {
            let default = f.default.as_deref().map(weight).transpose()?.unwrap_or_else(rational::one);
            let mut table = HashMap::new();
            for e in list {
                let g = p.seeds()[seed_index(p, &e.seed)?].translate(&Psl2::from_word(&e.word)?);
                table.insert(g, weight(&e.weight)?);
            }
            return Ok(Weighting::Explicit { default, table });
        }
        if let Some(c) = f.coset {
            let table = CosetTable { s: c.s, t: c.t };
            table.validate()?;
            let mut sel = vec![Vec::new(); p.seeds().len()];
            for (seed, cs) in &c.selected {
                let i = seed_index(p, seed)?;
                if let Some(bad) = cs.iter().find(|&&x| x >= table.index()) {
                    return Err(Error::Input(format!("coset {bad} is out of range")));
                }
                sel[i] = cs.clone();
            }
            let inside = c.inside.as_deref().map(weight).transpose()?.unwrap_or_else(rational::one);
            let outside = c
                .outside
                .as_deref()
                .map(weight)
                .transpose()?
                .unwrap_or_else(|| rational::rat(1, 2));
            return coset_weighting(p, table, &sel, inside, outside);
        }
        Ok(Weighting::Unit)
    }

    pub fn orbit(w: Vec<Rational>) -> Result<Weighting> {
        check_weights(&w).map_err(|e| Error::Input(e.to_string()))?;
        Ok(Weighting::Orbit(w))
    }

    /// The same weight on every geodesic.
    pub fn constant(p: &Pattern, w: Rational) -> Result<Weighting> {
        Weighting::orbit(vec![w; p.seeds().len()])
    }
}

/// `f = inside` on `Γ′`, `outside` on `Γ − Γ′`, where `Γ′` is the union of the
/// `G`-classes `{w·seed_i : 0·w = c}` for the selected `(i, c)`.
///
/// The class of `w·seed_i` must not depend on `w`: every recorded stabilizer
/// element of seed `i` has to preserve the selected cosets.
pub fn coset_weighting(
    p: &Pattern,
    table: CosetTable,
    selected: &[Vec<usize>],
    inside: Rational,
    outside: Rational,
) -> Result<Weighting> {
    table.validate()?;
    check_weights(&[inside.clone(), outside.clone()]).map_err(|e| Error::Input(e.to_string()))?;
    let n = table.index();
    let stabs = p.seed_stabilizers()?;
    let mut masks = Vec::with_capacity(p.seeds().len());
    for (i, hs) in stabs.iter().enumerate() {
        let mut m = vec![false; n];
        for &c in selected.get(i).map(Vec::as_slice).unwrap_or(&[]) {
            m[c] = true;
        }
        for h in hs {
            if let Some(c) = (0..n).find(|&c| m[c] != m[table.act(c, h)]) {
                return Err(Error::Input(format!(
                    "selection for seed {i} is not well defined: {h} moves coset {c} to {}",
                    table.act(c, h)
                )));
            }
        }
        masks.push(m);
    }
    Ok(Weighting::Coset {
        table,
        selected: masks,
        inside,
        outside,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational::rat;
    use crate::modtiling::FareyEdge;

    fn golden() -> Pattern {
        Pattern::with_cap(&["LR"], 16).unwrap()
    }

    fn geodesics(p: &Pattern) -> Vec<GammaObj> {
        let mut out = Vec::new();
        for e in crate::modtiling::boundary_edges(2) {
            out.extend(p.gamma_e(&e).unwrap().iter().filter(|o| !o.is_vertex()).cloned());
        }
        out
    }

    #[test]
    fn coset_action_is_a_right_action() {
        let t = CosetTable::mod3();
        t.validate().unwrap();
        let words = ["S", "T", "TS", "STT", "LR", "RSL"];
        for a in words {
            for b in words {
                let (ga, gb) = (Psl2::from_word(a).unwrap(), Psl2::from_word(b).unwrap());
                for c in 0..3 {
                    assert_eq!(t.act(c, &ga.mul(&gb)), t.act(t.act(c, &ga), &gb));
                }
            }
        }
    }

    #[test]
    fn bad_tables() {
        assert!(CosetTable { s: vec![1, 0], t: vec![0, 1] }.validate().is_err());
        assert!(CosetTable { s: vec![0, 0], t: vec![0, 1] }.validate().is_err());
        assert!(CosetTable { s: vec![0, 1], t: vec![0, 1] }.validate().is_err());
    }

    #[test]
    fn index_two_selector_is_rejected_for_golden() {
        // the sign character S ↦ 1, T ↦ 1 does not kill the golden holonomy
        let t = CosetTable { s: vec![1, 0], t: vec![1, 0] };
        t.validate().unwrap();
        let r = coset_weighting(&golden(), t, &[vec![0]], rational::one(), rat(1, 2));
        assert!(matches!(r, Err(Error::Input(_))));
    }

    #[test]
    fn mod3_selector_is_subgroup_invariant_only() {
        let p = golden();
        let f = coset_weighting(&p, CosetTable::mod3(), &[vec![0]], rational::one(), rat(1, 2)).unwrap();
        let objs = geodesics(&p);
        let ws: Vec<Rational> = objs.iter().map(|o| f.weight(o).unwrap()).collect();
        assert!(ws.contains(&rational::one()) && ws.contains(&rat(1, 2)));
        let kernel = Psl2::t().pow(3);
        let s = Psl2::s();
        for (o, w) in objs.iter().zip(&ws) {
            assert_eq!(&f.weight(&o.translate(&kernel)).unwrap(), w);
            assert_eq!(&f.weight(&o.translate(&s)).unwrap(), w);
        }
        assert!(objs
            .iter()
            .zip(&ws)
            .any(|(o, w)| &f.weight(&o.translate(&Psl2::t())).unwrap() != w));
    }

    #[test]
    fn whole_group_selectors() {
        let p = golden();
        let all = coset_weighting(&p, CosetTable::trivial(), &[vec![0]], rational::one(), rat(1, 2)).unwrap();
        let none = coset_weighting(&p, CosetTable::trivial(), &[vec![]], rational::one(), rat(1, 2)).unwrap();
        for o in geodesics(&p) {
            assert_eq!(all.weight(&o).unwrap(), rational::one());
            assert_eq!(none.weight(&o).unwrap(), rat(1, 2));
        }
    }

    #[test]
    fn json_forms() {
        let p = Pattern::with_cap(&["LR", "LLR"], 64).unwrap();
        let e = FareyEdge::base(0);
        let objs: Vec<GammaObj> = p.gamma_e(&e).unwrap().iter().cloned().collect();
        let f = Weighting::from_json(r#"{"orbit_weights": {"LLR": "1/3"}}"#, &p).unwrap();
        for o in &objs {
            let want = match o.as_geodesic() {
                Some(g) if g.orbit == 1 => rat(1, 3),
                _ => rational::one(),
            };
            assert_eq!(f.weight(o).unwrap(), want);
        }
        assert!(matches!(Weighting::from_json("{}", &p).unwrap(), Weighting::Unit));
        let x = Weighting::from_json(r#"{"explicit": [{"seed": "LR", "word": "", "weight": "1/4"}], "default": "1/2"}"#, &p)
            .unwrap();
        let seed = GammaObj::Geodesic {
            geodesic: p.seeds()[0].clone(),
        };
        assert_eq!(x.weight(&seed).unwrap(), rat(1, 4));
        assert_eq!(x.weight(&seed.translate(&Psl2::t())).unwrap(), rat(1, 2));
        for bad in [
            r#"{"orbit_weights": {"LR": "0"}}"#,
            r#"{"orbit_weights": {"RRL": "1/2"}}"#,
            r#"{"orbit_weights": {}, "explicit": []}"#,
            r#"{"bogus": 1}"#,
            r#"{"coset": {"s": [0, 1, 2], "t": [1, 2, 0], "selected": {"LR": [5]}}}"#,
        ] {
            assert!(matches!(Weighting::from_json(bad, &p), Err(Error::Input(_))), "{bad}");
        }
        let c = Weighting::from_json(r#"{"coset": {"s": [0, 1, 2], "t": [1, 2, 0], "selected": {"LR": [0]}}}"#, &p);
        assert!(c.is_ok());
    }
}
