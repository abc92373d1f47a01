//! Exact certificates for a modular block.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::block::ModularBlock;
use super::goodsets::{enumerate_good_sets, GoodSet};
use super::labels::{Letter, Pair, VertexLabelABC};
use crate::error::{Error, Result};
use crate::exactnum::lp::{maximize, Constraint, LpOutcome, Rel};
use crate::exactnum::rational::{self, Rational};
use crate::exactnum::RMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    Structural,
    Full,
}

impl Level {
    /// Full pairwise checks up to `k = 5`, structural above.
    pub fn default_for(k: usize) -> Level {
        if k <= 5 {
            Level::Full
        } else {
            Level::Structural
        }
    }
}

impl std::str::FromStr for Level {
    type Err = Error;
    fn from_str(s: &str) -> Result<Level> {
        match s {
            "structural" => Ok(Level::Structural),
            "full" => Ok(Level::Full),
            _ => Err(Error::Input(format!("unknown verification level {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub checked: usize,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Failure {
    pub check: String,
    pub subject: String,
    pub message: String,
}

/// Distinct values of `det(M_Y)/det(M_Z)` across codimension-1 faces, keyed by the swapped letters.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RatioSummary {
    pub swap: String,
    pub faces: usize,
    pub distinct_ratios: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CertificateReport {
    pub format_version: u32,
    pub k: usize,
    pub n: usize,
    pub level: Level,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
    pub failures: Vec<Failure>,
    pub codim1_ratios: Vec<RatioSummary>,
    /// Core simplices in cyclic face-adjacency order, when the adjacency graph is a single cycle.
    pub adjacency_cycle: Option<Vec<String>>,
    #[serde(with = "rational::serde_str")]
    pub volume_sum: Rational,
    #[serde(with = "rational::serde_str")]
    pub volume_target: Rational,
}

impl CertificateReport {
    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }
}

struct Ctx<'a> {
    block: &'a ModularBlock,
    good: Vec<GoodSet>,
    dets: HashMap<GoodSet, Rational>,
}

fn matrix_of(block: &ModularBlock, ids: &[usize]) -> RMatrix {
    let rows: Vec<Vec<Rational>> = ids.iter().map(|&i| block.vertex_by_id(i).to_vec()).collect();
    RMatrix::from_rows(&rows).expect("square vertex matrix")
}

pub fn verify_block(block: &ModularBlock, level: Level) -> Result<CertificateReport> {
    let k = block.k();
    let good = enumerate_good_sets(k);
    let dets: HashMap<GoodSet, Rational> = good
        .par_iter()
        .map(|s| {
            let d = matrix_of(block, &s.ids()).det().expect("square");
            (s.clone(), d)
        })
        .collect();
    let ctx = Ctx { block, good, dets };
    let mut checks = Vec::new();
    let mut failures = Vec::new();

    checks.push(check_determinants(&ctx, &mut failures));
    let (c1, ratios) = check_codim1(&ctx, &mut failures);
    checks.push(c1);
    let (vol, volume_sum, volume_target) = check_volume(&ctx, &mut failures);
    checks.push(vol);
    checks.push(check_key(&ctx, level, &mut failures));
    checks.push(check_condition1(&ctx, &mut failures));
    checks.push(check_sigma(block, &mut failures));

    let adjacency_cycle = adjacency_cycle(block);
    let passed = checks.iter().all(|c| c.passed);
    Ok(CertificateReport {
        format_version: 1,
        k,
        n: block.n(),
        level,
        passed,
        checks,
        failures,
        codim1_ratios: ratios,
        adjacency_cycle,
        volume_sum,
        volume_target,
    })
}

fn check_determinants(ctx: &Ctx, failures: &mut Vec<Failure>) -> CheckResult {
    let mut bad = 0;
    for s in &ctx.good {
        if ctx.dets[s].is_zero() {
            bad += 1;
            failures.push(Failure {
                check: "good_set_determinants".into(),
                subject: s.to_string(),
                message: "good set is not a basis".into(),
            });
        }
    }
    CheckResult {
        name: "good_set_determinants".into(),
        passed: bad == 0,
        checked: ctx.good.len(),
        detail: format!("{} good sets, {} singular", ctx.good.len(), bad),
    }
}

/// Interior codimension-1 faces: drop `Y_j` from `S1` and complete with the third letter `Z_j`.
fn codim1_neighbours(s: &GoodSet) -> Vec<(usize, Letter, Letter, GoodSet)> {
    let mut out = Vec::new();
    for (j, &p) in s.pairs.iter().enumerate() {
        for y in p.letters() {
            let mut t = s.clone();
            t.pairs[j] = Pair::without(y);
            if t.is_good() {
                out.push((j, y, p.missing(), t));
            }
        }
    }
    out
}

fn check_codim1(ctx: &Ctx, failures: &mut Vec<Failure>) -> (CheckResult, Vec<RatioSummary>) {
    let k = ctx.block.k();
    // Each unordered pair once: keep the neighbour with the larger sequence.
    let jobs: Vec<(GoodSet, usize, Letter, Letter, GoodSet)> = ctx
        .good
        .iter()
        .flat_map(|s| {
            codim1_neighbours(s)
                .into_iter()
                .filter(move |(_, _, _, t)| t > s)
                .map(move |(j, y, z, t)| (s.clone(), j, y, z, t))
        })
        .collect();
    let results: Vec<(String, Letter, Letter, Option<Rational>)> = jobs
        .par_iter()
        .map(|(s, j, y, z, t)| {
            let ids = s.ids();
            let yid = VertexLabelABC::new(*y, j + 1).id(k);
            let zid = VertexLabelABC::new(*z, j + 1).id(k);
            let mz: Vec<usize> = ids.iter().map(|&i| if i == yid { zid } else { i }).collect();
            let dy = &ctx.dets[s];
            let dz = matrix_of(ctx.block, &mz).det().expect("square");
            let ratio = if dz.is_zero() { None } else { Some(dy / dz) };
            (format!("{s} | {t}"), *y, *z, ratio)
        })
        .collect();
    let mut bad = 0;
    let mut by_swap: BTreeMap<String, (usize, BTreeSet<Rational>)> = BTreeMap::new();
    for (subject, y, z, ratio) in &results {
        let mut key = [*y, *z];
        key.sort();
        let key = format!("{:?}{:?}", key[0], key[1]);
        let e = by_swap.entry(key).or_default();
        e.0 += 1;
        match ratio {
            Some(r) if r.is_negative() => {
                e.1.insert(r.clone());
            }
            _ => {
                bad += 1;
                failures.push(Failure {
                    check: "codim1_signs".into(),
                    subject: subject.clone(),
                    message: format!(
                        "completing vertices on the same side (ratio {})",
                        ratio.as_ref().map_or("undefined".into(), rational::to_string)
                    ),
                });
            }
        }
    }
    let summary = by_swap
        .into_iter()
        .map(|(swap, (faces, set))| RatioSummary {
            swap,
            faces,
            distinct_ratios: set.iter().map(rational::to_string).collect(),
        })
        .collect();
    (
        CheckResult {
            name: "codim1_signs".into(),
            passed: bad == 0,
            checked: results.len(),
            detail: format!("{} interior faces, {} with wrong sign", results.len(), bad),
        },
        summary,
    )
}

fn check_volume(ctx: &Ctx, failures: &mut Vec<Failure>) -> (CheckResult, Rational, Rational) {
    let sum: Rational = ctx.good.iter().map(|s| ctx.dets[s].abs()).sum();
    let target = ctx.block.delta(0).det_volume().expect("square");
    let passed = sum == target;
    if !passed {
        failures.push(Failure {
            check: "volume_identity".into(),
            subject: "all good simplices".into(),
            message: format!(
                "sum of |det| is {} but the outer simplex has {}",
                rational::to_string(&sum),
                rational::to_string(&target)
            ),
        });
    }
    let f: num_bigint::BigInt = (1..=2 * ctx.block.k() as u64).map(num_bigint::BigInt::from).product();
    (
        CheckResult {
            name: "volume_identity".into(),
            passed,
            checked: ctx.good.len(),
            detail: format!(
                "sum |det| = {}, |det Δ0| = {} (volumes are these over {f})",
                rational::to_string(&sum),
                rational::to_string(&target)
            ),
        },
        sum,
        target,
    )
}

/// Decides `⟨S1⟩ ∩ ⟨S2⟩ = ⟨S1 ∩ S2⟩`.
///
/// Writes the vertices of `S2 - S1` in the basis `S1` as columns of `C`. A point of
/// the intersection outside the common face exists iff some `b ≥ 0`, `b ≠ 0`
/// has `C b ≥ 0` on the rows of `S1 - S2`.
pub fn key_holds(block: &ModularBlock, s1: &GoodSet, s2: &GoodSet, s1_inv: Option<&RMatrix>) -> Result<bool> {
    let ids1 = s1.ids();
    let ids2 = s2.ids();
    let only1: Vec<usize> = (0..ids1.len()).filter(|&r| !ids2.contains(&ids1[r])).collect();
    let only2: Vec<usize> = ids2.iter().copied().filter(|i| !ids1.contains(i)).collect();
    if only2.is_empty() {
        return Ok(true);
    }
    let owned;
    let inv = match s1_inv {
        Some(m) => m,
        None => {
            owned = matrix_of(block, &ids1).transpose().inverse()?;
            &owned
        }
    };
    let cols: Vec<Vec<Rational>> = only2
        .iter()
        .map(|&i| inv.mul_vec(block.vertex_by_id(i)))
        .collect::<Result<_>>()?;
    let m = only2.len();
    let mut cons: Vec<Constraint> = only1
        .iter()
        .map(|&r| Constraint::new(cols.iter().map(|c| c[r].clone()).collect(), Rel::Ge, Rational::zero()))
        .collect();
    cons.push(Constraint::new(vec![Rational::one(); m], Rel::Le, Rational::one()));
    match maximize(&vec![Rational::one(); m], &cons) {
        LpOutcome::Optimal { value, .. } => Ok(value.is_zero()),
        _ => Err(Error::Construction("bounded feasible program reported otherwise".into())),
    }
}

fn check_key(ctx: &Ctx, level: Level, failures: &mut Vec<Failure>) -> CheckResult {
    let k = ctx.block.k();
    // Simultaneous index permutations are symmetries, so sorted S1 suffice.
    let reps: Vec<&GoodSet> = ctx.good.iter().filter(|s| s.is_sorted()).collect();
    let min_common = match level {
        Level::Full => 0,
        Level::Structural => 2 * k - 2,
    };
    let results: Vec<(usize, Vec<String>)> = reps
        .par_iter()
        .map(|s1| {
            let inv = matrix_of(ctx.block, &s1.ids()).transpose().inverse();
            let mut n = 0;
            let mut bad = Vec::new();
            let inv = match inv {
                Ok(m) => m,
                Err(_) => return (0, vec![format!("{s1}: singular")]),
            };
            for s2 in &ctx.good {
                if s2 == *s1 || s1.common(s2) < min_common {
                    continue;
                }
                n += 1;
                match key_holds(ctx.block, s1, s2, Some(&inv)) {
                    Ok(true) => {}
                    Ok(false) => bad.push(format!("{s1} | {s2}")),
                    Err(e) => bad.push(format!("{s1} | {s2}: {e}")),
                }
            }
            (n, bad)
        })
        .collect();
    let checked: usize = results.iter().map(|r| r.0).sum();
    let mut nbad = 0;
    for (_, bad) in results {
        for b in bad {
            nbad += 1;
            failures.push(Failure {
                check: "key_equation".into(),
                subject: b,
                message: "intersection is larger than the common face".into(),
            });
        }
    }
    let scope = match level {
        Level::Full => "all pairs",
        Level::Structural => "pairs meeting in codimension <= 2",
    };
    CheckResult {
        name: "key_equation".into(),
        passed: nbad == 0,
        checked,
        detail: format!(
            "{checked} ordered pairs ({scope}, first member sorted up to index symmetry), {nbad} failures"
        ),
    }
}

fn check_condition1(ctx: &Ctx, failures: &mut Vec<Failure>) -> CheckResult {
    let b = ctx.block;
    let k = b.k();
    let mut bad = Vec::new();
    let sets: [Vec<usize>; 3] = [0, 1, 2].map(|j| {
        let mut v: Vec<usize> = b.terminal_labels(j).iter().map(|l| l.id(k)).collect();
        v.sort();
        v
    });
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        let common = sets[i].iter().filter(|x| sets[j].contains(x)).count();
        if common != k {
            bad.push(format!("Δ{i}, Δ{j} share {common} vertices"));
        }
    }
    for l in b.letter_labels(Letter::B) {
        if b.vertex(l).iter().any(|x| !x.is_positive()) {
            bad.push(format!("{l} is not interior to Δ0"));
        }
    }
    let ab = GoodSet::uniform(k, Pair::AB);
    let bc = GoodSet::uniform(k, Pair::BC);
    match key_holds(b, &ab, &bc, None) {
        Ok(true) => {}
        Ok(false) => bad.push("Δ1 ∩ Δ2 is larger than ⟨B⟩".into()),
        Err(e) => bad.push(format!("Δ1 ∩ Δ2: {e}")),
    }
    let n = bad.len();
    for m in bad {
        failures.push(Failure {
            check: "condition1".into(),
            subject: "terminals".into(),
            message: m,
        });
    }
    CheckResult {
        name: "condition1".into(),
        passed: n == 0,
        checked: 3 + k + 1,
        detail: format!("common vertex counts, interior B, Δ1 ∩ Δ2 = ⟨B⟩; {n} failures"),
    }
}

fn check_sigma(b: &ModularBlock, failures: &mut Vec<Failure>) -> CheckResult {
    let m = b.core_sets().len();
    let mut seen = vec![false; m];
    let mut bad = 0;
    for i in 0..m {
        if seen[b.sigma_index(i)] {
            bad += 1;
        }
        seen[b.sigma_index(i)] = true;
        let j = b.sigma_index(b.sigma_index(i));
        if i == b.sigma_index(i) || i == j || b.sigma_index(j) != i {
            bad += 1;
            failures.push(Failure {
                check: "sigma_permutation".into(),
                subject: b.core_sets()[i].to_string(),
                message: "σ orbit does not have size 3".into(),
            });
        }
    }
    CheckResult {
        name: "sigma_permutation".into(),
        passed: bad == 0,
        checked: m,
        detail: format!("{m} core simplices in {} σ-orbits of size 3", m / 3),
    }
}

/// Cyclic order of core simplices under face adjacency, if the graph is one cycle.
pub fn adjacency_cycle(b: &ModularBlock) -> Option<Vec<String>> {
    let core = b.core_sets();
    let full = 2 * b.k() - 1;
    let nb: Vec<Vec<usize>> = (0..core.len())
        .map(|i| {
            (0..core.len())
                .filter(|&j| j != i && core[i].common(&core[j]) == full)
                .collect()
        })
        .collect();
    if core.is_empty() || nb.iter().any(|v| v.len() != 2) {
        return None;
    }
    let mut order = vec![0usize];
    let mut prev = 0;
    let mut cur = nb[0][0];
    while cur != 0 {
        order.push(cur);
        let next = if nb[cur][0] == prev { nb[cur][1] } else { nb[cur][0] };
        prev = cur;
        cur = next;
        if order.len() > core.len() {
            return None;
        }
    }
    (order.len() == core.len()).then(|| order.iter().map(|&i| core[i].name()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blockcore::build_block;
    use crate::exactnum::rational::rat;

    #[test]
    fn small_blocks_pass() {
        for k in 2..=3 {
            let r = verify_block(&build_block(k).unwrap(), Level::Full).unwrap();
            assert!(r.passed, "{:?}", r.failures);
        }
    }

    #[test]
    fn key_detects_overlap() {
        // Moving B1 to the far side of a face breaks the triangulation.
        let b = build_block(2).unwrap();
        let b1 = VertexLabelABC::new(Letter::B, 1);
        let bad = b
            .with_vertex(b1, vec![rat(7, 10), rat(1, 10), rat(1, 10), rat(1, 10)])
            .unwrap();
        let r = verify_block(&bad, Level::Full).unwrap();
        assert!(!r.passed);
    }

    #[test]
    fn perturbed_vertex_breaks_volume_identity() {
        let b = build_block(2).unwrap();
        let b1 = VertexLabelABC::new(Letter::B, 1);
        let mut v = b.vertex(b1).to_vec();
        v[0] += rat(1, 1000);
        let r = verify_block(&b.with_vertex(b1, v).unwrap(), Level::Full).unwrap();
        assert!(!r.check("volume_identity").unwrap().passed);
    }

    #[test]
    fn k2_has_six_cycle() {
        let c = adjacency_cycle(&build_block(2).unwrap()).unwrap();
        assert_eq!(c.len(), 6);
    }
}
