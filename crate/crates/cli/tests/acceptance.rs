//! Acceptance criteria, one test and one `PASS`/`FAIL` line each.
//!
//! Tolerances are exact (rational equality) except where stated: criterion 1
//! has a 600 s budget and criterion 9 a final/initial distance bound of 1/100.

use std::collections::HashSet;
use std::io::Write as _;
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

use circlequot::blockcore::{adjacency_cycle, build_block, enumerate_good_sets};
use circlequot::exactnum::rational::{self, rat, Rational};
use circlequot::exactnum::{upsilon, upsilon_punctured, RMatrix};
use circlequot::modblocks::{
    build_modified_network, degenerate, separation_report, standard_rep, Weighting,
};
use circlequot::modtiling::{base_triangle, Pattern, Psl2};
use circlequot::netbuild::audit::{
    endpoint_identification, sample_point_pairs, separation_depth, strictly_decreasing,
};
use circlequot::netbuild::{
    audit_network, build_network, discontinuity_probe, edge_image, rho_vertex, Network, Projection, RepElement,
};

const BLOCK_BUDGET: Duration = Duration::from_secs(600);

fn line(n: usize, pass: bool, what: &str, detail: &str) {
    let mut e = std::io::stderr().lock();
    let _ = writeln!(
        e,
        "acceptance {n:>2} {}: {what}; {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
}

fn golden() -> Pattern {
    Pattern::new(&["LR"]).unwrap()
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_circlequot"))
}

fn run(args: &[&str], dir: &Path) -> (i32, Vec<u8>) {
    let o = bin().args(args).current_dir(dir).output().expect("binary runs");
    (o.status.code().unwrap_or(-1), o.stdout)
}

fn sha(b: &[u8]) -> String {
    Sha256::digest(b).iter().map(|x| format!("{x:02x}")).collect()
}

fn fixtures() -> tempfile::TempDir {
    let d = tempfile::tempdir().unwrap();
    let w = |name: &str, text: &str| std::fs::write(d.path().join(name), text).unwrap();
    w("golden.json", r#"{"seeds": ["LR"]}"#);
    w("two.json", r#"{"seeds": ["LR", "LLR"]}"#);
    w("empty.json", r#"{"seeds": []}"#);
    w("unit.json", "{}");
    w("half.json", r#"{"orbit_weights": {"LR": "1/2"}}"#);
    d
}

#[test]
fn c01_block_certificates() {
    let d = fixtures();
    let t = Instant::now();
    let mut bad = Vec::new();
    for (k, level) in [(2, "full"), (3, "full"), (4, "full"), (5, "full"), (6, "structural"), (7, "structural")] {
        let (code, out) = run(&["verify-block", "--k", &k.to_string(), "--level", level], d.path());
        let v: serde_json::Value = serde_json::from_slice(&out).unwrap();
        if code != 0 || v["passed"] != true || v["n"] != 2 * k - 1 {
            bad.push(format!("k={k} exit {code}"));
        }
    }
    let took = t.elapsed();
    let pass = bad.is_empty() && took <= BLOCK_BUDGET;
    line(
        1,
        pass,
        "verify-block k=2..5 full, k=6..7 structural",
        &format!("{:.1}s, failures {bad:?}", took.as_secs_f64()),
    );
    assert!(pass);
}

#[test]
fn c02_three_dimensional_fixture() {
    let b = build_block(2).unwrap();
    let table: [(&str, [Rational; 3]); 6] = [
        ("A1", [rat(1, 1), rat(1, 1), rat(1, 1)]),
        ("A2", [rat(1, 1), rat(-1, 1), rat(-1, 1)]),
        ("B1", [rat(0, 1), rat(-1, 3), rat(0, 1)]),
        ("B2", [rat(0, 1), rat(1, 3), rat(0, 1)]),
        ("C1", [rat(-1, 1), rat(1, 1), rat(-1, 1)]),
        ("C2", [rat(-1, 1), rat(-1, 1), rat(1, 1)]),
    ];
    let mut mismatched = Vec::new();
    for (l, v) in b.vertex_table() {
        let want = &table.iter().find(|(n, _)| *n == l.to_string()).unwrap().1;
        let p = circlequot::geometry::ChartPoint::plus(v);
        if &Projection::Hadamard.apply(&p).unwrap() != want {
            mismatched.push(l.to_string());
        }
    }
    // the published gluing cycle, as vertex sets
    let cycle = ["A1B1C2B2", "A1B1A2C2", "B1C1A2C2", "B1C1B2A2", "C1A1B2A2", "C1A1C2B2"];
    let set = |s: &str| -> Vec<String> {
        let mut v: Vec<String> = s.as_bytes().chunks(2).map(|c| String::from_utf8(c.to_vec()).unwrap()).collect();
        v.sort();
        v
    };
    let want: Vec<Vec<String>> = cycle.iter().map(|s| set(s)).collect();
    let got: Vec<Vec<String>> = adjacency_cycle(&b).unwrap_or_default().iter().map(|s| set(s)).collect();
    let same_cycle = got.len() == 6
        && (0..6).any(|r| {
            (0..6).all(|i| got[(i + r) % 6] == want[i]) || (0..6).all(|i| got[(r + 6 - i) % 6] == want[i])
        });
    let pass = mismatched.is_empty() && same_cycle;
    line(
        2,
        pass,
        "projected A1..C2 and the 6-cycle",
        &format!("mismatched {mismatched:?}, cycle matches {same_cycle}"),
    );
    assert!(pass);
}

#[test]
fn c03_determinant_identities() {
    let mut bad = Vec::new();
    for b in 1..=10usize {
        let d = upsilon(b).det().unwrap();
        let sign = if b % 2 == 1 { rational::one() } else { -rational::one() };
        if d * sign <= rational::int(0) {
            bad.push(format!("sign at b={b}"));
        }
    }
    for b in 2..=8usize {
        let prev = upsilon(b - 1).det().unwrap();
        for a in 1..=b {
            if upsilon_punctured(b, a).unwrap().det().unwrap() != prev {
                bad.push(format!("puncture b={b} a={a}"));
            }
        }
    }
    let pass = bad.is_empty();
    line(3, pass, "det signs b=1..10, punctured dets b=2..8", &format!("failures {bad:?}"));
    assert!(pass);
}

#[test]
fn c04_volume_partition() {
    let mut bad = Vec::new();
    for k in 2..=6 {
        let b = build_block(k).unwrap();
        let mut sum = rational::int(0);
        for s in enumerate_good_sets(k) {
            let rows: Vec<Vec<Rational>> = s.ids().iter().map(|&i| b.vertex_by_id(i).to_vec()).collect();
            let d = RMatrix::from_rows(&rows).unwrap().det().unwrap();
            sum += if d < rational::int(0) { -d } else { d };
        }
        // vol(Δ₀) in determinant units: |det I| = 1
        if sum != rational::one() {
            bad.push(format!("k={k}: {}", rational::to_string(&sum)));
        }
    }
    let pass = bad.is_empty();
    line(4, pass, "good-simplex volumes sum to vol(Δ₀), k=2..6", &format!("failures {bad:?}"));
    assert!(pass);
}

#[test]
fn c05_network_invariants() {
    let net = build_network(&golden(), 3).unwrap();
    let checks = audit_network(&net).unwrap();
    let profile = net.diameter_profile().unwrap();
    let failed: Vec<&str> = checks.iter().filter(|c| !c.pass).map(|c| c.name.as_str()).collect();
    let decreasing = strictly_decreasing(&profile);
    let pass = failed.is_empty() && decreasing;
    line(
        5,
        pass,
        "golden depth 3 audits and strictly decreasing Λ_m diameters",
        &format!(
            "failed {failed:?}, squared diameters {}",
            profile.iter().map(rational::to_string).collect::<Vec<_>>().join(" ")
        ),
    );
    assert!(pass);
}

#[test]
fn c06_quotient_identification() {
    let net = build_network(&golden(), 3).unwrap();
    let traces = endpoint_identification(&net, 2).unwrap();
    let bad: Vec<&str> = traces.iter().filter(|t| !t.pass).map(|t| t.geodesic.as_str()).collect();
    let pairs = sample_point_pairs();
    let apart = pairs
        .iter()
        .filter(|(x, y)| separation_depth(&net, x, y).unwrap().is_some())
        .count();
    let pass = !traces.is_empty() && bad.is_empty() && pairs.len() == 10 && apart == 10;
    line(
        6,
        pass,
        "shared endpoint vertices over ∂T_2, 10 separated pairs",
        &format!("{} geodesics, {} failing, {apart}/10 pairs apart", traces.len(), bad.len()),
    );
    assert!(pass);
}

fn word(rng: &mut ChaCha8Rng) -> String {
    let n = rng.gen_range(1..=4);
    (0..n).map(|_| ["S", "W", "w", "T", "t"][rng.gen_range(0..5)]).collect()
}

#[test]
fn c07_representation() {
    let net = build_network(&golden(), 4).unwrap();
    let records = net.vertex_records();
    let s = Psl2::s();
    let w = base_triangle().rotation();
    let mut rel = 0;
    let mut rel_bad = 0;
    for r in &records {
        for (g, n) in [(&s, 2), (&w, 3)] {
            let (mut obj, mut e, mut p) = (r.label.clone(), r.edge.clone(), r.point.clone());
            let mut ok = true;
            for _ in 0..n {
                match rho_vertex(&net, g, &obj, &e) {
                    Ok(q) => {
                        p = q;
                        obj = obj.translate(g);
                        e = edge_image(g, &e).unwrap();
                    }
                    Err(_) => {
                        ok = false;
                        break;
                    }
                }
            }
            if ok {
                rel += 1;
                rel_bad += usize::from(p != r.point);
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    let mut words = 0;
    let mut hom_bad = Vec::new();
    let mut seen = HashSet::new();
    while words < 20 {
        let (a, b) = (word(&mut rng), word(&mut rng));
        if !seen.insert((a.clone(), b.clone())) {
            continue;
        }
        let g = RepElement::parse(&a).unwrap().element;
        let h = RepElement::parse(&b).unwrap().element;
        let gh = g.mul(&h);
        let mut n = 0;
        for r in &records {
            let (Ok(_), Ok(y)) = (rho_vertex(&net, &h, &r.label, &r.edge), rho_vertex(&net, &gh, &r.label, &r.edge)) else {
                continue;
            };
            let Ok(z) = rho_vertex(&net, &g, &r.label.translate(&h), &edge_image(&h, &r.edge).unwrap()) else {
                continue;
            };
            n += 1;
            if z != y {
                hom_bad.push(format!("{a}·{b} at {}", r.label));
            }
        }
        if n > 0 {
            words += 1;
        }
    }
    let probe = discontinuity_probe(&build_network(&golden(), 6).unwrap(), 8).unwrap();
    let pass = rel >= 50 && rel_bad == 0 && hom_bad.is_empty() && probe.unresolved.is_empty();
    line(
        7,
        pass,
        "ρ relations, homomorphism on 20 word pairs, discontinuity probe to length 8",
        &format!(
            "{rel} relation checks ({rel_bad} bad), {} homomorphism failures, probe {} elements returns {:?} unresolved {}",
            hom_bad.len(),
            probe.elements,
            probe.returns,
            probe.unresolved.len()
        ),
    );
    assert!(pass);
}

fn label_spread(net: &Network) -> (usize, usize, bool) {
    let rows = separation_report(net);
    let single = rows.iter().filter(|r| r.distinct == 1).count();
    let spread = rows.iter().filter(|r| r.distinct == r.records).count();
    let positive = rows
        .iter()
        .filter(|r| r.distinct > 1)
        .all(|r| r.min_dist2.as_ref().is_some_and(|d| *d > rational::int(0)));
    (rows.len(), single, spread == rows.len() && positive)
}

#[test]
fn c08_separation_principle() {
    let p = golden();
    let one = build_modified_network(&p, &Weighting::Unit, 2).unwrap();
    let half = build_modified_network(&p, &Weighting::constant(&p, rat(1, 2)).unwrap(), 2).unwrap();
    let back = build_modified_network(&p, &Weighting::constant(&p, rational::one()).unwrap(), 2).unwrap();
    let (n1, single1, _) = label_spread(&one);
    let (n2, _, apart2) = label_spread(&half);
    let (n3, single3, _) = label_spread(&back);
    let restored = one.blocks.iter().zip(&back.blocks).all(|(a, b)| a.positions == b.positions);
    let pass = n1 > 0 && single1 == n1 && n2 > 0 && apart2 && single3 == n3 && restored;
    line(
        8,
        pass,
        "f=1 coincide, f=1/2 pairwise distinct, f=1 again restores",
        &format!("{single1}/{n1} coincide, f=1/2 distinct {apart2} over {n2}, restored {restored}"),
    );
    assert!(pass);
}

#[test]
fn c09_degeneration() {
    let bound = rat(1, 100);
    let two = Pattern::new(&["LR", "LLR"]).unwrap();
    let nested = degenerate(&two, &golden(), &Weighting::Unit, 6, 2).unwrap();
    let empty = degenerate(&golden(), &Pattern::empty(), &Weighting::Unit, 6, 2).unwrap();
    let circle = build_network(&Pattern::empty(), 0).unwrap();
    let mut marked = 0;
    let mut marked_bad = 0;
    for w in ["S", "W", "w"] {
        let g = RepElement::parse(w).unwrap().element;
        for r in circle.vertex_records() {
            let Ok(img) = rho_vertex(&circle, &g, &r.label, &r.edge) else {
                continue;
            };
            marked += 1;
            marked_bad += usize::from(img != standard_rep(w, &r.point).unwrap());
        }
    }
    let a = nested.converges(&bound);
    let b = empty.converges(&bound);
    let c = marked >= 9 && marked_bad == 0;
    let pass = a && b && c;
    line(
        9,
        pass,
        "ε=2⁻¹..2⁻⁶ depth 2: nonincreasing and final/initial ≤ 1/100; ρ₀ on A, B, C",
        &format!(
            "golden⊂two: monotone {} worst ratio {:.4}; empty⊂golden: monotone {} worst ratio {:.4}; ρ₀ {marked} checks {marked_bad} bad",
            nested.nonincreasing, nested.worst_ratio, empty.nonincreasing, empty.worst_ratio
        ),
    );
    assert!(pass);
}

#[test]
fn c10_determinism() {
    let d = fixtures();
    let cmds: Vec<Vec<&str>> = vec![
        vec!["verify-block", "--k", "2"],
        vec!["verify-block", "--k", "5"],
        vec!["verify-block", "--k", "7", "--level", "structural"],
        vec!["build", "--pattern", "golden.json", "--depth", "3", "--audit"],
        vec!["export", "--pattern", "golden.json", "--depth", "3", "--export", "ply"],
        vec!["export", "--pattern", "golden.json", "--depth", "3", "--export", "csv"],
        vec!["export", "--pattern", "golden.json", "--depth", "2", "--export", "json", "--projection", "lift"],
        vec!["export", "--pattern", "golden.json", "--depth", "2", "--export", "csv", "--weighting", "half.json"],
        vec!["dump-network", "--pattern", "golden.json", "--depth", "2"],
        vec!["gamma-e", "--pattern", "two.json", "--edge", "1/0,0/1"],
        vec!["degenerate", "--pattern", "two.json", "--sub-pattern", "golden.json"],
        vec!["degenerate", "--pattern", "golden.json", "--sub-pattern", "empty.json"],
    ];
    let mut differ = Vec::new();
    for c in &cmds {
        let (c1, o1) = run(c, d.path());
        let (c2, o2) = run(c, d.path());
        if c1 != c2 || o1.is_empty() || sha(&o1) != sha(&o2) {
            differ.push(c.join(" "));
        }
    }
    let plain = run(&["export", "--pattern", "golden.json", "--depth", "3", "--export", "ply"], d.path()).1;
    let unit = run(
        &["export", "--pattern", "golden.json", "--depth", "3", "--export", "ply", "--weighting", "unit.json"],
        d.path(),
    )
    .1;
    let same_unit = sha(&plain) == sha(&unit);
    let pass = differ.is_empty() && same_unit;
    line(
        10,
        pass,
        "repeated CLI runs are byte-identical",
        &format!("{} commands, differing {differ:?}, empty weighting reproduces f≡1 {same_unit}", cmds.len()),
    );
    assert!(pass);
}
