//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any
//! failure.

use std::collections::BTreeSet;
use std::process::{Command, ExitCode};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use delpezzo_core::catalog::{flip_index, tetrahedral_intersections, tetrahedral_quadruples, PublishedS};
use delpezzo_core::counting::node_count;
use delpezzo_core::lattice::{p1xp1_lattice, standard_dp_lattice, IntegerLattice};
use delpezzo_core::pencils::{conjugacy_graph, enumerate_rank2_cases, solve_pencils, Contraction};
use delpezzo_core::rootsys::{
    classify, enumerate_lines, enumerate_roots, minus_id_in_weyl, reflect, solve_norm_and_degree, SearchBound,
};
use delpezzo_core::threefold::{delta_prime, delta_second, plane_count, rank_identity, realize};
use delpezzo_core::{builtin_table, verify_row, LatticeVector, PencilClass, Sublattice, ThreefoldModel};

type Check = Result<(), String>;
type Triple = (i64, i64, i64);
type Criterion = fn() -> Check;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn model(base: &str, blowups: usize) -> Result<ThreefoldModel, String> {
    ThreefoldModel::new(base.parse().map_err(err)?, blowups, None).map_err(err)
}

fn delta_types() -> Check {
    let want = ["E8", "E7", "E6", "D5", "A4", "A1 x A2", "A1", "-"];
    let mut got = Vec::new();
    for n in (1..=8).rev() {
        let l = standard_dp_lattice(n).map_err(err)?;
        got.push(classify(&enumerate_roots(&l).map_err(err)?).map_err(err)?.to_string());
    }
    got.push(classify(&enumerate_roots(&p1xp1_lattice()).map_err(err)?).map_err(err)?.to_string());
    let mut want: Vec<String> = want.iter().map(|s| s.to_string()).collect();
    want.push("A1".into());
    let hits = got.iter().zip(&want).filter(|(a, b)| a == b).count();
    ensure(got == want, || format!("{hits}/9 match: got {got:?}"))
}

fn table_audit() -> Check {
    let out = Command::new(env!("CARGO_BIN_EXE_delpezzo"))
        .args(["table", "--verify", "--format", "json"])
        .output()
        .map_err(err)?;
    let v: Value = serde_json::from_slice(&out.stdout).map_err(err)?;
    let mut known = Vec::new();
    let mut failed = Vec::new();
    for row in v["rows"].as_array().ok_or("no rows")? {
        for f in row["fields"].as_array().ok_or("no fields")? {
            let entry = format!(
                "row {} {}: published {}, computed {}",
                row["row"],
                f["field"].as_str().unwrap_or("?"),
                f["published"],
                f["computed"]
            );
            match f["status"].as_str() {
                Some("known") => {
                    known.push((row["label"].as_str().unwrap_or("").to_string(), f["field"].clone(), entry))
                }
                Some("fail") => failed.push(entry),
                _ => {}
            }
        }
    }
    let rows = v["rows"].as_array().map_or(0, |r| r.len());
    ensure(rows == 40, || format!("{rows} rows audited"))?;
    ensure(failed.is_empty() && out.status.code() == Some(0), || {
        format!("exit {:?}, {} failure(s): {}", out.status.code(), failed.len(), failed.join("; "))
    })?;
    ensure(known.len() == 1 && known[0].0 == "P3" && known[0].1 == "delta_prime", || {
        format!("known discrepancies: {:?}", known.iter().map(|k| &k.2).collect::<Vec<_>>())
    })
}

fn rank_identities() -> Check {
    let mut bad = Vec::new();
    for row in builtin_table() {
        let data = realize(&row.model).map_err(err)?;
        if !rank_identity(&data, row.degree).map_err(err)? || !verify_row(&row).rank_identity {
            bad.push(row.row_id);
        }
    }
    ensure(bad.is_empty(), || format!("rank identity fails on rows {bad:?}"))
}

fn plane_tables() -> Check {
    let maximal = [126, 32, 15, 8, 4, 2, 1];
    let submaximal = [72, 20, 9, 4, 1, 0];
    for d in 1..=7usize {
        let p = plane_count(&realize(&model("P3", 8 - d)?).map_err(err)?).map_err(err)?;
        ensure(p == maximal[d - 1], || format!("maximal d = {d}: {p} planes"))?;
    }
    for d in 1..=6usize {
        let p = plane_count(&realize(&model("V6", 6 - d)?).map_err(err)?).map_err(err)?;
        ensure(p == submaximal[d - 1], || format!("submaximal d = {d}: {p} planes"))?;
    }
    Ok(())
}

fn node_counts() -> Check {
    let maximal = [28, 16, 10, 6, 3, 1];
    let submaximal = [27, 15, 9, 5, 2, 0];
    for d in 1..=6usize {
        let m = model("P3", 8 - d)?;
        let s = node_count(&m, m.r()).map_err(err)?;
        ensure(!s.depends_on_h && s.constant == maximal[d - 1], || format!("maximal d = {d}: s = {s}"))?;
        let m = model("V6", 6 - d)?;
        let s = node_count(&m, m.r()).map_err(err)?;
        ensure(!s.depends_on_h && s.constant == submaximal[d - 1], || format!("submaximal d = {d}: s = {s}"))?;
    }
    let mut checked = 0;
    for row in builtin_table() {
        if let PublishedS::MinusH { constant, .. } = row.published.s {
            let s = node_count(&row.model, row.r).map_err(err)?;
            ensure(s.depends_on_h && s.constant == constant, || {
                format!("row {}: published {}-h, computed {s}", row.row_id, constant)
            })?;
            checked += 1;
        }
    }
    ensure(checked > 0, || "no C - h rows found".into())
}

fn pencil_analysis() -> Check {
    let trivial = [(0, 1, 0), (0, 0, 1)];
    let lists: [(i64, &[Triple]); 4] = [
        (1, &[(4, -1, 0), (4, 0, -1)]),
        (2, &[(1, -1, 1), (1, 1, -1), (2, -1, 0), (2, 0, -1)]),
        (4, &[(1, -1, 0), (1, 0, -1)]),
        (6, &[(1, -1, -1)]),
    ];
    for (d, extra) in lists {
        let want: BTreeSet<PencilClass> =
            trivial.iter().chain(extra).map(|&(a, b1, b2)| PencilClass::new(a, b1, b2)).collect();
        let got: BTreeSet<PencilClass> = solve_pencils(d).map_err(err)?.into_iter().collect();
        ensure(got == want, || format!("d = {d}: got {got:?}"))?;
    }
    for (d, len) in [(2, 6), (4, 4), (6, 3)] {
        let g = conjugacy_graph(d).map_err(err)?;
        ensure(g.consistent && g.is_cycle() && g.vertices.len() == len, || {
            format!("d = {d}: not a {len}-cycle, edges {:?}", g.edges)
        })?;
    }
    let g = conjugacy_graph(1).map_err(err)?;
    ensure(!g.is_connected() && !g.consistent, || "d = 1 graph is connected or consistent".into())?;
    for d in [3, 5] {
        let nontrivial = solve_pencils(d).map_err(err)?.iter().filter(|c| c.a > 0).count();
        ensure(nontrivial == 0, || format!("d = {d}: {nontrivial} nontrivial solutions"))?;
    }
    Ok(())
}

fn rank2_cases() -> Check {
    use Contraction::*;
    let want = [
        (P1Bundle, P1Bundle, 1, "L + L' ~ 6S"),
        (P1Bundle, P1Bundle, 2, "L + L' ~ 3S"),
        (P1Bundle, P1Bundle, 3, "L + L' ~ 2S"),
        (P1Bundle, P1Bundle, 6, "L + L' ~ S"),
        (P1Bundle, QuadricBundle, 5, "L + L' ~ S"),
        (QuadricBundle, QuadricBundle, 1, "L + L' ~ 4S"),
        (QuadricBundle, QuadricBundle, 2, "L + L' ~ 2S"),
        (QuadricBundle, QuadricBundle, 4, "L + L' ~ S"),
        (Birational, P1Bundle, 4, "E + L' ~ S"),
        (Birational, P1Bundle, 7, "E + 2L' ~ S"),
        (Birational, QuadricBundle, 3, "E + L' ~ S"),
        (Birational, Birational, 1, "E + E' ~ 2S"),
        (Birational, Birational, 2, "E + E' ~ S"),
    ];
    let got: Vec<_> = enumerate_rank2_cases().iter().map(|c| (c.f_type, c.f_plus_type, c.d, c.relation())).collect();
    ensure(got.len() == 13, || format!("{} cases", got.len()))?;
    for (g, w) in got.iter().zip(&want) {
        ensure(g.0 == w.0 && g.1 == w.1 && g.2 == w.2 && g.3 == w.3, || format!("got {g:?}, expected {w:?}"))?;
    }
    Ok(())
}

fn tetrahedral() -> Check {
    let m = tetrahedral_intersections();
    for (i, row) in m.iter().enumerate() {
        let count = |k: i64| row.iter().enumerate().filter(|&(j, &v)| j != i && v == k).count();
        ensure((count(0), count(1), count(-1)) == (3, 3, 1), || format!("plane {i}: row {row:?}"))?;
    }
    let quads = tetrahedral_quadruples();
    ensure(quads.len() == 2, || format!("{} quadruples", quads.len()))?;
    let flipped: Vec<BTreeSet<usize>> = quads.iter().map(|q| q.iter().map(|&i| flip_index(i)).collect()).collect();
    let as_set = |q: &[usize; 4]| q.iter().copied().collect::<BTreeSet<_>>();
    ensure(flipped[0] == as_set(&quads[1]) && flipped[1] == as_set(&quads[0]), || {
        "the sign flip does not exchange the quadruples".into()
    })
}

fn random_vector(rng: &mut ChaCha8Rng, rank: usize) -> LatticeVector {
    LatticeVector::new((0..rank).map(|_| rng.gen_range(-20..=20)).collect())
}

/// Exceptional coefficients over a box, `h` from the degree condition.
fn box_line_count(n: usize, radius: i64) -> usize {
    let mut count = 0;
    let mut b = vec![-radius; n];
    loop {
        let t = 1 - b.iter().sum::<i64>();
        if t % 3 == 0 {
            let a = t / 3;
            if a * a - b.iter().map(|x| x * x).sum::<i64>() == -1 {
                count += 1;
            }
        }
        let mut i = 0;
        while i < n && b[i] == radius {
            b[i] = -radius;
            i += 1;
        }
        if i == n {
            return count;
        }
        b[i] += 1;
    }
}

fn property_suites() -> Check {
    let mut lattices: Vec<(String, IntegerLattice)> =
        (2..=8).map(|n| (format!("dp({n})"), standard_dp_lattice(n).unwrap())).collect();
    lattices.push(("P1xP1".into(), p1xp1_lattice()));
    for (name, l) in &lattices {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed + l.rank() as u64);
        let roots = enumerate_roots(l).map_err(err)?;
        for case in 0..1000 {
            let alpha = &roots.roots()[rng.gen_range(0..roots.len())];
            let (v, w) = (random_vector(&mut rng, l.rank()), random_vector(&mut rng, l.rank()));
            let rv = reflect(l, alpha, &v).map_err(err)?;
            let rw = reflect(l, alpha, &w).map_err(err)?;
            ensure(reflect(l, alpha, &rv).map_err(err)? == v, || format!("{name} case {case}: not an involution"))?;
            ensure(l.inner(&rv, &rw).map_err(err)? == l.inner(&v, &w).map_err(err)?, || {
                format!("{name} case {case}: form not preserved")
            })?;
        }
        for case in 0..200 {
            let k = rng.gen_range(1..=l.rank());
            let gens: Vec<LatticeVector> =
                (0..k).map(|_| random_vector(&mut rng, l.rank()).scaled(rng.gen_range(1..=3))).collect();
            let Ok(sub) = Sublattice::new(l, gens) else { continue };
            let sat = sub.saturate().map_err(err)?;
            ensure(sat.saturate().map_err(err)? == sat && sat.rank() == sub.rank(), || {
                format!("{name} case {case}: saturation is not idempotent")
            })?;
        }
    }
    for row in builtin_table() {
        let data = realize(&row.model).map_err(err)?;
        let (dp, _) = delta_prime(&data).map_err(err)?;
        let (ds, _) = delta_second(&data).map_err(err)?;
        ensure(dp.roots().iter().all(|a| !ds.contains(a)), || format!("row {}: delta systems meet", row.row_id))?;
    }
    for n in 0..=8 {
        let l = standard_dp_lattice(n).map_err(err)?;
        for (square, kdot) in [(-2, 0), (-1, -1)] {
            let tight = solve_norm_and_degree(&l, square, kdot, SearchBound::Tight).map_err(err)?;
            let wide = solve_norm_and_degree(&l, square, kdot, SearchBound::Widened(2)).map_err(err)?;
            ensure(tight == wide, || format!("dp({n}): widened search finds {} vs {}", wide.len(), tight.len()))?;
        }
    }
    let want = [240, 56, 27, 16, 10, 6, 3, 1];
    for (i, n) in (1..=8).rev().enumerate() {
        let got = enumerate_lines(&standard_dp_lattice(n).map_err(err)?).map_err(err)?.len();
        let oracle = box_line_count(n, if n == 8 { 3 } else { 4 });
        ensure(got == want[i] && oracle == want[i], || format!("dp({n}): {got} lines, oracle {oracle}"))?;
    }
    Ok(())
}

fn weyl_dichotomy() -> Check {
    let table = builtin_table();
    let expected = [("E7", true), ("D6", true), ("A1", true), ("A2", false), ("A5", false), ("2A2", false)];
    for (ty, want) in expected {
        let row = table
            .iter()
            .find(|r| r.published.delta_second.to_string() == ty)
            .ok_or_else(|| format!("no row with delta'' = {ty}"))?;
        let (roots, computed) = delta_second(&realize(&row.model).map_err(err)?).map_err(err)?;
        ensure(computed.to_string() == ty, || format!("row {}: computed {computed}", row.row_id))?;
        let got = minus_id_in_weyl(&roots).map_err(err)?;
        ensure(got == want, || format!("{ty}: -id in Weyl group = {got}"))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [(&str, Criterion); 10] = [
        ("root system types of dp(8..1) and P1xP1", delta_types),
        ("main table audit: 0 failures, 1 known", table_audit),
        ("rank identity on every table row", rank_identities),
        ("plane counts of maximal and submaximal models", plane_tables),
        ("node counts and C - h constants", node_counts),
        ("pencil solutions and conjugacy graphs", pencil_analysis),
        ("13 rank-2 contraction pairs", rank2_cases),
        ("tetrahedral quartic plane configuration", tetrahedral),
        ("property suites", property_suites),
        ("-id in the Weyl group", weyl_dichotomy),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(()) => println!("PASS {:>2} {name}", i + 1),
            Err(msg) => {
                failures += 1;
                println!("FAIL {:>2} {name}: {msg}", i + 1);
            }
        }
    }
    println!("{}/{} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
