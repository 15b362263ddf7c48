//! Text, JSON, CSV and DOT renderings of the computations.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{json, Value};

use delpezzo_core::catalog::{analyze_model, flip_index, tetrahedral_intersections, tetrahedral_quadruples, SignPlane};
use delpezzo_core::pencils::{conjugacy_graph, enumerate_rank2_cases, solve_pencils};
use delpezzo_core::rootsys::{classify, enumerate_lines, enumerate_roots};
use delpezzo_core::{IntegerLattice, LatticeVector, Result, Summary, ThreefoldModel};

pub const SCHEMA_VERSION: u32 = 1;

const VERIFIED_FIELDS: [&str; 5] = ["delta_prime", "delta_second", "p", "s", "rank_identity"];

fn to_json(value: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

fn classes(lattice: &IntegerLattice, vs: &[LatticeVector]) -> Vec<Value> {
    vs.iter().map(|v| json!({ "coeffs": v.coeffs(), "class": lattice.format_vector(v) })).collect()
}

pub fn roots(name: &str, lattice: &IntegerLattice, as_json: bool) -> Result<String> {
    let roots = enumerate_roots(lattice)?;
    let ty = classify(&roots)?;
    if as_json {
        return Ok(to_json(&json!({
            "schema_version": SCHEMA_VERSION,
            "lattice": name,
            "count": roots.len(),
            "dynkin_type": ty,
            "roots": classes(lattice, roots.roots()),
        })));
    }
    let mut s = format!("lattice: {name}\ntype: {ty}\ncount: {}\n", roots.len());
    for r in roots.roots() {
        let _ = writeln!(s, "{}", lattice.format_vector(r));
    }
    Ok(s)
}

pub fn lines(name: &str, lattice: &IntegerLattice, as_json: bool) -> Result<String> {
    let lines = enumerate_lines(lattice)?;
    if as_json {
        return Ok(to_json(&json!({
            "schema_version": SCHEMA_VERSION,
            "lattice": name,
            "count": lines.len(),
            "lines": classes(lattice, lines.lines()),
        })));
    }
    let mut s = format!("lattice: {name}\ncount: {}\n", lines.len());
    for l in lines.lines() {
        let _ = writeln!(s, "{}", lattice.format_vector(l));
    }
    Ok(s)
}

/// The report and whether the model passed its internal consistency checks.
pub fn model(model: &ThreefoldModel, as_json: bool) -> Result<(String, bool)> {
    let a = analyze_model(model)?;
    let consistent = a.rank_identity && a.delta_overlap == 0;
    if as_json {
        let out = json!({
            "schema_version": SCHEMA_VERSION,
            "model": {
                "base": model.base().wire_name(),
                "base_degree": model.base().degree(),
                "blowups": model.blowups(),
                "rho": model.rho(),
            },
            "degree": a.degree,
            "r": a.r,
            "rho": a.rho,
            "delta_prime": a.delta_prime,
            "delta_second": a.delta_second,
            "p": a.p,
            "s": { "constant": a.s.constant, "depends_on_h": a.s.depends_on_h, "text": a.s.to_string() },
            "rank_identity": a.rank_identity,
            "delta_overlap": a.delta_overlap,
        });
        return Ok((to_json(&out), consistent));
    }
    let mut s = String::new();
    let _ = writeln!(s, "model: {model}");
    let _ = writeln!(s, "rho: {}", a.rho);
    let _ = writeln!(s, "delta_prime: {}", a.delta_prime);
    let _ = writeln!(s, "delta_second: {}", a.delta_second);
    let _ = writeln!(s, "p: {}", a.p);
    let _ = writeln!(s, "s: {}", a.s);
    let _ = writeln!(s, "rank_identity: {}", a.rank_identity);
    Ok((s, consistent))
}

fn summary_line(summary: &Summary) -> String {
    format!(
        "rows: {}, fields matched: {}, known: {}, failed: {}, table sha256: {}",
        summary.rows.len(),
        summary.matched,
        summary.known,
        summary.failed,
        summary.table_sha256
    )
}

pub fn table_text(summary: &Summary) -> String {
    let mut s = String::new();
    for row in &summary.rows {
        let field = |name: &str| row.field(name).map_or("?".to_string(), |f| f.computed.clone());
        let _ = writeln!(
            s,
            "{:>2} {:<5} d={} r={} {:<42} delta'={:<6} delta''={:<8} p={:<3} s={}",
            row.row_id,
            row.status().to_string(),
            row.degree,
            row.r,
            row.label,
            field("delta_prime"),
            field("delta_second"),
            field("p"),
            field("s"),
        );
        for f in row.fields.iter().filter(|f| f.status != delpezzo_core::Status::Match) {
            let _ = writeln!(s, "   {} {}: published {}, computed {}", f.status, f.field, f.published, f.computed);
        }
    }
    let _ = writeln!(s, "{}", summary_line(summary));
    s
}

pub fn table_json(summary: &Summary) -> String {
    to_json(&json!({
        "schema_version": SCHEMA_VERSION,
        "success": summary.is_success(),
        "table_sha256": summary.table_sha256,
        "matched": summary.matched,
        "known": summary.known,
        "failed": summary.failed,
        "rows": summary.rows.iter().map(|r| json!({
            "row": r.row_id,
            "label": r.label,
            "degree": r.degree,
            "r": r.r,
            "base": r.base,
            "blowups": r.blowups,
            "rho": r.rho,
            "status": r.status(),
            "rank_identity": r.rank_identity,
            "fields": r.fields,
        })).collect::<Vec<_>>(),
    }))
}

pub fn table_csv(summary: &Summary) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["row", "label", "degree", "r", "base", "blowups", "rho", "status"]
        .into_iter()
        .map(String::from)
        .collect::<Vec<_>>();
    for f in VERIFIED_FIELDS {
        header.extend(["published", "computed", "status"].map(|k| format!("{f}_{k}")));
    }
    header.push("table_sha256".into());
    w.write_record(&header).expect("write to memory");
    for row in &summary.rows {
        let mut rec = vec![
            row.row_id.to_string(),
            row.label.clone(),
            row.degree.to_string(),
            row.r.to_string(),
            row.base.clone(),
            row.blowups.to_string(),
            row.rho.to_string(),
            row.status().to_string(),
        ];
        for name in VERIFIED_FIELDS {
            match row.field(name) {
                Some(f) => rec.extend([f.published.clone(), f.computed.clone(), f.status.to_string()]),
                None => rec.extend([String::new(), String::new(), "FAIL".into()]),
            }
        }
        rec.push(summary.table_sha256.clone());
        w.write_record(&rec).expect("write to memory");
    }
    String::from_utf8(w.into_inner().expect("flush to memory")).expect("csv is utf-8")
}

pub fn pencils_dot(degree: i64) -> Result<String> {
    Ok(conjugacy_graph(degree)?.to_dot())
}

pub fn pencils_json(degree: i64) -> Result<String> {
    let solutions = solve_pencils(degree)?;
    // too few classes to form a graph is a valid answer here, not an error
    let graph = match conjugacy_graph(degree) {
        Ok(g) => json!({
            "edges": g.edges,
            "vertex_degrees": g.vertex_degrees(),
            "connected": g.is_connected(),
            "consistent": g.consistent,
        }),
        Err(_) => Value::Null,
    };
    Ok(to_json(&json!({
        "schema_version": SCHEMA_VERSION,
        "degree": degree,
        "solutions": solutions,
        "graph": graph,
    })))
}

pub fn rank2(as_json: bool) -> String {
    let cases = enumerate_rank2_cases();
    if as_json {
        return to_json(&json!({
            "schema_version": SCHEMA_VERSION,
            "count": cases.len(),
            "cases": cases.iter().map(|c| json!({
                "f_type": c.f_type.to_string(),
                "f_plus_type": c.f_plus_type.to_string(),
                "d": c.d,
                "a": c.a,
                "second_multiplicity": c.second_multiplicity,
                "relation": c.relation(),
            })).collect::<Vec<_>>(),
        }));
    }
    let mut s = String::new();
    for c in &cases {
        let _ = writeln!(s, "{:<15} {:<15} d={}  {}", c.f_type, c.f_plus_type, c.d, c.relation());
    }
    let _ = writeln!(s, "cases: {}", cases.len());
    s
}

pub fn planes(as_json: bool) -> String {
    let planes = SignPlane::all();
    let labels: Vec<String> = planes.iter().map(|p| p.to_string()).collect();
    let m = tetrahedral_intersections();
    let quads = tetrahedral_quadruples();
    let flipped: Vec<[usize; 4]> = quads
        .iter()
        .map(|q| {
            let mut f = q.map(flip_index);
            f.sort_unstable();
            f
        })
        .collect();
    let exchanged = quads.len() == 2 && flipped[0] == quads[1] && flipped[1] == quads[0];
    if as_json {
        return to_json(&json!({
            "schema_version": SCHEMA_VERSION,
            "planes": labels,
            "intersection_dims": m,
            "quadruples": quads,
            "flip_exchanges_quadruples": exchanged,
        }));
    }
    let mut s = String::from("    ");
    for l in &labels {
        let _ = write!(s, " {l:>4}");
    }
    s.push('\n');
    for (l, row) in labels.iter().zip(&m) {
        let _ = write!(s, "{l:>4}");
        for v in row {
            let _ = write!(s, " {v:>4}");
        }
        s.push('\n');
    }
    for q in &quads {
        let names: Vec<&str> = q.iter().map(|&i| labels[i].as_str()).collect();
        let _ = writeln!(s, "quadruple: {}", names.join(" "));
    }
    let _ = writeln!(s, "sign flip exchanges the quadruples: {exchanged}");
    s
}
