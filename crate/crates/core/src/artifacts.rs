//! Run artifacts: vertex and extreme-orbit listings (JSON lines), the
//! graph in DOT and JSON, the per-orbit summary CSV, and checkpoints.

use std::io::Write;
use std::path::Path;

use serde_json::json;

use crate::enumerator::{build_graph, density_discrepancy_note, report, NodeKind, OrbitDatabase};
use crate::exact::rat::format_rational;
use crate::extremeness::{ScalarRepr, Verdict};
use crate::forms::PeriodicForm;

fn matrix_entries(f: &PeriodicForm) -> Vec<String> {
    let n = f.n();
    let mut out = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            out.push(format_rational(f.matrix().at(i, j)));
        }
    }
    out
}

fn scalar_json(s: &ScalarRepr) -> serde_json::Value {
    match s {
        ScalarRepr::Rational(r) => json!({ "rational": r }),
        ScalarRepr::Algebraic { coeffs, approx } => {
            json!({ "coeffs": coeffs, "approx": approx })
        }
    }
}

fn verdict_json(v: &Verdict) -> serde_json::Value {
    match v {
        Verdict::Extreme(c) => json!({
            "kind": "extreme",
            "pairs": c.pairs.iter().map(|k| json!({
                "n": k.n.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                "l": k.l,
            })).collect::<Vec<_>>(),
            "eta": c.eta.iter().map(scalar_json).collect::<Vec<_>>(),
            "null_weight": scalar_json(&c.null_weight),
            "epsilon": scalar_json(&c.epsilon),
            "residual_zero": c.residual_zero,
        }),
        Verdict::NotExtreme(x) => json!({
            "kind": "not-extreme",
            "direction": x.coords.iter().map(scalar_json).collect::<Vec<_>>(),
        }),
        Verdict::FluidCandidate(x) => json!({
            "kind": "fluid-candidate",
            "direction": x.coords.iter().map(scalar_json).collect::<Vec<_>>(),
        }),
        Verdict::Inconclusive(r) => json!({ "kind": "inconclusive", "reason": r }),
    }
}

pub fn vertices_jsonl(db: &OrbitDatabase) -> String {
    let mut out = String::new();
    for (i, v) in db.vertices.iter().enumerate() {
        let row = json!({
            "index": i,
            "d": db.dimension,
            "m": db.m,
            "matrix": matrix_entries(v.form()),
            "minvec_count": v.minset_size,
            "in_r0": v.in_r0,
            "psd": v.psd,
            "contiguous": v.contiguous.iter().collect::<Vec<_>>(),
            "processed": v.processed,
            "skipped": v.skipped,
            "verdict": v.verdict.as_ref().map(verdict_json),
        });
        out.push_str(&row.to_string());
        out.push('\n');
    }
    out
}

pub fn extreme_jsonl(db: &OrbitDatabase, bits: u32) -> String {
    let mut out = String::new();
    for (i, v) in db.vertices.iter().enumerate() {
        if !v.in_r0 {
            continue;
        }
        let density = crate::forms::normalized_density(v.form(), &db.lambda)
            .expect("locus vertex density");
        let _ = bits;
        let row = json!({
            "kind": "vertex",
            "vertex_orbit": i,
            "matrix": matrix_entries(v.form()),
            "density_decimal": density.decimal(4),
            "density_radicand": density.radicand_rational().map(|r| format_rational(&r)),
            "kappa": format_rational(&crate::shortvec::kissing_number(v.form()).expect("kappa")),
            "lattice": crate::forms::is_lattice_representation(v.form()).unwrap_or(false),
            "minvec_count": v.minset_size,
            "face_dim": 0,
            "verdict": v.verdict.as_ref().map(verdict_json),
        });
        out.push_str(&row.to_string());
        out.push('\n');
    }
    for (i, p) in db.points.iter().enumerate() {
        let param = match p.point.t.as_rational() {
            Some(r) => json!({ "rational": format_rational(r) }),
            None => json!({
                "poly": p.point.t.defining_poly().coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                "lo": format_rational(p.point.t.lo()),
                "hi": format_rational(p.point.t.hi()),
            }),
        };
        let base = PeriodicForm::new(db.dimension, db.m, p.point.base.matrix().clone()).unwrap();
        let direction: Vec<String> = {
            let n = p.point.dir.rows();
            let mut v = Vec::with_capacity(n * n);
            for a in 0..n {
                for b in 0..n {
                    v.push(format_rational(p.point.dir.at(a, b)));
                }
            }
            v
        };
        let kind = if p.on_ray { "ray-point" } else { "edge-point" };
        let row = json!({
            "kind": kind,
            "point_orbit": i,
            "base": matrix_entries(&base),
            "direction": direction,
            "parameter": param,
            "incident_vertices": p.incident.iter().collect::<Vec<_>>(),
            "density_decimal": p.density.decimal(4),
            "density_radicand": p.density.radicand_rational().map(|r| format_rational(&r)),
            "kappa": format_rational(&p.kappa),
            "lattice": p.lattice,
            "minvec_count": p.minvec_count,
            "face_dim": 1,
            "verdict": verdict_json(&p.verdict),
        });
        out.push_str(&row.to_string());
        out.push('\n');
    }
    out
}

pub fn graph_json(db: &OrbitDatabase) -> String {
    let g = build_graph(db);
    let nodes: Vec<serde_json::Value> = g
        .nodes
        .iter()
        .map(|n| {
            json!({
                "id": n.id,
                "kind": match n.kind {
                    NodeKind::VertexOutsideR0 => "vertex",
                    NodeKind::VertexInR0 => "vertex-in-r0",
                    NodeKind::RayPoint => "ray-point",
                    NodeKind::BoundedEdgePoint => "edge-point",
                },
                "orbit": n.orbit,
                "extreme": n.extreme,
            })
        })
        .collect();
    let edges: Vec<serde_json::Value> = g
        .edges
        .iter()
        .map(|e| json!({ "from": e.from, "to": e.to, "relation": e.relation }))
        .collect();
    serde_json::to_string_pretty(&json!({
        "dimension": db.dimension,
        "m": db.m,
        "complete": db.complete,
        "node_count": nodes.len(),
        "edge_count": edges.len(),
        "nodes": nodes,
        "edges": edges,
        "connected": g.connected(),
    }))
    .expect("graph serializes")
}

/// DOT rendering with one color class per node kind (polyhedron vertices
/// outside/inside the rank locus, ray points, bounded-edge points).
pub fn graph_dot(db: &OrbitDatabase) -> String {
    let g = build_graph(db);
    let mut out = String::from("graph voronoi {\n  layout=neato;\n");
    for n in &g.nodes {
        let (color, shape) = match n.kind {
            NodeKind::VertexOutsideR0 => ("steelblue", "circle"),
            NodeKind::VertexInR0 => ("seagreen", "doublecircle"),
            NodeKind::RayPoint => ("orange", "box"),
            NodeKind::BoundedEdgePoint => ("crimson", "diamond"),
        };
        out.push_str(&format!(
            "  {} [style=filled, fillcolor={}, shape={}];\n",
            n.id, color, shape
        ));
    }
    for e in &g.edges {
        let style = if e.relation == "contiguous" { "solid" } else { "dashed" };
        out.push_str(&format!("  {} -- {} [style={}];\n", e.from, e.to, style));
    }
    out.push_str("}\n");
    out
}

/// Summary CSV: the first line reports the orbit totals, the table of
/// rank-locus orbits follows (sorted by descending density, then kissing
/// number).
pub fn summary_csv(db: &OrbitDatabase, bits: u32) -> String {
    let mut out = format!(
        "vertices,{},extreme,{},complete,{}\n",
        db.vertices.len(),
        db.extreme_count(),
        db.complete
    );
    out.push_str("label,density,density_exact,lattice,kappa,minvec_count,face_dim,verdict\n");
    for row in report(db, bits) {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            row.label,
            row.density_decimal,
            row.density_exact,
            if row.lattice { "L" } else { "N" },
            format_rational(&row.kappa),
            row.minvec_count,
            row.face_dim,
            row.verdict
        ));
    }
    if let Some(note) = density_discrepancy_note(db) {
        out.push_str(&format!("# {note}\n"));
    }
    for s in &db.skips {
        out.push_str(&format!(
            "# skipped: vertex orbit {} with {} facet pairs above the threshold\n",
            s.vertex_orbit, s.facet_pairs
        ));
    }
    out
}

/// Write the complete artifact set into a directory.
pub fn write_all(db: &OrbitDatabase, dir: &Path, bits: u32) -> std::io::Result<()> {
    std::fs::create_dir_all(dir)?;
    let w = |name: &str, content: String| -> std::io::Result<()> {
        let mut f = std::fs::File::create(dir.join(name))?;
        f.write_all(content.as_bytes())
    };
    w("vertices.jsonl", vertices_jsonl(db))?;
    w("extreme.jsonl", extreme_jsonl(db, bits))?;
    w("graph.json", graph_json(db))?;
    w("graph.dot", graph_dot(db))?;
    w("summary.csv", summary_csv(db, bits))?;
    w("checkpoint.json", crate::checkpoint::save_to_string(db))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerator::{enumerate, RunConfig};

    #[test]
    fn d3_artifacts_are_consistent() {
        let db = enumerate(&RunConfig { dimension: 3, ..Default::default() }).unwrap();
        let vj = vertices_jsonl(&db);
        assert_eq!(vj.lines().count(), 4);
        let ej = extreme_jsonl(&db, 96);
        assert_eq!(ej.lines().count(), 3);
        let gj: serde_json::Value = serde_json::from_str(&graph_json(&db)).unwrap();
        assert_eq!(gj["node_count"], 7);
        assert_eq!(gj["connected"], true);
        let dot = graph_dot(&db);
        // Same node and edge counts in dot and json.
        let dot_nodes = dot.lines().filter(|l| l.contains("fillcolor")).count();
        let dot_edges = dot.lines().filter(|l| l.contains(" -- ")).count();
        assert_eq!(dot_nodes as u64, gj["node_count"].as_u64().unwrap());
        assert_eq!(dot_edges as u64, gj["edge_count"].as_u64().unwrap());
        let csv = summary_csv(&db, 96);
        let first = csv.lines().next().unwrap();
        assert_eq!(first, "vertices,4,extreme,3,complete,true");
        // The discrepancy note is present for d=3.
        assert!(csv.contains("# note: computed top density"));
        // Every reported density is the same in d=3.
        let rows: Vec<&str> = csv.lines().skip(2).take(3).collect();
        for r in &rows {
            assert!(r.contains("0.1768"));
            assert!(r.contains("sqrt(1/32)"));
        }
    }
}
