use ryshkov::enumerator::{enumerate, report, RunConfig};

fn main() {
    let t0 = std::time::Instant::now();
    let config = RunConfig { dimension: 5, workers: 8, ..Default::default() };
    let db = enumerate(&config).unwrap();
    println!(
        "d=5: {} vertices, {} edge points, {} extreme, {} r0-edge orbits, complete={} in {:?}",
        db.vertices.len(),
        db.points.len(),
        db.extreme_count(),
        db.r0_edges.len(),
        db.complete,
        t0.elapsed()
    );
    let in_r0 = db.vertices.iter().filter(|v| v.in_r0).count();
    let non_psd = db.vertices.iter().filter(|v| !v.psd).count();
    println!("vertices in R0: {in_r0}, not PSD: {non_psd}");
    for e in &db.r0_edges {
        println!("r0 edge: pencil={:?} fluid={} incident={:?}", e.q_pencil, e.fluid, e.incident);
    }
    for row in report(&db, 128) {
        println!(
            "{} delta={} ({}) {} kappa={} |min|={} dim={} {}",
            row.label, row.density_decimal, row.density_exact,
            if row.lattice { "L" } else { "N" },
            row.kappa, row.minvec_count, row.face_dim, row.verdict
        );
    }
    let not_extreme = db.points.iter().filter(|p| p.verdict.kind() == "not-extreme").count();
    println!("not-extreme points: {not_extreme}");
}
