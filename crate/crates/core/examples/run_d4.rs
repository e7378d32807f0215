use ryshkov::enumerator::{enumerate, report, RunConfig};

fn main() {
    let t0 = std::time::Instant::now();
    let config = RunConfig { dimension: 4, workers: 4, ..Default::default() };
    let db = enumerate(&config).unwrap();
    println!(
        "d=4: {} vertices, {} edge points, {} extreme, {} r0 edges, complete={} in {:?}",
        db.vertices.len(),
        db.points.len(),
        db.extreme_count(),
        db.r0_edges.len(),
        db.complete,
        t0.elapsed()
    );
    let in_r0 = db.vertices.iter().filter(|v| v.in_r0).count();
    println!("vertices in R0: {in_r0}");
    for row in report(&db, 128) {
        println!(
            "{} delta={} ({}) {} kappa={} |min|={} dim={} {}",
            row.label,
            row.density_decimal,
            row.density_exact,
            if row.lattice { "L" } else { "N" },
            row.kappa,
            row.minvec_count,
            row.face_dim,
            row.verdict
        );
    }
}
