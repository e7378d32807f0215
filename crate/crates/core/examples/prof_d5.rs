use ryshkov::catalog;
use ryshkov::exact::rat::rat;
use ryshkov::polyhedron::{classify_ray, extreme_rays, PolyVertex, RayOutcome};

fn main() {
    let j = catalog::d5::d5_rep_vertex();
    let t0 = std::time::Instant::now();
    let v = PolyVertex::new(j, &rat(4, 1)).unwrap();
    println!("vertex built ({} facet pairs) in {:?}", v.facet_count(), t0.elapsed());
    let t0 = std::time::Instant::now();
    let rays = extreme_rays(&v).unwrap();
    println!("{} extreme rays in {:?}", rays.len(), t0.elapsed());
    for (i, r) in rays.iter().enumerate().take(4) {
        let t0 = std::time::Instant::now();
        let out = classify_ray(&v, r).unwrap();
        let kind = match out {
            RayOutcome::Bounded { .. } => "bounded",
            RayOutcome::Unbounded => "unbounded",
        };
        println!("ray {i}: {kind} in {:?}", t0.elapsed());
    }
}
