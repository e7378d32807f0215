//! Regenerate the fuzz corpus seeds from the reference catalog.

use ryshkov::catalog;
use ryshkov::enumerator::{enumerate, RunConfig};
use ryshkov::formfile::format_form;

fn main() {
    let dir = std::path::Path::new("fuzz/corpus");
    let fp = dir.join("form_parse");
    std::fs::create_dir_all(&fp).unwrap();
    for (name, f) in catalog::d3::extreme_forms().into_iter().chain(catalog::d3::vertex_forms()) {
        std::fs::write(fp.join(format!("d3_{name}.form")), format_form(&f, Some(name))).unwrap();
    }
    std::fs::write(fp.join("d4_vertex.form"), format_form(&catalog::d4::d4_vertex(), Some("d4"))).unwrap();
    std::fs::write(fp.join("d5_vertex.form"), format_form(&catalog::d5::d5_rep_vertex(), Some("d5"))).unwrap();
    std::fs::write(fp.join("d6_e6.form"), format_form(&catalog::d6::e6_vertex(), Some("e6"))).unwrap();
    std::fs::write(fp.join("tiny.form"), "d 1\nm 2\nmatrix\n4 0\n0 4\n").unwrap();

    let cp = dir.join("checkpoint_parse");
    std::fs::create_dir_all(&cp).unwrap();
    let db = enumerate(&RunConfig { dimension: 3, ..Default::default() }).unwrap();
    std::fs::write(cp.join("d3_complete.json"), ryshkov::checkpoint::save_to_string(&db)).unwrap();
    let db_partial = enumerate(&RunConfig {
        dimension: 3,
        max_vertices: Some(1),
        ..Default::default()
    })
    .unwrap();
    std::fs::write(cp.join("d3_partial.json"), ryshkov::checkpoint::save_to_string(&db_partial)).unwrap();
    println!("corpus written");
}
