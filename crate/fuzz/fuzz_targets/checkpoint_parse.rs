#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if data.len() > 1 << 18 {
        return;
    }
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(db) = ryshkov::checkpoint::load_from_str(text) {
        // A validated database must serialize and re-load.
        let emitted = ryshkov::checkpoint::save_to_string(&db);
        let back = ryshkov::checkpoint::load_from_str(&emitted).expect("round trip");
        assert_eq!(back.vertices.len(), db.vertices.len());
        assert_eq!(back.points.len(), db.points.len());
    }
});
