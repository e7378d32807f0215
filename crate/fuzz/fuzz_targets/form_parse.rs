#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if data.len() > 1 << 16 {
        return;
    }
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(parsed) = ryshkov::formfile::parse_form(text) {
        // Writers emit lowest terms; the round trip must re-parse to the
        // identical form.
        let emitted = ryshkov::formfile::format_form(&parsed.form, parsed.label.as_deref());
        let back = ryshkov::formfile::parse_form(&emitted).expect("emitted form re-parses");
        assert_eq!(back.form.matrix(), parsed.form.matrix());
    }
});
