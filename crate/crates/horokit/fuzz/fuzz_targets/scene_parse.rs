//! Fuzzes the scene text parser. Any input may be rejected, but accepted
//! input must survive a write/parse round trip unchanged.

#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(doc) = horokit::scene::parse(text) {
        let canonical = doc.write();
        let again = horokit::scene::parse(&canonical).expect("canonical text parses");
        assert_eq!(doc, again, "round trip changed the document");
        assert_eq!(again.write(), canonical, "second write is not a fixpoint");
    }
});
