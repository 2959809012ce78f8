//! Fuzzes the config file parser. Accepted files must contain only finite
//! numeric settings and never panic the loader.

#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(cfg) = horokit::config::parse(text) {
        if let Some(tol) = cfg.tol {
            assert!(tol.is_finite() && tol > 0.0, "accepted non-positive tol");
        }
        if let Some(samples) = cfg.samples {
            let _ = samples;
        }
    }
});
