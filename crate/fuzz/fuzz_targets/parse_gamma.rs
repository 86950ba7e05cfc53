#![no_main]

use libfuzzer_sys::fuzz_target;
use rk_core::schema::{gamma_json, parse_bytes, parse_gamma};

fuzz_target!(|data: &[u8]| {
    if let Ok(g) = parse_bytes(data, parse_gamma) {
        // Accepted exponents serialize back to themselves.
        assert_eq!(parse_gamma(&gamma_json(&g)).as_ref(), Ok(&g));
        let _ = g.to_f64();
    }
});
