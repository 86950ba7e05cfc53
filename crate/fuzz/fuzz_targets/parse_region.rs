#![no_main]

use libfuzzer_sys::fuzz_target;
use rk_core::loggeom::{lineality_directions, rational_line_direction};
use rk_core::schema::{parse_bytes, parse_region};

fuzz_target!(|data: &[u8]| {
    if let Ok(r) = parse_bytes(data, parse_region) {
        let _ = lineality_directions(&r);
        let _ = rational_line_direction(&r);
    }
});
