#![no_main]

use libfuzzer_sys::fuzz_target;
use rk_core::schema::{endomorphism_json, parse_bytes, parse_endomorphism};

fuzz_target!(|data: &[u8]| {
    if let Ok(f) = parse_bytes(data, parse_endomorphism) {
        assert_eq!(parse_endomorphism(&endomorphism_json(&f)).as_ref(), Ok(&f));
    }
});
