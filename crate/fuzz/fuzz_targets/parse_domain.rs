#![no_main]

use libfuzzer_sys::fuzz_target;
use rk_core::domain::Domain;
use rk_core::schema::{parse_bytes, parse_domain, DomainInput};

fuzz_target!(|data: &[u8]| {
    if let Ok(DomainInput::Plain(d)) = parse_bytes(data, parse_domain) {
        let _ = d.slices();
        if let Domain::Band(b) = &d {
            let _ = b.log_image();
        }
    }
});
