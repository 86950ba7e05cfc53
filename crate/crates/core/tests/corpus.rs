//! Replays the checked-in fuzz seeds through the same checks the fuzz targets make.

use std::fs;
use std::path::PathBuf;

use rk_core::domain::Domain;
use rk_core::loggeom::{lineality_directions, rational_line_direction};
use rk_core::scalar::parse_rational;
use rk_core::scalar::rational::format_rational;
use rk_core::schema::{
    endomorphism_json, gamma_json, parse_bytes, parse_domain, parse_endomorphism, parse_gamma, parse_region, DomainInput,
};

fn seeds(target: &str) -> Vec<(String, Vec<u8>)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<_> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| {
            let p = e.unwrap().path();
            (p.file_name().unwrap().to_string_lossy().into_owned(), fs::read(&p).unwrap())
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

/// Runs `check` on every seed and returns the names that were accepted.
fn replay(target: &str, check: impl Fn(&[u8]) -> bool) -> Vec<String> {
    seeds(target).into_iter().filter(|(_, data)| check(data)).map(|(name, _)| name).collect()
}

#[test]
fn gamma_seeds() {
    let ok = replay("parse_gamma", |data| match parse_bytes(data, parse_gamma) {
        Ok(g) => {
            assert_eq!(parse_gamma(&gamma_json(&g)).as_ref(), Ok(&g));
            true
        }
        Err(_) => false,
    });
    // The loose enclosure and the perfect-square radicand are refused.
    assert_eq!(ok, ["enclosed.json", "golden.json", "half_pi.json", "rational.json", "sqrt2.json"]);
}

#[test]
fn domain_seeds() {
    let ok = replay("parse_domain", |data| match parse_bytes(data, parse_domain) {
        Ok(DomainInput::Plain(d)) => {
            let _ = d.slices();
            if let Domain::Band(b) = &d {
                b.log_image().unwrap();
            }
            true
        }
        Ok(DomainInput::Counterexample(_)) => true,
        Err(_) => false,
    });
    assert!(!ok.contains(&"inverted_bounds.json".to_string()));
    assert_eq!(ok.len(), 7);
}

#[test]
fn endomorphism_seeds() {
    let ok = replay("parse_endomorphism", |data| match parse_bytes(data, parse_endomorphism) {
        Ok(f) => {
            assert_eq!(parse_endomorphism(&endomorphism_json(&f)).as_ref(), Ok(&f));
            true
        }
        Err(_) => false,
    });
    assert_eq!(ok.len(), 6);
}

#[test]
fn region_seeds() {
    let ok = replay("parse_region", |data| match parse_bytes(data, parse_region) {
        Ok(r) => {
            let _ = lineality_directions(&r);
            let _ = rational_line_direction(&r);
            true
        }
        Err(_) => false,
    });
    // Negative quadratic weights must be written with a coefficient.
    assert_eq!(ok, ["bidisc.json", "enclosed.json", "rational_half_plane.json", "strip.json"]);
}

#[test]
fn rational_seeds() {
    let ok = replay("parse_rational", |data| {
        let Ok(s) = std::str::from_utf8(data) else { return false };
        match parse_rational(s) {
            Ok(r) => {
                assert_eq!(parse_rational(&format_rational(&r)), Ok(r));
                true
            }
            Err(_) => false,
        }
    });
    assert_eq!(ok, ["0", "0p125", "3d2", "7", "P4", "m22d7", "m3", "mp5"]);
}
