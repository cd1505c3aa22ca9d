#![no_main]

use astlab::algebra::parse_factored;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if text.len() > 512 {
        return;
    }
    if let Ok(p) = parse_factored(text) {
        // root finding is the slow part; keep it to small degrees
        if p.degree().unwrap_or(0) <= 12 {
            assert_eq!(parse_factored(&p.factored()).unwrap(), p);
        }
    }
});
