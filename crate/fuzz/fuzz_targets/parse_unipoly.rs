#![no_main]

use astlab::algebra::UniPoly;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(p) = text.parse::<UniPoly>() {
        assert_eq!(p.to_coeff_string().parse::<UniPoly>().unwrap(), p);
    }
});
