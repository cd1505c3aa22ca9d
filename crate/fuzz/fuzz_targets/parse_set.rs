#![no_main]

use astlab::paths::CentredCatalanSet;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(s) = text.parse::<CentredCatalanSet>() {
        assert_eq!(s.to_string().parse::<CentredCatalanSet>().unwrap(), s);
        assert_eq!(s.motzkin_path().len() + 1, s.size());
    }
});
