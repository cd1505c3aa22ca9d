#![no_main]

use astlab::tableaux::Partition;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(p) = text.parse::<Partition>() {
        assert_eq!(p.to_string().parse::<Partition>().unwrap(), p);
        assert_eq!(p.conjugate().conjugate(), p);
    }
});
