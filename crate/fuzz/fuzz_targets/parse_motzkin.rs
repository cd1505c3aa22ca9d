#![no_main]

use astlab::paths::MotzkinPath;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(m) = text.parse::<MotzkinPath>() {
        assert_eq!(m.to_string().parse::<MotzkinPath>().unwrap(), m);
        assert!(m.heights().iter().all(|&h| h >= 0));
    }
});
