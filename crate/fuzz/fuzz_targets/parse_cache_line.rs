#![no_main]

use astlab_cli::cache::{format_line, parse_line};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if text.len() > 4096 {
        return;
    }
    if let Ok(r) = parse_line(text) {
        assert_eq!(parse_line(&format_line(&r)).unwrap(), r);
    }
});
