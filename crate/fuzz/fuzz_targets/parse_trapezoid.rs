#![no_main]

use astlab::trapezoid::ASTrapezoid;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(t) = text.parse::<ASTrapezoid>() {
        assert_eq!(t.to_string().parse::<ASTrapezoid>().unwrap(), t);
        // a valid trapezoid always has a set
        let s = t.catalan_set().unwrap();
        assert_eq!(s.size(), t.n() + 1);
    }
});
