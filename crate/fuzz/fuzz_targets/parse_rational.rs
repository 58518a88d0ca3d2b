#![no_main]
use libfuzzer_sys::fuzz_target;
use stabwall_core::rational::{fmt_rational, parse_rational, parse_rational_list};

// Accepted rationals print canonically and re-parse to the same value.
fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(x) = parse_rational(s) {
        let shown = fmt_rational(&x);
        assert_eq!(parse_rational(&shown).as_ref(), Ok(&x));
        assert_eq!(fmt_rational(&parse_rational(&shown).unwrap()), shown);
    }
    let _ = parse_rational_list(s);
});
