#![no_main]
use libfuzzer_sys::fuzz_target;
use stabwall_core::p3::ChernP3;
use stabwall_core::ChernSurface;

// Parsed surface classes survive a JSON round trip; P3 classes never panic.
fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(v) = ChernSurface::parse(s) {
        let json = serde_json::to_string(&v).unwrap();
        let back: ChernSurface = serde_json::from_str(&json).unwrap();
        assert_eq!(back, v);
    }
    if let Ok(v) = ChernP3::parse(s) {
        let _ = v.to_string();
    }
});
