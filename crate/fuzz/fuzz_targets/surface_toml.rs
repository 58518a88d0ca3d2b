#![no_main]
use libfuzzer_sys::fuzz_target;
use stabwall_core::SurfaceData;

// Accepted surface files re-serialize to an equal surface.
fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(sd) = SurfaceData::from_toml_str(s) {
        let text = toml::to_string(&sd).unwrap();
        assert_eq!(SurfaceData::from_toml_str(&text), Ok(sd));
    }
});
