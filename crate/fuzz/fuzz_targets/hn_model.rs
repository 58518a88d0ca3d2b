#![no_main]
use libfuzzer_sys::fuzz_target;
use stabwall_core::HnInput;

// Accepted models either fail cleanly or yield a filtration summing to the target.
fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    let Ok(input) = HnInput::from_json_str(s) else { return };
    if input.model.sub_classes.len() > 4096 {
        return;
    }
    if let Ok(res) = input.solve() {
        assert_eq!(res.vertices.last(), Some(&input.model.target));
        assert_eq!(res.factors.len() + 1, res.vertices.len());
    }
});
