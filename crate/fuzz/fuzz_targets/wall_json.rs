#![no_main]
use libfuzzer_sys::fuzz_target;
use stabwall::request::parse_walls_json;
use stabwall::svg::{render_svg, Viewport};
use stabwall_core::rational::int;

// Decoded wall lists round-trip through JSON and always render.
fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    let Ok(walls) = parse_walls_json(s) else { return };
    let text = serde_json::to_string(&walls).unwrap();
    assert_eq!(parse_walls_json(&text).unwrap(), walls);
    let vp = Viewport {
        beta_min: int(-10),
        beta_max: int(10),
        alpha_max: int(10),
    };
    let svg = render_svg(&walls, &vp).unwrap();
    assert!(svg.ends_with("</svg>\n"));
});
