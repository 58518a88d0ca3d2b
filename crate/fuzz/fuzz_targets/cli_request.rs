#![no_main]
use std::collections::BTreeMap;

use libfuzzer_sys::fuzz_target;
use stabwall::CommandRequest;

// Newline-separated arguments; request parsing never panics.
fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    let mut args = vec!["stabwall"];
    args.extend(s.split('\n'));
    let mut env = BTreeMap::new();
    if let Some(d) = args.iter().find_map(|a| a.strip_prefix("STABWALL_MAX_DENOM=")) {
        env.insert("STABWALL_MAX_DENOM".to_string(), d.to_string());
    }
    let _ = CommandRequest::from_args(args, &env);
});
