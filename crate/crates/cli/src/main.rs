use std::collections::BTreeMap;
use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let env: BTreeMap<String, String> = std::env::var(stabwall::request::MAX_DENOM_VAR)
        .ok()
        .map(|v| (stabwall::request::MAX_DENOM_VAR.to_string(), v))
        .into_iter()
        .collect();
    let out = stabwall::run_cli(std::env::args_os(), &env);
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    ExitCode::from(out.code as u8)
}
