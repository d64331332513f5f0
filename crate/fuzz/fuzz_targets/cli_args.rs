#![no_main]

use libfuzzer_sys::fuzz_target;
use zenoctl::cli::parse_args;

// NUL-separated argument list
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let args = std::iter::once("zenoctl").chain(text.split('\0'));
    if let Ok(cli) = parse_args(args) {
        let _ = cli.overrides();
    }
});
