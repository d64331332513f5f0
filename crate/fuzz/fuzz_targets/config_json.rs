#![no_main]

use libfuzzer_sys::fuzz_target;
use zenoctl::config::{Experiment, Overrides, RunConfig};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(o) = Overrides::from_json(text) {
        let exp = o.experiment.unwrap_or(Experiment::Fig1);
        if let Ok(c) = RunConfig::resolve(exp, o, None) {
            assert!(c.model.t_prime >= 0.0 && c.grid_points >= 2);
        }
    }
});
