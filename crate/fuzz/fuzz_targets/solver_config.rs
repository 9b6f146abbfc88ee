#![no_main]

use libfuzzer_sys::fuzz_target;
use nonobtuse::solver::SolverConfig;

fuzz_target!(|data: &[u8]| {
    if let Ok(cfg) = serde_json::from_slice::<SolverConfig>(data) {
        let _ = cfg.validate();
    }
});
