#![no_main]

use libfuzzer_sys::fuzz_target;
use nonobtuse::model::{load_solution, save_solution};

fuzz_target!(|data: &[u8]| {
    if let Ok(sol) = load_solution(data) {
        let again = load_solution(&save_solution(&sol)).expect("saved solution reloads");
        assert_eq!(again, sol);
    }
});
