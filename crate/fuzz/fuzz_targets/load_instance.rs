#![no_main]

use libfuzzer_sys::fuzz_target;
use nonobtuse::model::{load_instance, save_instance};

fuzz_target!(|data: &[u8]| {
    if let Ok(inst) = load_instance(data) {
        // anything accepted must survive a round trip unchanged
        let again = load_instance(&save_instance(&inst)).expect("saved instance reloads");
        assert_eq!(again, inst);
    }
});
