#![no_main]

use libfuzzer_sys::fuzz_target;
use nonobtuse::scoring::BestKnownTable;

fuzz_target!(|data: &[u8]| {
    if let Ok(t) = BestKnownTable::from_json(data) {
        assert_eq!(BestKnownTable::from_json(&t.to_json()).unwrap(), t);
    }
});
