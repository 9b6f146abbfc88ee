#![no_main]

use libfuzzer_sys::fuzz_target;
use nonobtuse::model::{load_instance, load_solution};
use nonobtuse::verify;

// Input is an instance document and a solution document separated by a NUL byte.
fuzz_target!(|data: &[u8]| {
    let Some(split) = data.iter().position(|&b| b == 0) else { return };
    let (Ok(inst), Ok(sol)) = (load_instance(&data[..split]), load_solution(&data[split + 1..])) else {
        return;
    };
    let rep = verify(&inst, &sol);
    assert_eq!(rep.valid, rep.errors.is_empty());
    if rep.valid {
        assert_eq!(rep.steiner_count, sol.steiner_count());
    }
});
