#![no_main]

use libfuzzer_sys::fuzz_target;
use nonobtuse::render::RenderStyle;

fuzz_target!(|data: &[u8]| {
    if let Ok(style) = serde_json::from_slice::<RenderStyle>(data) {
        let _ = style.validate();
    }
});
