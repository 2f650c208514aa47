#![no_main]

use libfuzzer_sys::fuzz_target;
use supercat::instance::{Instance, InstanceDoc};
use supercat::scalar::C64;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(doc) = InstanceDoc::from_json(text) else {
        return;
    };
    // loading may reject the data, but never panic
    if let Ok(inst) = Instance::<C64>::new(doc) {
        let _ = inst.raw_algebra();
    }
});
