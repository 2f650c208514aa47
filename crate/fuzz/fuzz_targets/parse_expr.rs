#![no_main]

use libfuzzer_sys::fuzz_target;
use supercat::ir::text::{parse, render};

fuzz_target!(|data: &[u8]| {
    let Ok(src) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(e) = parse(src) {
        // whatever parses must survive a render round trip
        let again = parse(&render(&e)).expect("rendered text parses");
        assert_eq!(again, e);
    }
});
