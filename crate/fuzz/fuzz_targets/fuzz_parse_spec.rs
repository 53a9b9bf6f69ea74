#![no_main]

use baskafuzz::{parse_document, parse_spec, Command};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(doc) = parse_document(text) {
        // an accepted document re-serialises to an equal one
        let again = serde_json::to_string(&doc).expect("serialises");
        assert_eq!(parse_document(&again).expect("reparses"), doc);
    }
    for command in Command::ALL {
        let _ = parse_spec(command, text);
    }
});
