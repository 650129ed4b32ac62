#![no_main]

use casimir_core::config::{parse_config, parse_config_with, ParseOptions};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let screened = parse_config(text);
    let unscreened = parse_config_with(text, ParseOptions { passivity_screen: false });
    // the screen only ever removes configurations
    if screened.is_ok() {
        assert!(unscreened.is_ok());
    }
    if let Ok(config) = screened {
        let again = parse_config(&config.to_text()).expect("canonical form parses");
        assert_eq!(again, config);
    }
});
