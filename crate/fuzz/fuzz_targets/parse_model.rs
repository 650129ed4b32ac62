#![no_main]

use casimir_core::config::parse_model;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(model) = parse_model(text) {
        for p in [0.0, 1e-3, 0.5, 1.0, 7.0, 1e3] {
            if let Ok(eps) = model.eval_imag(p) {
                assert!(eps >= 1.0, "eps(i{p}) = {eps}");
            }
        }
    }
});
