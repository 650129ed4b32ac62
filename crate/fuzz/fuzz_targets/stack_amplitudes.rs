#![no_main]

use casimir_core::config::parse_stack;
use casimir_core::MirrorStack;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(stack) = parse_stack(text) else {
        return;
    };
    for p in [0.0, 1e-4, 0.1, 1.0, 3.0] {
        let Ok(s) = stack.amplitudes_imag(p) else {
            continue;
        };
        assert!(s.r.abs() <= 1.0 + 1e-12 && s.t.abs() <= 1.0 + 1e-12);
        if let MirrorStack::Layers(_) = stack {
            // dielectric stacks reflect with a negative sign on the imaginary axis
            assert!(s.r <= 0.0 && s.r_bar <= 0.0, "p {p}: r = {}", s.r);
            // t may underflow to zero for optically thick stacks
            assert!(s.t >= 0.0);
        }
    }
});
