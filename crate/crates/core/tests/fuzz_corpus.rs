//! Replays the checked-in fuzz corpus through the same invariants the fuzz
//! targets assert, so the seeds stay meaningful on a stable toolchain.

use std::path::PathBuf;

use casimir_core::config::{parse_config, parse_config_with, parse_model, parse_stack, ParseOptions};
use casimir_core::MirrorStack;

fn seeds(target: &str) -> Vec<(PathBuf, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<_> = std::fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| {
            let p = e.unwrap().path();
            let text = std::fs::read_to_string(&p).unwrap();
            (p, text)
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

#[test]
fn parse_config_seeds() {
    let mut accepted = 0;
    for (path, text) in seeds("parse_config") {
        let unscreened = parse_config_with(&text, ParseOptions { passivity_screen: false });
        assert!(unscreened.is_ok(), "{}: {:?}", path.display(), unscreened);
        if let Ok(config) = parse_config(&text) {
            assert_eq!(parse_config(&config.to_text()).unwrap(), config, "{}", path.display());
            accepted += 1;
        }
    }
    assert!(accepted > 0);
}

#[test]
fn parse_model_seeds() {
    for (path, text) in seeds("parse_model") {
        if let Ok(model) = parse_model(&text) {
            for p in [0.0, 1e-3, 0.5, 1.0, 7.0, 1e3] {
                if let Ok(eps) = model.eval_imag(p) {
                    assert!(eps >= 1.0, "{}: eps(i{p}) = {eps}", path.display());
                }
            }
        }
    }
}

#[test]
fn stack_amplitude_seeds() {
    for (path, text) in seeds("stack_amplitudes") {
        let stack = parse_stack(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        for p in [0.0, 1e-4, 0.1, 1.0, 3.0] {
            let s = stack.amplitudes_imag(p).unwrap();
            assert!(s.r.abs() <= 1.0 + 1e-12 && s.t.abs() <= 1.0 + 1e-12);
            if let MirrorStack::Layers(_) = stack {
                assert!(s.r <= 0.0 && s.r_bar <= 0.0 && s.t >= 0.0, "{}", path.display());
            }
        }
    }
}
