#![allow(dead_code)]

use casimir_core::{MirrorStack, NarrowBandCutoff, AnalyticMirror, PermittivityModel, Slab};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// 1–5 constant-ε layers, ε ∈ [1.1, 16], thickness ∈ [0.01, 1]·scale.
pub fn random_slabs(rng: &mut impl Rng, scale: f64) -> Vec<Slab> {
    let n = rng.random_range(1..=5);
    (0..n)
        .map(|_| {
            let eps = rng.random_range(1.1..16.0);
            let l = rng.random_range(0.01..1.0) * scale;
            Slab::new(PermittivityModel::constant(eps), l).unwrap()
        })
        .collect()
}

pub fn random_dielectric(rng: &mut impl Rng, scale: f64) -> MirrorStack {
    MirrorStack::layers(random_slabs(rng, scale)).unwrap()
}

/// Layered stacks mixing constant and Lorentz media.
pub fn random_lossy_dielectric(rng: &mut impl Rng) -> MirrorStack {
    let n = rng.random_range(1..=4);
    let slabs = (0..n)
        .map(|_| {
            let model = if rng.random_bool(0.5) {
                PermittivityModel::constant(rng.random_range(1.1..16.0))
            } else {
                PermittivityModel::lorentz(vec![casimir_core::Oscillator::new(
                    rng.random_range(0.1..5.0),
                    rng.random_range(0.2..5.0),
                    rng.random_range(0.0..1.0),
                )])
            };
            Slab::new(model, rng.random_range(0.01..1.0)).unwrap()
        })
        .collect();
    MirrorStack::layers(slabs).unwrap()
}

/// Any passive mirror kind: dielectric, constant η, magnetic or narrow-band toy.
pub fn random_passive(rng: &mut impl Rng) -> MirrorStack {
    match rng.random_range(0..4) {
        0 => random_lossy_dielectric(rng),
        1 => MirrorStack::constant(rng.random_range(-1.0..=1.0)).unwrap(),
        2 => MirrorStack::magnetic(random_slabs(rng, 1.0)).unwrap(),
        _ => {
            let theta = rng.random_range(0.0..2.0);
            if rng.random_bool(0.5) {
                MirrorStack::narrowband(theta).unwrap()
            } else {
                MirrorStack::Analytic(AnalyticMirror::NarrowBandToy {
                    theta,
                    cutoff: NarrowBandCutoff::Truncate(rng.random_range(0.1..20.0)),
                })
            }
        }
    }
}

/// n points spaced logarithmically over [lo, hi], endpoints exact.
pub fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let (a, b) = (lo.ln(), hi.ln());
    let mut g: Vec<f64> = (0..n)
        .map(|i| (a + (b - a) * i as f64 / (n - 1) as f64).exp())
        .collect();
    g[0] = lo;
    g[n - 1] = hi;
    g
}
