//! Seeded random streams.
//!
//! The generator is xoshiro256++ seeded through SplitMix64 (the reference
//! `seed_from_u64` expansion). Uniforms are taken from the top 53 bits of each
//! 64-bit output as `((x >> 11) + 1) * 2^-53`, which lands in `(0, 1]`.
//! Normals use the basic Box-Muller transform, producing two variates per
//! pair of uniforms:
//!
//! ```text
//! r = sqrt(-2 ln u1),  theta = 2 pi u2
//! (r cos theta, r sin theta)
//! ```
//!
//! Pairs are never cached, so each call to [`SeededRng::gaussian_pair`]
//! consumes exactly two 64-bit outputs.

use num_complex::Complex64;
use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;

const TWO_POW_M53: f64 = 1.0 / (1u64 << 53) as f64;

#[derive(Debug, Clone)]
pub struct SeededRng {
    seed: u64,
    inner: Xoshiro256PlusPlus,
}

impl SeededRng {
    pub fn new(seed: u64) -> Self {
        Self {
            seed,
            inner: Xoshiro256PlusPlus::seed_from_u64(seed),
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    /// Uniform draw in `(0, 1]`.
    pub fn uniform(&mut self) -> f64 {
        ((self.inner.next_u64() >> 11) + 1) as f64 * TWO_POW_M53
    }

    /// Uniform draw in `[lo, hi]`.
    pub fn uniform_range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.uniform()
    }

    /// Two independent standard normal variates.
    pub fn gaussian_pair(&mut self) -> (f64, f64) {
        let u1 = self.uniform();
        let u2 = self.uniform();
        let r = (-2.0 * u1.ln()).sqrt();
        let theta = std::f64::consts::TAU * u2;
        (r * theta.cos(), r * theta.sin())
    }

    /// Circular complex normal with `E|z|^2 = variance`.
    pub fn circular_normal(&mut self, variance: f64) -> Complex64 {
        let (a, b) = self.gaussian_pair();
        let scale = (variance / 2.0).sqrt();
        Complex64::new(scale * a, scale * b)
    }
}
