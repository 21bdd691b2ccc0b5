//! Counter-based deterministic random numbers.
//!
//! Every draw is a pure function of (seed, stream, counter), so trials can
//! run in any order, on any number of threads, and still produce identical
//! values.

use crate::complex::Complex;

const GOLDEN: u64 = 0x9e37_79b9_7f4a_7c15;

fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// A keyed counter generator. `stream` typically identifies a trial.
#[derive(Clone, Copy, Debug)]
pub struct CounterRng {
    key: u64,
}

impl CounterRng {
    pub fn new(seed: u64, stream: u64) -> Self {
        let key = mix64(
            mix64(seed ^ GOLDEN) ^ mix64(stream.wrapping_mul(GOLDEN) ^ 0x243f_6a88_85a3_08d3),
        );
        CounterRng { key }
    }

    pub fn bits(&self, counter: u64) -> u64 {
        mix64(self.key.wrapping_add(counter.wrapping_mul(GOLDEN)))
    }

    /// Uniform draw in (0, 1].
    pub fn uniform(&self, counter: u64) -> f64 {
        (((self.bits(counter) >> 11) + 1) as f64) * (1.0 / (1u64 << 53) as f64)
    }

    /// Two independent standard normal draws (Box-Muller), consuming
    /// counters 2c and 2c+1.
    pub fn standard_normal_pair(&self, counter: u64) -> (f64, f64) {
        let u1 = self.uniform(2 * counter);
        let u2 = self.uniform(2 * counter + 1);
        let r = (-2.0 * u1.ln()).sqrt();
        let theta = std::f64::consts::TAU * u2;
        (r * theta.cos(), r * theta.sin())
    }

    /// Circularly symmetric complex Gaussian with standard deviation
    /// `scale` (i.e. E|z|^2 = scale^2).
    pub fn complex_gaussian(&self, counter: u64, scale: f64) -> Complex {
        let (a, b) = self.standard_normal_pair(counter);
        let s = scale * std::f64::consts::FRAC_1_SQRT_2;
        Complex::raw(a * s, b * s)
    }

    /// Unit-magnitude complex value with uniform phase.
    pub fn uniform_phase(&self, counter: u64) -> Complex {
        let theta = std::f64::consts::TAU * self.uniform(counter);
        Complex::raw(theta.cos(), theta.sin())
    }
}
