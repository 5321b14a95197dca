//! Synthetic nonlinear channel equalization data.
//!
//! A complex source `s(n) = scale * (sqrt(1 - rho^2) X(n) + i rho Y(n))`
//! passes through an FIR filter `t = sum_j h_j s(n - j)` followed by the
//! memoryless distortion `q = t + a2 t^2 + a3 t^3`, and is observed in
//! circular white Gaussian noise as `r(n)`. The equalizer sees
//! `(r(n+D), ..., r(n+D-L+1))` and must recover `s(n)`.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::rng::SeededRng;
use crate::types::RegressorWindow;

const fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub const SOURCE_SCALE: f64 = 0.70;

/// Linear FIR stage followed by a quadratic/cubic memoryless nonlinearity.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelSpec {
    pub taps: Vec<Complex64>,
    pub nl2: Complex64,
    pub nl3: Complex64,
}

impl ChannelSpec {
    pub fn new(taps: Vec<Complex64>, nl2: Complex64, nl3: Complex64) -> Result<Self> {
        if taps.is_empty() {
            return Err(Error::InvalidParameter("channel needs at least one tap".into()));
        }
        Ok(Self { taps, nl2, nl3 })
    }

    /// Two-tap channel with mild distortion.
    pub fn soft() -> Self {
        Self {
            taps: vec![c(-0.9, 0.8), c(0.6, -0.7)],
            nl2: c(0.1, 0.15),
            nl3: c(0.06, 0.05),
        }
    }

    /// Five-tap channel with stronger distortion.
    ///
    /// The last tap is printed in the literature as `(-0.1i - 0.2i)`; we read
    /// it as `-0.1 - 0.2i`. Use [`ChannelSpec::new`] for another reading.
    pub fn strong() -> Self {
        Self {
            taps: vec![c(-0.9, 0.8), c(0.6, -0.7), c(-0.4, 0.3), c(0.3, -0.2), c(-0.1, -0.2)],
            nl2: c(0.2, 0.25),
            nl3: c(0.08, 0.09),
        }
    }

    /// Identity channel: single unit tap, no distortion.
    pub fn identity() -> Self {
        Self {
            taps: vec![c(1.0, 0.0)],
            nl2: c(0.0, 0.0),
            nl3: c(0.0, 0.0),
        }
    }

    pub fn memory(&self) -> usize {
        self.taps.len() - 1
    }

    /// Linear stage output `t`. Samples before the start are zero.
    pub fn linear_stage(&self, s: &[Complex64]) -> Vec<Complex64> {
        (0..s.len())
            .map(|n| {
                self.taps
                    .iter()
                    .enumerate()
                    .take(n + 1)
                    .fold(c(0.0, 0.0), |acc, (j, h)| acc + h * s[n - j])
            })
            .collect()
    }

    pub fn distort(&self, t: Complex64) -> Complex64 {
        let t2 = t * t;
        t + self.nl2 * t2 + self.nl3 * t2 * t
    }

    /// Returns `(t, q)`.
    pub fn apply(&self, s: &[Complex64]) -> (Vec<Complex64>, Vec<Complex64>) {
        let t = self.linear_stage(s);
        let q = t.iter().map(|&x| self.distort(x)).collect();
        (t, q)
    }
}

impl fmt::Display for ChannelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let taps: Vec<String> = self.taps.iter().map(|t| format_complex(*t)).collect();
        write!(
            f,
            "taps = {}; nl2 = {}; nl3 = {}",
            taps.join(", "),
            format_complex(self.nl2),
            format_complex(self.nl3)
        )
    }
}

/// Shortest round-trip decimal form, e.g. `-0.9+0.8i`.
pub fn format_complex(z: Complex64) -> String {
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!("{}{}{}i", z.re, sign, z.im.abs())
}

/// Parses `a+bi`, `a-bi`, `a`, `bi`, `i`, `-i`; whitespace is ignored.
pub fn parse_complex(text: &str) -> Option<Complex64> {
    let s: String = text.chars().filter(|ch| !ch.is_whitespace()).collect();
    if s.is_empty() {
        return None;
    }
    let Some(body) = s.strip_suffix('i') else {
        return s.parse().ok().map(|re| c(re, 0.0));
    };
    // split at the last sign that is not at the start and not part of an exponent
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let imag = |t: &str| -> Option<f64> {
        match t {
            "" | "+" => Some(1.0),
            "-" => Some(-1.0),
            _ => t.parse().ok(),
        }
    };
    match split {
        Some(k) => Some(c(body[..k].parse().ok()?, imag(&body[k..])?)),
        None => Some(c(0.0, imag(body)?)),
    }
}

/// Source model with tunable circularity; circular at `rho = sqrt(2)/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InputModel {
    pub rho: f64,
    pub scale: f64,
}

impl InputModel {
    pub fn new(rho: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&rho) {
            return Err(Error::InvalidParameter(format!("rho must lie in [0, 1], got {rho}")));
        }
        Ok(Self { rho, scale: SOURCE_SCALE })
    }

    /// Draws `n` source samples, one Gaussian pair `(X, Y)` per sample.
    pub fn generate(&self, n: usize, rng: &mut SeededRng) -> Vec<Complex64> {
        let re_gain = self.scale * (1.0 - self.rho * self.rho).sqrt();
        let im_gain = self.scale * self.rho;
        (0..n)
            .map(|_| {
                let (x, y) = rng.gaussian_pair();
                c(re_gain * x, im_gain * y)
            })
            .collect()
    }

    /// `E[s^2] = scale^2 (1 - 2 rho^2)`.
    pub fn pseudo_variance(&self) -> f64 {
        self.scale * self.scale * (1.0 - 2.0 * self.rho * self.rho)
    }
}

pub fn mean_power(x: &[Complex64]) -> f64 {
    x.iter().map(|v| v.norm_sqr()).sum::<f64>() / x.len() as f64
}

/// Adds circular white Gaussian noise at `snr_db` relative to the mean power
/// of `q`. An infinite SNR returns `q` unchanged without touching `rng`.
pub fn add_noise(q: &[Complex64], snr_db: f64, rng: &mut SeededRng) -> Result<Vec<Complex64>> {
    if q.is_empty() {
        return Err(Error::InvalidParameter("cannot add noise to an empty signal".into()));
    }
    if snr_db.is_nan() || snr_db == f64::NEG_INFINITY {
        return Err(Error::InvalidParameter(format!("invalid SNR {snr_db} dB")));
    }
    if snr_db == f64::INFINITY {
        return Ok(q.to_vec());
    }
    let variance = mean_power(q) / 10f64.powf(snr_db / 10.0);
    Ok(q.iter().map(|&x| x + rng.circular_normal(variance)).collect())
}

/// Regressor/target pairs for one equalization run.
#[derive(Debug, Clone, PartialEq)]
pub struct EqualizationDataset {
    filter_len: usize,
    delay: usize,
    inputs: Vec<Complex64>,
    targets: Vec<Complex64>,
}

impl EqualizationDataset {
    /// Pairs `(r(n+D), ..., r(n+D-L+1))` with `s(n)` for every `n` where
    /// `r(n+D)` exists. Missing history reads as zero.
    pub fn build(received: &[Complex64], source: &[Complex64], filter_len: usize, delay: usize) -> Result<Self> {
        if filter_len == 0 {
            return Err(Error::InvalidParameter("filter length must be positive".into()));
        }
        let n = received.len().saturating_sub(delay).min(source.len());
        let mut window = RegressorWindow::new(filter_len);
        let mut inputs = Vec::with_capacity(n * filter_len);
        for &r in &received[..n + delay.min(received.len())] {
            window.push(r);
            inputs.extend_from_slice(window.as_slice());
        }
        // drop the first `delay` windows: they precede s(0)
        let inputs = inputs.split_off(delay.min(received.len()) * filter_len);
        Ok(Self {
            filter_len,
            delay,
            inputs,
            targets: source[..n].to_vec(),
        })
    }

    pub fn len(&self) -> usize {
        self.targets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.targets.is_empty()
    }

    pub fn filter_len(&self) -> usize {
        self.filter_len
    }

    pub fn delay(&self) -> usize {
        self.delay
    }

    pub fn input(&self, n: usize) -> &[Complex64] {
        &self.inputs[n * self.filter_len..(n + 1) * self.filter_len]
    }

    pub fn target(&self, n: usize) -> Complex64 {
        self.targets[n]
    }

    pub fn targets(&self) -> &[Complex64] {
        &self.targets
    }

    pub fn iter(&self) -> impl Iterator<Item = (&[Complex64], Complex64)> {
        self.inputs
            .chunks_exact(self.filter_len)
            .zip(self.targets.iter().copied())
    }

    /// FNV-1a over the bit patterns of every input and target.
    pub fn fingerprint(&self) -> u64 {
        const OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
        const PRIME: u64 = 0x0000_0100_0000_01b3;
        self.inputs
            .iter()
            .chain(&self.targets)
            .flat_map(|z| [z.re.to_bits(), z.im.to_bits()])
            .flat_map(u64::to_le_bytes)
            .fold(OFFSET, |h, b| (h ^ b as u64).wrapping_mul(PRIME))
    }
}

/// Generates one trial: `n` equalization pairs drawn from `seed`.
///
/// The stream is consumed as `n + delay` source pairs followed by the
/// channel noise.
pub fn generate_trial(
    channel: &ChannelSpec,
    input: &InputModel,
    snr_db: f64,
    filter_len: usize,
    delay: usize,
    n: usize,
    seed: u64,
) -> Result<EqualizationDataset> {
    let mut rng = SeededRng::new(seed);
    let s = input.generate(n + delay, &mut rng);
    let (_, q) = channel.apply(&s);
    let r = add_noise(&q, snr_db, &mut rng)?;
    EqualizationDataset::build(&r, &s, filter_len, delay)
}
