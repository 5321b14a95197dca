//! Preset experiments mirroring the two published equalization figures.

use crate::channel::ChannelSpec;
use crate::harness::config::{AlgorithmConfig, AlgorithmKind, ChannelPreset, ExperimentConfig};

pub const NOVELTY_DELTA1: f64 = 0.1;
pub const NOVELTY_DELTA2: f64 = 0.2;
pub const RHO_CIRCULAR: f64 = std::f64::consts::FRAC_1_SQRT_2;
pub const RHO_NONCIRCULAR: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scale {
    /// 20 trials of 3000 samples.
    Fast,
    /// 100 trials of 5000 samples.
    Full,
}

impl Scale {
    pub fn trials_and_samples(self) -> (usize, usize) {
        match self {
            Self::Fast => (20, 3000),
            Self::Full => (100, 5000),
        }
    }
}

fn base(preset: ChannelPreset, channel: ChannelSpec, rho: f64, scale: Scale) -> ExperimentConfig {
    let (n_trials, n_samples) = scale.trials_and_samples();
    ExperimentConfig {
        snr_db: 15.0,
        filter_len: 5,
        delay: 2,
        n_trials,
        n_samples,
        ..ExperimentConfig::new(preset, channel, rho)
    }
}

fn kernel_pair(sigma: f64) -> [AlgorithmConfig; 2] {
    [
        AlgorithmConfig::kernel("NCKLMS2", AlgorithmKind::Ncklms2, 1.0 / 8.0, sigma, NOVELTY_DELTA1, NOVELTY_DELTA2),
        AlgorithmConfig::kernel("NACKLMS", AlgorithmKind::Nacklms, 1.0 / 8.0, sigma, NOVELTY_DELTA1, NOVELTY_DELTA2),
    ]
}

/// Soft channel: kernel filters (sigma = 10) against NCLMS and NACLMS.
pub fn fig1(rho: f64, scale: Scale) -> ExperimentConfig {
    let mut cfg = base(ChannelPreset::Soft, ChannelSpec::soft(), rho, scale);
    cfg.algorithms.extend(kernel_pair(10.0));
    cfg.algorithms.push(AlgorithmConfig::new("NCLMS", AlgorithmKind::Nclms, 1.0 / 16.0));
    cfg.algorithms.push(AlgorithmConfig::new("NACLMS", AlgorithmKind::Naclms, 1.0 / 16.0));
    cfg
}

/// Strong channel: kernel filters (sigma = 15) against the MLP and CNGD.
pub fn fig2(rho: f64, scale: Scale) -> ExperimentConfig {
    let mut cfg = base(ChannelPreset::Strong, ChannelSpec::strong(), rho, scale);
    cfg.algorithms.extend(kernel_pair(15.0));
    cfg.algorithms.push(AlgorithmConfig::new("MLP", AlgorithmKind::Mlp, 0.0003));
    cfg.algorithms.push(AlgorithmConfig::new("CNGD", AlgorithmKind::Cngd, 0.0005));
    cfg
}
