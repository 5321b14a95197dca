//! Monte-Carlo learning curves.
//!
//! Trial `t` draws all of its data from seed `base_seed + t`, and every
//! configured algorithm sees that same stream. Trials may run in any order or
//! concurrently; they are summed in trial-index order afterwards, so the
//! result does not depend on scheduling.

use rayon::prelude::*;

use crate::channel::generate_trial;
use crate::error::{Error, Result};
use crate::harness::config::ExperimentConfig;

/// Trial-averaged squared error per iteration.
#[derive(Debug, Clone, PartialEq)]
pub struct LearningCurve {
    pub mse: Vec<f64>,
}

impl LearningCurve {
    pub fn len(&self) -> usize {
        self.mse.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mse.is_empty()
    }

    pub fn db(&self) -> Vec<f64> {
        self.mse.iter().map(|&m| to_db(m)).collect()
    }

    /// Mean MSE over the trailing `fraction` of the curve, in dB.
    pub fn steady_state_db(&self, fraction: f64) -> Result<f64> {
        let n = self.mse.len();
        if n == 0 || !(fraction > 0.0 && fraction <= 1.0) {
            return Err(Error::InvalidParameter(format!(
                "steady-state window {fraction} invalid for a curve of length {n}"
            )));
        }
        let w = ((fraction * n as f64).round() as usize).clamp(1, n);
        let tail = &self.mse[n - w..];
        Ok(to_db(tail.iter().sum::<f64>() / w as f64))
    }
}

pub fn to_db(x: f64) -> f64 {
    10.0 * x.log10()
}

#[derive(Debug, Clone, PartialEq)]
pub struct SummaryRow {
    pub name: String,
    pub steady_state_db: f64,
    /// Final dictionary size averaged over trials, kernel algorithms only.
    pub dictionary_size: Option<f64>,
}

/// Everything one trial produces.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialOutcome {
    pub trial: usize,
    pub fingerprint: u64,
    /// `|e(n)|^2` per algorithm, in config order.
    pub squared_errors: Vec<Vec<f64>>,
    pub dictionary_sizes: Vec<Option<usize>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentResult {
    /// `(name, curve)` in config order.
    pub curves: Vec<(String, LearningCurve)>,
    pub summary: Vec<SummaryRow>,
    /// Data fingerprint of each trial, by trial index.
    pub fingerprints: Vec<u64>,
}

impl ExperimentResult {
    pub fn curve(&self, name: &str) -> Option<&LearningCurve> {
        self.curves.iter().find(|(n, _)| n == name).map(|(_, c)| c)
    }

    pub fn row(&self, name: &str) -> Option<&SummaryRow> {
        self.summary.iter().find(|r| r.name == name)
    }
}

pub fn trial_seed(config: &ExperimentConfig, trial: usize) -> u64 {
    config.base_seed.wrapping_add(trial as u64)
}

/// Seed for the weight initialisation of algorithm `index` in a trial.
pub fn init_seed(trial_seed: u64, index: usize) -> u64 {
    trial_seed ^ 0x9e37_79b9_7f4a_7c15u64.wrapping_mul(index as u64 + 1)
}

/// Runs every algorithm on trial `trial`'s data.
pub fn run_trial(config: &ExperimentConfig, trial: usize) -> Result<TrialOutcome> {
    let seed = trial_seed(config, trial);
    let data = generate_trial(
        &config.channel,
        &config.input_model()?,
        config.snr_db,
        config.filter_len,
        config.delay,
        config.n_samples,
        seed,
    )?;
    let fingerprint = data.fingerprint();
    let runs = config
        .algorithms
        .par_iter()
        .enumerate()
        .map(|(i, alg)| -> Result<(Vec<f64>, Option<usize>)> {
            let mut filter = alg.build(config.filter_len, init_seed(seed, i))?;
            let errors = data
                .iter()
                .map(|(z, d)| filter.update(z, d).map(|e| e.norm_sqr()))
                .collect::<Result<Vec<_>>>()?;
            Ok((errors, filter.dictionary_len()))
        })
        .collect::<Result<Vec<_>>>()?;
    let (squared_errors, dictionary_sizes) = runs.into_iter().unzip();
    Ok(TrialOutcome {
        trial,
        fingerprint,
        squared_errors,
        dictionary_sizes,
    })
}

/// Averages trial outcomes in trial-index order, whatever order they arrive in.
pub fn aggregate(config: &ExperimentConfig, mut outcomes: Vec<TrialOutcome>) -> Result<ExperimentResult> {
    outcomes.sort_by_key(|o| o.trial);
    let n_trials = outcomes.len();
    if n_trials == 0 {
        return Err(Error::InvalidParameter("no trial outcomes to aggregate".into()));
    }
    let n_alg = config.algorithms.len();
    let mut sums = vec![vec![0.0; config.n_samples]; n_alg];
    let mut dict_sums: Vec<Option<f64>> = vec![None; n_alg];
    for o in &outcomes {
        for (i, errs) in o.squared_errors.iter().enumerate() {
            for (acc, e) in sums[i].iter_mut().zip(errs) {
                *acc += e;
            }
            if let Some(size) = o.dictionary_sizes[i] {
                *dict_sums[i].get_or_insert(0.0) += size as f64;
            }
        }
    }
    let mut curves = Vec::with_capacity(n_alg);
    let mut summary = Vec::with_capacity(n_alg);
    for ((alg, sum), dict) in config.algorithms.iter().zip(sums).zip(dict_sums) {
        let curve = LearningCurve {
            mse: sum.into_iter().map(|s| s / n_trials as f64).collect(),
        };
        summary.push(SummaryRow {
            name: alg.name.clone(),
            steady_state_db: curve.steady_state_db(config.steady_window)?,
            dictionary_size: dict.map(|d| d / n_trials as f64),
        });
        curves.push((alg.name.clone(), curve));
    }
    Ok(ExperimentResult {
        curves,
        summary,
        fingerprints: outcomes.iter().map(|o| o.fingerprint).collect(),
    })
}

pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentResult> {
    config.validate()?;
    let outcomes = (0..config.n_trials)
        .into_par_iter()
        .map(|t| run_trial(config, t))
        .collect::<Result<Vec<_>>>()?;
    aggregate(config, outcomes)
}
