pub mod config;
pub mod experiment;
pub mod output;
pub mod presets;

pub use config::{AlgorithmConfig, AlgorithmKind, ChannelPreset, ExperimentConfig};
pub use experiment::{aggregate, run_experiment, run_trial, ExperimentResult, LearningCurve, SummaryRow, TrialOutcome};
pub use output::{emit_csv, emit_summary};
pub use presets::Scale;
