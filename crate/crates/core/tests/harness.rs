mod common;

use std::process::Command;

use common::c;
use kaf::channel::{ChannelSpec, InputModel};
use kaf::harness::config::{AlgorithmConfig, AlgorithmKind, ChannelPreset, ExperimentConfig};
use kaf::harness::experiment::{aggregate, run_experiment, run_trial, trial_seed, LearningCurve};
use kaf::harness::output::{curves_csv, parse_curves_csv, summary_csv};
use kaf::harness::{presets, Scale};
use kaf::linear::LinearFilter;
use kaf::AdaptiveFilter;

fn small_config() -> ExperimentConfig {
    let mut cfg = presets::fig1(0.1, Scale::Fast);
    cfg.n_trials = 3;
    cfg.n_samples = 300;
    cfg.algorithms.push(AlgorithmConfig::new("CNGD", AlgorithmKind::Cngd, 0.001));
    cfg
}

#[test]
fn same_seed_same_bytes() {
    let cfg = small_config();
    let a = run_experiment(&cfg).unwrap();
    let b = run_experiment(&cfg).unwrap();
    assert_eq!(curves_csv(&a.curves).unwrap(), curves_csv(&b.curves).unwrap());
    assert_eq!(summary_csv(&a.summary), summary_csv(&b.summary));
    let mut other = cfg.clone();
    other.base_seed += 100;
    let c = run_experiment(&other).unwrap();
    assert_ne!(curves_csv(&a.curves).unwrap(), curves_csv(&c.curves).unwrap());
}

#[test]
fn trial_order_does_not_matter() {
    let cfg = small_config();
    let reference = run_experiment(&cfg).unwrap();
    let reversed: Vec<_> = (0..cfg.n_trials).rev().map(|t| run_trial(&cfg, t).unwrap()).collect();
    assert_eq!(aggregate(&cfg, reversed).unwrap(), reference);
}

#[test]
fn all_algorithms_share_each_trial_stream() {
    let cfg = small_config();
    let input = cfg.input_model().unwrap();
    let result = run_experiment(&cfg).unwrap();
    for (t, fp) in result.fingerprints.iter().enumerate() {
        let ds = kaf::channel::generate_trial(&cfg.channel, &input, cfg.snr_db, cfg.filter_len, cfg.delay, cfg.n_samples, trial_seed(&cfg, t)).unwrap();
        assert_eq!(ds.fingerprint(), *fp);
        // replaying one algorithm by hand on that stream reproduces its share of the curve
        let mut f = LinearFilter::nclms(cfg.filter_len, 1.0 / 16.0);
        let errs: Vec<f64> = ds.iter().map(|(z, d)| f.update(z, d).unwrap().norm_sqr()).collect();
        let outcome = run_trial(&cfg, t).unwrap();
        let idx = cfg.algorithms.iter().position(|a| a.name == "NCLMS").unwrap();
        assert_eq!(outcome.squared_errors[idx], errs);
        assert_eq!(outcome.fingerprint, *fp);
    }
    let fps = &result.fingerprints;
    assert!(fps.windows(2).all(|w| w[0] != w[1]));
}

#[test]
fn nclms_inverts_a_linear_noiseless_channel() {
    // r(n) = h s(n-1): with D = 1 the regressor (r(n+1), r(n)) holds h s(n),
    // so the Wiener solution w = (1/conj(h), 0) has zero MMSE
    let h = c(0.8, -0.6);
    let mut cfg = ExperimentConfig::new(
        ChannelPreset::Custom,
        ChannelSpec::new(vec![c(0.0, 0.0), h], c(0.0, 0.0), c(0.0, 0.0)).unwrap(),
        presets::RHO_CIRCULAR,
    );
    cfg.snr_db = f64::INFINITY;
    cfg.filter_len = 2;
    cfg.delay = 1;
    cfg.n_samples = 2000;
    cfg.n_trials = 2;
    cfg.algorithms.push(AlgorithmConfig::new("NCLMS", AlgorithmKind::Nclms, 0.5));
    let result = run_experiment(&cfg).unwrap();
    let ss = result.row("NCLMS").unwrap().steady_state_db;
    assert!(ss < -40.0, "steady state {ss} dB");

    let ds = kaf::channel::generate_trial(&cfg.channel, &cfg.input_model().unwrap(), cfg.snr_db, 2, 1, 2000, 5).unwrap();
    let mut f = LinearFilter::nclms(2, 0.5);
    for (z, d) in ds.iter() {
        f.update(z, d).unwrap();
    }
    let wiener = [c(1.0, 0.0) / h.conj(), c(0.0, 0.0)];
    for (w, o) in f.weights().iter().zip(&wiener) {
        assert!((w - o).norm() < 1e-4, "{w} vs {o}");
    }
}

#[test]
fn steady_state_window() {
    let curve = LearningCurve { mse: vec![1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 0.1, 0.1] };
    assert!((curve.steady_state_db(0.2).unwrap() + 10.0).abs() < 1e-12);
    assert!((curve.steady_state_db(0.01).unwrap() + 10.0).abs() < 1e-12);
    let full = curve.steady_state_db(1.0).unwrap();
    assert!((full - 10.0 * 0.82f64.log10()).abs() < 1e-12);
    assert!(curve.steady_state_db(0.0).is_err());
    assert!(LearningCurve { mse: vec![] }.steady_state_db(0.1).is_err());
}

#[test]
fn csv_format_contract() {
    let curves = vec![
        ("zeta".to_string(), LearningCurve { mse: vec![1.0, 0.1, 0.01] }),
        ("alpha".to_string(), LearningCurve { mse: vec![0.5, 0.25, 0.125] }),
    ];
    let text = curves_csv(&curves).unwrap();
    assert_eq!(text.lines().count(), 4);
    assert_eq!(text.lines().next().unwrap(), "iteration,zeta,alpha");
    assert_eq!(text.lines().nth(2).unwrap(), "2,-10.000000,-6.020600");
    let (names, cols) = parse_curves_csv(&text).unwrap();
    assert_eq!(names, ["zeta", "alpha"]);
    for ((_, curve), col) in curves.iter().zip(&cols) {
        for (a, b) in curve.db().iter().zip(col) {
            assert!((a - b).abs() <= 1e-6);
        }
    }
    assert!(curves_csv(&[]).is_err());
}

#[test]
fn config_text_round_trips() {
    for cfg in [presets::fig1(0.1, Scale::Fast), presets::fig2(presets::RHO_CIRCULAR, Scale::Full), small_config()] {
        let text = cfg.to_config_string();
        assert_eq!(ExperimentConfig::parse(&text).unwrap(), cfg);
    }
    // printed channel coefficients survive the dump bit for bit
    let text = presets::fig2(0.1, Scale::Fast).to_config_string();
    assert!(text.contains("channel.taps = -0.9+0.8i, 0.6-0.7i, -0.4+0.3i, 0.3-0.2i, -0.1-0.2i"));
    assert!(text.contains("channel.nl2 = 0.2+0.25i"));
    assert!(text.contains("channel.nl3 = 0.08+0.09i"));
    let soft = presets::fig1(0.1, Scale::Fast).to_config_string();
    assert!(soft.contains("channel.taps = -0.9+0.8i, 0.6-0.7i\n"));
    assert!(soft.contains("channel.nl2 = 0.1+0.15i"));
    assert!(soft.contains("channel.nl3 = 0.06+0.05i"));
}

#[test]
fn config_parsing_and_validation_errors() {
    let ok = "channel = soft\nrho = 0.1\nalgorithm = A kind=nclms mu=1/16\n";
    let cfg = ExperimentConfig::parse(ok).unwrap();
    assert_eq!(cfg.algorithms[0].mu, 0.0625);
    cfg.validate().unwrap();

    let custom = "channel = custom\nchannel.taps = 1, 0.5i\nchannel.nl2 = 0\nchannel.nl3 = 0\nrho = 0.5\nsnr_db = inf\nalgorithm = A kind=naclms mu=0.1\n";
    let cfg = ExperimentConfig::parse(custom).unwrap();
    assert_eq!(cfg.channel.taps, vec![c(1.0, 0.0), c(0.0, 0.5)]);
    assert_eq!(cfg.snr_db, f64::INFINITY);

    let override_tap = "channel = strong\nchannel.taps = -0.9+0.8i, 0.6-0.7i, -0.4+0.3i, 0.3-0.2i, -0.3i\nrho = 0.1\nalgorithm = A kind=nclms mu=0.1\n";
    assert_eq!(ExperimentConfig::parse(override_tap).unwrap().channel.taps[4], c(0.0, -0.3));

    let bad_parse = [
        "rho = 0.1\n",
        "channel = soft\n",
        "channel = nope\nrho = 0.1\n",
        "channel = soft\nrho = abc\n",
        "channel = soft\nrho = 0.1\nfoo = 1\n",
        "channel = soft\nrho = 0.1\nalgorithm = A kind=magic mu=1\n",
        "channel = soft\nrho = 0.1\nalgorithm = A mu=1\n",
        "channel = soft\nrho = 0.1\nalgorithm = A kind=nclms mu=1 mu=2\n",
        "channel = custom\nrho = 0.1\n",
        "version = 2\nchannel = soft\nrho = 0.1\n",
    ];
    for text in bad_parse {
        assert!(ExperimentConfig::parse(text).is_err(), "accepted: {text:?}");
    }

    let bad_validate = [
        "channel = soft\nrho = 0.1\n",
        "channel = soft\nrho = 2\nalgorithm = A kind=nclms mu=1\n",
        "channel = soft\nrho = 0.1\ntrials = 0\nalgorithm = A kind=nclms mu=1\n",
        "channel = soft\nrho = 0.1\nsamples = 3\nalgorithm = A kind=nclms mu=1\n",
        "channel = soft\nrho = 0.1\nalgorithm = A kind=nclms mu=1\nalgorithm = A kind=naclms mu=1\n",
        "channel = soft\nrho = 0.1\nalgorithm = K kind=nacklms mu=1\n",
        "channel = soft\nrho = 0.1\nalgorithm = K kind=nacklms mu=1 sigma=-1\n",
        "channel = soft\nrho = 0.1\nalgorithm = K kind=ncklms2 mu=1 sigma=1 delta1=-1\n",
        "channel = soft\nrho = 0.1\nalgorithm = A kind=nclms mu=0\n",
        "channel = soft\nrho = 0.1\nalgorithm = A kind=nclms mu=1 sigma=3\n",
        "channel = soft\nrho = 0.1\nsteady_window = 0\nalgorithm = A kind=nclms mu=1\n",
    ];
    for text in bad_validate {
        let cfg = ExperimentConfig::parse(text).unwrap();
        assert!(cfg.validate().is_err(), "validated: {text:?}");
        assert!(run_experiment(&cfg).is_err());
    }
}

#[test]
fn fig_presets_carry_caption_parameters() {
    let f1 = presets::fig1(0.1, Scale::Fast);
    assert_eq!((f1.filter_len, f1.delay, f1.snr_db, f1.n_trials, f1.n_samples), (5, 2, 15.0, 20, 3000));
    assert_eq!(f1.channel, ChannelSpec::soft());
    let get = |cfg: &ExperimentConfig, n: &str| cfg.algorithms.iter().find(|a| a.name == n).unwrap().clone();
    for name in ["NCKLMS2", "NACKLMS"] {
        let a = get(&f1, name);
        assert_eq!((a.mu, a.sigma, a.delta1, a.delta2), (0.125, Some(10.0), 0.1, 0.2));
    }
    assert_eq!(get(&f1, "NCLMS").mu, 0.0625);
    assert_eq!(get(&f1, "NACLMS").mu, 0.0625);
    assert_eq!(get(&f1, "NACKLMS").kind, AlgorithmKind::Nacklms);

    let f2 = presets::fig2(0.1, Scale::Full);
    assert_eq!((f2.n_trials, f2.n_samples), (100, 5000));
    assert_eq!(f2.channel, ChannelSpec::strong());
    for name in ["NCKLMS2", "NACKLMS"] {
        let a = get(&f2, name);
        assert_eq!((a.mu, a.sigma), (0.125, Some(15.0)));
    }
    assert_eq!(get(&f2, "MLP").mu, 0.0003);
    assert_eq!(get(&f2, "MLP").hidden, 50);
    assert_eq!(get(&f2, "CNGD").mu, 0.0005);
    assert!(InputModel::new(presets::RHO_CIRCULAR).unwrap().pseudo_variance().abs() < 1e-15);
}

fn kaf() -> Command {
    Command::new(env!("CARGO_BIN_EXE_kaf"))
}

#[test]
fn cli_validate_run_and_errors() {
    let dir = tempfile::tempdir().unwrap();
    let cfg_path = dir.path().join("fig1.cfg");
    let dump = kaf().args(["paper-fig1", "--dump-config"]).output().unwrap();
    assert!(dump.status.success());
    std::fs::write(&cfg_path, &dump.stdout).unwrap();

    let st = kaf().args(["validate", "--config"]).arg(&cfg_path).status().unwrap();
    assert!(st.success());

    let out = dir.path().join("run");
    let st = kaf()
        .args(["run", "--trials", "2", "--samples", "200", "--seed", "9", "--config"])
        .arg(&cfg_path)
        .arg("--out")
        .arg(&out)
        .status()
        .unwrap();
    assert!(st.success());
    let curves = std::fs::read_to_string(out.join("curves.csv")).unwrap();
    assert_eq!(curves.lines().count(), 201);
    assert_eq!(curves.lines().next().unwrap(), "iteration,NCKLMS2,NACKLMS,NCLMS,NACLMS");
    let summary = std::fs::read_to_string(out.join("summary.csv")).unwrap();
    assert_eq!(summary.lines().count(), 5);
    assert!(summary.starts_with("algorithm,steady_state_mse_db,final_dictionary_size\n"));
    assert!(summary.lines().nth(3).unwrap().ends_with(','));

    let bad = dir.path().join("bad.cfg");
    std::fs::write(&bad, "channel = soft\nrho = 0.1\nalgorithm = K kind=nacklms mu=1\n").unwrap();
    let o = kaf().args(["validate", "--config"]).arg(&bad).output().unwrap();
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("sigma"));
    let o = kaf().args(["validate", "--config", "/nonexistent/x.cfg"]).output().unwrap();
    assert!(!o.status.success());
}
