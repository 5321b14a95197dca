//! Experiment configuration and its flat `key = value` text format.
//!
//! ```text
//! # comment
//! version = 1
//! channel = soft            # soft | strong | custom
//! channel.taps = -0.9+0.8i, 0.6-0.7i
//! channel.nl2 = 0.1+0.15i
//! channel.nl3 = 0.06+0.05i
//! rho = 0.1
//! snr_db = 15               # `inf` disables noise
//! filter_length = 5
//! delay = 2
//! samples = 3000
//! trials = 20
//! seed = 1
//! steady_window = 0.1       # trailing fraction of the curve
//! algorithm = NACKLMS kind=nacklms mu=1/8 sigma=10 delta1=0.1 delta2=0.2
//! ```
//!
//! `channel.*` keys override the preset values; `custom` requires all three.
//! Every `algorithm` line is `<name> kind=<kind> [key=value ...]`. Numbers
//! may be written as fractions (`1/8`).

use std::fmt::Write as _;
use std::str::FromStr;

use crate::baselines::{Cngd, Mlp, DEFAULT_HIDDEN};
use crate::channel::{format_complex, parse_complex, ChannelSpec, InputModel};
use crate::error::{Error, Result};
use crate::filter::AdaptiveFilter;
use crate::kernel_filter::{KernelFilter, KernelFilterConfig};
use crate::linear::{LinearFilter, LinearFilterConfig};
use crate::rng::SeededRng;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlgorithmKind {
    Nclms,
    Naclms,
    Ncklms1,
    Ncklms2,
    Nacklms,
    /// Augmented filter on a complexified real kernel.
    Acklms1,
    Cngd,
    Mlp,
}

impl AlgorithmKind {
    pub const ALL: [Self; 8] = [
        Self::Nclms,
        Self::Naclms,
        Self::Ncklms1,
        Self::Ncklms2,
        Self::Nacklms,
        Self::Acklms1,
        Self::Cngd,
        Self::Mlp,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Nclms => "nclms",
            Self::Naclms => "naclms",
            Self::Ncklms1 => "ncklms1",
            Self::Ncklms2 => "ncklms2",
            Self::Nacklms => "nacklms",
            Self::Acklms1 => "acklms1",
            Self::Cngd => "cngd",
            Self::Mlp => "mlp",
        }
    }

    pub fn is_kernel(self) -> bool {
        matches!(self, Self::Ncklms1 | Self::Ncklms2 | Self::Nacklms | Self::Acklms1)
    }
}

impl FromStr for AlgorithmKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Self::ALL
            .into_iter()
            .find(|k| k.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown algorithm kind `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AlgorithmConfig {
    pub name: String,
    pub kind: AlgorithmKind,
    pub mu: f64,
    /// Kernel width; kernel algorithms only.
    pub sigma: Option<f64>,
    pub delta1: f64,
    pub delta2: f64,
    pub eps: f64,
    pub normalized: bool,
    pub hidden: usize,
    pub linear_output: bool,
}

impl AlgorithmConfig {
    pub fn new(name: impl Into<String>, kind: AlgorithmKind, mu: f64) -> Self {
        Self {
            name: name.into(),
            kind,
            mu,
            sigma: None,
            delta1: 0.0,
            delta2: 0.0,
            eps: 1e-8,
            normalized: true,
            hidden: DEFAULT_HIDDEN,
            linear_output: false,
        }
    }

    pub fn kernel(name: impl Into<String>, kind: AlgorithmKind, mu: f64, sigma: f64, delta1: f64, delta2: f64) -> Self {
        Self {
            sigma: Some(sigma),
            delta1,
            delta2,
            ..Self::new(name, kind, mu)
        }
    }

    fn kernel_config(&self) -> Result<KernelFilterConfig> {
        let sigma = self
            .sigma
            .ok_or_else(|| Error::InvalidParameter(format!("algorithm `{}` needs sigma", self.name)))?;
        let base = match self.kind {
            AlgorithmKind::Ncklms1 => KernelFilterConfig::ncklms1(sigma, self.mu)?,
            AlgorithmKind::Ncklms2 => KernelFilterConfig::ncklms2(sigma, self.mu)?,
            AlgorithmKind::Nacklms => KernelFilterConfig::nacklms(sigma, self.mu)?,
            AlgorithmKind::Acklms1 => KernelFilterConfig::complexified_augmented(sigma, self.mu)?,
            _ => unreachable!("not a kernel algorithm"),
        };
        let cfg = KernelFilterConfig {
            eps: self.eps,
            normalized: self.normalized,
            ..base.with_novelty(self.delta1, self.delta2)
        };
        cfg.validate()?;
        Ok(cfg)
    }

    fn linear_config(&self) -> LinearFilterConfig {
        LinearFilterConfig {
            step: self.mu,
            eps: self.eps,
            widely_linear: self.kind == AlgorithmKind::Naclms,
            normalized: self.normalized,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidParameter(format!("algorithm `{}`: {m}", self.name)));
        if self.name.is_empty() || self.name.contains([',', ' ', '\t']) {
            return bad("name must be non-empty without commas or whitespace".into());
        }
        if !(self.mu.is_finite() && self.mu > 0.0) {
            return bad(format!("mu must be positive, got {}", self.mu));
        }
        if !(self.eps.is_finite() && self.eps >= 0.0) {
            return bad(format!("eps must be non-negative, got {}", self.eps));
        }
        if self.kind.is_kernel() {
            self.kernel_config()?;
        } else if self.sigma.is_some() {
            return bad(format!("sigma is not used by {}", self.kind.as_str()));
        }
        if self.kind == AlgorithmKind::Mlp && self.hidden == 0 {
            return bad("hidden must be positive".into());
        }
        Ok(())
    }

    /// Instantiates the filter. `init_seed` drives random weight
    /// initialisation for the neural baselines and is ignored otherwise.
    pub fn build(&self, filter_len: usize, init_seed: u64) -> Result<Box<dyn AdaptiveFilter + Send>> {
        Ok(match self.kind {
            AlgorithmKind::Nclms | AlgorithmKind::Naclms => Box::new(LinearFilter::new(filter_len, self.linear_config())),
            AlgorithmKind::Cngd => Box::new(Cngd::new(filter_len, self.mu, &mut SeededRng::new(init_seed))?),
            AlgorithmKind::Mlp => Box::new(
                Mlp::new(filter_len, self.hidden, self.mu, &mut SeededRng::new(init_seed))?
                    .linear_output(self.linear_output),
            ),
            _ => Box::new(KernelFilter::new(filter_len, self.kernel_config()?)?),
        })
    }

    fn to_line(&self) -> String {
        let mut s = format!("{} kind={} mu={}", self.name, self.kind.as_str(), self.mu);
        if let Some(sigma) = self.sigma {
            let _ = write!(s, " sigma={sigma}");
        }
        if self.kind.is_kernel() {
            let _ = write!(s, " delta1={} delta2={}", self.delta1, self.delta2);
        }
        let _ = write!(s, " eps={} normalized={}", self.eps, self.normalized);
        if self.kind == AlgorithmKind::Mlp {
            let _ = write!(s, " hidden={} linear_output={}", self.hidden, self.linear_output);
        }
        s
    }

    fn parse_line(text: &str) -> std::result::Result<Self, String> {
        let mut parts = text.split_whitespace();
        let name = parts.next().ok_or("algorithm line needs a name")?;
        let mut fields: Vec<(&str, &str)> = Vec::new();
        for p in parts {
            let (k, v) = p.split_once('=').ok_or_else(|| format!("expected key=value, got `{p}`"))?;
            if fields.iter().any(|(seen, _)| *seen == k) {
                return Err(format!("duplicate key `{k}`"));
            }
            fields.push((k, v));
        }
        let get = |k: &str| fields.iter().find(|(key, _)| *key == k).map(|(_, v)| *v);
        let kind: AlgorithmKind = get("kind").ok_or("missing kind=")?.parse()?;
        let mu = parse_number(get("mu").ok_or("missing mu=")?)?;
        let mut cfg = Self::new(name, kind, mu);
        for &(k, v) in &fields {
            match k {
                "kind" | "mu" => {}
                "sigma" => cfg.sigma = Some(parse_number(v)?),
                "delta1" => cfg.delta1 = parse_number(v)?,
                "delta2" => cfg.delta2 = parse_number(v)?,
                "eps" => cfg.eps = parse_number(v)?,
                "normalized" => cfg.normalized = parse_bool(v)?,
                "hidden" => cfg.hidden = v.parse().map_err(|_| format!("bad hidden `{v}`"))?,
                "linear_output" => cfg.linear_output = parse_bool(v)?,
                _ => return Err(format!("unknown algorithm key `{k}`")),
            }
        }
        Ok(cfg)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChannelPreset {
    Soft,
    Strong,
    Custom,
}

impl ChannelPreset {
    fn as_str(self) -> &'static str {
        match self {
            Self::Soft => "soft",
            Self::Strong => "strong",
            Self::Custom => "custom",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub channel_preset: ChannelPreset,
    pub channel: ChannelSpec,
    pub rho: f64,
    pub snr_db: f64,
    pub filter_len: usize,
    pub delay: usize,
    pub n_samples: usize,
    pub n_trials: usize,
    pub base_seed: u64,
    /// Trailing fraction of the learning curve averaged for the summary.
    pub steady_window: f64,
    pub algorithms: Vec<AlgorithmConfig>,
}

impl ExperimentConfig {
    pub fn new(channel_preset: ChannelPreset, channel: ChannelSpec, rho: f64) -> Self {
        Self {
            channel_preset,
            channel,
            rho,
            snr_db: 15.0,
            filter_len: 5,
            delay: 2,
            n_samples: 3000,
            n_trials: 20,
            base_seed: 1,
            steady_window: 0.1,
            algorithms: Vec::new(),
        }
    }

    pub fn input_model(&self) -> Result<InputModel> {
        InputModel::new(self.rho)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidParameter(m));
        self.input_model()?;
        if self.channel.taps.is_empty() {
            return bad("channel needs at least one tap".into());
        }
        if self.snr_db.is_nan() || self.snr_db == f64::NEG_INFINITY {
            return bad(format!("invalid snr_db {}", self.snr_db));
        }
        if self.filter_len == 0 {
            return bad("filter_length must be positive".into());
        }
        if self.n_samples < self.filter_len {
            return bad(format!("samples ({}) must be at least filter_length ({})", self.n_samples, self.filter_len));
        }
        if self.n_trials == 0 {
            return bad("trials must be at least 1".into());
        }
        if !(self.steady_window > 0.0 && self.steady_window <= 1.0) {
            return bad(format!("steady_window must lie in (0, 1], got {}", self.steady_window));
        }
        if self.algorithms.is_empty() {
            return bad("no algorithms configured".into());
        }
        for (i, a) in self.algorithms.iter().enumerate() {
            a.validate()?;
            if self.algorithms[..i].iter().any(|b| b.name == a.name) {
                return bad(format!("duplicate algorithm name `{}`", a.name));
            }
        }
        Ok(())
    }

    /// Canonical text form; parses back to an equal config.
    pub fn to_config_string(&self) -> String {
        let mut s = String::new();
        let taps: Vec<String> = self.channel.taps.iter().map(|t| format_complex(*t)).collect();
        let _ = writeln!(s, "version = {FORMAT_VERSION}");
        let _ = writeln!(s, "channel = {}", self.channel_preset.as_str());
        let _ = writeln!(s, "channel.taps = {}", taps.join(", "));
        let _ = writeln!(s, "channel.nl2 = {}", format_complex(self.channel.nl2));
        let _ = writeln!(s, "channel.nl3 = {}", format_complex(self.channel.nl3));
        let _ = writeln!(s, "rho = {}", self.rho);
        let _ = writeln!(s, "snr_db = {}", self.snr_db);
        let _ = writeln!(s, "filter_length = {}", self.filter_len);
        let _ = writeln!(s, "delay = {}", self.delay);
        let _ = writeln!(s, "samples = {}", self.n_samples);
        let _ = writeln!(s, "trials = {}", self.n_trials);
        let _ = writeln!(s, "seed = {}", self.base_seed);
        let _ = writeln!(s, "steady_window = {}", self.steady_window);
        for a in &self.algorithms {
            let _ = writeln!(s, "algorithm = {}", a.to_line());
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut preset = None;
        let mut taps = None;
        let mut nl2 = None;
        let mut nl3 = None;
        let mut cfg = Self::new(ChannelPreset::Soft, ChannelSpec::soft(), 0.0);
        let mut rho = None;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let err = |message: String| Error::Config { line, message };
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (key, value) = content
                .split_once('=')
                .map(|(k, v)| (k.trim(), v.trim()))
                .ok_or_else(|| err(format!("expected `key = value`, got `{content}`")))?;
            let num = |v: &str| parse_number(v).map_err(err);
            let int = |v: &str| -> Result<usize> { v.parse().map_err(|_| err(format!("expected an integer, got `{v}`"))) };
            match key {
                "version" => {
                    if value != FORMAT_VERSION.to_string() {
                        return Err(err(format!("unsupported config version `{value}`")));
                    }
                }
                "channel" => {
                    preset = Some(match value {
                        "soft" => ChannelPreset::Soft,
                        "strong" => ChannelPreset::Strong,
                        "custom" => ChannelPreset::Custom,
                        _ => return Err(err(format!("unknown channel `{value}`"))),
                    })
                }
                "channel.taps" => {
                    let parsed: Option<Vec<_>> = value.split(',').map(parse_complex).collect();
                    taps = Some(parsed.ok_or_else(|| err(format!("bad tap list `{value}`")))?);
                }
                "channel.nl2" => nl2 = Some(parse_complex(value).ok_or_else(|| err(format!("bad complex `{value}`")))?),
                "channel.nl3" => nl3 = Some(parse_complex(value).ok_or_else(|| err(format!("bad complex `{value}`")))?),
                "rho" => rho = Some(num(value)?),
                "snr_db" => cfg.snr_db = num(value)?,
                "filter_length" => cfg.filter_len = int(value)?,
                "delay" => cfg.delay = int(value)?,
                "samples" => cfg.n_samples = int(value)?,
                "trials" => cfg.n_trials = int(value)?,
                "seed" => cfg.base_seed = value.parse().map_err(|_| err(format!("bad seed `{value}`")))?,
                "steady_window" => cfg.steady_window = num(value)?,
                "algorithm" => cfg.algorithms.push(AlgorithmConfig::parse_line(value).map_err(err)?),
                _ => return Err(err(format!("unknown key `{key}`"))),
            }
        }
        let eof = |message: String| Error::Config { line: 0, message };
        cfg.channel_preset = preset.ok_or_else(|| eof("missing `channel`".into()))?;
        let base = match cfg.channel_preset {
            ChannelPreset::Soft => ChannelSpec::soft(),
            ChannelPreset::Strong => ChannelSpec::strong(),
            ChannelPreset::Custom => {
                if taps.is_none() || nl2.is_none() || nl3.is_none() {
                    return Err(eof("custom channel needs channel.taps, channel.nl2 and channel.nl3".into()));
                }
                ChannelSpec::identity()
            }
        };
        cfg.channel = ChannelSpec::new(taps.unwrap_or(base.taps), nl2.unwrap_or(base.nl2), nl3.unwrap_or(base.nl3))?;
        cfg.rho = rho.ok_or_else(|| eof("missing `rho`".into()))?;
        Ok(cfg)
    }
}

/// Accepts plain floats, `inf`, and fractions `a/b`.
pub fn parse_number(s: &str) -> std::result::Result<f64, String> {
    let bad = || format!("expected a number, got `{s}`");
    match s.split_once('/') {
        Some((a, b)) => {
            let a: f64 = a.trim().parse().map_err(|_| bad())?;
            let b: f64 = b.trim().parse().map_err(|_| bad())?;
            Ok(a / b)
        }
        None => s.trim().parse().map_err(|_| bad()),
    }
}

fn parse_bool(s: &str) -> std::result::Result<bool, String> {
    match s {
        "true" => Ok(true),
        "false" => Ok(false),
        _ => Err(format!("expected true or false, got `{s}`")),
    }
}
