//! Normalized complex LMS (C-linear) and its widely-linear (augmented)
//! counterpart.
//!
//! The C-linear filter outputs `w^H z`. The augmented filter outputs
//! `w^H z + v^H z*`, which is R-linear in `z` and covers every real-linear
//! map `R^{2L} -> R^2` (see [`decompose_operator`]).

use num_complex::Complex64;

use crate::error::{check_len, Result};
use crate::filter::AdaptiveFilter;
use crate::types::{conj_dot_unchecked, hermitian_dot_unchecked, norm_sqr, ComplexVec};

pub const DEFAULT_EPS: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearFilterConfig {
    pub step: f64,
    pub eps: f64,
    pub widely_linear: bool,
    /// Divide the step by `eps + ||z||^2` (or `eps + 2||z||^2` when augmented).
    pub normalized: bool,
}

impl LinearFilterConfig {
    pub fn nclms(step: f64) -> Self {
        Self {
            step,
            eps: DEFAULT_EPS,
            widely_linear: false,
            normalized: true,
        }
    }

    pub fn naclms(step: f64) -> Self {
        Self {
            widely_linear: true,
            ..Self::nclms(step)
        }
    }
}

#[derive(Debug, Clone)]
pub struct LinearFilter {
    w: ComplexVec,
    v: Option<ComplexVec>,
    config: LinearFilterConfig,
    freeze_conjugate: bool,
}

impl LinearFilter {
    /// Zero-initialised filter of length `len`.
    pub fn new(len: usize, config: LinearFilterConfig) -> Self {
        Self {
            w: ComplexVec::zeros(len),
            v: config.widely_linear.then(|| ComplexVec::zeros(len)),
            config,
            freeze_conjugate: false,
        }
    }

    pub fn nclms(len: usize, step: f64) -> Self {
        Self::new(len, LinearFilterConfig::nclms(step))
    }

    pub fn naclms(len: usize, step: f64) -> Self {
        Self::new(len, LinearFilterConfig::naclms(step))
    }

    /// Builds a filter with explicit weights; `v = None` gives a C-linear filter.
    pub fn with_weights(w: ComplexVec, v: Option<ComplexVec>, config: LinearFilterConfig) -> Result<Self> {
        if let Some(v) = &v {
            check_len(w.len(), v.len())?;
        }
        Ok(Self {
            config: LinearFilterConfig {
                widely_linear: v.is_some(),
                ..config
            },
            w,
            v,
            freeze_conjugate: false,
        })
    }

    /// Keeps `v` fixed during updates (only meaningful for the augmented filter).
    pub fn freeze_conjugate(mut self, freeze: bool) -> Self {
        self.freeze_conjugate = freeze;
        self
    }

    pub fn len(&self) -> usize {
        self.w.len()
    }

    pub fn is_empty(&self) -> bool {
        self.w.is_empty()
    }

    pub fn config(&self) -> &LinearFilterConfig {
        &self.config
    }

    pub fn weights(&self) -> &ComplexVec {
        &self.w
    }

    pub fn conjugate_weights(&self) -> Option<&ComplexVec> {
        self.v.as_ref()
    }

    fn effective_step(&self, z: &[Complex64]) -> f64 {
        if !self.config.normalized {
            return self.config.step;
        }
        let energy = if self.v.is_some() { 2.0 * norm_sqr(z) } else { norm_sqr(z) };
        self.config.step / (self.config.eps + energy)
    }

    fn predict_unchecked(&self, z: &[Complex64]) -> Complex64 {
        let mut y = hermitian_dot_unchecked(z, &self.w);
        if let Some(v) = &self.v {
            y += conj_dot_unchecked(z, v);
        }
        y
    }

    /// `(dL/dw*, dL/dv*)` for the instantaneous cost `|d - y(z)|^2`.
    pub fn wirtinger_gradient(&self, z: &[Complex64], d: Complex64) -> Result<(ComplexVec, Option<ComplexVec>)> {
        check_len(self.w.len(), z.len())?;
        let e_conj = (d - self.predict_unchecked(z)).conj();
        let gw: ComplexVec = z.iter().map(|x| -x * e_conj).collect::<Vec<_>>().into();
        let gv = self
            .v
            .as_ref()
            .map(|_| z.iter().map(|x| -x.conj() * e_conj).collect::<Vec<_>>().into());
        Ok((gw, gv))
    }
}

impl AdaptiveFilter for LinearFilter {
    fn predict(&self, z: &[Complex64]) -> Result<Complex64> {
        check_len(self.w.len(), z.len())?;
        Ok(self.predict_unchecked(z))
    }

    fn update(&mut self, z: &[Complex64], d: Complex64) -> Result<Complex64> {
        check_len(self.w.len(), z.len())?;
        let e = d - self.predict_unchecked(z);
        let g = e.conj() * self.effective_step(z);
        for (w, x) in self.w.iter_mut().zip(z) {
            *w += g * x;
        }
        if !self.freeze_conjugate {
            if let Some(v) = &mut self.v {
                for (v, x) in v.iter_mut().zip(z) {
                    *v += g * x.conj();
                }
            }
        }
        Ok(e)
    }
}

/// The four real blocks of a linear operator `R^{2L} -> R^2`:
///
/// ```text
/// [dr]   [u11^T u12^T] [x]
/// [di] = [u21^T u22^T] [y]
/// ```
#[derive(Debug, Clone, PartialEq)]
pub struct RealOperatorBlocks {
    pub u11: Vec<f64>,
    pub u12: Vec<f64>,
    pub u21: Vec<f64>,
    pub u22: Vec<f64>,
}

impl RealOperatorBlocks {
    pub fn new(u11: Vec<f64>, u12: Vec<f64>, u21: Vec<f64>, u22: Vec<f64>) -> Result<Self> {
        let n = u11.len();
        check_len(n, u12.len())?;
        check_len(n, u21.len())?;
        check_len(n, u22.len())?;
        Ok(Self { u11, u12, u21, u22 })
    }

    pub fn len(&self) -> usize {
        self.u11.len()
    }

    pub fn is_empty(&self) -> bool {
        self.u11.is_empty()
    }

    /// Dual-real-channel evaluation `T1(x, y) + i T2(x, y)` at `z = x + iy`.
    pub fn apply(&self, z: &[Complex64]) -> Result<Complex64> {
        check_len(self.len(), z.len())?;
        let dot = |u: &[f64], part: fn(&Complex64) -> f64| -> f64 {
            u.iter().zip(z).map(|(a, b)| a * part(b)).sum()
        };
        let re = |c: &Complex64| c.re;
        let im = |c: &Complex64| c.im;
        let t1 = dot(&self.u11, re) + dot(&self.u12, im);
        let t2 = dot(&self.u21, re) + dot(&self.u22, im);
        Ok(Complex64::new(t1, t2))
    }
}

/// Rewrites a real operator as the widely-linear pair `(w, v)` such that
/// `T(z) = <z, w> + <z*, v>`.
pub fn decompose_operator(blocks: &RealOperatorBlocks) -> (ComplexVec, ComplexVec) {
    let n = blocks.len();
    let mut w = Vec::with_capacity(n);
    let mut v = Vec::with_capacity(n);
    for k in 0..n {
        let (u11, u12, u21, u22) = (blocks.u11[k], blocks.u12[k], blocks.u21[k], blocks.u22[k]);
        w.push(Complex64::new((u11 + u22) / 2.0, (u12 - u21) / 2.0));
        v.push(Complex64::new((u11 - u22) / 2.0, -(u21 + u12) / 2.0));
    }
    (w.into(), v.into())
}
