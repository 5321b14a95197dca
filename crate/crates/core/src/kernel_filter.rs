//! Kernel LMS filters over complex data.
//!
//! Four output models share one dictionary representation. With stored
//! centers `c_k` and coefficients `a_k`:
//!
//! | mode                       | output                                  |
//! |----------------------------|-----------------------------------------|
//! | complexified, linear       | `2 sum a_k kR(c_k, z)`                  |
//! | complexified, augmented    | `4 sum a_k kR(c_k, z)`                  |
//! | pure complex, linear       | `sum a_k kC(z, c_k)`                    |
//! | pure complex, augmented    | `sum a_k (kC(c_k, z) + conj kC(c_k, z))`|
//!
//! `kR` is a real kernel evaluated on `(Re || Im)` and `kC` the complex
//! Gaussian kernel. The complexified augmented filter is the linear one with
//! its step halved, so it adds nothing; it is kept to check that identity.
//!
//! Every update computes the a-priori error `e` and, if the novelty
//! criterion admits `z`, appends `(z, mu_eff * e)` to the dictionary.
//! Coefficients are never revisited afterwards.

use num_complex::Complex64;

use crate::error::{check_len, Error, Result};
use crate::filter::AdaptiveFilter;
use crate::kernels::{ComplexKernel, RealKernel};
use crate::types::dist_sqr_unchecked;

pub const DEFAULT_EPS: f64 = 1e-8;

const COMPLEXIFIED_LINEAR_GAIN: f64 = 2.0;
const COMPLEXIFIED_AUGMENTED_GAIN: f64 = 4.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelMode {
    ComplexifiedLinear,
    PureComplexLinear,
    PureComplexAugmented,
    ComplexifiedAugmented,
}

impl KernelMode {
    pub fn is_complexified(self) -> bool {
        matches!(self, Self::ComplexifiedLinear | Self::ComplexifiedAugmented)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum KernelChoice {
    Real(RealKernel),
    Complex(ComplexKernel),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelFilterConfig {
    pub kernel: KernelChoice,
    pub mode: KernelMode,
    pub step: f64,
    pub eps: f64,
    /// Minimum input-space distance to every stored center for admission.
    pub delta1: f64,
    /// Minimum error magnitude for admission.
    pub delta2: f64,
    /// Divide the step by the kernel self-similarity of the new sample.
    pub normalized: bool,
    pub capacity: Option<usize>,
}

impl KernelFilterConfig {
    fn base(kernel: KernelChoice, mode: KernelMode, step: f64) -> Self {
        Self {
            kernel,
            mode,
            step,
            eps: DEFAULT_EPS,
            delta1: 0.0,
            delta2: 0.0,
            normalized: true,
            capacity: None,
        }
    }

    /// NCKLMS1: real Gaussian kernel through complexification.
    pub fn ncklms1(sigma: f64, step: f64) -> Result<Self> {
        Ok(Self::base(
            KernelChoice::Real(RealKernel::gaussian(sigma)?),
            KernelMode::ComplexifiedLinear,
            step,
        ))
    }

    /// NCKLMS2: complex Gaussian kernel, C-linear in feature space.
    pub fn ncklms2(sigma: f64, step: f64) -> Result<Self> {
        Ok(Self::base(
            KernelChoice::Complex(ComplexKernel::gaussian(sigma)?),
            KernelMode::PureComplexLinear,
            step,
        ))
    }

    /// NACKLMS: complex Gaussian kernel, widely linear in feature space.
    pub fn nacklms(sigma: f64, step: f64) -> Result<Self> {
        Ok(Self::base(
            KernelChoice::Complex(ComplexKernel::gaussian(sigma)?),
            KernelMode::PureComplexAugmented,
            step,
        ))
    }

    /// Augmented filter built on a complexified real kernel.
    pub fn complexified_augmented(sigma: f64, step: f64) -> Result<Self> {
        Ok(Self::base(
            KernelChoice::Real(RealKernel::gaussian(sigma)?),
            KernelMode::ComplexifiedAugmented,
            step,
        ))
    }

    pub fn with_novelty(mut self, delta1: f64, delta2: f64) -> Self {
        self.delta1 = delta1;
        self.delta2 = delta2;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        if !(self.step.is_finite() && self.step > 0.0) {
            return bad(format!("step size must be positive, got {}", self.step));
        }
        if !(self.eps.is_finite() && self.eps >= 0.0) {
            return bad(format!("eps must be non-negative, got {}", self.eps));
        }
        if !(self.delta1 >= 0.0 && self.delta2 >= 0.0) {
            return bad(format!(
                "novelty thresholds must be non-negative, got delta1={} delta2={}",
                self.delta1, self.delta2
            ));
        }
        match (self.kernel, self.mode.is_complexified()) {
            (KernelChoice::Real(_), true) | (KernelChoice::Complex(_), false) => Ok(()),
            (KernelChoice::Real(_), false) => bad(format!("{:?} requires a complex kernel", self.mode)),
            (KernelChoice::Complex(_), true) => bad(format!("{:?} requires a real kernel", self.mode)),
        }
    }
}

/// Stored centers and their expansion coefficients.
#[derive(Debug, Clone, Default)]
pub struct Dictionary {
    dim: usize,
    centers: Vec<Complex64>,
    coeffs: Vec<Complex64>,
}

impl Dictionary {
    pub fn new(dim: usize) -> Self {
        Self {
            dim,
            centers: Vec::new(),
            coeffs: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn center(&self, k: usize) -> &[Complex64] {
        &self.centers[k * self.dim..(k + 1) * self.dim]
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn centers(&self) -> impl Iterator<Item = &[Complex64]> {
        self.centers.chunks_exact(self.dim.max(1))
    }

    pub fn push(&mut self, center: &[Complex64], coeff: Complex64) -> Result<()> {
        check_len(self.dim, center.len())?;
        self.centers.extend_from_slice(center);
        self.coeffs.push(coeff);
        Ok(())
    }

    /// Input-space distance from `z` to the nearest center, `+inf` when empty.
    pub fn min_distance(&self, z: &[Complex64]) -> f64 {
        self.centers()
            .map(|c| dist_sqr_unchecked(c, z))
            .fold(f64::INFINITY, f64::min)
            .sqrt()
    }
}

/// Novelty criterion: admit `z` iff it is farther than `delta1` from every
/// stored center and the error magnitude exceeds `delta2`.
pub fn novelty_check(dict: &Dictionary, z: &[Complex64], e: Complex64, delta1: f64, delta2: f64) -> bool {
    novelty_admits(dict.min_distance(z), e, delta1, delta2)
}

#[inline]
fn novelty_admits(min_dist: f64, e: Complex64, delta1: f64, delta2: f64) -> bool {
    min_dist > delta1 && e.norm() > delta2
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelStep {
    pub error: Complex64,
    pub admitted: bool,
}

#[derive(Debug, Clone)]
pub struct KernelFilter {
    config: KernelFilterConfig,
    dict: Dictionary,
}

impl KernelFilter {
    pub fn new(dim: usize, config: KernelFilterConfig) -> Result<Self> {
        config.validate()?;
        Ok(Self {
            config,
            dict: Dictionary::new(dim),
        })
    }

    pub fn config(&self) -> &KernelFilterConfig {
        &self.config
    }

    pub fn dictionary(&self) -> &Dictionary {
        &self.dict
    }

    /// Replaces the dictionary, e.g. to evaluate a fixed expansion.
    pub fn set_dictionary(&mut self, dict: Dictionary) -> Result<()> {
        check_len(self.dict.dim, dict.dim)?;
        self.dict = dict;
        Ok(())
    }

    /// Effective kernel value multiplying the coefficient of `center` when
    /// predicting at `z`; the output is `sum_k a_k * term(c_k, z)`.
    #[inline]
    fn term(&self, center: &[Complex64], z: &[Complex64]) -> Complex64 {
        match (self.config.kernel, self.config.mode) {
            (KernelChoice::Real(k), KernelMode::ComplexifiedLinear) => {
                Complex64::new(COMPLEXIFIED_LINEAR_GAIN * k.complexified_unchecked(center, z), 0.0)
            }
            (KernelChoice::Real(k), KernelMode::ComplexifiedAugmented) => {
                Complex64::new(COMPLEXIFIED_AUGMENTED_GAIN * k.complexified_unchecked(center, z), 0.0)
            }
            (KernelChoice::Complex(k), KernelMode::PureComplexLinear) => k.eval_unchecked(z, center),
            (KernelChoice::Complex(k), KernelMode::PureComplexAugmented) => {
                let v = k.eval_unchecked(center, z);
                v + v.conj()
            }
            // validate() rules out the remaining pairs
            _ => unreachable!("kernel/mode mismatch"),
        }
    }

    /// Self-similarity of `z` used as the normalizing energy.
    fn energy(&self, z: &[Complex64]) -> f64 {
        match self.config.kernel {
            KernelChoice::Real(k) => k.complexified_unchecked(z, z).abs(),
            KernelChoice::Complex(k) => {
                let v = k.eval_unchecked(z, z);
                match self.config.mode {
                    KernelMode::PureComplexAugmented => (v + v.conj()).norm(),
                    _ => v.norm(),
                }
            }
        }
    }

    fn effective_step(&self, z: &[Complex64]) -> f64 {
        if self.config.normalized {
            self.config.step / (self.config.eps + self.energy(z))
        } else {
            self.config.step
        }
    }

    fn predict_unchecked(&self, z: &[Complex64]) -> Complex64 {
        self.dict
            .centers()
            .zip(&self.dict.coeffs)
            .fold(Complex64::new(0.0, 0.0), |acc, (c, a)| acc + a * self.term(c, z))
    }

    pub fn update_kernel(&mut self, z: &[Complex64], d: Complex64) -> Result<KernelStep> {
        check_len(self.dict.dim, z.len())?;
        let mut y = Complex64::new(0.0, 0.0);
        let mut min_d2 = f64::INFINITY;
        for (c, a) in self.dict.centers().zip(&self.dict.coeffs) {
            y += a * self.term(c, z);
            min_d2 = min_d2.min(dist_sqr_unchecked(c, z));
        }
        let error = d - y;
        let full = self.config.capacity.is_some_and(|cap| self.dict.len() >= cap);
        let admitted = !full && novelty_admits(min_d2.sqrt(), error, self.config.delta1, self.config.delta2);
        if admitted {
            let coeff = error * self.effective_step(z);
            self.dict.centers.extend_from_slice(z);
            self.dict.coeffs.push(coeff);
        }
        Ok(KernelStep { error, admitted })
    }

    /// `dL/da_k*` for `L = |d - y(z)|^2`, one entry per stored coefficient.
    pub fn coefficient_gradient(&self, z: &[Complex64], d: Complex64) -> Result<Vec<Complex64>> {
        check_len(self.dict.dim, z.len())?;
        let e = d - self.predict_unchecked(z);
        Ok(self.dict.centers().map(|c| -e * self.term(c, z).conj()).collect())
    }
}

impl AdaptiveFilter for KernelFilter {
    fn predict(&self, z: &[Complex64]) -> Result<Complex64> {
        check_len(self.dict.dim, z.len())?;
        Ok(self.predict_unchecked(z))
    }

    fn update(&mut self, z: &[Complex64], d: Complex64) -> Result<Complex64> {
        Ok(self.update_kernel(z, d)?.error)
    }

    fn dictionary_len(&self) -> Option<usize> {
        Some(self.dict.len())
    }
}
