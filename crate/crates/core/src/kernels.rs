//! Real and complex reproducing kernels.
//!
//! Gaussian widths follow the `exp(-||x - y||^2 / sigma^2)` convention (no
//! factor of two in the denominator) for both the real and complex kernels.

use num_complex::Complex64;

use crate::error::{check_len, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RealKernel {
    GaussianRbf { sigma: f64 },
    /// `(1 + x^T y)^degree`
    Polynomial { degree: u32 },
}

impl RealKernel {
    pub fn gaussian(sigma: f64) -> Result<Self> {
        check_width(sigma)?;
        Ok(Self::GaussianRbf { sigma })
    }

    pub fn polynomial(degree: u32) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidParameter(
                "polynomial kernel degree must be at least 1".into(),
            ));
        }
        Ok(Self::Polynomial { degree })
    }

    pub fn eval(&self, x: &[f64], y: &[f64]) -> Result<f64> {
        check_len(x.len(), y.len())?;
        Ok(match *self {
            Self::GaussianRbf { sigma } => {
                let d2: f64 = x.iter().zip(y).map(|(a, b)| (a - b) * (a - b)).sum();
                (-d2 / (sigma * sigma)).exp()
            }
            Self::Polynomial { degree } => {
                let dot: f64 = x.iter().zip(y).map(|(a, b)| a * b).sum();
                (1.0 + dot).powi(degree as i32)
            }
        })
    }

    /// Evaluates the kernel on `(Re z || Im z)` and `(Re c || Im c)`.
    pub fn complexified(&self, z: &[Complex64], c: &[Complex64]) -> Result<f64> {
        check_len(z.len(), c.len())?;
        Ok(self.complexified_unchecked(z, c))
    }

    #[inline]
    pub(crate) fn complexified_unchecked(&self, z: &[Complex64], c: &[Complex64]) -> f64 {
        match *self {
            Self::GaussianRbf { sigma } => {
                let d2: f64 = z.iter().zip(c).map(|(a, b)| (a - b).norm_sqr()).sum();
                (-d2 / (sigma * sigma)).exp()
            }
            Self::Polynomial { degree } => {
                let dot: f64 = z.iter().zip(c).map(|(a, b)| a.re * b.re + a.im * b.im).sum();
                (1.0 + dot).powi(degree as i32)
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ComplexKernel {
    /// `exp(-sum_k (z_k - conj(w_k))^2 / sigma^2)` with the complex exponential.
    Gaussian { sigma: f64 },
}

impl ComplexKernel {
    pub fn gaussian(sigma: f64) -> Result<Self> {
        check_width(sigma)?;
        Ok(Self::Gaussian { sigma })
    }

    pub fn eval(&self, z: &[Complex64], w: &[Complex64]) -> Result<Complex64> {
        check_len(z.len(), w.len())?;
        Ok(self.eval_unchecked(z, w))
    }

    #[inline]
    pub(crate) fn eval_unchecked(&self, z: &[Complex64], w: &[Complex64]) -> Complex64 {
        match *self {
            Self::Gaussian { sigma } => {
                let s = z.iter().zip(w).fold(Complex64::new(0.0, 0.0), |acc, (a, b)| {
                    let d = a - b.conj();
                    acc + d * d
                });
                (-s / (sigma * sigma)).exp()
            }
        }
    }
}

fn check_width(sigma: f64) -> Result<()> {
    if sigma.is_finite() && sigma > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "kernel width must be positive and finite, got {sigma}"
        )))
    }
}
