//! Complex vectors, the Hermitian inner product and the sliding regressor
//! window used to feed every filter.

use std::ops::{Deref, DerefMut};

use num_complex::Complex64;

use crate::error::{check_len, Result};

/// Fixed-length complex vector.
///
/// Derefs to `[Complex64]` so it can be handed to anything that works on
/// slices; the length never changes after construction.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexVec(Vec<Complex64>);

impl ComplexVec {
    pub fn zeros(len: usize) -> Self {
        Self(vec![Complex64::new(0.0, 0.0); len])
    }

    pub fn from_parts(re: &[f64], im: &[f64]) -> Result<Self> {
        check_len(re.len(), im.len())?;
        Ok(Self(
            re.iter()
                .zip(im)
                .map(|(&r, &i)| Complex64::new(r, i))
                .collect(),
        ))
    }

    pub fn conj(&self) -> Self {
        Self(self.0.iter().map(|c| c.conj()).collect())
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<Complex64> {
        self.0
    }
}

impl From<Vec<Complex64>> for ComplexVec {
    fn from(v: Vec<Complex64>) -> Self {
        Self(v)
    }
}

impl From<&[Complex64]> for ComplexVec {
    fn from(v: &[Complex64]) -> Self {
        Self(v.to_vec())
    }
}

impl Deref for ComplexVec {
    type Target = [Complex64];

    fn deref(&self) -> &[Complex64] {
        &self.0
    }
}

impl DerefMut for ComplexVec {
    fn deref_mut(&mut self) -> &mut [Complex64] {
        &mut self.0
    }
}

/// `<a, b> = b^H a = sum_k conj(b_k) a_k`: linear in `a`, conjugate-linear in `b`.
pub fn hermitian_dot(a: &[Complex64], b: &[Complex64]) -> Result<Complex64> {
    check_len(a.len(), b.len())?;
    Ok(hermitian_dot_unchecked(a, b))
}

#[inline]
pub(crate) fn hermitian_dot_unchecked(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter()
        .zip(b)
        .fold(Complex64::new(0.0, 0.0), |acc, (x, y)| acc + y.conj() * x)
}

/// `<conj(a), b> = sum_k conj(b_k) conj(a_k)`.
#[inline]
pub(crate) fn conj_dot_unchecked(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter()
        .zip(b)
        .fold(Complex64::new(0.0, 0.0), |acc, (x, y)| acc + (y * x).conj())
}

/// Squared Euclidean norm, i.e. `<a, a>`.
#[inline]
pub fn norm_sqr(a: &[Complex64]) -> f64 {
    a.iter().map(|c| c.norm_sqr()).sum()
}

/// Squared Euclidean distance of `a` and `b` viewed as vectors of `R^{2n}`.
#[inline]
pub(crate) fn dist_sqr_unchecked(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm_sqr()).sum()
}

/// Tapped delay line holding the `L` most recent samples, newest first.
///
/// Slots that have not been written yet read as zero.
#[derive(Debug, Clone)]
pub struct RegressorWindow {
    buf: Vec<Complex64>,
}

impl RegressorWindow {
    pub fn new(len: usize) -> Self {
        assert!(len > 0, "regressor window length must be positive");
        Self {
            buf: vec![Complex64::new(0.0, 0.0); len],
        }
    }

    pub fn len(&self) -> usize {
        self.buf.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn push(&mut self, sample: Complex64) {
        self.buf.rotate_right(1);
        self.buf[0] = sample;
    }

    /// Current content, newest sample at index 0.
    pub fn as_slice(&self) -> &[Complex64] {
        &self.buf
    }

    pub fn to_vec(&self) -> ComplexVec {
        ComplexVec(self.buf.clone())
    }

    pub fn clear(&mut self) {
        self.buf.fill(Complex64::new(0.0, 0.0));
    }
}
