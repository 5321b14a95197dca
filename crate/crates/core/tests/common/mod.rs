#![allow(dead_code)]

use kaf::rng::SeededRng;
use kaf::Complex64;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn random_cvec(rng: &mut SeededRng, n: usize, scale: f64) -> Vec<Complex64> {
    (0..n)
        .map(|_| c(rng.uniform_range(-scale, scale), rng.uniform_range(-scale, scale)))
        .collect()
}

/// Central-difference Wirtinger gradient `dL/dp* = (dL/dRe p + i dL/dIm p) / 2`
/// of a real loss over complex parameters.
pub fn wirtinger_fd(params: &[Complex64], h: f64, mut loss: impl FnMut(&[Complex64]) -> f64) -> Vec<Complex64> {
    let mut p = params.to_vec();
    let mut grad = Vec::with_capacity(p.len());
    for k in 0..p.len() {
        let orig = p[k];
        p[k] = orig + c(h, 0.0);
        let lp = loss(&p);
        p[k] = orig - c(h, 0.0);
        let lm = loss(&p);
        let d_re = (lp - lm) / (2.0 * h);
        p[k] = orig + c(0.0, h);
        let lp = loss(&p);
        p[k] = orig - c(0.0, h);
        let lm = loss(&p);
        let d_im = (lp - lm) / (2.0 * h);
        p[k] = orig;
        grad.push(c(d_re, d_im) * 0.5);
    }
    grad
}

/// `||a - b|| / ||b||` over whole vectors.
pub fn rel_err(a: &[Complex64], b: &[Complex64]) -> f64 {
    assert_eq!(a.len(), b.len());
    let num: f64 = a.iter().zip(b).map(|(x, y)| (x - y).norm_sqr()).sum::<f64>().sqrt();
    let den: f64 = b.iter().map(|y| y.norm_sqr()).sum::<f64>().sqrt();
    num / den.max(1e-300)
}
