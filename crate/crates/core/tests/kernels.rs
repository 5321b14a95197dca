mod common;

use common::{c, random_cvec};
use kaf::kernels::{ComplexKernel, RealKernel};
use kaf::rng::SeededRng;
use nalgebra::{DMatrix, SymmetricEigen};

#[test]
fn complex_gaussian_is_conjugate_symmetric() {
    let mut rng = SeededRng::new(100);
    for _ in 0..1000 {
        let n = 1 + (rng.next_u64() % 6) as usize;
        let sigma = rng.uniform_range(0.5, 5.0);
        let k = ComplexKernel::gaussian(sigma).unwrap();
        let z = random_cvec(&mut rng, n, 1.0);
        let w = random_cvec(&mut rng, n, 1.0);
        let a = k.eval(&z, &w).unwrap();
        let b = k.eval(&w, &z).unwrap();
        assert!((a - b.conj()).norm() <= 1e-12 * a.norm().max(1.0), "{a} vs {b}");
    }
}

#[test]
fn complex_gaussian_restricted_to_reals_is_real_gaussian() {
    let mut rng = SeededRng::new(101);
    for _ in 0..200 {
        let sigma = rng.uniform_range(0.3, 4.0);
        let x: Vec<f64> = (0..4).map(|_| rng.uniform_range(-2.0, 2.0)).collect();
        let y: Vec<f64> = (0..4).map(|_| rng.uniform_range(-2.0, 2.0)).collect();
        let zx: Vec<_> = x.iter().map(|&v| c(v, 0.0)).collect();
        let zy: Vec<_> = y.iter().map(|&v| c(v, 0.0)).collect();
        let complex = ComplexKernel::gaussian(sigma).unwrap().eval(&zx, &zy).unwrap();
        let real = RealKernel::gaussian(sigma).unwrap().eval(&x, &y).unwrap();
        assert_eq!(complex.im, 0.0);
        assert!((complex.re - real).abs() <= 1e-15 * real.max(1e-300));
    }
}

#[test]
fn real_gaussian_gram_is_psd() {
    let mut rng = SeededRng::new(102);
    for _ in 0..200 {
        let m = 2 + (rng.next_u64() % 7) as usize;
        let dim = 1 + (rng.next_u64() % 4) as usize;
        let sigma = rng.uniform_range(0.2, 3.0);
        let k = RealKernel::gaussian(sigma).unwrap();
        let pts: Vec<Vec<f64>> = (0..m)
            .map(|_| (0..dim).map(|_| rng.uniform_range(-2.0, 2.0)).collect())
            .collect();
        let gram = DMatrix::from_fn(m, m, |i, j| k.eval(&pts[i], &pts[j]).unwrap());
        let eig = SymmetricEigen::new(gram);
        let min = eig.eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min);
        assert!(min >= -1e-10, "min eigenvalue {min}");
    }
}

#[test]
fn complexified_gram_is_psd() {
    let mut rng = SeededRng::new(103);
    let k = RealKernel::gaussian(1.0).unwrap();
    for _ in 0..100 {
        let pts: Vec<_> = (0..8).map(|_| random_cvec(&mut rng, 3, 1.0)).collect();
        let gram = DMatrix::from_fn(8, 8, |i, j| k.complexified(&pts[i], &pts[j]).unwrap());
        let min = SymmetricEigen::new(gram).eigenvalues.min();
        assert!(min >= -1e-10);
    }
}
