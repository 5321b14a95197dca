use kaf::channel::{add_noise, mean_power, ChannelSpec, InputModel};
use kaf::rng::SeededRng;
use kaf::Complex64;

const N: usize = 100_000;

fn pseudo_cov(x: &[Complex64]) -> Complex64 {
    x.iter().map(|v| v * v).sum::<Complex64>() / x.len() as f64
}

#[test]
fn circular_input_has_vanishing_pseudo_covariance() {
    let model = InputModel::new(std::f64::consts::FRAC_1_SQRT_2).unwrap();
    let s = model.generate(N, &mut SeededRng::new(500));
    let pc = pseudo_cov(&s);
    assert!(pc.norm() < 0.01, "pseudo-covariance {pc}");
    assert!((mean_power(&s) - 0.49).abs() < 0.01);
}

#[test]
fn noncircular_input_pseudo_covariance_matches_closed_form() {
    for rho in [0.0, 0.1, 0.3, 0.9] {
        let model = InputModel::new(rho).unwrap();
        let s = model.generate(N, &mut SeededRng::new(501));
        let pc = pseudo_cov(&s);
        let expect = 0.49 * (1.0 - 2.0 * rho * rho);
        assert!((model.pseudo_variance() - expect).abs() < 1e-15);
        assert!((pc.re - expect).abs() < 0.01, "rho {rho}: {pc} vs {expect}");
        assert!(pc.im.abs() < 0.01);
    }
}

#[test]
fn noise_hits_target_snr_and_is_circular() {
    let model = InputModel::new(0.1).unwrap();
    let mut rng = SeededRng::new(502);
    let s = model.generate(N, &mut rng);
    for (ch, snr) in [(ChannelSpec::soft(), 15.0), (ChannelSpec::strong(), 15.0), (ChannelSpec::soft(), 3.0), (ChannelSpec::soft(), 30.0)] {
        let (_, q) = ch.apply(&s);
        let r = add_noise(&q, snr, &mut rng).unwrap();
        let noise: Vec<_> = r.iter().zip(&q).map(|(a, b)| a - b).collect();
        let measured = 10.0 * (mean_power(&q) / mean_power(&noise)).log10();
        assert!((measured - snr).abs() < 0.2, "target {snr} dB, measured {measured}");
        let ratio = pseudo_cov(&noise).norm() / mean_power(&noise);
        assert!(ratio < 0.02, "noise pseudo-covariance ratio {ratio}");
    }
}
