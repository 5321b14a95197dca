//! Non-kernel nonlinear baselines: a single fully-complex tanh neuron trained
//! by gradient descent (CNGD) and a one-hidden-layer complex MLP.
//!
//! Both follow Wirtinger gradient descent on `|d - y|^2`: every complex
//! parameter `p` moves by `-mu * dL/dp*`. Parameters are exposed as a flat
//! vector so gradients can be checked coordinate by coordinate.

use num_complex::Complex64;

use crate::error::{check_len, Error, Result};
use crate::filter::AdaptiveFilter;
use crate::rng::SeededRng;

/// Bound on `|Im a|` applied to every pre-activation, below the first pole
/// of `tanh` at `i pi / 2`.
pub const IM_CLAMP: f64 = 1.4;

pub const INIT_SCALE: f64 = 0.1;

pub const DEFAULT_HIDDEN: usize = 50;

/// Above this `|Re z|` the tanh is evaluated by its asymptotic form, since
/// `sinh(2x) / cosh(2x)` overflows to `inf / inf` near `|x| = 355`.
const SATURATION_RE: f64 = 20.0;

/// Fully-complex hyperbolic tangent.
pub fn ctanh(z: Complex64) -> Complex64 {
    if z.re.abs() > SATURATION_RE {
        // tanh(x + iy) = sign(x) + 2 i sin(2y) e^{-2|x|} + O(e^{-4|x|})
        Complex64::new(z.re.signum(), 2.0 * (2.0 * z.im).sin() * (-2.0 * z.re.abs()).exp())
    } else {
        z.tanh()
    }
}

#[inline]
fn is_clamped(a: Complex64) -> bool {
    a.im.abs() > IM_CLAMP
}

/// `ctanh` after clamping the imaginary part to `[-IM_CLAMP, IM_CLAMP]`.
#[inline]
pub fn activate(a: Complex64) -> Complex64 {
    ctanh(Complex64::new(a.re, a.im.clamp(-IM_CLAMP, IM_CLAMP)))
}

fn uniform_complex(rng: &mut SeededRng) -> Complex64 {
    Complex64::new(
        rng.uniform_range(-INIT_SCALE, INIT_SCALE),
        rng.uniform_range(-INIT_SCALE, INIT_SCALE),
    )
}

fn check_step(step: f64) -> Result<()> {
    if step.is_finite() && step > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("step size must be positive, got {step}")))
    }
}

/// `y = ctanh(w^H z + b)`.
#[derive(Debug, Clone)]
pub struct Cngd {
    w: Vec<Complex64>,
    bias: Complex64,
    step: f64,
}

impl Cngd {
    /// Weights and bias drawn uniformly from `[-0.1, 0.1]^2`.
    pub fn new(len: usize, step: f64, rng: &mut SeededRng) -> Result<Self> {
        check_step(step)?;
        let w = (0..len).map(|_| uniform_complex(rng)).collect();
        let bias = uniform_complex(rng);
        Ok(Self { w, bias, step })
    }

    pub fn with_weights(w: Vec<Complex64>, bias: Complex64, step: f64) -> Result<Self> {
        check_step(step)?;
        Ok(Self { w, bias, step })
    }

    fn preactivation(&self, z: &[Complex64]) -> Complex64 {
        z.iter().zip(&self.w).fold(self.bias, |acc, (x, w)| acc + w.conj() * x)
    }

    fn forward(&self, z: &[Complex64]) -> Complex64 {
        activate(self.preactivation(z))
    }

    /// Whether the pre-activation at `z` hits the imaginary-part clamp, where
    /// the analytic gradient no longer matches the clamped forward map.
    pub fn saturated(&self, z: &[Complex64]) -> bool {
        is_clamped(self.preactivation(z))
    }

    /// Flat parameter vector `(w_0, ..., w_{L-1}, bias)`.
    pub fn parameters(&self) -> Vec<Complex64> {
        let mut p = self.w.clone();
        p.push(self.bias);
        p
    }

    pub fn set_parameters(&mut self, p: &[Complex64]) -> Result<()> {
        check_len(self.w.len() + 1, p.len())?;
        let (w, b) = p.split_at(self.w.len());
        self.w.copy_from_slice(w);
        self.bias = b[0];
        Ok(())
    }

    /// `dL/dp*` in [`Cngd::parameters`] order.
    pub fn gradient(&self, z: &[Complex64], d: Complex64) -> Result<Vec<Complex64>> {
        check_len(self.w.len(), z.len())?;
        Ok(self.gradient_with_error(z, d).0)
    }

    fn gradient_with_error(&self, z: &[Complex64], d: Complex64) -> (Vec<Complex64>, Complex64) {
        let y = self.forward(z);
        let e = d - y;
        let slope = Complex64::new(1.0, 0.0) - y * y;
        // a = w^H z + b is holomorphic in conj(w) and in b
        let mut g: Vec<Complex64> = z.iter().map(|x| -e.conj() * slope * x).collect();
        g.push(-e * slope.conj());
        (g, e)
    }
}

impl AdaptiveFilter for Cngd {
    fn predict(&self, z: &[Complex64]) -> Result<Complex64> {
        check_len(self.w.len(), z.len())?;
        Ok(self.forward(z))
    }

    fn update(&mut self, z: &[Complex64], d: Complex64) -> Result<Complex64> {
        check_len(self.w.len(), z.len())?;
        let (g, e) = self.gradient_with_error(z, d);
        for (w, gw) in self.w.iter_mut().zip(&g) {
            *w -= self.step * gw;
        }
        self.bias -= self.step * g[g.len() - 1];
        Ok(e)
    }
}

/// `y = act(u^H ctanh(W z + b) + c)` with `act = ctanh` unless the output
/// layer is linear.
#[derive(Debug, Clone)]
pub struct Mlp {
    input_len: usize,
    hidden_weights: Vec<Complex64>,
    hidden_bias: Vec<Complex64>,
    out_weights: Vec<Complex64>,
    out_bias: Complex64,
    step: f64,
    linear_output: bool,
}

struct Forward {
    hidden: Vec<Complex64>,
    y: Complex64,
}

impl Mlp {
    pub fn new(input_len: usize, hidden: usize, step: f64, rng: &mut SeededRng) -> Result<Self> {
        check_step(step)?;
        if hidden == 0 {
            return Err(Error::InvalidParameter("MLP needs at least one hidden node".into()));
        }
        let mut draw = |n: usize| -> Vec<Complex64> { (0..n).map(|_| uniform_complex(rng)).collect() };
        let hidden_weights = draw(hidden * input_len);
        let hidden_bias = draw(hidden);
        let out_weights = draw(hidden);
        let out_bias = draw(1)[0];
        Ok(Self {
            input_len,
            hidden_weights,
            hidden_bias,
            out_weights,
            out_bias,
            step,
            linear_output: false,
        })
    }

    pub fn linear_output(mut self, linear: bool) -> Self {
        self.linear_output = linear;
        self
    }

    pub fn hidden(&self) -> usize {
        self.hidden_bias.len()
    }

    pub fn input_len(&self) -> usize {
        self.input_len
    }

    /// Flat parameters: hidden weights (row-major, one row per node), hidden
    /// biases, output weights, output bias.
    pub fn parameters(&self) -> Vec<Complex64> {
        let mut p = Vec::with_capacity(self.num_parameters());
        p.extend_from_slice(&self.hidden_weights);
        p.extend_from_slice(&self.hidden_bias);
        p.extend_from_slice(&self.out_weights);
        p.push(self.out_bias);
        p
    }

    pub fn num_parameters(&self) -> usize {
        self.hidden() * (self.input_len + 2) + 1
    }

    pub fn set_parameters(&mut self, p: &[Complex64]) -> Result<()> {
        check_len(self.num_parameters(), p.len())?;
        let h = self.hidden();
        let (w, rest) = p.split_at(h * self.input_len);
        let (b, rest) = rest.split_at(h);
        let (u, c) = rest.split_at(h);
        self.hidden_weights.copy_from_slice(w);
        self.hidden_bias.copy_from_slice(b);
        self.out_weights.copy_from_slice(u);
        self.out_bias = c[0];
        Ok(())
    }

    fn hidden_preactivations<'a>(&'a self, z: &'a [Complex64]) -> impl Iterator<Item = Complex64> + 'a {
        self.hidden_weights
            .chunks_exact(self.input_len.max(1))
            .zip(&self.hidden_bias)
            .map(move |(row, b)| row.iter().zip(z).fold(*b, |acc, (w, x)| acc + w * x))
    }

    fn output_preactivation(&self, hidden: &[Complex64]) -> Complex64 {
        hidden
            .iter()
            .zip(&self.out_weights)
            .fold(self.out_bias, |acc, (h, u)| acc + u.conj() * h)
    }

    fn forward(&self, z: &[Complex64]) -> Forward {
        let hidden: Vec<Complex64> = self.hidden_preactivations(z).map(activate).collect();
        let o = self.output_preactivation(&hidden);
        let y = if self.linear_output { o } else { activate(o) };
        Forward { hidden, y }
    }

    /// Whether any pre-activation at `z` hits the imaginary-part clamp.
    pub fn saturated(&self, z: &[Complex64]) -> bool {
        if self.hidden_preactivations(z).any(is_clamped) {
            return true;
        }
        let hidden: Vec<Complex64> = self.hidden_preactivations(z).map(activate).collect();
        !self.linear_output && is_clamped(self.output_preactivation(&hidden))
    }

    /// `dL/dp*` in [`Mlp::parameters`] order.
    pub fn gradient(&self, z: &[Complex64], d: Complex64) -> Result<Vec<Complex64>> {
        check_len(self.input_len, z.len())?;
        Ok(self.gradient_with_error(z, d).0)
    }

    fn gradient_with_error(&self, z: &[Complex64], d: Complex64) -> (Vec<Complex64>, Complex64) {
        let one = Complex64::new(1.0, 0.0);
        let Forward { hidden, y } = self.forward(z);
        let e = d - y;
        let out_slope = if self.linear_output { one } else { one - y * y };
        let h = self.hidden();
        let mut g = vec![Complex64::new(0.0, 0.0); self.num_parameters()];
        let (gw, rest) = g.split_at_mut(h * self.input_len);
        let (gb, rest) = rest.split_at_mut(h);
        let (gu, gc) = rest.split_at_mut(h);

        // y depends holomorphically on c, b, W and on conj(u)
        let back = -e * out_slope.conj();
        gc[0] = back;
        for j in 0..h {
            let hj = hidden[j];
            gu[j] = -e.conj() * out_slope * hj;
            let node = back * self.out_weights[j] * (one - hj * hj).conj();
            gb[j] = node;
            for (k, x) in z.iter().enumerate() {
                gw[j * self.input_len + k] = node * x.conj();
            }
        }
        (g, e)
    }
}

impl AdaptiveFilter for Mlp {
    fn predict(&self, z: &[Complex64]) -> Result<Complex64> {
        check_len(self.input_len, z.len())?;
        Ok(self.forward(z).y)
    }

    fn update(&mut self, z: &[Complex64], d: Complex64) -> Result<Complex64> {
        check_len(self.input_len, z.len())?;
        let (g, e) = self.gradient_with_error(z, d);
        let h = self.hidden();
        let (gw, rest) = g.split_at(h * self.input_len);
        let (gb, rest) = rest.split_at(h);
        let (gu, gc) = rest.split_at(h);
        let mu = self.step;
        let descend = |p: &mut [Complex64], g: &[Complex64]| {
            for (p, g) in p.iter_mut().zip(g) {
                *p -= mu * g;
            }
        };
        descend(&mut self.hidden_weights, gw);
        descend(&mut self.hidden_bias, gb);
        descend(&mut self.out_weights, gu);
        self.out_bias -= mu * gc[0];
        Ok(e)
    }
}
