#![allow(dead_code)]

use matrixwell_core::{Complex64, StateVector};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

const GL5_NODES: [f64; 5] = [
    -0.906_179_845_938_664,
    -0.538_469_310_105_683_1,
    0.0,
    0.538_469_310_105_683_1,
    0.906_179_845_938_664,
];
const GL5_WEIGHTS: [f64; 5] = [
    0.236_926_885_056_189_1,
    0.478_628_670_499_366_5,
    0.568_888_888_888_888_9,
    0.478_628_670_499_366_5,
    0.236_926_885_056_189_1,
];

/// Composite 5-point Gauss-Legendre rule; independent of the crate's
/// adaptive integrator.
pub fn gauss_legendre<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, panels: usize) -> f64 {
    let h = (b - a) / panels as f64;
    let mut total = 0.0;
    for i in 0..panels {
        let mid = a + (i as f64 + 0.5) * h;
        let inner: f64 = GL5_NODES
            .iter()
            .zip(GL5_WEIGHTS)
            .map(|(&x, w)| w * f(mid + 0.5 * h * x))
            .sum();
        total += 0.5 * h * inner;
    }
    total
}

pub fn psi(l: f64, n: usize, x: f64) -> f64 {
    (2.0 / l).sqrt() * (n as f64 * std::f64::consts::PI * x / l).sin()
}

pub fn dpsi(l: f64, n: usize, x: f64) -> f64 {
    let k = n as f64 * std::f64::consts::PI / l;
    (2.0 / l).sqrt() * k * (k * x).cos()
}

pub fn random_state(rng: &mut ChaCha8Rng, dim: usize, occupied: usize) -> StateVector {
    let mut c = vec![Complex64::new(0.0, 0.0); dim];
    for z in c.iter_mut().take(occupied) {
        *z = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
    }
    StateVector::from_coeffs(c).unwrap()
}

pub fn cabs(z: Complex64) -> f64 {
    z.re.hypot(z.im)
}
