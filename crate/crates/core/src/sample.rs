//! Seeded sampling of coins and initial states.

use num_complex::Complex;
use rand::Rng;

use crate::coin::{make_coin, make_state};
use crate::{Coin, QubitState};

/// Coin with `|a| = cos θ`, `θ` uniform in `[0.05, π/2 - 0.05]`, and uniform
/// phases on `a`, `b` and the determinant; always `abcd != 0`.
pub fn random_coin<R: Rng + ?Sized>(rng: &mut R) -> Coin {
    let theta = rng.gen_range(0.05..(std::f64::consts::FRAC_PI_2 - 0.05));
    let tau = std::f64::consts::TAU;
    let a = Complex::from_polar(theta.cos(), rng.gen_range(0.0..tau));
    let b = Complex::from_polar(theta.sin(), rng.gen_range(0.0..tau));
    let delta = Complex::from_polar(1.0, rng.gen_range(0.0..tau));
    make_coin(a, b, delta).expect("sampled coin is unitary")
}

/// State uniform on the Bloch sphere.
pub fn random_state<R: Rng + ?Sized>(rng: &mut R) -> QubitState {
    let z: f64 = rng.gen_range(-1.0..=1.0);
    let phase = rng.gen_range(0.0..std::f64::consts::TAU);
    let alpha = Complex::new(((1.0 + z) / 2.0).sqrt(), 0.0);
    let beta = Complex::from_polar(((1.0 - z) / 2.0).sqrt(), phase);
    make_state(alpha, beta).expect("sampled state is normalized")
}
