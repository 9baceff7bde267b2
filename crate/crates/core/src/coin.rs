//! Coins, initial chirality states and the `P/Q/R/S` split of a coin.

use num_complex::Complex;

use crate::complex::parse_complex;
use crate::error::{Error, Result};
use crate::scalar::{c, compensated_sum, square_exact, tolerance, Real};

/// 2×2 complex matrix, row-major.
pub type Mat2<T> = [[Complex<T>; 2]; 2];

/// A 2×2 unitary coin `[[a, b], [c, d]]` with determinant `delta`.
///
/// Only `a`, `b` and `delta` are free; `c = -delta * conj(b)` and
/// `d = delta * conj(a)` are derived at construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Coin<T> {
    a: Complex<T>,
    b: Complex<T>,
    c: Complex<T>,
    d: Complex<T>,
    delta: Complex<T>,
}

/// Initial chirality state `alpha |L> + beta |R>`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitState<T> {
    pub alpha: Complex<T>,
    pub beta: Complex<T>,
}

/// `U = P + Q`, plus the auxiliary matrices `R` and `S` used by the
/// path-counting expansion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoinDecomposition<T> {
    /// Left-move weight: top row `(a, b)`.
    pub p: Mat2<T>,
    /// Right-move weight: bottom row `(c, d)`.
    pub q: Mat2<T>,
    /// Top row `(c, d)`.
    pub r: Mat2<T>,
    /// Bottom row `(a, b)`.
    pub s: Mat2<T>,
}

fn zero<T: Real>() -> Complex<T> {
    Complex::new(T::zero(), T::zero())
}

/// Builds the coin determined by `a`, `b` and its determinant `delta`.
pub fn make_coin<T: Real>(a: Complex<T>, b: Complex<T>, delta: Complex<T>) -> Result<Coin<T>> {
    let tol = tolerance::<T>(1e-10);
    let norm = a.norm_sqr() + b.norm_sqr();
    if (norm - T::one()).abs() > tol || !norm.is_finite() {
        return Err(Error::NotNormalized(norm.to_f64().unwrap_or(f64::NAN)));
    }
    let det = delta.norm();
    if (det - T::one()).abs() > tol || !det.is_finite() {
        return Err(Error::BadDeterminant(det.to_f64().unwrap_or(f64::NAN)));
    }
    Ok(Coin {
        a,
        b,
        c: -(delta * b.conj()),
        d: delta * a.conj(),
        delta,
    })
}

/// Looks up a coin by keyword: `hadamard`, `identity`, or `rotation(θ)`
/// with `a = cos θ`, `b = sin θ`, `delta = -1`. The angle accepts a plain
/// number of radians or a multiple of `pi` such as `pi/3` or `2*pi/5`.
pub fn named_coin<T: Real>(name: &str) -> Result<Coin<T>> {
    let key = name.trim().to_ascii_lowercase();
    let re = |x: T| Complex::new(x, T::zero());
    match key.as_str() {
        "hadamard" | "h" => {
            let h = T::FRAC_1_SQRT_2();
            make_coin(re(h), re(h), re(-T::one()))
        }
        "identity" => make_coin(re(T::one()), zero(), re(T::one())),
        _ => {
            let angle = key
                .strip_prefix("rotation(")
                .or_else(|| key.strip_prefix("rot("))
                .and_then(|rest| rest.strip_suffix(')'))
                .ok_or_else(|| Error::UnknownName(name.to_string()))?;
            let theta: T = parse_angle(angle).ok_or_else(|| Error::UnknownName(name.to_string()))?;
            make_coin(re(theta.cos()), re(theta.sin()), re(-T::one()))
        }
    }
}

fn parse_angle<T: Real>(text: &str) -> Option<T> {
    let s: String = text.chars().filter(|ch| !ch.is_whitespace()).collect();
    if let Ok(v) = s.parse::<f64>() {
        return Some(c(v));
    }
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d.parse::<f64>().ok()?),
        None => (s.as_str(), 1.0),
    };
    let factor = match num {
        "pi" | "π" => 1.0,
        _ => num
            .strip_suffix("*pi")
            .or_else(|| num.strip_suffix("pi"))
            .or_else(|| num.strip_suffix("π"))?
            .parse::<f64>()
            .ok()?,
    };
    Some(T::PI() * c(factor) / c(den))
}

/// Builds the initial state `alpha |L> + beta |R>`; stored as given.
pub fn make_state<T: Real>(alpha: Complex<T>, beta: Complex<T>) -> Result<QubitState<T>> {
    let norm = alpha.norm_sqr() + beta.norm_sqr();
    if (norm - T::one()).abs() > tolerance::<T>(1e-10) || !norm.is_finite() {
        return Err(Error::NotNormalized(norm.to_f64().unwrap_or(f64::NAN)));
    }
    Ok(QubitState { alpha, beta })
}

/// Parses `"alpha,beta"` where each component is a complex literal.
pub fn parse_state<T: Real>(text: &str) -> Result<QubitState<T>> {
    let (alpha, beta) = text.split_once(',').ok_or_else(|| Error::Parse {
        input: text.to_string(),
        reason: "expected `alpha,beta`".into(),
    })?;
    make_state(parse_complex(alpha)?, parse_complex(beta)?)
}

/// Splits the coin into the left/right move weights and the auxiliary pair.
pub fn decompose<T: Real>(coin: &Coin<T>) -> CoinDecomposition<T> {
    let z = zero::<T>();
    CoinDecomposition {
        p: [[coin.a, coin.b], [z, z]],
        q: [[z, z], [coin.c, coin.d]],
        r: [[coin.c, coin.d], [z, z]],
        s: [[z, z], [coin.a, coin.b]],
    }
}

impl<T: Real> Coin<T> {
    pub fn a(&self) -> Complex<T> {
        self.a
    }
    pub fn b(&self) -> Complex<T> {
        self.b
    }
    pub fn c(&self) -> Complex<T> {
        self.c
    }
    pub fn d(&self) -> Complex<T> {
        self.d
    }
    pub fn delta(&self) -> Complex<T> {
        self.delta
    }

    pub fn matrix(&self) -> Mat2<T> {
        [[self.a, self.b], [self.c, self.d]]
    }

    /// `abcd != 0`: the condition under which the closed forms and the
    /// limit theorem apply.
    pub fn is_nondegenerate(&self) -> bool {
        let z = T::zero();
        self.a.norm_sqr() > z && self.b.norm_sqr() > z && self.c.norm_sqr() > z && self.d.norm_sqr() > z
    }

    pub fn abs_a_sqr(&self) -> T {
        self.a.norm_sqr()
    }

    pub fn abs_b_sqr(&self) -> T {
        self.b.norm_sqr()
    }

    /// `|a|^2 + |b|^2 - 1` of the stored amplitudes, computed without
    /// rounding loss.
    ///
    /// With `|delta| = 1` the stored matrix equals `sqrt(1 + defect)` times
    /// an exactly unitary matrix, so `n` steps scale total probability by
    /// `(1 + defect)^n`.
    pub fn norm_defect(&self) -> T {
        let (p1, e1) = square_exact(self.a.re);
        let (p2, e2) = square_exact(self.a.im);
        let (p3, e3) = square_exact(self.b.re);
        let (p4, e4) = square_exact(self.b.im);
        compensated_sum([p1, p2, p3, p4, -T::one(), e1, e2, e3, e4])
    }

    /// Maximum deviation from the unitarity relations.
    pub fn unitarity_residual(&self) -> T {
        let one = T::one();
        let r1 = (self.a.norm_sqr() + self.b.norm_sqr() - one).abs();
        let r2 = (self.c.norm_sqr() + self.d.norm_sqr() - one).abs();
        let r3 = (self.a * self.c.conj() + self.b * self.d.conj()).norm();
        let r4 = (self.delta.norm() - one).abs();
        let r5 = (self.a * self.d - self.b * self.c - self.delta).norm();
        r1.max(r2).max(r3).max(r4).max(r5)
    }

    /// Coin of the spatially reflected walk: conjugation by the chirality
    /// swap, `[[d, c], [b, a]]`.
    pub fn mirrored(&self) -> Coin<T> {
        Coin {
            a: self.d,
            b: self.c,
            c: self.b,
            d: self.a,
            delta: self.delta,
        }
    }
}

impl<T: Real> QubitState<T> {
    /// `|L>`
    pub fn left() -> Self {
        QubitState {
            alpha: Complex::new(T::one(), T::zero()),
            beta: zero(),
        }
    }

    /// `|R>`
    pub fn right() -> Self {
        QubitState {
            alpha: zero(),
            beta: Complex::new(T::one(), T::zero()),
        }
    }

    /// `(|L> + i|R>)/sqrt(2)`, the state with a symmetric Hadamard walk.
    pub fn symmetric() -> Self {
        let h = T::FRAC_1_SQRT_2();
        QubitState {
            alpha: Complex::new(h, T::zero()),
            beta: Complex::new(T::zero(), h),
        }
    }

    /// Chirality-swapped state, the initial state of the reflected walk.
    pub fn swapped(&self) -> Self {
        QubitState {
            alpha: self.beta,
            beta: self.alpha,
        }
    }

    /// `a alpha conj(b beta) + conj(a alpha) b beta`, the real cross term
    /// that appears in every closed form.
    pub fn cross_term(&self, coin: &Coin<T>) -> T {
        let x = coin.a * self.alpha * (coin.b * self.beta).conj();
        x.re + x.re
    }

    /// `|alpha|^2 - |beta|^2`
    pub fn imbalance(&self) -> T {
        self.alpha.norm_sqr() - self.beta.norm_sqr()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn cx(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    fn assert_cx(z: Complex<f64>, re: f64, im: f64) {
        assert_abs_diff_eq!(z.re, re, epsilon = 1e-15);
        assert_abs_diff_eq!(z.im, im, epsilon = 1e-15);
    }

    #[test]
    fn hadamard_from_parameters() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let coin = make_coin(cx(h, 0.0), cx(h, 0.0), cx(-1.0, 0.0)).unwrap();
        assert_cx(coin.c(), h, 0.0);
        assert_cx(coin.d(), -h, 0.0);
        assert!(coin.is_nondegenerate());
    }

    #[test]
    fn identity_coin_is_valid_but_degenerate() {
        let coin = make_coin(cx(1.0, 0.0), cx(0.0, 0.0), cx(1.0, 0.0)).unwrap();
        assert_cx(coin.c(), 0.0, 0.0);
        assert_cx(coin.d(), 1.0, 0.0);
        assert!(!coin.is_nondegenerate());
    }

    #[test]
    fn complex_coin_derives_c_and_d() {
        let coin = make_coin(cx(0.8, 0.0), cx(0.0, 0.6), cx(0.0, 1.0)).unwrap();
        assert_cx(coin.c(), -0.6, 0.0);
        assert_cx(coin.d(), 0.0, 0.8);
        assert!(coin.unitarity_residual() < 1e-12);
    }

    #[test]
    #[allow(clippy::approx_constant)]
    fn construction_errors() {
        assert!(matches!(
            make_coin(cx(0.8, 0.0), cx(0.8, 0.0), cx(1.0, 0.0)),
            Err(Error::NotNormalized(_))
        ));
        assert!(matches!(
            make_coin(cx(1.0, 0.0), cx(0.0, 0.0), cx(1.1, 0.0)),
            Err(Error::BadDeterminant(_))
        ));
        assert!(matches!(named_coin::<f64>("grover"), Err(Error::UnknownName(_))));
        assert!(matches!(
            make_state(cx(1.0, 0.0), cx(1.0, 0.0)),
            Err(Error::NotNormalized(_))
        ));
        // user-typed decimals within 1e-10 are accepted
        assert!(make_state(cx(0.70710678118, 0.0), cx(0.70710678118, 0.0)).is_ok());
    }

    #[test]
    fn named_coins() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let had = named_coin::<f64>("hadamard").unwrap();
        assert_cx(had.a(), h, 0.0);
        assert_cx(had.b(), h, 0.0);
        assert_cx(had.c(), h, 0.0);
        assert_cx(had.d(), -h, 0.0);

        let rot = named_coin::<f64>("rotation(pi/4)").unwrap();
        for (x, y) in [
            (rot.a(), had.a()),
            (rot.b(), had.b()),
            (rot.c(), had.c()),
            (rot.d(), had.d()),
        ] {
            assert_abs_diff_eq!((x - y).norm(), 0.0, epsilon = 1e-15);
        }

        let r3 = named_coin::<f64>("rotation(pi/3)").unwrap();
        let s3 = 3f64.sqrt() / 2.0;
        assert_cx(r3.a(), 0.5, 0.0);
        assert_cx(r3.b(), s3, 0.0);
        assert_cx(r3.c(), s3, 0.0);
        assert_cx(r3.d(), -0.5, 0.0);
        let r3b = named_coin::<f64>("rotation(1.0471975511965976)").unwrap();
        assert_abs_diff_eq!((r3b.a() - r3.a()).norm(), 0.0, epsilon = 1e-15);
        let r25 = named_coin::<f64>("rotation(2*pi/5)").unwrap();
        assert_abs_diff_eq!(r25.a().re, (0.4 * std::f64::consts::PI).cos(), epsilon = 1e-15);
    }

    #[test]
    fn states() {
        let l = make_state(cx(1.0, 0.0), cx(0.0, 0.0)).unwrap();
        assert_eq!(l, QubitState::left());
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let s = make_state(cx(h, 0.0), cx(0.0, h)).unwrap();
        assert_eq!(s, QubitState::symmetric());
        let p = parse_state::<f64>("0.6,0.8j").unwrap();
        assert_eq!(p.alpha, cx(0.6, 0.0));
        assert_eq!(p.beta, cx(0.0, 0.8));
        assert!(parse_state::<f64>("0.6").is_err());
    }

    #[test]
    fn decomposition_reassembles_exactly() {
        for coin in [
            named_coin::<f64>("hadamard").unwrap(),
            named_coin("identity").unwrap(),
            make_coin(cx(0.8, 0.0), cx(0.0, 0.6), cx(0.0, 1.0)).unwrap(),
        ] {
            let dec = decompose(&coin);
            let u = coin.matrix();
            for (i, row) in u.iter().enumerate() {
                for (j, entry) in row.iter().enumerate() {
                    assert_eq!(dec.p[i][j] + dec.q[i][j], *entry);
                }
            }
            assert_eq!(dec.p[1], [Complex::new(0.0, 0.0); 2]);
            assert_eq!(dec.q[0], [Complex::new(0.0, 0.0); 2]);
            assert_eq!(dec.r[0], [coin.c(), coin.d()]);
            assert_eq!(dec.s[1], [coin.a(), coin.b()]);
        }
        let id = decompose(&named_coin::<f64>("identity").unwrap());
        assert_eq!(id.p[0], [cx(1.0, 0.0), cx(0.0, 0.0)]);
        assert_eq!(id.q[1], [cx(0.0, 0.0), cx(1.0, 0.0)]);
    }

    #[test]
    fn mirrored_coin_is_a_valid_coin() {
        let coin = make_coin(cx(0.8, 0.0), cx(0.0, 0.6), cx(0.0, 1.0)).unwrap();
        let m = coin.mirrored();
        let rebuilt = make_coin(m.a(), m.b(), m.delta()).unwrap();
        assert_abs_diff_eq!((rebuilt.c() - m.c()).norm(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!((rebuilt.d() - m.d()).norm(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn norm_defect_of_rounded_hadamard() {
        let had = named_coin::<f64>("hadamard").unwrap();
        let d = had.norm_defect();
        assert!(d != 0.0 && d.abs() < 4e-16);
        let id = named_coin::<f64>("identity").unwrap();
        assert_eq!(id.norm_defect(), 0.0);
    }

    #[test]
    fn works_in_single_precision() {
        let coin = named_coin::<f32>("rotation(pi/3)").unwrap();
        assert!(coin.unitarity_residual() < 1e-6);
    }
}
