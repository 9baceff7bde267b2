//! Path-counting closed forms for the walk distribution.
//!
//! Probabilities at `±(n - 2k)` are written through the Jacobi values
//! `P^{i, n-2k}_{k-1}(2|a|^2 - 1)`, `i = 0, 1`. Those grow like
//! `|a|^(2k-n)` while the prefactor shrinks like `|a|^(2n-4k)`, so both are
//! carried as [`ScaledReal`] and only the final probability is converted
//! back to a plain float.

use rayon::prelude::*;

use crate::coin::{Coin, QubitState};
use crate::error::{Error, Result};
use crate::evolve::Distribution;
use crate::scalar::{c, n as num, tolerance, Real, TwoFold};

pub use crate::scaled::ScaledReal;

/// A Jacobi polynomial value together with its arguments.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiEval<T> {
    pub degree: usize,
    pub nu: T,
    pub mu: T,
    pub x: T,
    pub value: ScaledReal<T>,
}

fn check_jacobi_args<T: Real>(nu: T, mu: T, x: T) -> Result<()> {
    let neg_one = -T::one();
    if !(nu > neg_one) || !(mu > neg_one) {
        return Err(Error::BadParameter(format!(
            "Jacobi parameters must exceed -1 (nu = {nu}, mu = {mu})"
        )));
    }
    if !(x.abs() <= T::one()) {
        return Err(Error::BadParameter(format!("Jacobi argument {x} outside [-1, 1]")));
    }
    Ok(())
}

/// `P_n^{(nu, mu)}(x)` by the three-term recurrence in degree, renormalizing
/// the carried pair every iteration.
pub fn jacobi_scaled<T: Real>(degree: usize, nu: T, mu: T, x: T) -> Result<JacobiEval<T>> {
    check_jacobi_args(nu, mu, x)?;
    let one = T::one();
    let two = c::<T>(2.0);
    let done = |value| {
        Ok(JacobiEval {
            degree,
            nu,
            mu,
            x,
            value,
        })
    };
    if degree == 0 {
        return done(ScaledReal::one());
    }
    // prev = P_{m-1}, cur = P_m, both relative to 2^exponent
    let mut prev = one;
    let mut cur = (nu + one) + (nu + mu + two) * (x - one) / two;
    let mut exponent: i64 = 0;
    let nu_mu_sq = (nu - mu) * (nu + mu);
    for m in 1..degree {
        let m = num::<T>(m);
        let s = two * m + nu + mu;
        let lead = two * (m + one) * (m + nu + mu + one) * s;
        let a = (s + one) * ((s + two) * s * x + nu_mu_sq);
        let b = two * (m + nu) * (m + mu) * (s + two);
        let next = (a * cur - b * prev) / lead;
        prev = cur;
        cur = next;
        let big = cur.abs().max(prev.abs());
        if big != T::zero() && big.is_finite() {
            let e = ScaledReal::from_real(big).exponent();
            prev = crate::scaled::ldexp(prev, -e);
            cur = crate::scaled::ldexp(cur, -e);
            exponent += e;
        }
        if !cur.is_finite() {
            return Err(Error::DivergentScale(format!("Jacobi recurrence at degree {degree}")));
        }
    }
    done(ScaledReal::from_parts(cur, exponent))
}

/// `P_n^{(nu, mu)}(x)` as a plain float.
pub fn jacobi<T: Real>(degree: usize, nu: T, mu: T, x: T) -> Result<T> {
    Ok(jacobi_scaled(degree, nu, mu, x)?.value.to_real())
}

/// Terminating `2F1(-n, b; c; z)`.
///
/// The terms alternate in sign for `z > 0` and can cancel many digits, so
/// the recurrence and the sum are carried in [`TwoFold`] precision.
pub fn hypergeom2f1_poly<T: Real>(degree: usize, b: T, cparam: T, z: T) -> Result<T> {
    Ok(hypergeom2f1_twofold(degree, TwoFold::new(b), TwoFold::new(cparam), TwoFold::new(z))?.to_real())
}

fn hypergeom2f1_twofold<T: Real>(
    degree: usize,
    b: TwoFold<T>,
    cparam: TwoFold<T>,
    z: TwoFold<T>,
) -> Result<TwoFold<T>> {
    let cr = cparam.to_real();
    if cr <= T::zero() && cr == cr.round() {
        return Err(Error::PoleInC(cr.to_f64().unwrap_or(f64::NAN)));
    }
    let int = |k: usize| TwoFold::new(num::<T>(k));
    let mut t = TwoFold::new(T::one());
    let mut sum = t;
    for j in 0..degree {
        let jj = int(j);
        t = t * (jj - int(degree)) * (b + jj) / ((cparam + jj) * int(j + 1)) * z;
        sum = sum + t;
    }
    Ok(sum)
}

/// `Γ(n+ν+1) / (Γ(n+1) Γ(ν+1)) = Π_{j=1..n} (ν + j) / j`.
pub fn jacobi_at_one<T: Real>(degree: usize, nu: T) -> T {
    (1..=degree).fold(T::one(), |acc, j| {
        let j = num::<T>(j);
        acc * (nu + j) / j
    })
}

/// `P_n^{(nu, mu)}(x)` through its hypergeometric representation.
///
/// For `x < 0` the reflection `P_n^{(nu, mu)}(x) = (-1)^n P_n^{(mu, nu)}(-x)`
/// keeps the series argument `(1 - x)/2` at most `1/2`.
pub fn jacobi_hypergeometric<T: Real>(degree: usize, nu: T, mu: T, x: T) -> Result<T> {
    check_jacobi_args(nu, mu, x)?;
    if x < T::zero() {
        let sign = if degree.is_multiple_of(2) { T::one() } else { -T::one() };
        return Ok(sign * jacobi_hypergeometric(degree, mu, nu, -x)?);
    }
    let one = TwoFold::new(T::one());
    let b = TwoFold::new(num::<T>(degree)) + TwoFold::new(nu) + TwoFold::new(mu) + one;
    let z = (one - TwoFold::new(x)) * TwoFold::new(c(0.5));
    let series = hypergeom2f1_twofold(degree, b, TwoFold::new(nu) + one, z)?;
    Ok(jacobi_at_one(degree, nu) * series.to_real())
}

fn binomial<T: Real>(top: usize, k: usize) -> TwoFold<T> {
    if k > top {
        return TwoFold::zero();
    }
    let k = k.min(top - k);
    (0..k).fold(TwoFold::new(T::one()), |acc, j| {
        acc * TwoFold::new(num::<T>(top - j)) / TwoFold::new(num::<T>(j + 1))
    })
}

/// Which Jacobi sum identity to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SumIdentity {
    /// Without the `1/γ` weight; Jacobi parameter `ν = 0`.
    Plain,
    /// With the `1/γ` weight; Jacobi parameter `ν = 1` and an extra `1/k`.
    InverseGamma,
}

impl SumIdentity {
    pub fn from_index(which: u8) -> Result<Self> {
        match which {
            0 => Ok(SumIdentity::Plain),
            1 => Ok(SumIdentity::InverseGamma),
            other => Err(Error::DomainError(format!("identity index {other} is not 0 or 1"))),
        }
    }
}

fn check_k<T: Real>(coin: &Coin<T>, n: usize, k: usize) -> Result<()> {
    if !coin.is_nondegenerate() {
        return Err(Error::CoinDegenerate);
    }
    if k < 1 || k > n / 2 {
        return Err(Error::DomainError(format!("k = {k} outside 1..={} for n = {n}", n / 2)));
    }
    Ok(())
}

/// Both sides of the Jacobi sum identity at `(k, n)`.
///
/// The left side is the binomial sum over `γ = 1..k` of
/// `(-|b|^2/|a|^2)^(γ-1) C(k-1, γ-1) C(n-k-1, γ-1)` (times `1/γ` for
/// [`SumIdentity::InverseGamma`]); the right side is the Jacobi form.
pub fn sum_identity_check<T: Real>(k: usize, n: usize, coin: &Coin<T>, which: SumIdentity) -> Result<(T, T)> {
    check_k(coin, n, k)?;
    let a2 = coin.abs_a_sqr();
    let a2w = TwoFold::new(a2);
    // |b|^2 is taken as 1 - |a|^2 so both sides see the same coin
    let ratio = -(TwoFold::new(T::one()) - a2w) / a2w;
    let lhs = (1..=k)
        .map(|g| {
            let w = ratio.powi((g - 1) as u32) * binomial::<T>(k - 1, g - 1) * binomial::<T>(n - k - 1, g - 1);
            match which {
                SumIdentity::Plain => w,
                SumIdentity::InverseGamma => w / TwoFold::new(num::<T>(g)),
            }
        })
        .fold(TwoFold::zero(), |acc, w| acc + w)
        .to_real();

    let x = c::<T>(2.0) * a2 - T::one();
    let mu = num::<T>(n - 2 * k);
    let scale = ScaledReal::from_real(a2).powi(-((k - 1) as i64));
    let rhs = match which {
        SumIdentity::Plain => jacobi_scaled(k - 1, T::zero(), mu, x)?.value * scale,
        SumIdentity::InverseGamma => {
            jacobi_scaled(k - 1, T::one(), mu, x)?.value * scale * ScaledReal::from_real(T::one() / num::<T>(k))
        }
    };
    Ok((lhs, rhs.to_real()))
}

/// Rounding-level negatives are zeroed; anything larger is left visible.
fn clamp_probability<T: Real>(p: T) -> T {
    if p < T::zero() && p > -tolerance::<T>(1e-14) {
        T::zero()
    } else {
        p
    }
}

/// Probabilities at the two light-cone edges, `(P(n), P(-n))`.
pub fn prob_extremes<T: Real>(coin: &Coin<T>, state: &QubitState<T>, n: usize) -> Result<(T, T)> {
    if n == 0 {
        return Err(Error::DomainError("extreme probabilities need n >= 1".into()));
    }
    let (a2, b2) = (coin.abs_a_sqr(), coin.abs_b_sqr());
    let (al2, be2) = (state.alpha.norm_sqr(), state.beta.norm_sqr());
    let cross = state.cross_term(coin);
    let pref = ScaledReal::from_real(a2).powi((n - 1) as i64);
    let right = pref * ScaledReal::from_real(b2 * al2 + a2 * be2 - cross);
    let left = pref * ScaledReal::from_real(a2 * al2 + b2 * be2 + cross);
    Ok((clamp_probability(right.to_real()), clamp_probability(left.to_real())))
}

/// Probabilities at `+(n - 2k)` and `-(n - 2k)` from the combined Jacobi
/// form, for `1 <= k <= n/2`.
pub fn prob_at<T: Real>(coin: &Coin<T>, state: &QubitState<T>, n: usize, k: usize) -> Result<(T, T)> {
    check_k(coin, n, k)?;
    let one = T::one();
    let two = c::<T>(2.0);
    let (a2, b2) = (coin.abs_a_sqr(), coin.abs_b_sqr());
    let arg = two * a2 - one;
    let mu = num::<T>(n - 2 * k);
    let j0 = jacobi_scaled(k - 1, T::zero(), mu, arg)?.value;
    let j1 = jacobi_scaled(k - 1, one, mu, arg)?.value;
    if !j0.is_finite() || !j1.is_finite() {
        return Err(Error::DivergentScale(format!("Jacobi values at n = {n}, k = {k}")));
    }
    // bring both to a common exponent
    let e = j0.exponent().max(j1.exponent());
    let p0 = crate::scaled::ldexp(j0.mantissa(), j0.exponent() - e);
    let p1 = crate::scaled::ldexp(j1.mantissa(), j1.exponent() - e);

    // x = k/n enters as the ratios below
    let (nf, kf, rest) = (num::<T>(n), num::<T>(k), num::<T>(n - k));
    let inv_x = nf / kf;
    let even = (kf * kf + rest * rest) / (kf * kf) * p1 * p1 - two * inv_x * p1 * p0 + two / b2 * p0 * p0;
    let cross = state.cross_term(coin);
    let imbalance = state.imbalance();
    let drift = -inv_x * ((a2 - b2) * imbalance + two * cross) * p1 * p1 - two * (imbalance - cross / b2) * p0 * p1;
    let odd = num::<T>(n - 2 * k) / kf * drift;

    let pref = ScaledReal::from_real(a2).powi(n as i64 - 2 * k as i64 - 1)
        * ScaledReal::from_real(b2 * b2 / two)
        * ScaledReal::one().scale2(2 * e);
    let plus = pref * ScaledReal::from_real(even + odd);
    let minus = pref * ScaledReal::from_real(even - odd);
    if !plus.is_finite() || !minus.is_finite() {
        return Err(Error::DivergentScale(format!("bracket at n = {n}, k = {k}")));
    }
    Ok((clamp_probability(plus.to_real()), clamp_probability(minus.to_real())))
}

/// Full distribution at time `n` assembled from the closed forms.
pub fn closed_distribution<T: Real>(coin: &Coin<T>, state: &QubitState<T>, n: usize) -> Result<Distribution<T>> {
    if !coin.is_nondegenerate() {
        return Err(Error::CoinDegenerate);
    }
    if n == 0 {
        return Distribution::new(0, vec![0], vec![T::one()]);
    }
    let (right, left) = prob_extremes(coin, state, n)?;
    let inner: Vec<(T, T)> = (1..=n / 2)
        .into_par_iter()
        .map(|k| prob_at(coin, state, n, k))
        .collect::<Result<_>>()?;

    // index i <-> position -n + 2i; k <-> n - 2k (plus) and -(n - 2k) (minus)
    let mut probs = vec![T::zero(); n + 1];
    probs[0] = left;
    probs[n] = right;
    for (k, &(plus, minus)) in (1..).zip(&inner) {
        if 2 * k == n {
            debug_assert!((plus - minus).abs() < c(1e-12));
            probs[k] = plus;
        } else {
            probs[n - k] = plus;
            probs[k] = minus;
        }
    }
    let support = (0..=n).map(|i| 2 * i as i64 - n as i64).collect();
    Distribution::new(n, support, probs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coin::{make_coin, make_state, named_coin};
    use crate::evolve::run;
    use approx::assert_relative_eq;
    use num_complex::Complex;

    fn had() -> Coin<f64> {
        named_coin("hadamard").unwrap()
    }

    #[test]
    fn jacobi_low_degree_and_endpoint() {
        assert_eq!(jacobi(0, 0.3, 7.0, -0.4).unwrap(), 1.0);
        assert_eq!(jacobi(3, 1.0, 2.0, 1.0).unwrap(), 4.0);
        // P_1^{(nu,mu)}(x) = (nu+1) + (nu+mu+2)(x-1)/2
        assert_relative_eq!(jacobi(1, 0.5, 2.0, 0.2).unwrap(), 1.5 + 4.5 * (-0.4), epsilon = 1e-15);
        // Legendre P_2(x) = (3x^2 - 1)/2
        assert_relative_eq!(
            jacobi(2, 0.0, 0.0, 0.3).unwrap(),
            (3.0 * 0.09 - 1.0) / 2.0,
            epsilon = 1e-15
        );
        assert_relative_eq!(jacobi_at_one(3, 1.0f64), 4.0, epsilon = 1e-15);
    }

    #[test]
    fn jacobi_matches_hypergeometric_form() {
        let r = jacobi(5, 1.0, 10.0, 0.0).unwrap();
        let h = jacobi_hypergeometric(5, 1.0, 10.0, 0.0).unwrap();
        assert_relative_eq!(r, h, max_relative = 1e-12);
        // frozen from a 40-digit evaluation of the terminating series
        assert_relative_eq!(r, 7.59375, max_relative = 1e-12);
    }

    #[test]
    fn jacobi_rejects_bad_parameters() {
        assert!(matches!(jacobi(3, -1.0, 0.0, 0.0), Err(Error::BadParameter(_))));
        assert!(matches!(jacobi(3, 0.0, -1.5, 0.0), Err(Error::BadParameter(_))));
        assert!(matches!(jacobi(3, 0.0, 0.0, 1.5), Err(Error::BadParameter(_))));
    }

    #[test]
    fn hypergeometric_small_cases() {
        assert_eq!(hypergeom2f1_poly(7, 2.5, 1.5, 0.0).unwrap(), 1.0);
        assert_relative_eq!(
            hypergeom2f1_poly(1, 3.0, 2.0, 0.4).unwrap(),
            1.0 - 3.0 * 0.4 / 2.0,
            epsilon = 1e-15
        );
        // 1 - 6/2 * 0.5 + (2*1)(3*4)/(2*3*2) * 0.25 = 1 - 1.5 + 0.5
        assert_eq!(hypergeom2f1_poly(2, 3.0, 2.0, 0.5).unwrap(), 0.0);
        assert!(matches!(hypergeom2f1_poly(2, 3.0, -1.0, 0.5), Err(Error::PoleInC(_))));
        assert!(matches!(hypergeom2f1_poly(2, 3.0, 0.0, 0.5), Err(Error::PoleInC(_))));
    }

    #[test]
    fn sum_identities_small() {
        for which in [SumIdentity::Plain, SumIdentity::InverseGamma] {
            let (l, r) = sum_identity_check(1, 9, &had(), which).unwrap();
            assert_eq!((l, r), (1.0, 1.0));
            let (l, r) = sum_identity_check(3, 10, &had(), which).unwrap();
            assert!((l - r).abs() < 1e-10, "{l} vs {r}");
        }
        assert!(matches!(
            sum_identity_check(6, 10, &had(), SumIdentity::Plain),
            Err(Error::DomainError(_))
        ));
        assert!(matches!(
            sum_identity_check(0, 10, &had(), SumIdentity::Plain),
            Err(Error::DomainError(_))
        ));
        assert!(SumIdentity::from_index(2).is_err());
    }

    #[test]
    fn extremes_match_amplitude_evolution() {
        let (r, l) = prob_extremes(&had(), &QubitState::left(), 4).unwrap();
        assert_relative_eq!(r, 0.0625, epsilon = 1e-15);
        assert_relative_eq!(l, 0.0625, epsilon = 1e-15);
        let rot = named_coin::<f64>("rotation(pi/3)").unwrap();
        let d = run(&rot, &QubitState::right(), 2);
        let (r, l) = prob_extremes(&rot, &QubitState::right(), 2).unwrap();
        assert_relative_eq!(r, d.prob(2), epsilon = 1e-14);
        assert_relative_eq!(l, d.prob(-2), epsilon = 1e-14);
    }

    #[test]
    fn prob_at_matches_amplitude_evolution() {
        let d = run(&had(), &QubitState::left(), 4);
        let (p, m) = prob_at(&had(), &QubitState::left(), 4, 1).unwrap();
        assert!((p - d.prob(2)).abs() < 1e-10);
        assert!((m - d.prob(-2)).abs() < 1e-10);

        let (p, m) = prob_at(&had(), &QubitState::symmetric(), 4, 2).unwrap();
        assert!((p - m).abs() < 1e-12);

        let rot = named_coin::<f64>("rotation(pi/3)").unwrap();
        let st = make_state(Complex::new(0.6, 0.0), Complex::new(0.0, 0.8)).unwrap();
        let d = run(&rot, &st, 20);
        let (p, m) = prob_at(&rot, &st, 20, 5).unwrap();
        assert!((p - d.prob(10)).abs() < 1e-9);
        assert!((m - d.prob(-10)).abs() < 1e-9);
    }

    #[test]
    fn closed_distribution_small_and_degenerate() {
        let d = closed_distribution(&had(), &QubitState::left(), 2).unwrap();
        assert_eq!(d.support(), &[-2, 0, 2]);
        for (got, want) in d.probs().iter().zip([0.25, 0.5, 0.25]) {
            assert!((got - want).abs() < 1e-15);
        }
        let id = named_coin::<f64>("identity").unwrap();
        assert_eq!(
            closed_distribution(&id, &QubitState::left(), 5),
            Err(Error::CoinDegenerate)
        );
    }

    #[test]
    fn closed_distribution_tracks_evolution_for_complex_coin() {
        let coin = make_coin(
            Complex::new(0.3, 0.4),
            Complex::new(0.0, -(0.75f64).sqrt()),
            Complex::new(0.6, 0.8),
        )
        .unwrap();
        let st = make_state(Complex::new(0.28, -0.96), Complex::new(0.0, 0.0)).unwrap();
        for n in [1, 2, 3, 17, 64, 101] {
            let a = closed_distribution(&coin, &st, n).unwrap();
            let b = run(&coin, &st, n);
            assert!(a.max_abs_diff(&b) < 1e-9, "n = {n}");
        }
    }

    #[test]
    fn closed_distribution_large_n_stays_normalized() {
        let d = closed_distribution(&had(), &QubitState::symmetric(), 4000).unwrap();
        assert!((d.total() - 1.0).abs() < 1e-9);
        // edge probabilities of 2^-4000 underflow to zero instead of NaN
        assert_eq!(d.prob(4000), 0.0);
    }
}
