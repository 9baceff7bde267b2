//! Weak-limit density of `X_n / n` and the limiting entropy constants.
//!
//! For `abcd != 0` the scaled position converges to
//!
//! ```text
//! f(x) = |b| (1 - c1 x) / (π (1 - x^2) sqrt(|a|^2 - x^2)),   |x| < |a|,
//! c1   = |α|^2 - |β|^2 + (a α conj(bβ) + conj(aα) b β) / |a|^2.
//! ```
//!
//! `∫ f^α` is computed after `x = |a| sin θ`, which turns the square-root
//! endpoint singularity into a factor `(|a| cos θ)^(1-α)`; tanh-sinh handles
//! what remains for `1 < α < 2`. For `α >= 2` the integral diverges.

use crate::coin::{Coin, QubitState};
use crate::entropy::{check_finite_order, conditional_from_values, EnsemblePrior, Variant};
use crate::error::{Error, Result};
use crate::quadrature::{Quadrature, TanhSinh};
use crate::scalar::{c, tolerance, Real};

/// Largest accepted quadrature error estimate.
pub const QUADRATURE_ERROR_LIMIT: f64 = 1e-8;

/// Parameters of the limit density for one coin and initial state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitDensity<T> {
    /// `|a|`, half-width of the support.
    pub abs_a: T,
    /// `|b|`
    pub abs_b: T,
    /// `c1`, the coefficient of the odd part.
    pub drift: T,
}

pub fn make_limit_density<T: Real>(coin: &Coin<T>, state: &QubitState<T>) -> Result<LimitDensity<T>> {
    if !coin.is_nondegenerate() {
        return Err(Error::CoinDegenerate);
    }
    let a2 = coin.abs_a_sqr();
    let drift = state.imbalance() + state.cross_term(coin) / a2;
    let ld = LimitDensity {
        abs_a: a2.sqrt(),
        abs_b: coin.abs_b_sqr().sqrt(),
        drift,
    };
    // 1 - c1 x is linear, so checking both support edges covers the interior
    if T::one() - drift.abs() * ld.abs_a < -tolerance::<T>(1e-12) {
        return Err(Error::Invalid(format!(
            "limit density negative near the support edge (c1 = {drift})"
        )));
    }
    Ok(ld)
}

/// `f(x)`; zero on and outside the support edges.
pub fn density_at<T: Real>(ld: &LimitDensity<T>, x: T) -> T {
    if !(x.abs() < ld.abs_a) {
        return T::zero();
    }
    let one = T::one();
    ld.abs_b * (one - ld.drift * x) / (T::PI() * (one - x * x) * (ld.abs_a * ld.abs_a - x * x).sqrt())
}

impl<T: Real> LimitDensity<T> {
    /// `f(|a| sin θ) · |a| cos θ` split as `(g(θ), |a| cos θ)` with
    /// `f(|a| sin θ) = g(θ) / (|a| cos θ)`; `dist` is the distance of `θ`
    /// from the nearer of `±π/2`.
    fn angular_parts(&self, theta: T, dist: T) -> (T, T) {
        let one = T::one();
        let s = theta.sin();
        let g = self.abs_b * (one - self.drift * self.abs_a * s) / (T::PI() * (one - self.abs_a * self.abs_a * s * s));
        (g.max(T::zero()), self.abs_a * dist.sin())
    }

    /// Raw quadrature of `∫ f^α dx` without the convergence gate.
    pub fn quadrature_falpha(&self, alpha: T) -> Quadrature<T> {
        let half_pi = T::FRAC_PI_2();
        TanhSinh::default().integrate(-half_pi, half_pi, |theta, dist| {
            let (g, width) = self.angular_parts(theta, dist);
            if alpha == T::zero() {
                width
            } else {
                g.powf(alpha) * width.powf(T::one() - alpha)
            }
        })
    }
}

/// `∫ f(x)^α dx` over the support, for `0 <= α < 2` (`α = 1` is allowed and
/// gives the normalization).
pub fn integral_falpha<T: Real>(ld: &LimitDensity<T>, alpha: T) -> Result<Quadrature<T>> {
    if !(alpha >= T::zero()) || !alpha.is_finite() {
        return Err(Error::BadOrder(alpha.to_f64().unwrap_or(f64::NAN)));
    }
    if alpha >= c(2.0) {
        return Err(Error::DivergentIntegral(alpha.to_f64().unwrap_or(f64::NAN)));
    }
    let q = ld.quadrature_falpha(alpha);
    let limit = tolerance::<T>(QUADRATURE_ERROR_LIMIT);
    if !(q.error_estimate <= limit) || !q.value.is_finite() {
        return Err(Error::NonConvergedQuadrature {
            estimate: q.error_estimate.to_f64().unwrap_or(f64::NAN),
            limit: limit.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(q)
}

/// `R_α(∞) = log2(∫ f^α) / (1 - α)`.
pub fn renyi_limit<T: Real>(ld: &LimitDensity<T>, alpha: T) -> Result<T> {
    check_finite_order(alpha)?;
    let i = integral_falpha(ld, alpha)?.value;
    Ok(i.log2() / (T::one() - alpha))
}

/// `(∫ f^α - 1) / (1 - α)`, the limit of the rescaled Tsallis entropy.
pub fn tsallis_limit_const<T: Real>(ld: &LimitDensity<T>, alpha: T) -> Result<T> {
    check_finite_order(alpha)?;
    let i = integral_falpha(ld, alpha)?.value;
    Ok((i - T::one()) / (T::one() - alpha))
}

/// Limit of `R^variant_α(X_n | Y) - log2(n/2)` for a prior over initial
/// states.
pub fn conditional_renyi_limit<T: Real>(
    variant: Variant,
    coin: &Coin<T>,
    prior: &EnsemblePrior<T>,
    alpha: T,
) -> Result<T> {
    check_finite_order(alpha)?;
    if variant == Variant::A && alpha == T::zero() {
        return Err(Error::VariantDomain {
            variant: "A",
            alpha: 0.0,
        });
    }
    let values = prior
        .entries()
        .iter()
        .map(|(state, _)| renyi_limit(&make_limit_density(coin, state)?, alpha))
        .collect::<Result<Vec<T>>>()?;
    conditional_from_values(variant, &prior.weights(), &values, alpha)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coin::named_coin;
    use approx::assert_abs_diff_eq;

    fn had() -> Coin<f64> {
        named_coin("hadamard").unwrap()
    }

    #[test]
    fn parameters() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let ld = make_limit_density(&had(), &QubitState::symmetric()).unwrap();
        assert_abs_diff_eq!(ld.abs_a, h, epsilon = 1e-15);
        assert_abs_diff_eq!(ld.abs_b, h, epsilon = 1e-15);
        assert_abs_diff_eq!(ld.drift, 0.0, epsilon = 1e-15);
        let ld = make_limit_density(&had(), &QubitState::left()).unwrap();
        assert_abs_diff_eq!(ld.drift, 1.0, epsilon = 1e-15);
        let rot = named_coin::<f64>("rotation(pi/3)").unwrap();
        let ld = make_limit_density(&rot, &QubitState::left()).unwrap();
        assert_abs_diff_eq!(ld.abs_a, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(ld.drift, 1.0, epsilon = 1e-15);
        let id = named_coin::<f64>("identity").unwrap();
        assert_eq!(make_limit_density(&id, &QubitState::left()), Err(Error::CoinDegenerate));
    }

    #[test]
    fn density_values() {
        let ld = make_limit_density(&had(), &QubitState::symmetric()).unwrap();
        assert_eq!(density_at(&ld, 0.75), 0.0);
        assert_eq!(density_at(&ld, -0.9), 0.0);
        assert_eq!(density_at(&ld, ld.abs_a), 0.0);
        assert_abs_diff_eq!(density_at(&ld, 0.0), std::f64::consts::FRAC_1_PI, epsilon = 1e-15);
        for x in [0.1, 0.3, 0.55, 0.7] {
            assert_abs_diff_eq!(density_at(&ld, x), density_at(&ld, -x), epsilon = 1e-15);
        }
    }

    #[test]
    fn integral_special_orders() {
        let ld = make_limit_density(&had(), &QubitState::left()).unwrap();
        let i0 = integral_falpha(&ld, 0.0).unwrap();
        assert_abs_diff_eq!(i0.value, 2f64.sqrt(), epsilon = 1e-10);
        let i1 = integral_falpha(&ld, 1.0).unwrap();
        assert_abs_diff_eq!(i1.value, 1.0, epsilon = 1e-10);
        assert!(matches!(integral_falpha(&ld, 2.0), Err(Error::DivergentIntegral(_))));
        assert!(matches!(integral_falpha(&ld, 3.5), Err(Error::DivergentIntegral(_))));
        assert!(matches!(integral_falpha(&ld, -0.1), Err(Error::BadOrder(_))));
    }

    #[test]
    fn limits_at_order_zero() {
        let ld = make_limit_density(&had(), &QubitState::left()).unwrap();
        assert_abs_diff_eq!(renyi_limit(&ld, 0.0).unwrap(), 0.5, epsilon = 1e-10);
        assert_abs_diff_eq!(
            tsallis_limit_const(&ld, 0.0).unwrap(),
            2f64.sqrt() - 1.0,
            epsilon = 1e-10
        );
        let rot = named_coin::<f64>("rotation(pi/3)").unwrap();
        let ld = make_limit_density(&rot, &QubitState::left()).unwrap();
        assert_abs_diff_eq!(renyi_limit(&ld, 0.0).unwrap(), 0.0, epsilon = 1e-10);
        assert_abs_diff_eq!(tsallis_limit_const(&ld, 0.0).unwrap(), 0.0, epsilon = 1e-10);
        assert!(matches!(renyi_limit(&ld, 1.0), Err(Error::BadOrder(_))));
    }

    #[test]
    fn symmetric_hadamard_half_order() {
        // frozen from a 40-digit mpmath quadrature
        let ld = make_limit_density(&had(), &QubitState::symmetric()).unwrap();
        let i = integral_falpha(&ld, 0.5).unwrap();
        assert_abs_diff_eq!(i.value, 1.0877029578602693, epsilon = 1e-10);
        assert_abs_diff_eq!(renyi_limit(&ld, 0.5).unwrap(), 0.24256924602204996, epsilon = 1e-10);
        assert_abs_diff_eq!(
            tsallis_limit_const(&ld, 0.5).unwrap(),
            2.0 * (i.value - 1.0),
            epsilon = 1e-12
        );
        let i = integral_falpha(&ld, 1.5).unwrap();
        assert_abs_diff_eq!(i.value, 1.3750146148883495, epsilon = 1e-9);
    }

    #[test]
    fn conditional_limits() {
        let coin = had();
        let single = EnsemblePrior::singleton(QubitState::symmetric());
        let r = renyi_limit(&make_limit_density(&coin, &QubitState::symmetric()).unwrap(), 0.5).unwrap();
        for v in Variant::ALL {
            assert_abs_diff_eq!(
                conditional_renyi_limit(v, &coin, &single, 0.5).unwrap(),
                r,
                epsilon = 1e-12
            );
        }
        let pair = EnsemblePrior::uniform(vec![QubitState::left(), QubitState::symmetric()]).unwrap();
        let r0 = renyi_limit(&make_limit_density(&coin, &QubitState::left()).unwrap(), 0.5).unwrap();
        assert_eq!(
            conditional_renyi_limit(Variant::RW, &coin, &pair, 0.5).unwrap(),
            r0.max(r)
        );
        assert_eq!(conditional_renyi_limit(Variant::RW, &coin, &pair, 1.5).unwrap(), {
            let r0 = renyi_limit(&make_limit_density(&coin, &QubitState::left()).unwrap(), 1.5).unwrap();
            let r1 = renyi_limit(&make_limit_density(&coin, &QubitState::symmetric()).unwrap(), 1.5).unwrap();
            r0.min(r1)
        });
        let h = conditional_renyi_limit(Variant::H, &coin, &pair, 0.5).unwrap();
        let want = 2.0 * ((0.5 * r0).exp2() / 2.0 + (0.5 * r).exp2() / 2.0).log2();
        assert_abs_diff_eq!(h, want, epsilon = 1e-12);
        assert!(matches!(
            conditional_renyi_limit(Variant::A, &coin, &pair, 0.0),
            Err(Error::VariantDomain { .. })
        ));
    }
}
