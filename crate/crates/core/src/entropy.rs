//! Tsallis, Rényi, Shannon and min-entropies, and the five conditional
//! Rényi entropies of a walk whose initial state is drawn from a prior.
//!
//! Logarithms are base 2. Zero probabilities contribute nothing to power
//! sums at any order (`0^α := 0`, including `α = 0`), so order 0 counts the
//! strict support.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::coin::{make_state, Coin, QubitState};
use crate::complex::parse_complex;
use crate::error::{Error, Result};
use crate::evolve::{run, Distribution};
use crate::scalar::{c, compensated_sum, n as num, tolerance, Real};

/// Entropy order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Order<T> {
    /// `α ∈ [0, ∞) \ {1}`.
    Finite(T),
    /// `α → 1`.
    Shannon,
    /// `α → ∞`.
    Min,
}

impl<T: Real> Order<T> {
    pub fn finite(alpha: T) -> Result<Self> {
        check_finite_order(alpha)?;
        Ok(Order::Finite(alpha))
    }

    /// The finite order value, if any.
    pub fn value(&self) -> Option<T> {
        match self {
            Order::Finite(a) => Some(*a),
            _ => None,
        }
    }
}

impl<T: Real> FromStr for Order<T> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "shannon" => Ok(Order::Shannon),
            "min" | "inf" | "infinity" => Ok(Order::Min),
            other => {
                let v: f64 = other.parse().map_err(|_| Error::Parse {
                    input: s.to_string(),
                    reason: "expected a number, `shannon` or `min`".into(),
                })?;
                Order::finite(c(v))
            }
        }
    }
}

impl<T: Real> fmt::Display for Order<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(a) => write!(f, "{a}"),
            Order::Shannon => f.write_str("shannon"),
            Order::Min => f.write_str("min"),
        }
    }
}

pub(crate) fn check_finite_order<T: Real>(alpha: T) -> Result<()> {
    if !(alpha >= T::zero()) || alpha == T::one() || !alpha.is_finite() {
        return Err(Error::BadOrder(alpha.to_f64().unwrap_or(f64::NAN)));
    }
    Ok(())
}

/// The five conditional Rényi entropies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    /// Average of the per-outcome entropies.
    C,
    /// Joint entropy minus the entropy of the condition.
    JA,
    /// Worst case over outcomes.
    RW,
    /// Arimoto.
    A,
    /// Hayashi.
    H,
}

impl Variant {
    pub const ALL: [Variant; 5] = [Variant::C, Variant::JA, Variant::RW, Variant::A, Variant::H];

    pub fn name(&self) -> &'static str {
        match self {
            Variant::C => "C",
            Variant::JA => "JA",
            Variant::RW => "RW",
            Variant::A => "A",
            Variant::H => "H",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "C" => Ok(Variant::C),
            "JA" => Ok(Variant::JA),
            "RW" => Ok(Variant::RW),
            "A" => Ok(Variant::A),
            "H" => Ok(Variant::H),
            _ => Err(Error::Parse {
                input: s.to_string(),
                reason: "variant must be one of C, JA, RW, A, H".into(),
            }),
        }
    }
}

/// Finite set of initial states with prior weights.
#[derive(Debug, Clone, PartialEq)]
pub struct EnsemblePrior<T> {
    entries: Vec<(QubitState<T>, T)>,
}

impl<T: Real> EnsemblePrior<T> {
    pub fn new(entries: Vec<(QubitState<T>, T)>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::Invalid("ensemble needs at least one state".into()));
        }
        if let Some((_, w)) = entries.iter().find(|(_, w)| !(*w >= T::zero()) || !w.is_finite()) {
            return Err(Error::Invalid(format!("negative or non-finite weight {w}")));
        }
        let total = compensated_sum(entries.iter().map(|(_, w)| *w));
        if (total - T::one()).abs() > tolerance::<T>(1e-12) {
            return Err(Error::NotNormalized(total.to_f64().unwrap_or(f64::NAN)));
        }
        Ok(EnsemblePrior { entries })
    }

    pub fn singleton(state: QubitState<T>) -> Self {
        EnsemblePrior {
            entries: vec![(state, T::one())],
        }
    }

    /// Equal weights over `states`.
    pub fn uniform(states: Vec<QubitState<T>>) -> Result<Self> {
        let w = T::one() / num::<T>(states.len().max(1));
        Self::new(states.into_iter().map(|s| (s, w)).collect())
    }

    pub fn entries(&self) -> &[(QubitState<T>, T)] {
        &self.entries
    }

    pub fn weights(&self) -> Vec<T> {
        self.entries.iter().map(|(_, w)| *w).collect()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Parses `[{"alpha": "re+imj", "beta": "re+imj", "weight": w}, ...]`.
    pub fn from_json(text: &str) -> Result<Self> {
        #[derive(serde::Deserialize)]
        struct Wire {
            alpha: String,
            beta: String,
            weight: f64,
        }
        let wire: Vec<Wire> = serde_json::from_str(text).map_err(|e| Error::Parse {
            input: "ensemble json".into(),
            reason: e.to_string(),
        })?;
        let entries = wire
            .into_iter()
            .map(|w| {
                Ok((
                    make_state(parse_complex(&w.alpha)?, parse_complex(&w.beta)?)?,
                    c(w.weight),
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(entries)
    }

    pub fn to_json(&self) -> String {
        use crate::complex::format_complex;
        let items: Vec<String> = self
            .entries
            .iter()
            .map(|(s, w)| {
                format!(
                    "{{\"alpha\": \"{}\", \"beta\": \"{}\", \"weight\": {:.16e}}}",
                    format_complex(s.alpha),
                    format_complex(s.beta),
                    w
                )
            })
            .collect();
        format!("[{}]", items.join(", "))
    }
}

/// `Σ p^α` over the positive entries, largest first, with `p^α` formed as
/// `2^(α log2 p)`.
pub fn power_sum<T: Real>(probs: &[T], alpha: T) -> T {
    let mut pos: Vec<T> = probs.iter().copied().filter(|p| *p > T::zero()).collect();
    pos.sort_by(|a, b| b.partial_cmp(a).unwrap_or(std::cmp::Ordering::Equal));
    compensated_sum(pos.into_iter().map(|p| (alpha * p.log2()).exp2()))
}

/// Tsallis entropy of a probability vector.
pub fn tsallis_of<T: Real>(probs: &[T], alpha: T) -> Result<T> {
    check_finite_order(alpha)?;
    Ok((power_sum(probs, alpha) - T::one()) / (T::one() - alpha))
}

/// Rényi entropy (bits) of a probability vector.
pub fn renyi_of<T: Real>(probs: &[T], order: Order<T>) -> T {
    match order {
        Order::Finite(alpha) => power_sum(probs, alpha).log2() / (T::one() - alpha),
        Order::Shannon => -compensated_sum(probs.iter().filter(|p| **p > T::zero()).map(|&p| p * p.log2())),
        Order::Min => {
            let max = probs.iter().copied().fold(T::zero(), T::max);
            -max.log2()
        }
    }
}

/// Tsallis entropy of order `alpha`.
pub fn tsallis<T: Real>(dist: &Distribution<T>, alpha: T) -> Result<T> {
    tsallis_of(dist.probs(), alpha)
}

/// Rényi entropy (bits); Shannon and min-entropy at the limiting orders.
pub fn renyi<T: Real>(dist: &Distribution<T>, order: Order<T>) -> T {
    renyi_of(dist.probs(), order)
}

/// Tsallis entropy recovered from the Rényi entropy of the same order.
pub fn tsallis_from_renyi<T: Real>(r: T, alpha: T) -> Result<T> {
    check_finite_order(alpha)?;
    let one_minus = T::one() - alpha;
    Ok(((one_minus * r).exp2() - T::one()) / one_minus)
}

fn check_variant_order<T: Real>(variant: Variant, alpha: T) -> Result<()> {
    check_finite_order(alpha)?;
    if variant == Variant::A && alpha == T::zero() {
        return Err(Error::VariantDomain {
            variant: "A",
            alpha: 0.0,
        });
    }
    Ok(())
}

/// Conditional entropy from per-state Rényi values `R_α^φ` and prior
/// weights, in the reduced form that only needs the per-state entropies.
///
/// The same expressions give the limiting constants when fed the limiting
/// per-state values.
pub fn conditional_from_values<T: Real>(variant: Variant, weights: &[T], values: &[T], alpha: T) -> Result<T> {
    check_variant_order(variant, alpha)?;
    if weights.len() != values.len() || weights.is_empty() {
        return Err(Error::Invalid(
            "weights and per-state values must be nonempty and equal in length".into(),
        ));
    }
    let one_minus = T::one() - alpha;
    let pairs = weights.iter().copied().zip(values.iter().copied());
    let zero = T::zero();
    Ok(match variant {
        Variant::C => compensated_sum(pairs.map(|(w, r)| w * r)),
        Variant::JA => {
            let inner = compensated_sum(pairs.map(|(w, r)| {
                if w > zero {
                    (alpha * w.log2() + one_minus * r).exp2()
                } else {
                    zero
                }
            }));
            inner.log2() / one_minus - renyi_of(weights, Order::Finite(alpha))
        }
        Variant::RW => {
            let it = values.iter().copied();
            if alpha < T::one() {
                it.fold(T::neg_infinity(), T::max)
            } else {
                it.fold(T::infinity(), T::min)
            }
        }
        Variant::A => {
            let inner = compensated_sum(pairs.map(|(w, r)| w * (one_minus / alpha * r).exp2()));
            alpha / one_minus * inner.log2()
        }
        Variant::H => {
            let inner = compensated_sum(pairs.map(|(w, r)| w * (one_minus * r).exp2()));
            inner.log2() / one_minus
        }
    })
}

/// Conditional Rényi entropy of the walk position at time `n` given the
/// initial state drawn from `prior`.
pub fn conditional_renyi<T: Real>(
    variant: Variant,
    coin: &Coin<T>,
    prior: &EnsemblePrior<T>,
    n: usize,
    alpha: T,
) -> Result<T> {
    check_variant_order(variant, alpha)?;
    let values: Vec<T> = prior
        .entries()
        .par_iter()
        .map(|(state, _)| renyi(&run(coin, state, n), Order::Finite(alpha)))
        .collect();
    conditional_from_values(variant, &prior.weights(), &values, alpha)
}

/// Conditional Rényi entropy evaluated from its definition over explicit
/// per-outcome conditional distributions.
pub fn conditional_renyi_direct<T: Real>(
    variant: Variant,
    per_outcome: &[(T, Distribution<T>)],
    alpha: T,
) -> Result<T> {
    check_variant_order(variant, alpha)?;
    let Some((_, first)) = per_outcome.first() else {
        return Err(Error::Invalid("no outcomes".into()));
    };
    if per_outcome.iter().any(|(_, d)| d.time() != first.time()) {
        return Err(Error::Invalid("conditional distributions must share one time".into()));
    }
    let weights: Vec<T> = per_outcome.iter().map(|(w, _)| *w).collect();
    if weights.iter().any(|w| !(*w >= T::zero())) {
        return Err(Error::Invalid("negative weight".into()));
    }
    let total = compensated_sum(weights.iter().copied());
    if (total - T::one()).abs() > tolerance::<T>(1e-12) {
        return Err(Error::NotNormalized(total.to_f64().unwrap_or(f64::NAN)));
    }
    let one_minus = T::one() - alpha;
    let order = Order::Finite(alpha);
    Ok(match variant {
        Variant::C => compensated_sum(per_outcome.iter().map(|(w, d)| *w * renyi(d, order))),
        Variant::JA => {
            let joint: Vec<T> = per_outcome
                .iter()
                .flat_map(|(w, d)| d.probs().iter().map(move |p| *w * *p))
                .collect();
            renyi_of(&joint, order) - renyi_of(&weights, order)
        }
        Variant::RW => {
            let best = per_outcome
                .iter()
                .map(|(_, d)| power_sum(d.probs(), alpha).log2())
                .fold(T::neg_infinity(), T::max);
            best / one_minus
        }
        Variant::A => {
            let inner = compensated_sum(
                per_outcome
                    .iter()
                    .map(|(w, d)| *w * power_sum(d.probs(), alpha).powf(T::one() / alpha)),
            );
            alpha / one_minus * inner.log2()
        }
        Variant::H => {
            let inner = compensated_sum(per_outcome.iter().map(|(w, d)| *w * power_sum(d.probs(), alpha)));
            inner.log2() / one_minus
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coin::named_coin;
    use approx::assert_abs_diff_eq;

    fn dist(probs: &[f64]) -> Distribution<f64> {
        let n = probs.len() - 1;
        let support = (0..=n).map(|i| 2 * i as i64 - n as i64).collect();
        Distribution::new(n, support, probs.to_vec()).unwrap()
    }

    #[test]
    fn tsallis_examples() {
        assert_abs_diff_eq!(tsallis(&dist(&[0.5, 0.5]), 2.0).unwrap(), 0.5, epsilon = 1e-15);
        for a in [0.0, 0.5, 2.0, 7.0] {
            assert_eq!(tsallis(&dist(&[0.0, 1.0, 0.0]), a).unwrap(), 0.0);
        }
        assert_abs_diff_eq!(tsallis(&dist(&[0.25, 0.5, 0.25]), 2.0).unwrap(), 0.625, epsilon = 1e-15);
        assert!(matches!(tsallis(&dist(&[0.5, 0.5]), 1.0), Err(Error::BadOrder(_))));
        assert!(matches!(tsallis(&dist(&[0.5, 0.5]), -0.5), Err(Error::BadOrder(_))));
    }

    #[test]
    fn renyi_examples() {
        let uni = dist(&[0.25; 4]);
        assert_abs_diff_eq!(renyi(&uni, Order::Finite(2.0)), 2.0, epsilon = 1e-15);
        let point = dist(&[0.0, 1.0]);
        for o in [
            Order::Finite(0.0),
            Order::Finite(0.5),
            Order::Finite(3.0),
            Order::Shannon,
            Order::Min,
        ] {
            assert_eq!(renyi(&point, o), 0.0);
        }
        let d = dist(&[0.25, 0.5, 0.25]);
        assert_eq!(renyi(&d, Order::Min), 1.0);
        assert_abs_diff_eq!(renyi(&d, Order::Shannon), 1.5, epsilon = 1e-15);
        assert_abs_diff_eq!(renyi(&d, Order::Finite(2.0)), -(0.375f64).log2(), epsilon = 1e-15);
        // order 0 counts strictly positive sites only
        assert_eq!(renyi(&dist(&[0.5, 0.0, 0.5, 0.0]), Order::Finite(0.0)), 1.0);
    }

    #[test]
    fn correspondence_examples() {
        assert_eq!(tsallis_from_renyi(0.0, 0.3).unwrap(), 0.0);
        assert_abs_diff_eq!(tsallis_from_renyi(2.0, 2.0).unwrap(), 0.75, epsilon = 1e-15);
        assert!(tsallis_from_renyi(2.0, 1.0).is_err());
    }

    #[test]
    fn order_parsing() {
        assert_eq!("0.5".parse::<Order<f64>>().unwrap(), Order::Finite(0.5));
        assert_eq!("Shannon".parse::<Order<f64>>().unwrap(), Order::Shannon);
        assert_eq!("min".parse::<Order<f64>>().unwrap(), Order::Min);
        assert!(matches!("1".parse::<Order<f64>>(), Err(Error::BadOrder(_))));
        assert!("x".parse::<Order<f64>>().is_err());
        assert_eq!("ja".parse::<Variant>().unwrap(), Variant::JA);
        assert!("B".parse::<Variant>().is_err());
    }

    #[test]
    fn prior_validation_and_json() {
        assert!(EnsemblePrior::<f64>::new(vec![]).is_err());
        assert!(EnsemblePrior::new(vec![(QubitState::<f64>::left(), 0.7)]).is_err());
        let p = EnsemblePrior::<f64>::from_json(
            r#"[{"alpha": "1+0j", "beta": "0", "weight": 0.25}, {"alpha": "0.6", "beta": "0.8j", "weight": 0.75}]"#,
        )
        .unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(p.entries()[1].0.beta, num_complex::Complex::new(0.0, 0.8));
        assert_eq!(EnsemblePrior::from_json(&p.to_json()).unwrap(), p);
        assert!(EnsemblePrior::<f64>::from_json(r#"[{"alpha": "1", "beta": "1", "weight": 1}]"#).is_err());
    }

    #[test]
    fn singleton_prior_collapses() {
        let coin = named_coin::<f64>("hadamard").unwrap();
        let st = QubitState::symmetric();
        let prior = EnsemblePrior::singleton(st);
        let r = renyi(&run(&coin, &st, 12), Order::Finite(0.5));
        for v in Variant::ALL {
            let got = conditional_renyi(v, &coin, &prior, 12, 0.5).unwrap();
            assert_abs_diff_eq!(got, r, epsilon = 1e-13);
        }
    }

    #[test]
    fn rw_takes_the_extreme() {
        let coin = named_coin::<f64>("hadamard").unwrap();
        let prior = EnsemblePrior::uniform(vec![QubitState::left(), QubitState::symmetric()]).unwrap();
        let r: Vec<f64> = prior
            .entries()
            .iter()
            .map(|(s, _)| renyi(&run(&coin, s, 10), Order::Finite(0.5)))
            .collect();
        let got = conditional_renyi(Variant::RW, &coin, &prior, 10, 0.5).unwrap();
        assert_eq!(got, r[0].max(r[1]));
        let per: Vec<(f64, Distribution<f64>)> = prior.entries().iter().map(|(s, w)| (*w, run(&coin, s, 10))).collect();
        let direct = conditional_renyi_direct(Variant::RW, &per, 0.5).unwrap();
        assert_abs_diff_eq!(got, direct, epsilon = 1e-12);
    }

    #[test]
    fn arimoto_rejects_order_zero() {
        let coin = named_coin::<f64>("hadamard").unwrap();
        let prior = EnsemblePrior::singleton(QubitState::left());
        assert!(matches!(
            conditional_renyi(Variant::A, &coin, &prior, 4, 0.0),
            Err(Error::VariantDomain { .. })
        ));
        let per = vec![(1.0, run(&coin, &QubitState::left(), 4))];
        assert!(matches!(
            conditional_renyi_direct(Variant::A, &per, 0.0),
            Err(Error::VariantDomain { .. })
        ));
        assert!(conditional_renyi(Variant::H, &coin, &prior, 4, 0.0).is_ok());
    }

    #[test]
    fn shared_distribution_gives_unconditional_value() {
        let d = run(
            &named_coin::<f64>("rotation(pi/3)").unwrap(),
            &QubitState::symmetric(),
            15,
        );
        let per = vec![(0.2, d.clone()), (0.5, d.clone()), (0.3, d.clone())];
        for alpha in [0.5, 2.0] {
            let r = renyi(&d, Order::Finite(alpha));
            for v in Variant::ALL {
                let got = conditional_renyi_direct(v, &per, alpha).unwrap();
                assert_abs_diff_eq!(got, r, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn c_variant_is_weighted_average() {
        let a = dist(&[0.5, 0.5]);
        let b = dist(&[0.25, 0.75]);
        let per = vec![(0.3, a.clone()), (0.7, b.clone())];
        let want = 0.3 * renyi(&a, Order::Finite(2.0)) + 0.7 * renyi(&b, Order::Finite(2.0));
        assert_abs_diff_eq!(
            conditional_renyi_direct(Variant::C, &per, 2.0).unwrap(),
            want,
            epsilon = 1e-15
        );
    }

    #[test]
    fn direct_checks_inputs() {
        let a = dist(&[0.5, 0.5]);
        let b = dist(&[0.25, 0.5, 0.25]);
        assert!(conditional_renyi_direct(Variant::H, &[(0.5, a.clone()), (0.5, b)], 0.5).is_err());
        assert!(conditional_renyi_direct(Variant::H, &[(0.5, a.clone()), (0.4, a)], 0.5).is_err());
        assert!(conditional_renyi_direct::<f64>(Variant::H, &[], 0.5).is_err());
    }
}
