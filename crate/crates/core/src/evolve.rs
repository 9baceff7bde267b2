//! Amplitude-level simulation of the walk started at the origin.
//!
//! Amplitudes live on the `n + 1` sites of parity `n`; index `i` holds
//! position `-n + 2i`. Each step applies `P` to the amplitude arriving from
//! the right neighbour and `Q` to the one arriving from the left.

use num_complex::Complex;

use crate::coin::{Coin, QubitState};
use crate::error::{Error, Result};
use crate::scalar::{c, compensated_sum, Real};

/// Two-component wavefunction at time `n`.
#[derive(Debug, Clone, PartialEq)]
pub struct AmplitudeField<T> {
    time: usize,
    /// `(psi_L, psi_R)` per parity site, leftmost first.
    amplitudes: Vec<(Complex<T>, Complex<T>)>,
    /// Natural log of `(1 + defect)^n`, the factor by which the stored
    /// coin's rounding inflates total probability (see
    /// [`Coin::norm_defect`]).
    log_gain: T,
}

/// Position distribution at a fixed time.
#[derive(Debug, Clone, PartialEq)]
pub struct Distribution<T> {
    time: usize,
    support: Vec<i64>,
    probs: Vec<T>,
}

/// Field at time 0: the state sits at the origin.
pub fn initial_field<T: Real>(state: &QubitState<T>) -> AmplitudeField<T> {
    AmplitudeField {
        time: 0,
        amplitudes: vec![(state.alpha, state.beta)],
        log_gain: T::zero(),
    }
}

/// Advances the field by one time step.
pub fn step<T: Real>(field: &AmplitudeField<T>, coin: &Coin<T>) -> AmplitudeField<T> {
    let (a, b, cc, d) = (coin.a(), coin.b(), coin.c(), coin.d());
    let old = &field.amplitudes;
    let zero = Complex::new(T::zero(), T::zero());
    let mut next = vec![(zero, zero); old.len() + 1];
    for (j, slot) in next.iter_mut().enumerate() {
        if let Some(&(l, r)) = old.get(j) {
            slot.0 = a * l + b * r;
        }
        if j >= 1 {
            let (l, r) = old[j - 1];
            slot.1 = cc * l + d * r;
        }
    }
    AmplitudeField {
        time: field.time + 1,
        amplitudes: next,
        log_gain: field.log_gain + coin.norm_defect().ln_1p(),
    }
}

/// Position distribution after `n` steps from `state`.
pub fn run<T: Real>(coin: &Coin<T>, state: &QubitState<T>, n: usize) -> Distribution<T> {
    let mut field = initial_field(state);
    for _ in 0..n {
        field = step(&field, coin);
    }
    field.distribution()
}

impl<T: Real> AmplitudeField<T> {
    pub fn time(&self) -> usize {
        self.time
    }

    pub fn len(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amplitudes.is_empty()
    }

    pub fn position(&self, index: usize) -> i64 {
        2 * index as i64 - self.time as i64
    }

    /// Amplitude pair at `x`, or `None` off the parity lattice / light cone.
    pub fn amplitude(&self, x: i64) -> Option<(Complex<T>, Complex<T>)> {
        let shifted = x + self.time as i64;
        if shifted < 0 || shifted % 2 != 0 {
            return None;
        }
        self.amplitudes.get((shifted / 2) as usize).copied()
    }

    pub fn amplitudes(&self) -> &[(Complex<T>, Complex<T>)] {
        &self.amplitudes
    }

    /// `|psi_L(x)|^2 + |psi_R(x)|^2` per site, corrected for the stored
    /// coin's rounding gain.
    pub fn probabilities(&self) -> Vec<T> {
        let scale = (-self.log_gain).exp();
        self.amplitudes
            .iter()
            .map(|(l, r)| (l.norm_sqr() + r.norm_sqr()) * scale)
            .collect()
    }

    pub fn total_probability(&self) -> T {
        compensated_sum(self.probabilities())
    }

    pub fn distribution(&self) -> Distribution<T> {
        Distribution {
            time: self.time,
            support: (0..self.amplitudes.len()).map(|i| self.position(i)).collect(),
            probs: self.probabilities(),
        }
    }
}

impl<T: Real> Distribution<T> {
    /// Validates and wraps a distribution over parity sites of time `n`.
    pub fn new(time: usize, support: Vec<i64>, probs: Vec<T>) -> Result<Self> {
        if support.len() != probs.len() {
            return Err(Error::Invalid(format!(
                "support has {} entries but probs has {}",
                support.len(),
                probs.len()
            )));
        }
        let nn = time as i64;
        for w in support.windows(2) {
            if w[0] >= w[1] {
                return Err(Error::Invalid("support must be strictly increasing".into()));
            }
        }
        if let Some(&x) = support.iter().find(|&&x| x < -nn || x > nn || (x + nn) % 2 != 0) {
            return Err(Error::Invalid(format!(
                "position {x} is not a parity site at time {time}"
            )));
        }
        if let Some(p) = probs.iter().find(|p| !(**p >= T::zero()) || !p.is_finite()) {
            return Err(Error::Invalid(format!("bad probability {p}")));
        }
        let total = compensated_sum(probs.iter().copied());
        if (total - T::one()).abs() > crate::scalar::tolerance::<T>(1e-9) {
            return Err(Error::NotNormalized(total.to_f64().unwrap_or(f64::NAN)));
        }
        Ok(Distribution { time, support, probs })
    }

    pub fn time(&self) -> usize {
        self.time
    }

    pub fn support(&self) -> &[i64] {
        &self.support
    }

    pub fn probs(&self) -> &[T] {
        &self.probs
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    /// Probability at `x`; zero off the support.
    pub fn prob(&self, x: i64) -> T {
        match self.support.binary_search(&x) {
            Ok(i) => self.probs[i],
            Err(_) => T::zero(),
        }
    }

    pub fn total(&self) -> T {
        compensated_sum(self.probs.iter().copied())
    }

    /// Largest pointwise difference against `other`, over the union of supports.
    pub fn max_abs_diff(&self, other: &Distribution<T>) -> T {
        let mut worst = T::zero();
        for (&x, &p) in self.support.iter().zip(&self.probs) {
            worst = worst.max((p - other.prob(x)).abs());
        }
        for (&x, &p) in other.support.iter().zip(&other.probs) {
            worst = worst.max((p - self.prob(x)).abs());
        }
        worst
    }

    /// `position,probability` rows with a header; 17 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("position,probability\n");
        for (x, p) in self.support.iter().zip(&self.probs) {
            out.push_str(&format!("{x},{p:.16e}\n"));
        }
        out
    }

    /// `{"n": .., "support": [..], "probs": [..]}` with 17 significant digits.
    pub fn to_json(&self) -> String {
        let support: Vec<String> = self.support.iter().map(|x| x.to_string()).collect();
        let probs: Vec<String> = self.probs.iter().map(|p| format!("{p:.16e}")).collect();
        format!(
            "{{\"n\": {}, \"support\": [{}], \"probs\": [{}]}}",
            self.time,
            support.join(", "),
            probs.join(", ")
        )
    }

    pub fn from_json(text: &str) -> Result<Self> {
        #[derive(serde::Deserialize)]
        struct Wire {
            n: usize,
            support: Vec<i64>,
            probs: Vec<f64>,
        }
        let wire: Wire = serde_json::from_str(text).map_err(|e| Error::Parse {
            input: "distribution json".into(),
            reason: e.to_string(),
        })?;
        Self::new(wire.n, wire.support, wire.probs.into_iter().map(c).collect())
    }

    pub fn from_csv(time: usize, text: &str) -> Result<Self> {
        let mut support = Vec::new();
        let mut probs = Vec::new();
        for (lineno, line) in text.lines().enumerate().skip(1) {
            if line.trim().is_empty() {
                continue;
            }
            let bad = |reason: &str| Error::Parse {
                input: format!("csv line {}", lineno + 1),
                reason: reason.to_string(),
            };
            let (x, p) = line.split_once(',').ok_or_else(|| bad("expected two columns"))?;
            support.push(x.trim().parse().map_err(|_| bad("bad position"))?);
            probs.push(c(p.trim().parse::<f64>().map_err(|_| bad("bad probability"))?));
        }
        Self::new(time, support, probs)
    }
}
