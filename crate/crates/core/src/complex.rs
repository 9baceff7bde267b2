//! Text form of complex literals: `re`, `imj`, `re+imj`, `re-imj` (`i` is
//! accepted in place of `j`).

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Real;

fn parse_real<T: Real>(s: &str, whole: &str) -> Result<T> {
    let v: f64 = s.parse().map_err(|_| Error::Parse {
        input: whole.to_string(),
        reason: format!("`{s}` is not a number"),
    })?;
    Ok(crate::scalar::c(v))
}

/// Parses a complex literal such as `0.70710678+0j`, `-0.6j` or `1`.
pub fn parse_complex<T: Real>(text: &str) -> Result<Complex<T>> {
    let s: String = text.chars().filter(|ch| !ch.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::Parse {
            input: text.to_string(),
            reason: "empty".into(),
        });
    }
    let Some(body) = s.strip_suffix(['j', 'i', 'J', 'I']) else {
        return Ok(Complex::new(parse_real(&s, text)?, T::zero()));
    };
    // split at the last sign that is not a leading sign or an exponent sign
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => "1",
        "-" => "-1",
        other => other,
    };
    Ok(Complex::new(parse_real(re, text)?, parse_real(im, text)?))
}

/// Formats a complex number so that [`parse_complex`] reads it back exactly.
pub fn format_complex<T: Real>(z: Complex<T>) -> String {
    let im = z.im;
    if im.is_sign_negative() {
        format!("{:.16e}-{:.16e}j", z.re, -im)
    } else {
        format!("{:.16e}+{:.16e}j", z.re, im)
    }
}
