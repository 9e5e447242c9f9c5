//! Rendering exact values into high-precision floats.

use rug::Float;

use crate::exact::{PiScaledRational, Rational};

/// Working precision in bits for a requested number of decimal digits, with
/// guard bits.
pub fn digits_to_bits(decimal_digits: u32) -> u32 {
    (decimal_digits as f64 * std::f64::consts::LOG2_10).ceil() as u32 + 32
}

pub fn rational_to_float(q: &Rational, prec: u32) -> Float {
    let numer = rug::Integer::from_str_radix(&q.numer().to_string(), 10).expect("bigint digits");
    let denom = rug::Integer::from_str_radix(&q.denom().to_string(), 10).expect("bigint digits");
    Float::with_val(prec, rug::Rational::from((numer, denom)))
}

pub fn pi_scaled_to_float(v: &PiScaledRational, prec: u32) -> Float {
    use rug::ops::Pow;
    let coeff = rational_to_float(v.coeff(), prec);
    let pi = Float::with_val(prec, rug::float::Constant::Pi);
    let h = v.pi_half_exp();
    let mut out = coeff * pi.clone().pow(h.div_euclid(2) as i32);
    if h.rem_euclid(2) == 1 {
        out *= pi.sqrt();
    }
    out
}

/// Decimal string with the requested number of significant digits.
pub fn decimal_string(value: &Float, digits: u32) -> String {
    value.to_string_radix(10, Some(digits as usize))
}
