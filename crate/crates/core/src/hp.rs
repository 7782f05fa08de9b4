//! High-precision floating point facade over MPFR ([`rug::Float`]) plus log
//! helpers for big integers whose magnitudes overflow `f64`.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rug::Float;

use crate::exact::Rat;

/// Working precision for transcendental coefficient families and special
/// functions: comfortably above the 128-bit mantissa floor.
pub const PREC: u32 = 192;

pub type Real = Float;

pub fn real(prec: u32, v: f64) -> Real {
    Float::with_val(prec, v)
}

pub fn real_from_bigint(prec: u32, v: &BigInt) -> Real {
    let (sign, bytes) = v.to_bytes_le();
    let mag = rug::Integer::from_digits(&bytes, rug::integer::Order::Lsf);
    let f = Float::with_val(prec, mag);
    if sign == num_bigint::Sign::Minus {
        -f
    } else {
        f
    }
}

pub fn real_from_rat(prec: u32, v: &Rat) -> Real {
    let num = real_from_bigint(prec, v.numer());
    let den = real_from_bigint(prec, v.denom());
    num / den
}

/// Natural log of a positive big integer, accurate to ~1e-14 relative:
/// mantissa/exponent split so magnitudes of any bit length are fine.
pub fn ln_bigint(v: &BigInt) -> f64 {
    if v.is_zero() {
        return f64::NEG_INFINITY;
    }
    let v = v.abs();
    let bits = v.bits();
    if bits <= 63 {
        return (v.to_u64().unwrap() as f64).ln();
    }
    let shift = bits - 53;
    let top = (&v >> shift).to_u64().unwrap() as f64;
    top.ln() + (shift as f64) * std::f64::consts::LN_2
}

/// Natural log of `|v|` for a big rational; `-inf` at zero.
pub fn ln_rat_abs(v: &Rat) -> f64 {
    if v.is_zero() {
        return f64::NEG_INFINITY;
    }
    ln_bigint(v.numer()) - ln_bigint(v.denom())
}

/// Rational to `f64`, robust to magnitudes far outside the `f64` range
/// (saturates to `±inf` / `0` the way the true value would round).
pub fn rat_to_f64(v: &Rat) -> f64 {
    if v.is_zero() {
        return 0.0;
    }
    if v.numer().bits() < 900 && v.denom().bits() < 900 {
        if let Some(x) = v.to_f64() {
            if x.is_finite() {
                return x;
            }
        }
    }
    let ln = ln_rat_abs(v);
    let mag = ln.exp();
    if v.is_negative() {
        -mag
    } else {
        mag
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{big, rat};

    #[test]
    fn ln_bigint_of_huge_power() {
        let v = big(3).pow(2000);
        let expect = 2000.0 * 3.0_f64.ln();
        assert!((ln_bigint(&v) - expect).abs() < 1e-9 * expect);
    }

    #[test]
    fn real_from_rat_roundtrip() {
        let r = rat(-7, 16);
        assert_eq!(real_from_rat(PREC, &r).to_f64(), -0.4375);
    }
}
