//! Arbitrary-precision rational helpers shared across the kernel.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Parse an exact rational from `"p/q"` or plain integer `"p"` form.
///
/// Readers accept integers without a `/1` suffix; the result is always in
/// lowest terms. A zero denominator is an error, never a panic.
pub fn parse_rational(s: &str) -> Result<BigRational, String> {
    let s = s.trim();
    if s.is_empty() {
        return Err("empty rational".into());
    }
    let (num_s, den_s) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num: BigInt = num_s
        .trim()
        .parse()
        .map_err(|_| format!("bad numerator {num_s:?}"))?;
    let den: BigInt = den_s
        .trim()
        .parse()
        .map_err(|_| format!("bad denominator {den_s:?}"))?;
    if den.is_zero() {
        return Err("zero denominator".into());
    }
    Ok(BigRational::new(num, den))
}

/// Lowest-terms string form: `"p/q"`, or `"p"` when the denominator is one.
pub fn format_rational(x: &BigRational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn rat_floor(x: &BigRational) -> BigInt {
    x.floor().to_integer()
}

pub fn rat_ceil(x: &BigRational) -> BigInt {
    x.ceil().to_integer()
}

pub fn rat_of_int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Largest integer `s >= 0` with `s*s <= n`. Requires `n >= 0`.
pub fn int_sqrt(n: &BigInt) -> BigInt {
    assert!(!n.is_negative(), "int_sqrt of negative");
    n.sqrt()
}

/// All integers `x` with `(x + t)^2 <= rho`, as an inclusive range.
///
/// Returns `None` when the range is empty (in particular when `rho < 0`).
/// This is the exact bound step of the sublevel enumeration: with
/// `t = a/b` and `rho = p/q` the condition is `(b x + a)^2 <= p b^2 / q`,
/// so `|b x + a|` is bounded by an integer square root.
pub fn quadratic_integer_range(rho: &BigRational, t: &BigRational) -> Option<(BigInt, BigInt)> {
    if rho.is_negative() {
        return None;
    }
    let a = t.numer();
    let b = t.denom();
    let p = rho.numer();
    let q = rho.denom();
    // |Y|^2 <= p*b^2/q with Y = b*x + a integer, so Y^2 <= floor(p*b^2/q).
    let bound = int_sqrt(&(p * b * b / q));
    let lo = rat_ceil(&BigRational::new(-&bound - a, b.clone()));
    let hi = rat_floor(&BigRational::new(&bound - a, b.clone()));
    if lo > hi {
        None
    } else {
        Some((lo, hi))
    }
}

/// The rational with smallest denominator (then smallest numerator) inside
/// the closed interval `[lo, hi]`. Classic Stern–Brocot walk.
pub fn simplest_in_interval(lo: &BigRational, hi: &BigRational) -> BigRational {
    assert!(lo <= hi);
    if lo == hi {
        return lo.clone();
    }
    if lo.is_negative() && !hi.is_negative() {
        return BigRational::zero();
    }
    if hi.is_negative() {
        return -simplest_in_interval(&-hi.clone(), &-lo.clone());
    }
    // 0 < lo < hi from here on.
    fn go(lo: &BigRational, hi: &BigRational) -> BigRational {
        let fl = rat_floor(lo);
        if &BigRational::from_integer(fl.clone()) == lo {
            return lo.clone();
        }
        if rat_floor(hi) > fl || &BigRational::from_integer(rat_floor(hi)) == hi {
            return BigRational::from_integer(fl + 1u32);
        }
        // Recurse on the fractional parts, inverted and swapped.
        let fl = BigRational::from_integer(fl);
        let inner = go(
            &(BigRational::one() / (hi - &fl)),
            &(BigRational::one() / (lo - &fl)),
        );
        fl + BigRational::one() / inner
    }
    go(lo, hi)
}

/// Certified enclosure of `sqrt(x)`: returns `(lo, hi)` with
/// `lo^2 <= x <= hi^2` and `hi - lo <= 2^-bits`. Requires `x >= 0`.
pub fn sqrt_interval(x: &BigRational, bits: u32) -> (BigRational, BigRational) {
    assert!(!x.is_negative(), "sqrt of negative rational");
    if x.is_zero() {
        return (BigRational::zero(), BigRational::zero());
    }
    // sqrt(p/q) = sqrt(p*q)/q; scale by 4^bits so the integer sqrt carries
    // `bits` fractional bits.
    let p = x.numer();
    let q = x.denom();
    let scaled = p * q << (2 * bits as usize);
    let s = int_sqrt(&scaled);
    let den = q << (bits as usize);
    let lo = BigRational::new(s.clone(), den.clone());
    let hi = BigRational::new(s + 1u32, den);
    (lo, hi)
}

/// Render `x` with a fixed number of decimal places, rounding half away
/// from zero (used for density columns).
pub fn to_decimal_string(x: &BigRational, decimals: usize) -> String {
    let neg = x.is_negative();
    let ax = x.abs();
    let scale = BigInt::from(10u32).pow(decimals as u32);
    let scaled = &ax * BigRational::from_integer(scale.clone());
    let rounded = rat_floor(&(scaled + rat(1, 2)));
    let int_part = &rounded / &scale;
    let frac_part = &rounded % &scale;
    let sign = if neg { "-" } else { "" };
    if decimals == 0 {
        format!("{sign}{int_part}")
    } else {
        format!(
            "{sign}{int_part}.{:0>width$}",
            frac_part.to_string(),
            width = decimals
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["3/4", "-7/5", "12", "0", "-3"] {
            let r = parse_rational(s).unwrap();
            assert_eq!(format_rational(&r), s);
        }
        assert_eq!(format_rational(&parse_rational("6/8").unwrap()), "3/4");
        assert_eq!(format_rational(&parse_rational("4/2").unwrap()), "2");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn quadratic_range_examples() {
        // (x + 1/2)^2 <= 9/4  =>  -2 <= x <= 1
        let (lo, hi) = quadratic_integer_range(&rat(9, 4), &rat(1, 2)).unwrap();
        assert_eq!(lo, BigInt::from(-2));
        assert_eq!(hi, BigInt::from(1));
        // Empty when rho negative.
        assert!(quadratic_integer_range(&rat(-1, 4), &rat(0, 1)).is_none());
        // x^2 <= 2 => -1..=1
        let (lo, hi) = quadratic_integer_range(&rat(2, 1), &rat(0, 1)).unwrap();
        assert_eq!((lo, hi), (BigInt::from(-1), BigInt::from(1)));
    }

    #[test]
    fn simplest_rational() {
        let s = simplest_in_interval(&rat(333, 1000), &rat(334, 1000));
        assert_eq!(s, rat(1, 3));
        let s = simplest_in_interval(&rat(-1, 3), &rat(1, 7));
        assert_eq!(s, rat(0, 1));
        let s = simplest_in_interval(&rat(5, 2), &rat(5, 2));
        assert_eq!(s, rat(5, 2));
    }

    #[test]
    fn sqrt_enclosure() {
        let (lo, hi) = sqrt_interval(&rat(2, 1), 64);
        assert!(&lo * &lo <= rat(2, 1));
        assert!(&hi * &hi >= rat(2, 1));
        assert!(&hi - &lo <= BigRational::new(BigInt::one(), BigInt::from(2u8).pow(64)));
    }

    #[test]
    fn decimal_formatting() {
        assert_eq!(to_decimal_string(&rat(1, 8), 4), "0.1250");
        assert_eq!(to_decimal_string(&rat(1, 3), 4), "0.3333");
        assert_eq!(to_decimal_string(&rat(-1, 2), 2), "-0.50");
        assert_eq!(to_decimal_string(&rat(12345, 100), 1), "123.5");
    }
}
