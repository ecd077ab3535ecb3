//! Exact rational scalars. All table entries, weights and coefficients are
//! arbitrary-precision rationals; nothing in this crate touches floating point.

use crate::error::{Error, Result};
use num::bigint::BigInt;
use num::traits::{One, Signed, Zero};

pub use num::BigRational as Rational;

/// Integer as a rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// p/q as a rational. Panics on q = 0.
pub fn frac(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn is_zero(r: &Rational) -> bool {
    r.is_zero()
}

pub fn is_negative(r: &Rational) -> bool {
    r.is_negative()
}

pub fn is_positive(r: &Rational) -> bool {
    r.is_positive()
}

/// Parse `p/q` or a bare integer, exactly.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    s.parse::<Rational>()
        .map_err(|e| Error::Parse(format!("bad rational {s:?}: {e}")))
}

/// Canonical text form: `p/q`, or just `p` when the denominator is 1.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// Text form with an explicit denominator, `p/q` even for integers.
pub fn format_rational_explicit(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Generalized binomial coefficient C(n, k) for integer n (possibly negative),
/// as an exact rational: n(n-1)...(n-k+1)/k!.
pub fn binomial(n: i64, k: u32) -> Rational {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for j in 0..k {
        num *= BigInt::from(n - j as i64);
        den *= BigInt::from(j as i64 + 1);
    }
    Rational::new(num, den)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["2/3", "-7/15", "5", "0", "-12"] {
            let r = parse_rational(s).unwrap();
            assert_eq!(format_rational(&r), s);
        }
        // non-canonical input normalizes
        assert_eq!(format_rational(&parse_rational("4/6").unwrap()), "2/3");
        assert_eq!(format_rational(&parse_rational("3/1").unwrap()), "3");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn explicit_format_keeps_denominator() {
        assert_eq!(format_rational_explicit(&rat(-4)), "-4/1");
        assert_eq!(format_rational_explicit(&frac(1, 3)), "1/3");
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(5, 2), rat(10));
        assert_eq!(binomial(3, 3), rat(1));
        assert_eq!(binomial(2, 3), rat(0));
        // generalized: C(-1, 2) = (-1)(-2)/2 = 1
        assert_eq!(binomial(-1, 2), rat(1));
        assert_eq!(binomial(-4, 3), rat(-20));
    }
}
