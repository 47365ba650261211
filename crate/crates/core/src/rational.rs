//! Exact rational helpers shared by every module.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

pub type Rational = BigRational;

pub fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p"` or `"p/q"` with `q > 0`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
        Some((n, d)) => {
            let n = n.trim().parse::<BigInt>().ok()?;
            let d = d.trim().parse::<BigInt>().ok()?;
            if !d.is_positive() {
                return None;
            }
            Some(Rational::new(n, d))
        }
    }
}

/// Formats as `"p"` or `"p/q"`; the form read back by [`parse_rational`].
pub fn fmt_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("3/6"), Some(frac(1, 2)));
        assert_eq!(parse_rational("-4"), Some(q(-4)));
        assert_eq!(parse_rational("1/-2"), None);
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(fmt_rational(&frac(-6, 4)), "-3/2");
        assert_eq!(fmt_rational(&q(7)), "7");
    }
}
