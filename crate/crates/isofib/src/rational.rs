//! Exact rational arithmetic helpers shared by all modules.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rat = BigRational;

/// Rational p/q from machine integers.
pub fn rat(p: i64, q: i64) -> Rat {
    assert!(q != 0, "zero denominator");
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// Rational n/1.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Extracts an i64 from a rational known to be integral.
pub fn as_integer(r: &Rat) -> Option<i64> {
    if r.is_integer() {
        r.numer().to_i64()
    } else {
        None
    }
}

/// Mixed-number text form: "3" for integers, "8+1/7" for positive
/// non-integers, "-19/7" for negative values.
pub fn fmt_mixed(r: &Rat) -> String {
    if r.is_integer() {
        return r.numer().to_string();
    }
    if r.is_negative() {
        return format!("{}/{}", r.numer(), r.denom());
    }
    let whole = r.numer() / r.denom();
    let frac = r - Rat::from_integer(whole.clone());
    if whole.is_zero() {
        format!("{}/{}", frac.numer(), frac.denom())
    } else {
        format!("{}+{}/{}", whole, frac.numer(), frac.denom())
    }
}

/// Machine form "p/q" ("p" when integral) used in JSON output.
pub fn fmt_frac(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses "p/q" or "p" into a rational.
pub fn parse_frac(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: i64 = p.trim().parse().ok()?;
            let q: i64 = q.trim().parse().ok()?;
            if q == 0 {
                None
            } else {
                Some(rat(p, q))
            }
        }
        None => Some(rat_int(s.parse().ok()?)),
    }
}

/// True iff r equals the integer n.
pub fn eq_int(r: &Rat, n: i64) -> bool {
    r.is_integer() && *r.numer() == BigInt::from(n)
}

/// Rational 1.
pub fn one() -> Rat {
    Rat::one()
}

/// Rational 0.
pub fn zero() -> Rat {
    Rat::zero()
}
