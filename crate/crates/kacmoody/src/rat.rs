//! Exact rational scalars and small helpers shared across the crate.
//!
//! Everything in this crate computes over arbitrary-precision rationals;
//! there is no floating point anywhere.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// The scalar type used throughout: arbitrary-precision rational.
pub type Rat = BigRational;

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// n/d as a rational. Panics on d = 0.
pub fn rat_frac(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Canonical rendering "p/q" with q > 0 and gcd(p, q) = 1.
pub fn rat_to_string(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parse "p/q" or a bare integer "p".
pub fn rat_from_string(s: &str) -> Option<Rat> {
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(Rat::new(p, q))
        }
        None => {
            let p: BigInt = s.trim().parse().ok()?;
            Some(Rat::from_integer(p))
        }
    }
}

/// Divide an integer vector by the gcd of its entries and make the first
/// nonzero entry positive. The zero vector is returned unchanged.
pub fn normalize_primitive(v: &mut [BigInt]) {
    let mut g = BigInt::zero();
    for x in v.iter() {
        g = g.gcd(x);
    }
    if g.is_zero() {
        return;
    }
    let first_neg = v
        .iter()
        .find(|x| !x.is_zero())
        .map(|x| x.is_negative())
        .unwrap_or(false);
    if first_neg {
        g = -g;
    }
    if g.is_one() {
        return;
    }
    for x in v.iter_mut() {
        *x = &*x / &g;
    }
}

/// Clear denominators of a rational vector, returning a primitive integer
/// vector with the same direction (first nonzero entry positive).
pub fn to_primitive_integer(v: &[Rat]) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for x in v {
        lcm = lcm.lcm(x.denom());
    }
    let mut out: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    normalize_primitive(&mut out);
    out
}

/// r^k for integer k (negative exponents invert; r must be nonzero then).
pub fn rat_pow(r: &Rat, k: i64) -> Rat {
    let mut acc = Rat::one();
    let base = if k < 0 { Rat::one() / r } else { r.clone() };
    for _ in 0..k.unsigned_abs() {
        acc *= &base;
    }
    acc
}

/// n! as a big integer.
pub fn factorial(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    acc
}

/// Binomial coefficient C(n, k) over the integers, zero outside 0 <= k <= n.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || k > n || n < 0 {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for j in 0..k {
        num *= BigInt::from(n - j);
        den *= BigInt::from(j + 1);
    }
    num / den
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_round_trip() {
        let r = rat_frac(-6, 4);
        assert_eq!(rat_to_string(&r), "-3/2");
        assert_eq!(rat_from_string("-3/2").unwrap(), r);
        assert_eq!(rat_from_string("7").unwrap(), rat(7));
        assert!(rat_from_string("1/0").is_none());
    }

    #[test]
    fn primitive_normalization() {
        let mut v = vec![BigInt::from(-4), BigInt::from(6), BigInt::from(-2)];
        normalize_primitive(&mut v);
        assert_eq!(v, vec![BigInt::from(2), BigInt::from(-3), BigInt::from(1)]);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(3, 5), BigInt::zero());
        assert_eq!(binomial(0, 0), BigInt::from(1));
        assert_eq!(factorial(5), BigInt::from(120));
    }
}
