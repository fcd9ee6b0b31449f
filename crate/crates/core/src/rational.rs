//! Exact rational helpers on top of `num-rational`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

/// Arbitrary-precision rational number used for every exact quantity.
pub type Rational = BigRational;

/// Builds `num / den` in lowest terms. Panics if `den == 0`.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Fractional part `{q} = q - floor(q)`, always in `[0, 1)`.
pub fn fract(q: &Rational) -> Rational {
    q - q.floor()
}

/// `floor(q)` as an `i64`. Panics when out of range, which cannot happen for
/// the bounded quantities this crate feeds it.
pub fn floor_i64(q: &Rational) -> i64 {
    q.floor().to_integer().to_i64().expect("floor out of i64 range")
}

pub fn is_integer(q: &Rational) -> bool {
    q.is_integer()
}

/// `prod w_i^{e_i}` for signed exponents.
pub fn monomial(weights: &[u64], exponents: &[i64]) -> Rational {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for (&w, &e) in weights.iter().zip(exponents) {
        let p = BigInt::from(w).pow(e.unsigned_abs() as u32);
        if e >= 0 {
            num *= p;
        } else {
            den *= p;
        }
    }
    Rational::new(num, den)
}

/// Product of the selected weights, as a rational.
pub fn weight_product<I: IntoIterator<Item = usize>>(weights: &[u64], idx: I) -> Rational {
    let mut acc = BigInt::one();
    for i in idx {
        acc *= BigInt::from(weights[i]);
    }
    Rational::from_integer(acc)
}

/// Renders `p/q`, or just `p` for integers.
pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `p/q`, `p`, or `-p/q`.
pub fn parse_rational(text: &str) -> Result<Rational, Error> {
    let bad = || Error::Parse(format!("not a rational number: {text:?}"));
    let text = text.trim();
    let (n, d) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

/// Binomial coefficient as a big integer.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

pub fn gcd_all(values: &[u64]) -> u64 {
    values.iter().fold(0, |g, &v| g.gcd(&v))
}

/// `lcm` of the values, `None` on `u64` overflow.
pub fn lcm_all(values: &[u64]) -> Option<u64> {
    values.iter().try_fold(1u64, |l, &v| {
        let g = l.gcd(&v);
        (l / g).checked_mul(v)
    })
}

/// True when `q` is a non-negative integer.
pub fn is_natural(q: &Rational) -> bool {
    q.is_integer() && !q.is_negative()
}
