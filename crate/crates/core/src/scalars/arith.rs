use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde_json::Value;

use super::SqrtQScalar;
use crate::error::{HnsError, Result};

/// Shorthand for an integer as a rational.
pub fn ri(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn int_pow(base: u64, e: u32) -> BigInt {
    num_traits::pow(BigInt::from(base), e as usize)
}

/// `q^e` for any integer `e`.
pub fn q_pow(q: u64, e: i64) -> BigRational {
    let p = BigRational::from_integer(int_pow(q, e.unsigned_abs() as u32));
    if e >= 0 {
        p
    } else {
        p.recip()
    }
}

/// Order of `GL_n(F_q)`.
pub fn gl_order(n: i64, q: u64) -> Result<BigInt> {
    if n < 0 {
        return Err(HnsError::NegativeOrder(n));
    }
    let qn = int_pow(q, n as u32);
    let mut acc = BigInt::one();
    for i in 0..n {
        acc *= &qn - int_pow(q, i as u32);
    }
    Ok(acc)
}

/// `sum_{k >= k0} x^k = x^k0 / (1 - x)`, for `|x| < 1`.
pub fn geom_sum(x: &SqrtQScalar, k0: i64) -> Result<SqrtQScalar> {
    let one = SqrtQScalar::one(x.q());
    let lo = &one - x;
    let hi = &one + x;
    if lo.signum() <= 0 || hi.signum() <= 0 {
        return Err(HnsError::NotConvergent(format!("|{}| >= 1", x)));
    }
    Ok(&x.pow(k0) * &lo.inverse())
}

pub fn mobius(n: u64) -> i64 {
    let mut n = n;
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

pub fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|k| n % k == 0).collect()
}

pub fn is_prime_power(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let mut p = 2;
    while p * p <= q {
        if q % p == 0 {
            let mut m = q;
            while m % p == 0 {
                m /= p;
            }
            return m == 1;
        }
        p += 1;
    }
    true
}

/// `"n"` for integers, `"n/d"` otherwise.
pub fn render_rational(x: &BigRational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

fn int_to_json(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(v) => Value::from(v),
        None => Value::from(n.to_string()),
    }
}

fn int_from_json(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| HnsError::Parse(format!("not an integer: {}", n))),
        Value::String(s) => s
            .parse::<BigInt>()
            .map_err(|_| HnsError::Parse(format!("not an integer: {:?}", s))),
        other => Err(HnsError::Parse(format!("not an integer: {}", other))),
    }
}

/// `[num, den]`, each entry a JSON integer or a decimal string when it does not fit `i64`.
pub fn rational_to_json(x: &BigRational) -> Value {
    Value::Array(vec![int_to_json(x.numer()), int_to_json(x.denom())])
}

pub fn rational_from_json(v: &Value) -> Result<BigRational> {
    let arr = v
        .as_array()
        .filter(|a| a.len() == 2)
        .ok_or_else(|| HnsError::Parse(format!("expected [num, den], got {}", v)))?;
    let num = int_from_json(&arr[0])?;
    let den = int_from_json(&arr[1])?;
    if den.is_zero() {
        return Err(HnsError::Parse("zero denominator".into()));
    }
    Ok(BigRational::new(num, den))
}

pub(crate) fn isqrt_exact(q: u64) -> Option<u64> {
    let s = (q as f64).sqrt().round() as u64;
    (s.saturating_sub(1)..=s + 1).find(|t| t * t == q)
}
