use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::arith::{isqrt_exact, render_rational};

/// `a + b*sqrt(q)`. When `q` is a perfect square the value is kept with `b = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SqrtQScalar {
    a: BigRational,
    b: BigRational,
    q: u64,
}

impl SqrtQScalar {
    pub fn new(a: BigRational, b: BigRational, q: u64) -> Self {
        assert!(q >= 2, "q must be at least 2");
        match isqrt_exact(q) {
            Some(s) => SqrtQScalar {
                a: a + b * BigRational::from_integer(BigInt::from(s)),
                b: BigRational::zero(),
                q,
            },
            None => SqrtQScalar { a, b, q },
        }
    }

    pub fn rational(a: BigRational, q: u64) -> Self {
        Self::new(a, BigRational::zero(), q)
    }

    pub fn from_int(n: i64, q: u64) -> Self {
        Self::rational(BigRational::from_integer(BigInt::from(n)), q)
    }

    pub fn zero(q: u64) -> Self {
        Self::from_int(0, q)
    }

    pub fn one(q: u64) -> Self {
        Self::from_int(1, q)
    }

    /// `sqrt(q)` itself.
    pub fn sqrt_q(q: u64) -> Self {
        Self::new(BigRational::zero(), BigRational::one(), q)
    }

    pub fn a(&self) -> &BigRational {
        &self.a
    }

    pub fn b(&self) -> &BigRational {
        &self.b
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        self.is_rational().then(|| self.a.clone())
    }

    /// Exact sign: compares `a^2` against `b^2 q` when the parts disagree.
    pub fn signum(&self) -> i32 {
        let sa = sign(&self.a);
        let sb = sign(&self.b);
        if sb == 0 || sa == sb {
            return if sa != 0 { sa } else { sb };
        }
        if sa == 0 {
            return sb;
        }
        let a2 = &self.a * &self.a;
        let b2q = &self.b * &self.b * BigRational::from_integer(BigInt::from(self.q));
        if a2 > b2q {
            sa
        } else {
            sb
        }
    }

    pub fn abs(&self) -> Self {
        if self.signum() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    fn conj(&self) -> Self {
        SqrtQScalar {
            a: self.a.clone(),
            b: -self.b.clone(),
            q: self.q,
        }
    }

    /// Panics on zero.
    pub fn inverse(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        let norm = &self.a * &self.a - &self.b * &self.b * BigRational::from_integer(BigInt::from(self.q));
        let c = self.conj();
        SqrtQScalar {
            a: c.a / &norm,
            b: c.b / norm,
            q: self.q,
        }
    }

    pub fn pow(&self, e: i64) -> Self {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut acc = Self::one(self.q);
        let mut sq = base;
        let mut n = e.unsigned_abs();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &sq;
            }
            sq = &sq * &sq;
            n >>= 1;
        }
        acc
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        SqrtQScalar {
            a: &self.a * c,
            b: &self.b * c,
            q: self.q,
        }
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.q, other.q, "mixed q in SqrtQScalar arithmetic");
    }
}

fn sign(x: &BigRational) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

impl fmt::Display for SqrtQScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", render_rational(&self.a));
        }
        write!(
            f,
            "{}+{}*sqrt({})",
            render_rational(&self.a),
            render_rational(&self.b),
            self.q
        )
    }
}

impl<'a> Add<&'a SqrtQScalar> for &'a SqrtQScalar {
    type Output = SqrtQScalar;
    fn add(self, o: &SqrtQScalar) -> SqrtQScalar {
        self.check(o);
        SqrtQScalar {
            a: &self.a + &o.a,
            b: &self.b + &o.b,
            q: self.q,
        }
    }
}

impl<'a> Sub<&'a SqrtQScalar> for &'a SqrtQScalar {
    type Output = SqrtQScalar;
    fn sub(self, o: &SqrtQScalar) -> SqrtQScalar {
        self.check(o);
        SqrtQScalar {
            a: &self.a - &o.a,
            b: &self.b - &o.b,
            q: self.q,
        }
    }
}

impl<'a> Mul<&'a SqrtQScalar> for &'a SqrtQScalar {
    type Output = SqrtQScalar;
    fn mul(self, o: &SqrtQScalar) -> SqrtQScalar {
        self.check(o);
        let q = BigRational::from_integer(BigInt::from(self.q));
        SqrtQScalar {
            a: &self.a * &o.a + &self.b * &o.b * q,
            b: &self.a * &o.b + &self.b * &o.a,
            q: self.q,
        }
    }
}

impl Add for SqrtQScalar {
    type Output = SqrtQScalar;
    fn add(self, o: SqrtQScalar) -> SqrtQScalar {
        &self + &o
    }
}

impl Sub for SqrtQScalar {
    type Output = SqrtQScalar;
    fn sub(self, o: SqrtQScalar) -> SqrtQScalar {
        &self - &o
    }
}

impl Mul for SqrtQScalar {
    type Output = SqrtQScalar;
    fn mul(self, o: SqrtQScalar) -> SqrtQScalar {
        &self * &o
    }
}

impl Neg for &SqrtQScalar {
    type Output = SqrtQScalar;
    fn neg(self) -> SqrtQScalar {
        SqrtQScalar {
            a: -self.a.clone(),
            b: -self.b.clone(),
            q: self.q,
        }
    }
}

impl Neg for SqrtQScalar {
    type Output = SqrtQScalar;
    fn neg(self) -> SqrtQScalar {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn perfect_square_normalizes() {
        let x = SqrtQScalar::new(r(1, 1), r(3, 2), 4);
        assert_eq!(x.a(), &r(4, 1));
        assert!(x.is_rational());
        let y = SqrtQScalar::new(r(0, 1), r(1, 1), 2);
        assert!(!y.is_rational());
    }

    #[test]
    fn field_operations() {
        let x = SqrtQScalar::new(r(1, 1), r(1, 1), 2);
        let inv = x.inverse();
        assert_eq!(&x * &inv, SqrtQScalar::one(2));
        assert_eq!(inv, SqrtQScalar::new(r(-1, 1), r(1, 1), 2));
        let s = SqrtQScalar::sqrt_q(3);
        assert_eq!(s.pow(2), SqrtQScalar::from_int(3, 3));
        assert_eq!(s.pow(-2), SqrtQScalar::rational(r(1, 3), 3));
    }

    #[test]
    fn exact_sign() {
        assert_eq!(SqrtQScalar::new(r(3, 2), r(-1, 1), 2).signum(), 1);
        assert_eq!(SqrtQScalar::new(r(1, 1), r(-1, 1), 2).signum(), -1);
        assert_eq!(SqrtQScalar::new(r(-3, 1), r(2, 1), 2).signum(), -1);
        assert_eq!(SqrtQScalar::zero(5).signum(), 0);
    }

    #[test]
    fn display() {
        assert_eq!(SqrtQScalar::new(r(0, 1), r(2, 1), 2).to_string(), "0+2*sqrt(2)");
        assert_eq!(SqrtQScalar::rational(r(1, 36), 2).to_string(), "1/36");
    }
}
