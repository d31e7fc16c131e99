use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::arith::{q_pow, render_rational};
use super::SqrtQScalar;

/// Finite Laurent polynomial in `v` with rational coefficients. Zero
/// coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentV {
    coeffs: BTreeMap<i64, BigRational>,
}

impl LaurentV {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, BigRational::one())
    }

    pub fn monomial(exp: i64, c: BigRational) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(exp, c);
        }
        LaurentV { coeffs }
    }

    /// `v^exp`.
    pub fn v_pow(exp: i64) -> Self {
        Self::monomial(exp, BigRational::one())
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, BigRational)>>(terms: I) -> Self {
        let mut out = LaurentV::zero();
        for (e, c) in terms {
            out.add_term(e, c);
        }
        out
    }

    fn add_term(&mut self, e: i64, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(e).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, e: i64) -> BigRational {
        self.coeffs.get(&e).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigRational)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn support(&self) -> Vec<i64> {
        self.coeffs.keys().copied().collect()
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::from_terms(self.terms().map(|(e, x)| (e, x * c)))
    }

    /// Multiply by `v^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentV {
            coeffs: self.coeffs.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// Substitute `v = 1/sqrt(q)`.
    pub fn eval_sqrt_q(&self, q: u64) -> SqrtQScalar {
        let mut even = BigRational::zero();
        let mut odd = BigRational::zero();
        for (e, c) in self.terms() {
            // v^e = q^(-e/2); odd e gives q^(-(e+1)/2) * sqrt(q)
            if e.rem_euclid(2) == 0 {
                even += c * q_pow(q, -e / 2);
            } else {
                odd += c * q_pow(q, -(e + 1) / 2);
            }
        }
        SqrtQScalar::new(even, odd, q)
    }
}

impl fmt::Display for LaurentV {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms()
            .map(|(e, c)| match e {
                0 => render_rational(c),
                _ => format!("{}*v^{}", render_rational(c), e),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl<'a> Add<&'a LaurentV> for &'a LaurentV {
    type Output = LaurentV;
    fn add(self, o: &LaurentV) -> LaurentV {
        let mut out = self.clone();
        for (e, c) in o.terms() {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a LaurentV> for &'a LaurentV {
    type Output = LaurentV;
    fn sub(self, o: &LaurentV) -> LaurentV {
        let mut out = self.clone();
        for (e, c) in o.terms() {
            out.add_term(e, -c.clone());
        }
        out
    }
}

impl<'a> Mul<&'a LaurentV> for &'a LaurentV {
    type Output = LaurentV;
    fn mul(self, o: &LaurentV) -> LaurentV {
        let mut out = LaurentV::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in o.terms() {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &LaurentV {
    type Output = LaurentV;
    fn neg(self) -> LaurentV {
        LaurentV::from_terms(self.terms().map(|(e, c)| (e, -c.clone())))
    }
}

impl Add for LaurentV {
    type Output = LaurentV;
    fn add(self, o: LaurentV) -> LaurentV {
        &self + &o
    }
}

impl Sub for LaurentV {
    type Output = LaurentV;
    fn sub(self, o: LaurentV) -> LaurentV {
        &self - &o
    }
}

impl Mul for LaurentV {
    type Output = LaurentV;
    fn mul(self, o: LaurentV) -> LaurentV {
        &self * &o
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::ri;

    fn lv(terms: &[(i64, i64)]) -> LaurentV {
        LaurentV::from_terms(terms.iter().map(|&(e, c)| (e, ri(c))))
    }

    #[test]
    fn products() {
        assert_eq!(&lv(&[(1, 1)]) * &lv(&[(-1, 1)]), LaurentV::one());
        assert_eq!(
            &lv(&[(0, 1), (1, 1)]) * &lv(&[(0, 1), (1, -1)]),
            lv(&[(0, 1), (2, -1)])
        );
        assert_eq!(&lv(&[(3, 2)]) * &lv(&[(-5, 3)]), lv(&[(-2, 6)]));
    }

    #[test]
    fn cancellation_leaves_no_zero_coefficients() {
        let x = &lv(&[(2, 1), (0, 3)]) - &lv(&[(2, 1)]);
        assert_eq!(x.support(), vec![0]);
        assert!((&x - &x).is_zero());
    }

    #[test]
    fn evaluation() {
        assert_eq!(lv(&[(-2, 1)]).eval_sqrt_q(4), SqrtQScalar::from_int(4, 4));
        assert_eq!(
            lv(&[(1, 1)]).eval_sqrt_q(4),
            SqrtQScalar::rational(BigRational::new(1.into(), 2.into()), 4)
        );
        let x = lv(&[(-3, 1)]).eval_sqrt_q(2);
        assert_eq!((x.a().clone(), x.b().clone()), (ri(0), ri(2)));
        let y = lv(&[(3, 1)]).eval_sqrt_q(2);
        assert_eq!(
            (y.a().clone(), y.b().clone()),
            (ri(0), BigRational::new(1.into(), 4.into()))
        );
    }
}
