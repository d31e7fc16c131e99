use std::path::Path;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Deserialize;

use crate::error::{HnsError, Result};
use crate::scalars::{divisors, int_pow, is_prime_power, mobius, q_pow, ri};

/// Checks on N_m and B_m run up to this m.
pub const VALIDATION_WINDOW: u32 = 12;

/// `q`, genus and numerator `P(t) = a_0 + a_1 t + ... + a_{2g} t^{2g}` of the zeta function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZetaDatum {
    q: u64,
    genus: u32,
    numerator: Vec<i64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ZetaFile {
    q: u64,
    genus: u32,
    numerator: Vec<i64>,
}

impl ZetaDatum {
    pub fn new(q: u64, genus: u32, numerator: Vec<i64>) -> Result<Self> {
        let bad = |m: String| Err(HnsError::InvalidZeta(m));
        if !is_prime_power(q) {
            return bad(format!("q = {} is not a prime power", q));
        }
        let g = genus as usize;
        if numerator.len() != 2 * g + 1 {
            return bad(format!(
                "genus {} needs {} coefficients, got {}",
                genus,
                2 * g + 1,
                numerator.len()
            ));
        }
        if numerator[0] != 1 {
            return bad("a_0 must be 1".into());
        }
        for i in 0..=g {
            let lhs = BigInt::from(numerator[2 * g - i]);
            let rhs = int_pow(q, (g - i) as u32) * BigInt::from(numerator[i]);
            if lhs != rhs {
                return bad(format!("functional equation fails at a_{}", 2 * g - i));
            }
        }
        let z = ZetaDatum { q, genus, numerator };
        if !z.pic_count().is_positive() {
            return bad("P(1) must be positive".into());
        }
        for m in 1..=VALIDATION_WINDOW {
            if z.point_count(m).is_negative() {
                return bad(format!("N_{} is negative", m));
            }
            if z.closed_points_raw(m).is_negative() {
                return bad(format!("B_{} is negative", m));
            }
        }
        Ok(z)
    }

    /// The projective line over `F_q`.
    pub fn p1(q: u64) -> Result<Self> {
        Self::new(q, 0, vec![1])
    }

    pub fn from_toml_str(s: &str) -> Result<Self> {
        let f: ZetaFile = toml::from_str(s).map_err(|e| HnsError::Parse(e.to_string()))?;
        Self::new(f.q, f.genus, f.numerator)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let s =
            std::fs::read_to_string(path).map_err(|e| HnsError::Io(format!("{}: {}", path.display(), e)))?;
        Self::from_toml_str(&s)
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn genus(&self) -> i64 {
        self.genus as i64
    }

    pub fn numerator(&self) -> &[i64] {
        &self.numerator
    }

    fn a(&self, i: usize) -> BigInt {
        BigInt::from(self.numerator.get(i).copied().unwrap_or(0))
    }

    /// Power sums of the inverse roots, `p_1..p_m` (Newton's identities).
    pub fn power_sums(&self, m: u32) -> Vec<BigInt> {
        let mut p: Vec<BigInt> = Vec::with_capacity(m as usize);
        for k in 1..=m as usize {
            let mut v = -BigInt::from(k as i64) * self.a(k);
            for i in 1..k {
                v -= self.a(i) * &p[k - i - 1];
            }
            p.push(v);
        }
        p
    }

    /// `N_m = q^m + 1 - p_m`.
    pub fn point_count(&self, m: u32) -> BigInt {
        let p = self.power_sums(m);
        int_pow(self.q, m) + 1 - &p[m as usize - 1]
    }

    fn closed_points_raw(&self, m: u32) -> BigInt {
        let mut acc = BigInt::zero();
        for k in divisors(m as u64) {
            acc += BigInt::from(mobius(m as u64 / k)) * self.point_count(k as u32);
        }
        acc / BigInt::from(m)
    }

    /// Number of closed points of degree `m`.
    pub fn closed_points(&self, m: u32) -> Result<BigInt> {
        if m == 0 {
            return Err(HnsError::Precondition("closed point degree must be >= 1".into()));
        }
        let b = self.closed_points_raw(m);
        if b.is_negative() {
            return Err(HnsError::InvalidZeta(format!("B_{} = {} < 0", m, b)));
        }
        Ok(b)
    }

    /// `P(x)`.
    pub fn eval_numerator(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for &c in self.numerator.iter().rev() {
            acc = acc * x + ri(c);
        }
        acc
    }

    /// `#Pic^0 = P(1)`.
    pub fn pic_count(&self) -> BigInt {
        self.numerator.iter().map(|&c| BigInt::from(c)).sum()
    }

    /// `zeta_X(i) = P(q^-i) / ((1 - q^-i)(1 - q^(1-i)))` for `i >= 2`.
    pub fn zeta_at(&self, i: i64) -> BigRational {
        let one = BigRational::one();
        self.eval_numerator(&q_pow(self.q, -i)) / ((&one - q_pow(self.q, -i)) * (&one - q_pow(self.q, 1 - i)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p1_counts() {
        let z = ZetaDatum::p1(2).unwrap();
        assert_eq!(z.closed_points(1).unwrap(), BigInt::from(3));
        assert_eq!(z.closed_points(2).unwrap(), BigInt::from(1));
        assert_eq!(z.closed_points(3).unwrap(), BigInt::from(2));
        assert_eq!(z.pic_count(), BigInt::from(1));
        let z5 = ZetaDatum::p1(5).unwrap();
        assert_eq!(z5.closed_points(1).unwrap(), BigInt::from(6));
        assert_eq!(z5.closed_points(2).unwrap(), BigInt::from(10));
    }

    #[test]
    fn elliptic_counts() {
        let z = ZetaDatum::new(2, 1, vec![1, -1, 2]).unwrap();
        assert_eq!(z.closed_points(1).unwrap(), BigInt::from(2));
        assert_eq!(z.pic_count(), BigInt::from(2));
        // N_2 = 4 + 1 - (p_1^2 - 2 e_2) = 5 - (1 - 4) = 8
        assert_eq!(z.point_count(2), BigInt::from(8));
    }

    #[test]
    fn genus_two_product() {
        let z = ZetaDatum::new(2, 2, vec![1, -2, 5, -4, 4]).unwrap();
        assert_eq!(z.pic_count(), BigInt::from(4));
        assert_eq!(z.point_count(1), BigInt::from(1));
    }

    #[test]
    fn rejects_bad_data() {
        assert!(ZetaDatum::new(6, 0, vec![1]).is_err());
        assert!(ZetaDatum::new(2, 1, vec![1, 0]).is_err());
        assert!(ZetaDatum::new(2, 1, vec![2, 0, 4]).is_err());
        assert!(ZetaDatum::new(2, 1, vec![1, 0, 3]).is_err());
        // Weil bound violated: N_1 = 3 - 5 < 0
        assert!(ZetaDatum::new(2, 1, vec![1, 5, 2]).is_err());
    }

    #[test]
    fn toml_ingestion() {
        let z = ZetaDatum::from_toml_str("q = 2\ngenus = 1\nnumerator = [1, -1, 2]\n").unwrap();
        assert_eq!(z.q(), 2);
        assert!(ZetaDatum::from_toml_str("q = 2\ngenus = 1\n").is_err());
        assert!(ZetaDatum::from_toml_str("q = 2\ngenus = 0\nnumerator = [1]\nextra = 1").is_err());
    }

    #[test]
    fn zeta_values_on_p1() {
        let z = ZetaDatum::p1(2).unwrap();
        // 1/((1 - 1/4)(1 - 1/2)) = 8/3
        assert_eq!(z.zeta_at(2), BigRational::new(8.into(), 3.into()));
    }
}
