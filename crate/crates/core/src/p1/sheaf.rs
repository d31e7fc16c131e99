use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::classes::KClass;
use crate::error::{HnsError, Result};
use crate::scalars::{divisors, int_pow, mobius};

/// Weakly decreasing positive parts.
pub type Partition = Vec<u32>;

/// A closed point, known only by its degree and an index among the points of
/// that degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClosedPoint {
    pub degree: u32,
    pub index: u64,
}

/// Number of closed points of degree `e` on the projective line: monic
/// irreducible polynomials of degree `e`, plus the point at infinity for `e = 1`.
pub fn p1_closed_points(q: u64, e: u32) -> BigInt {
    let mut acc = BigInt::zero();
    for k in divisors(e as u64) {
        acc += BigInt::from(mobius(e as u64 / k)) * int_pow(q, k as u32);
    }
    acc /= BigInt::from(e);
    if e == 1 {
        acc += 1;
    }
    acc
}

/// `O(a_1) + ... + O(a_r)` plus a torsion sheaf given pointwise by partitions.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct P1Sheaf {
    splitting: Vec<i64>,
    torsion: BTreeMap<ClosedPoint, Partition>,
}

impl P1Sheaf {
    /// Canonicalizes: splitting sorted decreasing, partitions sorted, empty ones dropped.
    pub fn new(mut splitting: Vec<i64>, torsion: BTreeMap<ClosedPoint, Partition>) -> Result<Self> {
        splitting.sort_unstable_by(|a, b| b.cmp(a));
        let mut t = BTreeMap::new();
        for (x, mut lam) in torsion {
            if x.degree == 0 {
                return Err(HnsError::InvalidClass("closed point of degree 0".into()));
            }
            if lam.contains(&0) {
                return Err(HnsError::InvalidClass("partition with a zero part".into()));
            }
            lam.sort_unstable_by(|a, b| b.cmp(a));
            if !lam.is_empty() {
                t.insert(x, lam);
            }
        }
        Ok(P1Sheaf {
            splitting,
            torsion: t,
        })
    }

    pub fn vector(splitting: Vec<i64>) -> Self {
        Self::new(splitting, BTreeMap::new()).expect("no torsion to validate")
    }

    pub fn line(a: i64) -> Self {
        Self::vector(vec![a])
    }

    /// Torsion only, at a single point.
    pub fn skyscraper(x: ClosedPoint, lambda: Partition) -> Result<Self> {
        Self::new(vec![], BTreeMap::from([(x, lambda)]))
    }

    pub fn splitting(&self) -> &[i64] {
        &self.splitting
    }

    pub fn torsion(&self) -> &BTreeMap<ClosedPoint, Partition> {
        &self.torsion
    }

    pub fn rank(&self) -> i64 {
        self.splitting.len() as i64
    }

    pub fn torsion_degree(&self) -> i64 {
        self.torsion
            .iter()
            .map(|(x, l)| x.degree as i64 * l.iter().map(|&p| p as i64).sum::<i64>())
            .sum()
    }

    pub fn degree(&self) -> i64 {
        self.splitting.iter().sum::<i64>() + self.torsion_degree()
    }

    pub fn class(&self) -> KClass {
        KClass::new(self.rank(), self.degree())
    }

    pub fn vector_part(&self) -> P1Sheaf {
        P1Sheaf::vector(self.splitting.clone())
    }

    pub fn torsion_part(&self) -> P1Sheaf {
        P1Sheaf {
            splitting: vec![],
            torsion: self.torsion.clone(),
        }
    }

    /// `F(k)`; torsion is unchanged.
    pub fn twist(&self, k: i64) -> P1Sheaf {
        P1Sheaf {
            splitting: self.splitting.iter().map(|a| a + k).collect(),
            torsion: self.torsion.clone(),
        }
    }

    /// Direct sum.
    pub fn sum(&self, other: &P1Sheaf) -> Result<P1Sheaf> {
        let mut split = self.splitting.clone();
        split.extend_from_slice(&other.splitting);
        let mut tor = self.torsion.clone();
        for (x, l) in &other.torsion {
            tor.entry(*x).or_default().extend_from_slice(l);
        }
        P1Sheaf::new(split, tor)
    }
}

impl fmt::Display for P1Sheaf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.splitting.iter().map(|a| format!("O({})", a)).collect();
        for (x, l) in &self.torsion {
            let l: Vec<String> = l.iter().map(|p| p.to_string()).collect();
            parts.push(format!("T[{}.{}]({})", x.degree, x.index, l.join(",")));
        }
        if parts.is_empty() {
            return write!(f, "0");
        }
        write!(f, "{}", parts.join(" + "))
    }
}
