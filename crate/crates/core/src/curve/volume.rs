use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::RwLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Zero};

use super::torsion::vol_torsion;
use super::ZetaDatum;
use crate::classes::{enumerate_hn_types, twist_exponent, KClass};
use crate::error::{HnsError, Result};
use crate::scalars::{q_pow, ri, SqrtQScalar};

/// Upper limit on residue classes summed per rank composition in exact mode.
pub const MAX_RESIDUE_CLASSES: u64 = 1 << 22;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VolMode {
    Exact,
    /// Certified to within `q^-K`.
    Truncated(u32),
}

impl FromStr for VolMode {
    type Err = HnsError;
    fn from_str(s: &str) -> Result<Self> {
        if s == "exact" {
            return Ok(VolMode::Exact);
        }
        s.strip_prefix("trunc:")
            .and_then(|k| k.parse::<u32>().ok())
            .map(VolMode::Truncated)
            .ok_or_else(|| HnsError::Parse(format!("mode must be exact or trunc:K, got {:?}", s)))
    }
}

impl fmt::Display for VolMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VolMode::Exact => write!(f, "exact"),
            VolMode::Truncated(k) => write!(f, "trunc:{}", k),
        }
    }
}

/// A volume with its certificate. In truncated mode `value` is an upper bound
/// and the true volume lies in `[value - error_bound, value]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VolResult {
    pub value: SqrtQScalar,
    pub error_bound: BigRational,
    pub mode: VolMode,
    /// Lowest first slope summed in truncated mode.
    pub window: Option<i64>,
}

type Interval = (BigRational, BigRational, i64);

/// Memoized stacky volumes for one zeta datum. Safe to share across threads.
pub struct CurveVolumes {
    zeta: ZetaDatum,
    ss: RwLock<HashMap<(i64, i64), BigRational>>,
    bun: RwLock<HashMap<i64, BigRational>>,
    tor: RwLock<Vec<BigRational>>,
    trunc: RwLock<HashMap<(i64, i64, u32), Interval>>,
}

fn compositions(r: i64) -> Vec<Vec<i64>> {
    if r == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 1..=r {
        for mut rest in compositions(r - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

impl CurveVolumes {
    pub fn new(zeta: ZetaDatum) -> Self {
        CurveVolumes {
            zeta,
            ss: RwLock::new(HashMap::new()),
            bun: RwLock::new(HashMap::new()),
            tor: RwLock::new(vec![BigRational::one()]),
            trunc: RwLock::new(HashMap::new()),
        }
    }

    pub fn zeta(&self) -> &ZetaDatum {
        &self.zeta
    }

    pub fn q(&self) -> u64 {
        self.zeta.q()
    }

    fn g(&self) -> i64 {
        self.zeta.genus()
    }

    /// `sum 1/#Aut` over line bundles of a fixed degree: `P(1)/(q-1)`.
    pub fn vol_line(&self) -> BigRational {
        BigRational::new(self.zeta.pic_count(), BigInt::from(self.q() - 1))
    }

    /// `sum 1/#Aut` over torsion sheaves of degree `d`.
    pub fn vol_torsion(&self, d: i64) -> Result<BigRational> {
        if d < 0 {
            return Err(HnsError::Precondition(format!("torsion degree {} < 0", d)));
        }
        if let Some(v) = self.tor.read().expect("lock").get(d as usize) {
            return Ok(v.clone());
        }
        let series = vol_torsion(&self.zeta, d);
        let v = series[d as usize].clone();
        let mut w = self.tor.write().expect("lock");
        if w.len() <= d as usize {
            *w = series;
        }
        Ok(v)
    }

    /// Mass of all rank `r` bundles of a fixed degree:
    /// `(P(1)/(q-1)) q^((r^2-1)(g-1)) prod_{i=2..r} zeta(i)`.
    pub fn vol_bun(&self, r: i64) -> Result<BigRational> {
        if r < 1 {
            return Err(HnsError::RankZero);
        }
        if let Some(v) = self.bun.read().expect("lock").get(&r) {
            return Ok(v.clone());
        }
        let mut v = self.vol_line() * q_pow(self.q(), (r * r - 1) * (self.g() - 1));
        for i in 2..=r {
            v *= self.zeta.zeta_at(i);
        }
        self.bun.write().expect("lock").insert(r, v.clone());
        Ok(v)
    }

    pub fn vol_ss(&self, alpha: KClass, mode: VolMode) -> Result<VolResult> {
        alpha.require_cone()?;
        let q = self.q();
        match mode {
            VolMode::Exact => Ok(VolResult {
                value: SqrtQScalar::rational(self.vol_ss_exact(alpha)?, q),
                error_bound: BigRational::zero(),
                mode,
                window: None,
            }),
            VolMode::Truncated(k) => {
                let (lo, hi, n) = self.trunc_interval(alpha, k)?;
                Ok(VolResult {
                    value: SqrtQScalar::rational(hi.clone(), q),
                    error_bound: hi - lo,
                    mode,
                    window: (alpha.r >= 2).then_some(n),
                })
            }
        }
    }

    /// Exact semistable volume by the HN recursion, all infinite sums done in
    /// closed form per residue class.
    pub fn vol_ss_exact(&self, alpha: KClass) -> Result<BigRational> {
        alpha.require_cone()?;
        let (r, d) = (alpha.r, alpha.d);
        if r == 0 {
            return self.vol_torsion(d);
        }
        if r == 1 {
            return Ok(self.vol_line());
        }
        let key = (r, d.rem_euclid(r));
        if let Some(v) = self.ss.read().expect("lock").get(&key) {
            return Ok(v.clone());
        }
        let mut total = self.vol_bun(r)?;
        for comp in compositions(r).into_iter().filter(|c| c.len() >= 2) {
            total -= self.composition_sum(&comp, d)?;
        }
        self.ss.write().expect("lock").insert(key, total.clone());
        Ok(total)
    }

    /// Sum over all HN types with the given rank sequence of
    /// `q^(-sum_{i<j} <a_i,a_j>) prod vol_ss(a_i)`.
    fn composition_sum(&self, ranks: &[i64], d: i64) -> Result<BigRational> {
        let l = ranks.len();
        let m = l - 1;
        let r: i64 = ranks.iter().sum();
        let zero = Rational64::zero();
        // s_i = r_i d_{i+1} - r_{i+1} d_i >= 1 parametrize the types; write
        // d_i = r_i d / r + L_i(s) with L_i linear
        let mut b = vec![vec![zero; m]; l];
        for i in 0..m {
            let mut next: Vec<Rational64> = b[i]
                .iter()
                .map(|x| x * Rational64::from_integer(ranks[i + 1]))
                .collect();
            next[i] += Rational64::one();
            b[i + 1] = next
                .into_iter()
                .map(|x| x / Rational64::from_integer(ranks[i]))
                .collect();
        }
        let sumb: Vec<Rational64> = (0..m).map(|k| b.iter().map(|bi| bi[k]).sum()).collect();
        let lin: Vec<Vec<Rational64>> = (0..l)
            .map(|i| {
                (0..m)
                    .map(|k| b[i][k] - Rational64::new(ranks[i], r) * sumb[k])
                    .collect()
            })
            .collect();
        let weight: Vec<i64> = (0..l)
            .map(|i| ranks[..i].iter().sum::<i64>() - ranks[i + 1..].iter().sum::<i64>())
            .collect();
        let c: Vec<Rational64> = (0..m)
            .map(|k| {
                (0..l)
                    .map(|i| lin[i][k] * Rational64::from_integer(weight[i]))
                    .sum()
            })
            .collect();
        let mut period: i64 = 1;
        for k in 0..m {
            if c[k] <= zero {
                return Err(HnsError::DefensiveAssertion(format!(
                    "non-positive growth rate {} for ranks {:?}",
                    c[k], ranks
                )));
            }
            period = period.lcm(c[k].denom());
            for i in 0..l {
                period = period.lcm((lin[i][k] / Rational64::from_integer(ranks[i])).denom());
            }
        }
        let classes = (period as u64).checked_pow(m as u32).unwrap_or(u64::MAX);
        if classes > MAX_RESIDUE_CLASSES {
            return Err(HnsError::UnsupportedRank(format!(
                "rank {} needs {} residue classes for ranks {:?}",
                r, classes, ranks
            )));
        }
        let q = self.q();
        let base = Rational64::new(d, r);
        let mut acc = BigRational::zero();
        let mut s = vec![1i64; m];
        'outer: loop {
            let mut degs = Vec::with_capacity(l);
            let mut integral = true;
            for i in 0..l {
                let mut di = base * Rational64::from_integer(ranks[i]);
                for k in 0..m {
                    di += lin[i][k] * Rational64::from_integer(s[k]);
                }
                if !di.is_integer() {
                    integral = false;
                    break;
                }
                degs.push(di.to_integer());
            }
            if integral {
                let e: i64 = (0..l).map(|i| degs[i] * weight[i]).sum();
                let mut term = q_pow(q, -e);
                for i in 0..l {
                    term *= self.vol_ss_exact(KClass::new(ranks[i], degs[i]))?;
                }
                acc += term;
            }
            for sk in s.iter_mut().take(m) {
                if *sk < period {
                    *sk += 1;
                    continue 'outer;
                }
                *sk = 1;
            }
            break;
        }
        let one = BigRational::one();
        for ck in &c {
            let step = (*ck * Rational64::from_integer(period)).to_integer();
            acc /= &one - q_pow(q, -step);
        }
        let pairs: i64 = (0..l)
            .flat_map(|i| (i + 1..l).map(move |j| (i, j)))
            .map(|(i, j)| ranks[i] * ranks[j])
            .sum();
        Ok(acc * q_pow(q, (self.g() - 1) * pairs))
    }

    /// Upper bound on the total mass of vector-bundle HN strata of `alpha`
    /// whose first slope is `< n` (requires `n <= mu(alpha)`).
    pub fn tail_bound(&self, alpha: KClass, n: i64) -> Result<BigRational> {
        let (r, d) = (alpha.r, alpha.d);
        if r < 1 {
            return Err(HnsError::RankZero);
        }
        let q = self.q();
        let mut t = BigRational::zero();
        for r1 in 1..r {
            let top = n * r1 - 1;
            let e = (self.g() - 1) * r1 * (r - r1) - r1 * d + r * top;
            t += self.vol_bun(r1)? * self.vol_bun(r - r1)? * q_pow(q, e);
        }
        Ok(t / (BigRational::one() - q_pow(q, -r)))
    }

    /// `(lo, hi, n)` with the semistable volume in `[lo, hi]`, `hi - lo <= q^-K`,
    /// from the strata with first slope `>= n`.
    fn trunc_interval(&self, alpha: KClass, k: u32) -> Result<Interval> {
        let (r, d) = (alpha.r, alpha.d);
        if r <= 1 {
            let v = self.vol_ss_exact(alpha)?;
            return Ok((v.clone(), v, d));
        }
        let shift = Integer::div_floor(&d, &r);
        let key = (r, d.rem_euclid(r), k);
        if let Some((lo, hi, n)) = self.trunc.read().expect("lock").get(&key) {
            return Ok((lo.clone(), hi.clone(), n + shift));
        }
        let q = self.q();
        let target = q_pow(q, -(k as i64));
        let half = &target / ri(2);
        let vb = self.vol_bun(r)?;
        let mut n = shift;
        let mut ksub = k + 4;
        let out = loop {
            let tail = self.tail_bound(alpha, n)?;
            if tail > half {
                n -= 1;
                continue;
            }
            let mut lo_sum = BigRational::zero();
            let mut hi_sum = BigRational::zero();
            for t in enumerate_hn_types(alpha, Rational64::from_integer(n), true) {
                if t.len() == 1 {
                    continue;
                }
                let f = q_pow(q, -twist_exponent(t.parts(), self.g()));
                let mut lo = f.clone();
                let mut hi = f;
                for p in t.parts() {
                    let (plo, phi, _) = self.trunc_interval(*p, ksub)?;
                    lo *= if plo < BigRational::zero() {
                        BigRational::zero()
                    } else {
                        plo
                    };
                    hi *= phi;
                }
                lo_sum += lo;
                hi_sum += hi;
            }
            let hi = &vb - lo_sum;
            let lo = &vb - hi_sum - tail;
            if &hi - &lo <= target {
                break (lo, hi, n);
            }
            n -= 1;
            ksub += 4;
        };
        self.trunc
            .write()
            .expect("lock")
            .insert(key, (out.0.clone(), out.1.clone(), out.2 - shift));
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::gl_order;

    fn inv(n: BigInt) -> BigRational {
        BigRational::new(BigInt::one(), n)
    }

    #[test]
    fn mode_parsing() {
        assert_eq!("exact".parse::<VolMode>().unwrap(), VolMode::Exact);
        assert_eq!("trunc:30".parse::<VolMode>().unwrap(), VolMode::Truncated(30));
        assert!("trunc:x".parse::<VolMode>().is_err());
        assert!("fast".parse::<VolMode>().is_err());
    }

    #[test]
    fn p1_bundle_volumes() {
        for q in [2u64, 3, 5] {
            let v = CurveVolumes::new(ZetaDatum::p1(q).unwrap());
            let qq = BigInt::from(q);
            let expect = inv((&qq - 1) * (&qq - 1) * (&qq * &qq - 1));
            assert_eq!(v.vol_bun(2).unwrap(), expect);
            assert_eq!(v.vol_bun(1).unwrap(), inv(qq - 1));
        }
    }

    #[test]
    fn p1_semistable_exact() {
        for q in [2u64, 3, 4, 5] {
            let v = CurveVolumes::new(ZetaDatum::p1(q).unwrap());
            for d in -3..4 {
                assert_eq!(
                    v.vol_ss_exact(KClass::new(1, d)).unwrap(),
                    inv(BigInt::from(q - 1))
                );
            }
            assert_eq!(
                v.vol_ss_exact(KClass::new(2, 0)).unwrap(),
                inv(gl_order(2, q).unwrap())
            );
            assert_eq!(
                v.vol_ss_exact(KClass::new(2, 4)).unwrap(),
                inv(gl_order(2, q).unwrap())
            );
            assert!(v.vol_ss_exact(KClass::new(2, 1)).unwrap().is_zero());
            assert_eq!(
                v.vol_ss_exact(KClass::new(3, 0)).unwrap(),
                inv(gl_order(3, q).unwrap())
            );
            assert!(v.vol_ss_exact(KClass::new(3, 1)).unwrap().is_zero());
            assert!(v.vol_ss_exact(KClass::new(3, -1)).unwrap().is_zero());
        }
    }

    #[test]
    fn p1_rank_four() {
        let v = CurveVolumes::new(ZetaDatum::p1(2).unwrap());
        assert_eq!(
            v.vol_ss_exact(KClass::new(4, 0)).unwrap(),
            inv(gl_order(4, 2).unwrap())
        );
        for d in 1..4 {
            assert!(v.vol_ss_exact(KClass::new(4, d)).unwrap().is_zero());
        }
    }

    #[test]
    fn truncated_brackets_exact() {
        let v = CurveVolumes::new(ZetaDatum::new(2, 1, vec![1, -1, 2]).unwrap());
        for alpha in [KClass::new(2, 0), KClass::new(2, 1), KClass::new(3, 1)] {
            let exact = v.vol_ss_exact(alpha).unwrap();
            let t = v.vol_ss(alpha, VolMode::Truncated(12)).unwrap();
            let hi = t.value.to_rational().unwrap();
            assert!(hi >= exact && &hi - &t.error_bound <= exact, "{}", alpha);
            assert!(t.error_bound <= q_pow(2, -12));
        }
    }

    #[test]
    fn periodicity() {
        let v = CurveVolumes::new(ZetaDatum::new(2, 2, vec![1, -2, 5, -4, 4]).unwrap());
        for r in 1..4 {
            for d in -2..3 {
                let a = v.vol_ss_exact(KClass::new(r, d)).unwrap();
                v.ss.write().unwrap().clear();
                let b = v.vol_ss_exact(KClass::new(r, d + r)).unwrap();
                assert_eq!(a, b);
                assert!(a > BigRational::zero());
            }
        }
    }
}
