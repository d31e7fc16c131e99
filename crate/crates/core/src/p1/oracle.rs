use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::sheaf::{p1_closed_points, ClosedPoint, P1Sheaf, Partition};
use crate::classes::{HNType, KClass};
use crate::curve::partitions;
use crate::error::{HnsError, Result};
use crate::scalars::{gl_order, int_pow, is_prime_power};

/// Explicit enumerations stop beyond this many isomorphism classes.
pub const MAX_ENUMERATED: u64 = 2_000_000;

/// Ground-truth computations on the projective line over `F_q`.
#[derive(Clone, Debug)]
pub struct P1Oracle {
    q: u64,
}

fn conjugate(l: &[u32]) -> Vec<u32> {
    let top = l.first().copied().unwrap_or(0);
    (1..=top)
        .map(|k| l.iter().filter(|&&p| p >= k).count() as u32)
        .collect()
}

/// Multiplicities of the distinct values in a sorted sequence.
fn multiplicities<T: PartialEq>(xs: &[T]) -> Vec<i64> {
    let mut out = Vec::new();
    let mut i = 0;
    while i < xs.len() {
        let mut j = i;
        while j < xs.len() && xs[j] == xs[i] {
            j += 1;
        }
        out.push((j - i) as i64);
        i = j;
    }
    out
}

impl P1Oracle {
    pub fn new(q: u64) -> Result<Self> {
        if !is_prime_power(q) {
            return Err(HnsError::InvalidZeta(format!("q = {} is not a prime power", q)));
        }
        Ok(P1Oracle { q })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn closed_points(&self, e: u32) -> BigInt {
        p1_closed_points(self.q, e)
    }

    pub fn hom_dim(&self, f: &P1Sheaf, g: &P1Sheaf) -> i64 {
        let mut h = 0;
        for a in f.splitting() {
            for b in g.splitting() {
                h += (b - a + 1).max(0);
            }
        }
        h += f.rank() * g.torsion_degree();
        for (x, l) in f.torsion() {
            if let Some(m) = g.torsion().get(x) {
                let (lc, mc) = (conjugate(l), conjugate(m));
                let overlap: i64 = lc.iter().zip(&mc).map(|(a, b)| (*a as i64) * (*b as i64)).sum();
                h += x.degree as i64 * overlap;
            }
        }
        h
    }

    /// Serre duality on the projective line: `ext(F,G) = hom(G, F(-2))`.
    pub fn ext_dim(&self, f: &P1Sheaf, g: &P1Sheaf) -> i64 {
        self.hom_dim(g, &f.twist(-2))
    }

    /// `q^(dim rad End) * prod |GL|` over the semisimple blocks of `End(F)`.
    pub fn aut_order(&self, f: &P1Sheaf) -> BigInt {
        let end = self.hom_dim(f, f);
        let mut semisimple = 0;
        let mut acc = BigInt::one();
        for m in multiplicities(f.splitting()) {
            semisimple += m * m;
            acc *= gl_order(m, self.q).expect("m >= 0");
        }
        for (x, l) in f.torsion() {
            let qe = int_pow(self.q, x.degree);
            for m in multiplicities(l) {
                semisimple += x.degree as i64 * m * m;
                let qe_u = qe.to_u64().expect("residue field fits in u64");
                acc *= gl_order(m, qe_u).expect("m >= 0");
            }
        }
        acc * int_pow(self.q, (end - semisimple) as u32)
    }

    /// Equal degrees grouped, slopes increasing, torsion last.
    pub fn hn_type_of(&self, f: &P1Sheaf) -> Result<HNType> {
        let mut parts = Vec::new();
        let split = f.splitting();
        let mut i = split.len();
        while i > 0 {
            let a = split[i - 1];
            let mut j = i;
            while j > 0 && split[j - 1] == a {
                j -= 1;
            }
            let m = (i - j) as i64;
            parts.push(KClass::new(m, m * a));
            i = j;
        }
        let t = f.torsion_degree();
        if t > 0 {
            parts.push(KClass::new(0, t));
        }
        HNType::new(parts)
    }

    /// Number of torsion isomorphism classes of each degree `0..=n`.
    pub fn torsion_census(&self, n: i64) -> Vec<BigInt> {
        self.torsion_series(n, |_, _| BigRational::one())
            .into_iter()
            .map(|x| x.to_integer())
            .collect()
    }

    /// `sum_T w(T)` over torsion sheaves by degree, for weights multiplicative
    /// over points; `local(e, lambda)` is the weight of one point of degree `e`.
    fn torsion_series<F>(&self, n: i64, local: F) -> Vec<BigRational>
    where
        F: Fn(u32, &Partition) -> BigRational,
    {
        let n = n.max(0) as usize;
        let mut series = vec![BigRational::zero(); n + 1];
        series[0] = BigRational::one();
        for e in 1..=n {
            let count = self.closed_points(e as u32);
            let kmax = n / e;
            let mut x = vec![BigRational::zero(); kmax + 1];
            for (k, slot) in x.iter_mut().enumerate().skip(1) {
                for l in partitions(k as u32) {
                    *slot += local(e as u32, &l);
                }
            }
            // choose j distinct points of degree e, each with nonzero torsion
            let mut factor = vec![BigRational::zero(); kmax + 1];
            factor[0] = BigRational::one();
            let mut xj = factor.clone();
            let mut binom = BigInt::one();
            for j in 1..=kmax {
                let mut next = vec![BigRational::zero(); kmax + 1];
                for a in 0..=kmax {
                    if xj[a].is_zero() {
                        continue;
                    }
                    for b in 1..=kmax - a {
                        next[a + b] += &xj[a] * &x[b];
                    }
                }
                xj = next;
                binom = binom * (&count - BigInt::from(j - 1)) / BigInt::from(j);
                let c = BigRational::from_integer(binom.clone());
                for (f, v) in factor.iter_mut().zip(&xj) {
                    *f += &c * v;
                }
            }
            let mut out = vec![BigRational::zero(); n + 1];
            for (i, s) in series.iter().enumerate() {
                if s.is_zero() {
                    continue;
                }
                for (k, f) in factor.iter().enumerate() {
                    if i + k * e > n {
                        break;
                    }
                    out[i + k * e] += s * f;
                }
            }
            series = out;
        }
        series
    }

    /// Every torsion sheaf of degree `n`, explicitly.
    pub fn enumerate_torsion(&self, n: i64) -> Result<Vec<BTreeMap<ClosedPoint, Partition>>> {
        if n < 0 {
            return Ok(vec![]);
        }
        let count = &self.torsion_census(n)[n as usize];
        if *count > BigInt::from(MAX_ENUMERATED) {
            return Err(HnsError::WindowTooLarge(format!(
                "{} torsion sheaves of degree {}",
                count, n
            )));
        }
        let mut points = Vec::new();
        for e in 1..=n as u32 {
            let c = self.closed_points(e).to_u64().expect("guarded above");
            for index in 0..c {
                points.push(ClosedPoint { degree: e, index });
            }
        }
        let mut out = Vec::new();
        fn go(
            points: &[ClosedPoint],
            start: usize,
            rem: i64,
            cur: &mut BTreeMap<ClosedPoint, Partition>,
            out: &mut Vec<BTreeMap<ClosedPoint, Partition>>,
        ) {
            if rem == 0 {
                out.push(cur.clone());
                return;
            }
            for i in start..points.len() {
                let x = points[i];
                let e = x.degree as i64;
                if e > rem {
                    break;
                }
                for k in 1..=rem / e {
                    for l in partitions(k as u32) {
                        cur.insert(x, l);
                        go(points, i + 1, rem - k * e, cur, out);
                        cur.remove(&x);
                    }
                }
            }
        }
        go(&points, 0, n, &mut BTreeMap::new(), &mut out);
        Ok(out)
    }

    /// All sheaves of class `(r, d)` with every splitting degree `>= min_deg`.
    pub fn enumerate_sheaves(&self, r: i64, d: i64, min_deg: i64) -> Result<Vec<P1Sheaf>> {
        if r < 0 {
            return Err(HnsError::Precondition(format!("rank {} < 0", r)));
        }
        let mut out = Vec::new();
        for split in splittings(r, d, min_deg) {
            let t = d - split.iter().sum::<i64>();
            for tor in self.enumerate_torsion(t)? {
                out.push(P1Sheaf::new(split.clone(), tor)?);
                if out.len() as u64 > MAX_ENUMERATED {
                    return Err(HnsError::WindowTooLarge(format!(
                        "more than {} sheaves of class ({},{})",
                        MAX_ENUMERATED, r, d
                    )));
                }
            }
        }
        Ok(out)
    }

    /// `sum 1/#Aut(F)` over the HN stratum of `t`. The vector part of the type
    /// pins down the splitting; torsion is summed point by point with
    /// automorphism orders computed on single-point sheaves.
    pub fn vol_stratum_direct(&self, t: &HNType) -> Result<BigRational> {
        let w = t.weight();
        if w.r > 3 {
            return Err(HnsError::WindowTooLarge(format!("rank {} > 3", w.r)));
        }
        let tdeg = t.torsion_degree();
        if tdeg > 64 {
            return Err(HnsError::WindowTooLarge(format!("torsion degree {} > 64", tdeg)));
        }
        let mut split = Vec::new();
        for p in t.parts().iter().filter(|p| p.r > 0) {
            if p.d % p.r != 0 {
                return Ok(BigRational::zero());
            }
            split.extend(std::iter::repeat_n(p.d / p.r, p.r as usize));
        }
        let v = P1Sheaf::vector(split);
        let base = self.aut_order(&v);
        let torsion = self.torsion_series(tdeg, |e, l| {
            let x = ClosedPoint { degree: e, index: 0 };
            let s = P1Sheaf::skyscraper(x, l.clone()).expect("valid partition");
            // a point summand contributes its own automorphisms and Hom(V, T_x)
            let a = self.aut_order(&s) * int_pow(self.q, (self.hom_dim(&v, &s)) as u32);
            BigRational::new(BigInt::one(), a)
        });
        Ok(torsion[tdeg as usize].clone() / BigRational::from_integer(base))
    }

    /// Explicit `sum 1/#Aut(F)` over a list of sheaves.
    pub fn mass(&self, sheaves: &[P1Sheaf]) -> BigRational {
        sheaves
            .iter()
            .map(|f| BigRational::new(BigInt::one(), self.aut_order(f)))
            .fold(BigRational::zero(), |a, b| a + b)
    }

    /// `#{O(a) -> F injective} = q^hom(O(a), F) - q^hom(O(a), T_F)`.
    pub fn count_embeddings(&self, a: i64, f: &P1Sheaf) -> BigInt {
        let l = P1Sheaf::line(a);
        let all = self.hom_dim(&l, f);
        let tors = self.hom_dim(&l, &f.torsion_part());
        int_pow(self.q, all as u32) - int_pow(self.q, tors as u32)
    }
}

/// Decreasing sequences of length `r`, entries `>= min_deg`, sum `<= d`.
pub(crate) fn splittings(r: i64, d: i64, min_deg: i64) -> Vec<Vec<i64>> {
    fn go(r: i64, budget: i64, min_deg: i64, max: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if r == 0 {
            out.push(cur.clone());
            return;
        }
        // remaining entries are each >= min_deg
        let top = max.min(budget - (r - 1) * min_deg);
        for a in (min_deg..=top).rev() {
            cur.push(a);
            go(r - 1, budget - a, min_deg, a, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(r, d, min_deg, i64::MAX, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::ri;

    fn o(q: u64) -> P1Oracle {
        P1Oracle::new(q).unwrap()
    }

    fn pt(e: u32, i: u64) -> ClosedPoint {
        ClosedPoint { degree: e, index: i }
    }

    #[test]
    fn hom_and_ext() {
        let p = o(2);
        assert_eq!(p.hom_dim(&P1Sheaf::line(0), &P1Sheaf::line(3)), 4);
        assert_eq!(p.ext_dim(&P1Sheaf::line(1), &P1Sheaf::line(-1)), 1);
        assert_eq!(p.ext_dim(&P1Sheaf::line(-1), &P1Sheaf::line(1)), 0);
        let t = P1Sheaf::skyscraper(pt(2, 0), vec![1]).unwrap();
        assert_eq!(p.hom_dim(&t, &t), 2);
        let u = P1Sheaf::skyscraper(pt(1, 0), vec![1, 1]).unwrap();
        assert_eq!(p.hom_dim(&u, &u), 4);
        let w = P1Sheaf::skyscraper(pt(1, 0), vec![2, 1]).unwrap();
        assert_eq!(p.hom_dim(&w, &w), 5);
        assert_eq!(p.hom_dim(&t, &P1Sheaf::line(4)), 0);
        assert_eq!(p.hom_dim(&P1Sheaf::line(-7), &t), 2);
    }

    #[test]
    fn aut_orders() {
        for q in [2u64, 3, 5] {
            let p = o(q);
            let qq = BigInt::from(q);
            assert_eq!(p.aut_order(&P1Sheaf::vector(vec![0, 0])), gl_order(2, q).unwrap());
            assert_eq!(
                p.aut_order(&P1Sheaf::vector(vec![1, 0])),
                (&qq - 1) * (&qq - 1) * &qq * &qq
            );
            let s = P1Sheaf::skyscraper(pt(1, 0), vec![1, 1]).unwrap();
            assert_eq!(p.aut_order(&s), gl_order(2, q).unwrap());
        }
    }

    #[test]
    fn hn_types() {
        let p = o(2);
        let t = |f: &P1Sheaf| p.hn_type_of(f).unwrap().to_string();
        assert_eq!(t(&P1Sheaf::vector(vec![3, 3, 3])), "((3,9))");
        let f = P1Sheaf::new(vec![1, -1], BTreeMap::from([(pt(2, 0), vec![1])])).unwrap();
        assert_eq!(t(&f), "((1,-1),(1,1),(0,2))");
        assert_eq!(t(&P1Sheaf::vector(vec![0, 0, 5])), "((2,0),(1,5))");
    }

    #[test]
    fn enumeration_examples() {
        let p = o(2);
        assert_eq!(p.enumerate_sheaves(1, 0, 0).unwrap(), vec![P1Sheaf::line(0)]);
        assert_eq!(p.enumerate_sheaves(0, 1, 0).unwrap().len(), 3);
        // (0,0): 1, (1,-1): 1, (0,-1)+T1: 3, (-1,-1)+T2: 10
        assert_eq!(p.enumerate_sheaves(2, 0, -1).unwrap().len(), 15);
        assert_eq!(p.enumerate_torsion(2).unwrap().len(), 10);
        for n in 0..6 {
            assert_eq!(
                BigInt::from(p.enumerate_torsion(n).unwrap().len()),
                p.torsion_census(n)[n as usize]
            );
        }
        let all = p.enumerate_sheaves(2, 0, -2).unwrap();
        let mut dedup = all.clone();
        dedup.sort();
        dedup.dedup();
        assert_eq!(dedup.len(), all.len());
    }

    #[test]
    fn stratum_examples() {
        let p = o(2);
        let t = HNType::new(vec![KClass::new(1, -1), KClass::new(1, 1)]).unwrap();
        assert_eq!(
            p.vol_stratum_direct(&t).unwrap(),
            BigRational::new(1.into(), 8.into())
        );
        let s = HNType::single(KClass::new(2, 0));
        assert_eq!(
            p.vol_stratum_direct(&s).unwrap(),
            BigRational::new(1.into(), 6.into())
        );
        let tor = HNType::single(KClass::new(0, 1));
        assert_eq!(o(3).vol_stratum_direct(&tor).unwrap(), ri(2));
        let odd = HNType::single(KClass::new(2, 1));
        assert!(p.vol_stratum_direct(&odd).unwrap().is_zero());
    }

    #[test]
    fn factorized_strata_match_explicit_sum() {
        for q in [2u64, 3] {
            let p = o(q);
            for (r, d, min_deg) in [(2, 0, -1), (2, 1, -1), (1, 2, 0), (3, 0, -1), (0, 3, 0)] {
                let sheaves = p.enumerate_sheaves(r, d, min_deg).unwrap();
                let mut by_type: BTreeMap<HNType, Vec<P1Sheaf>> = BTreeMap::new();
                for f in sheaves {
                    by_type.entry(p.hn_type_of(&f).unwrap()).or_default().push(f);
                }
                for (t, fs) in by_type {
                    assert_eq!(p.vol_stratum_direct(&t).unwrap(), p.mass(&fs), "{} q={}", t, q);
                }
            }
        }
    }

    #[test]
    fn embedding_examples() {
        let p = o(2);
        let f = P1Sheaf::vector(vec![1, 1]);
        assert_eq!(p.count_embeddings(0, &f), BigInt::from(15));
        assert_eq!(p.count_embeddings(2, &f), BigInt::from(0));
        let t = P1Sheaf::skyscraper(pt(1, 0), vec![2]).unwrap();
        assert_eq!(p.count_embeddings(0, &t), BigInt::from(0));
    }

    #[test]
    fn splitting_enumeration() {
        assert_eq!(
            splittings(2, 0, -1),
            vec![vec![1, -1], vec![0, 0], vec![0, -1], vec![-1, -1]]
        );
        assert_eq!(splittings(0, 5, 0), vec![Vec::<i64>::new()]);
    }
}
