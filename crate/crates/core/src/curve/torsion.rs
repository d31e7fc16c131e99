use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::ZetaDatum;
use crate::scalars::int_pow;

/// Partitions of `n`, parts weakly decreasing.
pub fn partitions(n: u32) -> Vec<Vec<u32>> {
    fn go(n: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=n.min(max)).rev() {
            cur.push(p);
            go(n - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Automorphism order of the torsion module of type `lambda` at a point with
/// residue field of size `qq`: `qq^(|l| + 2 n(l)) prod_i phi_{m_i}(1/qq)`.
pub fn aut_partition(lambda: &[u32], qq: &BigInt) -> BigInt {
    let size: u64 = lambda.iter().map(|&x| x as u64).sum();
    let n_l: u64 = lambda.iter().enumerate().map(|(i, &x)| i as u64 * x as u64).sum();
    let mut exp = size + 2 * n_l;
    let mut acc = BigInt::one();
    let mut i = 0;
    while i < lambda.len() {
        let mut j = i;
        while j < lambda.len() && lambda[j] == lambda[i] {
            j += 1;
        }
        let m = (j - i) as u64;
        exp -= m * (m + 1) / 2;
        let mut qk = BigInt::one();
        for _ in 0..m {
            qk *= qq;
            acc *= &qk - 1;
        }
        i = j;
    }
    acc * num_traits::pow(qq.clone(), exp as usize)
}

/// `sum_{|l| = n} 1 / a_l(qq)`.
pub fn partition_mass(n: u32, qq: &BigInt) -> BigRational {
    partitions(n)
        .iter()
        .map(|l| BigRational::new(BigInt::one(), aut_partition(l, qq)))
        .fold(BigRational::zero(), |a, b| a + b)
}

fn binomial(n: &BigInt, k: u32) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - BigInt::from(i)) / BigInt::from(i + 1);
    }
    acc
}

fn mul_trunc(x: &[BigRational], y: &[BigRational], n: usize) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); n + 1];
    for (i, a) in x.iter().enumerate().take(n + 1) {
        if a.is_zero() {
            continue;
        }
        for (j, b) in y.iter().enumerate().take(n + 1 - i) {
            out[i + j] += a * b;
        }
    }
    out
}

/// `sum 1/#Aut(T)` over torsion sheaves of degree `d`, via the Euler product
/// over closed points of degree `<= d`.
pub fn vol_torsion(z: &ZetaDatum, d: i64) -> Vec<BigRational> {
    let n = d.max(0) as usize;
    let mut series = vec![BigRational::zero(); n + 1];
    series[0] = BigRational::one();
    for e in 1..=n {
        let b = z.closed_points(e as u32).expect("validated datum");
        if b.is_zero() {
            continue;
        }
        let qq = int_pow(z.q(), e as u32);
        let kmax = n / e;
        // X(t) = S_e(t^e) - 1
        let mut x = vec![BigRational::zero(); n + 1];
        for k in 1..=kmax {
            x[k * e] = partition_mass(k as u32, &qq);
        }
        // (1 + X)^b = sum_k C(b,k) X^k, X has no constant term
        let mut factor = vec![BigRational::zero(); n + 1];
        factor[0] = BigRational::one();
        let mut xk = factor.clone();
        for k in 1..=kmax as u32 {
            xk = mul_trunc(&xk, &x, n);
            let c = BigRational::from_integer(binomial(&b, k));
            for (f, v) in factor.iter_mut().zip(&xk) {
                *f += &c * v;
            }
        }
        series = mul_trunc(&series, &factor, n);
    }
    series
}
