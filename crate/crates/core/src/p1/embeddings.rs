use num_bigint::BigInt;

use super::sheaf::{ClosedPoint, P1Sheaf};
use crate::error::{HnsError, Result};

type Poly = Vec<u64>;

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..p).take_while(|k| k * k <= p).all(|k| p % k != 0)
}

fn trim(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn mul(a: &[u64], b: &[u64], p: u64) -> Poly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(out)
}

/// Remainder modulo a monic polynomial.
fn rem(a: &[u64], m: &[u64], p: u64) -> Poly {
    let mut a = trim(a.to_vec());
    let dm = m.len() - 1;
    while a.len() > dm {
        let lead = *a.last().expect("nonempty");
        let shift = a.len() - 1 - dm;
        for (i, c) in m.iter().enumerate() {
            a[shift + i] = (a[shift + i] + p - lead * c % p) % p;
        }
        a = trim(a);
    }
    a
}

fn monic_polys(deg: usize, p: u64) -> Vec<Poly> {
    let count = p.pow(deg as u32);
    (0..count)
        .map(|mut n| {
            let mut c: Poly = (0..deg)
                .map(|_| {
                    let d = n % p;
                    n /= p;
                    d
                })
                .collect();
            c.push(1);
            c
        })
        .collect()
}

fn irreducible(f: &[u64], p: u64) -> bool {
    let d = f.len() - 1;
    (1..=d / 2).all(|k| monic_polys(k, p).iter().all(|g| !rem(f, g, p).is_empty()))
}

#[derive(Clone, Debug)]
enum Chart {
    Affine,
    Infinity,
}

/// A concrete irreducible polynomial for each abstract closed point.
fn realize(x: &ClosedPoint, p: u64) -> Result<(Poly, Chart)> {
    let e = x.degree as usize;
    if e == 1 && x.index == p {
        return Ok((vec![0, 1], Chart::Infinity));
    }
    let found = monic_polys(e, p)
        .into_iter()
        .filter(|f| irreducible(f, p))
        .nth(x.index as usize);
    found
        .map(|f| (f, Chart::Affine))
        .ok_or_else(|| HnsError::InvalidClass(format!("no closed point {:?} over F_{}", x, p)))
}

fn rank(mut rows: Vec<Vec<u64>>, cols: usize, p: u64) -> usize {
    let inv = |x: u64| (1..p).find(|y| x * y % p == 1).expect("field element");
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, piv);
        let s = inv(rows[r][c]);
        for v in rows[r].iter_mut() {
            *v = *v * s % p;
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let f = rows[i][c];
                let pivot = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(&pivot).take(cols) {
                    *x = (*x + p - f * y % p) % p;
                }
            }
        }
        r += 1;
    }
    r
}

/// Counts injective maps `O(a) -> F` over a prime field by listing every map
/// and testing injectivity on global sections of a high enough twist.
pub fn count_embeddings_exhaustive(a: i64, f: &P1Sheaf, p: u64) -> Result<BigInt> {
    if !is_prime(p) {
        return Err(HnsError::Precondition(format!(
            "exhaustive count needs a prime field, got {}",
            p
        )));
    }
    let degs: Vec<usize> = f
        .splitting()
        .iter()
        .filter(|&&b| b >= a)
        .map(|&b| (b - a) as usize)
        .collect();
    // one block per summand O_x / pi^k of the torsion
    let mut blocks: Vec<(Poly, Chart)> = Vec::new();
    for (x, lam) in f.torsion() {
        let (pi, chart) = realize(x, p)?;
        for &k in lam {
            let mut m = vec![1];
            for _ in 0..k {
                m = mul(&m, &pi, p);
            }
            blocks.push((m, chart.clone()));
        }
    }
    let tdeg = f.torsion_degree();
    let n = tdeg.max(0) as usize;
    let ncols = n + 1;
    let dims: Vec<usize> = degs
        .iter()
        .map(|k| k + 1)
        .chain(blocks.iter().map(|(m, _)| m.len() - 1))
        .collect();
    let h: usize = dims.iter().sum();
    if h > 22 {
        return Err(HnsError::WindowTooLarge(format!("{}^{} maps", p, h)));
    }
    // image of the section monomial X^i Y^(n-i) in each torsion block
    let local: Vec<Vec<Poly>> = blocks
        .iter()
        .map(|(m, chart)| {
            (0..ncols)
                .map(|i| {
                    let e = match chart {
                        Chart::Affine => i,
                        Chart::Infinity => n - i,
                    };
                    let mut mono = vec![0; e + 1];
                    mono[e] = 1;
                    rem(&mono, m, p)
                })
                .collect()
        })
        .collect();
    let total = p.pow(h as u32);
    let mut injective: u64 = 0;
    let mut digits = vec![0u64; h];
    for code in 0..total {
        let mut c = code;
        for d in digits.iter_mut() {
            *d = c % p;
            c /= p;
        }
        let mut rows: Vec<Vec<u64>> = Vec::new();
        let mut off = 0;
        for &k in &degs {
            let coeffs = &digits[off..off + k + 1];
            off += k + 1;
            for row in 0..=k + n {
                rows.push(
                    (0..ncols)
                        .map(|i| {
                            if row >= i && row - i <= k {
                                coeffs[row - i]
                            } else {
                                0
                            }
                        })
                        .collect(),
                );
            }
        }
        for (bi, (m, _)) in blocks.iter().enumerate() {
            let dim = m.len() - 1;
            let tau = trim(digits[off..off + dim].to_vec());
            off += dim;
            let images: Vec<Poly> = (0..ncols)
                .map(|i| rem(&mul(&local[bi][i], &tau, p), m, p))
                .collect();
            for row in 0..dim {
                rows.push(
                    (0..ncols)
                        .map(|i| images[i].get(row).copied().unwrap_or(0))
                        .collect(),
                );
            }
        }
        if rank(rows, ncols, p) == ncols {
            injective += 1;
        }
    }
    Ok(BigInt::from(injective))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    #[test]
    fn polynomial_helpers() {
        assert_eq!(rem(&[1, 0, 1], &[1, 1], 2), Vec::<u64>::new());
        assert!(irreducible(&[1, 1, 1], 2));
        assert!(!irreducible(&[1, 0, 1], 2));
        let irr2: usize = monic_polys(2, 3).iter().filter(|f| irreducible(f, 3)).count();
        assert_eq!(irr2, 3);
    }

    #[test]
    fn small_cases() {
        let f = P1Sheaf::vector(vec![1, 1]);
        assert_eq!(count_embeddings_exhaustive(0, &f, 2).unwrap(), BigInt::from(15));
        let t = P1Sheaf::new(
            vec![],
            BTreeMap::from([(ClosedPoint { degree: 1, index: 2 }, vec![1])]),
        )
        .unwrap();
        assert_eq!(count_embeddings_exhaustive(0, &t, 2).unwrap(), BigInt::from(0));
        let mixed = P1Sheaf::new(
            vec![0],
            BTreeMap::from([(ClosedPoint { degree: 2, index: 0 }, vec![1])]),
        )
        .unwrap();
        // 2 * 4 maps, those with zero vector part are not injective
        assert_eq!(
            count_embeddings_exhaustive(0, &mixed, 2).unwrap(),
            BigInt::from(4)
        );
        assert!(count_embeddings_exhaustive(0, &f, 4).is_err());
    }
}
