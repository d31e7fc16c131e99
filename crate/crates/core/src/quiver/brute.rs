use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use rayon::prelude::*;

use super::datum::{DimVector, QuiverDatum, Stability};
use crate::error::{HnsError, Result};
use crate::scalars::{gl_order, BigRational};

/// Largest number of matrix entries the brute force will enumerate.
pub const MAX_BRUTE_ENTRIES: i64 = 16;

/// Exhaustive stacky counts: semistable volume and the volume of every HN
/// stratum that occurs (keyed by slope-increasing type).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BruteForce {
    pub vol_ss: BigRational,
    pub strata: BTreeMap<Vec<DimVector>, BigRational>,
}

/// Subspaces of `F_p^n` as bitmasks over vector indices (base-`p` digits).
fn subspaces(p: u64, n: usize) -> Vec<(u128, i64)> {
    let size = p.pow(n as u32) as usize;
    let add = |x: usize, y: usize| -> usize {
        let (mut a, mut b, mut out, mut m) = (x, y, 0, 1);
        for _ in 0..n {
            out += ((a % p as usize + b % p as usize) % p as usize) * m;
            a /= p as usize;
            b /= p as usize;
            m *= p as usize;
        }
        out
    };
    let mut found: Vec<(u128, i64)> = vec![(1, 0)];
    let mut i = 0;
    while i < found.len() {
        let (mask, dim) = found[i];
        for v in 0..size {
            if mask >> v & 1 == 1 {
                continue;
            }
            // span(S, v) = union of S + c v
            let mut span = mask;
            let mut cv = v;
            for _ in 1..p {
                for s in 0..size {
                    if mask >> s & 1 == 1 {
                        span |= 1u128 << add(s, cv);
                    }
                }
                cv = add(cv, v);
            }
            if !found.iter().any(|&(m, _)| m == span) {
                found.push((span, dim + 1));
            }
        }
        i += 1;
    }
    found
}

fn digits(mut x: usize, p: usize, n: usize) -> Vec<usize> {
    (0..n)
        .map(|_| {
            let d = x % p;
            x /= p;
            d
        })
        .collect()
}

fn undigits(v: &[usize], p: usize) -> usize {
    v.iter().rev().fold(0, |acc, &d| acc * p + d)
}

struct Setup<'a> {
    quiver: &'a QuiverDatum,
    theta: &'a Stability,
    d: &'a DimVector,
    p: usize,
    subs: Vec<Vec<(u128, i64)>>,
}

impl Setup<'_> {
    /// HN type of the representation with the given matrices (row-major,
    /// `d_t x d_s` per arrow).
    fn hn_type(&self, mats: &[Vec<usize>]) -> Vec<DimVector> {
        let n = self.quiver.vertices();
        let p = self.p;
        // image of each subspace at the source under each arrow
        let images: Vec<Vec<u128>> = self
            .quiver
            .arrows()
            .iter()
            .zip(mats)
            .map(|(&(s, t), m)| {
                let (ds, dt) = (self.d.0[s] as usize, self.d.0[t] as usize);
                let img: Vec<usize> = (0..p.pow(ds as u32))
                    .map(|x| {
                        let xv = digits(x, p, ds);
                        let y: Vec<usize> = (0..dt)
                            .map(|r| (0..ds).map(|c| m[r * ds + c] * xv[c]).sum::<usize>() % p)
                            .collect();
                        undigits(&y, p)
                    })
                    .collect();
                self.subs[s]
                    .iter()
                    .map(|&(mask, _)| {
                        (0..img.len())
                            .filter(|&x| mask >> x & 1 == 1)
                            .fold(0u128, |acc, x| acc | 1u128 << img[x])
                    })
                    .collect()
            })
            .collect();
        // all subrepresentations as (subspace index per vertex, dims)
        let mut subreps: Vec<(Vec<usize>, DimVector)> = Vec::new();
        let mut idx = vec![0usize; n];
        loop {
            let closed = self
                .quiver
                .arrows()
                .iter()
                .enumerate()
                .all(|(a, &(s, t))| images[a][idx[s]] & !self.subs[t][idx[t]].0 == 0);
            if closed {
                let dims = DimVector((0..n).map(|i| self.subs[i][idx[i]].1).collect());
                subreps.push((idx.clone(), dims));
            }
            let mut k = 0;
            while k < n {
                idx[k] += 1;
                if idx[k] < self.subs[k].len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
            if k == n {
                break;
            }
        }
        let contains = |big: &[usize], small: &[usize]| {
            (0..n).all(|i| {
                let (b, s) = (self.subs[i][big[i]].0, self.subs[i][small[i]].0);
                b & s == s
            })
        };
        let mut cur = vec![0usize; n];
        let mut cur_dim = DimVector::zeros(n);
        let mut pieces = Vec::new();
        while cur_dim != *self.d {
            let f = subreps
                .iter()
                .filter(|f| f.1 != cur_dim && contains(&f.0, &cur))
                .max_by_key(|f| {
                    let piece = &f.1 - &cur_dim;
                    (self.theta.slope(&piece).expect("nonzero"), piece.total())
                })
                .expect("the whole representation contains cur");
            pieces.push(&f.1 - &cur_dim);
            cur = f.0.clone();
            cur_dim = f.1.clone();
        }
        pieces.reverse();
        pieces
    }
}

/// Enumerates every representation of dimension `d` over the prime field
/// `F_q` (`q` in {2, 3}) and sorts it into its HN stratum.
pub fn brute_force(quiver: &QuiverDatum, theta: &Stability, d: &DimVector, q: u64) -> Result<BruteForce> {
    quiver.check_dim(d)?;
    if d.is_zero() {
        return Err(HnsError::Precondition("zero dimension vector".into()));
    }
    if q != 2 && q != 3 {
        return Err(HnsError::Precondition(format!(
            "brute force needs q in {{2,3}}, got {}",
            q
        )));
    }
    let shapes: Vec<(usize, usize)> = quiver
        .arrows()
        .iter()
        .map(|&(s, t)| (d.0[t] as usize, d.0[s] as usize))
        .collect();
    let entries: usize = shapes.iter().map(|(r, c)| r * c).sum();
    if entries as i64 > MAX_BRUTE_ENTRIES {
        return Err(HnsError::WindowTooLarge(format!(
            "{} matrix entries exceed {}",
            entries, MAX_BRUTE_ENTRIES
        )));
    }
    if d.0.iter().any(|&x| q.pow(x as u32) > 128) {
        return Err(HnsError::WindowTooLarge(format!(
            "{} too large for subspace search",
            d
        )));
    }
    let p = q as usize;
    let setup = Setup {
        quiver,
        theta,
        d,
        p,
        subs: d.0.iter().map(|&x| subspaces(q, x as usize)).collect(),
    };
    let total = (p as u64).pow(entries as u32);
    let counts: HashMap<Vec<DimVector>, u64> = (0..total)
        .into_par_iter()
        .fold(HashMap::new, |mut acc, code| {
            let flat = digits(code as usize, p, entries);
            let mut mats = Vec::with_capacity(shapes.len());
            let mut off = 0;
            for &(r, c) in &shapes {
                mats.push(flat[off..off + r * c].to_vec());
                off += r * c;
            }
            *acc.entry(setup.hn_type(&mats)).or_insert(0u64) += 1;
            acc
        })
        .reduce(HashMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            a
        });
    let mut aut = BigInt::from(1);
    for &x in &d.0 {
        aut *= gl_order(x, q)?;
    }
    let strata: BTreeMap<Vec<DimVector>, BigRational> = counts
        .into_iter()
        .map(|(k, c)| (k, BigRational::new(BigInt::from(c), aut.clone())))
        .collect();
    let vol_ss = strata
        .get(&vec![d.clone()])
        .cloned()
        .unwrap_or_else(|| BigRational::from_integer(0.into()));
    Ok(BruteForce { vol_ss, strata })
}
