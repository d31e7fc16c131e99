use std::collections::HashMap;
use std::rc::Rc;

use num_integer::Integer;
use num_rational::Rational64;

use super::hntype::HNType;
use super::kclass::KClass;
use crate::error::{HnsError, Result};

type Chains = Rc<Vec<Vec<KClass>>>;

struct Enumerator {
    memo: HashMap<(KClass, Rational64, bool), Chains>,
}

fn ceil_mul(x: Rational64, r: i64) -> i64 {
    let v = x * Rational64::from_integer(r);
    v.numer().div_ceil(v.denom())
}

fn floor_mul(x: Rational64, r: i64) -> i64 {
    let v = x * Rational64::from_integer(r);
    v.numer().div_floor(v.denom())
}

impl Enumerator {
    /// All slope-increasing part sequences summing to `rem` whose first slope
    /// is `>= lb` (or `> lb` when `strict`).
    fn chains(&mut self, rem: KClass, lb: Rational64, strict: bool) -> Chains {
        let key = (rem, lb, strict);
        if let Some(c) = self.memo.get(&key) {
            return c.clone();
        }
        let mut out: Vec<Vec<KClass>> = Vec::new();
        if rem.r == 0 {
            match rem.d {
                0 => out.push(Vec::new()),
                d if d > 0 => out.push(vec![rem]),
                _ => {}
            }
        } else {
            for r1 in 1..=rem.r {
                let lo = if strict {
                    floor_mul(lb, r1) + 1
                } else {
                    ceil_mul(lb, r1)
                };
                let mut d1 = lo;
                loop {
                    let ok = if r1 == rem.r {
                        d1 <= rem.d
                    } else {
                        (d1 as i128) * (rem.r as i128) < (rem.d as i128) * (r1 as i128)
                    };
                    if !ok {
                        break;
                    }
                    let head = KClass::new(r1, d1);
                    let rest = rem - head;
                    for tail in self.chains(rest, Rational64::new(d1, r1), true).iter() {
                        let mut c = Vec::with_capacity(tail.len() + 1);
                        c.push(head);
                        c.extend_from_slice(tail);
                        out.push(c);
                    }
                    d1 += 1;
                }
            }
        }
        let rc = Rc::new(out);
        self.memo.insert(key, rc.clone());
        rc
    }
}

/// All HN types of `weight` with first slope `>= n_min`, sorted. With
/// `vec_only`, types ending in a torsion part are dropped.
pub fn enumerate_hn_types(weight: KClass, n_min: Rational64, vec_only: bool) -> Vec<HNType> {
    if !weight.in_cone() {
        return Vec::new();
    }
    if weight.r == 0 {
        return if vec_only {
            Vec::new()
        } else {
            vec![HNType::single(weight)]
        };
    }
    let mut e = Enumerator { memo: HashMap::new() };
    let mut out: Vec<HNType> = e
        .chains(weight, n_min, false)
        .iter()
        .filter(|c| !vec_only || c.last().is_some_and(|p| p.r > 0))
        .map(|c| HNType::from_parts_unchecked(c.clone()))
        .collect();
    out.sort();
    out
}

/// `floor(mu) - (g-1) r (r+1)`: below this first slope every HN type of the
/// weight has a consecutive slope gap larger than `2(g-1)`.
pub fn hn_gap_threshold(weight: KClass, g: i64) -> Result<i64> {
    if weight.r <= 0 {
        return Err(HnsError::RankZero);
    }
    if g < 2 {
        return Err(HnsError::InvalidGenus(g));
    }
    Ok(Integer::div_floor(&weight.d, &weight.r) - (g - 1) * weight.r * (weight.r + 1))
}
