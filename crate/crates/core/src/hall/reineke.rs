use std::cmp::Ordering;

use num_rational::Rational64;

use super::element::{FactorKind, ProductExpression, ProductTerm};
use crate::classes::{slope_cmp, twist_exponent, KClass};
use crate::error::Result;

fn ceil_mul(x: Rational64, r: i64) -> i64 {
    (x * Rational64::from_integer(r)).ceil().to_integer()
}

/// `1^ss_alpha = sum (-1)^(s-1) v^(sum_{i<j} <b_i,b_j>) 1_{b_1} ... 1_{b_s}`
/// over tuples whose proper suffix sums all have slope `> mu(alpha)`.
///
/// Only tuples whose prefix sums have slope `>= mu_bound` are kept; the rest
/// vanish on objects with first HN slope `>= mu_bound`. At most `max_terms`
/// terms are emitted, ordered by length and then lexicographically.
pub fn reineke_invert(
    weight: KClass,
    mu_bound: Rational64,
    max_terms: usize,
    g: i64,
) -> Result<ProductExpression<KClass>> {
    weight.require_cone()?;
    let (r, d) = (weight.r, weight.d);
    // candidate prefix sums P with mu_bound <= mu(P) < mu(weight)
    let mut cands: Vec<KClass> = Vec::new();
    for rp in 1..=r {
        let lo = ceil_mul(mu_bound, rp);
        let hi = if rp == r {
            d - 1
        } else {
            // d_P * r < d * r_P
            (Rational64::new(d * rp, r)).ceil().to_integer() - 1
        };
        for dp in lo..=hi {
            cands.push(KClass::new(rp, dp));
        }
    }
    let mut chains: Vec<Vec<KClass>> = Vec::new();
    fn extend(cur: &mut Vec<KClass>, cands: &[KClass], out: &mut Vec<Vec<KClass>>) {
        out.push(cur.clone());
        let last = cur.last().copied().unwrap_or(KClass::ZERO);
        for &p in cands {
            if (p - last).in_cone() {
                cur.push(p);
                extend(cur, cands, out);
                cur.pop();
            }
        }
    }
    extend(&mut Vec::new(), &cands, &mut chains);
    let mut terms: Vec<ProductTerm<KClass>> = chains
        .into_iter()
        .map(|prefixes| {
            let mut factors = Vec::with_capacity(prefixes.len() + 1);
            let mut last = KClass::ZERO;
            for p in prefixes.iter().chain(std::iter::once(&weight)) {
                factors.push(*p - last);
                last = *p;
            }
            ProductTerm {
                coeff: if factors.len() % 2 == 1 { 1 } else { -1 },
                v_exp: twist_exponent(&factors, g),
                factors,
                kind: FactorKind::Full,
            }
        })
        .collect();
    terms.sort_by(|a, b| match a.factors.len().cmp(&b.factors.len()) {
        Ordering::Equal => a.factors.cmp(&b.factors),
        o => o,
    });
    let truncated = terms.len() > max_terms;
    terms.truncate(max_terms);
    debug_assert!(terms
        .iter()
        .all(|t| t.factors.iter().skip(1).enumerate().all(|(k, _)| {
            let suffix: KClass = t.factors[k + 1..].iter().copied().sum();
            slope_cmp(&suffix, &weight) == Ordering::Greater
        })));
    Ok(ProductExpression {
        weight,
        terms,
        truncated,
    })
}
