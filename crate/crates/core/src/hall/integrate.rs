use std::collections::BTreeMap;

use num_rational::Rational64;

use super::element::{FactorKind, HallElement, ProductExpression, ProductTerm};
use crate::classes::{enumerate_hn_types, twist_exponent, KClass, Slope};
use crate::curve::CurveVolumes;
use crate::error::{HnsError, Result};
use crate::scalars::{q_pow, LaurentV, SqrtQScalar};

/// Source of semistable volumes `vol^ss(alpha) = sum_{F ss} 1/#Aut(F)`.
pub trait SsVolumes {
    fn ss_volume(&self, alpha: &KClass) -> Result<SqrtQScalar>;
}

impl SsVolumes for BTreeMap<KClass, SqrtQScalar> {
    fn ss_volume(&self, alpha: &KClass) -> Result<SqrtQScalar> {
        self.get(alpha)
            .cloned()
            .ok_or_else(|| HnsError::MissingVolume(alpha.to_string()))
    }
}

impl SsVolumes for CurveVolumes {
    fn ss_volume(&self, alpha: &KClass) -> Result<SqrtQScalar> {
        Ok(SqrtQScalar::rational(self.vol_ss_exact(*alpha)?, self.q()))
    }
}

fn product_volume<V: SsVolumes + ?Sized>(parts: &[KClass], vols: &V, q: u64) -> Result<SqrtQScalar> {
    let mut acc = SqrtQScalar::one(q);
    for p in parts {
        let v = vols.ss_volume(p)?;
        if v.q() != q {
            return Err(HnsError::Precondition(format!(
                "volume table over q = {} used with q = {}",
                v.q(),
                q
            )));
        }
        acc = &acc * &v;
    }
    Ok(acc)
}

/// Counting measure: `int 1_{S_t} = q^(-sum_{i<j} <a_i,a_j>) prod vol^ss(a_i)`,
/// extended linearly with `v = 1/sqrt(q)` in the coefficients.
pub fn integrate<V: SsVolumes + ?Sized>(e: &HallElement, vols: &V, q: u64, g: i64) -> Result<SqrtQScalar> {
    let mut acc = SqrtQScalar::zero(q);
    for (t, c) in e.iter() {
        let twist = SqrtQScalar::rational(q_pow(q, -twist_exponent(t.parts(), g)), q);
        let term = &(&c.eval_sqrt_q(q) * &twist) * &product_volume(t.parts(), vols, q)?;
        acc = &acc + &term;
    }
    Ok(acc)
}

/// `int (1^ss_{c_1} ... 1^ss_{c_m}) = v^(sum_{a<b} <c_a,c_b>) prod vol^ss(c_a)`.
pub fn integrate_semistable_product<V: SsVolumes + ?Sized>(
    expr: &ProductExpression<KClass>,
    vols: &V,
    q: u64,
    g: i64,
) -> Result<SqrtQScalar> {
    let mut acc = SqrtQScalar::zero(q);
    for t in &expr.terms {
        if t.kind != FactorKind::Semistable {
            return Err(HnsError::Precondition(
                "full factors need integrate_full_product".into(),
            ));
        }
        let v = LaurentV::v_pow(t.v_exp + twist_exponent(&t.factors, g)).eval_sqrt_q(q);
        let c = SqrtQScalar::from_int(t.coeff, q);
        acc = &acc + &(&(&c * &v) * &product_volume(&t.factors, vols, q)?);
    }
    Ok(acc)
}

/// Rewrites a product of full characteristic functions as products of
/// semistable ones: every `1_b` is expanded into its strata, and the results
/// are merged by the concatenated sequence of semistable factors.
///
/// Only sequences whose partial sums all have slope `>= level` are kept,
/// which is the truncation of the whole expression to objects with first HN
/// slope `>= level`.
pub fn full_to_semistable(
    expr: &ProductExpression<KClass>,
    level: Rational64,
    g: i64,
) -> Result<ProductExpression<KClass>> {
    let floor = Slope::Finite(level);
    let mut words: BTreeMap<(Vec<KClass>, i64), i64> = BTreeMap::new();
    for term in &expr.terms {
        if term.kind != FactorKind::Full {
            return Err(HnsError::Precondition("expected full factors".into()));
        }
        // words built block by block; each carries its running sum
        let mut partial: Vec<(Vec<KClass>, KClass)> = vec![(Vec::new(), KClass::ZERO)];
        for beta in &term.factors {
            let mut next = Vec::new();
            for (word, sum) in &partial {
                let excess = if sum.r > 0 {
                    Rational64::from_integer(sum.d) - level * Rational64::from_integer(sum.r)
                } else {
                    Rational64::from_integer(0)
                };
                let bound = level - excess.max(Rational64::from_integer(0));
                for t in enumerate_hn_types(*beta, bound, false) {
                    let mut w = word.clone();
                    let mut s = *sum;
                    let mut ok = true;
                    for p in t.parts() {
                        s = s + *p;
                        if s.r > 0 && s.slope() < floor {
                            ok = false;
                            break;
                        }
                        w.push(*p);
                    }
                    if ok {
                        next.push((w, s));
                    }
                }
            }
            partial = next;
        }
        // the term's own exponent beyond the cross-block twist carries over
        let extra = term.v_exp - twist_exponent(&term.factors, g);
        for (word, _) in partial {
            let e = twist_exponent(&word, g) + extra;
            *words.entry((word, e)).or_insert(0) += term.coeff;
        }
    }
    let terms = words
        .into_iter()
        .filter(|(_, c)| *c != 0)
        .map(|((w, e), c)| ProductTerm {
            coeff: c,
            v_exp: e,
            factors: w,
            kind: FactorKind::Semistable,
        })
        .collect();
    Ok(ProductExpression {
        weight: expr.weight,
        terms,
        truncated: expr.truncated,
    })
}

/// Counting measure of a product of full characteristic functions, truncated
/// at first HN slope `level`.
pub fn integrate_full_product<V: SsVolumes + ?Sized>(
    expr: &ProductExpression<KClass>,
    level: Rational64,
    vols: &V,
    q: u64,
    g: i64,
) -> Result<SqrtQScalar> {
    integrate_semistable_product(&full_to_semistable(expr, level, g)?, vols, q, g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classes::HNType;
    use crate::curve::ZetaDatum;
    use crate::hall::product::{expand_one, strata_to_product};
    use crate::hall::reineke::reineke_invert;
    use crate::scalars::BigRational;

    #[test]
    fn singleton_semistable() {
        let vols = CurveVolumes::new(ZetaDatum::p1(3).unwrap());
        let e = HallElement::semistable(KClass::new(2, 0), 0).unwrap();
        assert_eq!(
            integrate(&e, &vols, 3, 0).unwrap(),
            SqrtQScalar::rational(BigRational::new(1.into(), 48.into()), 3)
        );
    }

    #[test]
    fn two_part_stratum_on_p1() {
        let vols = CurveVolumes::new(ZetaDatum::p1(2).unwrap());
        let t = HNType::new(vec![KClass::new(1, -1), KClass::new(1, 1)]).unwrap();
        let e = HallElement::stratum(&t, -1).unwrap();
        assert_eq!(
            integrate(&e, &vols, 2, 0).unwrap(),
            SqrtQScalar::rational(BigRational::new(1.into(), 8.into()), 2)
        );
        let p = strata_to_product(&t, 0);
        assert_eq!(
            integrate_semistable_product(&p, &vols, 2, 0).unwrap(),
            integrate(&e, &vols, 2, 0).unwrap()
        );
    }

    #[test]
    fn missing_volume() {
        let table: BTreeMap<KClass, SqrtQScalar> = BTreeMap::new();
        let e = HallElement::semistable(KClass::new(1, 0), 0).unwrap();
        assert!(matches!(
            integrate(&e, &table, 2, 0),
            Err(HnsError::MissingVolume(_))
        ));
    }

    #[test]
    fn vector_partial_sum_on_p1() {
        // O(a) + O(-a), a = 0..2: 1/|GL2| + 1/((q-1)^2 q^3) + 1/((q-1)^2 q^5)
        let vols = CurveVolumes::new(ZetaDatum::p1(2).unwrap());
        let e = expand_one(KClass::new(2, 0), -2, true).unwrap();
        let expect = BigRational::new(1.into(), 6.into())
            + BigRational::new(1.into(), 8.into())
            + BigRational::new(1.into(), 32.into());
        assert_eq!(
            integrate(&e, &vols, 2, 0).unwrap(),
            SqrtQScalar::rational(expect, 2)
        );
    }

    #[test]
    fn reineke_words_cancel_down_to_alpha() {
        for (w, n) in [((2, 0), -2), ((2, 1), -1), ((1, 1), -1), ((3, 0), -1)] {
            let w = KClass::new(w.0, w.1);
            let e = reineke_invert(w, Rational64::from_integer(n), usize::MAX, 1).unwrap();
            let ss = full_to_semistable(&e, Rational64::from_integer(n), 1).unwrap();
            assert_eq!(ss.terms.len(), 1, "{}", w);
            assert_eq!(ss.terms[0].factors, vec![w]);
            assert_eq!(ss.terms[0].coeff, 1);
        }
    }
}
