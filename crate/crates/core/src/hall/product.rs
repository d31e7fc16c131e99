use num_rational::Rational64;

use super::element::{FactorKind, HallElement, ProductExpression, ProductTerm};
use crate::classes::{enumerate_hn_types, twist_exponent, HNType, KClass};
use crate::error::{HnsError, Result};
use crate::scalars::LaurentV;

/// `1_{S_t} = v^(sum_{i<j} <a_i,a_j>) 1^ss_{a_1} ... 1^ss_{a_l}`.
pub fn strata_to_product(t: &HNType, g: i64) -> ProductExpression<KClass> {
    ProductExpression {
        weight: t.weight(),
        terms: vec![ProductTerm {
            coeff: 1,
            v_exp: twist_exponent(t.parts(), g),
            factors: t.parts().to_vec(),
            kind: FactorKind::Semistable,
        }],
        truncated: false,
    }
}

/// `1_alpha` (or `1^vec_alpha`) truncated at `level`: every admissible stratum
/// with coefficient one.
pub fn expand_one(weight: KClass, level: i64, vec_only: bool) -> Result<HallElement> {
    let mut e = HallElement::zero(weight, level)?;
    for t in enumerate_hn_types(weight, Rational64::from_integer(level), vec_only) {
        e.add_term(t, LaurentV::one())?;
    }
    Ok(e)
}

/// One term `v^(l r) 1^vec_{alpha - (0,l)} 1_{(0,l)}` of the torsion splitting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionTerm {
    pub l: i64,
    pub v_exp: i64,
    pub vec_class: KClass,
    pub torsion_class: KClass,
}

/// Terms `0 <= l <= d - r * level` surviving the truncation.
pub fn torsion_split(weight: KClass, level: i64) -> Result<Vec<TorsionTerm>> {
    if weight.r < 1 {
        return Err(HnsError::RankZero);
    }
    let top = weight.d - weight.r * level;
    Ok((0..=top)
        .map(|l| TorsionTerm {
            l,
            v_exp: l * weight.r,
            vec_class: KClass::new(weight.r, weight.d - l),
            torsion_class: KClass::new(0, l),
        })
        .collect())
}
