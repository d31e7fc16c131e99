use std::collections::BTreeMap;
use std::fmt;

use num_rational::Rational64;

use crate::classes::{HNType, KClass, Slope};
use crate::error::{HnsError, Result};
use crate::scalars::LaurentV;

/// Finitely supported function on the HN types of one weight, with first
/// slope at least `level`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HallElement {
    weight: KClass,
    level: i64,
    coeffs: BTreeMap<HNType, LaurentV>,
}

impl HallElement {
    pub fn zero(weight: KClass, level: i64) -> Result<Self> {
        weight.require_cone()?;
        Ok(HallElement {
            weight,
            level,
            coeffs: BTreeMap::new(),
        })
    }

    /// Characteristic function of one stratum.
    pub fn stratum(t: &HNType, level: i64) -> Result<Self> {
        let mut e = Self::zero(t.weight(), level)?;
        e.add_term(t.clone(), LaurentV::one())?;
        Ok(e)
    }

    /// `1^ss_alpha`: unit coefficient on the one-part type.
    pub fn semistable(alpha: KClass, level: i64) -> Result<Self> {
        alpha.require_cone()?;
        Self::stratum(&HNType::single(alpha), level)
    }

    pub fn weight(&self) -> KClass {
        self.weight
    }

    pub fn level(&self) -> i64 {
        self.level
    }

    pub fn admits(&self, t: &HNType) -> bool {
        t.weight() == self.weight && t.first_slope() >= Slope::Finite(Rational64::from_integer(self.level))
    }

    pub fn add_term(&mut self, t: HNType, c: LaurentV) -> Result<()> {
        if t.weight() != self.weight {
            return Err(HnsError::MixedWeights(format!(
                "{} in an element of weight {}",
                t, self.weight
            )));
        }
        if !self.admits(&t) {
            return Err(HnsError::Precondition(format!(
                "{} has first slope below level {}",
                t, self.level
            )));
        }
        let slot = self.coeffs.entry(t.clone()).or_default();
        *slot = &*slot + &c;
        if slot.is_zero() {
            self.coeffs.remove(&t);
        }
        Ok(())
    }

    pub fn coeff(&self, t: &HNType) -> LaurentV {
        self.coeffs.get(t).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&HNType, &LaurentV)> {
        self.coeffs.iter()
    }

    pub fn support(&self) -> Vec<HNType> {
        self.coeffs.keys().cloned().collect()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Sum; the level of the result is the lower of the two.
    pub fn add(&self, other: &HallElement) -> Result<HallElement> {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &HallElement) -> Result<HallElement> {
        self.combine(other, true)
    }

    fn combine(&self, other: &HallElement, negate: bool) -> Result<HallElement> {
        if other.weight != self.weight {
            return Err(HnsError::MixedWeights(format!(
                "{} vs {}",
                self.weight, other.weight
            )));
        }
        let mut out = self.clone();
        out.level = self.level.min(other.level);
        for (t, c) in other.iter() {
            out.add_term(t.clone(), if negate { -c } else { c.clone() })?;
        }
        Ok(out)
    }

    /// Keeps the coefficients of the types satisfying `keep`.
    pub fn restrict<F: Fn(&HNType) -> bool>(&self, keep: F) -> HallElement {
        HallElement {
            weight: self.weight,
            level: self.level,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(t, _)| keep(t))
                .map(|(t, c)| (t.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn with_level(&self, level: i64) -> Result<HallElement> {
        let mut out = HallElement::zero(self.weight, level)?;
        for (t, c) in self.iter() {
            out.add_term(t.clone(), c.clone())?;
        }
        Ok(out)
    }
}

impl fmt::Display for HallElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self.iter().map(|(t, c)| format!("[{}] 1_S{}", c, t)).collect();
        write!(f, "{}", terms.join(" + "))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FactorKind {
    /// `1_beta`, all objects of the class.
    Full,
    /// `1^ss_beta`.
    Semistable,
}

/// `coeff * v^v_exp * 1_{b_1} ... 1_{b_s}`, leftmost factor the final quotient.
/// Raw expansions have `coeff = +-1`; merged ones may carry other integers.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ProductTerm<C> {
    pub coeff: i64,
    pub v_exp: i64,
    pub factors: Vec<C>,
    pub kind: FactorKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductExpression<C> {
    pub weight: C,
    pub terms: Vec<ProductTerm<C>>,
    /// Set when a term cap cut the expansion short.
    pub truncated: bool,
}

impl<C: fmt::Display> fmt::Display for ProductExpression<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .terms
            .iter()
            .map(|t| {
                let sym = match t.kind {
                    FactorKind::Full => "1",
                    FactorKind::Semistable => "1ss",
                };
                let fs: Vec<String> = t.factors.iter().map(|c| format!("{}_{}", sym, c)).collect();
                format!("{}*v^{} {}", t.coeff, t.v_exp, fs.join(" "))
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}
