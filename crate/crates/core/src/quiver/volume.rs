use std::collections::{BTreeMap, HashMap};
use std::sync::RwLock;

use num_rational::Rational64;
use num_traits::{One, Zero};

use super::datum::{DimVector, QuiverDatum, Stability};
use super::hn::{enumerate_hn_types_quiver, quiver_euler_form};
use crate::error::{HnsError, Result};
use crate::hall::{FactorKind, ProductExpression, ProductTerm};
use crate::scalars::{gl_order, int_pow, q_pow, BigRational};

fn gl_product(d: &DimVector, q: u64) -> Result<BigRational> {
    let mut den = BigRational::one();
    for &x in &d.0 {
        den *= BigRational::from_integer(gl_order(x, q)?);
    }
    Ok(den)
}

/// Stacky count of all representations of dimension `d` over `F_q`.
pub fn vol_rep(quiver: &QuiverDatum, d: &DimVector, q: u64) -> Result<BigRational> {
    quiver.check_dim(d)?;
    let entries: i64 = quiver.arrows().iter().map(|&(s, t)| d.0[s] * d.0[t]).sum();
    let num = BigRational::from_integer(int_pow(q, entries as u32));
    Ok(num / gl_product(d, q)?)
}

/// `sum_{i<j} <d_i, d_j>`.
fn twist(quiver: &QuiverDatum, parts: &[DimVector]) -> Result<i64> {
    let mut s = 0;
    for i in 0..parts.len() {
        for j in i + 1..parts.len() {
            s += quiver_euler_form(quiver, &parts[i], &parts[j])?;
        }
    }
    Ok(s)
}

/// `1^ss_d = sum (-1)^(s-1) v^(sum_{i<j} <d_i,d_j>) 1_{d_1} ... 1_{d_s}` over
/// tuples of nonzero vectors whose proper prefix sums have slope `< mu(d)`.
pub fn reineke_invert_quiver(
    quiver: &QuiverDatum,
    theta: &Stability,
    d: &DimVector,
) -> Result<ProductExpression<DimVector>> {
    quiver.check_dim(d)?;
    let mu = theta.slope(d)?;
    let mut terms = Vec::new();
    fn rec(
        quiver: &QuiverDatum,
        theta: &Stability,
        mu: Rational64,
        rem: &DimVector,
        cur: &mut Vec<DimVector>,
        out: &mut Vec<ProductTerm<DimVector>>,
    ) -> Result<()> {
        // close the tuple with everything that is left
        cur.push(rem.clone());
        out.push(ProductTerm {
            coeff: if cur.len() % 2 == 1 { 1 } else { -1 },
            v_exp: twist(quiver, cur)?,
            factors: cur.clone(),
            kind: FactorKind::Full,
        });
        cur.pop();
        let done: DimVector = cur.iter().fold(DimVector::zeros(rem.len()), |a, b| &a + b);
        for e in super::hn::sub_vectors(rem) {
            if e == *rem || theta.slope(&(&done + &e))? >= mu {
                continue;
            }
            cur.push(e.clone());
            rec(quiver, theta, mu, &(rem - &e), cur, out)?;
            cur.pop();
        }
        Ok(())
    }
    rec(quiver, theta, mu, d, &mut Vec::new(), &mut terms)?;
    terms.sort_by(|a, b| {
        a.factors
            .len()
            .cmp(&b.factors.len())
            .then_with(|| a.factors.cmp(&b.factors))
    });
    Ok(ProductExpression {
        weight: d.clone(),
        terms,
        truncated: false,
    })
}

/// Memoized HN recursion for one quiver, stability parameter and field size.
pub struct QuiverVolumes {
    quiver: QuiverDatum,
    theta: Stability,
    q: u64,
    memo: RwLock<HashMap<DimVector, BigRational>>,
}

impl QuiverVolumes {
    pub fn new(quiver: QuiverDatum, theta: Stability, q: u64) -> Result<Self> {
        if theta.0.len() != quiver.vertices() {
            return Err(HnsError::InvalidQuiver(
                "theta length differs from vertex count".into(),
            ));
        }
        if q < 2 {
            return Err(HnsError::Precondition(format!("field size {} < 2", q)));
        }
        Ok(QuiverVolumes {
            quiver,
            theta,
            q,
            memo: RwLock::new(HashMap::new()),
        })
    }

    pub fn quiver(&self) -> &QuiverDatum {
        &self.quiver
    }

    pub fn theta(&self) -> &Stability {
        &self.theta
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn vol_rep(&self, d: &DimVector) -> Result<BigRational> {
        vol_rep(&self.quiver, d, self.q)
    }

    /// Stacky count of the stratum of HN type `parts`.
    pub fn stratum_volume(&self, parts: &[DimVector]) -> Result<BigRational> {
        let mut v = q_pow(self.q, -twist(&self.quiver, parts)?);
        for p in parts {
            v *= self.vol_ss(p)?;
        }
        Ok(v)
    }

    pub fn vol_ss(&self, d: &DimVector) -> Result<BigRational> {
        self.quiver.check_dim(d)?;
        if let Some(v) = self.memo.read().expect("memo lock").get(d) {
            return Ok(v.clone());
        }
        let mut v = self.vol_rep(d)?;
        for t in enumerate_hn_types_quiver(d, &self.theta)? {
            if t.len() > 1 {
                v -= self.stratum_volume(&t)?;
            }
        }
        self.memo.write().expect("memo lock").insert(d.clone(), v.clone());
        Ok(v)
    }

    /// Evaluates a product expression, reading `v^k` as `q^(-k/2)`.
    pub fn integrate(&self, expr: &ProductExpression<DimVector>) -> Result<BigRational> {
        let mut total = BigRational::zero();
        for t in &expr.terms {
            let e = t.v_exp + twist(&self.quiver, &t.factors)?;
            if e % 2 != 0 {
                return Err(HnsError::Precondition(
                    "odd power of v in a quiver product".into(),
                ));
            }
            let mut x = q_pow(self.q, -e / 2) * BigRational::from_integer(t.coeff.into());
            for f in &t.factors {
                x *= match t.kind {
                    FactorKind::Full => self.vol_rep(f)?,
                    FactorKind::Semistable => self.vol_ss(f)?,
                };
            }
            total += x;
        }
        Ok(total)
    }

    /// Replaces every full factor by its HN expansion and merges equal
    /// semistable words.
    pub fn expand_full(&self, expr: &ProductExpression<DimVector>) -> Result<ProductExpression<DimVector>> {
        let mut words: BTreeMap<(Vec<DimVector>, i64), i64> = BTreeMap::new();
        for term in &expr.terms {
            if term.kind != FactorKind::Full {
                return Err(HnsError::Precondition("expected full factors".into()));
            }
            let mut partial: Vec<Vec<DimVector>> = vec![Vec::new()];
            for f in &term.factors {
                let types = enumerate_hn_types_quiver(f, &self.theta)?;
                partial = partial
                    .iter()
                    .flat_map(|w| {
                        types.iter().map(move |t| {
                            let mut x = w.clone();
                            x.extend(t.iter().cloned());
                            x
                        })
                    })
                    .collect();
            }
            let extra = term.v_exp - twist(&self.quiver, &term.factors)?;
            for w in partial {
                let e = twist(&self.quiver, &w)? + extra;
                *words.entry((w, e)).or_insert(0) += term.coeff;
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
            weight: expr.weight.clone(),
            terms,
            truncated: expr.truncated,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::ri;

    fn dv(v: &[i64]) -> DimVector {
        DimVector(v.to_vec())
    }

    fn rat(a: i64, b: i64) -> BigRational {
        ri(a) / ri(b)
    }

    #[test]
    fn vol_rep_examples() {
        let k2 = QuiverDatum::kronecker();
        let a2 = QuiverDatum::a2();
        assert_eq!(vol_rep(&k2, &dv(&[1, 0]), 5).unwrap(), rat(1, 4));
        assert_eq!(vol_rep(&k2, &dv(&[1, 1]), 2).unwrap(), rat(4, 1));
        assert_eq!(vol_rep(&k2, &dv(&[1, 1]), 3).unwrap(), rat(9, 4));
        assert_eq!(vol_rep(&a2, &dv(&[1, 1]), 3).unwrap(), rat(3, 4));
    }

    #[test]
    fn vol_ss_examples() {
        for q in [2u64, 3, 4, 5] {
            let qi = q as i64;
            let k2 = QuiverVolumes::new(QuiverDatum::kronecker(), Stability::from_ints(&[1, 0]), q).unwrap();
            assert_eq!(
                k2.vol_ss(&dv(&[1, 1])).unwrap(),
                rat(qi * qi - 1, (qi - 1) * (qi - 1))
            );
            assert_eq!(k2.vol_ss(&dv(&[0, 1])).unwrap(), rat(1, qi - 1));
            let a2 = QuiverVolumes::new(QuiverDatum::a2(), Stability::from_ints(&[1, 0]), q).unwrap();
            assert_eq!(a2.vol_ss(&dv(&[1, 1])).unwrap(), rat(1, qi - 1));
        }
    }

    #[test]
    fn reineke_matches_recursion() {
        for (quiver, d) in [
            (QuiverDatum::a2(), dv(&[2, 2])),
            (QuiverDatum::kronecker(), dv(&[2, 2])),
            (QuiverDatum::kronecker(), dv(&[1, 2])),
            (
                QuiverDatum::new(3, vec![(0, 1), (1, 2), (0, 2)]).unwrap(),
                dv(&[1, 2, 1]),
            ),
        ] {
            for th in [[1, 0], [0, 1], [2, 1]] {
                let mut theta = th.to_vec();
                theta.resize(quiver.vertices(), 0);
                let vols = QuiverVolumes::new(quiver.clone(), Stability::from_ints(&theta), 3).unwrap();
                let expr = reineke_invert_quiver(&quiver, vols.theta(), &d).unwrap();
                assert_eq!(vols.integrate(&expr).unwrap(), vols.vol_ss(&d).unwrap());
                let words = vols.expand_full(&expr).unwrap();
                assert_eq!(words.terms.len(), 1);
                assert_eq!(words.terms[0].factors, vec![d.clone()]);
                assert_eq!((words.terms[0].coeff, words.terms[0].v_exp), (1, 0));
            }
        }
    }

    #[test]
    fn trivial_theta_makes_everything_semistable() {
        let vols = QuiverVolumes::new(QuiverDatum::kronecker(), Stability::from_ints(&[0, 0]), 2).unwrap();
        let d = dv(&[2, 1]);
        assert_eq!(vols.vol_ss(&d).unwrap(), vols.vol_rep(&d).unwrap());
    }
}
