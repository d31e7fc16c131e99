use num_rational::Rational64;

use super::datum::{DimVector, QuiverDatum, Stability};
use crate::error::{HnsError, Result};

/// `<d,e> = sum_i d_i e_i - sum_{a: i -> j} d_i e_j`.
pub fn quiver_euler_form(q: &QuiverDatum, d: &DimVector, e: &DimVector) -> Result<i64> {
    q.check_dim(d)?;
    q.check_dim(e)?;
    let diag: i64 = d.0.iter().zip(&e.0).map(|(a, b)| a * b).sum();
    let off: i64 = q.arrows().iter().map(|&(s, t)| d.0[s] * e.0[t]).sum();
    Ok(diag - off)
}

/// All nonzero `e <= d`, in lexicographic order.
pub fn sub_vectors(d: &DimVector) -> Vec<DimVector> {
    let mut out = vec![Vec::new()];
    for &x in &d.0 {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..=x).map(move |k| {
                    let mut w = v.clone();
                    w.push(k);
                    w
                })
            })
            .collect();
    }
    out.into_iter().map(DimVector).filter(|v| !v.is_zero()).collect()
}

/// Tuples of nonzero dimension vectors summing to `d` with strictly
/// increasing slopes (the last part is the maximal destabilizing sub).
pub fn enumerate_hn_types_quiver(d: &DimVector, theta: &Stability) -> Result<Vec<Vec<DimVector>>> {
    if d.is_zero() {
        return Err(HnsError::Precondition("HN types of the zero vector".into()));
    }
    if d.len() != theta.0.len() {
        return Err(HnsError::InvalidClass(format!("{} does not match theta", d)));
    }
    fn rec(rem: &DimVector, above: Option<Rational64>, th: &Stability) -> Vec<Vec<DimVector>> {
        if rem.is_zero() {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for e in sub_vectors(rem) {
            let mu = th.slope(&e).expect("nonzero");
            if above.is_some_and(|a| mu <= a) {
                continue;
            }
            for tail in rec(&(rem - &e), Some(mu), th) {
                let mut t = Vec::with_capacity(tail.len() + 1);
                t.push(e.clone());
                t.extend(tail);
                out.push(t);
            }
        }
        out
    }
    let mut out = rec(d, None, theta);
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(out)
}
