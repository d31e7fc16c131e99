use std::collections::BTreeMap;

use super::hntype::HNType;
use super::kclass::KClass;
use crate::error::{HnsError, Result};

fn cross(o: KClass, a: KClass, b: KClass) -> i128 {
    let (ax, ay) = ((a.r - o.r) as i128, (a.d - o.d) as i128);
    let (bx, by) = ((b.r - o.r) as i128, (b.d - o.d) as i128);
    ax * by - ay * bx
}

/// Lower boundary of the convex hull of all polygon vertices, as an HN type
/// of the common weight. A torsion part closes the path up to the weight.
pub fn lower_convex_hull(types: &[HNType]) -> Result<HNType> {
    let first = types
        .first()
        .ok_or_else(|| HnsError::Precondition("hull of an empty set".into()))?;
    let w = first.weight();
    if let Some(t) = types.iter().find(|t| t.weight() != w) {
        return Err(HnsError::MixedWeights(format!(
            "{} has weight {}, expected {}",
            t,
            t.weight(),
            w
        )));
    }
    if w.r == 0 {
        return Ok(first.clone());
    }
    // lowest point per abscissa is all the lower hull can use
    let mut lowest: BTreeMap<i64, i64> = BTreeMap::new();
    for t in types {
        for v in t.vertices() {
            let e = lowest.entry(v.r).or_insert(v.d);
            *e = (*e).min(v.d);
        }
    }
    let mut chain: Vec<KClass> = Vec::new();
    for (&x, &y) in &lowest {
        let p = KClass::new(x, y);
        while chain.len() >= 2 && cross(chain[chain.len() - 2], chain[chain.len() - 1], p) <= 0 {
            chain.pop();
        }
        chain.push(p);
    }
    let mut parts: Vec<KClass> = chain.windows(2).map(|s| s[1] - s[0]).collect();
    let end = *chain.last().expect("hull has points");
    if end.d < w.d {
        parts.push(KClass::new(0, w.d - end.d));
    }
    HNType::new(parts).map_err(|e| HnsError::DefensiveAssertion(format!("hull is not an HN type: {}", e)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(p: &[(i64, i64)]) -> HNType {
        HNType::new(p.iter().map(|&(r, d)| KClass::new(r, d)).collect()).unwrap()
    }

    #[test]
    fn examples() {
        let a = t(&[(1, -1), (1, 1)]);
        assert_eq!(lower_convex_hull(std::slice::from_ref(&a)).unwrap(), a);
        let b = t(&[(1, -2), (1, 2)]);
        assert_eq!(lower_convex_hull(&[a.clone(), b.clone()]).unwrap(), b);
        let c = t(&[(2, -1), (0, 1)]);
        let d = t(&[(1, -1), (1, 0), (0, 1)]);
        assert_eq!(lower_convex_hull(&[c, d]).unwrap(), t(&[(1, -1), (1, 0), (0, 1)]));
    }

    #[test]
    fn collinear_points_are_dropped() {
        let a = t(&[(1, -1), (1, 1)]);
        let b = t(&[(2, 0)]);
        let c = t(&[(1, -2), (1, 2)]);
        let h = lower_convex_hull(&[a, b, c.clone()]).unwrap();
        assert_eq!(h, c);
        let x = t(&[(1, 0), (1, 1)]);
        let y = t(&[(2, 0), (0, 1)]);
        assert_eq!(lower_convex_hull(&[x.clone(), y]).unwrap(), t(&[(2, 0), (0, 1)]));
    }

    #[test]
    fn mixed_weights_rejected() {
        let r = lower_convex_hull(&[t(&[(2, 0)]), t(&[(2, 1)])]);
        assert!(matches!(r, Err(HnsError::MixedWeights(_))));
        assert!(lower_convex_hull(&[]).is_err());
    }
}
