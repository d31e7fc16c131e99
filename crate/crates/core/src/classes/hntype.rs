use std::fmt;

use num_rational::Rational64;

use super::kclass::{slope_cmp, KClass, Slope};
use crate::error::{HnsError, Result};

/// HN type: parts of strictly increasing slope, torsion (if any) last.
/// Read as a polygon, the vertices are the partial sums starting at the origin.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HNType {
    parts: Vec<KClass>,
}

impl HNType {
    pub fn new(parts: Vec<KClass>) -> Result<Self> {
        if parts.is_empty() {
            return Err(HnsError::InvalidClass("HN type with no parts".into()));
        }
        for p in &parts {
            p.require_cone()?;
        }
        for w in parts.windows(2) {
            if slope_cmp(&w[0], &w[1]) != std::cmp::Ordering::Less {
                return Err(HnsError::InvalidClass(format!(
                    "slopes not strictly increasing at {} then {}",
                    w[0], w[1]
                )));
            }
        }
        Ok(HNType { parts })
    }

    /// The one-part type `((a))`.
    pub fn single(a: KClass) -> Self {
        HNType { parts: vec![a] }
    }

    pub(crate) fn from_parts_unchecked(parts: Vec<KClass>) -> Self {
        HNType { parts }
    }

    pub fn parts(&self) -> &[KClass] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn weight(&self) -> KClass {
        self.parts.iter().copied().sum()
    }

    pub fn first_slope(&self) -> Slope {
        self.parts[0].slope()
    }

    pub fn has_torsion(&self) -> bool {
        self.parts.last().is_some_and(|p| p.is_torsion())
    }

    /// `o, a1, a1+a2, ..., weight`.
    pub fn vertices(&self) -> Vec<KClass> {
        let mut out = Vec::with_capacity(self.parts.len() + 1);
        let mut acc = KClass::ZERO;
        out.push(acc);
        for p in &self.parts {
            acc = acc + *p;
            out.push(acc);
        }
        out
    }

    /// Height of the polygon at abscissa `x`. At `x = r` this is the height
    /// before any torsion part, i.e. the lower endpoint.
    pub fn value_at(&self, x: i64) -> Result<Rational64> {
        let w = self.weight();
        if x < 0 || x > w.r {
            return Err(HnsError::AbscissaOutOfRange { x, max: w.r });
        }
        let mut acc = KClass::ZERO;
        for p in &self.parts {
            if p.r > 0 && x <= acc.r + p.r {
                let dx = x - acc.r;
                return Ok(Rational64::from_integer(acc.d) + Rational64::new(p.d * dx, p.r));
            }
            acc = acc + *p;
        }
        // rank-0 weight: only x = 0 is in range
        Ok(Rational64::from_integer(0))
    }

    pub fn passes_through(&self, pt: &KClass) -> bool {
        let w = self.weight();
        if pt.r < 0 || pt.r > w.r {
            return false;
        }
        if pt.r == w.r {
            // the vertical torsion edge counts as part of the polygon
            let low = w.d - self.torsion_degree();
            return pt.d >= low && pt.d <= w.d;
        }
        self.value_at(pt.r) == Ok(Rational64::from_integer(pt.d))
    }

    pub fn torsion_degree(&self) -> i64 {
        match self.parts.last() {
            Some(p) if p.is_torsion() => p.d,
            _ => 0,
        }
    }

    /// Index `k` such that `pt` is the vertex after part `k` (0-based), if it is
    /// an interior vertex.
    pub fn interior_vertex_index(&self, pt: &KClass) -> Option<usize> {
        let v = self.vertices();
        (1..v.len() - 1).find(|&i| v[i] == *pt).map(|i| i - 1)
    }

    /// Whether `mu(part k+1) - mu(part k) > bound`; infinite slopes always win.
    pub fn gap_exceeds(&self, k: usize, bound: i64) -> bool {
        gap_exceeds(&self.parts[k], &self.parts[k + 1], bound)
    }

    /// Some consecutive gap exceeds `bound`.
    pub fn has_gap_exceeding(&self, bound: i64) -> bool {
        (0..self.parts.len().saturating_sub(1)).any(|k| self.gap_exceeds(k, bound))
    }
}

pub(crate) fn gap_exceeds(a: &KClass, b: &KClass, bound: i64) -> bool {
    match (a.slope(), b.slope()) {
        (_, Slope::Infinite) => true,
        (Slope::Finite(x), Slope::Finite(y)) => y - x > Rational64::from_integer(bound),
        (Slope::Infinite, Slope::Finite(_)) => false,
    }
}

/// Whether `point` lies on or above the polygon of `t` at abscissa `point.r`.
pub fn polygon_lies_above(point: &KClass, t: &HNType) -> Result<bool> {
    let h = t.value_at(point.r)?;
    Ok(Rational64::from_integer(point.d) >= h)
}

impl fmt::Display for HNType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(p: &[(i64, i64)]) -> HNType {
        HNType::new(p.iter().map(|&(r, d)| KClass::new(r, d)).collect()).unwrap()
    }

    #[test]
    fn validation() {
        assert!(HNType::new(vec![]).is_err());
        assert!(HNType::new(vec![KClass::new(1, 1), KClass::new(1, 0)]).is_err());
        assert!(HNType::new(vec![KClass::new(1, 0), KClass::new(2, 0)]).is_err());
        assert!(HNType::new(vec![KClass::new(0, 1), KClass::new(1, 0)]).is_err());
        assert!(HNType::new(vec![KClass::new(0, 0)]).is_err());
        assert_eq!(t(&[(1, -1), (1, 0), (0, 1)]).weight(), KClass::new(2, 0));
    }

    #[test]
    fn lies_above() {
        let x = t(&[(1, -1), (1, 1)]);
        assert!(polygon_lies_above(&KClass::new(0, 0), &x).unwrap());
        assert!(polygon_lies_above(&KClass::new(1, 0), &x).unwrap());
        assert!(!polygon_lies_above(&KClass::new(1, -2), &x).unwrap());
        assert!(matches!(
            polygon_lies_above(&KClass::new(3, 0), &x),
            Err(HnsError::AbscissaOutOfRange { .. })
        ));
        let y = t(&[(2, -1), (1, 1)]);
        assert_eq!(y.value_at(1).unwrap(), Rational64::new(-1, 2));
    }

    #[test]
    fn vertices_and_gaps() {
        let x = t(&[(1, -9), (1, 9)]);
        assert_eq!(x.interior_vertex_index(&KClass::new(1, -9)), Some(0));
        assert!(x.gap_exceeds(0, 2));
        assert!(!x.gap_exceeds(0, 18));
        let y = t(&[(2, -1), (0, 1)]);
        assert!(y.gap_exceeds(0, 1000));
        assert!(y.passes_through(&KClass::new(2, -1)));
        assert!(y.passes_through(&KClass::new(2, 0)));
        assert!(!y.passes_through(&KClass::new(1, 0)));
    }
}
