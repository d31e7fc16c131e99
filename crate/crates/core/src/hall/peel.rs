use num_rational::Rational64;

use super::element::HallElement;
use crate::classes::{hn_gap_threshold, lower_convex_hull, HNType, KClass, Slope};
use crate::error::{HnsError, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeelStep {
    pub vertex: KClass,
    pub removed: Vec<HNType>,
}

/// Record of a peeling run: the vertices chosen, the strata removed at each
/// one, and what is left (the semistable function of the target).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeelCertificate {
    pub target: KClass,
    pub genus: i64,
    pub steps: Vec<PeelStep>,
    pub terminal: HallElement,
}

/// Interior hull vertices whose slope gap exceeds `2(g-1)`.
fn admissible_vertices(hull: &HNType, g: i64) -> Vec<KClass> {
    let v = hull.vertices();
    (0..hull.len().saturating_sub(1))
        .filter(|&k| hull.gap_exceeds(k, 2 * (g - 1)))
        .map(|k| v[k + 1])
        .collect()
}

/// Restriction of `e` to the strata whose polygon passes through `beta`.
/// `beta` must be a hull vertex of the support with slope gap `> 2(g-1)`.
pub fn hn_projector(e: &HallElement, beta: KClass, g: i64) -> Result<HallElement> {
    if e.is_empty() {
        return Err(HnsError::Precondition("projector applied to zero".into()));
    }
    let hull = lower_convex_hull(&e.support())?;
    let k = hull.interior_vertex_index(&beta).ok_or_else(|| {
        HnsError::Precondition(format!("{} is not an interior vertex of the hull {}", beta, hull))
    })?;
    if !hull.gap_exceeds(k, 2 * (g - 1)) {
        return Err(HnsError::Precondition(format!(
            "hull slope gap at {} does not exceed {}",
            beta,
            2 * (g - 1)
        )));
    }
    let kept = e.restrict(|t| t.passes_through(&beta));
    for (t, _) in kept.iter() {
        let ok = t
            .interior_vertex_index(&beta)
            .is_some_and(|i| t.gap_exceeds(i, 2 * (g - 1)));
        if !ok {
            return Err(HnsError::DefensiveAssertion(format!(
                "{} passes through {} without a slope gap above {}",
                t,
                beta,
                2 * (g - 1)
            )));
        }
    }
    Ok(kept)
}

fn split_target(target: KClass, e: &HallElement, g: i64) -> Result<(HallElement, HallElement)> {
    if e.weight() != target {
        return Err(HnsError::MixedWeights(format!(
            "element of weight {} peeled towards {}",
            e.weight(),
            target
        )));
    }
    let main = HNType::single(target);
    if e.coeff(&main) != crate::scalars::LaurentV::one() {
        return Err(HnsError::Precondition(format!(
            "coefficient of the semistable stratum of {} must be 1",
            target
        )));
    }
    let n0 = hn_gap_threshold(target, g)?;
    let noise = e.restrict(|t| *t != main);
    let bound = Slope::Finite(Rational64::from_integer(n0));
    if let Some(t) = noise.support().iter().find(|t| t.first_slope() >= bound) {
        return Err(HnsError::Precondition(format!(
            "{} has first slope >= threshold {}",
            t, n0
        )));
    }
    Ok((e.restrict(|t| *t == main), noise))
}

/// Removes all strata other than the semistable one by repeatedly projecting
/// onto a lower hull vertex with a large slope gap, smallest `(r, d)` first.
pub fn peel(target: KClass, e: &HallElement, g: i64) -> Result<PeelCertificate> {
    let (terminal, mut noise) = split_target(target, e, g)?;
    let budget = noise.len();
    let mut steps = Vec::new();
    while !noise.is_empty() {
        if steps.len() >= budget {
            return Err(HnsError::NonTermination(steps.len()));
        }
        let hull = lower_convex_hull(&noise.support())?;
        let beta = admissible_vertices(&hull, g)
            .into_iter()
            .min()
            .ok_or_else(|| HnsError::NoAdmissibleVertex(hull.to_string()))?;
        let removed = hn_projector(&noise, beta, g)?;
        noise = noise.sub(&removed)?;
        steps.push(PeelStep {
            vertex: beta,
            removed: removed.support(),
        });
    }
    Ok(PeelCertificate {
        target,
        genus: g,
        steps,
        terminal,
    })
}

/// Re-runs a certificate against `e`, checking each recorded step, and returns
/// the residue.
pub fn replay(cert: &PeelCertificate, e: &HallElement) -> Result<HallElement> {
    let g = cert.genus;
    let (terminal, mut noise) = split_target(cert.target, e, g)?;
    for (i, step) in cert.steps.iter().enumerate() {
        let removed = hn_projector(&noise, step.vertex, g)?;
        if removed.support() != step.removed {
            return Err(HnsError::DefensiveAssertion(format!(
                "step {} removes {:?}, certificate says {:?}",
                i,
                removed
                    .support()
                    .iter()
                    .map(|t| t.to_string())
                    .collect::<Vec<_>>(),
                step.removed.iter().map(|t| t.to_string()).collect::<Vec<_>>()
            )));
        }
        noise = noise.sub(&removed)?;
    }
    if !noise.is_empty() {
        return Err(HnsError::DefensiveAssertion(format!(
            "{} strata left after replay",
            noise.len()
        )));
    }
    if terminal != cert.terminal {
        return Err(HnsError::DefensiveAssertion("terminal residue mismatch".into()));
    }
    Ok(terminal)
}
