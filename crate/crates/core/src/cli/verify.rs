use num_rational::Rational64;
use num_traits::Signed;

use crate::classes::{enumerate_hn_types, HNType, KClass};
use crate::curve::{CurveVolumes, VolMode, ZetaDatum};
use crate::error::Result;
use crate::hall::{integrate, integrate_full_product, reineke_invert, HallElement};
use crate::p1::P1Oracle;
use crate::quiver::{
    brute_force, enumerate_hn_types_quiver, reineke_invert_quiver, sub_vectors, DimVector, QuiverDatum,
    QuiverVolumes, Stability, MAX_BRUTE_ENTRIES,
};
use crate::scalars::{render_rational, BigRational, SqrtQScalar};

/// One comparison made by a verification suite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub suite: &'static str,
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

fn check(suite: &'static str, name: String, pass: bool, detail: String) -> Check {
    Check {
        suite,
        name,
        pass,
        detail,
    }
}

/// Recursion, truncated recursion and direct enumeration on the projective
/// line, plus stratum-by-stratum integration for weights (2,0), (2,1), (3,0).
pub fn verify_p1(q: u64, window: i64) -> Result<Vec<Check>> {
    let vols = CurveVolumes::new(ZetaDatum::p1(q)?);
    let oracle = P1Oracle::new(q)?;
    let mut out = Vec::new();
    for alpha in [KClass::new(2, 0), KClass::new(2, 1)] {
        let exact = vols.vol_ss_exact(alpha)?;
        let direct = oracle.vol_stratum_direct(&HNType::single(alpha))?;
        out.push(check(
            "p1",
            format!("vol_ss{} q={} exact vs direct", alpha, q),
            exact == direct,
            format!("{} vs {}", render_rational(&exact), render_rational(&direct)),
        ));
        let t = vols.vol_ss(alpha, VolMode::Truncated(30))?;
        let value = t.value.to_rational().expect("rational volume");
        let diff = (&value - &exact).abs();
        out.push(check(
            "p1",
            format!("vol_ss{} q={} trunc:30 vs exact", alpha, q),
            diff <= t.error_bound,
            format!("|diff| = {}", render_rational(&diff)),
        ));
    }
    for alpha in [KClass::new(2, 0), KClass::new(2, 1), KClass::new(3, 0)] {
        let types = enumerate_hn_types(alpha, Rational64::from_integer(window), false);
        let mut bad = Vec::new();
        for t in &types {
            let e = HallElement::stratum(t, window)?;
            let lhs = integrate(&e, &vols, q, 0)?;
            let rhs = oracle.vol_stratum_direct(t)?;
            if lhs != SqrtQScalar::rational(rhs, q) {
                bad.push(t.to_string());
            }
        }
        out.push(check(
            "p1",
            format!("strata of {} q={} from slope {}", alpha, q, window),
            bad.is_empty(),
            if bad.is_empty() {
                format!("{} strata compared", types.len())
            } else {
                format!("mismatch on {}", bad.join(" "))
            },
        ));
    }
    Ok(out)
}

fn brute_dims(quiver: &QuiverDatum) -> Vec<DimVector> {
    sub_vectors(&DimVector(vec![2; quiver.vertices()]))
        .into_iter()
        .filter(|d| {
            let entries: i64 = quiver.arrows().iter().map(|&(s, t)| d.0[s] * d.0[t]).sum();
            entries <= MAX_BRUTE_ENTRIES / 2
        })
        .collect()
}

/// Brute force against the HN recursion and Reineke inversion for every
/// dimension vector with entries at most 2 and a small enough search space.
pub fn verify_quiver(quiver: &QuiverDatum, theta: &Stability, q: u64) -> Result<Vec<Check>> {
    let vols = QuiverVolumes::new(quiver.clone(), theta.clone(), q)?;
    let mut out = Vec::new();
    for d in brute_dims(quiver) {
        let b = brute_force(quiver, theta, &d, q)?;
        let rec = vols.vol_ss(&d)?;
        let mut mismatched = Vec::new();
        for t in enumerate_hn_types_quiver(&d, theta)? {
            let want = b.strata.get(&t).cloned().unwrap_or_default();
            if vols.stratum_volume(&t)? != want {
                mismatched.push(t.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(""));
            }
        }
        out.push(check(
            "quiver",
            format!("d={} q={} brute force", d, q),
            rec == b.vol_ss && mismatched.is_empty(),
            format!(
                "vol_ss {} vs {}, {} strata",
                render_rational(&rec),
                render_rational(&b.vol_ss),
                b.strata.len()
            ),
        ));
        let expr = reineke_invert_quiver(quiver, theta, &d)?;
        let inv = vols.integrate(&expr)?;
        let words = vols.expand_full(&expr)?;
        let collapsed = words.terms.len() == 1 && words.terms[0].factors == vec![d.clone()];
        out.push(check(
            "quiver",
            format!("d={} q={} inversion", d, q),
            inv == rec && collapsed,
            format!("{} terms, value {}", expr.terms.len(), render_rational(&inv)),
        ));
    }
    Ok(out)
}

/// Default truncation level for the inversion check.
pub fn default_level(alpha: KClass) -> i64 {
    if alpha.r == 0 {
        0
    } else {
        num_integer::Integer::div_floor(&alpha.d, &alpha.r) - 2
    }
}

/// `integrate(reineke_invert(alpha))` against the exact semistable volume.
pub fn verify_inversion(zeta: &ZetaDatum, alpha: KClass, level: i64) -> Result<Vec<Check>> {
    let g = zeta.genus();
    let q = zeta.q();
    let vols = CurveVolumes::new(zeta.clone());
    let lvl = Rational64::from_integer(level);
    let expr = reineke_invert(alpha, lvl, usize::MAX, g)?;
    let lhs = integrate_full_product(&expr, lvl, &vols, q, g)?;
    let rhs: BigRational = vols.vol_ss_exact(alpha)?;
    Ok(vec![check(
        "inversion",
        format!("{} q={} g={} level {}", alpha, q, g, level),
        lhs == SqrtQScalar::rational(rhs.clone(), q),
        format!("{} terms, {} vs {}", expr.terms.len(), lhs, render_rational(&rhs)),
    )])
}
