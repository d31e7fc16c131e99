//! K-classes, HN types as convex lattice polygons, and their enumeration.

mod enumerate;
mod hntype;
mod hull;
mod kclass;

pub use enumerate::{enumerate_hn_types, hn_gap_threshold};
pub use hntype::{polygon_lies_above, HNType};
pub use hull::lower_convex_hull;
pub use kclass::{euler_form, slope_cmp, stack_dim, KClass, Slope};

/// `sum_{i<j} -<a_j, a_i>`.
pub fn stratum_codim(t: &HNType, g: i64) -> i64 {
    let p = t.parts();
    let mut c = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            c -= euler_form(&p[j], &p[i], g);
        }
    }
    c
}

/// `sum_{i<j} <a_i, a_j>`, the exponent of `v` attached to a stratum.
pub fn twist_exponent(parts: &[KClass], g: i64) -> i64 {
    let mut e = 0;
    for i in 0..parts.len() {
        for j in i + 1..parts.len() {
            e += euler_form(&parts[i], &parts[j], g);
        }
    }
    e
}
