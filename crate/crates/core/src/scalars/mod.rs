//! Exact scalars: rationals, Laurent polynomials in `v`, and `Q(sqrt q)`.

mod arith;
mod laurent;
mod sqrtq;

pub use arith::{
    divisors, geom_sum, gl_order, int_pow, is_prime_power, mobius, q_pow, rational_from_json,
    rational_to_json, render_rational, ri,
};
pub use laurent::LaurentV;
pub use sqrtq::SqrtQScalar;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;
