//! Explicit model of coherent sheaves on the projective line over `F_q`.

mod embeddings;
mod oracle;
mod sheaf;

pub use embeddings::count_embeddings_exhaustive;
pub use oracle::P1Oracle;
pub use sheaf::{p1_closed_points, ClosedPoint, P1Sheaf, Partition};
