//! Point counting on a curve given by its zeta numerator.

mod bn_table;
mod torsion;
mod volume;
mod zeta;

pub use bn_table::{
    bn_image_rows, bn_table_rank2, check_smallness, check_smallness_symbolic, AffineInG, BnRow, Fiber,
    Smallness, SmallnessRow,
};
pub use torsion::{aut_partition, partition_mass, partitions, vol_torsion};
pub use volume::{CurveVolumes, VolMode, VolResult};
pub use zeta::ZetaDatum;
