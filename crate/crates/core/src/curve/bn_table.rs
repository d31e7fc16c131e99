use std::fmt;

use crate::error::{HnsError, Result};

/// `coef * g + constant`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AffineInG {
    pub coef: i64,
    pub constant: i64,
}

impl AffineInG {
    pub const fn new(coef: i64, constant: i64) -> Self {
        AffineInG { coef, constant }
    }

    pub fn eval(&self, g: i64) -> i64 {
        self.coef * g + self.constant
    }
}

impl std::ops::Sub for AffineInG {
    type Output = AffineInG;
    fn sub(self, o: AffineInG) -> AffineInG {
        AffineInG::new(self.coef - o.coef, self.constant - o.constant)
    }
}

impl fmt::Display for AffineInG {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.coef, self.constant) {
            (0, c) => write!(f, "{}", c),
            (a, 0) => write!(f, "{}g", a),
            (a, c) if c < 0 => write!(f, "{}g-{}", a, -c),
            (a, c) => write!(f, "{}g+{}", a, c),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fiber {
    Empty,
    Point,
    TwoPoints,
    ProjectiveLine,
}

impl Fiber {
    /// `None` for the empty fiber.
    pub fn dim(&self) -> Option<i64> {
        match self {
            Fiber::Empty => None,
            Fiber::Point | Fiber::TwoPoints => Some(0),
            Fiber::ProjectiveLine => Some(1),
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Fiber::Empty => "empty",
            Fiber::Point => "pt",
            Fiber::TwoPoints => "pt+pt",
            Fiber::ProjectiveLine => "P1",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BnRow {
    pub stratum: &'static str,
    pub dim: AffineInG,
    pub fiber: Fiber,
}

/// Dimension and fiber table for the rank 2, degree 0 Brill-Noether strata.
pub fn bn_table_rank2() -> Vec<BnRow> {
    vec![
        BnRow {
            stratum: "W0",
            dim: AffineInG::new(4, -4),
            fiber: Fiber::Empty,
        },
        BnRow {
            stratum: "W1",
            dim: AffineInG::new(3, -3),
            fiber: Fiber::Point,
        },
        BnRow {
            stratum: "U",
            dim: AffineInG::new(2, -2),
            fiber: Fiber::TwoPoints,
        },
        BnRow {
            stratum: "W2",
            dim: AffineInG::new(1, -4),
            fiber: Fiber::ProjectiveLine,
        },
    ]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Smallness {
    Small,
    Semismall,
    Neither,
}

impl fmt::Display for Smallness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Smallness::Small => "small",
            Smallness::Semismall => "semismall",
            Smallness::Neither => "neither",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SmallnessRow<D> {
    pub dim: D,
    pub fiber_dim: i64,
    pub open: bool,
}

/// Rows of the table lying in the image (nonempty fiber); the largest one is open.
pub fn bn_image_rows() -> Vec<SmallnessRow<AffineInG>> {
    let rows: Vec<BnRow> = bn_table_rank2()
        .into_iter()
        .filter(|r| r.fiber.dim().is_some())
        .collect();
    rows.iter()
        .map(|r| SmallnessRow {
            dim: r.dim,
            fiber_dim: r.fiber.dim().unwrap_or(0),
            open: r.stratum == "W1",
        })
        .collect()
}

fn single_open<D: Copy>(rows: &[SmallnessRow<D>]) -> Result<D> {
    let open: Vec<&SmallnessRow<D>> = rows.iter().filter(|r| r.open).collect();
    if open.len() != 1 {
        return Err(HnsError::Precondition(format!(
            "exactly one open row expected, found {}",
            open.len()
        )));
    }
    Ok(open[0].dim)
}

/// Small iff every non-open row has codimension `> 2 * fiber dim`; semismall
/// if `>=` everywhere with equality somewhere.
pub fn check_smallness(rows: &[SmallnessRow<i64>]) -> Result<Smallness> {
    let top = single_open(rows)?;
    let mut equal = false;
    for r in rows.iter().filter(|r| !r.open) {
        let slack = (top - r.dim) - 2 * r.fiber_dim;
        if slack < 0 {
            return Ok(Smallness::Neither);
        }
        equal |= slack == 0;
    }
    Ok(if equal {
        Smallness::Semismall
    } else {
        Smallness::Small
    })
}

/// The same classification, required to hold uniformly for all `g >= g_min`.
/// Returns the weakest class attained over that range.
pub fn check_smallness_symbolic(rows: &[SmallnessRow<AffineInG>], g_min: i64) -> Result<Smallness> {
    let top = single_open(rows)?;
    let mut equal = false;
    for r in rows.iter().filter(|r| !r.open) {
        let slack = top - r.dim - AffineInG::new(0, 2 * r.fiber_dim);
        let at_min = slack.eval(g_min);
        if slack.coef < 0 || at_min < 0 {
            return Ok(Smallness::Neither);
        }
        // slack is nondecreasing in g, so it vanishes somewhere iff it starts at 0
        equal |= at_min == 0;
    }
    Ok(if equal {
        Smallness::Semismall
    } else {
        Smallness::Small
    })
}
