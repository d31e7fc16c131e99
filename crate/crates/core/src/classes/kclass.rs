use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Sub};
use std::str::FromStr;

use num_rational::Rational64;

use crate::error::{HnsError, Result};

/// Numerical class `(rank, degree)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KClass {
    pub r: i64,
    pub d: i64,
}

/// Slope `d/r`, with torsion classes at infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Slope {
    Finite(Rational64),
    Infinite,
}

impl Slope {
    pub fn from_int(n: i64) -> Self {
        Slope::Finite(Rational64::from_integer(n))
    }

    /// The finite value; panics at infinity.
    pub fn ratio(&self) -> Rational64 {
        match self {
            Slope::Finite(x) => *x,
            Slope::Infinite => panic!("infinite slope has no finite value"),
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Slope::Finite(_))
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Slope::Finite(x) => write!(f, "{}", x),
            Slope::Infinite => write!(f, "inf"),
        }
    }
}

impl KClass {
    pub const ZERO: KClass = KClass { r: 0, d: 0 };

    pub const fn new(r: i64, d: i64) -> Self {
        KClass { r, d }
    }

    /// `r >= 1`, or `r = 0` and `d > 0`.
    pub fn in_cone(&self) -> bool {
        self.r >= 1 || (self.r == 0 && self.d > 0)
    }

    pub fn require_cone(&self) -> Result<()> {
        if self.in_cone() {
            Ok(())
        } else {
            Err(HnsError::NotInCone(self.r, self.d))
        }
    }

    pub fn slope(&self) -> Slope {
        if self.r == 0 {
            Slope::Infinite
        } else {
            Slope::Finite(Rational64::new(self.d, self.r))
        }
    }

    pub fn is_torsion(&self) -> bool {
        self.r == 0
    }
}

/// Compares `mu(x)` and `mu(y)` without building rationals.
pub fn slope_cmp(x: &KClass, y: &KClass) -> Ordering {
    match (x.r, y.r) {
        (0, 0) => Ordering::Equal,
        (0, _) => Ordering::Greater,
        (_, 0) => Ordering::Less,
        _ => (x.d as i128 * y.r as i128).cmp(&(y.d as i128 * x.r as i128)),
    }
}

/// `<x,y> = (1-g) r_x r_y + (r_x d_y - r_y d_x)`.
pub fn euler_form(x: &KClass, y: &KClass, g: i64) -> i64 {
    (1 - g) * x.r * y.r + (x.r * y.d - y.r * x.d)
}

/// `-<a,a> = (g-1) r^2`.
pub fn stack_dim(weight: KClass, g: i64) -> i64 {
    -euler_form(&weight, &weight, g)
}

impl Add for KClass {
    type Output = KClass;
    fn add(self, o: KClass) -> KClass {
        KClass::new(self.r + o.r, self.d + o.d)
    }
}

impl Sub for KClass {
    type Output = KClass;
    fn sub(self, o: KClass) -> KClass {
        KClass::new(self.r - o.r, self.d - o.d)
    }
}

impl std::iter::Sum for KClass {
    fn sum<I: Iterator<Item = KClass>>(iter: I) -> KClass {
        iter.fold(KClass::ZERO, |a, b| a + b)
    }
}

impl fmt::Display for KClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.r, self.d)
    }
}

impl FromStr for KClass {
    type Err = HnsError;

    /// Parses `"r,d"` (surrounding parentheses and spaces tolerated).
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        let mut it = t.split(',');
        let (Some(a), Some(b), None) = (it.next(), it.next(), it.next()) else {
            return Err(HnsError::Parse(format!("expected r,d but got {:?}", s)));
        };
        let r = a.trim().parse::<i64>();
        let d = b.trim().parse::<i64>();
        match (r, d) {
            (Ok(r), Ok(d)) => Ok(KClass::new(r, d)),
            _ => Err(HnsError::Parse(format!("expected r,d but got {:?}", s))),
        }
    }
}
