use std::collections::VecDeque;
use std::fmt;
use std::ops::{Add, Sub};
use std::path::Path;
use std::str::FromStr;

use num_rational::Rational64;
use serde::Deserialize;

use crate::error::{HnsError, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DimVector(pub Vec<i64>);

impl DimVector {
    pub fn new(v: Vec<i64>) -> Result<Self> {
        if v.iter().any(|&x| x < 0) {
            return Err(HnsError::InvalidClass(format!("negative dimension in {:?}", v)));
        }
        Ok(DimVector(v))
    }

    pub fn zeros(n: usize) -> Self {
        DimVector(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        DimVector(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    /// Componentwise `<=`.
    pub fn le(&self, other: &DimVector) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl Add for &DimVector {
    type Output = DimVector;
    fn add(self, o: &DimVector) -> DimVector {
        DimVector(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &DimVector {
    type Output = DimVector;
    fn sub(self, o: &DimVector) -> DimVector {
        DimVector(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for DimVector {
    type Err = HnsError;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        let v = t
            .split(',')
            .map(|x| x.trim().parse::<i64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| HnsError::Parse(format!("bad dimension vector {:?}", s)))?;
        DimVector::new(v)
    }
}

/// Finite quiver without oriented cycles; vertices are `0..vertices`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverDatum {
    vertices: usize,
    arrows: Vec<(usize, usize)>,
}

impl QuiverDatum {
    pub fn new(vertices: usize, arrows: Vec<(usize, usize)>) -> Result<Self> {
        if vertices == 0 {
            return Err(HnsError::InvalidQuiver("no vertices".into()));
        }
        if let Some(a) = arrows.iter().find(|&&(s, t)| s >= vertices || t >= vertices) {
            return Err(HnsError::InvalidQuiver(format!(
                "arrow {:?} leaves the vertex range",
                a
            )));
        }
        // Kahn: every vertex must eventually reach in-degree zero
        let mut indeg = vec![0usize; vertices];
        for &(_, t) in &arrows {
            indeg[t] += 1;
        }
        let mut queue: VecDeque<usize> = (0..vertices).filter(|&i| indeg[i] == 0).collect();
        let mut seen = 0;
        while let Some(i) = queue.pop_front() {
            seen += 1;
            for &(s, t) in &arrows {
                if s == i {
                    indeg[t] -= 1;
                    if indeg[t] == 0 {
                        queue.push_back(t);
                    }
                }
            }
        }
        if seen < vertices {
            return Err(HnsError::InvalidQuiver("oriented cycle".into()));
        }
        Ok(QuiverDatum { vertices, arrows })
    }

    /// `0 -> 1`.
    pub fn a2() -> Self {
        QuiverDatum::new(2, vec![(0, 1)]).expect("acyclic")
    }

    /// Two arrows `0 -> 1`.
    pub fn kronecker() -> Self {
        QuiverDatum::new(2, vec![(0, 1), (0, 1)]).expect("acyclic")
    }

    pub fn vertices(&self) -> usize {
        self.vertices
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    pub fn check_dim(&self, d: &DimVector) -> Result<()> {
        if d.len() != self.vertices {
            return Err(HnsError::InvalidClass(format!(
                "{} has {} entries, quiver has {} vertices",
                d,
                d.len(),
                self.vertices
            )));
        }
        Ok(())
    }
}

/// Stability parameter; `mu(d) = theta . d / sum(d)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stability(pub Vec<Rational64>);

impl Stability {
    pub fn from_ints(v: &[i64]) -> Self {
        Stability(v.iter().map(|&x| Rational64::from_integer(x)).collect())
    }

    pub fn slope(&self, d: &DimVector) -> Result<Rational64> {
        let n = d.total();
        if n == 0 || d.len() != self.0.len() {
            return Err(HnsError::Precondition(format!("slope of {} undefined", d)));
        }
        let num: Rational64 = self
            .0
            .iter()
            .zip(&d.0)
            .map(|(t, &x)| t * Rational64::from_integer(x))
            .sum();
        Ok(num / Rational64::from_integer(n))
    }
}

impl FromStr for Stability {
    type Err = HnsError;

    /// Comma-separated integers or fractions `p/q`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        t.split(',')
            .map(|x| parse_rational(x.trim()))
            .collect::<Result<Vec<_>>>()
            .map(Stability)
    }
}

fn parse_rational(s: &str) -> Result<Rational64> {
    s.parse::<Rational64>()
        .map_err(|_| HnsError::Parse(format!("bad rational {:?}", s)))
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ThetaEntry {
    Int(i64),
    Text(String),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct QuiverFile {
    vertices: usize,
    #[serde(default)]
    arrows: Vec<[usize; 2]>,
    theta: Option<Vec<ThetaEntry>>,
}

/// A quiver read from TOML, with its stability parameter if one was given.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverConfig {
    pub quiver: QuiverDatum,
    pub theta: Option<Stability>,
}

impl QuiverConfig {
    pub fn from_toml_str(s: &str) -> Result<Self> {
        let f: QuiverFile = toml::from_str(s).map_err(|e| HnsError::Parse(e.to_string()))?;
        let quiver = QuiverDatum::new(f.vertices, f.arrows.iter().map(|a| (a[0], a[1])).collect())?;
        let theta = match f.theta {
            None => None,
            Some(entries) => {
                let v = entries
                    .into_iter()
                    .map(|e| match e {
                        ThetaEntry::Int(x) => Ok(Rational64::from_integer(x)),
                        ThetaEntry::Text(t) => parse_rational(&t),
                    })
                    .collect::<Result<Vec<_>>>()?;
                if v.len() != quiver.vertices() {
                    return Err(HnsError::InvalidQuiver(format!(
                        "theta has {} entries for {} vertices",
                        v.len(),
                        quiver.vertices()
                    )));
                }
                Some(Stability(v))
            }
        };
        Ok(QuiverConfig { quiver, theta })
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let s =
            std::fs::read_to_string(path).map_err(|e| HnsError::Io(format!("{}: {}", path.display(), e)))?;
        Self::from_toml_str(&s)
    }
}
