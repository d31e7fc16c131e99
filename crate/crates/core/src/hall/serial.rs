use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::element::HallElement;
use super::peel::{PeelCertificate, PeelStep};
use crate::classes::{HNType, KClass};
use crate::error::{HnsError, Result};
use crate::scalars::{rational_from_json, rational_to_json, LaurentV};

pub const SCHEMA: u32 = 1;

#[derive(Serialize, Deserialize)]
struct TermJson {
    parts: Vec<[i64; 2]>,
    coeff: BTreeMap<i64, Value>,
}

#[derive(Serialize, Deserialize)]
struct ElementJson {
    schema: u32,
    weight: [i64; 2],
    level: i64,
    terms: Vec<TermJson>,
}

#[derive(Serialize, Deserialize)]
struct StepJson {
    vertex: [i64; 2],
    removed: Vec<Vec<[i64; 2]>>,
}

#[derive(Serialize, Deserialize)]
struct CertificateJson {
    schema: u32,
    target: [i64; 2],
    genus: i64,
    steps: Vec<StepJson>,
    terminal: ElementJson,
}

fn pair(k: KClass) -> [i64; 2] {
    [k.r, k.d]
}

fn parts_json(t: &HNType) -> Vec<[i64; 2]> {
    t.parts().iter().map(|&k| pair(k)).collect()
}

fn parts_from(p: &[[i64; 2]]) -> Result<HNType> {
    HNType::new(p.iter().map(|&[r, d]| KClass::new(r, d)).collect())
}

fn check_schema(s: u32) -> Result<()> {
    if s != SCHEMA {
        return Err(HnsError::Parse(format!("unsupported schema {}", s)));
    }
    Ok(())
}

fn to_repr(e: &HallElement) -> ElementJson {
    ElementJson {
        schema: SCHEMA,
        weight: pair(e.weight()),
        level: e.level(),
        terms: e
            .iter()
            .map(|(t, c)| TermJson {
                parts: parts_json(t),
                coeff: c.terms().map(|(k, x)| (k, rational_to_json(x))).collect(),
            })
            .collect(),
    }
}

fn from_repr(j: &ElementJson) -> Result<HallElement> {
    check_schema(j.schema)?;
    let mut e = HallElement::zero(KClass::new(j.weight[0], j.weight[1]), j.level)?;
    for term in &j.terms {
        let t = parts_from(&term.parts)?;
        let mut c = Vec::new();
        for (&k, v) in &term.coeff {
            c.push((k, rational_from_json(v)?));
        }
        e.add_term(t, LaurentV::from_terms(c))?;
    }
    Ok(e)
}

fn parse_err(e: serde_json::Error) -> HnsError {
    HnsError::Parse(e.to_string())
}

pub fn element_to_json(e: &HallElement) -> String {
    serde_json::to_string_pretty(&to_repr(e)).expect("serializable")
}

pub fn element_from_json(s: &str) -> Result<HallElement> {
    from_repr(&serde_json::from_str(s).map_err(parse_err)?)
}

pub fn certificate_to_json(c: &PeelCertificate) -> String {
    let j = CertificateJson {
        schema: SCHEMA,
        target: pair(c.target),
        genus: c.genus,
        steps: c
            .steps
            .iter()
            .map(|s| StepJson {
                vertex: pair(s.vertex),
                removed: s.removed.iter().map(parts_json).collect(),
            })
            .collect(),
        terminal: to_repr(&c.terminal),
    };
    serde_json::to_string_pretty(&j).expect("serializable")
}

pub fn certificate_from_json(s: &str) -> Result<PeelCertificate> {
    let j: CertificateJson = serde_json::from_str(s).map_err(parse_err)?;
    check_schema(j.schema)?;
    let mut steps = Vec::new();
    for s in &j.steps {
        steps.push(PeelStep {
            vertex: KClass::new(s.vertex[0], s.vertex[1]),
            removed: s.removed.iter().map(|p| parts_from(p)).collect::<Result<_>>()?,
        });
    }
    Ok(PeelCertificate {
        target: KClass::new(j.target[0], j.target[1]),
        genus: j.genus,
        steps,
        terminal: from_repr(&j.terminal)?,
    })
}
