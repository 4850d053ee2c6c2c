//! JSON file formats for fields, points, polytopes, level sets and cycles.
//!
//! Structural problems (bad JSON, missing keys, wrong shapes) surface as
//! [`Error::Format`]; problems inside well-formed files, such as a polynomial
//! that fails to parse, keep their own error kinds.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{parse_poly, Mode, Polynomial, VectorField};
use crate::polytope::LatticePolytope;
use crate::rational::RationalPoint;
use crate::witness::{Cycle, CycleComponent, Variety};

fn from_json<'a, T: Deserialize<'a>>(text: &'a str, what: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Format(format!("{what}: {e}")))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldFile {
    pub n: usize,
    #[serde(default = "affine")]
    pub mode: Mode,
    pub components: Vec<String>,
}

fn affine() -> Mode {
    Mode::Affine
}

impl FieldFile {
    pub fn from_field(v: &VectorField) -> Self {
        FieldFile { n: v.n(), mode: v.mode(), components: v.components().iter().map(|q| q.to_string()).collect() }
    }

    pub fn to_field(&self) -> Result<VectorField> {
        if self.components.len() != self.n {
            return Err(Error::Format(format!("field has {} components but n = {}", self.components.len(), self.n)));
        }
        let comps = self.components.iter().map(|c| parse_poly(c, self.n, self.mode)).collect::<Result<Vec<_>>>()?;
        VectorField::new(comps)
    }
}

/// `{"n": 2, "mode": "affine", "components": ["1", "x1"]}`.
pub fn read_field(text: &str) -> Result<VectorField> {
    from_json::<FieldFile>(text, "vector field file")?.to_field()
}

/// `[["0","1/2"], ["1","1"]]`; plain integers are accepted too.
pub fn read_points(text: &str) -> Result<Vec<RationalPoint>> {
    from_json(text, "point file")
}

pub fn points_to_json(points: &[RationalPoint]) -> serde_json::Value {
    serde_json::to_value(points).expect("points serialize")
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolytopeFile {
    pub n: usize,
    pub points: Vec<Vec<i64>>,
}

/// `{"n": 2, "points": [[0,0],[1,0],[0,1]]}`.
pub fn read_polytope(text: &str) -> Result<LatticePolytope> {
    let f: PolytopeFile = from_json(text, "polytope file")?;
    if f.points.is_empty() {
        return Err(Error::Format("polytope file lists no points".into()));
    }
    if let Some(bad) = f.points.iter().find(|p| p.len() != f.n) {
        return Err(Error::Format(format!("point {bad:?} does not have {} coordinates", f.n)));
    }
    LatticePolytope::from_points(f.n, f.points)
}

pub fn polytope_to_json(p: &LatticePolytope) -> serde_json::Value {
    serde_json::to_value(PolytopeFile { n: p.ambient_dim(), points: p.vertices().to_vec() }).expect("polytope serializes")
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct LevelFile {
    n: usize,
    #[serde(rename = "D")]
    d: u32,
    levels: Vec<Level>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct Level {
    i: i64,
    points: Vec<RationalPoint>,
}

/// Level sets `f_{≥i}` with their ambient dimension and degree bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelSets {
    pub n: usize,
    pub degree_bound: u32,
    pub levels: BTreeMap<i64, Vec<RationalPoint>>,
}

/// `{"n": 1, "D": 1, "levels": [{"i": 1, "points": [["0"],["1"]]}]}`.
pub fn read_levels(text: &str) -> Result<LevelSets> {
    let f: LevelFile = from_json(text, "level-set file")?;
    let mut levels = BTreeMap::new();
    for l in f.levels {
        if levels.insert(l.i, l.points).is_some() {
            return Err(Error::Format(format!("level {} listed twice", l.i)));
        }
    }
    Ok(LevelSets { n: f.n, degree_bound: f.d, levels })
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct ComponentEntry {
    #[serde(rename = "type")]
    kind: String,
    data: serde_json::Value,
    coeff: u64,
}

/// `[{"type": "hypersurface", "data": "x1 - x2", "coeff": 2}, {"type": "point", "data": ["5","5"], "coeff": 1}]`.
pub fn read_cycle(text: &str, n: usize) -> Result<Cycle> {
    let entries: Vec<ComponentEntry> = from_json(text, "cycle file")?;
    let mut comps = Vec::with_capacity(entries.len());
    for e in entries {
        let variety = match e.kind.as_str() {
            "point" => Variety::Point(
                serde_json::from_value(e.data).map_err(|err| Error::Format(format!("point component: {err}")))?,
            ),
            "hypersurface" => {
                let text = e.data.as_str().ok_or_else(|| Error::Format("hypersurface data must be a polynomial string".into()))?;
                Variety::Hypersurface(parse_poly(text, n, Mode::Affine)?)
            }
            other => {
                return Err(Error::invalid(format!(
                    "unsupported cycle component type {other:?}: only points and hypersurfaces have decidable membership"
                )))
            }
        };
        comps.push(CycleComponent::new(variety, e.coeff)?);
    }
    Cycle::new(n, comps)
}

/// A polynomial from a literal string, or from a file when given as `@path`.
pub fn poly_argument(arg: &str, n: usize, mode: Mode) -> std::io::Result<Result<Polynomial>> {
    let text = match arg.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path)?,
        None => arg.to_string(),
    };
    Ok(parse_poly(text.trim(), n, mode))
}
