//! JSON input documents: schema, located diagnostics, and canonical rendering.

use std::collections::BTreeMap;
use std::fmt;

use horocalc_core::fan::{ConeSpec, DatumError, FanInput, HorosphericalDatum, LatticeSpec};
use horocalc_core::roots::{Family, NodeSubset, RootSystem, SimpleType};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    /// `[family, rank]` pairs; empty for a torus.
    pub root_system: Vec<(String, usize)>,
    #[serde(rename = "parabolic_I", default)]
    pub parabolic_i: Vec<usize>,
    #[serde(rename = "lattice_M")]
    pub lattice_m: LatticeDoc,
    pub fan: FanDoc,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case", deny_unknown_fields)]
pub enum LatticeDoc {
    WeightBasis { basis: Vec<Vec<i64>> },
    ExplicitRho { rank: usize, rho: BTreeMap<String, Vec<i64>> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FanDoc {
    pub rays: Vec<Vec<i64>>,
    pub cones: Vec<ConeDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConeDoc {
    pub rays: Vec<usize>,
    #[serde(default)]
    pub colors: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Severity {
    Error,
    Warning,
}

/// A located message with a stable code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub severity: Severity,
    pub code: &'static str,
    /// Field path such as `fan.cones[0].colors[1]`, or `line L, column C`.
    pub location: String,
    pub message: String,
}

impl Diagnostic {
    fn error(code: &'static str, location: impl Into<String>, message: impl Into<String>) -> Self {
        Diagnostic {
            severity: Severity::Error,
            code,
            location: location.into(),
            message: message.into(),
        }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.severity {
            Severity::Error => "error",
            Severity::Warning => "warning",
        };
        write!(f, "{kind}[{}] at {}: {}", self.code, self.location, self.message)
    }
}

#[derive(Debug, Clone)]
pub struct Parsed {
    pub datum: HorosphericalDatum,
    pub warnings: Vec<Diagnostic>,
}

pub fn parse(text: &str) -> Result<Parsed, Vec<Diagnostic>> {
    let doc: InputDocument = serde_json::from_str(text).map_err(|e| {
        vec![Diagnostic::error(
            "SchemaError",
            format!("line {}, column {}", e.line(), e.column()),
            e.to_string(),
        )]
    })?;
    from_document(&doc)
}

fn family_of(name: &str) -> Option<Family> {
    let mut chars = name.chars();
    match (chars.next(), chars.next()) {
        (Some(c), None) => Family::from_letter(c.to_ascii_uppercase()),
        _ => None,
    }
}

pub fn from_document(doc: &InputDocument) -> Result<Parsed, Vec<Diagnostic>> {
    let mut errors = Vec::new();
    let mut warnings = Vec::new();

    let mut components = Vec::new();
    for (i, (name, rank)) in doc.root_system.iter().enumerate() {
        let at = format!("root_system[{i}]");
        match family_of(name) {
            None => errors.push(Diagnostic::error("InvalidType", at, format!("unknown family {name:?}"))),
            Some(f) => match SimpleType::new(f, *rank) {
                Ok(t) => components.push(t),
                Err(e) => errors.push(Diagnostic::error("InvalidType", at, e.to_string())),
            },
        }
    }
    if !errors.is_empty() {
        return Err(errors);
    }
    let rs = RootSystem::new(components);
    let n = rs.rank();

    let mut parabolic = NodeSubset::new();
    for (i, &a) in doc.parabolic_i.iter().enumerate() {
        if a == 0 || a > n {
            errors.push(Diagnostic::error(
                "UnknownNode",
                format!("parabolic_I[{i}]"),
                format!("node {a} does not exist (nodes are 1..={n})"),
            ));
        } else if !parabolic.insert(a) {
            errors.push(Diagnostic::error("DuplicateNode", format!("parabolic_I[{i}]"), format!("node {a} repeated")));
        }
    }

    let (rank, lattice) = match &doc.lattice_m {
        LatticeDoc::WeightBasis { basis } => {
            for (j, row) in basis.iter().enumerate() {
                if row.len() != n {
                    errors.push(Diagnostic::error(
                        "Length",
                        format!("lattice_M.basis[{j}]"),
                        format!("row has length {}, expected {n}", row.len()),
                    ));
                }
            }
            (basis.len(), LatticeSpec::WeightBasis(basis.clone()))
        }
        LatticeDoc::ExplicitRho { rank, rho } => {
            let mut map = BTreeMap::new();
            for (key, v) in rho {
                let at = format!("lattice_M.rho[{key:?}]");
                match key.parse::<usize>() {
                    Ok(a) if a >= 1 && a <= n => {
                        if parabolic.contains(a) {
                            errors.push(Diagnostic::error("InvalidColor", at, format!("node {a} lies in parabolic_I")));
                        } else if v.len() != *rank {
                            errors.push(Diagnostic::error(
                                "Length",
                                at,
                                format!("vector has length {}, expected {rank}", v.len()),
                            ));
                        } else {
                            map.insert(a, v.clone());
                        }
                    }
                    _ => errors.push(Diagnostic::error("UnknownNode", at, format!("{key:?} is not a node"))),
                }
            }
            for a in rs.nodes().difference(&parabolic).iter() {
                if !rho.contains_key(&a.to_string()) && !map.contains_key(&a) {
                    errors.push(Diagnostic::error("MissingRho", "lattice_M.rho", format!("no vector for node {a}")));
                }
            }
            (*rank, LatticeSpec::ExplicitRho { rank: *rank, rho: map })
        }
    };

    let mut rays = Vec::new();
    for (i, ray) in doc.fan.rays.iter().enumerate() {
        let at = format!("fan.rays[{i}]");
        if ray.len() != rank {
            errors.push(Diagnostic::error("Length", at, format!("ray has length {}, expected {rank}", ray.len())));
            continue;
        }
        let g = ray.iter().fold(0i64, |a, &x| num_gcd(a, x));
        if g == 0 {
            errors.push(Diagnostic::error("ZeroRay", at, "ray is the zero vector"));
            continue;
        }
        if g != 1 {
            let p: Vec<i64> = ray.iter().map(|x| x / g).collect();
            warnings.push(Diagnostic {
                severity: Severity::Warning,
                code: "RayNotPrimitive",
                location: at,
                message: format!("ray {ray:?} normalized to {p:?}"),
            });
            rays.push(p);
        } else {
            rays.push(ray.clone());
        }
    }

    let mut cones = Vec::new();
    for (ci, c) in doc.fan.cones.iter().enumerate() {
        for (k, &r) in c.rays.iter().enumerate() {
            if r >= doc.fan.rays.len() {
                errors.push(Diagnostic::error(
                    "RayIndex",
                    format!("fan.cones[{ci}].rays[{k}]"),
                    format!("ray index {r} out of range (there are {} rays)", doc.fan.rays.len()),
                ));
            }
        }
        for (k, &a) in c.colors.iter().enumerate() {
            let at = format!("fan.cones[{ci}].colors[{k}]");
            if a == 0 || a > n {
                errors.push(Diagnostic::error("UnknownNode", at, format!("node {a} does not exist")));
            } else if parabolic.contains(a) {
                errors.push(Diagnostic::error("InvalidColor", at, format!("node {a} lies in parabolic_I")));
            }
        }
        cones.push(ConeSpec {
            rays: c.rays.clone(),
            colors: c.colors.clone(),
        });
    }
    if !errors.is_empty() {
        return Err(errors);
    }

    HorosphericalDatum::new(rs, parabolic, lattice, FanInput { rays, cones })
        .map(|datum| Parsed { datum, warnings })
        .map_err(|e| vec![Diagnostic::error(datum_code(&e), "document", e.to_string())])
}

fn num_gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn datum_code(e: &DatumError) -> &'static str {
    match e {
        DatumError::UnknownNode(_) => "UnknownNode",
        DatumError::InvalidColor(_) => "InvalidColor",
        DatumError::RayIndex { .. } => "RayIndex",
        DatumError::ZeroRay(_) => "ZeroRay",
        DatumError::Length { .. } => "Length",
        DatumError::MissingRho(_) => "MissingRho",
    }
}

/// Canonical document for a datum (rays as stored, i.e. primitive).
pub fn to_document(d: &HorosphericalDatum) -> InputDocument {
    let root_system = d
        .root_system()
        .components()
        .iter()
        .map(|t| (t.family().letter().to_string(), t.rank()))
        .collect();
    let lattice_m = match d.lattice() {
        LatticeSpec::WeightBasis(rows) => LatticeDoc::WeightBasis { basis: rows.clone() },
        LatticeSpec::ExplicitRho { rank, rho } => LatticeDoc::ExplicitRho {
            rank: *rank,
            rho: rho.iter().map(|(a, v)| (a.to_string(), v.clone())).collect(),
        },
    };
    let input = d.fan_input();
    InputDocument {
        root_system,
        parabolic_i: d.parabolic().iter().collect(),
        lattice_m,
        fan: FanDoc {
            rays: input.rays.clone(),
            cones: input
                .cones
                .iter()
                .map(|c| ConeDoc {
                    rays: c.rays.clone(),
                    colors: c.colors.clone(),
                })
                .collect(),
        },
    }
}

pub fn render(d: &HorosphericalDatum) -> String {
    serde_json::to_string_pretty(&to_document(d)).expect("documents always serialize")
}
