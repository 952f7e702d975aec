//! Command execution and report rendering.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use horocalc_core::fan::{is_complete, orbits, validate_fan, HorosphericalDatum};
use horocalc_core::qfun::Exponent;
use horocalc_core::stringy::{
    check_stringy_smooth, compute_omega, invariants, lattice_sum, series_counts, series_oracle, InvariantReport,
    StringyError,
};
use horocalc_core::{QPoly, QRat};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Number, Value};

use crate::document::{parse, Diagnostic};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Validate,
    Invariants,
    Smooth,
    Orbits,
    Oracle,
}

/// Variable used when printing E-functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Var {
    #[default]
    Q,
    Uv,
    L,
}

impl Var {
    fn symbol(self) -> &'static str {
        match self {
            Var::Q => "q",
            Var::Uv => "(uv)",
            Var::L => "L",
        }
    }
}

impl FromStr for Var {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "q" => Ok(Var::Q),
            "uv" => Ok(Var::Uv),
            "L" => Ok(Var::L),
            _ => Err(format!("unknown variable {s:?} (expected uv, q or L)")),
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct Options {
    pub json: bool,
    pub var: Var,
    pub bound: Option<i64>,
}

pub mod exit {
    pub const OK: i32 = 0;
    pub const INVALID_INPUT: i32 = 1;
    pub const NOT_Q_GORENSTEIN: i32 = 2;
    pub const INTERNAL: i32 = 3;
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn diag_json(d: &Diagnostic) -> Value {
    json!({ "code": d.code, "location": d.location, "message": d.message })
}

fn big(n: &BigInt) -> Value {
    Value::Number(Number::from_str(&n.to_string()).expect("integers are valid JSON numbers"))
}

fn rational(r: &BigRational) -> String {
    r.to_string()
}

fn poly_json(p: &QPoly) -> Value {
    let terms: Vec<Value> = p.terms().rev().map(|(e, c)| json!([e, big(c)])).collect();
    json!({ "scale": p.scale(), "terms": terms })
}

fn qrat_json(f: &QRat, var: &str) -> Value {
    json!({
        "text": f.render(var),
        "scale": f.scale(),
        "numerator": poly_json(f.num()),
        "denominator": poly_json(f.den()),
    })
}

fn exponent_text(e: &Exponent) -> String {
    if e.is_integer() {
        e.numer().to_string()
    } else {
        format!("{}/{}", e.numer(), e.denom())
    }
}

pub fn run(command: Command, text: &str, opts: &Options) -> Outcome {
    let parsed = match parse(text) {
        Ok(p) => p,
        Err(errors) => {
            let stderr: String = errors.iter().map(|e| format!("{e}\n")).collect();
            let stdout = if opts.json {
                let v = json!({ "status": "invalid", "errors": errors.iter().map(diag_json).collect::<Vec<_>>() });
                format!("{}\n", serde_json::to_string_pretty(&v).unwrap())
            } else {
                String::new()
            };
            return Outcome {
                code: exit::INVALID_INPUT,
                stdout,
                stderr,
            };
        }
    };
    let mut stderr: String = parsed.warnings.iter().map(|w| format!("{w}\n")).collect();
    let d = &parsed.datum;

    let violations = validate_fan(d);
    if command == Command::Validate || !violations.is_empty() {
        let mut out = String::new();
        let code = if violations.is_empty() { exit::OK } else { exit::INVALID_INPUT };
        if opts.json {
            let v = json!({
                "status": if violations.is_empty() { "valid" } else { "invalid" },
                "violations": violations
                    .iter()
                    .map(|v| json!({ "code": v.code(), "message": v.to_string() }))
                    .collect::<Vec<_>>(),
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&v).unwrap()).unwrap();
        } else if violations.is_empty() {
            writeln!(out, "valid").unwrap();
            writeln!(out, "cones: {}", d.fan().cones().len()).unwrap();
            writeln!(out, "complete: {}", is_complete(d.fan())).unwrap();
        } else {
            writeln!(out, "invalid").unwrap();
            for v in &violations {
                writeln!(out, "  {}: {v}", v.code()).unwrap();
            }
        }
        if !violations.is_empty() && command != Command::Validate {
            for v in &violations {
                writeln!(stderr, "error[{}]: {v}", v.code()).unwrap();
            }
        }
        return Outcome { code, stdout: out, stderr };
    }

    let result = match command {
        Command::Validate => unreachable!(),
        Command::Invariants => run_invariants(d, opts),
        Command::Smooth => run_smooth(d, opts),
        Command::Orbits => Ok((exit::OK, run_orbits(d, opts))),
        Command::Oracle => run_oracle(d, opts),
    };
    match result {
        Ok((code, stdout)) => Outcome { code, stdout, stderr },
        Err(e) => {
            writeln!(stderr, "error: {e}").unwrap();
            let code = match e {
                StringyError::NotQGorenstein { .. } => exit::NOT_Q_GORENSTEIN,
                StringyError::NonNegativeWeight { .. } => exit::NOT_Q_GORENSTEIN,
                _ => exit::INTERNAL,
            };
            Outcome {
                code,
                stdout: String::new(),
                stderr,
            }
        }
    }
}

fn err_text(e: &StringyError) -> String {
    format!("n/a ({e})")
}

fn lf_lines(r: &InvariantReport) -> Vec<String> {
    r.locally_factorial
        .cones
        .iter()
        .map(|c| {
            format!(
                "cone {}: injective colors {}, part of a basis {}, colors on rays {}",
                c.cone, c.injective, c.partial_basis, c.rho_are_rays
            )
        })
        .collect()
}

fn pattern_lines(r: &InvariantReport) -> Vec<String> {
    let mut out = Vec::new();
    for c in &r.smooth.cones {
        if c.failures.is_empty() {
            out.push(format!("cone {} (colors {}): pattern holds", c.cone, c.colors));
        }
        for f in &c.failures {
            out.push(format!("cone {} (colors {}): component {}: {}", c.cone, c.colors, f.component, f.reason));
        }
    }
    out
}

fn run_invariants(d: &HorosphericalDatum, opts: &Options) -> Result<(i32, String), StringyError> {
    let r = invariants(d)?;
    let var = opts.var.symbol();
    let code = if r.q_gorenstein() { exit::OK } else { exit::NOT_Q_GORENSTEIN };
    let mut out = String::new();
    if opts.json {
        let mut m = Map::new();
        m.insert("dimension".into(), json!(r.dimension));
        m.insert("q_gorenstein".into(), json!(r.q_gorenstein()));
        match &r.omega {
            Ok(w) => {
                m.insert("gorenstein_index".into(), big(w.gorenstein_index()));
                let cv: Map<String, Value> = w
                    .covectors()
                    .iter()
                    .map(|(k, v)| (k.to_string(), json!(v.iter().map(rational).collect::<Vec<_>>())))
                    .collect();
                m.insert("omega".into(), Value::Object(cv));
            }
            Err(e) => {
                m.insert("q_gorenstein_witness".into(), json!(e.to_string()));
            }
        }
        let opt = |x: &Result<QRat, StringyError>, v: &str| match x {
            Ok(f) => qrat_json(f, v),
            Err(e) => json!({ "error": e.to_string() }),
        };
        m.insert("stringy_E".into(), opt(&r.stringy_e, var));
        m.insert(
            "e_homogeneous".into(),
            json!({ "text": r.e_homogeneous.render(var), "poly": poly_json(&r.e_homogeneous) }),
        );
        m.insert(
            "e_polynomial".into(),
            json!({ "text": r.e_polynomial.render(var), "poly": poly_json(&r.e_polynomial) }),
        );
        m.insert(
            "stringy_euler".into(),
            match &r.stringy_euler {
                Ok(v) => json!(rational(v)),
                Err(e) => json!({ "error": e.to_string() }),
            },
        );
        m.insert("euler".into(), big(&r.euler));
        m.insert("sr_series".into(), opt(&r.sr_series, "t"));
        m.insert(
            "verdicts".into(),
            json!({
                "q_gorenstein": r.q_gorenstein(),
                "locally_factorial": r.locally_factorial.holds,
                "smooth": r.smooth.holds,
            }),
        );
        m.insert(
            "diagnostics".into(),
            json!({ "locally_factorial": lf_lines(&r), "smooth": pattern_lines(&r) }),
        );
        writeln!(out, "{}", serde_json::to_string_pretty(&Value::Object(m)).unwrap()).unwrap();
        return Ok((code, out));
    }

    writeln!(out, "dimension: {}", r.dimension).unwrap();
    match &r.omega {
        Ok(w) => writeln!(out, "q_gorenstein: true (index {})", w.gorenstein_index()).unwrap(),
        Err(e) => writeln!(out, "q_gorenstein: false ({e})").unwrap(),
    }
    let show = |x: &Result<QRat, StringyError>, v: &str| match x {
        Ok(f) => f.render(v),
        Err(e) => err_text(e),
    };
    writeln!(out, "stringy_E: {}", show(&r.stringy_e, var)).unwrap();
    writeln!(out, "E(G/H): {}", r.e_homogeneous.render(var)).unwrap();
    writeln!(out, "e_polynomial: {}", r.e_polynomial.render(var)).unwrap();
    match &r.stringy_euler {
        Ok(v) => writeln!(out, "e_st: {v}").unwrap(),
        Err(e) => writeln!(out, "e_st: {}", err_text(e)).unwrap(),
    }
    writeln!(out, "e: {}", r.euler).unwrap();
    writeln!(out, "sr_series: {}", show(&r.sr_series, "t")).unwrap();
    writeln!(out, "locally_factorial: {}", r.locally_factorial.holds).unwrap();
    writeln!(out, "smooth: {}", r.smooth.holds).unwrap();
    writeln!(out, "diagnostics:").unwrap();
    for l in lf_lines(&r).into_iter().chain(pattern_lines(&r)) {
        writeln!(out, "  {l}").unwrap();
    }
    Ok((code, out))
}

fn run_smooth(d: &HorosphericalDatum, opts: &Options) -> Result<(i32, String), StringyError> {
    let r = invariants(d)?;
    let stringy = check_stringy_smooth(d);
    if let Ok(s) = &stringy {
        if !s.agrees() {
            return Err(StringyError::Internal(format!(
                "e_st = e is {} but the Dynkin pattern says {}",
                s.equal, s.pattern
            )));
        }
    }
    let mut out = String::new();
    if opts.json {
        let ladder = json!({
            "q_gorenstein": match &r.omega {
                Ok(w) => json!({ "holds": true, "index": big(w.gorenstein_index()) }),
                Err(e) => json!({ "holds": false, "witness": e.to_string() }),
            },
            "locally_factorial": { "holds": r.locally_factorial.holds, "diagnostics": lf_lines(&r) },
            "smooth": { "holds": r.smooth.holds, "diagnostics": pattern_lines(&r) },
            "stringy_euler_check": match &stringy {
                Ok(s) => json!({
                    "e_st": rational(&s.e_st),
                    "e": big(&s.e),
                    "equal": s.equal,
                    "pattern": s.pattern,
                }),
                Err(e) => json!({ "skipped": e.to_string() }),
            },
        });
        writeln!(out, "{}", serde_json::to_string_pretty(&ladder).unwrap()).unwrap();
        return Ok((exit::OK, out));
    }
    match &r.omega {
        Ok(w) => writeln!(out, "q_gorenstein: true (index {})", w.gorenstein_index()).unwrap(),
        Err(e) => writeln!(out, "q_gorenstein: false ({e})").unwrap(),
    }
    writeln!(out, "locally_factorial: {}", r.locally_factorial.holds).unwrap();
    for l in lf_lines(&r) {
        writeln!(out, "  {l}").unwrap();
    }
    writeln!(out, "smooth: {}", r.smooth.holds).unwrap();
    for l in pattern_lines(&r) {
        writeln!(out, "  {l}").unwrap();
    }
    match &stringy {
        Ok(s) => writeln!(
            out,
            "stringy Euler check: e_st = {}, e = {}, equal = {}, pattern = {}",
            s.e_st, s.e, s.equal, s.pattern
        )
        .unwrap(),
        Err(e) => writeln!(out, "stringy Euler check: skipped ({e})").unwrap(),
    }
    Ok((exit::OK, out))
}

fn run_orbits(d: &HorosphericalDatum, opts: &Options) -> String {
    let fan = d.fan();
    let list = orbits(d);
    let mut out = String::new();
    if opts.json {
        let v: Vec<Value> = list
            .iter()
            .map(|o| {
                let c = &fan.cones()[o.cone];
                json!({
                    "cone": o.cone,
                    "rays": c.rays(),
                    "colors": c.colors().iter().collect::<Vec<_>>(),
                    "dim": o.dim,
                    "rank_part": o.rank_part,
                    "flag_part": o.flag_part,
                    "closure": o.closure,
                })
            })
            .collect();
        writeln!(out, "{}", serde_json::to_string_pretty(&json!({ "orbits": v })).unwrap()).unwrap();
        return out;
    }
    writeln!(out, "orbits: {}", list.len()).unwrap();
    for o in &list {
        let c = &fan.cones()[o.cone];
        writeln!(
            out,
            "  cone {} rays {:?} colors {}: dim {} = {} + {}, closure contains {:?}",
            o.cone,
            c.rays(),
            c.colors(),
            o.dim,
            o.rank_part,
            o.flag_part,
            o.closure
        )
        .unwrap();
    }
    out
}

fn run_oracle(d: &HorosphericalDatum, opts: &Options) -> Result<(i32, String), StringyError> {
    let omega = compute_omega(d)?;
    let bound = match opts.bound {
        Some(b) => b,
        None => {
            let max = d
                .fan()
                .used_rays()
                .into_iter()
                .filter_map(|k| omega.ray_value(d, k))
                .map(|w| -w)
                .max()
                .unwrap_or_else(|| BigRational::from_integer(1.into()));
            (max * BigRational::from_integer(10.into())).ceil().to_integer().to_i64().unwrap_or(10)
        }
    };
    if bound.is_negative() {
        return Err(StringyError::PreconditionFailed("bound must be nonnegative".into()));
    }
    let closed = lattice_sum(d, &omega)?;
    let series = series_counts(&closed, bound)?;
    let direct = series_oracle(d, bound)?;
    let pass = series == direct;
    let mut exps: Vec<&Exponent> = series.keys().chain(direct.keys()).collect();
    exps.sort_by(|a, b| b.cmp(a));
    exps.dedup();
    let row = |m: &BTreeMap<Exponent, u64>, e: &Exponent| m.get(e).copied().unwrap_or(0);
    let mut out = String::new();
    if opts.json {
        let rows: Vec<Value> = exps
            .iter()
            .map(|e| json!({ "exponent": exponent_text(e), "series": row(&series, e), "oracle": row(&direct, e) }))
            .collect();
        let v = json!({ "bound": bound, "result": if pass { "PASS" } else { "FAIL" }, "terms": rows });
        writeln!(out, "{}", serde_json::to_string_pretty(&v).unwrap()).unwrap();
    } else {
        writeln!(out, "bound: {bound}").unwrap();
        writeln!(out, "exponent  series  oracle").unwrap();
        for e in &exps {
            writeln!(out, "{:>8}  {:>6}  {:>6}", exponent_text(e), row(&series, e), row(&direct, e)).unwrap();
        }
        writeln!(out, "{}", if pass { "PASS" } else { "FAIL" }).unwrap();
    }
    Ok((if pass { exit::OK } else { exit::INTERNAL }, out))
}
