//! Map-definition files.
//!
//! ```json
//! {"type": "map1d", "coeffs": ["-1", "3", "-9", "0", "164"]}
//! {"type": "map2d", "P": [[0, 1, -1], [2, 0, 2]], "Q": [[1, 0, 1]]}
//! {"type": "system", "maps": [{"type": "map1d", ...}, ...]}
//! ```
//!
//! One-dimensional coefficients are exact rationals written as strings
//! (`"7/3"`, `"-48"`); plain JSON integers are accepted too. Planar
//! coefficients are numbers, except that linear entries may use the tokens
//! `"1/2"`, `"-1/2"`, `"sqrt3/2"` and `"-sqrt3/2"`.

use std::fmt;

use parrondo_lab::jet::{parse_rational, Jet1D};
use parrondo_lab::periodic::{PeriodicSystem1D, PeriodicSystem2D};
use parrondo_lab::planar::PlanarPolyMap;
use serde_json::{json, Map, Value};

/// An input problem located by JSON path (`$.maps[1].P[0][2]`) or, for
/// malformed JSON, by line and column.
#[derive(Debug, Clone, PartialEq)]
pub struct InputError {
    pub location: String,
    pub message: String,
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.location, self.message)
    }
}

impl std::error::Error for InputError {}

fn err(path: &str, message: impl Into<String>) -> InputError {
    InputError {
        location: path.to_string(),
        message: message.into(),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum MapDoc {
    Map1d(Jet1D),
    Map2d(PlanarPolyMap),
    System1d(PeriodicSystem1D),
    System2d(PeriodicSystem2D),
}

const SQRT3_2: f64 = 0.866_025_403_784_438_6;

const TOKENS: [(&str, f64); 4] = [
    ("1/2", 0.5),
    ("-1/2", -0.5),
    ("sqrt3/2", SQRT3_2),
    ("-sqrt3/2", -SQRT3_2),
];

pub fn parse_map_file(text: &str) -> Result<MapDoc, InputError> {
    let value: Value = serde_json::from_str(text).map_err(|e| InputError {
        location: format!("line {}, column {}", e.line(), e.column()),
        message: e.to_string(),
    })?;
    parse_doc(&value, "$")
}

fn kind<'a>(v: &'a Value, path: &str) -> Result<&'a str, InputError> {
    let obj = v
        .as_object()
        .ok_or_else(|| err(path, "expected an object"))?;
    obj.get("type")
        .and_then(Value::as_str)
        .ok_or_else(|| err(&format!("{path}.type"), "missing string field \"type\""))
}

fn field<'a>(v: &'a Value, name: &str, path: &str) -> Result<&'a Vec<Value>, InputError> {
    let p = format!("{path}.{name}");
    v.get(name)
        .ok_or_else(|| err(&p, "missing field"))?
        .as_array()
        .ok_or_else(|| err(&p, "expected an array"))
}

fn parse_doc(v: &Value, path: &str) -> Result<MapDoc, InputError> {
    match kind(v, path)? {
        "map1d" => parse_map1d(v, path).map(MapDoc::Map1d),
        "map2d" => parse_map2d(v, path).map(MapDoc::Map2d),
        "system" => parse_system(v, path),
        other => Err(err(
            &format!("{path}.type"),
            format!("unknown type \"{other}\" (expected map1d, map2d or system)"),
        )),
    }
}

fn parse_map1d(v: &Value, path: &str) -> Result<Jet1D, InputError> {
    let coeffs = field(v, "coeffs", path)?;
    if coeffs.is_empty() {
        return Err(err(
            &format!("{path}.coeffs"),
            "needs at least one coefficient",
        ));
    }
    let parsed = coeffs
        .iter()
        .enumerate()
        .map(|(k, c)| {
            let p = format!("{path}.coeffs[{k}]");
            let text = match c {
                Value::String(s) => s.clone(),
                Value::Number(n) if n.is_i64() || n.is_u64() => n.to_string(),
                _ => {
                    return Err(err(
                        &p,
                        "expected a rational string such as \"7/3\" or an integer",
                    ))
                }
            };
            parse_rational(&text).ok_or_else(|| err(&p, format!("\"{text}\" is not a rational")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Jet1D::from_coeffs(parsed).map_err(|e| err(path, e.to_string()))
}

fn parse_terms(v: &Value, name: &str, path: &str) -> Result<Vec<(u8, u8, f64)>, InputError> {
    field(v, name, path)?
        .iter()
        .enumerate()
        .map(|(k, t)| {
            let p = format!("{path}.{name}[{k}]");
            let t = t
                .as_array()
                .filter(|t| t.len() == 3)
                .ok_or_else(|| err(&p, "expected [i, j, c]"))?;
            let exp = |idx: usize| {
                t[idx]
                    .as_u64()
                    .filter(|&e| e <= 3)
                    .map(|e| e as u8)
                    .ok_or_else(|| err(&format!("{p}[{idx}]"), "expected an exponent in 0..=3"))
            };
            let (i, j) = (exp(0)?, exp(1)?);
            if !(1..=3).contains(&(i + j)) {
                return Err(err(&p, format!("degree {} is outside 1..=3", i + j)));
            }
            let cp = format!("{p}[2]");
            let c = match &t[2] {
                Value::Number(n) => n.as_f64().ok_or_else(|| err(&cp, "not a finite number"))?,
                Value::String(s) => {
                    let found = TOKENS.iter().find(|(tok, _)| tok == s).map(|&(_, x)| x);
                    match found {
                        Some(x) if i + j == 1 => x,
                        Some(_) => {
                            return Err(err(
                                &cp,
                                "symbolic tokens are only allowed in linear entries",
                            ))
                        }
                        None => return Err(err(
                            &cp,
                            format!(
                                "unknown token \"{s}\" (expected 1/2, -1/2, sqrt3/2 or -sqrt3/2)"
                            ),
                        )),
                    }
                }
                _ => return Err(err(&cp, "expected a number or a symbolic token")),
            };
            Ok((i, j, c))
        })
        .collect()
}

fn parse_map2d(v: &Value, path: &str) -> Result<PlanarPolyMap, InputError> {
    let p = parse_terms(v, "P", path)?;
    let q = parse_terms(v, "Q", path)?;
    PlanarPolyMap::new(&p, &q).map_err(|e| err(path, e.to_string()))
}

fn parse_system(v: &Value, path: &str) -> Result<MapDoc, InputError> {
    let maps = field(v, "maps", path)?;
    if maps.is_empty() {
        return Err(err(
            &format!("{path}.maps"),
            "a system needs at least one map",
        ));
    }
    let mut one_d = Vec::new();
    let mut two_d = Vec::new();
    for (k, m) in maps.iter().enumerate() {
        let p = format!("{path}.maps[{k}]");
        match kind(m, &p)? {
            "map1d" if two_d.is_empty() => one_d.push(parse_map1d(m, &p)?),
            "map2d" if one_d.is_empty() => two_d.push(parse_map2d(m, &p)?),
            "map1d" | "map2d" => return Err(err(&p, "a system cannot mix map1d and map2d")),
            other => {
                return Err(err(
                    &format!("{p}.type"),
                    format!("expected map1d or map2d, got \"{other}\""),
                ))
            }
        }
    }
    if !one_d.is_empty() {
        PeriodicSystem1D::padded(one_d)
            .map(MapDoc::System1d)
            .map_err(|e| err(path, e.to_string()))
    } else {
        PeriodicSystem2D::new(two_d)
            .map(MapDoc::System2d)
            .map_err(|e| err(path, e.to_string()))
    }
}

pub fn map1d_json(f: &Jet1D) -> Value {
    let coeffs: Vec<String> = f.coeffs().iter().map(ToString::to_string).collect();
    json!({"type": "map1d", "coeffs": coeffs})
}

fn coeff_json(i: u8, j: u8, c: f64) -> Value {
    if i + j == 1 {
        if let Some((tok, _)) = TOKENS.iter().find(|&&(_, x)| x.to_bits() == c.to_bits()) {
            return json!([i, j, tok]);
        }
    }
    json!([i, j, c])
}

pub fn map2d_json(f: &PlanarPolyMap) -> Value {
    let p: Vec<Value> = f.p_terms().map(|(i, j, c)| coeff_json(i, j, c)).collect();
    let q: Vec<Value> = f.q_terms().map(|(i, j, c)| coeff_json(i, j, c)).collect();
    let mut obj = Map::new();
    obj.insert("type".into(), json!("map2d"));
    obj.insert("P".into(), Value::Array(p));
    obj.insert("Q".into(), Value::Array(q));
    Value::Object(obj)
}

pub fn doc_json(doc: &MapDoc) -> Value {
    match doc {
        MapDoc::Map1d(f) => map1d_json(f),
        MapDoc::Map2d(f) => map2d_json(f),
        MapDoc::System1d(s) => {
            json!({"type": "system", "maps": s.maps().iter().map(map1d_json).collect::<Vec<_>>()})
        }
        MapDoc::System2d(s) => {
            json!({"type": "system", "maps": s.maps().iter().map(map2d_json).collect::<Vec<_>>()})
        }
    }
}

/// Pretty JSON with arrays of scalars kept on one line, so coefficient
/// lists and `[i, j, c]` terms stay readable.
pub fn to_file_string(v: &Value) -> String {
    let mut out = String::new();
    write_value(v, 0, &mut out);
    out.push('\n');
    out
}

fn write_value(v: &Value, depth: usize, out: &mut String) {
    let pad = |d: usize| "  ".repeat(d);
    match v {
        Value::Array(items) if items.iter().all(|x| !x.is_array() && !x.is_object()) => {
            let parts: Vec<String> = items.iter().map(Value::to_string).collect();
            out.push('[');
            out.push_str(&parts.join(", "));
            out.push(']');
        }
        Value::Array(items) => {
            out.push_str("[\n");
            for (k, x) in items.iter().enumerate() {
                out.push_str(&pad(depth + 1));
                write_value(x, depth + 1, out);
                out.push_str(if k + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(depth));
            out.push(']');
        }
        Value::Object(map) => {
            out.push_str("{\n");
            for (k, (key, x)) in map.iter().enumerate() {
                out.push_str(&pad(depth + 1));
                out.push_str(&Value::String(key.clone()).to_string());
                out.push_str(": ");
                write_value(x, depth + 1, out);
                out.push_str(if k + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(depth));
            out.push('}');
        }
        scalar => out.push_str(&scalar.to_string()),
    }
}
