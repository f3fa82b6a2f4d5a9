//! JSON descriptors for fields, curves, points, and code handles.
//!
//! Field: `{"p": 5, "m": 1}` or `{"p": 2, "m": 4, "poly": [1,1,0,0,1]}`
//! Curve: `{"kind": "type1", "f": [c0,c1,c2,c3]}` or `{"kind": "type3", "a": "1", "b": "1"}`
//! Point: `"(x,y)"`, `"O"`, or `"S'"` (the type-3 branch place)
//! Handle: `{"field": .., "curve": .., "D": [points], "k": ..,
//! "twist": {"ell": .., "eta": ".."} | {"t": [..], "h": [..], "eta": [..]},
//! "v": [..]}`
//!
//! Field elements in JSON are strings in any accepted text form, or plain
//! integers.

use crate::CliError;
use serde_json::Value;
use tecc::curve::{Curve, CurveKind, EvalSet, Point};
use tecc::gf::{Field, Fq};
use tecc::rrspace::{MultiTwist, SingleTwist};
use tecc::teccbuild::{CodeHandle, TwistKind};

fn bad(msg: impl Into<String>) -> CliError {
    CliError::Validation(msg.into())
}

pub fn parse_json(text: &str) -> Result<Value, CliError> {
    serde_json::from_str(text).map_err(|e| bad(format!("invalid JSON: {}", e)))
}

fn get<'v>(v: &'v Value, key: &str) -> Result<&'v Value, CliError> {
    v.get(key).ok_or_else(|| bad(format!("missing field \"{}\"", key)))
}

fn as_u64(v: &Value, what: &str) -> Result<u64, CliError> {
    v.as_u64().ok_or_else(|| bad(format!("{} must be a non-negative integer", what)))
}

pub fn parse_elem(field: &Field, v: &Value) -> Result<Fq, CliError> {
    match v {
        Value::Number(n) => {
            let i = n
                .as_i64()
                .ok_or_else(|| bad("element out of integer range"))?;
            Ok(field.from_int(i))
        }
        Value::String(s) => field.parse_elem(s).map_err(|e| bad(e.to_string())),
        _ => Err(bad("element must be an integer or a string")),
    }
}

pub fn parse_field(v: &Value) -> Result<Field, CliError> {
    let p = as_u64(get(v, "p")?, "p")?;
    let m = as_u64(get(v, "m")?, "m")? as u32;
    let poly: Option<Vec<u64>> = match v.get("poly") {
        None | Some(Value::Null) => None,
        Some(Value::Array(a)) => Some(
            a.iter()
                .map(|c| as_u64(c, "poly coefficient"))
                .collect::<Result<_, _>>()?,
        ),
        Some(_) => return Err(bad("poly must be an array of coefficients")),
    };
    Field::new(p, m, poly.as_deref()).map_err(|e| bad(e.to_string()))
}

pub fn field_to_json(field: &Field) -> Value {
    serde_json::json!({
        "p": field.characteristic(),
        "m": field.extension_degree(),
        "poly": field.defining_poly(),
    })
}

pub fn parse_curve(field: &Field, v: &Value) -> Result<Curve, CliError> {
    let kind = get(v, "kind")?
        .as_str()
        .ok_or_else(|| bad("kind must be a string"))?;
    match kind {
        "type1" | "type2" => {
            let f_arr = get(v, "f")?
                .as_array()
                .ok_or_else(|| bad("f must be an array of 4 coefficients"))?;
            let coeffs: Vec<Fq> = f_arr
                .iter()
                .map(|c| parse_elem(field, c))
                .collect::<Result<_, _>>()?;
            let f_poly = tecc::gf::Poly::new(field, coeffs);
            let eq = if kind == "type1" {
                tecc::curve::CurveEq::Type1 { f: f_poly }
            } else {
                tecc::curve::CurveEq::Type2 { f: f_poly }
            };
            Curve::new(field, eq).map_err(|e| bad(e.to_string()))
        }
        "type3" => {
            let a = parse_elem(field, get(v, "a")?)?;
            let b = parse_elem(field, get(v, "b")?)?;
            Curve::type3(field, a, b).map_err(|e| bad(e.to_string()))
        }
        other => Err(bad(format!("unknown curve kind \"{}\"", other))),
    }
}

pub fn curve_to_json(curve: &Curve) -> Value {
    let f = curve.field();
    match curve.kind() {
        CurveKind::Type1 | CurveKind::Type2 => {
            let cubic = curve.cubic().unwrap();
            let coeffs: Vec<String> = (0..4)
                .map(|i| f.format_elem(cubic.coeff(i)))
                .collect();
            serde_json::json!({
                "kind": if curve.kind() == CurveKind::Type1 { "type1" } else { "type2" },
                "f": coeffs,
            })
        }
        CurveKind::Type3 => {
            let (a, b) = curve.ab().unwrap();
            serde_json::json!({
                "kind": "type3",
                "a": f.format_elem(a),
                "b": f.format_elem(b),
            })
        }
    }
}

pub fn parse_point(curve: &Curve, s: &str) -> Result<Point, CliError> {
    let t = s.trim();
    if t == "O" {
        return Ok(Point::Infinity);
    }
    if t == "S'" || t == "S" {
        return Ok(Point::Branch);
    }
    let inner = t
        .strip_prefix('(')
        .and_then(|x| x.strip_suffix(')'))
        .ok_or_else(|| bad(format!("cannot parse point \"{}\"", s)))?;
    let comma = inner
        .find(',')
        .ok_or_else(|| bad(format!("cannot parse point \"{}\"", s)))?;
    let f = curve.field();
    let x = f
        .parse_elem(&inner[..comma])
        .map_err(|e| bad(e.to_string()))?;
    let y = f
        .parse_elem(&inner[comma + 1..])
        .map_err(|e| bad(e.to_string()))?;
    let p = Point::Affine(x, y);
    if !curve.contains(&p) {
        return Err(bad(format!("point {} is not on the curve", s)));
    }
    Ok(p)
}

pub fn point_text(curve: &Curve, p: &Point) -> String {
    let f = curve.field();
    match p {
        Point::Infinity => "O".to_string(),
        Point::Branch => "S'".to_string(),
        Point::Affine(x, y) => format!("({},{})", f.format_elem(*x), f.format_elem(*y)),
    }
}

/// Full handle descriptor. When "D" is omitted, "n" selects a canonical
/// evaluation set.
pub fn parse_handle(v: &Value) -> Result<CodeHandle, CliError> {
    let field = parse_field(get(v, "field")?)?;
    let curve = parse_curve(&field, get(v, "curve")?)?;
    let d = match v.get("D") {
        Some(Value::Array(arr)) => {
            let pts: Vec<Point> = arr
                .iter()
                .map(|pv| {
                    pv.as_str()
                        .ok_or_else(|| bad("points must be strings"))
                        .and_then(|s| parse_point(&curve, s))
                })
                .collect::<Result<_, _>>()?;
            EvalSet::from_points(&curve, &pts).map_err(|e| bad(e.to_string()))?
        }
        None | Some(Value::Null) => {
            let n = as_u64(get(v, "n")?, "n")? as usize;
            curve.select_eval_set(n).map_err(|e| bad(e.to_string()))?
        }
        Some(_) => return Err(bad("D must be an array of point strings")),
    };
    let k = as_u64(get(v, "k")?, "k")? as usize;
    let twist = match v.get("twist") {
        None | Some(Value::Null) => None,
        Some(tv) => Some(parse_twist(&field, tv)?),
    };
    let vscale = match v.get("v") {
        None | Some(Value::Null) => None,
        Some(Value::Array(arr)) => Some(
            arr.iter()
                .map(|e| parse_elem(&field, e))
                .collect::<Result<Vec<_>, _>>()?,
        ),
        Some(_) => return Err(bad("v must be an array of elements")),
    };
    CodeHandle::new(curve, d, k, twist, vscale).map_err(|e| bad(e.to_string()))
}

fn parse_twist(field: &Field, v: &Value) -> Result<TwistKind, CliError> {
    if let Some(ell) = v.get("ell") {
        let ell = as_u64(ell, "ell")? as usize;
        let eta = parse_elem(field, get(v, "eta")?)?;
        return Ok(TwistKind::Single(SingleTwist { ell, eta }));
    }
    let t: Vec<usize> = get(v, "t")?
        .as_array()
        .ok_or_else(|| bad("t must be an array"))?
        .iter()
        .map(|x| as_u64(x, "t entry").map(|n| n as usize))
        .collect::<Result<_, _>>()?;
    let h: Vec<usize> = get(v, "h")?
        .as_array()
        .ok_or_else(|| bad("h must be an array"))?
        .iter()
        .map(|x| as_u64(x, "h entry").map(|n| n as usize))
        .collect::<Result<_, _>>()?;
    let eta: Vec<Fq> = get(v, "eta")?
        .as_array()
        .ok_or_else(|| bad("eta must be an array"))?
        .iter()
        .map(|x| parse_elem(field, x))
        .collect::<Result<_, _>>()?;
    Ok(TwistKind::Multi(MultiTwist { t, h, eta }))
}

pub fn handle_to_json(handle: &CodeHandle) -> Value {
    let curve = handle.curve();
    let f = handle.field();
    let pts: Vec<String> = handle
        .points()
        .points()
        .iter()
        .map(|p| point_text(curve, p))
        .collect();
    let twist = match handle.twist() {
        None => Value::Null,
        Some(TwistKind::Single(tw)) => serde_json::json!({
            "ell": tw.ell,
            "eta": f.format_elem(tw.eta),
        }),
        Some(TwistKind::Multi(tw)) => serde_json::json!({
            "t": tw.t,
            "h": tw.h,
            "eta": tw.eta.iter().map(|&e| f.format_elem(e)).collect::<Vec<_>>(),
        }),
    };
    let v = handle
        .v()
        .map(|v| Value::Array(v.iter().map(|&x| Value::String(f.format_elem(x))).collect()))
        .unwrap_or(Value::Null);
    serde_json::json!({
        "field": field_to_json(f),
        "curve": curve_to_json(curve),
        "D": pts,
        "k": handle.k(),
        "twist": twist,
        "v": v,
    })
}
