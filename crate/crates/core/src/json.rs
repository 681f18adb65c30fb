//! JSON encodings.
//!
//! Elements: integers as numbers, `ℤ[i]` and `ℤ[ζ₆]` as `[a, b]`, rationals
//! as `"p/q"` strings (`"p"` when the denominator is 1), `ℚ(i)` as a pair of
//! such strings, and `ℤ[ζ_d]` as the list of its `φ(d)` coefficients.
//! Rings are named by their tags (`"Z"`, `"Zi"`, `"Zzeta6"`, `"Q"`, `"Qi"`,
//! `"Zzeta<d>"`).

use std::collections::BTreeMap;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde_json::{json, Map, Number, Value};

use crate::enumeration::EnumerationResult;
use crate::error::{Error, Result};
use crate::etacore::Cycle;
use crate::frieze::FriezePattern;
use crate::labelling::{Labelling, Triangulation};
use crate::rings::{cyclotomic, RingDescriptor, RingElement};

fn bad(what: impl Into<String>) -> Error {
    Error::Parse(what.into())
}

fn int_value(n: &BigInt) -> Value {
    Value::Number(Number::from_str(&n.to_string()).expect("integers are valid JSON numbers"))
}

fn int_from(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => BigInt::from_str(&n.to_string()).map_err(|_| bad(format!("{n} is not an integer"))),
        _ => Err(bad(format!("expected an integer, found {v}"))),
    }
}

fn rat_value(q: &BigRational) -> Value {
    if q.denom().is_one() {
        Value::String(q.numer().to_string())
    } else {
        Value::String(format!("{}/{}", q.numer(), q.denom()))
    }
}

fn rat_from(v: &Value) -> Result<BigRational> {
    let s = match v {
        Value::String(s) => s.clone(),
        Value::Number(n) => n.to_string(),
        _ => return Err(bad(format!("expected a rational, found {v}"))),
    };
    let parse = |t: &str| BigInt::from_str(t.trim()).map_err(|_| bad(format!("bad rational {s:?}")));
    match s.split_once('/') {
        Some((p, q)) => {
            let q = parse(q)?;
            if q == BigInt::from(0) {
                return Err(bad(format!("zero denominator in {s:?}")));
            }
            Ok(BigRational::new(parse(p)?, q))
        }
        None => Ok(BigRational::from_integer(parse(&s)?)),
    }
}

fn pair(v: &Value) -> Result<(&Value, &Value)> {
    match v.as_array().map(Vec::as_slice) {
        Some([a, b]) => Ok((a, b)),
        _ => Err(bad(format!("expected a pair, found {v}"))),
    }
}

pub fn ring_to_json(ring: RingDescriptor) -> Value {
    Value::String(ring.tag())
}

pub fn ring_from_json(v: &Value) -> Result<RingDescriptor> {
    v.as_str().ok_or_else(|| bad("the ring must be a string tag"))?.parse()
}

pub fn element_to_json(x: &RingElement) -> Value {
    match x {
        RingElement::Integer(a) => int_value(a),
        RingElement::Gaussian(a, b) | RingElement::Eisenstein(a, b) => json!([int_value(a), int_value(b)]),
        RingElement::Rational(q) => rat_value(q),
        RingElement::GaussianRational(a, b) => json!([rat_value(a), rat_value(b)]),
        RingElement::Cyclotomic(_, v) => Value::Array(v.iter().map(int_value).collect()),
    }
}

pub fn element_from_json(ring: RingDescriptor, v: &Value) -> Result<RingElement> {
    Ok(match ring {
        RingDescriptor::Integers => RingElement::Integer(int_from(v)?),
        RingDescriptor::GaussianIntegers => {
            let (a, b) = pair(v)?;
            RingElement::Gaussian(int_from(a)?, int_from(b)?)
        }
        RingDescriptor::EisensteinIntegers => {
            let (a, b) = pair(v)?;
            RingElement::Eisenstein(int_from(a)?, int_from(b)?)
        }
        RingDescriptor::Rationals => RingElement::Rational(rat_from(v)?),
        RingDescriptor::GaussianRationals => {
            let (a, b) = pair(v)?;
            RingElement::GaussianRational(rat_from(a)?, rat_from(b)?)
        }
        RingDescriptor::Cyclotomic(d) => {
            let coeffs = v.as_array().ok_or_else(|| bad(format!("expected a coefficient list, found {v}")))?;
            if coeffs.len() != cyclotomic::phi(d) {
                return Err(bad(format!("an element of Zzeta{d} has {} coefficients", cyclotomic::phi(d))));
            }
            RingElement::Cyclotomic(d, coeffs.iter().map(int_from).collect::<Result<_>>()?)
        }
    })
}

pub fn cycle_to_json(c: &Cycle) -> Value {
    json!({
        "ring": ring_to_json(c.ring()),
        "entries": c.entries().iter().map(element_to_json).collect::<Vec<_>>(),
    })
}

fn field<'a>(v: &'a Value, name: &str) -> Result<&'a Value> {
    v.get(name).ok_or_else(|| bad(format!("missing field {name:?}")))
}

pub fn cycle_from_json(v: &Value) -> Result<Cycle> {
    let ring = ring_from_json(field(v, "ring")?)?;
    let entries = field(v, "entries")?.as_array().ok_or_else(|| bad("\"entries\" must be a list"))?;
    if entries.is_empty() {
        return Err(bad("a cycle needs at least one entry"));
    }
    Cycle::new(entries.iter().map(|e| element_from_json(ring, e)).collect::<Result<_>>()?)
}

pub fn frieze_to_json(f: &FriezePattern) -> Value {
    json!({
        "cycle": cycle_to_json(f.cycle()),
        "rows": f.rows().iter().map(|r| r.iter().map(element_to_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
    })
}

/// Rows of elements of one ring.
pub fn rows_from_json(ring: RingDescriptor, v: &Value) -> Result<Vec<Vec<RingElement>>> {
    let rows = v.as_array().ok_or_else(|| bad("rows must be a list of lists"))?;
    rows.iter()
        .map(|r| {
            let r = r.as_array().ok_or_else(|| bad("each row must be a list"))?;
            r.iter().map(|x| element_from_json(ring, x)).collect()
        })
        .collect()
}

pub fn labelling_to_json(lab: &Labelling) -> Value {
    let labels: Map<String, Value> =
        lab.labels().iter().map(|(t, l)| (format!("{},{},{}", t[0], t[1], t[2]), json!(l))).collect();
    json!({
        "m": lab.m(),
        "diagonals": lab.triangulation().diagonals().iter().map(|&(i, j)| json!([i, j])).collect::<Vec<_>>(),
        "labels": labels,
    })
}

pub fn labelling_from_json(v: &Value) -> Result<Labelling> {
    let m = field(v, "m")?.as_u64().ok_or_else(|| bad("\"m\" must be a non-negative integer"))? as usize;
    let diagonals = field(v, "diagonals")?
        .as_array()
        .ok_or_else(|| bad("\"diagonals\" must be a list"))?
        .iter()
        .map(|d| {
            let (a, b) = pair(d)?;
            let get = |x: &Value| x.as_u64().map(|x| x as usize).ok_or_else(|| bad("vertices are positive integers"));
            Ok((get(a)?, get(b)?))
        })
        .collect::<Result<Vec<_>>>()?;
    let t = Triangulation::new(m, diagonals)?;
    let mut labels = BTreeMap::new();
    for (k, l) in field(v, "labels")?.as_object().ok_or_else(|| bad("\"labels\" must be an object"))? {
        let verts: Vec<usize> = k
            .split(',')
            .map(|s| s.trim().parse().map_err(|_| bad(format!("bad triangle key {k:?}"))))
            .collect::<Result<_>>()?;
        let mut tri: [usize; 3] = verts.try_into().map_err(|_| bad(format!("bad triangle key {k:?}")))?;
        tri.sort_unstable();
        let l = l.as_i64().ok_or_else(|| bad(format!("label of {k:?} must be an integer")))?;
        labels.insert(tri, l);
    }
    Labelling::new(t, labels)
}

pub fn enumeration_to_json(r: &EnumerationResult) -> Value {
    json!({
        "ring": ring_to_json(r.ring),
        "n": r.n,
        "total": r.total,
        "orbit_count": r.orbit_count,
        "representatives": r.representatives.iter().map(cycle_to_json).collect::<Vec<_>>(),
        "orbit_sizes": r.orbit_sizes,
    })
}

pub fn enumeration_from_json(v: &Value) -> Result<EnumerationResult> {
    let usize_of = |name: &str| -> Result<usize> {
        field(v, name)?.as_u64().map(|x| x as usize).ok_or_else(|| bad(format!("{name:?} must be a count")))
    };
    let reps = field(v, "representatives")?.as_array().ok_or_else(|| bad("\"representatives\" must be a list"))?;
    let sizes = field(v, "orbit_sizes")?.as_array().ok_or_else(|| bad("\"orbit_sizes\" must be a list"))?;
    Ok(EnumerationResult {
        ring: ring_from_json(field(v, "ring")?)?,
        n: field(v, "n")?.as_i64().ok_or_else(|| bad("\"n\" must be an integer"))?,
        total: usize_of("total")?,
        orbit_count: usize_of("orbit_count")?,
        representatives: reps.iter().map(cycle_from_json).collect::<Result<_>>()?,
        orbit_sizes: sizes
            .iter()
            .map(|s| s.as_u64().map(|x| x as usize).ok_or_else(|| bad("orbit sizes are counts")))
            .collect::<Result<_>>()?,
    })
}
