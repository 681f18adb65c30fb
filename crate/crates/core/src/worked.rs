//! Checked-in friezes whose arrays are recomputed from their quiddity cycles
//! and compared entry by entry.

use serde_json::Value;

use crate::error::{Error, Result};
use crate::etacore::Cycle;
use crate::frieze::frieze_from_cycle;
use crate::json::{cycle_from_json, rows_from_json};
use crate::rings::RingElement;

const SOURCES: &[(&str, &str)] = &[
    ("hexagon", include_str!("../fixtures/hexagon.json")),
    ("gaussian", include_str!("../fixtures/gaussian.json")),
    ("labelling-1", include_str!("../fixtures/labelling-1.json")),
    ("labelling-2", include_str!("../fixtures/labelling-2.json")),
    ("all-zero", include_str!("../fixtures/all-zero.json")),
    ("reduction-1", include_str!("../fixtures/reduction-1.json")),
    ("reduction-2", include_str!("../fixtures/reduction-2.json")),
    ("reduction-3", include_str!("../fixtures/reduction-3.json")),
    ("reduction-4", include_str!("../fixtures/reduction-4.json")),
    ("a2-1-2", include_str!("../fixtures/a2-1-2.json")),
    ("a2-3-5", include_str!("../fixtures/a2-3-5.json")),
];

/// A displayed frieze: its cycle and its rows `c_{i,i}, …, c_{i,i+m}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fixture {
    pub name: String,
    pub description: String,
    pub cycle: Cycle,
    pub rows: Vec<Vec<RingElement>>,
}

/// One entry where the recomputed frieze differs from the fixture.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub row: usize,
    pub column: usize,
    pub expected: String,
    pub found: String,
}

pub fn fixture_from_json(v: &Value) -> Result<Fixture> {
    let text = |k: &str| {
        v.get(k).and_then(Value::as_str).map(str::to_owned).ok_or_else(|| Error::Parse(format!("missing {k:?}")))
    };
    let cycle = cycle_from_json(v.get("cycle").ok_or_else(|| Error::Parse("missing \"cycle\"".into()))?)?;
    let rows = rows_from_json(cycle.ring(), v.get("rows").ok_or_else(|| Error::Parse("missing \"rows\"".into()))?)?;
    Ok(Fixture { name: text("name")?, description: text("description")?, cycle, rows })
}

/// All bundled fixtures, in a fixed order.
pub fn fixtures() -> Vec<Fixture> {
    SOURCES
        .iter()
        .map(|(name, src)| {
            let v: Value = serde_json::from_str(src).unwrap_or_else(|e| panic!("fixture {name}: {e}"));
            fixture_from_json(&v).unwrap_or_else(|e| panic!("fixture {name}: {e}"))
        })
        .collect()
}

/// Recomputes the frieze of the fixture's cycle and lists every difference.
pub fn check(f: &Fixture) -> Result<Vec<Mismatch>> {
    let pattern = frieze_from_cycle(&f.cycle)?;
    let computed = pattern.rows();
    let mut out = Vec::new();
    if computed.len() != f.rows.len() {
        return Err(Error::Invariant(format!(
            "fixture {} has {} rows, the period is {}",
            f.name,
            f.rows.len(),
            computed.len()
        )));
    }
    for (r, (want, got)) in f.rows.iter().zip(computed).enumerate() {
        let width = want.len().max(got.len());
        for c in 0..width {
            let (w, g) = (want.get(c), got.get(c));
            if w != g {
                let show = |x: Option<&RingElement>| x.map_or("∅".to_string(), ToString::to_string);
                out.push(Mismatch { row: r + 1, column: c, expected: show(w), found: show(g) });
            }
        }
    }
    Ok(out)
}
