//! Tame frieze patterns generated from quiddity cycles, and verification of
//! finite frieze windows.
//!
//! Row `i` of a pattern with period `m` holds `c_{i,i}, c_{i,i+1}, …, c_{i,i+m}`:
//!
//! ```text
//! 0  1  c_{i,i+2}  …  c_{i,i+m-2}  1  0
//! ```
//!
//! The entries `c_{i,j}` with `i + 2 ≤ j ≤ i + m − 2` are the interior
//! entries; the first of them, `c_{i,i+2}`, is the quiddity entry `c_i`.
//! In the staircase picture row `i + 1` starts one column to the right of row `i`.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::etacore::{is_quiddity, Cycle, Mat2};
use crate::rings::{RingDescriptor, RingElement};

/// One fundamental period (`m` rows) of the tame frieze of a quiddity cycle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FriezePattern {
    cycle: Cycle,
    rows: Vec<Vec<RingElement>>,
}

impl FriezePattern {
    pub fn cycle(&self) -> &Cycle {
        &self.cycle
    }

    pub fn ring(&self) -> RingDescriptor {
        self.cycle.ring()
    }

    /// The period `m`.
    pub fn period(&self) -> usize {
        self.cycle.len()
    }

    /// The height `n = m − 3` (so `−1` for the 2-periodic pattern).
    pub fn height(&self) -> i64 {
        self.period() as i64 - 3
    }

    /// Rows `1..=m`, row `i` being `c_{i,i}, …, c_{i,i+m}`.
    pub fn rows(&self) -> &[Vec<RingElement>] {
        &self.rows
    }

    /// `c_{i,j}` for any `i` and `i ≤ j ≤ i + m`, using `c_{i,j} = c_{i+m,j+m}`.
    pub fn entry(&self, i: i64, j: i64) -> Option<&RingElement> {
        let m = self.period() as i64;
        let d = j - i;
        if !(0..=m).contains(&d) {
            return None;
        }
        Some(&self.rows[(i - 1).rem_euclid(m) as usize][d as usize])
    }

    /// All interior entries `c_{i,j}`, `i` in `1..=m`, `i + 2 ≤ j ≤ i + m − 2`.
    pub fn interior(&self) -> impl Iterator<Item = ((i64, i64), &RingElement)> {
        let m = self.period();
        self.rows.iter().enumerate().flat_map(move |(r, row)| {
            let i = r as i64 + 1;
            (2..=m.saturating_sub(2)).map(move |d| ((i, i + d as i64), &row[d]))
        })
    }

    /// A staircase window of `rows` consecutive rows starting at row 1.
    pub fn window(&self, rows: usize) -> FriezeWindow {
        let m = self.period();
        let width = rows + m;
        let cells = (0..rows)
            .map(|r| {
                let mut line = vec![None; width];
                for (d, x) in self.rows[r % m].iter().enumerate() {
                    line[r + d] = Some(x.clone());
                }
                line
            })
            .collect();
        FriezeWindow { cells }
    }
}

impl fmt::Display for FriezePattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.window(self.period()))
    }
}

/// Builds the frieze of a quiddity cycle via `c_{i,j+2} = (M_{i,j})₁₁`.
///
/// The trailing `1, 0` of each row are computed from the matrix products and
/// checked against the required border, so a wrong input can never yield a
/// pattern with a silently forced border.
pub fn frieze_from_cycle(cycle: &Cycle) -> Result<FriezePattern> {
    let m = cycle.len();
    if m < 2 || !is_quiddity(cycle) {
        return Err(Error::InvalidCycle(format!("{cycle} is not a quiddity cycle")));
    }
    let ring = cycle.ring();
    let mut rows = Vec::with_capacity(m);
    for i in 1..=m as i64 {
        let mut row = vec![RingElement::zero(ring), RingElement::one(ring)];
        let mut p = Mat2::identity(ring);
        for k in i..=i + m as i64 - 2 {
            p = p.mul_eta(cycle.get(k));
            row.push(p.a11.clone());
        }
        if !row[m - 1].is_one() || !row[m].is_zero() {
            return Err(Error::Invariant(format!("border of row {i} is not 1, 0")));
        }
        rows.push(row);
    }
    Ok(FriezePattern { cycle: cycle.clone(), rows })
}

/// Interior positions `(i, j)` (one period) holding a zero.
pub fn zero_positions(f: &FriezePattern) -> BTreeSet<(i64, i64)> {
    f.interior().filter(|(_, x)| x.is_zero()).map(|(p, _)| p).collect()
}

/// Whether every interior entry is nonzero.
pub fn is_nonzero(f: &FriezePattern) -> bool {
    f.interior().all(|(_, x)| !x.is_zero())
}

/// A finite rectangular array; `None` marks a blank cell outside the pattern.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FriezeWindow {
    cells: Vec<Vec<Option<RingElement>>>,
}

impl FriezeWindow {
    pub fn new(cells: Vec<Vec<Option<RingElement>>>) -> Result<Self> {
        let width = cells.first().map_or(0, Vec::len);
        if cells.iter().any(|r| r.len() != width) {
            return Err(Error::InvalidInput("frieze window is not rectangular".into()));
        }
        let mut rings = cells.iter().flatten().flatten().map(RingElement::ring);
        if let Some(first) = rings.next() {
            if let Some(other) = rings.find(|r| *r != first) {
                return Err(Error::RingMismatch(first, other));
            }
        }
        Ok(FriezeWindow { cells })
    }

    /// Rows placed in staircase form: row `r` starts at column `r`.
    pub fn from_staircase(rows: Vec<Vec<RingElement>>) -> Result<Self> {
        let width = rows.iter().enumerate().map(|(r, row)| r + row.len()).max().unwrap_or(0);
        let cells = rows
            .into_iter()
            .enumerate()
            .map(|(r, row)| {
                let mut line = vec![None; width];
                for (d, x) in row.into_iter().enumerate() {
                    line[r + d] = Some(x);
                }
                line
            })
            .collect();
        FriezeWindow::new(cells)
    }

    pub fn cells(&self) -> &[Vec<Option<RingElement>>] {
        &self.cells
    }

    fn block(&self, r: usize, c: usize, size: usize) -> Option<Vec<Vec<&RingElement>>> {
        (r..r + size)
            .map(|i| (c..c + size).map(|j| self.cells[i][j].as_ref()).collect::<Option<Vec<_>>>())
            .collect()
    }
}

impl fmt::Display for FriezeWindow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let texts: Vec<Vec<String>> = self
            .cells
            .iter()
            .map(|row| row.iter().map(|x| x.as_ref().map_or(String::new(), |x| x.to_string())).collect())
            .collect();
        let width = texts.iter().flatten().map(|s| s.chars().count()).max().unwrap_or(1);
        for row in &texts {
            let line: Vec<String> = row.iter().map(|s| format!("{s:>width$}")).collect();
            writeln!(f, "{}", line.join(" ").trim_end())?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum FailureKind {
    /// An adjacent 2×2 block with determinant different from 1.
    Sl2,
    /// An adjacent 3×3 block with nonzero determinant.
    Tame,
}

/// Result of [`verify`]; failures are top-left positions `(row, column)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub sl2_ok: bool,
    pub tame_ok: bool,
    pub failures: Vec<(FailureKind, usize, usize)>,
}

fn det3(b: &[Vec<&RingElement>]) -> RingElement {
    let minor = |x: &RingElement, y: &RingElement, z: &RingElement, w: &RingElement| &(x * w) - &(y * z);
    let t0 = b[0][0] * &minor(b[1][1], b[1][2], b[2][1], b[2][2]);
    let t1 = b[0][1] * &minor(b[1][0], b[1][2], b[2][0], b[2][2]);
    let t2 = b[0][2] * &minor(b[1][0], b[1][1], b[2][0], b[2][1]);
    &(&t0 - &t1) + &t2
}

/// Checks every complete adjacent 2×2 block for determinant 1 and every
/// complete adjacent 3×3 block for determinant 0.
pub fn verify(window: &FriezeWindow) -> VerifyReport {
    let rows = window.cells.len();
    let cols = window.cells.first().map_or(0, Vec::len);
    let mut failures = Vec::new();
    for r in 0..rows.saturating_sub(1) {
        for c in 0..cols.saturating_sub(1) {
            if let Some(b) = window.block(r, c, 2) {
                let det = &(b[0][0] * b[1][1]) - &(b[0][1] * b[1][0]);
                if !det.is_one() {
                    failures.push((FailureKind::Sl2, r, c));
                }
            }
        }
    }
    for r in 0..rows.saturating_sub(2) {
        for c in 0..cols.saturating_sub(2) {
            if let Some(b) = window.block(r, c, 3) {
                if !det3(&b).is_zero() {
                    failures.push((FailureKind::Tame, r, c));
                }
            }
        }
    }
    VerifyReport {
        sl2_ok: failures.iter().all(|f| f.0 != FailureKind::Sl2),
        tame_ok: failures.iter().all(|f| f.0 != FailureKind::Tame),
        failures,
    }
}
