//! Reduction of integer ε-cycles and quiddity cycles to the base cases.
//!
//! Quiddity cycles are reduced by the cases
//!
//! * `T0`: the base cycles `(0,0)` and `(1,1,1)`,
//! * `T1`: remove an entry `1`,
//! * `T2`: `m` odd, remove a `0` (merging its neighbours) and negate,
//! * `T3`: `m` even, remove a `−1` and negate,
//! * `T4`: remove two zeros at cyclic distance at least 2,
//! * `T5`: remove two entries `−1` at cyclic distance at least 2,
//!
//! tried in this order with the smallest indices first. Each case is a short
//! list of elementary moves, which is what [`invert_trace`] replays backwards.

use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::etacore::{is_epsilon_cycle, is_quiddity, negate, Cycle};
use crate::rings::{RingDescriptor, RingElement};
use crate::transforms::{contract_minus_one, contract_one, contract_zero};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CaseTag {
    T0,
    T1,
    T2,
    T3,
    T4,
    T5,
    I0,
    I1,
    I2,
    I3,
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MoveKind {
    /// Remove an entry `1` at the position, subtracting 1 from its neighbours.
    ContractOne,
    /// Remove an entry `−1` at the position, adding 1 to its neighbours.
    ContractMinusOne,
    /// Replace `(a, 0, b)` around the position by `a + b`.
    ContractZero,
    /// Negate every entry.
    Negate,
}

/// One elementary rewrite; `at` is a 1-based position in `before`
/// (unused for [`MoveKind::Negate`]).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Move {
    pub kind: MoveKind,
    pub at: usize,
    pub before: Cycle,
    pub after: Cycle,
}

impl Move {
    fn apply(kind: MoveKind, at: usize, before: &Cycle) -> Result<Move> {
        let k = at as i64;
        let after = match kind {
            MoveKind::ContractOne => contract_one(before, k)?.cycle,
            MoveKind::ContractMinusOne => contract_minus_one(before, k)?.cycle,
            MoveKind::ContractZero => contract_zero(before, k)?.cycle,
            MoveKind::Negate => negate(before),
        };
        Ok(Move { kind, at, before: before.clone(), after })
    }
}

/// One case of a reduction theorem applied to `before`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionStep {
    pub case: CaseTag,
    /// 1-based positions in `before` that the case was applied at.
    pub indices: Vec<usize>,
    pub before: Cycle,
    pub after: Cycle,
    /// The sign `ε` of `∏η(after) = ε·I` (always `−1` for the T-cases).
    pub eps_after: i64,
    pub moves: Vec<Move>,
}

impl ReductionStep {
    pub fn is_terminal(&self) -> bool {
        matches!(self.case, CaseTag::T0 | CaseTag::I0)
    }

    fn from_moves(case: CaseTag, indices: Vec<usize>, before: &Cycle, plan: &[(MoveKind, usize)], eps_after: i64) -> Result<Self> {
        let mut moves = Vec::with_capacity(plan.len());
        let mut cur = before.clone();
        for &(kind, at) in plan {
            let mv = Move::apply(kind, at, &cur)?;
            cur = mv.after.clone();
            moves.push(mv);
        }
        if !is_epsilon_cycle(&cur, eps_after) {
            return Err(Error::Invariant(format!(
                "case {case} turned {before} into {cur}, which is not a {eps_after}-cycle"
            )));
        }
        Ok(ReductionStep { case, indices, before: before.clone(), after: cur, eps_after, moves })
    }

    fn terminal(case: CaseTag, cycle: &Cycle, eps: i64) -> Self {
        ReductionStep {
            case,
            indices: vec![],
            before: cycle.clone(),
            after: cycle.clone(),
            eps_after: eps,
            moves: vec![],
        }
    }
}

/// A sequence of steps, each starting where the previous one ended.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionTrace {
    pub start: Cycle,
    pub steps: Vec<ReductionStep>,
}

impl ReductionTrace {
    pub fn end(&self) -> &Cycle {
        self.steps.last().map_or(&self.start, |s| &s.after)
    }

    /// Re-checks the chaining of steps and the predicate of every intermediate cycle.
    pub fn certify(&self) -> Result<()> {
        let mut cur = &self.start;
        for s in &self.steps {
            if s.before != *cur {
                return Err(Error::Invariant("trace steps do not chain".into()));
            }
            let mut inner = &s.before;
            for mv in &s.moves {
                if mv.before != *inner || Move::apply(mv.kind, mv.at, inner)?.after != mv.after {
                    return Err(Error::Invariant(format!("move {:?} does not replay", mv.kind)));
                }
                inner = &mv.after;
            }
            if *inner != s.after || !is_epsilon_cycle(&s.after, s.eps_after) {
                return Err(Error::Invariant(format!("step {} does not certify", s.case)));
            }
            cur = &s.after;
        }
        Ok(())
    }
}

fn ensure_integer(cycle: &Cycle) -> Result<()> {
    if cycle.ring() == RingDescriptor::Integers {
        Ok(())
    } else {
        Err(Error::Unsupported { ring: cycle.ring(), what: "reduction is only available over ℤ" })
    }
}

fn positions_of(cycle: &Cycle, value: i64) -> Vec<usize> {
    let target = RingElement::Integer(BigInt::from(value));
    (1..=cycle.len()).filter(|&k| cycle.entries()[k - 1] == target).collect()
}

/// First pair `j < k` with cyclic distance at least 2.
fn separated_pair(pos: &[usize], m: usize) -> Option<(usize, usize)> {
    for (a, &j) in pos.iter().enumerate() {
        for &k in &pos[a + 1..] {
            if k - j >= 2 && m - (k - j) >= 2 {
                return Some((j, k));
            }
        }
    }
    None
}

/// One step of the quiddity-cycle reduction over ℤ.
pub fn reduce_step_z(cycle: &Cycle) -> Result<ReductionStep> {
    ensure_integer(cycle)?;
    if !is_quiddity(cycle) {
        return Err(Error::InvalidCycle(format!("{cycle} is not a quiddity cycle")));
    }
    let m = cycle.len();
    if m < 4 {
        return Ok(ReductionStep::terminal(CaseTag::T0, cycle, -1));
    }
    use MoveKind::*;
    if let Some(&k) = positions_of(cycle, 1).first() {
        return ReductionStep::from_moves(CaseTag::T1, vec![k], cycle, &[(ContractOne, k)], -1);
    }
    let zeros = positions_of(cycle, 0);
    let minus = positions_of(cycle, -1);
    if m % 2 == 1 {
        if let Some(&k) = zeros.first() {
            return ReductionStep::from_moves(CaseTag::T2, vec![k], cycle, &[(ContractZero, k), (Negate, 0)], -1);
        }
    } else if let Some(&k) = minus.first() {
        return ReductionStep::from_moves(CaseTag::T3, vec![k], cycle, &[(ContractMinusOne, k), (Negate, 0)], -1);
    }
    // Contracting at j < k first removes two positions before k, or one for a −1.
    if let Some((j, k)) = separated_pair(&zeros, m) {
        return ReductionStep::from_moves(CaseTag::T4, vec![j, k], cycle, &[(ContractZero, j), (ContractZero, k - 2)], -1);
    }
    if let Some((j, k)) = separated_pair(&minus, m) {
        let plan = [(ContractMinusOne, j), (ContractMinusOne, k - 1)];
        return ReductionStep::from_moves(CaseTag::T5, vec![j, k], cycle, &plan, -1);
    }
    Err(Error::Invariant(format!("no reduction case applies to {cycle}")))
}

/// One step of the ε-cycle reduction over ℤ.
pub fn reduce_step_epsilon(cycle: &Cycle, eps: i64) -> Result<ReductionStep> {
    ensure_integer(cycle)?;
    if !is_epsilon_cycle(cycle, eps) {
        return Err(Error::InvalidCycle(format!("{cycle} is not a {eps}-cycle")));
    }
    if cycle.len() == 2 {
        return Ok(ReductionStep::terminal(CaseTag::I0, cycle, eps));
    }
    use MoveKind::*;
    if let Some(&k) = positions_of(cycle, 1).first() {
        return ReductionStep::from_moves(CaseTag::I1, vec![k], cycle, &[(ContractOne, k)], eps);
    }
    if let Some(&k) = positions_of(cycle, 0).first() {
        return ReductionStep::from_moves(CaseTag::I2, vec![k], cycle, &[(ContractZero, k)], -eps);
    }
    if let Some(&k) = positions_of(cycle, -1).first() {
        return ReductionStep::from_moves(CaseTag::I3, vec![k], cycle, &[(ContractMinusOne, k)], -eps);
    }
    Err(Error::Invariant(format!("no reduction case applies to {cycle}")))
}

/// Reduces an integer quiddity cycle all the way to `(0, 0)`; the base
/// cycle `(1,1,1)` is finished off with one more `T1` step.
pub fn reduce_to_base(cycle: &Cycle) -> Result<ReductionTrace> {
    let mut steps = Vec::new();
    let mut cur = cycle.clone();
    loop {
        let step = reduce_step_z(&cur)?;
        if step.is_terminal() {
            if cur.len() == 3 {
                let s = ReductionStep::from_moves(CaseTag::T1, vec![1], &cur, &[(MoveKind::ContractOne, 1)], -1)?;
                steps.push(s);
            }
            break;
        }
        if step.after.len() >= cur.len() {
            return Err(Error::Invariant("reduction step did not shorten the cycle".into()));
        }
        cur = step.after.clone();
        steps.push(step);
    }
    Ok(ReductionTrace { start: cycle.clone(), steps })
}

/// Reduces an integer ε-cycle to `(0, 0)`.
pub fn reduce_epsilon_to_base(cycle: &Cycle, eps: i64) -> Result<ReductionTrace> {
    let mut steps = Vec::new();
    let (mut cur, mut e) = (cycle.clone(), eps);
    loop {
        let step = reduce_step_epsilon(&cur, e)?;
        if step.is_terminal() {
            break;
        }
        cur = step.after.clone();
        e = step.eps_after;
        steps.push(step);
    }
    Ok(ReductionTrace { start: cycle.clone(), steps })
}

/// A building block glued onto a labelled triangulation.
///
/// `at` is the 1-based position the first new vertex takes; the old vertex
/// with that number and everything after it move up. The block is glued along
/// the edge between the old vertices `at − 1` and `at` (cyclically).
/// Afterwards vertex `v` is renamed `v − rotate` (cyclically).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Gluing {
    /// A triangle labelled `label ∈ {1, −1}`: `(…, a, b, …) ↦ (…, a+l, l, b+l, …)`.
    Triangle { label: i64, at: usize, rotate: usize },
    /// A square `(c, −c)`: `(…, a, b, …) ↦ (…, a, c, 0, b−c, …)`.
    Square { c: BigInt, at: usize, rotate: usize },
    /// Multiply every label by −1.
    Negate,
}

fn invert_move(mv: &Move) -> Gluing {
    let m = mv.before.len();
    match mv.kind {
        MoveKind::ContractOne => Gluing::Triangle { label: 1, at: mv.at, rotate: 0 },
        MoveKind::ContractMinusOne => Gluing::Triangle { label: -1, at: mv.at, rotate: 0 },
        MoveKind::ContractZero => {
            let p = mv.at - 1;
            let (l, r) = ((p + m - 1) % m, (p + 1) % m);
            let merged = l - [p, r].iter().filter(|&&x| x < l).count();
            let at = merged + 1;
            let rotate = (at + m - (l + 1)) % m;
            let c = mv.before.entries()[l].as_integer().expect("integer cycle").clone();
            Gluing::Square { c, at, rotate }
        }
        MoveKind::Negate => Gluing::Negate,
    }
}

/// The gluing instructions that rebuild `trace.start` from the end of the
/// trace, in the order they are to be applied.
pub fn invert_trace(trace: &ReductionTrace) -> Vec<Gluing> {
    trace.steps.iter().rev().flat_map(|s| s.moves.iter().rev().map(invert_move)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(v: &[i64]) -> Cycle {
        Cycle::from_ints(v)
    }

    #[test]
    fn quiddity_steps() {
        assert_eq!(reduce_step_z(&c(&[1, 1, 1])).unwrap().case, CaseTag::T0);
        assert_eq!(reduce_step_z(&c(&[0, 0])).unwrap().case, CaseTag::T0);
        let s = reduce_step_z(&c(&[1, 4, 1, 2, 2, 2])).unwrap();
        assert_eq!((s.case, s.indices.clone(), s.after.clone()), (CaseTag::T1, vec![1], c(&[3, 1, 2, 2, 1])));
        let s = reduce_step_z(&c(&[1, 0, 1, 0, -2, 0])).unwrap();
        assert_eq!(s.case, CaseTag::T1);
        assert!(is_quiddity(&s.after));
        let s = reduce_step_z(&c(&[-2, -1, -2, -1])).unwrap();
        assert_eq!((s.case, s.indices.clone(), s.after.clone()), (CaseTag::T3, vec![2], c(&[1, 1, 1])));
        assert!(reduce_step_z(&c(&[1, 1])).is_err());
    }

    #[test]
    fn every_case_occurs() {
        // (0,2,−2,0,2,−2): m even, no ±1
        assert_eq!(reduce_step_z(&c(&[0, 2, -2, 0, 2, -2])).unwrap().case, CaseTag::T4);
        // (−1,−1,0,0,−1): m odd, no 1
        assert_eq!(reduce_step_z(&c(&[-1, -1, 0, 0, -1])).unwrap().case, CaseTag::T2);
        let s = reduce_step_z(&c(&[-1, 2, -3, -1, -1, 2, -3, -1])).unwrap();
        assert_eq!(s.case, CaseTag::T3);
        // m odd, no 1 and no 0
        let s = reduce_step_z(&c(&[-4, -2, -1, -2, 2, -1, -1])).unwrap();
        assert_eq!((s.case, s.indices.clone()), (CaseTag::T5, vec![3, 6]));
        assert_eq!(s.after.len(), 5);
    }

    #[test]
    fn traces_reach_base() {
        for v in [&[1, 4, 1, 2, 2, 2][..], &[2, 1, 2, 1], &[1, 1, -5, -1, -1, 5], &[0, -4, -5, 0, 4, 2, 0, -3, 3]] {
            let t = reduce_to_base(&c(v)).unwrap();
            assert_eq!(*t.end(), c(&[0, 0]));
            t.certify().unwrap();
            assert!(t.steps.iter().all(|s| is_quiddity(&s.after)));
        }
        assert_eq!(reduce_to_base(&c(&[1, 4, 1, 2, 2, 2])).unwrap().steps.len(), 4);
        let t = reduce_to_base(&c(&[2, 1, 2, 1])).unwrap();
        assert_eq!(t.steps[0].after, c(&[1, 1, 1]));
        assert_eq!(t.steps.len(), 2);
    }

    #[test]
    fn epsilon_steps() {
        assert_eq!(reduce_step_epsilon(&c(&[0, 0]), -1).unwrap().case, CaseTag::I0);
        let s = reduce_step_epsilon(&c(&[1, 1, 1]), -1).unwrap();
        assert_eq!((s.case, s.after.clone(), s.eps_after), (CaseTag::I1, c(&[0, 0]), -1));
        let s = reduce_step_epsilon(&c(&[-1, -1, -1]), 1).unwrap();
        assert_eq!((s.case, s.after.clone(), s.eps_after), (CaseTag::I3, c(&[0, 0]), -1));
        let t = reduce_epsilon_to_base(&c(&[0, 0, 0, 0]), 1).unwrap();
        assert_eq!(t.steps[0].case, CaseTag::I2);
        assert_eq!(*t.end(), c(&[0, 0]));
        assert!(reduce_step_epsilon(&c(&[1, 1, 1]), 1).is_err());
    }

    #[test]
    fn inverse_gluings() {
        let g = invert_trace(&reduce_to_base(&c(&[1, 1, 1])).unwrap());
        assert_eq!(g, vec![Gluing::Triangle { label: 1, at: 1, rotate: 0 }]);
        let g = invert_trace(&reduce_to_base(&c(&[2, 1, 2, 1])).unwrap());
        assert_eq!(g.len(), 2);
        assert!(g.iter().all(|x| matches!(x, Gluing::Triangle { label: 1, .. })));
        let g = invert_trace(&reduce_to_base(&c(&[-2, -1, -2, -1])).unwrap());
        assert!(g.contains(&Gluing::Negate));
        assert!(g.iter().any(|x| matches!(x, Gluing::Triangle { label: -1, .. })));
    }
}
