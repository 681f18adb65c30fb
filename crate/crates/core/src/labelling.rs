//! Triangulations of polygons with integer labels on their triangles.
//!
//! Vertices are numbered `1..=m` counterclockwise. A labelling is admissible
//! when the triangles whose label is not `±1` pair up into neighbouring
//! triangles with opposite labels ("squares") and the number of negative
//! labels plus half the number of zero labels is even. Summing the labels
//! around each vertex turns an admissible labelling into an integer quiddity
//! cycle, and every integer quiddity cycle arises this way.
//!
//! The gluing blocks used to build a labelling from a cycle, drawn on the
//! edge `(L, R)` of the current polygon:
//!
//! ```text
//!   triangle labelled l          square labelled (c, -c)
//!
//!          n                        n1 ---- n2
//!         / \                       |  c  /  |
//!        / l \                      |   /    |
//!       L --- R                     | /  -c  |
//!                                   L ------ R
//!
//!   (a, b) -> (a+l, l, b+l)        (a, b) -> (a, c, 0, b-c)
//! ```

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::etacore::{is_quiddity, Cycle};
use crate::reduction::{invert_trace, reduce_to_base, Gluing};
use crate::rings::RingDescriptor;

/// A triangle given by its vertices in increasing order.
pub type Triangle = [usize; 3];

fn tri(a: usize, b: usize, c: usize) -> Triangle {
    let mut t = [a, b, c];
    t.sort_unstable();
    t
}

/// A triangulation of the convex `m`-gon by `m − 3` non-crossing diagonals.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Triangulation {
    m: usize,
    diagonals: BTreeSet<(usize, usize)>,
    triangles: Vec<Triangle>,
}

fn crosses(a: (usize, usize), b: (usize, usize)) -> bool {
    let (i, j) = a;
    let (k, l) = b;
    (i < k && k < j && j < l) || (k < i && i < l && l < j)
}

impl Triangulation {
    /// Validates the diagonal set; pairs may be given in either order.
    pub fn new(m: usize, diagonals: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidInput("a polygon needs at least two vertices".into()));
        }
        let mut set = BTreeSet::new();
        for (a, b) in diagonals {
            let d = (a.min(b), a.max(b));
            if d.0 < 1 || d.1 > m || d.1 - d.0 < 2 || (d.0 == 1 && d.1 == m) {
                return Err(Error::InvalidInput(format!("({a},{b}) is not a diagonal of the {m}-gon")));
            }
            set.insert(d);
        }
        let expected = m.saturating_sub(3);
        if set.len() != expected {
            return Err(Error::InvalidInput(format!(
                "a triangulation of the {m}-gon has {expected} diagonals, got {}",
                set.len()
            )));
        }
        let list: Vec<_> = set.iter().copied().collect();
        for (x, &a) in list.iter().enumerate() {
            if let Some(&b) = list[x + 1..].iter().find(|&&b| crosses(a, b)) {
                return Err(Error::InvalidInput(format!("diagonals {a:?} and {b:?} cross")));
            }
        }
        let mut t = Triangulation { m, diagonals: set, triangles: vec![] };
        t.triangles = t.compute_triangles();
        Ok(t)
    }

    fn compute_triangles(&self) -> Vec<Triangle> {
        let m = self.m;
        if m < 3 {
            return vec![];
        }
        let mut out = Vec::new();
        for a in 1..=m {
            for b in a + 1..=m {
                if !self.is_side(a, b) {
                    continue;
                }
                for c in b + 1..=m {
                    if self.is_side(b, c) && self.is_side(a, c) {
                        out.push([a, b, c]);
                    }
                }
            }
        }
        out
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn diagonals(&self) -> &BTreeSet<(usize, usize)> {
        &self.diagonals
    }

    pub fn triangles(&self) -> &[Triangle] {
        &self.triangles
    }

    /// Whether `{a, b}` is a side of the polygon.
    pub fn is_edge(&self, a: usize, b: usize) -> bool {
        let (a, b) = (a.min(b), a.max(b));
        b - a == 1 || (a == 1 && b == self.m && self.m > 2)
    }

    /// Whether `{a, b}` is a side or a diagonal.
    fn is_side(&self, a: usize, b: usize) -> bool {
        self.is_edge(a, b) || self.diagonals.contains(&(a.min(b), a.max(b)))
    }

    /// Vertices lying in exactly one triangle.
    pub fn ears(&self) -> Vec<usize> {
        if self.m < 4 {
            return vec![];
        }
        (1..=self.m).filter(|&v| self.triangles.iter().filter(|t| t.contains(&v)).count() == 1).collect()
    }
}

fn enumerate_rec(verts: &[usize], diags: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>, rest: &mut Vec<Vec<usize>>) {
    if verts.len() < 3 {
        match rest.pop() {
            Some(next) => {
                enumerate_rec(&next, diags, out, rest);
                rest.push(next);
            }
            None => out.push(diags.clone()),
        }
        return;
    }
    let (first, last) = (verts[0], verts[verts.len() - 1]);
    for k in 1..verts.len() - 1 {
        let apex = verts[k];
        let mut added = 0;
        for (a, b) in [(first, apex), (apex, last)] {
            if b - a >= 2 && verts.len() > 3 && !(a == verts[0] && b == last) {
                let is_boundary = (a == verts[0] && k == 1) || (b == last && k == verts.len() - 2);
                if !is_boundary {
                    diags.push((a, b));
                    added += 1;
                }
            }
        }
        rest.push(verts[k..].to_vec());
        enumerate_rec(&verts[..=k], diags, out, rest);
        rest.pop();
        for _ in 0..added {
            diags.pop();
        }
    }
}

/// All triangulations of the `m`-gon, in a fixed order; there are
/// `Catalan(m − 2)` of them.
pub fn enumerate_triangulations(m: usize) -> Vec<Triangulation> {
    if m < 2 {
        return vec![];
    }
    let verts: Vec<usize> = (1..=m).collect();
    let mut out = Vec::new();
    enumerate_rec(&verts, &mut vec![], &mut out, &mut vec![]);
    out.into_iter()
        .map(|d| Triangulation::new(m, d).expect("enumeration yields triangulations"))
        .collect()
}

/// The Conway–Coxeter quiddity: number of triangles at each vertex.
pub fn cc_quiddity(t: &Triangulation) -> Cycle {
    let counts: Vec<i64> =
        (1..=t.m).map(|v| t.triangles.iter().filter(|tr| tr.contains(&v)).count() as i64).collect();
    Cycle::from_ints(&counts)
}

/// A triangulation with an integer label on every triangle.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Labelling {
    triangulation: Triangulation,
    labels: BTreeMap<Triangle, i64>,
}

impl Labelling {
    pub fn new(triangulation: Triangulation, labels: BTreeMap<Triangle, i64>) -> Result<Self> {
        let keys: BTreeSet<Triangle> = labels.keys().copied().collect();
        let tris: BTreeSet<Triangle> = triangulation.triangles.iter().copied().collect();
        if keys != tris {
            return Err(Error::InvalidInput("labels must be given for exactly the triangles".into()));
        }
        Ok(Labelling { triangulation, labels })
    }

    /// Labels the triangles in the order of [`Triangulation::triangles`].
    pub fn from_list(triangulation: Triangulation, labels: &[i64]) -> Result<Self> {
        if labels.len() != triangulation.triangles.len() {
            return Err(Error::InvalidInput("one label per triangle is required".into()));
        }
        let map = triangulation.triangles.iter().copied().zip(labels.iter().copied()).collect();
        Labelling::new(triangulation, map)
    }

    /// The labelled 2-gon: no triangles.
    pub fn digon() -> Self {
        Labelling { triangulation: Triangulation::new(2, []).unwrap(), labels: BTreeMap::new() }
    }

    pub fn triangulation(&self) -> &Triangulation {
        &self.triangulation
    }

    pub fn labels(&self) -> &BTreeMap<Triangle, i64> {
        &self.labels
    }

    pub fn m(&self) -> usize {
        self.triangulation.m
    }

    fn neighbours(a: &Triangle, b: &Triangle) -> bool {
        a.iter().filter(|v| b.contains(v)).count() == 2
    }

    /// A pairing of the triangles with labels outside `{1, −1}` into
    /// neighbouring pairs with opposite labels, if one exists.
    pub fn squares(&self) -> Option<Vec<(Triangle, Triangle)>> {
        let mut open: Vec<Triangle> =
            self.labels.iter().filter(|(_, &l)| l != 1 && l != -1).map(|(t, _)| *t).collect();
        let partner = |a: &Triangle, b: &Triangle| Self::neighbours(a, b) && self.labels[a] == -self.labels[b];
        let mut pairs = Vec::new();
        // The dual graph is a tree, so matching a leaf to its only neighbour is always safe.
        while !open.is_empty() {
            let degrees: Vec<usize> =
                open.iter().map(|a| open.iter().filter(|b| partner(a, b)).count()).collect();
            let leaf = degrees.iter().position(|&d| d <= 1)?;
            if degrees[leaf] == 0 {
                return None;
            }
            let a = open.remove(leaf);
            let pos = open.iter().position(|b| partner(&a, b))?;
            let b = open.remove(pos);
            pairs.push((a, b));
        }
        Some(pairs)
    }

    /// `(−1)^d` with `d = #negative labels + #zero labels / 2`, when `d` is an integer.
    pub fn sign(&self) -> Option<i64> {
        let neg = self.labels.values().filter(|&&l| l < 0).count();
        let zeros = self.labels.values().filter(|&&l| l == 0).count();
        (zeros % 2 == 0).then(|| if (neg + zeros / 2) % 2 == 0 { 1 } else { -1 })
    }

    /// The sum of the labels around each vertex (no admissibility check).
    pub fn vertex_sums(&self) -> Cycle {
        let mut sums = vec![0i64; self.m()];
        for (t, &l) in &self.labels {
            for &v in t {
                sums[v - 1] += l;
            }
        }
        Cycle::from_ints(&sums)
    }

    fn negated(&self) -> Self {
        let labels = self.labels.iter().map(|(t, &l)| (*t, -l)).collect();
        Labelling { triangulation: self.triangulation.clone(), labels }
    }

    /// Renames vertex `v` to `v − s` (cyclically).
    fn rotated(&self, s: usize) -> Self {
        let m = self.m();
        if s % m == 0 {
            return self.clone();
        }
        let f = |v: usize| (v + m - 1 - s % m) % m + 1;
        let diagonals: Vec<_> = self.triangulation.diagonals.iter().map(|&(a, b)| (f(a), f(b))).collect();
        let t = Triangulation::new(m, diagonals).expect("rotation preserves triangulations");
        let labels = self.labels.iter().map(|(tr, &l)| (tri(f(tr[0]), f(tr[1]), f(tr[2])), l)).collect();
        Labelling { triangulation: t, labels }
    }

    /// Deletes vertices together with the triangles at them and renumbers
    /// the remaining vertices densely in counterclockwise order.
    fn without_vertices(&self, removed: &BTreeSet<usize>) -> Result<Self> {
        let m = self.m();
        let mut map = vec![0; m + 1];
        let mut next = 0;
        for v in 1..=m {
            if !removed.contains(&v) {
                next += 1;
                map[v] = next;
            }
        }
        let m2 = next;
        let keep = |t: &Triangle| t.iter().all(|v| !removed.contains(v));
        let labels: BTreeMap<Triangle, i64> = self
            .labels
            .iter()
            .filter(|(t, _)| keep(t))
            .map(|(t, &l)| (tri(map[t[0]], map[t[1]], map[t[2]]), l))
            .collect();
        let diagonals: Vec<(usize, usize)> = self
            .triangulation
            .diagonals
            .iter()
            .filter(|(a, b)| !removed.contains(a) && !removed.contains(b))
            .map(|&(a, b)| (map[a], map[b]))
            .filter(|&(a, b)| b - a >= 2 && !(a == 1 && b == m2))
            .collect();
        Labelling::new(Triangulation::new(m2, diagonals)?, labels)
    }

    /// Applies one gluing instruction.
    pub fn glue(&self, g: &Gluing) -> Result<Self> {
        let (block, at, rotate): (Vec<i64>, usize, usize) = match g {
            Gluing::Negate => return Ok(self.negated()),
            Gluing::Triangle { label, at, rotate } => (vec![*label], *at, *rotate),
            Gluing::Square { c, at, rotate } => (vec![c.to_i64().ok_or(Error::Overflow)?], *at, *rotate),
        };
        let m = self.m();
        if at < 1 || at > m + 1 {
            return Err(Error::InvalidInput(format!("gluing position {at} outside 1..={}", m + 1)));
        }
        let k = if matches!(g, Gluing::Square { .. }) { 2 } else { 1 };
        let shift = |v: usize| if v >= at { v + k } else { v };
        let left = shift(if at == 1 { m } else { at - 1 });
        let right = shift(if at == m + 1 { 1 } else { at });
        let mut diagonals: Vec<(usize, usize)> =
            self.triangulation.diagonals.iter().map(|&(a, b)| (shift(a), shift(b))).collect();
        let mut labels: BTreeMap<Triangle, i64> =
            self.labels.iter().map(|(t, &l)| (tri(shift(t[0]), shift(t[1]), shift(t[2])), l)).collect();
        if m >= 3 {
            diagonals.push((left, right));
        }
        if k == 1 {
            labels.insert(tri(left, at, right), block[0]);
        } else {
            let (n1, n2, c) = (at, at + 1, block[0]);
            labels.insert(tri(left, n1, n2), c);
            labels.insert(tri(left, n2, right), -c);
            diagonals.push((left, n2));
        }
        let glued = Labelling::new(Triangulation::new(m + k, diagonals)?, labels)?;
        Ok(glued.rotated(rotate))
    }
}

impl fmt::Display for Labelling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-gon", self.m())?;
        for (t, l) in &self.labels {
            write!(f, " {{{},{},{}}}:{l}", t[0], t[1], t[2])?;
        }
        Ok(())
    }
}

/// Whether the labelling is admissible.
pub fn is_admissible(lab: &Labelling) -> bool {
    lab.squares().is_some() && lab.sign() == Some(1)
}

/// The quiddity cycle of an admissible labelling: the label sums at the vertices.
pub fn cycle_from_labelling(lab: &Labelling) -> Result<Cycle> {
    if !is_admissible(lab) {
        return Err(Error::InvalidInput(format!("labelling {lab} is not admissible")));
    }
    let c = lab.vertex_sums();
    if !is_quiddity(&c) {
        return Err(Error::Invariant(format!("admissible labelling gave {c}, not a quiddity cycle")));
    }
    Ok(c)
}

/// An admissible labelling whose vertex sums are exactly `cycle`, obtained by
/// replaying a reduction of `cycle` backwards from the 2-gon.
pub fn labelling_from_cycle(cycle: &Cycle) -> Result<Labelling> {
    if cycle.ring() != RingDescriptor::Integers {
        return Err(Error::Unsupported { ring: cycle.ring(), what: "labellings exist only over ℤ" });
    }
    let trace = reduce_to_base(cycle)?;
    let targets: Vec<&Cycle> = trace.steps.iter().rev().flat_map(|s| s.moves.iter().rev().map(|m| &m.before)).collect();
    let mut lab = Labelling::digon();
    for (g, target) in invert_trace(&trace).iter().zip(targets) {
        lab = lab.glue(g)?;
        if lab.vertex_sums() != *target {
            return Err(Error::Invariant(format!("gluing {g:?} gave {} instead of {target}", lab.vertex_sums())));
        }
    }
    if !is_admissible(&lab) || lab.vertex_sums() != *cycle {
        return Err(Error::Invariant(format!("reconstructed labelling {lab} does not yield {cycle}")));
    }
    Ok(lab)
}

/// Witness structure in a Conway–Coxeter quiddity cycle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Finding {
    /// Two disjoint windows `(c_p, c_{p+1}) ∈ {(1,2), (2,1)}` starting at the given positions.
    TwoPairs(usize, usize),
    /// A window `(1, 3, 1)` starting at the given position.
    OneThreeOne(usize),
}

/// Finds two disjoint `(1,2)`/`(2,1)` windows, or else a `(1,3,1)` window,
/// in the quiddity cycle of a triangulation of an `m`-gon, `m > 3`.
pub fn find_12_or_131(q: &Cycle) -> Result<Finding> {
    let m = q.len();
    if m <= 3 {
        return Err(Error::NotApplicable("needs a cycle of length > 3".into()));
    }
    let v = q.to_i64s().ok_or_else(|| Error::InvalidInput("needs a small integer cycle".into()))?;
    let at = |k: usize| v[(k - 1) % m];
    let pairs: Vec<usize> =
        (1..=m).filter(|&p| matches!((at(p), at(p + 1)), (1, 2) | (2, 1))).collect();
    for (x, &p) in pairs.iter().enumerate() {
        for &r in &pairs[x + 1..] {
            let used = [p, p % m + 1];
            if !used.contains(&r) && !used.contains(&(r % m + 1)) {
                return Ok(Finding::TwoPairs(p, r));
            }
        }
    }
    if let Some(p) = (1..=m).find(|&p| (at(p), at(p + 1), at(p + 2)) == (1, 3, 1)) {
        return Ok(Finding::OneThreeOne(p));
    }
    Err(Error::Invariant(format!("{q} has neither two (1,2)/(2,1) windows nor a (1,3,1) window")))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TcCase {
    TC0,
    TC1,
    TC2,
    TC3,
    TC4,
    TC5,
}

impl fmt::Display for TcCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// One step of the combinatorial reduction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabellingStep {
    pub case: TcCase,
    /// Removed vertices, numbered as in the input.
    pub removed: Vec<usize>,
    pub after: Labelling,
}

/// Ears `k` whose triangle `(k−1, k, k+1)` carries `label`.
fn ears_labelled(lab: &Labelling, label: i64) -> Vec<usize> {
    let m = lab.m();
    lab.triangulation
        .ears()
        .into_iter()
        .filter(|&k| {
            let t = tri((k + m - 2) % m + 1, k, k % m + 1);
            lab.labels.get(&t) == Some(&label)
        })
        .collect()
}

/// Positions `k` such that the diagonal `(k−1, k+2)` cuts off the
/// quadrilateral `(k−1, k, k+1, k+2)` and its two triangles have opposite labels.
fn ear_squares(lab: &Labelling) -> Vec<usize> {
    let m = lab.m();
    if m < 5 {
        return vec![];
    }
    let v = |x: usize| (x + 2 * m - 1) % m + 1;
    (1..=m)
        .filter(|&k| {
            let (a, b, c, d) = (v(k - 1 + m), k, v(k + 1), v(k + 2));
            if !lab.triangulation.is_side(a, d) {
                return false;
            }
            let inside: Vec<i64> = lab
                .labels
                .iter()
                .filter(|(t, _)| t.iter().all(|x| [a, b, c, d].contains(x)))
                .map(|(_, &l)| l)
                .collect();
            inside.len() == 2 && inside[0] == -inside[1]
        })
        .collect()
}

/// Applies the first applicable case of `TC0 … TC5`.
pub fn reduce_labelling_step(lab: &Labelling) -> Result<LabellingStep> {
    if !is_admissible(lab) {
        return Err(Error::InvalidInput(format!("labelling {lab} is not admissible")));
    }
    let m = lab.m();
    if m < 4 {
        return Ok(LabellingStep { case: TcCase::TC0, removed: vec![], after: lab.clone() });
    }
    let wrap = |x: usize| (x - 1) % m + 1;
    let finish = |case: TcCase, removed: Vec<usize>, negate: bool| -> Result<LabellingStep> {
        let set: BTreeSet<usize> = removed.iter().copied().collect();
        let mut after = lab.without_vertices(&set)?;
        if negate {
            after = after.negated();
        }
        if !is_admissible(&after) {
            return Err(Error::Invariant(format!("case {case} produced an inadmissible labelling")));
        }
        Ok(LabellingStep { case, removed, after })
    };
    if let Some(&k) = ears_labelled(lab, 1).first() {
        return finish(TcCase::TC1, vec![k], false);
    }
    let squares = ear_squares(lab);
    let minus = ears_labelled(lab, -1);
    if m % 2 == 1 {
        if let Some(&k) = squares.first() {
            return finish(TcCase::TC2, vec![k, wrap(k + 1)], true);
        }
    } else if let Some(&k) = minus.first() {
        return finish(TcCase::TC3, vec![k], true);
    }
    for (x, &j) in squares.iter().enumerate() {
        for &k in &squares[x + 1..] {
            let removed: BTreeSet<usize> = [j, wrap(j + 1), k, wrap(k + 1)].into();
            if removed.len() == 4 {
                return finish(TcCase::TC4, removed.into_iter().collect(), false);
            }
        }
    }
    if minus.len() >= 2 {
        return finish(TcCase::TC5, vec![minus[0], minus[1]], false);
    }
    Err(Error::Invariant(format!("no combinatorial reduction applies to {lab}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fan(m: usize) -> Triangulation {
        Triangulation::new(m, (3..m).map(|j| (1, j))).unwrap()
    }

    #[test]
    fn triangulation_counts() {
        let catalan = [1, 1, 2, 5, 14, 42, 132, 429];
        for m in 2..=9 {
            let all = enumerate_triangulations(m);
            assert_eq!(all.len(), catalan[m - 2], "m={m}");
            let distinct: BTreeSet<_> = all.iter().map(|t| t.diagonals.clone()).collect();
            assert_eq!(distinct.len(), all.len());
            assert!(all.iter().all(|t| t.triangles.len() == m.saturating_sub(2)));
        }
    }

    #[test]
    fn triangulation_validation() {
        assert!(Triangulation::new(4, [(1, 3), (2, 4)]).is_err());
        assert!(Triangulation::new(5, [(1, 3), (2, 4)]).is_err());
        assert!(Triangulation::new(4, [(1, 2)]).is_err());
        assert_eq!(fan(5).triangles(), &[[1, 2, 3], [1, 3, 4], [1, 4, 5]]);
    }

    #[test]
    fn conway_coxeter() {
        assert_eq!(cc_quiddity(&fan(4)), Cycle::from_ints(&[2, 1, 2, 1]));
        assert_eq!(cc_quiddity(&fan(5)), Cycle::from_ints(&[3, 1, 2, 2, 1]));
        assert_eq!(cc_quiddity(&Triangulation::new(2, []).unwrap()), Cycle::from_ints(&[0, 0]));
        for m in 3..=9 {
            for t in enumerate_triangulations(m) {
                let q = cc_quiddity(&t);
                assert!(is_quiddity(&q));
                assert!(q.to_i64s().unwrap().iter().all(|&x| x > 0));
            }
        }
    }

    #[test]
    fn admissibility() {
        let sq = |a, b| Labelling::from_list(fan(4), &[a, b]).unwrap();
        assert!(is_admissible(&sq(1, 1)));
        assert!(!is_admissible(&sq(3, -3)));
        assert!(is_admissible(&sq(-1, -1)));
        let p = |l: &[i64]| Labelling::from_list(fan(5), l).unwrap();
        assert!(is_admissible(&p(&[1, 1, 1])));
        assert!(!is_admissible(&p(&[-1, -1, -1])));
        assert!(!is_admissible(&p(&[5, 1, 1])));
        assert!(is_admissible(&p(&[5, -5, -1])));
        assert!(!is_admissible(&p(&[5, -1, -5])));
        assert!(!is_admissible(&p(&[0, 0, 1])));
        assert!(is_admissible(&p(&[0, 0, -1])));
    }

    #[test]
    fn labelling_to_cycle() {
        let sq = |a, b| Labelling::from_list(fan(4), &[a, b]).unwrap();
        assert_eq!(cycle_from_labelling(&sq(1, 1)).unwrap(), Cycle::from_ints(&[2, 1, 2, 1]));
        assert_eq!(cycle_from_labelling(&sq(-1, -1)).unwrap(), Cycle::from_ints(&[-2, -1, -2, -1]));
        assert!(cycle_from_labelling(&sq(2, -2)).is_err());
        // sign −1 labellings give +I
        let s = sq(2, -2).vertex_sums();
        assert!(crate::etacore::full_product(&s).is_scalar(1));
    }

    #[test]
    fn cycle_to_labelling_round_trip() {
        for v in [
            &[0, 0][..],
            &[1, 1, 1],
            &[2, 1, 2, 1],
            &[-2, -1, -2, -1],
            &[1, 1, -5, -1, -1, 5],
            &[1, 0, 1, 0, -2, 0],
            &[0, 2, -2, 0, 2, -2],
            &[-1, -1, 0, 0, -1],
            &[0, -4, -5, 0, 4, 2, 0, -3, 3],
            &[-1, 2, -3, -1, -1, 2, -3, -1],
            &[-4, -2, -1, -2, 2, -1, -1],
        ] {
            let c = Cycle::from_ints(v);
            let lab = labelling_from_cycle(&c).unwrap();
            assert!(is_admissible(&lab), "{lab}");
            assert_eq!(cycle_from_labelling(&lab).unwrap(), c);
        }
        assert_eq!(labelling_from_cycle(&Cycle::from_ints(&[0, 0])).unwrap(), Labelling::digon());
        let one = labelling_from_cycle(&Cycle::from_ints(&[1, 1, 1])).unwrap();
        assert_eq!(one.labels().values().copied().collect::<Vec<_>>(), vec![1]);
    }

    #[test]
    fn witnesses() {
        assert_eq!(find_12_or_131(&Cycle::from_ints(&[2, 1, 2, 1])).unwrap(), Finding::TwoPairs(1, 3));
        assert!(matches!(find_12_or_131(&Cycle::from_ints(&[3, 1, 2, 2, 1])).unwrap(), Finding::TwoPairs(..)));
        // zig-zag on the hexagon: diagonals (1,3),(1,4),(4,6) -> (3,1,2,3,1,2), no (1,3,1)
        // octagon with triangles around a central vertex give (1,3,1)
        let t = Triangulation::new(6, [(2, 6), (2, 4), (4, 6)]).unwrap();
        assert_eq!(cc_quiddity(&t), Cycle::from_ints(&[1, 3, 1, 3, 1, 3]));
        assert_eq!(find_12_or_131(&cc_quiddity(&t)).unwrap(), Finding::OneThreeOne(1));
        assert!(find_12_or_131(&Cycle::from_ints(&[1, 1, 1])).is_err());
        for m in 4..=9 {
            for t in enumerate_triangulations(m) {
                find_12_or_131(&cc_quiddity(&t)).unwrap();
            }
        }
    }

    #[test]
    fn combinatorial_steps() {
        let one = Labelling::from_list(Triangulation::new(3, []).unwrap(), &[1]).unwrap();
        assert_eq!(reduce_labelling_step(&one).unwrap().case, TcCase::TC0);
        let sq = |a, b| Labelling::from_list(fan(4), &[a, b]).unwrap();
        let s = reduce_labelling_step(&sq(1, 1)).unwrap();
        assert_eq!((s.case, s.after.clone()), (TcCase::TC1, one.clone()));
        let s = reduce_labelling_step(&sq(-1, -1)).unwrap();
        assert_eq!((s.case, s.after), (TcCase::TC3, one));
        let p = Labelling::from_list(fan(5), &[3, -3, -1]).unwrap();
        let s = reduce_labelling_step(&p).unwrap();
        assert_eq!(s.case, TcCase::TC2);
        assert_eq!(s.after.m(), 3);
    }
}
