//! Frieze entries attached to the diagonals of the `m`-gon.
//!
//! The diagonal `(i, j)`, `i < j`, carries the entry `c_{i+1,j+1}`; the sides
//! of the polygon carry the border value `1`. A cluster is a triangulation,
//! read as the set of its diagonals.

use std::collections::BTreeMap;
use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;

use crate::error::{Error, Result};
use crate::etacore::Cycle;
use crate::frieze::{frieze_from_cycle, FriezePattern};
use crate::labelling::{enumerate_triangulations, Triangulation};
use crate::rings::RingElement;

/// A triangulation together with the frieze entries on its diagonals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cluster {
    pub triangulation: Triangulation,
    pub labels: BTreeMap<(usize, usize), RingElement>,
}

impl Cluster {
    fn from_frieze(f: &FriezePattern, triangulation: Triangulation) -> Self {
        let labels =
            triangulation.diagonals().iter().map(|&(i, j)| ((i, j), side_label(f, i, j))).collect();
        Cluster { triangulation, labels }
    }

    pub fn is_zero_free(&self) -> bool {
        self.labels.values().all(|x| !x.is_zero())
    }
}

impl fmt::Display for Cluster {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.labels.iter().map(|((i, j), x)| format!("({i},{j})→{x}")).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// The label of a side or diagonal `{a, b}`.
fn side_label(f: &FriezePattern, a: usize, b: usize) -> RingElement {
    let (a, b) = (a.min(b) as i64, a.max(b) as i64);
    f.entry(a + 1, b + 1).expect("vertex pairs lie inside one period").clone()
}

/// The frieze entry on the diagonal `(i, j)` of the `m`-gon.
pub fn diagonal_label(f: &FriezePattern, i: usize, j: usize) -> Result<RingElement> {
    let m = f.period();
    let (a, b) = (i.min(j), i.max(j));
    if a < 1 || b > m || b - a < 2 || (a == 1 && b == m) {
        return Err(Error::InvalidInput(format!("({i},{j}) is not a diagonal of the {m}-gon")));
    }
    Ok(side_label(f, a, b))
}

/// All crossing pairs `((i,k),(j,l))` with `i < j < k < l`.
fn crossing_quadruples(m: usize) -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    for i in 1..=m {
        for j in i + 1..=m {
            for k in j + 1..=m {
                for l in k + 1..=m {
                    out.push([i, j, k, l]);
                }
            }
        }
    }
    out
}

fn ptolemy_holds(f: &FriezePattern, [i, j, k, l]: [usize; 4]) -> bool {
    let lab = |a, b| side_label(f, a, b);
    lab(i, k) * lab(j, l) == &(lab(i, j) * lab(k, l)) + &(lab(i, l) * lab(j, k))
}

/// Checks the Ptolemy relation on every crossing pair of diagonals, or on
/// `sample` pairs drawn with a fixed seed.
pub fn check_ptolemy(f: &FriezePattern, sample: Option<usize>) -> bool {
    let mut quads = crossing_quadruples(f.period());
    if let Some(s) = sample {
        let mut rng = rand::rngs::StdRng::seed_from_u64(0x51_7e);
        quads.shuffle(&mut rng);
        quads.truncate(s);
    }
    quads.into_iter().all(|q| ptolemy_holds(f, q))
}

/// Whether every neighbouring pair satisfies `c_i c_{i+1} = 1` or
/// `c_i = c_{i+1} = 0`, for a cycle of odd length.
///
/// A quiddity cycle with this property is the all-ones cycle of a length
/// `≡ 3 (mod 6)`; that conclusion is checked whenever the hypothesis holds.
pub fn is_degenerate_alternating(cycle: &Cycle) -> Result<bool> {
    let m = cycle.len();
    if m % 2 == 0 {
        return Err(Error::NotApplicable("needs a cycle of odd length".into()));
    }
    let holds = (1..=m as i64).all(|k| {
        let (a, b) = (cycle.get(k), cycle.get(k + 1));
        (a * b).is_one() || (a.is_zero() && b.is_zero())
    });
    if holds && crate::etacore::is_quiddity(cycle) && (m % 6 != 3 || !cycle.entries().iter().all(RingElement::is_one)) {
        return Err(Error::Invariant(format!("{cycle} is degenerate but not the all-ones cycle of length 3 mod 6")));
    }
    Ok(holds)
}

/// `1, 0, −1` for `j − i` congruent to `{1, 2}`, `{0, 3}`, `{4, 5}` mod 6:
/// the entries of the all-ones frieze.
pub fn all_ones_entry(i: i64, j: i64) -> i64 {
    match (j - i).rem_euclid(6) {
        1 | 2 => 1,
        0 | 3 => 0,
        _ => -1,
    }
}

/// The explicit zero-free cluster of the all-ones frieze of period `m = 6ℓ + 3`.
pub fn all_ones_cluster(m: usize) -> Result<Cluster> {
    if m % 6 != 3 {
        return Err(Error::InvalidInput(format!("{m} is not 3 mod 6")));
    }
    let l = (m - 3) / 6;
    let mut diagonals = Vec::new();
    if l > 0 {
        diagonals.push((1, 3));
        for k in 2..=2 * l {
            diagonals.push((1, 3 * k - 1));
            diagonals.push((1, 3 * k));
        }
        for k in 1..=2 * l {
            diagonals.push((3 * k, 3 * k + 2));
        }
        diagonals.push((1, 6 * l + 2));
    }
    let t = Triangulation::new(m, diagonals)?;
    let f = frieze_from_cycle(&Cycle::from_ints(&vec![1; m]))?;
    let cluster = Cluster::from_frieze(&f, t);
    for (&(i, j), x) in &cluster.labels {
        if x != &RingElement::int(all_ones_entry(i as i64 + 1, j as i64 + 1)) || x.is_zero() {
            return Err(Error::Invariant(format!("diagonal ({i},{j}) of the all-ones cluster has label {x}")));
        }
    }
    Ok(cluster)
}

/// The first triangulation (in enumeration order) whose diagonals all carry
/// nonzero entries, or `None` if every cluster meets a zero.
pub fn find_zero_free_cluster(cycle: &Cycle) -> Result<Option<Cluster>> {
    let m = cycle.len();
    if m < 4 {
        return Err(Error::NotApplicable("clusters need a polygon with at least four vertices".into()));
    }
    let f = frieze_from_cycle(cycle)?;
    Ok(enumerate_triangulations(m).into_iter().map(|t| Cluster::from_frieze(&f, t)).find(Cluster::is_zero_free))
}
