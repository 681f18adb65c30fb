//! Exhaustive enumeration of quiddity cycles with non-zero friezes over the
//! discrete rings `ℤ`, `ℤ[i]` and `ℤ[ζ₆]`, dihedral canonical forms, and the
//! infinite families built from divisors of `2`.
//!
//! The search fixes `c_1, …, c_{m−3}` depth first over the candidate entries,
//! keeping every product `M_{i,k}` of the prefix so that each new entry can be
//! rejected as soon as it creates a zero in the frieze. The remaining three
//! entries are then forced: writing `P = M_{1,m−3}`, the condition
//! `P·η(x)η(y)η(z) = −I` reads
//!
//! ```text
//!   η(x)η(y)η(z) = ( (xy−1)z − x   −(xy−1) )  =  ( −p₂₂   p₁₂ )
//!                  (   yz − 1        −y    )     (  p₂₁  −p₁₁ )
//! ```
//!
//! so `y = p₁₁`, `x = (1 − p₁₂)/y` and `z = (1 + p₂₁)/y`.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::bounds::{candidate_entries, BoundContext};
use crate::error::{Error, Result};
use crate::etacore::{is_quiddity, reverse, rotate, Cycle};
use crate::frieze::{frieze_from_cycle, is_nonzero};
use crate::rings::{divisors_of_two, RingDescriptor, RingElement};

/// Multiplication rule of a discrete ring on coordinate pairs `(a, b)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Lattice {
    /// `a` (with `b = 0`).
    Z,
    /// `a + b·i`.
    Gauss,
    /// `a + b·ζ₆` with `ζ₆² = ζ₆ − 1`.
    Eisenstein,
}

type Q = (i64, i64);

impl Lattice {
    fn of(ring: RingDescriptor) -> Result<Self> {
        match ring {
            RingDescriptor::Integers => Ok(Lattice::Z),
            RingDescriptor::GaussianIntegers => Ok(Lattice::Gauss),
            RingDescriptor::EisensteinIntegers => Ok(Lattice::Eisenstein),
            _ => Err(Error::Unsupported { ring, what: "enumeration needs a discrete ring" }),
        }
    }

    fn ring(self) -> RingDescriptor {
        match self {
            Lattice::Z => RingDescriptor::Integers,
            Lattice::Gauss => RingDescriptor::GaussianIntegers,
            Lattice::Eisenstein => RingDescriptor::EisensteinIntegers,
        }
    }

    fn from_element(self, x: &RingElement) -> Result<Q> {
        let conv = |v: &num_bigint::BigInt| num_traits::ToPrimitive::to_i64(v).ok_or(Error::Overflow);
        match x {
            RingElement::Integer(a) => Ok((conv(a)?, 0)),
            RingElement::Gaussian(a, b) | RingElement::Eisenstein(a, b) => Ok((conv(a)?, conv(b)?)),
            _ => Err(Error::RingMismatch(self.ring(), x.ring())),
        }
    }

    fn to_element(self, (a, b): Q) -> RingElement {
        match self {
            Lattice::Z => RingElement::int(a),
            Lattice::Gauss => RingElement::gaussian(a, b),
            Lattice::Eisenstein => RingElement::eisenstein(a, b),
        }
    }

    #[inline]
    fn mul(self, (a, b): Q, (c, d): Q) -> Q {
        match self {
            Lattice::Z => (a * c, 0),
            Lattice::Gauss => (a * c - b * d, a * d + b * c),
            Lattice::Eisenstein => (a * c - b * d, a * d + b * c + b * d),
        }
    }

    #[inline]
    fn conj(self, (a, b): Q) -> Q {
        match self {
            Lattice::Z => (a, 0),
            Lattice::Gauss => (a, -b),
            Lattice::Eisenstein => (a + b, -b),
        }
    }

    #[inline]
    fn norm(self, (a, b): Q) -> i64 {
        match self {
            Lattice::Z => a * a,
            Lattice::Gauss => a * a + b * b,
            Lattice::Eisenstein => a * a + a * b + b * b,
        }
    }

    /// `(norm, 2·real part, imaginary key)`, ordered like [`RingElement::compare`].
    #[inline]
    fn key(self, x: Q) -> (i64, i64, i64) {
        match self {
            Lattice::Eisenstein => (self.norm(x), 2 * x.0 + x.1, x.1),
            _ => (self.norm(x), 2 * x.0, x.1),
        }
    }

    /// `num / den` when it lies in the lattice.
    #[inline]
    fn div(self, num: Q, den: Q) -> Option<Q> {
        let n = self.norm(den);
        let (a, b) = self.mul(num, self.conj(den));
        (a % n == 0 && b % n == 0).then(|| (a / n, b / n))
    }
}

#[inline]
fn sub(x: Q, y: Q) -> Q {
    (x.0 - y.0, x.1 - y.1)
}

#[inline]
fn add(x: Q, y: Q) -> Q {
    (x.0 + y.0, x.1 + y.1)
}

#[inline]
fn is_zero(x: Q) -> bool {
    x == (0, 0)
}

/// A 2×2 matrix `[a11, a12, a21, a22]`.
type M = [Q; 4];

const IDENTITY: M = [(1, 0), (0, 0), (0, 0), (1, 0)];

/// `p · η(c)` with `η(c) = (c, −1; 1, 0)`.
#[inline]
fn mul_eta(l: Lattice, p: &M, c: Q) -> M {
    [add(l.mul(p[0], c), p[1]), (-p[0].0, -p[0].1), add(l.mul(p[2], c), p[3]), (-p[2].0, -p[2].1)]
}

struct Search<'a> {
    lattice: Lattice,
    m: usize,
    bound: i64,
    candidates: &'a [Q],
}

impl Search<'_> {
    /// Extends `prefix`, whose suffix products `M_{i,len}` are `tails`.
    fn extend(&self, prefix: &mut Vec<Q>, tails: &mut Vec<M>, out: &mut Vec<Vec<Q>>) {
        let l = self.lattice;
        if prefix.len() == self.m - 3 {
            self.finish(prefix, &tails[0], out);
            return;
        }
        let depth = tails.len();
        'cand: for &c in self.candidates {
            let mut next = Vec::with_capacity(depth + 1);
            for t in tails.iter() {
                let p = mul_eta(l, t, c);
                if is_zero(p[0]) {
                    continue 'cand;
                }
                next.push(p);
            }
            next.push(mul_eta(l, &IDENTITY, c));
            let saved = std::mem::replace(tails, next);
            prefix.push(c);
            self.extend(prefix, tails, out);
            prefix.pop();
            *tails = saved;
        }
    }

    fn finish(&self, prefix: &[Q], p: &M, out: &mut Vec<Vec<Q>>) {
        let l = self.lattice;
        let y = p[0];
        if is_zero(y) {
            return;
        }
        let (Some(x), Some(z)) = (l.div(sub((1, 0), p[1]), y), l.div(add(p[2], (1, 0)), y)) else {
            return;
        };
        let ok = |v: Q| !is_zero(v) && l.norm(v) <= self.bound;
        if !(ok(x) && ok(y) && ok(z)) {
            return;
        }
        let mut cycle = prefix.to_vec();
        cycle.extend([x, y, z]);
        if self.is_quiddity_nonzero(&cycle) {
            out.push(cycle);
        }
    }

    /// The product is `−I` and every interior frieze entry is nonzero.
    fn is_quiddity_nonzero(&self, c: &[Q]) -> bool {
        let (l, m) = (self.lattice, self.m);
        for i in 0..m {
            let mut p = IDENTITY;
            for k in 0..m - 3 {
                p = mul_eta(l, &p, c[(i + k) % m]);
                if is_zero(p[0]) {
                    return false;
                }
            }
        }
        let p = c.iter().fold(IDENTITY, |p, &x| mul_eta(l, &p, x));
        p == [(-1, 0), (0, 0), (0, 0), (-1, 0)]
    }
}

fn cmp_cycles(l: Lattice, a: &[Q], b: &[Q]) -> Ordering {
    a.iter().map(|&x| l.key(x)).cmp(b.iter().map(|&x| l.key(x)))
}

/// The minimal dihedral image and the number of distinct images.
fn canonical_fast(l: Lattice, c: &[Q]) -> (Vec<Q>, usize) {
    let m = c.len();
    let rev: Vec<Q> = c.iter().rev().copied().collect();
    let mut images: Vec<Vec<Q>> = (0..m)
        .flat_map(|s| [c, &rev[..]].map(|base| (0..m).map(|k| base[(s + k) % m]).collect::<Vec<_>>()))
        .collect();
    images.sort_by(|a, b| cmp_cycles(l, a, b));
    images.dedup();
    let size = images.len();
    (images.swap_remove(0), size)
}

fn search(ring: RingDescriptor, n: i64, jobs: usize) -> Result<(Lattice, Vec<Vec<Q>>)> {
    let lattice = Lattice::of(ring)?;
    if n < 1 {
        return Err(Error::InvalidInput("the height must be at least 1".into()));
    }
    let candidates: Vec<Q> =
        candidate_entries(ring, n)?.iter().map(|x| lattice.from_element(x)).collect::<Result<_>>()?;
    let bound = BoundContext::unit(n)?.b_squared().to_integer();
    let bound = num_traits::ToPrimitive::to_i64(&bound).ok_or(Error::Overflow)?;
    let m = n as usize + 3;
    let s = Search { lattice, m, bound, candidates: &candidates };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::InvalidInput(format!("cannot start worker pool: {e}")))?;
    let mut cycles: Vec<Vec<Q>> = pool.install(|| {
        candidates
            .par_iter()
            .flat_map_iter(|&c| {
                let mut out = Vec::new();
                let mut tails = vec![mul_eta(lattice, &IDENTITY, c)];
                s.extend(&mut vec![c], &mut tails, &mut out);
                out
            })
            .collect()
    });
    cycles.sort_by(|a, b| cmp_cycles(lattice, a, b));
    Ok((lattice, cycles))
}

/// All quiddity cycles of length `n + 3` over a discrete ring whose frieze
/// has no zero entry, sorted; `jobs` worker threads share the search.
pub fn enumerate_nonzero_with(ring: RingDescriptor, n: i64, jobs: usize) -> Result<Vec<Cycle>> {
    let (l, cycles) = search(ring, n, jobs)?;
    cycles.into_iter().map(|c| Cycle::new(c.into_iter().map(|x| l.to_element(x)).collect())).collect()
}

/// [`enumerate_nonzero_with`] on all available threads.
pub fn enumerate_nonzero(ring: RingDescriptor, n: i64) -> Result<Vec<Cycle>> {
    enumerate_nonzero_with(ring, n, rayon::current_num_threads())
}

/// The unpruned scan over every sequence of candidate entries, checked with
/// the generic arithmetic; only usable for tiny heights.
pub fn enumerate_naive(ring: RingDescriptor, n: i64) -> Result<Vec<Cycle>> {
    let cand = candidate_entries(ring, n)?;
    let m = n as usize + 3;
    let mut idx = vec![0usize; m];
    let mut out = Vec::new();
    loop {
        let c = Cycle::new(idx.iter().map(|&k| cand[k].clone()).collect())?;
        if is_quiddity(&c) && is_nonzero(&frieze_from_cycle(&c)?) {
            out.push(c);
        }
        let mut p = m;
        loop {
            if p == 0 {
                return Ok(out);
            }
            p -= 1;
            idx[p] += 1;
            if idx[p] < cand.len() {
                break;
            }
            idx[p] = 0;
        }
    }
}

/// The lexicographically smallest rotation or reflected rotation.
pub fn canonical_form(cycle: &Cycle) -> Result<Cycle> {
    let m = cycle.len() as i64;
    let mut best = cycle.clone();
    for base in [cycle.clone(), reverse(cycle)] {
        for s in 0..m {
            let img = rotate(&base, s);
            if img.compare(&best)? == Ordering::Less {
                best = img;
            }
        }
    }
    Ok(best)
}

/// The number of distinct rotations and reflected rotations.
pub fn orbit_size(cycle: &Cycle) -> usize {
    let m = cycle.len() as i64;
    let mut images: Vec<Cycle> =
        [cycle.clone(), reverse(cycle)].iter().flat_map(|b| (0..m).map(move |s| rotate(b, s))).collect();
    images.sort_by_key(|c| c.to_string());
    images.dedup();
    images.len()
}

/// Counts of non-zero friezes of one height, up to and without symmetry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerationResult {
    pub ring: RingDescriptor,
    pub n: i64,
    pub total: usize,
    pub orbit_count: usize,
    /// Canonical forms of the orbits, sorted.
    pub representatives: Vec<Cycle>,
    /// Orbit size of each representative.
    pub orbit_sizes: Vec<usize>,
}

/// Enumerates and groups into dihedral orbits.
pub fn count_nonzero_with(ring: RingDescriptor, n: i64, jobs: usize) -> Result<EnumerationResult> {
    let (l, cycles) = search(ring, n, jobs)?;
    let mut orbits: BTreeMap<Vec<(i64, i64, i64)>, (Vec<Q>, usize)> = BTreeMap::new();
    for c in &cycles {
        let (canon, size) = canonical_fast(l, c);
        orbits.entry(canon.iter().map(|&x| l.key(x)).collect()).or_insert((canon, size));
    }
    let (representatives, orbit_sizes): (Vec<Cycle>, Vec<usize>) = orbits
        .into_values()
        .map(|(c, s)| (Cycle::new(c.into_iter().map(|x| l.to_element(x)).collect()).expect("nonempty"), s))
        .unzip();
    let result = EnumerationResult {
        ring,
        n,
        total: cycles.len(),
        orbit_count: representatives.len(),
        representatives,
        orbit_sizes,
    };
    if result.orbit_sizes.iter().sum::<usize>() != result.total {
        return Err(Error::Invariant("orbit sizes do not add up to the total".into()));
    }
    Ok(result)
}

/// [`count_nonzero_with`] on all available threads.
pub fn count_nonzero(ring: RingDescriptor, n: i64) -> Result<EnumerationResult> {
    count_nonzero_with(ring, n, rayon::current_num_threads())
}

/// `(t + n − 1, 1, 2, …, 2, 1 + 2/t, t, 2/t)` with `n − 2` twos, or
/// `(t, 2/t, t, 2/t)` for `n = 1`.
pub fn family_cycle(t: &RingElement, n: i64) -> Result<Cycle> {
    if n < 1 {
        return Err(Error::InvalidInput("the height must be at least 1".into()));
    }
    let ring = t.ring();
    let int = |k: i64| RingElement::from_int(ring, k);
    let u = int(2).checked_div(t)?;
    if n == 1 {
        return Cycle::new(vec![t.clone(), u.clone(), t.clone(), u]);
    }
    let mut v = vec![t + &int(n - 1), int(1)];
    v.extend((0..n - 2).map(|_| int(2)));
    v.extend([&int(1) + &u, t.clone(), u]);
    Cycle::new(v)
}

/// Up to `how_many` pairs `(t, cycle)` of the family of height `n`, `t`
/// running through the divisors of `2` and skipping values that put a zero
/// into the frieze. Each cycle is checked to be a quiddity cycle.
pub fn unit_family(ring: RingDescriptor, n: i64, how_many: usize) -> Result<Vec<(RingElement, Cycle)>> {
    let mut out = Vec::new();
    let mut limit = how_many.max(1) * 2 + 8;
    loop {
        let divisors = divisors_of_two(ring, limit);
        out.clear();
        for t in &divisors {
            let c = family_cycle(t, n)?;
            let f = frieze_from_cycle(&c)?;
            if is_nonzero(&f) {
                out.push((t.clone(), c));
                if out.len() == how_many {
                    return Ok(out);
                }
            }
        }
        if divisors.len() < limit {
            return Ok(out);
        }
        limit *= 2;
    }
}

/// The integers `t` with `0 < |t| ≤ range` for which the family of height `n`,
/// taken over `ℚ`, has a zero in its frieze.
pub fn zero_creating_parameters(n: i64, range: i64) -> Result<Vec<i64>> {
    let mut out = Vec::new();
    for t in (-range..=range).filter(|&t| t != 0) {
        let c = family_cycle(&RingElement::rational(t, 1), n)?;
        if !is_nonzero(&frieze_from_cycle(&c)?) {
            out.push(t);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::etacore::reverse;

    const Z: RingDescriptor = RingDescriptor::Integers;
    const ZI: RingDescriptor = RingDescriptor::GaussianIntegers;
    const ZE: RingDescriptor = RingDescriptor::EisensteinIntegers;

    #[test]
    fn fast_arithmetic_matches_generic() {
        for ring in [Z, ZI, ZE] {
            let l = Lattice::of(ring).unwrap();
            let elems = candidate_entries(ring, 2).unwrap();
            for x in &elems {
                for y in &elems {
                    let (qx, qy) = (l.from_element(x).unwrap(), l.from_element(y).unwrap());
                    assert_eq!(l.to_element(l.mul(qx, qy)), x * y);
                    assert_eq!(l.norm(qx), num_traits::ToPrimitive::to_i64(&x.norm_sq().unwrap().to_integer()).unwrap());
                    assert_eq!(l.key(qx).cmp(&l.key(qy)), x.compare(y).unwrap());
                    let q = x.checked_div(y).ok();
                    assert_eq!(l.div(qx, qy).map(|v| l.to_element(v)), q);
                }
            }
        }
    }

    #[test]
    fn height_one() {
        let c = enumerate_nonzero_with(Z, 1, 1).unwrap();
        let v: Vec<_> = c.iter().map(|c| c.to_i64s().unwrap()).collect();
        assert_eq!(v, vec![vec![-1, -2, -1, -2], vec![1, 2, 1, 2], vec![-2, -1, -2, -1], vec![2, 1, 2, 1]]);
        assert_eq!(enumerate_nonzero_with(ZI, 1, 1).unwrap().len(), 12);
        assert_eq!(enumerate_nonzero_with(ZE, 1, 1).unwrap().len(), 12);
        assert_eq!(enumerate_nonzero_with(Z, 2, 1).unwrap().len(), 5);
        assert!(enumerate_nonzero(RingDescriptor::Rationals, 1).is_err());
    }

    #[test]
    fn oracle() {
        for (ring, n) in [(Z, 1), (Z, 2), (ZI, 1), (ZE, 1)] {
            assert_eq!(enumerate_nonzero_with(ring, n, 2).unwrap(), enumerate_naive(ring, n).unwrap());
        }
    }

    #[test]
    fn canonical() {
        let a = canonical_form(&Cycle::from_ints(&[2, 1, 2, 1])).unwrap();
        assert_eq!(a, canonical_form(&Cycle::from_ints(&[1, 2, 1, 2])).unwrap());
        assert_eq!(orbit_size(&Cycle::from_ints(&[1, 2, 1, 2])), 2);
        let c = Cycle::from_ints(&[3, 1, 2, 2, 1]);
        assert_eq!(canonical_form(&reverse(&c)).unwrap(), canonical_form(&c).unwrap());
        let l = Lattice::Z;
        let q: Vec<Q> = c.to_i64s().unwrap().into_iter().map(|x| (x, 0)).collect();
        let (fast, size) = canonical_fast(l, &q);
        assert_eq!(Cycle::new(fast.into_iter().map(|x| l.to_element(x)).collect()).unwrap(), canonical_form(&c).unwrap());
        assert_eq!(size, orbit_size(&c));
    }

    #[test]
    fn small_counts() {
        let r = count_nonzero_with(ZI, 2, 1).unwrap();
        assert_eq!((r.total, r.orbit_count), (55, 7));
        let r = count_nonzero_with(ZE, 2, 2).unwrap();
        assert_eq!((r.total, r.orbit_count), (75, 10));
        assert_eq!(count_nonzero_with(Z, 3, 1).unwrap().total, 28);
    }

    #[test]
    fn worker_count_does_not_matter() {
        assert_eq!(count_nonzero_with(ZI, 2, 1).unwrap(), count_nonzero_with(ZI, 2, 3).unwrap());
    }

    #[test]
    fn families() {
        let c = family_cycle(&RingElement::int(1), 3).unwrap();
        assert_eq!(c, Cycle::from_ints(&[3, 1, 2, 3, 1, 2]));
        let f = frieze_from_cycle(&c).unwrap();
        assert_eq!(f.rows()[0][2..=4].to_vec(), vec![RingElement::int(3), RingElement::int(2), RingElement::int(1)]);
        assert_eq!(zero_creating_parameters(3, 20).unwrap(), vec![-4, -2, -1]);
        let fam = unit_family(Z, 3, 10).unwrap();
        let ts: Vec<_> = fam.iter().map(|(t, _)| t.clone()).collect();
        assert_eq!(ts, vec![RingElement::int(1), RingElement::int(2)]);
        let five = RingDescriptor::cyclotomic(5).unwrap();
        let fam = unit_family(five, 2, 3).unwrap();
        assert_eq!(fam.len(), 3);
        assert!(fam.iter().all(|(_, c)| is_quiddity(c)));
    }
}
