//! The η-matrix calculus: `η(c) = (c −1; 1 0)`, interval products and the
//! quiddity / ε-cycle predicates.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::rings::{RingDescriptor, RingElement};

/// A 2×2 matrix `(a11 a12; a21 a22)` over one ring.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mat2 {
    pub a11: RingElement,
    pub a12: RingElement,
    pub a21: RingElement,
    pub a22: RingElement,
}

impl Mat2 {
    pub fn new(a11: RingElement, a12: RingElement, a21: RingElement, a22: RingElement) -> Self {
        Mat2 { a11, a12, a21, a22 }
    }

    pub fn scalar(ring: RingDescriptor, s: i64) -> Self {
        Mat2::new(
            RingElement::from_int(ring, s),
            RingElement::zero(ring),
            RingElement::zero(ring),
            RingElement::from_int(ring, s),
        )
    }

    pub fn identity(ring: RingDescriptor) -> Self {
        Mat2::scalar(ring, 1)
    }

    pub fn diag(x: RingElement, y: RingElement) -> Self {
        let ring = x.ring();
        Mat2::new(x, RingElement::zero(ring), RingElement::zero(ring), y)
    }

    pub fn ring(&self) -> RingDescriptor {
        self.a11.ring()
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        Mat2::new(
            &(&self.a11 * &o.a11) + &(&self.a12 * &o.a21),
            &(&self.a11 * &o.a12) + &(&self.a12 * &o.a22),
            &(&self.a21 * &o.a11) + &(&self.a22 * &o.a21),
            &(&self.a21 * &o.a12) + &(&self.a22 * &o.a22),
        )
    }

    /// `self · η(c)` without building the η-matrix.
    pub fn mul_eta(&self, c: &RingElement) -> Mat2 {
        Mat2::new(
            &(&self.a11 * c) + &self.a12,
            -&self.a11,
            &(&self.a21 * c) + &self.a22,
            -&self.a21,
        )
    }

    pub fn neg(&self) -> Mat2 {
        Mat2::new(-&self.a11, -&self.a12, -&self.a21, -&self.a22)
    }

    pub fn det(&self) -> RingElement {
        &(&self.a11 * &self.a22) - &(&self.a12 * &self.a21)
    }

    /// Whether the matrix equals `s·I`.
    pub fn is_scalar(&self, s: i64) -> bool {
        *self == Mat2::scalar(self.ring(), s)
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a11, self.a12, self.a21, self.a22)
    }
}

/// `η(c) = (c −1; 1 0)`.
pub fn eta(c: &RingElement) -> Mat2 {
    let ring = c.ring();
    Mat2::new(
        c.clone(),
        RingElement::from_int(ring, -1),
        RingElement::one(ring),
        RingElement::zero(ring),
    )
}

/// Left-to-right product `η(c₁)···η(c_k)` of a slice; the identity when empty.
pub fn eta_product(ring: RingDescriptor, entries: &[RingElement]) -> Mat2 {
    entries.iter().fold(Mat2::identity(ring), |acc, c| acc.mul_eta(c))
}

/// A finite sequence `(c₁, …, c_m)` over one ring, indexed cyclically from 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cycle {
    ring: RingDescriptor,
    entries: Vec<RingElement>,
}

impl Cycle {
    pub fn new(entries: Vec<RingElement>) -> Result<Self> {
        let first = entries
            .first()
            .ok_or_else(|| Error::InvalidCycle("a cycle needs at least one entry".into()))?;
        let ring = first.ring();
        if let Some(bad) = entries.iter().find(|e| e.ring() != ring) {
            return Err(Error::RingMismatch(ring, bad.ring()));
        }
        Ok(Cycle { ring, entries })
    }

    /// A cycle of rational integers embedded into `ring`.
    pub fn from_ints_in(ring: RingDescriptor, values: &[i64]) -> Result<Self> {
        Cycle::new(values.iter().map(|&v| RingElement::from_int(ring, v)).collect())
    }

    /// A cycle over ℤ.
    pub fn from_ints(values: &[i64]) -> Self {
        Cycle::from_ints_in(RingDescriptor::Integers, values).expect("nonempty integer cycle")
    }

    pub fn ring(&self) -> RingDescriptor {
        self.ring
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[RingElement] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<RingElement> {
        self.entries
    }

    /// `c_k` with `k` read cyclically (1-based, any integer).
    pub fn get(&self, k: i64) -> &RingElement {
        let m = self.entries.len() as i64;
        &self.entries[(k - 1).rem_euclid(m) as usize]
    }

    /// Integer values, when the cycle lives over ℤ and fits into `i64`.
    pub fn to_i64s(&self) -> Option<Vec<i64>> {
        use num_traits::ToPrimitive;
        self.entries.iter().map(|e| e.as_integer()?.to_i64()).collect()
    }

    /// Lexicographic comparison of entries under [`RingElement::compare`];
    /// shorter cycles sort first on a common prefix.
    pub fn compare(&self, other: &Cycle) -> Result<Ordering> {
        for (a, b) in self.entries.iter().zip(&other.entries) {
            match a.compare(b)? {
                Ordering::Equal => continue,
                o => return Ok(o),
            }
        }
        Ok(self.len().cmp(&other.len()))
    }
}

impl fmt::Display for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, e) in self.entries.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str(")")
    }
}

/// `M_{i,j} = η(c_i)···η(c_j)` with cyclic 1-based indices; `j` is lifted by
/// multiples of `m` until `j ≥ i − 1`, and `j = i − 1` gives the identity.
pub fn product_interval(cycle: &Cycle, i: i64, j: i64) -> Mat2 {
    let m = cycle.len() as i64;
    let mut j = j;
    if j < i - 1 {
        j += (i - 1 - j + m - 1) / m * m;
    }
    (i..=j).fold(Mat2::identity(cycle.ring()), |acc, k| acc.mul_eta(cycle.get(k)))
}

/// The full product `η(c₁)···η(c_m)`.
pub fn full_product(cycle: &Cycle) -> Mat2 {
    eta_product(cycle.ring(), cycle.entries())
}

/// Whether `∏ η(c_k) = −I`.
pub fn is_quiddity(cycle: &Cycle) -> bool {
    full_product(cycle).is_scalar(-1)
}

/// Whether `∏ η(c_k) = ε·I`.
pub fn is_epsilon_cycle(cycle: &Cycle, eps: i64) -> bool {
    matches!(eps, 1 | -1) && full_product(cycle).is_scalar(eps)
}

/// `(c_{1+s}, c_{2+s}, …, c_{m+s})`; negative shifts rotate the other way.
pub fn rotate(cycle: &Cycle, s: i64) -> Cycle {
    let m = cycle.len() as i64;
    let entries = (1..=m).map(|k| cycle.get(k + s).clone()).collect();
    Cycle { ring: cycle.ring, entries }
}

/// `(c_m, …, c₁)`.
pub fn reverse(cycle: &Cycle) -> Cycle {
    let entries = cycle.entries.iter().rev().cloned().collect();
    Cycle { ring: cycle.ring, entries }
}

/// `(−c₁, …, −c_m)`.
pub fn negate(cycle: &Cycle) -> Cycle {
    let entries = cycle.entries.iter().map(|e| -e).collect();
    Cycle { ring: cycle.ring, entries }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: i64) -> RingElement {
        RingElement::int(n)
    }

    #[test]
    fn eta_basics() {
        let e0 = eta(&z(0));
        assert_eq!(e0, Mat2::new(z(0), z(-1), z(1), z(0)));
        assert!(e0.mul(&e0).is_scalar(-1));
        let e1 = eta(&z(1));
        let mut p = Mat2::identity(RingDescriptor::Integers);
        for _ in 0..6 {
            p = p.mul(&e1);
        }
        assert!(p.is_scalar(1));
        for c in -5..=5 {
            assert!(eta(&z(c)).det().is_one());
        }
    }

    #[test]
    fn intervals() {
        let c = Cycle::from_ints(&[1, 1, 1]);
        assert!(product_interval(&c, 1, 0).is_scalar(1));
        assert!(product_interval(&c, 1, 3).is_scalar(-1));
        assert!(product_interval(&c, 3, 1).mul(&product_interval(&c, 2, 2)).is_scalar(-1));
        let (a, b) = (7, -3);
        let p = product_interval(&Cycle::from_ints(&[a, b]), 1, 2);
        assert_eq!(p, Mat2::new(z(a * b - 1), z(-a), z(b), z(-1)));
    }

    #[test]
    fn predicates() {
        assert!(is_quiddity(&Cycle::from_ints(&[0, 0])));
        assert!(is_quiddity(&Cycle::from_ints(&[1, 4, 1, 2, 2, 2])));
        assert!(is_quiddity(&Cycle::from_ints(&[1, 0, 1, 0, -2, 0])));
        assert!(!is_quiddity(&Cycle::from_ints(&[1, 0, 1, 0, -1, 0])));
        let g = Cycle::new(
            [(1, -1), (1, 1), (2, 0), (1, -1), (1, 1), (2, 0)]
                .iter()
                .map(|&(a, b)| RingElement::gaussian(a, b))
                .collect(),
        )
        .unwrap();
        assert!(is_quiddity(&g));
        assert!(is_epsilon_cycle(&Cycle::from_ints(&[0, 0]), -1));
        assert!(is_epsilon_cycle(&Cycle::from_ints(&[0, 0, 0, 0]), 1));
        assert!(!is_epsilon_cycle(&Cycle::from_ints(&[1, 1, 1]), 1));
        assert!(!is_quiddity(&Cycle::from_ints(&[5])));
    }

    #[test]
    fn symmetries() {
        let c = Cycle::from_ints(&[1, 0, 1, 0, -2, 0]);
        assert_eq!(reverse(&c), Cycle::from_ints(&[0, -2, 0, 1, 0, 1]));
        assert!(is_quiddity(&reverse(&c)));
        assert_eq!(rotate(&c, 1), Cycle::from_ints(&[0, 1, 0, -2, 0, 1]));
        assert_eq!(rotate(&c, -1), Cycle::from_ints(&[0, 1, 0, 1, 0, -2]));
        let n = negate(&Cycle::from_ints(&[2, 1, 2, 1]));
        assert_eq!(n, Cycle::from_ints(&[-2, -1, -2, -1]));
        assert!(is_quiddity(&n));
        let odd = negate(&Cycle::from_ints(&[1, 1, 1]));
        assert!(!is_quiddity(&odd));
        assert!(full_product(&odd).is_scalar(1));
    }

    #[test]
    fn mixed_rings_rejected() {
        assert!(matches!(
            Cycle::new(vec![z(1), RingElement::gaussian(1, 0)]),
            Err(Error::RingMismatch(..))
        ));
        assert!(Cycle::new(vec![]).is_err());
    }
}
