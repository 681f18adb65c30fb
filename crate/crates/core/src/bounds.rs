//! Small-entry existence results and the entry bound that makes the
//! enumeration of non-zero friezes over discrete rings finite.
//!
//! Absolute values are never formed: `|x| < r` is tested as `norm_sq(x) < r²`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::etacore::{full_product, is_quiddity, Cycle};
use crate::rings::{elements_norm_at_most, RingDescriptor, RingElement};

/// The data of the entry bound: minimal nonzero absolute value `M`,
/// height `n` and the bound `B = ((n − 1) + 2M)/M²`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundContext {
    pub m: BigRational,
    pub n: i64,
    pub b: BigRational,
}

impl BoundContext {
    pub fn new(m: BigRational, n: i64) -> Result<Self> {
        let b = quiddity_bound(&m, n)?;
        Ok(BoundContext { m, n, b })
    }

    /// The context for the discrete rings, where `M = 1` and `B = n + 1`.
    pub fn unit(n: i64) -> Result<Self> {
        BoundContext::new(BigRational::one(), n)
    }

    pub fn b_squared(&self) -> BigRational {
        &self.b * &self.b
    }
}

/// `((n − 1) + 2M)/M²`.
pub fn quiddity_bound(m: &BigRational, n: i64) -> Result<BigRational> {
    if !m.is_positive() {
        return Err(Error::InvalidInput("the minimal absolute value M must be positive".into()));
    }
    if n < 1 {
        return Err(Error::InvalidInput("the height must be at least 1".into()));
    }
    let two = BigRational::from_integer(2.into());
    Ok((BigRational::from_integer(BigInt::from(n - 1)) + two * m) / (m * m))
}

fn small(x: &RingElement) -> Result<bool> {
    Ok(x.norm_sq()? < BigRational::from_integer(4.into()))
}

/// An index `j ∈ {2, …, m−1}` with `|c_j| < 2`, for cycles whose product has
/// first column `(d, e)` with `|c_m| ≥ 1` and `|c₁e − d| > |e|`.
/// The smallest such index is returned.
pub fn find_small_window(cycle: &Cycle) -> Result<usize> {
    let m = cycle.len();
    let p = full_product(cycle);
    let (d, e) = (&p.a11, &p.a21);
    let lhs = (&(cycle.get(1) * e) - d).norm_sq()?;
    if m < 3 || cycle.get(m as i64).norm_sq()? < BigRational::one() || lhs <= e.norm_sq()? {
        return Err(Error::NotApplicable(format!(
            "{cycle} does not satisfy |c_m| ≥ 1 and |c₁e − d| > |e|"
        )));
    }
    for j in 2..m {
        if small(cycle.get(j as i64))? {
            return Ok(j);
        }
    }
    Err(Error::Invariant(format!("no entry of absolute value < 2 inside {cycle}")))
}

/// Two distinct indices `j < k` with `|c_j|, |c_k| < 2` (smallest pair), for
/// cycles whose product is `±I`.
pub fn find_two_small(cycle: &Cycle) -> Result<(usize, usize)> {
    let p = full_product(cycle);
    if !(p.is_scalar(1) || p.is_scalar(-1)) {
        return Err(Error::NotApplicable(format!("the product of {cycle} is not ±I")));
    }
    let mut found = Vec::new();
    for (k, c) in cycle.entries().iter().enumerate() {
        if small(c)? {
            found.push(k + 1);
            if found.len() == 2 {
                return Ok((found[0], found[1]));
            }
        }
    }
    Err(Error::Invariant(format!("fewer than two small entries in {cycle}")))
}

/// For an integer quiddity cycle with `m > 3`: indices `j < k` with
/// `|c_j|, |c_k| ≤ 1`, `k − j > 1` and `{j, k} ≠ {1, m}`.
pub fn find_two_small_separated(cycle: &Cycle) -> Result<(usize, usize)> {
    let m = cycle.len();
    if cycle.ring() != RingDescriptor::Integers || m <= 3 {
        return Err(Error::NotApplicable("needs an integer cycle of length > 3".into()));
    }
    if !is_quiddity(cycle) {
        return Err(Error::InvalidCycle(format!("{cycle} is not a quiddity cycle")));
    }
    let smalls: Vec<usize> = (1..=m)
        .filter(|&k| cycle.get(k as i64).as_integer().is_some_and(|x| x.abs() <= BigInt::one()))
        .collect();
    for (a, &j) in smalls.iter().enumerate() {
        for &k in &smalls[a + 1..] {
            if k - j > 1 && !(j == 1 && k == m) {
                return Ok((j, k));
            }
        }
    }
    Err(Error::Invariant(format!("no separated pair of small entries in {cycle}")))
}

/// All nonzero elements of a discrete ring that may occur in a quiddity
/// cycle of a non-zero frieze of height `n`: `norm_sq ≤ (n + 1)²`.
pub fn candidate_entries(ring: RingDescriptor, n: i64) -> Result<Vec<RingElement>> {
    if !ring.is_discrete() {
        return Err(Error::Unsupported { ring, what: "candidate entries need a discrete ring" });
    }
    let ctx = BoundContext::unit(n)?;
    let v = elements_norm_at_most(ring, &ctx.b_squared())?;
    debug_assert!(v.iter().all(|x| !x.is_zero()));
    Ok(v)
}
