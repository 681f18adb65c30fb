//! Local rewrites of η-products.
//!
//! Every rule replaces a short window of a cycle and keeps the full product
//! unchanged up to the recorded sign. Positions are 1-based and cyclic.
//!
//! Rules that delete entries keep the remaining entries in their original
//! cyclic order. When the rewritten window wraps around the end of the
//! sequence the new product is the old one conjugated by a rotation, so the
//! identity `∏η(new) = sign·∏η(old)` holds exactly whenever the old product is
//! a scalar matrix and up to conjugation otherwise.

use crate::error::{Error, Result};
use crate::etacore::Cycle;
use crate::rings::RingElement;

/// A cycle together with the sign `s` in `∏η(cycle) = s·∏η(original)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedCycle {
    pub cycle: Cycle,
    pub sign: i64,
}

impl SignedCycle {
    fn new(cycle: Cycle, sign: i64) -> Self {
        SignedCycle { cycle, sign }
    }
}

fn idx(m: usize, k: i64) -> usize {
    (k - 1).rem_euclid(m as i64) as usize
}

fn int(c: &Cycle, n: i64) -> RingElement {
    RingElement::from_int(c.ring(), n)
}

fn div(x: &RingElement, y: &RingElement) -> Result<RingElement> {
    if y.is_zero() {
        return Err(Error::Singular("division by zero inside a rewrite rule"));
    }
    x.checked_div(y)
}

/// Removes 0-based position `p`, adding `delta` to both cyclic neighbours.
pub(crate) fn remove_with_neighbours(entries: &[RingElement], p: usize, delta: &RingElement) -> Vec<RingElement> {
    let m = entries.len();
    let mut v = entries.to_vec();
    let (l, r) = ((p + m - 1) % m, (p + 1) % m);
    v[l] = &v[l] + delta;
    v[r] = &v[r] + delta;
    v.remove(p);
    v
}

/// Replaces the zero at 0-based `p` and its neighbours `(a, 0, b)` by `a + b`
/// in the slot of `a`.
pub(crate) fn merge_around(entries: &[RingElement], p: usize) -> Vec<RingElement> {
    let m = entries.len();
    let (l, r) = ((p + m - 1) % m, (p + 1) % m);
    let mut v = entries.to_vec();
    v[l] = &v[l] + &v[r];
    let (first, second) = if p < r { (r, p) } else { (p, r) };
    v.remove(first);
    v.remove(second);
    v
}

fn insert_with_neighbours(c: &Cycle, k: i64, value: i64) -> Result<Cycle> {
    let m = c.len();
    let gap = idx(m, k);
    let delta = int(c, value);
    let mut v = c.entries().to_vec();
    let (l, r) = (gap, (gap + 1) % m);
    v[l] = &v[l] + &delta;
    v[r] = &v[r] + &delta;
    v.insert(gap + 1, delta);
    Cycle::new(v)
}

fn check_entry(c: &Cycle, k: i64, value: i64, min_len: usize, rule: &str) -> Result<usize> {
    let m = c.len();
    if m < min_len {
        return Err(Error::NotApplicable(format!("{rule} needs a cycle of length at least {min_len}")));
    }
    let p = idx(m, k);
    if c.entries()[p] != int(c, value) {
        return Err(Error::NotApplicable(format!("{rule}: entry {k} of {c} is not {value}")));
    }
    Ok(p)
}

/// Inserts a 1 between `c_k` and `c_{k+1}` and adds 1 to both:
/// `η(a)η(b) = η(a+1)η(1)η(b+1)`.
pub fn expand_one(c: &Cycle, k: i64) -> Result<SignedCycle> {
    Ok(SignedCycle::new(insert_with_neighbours(c, k, 1)?, 1))
}

/// Removes `c_k = 1` and subtracts 1 from both neighbours.
pub fn contract_one(c: &Cycle, k: i64) -> Result<SignedCycle> {
    let p = check_entry(c, k, 1, 3, "contract_one")?;
    Ok(SignedCycle::new(Cycle::new(remove_with_neighbours(c.entries(), p, &int(c, -1)))?, 1))
}

/// Inserts a −1 between `c_k` and `c_{k+1}` and subtracts 1 from both:
/// `η(a)η(b) = −η(a−1)η(−1)η(b−1)`.
pub fn expand_minus_one(c: &Cycle, k: i64) -> Result<SignedCycle> {
    Ok(SignedCycle::new(insert_with_neighbours(c, k, -1)?, -1))
}

/// Removes `c_k = −1` and adds 1 to both neighbours.
pub fn contract_minus_one(c: &Cycle, k: i64) -> Result<SignedCycle> {
    let p = check_entry(c, k, -1, 3, "contract_minus_one")?;
    Ok(SignedCycle::new(Cycle::new(remove_with_neighbours(c.entries(), p, &int(c, 1)))?, -1))
}

/// Replaces `(a, 0, b)` around `c_k = 0` by `a + b`: `η(a)η(0)η(b) = −η(a+b)`.
pub fn contract_zero(c: &Cycle, k: i64) -> Result<SignedCycle> {
    let p = check_entry(c, k, 0, 3, "contract_zero")?;
    Ok(SignedCycle::new(Cycle::new(merge_around(c.entries(), p))?, -1))
}

/// Inserts `(c, 0)` after `c_k` and subtracts `c` from `c_{k+1}`:
/// `η(a)η(b) = −η(a)η(c)η(0)η(b−c)`.
pub fn expand_zero(cy: &Cycle, k: i64, c: &RingElement) -> Result<SignedCycle> {
    let m = cy.len();
    let gap = idx(m, k);
    let mut v = cy.entries().to_vec();
    let r = (gap + 1) % m;
    v[r] = v[r].try_sub(c)?;
    v.insert(gap + 1, RingElement::zero(cy.ring()));
    v.insert(gap + 1, c.clone());
    Ok(SignedCycle::new(Cycle::new(v)?, -1))
}

/// `(a, 0, b) ↦ (a + u, 0, b − u)` around `c_k = 0`.
pub fn shift_zero(c: &Cycle, k: i64, u: &RingElement) -> Result<Cycle> {
    let p = check_entry(c, k, 0, 3, "shift_zero")?;
    let m = c.len();
    let mut v = c.entries().to_vec();
    let (l, r) = ((p + m - 1) % m, (p + 1) % m);
    v[l] = v[l].try_add(u)?;
    v[r] = v[r].try_sub(u)?;
    Cycle::new(v)
}

fn uv_window(c: &Cycle, k: i64) -> Result<[usize; 4]> {
    let m = c.len();
    if m < 4 {
        return Err(Error::NotApplicable("a four-entry window needs length at least 4".into()));
    }
    let p = idx(m, k);
    Ok([(p + m - 1) % m, p, (p + 1) % m, (p + 2) % m])
}

/// Rewrites the window `(a, u, v, b) = (c_{k−1}, c_k, c_{k+1}, c_{k+2})` as
/// `(a + (1−v)/(uv−1), uv−1, b + (1−u)/(uv−1))`.
pub fn contract_uv(c: &Cycle, k: i64) -> Result<Cycle> {
    let [ia, iu, iv, ib] = uv_window(c, k)?;
    let e = c.entries();
    let one = int(c, 1);
    let w = &(&e[iu] * &e[iv]) - &one;
    if w.is_zero() {
        return Err(Error::Singular("uv − 1 = 0"));
    }
    let mut v = e.to_vec();
    v[ia] = &e[ia] + &div(&(&one - &e[iv]), &w)?;
    v[ib] = &e[ib] + &div(&(&one - &e[iu]), &w)?;
    v[iu] = w;
    v.remove(iv);
    Cycle::new(v)
}

/// Rewrites `(a, u, v, b)` at `u = c_k` as
/// `(a + (1/λ − 1)v/(uv−1), λu, v/λ, b + (λ−1)u/(uv−1))`.
pub fn rescale_lambda(c: &Cycle, k: i64, lambda: &RingElement) -> Result<Cycle> {
    let [ia, iu, iv, ib] = uv_window(c, k)?;
    if lambda.is_zero() {
        return Err(Error::Singular("λ = 0"));
    }
    let e = c.entries();
    let one = int(c, 1);
    let w = &(&e[iu] * &e[iv]) - &one;
    if w.is_zero() {
        return Err(Error::Singular("uv − 1 = 0"));
    }
    let inv = div(&one, lambda)?;
    let mut v = e.to_vec();
    v[ia] = &e[ia] + &div(&(&(&inv - &one) * &e[iv]), &w)?;
    v[ib] = &e[ib] + &div(&(&(lambda - &one) * &e[iu]), &w)?;
    v[iu] = lambda * &e[iu];
    v[iv] = div(&e[iv], lambda)?;
    Cycle::new(v)
}

/// For invertible `u, z`:
/// `diag(1/z, z)·η(a)η(u)η(b)·diag(z, 1/z) = η(a')η(u)η(b')` with
/// `a' = a/z² − (1/z² − 1)/u` and `b' = z²b − (z² − 1)/u`.
pub fn conjugate_diag(
    a: &RingElement,
    u: &RingElement,
    b: &RingElement,
    z: &RingElement,
) -> Result<(RingElement, RingElement, RingElement)> {
    if u.is_zero() || z.is_zero() {
        return Err(Error::Singular("u and z must be invertible"));
    }
    let one = RingElement::one(a.ring());
    let z2 = z.try_mul(z)?;
    let iz2 = div(&one, &z2)?;
    let a2 = a.try_mul(&iz2)?.try_sub(&div(&(&iz2 - &one), u)?)?;
    let b2 = z2.try_mul(b)?.try_sub(&div(&(&z2 - &one), u)?)?;
    Ok((a2, u.clone(), b2))
}

/// `(t·c₁, c₂/t, t·c₃, …, c_m/t)` for even `m`.
pub fn scale_alternating(c: &Cycle, t: &RingElement) -> Result<Cycle> {
    if c.len() % 2 == 1 {
        return Err(Error::NotApplicable("alternating scaling needs an even length".into()));
    }
    if t.is_zero() {
        return Err(Error::Singular("t = 0"));
    }
    let v = c
        .entries()
        .iter()
        .enumerate()
        .map(|(k, x)| if k % 2 == 0 { x.try_mul(t) } else { div(x, t) })
        .collect::<Result<Vec<_>>>()?;
    Cycle::new(v)
}
