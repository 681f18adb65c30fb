//! Arithmetic in `ℤ[ζ_d] ≅ ℤ[x]/(Φ_d)` on coefficient vectors of length `φ(d)`.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::RingElement;

fn cache() -> &'static Mutex<HashMap<u32, Vec<BigInt>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Vec<BigInt>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Quotient of `num` by the monic polynomial `den`; both are coefficient lists
/// from the constant term upwards and the division must be exact.
fn exact_div_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dn = den.len() - 1;
    let mut quot = vec![BigInt::zero(); num.len() - dn];
    for k in (0..quot.len()).rev() {
        let q = rem[k + dn].clone();
        if !q.is_zero() {
            for (i, c) in den.iter().enumerate() {
                rem[k + i] -= &q * c;
            }
        }
        quot[k] = q;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    quot
}

/// The `d`-th cyclotomic polynomial, constant term first.
pub fn cyclotomic_polynomial(d: u32) -> Vec<BigInt> {
    if let Some(p) = cache().lock().unwrap().get(&d) {
        return p.clone();
    }
    let mut p = vec![BigInt::zero(); d as usize + 1];
    p[0] = -BigInt::one();
    p[d as usize] = BigInt::one();
    for e in (1..d).filter(|e| d % e == 0) {
        p = exact_div_monic(&p, &cyclotomic_polynomial(e));
    }
    cache().lock().unwrap().insert(d, p.clone());
    p
}

/// Euler's totient, read off as the degree of `Φ_d`.
pub fn phi(d: u32) -> usize {
    cyclotomic_polynomial(d).len() - 1
}

/// Remainder of an arbitrary polynomial modulo `Φ_d`.
pub fn reduce(d: u32, mut v: Vec<BigInt>) -> Vec<BigInt> {
    let p = cyclotomic_polynomial(d);
    let n = p.len() - 1;
    for k in (n..v.len()).rev() {
        let q = std::mem::take(&mut v[k]);
        if !q.is_zero() {
            for (i, c) in p.iter().enumerate().take(n) {
                v[k - n + i] -= &q * c;
            }
        }
    }
    v.resize(n, BigInt::zero());
    v
}

pub fn constant(d: u32, n: BigInt) -> RingElement {
    RingElement::Cyclotomic(d, reduce(d, vec![n]))
}

pub fn zeta(d: u32) -> RingElement {
    RingElement::Cyclotomic(d, reduce(d, vec![BigInt::zero(), BigInt::one()]))
}

pub fn mul(d: u32, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut prod = vec![BigInt::zero(); a.len() + b.len()];
    for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
        for (j, y) in b.iter().enumerate() {
            prod[i + j] += x * y;
        }
    }
    reduce(d, prod)
}

/// Solves `b·x = a` over `ℚ(ζ_d)` and returns `x` when it is integral.
pub fn div(d: u32, a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    let n = a.len();
    // column j of the multiplication-by-b matrix is b·ζ^j
    let mut cols = Vec::with_capacity(n);
    let mut shifted = b.to_vec();
    for _ in 0..n {
        cols.push(shifted.clone());
        let mut next = vec![BigInt::zero()];
        next.extend(shifted);
        shifted = reduce(d, next);
    }
    let mut rows: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            let mut row: Vec<BigRational> =
                cols.iter().map(|c| BigRational::from_integer(c[i].clone())).collect();
            row.push(BigRational::from_integer(a[i].clone()));
            row
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !rows[r][col].is_zero())?;
        rows.swap(col, pivot);
        let inv = rows[col][col].recip();
        for x in rows[col].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r != col && !rows[r][col].is_zero() {
                let f = rows[r][col].clone();
                for k in col..=n {
                    let t = &f * &rows[col][k];
                    rows[r][k] -= t;
                }
            }
        }
    }
    rows.into_iter()
        .map(|row| {
            let x = &row[n];
            x.is_integer().then(|| x.to_integer())
        })
        .collect()
}
