//! Finite element lists: lattice points in a disc and divisors of two.

use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

use super::{RingDescriptor, RingElement};
use crate::error::{Error, Result};

// Radii beyond this would produce lists too large to hold in memory anyway.
const MAX_RADIUS: i64 = 1 << 20;

fn floor_sqrt(x: &BigRational) -> Result<i64> {
    if x.is_negative() {
        return Ok(-1);
    }
    let r = x.floor().to_integer().sqrt();
    r.to_i64()
        .filter(|&r| r <= MAX_RADIUS)
        .ok_or_else(|| Error::InvalidInput(format!("norm bound {x} is too large to enumerate")))
}

/// All nonzero `x` with `norm_sq(x) ≤ bound_sq`, sorted by [`RingElement::compare`].
pub fn elements_norm_at_most(ring: RingDescriptor, bound_sq: &BigRational) -> Result<Vec<RingElement>> {
    let mut out = Vec::new();
    match ring {
        RingDescriptor::Integers => {
            let r = floor_sqrt(bound_sq)?;
            for a in (-r..=r).filter(|&a| a != 0) {
                out.push(RingElement::int(a));
            }
        }
        RingDescriptor::GaussianIntegers => {
            let r = floor_sqrt(bound_sq)?;
            for a in -r..=r {
                for b in -r..=r {
                    out.push(RingElement::gaussian(a, b));
                }
            }
        }
        RingDescriptor::EisensteinIntegers => {
            // a² + ab + b² ≥ 3b²/4, so both |a| and |b| are at most √(4B/3)
            let four_thirds = BigRational::new(4.into(), 3.into());
            let r = floor_sqrt(&(bound_sq * four_thirds))?;
            for a in -r..=r {
                for b in -r..=r {
                    out.push(RingElement::eisenstein(a, b));
                }
            }
        }
        _ => return Err(Error::Unsupported { ring, what: "element enumeration needs a discrete ring" }),
    }
    out.retain(|x| !x.is_zero() && x.norm_sq().unwrap() <= *bound_sq);
    out.sort_by(|x, y| x.compare(y).unwrap());
    Ok(out)
}

/// Up to `limit` distinct `t` with `2/t` in the ring.
///
/// Discrete rings return their complete (finite) set of divisors in the
/// order of [`RingElement::compare`]. The fields return `±1, ±2, ±1/2, …`
/// style sequences, and `ℤ[ζ_d]` returns roots of unity followed by powers
/// of a unit of infinite order when one is found.
pub fn divisors_of_two(ring: RingDescriptor, limit: usize) -> Vec<RingElement> {
    let two = RingElement::from_int(ring, 2);
    let mut out: Vec<RingElement> = Vec::new();
    let push = |out: &mut Vec<RingElement>, t: RingElement| {
        if out.len() < limit && !t.is_zero() && !out.contains(&t) && two.checked_div(&t).is_ok() {
            out.push(t);
        }
    };
    match ring {
        RingDescriptor::Integers | RingDescriptor::GaussianIntegers | RingDescriptor::EisensteinIntegers => {
            let four = BigRational::from_integer(4.into());
            for t in elements_norm_at_most(ring, &four).expect("discrete ring") {
                push(&mut out, t);
            }
        }
        RingDescriptor::Rationals | RingDescriptor::GaussianRationals => {
            let mut k: i64 = 1;
            while out.len() < limit {
                for x in [k, -k] {
                    push(&mut out, RingElement::from_int(ring, x));
                    if k > 1 {
                        push(&mut out, RingElement::from_int(ring, x).inverse().unwrap());
                    }
                }
                if ring == RingDescriptor::GaussianRationals {
                    let i = RingElement::root_of_unity(ring);
                    for x in [k, -k] {
                        let t = &RingElement::from_int(ring, x) * &i;
                        push(&mut out, t.clone());
                        if k > 1 {
                            push(&mut out, t.inverse().unwrap());
                        }
                    }
                }
                k += 1;
            }
        }
        RingDescriptor::Cyclotomic(d) => {
            let zeta = RingElement::root_of_unity(ring);
            let roots: Vec<RingElement> = (0..d).flat_map(|k| [zeta.pow(k), -zeta.pow(k)]).collect();
            for r in &roots {
                push(&mut out, r.clone());
            }
            for r in &roots {
                push(&mut out, &two * r);
            }
            if let Some(u) = infinite_order_unit(d, &roots) {
                let inv = u.inverse().unwrap();
                let mut k = 1;
                while out.len() < limit {
                    push(&mut out, u.pow(k));
                    push(&mut out, inv.pow(k));
                    push(&mut out, &two * &u.pow(k));
                    k += 1;
                }
            }
        }
    }
    out
}

/// A unit of `ℤ[ζ_d]` that is not a root of unity, tried among a few
/// standard candidates `1 + ζ`, `1 + ζ + ζ⁻¹`, `1 + ζ + ζ²`.
fn infinite_order_unit(d: u32, roots: &[RingElement]) -> Option<RingElement> {
    let ring = RingDescriptor::Cyclotomic(d);
    let one = RingElement::one(ring);
    let z = RingElement::root_of_unity(ring);
    let zinv = z.pow(d - 1);
    let candidates = [&one + &z, &(&one + &z) + &zinv, &(&one + &z) + &z.pow(2)];
    candidates.into_iter().find(|u| {
        u.is_unit() && (1..=2 * d).all(|k| !roots.contains(&u.pow(k)))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(n: i64) -> BigRational {
        BigRational::from_integer(num_bigint::BigInt::from(n))
    }

    /// Independent count: double loop over a generous box with the norm form.
    fn lattice_count(ring: RingDescriptor, bound: i64) -> usize {
        let r = 2 * bound + 2;
        let mut count = 0;
        for a in -r..=r {
            for c in -r..=r {
                let n = match ring {
                    RingDescriptor::Integers if c == 0 => a * a,
                    RingDescriptor::Integers => continue,
                    RingDescriptor::GaussianIntegers => a * a + c * c,
                    _ => a * a + a * c + c * c,
                };
                if n > 0 && n <= bound {
                    count += 1;
                }
            }
        }
        count
    }

    #[test]
    fn disc_counts() {
        assert_eq!(elements_norm_at_most(RingDescriptor::Integers, &b(4)).unwrap().len(), 4);
        assert_eq!(elements_norm_at_most(RingDescriptor::GaussianIntegers, &b(4)).unwrap().len(), 12);
        assert_eq!(elements_norm_at_most(RingDescriptor::EisensteinIntegers, &b(1)).unwrap().len(), 6);
        for ring in [
            RingDescriptor::Integers,
            RingDescriptor::GaussianIntegers,
            RingDescriptor::EisensteinIntegers,
        ] {
            for bound in 0..=100 {
                assert_eq!(
                    elements_norm_at_most(ring, &b(bound)).unwrap().len(),
                    lattice_count(ring, bound),
                    "{ring} {bound}"
                );
            }
        }
    }

    #[test]
    fn disc_is_sorted_and_rejects_non_discrete() {
        let v = elements_norm_at_most(RingDescriptor::GaussianIntegers, &b(25)).unwrap();
        assert_eq!(v.len(), 80);
        assert!(v.windows(2).all(|w| w[0].compare(&w[1]).unwrap().is_lt()));
        assert!(elements_norm_at_most(RingDescriptor::Rationals, &b(4)).is_err());
        assert!(elements_norm_at_most(RingDescriptor::Cyclotomic(5), &b(4)).is_err());
    }

    #[test]
    fn divisors() {
        assert_eq!(divisors_of_two(RingDescriptor::Integers, 10).len(), 4);
        assert_eq!(divisors_of_two(RingDescriptor::GaussianIntegers, 20).len(), 12);
        assert_eq!(divisors_of_two(RingDescriptor::EisensteinIntegers, 20).len(), 12);
        assert_eq!(divisors_of_two(RingDescriptor::Rationals, 7).len(), 7);
        assert_eq!(divisors_of_two(RingDescriptor::GaussianRationals, 9).len(), 9);
        let c5 = divisors_of_two(RingDescriptor::Cyclotomic(5), 40);
        assert_eq!(c5.len(), 40);
        let two = RingElement::from_int(RingDescriptor::Cyclotomic(5), 2);
        for t in &c5 {
            let q = two.checked_div(t).unwrap();
            assert_eq!(&q * t, two);
        }
        assert!(!divisors_of_two(RingDescriptor::Cyclotomic(8), 30).is_empty());
    }
}
