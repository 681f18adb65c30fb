//! Exact coefficient rings.
//!
//! Every element is stored with exact coordinates:
//!
//! * `ℤ` as a big integer,
//! * `ℤ[i]` as `a + b·i`,
//! * `ℤ[ζ₆]` (the Eisenstein integers) as `a + b·ζ₆` with `ζ₆ = (1 + i√3)/2`,
//!   so `ζ₆² = ζ₆ − 1` and `|a + bζ₆|² = a² + ab + b²`,
//! * `ℚ` and `ℚ(i)` with big rationals,
//! * `ℤ[ζ_d]` as a coefficient vector in the power basis `1, ζ, …, ζ^{φ(d)−1}`.
//!
//! There is no floating point anywhere; absolute values are only ever
//! compared through the exact rational `norm_sq`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub(crate) mod cyclotomic;
mod lattice;

pub use lattice::{divisors_of_two, elements_norm_at_most};

/// Which coefficient ring an element lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RingDescriptor {
    Integers,
    GaussianIntegers,
    /// `ℤ[ζ₆] = ℤ[ζ₃]`.
    EisensteinIntegers,
    Rationals,
    GaussianRationals,
    /// `ℤ[ζ_d]` for `d ∉ {1, 2, 3, 4, 6}`; see [`RingDescriptor::cyclotomic`].
    Cyclotomic(u32),
}

impl RingDescriptor {
    /// `ℤ[ζ_d]`, normalised so that the rings with a dedicated representation
    /// (`ℤ`, `ℤ[i]`, `ℤ[ζ₆]`) are never represented as cyclotomic.
    pub fn cyclotomic(d: u32) -> Result<Self> {
        match d {
            0 => Err(Error::InvalidInput("cyclotomic order must be positive".into())),
            1 | 2 => Ok(RingDescriptor::Integers),
            3 | 6 => Ok(RingDescriptor::EisensteinIntegers),
            4 => Ok(RingDescriptor::GaussianIntegers),
            d => Ok(RingDescriptor::Cyclotomic(d)),
        }
    }

    /// Discrete subsets of ℂ: minimal nonzero norm is 1.
    pub fn is_discrete(self) -> bool {
        match self {
            RingDescriptor::Integers
            | RingDescriptor::GaussianIntegers
            | RingDescriptor::EisensteinIntegers => true,
            RingDescriptor::Rationals | RingDescriptor::GaussianRationals => false,
            RingDescriptor::Cyclotomic(d) => matches!(d, 1 | 2 | 3 | 4 | 6),
        }
    }

    pub fn is_field(self) -> bool {
        matches!(self, RingDescriptor::Rationals | RingDescriptor::GaussianRationals)
    }

    /// Whether `norm_sq`, `compare` and friends are available.
    pub fn is_ordered(self) -> bool {
        !matches!(self, RingDescriptor::Cyclotomic(_))
    }

    pub fn tag(self) -> String {
        match self {
            RingDescriptor::Integers => "Z".into(),
            RingDescriptor::GaussianIntegers => "Zi".into(),
            RingDescriptor::EisensteinIntegers => "Zzeta6".into(),
            RingDescriptor::Rationals => "Q".into(),
            RingDescriptor::GaussianRationals => "Qi".into(),
            RingDescriptor::Cyclotomic(d) => format!("Zzeta{d}"),
        }
    }

    /// The smallest supported field containing this ring, if any.
    pub fn fraction_field(self) -> Option<Self> {
        match self {
            RingDescriptor::Integers | RingDescriptor::Rationals => Some(RingDescriptor::Rationals),
            RingDescriptor::GaussianIntegers | RingDescriptor::GaussianRationals => {
                Some(RingDescriptor::GaussianRationals)
            }
            _ => None,
        }
    }
}

impl fmt::Display for RingDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.tag())
    }
}

impl FromStr for RingDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "Z" => Ok(RingDescriptor::Integers),
            "Zi" => Ok(RingDescriptor::GaussianIntegers),
            "Q" => Ok(RingDescriptor::Rationals),
            "Qi" => Ok(RingDescriptor::GaussianRationals),
            _ => match s.strip_prefix("Zzeta").map(str::parse::<u32>) {
                Some(Ok(d)) => RingDescriptor::cyclotomic(d),
                _ => Err(Error::Parse(format!("unknown ring tag {s:?}"))),
            },
        }
    }
}

/// An exact element of one of the supported rings.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RingElement {
    Integer(BigInt),
    /// `re + im·i`
    Gaussian(BigInt, BigInt),
    /// `a + b·ζ₆`
    Eisenstein(BigInt, BigInt),
    Rational(BigRational),
    GaussianRational(BigRational, BigRational),
    /// Order `d` and the `φ(d)` coefficients in the power basis.
    Cyclotomic(u32, Vec<BigInt>),
}

fn rat(n: &BigInt) -> BigRational {
    BigRational::from_integer(n.clone())
}

impl RingElement {
    pub fn ring(&self) -> RingDescriptor {
        match self {
            RingElement::Integer(_) => RingDescriptor::Integers,
            RingElement::Gaussian(..) => RingDescriptor::GaussianIntegers,
            RingElement::Eisenstein(..) => RingDescriptor::EisensteinIntegers,
            RingElement::Rational(_) => RingDescriptor::Rationals,
            RingElement::GaussianRational(..) => RingDescriptor::GaussianRationals,
            RingElement::Cyclotomic(d, _) => RingDescriptor::Cyclotomic(*d),
        }
    }

    /// The image of an integer in `ring`.
    pub fn from_int(ring: RingDescriptor, n: impl Into<BigInt>) -> Self {
        let n = n.into();
        match ring {
            RingDescriptor::Integers => RingElement::Integer(n),
            RingDescriptor::GaussianIntegers => RingElement::Gaussian(n, BigInt::zero()),
            RingDescriptor::EisensteinIntegers => RingElement::Eisenstein(n, BigInt::zero()),
            RingDescriptor::Rationals => RingElement::Rational(BigRational::from_integer(n)),
            RingDescriptor::GaussianRationals => {
                RingElement::GaussianRational(BigRational::from_integer(n), BigRational::zero())
            }
            RingDescriptor::Cyclotomic(d) => cyclotomic::constant(d, n),
        }
    }

    pub fn zero(ring: RingDescriptor) -> Self {
        Self::from_int(ring, 0)
    }

    pub fn one(ring: RingDescriptor) -> Self {
        Self::from_int(ring, 1)
    }

    pub fn int(n: i64) -> Self {
        RingElement::Integer(n.into())
    }

    pub fn gaussian(re: i64, im: i64) -> Self {
        RingElement::Gaussian(re.into(), im.into())
    }

    pub fn eisenstein(a: i64, b: i64) -> Self {
        RingElement::Eisenstein(a.into(), b.into())
    }

    pub fn rational(p: i64, q: i64) -> Self {
        RingElement::Rational(BigRational::new(p.into(), q.into()))
    }

    pub fn gaussian_rational(re: BigRational, im: BigRational) -> Self {
        RingElement::GaussianRational(re, im)
    }

    /// The primitive root `ζ_d` (or `i`, `ζ₆`, `±1` for the normalised rings).
    pub fn root_of_unity(ring: RingDescriptor) -> Self {
        match ring {
            RingDescriptor::GaussianIntegers => RingElement::gaussian(0, 1),
            RingDescriptor::GaussianRationals => {
                RingElement::GaussianRational(BigRational::zero(), BigRational::one())
            }
            RingDescriptor::EisensteinIntegers => RingElement::eisenstein(0, 1),
            RingDescriptor::Cyclotomic(d) => cyclotomic::zeta(d),
            RingDescriptor::Integers | RingDescriptor::Rationals => RingElement::one(ring),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            RingElement::Integer(a) => a.is_zero(),
            RingElement::Gaussian(a, b) | RingElement::Eisenstein(a, b) => a.is_zero() && b.is_zero(),
            RingElement::Rational(a) => a.is_zero(),
            RingElement::GaussianRational(a, b) => a.is_zero() && b.is_zero(),
            RingElement::Cyclotomic(_, c) => c.iter().all(Zero::is_zero),
        }
    }

    pub fn is_one(&self) -> bool {
        *self == RingElement::one(self.ring())
    }

    /// The integer value when the element is a rational integer of ℤ.
    pub fn as_integer(&self) -> Option<&BigInt> {
        match self {
            RingElement::Integer(a) => Some(a),
            _ => None,
        }
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.ring() == other.ring() {
            Ok(())
        } else {
            Err(Error::RingMismatch(self.ring(), other.ring()))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(match (self, other) {
            (RingElement::Integer(a), RingElement::Integer(b)) => RingElement::Integer(a + b),
            (RingElement::Gaussian(a, b), RingElement::Gaussian(c, d)) => RingElement::Gaussian(a + c, b + d),
            (RingElement::Eisenstein(a, b), RingElement::Eisenstein(c, d)) => {
                RingElement::Eisenstein(a + c, b + d)
            }
            (RingElement::Rational(a), RingElement::Rational(b)) => RingElement::Rational(a + b),
            (RingElement::GaussianRational(a, b), RingElement::GaussianRational(c, d)) => {
                RingElement::GaussianRational(a + c, b + d)
            }
            (RingElement::Cyclotomic(d, a), RingElement::Cyclotomic(_, b)) => {
                RingElement::Cyclotomic(*d, a.iter().zip(b).map(|(x, y)| x + y).collect())
            }
            _ => unreachable!(),
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(match (self, other) {
            (RingElement::Integer(a), RingElement::Integer(b)) => RingElement::Integer(a * b),
            (RingElement::Gaussian(a, b), RingElement::Gaussian(c, d)) => {
                RingElement::Gaussian(a * c - b * d, a * d + b * c)
            }
            // ζ² = ζ − 1
            (RingElement::Eisenstein(a, b), RingElement::Eisenstein(c, d)) => {
                let bd = b * d;
                RingElement::Eisenstein(a * c - &bd, a * d + b * c + bd)
            }
            (RingElement::Rational(a), RingElement::Rational(b)) => RingElement::Rational(a * b),
            (RingElement::GaussianRational(a, b), RingElement::GaussianRational(c, d)) => {
                RingElement::GaussianRational(a * c - b * d, a * d + b * c)
            }
            (RingElement::Cyclotomic(d, a), RingElement::Cyclotomic(_, b)) => {
                RingElement::Cyclotomic(*d, cyclotomic::mul(*d, a, b))
            }
            _ => unreachable!(),
        })
    }

    /// Complex conjugate (only for the ordered rings).
    pub fn conj(&self) -> Result<Self> {
        Ok(match self {
            RingElement::Integer(_) | RingElement::Rational(_) => self.clone(),
            RingElement::Gaussian(a, b) => RingElement::Gaussian(a.clone(), -b),
            // conj(ζ₆) = 1 − ζ₆
            RingElement::Eisenstein(a, b) => RingElement::Eisenstein(a + b, -b),
            RingElement::GaussianRational(a, b) => RingElement::GaussianRational(a.clone(), -b),
            RingElement::Cyclotomic(..) => {
                return Err(Error::Unsupported { ring: self.ring(), what: "complex conjugation" })
            }
        })
    }

    /// Exact quotient `self / other`; fails when the quotient leaves the ring.
    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let not_divisible = || Error::NotDivisible(format!("{self} / {other}"));
        match (self, other) {
            (RingElement::Integer(a), RingElement::Integer(b)) => {
                let (q, r) = a.div_rem(b);
                if r.is_zero() {
                    Ok(RingElement::Integer(q))
                } else {
                    Err(not_divisible())
                }
            }
            (RingElement::Gaussian(..), RingElement::Gaussian(..))
            | (RingElement::Eisenstein(..), RingElement::Eisenstein(..)) => {
                let norm = other.integral_norm();
                let num = self.try_mul(&other.conj()?)?;
                let (a, b) = match &num {
                    RingElement::Gaussian(a, b) | RingElement::Eisenstein(a, b) => (a, b),
                    _ => unreachable!(),
                };
                let (qa, ra) = a.div_rem(&norm);
                let (qb, rb) = b.div_rem(&norm);
                if !ra.is_zero() || !rb.is_zero() {
                    return Err(not_divisible());
                }
                Ok(match self {
                    RingElement::Gaussian(..) => RingElement::Gaussian(qa, qb),
                    _ => RingElement::Eisenstein(qa, qb),
                })
            }
            (RingElement::Rational(a), RingElement::Rational(b)) => Ok(RingElement::Rational(a / b)),
            (RingElement::GaussianRational(a, b), RingElement::GaussianRational(c, d)) => {
                let n = c * c + d * d;
                Ok(RingElement::GaussianRational((a * c + b * d) / &n, (b * c - a * d) / &n))
            }
            (RingElement::Cyclotomic(d, a), RingElement::Cyclotomic(_, b)) => cyclotomic::div(*d, a, b)
                .map(|c| RingElement::Cyclotomic(*d, c))
                .ok_or_else(not_divisible),
            _ => unreachable!(),
        }
    }

    pub fn inverse(&self) -> Result<Self> {
        RingElement::one(self.ring()).checked_div(self)
    }

    pub fn is_unit(&self) -> bool {
        self.inverse().is_ok()
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = RingElement::one(self.ring());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    // a² + b² resp. a² + ab + b² for the two quadratic lattices
    fn integral_norm(&self) -> BigInt {
        match self {
            RingElement::Integer(a) => a * a,
            RingElement::Gaussian(a, b) => a * a + b * b,
            RingElement::Eisenstein(a, b) => a * a + a * b + b * b,
            _ => unreachable!("integral norm only exists for the integral lattices"),
        }
    }

    /// `|x|²` as an exact rational.
    pub fn norm_sq(&self) -> Result<BigRational> {
        Ok(match self {
            RingElement::Integer(_) | RingElement::Gaussian(..) | RingElement::Eisenstein(..) => {
                BigRational::from_integer(self.integral_norm())
            }
            RingElement::Rational(a) => a * a,
            RingElement::GaussianRational(a, b) => a * a + b * b,
            RingElement::Cyclotomic(..) => {
                return Err(Error::Unsupported { ring: self.ring(), what: "norm_sq" })
            }
        })
    }

    /// Real part as an exact rational.
    pub fn real_part(&self) -> Result<BigRational> {
        Ok(match self {
            RingElement::Integer(a) | RingElement::Gaussian(a, _) => rat(a),
            RingElement::Eisenstein(a, b) => rat(a) + BigRational::new(b.clone(), 2.into()),
            RingElement::Rational(a) | RingElement::GaussianRational(a, _) => a.clone(),
            RingElement::Cyclotomic(..) => {
                return Err(Error::Unsupported { ring: self.ring(), what: "real part" })
            }
        })
    }

    /// A rational that orders elements of one ring by their imaginary part.
    /// For `ℤ[ζ₆]` the imaginary part is `b·√3/2`, which sorts exactly like `b`.
    fn imag_key(&self) -> BigRational {
        match self {
            RingElement::Integer(_) | RingElement::Rational(_) => BigRational::zero(),
            RingElement::Gaussian(_, b) | RingElement::Eisenstein(_, b) => rat(b),
            RingElement::GaussianRational(_, b) => b.clone(),
            RingElement::Cyclotomic(..) => unreachable!(),
        }
    }

    /// Total order: ascending `(norm_sq, real part, imaginary part)`.
    pub fn compare(&self, other: &Self) -> Result<Ordering> {
        self.check_same(other)?;
        let by_norm = self.norm_sq()?.cmp(&other.norm_sq()?);
        Ok(by_norm
            .then_with(|| self.real_part().unwrap().cmp(&other.real_part().unwrap()))
            .then_with(|| self.imag_key().cmp(&other.imag_key())))
    }

    /// Image of `self` under the natural inclusion into `target`.
    pub fn embed(&self, target: RingDescriptor) -> Result<Self> {
        if self.ring() == target {
            return Ok(self.clone());
        }
        let fail = || Error::Unsupported { ring: target, what: "no natural inclusion from the source ring" };
        match (self, target) {
            (RingElement::Integer(a), _) => Ok(RingElement::from_int(target, a.clone())),
            (RingElement::Gaussian(a, b), RingDescriptor::GaussianRationals) => {
                Ok(RingElement::GaussianRational(rat(a), rat(b)))
            }
            (RingElement::Rational(a), RingDescriptor::GaussianRationals) => {
                Ok(RingElement::GaussianRational(a.clone(), BigRational::zero()))
            }
            _ => Err(fail()),
        }
    }
}

impl Neg for &RingElement {
    type Output = RingElement;

    fn neg(self) -> RingElement {
        match self {
            RingElement::Integer(a) => RingElement::Integer(-a),
            RingElement::Gaussian(a, b) => RingElement::Gaussian(-a, -b),
            RingElement::Eisenstein(a, b) => RingElement::Eisenstein(-a, -b),
            RingElement::Rational(a) => RingElement::Rational(-a),
            RingElement::GaussianRational(a, b) => RingElement::GaussianRational(-a, -b),
            RingElement::Cyclotomic(d, c) => RingElement::Cyclotomic(*d, c.iter().map(|x| -x).collect()),
        }
    }
}

impl Neg for RingElement {
    type Output = RingElement;

    fn neg(self) -> RingElement {
        -&self
    }
}

// Operators panic on mixed rings; callers that cannot rule that out use the
// `try_*` methods instead.
macro_rules! binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&RingElement> for &RingElement {
            type Output = RingElement;

            fn $method(self, rhs: &RingElement) -> RingElement {
                self.$checked(rhs).expect("arithmetic on elements of different rings")
            }
        }

        impl $trait<RingElement> for RingElement {
            type Output = RingElement;

            fn $method(self, rhs: RingElement) -> RingElement {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

fn fmt_rational(f: &mut fmt::Formatter<'_>, r: &BigRational) -> fmt::Result {
    if r.is_integer() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

// Writes `re + im·unit` in the usual compact form: `2`, `-i`, `1-2i`, `3/2+i`.
fn fmt_pair<T: fmt::Display + Signed + One + PartialEq>(
    f: &mut fmt::Formatter<'_>,
    re: &T,
    im: &T,
    unit: &str,
    show: impl Fn(&mut fmt::Formatter<'_>, &T) -> fmt::Result,
) -> fmt::Result {
    if im.is_zero() {
        return show(f, re);
    }
    if !re.is_zero() {
        show(f, re)?;
        if im.is_positive() {
            f.write_str("+")?;
        }
    }
    if im.is_one() {
        f.write_str(unit)
    } else if *im == -T::one() {
        write!(f, "-{unit}")
    } else {
        show(f, im)?;
        f.write_str(unit)
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingElement::Integer(a) => write!(f, "{a}"),
            RingElement::Gaussian(a, b) => fmt_pair(f, a, b, "i", |f, x| write!(f, "{x}")),
            RingElement::Eisenstein(a, b) => fmt_pair(f, a, b, "ζ", |f, x| write!(f, "{x}")),
            RingElement::Rational(a) => fmt_rational(f, a),
            RingElement::GaussianRational(a, b) => fmt_pair(f, a, b, "i", fmt_rational),
            RingElement::Cyclotomic(_, c) => {
                let mut wrote = false;
                for (k, x) in c.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                    if wrote && x.is_positive() {
                        f.write_str("+")?;
                    }
                    match (k, x) {
                        (0, x) => write!(f, "{x}")?,
                        (k, x) => {
                            if x.is_one() {
                            } else if *x == -BigInt::one() {
                                f.write_str("-")?;
                            } else {
                                write!(f, "{x}")?;
                            }
                            if k == 1 {
                                f.write_str("ζ")?;
                            } else {
                                write!(f, "ζ^{k}")?;
                            }
                        }
                    }
                    wrote = true;
                }
                if !wrote {
                    f.write_str("0")?;
                }
                Ok(())
            }
        }
    }
}
