//! Exact field elements.
//!
//! Rationals live in an `i64` fast path and spill into `BigRational` when a
//! checked operation overflows. Prime-field elements carry their modulus;
//! rational constants meeting a prime-field element are coerced into it.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, One, Signed, ToPrimitive, Zero};

/// Values whose numerator and denominator stay below this bound keep the small representation.
const SMALL_LIMIT: i64 = 1 << 62;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    pub value: u64,
    pub modulus: u64,
}

impl Fp {
    pub fn new(value: i128, modulus: u64) -> Fp {
        let m = modulus as i128;
        Fp {
            value: value.rem_euclid(m) as u64,
            modulus,
        }
    }

    fn add(self, o: Fp) -> Fp {
        check_modulus(self.modulus, o.modulus);
        Fp {
            value: ((self.value as u128 + o.value as u128) % self.modulus as u128) as u64,
            modulus: self.modulus,
        }
    }

    fn neg(self) -> Fp {
        Fp {
            value: (self.modulus - self.value) % self.modulus,
            modulus: self.modulus,
        }
    }

    fn mul(self, o: Fp) -> Fp {
        check_modulus(self.modulus, o.modulus);
        Fp {
            value: ((self.value as u128 * o.value as u128) % self.modulus as u128) as u64,
            modulus: self.modulus,
        }
    }

    fn pow(self, mut e: u64) -> Fp {
        let mut base = self;
        let mut acc = Fp {
            value: 1 % self.modulus,
            modulus: self.modulus,
        };
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(base);
            }
            base = base.mul(base);
            e >>= 1;
        }
        acc
    }

    fn inv(self) -> Fp {
        assert!(self.value != 0, "inverse of zero in GF({})", self.modulus);
        self.pow(self.modulus - 2)
    }
}

fn check_modulus(p: u64, q: u64) {
    assert_eq!(p, q, "mixing elements of GF({p}) and GF({q})");
}

/// Deterministic trial-division primality test, adequate for moduli below 2^32.
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[derive(Clone)]
pub enum Scalar {
    Small(Ratio<i64>),
    Big(Box<BigRational>),
    Mod(Fp),
}

fn fits(x: i64) -> bool {
    x > -SMALL_LIMIT && x < SMALL_LIMIT
}

fn small(r: Ratio<i64>) -> Scalar {
    if fits(*r.numer()) && fits(*r.denom()) {
        Scalar::Small(r)
    } else {
        big(BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom())))
    }
}

fn big(r: BigRational) -> Scalar {
    if let (Some(n), Some(d)) = (r.numer().to_i64(), r.denom().to_i64()) {
        if fits(n) && fits(d) {
            return Scalar::Small(Ratio::new_raw(n, d));
        }
    }
    Scalar::Big(Box::new(r))
}

fn to_big(r: &Ratio<i64>) -> BigRational {
    BigRational::new_raw(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

fn rational_to_fp(r: &BigRational, p: u64) -> Fp {
    let pm = BigInt::from(p);
    let n = r.numer().mod_floor(&pm).to_u64().unwrap();
    let d = r.denom().mod_floor(&pm).to_u64().unwrap();
    assert!(d != 0, "denominator {} is not invertible in GF({p})", r.denom());
    Fp { value: n, modulus: p }.mul(Fp { value: d, modulus: p }.inv())
}

impl Scalar {
    pub fn zero() -> Scalar {
        Scalar::Small(Ratio::new_raw(0, 1))
    }

    pub fn one() -> Scalar {
        Scalar::Small(Ratio::new_raw(1, 1))
    }

    pub fn from_i64(n: i64) -> Scalar {
        small(Ratio::from_integer(n))
    }

    /// `n/d` in lowest terms. Panics on `d == 0`.
    pub fn ratio(n: i64, d: i64) -> Scalar {
        assert!(d != 0, "zero denominator");
        small(Ratio::new(n, d))
    }

    pub fn from_big(r: BigRational) -> Scalar {
        big(r)
    }

    pub fn from_fp(value: i128, modulus: u64) -> Scalar {
        Scalar::Mod(Fp::new(value, modulus))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Small(r) => r.numer() == &0,
            Scalar::Big(r) => r.is_zero(),
            Scalar::Mod(f) => f.value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Small(r) => r.numer() == &1 && r.denom() == &1,
            Scalar::Big(r) => r.is_one(),
            Scalar::Mod(f) => f.value == 1 % f.modulus,
        }
    }

    pub fn modulus(&self) -> Option<u64> {
        match self {
            Scalar::Mod(f) => Some(f.modulus),
            _ => None,
        }
    }

    /// The same value read in GF(p) (identity for elements already there).
    pub fn to_field(&self, p: Option<u64>) -> Scalar {
        match (self, p) {
            (_, None) => self.clone(),
            (Scalar::Mod(f), Some(q)) => {
                check_modulus(f.modulus, q);
                self.clone()
            }
            (Scalar::Small(r), Some(q)) => Scalar::Mod(rational_to_fp(&to_big(r), q)),
            (Scalar::Big(r), Some(q)) => Scalar::Mod(rational_to_fp(r, q)),
        }
    }

    fn as_big(&self) -> BigRational {
        match self {
            Scalar::Small(r) => to_big(r),
            Scalar::Big(r) => (**r).clone(),
            Scalar::Mod(_) => unreachable!("prime-field element has no rational value"),
        }
    }

    fn as_fp(&self, p: u64) -> Fp {
        match self {
            Scalar::Mod(f) => {
                check_modulus(f.modulus, p);
                *f
            }
            Scalar::Small(r) => rational_to_fp(&to_big(r), p),
            Scalar::Big(r) => rational_to_fp(r, p),
        }
    }

    fn common_modulus(&self, o: &Scalar) -> Option<u64> {
        match (self, o) {
            (Scalar::Mod(f), _) => Some(f.modulus),
            (_, Scalar::Mod(f)) => Some(f.modulus),
            _ => None,
        }
    }

    pub fn inv(&self) -> Scalar {
        assert!(!self.is_zero(), "inverse of zero");
        match self {
            Scalar::Small(r) => small(r.recip()),
            Scalar::Big(r) => big(r.recip()),
            Scalar::Mod(f) => Scalar::Mod(f.inv()),
        }
    }

    /// Integer value when the element is a rational integer in `i64` range.
    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Scalar::Small(r) if r.is_integer() => Some(*r.numer()),
            Scalar::Big(r) if r.is_integer() => r.numer().to_i64(),
            _ => None,
        }
    }

    fn add_ref(&self, o: &Scalar) -> Scalar {
        if let (Scalar::Small(a), Scalar::Small(b)) = (self, o) {
            if let Some(r) = a.checked_add(b) {
                return small(r);
            }
        }
        match self.common_modulus(o) {
            Some(p) => Scalar::Mod(self.as_fp(p).add(o.as_fp(p))),
            None => big(self.as_big() + o.as_big()),
        }
    }

    fn sub_ref(&self, o: &Scalar) -> Scalar {
        if let (Scalar::Small(a), Scalar::Small(b)) = (self, o) {
            if let Some(r) = a.checked_sub(b) {
                return small(r);
            }
        }
        match self.common_modulus(o) {
            Some(p) => Scalar::Mod(self.as_fp(p).add(o.as_fp(p).neg())),
            None => big(self.as_big() - o.as_big()),
        }
    }

    fn mul_ref(&self, o: &Scalar) -> Scalar {
        if let (Scalar::Small(a), Scalar::Small(b)) = (self, o) {
            if let Some(r) = a.checked_mul(b) {
                return small(r);
            }
        }
        match self.common_modulus(o) {
            Some(p) => Scalar::Mod(self.as_fp(p).mul(o.as_fp(p))),
            None => big(self.as_big() * o.as_big()),
        }
    }

    fn neg_ref(&self) -> Scalar {
        match self {
            Scalar::Small(r) => small(-r),
            Scalar::Big(r) => big(-(**r).clone()),
            Scalar::Mod(f) => Scalar::Mod(f.neg()),
        }
    }

    /// `self - a*b`, the elimination kernel.
    pub fn sub_mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.sub_ref(&a.mul_ref(b))
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl PartialEq for Scalar {
    fn eq(&self, o: &Scalar) -> bool {
        match (self, o) {
            (Scalar::Small(a), Scalar::Small(b)) => a == b,
            _ => match self.common_modulus(o) {
                Some(p) => self.as_fp(p) == o.as_fp(p),
                None => self.as_big() == o.as_big(),
            },
        }
    }
}

impl Eq for Scalar {}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, o: &Scalar) -> Option<Ordering> {
        match (self, o) {
            (Scalar::Small(a), Scalar::Small(b)) => Some(a.cmp(b)),
            _ if self.common_modulus(o).is_some() => None,
            _ => Some(self.as_big().cmp(&o.as_big())),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Small(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Scalar::Small(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Scalar::Big(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Scalar::Big(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Scalar::Mod(x) => write!(f, "{}", x.value),
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Mod(x) => write!(f, "{}mod{}", x.value, x.modulus),
            _ => write!(f, "{self}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("malformed rational {0:?}")]
pub struct ParseScalarError(pub String);

impl FromStr for Scalar {
    type Err = ParseScalarError;

    /// Accepts `"p"` or `"p/q"` with an optional sign on `p`.
    fn from_str(s: &str) -> Result<Scalar, ParseScalarError> {
        let err = || ParseScalarError(s.to_string());
        let t = s.trim();
        let (n, d) = match t.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (t, "1"),
        };
        let n: BigInt = n.parse().map_err(|_| err())?;
        let d: BigInt = d.parse().map_err(|_| err())?;
        if d.is_zero() || d.is_negative() {
            return Err(err());
        }
        Ok(big(BigRational::new(n, d)))
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Scalar {
        Scalar::from_i64(n)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $imp:ident) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar {
                self.$imp(o)
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                self.$imp(&o)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar {
                self.$imp(o)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                self.$imp(&o)
            }
        }
    };
}

binop!(Add, add, add_ref);
binop!(Sub, sub, sub_ref);
binop!(Mul, mul, mul_ref);

impl Div<&Scalar> for &Scalar {
    type Output = Scalar;
    fn div(self, o: &Scalar) -> Scalar {
        self.mul_ref(&o.inv())
    }
}

impl Div<Scalar> for Scalar {
    type Output = Scalar;
    fn div(self, o: Scalar) -> Scalar {
        self.mul_ref(&o.inv())
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, o: &Scalar) {
        *self = self.add_ref(o);
    }
}

impl AddAssign<Scalar> for Scalar {
    fn add_assign(&mut self, o: Scalar) {
        *self = self.add_ref(&o);
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, o: &Scalar) {
        *self = self.sub_ref(o);
    }
}

impl SubAssign<Scalar> for Scalar {
    fn sub_assign(&mut self, o: Scalar) {
        *self = self.sub_ref(&o);
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, o: &Scalar) {
        *self = self.mul_ref(o);
    }
}

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(it: I) -> Scalar {
        it.fold(Scalar::zero(), |a, b| a + b)
    }
}

impl<'a> std::iter::Sum<&'a Scalar> for Scalar {
    fn sum<I: Iterator<Item = &'a Scalar>>(it: I) -> Scalar {
        it.fold(Scalar::zero(), |a, b| a + b)
    }
}

/// Serialized as its display string; field elements lose their modulus, which
/// the surrounding object records.
impl serde::Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overflow_spills_and_demotes() {
        let a = Scalar::from_i64(i64::MAX / 2);
        let sq = &a * &a;
        assert!(matches!(sq, Scalar::Big(_)));
        let back = &sq / &a;
        assert!(matches!(back, Scalar::Small(_)));
        assert_eq!(back, a);
    }

    #[test]
    fn canonical_form() {
        let r = Scalar::ratio(6, -4);
        assert_eq!(r.to_string(), "-3/2");
        assert!("6/-4".parse::<Scalar>().is_err());
        assert_eq!("-6/4".parse::<Scalar>().unwrap(), r);
        assert!("1/0".parse::<Scalar>().is_err());
    }

    #[test]
    fn prime_field_coercion() {
        let x = Scalar::from_fp(3, 7);
        let half = Scalar::ratio(1, 2);
        // 1/2 = 4 in GF(7)
        assert_eq!(&x * &half, Scalar::from_fp(12, 7));
        assert_eq!(x.inv(), Scalar::from_fp(5, 7));
        assert_eq!(Scalar::from_fp(7, 7), Scalar::zero());
        assert!(is_prime(7) && !is_prime(9) && !is_prime(1));
    }
}
