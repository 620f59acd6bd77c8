//! Arbitrary-precision rational scalars.
//!
//! `Rat` keeps values that fit in a machine word pair inline and spills to a
//! heap-allocated `BigRational` only when they do not. Every value is stored
//! reduced (gcd of numerator and denominator is 1, denominator positive), and
//! a value is stored inline exactly when it fits, so structural equality is
//! value equality.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::Error;

#[derive(Clone)]
enum Repr {
    /// numerator, denominator; reduced, denominator in `1..=i64::MAX`.
    Small(i64, i64),
    /// reduced, positive denominator, does not fit in the small form.
    Big(Box<BigRational>),
}

/// An exact rational number.
#[derive(Clone)]
pub struct Rat(Repr);

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Builds a `Rat` from a signed numerator and positive denominator that are
/// already reduced, demoting to the inline form when possible.
fn from_reduced_i128(num: i128, den: i128) -> Rat {
    debug_assert!(den > 0);
    if num >= i64::MIN as i128 && num <= i64::MAX as i128 && den <= i64::MAX as i128 {
        Rat(Repr::Small(num as i64, den as i64))
    } else {
        Rat(Repr::Big(Box::new(BigRational::new(
            BigInt::from(num),
            BigInt::from(den),
        ))))
    }
}

/// Normalizes an arbitrary i128 fraction (sign, reduction) into a `Rat`.
fn normalize_i128(num: i128, den: i128) -> Rat {
    assert!(den != 0, "rational with zero denominator");
    let (num, den) = if den < 0 { (-num, -den) } else { (num, den) };
    if num == 0 {
        return Rat(Repr::Small(0, 1));
    }
    let g = gcd_u128(num.unsigned_abs(), den as u128) as i128;
    from_reduced_i128(num / g, den / g)
}

fn demote(r: BigRational) -> Rat {
    if let (Some(n), Some(d)) = (r.numer().to_i64(), r.denom().to_i64()) {
        Rat(Repr::Small(n, d))
    } else {
        Rat(Repr::Big(Box::new(r)))
    }
}

impl Rat {
    pub fn zero() -> Rat {
        Rat(Repr::Small(0, 1))
    }

    pub fn one() -> Rat {
        Rat(Repr::Small(1, 1))
    }

    pub fn from_int(n: i64) -> Rat {
        Rat(Repr::Small(n, 1))
    }

    /// `num/den` as an exact rational. Panics if `den == 0`.
    pub fn new(num: i64, den: i64) -> Rat {
        normalize_i128(num as i128, den as i128)
    }

    pub fn from_big(r: BigRational) -> Rat {
        demote(r)
    }

    pub fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small(n, d) => BigRational::new(BigInt::from(*n), BigInt::from(*d)),
            Repr::Big(b) => (**b).clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0, _))
    }

    pub fn is_one(&self) -> bool {
        matches!(self.0, Repr::Small(1, 1))
    }

    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Small(n, _) => *n < 0,
            Repr::Big(b) => b.is_negative(),
        }
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small(_, d) => *d == 1,
            Repr::Big(b) => b.is_integer(),
        }
    }

    pub fn abs(&self) -> Rat {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn recip(&self) -> Rat {
        match &self.0 {
            Repr::Small(n, d) => {
                assert!(*n != 0, "inverse of zero");
                normalize_i128(*d as i128, *n as i128)
            }
            Repr::Big(b) => demote(b.recip()),
        }
    }

    /// Integer value when the denominator is 1 and the numerator fits `i64`.
    pub fn as_int(&self) -> Option<i64> {
        match &self.0 {
            Repr::Small(n, 1) => Some(*n),
            _ => None,
        }
    }

    #[cfg(test)]
    fn is_small(&self) -> bool {
        matches!(self.0, Repr::Small(..))
    }
}

impl Default for Rat {
    fn default() -> Self {
        Rat::zero()
    }
}

impl PartialEq for Rat {
    fn eq(&self, other: &Self) -> bool {
        match (&self.0, &other.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => a == c && b == d,
            (Repr::Big(a), Repr::Big(b)) => a == b,
            // Canonical form: a Big never holds a value that fits Small.
            _ => false,
        }
    }
}

impl Eq for Rat {}

impl Hash for Rat {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match &self.0 {
            Repr::Small(n, d) => {
                0u8.hash(state);
                n.hash(state);
                d.hash(state);
            }
            Repr::Big(b) => {
                1u8.hash(state);
                b.hash(state);
            }
        }
    }
}

impl PartialOrd for Rat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rat {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small(n1, d1), Repr::Small(n2, d2)) => {
                (*n1 as i128 * *d2 as i128).cmp(&(*n2 as i128 * *d1 as i128))
            }
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl Add for &Rat {
    type Output = Rat;
    fn add(self, rhs: &Rat) -> Rat {
        match (&self.0, &rhs.0) {
            (Repr::Small(n1, d1), Repr::Small(n2, d2)) => {
                let num = *n1 as i128 * *d2 as i128 + *n2 as i128 * *d1 as i128;
                let den = *d1 as i128 * *d2 as i128;
                normalize_i128(num, den)
            }
            _ => demote(self.to_big() + rhs.to_big()),
        }
    }
}

impl Sub for &Rat {
    type Output = Rat;
    fn sub(self, rhs: &Rat) -> Rat {
        match (&self.0, &rhs.0) {
            (Repr::Small(n1, d1), Repr::Small(n2, d2)) => {
                let num = *n1 as i128 * *d2 as i128 - *n2 as i128 * *d1 as i128;
                let den = *d1 as i128 * *d2 as i128;
                normalize_i128(num, den)
            }
            _ => demote(self.to_big() - rhs.to_big()),
        }
    }
}

impl Mul for &Rat {
    type Output = Rat;
    fn mul(self, rhs: &Rat) -> Rat {
        match (&self.0, &rhs.0) {
            (Repr::Small(n1, d1), Repr::Small(n2, d2)) => {
                if *n1 == 0 || *n2 == 0 {
                    return Rat::zero();
                }
                // Cross-reduce first so the product is already in lowest terms.
                let g1 = gcd_u64(n1.unsigned_abs(), *d2 as u64) as i128;
                let g2 = gcd_u64(n2.unsigned_abs(), *d1 as u64) as i128;
                let num = (*n1 as i128 / g1) * (*n2 as i128 / g2);
                let den = (*d1 as i128 / g2) * (*d2 as i128 / g1);
                from_reduced_i128(num, den)
            }
            _ => demote(self.to_big() * rhs.to_big()),
        }
    }
}

impl Div for &Rat {
    type Output = Rat;
    fn div(self, rhs: &Rat) -> Rat {
        assert!(!rhs.is_zero(), "division by zero");
        self * &rhs.recip()
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        match &self.0 {
            Repr::Small(n, d) => normalize_i128(-(*n as i128), *d as i128),
            Repr::Big(b) => demote(-(**b).clone()),
        }
    }
}

macro_rules! forward_value_ops {
    ($($trait:ident, $method:ident;)*) => {$(
        impl $trait for Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                $trait::$method(&self, &rhs)
            }
        }
        impl $trait<&Rat> for Rat {
            type Output = Rat;
            fn $method(self, rhs: &Rat) -> Rat {
                $trait::$method(&self, rhs)
            }
        }
        impl $trait<Rat> for &Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                $trait::$method(self, &rhs)
            }
        }
    )*};
}

forward_value_ops! {
    Add, add;
    Sub, sub;
    Mul, mul;
    Div, div;
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        -&self
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(n, 1) => write!(f, "{n}"),
            Repr::Small(n, d) => write!(f, "{n}/{d}"),
            Repr::Big(b) => {
                if b.is_integer() {
                    write!(f, "{}", b.numer())
                } else {
                    write!(f, "{}/{}", b.numer(), b.denom())
                }
            }
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::BadRational(s.to_string());
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s.trim(), "1"),
        };
        let num = BigInt::from_str(num).map_err(|_| bad())?;
        let den = BigInt::from_str(den).map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        Ok(demote(BigRational::new(num, den)))
    }
}

impl serde::Serialize for Rat {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for Rat {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn basic_arithmetic() {
        let a = Rat::new(1, 2);
        let b = Rat::new(1, 3);
        assert_eq!(&a + &b, Rat::new(5, 6));
        assert_eq!(&a - &b, Rat::new(1, 6));
        assert_eq!(&a * &b, Rat::new(1, 6));
        assert_eq!(&a / &b, Rat::new(3, 2));
        assert_eq!(-&a, Rat::new(-1, 2));
    }

    #[test]
    fn normalization() {
        assert_eq!(Rat::new(2, 4), Rat::new(1, 2));
        assert_eq!(Rat::new(1, -2), Rat::new(-1, 2));
        assert_eq!(Rat::new(0, -7), Rat::zero());
        assert_eq!(Rat::new(-6, -3), Rat::from_int(2));
    }

    #[test]
    fn parse_and_display_round_trip() {
        for s in ["0", "5", "-5", "2/3", "-7/11"] {
            let r: Rat = s.parse().unwrap();
            assert_eq!(r.to_string(), s);
        }
        // Non-canonical input prints canonically.
        assert_eq!("4/6".parse::<Rat>().unwrap().to_string(), "2/3");
        assert!("1/0".parse::<Rat>().is_err());
        assert!("x".parse::<Rat>().is_err());
    }

    #[test]
    fn big_values_spill_and_demote() {
        let big: Rat = "170141183460469231731687303715884105727".parse().unwrap();
        assert!(!big.is_small());
        let one = &big / &big;
        assert!(one.is_one());
        assert!(one.is_small());
        // i64::MIN fits inline; its negation does not... but it fits after
        // the i128 intermediate, where it becomes a Big numerator of 2^63.
        let m = Rat::from_int(i64::MIN);
        assert!(m.is_small());
        let neg = -&m;
        assert_eq!(&neg + &m, Rat::zero());
    }

    #[test]
    fn ordering() {
        let mut v = vec![
            Rat::new(1, 2),
            Rat::new(-3, 2),
            Rat::zero(),
            Rat::from_int(2),
        ];
        v.sort();
        assert_eq!(
            v,
            vec![
                Rat::new(-3, 2),
                Rat::zero(),
                Rat::new(1, 2),
                Rat::from_int(2)
            ]
        );
    }

    fn arb_rat() -> impl Strategy<Value = Rat> {
        // Mix of small values and values near the i64 boundary so both
        // representations and the promote/demote paths get exercised.
        prop_oneof![
            (-50i64..=50, 1i64..=50).prop_map(|(n, d)| Rat::new(n, d)),
            (
                any::<i64>(),
                any::<i64>().prop_filter("nonzero", |d| *d != 0)
            )
                .prop_map(|(n, d)| Rat::new(n, d)),
        ]
    }

    proptest! {
        #[test]
        fn matches_bigrational_oracle(a in arb_rat(), b in arb_rat()) {
            let (ba, bb) = (a.to_big(), b.to_big());
            prop_assert_eq!((&a + &b).to_big(), &ba + &bb);
            prop_assert_eq!((&a - &b).to_big(), &ba - &bb);
            prop_assert_eq!((&a * &b).to_big(), &ba * &bb);
            if !b.is_zero() {
                prop_assert_eq!((&a / &b).to_big(), &ba / &bb);
            }
            prop_assert_eq!(a.cmp(&b), ba.cmp(&bb));
        }

        #[test]
        fn canonical_form_is_maintained(a in arb_rat(), b in arb_rat()) {
            // Equal values must compare equal regardless of the path that
            // produced them; this fails if canonicalization is ever skipped.
            let sum = &a + &b;
            let same = &(&sum - &b) + &b;
            prop_assert_eq!(&sum, &same);
            let prod = &a * &b;
            if !b.is_zero() {
                prop_assert_eq!(&(&prod / &b), &a);
            }
            prop_assert!(sum.is_small() == sum.to_big().numer().to_i64().is_some()
                || sum.to_big().denom().to_i64().is_none());
        }
    }
}
