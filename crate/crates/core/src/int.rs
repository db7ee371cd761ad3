//! Arbitrary-precision integers with an inline fast path.
//!
//! Almost every coefficient met at desk scale fits in a machine word, so
//! `Int` keeps small values unboxed and only promotes to [`BigInt`] when an
//! operation overflows. The representation is normalized: a value that fits
//! in `i64` is always stored as `Small`, which keeps derived equality and
//! hashing sound.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, Debug)]
pub enum Int {
    Small(i64),
    Big(BigInt),
}

impl Int {
    pub const ZERO: Int = Int::Small(0);
    pub const ONE: Int = Int::Small(1);

    fn from_big(b: BigInt) -> Int {
        match b.to_i64() {
            Some(v) => Int::Small(v),
            None => Int::Big(b),
        }
    }

    pub fn to_bigint(&self) -> BigInt {
        match self {
            Int::Small(v) => BigInt::from(*v),
            Int::Big(b) => b.clone(),
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Int::Small(v) => Some(*v),
            Int::Big(_) => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Int::Small(0))
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Int::Small(1))
    }

    /// True for `1` and `-1`.
    pub fn is_unit(&self) -> bool {
        matches!(self, Int::Small(1) | Int::Small(-1))
    }

    pub fn signum(&self) -> i32 {
        match self {
            Int::Small(v) => v.signum() as i32,
            Int::Big(b) => {
                if b.is_negative() {
                    -1
                } else {
                    1
                }
            }
        }
    }

    pub fn abs(&self) -> Int {
        match self {
            Int::Small(v) => match v.checked_abs() {
                Some(a) => Int::Small(a),
                None => Int::Big(BigInt::from(*v).abs()),
            },
            Int::Big(b) => Int::Big(b.abs()),
        }
    }

    /// Non-negative greatest common divisor.
    pub fn gcd(&self, other: &Int) -> Int {
        match (self, other) {
            (Int::Small(a), Int::Small(b)) => {
                let g = a.unsigned_abs().gcd(&b.unsigned_abs());
                match i64::try_from(g) {
                    Ok(v) => Int::Small(v),
                    Err(_) => Int::Big(BigInt::from(g)),
                }
            }
            _ => Int::from_big(self.to_bigint().gcd(&other.to_bigint())),
        }
    }

    /// Exact quotient, or `None` when `other` does not divide `self`.
    pub fn div_exact(&self, other: &Int) -> Option<Int> {
        if other.is_zero() {
            return None;
        }
        match (self, other) {
            (Int::Small(a), Int::Small(b)) => {
                // i64::MIN % -1 overflows but is divisible
                if a.checked_rem(*b).unwrap_or(0) != 0 {
                    return None;
                }
                match a.checked_div(*b) {
                    Some(q) => Some(Int::Small(q)),
                    None => Some(Int::from_big(BigInt::from(*a) / BigInt::from(*b))),
                }
            }
            _ => {
                let (q, r) = self.to_bigint().div_rem(&other.to_bigint());
                r.is_zero().then(|| Int::from_big(q))
            }
        }
    }

    pub fn pow(&self, e: u32) -> Int {
        let mut acc = Int::ONE;
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

impl Default for Int {
    fn default() -> Self {
        Int::ZERO
    }
}

impl From<i64> for Int {
    fn from(v: i64) -> Self {
        Int::Small(v)
    }
}

impl From<i32> for Int {
    fn from(v: i32) -> Self {
        Int::Small(v as i64)
    }
}

impl From<u64> for Int {
    fn from(v: u64) -> Self {
        match i64::try_from(v) {
            Ok(s) => Int::Small(s),
            Err(_) => Int::Big(BigInt::from(v)),
        }
    }
}

impl From<usize> for Int {
    fn from(v: usize) -> Self {
        Int::from(v as u64)
    }
}

impl From<BigInt> for Int {
    fn from(b: BigInt) -> Self {
        Int::from_big(b)
    }
}

impl PartialEq for Int {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Int::Small(a), Int::Small(b)) => a == b,
            (Int::Big(a), Int::Big(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for Int {}

impl Hash for Int {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match self {
            Int::Small(v) => {
                0u8.hash(state);
                v.hash(state);
            }
            Int::Big(b) => {
                1u8.hash(state);
                b.hash(state);
            }
        }
    }
}

impl Ord for Int {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Int::Small(a), Int::Small(b)) => a.cmp(b),
            _ => self.to_bigint().cmp(&other.to_bigint()),
        }
    }
}

impl PartialOrd for Int {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Int::Small(v) => write!(f, "{v}"),
            Int::Big(b) => write!(f, "{b}"),
        }
    }
}

impl FromStr for Int {
    type Err = num_bigint::ParseBigIntError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.parse::<BigInt>().map(Int::from_big)
    }
}

impl Add<&Int> for &Int {
    type Output = Int;
    fn add(self, rhs: &Int) -> Int {
        if let (Int::Small(a), Int::Small(b)) = (self, rhs) {
            if let Some(c) = a.checked_add(*b) {
                return Int::Small(c);
            }
        }
        Int::from_big(self.to_bigint() + rhs.to_bigint())
    }
}

impl Sub<&Int> for &Int {
    type Output = Int;
    fn sub(self, rhs: &Int) -> Int {
        if let (Int::Small(a), Int::Small(b)) = (self, rhs) {
            if let Some(c) = a.checked_sub(*b) {
                return Int::Small(c);
            }
        }
        Int::from_big(self.to_bigint() - rhs.to_bigint())
    }
}

impl Mul<&Int> for &Int {
    type Output = Int;
    fn mul(self, rhs: &Int) -> Int {
        if let (Int::Small(a), Int::Small(b)) = (self, rhs) {
            if let Some(c) = a.checked_mul(*b) {
                return Int::Small(c);
            }
        }
        Int::from_big(self.to_bigint() * rhs.to_bigint())
    }
}

impl Neg for &Int {
    type Output = Int;
    fn neg(self) -> Int {
        match self {
            Int::Small(v) => match v.checked_neg() {
                Some(n) => Int::Small(n),
                None => Int::from_big(-BigInt::from(*v)),
            },
            Int::Big(b) => Int::from_big(-b),
        }
    }
}

impl Neg for Int {
    type Output = Int;
    fn neg(self) -> Int {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Int> for Int {
            type Output = Int;
            fn $m(self, rhs: Int) -> Int {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Int> for Int {
            type Output = Int;
            fn $m(self, rhs: &Int) -> Int {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl AddAssign<&Int> for Int {
    fn add_assign(&mut self, rhs: &Int) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Int> for Int {
    fn sub_assign(&mut self, rhs: &Int) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Int> for Int {
    fn mul_assign(&mut self, rhs: &Int) {
        *self = &*self * rhs;
    }
}

impl Zero for Int {
    fn zero() -> Self {
        Int::ZERO
    }
    fn is_zero(&self) -> bool {
        Int::is_zero(self)
    }
}

impl One for Int {
    fn one() -> Self {
        Int::ONE
    }
}

/// Binomial coefficient `C(n, k)`, zero when `k > n`.
pub fn binomial(n: u32, k: u32) -> Int {
    if k > n {
        return Int::ZERO;
    }
    let k = k.min(n - k);
    let mut acc = Int::ONE;
    for i in 0..k {
        acc = &acc * &Int::from((n - i) as i64);
        acc = acc
            .div_exact(&Int::from((i + 1) as i64))
            .expect("running binomial product is integral");
    }
    acc
}

pub fn factorial(n: u32) -> Int {
    (1..=n as i64).fold(Int::ONE, |acc, i| &acc * &Int::from(i))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn overflow_promotes_and_demotes() {
        let big = &Int::from(i64::MAX) + &Int::ONE;
        assert!(matches!(big, Int::Big(_)));
        let back = &big - &Int::ONE;
        assert_eq!(back, Int::Small(i64::MAX));
        assert_eq!(-Int::from(i64::MIN), &Int::from(i64::MAX) + &Int::ONE);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), Int::from(10));
        assert_eq!(binomial(2, 5), Int::ZERO);
        assert_eq!(binomial(0, 0), Int::ONE);
        assert_eq!(binomial(70, 35).to_string(), "112186277816662845432");
        assert_eq!(factorial(4), Int::from(24));
    }

    #[test]
    fn exact_division() {
        assert_eq!(Int::from(12).div_exact(&Int::from(-4)), Some(Int::from(-3)));
        assert_eq!(Int::from(12).div_exact(&Int::from(5)), None);
        assert_eq!(Int::from(12).div_exact(&Int::ZERO), None);
        assert_eq!(Int::from(i64::MIN).div_exact(&Int::from(-1)), Some(-Int::from(i64::MIN)));
    }

    proptest! {
        #[test]
        fn agrees_with_bigint(a in any::<i64>(), b in any::<i64>()) {
            let (x, y) = (Int::from(a), Int::from(b));
            let (bx, by) = (BigInt::from(a), BigInt::from(b));
            prop_assert_eq!((&x + &y).to_bigint(), &bx + &by);
            prop_assert_eq!((&x - &y).to_bigint(), &bx - &by);
            prop_assert_eq!((&x * &y).to_bigint(), &bx * &by);
            prop_assert_eq!(x.gcd(&y).to_bigint(), bx.gcd(&by));
            prop_assert_eq!(x.cmp(&y), bx.cmp(&by));
            prop_assert_eq!(x.to_string().parse::<Int>().unwrap(), x);
        }
    }
}
