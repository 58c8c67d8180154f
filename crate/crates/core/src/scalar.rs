//! Exact rational scalars.
//!
//! [`Rational`] stores values that fit in a reduced `i64` fraction inline and
//! promotes to an arbitrary-precision [`BigRational`] only when an operation
//! overflows. Results are demoted again whenever they fit, so every value has
//! exactly one representation and structural equality is value equality.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, One, Signed, ToPrimitive, Zero};

type Small = Ratio<i64>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Rational {
    Small(Small),
    Big(BigRational),
}

impl Rational {
    pub fn zero() -> Self {
        Rational::Small(Small::from_integer(0))
    }

    pub fn one() -> Self {
        Rational::Small(Small::from_integer(1))
    }

    pub fn from_int(v: i64) -> Self {
        Rational::Small(Small::from_integer(v))
    }

    pub fn from_bigint(v: BigInt) -> Self {
        Self::from_big(BigRational::from_integer(v))
    }

    /// Builds `num/den`; panics if `den` is zero.
    pub fn new(num: i64, den: i64) -> Self {
        Rational::Small(Small::new(num, den))
    }

    fn from_big(v: BigRational) -> Self {
        match (v.numer().to_i64(), v.denom().to_i64()) {
            // i64::MIN cannot be negated safely inside Ratio<i64>.
            (Some(n), Some(d)) if n != i64::MIN && d != i64::MIN => {
                Rational::Small(Small::new_raw(n, d))
            }
            _ => Rational::Big(v),
        }
    }

    fn to_big(&self) -> BigRational {
        match self {
            Rational::Small(s) => {
                BigRational::new_raw(BigInt::from(*s.numer()), BigInt::from(*s.denom()))
            }
            Rational::Big(b) => b.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Rational::Small(s) => s.is_zero(),
            Rational::Big(b) => b.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Rational::Small(s) => s.is_one(),
            Rational::Big(_) => false,
        }
    }

    pub fn is_integer(&self) -> bool {
        match self {
            Rational::Small(s) => s.is_integer(),
            Rational::Big(b) => b.is_integer(),
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Rational::Small(s) => s.is_negative(),
            Rational::Big(b) => b.is_negative(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match self {
            Rational::Small(s) => BigInt::from(*s.numer()),
            Rational::Big(b) => b.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match self {
            Rational::Small(s) => BigInt::from(*s.denom()),
            Rational::Big(b) => b.denom().clone(),
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Rational::Small(s) if *s.numer() != i64::MIN => Rational::Small(s.recip()),
            _ => Self::from_big(self.to_big().recip()),
        })
    }

    pub fn checked_div(&self, rhs: &Self) -> Option<Self> {
        if rhs.is_zero() {
            return None;
        }
        if let (Rational::Small(a), Rational::Small(b)) = (self, rhs) {
            if let Some(r) = a.checked_div(b) {
                return Some(Rational::Small(r));
            }
        }
        Some(Self::from_big(self.to_big() / rhs.to_big()))
    }

    /// `self - c * x`, the elimination kernel.
    pub fn sub_mul(&self, c: &Self, x: &Self) -> Self {
        if let (Rational::Small(a), Rational::Small(cs), Rational::Small(xs)) = (self, c, x) {
            if let Some(r) = cs.checked_mul(xs).and_then(|p| a.checked_sub(&p)) {
                return Rational::Small(r);
            }
        }
        Self::from_big(self.to_big() - c.to_big() * x.to_big())
    }
}

impl Default for Rational {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for Rational {
    fn from(v: i64) -> Self {
        Rational::from_int(v)
    }
}

impl From<BigInt> for Rational {
    fn from(v: BigInt) -> Self {
        Rational::from_bigint(v)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl<'a> $trait<&'a Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                if let (Rational::Small(a), Rational::Small(b)) = (self, rhs) {
                    if let Some(r) = a.$checked(b) {
                        return Rational::Small(r);
                    }
                }
                Rational::from_big(self.to_big().$method(rhs.to_big()))
            }
        }

        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        *self = &*self - rhs;
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        match self {
            Rational::Small(s) if *s.numer() != i64::MIN => Rational::Small(-*s),
            _ => Rational::from_big(-self.to_big()),
        }
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        -&self
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rational::Small(s) if s.is_integer() => write!(f, "{}", s.numer()),
            Rational::Small(s) => write!(f, "{}/{}", s.numer(), s.denom()),
            Rational::Big(b) if b.is_integer() => write!(f, "{}", b.numer()),
            Rational::Big(b) => write!(f, "{}/{}", b.numer(), b.denom()),
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
