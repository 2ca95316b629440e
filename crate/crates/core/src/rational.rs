//! Exact rational numbers.
//!
//! Values that fit in a pair of `i64` stay inline; anything larger spills to
//! a heap-allocated [`BigInt`] pair. The representation is canonical (lowest
//! terms, positive denominator, inline whenever it fits), so structural
//! equality is numeric equality.

use alloc::string::{String, ToString};
use core::cmp::Ordering;
use core::fmt;
use core::iter::Sum;
use core::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use core::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    Small(i64, i64),
    Big(BigInt, BigInt),
}

/// An exact rational number in lowest terms with a positive denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rational(Repr);

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Rational {
    pub const ZERO: Rational = Rational(Repr::Small(0, 1));
    pub const ONE: Rational = Rational(Repr::Small(1, 1));

    pub fn zero() -> Self {
        Self::ZERO
    }

    pub fn one() -> Self {
        Self::ONE
    }

    pub fn from_integer(n: i64) -> Self {
        Rational(Repr::Small(n, 1))
    }

    /// `num / den`. Panics if `den == 0`.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_i128(num as i128, den as i128)
    }

    pub fn from_bigints(num: BigInt, den: BigInt) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        Self::normalize_big(num, den)
    }

    fn from_i128(num: i128, den: i128) -> Self {
        debug_assert!(den != 0);
        if num == 0 {
            return Self::ZERO;
        }
        let g = gcd_u128(num.unsigned_abs(), den.unsigned_abs());
        // g >= 1 and divides both, so the quotients fit back into i128 unless
        // one of them is i128::MIN with g == 1.
        let (mut n, mut d) = match (num.checked_div(g as i128), den.checked_div(g as i128)) {
            (Some(n), Some(d)) if g <= i128::MAX as u128 => (n, d),
            _ => return Self::normalize_big(BigInt::from(num), BigInt::from(den)),
        };
        if d < 0 {
            match (n.checked_neg(), d.checked_neg()) {
                (Some(nn), Some(dd)) => {
                    n = nn;
                    d = dd;
                }
                _ => return Self::normalize_big(BigInt::from(num), BigInt::from(den)),
            }
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(n), Ok(d)) => Rational(Repr::Small(n, d)),
            _ => Rational(Repr::Big(BigInt::from(n), BigInt::from(d))),
        }
    }

    fn normalize_big(num: BigInt, den: BigInt) -> Self {
        if num.is_zero() {
            return Self::ZERO;
        }
        let g = num.gcd(&den);
        let (mut n, mut d) = (num / &g, den / &g);
        if d.sign() == Sign::Minus {
            n = -n;
            d = -d;
        }
        match (n.to_i64(), d.to_i64()) {
            (Some(n), Some(d)) => Rational(Repr::Small(n, d)),
            _ => Rational(Repr::Big(n, d)),
        }
    }

    fn to_big(&self) -> (BigInt, BigInt) {
        match &self.0 {
            Repr::Small(n, d) => (BigInt::from(*n), BigInt::from(*d)),
            Repr::Big(n, d) => (n.clone(), d.clone()),
        }
    }

    pub fn numer(&self) -> BigInt {
        self.to_big().0
    }

    pub fn denom(&self) -> BigInt {
        self.to_big().1
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0, _))
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small(_, d) => *d == 1,
            Repr::Big(_, d) => d.is_one(),
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn signum(&self) -> i8 {
        match &self.0 {
            Repr::Small(n, _) => n.signum() as i8,
            Repr::Big(n, _) => match n.sign() {
                Sign::Minus => -1,
                Sign::NoSign => 0,
                Sign::Plus => 1,
            },
        }
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// The integer value, if the number is integral.
    pub fn to_integer(&self) -> Option<BigInt> {
        if self.is_integer() {
            Some(self.numer())
        } else {
            None
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        match &self.0 {
            Repr::Small(n, 1) => Some(*n),
            _ => None,
        }
    }

    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "reciprocal of zero");
        match &self.0 {
            Repr::Small(n, d) => Self::from_i128(*d as i128, *n as i128),
            Repr::Big(n, d) => Self::normalize_big(d.clone(), n.clone()),
        }
    }

    /// Negative part `min(x, 0)`.
    pub fn negative_part(&self) -> Self {
        if self.is_negative() {
            self.clone()
        } else {
            Self::ZERO
        }
    }

    fn add_ref(&self, other: &Self) -> Self {
        if let (Repr::Small(a, b), Repr::Small(c, d)) = (&self.0, &other.0) {
            let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
            if b == d {
                return Self::from_i128(a + c, b);
            }
            if let Some(num) = (a * d).checked_add(c * b) {
                return Self::from_i128(num, b * d);
            }
        }
        let (a, b) = self.to_big();
        let (c, d) = other.to_big();
        Self::normalize_big(a * &d + c * &b, b * d)
    }

    fn mul_ref(&self, other: &Self) -> Self {
        if let (Repr::Small(a, b), Repr::Small(c, d)) = (&self.0, &other.0) {
            return Self::from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128);
        }
        let (a, b) = self.to_big();
        let (c, d) = other.to_big();
        Self::normalize_big(a * c, b * d)
    }

    fn div_ref(&self, other: &Self) -> Self {
        assert!(!other.is_zero(), "division by zero");
        if let (Repr::Small(a, b), Repr::Small(c, d)) = (&self.0, &other.0) {
            return Self::from_i128(*a as i128 * *d as i128, *b as i128 * *c as i128);
        }
        let (a, b) = self.to_big();
        let (c, d) = other.to_big();
        Self::normalize_big(a * d, b * c)
    }

    fn neg_ref(&self) -> Self {
        match &self.0 {
            Repr::Small(n, d) => match n.checked_neg() {
                Some(n) => Rational(Repr::Small(n, *d)),
                None => Self::normalize_big(-BigInt::from(*n), BigInt::from(*d)),
            },
            Repr::Big(n, d) => Self::normalize_big(-n.clone(), d.clone()),
        }
    }
}

impl Default for Rational {
    fn default() -> Self {
        Self::ZERO
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

impl From<i32> for Rational {
    fn from(n: i32) -> Self {
        Self::from_integer(n as i64)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Self::normalize_big(n, BigInt::one())
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        if let (Repr::Small(a, b), Repr::Small(c, d)) = (&self.0, &other.0) {
            return (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128));
        }
        let (a, b) = self.to_big();
        let (c, d) = other.to_big();
        (a * d).cmp(&(c * b))
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(n, 1) => write!(f, "{n}"),
            Repr::Small(n, d) => write!(f, "{n}/{d}"),
            Repr::Big(n, d) if d.is_one() => write!(f, "{n}"),
            Repr::Big(n, d) => write!(f, "{n}/{d}"),
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Error returned when a string is not of the form `p` or `p/q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseRationalError(pub String);

impl fmt::Display for ParseRationalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "invalid rational {:?}: expected \"p\" or \"p/q\"",
            self.0
        )
    }
}

impl core::error::Error for ParseRationalError {}

impl FromStr for Rational {
    type Err = ParseRationalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseRationalError(s.to_string());
        let parse_int = |t: &str| -> Result<BigInt, ParseRationalError> {
            let t = t.trim();
            let digits = t.strip_prefix(['-', '+']).unwrap_or(t);
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(err());
            }
            BigInt::from_str(t).map_err(|_| err())
        };
        match s.split_once('/') {
            None => Ok(Rational::from(parse_int(s)?)),
            Some((n, d)) => {
                let n = parse_int(n)?;
                let d = parse_int(d)?;
                if d.is_zero() {
                    return Err(err());
                }
                Ok(Rational::from_bigints(n, d))
            }
        }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $inner:ident) => {
        impl $tr<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                self.$inner(rhs)
            }
        }
        impl $tr<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                (&self).$inner(&rhs)
            }
        }
        impl $tr<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                (&self).$inner(rhs)
            }
        }
        impl $tr<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                self.$inner(&rhs)
            }
        }
    };
}

impl Rational {
    fn sub_ref(&self, other: &Self) -> Self {
        self.add_ref(&other.neg_ref())
    }
}

forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);
forward_binop!(Div, div, div_ref);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        self.neg_ref()
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        self.neg_ref()
    }
}

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        *self = self.add_ref(rhs);
    }
}

impl AddAssign<Rational> for Rational {
    fn add_assign(&mut self, rhs: Rational) {
        *self = self.add_ref(&rhs);
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        *self = self.sub_ref(rhs);
    }
}

impl SubAssign<Rational> for Rational {
    fn sub_assign(&mut self, rhs: Rational) {
        *self = self.sub_ref(&rhs);
    }
}

impl MulAssign<&Rational> for Rational {
    fn mul_assign(&mut self, rhs: &Rational) {
        *self = self.mul_ref(rhs);
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::ZERO, |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Rational {
        iter.fold(Rational::ZERO, |acc, x| acc + x)
    }
}

/// Shorthand for `Rational::new(n, d)`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

/// Shorthand for an integral rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn lowest_terms_and_sign() {
        assert_eq!(ratio(2, 4), ratio(1, 2));
        assert_eq!(ratio(3, -6), ratio(-1, 2));
        assert_eq!(ratio(0, -5), Rational::ZERO);
        assert_eq!(ratio(-1, 2).to_string(), "-1/2");
        assert_eq!(int(7).to_string(), "7");
    }

    #[test]
    fn overflow_spills_to_big_and_back() {
        let big = int(i64::MAX) + int(i64::MAX);
        assert!(big > int(i64::MAX));
        assert_eq!(big.to_string(), "18446744073709551614");
        let back = big - int(i64::MAX);
        assert_eq!(back, int(i64::MAX));
        assert!(matches!(back.0, Repr::Small(..)));
        let m = int(i64::MIN);
        assert_eq!((-&m).to_string(), "9223372036854775808");
        assert_eq!(-(-m.clone()), m);
    }

    #[test]
    fn parse_round_trip() {
        for s in [
            "0",
            "5",
            "-3",
            "1/2",
            "-7/3",
            "123456789012345678901234567891/2",
        ] {
            let r: Rational = s.parse().unwrap();
            assert_eq!(r.to_string(), s);
        }
        assert_eq!("4/6".parse::<Rational>().unwrap(), ratio(2, 3));
        assert!("1.5".parse::<Rational>().is_err());
        assert!("1/0".parse::<Rational>().is_err());
        assert!("".parse::<Rational>().is_err());
        assert!("1e3".parse::<Rational>().is_err());
    }

    fn arb() -> impl Strategy<Value = Rational> {
        prop_oneof![
            (any::<i64>(), 1i64..1000).prop_map(|(n, d)| ratio(n, d)),
            (-1000i64..1000, 1i64..1000).prop_map(|(n, d)| ratio(n, d)),
        ]
    }

    proptest! {
        #[test]
        fn field_identities(a in arb(), b in arb(), c in arb()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&(&a - &b) + &b, a.clone());
            if !b.is_zero() {
                prop_assert_eq!(&(&a / &b) * &b, a.clone());
            }
            let s = a.to_string();
            prop_assert_eq!(s.parse::<Rational>().unwrap(), a);
        }

        #[test]
        fn ordering_matches_subtraction(a in arb(), b in arb()) {
            prop_assert_eq!(a.cmp(&b), (&a - &b).signum().cmp(&0));
        }
    }
}
