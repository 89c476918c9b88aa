//! Exact rational scalars, always in lowest terms with positive denominator.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

/// Construction/parsing failures for [`Rat`].
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RatError {
    #[error("denominator is zero")]
    ZeroDenominator,
    #[error("malformed rational `{0}`")]
    Malformed(String),
}

/// An exact rational number.
///
/// Canonical form is an invariant: the denominator is positive, numerator and
/// denominator are coprime, and zero is 0/1. The text form is `n/d`, or just
/// `n` when the denominator is one, with an optional leading minus sign and
/// no whitespace; parsing accepts exactly that shape and nothing else.
#[derive(Clone)]
pub struct Rat(BigRational);

impl Rat {
    /// Builds `num/den` in lowest terms. The only error is a zero denominator.
    pub fn new(num: BigInt, den: BigInt) -> Result<Rat, RatError> {
        if den.is_zero() {
            return Err(RatError::ZeroDenominator);
        }
        Ok(Rat(BigRational::new(num, den)))
    }

    pub fn zero() -> Rat {
        Rat(BigRational::zero())
    }

    pub fn one() -> Rat {
        Rat(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Rat {
        Rat(self.0.abs())
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn recip(&self) -> Rat {
        assert!(!self.is_zero(), "reciprocal of zero");
        Rat(self.0.recip())
    }

    /// Integer power; negative exponents invert. Panics on 0^negative.
    pub fn pow(&self, exp: i32) -> Rat {
        if exp < 0 {
            assert!(!self.is_zero(), "negative power of zero");
        }
        Rat(self.0.pow(exp))
    }

    pub fn square(&self) -> Rat {
        self * self
    }

    /// The exact nonnegative square root, when `self` is a perfect square of
    /// a rational. Negative numbers are never squares; zero yields zero.
    ///
    /// Because the canonical form is reduced, `n/d` is a square iff both `n`
    /// and `d` are squares of integers.
    pub fn square_root(&self) -> Option<Rat> {
        if self.is_negative() {
            return None;
        }
        let n = int_sqrt(self.numer())?;
        let d = int_sqrt(self.denom())?;
        Some(Rat(BigRational::new_raw(n, d)))
    }
}

/// The exact square root of a nonnegative integer, when `n` is a perfect
/// square. Panics on negative input.
pub fn int_sqrt(n: &BigInt) -> Option<BigInt> {
    assert!(!n.is_negative(), "int_sqrt of a negative integer");
    let r = n.sqrt();
    if &r * &r == *n {
        Some(r)
    } else {
        None
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Rat {
        Rat(BigRational::from_integer(BigInt::from(n)))
    }
}

impl From<BigInt> for Rat {
    fn from(n: BigInt) -> Rat {
        Rat(BigRational::from_integer(n))
    }
}

impl PartialEq for Rat {
    fn eq(&self, other: &Rat) -> bool {
        self.0 == other.0
    }
}

impl Eq for Rat {}

impl PartialOrd for Rat {
    fn partial_cmp(&self, other: &Rat) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rat {
    fn cmp(&self, other: &Rat) -> std::cmp::Ordering {
        self.0.cmp(&other.0)
    }
}

impl Hash for Rat {
    fn hash<H: Hasher>(&self, state: &mut H) {
        // Sound because every Rat is in canonical lowest-terms form.
        self.numer().hash(state);
        self.denom().hash(state);
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

// Debug output reads like the text form; assertion failures stay legible.
impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rat {
    type Err = RatError;

    fn from_str(s: &str) -> Result<Rat, RatError> {
        let bad = || RatError::Malformed(s.to_string());
        let (num_s, den_s) = match s.split_once('/') {
            Some((n, d)) => (n, Some(d)),
            None => (s, None),
        };
        let num = parse_int(num_s, true).ok_or_else(bad)?;
        let den = match den_s {
            Some(d) => {
                let d = parse_int(d, false).ok_or_else(bad)?;
                if d.is_zero() {
                    return Err(RatError::ZeroDenominator);
                }
                d
            }
            None => BigInt::one(),
        };
        Ok(Rat(BigRational::new(num, den)))
    }
}

/// Strict integer token: optional leading minus (when allowed), then digits.
fn parse_int(s: &str, allow_sign: bool) -> Option<BigInt> {
    let digits = match s.strip_prefix('-') {
        Some(rest) if allow_sign => rest,
        Some(_) => return None,
        None => s,
    };
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

macro_rules! forward_binop {
    ($imp:ident, $method:ident) => {
        impl $imp<Rat> for Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat((self.0).$method(rhs.0))
            }
        }
        impl $imp<&Rat> for Rat {
            type Output = Rat;
            fn $method(self, rhs: &Rat) -> Rat {
                Rat((self.0).$method(&rhs.0))
            }
        }
        impl $imp<Rat> for &Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat((&self.0).$method(rhs.0))
            }
        }
        impl $imp<&Rat> for &Rat {
            type Output = Rat;
            fn $method(self, rhs: &Rat) -> Rat {
                Rat((&self.0).$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-&self.0)
    }
}

impl Zero for Rat {
    fn zero() -> Rat {
        Rat::zero()
    }
    fn is_zero(&self) -> bool {
        Rat::is_zero(self)
    }
}

impl One for Rat {
    fn one() -> Rat {
        Rat::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Rat {
        s.parse().unwrap()
    }

    #[test]
    fn canonical_form() {
        let q = Rat::new(BigInt::from(6), BigInt::from(-4)).unwrap();
        assert_eq!(q.numer(), &BigInt::from(-3));
        assert_eq!(q.denom(), &BigInt::from(2));
        let z = Rat::new(BigInt::from(0), BigInt::from(-7)).unwrap();
        assert_eq!((z.numer(), z.denom()), (&BigInt::from(0), &BigInt::from(1)));
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(
            Rat::new(BigInt::from(1), BigInt::from(0)),
            Err(RatError::ZeroDenominator)
        );
        assert_eq!("1/0".parse::<Rat>(), Err(RatError::ZeroDenominator));
    }

    #[test]
    fn parse_print_round_trip() {
        for s in ["0", "7", "-7", "3/4", "-3/4", "105/16", "777480/8288641"] {
            assert_eq!(r(s).to_string(), s);
        }
        // unreduced input prints reduced
        assert_eq!(r("6/4").to_string(), "3/2");
        assert_eq!(r("-0").to_string(), "0");
    }

    #[test]
    fn parse_rejects_junk() {
        for s in ["", "-", "1/", "/2", "1//2", "1/-2", "+1", "1.5", " 1", "1 ", "a"] {
            assert!(s.parse::<Rat>().is_err(), "accepted {s:?}");
        }
    }

    #[test]
    fn arithmetic() {
        assert_eq!(r("1/2") + r("1/3"), r("5/6"));
        assert_eq!(r("1/2") - r("1/3"), r("1/6"));
        assert_eq!(r("-3/4") * r("2/9"), r("-1/6"));
        assert_eq!(r("1/2") / r("-3/4"), r("-2/3"));
        assert_eq!(&r("1/2") + &r("1/2"), Rat::one());
        assert_eq!(-&r("5/7"), r("-5/7"));
        assert_eq!(r("2/3").pow(-2), r("9/4"));
        assert_eq!(r("-2/3").recip(), r("-3/2"));
    }

    #[test]
    fn square_root_exact_only() {
        assert_eq!(r("289/49").square_root(), Some(r("17/7")));
        assert_eq!(r("0").square_root(), Some(Rat::zero()));
        assert_eq!(r("2").square_root(), None);
        assert_eq!(r("-4").square_root(), None);
        assert_eq!(r("4/9").square_root(), Some(r("2/3")));
        assert_eq!(r("8/9").square_root(), None);
    }

    #[test]
    fn int_sqrt_values() {
        assert_eq!(int_sqrt(&BigInt::from(961)), Some(BigInt::from(31)));
        assert_eq!(int_sqrt(&BigInt::from(960)), None);
        assert_eq!(int_sqrt(&BigInt::from(0)), Some(BigInt::from(0)));
        let big = BigInt::from(10).pow(40) + 1;
        assert_eq!(int_sqrt(&(&big * &big)), Some(big));
    }

    #[test]
    #[should_panic(expected = "negative")]
    fn int_sqrt_negative_panics() {
        int_sqrt(&BigInt::from(-1));
    }

    #[test]
    fn ordering_and_hash_agree_with_value() {
        use std::collections::HashSet;
        assert!(r("1/3") < r("1/2"));
        assert!(r("-1/2") < r("-1/3"));
        let mut set = HashSet::new();
        set.insert(r("2/4"));
        assert!(set.contains(&r("1/2")));
    }
}
