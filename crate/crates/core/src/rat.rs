//! Exact rational scalar used by every geometric certificate.
//!
//! The fast path keeps numerator and denominator in `i128`; any overflow
//! promotes the value to a `BigRational`, and results that fit shrink back so
//! that equality and hashing see one canonical representation. All values are
//! kept reduced with a positive denominator.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Signed, ToPrimitive, Zero as NumZero};
use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};

#[derive(Clone, Debug)]
pub enum Rat {
    /// Reduced fraction with positive denominator.
    Small(i128, i128),
    /// Overflow fallback, also reduced with positive denominator.
    Big(Box<BigRational>),
}

fn gcd128(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn make_small(num: i128, den: i128) -> Rat {
    debug_assert!(den != 0, "zero denominator");
    let (mut num, mut den) = if den < 0 { (-num, -den) } else { (num, den) };
    if num == 0 {
        return Rat::Small(0, 1);
    }
    let g = gcd128(num, den);
    num /= g;
    den /= g;
    Rat::Small(num, den)
}

fn shrink(big: BigRational) -> Rat {
    if let (Some(n), Some(d)) = (big.numer().to_i128(), big.denom().to_i128()) {
        Rat::Small(n, d)
    } else {
        Rat::Big(Box::new(big))
    }
}

impl Rat {
    pub fn zero() -> Self {
        Rat::Small(0, 1)
    }

    pub fn one() -> Self {
        Rat::Small(1, 1)
    }

    pub fn from_int(n: i64) -> Self {
        Rat::Small(n as i128, 1)
    }

    pub fn from_i128(n: i128) -> Self {
        Rat::Small(n, 1)
    }

    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        make_small(num as i128, den as i128)
    }

    /// Exact conversion of a finite `f64` (every finite float is rational).
    pub fn from_f64_exact(x: f64) -> Option<Self> {
        BigRational::from_float(x).map(shrink)
    }

    fn to_big(&self) -> BigRational {
        match self {
            Rat::Small(n, d) => BigRational::new(BigInt::from(*n), BigInt::from(*d)),
            Rat::Big(b) => (**b).clone(),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Rat::Small(n, d) => *n as f64 / *d as f64,
            Rat::Big(b) => b.to_f64().unwrap_or(f64::NAN),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Rat::Small(n, _) => *n == 0,
            Rat::Big(b) => b.is_zero(),
        }
    }

    pub fn is_positive(&self) -> bool {
        match self {
            Rat::Small(n, _) => *n > 0,
            Rat::Big(b) => b.is_positive(),
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Rat::Small(n, _) => *n < 0,
            Rat::Big(b) => b.is_negative(),
        }
    }

    pub fn signum(&self) -> i32 {
        if self.is_zero() {
            0
        } else if self.is_positive() {
            1
        } else {
            -1
        }
    }

    pub fn abs(&self) -> Rat {
        if self.is_negative() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    pub fn recip(&self) -> Rat {
        assert!(!self.is_zero(), "reciprocal of zero");
        match self {
            Rat::Small(n, d) => make_small(*d, *n),
            Rat::Big(b) => shrink(b.recip()),
        }
    }

    /// Numerator and denominator as `i128` when the value fits the fast path.
    pub fn as_small(&self) -> Option<(i128, i128)> {
        match self {
            Rat::Small(n, d) => Some((*n, *d)),
            Rat::Big(_) => None,
        }
    }

    fn add_impl(&self, rhs: &Rat) -> Rat {
        if let (Rat::Small(an, ad), Rat::Small(bn, bd)) = (self, rhs) {
            // a/b + c/d = (a*d + c*b) / (b*d), reduced via gcd of denominators first.
            let g = gcd128(*ad, *bd);
            let (ad_r, bd_r) = (ad / g, bd / g);
            let num = an
                .checked_mul(bd_r)
                .and_then(|x| bn.checked_mul(ad_r).and_then(|y| x.checked_add(y)));
            let den = ad_r.checked_mul(*bd);
            if let (Some(num), Some(den)) = (num, den) {
                return make_small(num, den);
            }
        }
        shrink(self.to_big() + rhs.to_big())
    }

    fn sub_impl(&self, rhs: &Rat) -> Rat {
        if let (Rat::Small(an, ad), Rat::Small(bn, bd)) = (self, rhs) {
            let g = gcd128(*ad, *bd);
            let (ad_r, bd_r) = (ad / g, bd / g);
            let num = an
                .checked_mul(bd_r)
                .and_then(|x| bn.checked_mul(ad_r).and_then(|y| x.checked_sub(y)));
            let den = ad_r.checked_mul(*bd);
            if let (Some(num), Some(den)) = (num, den) {
                return make_small(num, den);
            }
        }
        shrink(self.to_big() - rhs.to_big())
    }

    fn mul_impl(&self, rhs: &Rat) -> Rat {
        if let (Rat::Small(an, ad), Rat::Small(bn, bd)) = (self, rhs) {
            // Cross-reduce before multiplying to keep intermediates small.
            let g1 = gcd128(*an, *bd);
            let g2 = gcd128(*bn, *ad);
            let num = (an / g1).checked_mul(bn / g2);
            let den = (ad / g2).checked_mul(bd / g1);
            if let (Some(num), Some(den)) = (num, den) {
                return make_small(num, den);
            }
        }
        shrink(self.to_big() * rhs.to_big())
    }

    fn div_impl(&self, rhs: &Rat) -> Rat {
        assert!(!rhs.is_zero(), "division by zero");
        self.mul_impl(&rhs.recip())
    }
}

impl Default for Rat {
    fn default() -> Self {
        Rat::zero()
    }
}

impl PartialEq for Rat {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Rat::Small(an, ad), Rat::Small(bn, bd)) => an == bn && ad == bd,
            // Canonical form guarantees Big never overlaps Small.
            (Rat::Small(..), Rat::Big(_)) | (Rat::Big(_), Rat::Small(..)) => false,
            (Rat::Big(a), Rat::Big(b)) => a == b,
        }
    }
}

impl Eq for Rat {}

impl Hash for Rat {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match self {
            Rat::Small(n, d) => {
                0u8.hash(state);
                n.hash(state);
                d.hash(state);
            }
            Rat::Big(b) => {
                1u8.hash(state);
                b.numer().hash(state);
                b.denom().hash(state);
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
        if let (Rat::Small(an, ad), Rat::Small(bn, bd)) = (self, other) {
            if let (Some(l), Some(r)) = (an.checked_mul(*bd), bn.checked_mul(*ad)) {
                return l.cmp(&r);
            }
        }
        self.to_big().cmp(&other.to_big())
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $impl_fn:ident) => {
        impl $trait for Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                self.$impl_fn(&rhs)
            }
        }
        impl<'a> $trait<&'a Rat> for Rat {
            type Output = Rat;
            fn $method(self, rhs: &'a Rat) -> Rat {
                self.$impl_fn(rhs)
            }
        }
        impl<'a> $trait<Rat> for &'a Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                self.$impl_fn(&rhs)
            }
        }
        impl<'a, 'b> $trait<&'b Rat> for &'a Rat {
            type Output = Rat;
            fn $method(self, rhs: &'b Rat) -> Rat {
                self.$impl_fn(rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_impl);
forward_binop!(Sub, sub, sub_impl);
forward_binop!(Mul, mul, mul_impl);
forward_binop!(Div, div, div_impl);

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        match self {
            Rat::Small(n, d) => Rat::Small(-n, d),
            Rat::Big(b) => Rat::Big(Box::new(-*b)),
        }
    }
}

impl<'a> Neg for &'a Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        -self.clone()
    }
}

impl AddAssign<&Rat> for Rat {
    fn add_assign(&mut self, rhs: &Rat) {
        *self = self.add_impl(rhs);
    }
}

impl SubAssign<&Rat> for Rat {
    fn sub_assign(&mut self, rhs: &Rat) {
        *self = self.sub_impl(rhs);
    }
}

impl MulAssign<&Rat> for Rat {
    fn mul_assign(&mut self, rhs: &Rat) {
        *self = self.mul_impl(rhs);
    }
}

impl DivAssign<&Rat> for Rat {
    fn div_assign(&mut self, rhs: &Rat) {
        *self = self.div_impl(rhs);
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Self {
        Rat::from_int(n)
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rat::Small(n, 1) => write!(f, "{}", n),
            Rat::Small(n, d) => write!(f, "{}/{}", n, d),
            Rat::Big(b) => write!(f, "{}", b),
        }
    }
}

impl serde::Serialize for Rat {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

/// Dot product of two equally sized slices.
pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = Rat::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += &(x * y);
        }
    }
    acc
}

/// Scales a rational vector to a primitive integer vector (gcd 1,
/// orientation preserved). Returns the integer entries.
pub fn to_primitive_integer(v: &[Rat]) -> Vec<BigInt> {
    use num::Integer;
    let big: Vec<BigRational> = v.iter().map(|x| x.to_big()).collect();
    let mut lcm = BigInt::from(1);
    for x in &big {
        lcm = lcm.lcm(x.denom());
    }
    let mut ints: Vec<BigInt> = big.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let mut g = BigInt::from(0);
    for x in &ints {
        g = g.gcd(x);
    }
    if !g.is_zero() && g != BigInt::from(1) {
        for x in &mut ints {
            *x /= &g;
        }
    }
    ints
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_stays_reduced() {
        let a = Rat::new(2, 4);
        assert_eq!(a, Rat::new(1, 2));
        let b = Rat::new(1, 3);
        assert_eq!(&a + &b, Rat::new(5, 6));
        assert_eq!(&a - &b, Rat::new(1, 6));
        assert_eq!(&a * &b, Rat::new(1, 6));
        assert_eq!(&a / &b, Rat::new(3, 2));
        assert_eq!(-(Rat::new(-3, -6)), Rat::new(-1, 2));
    }

    #[test]
    fn overflow_promotes_and_shrinks_back() {
        let huge = Rat::Small(i128::MAX, 1);
        let sum = &huge + &huge;
        assert!(matches!(sum, Rat::Big(_)));
        let back = &sum - &huge;
        assert_eq!(back, huge);
        assert!(matches!(back, Rat::Small(..)));
    }

    #[test]
    fn ordering_is_exact() {
        assert!(Rat::new(1, 3) < Rat::new(34, 100));
        assert!(Rat::new(-1, 2) < Rat::zero());
        let big = &Rat::Small(i128::MAX, 3) * &Rat::Small(7, 1);
        let bigger = &big + &Rat::new(1, 1000000);
        assert!(big < bigger);
    }

    #[test]
    fn f64_round_trip_is_exact() {
        let x = Rat::from_f64_exact(0.1).unwrap();
        // 0.1 is not exactly 1/10 in binary; the conversion must preserve the bits.
        assert_eq!(x.to_f64(), 0.1);
        assert_ne!(x, Rat::new(1, 10));
    }

    #[test]
    fn primitive_scaling() {
        let v = vec![Rat::new(1, 2), Rat::new(-3, 4), Rat::zero()];
        let ints = to_primitive_integer(&v);
        let expect: Vec<BigInt> = vec![2.into(), (-3).into(), 0.into()];
        assert_eq!(ints, expect);
    }
}
