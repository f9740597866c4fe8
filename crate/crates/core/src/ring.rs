//! Commutative rings with exact arithmetic.
//!
//! The palette is deliberately small: prime fields `GF(p)`, the field `GF(4)`
//! presented as `GF(2)[w]/(w^2 + w + 1)`, the rationals and the integers. All
//! values are immutable and every operation is a pure function.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::error::{AlgebraError, Result};

/// A commutative unital ring with decidable equality.
pub trait Ring:
    Clone
    + PartialEq
    + Eq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// Selector string used on the command line and in reports.
    const TAG: &'static str;
    /// Whether every nonzero element is invertible.
    const IS_FIELD: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn characteristic() -> u64;
    /// Image of an integer under the unique ring map from `Z`.
    fn from_i64(value: i64) -> Self;
    /// Multiplicative inverse, or a domain error for zero and non-units.
    fn try_inv(&self) -> Result<Self>;
    /// A random element; for infinite rings the values are kept small.
    fn sample<G: Rng + ?Sized>(rng: &mut G) -> Self;

    /// All elements, for finite rings.
    fn elements() -> Option<Vec<Self>> {
        None
    }

    fn is_zero(&self) -> bool {
        *self == Self::zero()
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    /// Fails with [`AlgebraError::NotAField`] unless the ring is a field.
    fn require_field() -> Result<()> {
        if Self::IS_FIELD {
            Ok(())
        } else {
            Err(AlgebraError::NotAField(Self::TAG))
        }
    }

    fn pow(&self, mut exp: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base.clone();
            }
            base = base.clone() * base;
            exp >>= 1;
        }
        acc
    }
}

/// `(-1)^k` as a ring element.
pub fn minus_one_pow<R: Ring>(k: u64) -> R {
    if k % 2 == 0 {
        R::one()
    } else {
        -R::one()
    }
}

const fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// The prime field `GF(P)`. Values are kept reduced in `0..P`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fp<const P: u32>(u32);

pub type Gf2 = Fp<2>;
pub type Gf3 = Fp<3>;
pub type Gf5 = Fp<5>;

impl<const P: u32> Fp<P> {
    const VALID: () = assert!(is_prime(P) && P < 65_536, "Fp modulus must be a small prime");

    pub fn new(value: i64) -> Self {
        #[allow(clippy::let_unit_value)]
        let () = Self::VALID;
        Fp(value.rem_euclid(P as i64) as u32)
    }

    pub fn value(self) -> u32 {
        self.0
    }
}

impl<const P: u32> fmt::Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u32> fmt::Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u32> Add for Fp<P> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let s = self.0 + rhs.0;
        Fp(if s >= P { s - P } else { s })
    }
}

impl<const P: u32> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Fp(if self.0 >= rhs.0 { self.0 - rhs.0 } else { self.0 + P - rhs.0 })
    }
}

impl<const P: u32> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Fp(if self.0 == 0 { 0 } else { P - self.0 })
    }
}

impl<const P: u32> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Fp(self.0 * rhs.0 % P)
    }
}

impl<const P: u32> Ring for Fp<P> {
    const TAG: &'static str = match P {
        2 => "gf2",
        3 => "gf3",
        5 => "gf5",
        _ => "gfp",
    };
    const IS_FIELD: bool = true;

    fn zero() -> Self {
        Fp::new(0)
    }
    fn one() -> Self {
        Fp::new(1)
    }
    fn characteristic() -> u64 {
        P as u64
    }
    fn from_i64(value: i64) -> Self {
        Fp::new(value)
    }
    fn try_inv(&self) -> Result<Self> {
        if self.0 == 0 {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(self.pow(P as u64 - 2))
    }
    fn sample<G: Rng + ?Sized>(rng: &mut G) -> Self {
        Fp::new(rng.gen_range(0..P) as i64)
    }
    fn elements() -> Option<Vec<Self>> {
        Some((0..P as i64).map(Fp::new).collect())
    }
}

/// `GF(4) = GF(2)[w]/(w^2 + w + 1)`; bit 0 is the constant coefficient and
/// bit 1 the coefficient of `w`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gf4(u8);

impl Gf4 {
    pub const ZERO: Gf4 = Gf4(0);
    pub const ONE: Gf4 = Gf4(1);
    /// The generator `w`, a root of `x^2 + x + 1`.
    pub const OMEGA: Gf4 = Gf4(2);
    pub const OMEGA_SQ: Gf4 = Gf4(3);

    /// The element `a + b w` for bits `a, b`.
    pub fn from_coefficients(a: bool, b: bool) -> Self {
        Gf4(a as u8 | (b as u8) << 1)
    }

    pub fn coefficients(self) -> (bool, bool) {
        (self.0 & 1 == 1, self.0 & 2 == 2)
    }
}

impl fmt::Debug for Gf4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Gf4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self.0 {
            0 => "0",
            1 => "1",
            2 => "w",
            _ => "w+1",
        })
    }
}

// addition in characteristic 2 is xor of the coefficient bits
impl Add for Gf4 {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: Self) -> Self {
        Gf4(self.0 ^ rhs.0)
    }
}

impl Sub for Gf4 {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn sub(self, rhs: Self) -> Self {
        Gf4(self.0 ^ rhs.0)
    }
}

impl Neg for Gf4 {
    type Output = Self;
    fn neg(self) -> Self {
        self
    }
}

impl Mul for Gf4 {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let (a, b) = (self.0 & 1, self.0 >> 1);
        let (c, d) = (rhs.0 & 1, rhs.0 >> 1);
        // (a + bw)(c + dw) = ac + bd + (ad + bc + bd) w, using w^2 = w + 1
        let constant = (a & c) ^ (b & d);
        let linear = (a & d) ^ (b & c) ^ (b & d);
        Gf4(constant | linear << 1)
    }
}

impl Ring for Gf4 {
    const TAG: &'static str = "gf4";
    const IS_FIELD: bool = true;

    fn zero() -> Self {
        Gf4::ZERO
    }
    fn one() -> Self {
        Gf4::ONE
    }
    fn characteristic() -> u64 {
        2
    }
    fn from_i64(value: i64) -> Self {
        Gf4((value.rem_euclid(2)) as u8)
    }
    fn try_inv(&self) -> Result<Self> {
        match self.0 {
            0 => Err(AlgebraError::DivisionByZero),
            1 => Ok(Gf4::ONE),
            2 => Ok(Gf4::OMEGA_SQ),
            _ => Ok(Gf4::OMEGA),
        }
    }
    fn sample<G: Rng + ?Sized>(rng: &mut G) -> Self {
        Gf4(rng.gen_range(0..4))
    }
    fn elements() -> Option<Vec<Self>> {
        Some((0..4).map(Gf4).collect())
    }
}

/// Exact rationals, always in lowest terms with a positive denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        Rational(BigRational::new(numer.into(), denom.into()))
    }

    pub fn as_big(&self) -> &BigRational {
        &self.0
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl Add for Rational {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Rational(self.0 + rhs.0)
    }
}

impl Sub for Rational {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Rational(self.0 - rhs.0)
    }
}

impl Neg for Rational {
    type Output = Self;
    fn neg(self) -> Self {
        Rational(-self.0)
    }
}

impl Mul for Rational {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Rational(self.0 * rhs.0)
    }
}

impl Ring for Rational {
    const TAG: &'static str = "q";
    const IS_FIELD: bool = true;

    fn zero() -> Self {
        Rational(BigRational::zero())
    }
    fn one() -> Self {
        Rational(BigRational::one())
    }
    fn characteristic() -> u64 {
        0
    }
    fn from_i64(value: i64) -> Self {
        Rational(BigRational::from_integer(value.into()))
    }
    fn try_inv(&self) -> Result<Self> {
        if self.0.is_zero() {
            Err(AlgebraError::DivisionByZero)
        } else {
            Ok(Rational(self.0.recip()))
        }
    }
    fn sample<G: Rng + ?Sized>(rng: &mut G) -> Self {
        Rational::new(rng.gen_range(-4..=4), rng.gen_range(1..=3))
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

/// Arbitrary-precision integers.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Integer(BigInt);

impl Integer {
    pub fn as_big(&self) -> &BigInt {
        &self.0
    }
}

impl From<BigInt> for Integer {
    fn from(value: BigInt) -> Self {
        Integer(value)
    }
}

impl fmt::Debug for Integer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Integer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Add for Integer {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Integer(self.0 + rhs.0)
    }
}

impl Sub for Integer {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Integer(self.0 - rhs.0)
    }
}

impl Neg for Integer {
    type Output = Self;
    fn neg(self) -> Self {
        Integer(-self.0)
    }
}

impl Mul for Integer {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Integer(self.0 * rhs.0)
    }
}

impl Ring for Integer {
    const TAG: &'static str = "z";
    const IS_FIELD: bool = false;

    fn zero() -> Self {
        Integer(BigInt::zero())
    }
    fn one() -> Self {
        Integer(BigInt::one())
    }
    fn characteristic() -> u64 {
        0
    }
    fn from_i64(value: i64) -> Self {
        Integer(value.into())
    }
    fn try_inv(&self) -> Result<Self> {
        if self.0.is_zero() {
            Err(AlgebraError::DivisionByZero)
        } else if self.0.abs().is_one() {
            Ok(self.clone())
        } else {
            Err(AlgebraError::NotAUnit(self.to_string()))
        }
    }
    fn sample<G: Rng + ?Sized>(rng: &mut G) -> Self {
        Integer::from_i64(rng.gen_range(-9..=9))
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

/// An explicit ring homomorphism, applied coefficientwise for base change.
pub trait RingHom<S: Ring, T: Ring> {
    fn apply(&self, x: &S) -> T;
}

/// The inclusion `GF(2) -> GF(4)`.
#[derive(Debug, Clone, Copy, Default)]
pub struct Gf2ToGf4;

impl RingHom<Gf2, Gf4> for Gf2ToGf4 {
    fn apply(&self, x: &Gf2) -> Gf4 {
        Gf4::from_coefficients(x.value() == 1, false)
    }
}

/// Reduction `Z -> GF(P)`.
#[derive(Debug, Clone, Copy, Default)]
pub struct ReduceModP<const P: u32>;

impl<const P: u32> RingHom<Integer, Fp<P>> for ReduceModP<P> {
    fn apply(&self, x: &Integer) -> Fp<P> {
        let r = x.0.mod_floor(&BigInt::from(P));
        Fp::new(r.to_i64().expect("residue fits in i64"))
    }
}

/// The inclusion `Z -> Q`.
#[derive(Debug, Clone, Copy, Default)]
pub struct IntegerToRational;

impl RingHom<Integer, Rational> for IntegerToRational {
    fn apply(&self, x: &Integer) -> Rational {
        Rational(BigRational::from_integer(x.0.clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exhaustive_axioms<R: Ring>() {
        let elems = R::elements().unwrap();
        for a in &elems {
            assert_eq!(a.clone() + R::zero(), *a);
            assert_eq!(a.clone() * R::one(), *a);
            assert_eq!(a.clone() + (-a.clone()), R::zero());
            for b in &elems {
                assert_eq!(a.clone() + b.clone(), b.clone() + a.clone());
                assert_eq!(a.clone() * b.clone(), b.clone() * a.clone());
                assert_eq!(a.clone() - b.clone(), a.clone() + (-b.clone()));
                for c in &elems {
                    assert_eq!(
                        (a.clone() + b.clone()) + c.clone(),
                        a.clone() + (b.clone() + c.clone())
                    );
                    assert_eq!(
                        (a.clone() * b.clone()) * c.clone(),
                        a.clone() * (b.clone() * c.clone())
                    );
                    assert_eq!(
                        a.clone() * (b.clone() + c.clone()),
                        a.clone() * b.clone() + a.clone() * c.clone()
                    );
                }
            }
            if !a.is_zero() {
                assert_eq!(a.clone() * a.try_inv().unwrap(), R::one());
            }
        }
    }

    #[test]
    fn finite_rings_satisfy_axioms() {
        exhaustive_axioms::<Gf2>();
        exhaustive_axioms::<Gf3>();
        exhaustive_axioms::<Gf5>();
        exhaustive_axioms::<Gf4>();
    }

    #[test]
    fn gf4_defining_relation() {
        let w = Gf4::OMEGA;
        assert_eq!(w * w, w + Gf4::ONE);
        assert_eq!(w + w * w, Gf4::ONE);
        assert_eq!(w * w * w, Gf4::ONE);
    }

    #[test]
    fn small_prime_arithmetic() {
        assert_eq!(Gf3::new(2) + Gf3::new(2), Gf3::new(1));
        assert_eq!(Gf5::new(3).try_inv().unwrap(), Gf5::new(2));
        assert_eq!(Gf3::new(-1), Gf3::new(2));
    }

    #[test]
    fn characteristics() {
        assert_eq!(Gf2::characteristic(), 2);
        assert_eq!(Gf4::characteristic(), 2);
        assert_eq!(Gf3::characteristic(), 3);
        assert_eq!(Gf5::characteristic(), 5);
        assert_eq!(Rational::characteristic(), 0);
        assert_eq!(Integer::characteristic(), 0);
    }

    #[test]
    fn inverting_zero_and_non_units_fails() {
        assert_eq!(Gf4::ZERO.try_inv(), Err(AlgebraError::DivisionByZero));
        assert_eq!(Rational::zero().try_inv(), Err(AlgebraError::DivisionByZero));
        assert!(matches!(Integer::from_i64(2).try_inv(), Err(AlgebraError::NotAUnit(_))));
        assert_eq!(Integer::from_i64(-1).try_inv().unwrap(), Integer::from_i64(-1));
    }

    #[test]
    fn rationals_are_normalized() {
        assert_eq!(Rational::new(2, -4), Rational::new(-1, 2));
        assert_eq!(Rational::new(2, -4).to_string(), "-1/2");
        assert_eq!(Rational::new(6, 3).to_string(), "2");
    }

    #[test]
    fn integers_do_not_wrap() {
        let big = Integer::from_i64(i64::MAX);
        let sq = big.clone() * big;
        assert!(sq > Integer::from_i64(i64::MAX));
    }

    #[test]
    fn morphisms_preserve_structure() {
        let f = Gf2ToGf4;
        let elems = Gf2::elements().unwrap();
        assert_eq!(f.apply(&Gf2::zero()), Gf4::zero());
        assert_eq!(f.apply(&Gf2::one()), Gf4::one());
        for a in &elems {
            for b in &elems {
                assert_eq!(f.apply(&(*a + *b)), f.apply(a) + f.apply(b));
                assert_eq!(f.apply(&(*a * *b)), f.apply(a) * f.apply(b));
            }
        }
        let g = ReduceModP::<5>;
        for a in -12..12 {
            for b in -12..12 {
                let (x, y) = (Integer::from_i64(a), Integer::from_i64(b));
                assert_eq!(g.apply(&(x.clone() + y.clone())), g.apply(&x) + g.apply(&y));
                assert_eq!(g.apply(&(x.clone() * y.clone())), g.apply(&x) * g.apply(&y));
            }
        }
        assert_eq!(g.apply(&Integer::one()), Gf5::one());
        let h = IntegerToRational;
        assert_eq!(h.apply(&Integer::from_i64(-7)), Rational::new(-7, 1));
    }
}
