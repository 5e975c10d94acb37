//! Exact coefficient fields: `F_p` for a prime `p`, and `Q` for characteristic 0.
//!
//! A [`Field`] is a small value describing the field; its elements are plain
//! `num-traits` scalars (`u64` residues or [`BigRational`]) and all arithmetic
//! goes through the field value so residues are always reduced.

use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub trait Field: Clone + Debug + PartialEq + Eq + Send + Sync {
    type Elem: Clone + PartialEq + Eq + Hash + Debug + Zero + One + Send + Sync;

    /// 0 for the rationals, otherwise the prime `p`.
    fn characteristic(&self) -> u64;

    fn from_int(&self, z: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;

    /// Canonical text form: a decimal residue, or `num/den` over the rationals.
    fn render(&self, a: &Self::Elem) -> String;

    fn zero(&self) -> Self::Elem {
        Self::Elem::zero()
    }

    fn one(&self) -> Self::Elem {
        Self::Elem::one()
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn from_u64(&self, z: u64) -> Self::Elem {
        match i64::try_from(z) {
            Ok(v) => self.from_int(v),
            Err(_) => {
                let hi = self.from_int((z >> 32) as i64);
                let shift = self.from_int(1i64 << 32);
                self.add(&self.mul(&hi, &shift), &self.from_int((z & 0xffff_ffff) as i64))
            }
        }
    }

    /// `a - c·b`, the elimination step.
    fn sub_scaled(&self, a: &Self::Elem, c: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.sub(a, &self.mul(c, b))
    }

    /// `acc += a·b`.
    fn add_mul_assign(&self, acc: &mut Self::Elem, a: &Self::Elem, b: &Self::Elem) {
        *acc = self.add(acc, &self.mul(a, b));
    }

    /// The `p | z` predicate; in characteristic 0 it holds only for `z = 0`.
    fn divides(&self, z: u64) -> bool {
        divides(self.characteristic(), z)
    }
}

/// `p | z`, with the characteristic-0 convention `0 | z ⟺ z = 0`.
pub fn divides(p: u64, z: u64) -> bool {
    if p == 0 {
        z == 0
    } else {
        z.is_multiple_of(p)
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut q = 2;
    while q * q <= p {
        if p.is_multiple_of(q) {
            return false;
        }
        q += 1;
    }
    true
}

/// A validated characteristic: 0 or a prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    p: u64,
}

impl FieldSpec {
    pub fn new(p: u64) -> Result<Self> {
        if p == 0 || (is_prime(p) && p < (1 << 32)) {
            Ok(FieldSpec { p })
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn divides(&self, z: u64) -> bool {
        divides(self.p, z)
    }
}

/// The prime field `F_p`, elements are residues in `[0, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if is_prime(p) && p < (1 << 32) {
            Ok(PrimeField { p })
        } else {
            Err(Error::NotPrime(p))
        }
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn characteristic(&self) -> u64 {
        self.p
    }

    fn from_int(&self, z: i64) -> u64 {
        z.rem_euclid(self.p as i64) as u64
    }

    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }

    #[inline]
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }

    fn inv(&self, a: &u64) -> Result<u64> {
        if *a == 0 {
            return Err(Error::DivisionByZero);
        }
        // a^(p-2) by square-and-multiply
        let (mut base, mut exp, mut acc) = (*a, self.p - 2, 1u64);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            exp >>= 1;
        }
        Ok(acc)
    }

    fn render(&self, a: &u64) -> String {
        a.to_string()
    }

    fn from_u64(&self, z: u64) -> u64 {
        z % self.p
    }
}

/// The rationals, elements are reduced arbitrary-precision fractions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn characteristic(&self) -> u64 {
        0
    }

    fn from_int(&self, z: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(z))
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn inv(&self, a: &BigRational) -> Result<BigRational> {
        if a.is_zero() {
            Err(Error::DivisionByZero)
        } else {
            Ok(a.recip())
        }
    }

    fn render(&self, a: &BigRational) -> String {
        format!("{}/{}", a.numer(), a.denom())
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }

    fn from_u64(&self, z: u64) -> BigRational {
        BigRational::from_integer(BigInt::from(z))
    }

    // integer entries dominate in practice, and skip the gcd
    fn sub_scaled(&self, a: &BigRational, c: &BigRational, b: &BigRational) -> BigRational {
        if a.is_integer() && b.is_integer() && c.is_integer() {
            BigRational::from_integer(a.numer() - c.numer() * b.numer())
        } else {
            a - c * b
        }
    }

    fn add_mul_assign(&self, acc: &mut BigRational, a: &BigRational, b: &BigRational) {
        if acc.is_integer() && a.is_integer() && b.is_integer() {
            *acc = BigRational::from_integer(acc.numer() + a.numer() * b.numer());
        } else {
            *acc += a * b;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn from_int_examples() {
        assert_eq!(PrimeField::new(2).unwrap().from_int(2), 0);
        assert_eq!(PrimeField::new(3).unwrap().from_int(-1), 2);
        assert_eq!(Rationals.from_int(2), Rationals.from_u64(2));
        assert_eq!(Rationals.render(&Rationals.from_int(2)), "2/1");
    }

    #[test]
    fn arithmetic_examples() {
        let f3 = PrimeField::new(3).unwrap();
        assert_eq!(f3.inv(&2).unwrap(), 2);
        let f5 = PrimeField::new(5).unwrap();
        assert_eq!(f5.mul(&2, &3), 1);
        for a in 0..5 {
            assert_eq!(f5.add(&a, &f5.neg(&a)), 0);
        }
        assert_eq!(f5.inv(&0), Err(Error::DivisionByZero));
        assert_eq!(Rationals.inv(&Rationals.zero()), Err(Error::DivisionByZero));
        let half = Rationals.inv(&Rationals.from_int(2)).unwrap();
        assert_eq!(Rationals.render(&half), "1/2");
        assert_eq!(Rationals.render(&Rationals.neg(&half)), "-1/2");
    }

    #[test]
    fn divides_examples() {
        assert!(divides(2, 2));
        assert!(!divides(0, 2));
        assert!(divides(0, 0));
        assert!(!divides(3, 2));
        assert!(FieldSpec::new(3).unwrap().divides(9));
    }

    #[test]
    fn spec_validation() {
        assert!(FieldSpec::new(0).is_ok());
        assert!(FieldSpec::new(7).is_ok());
        assert_eq!(FieldSpec::new(1), Err(Error::NotPrime(1)));
        assert_eq!(FieldSpec::new(9), Err(Error::NotPrime(9)));
        assert!(PrimeField::new(0).is_err());
    }

    #[test]
    fn large_u64_lift() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.from_u64(u64::MAX), u64::MAX % 7);
        assert_eq!(Field::from_u64(&f, 1 << 40), (1u64 << 40) % 7);
    }

    fn prime() -> impl Strategy<Value = u64> {
        prop::sample::select(vec![2u64, 3, 5, 7, 11, 13, 101, 65521])
    }

    proptest! {
        #[test]
        fn prime_field_axioms(p in prime(), a in any::<i64>(), b in any::<i64>(), c in any::<i64>()) {
            let f = PrimeField::new(p).unwrap();
            let (a, b, c) = (f.from_int(a), f.from_int(b), f.from_int(c));
            prop_assert_eq!(f.add(&f.add(&a, &b), &c), f.add(&a, &f.add(&b, &c)));
            prop_assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
            prop_assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
            prop_assert_eq!(f.add(&a, &f.neg(&a)), 0);
            if a != 0 {
                prop_assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), 1);
            }
        }

        #[test]
        fn from_int_is_ring_homomorphism(p in prime(), a in -1_000_000i64..1_000_000, b in -1_000_000i64..1_000_000) {
            let f = PrimeField::new(p).unwrap();
            prop_assert_eq!(f.from_int(a + b), f.add(&f.from_int(a), &f.from_int(b)));
            prop_assert_eq!(f.from_int(a * b), f.mul(&f.from_int(a), &f.from_int(b)));
            let q = Rationals;
            prop_assert_eq!(q.from_int(a * b), q.mul(&q.from_int(a), &q.from_int(b)));
        }

        #[test]
        fn rational_field_axioms(an in -50i64..50, ad in 1i64..50, bn in -50i64..50, bd in 1i64..50) {
            let q = Rationals;
            let a = q.mul(&q.from_int(an), &q.inv(&q.from_int(ad)).unwrap());
            let b = q.mul(&q.from_int(bn), &q.inv(&q.from_int(bd)).unwrap());
            prop_assert_eq!(q.add(&a, &q.neg(&a)), q.zero());
            prop_assert_eq!(q.mul(&q.add(&a, &b), &b), q.add(&q.mul(&a, &b), &q.mul(&b, &b)));
            if !a.is_zero() {
                prop_assert_eq!(q.mul(&a, &q.inv(&a).unwrap()), q.one());
            }
        }
    }
}
