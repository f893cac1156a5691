//! Exact arithmetic over the rationals, odd prime fields GF(p), and quadratic
//! extension towers K(√d).
//!
//! Algebraic closures are never materialized: every root computation in this
//! crate is a binary quadratic, so one quadratic extension of the current field
//! always suffices, and comparing points from two different extensions goes
//! through a tower.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand_core::RngCore;

use crate::error::{Error, Result};

/// A supported coefficient field: ℚ, GF(p) with p an odd prime, or a quadratic
/// extension K(√d) of another supported field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldDescriptor {
    Rationals,
    PrimeField(u64),
    QuadExt {
        base: Box<FieldDescriptor>,
        d: Scalar,
    },
}

/// An exact field element. Every scalar knows which field it lives in.
#[derive(Debug, Clone)]
pub enum Scalar {
    Rat(BigRational),
    Mod { value: u64, p: u64 },
    Ext(Box<ExtScalar>),
}

/// `re + im·√d`, with `re`, `im`, `d` all in the base field.
#[derive(Debug, Clone)]
pub struct ExtScalar {
    pub re: Scalar,
    pub im: Scalar,
    pub d: Scalar,
}

fn is_odd_prime(p: u64) -> bool {
    if p < 3 || p % 2 == 0 {
        return false;
    }
    let mut k = 3;
    while k * k <= p {
        if p % k == 0 {
            return false;
        }
        k += 2;
    }
    true
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc: u64 = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = ((acc as u128 * base as u128) % p as u128) as u64;
        }
        base = ((base as u128 * base as u128) % p as u128) as u64;
        exp >>= 1;
    }
    acc
}

impl FieldDescriptor {
    pub fn rationals() -> Self {
        FieldDescriptor::Rationals
    }

    /// GF(p). Rejects p = 2 (characteristic 2 is excluded throughout) and
    /// non-primes.
    pub fn prime(p: u64) -> Result<Self> {
        if p == 2 {
            return Err(Error::CharacteristicTwo);
        }
        if !is_odd_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(FieldDescriptor::PrimeField(p))
    }

    /// Adjoin √d to `self`. Fails when d = 0, d is not an element of `self`,
    /// or d already has a square root here.
    pub fn extend_with_sqrt(&self, d: &Scalar) -> Result<FieldDescriptor> {
        if d.field() != *self {
            return Err(Error::FieldMismatch);
        }
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if d.sqrt_in_field().is_some() {
            return Err(Error::AlreadySquare);
        }
        Ok(FieldDescriptor::QuadExt {
            base: Box::new(self.clone()),
            d: d.clone(),
        })
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            FieldDescriptor::Rationals => Scalar::Rat(BigRational::from_integer(BigInt::from(n))),
            FieldDescriptor::PrimeField(p) => {
                let r = n.rem_euclid(*p as i64) as u64;
                Scalar::Mod { value: r, p: *p }
            }
            FieldDescriptor::QuadExt { base, d } => Scalar::Ext(Box::new(ExtScalar {
                re: base.from_i64(n),
                im: base.zero(),
                d: d.clone(),
            })),
        }
    }

    /// Exact fraction n/m in this field (m must be invertible).
    pub fn fraction(&self, n: i64, m: i64) -> Result<Scalar> {
        self.from_i64(n).checked_div(&self.from_i64(m))
    }

    /// Number of elements, for finite fields.
    pub fn order(&self) -> Option<u64> {
        match self {
            FieldDescriptor::Rationals => None,
            FieldDescriptor::PrimeField(p) => Some(*p),
            FieldDescriptor::QuadExt { base, .. } => base.order().map(|n| n * n),
        }
    }

    /// All elements of a finite field, in a deterministic order.
    pub fn elements(&self) -> Option<Vec<Scalar>> {
        match self {
            FieldDescriptor::Rationals => None,
            FieldDescriptor::PrimeField(p) => {
                Some((0..*p).map(|v| Scalar::Mod { value: v, p: *p }).collect())
            }
            FieldDescriptor::QuadExt { base, d } => {
                let elems = base.elements()?;
                let mut out = Vec::with_capacity(elems.len() * elems.len());
                for re in &elems {
                    for im in &elems {
                        out.push(Scalar::Ext(Box::new(ExtScalar {
                            re: re.clone(),
                            im: im.clone(),
                            d: d.clone(),
                        })));
                    }
                }
                Some(out)
            }
        }
    }

    /// Uniform element of a finite field; small random fraction over ℚ.
    pub fn random<R: RngCore + ?Sized>(&self, rng: &mut R) -> Scalar {
        match self {
            FieldDescriptor::Rationals => {
                let n = (rng.next_u64() % 19) as i64 - 9;
                let m = (rng.next_u64() % 9) as i64 + 1;
                self.fraction(n, m).expect("denominator nonzero")
            }
            FieldDescriptor::PrimeField(p) => {
                // p is desk-scale, so the modulo bias is negligible but we
                // reject to keep reports field-size independent.
                let bound = u64::MAX - u64::MAX % p;
                loop {
                    let r = rng.next_u64();
                    if r < bound {
                        return Scalar::Mod { value: r % p, p: *p };
                    }
                }
            }
            FieldDescriptor::QuadExt { base, d } => Scalar::Ext(Box::new(ExtScalar {
                re: base.random(rng),
                im: base.random(rng),
                d: d.clone(),
            })),
        }
    }

    /// True when `self` appears as a layer in the tower `other`.
    pub fn is_subfield_of(&self, other: &FieldDescriptor) -> bool {
        let mut cur = other;
        loop {
            if self == cur {
                return true;
            }
            match cur {
                FieldDescriptor::QuadExt { base, .. } => cur = base,
                _ => return false,
            }
        }
    }

    pub fn name(&self) -> String {
        match self {
            FieldDescriptor::Rationals => String::from("Q"),
            FieldDescriptor::PrimeField(p) => format!("GF({p})"),
            FieldDescriptor::QuadExt { base, d } => format!("{}(sqrt({}))", base.name(), d),
        }
    }
}

impl Scalar {
    pub fn field(&self) -> FieldDescriptor {
        match self {
            Scalar::Rat(_) => FieldDescriptor::Rationals,
            Scalar::Mod { p, .. } => FieldDescriptor::PrimeField(*p),
            Scalar::Ext(e) => FieldDescriptor::QuadExt {
                base: Box::new(e.re.field()),
                d: e.d.clone(),
            },
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Mod { value, .. } => *value == 0,
            Scalar::Ext(e) => e.re.is_zero() && e.im.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Mod { value, .. } => *value == 1,
            Scalar::Ext(e) => e.re.is_one() && e.im.is_zero(),
        }
    }

    fn structural_eq(&self, other: &Scalar) -> bool {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => a == b,
            (Scalar::Mod { value: a, p }, Scalar::Mod { value: b, p: q }) => p == q && a == b,
            (Scalar::Ext(a), Scalar::Ext(b)) => {
                a.d.structural_eq(&b.d) && a.re.structural_eq(&b.re) && a.im.structural_eq(&b.im)
            }
            _ => false,
        }
    }

    /// Embed `self` into a tower that contains its field as a layer.
    pub fn embed_into(&self, target: &FieldDescriptor) -> Result<Scalar> {
        let own = self.field();
        if own == *target {
            return Ok(self.clone());
        }
        match target {
            FieldDescriptor::QuadExt { base, d } => {
                if own.is_subfield_of(base) {
                    Ok(Scalar::Ext(Box::new(ExtScalar {
                        re: self.embed_into(base)?,
                        im: base.zero(),
                        d: d.clone(),
                    })))
                } else {
                    Err(Error::FieldMismatch)
                }
            }
            _ => Err(Error::FieldMismatch),
        }
    }

    /// Bring two scalars into a common field (one must live in a layer of the
    /// other's tower).
    pub fn unify(&self, other: &Scalar) -> Result<(Scalar, Scalar)> {
        let fa = self.field();
        let fb = other.field();
        if fa == fb {
            Ok((self.clone(), other.clone()))
        } else if fa.is_subfield_of(&fb) {
            Ok((self.embed_into(&fb)?, other.clone()))
        } else if fb.is_subfield_of(&fa) {
            Ok((self.clone(), other.embed_into(&fa)?))
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar> {
        let (a, b) = self.unify(other)?;
        Ok(match (a, b) {
            (Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x + y),
            (Scalar::Mod { value: x, p }, Scalar::Mod { value: y, .. }) => Scalar::Mod {
                value: (x + y) % p,
                p,
            },
            (Scalar::Ext(x), Scalar::Ext(y)) => Scalar::Ext(Box::new(ExtScalar {
                re: x.re.checked_add(&y.re)?,
                im: x.im.checked_add(&y.im)?,
                d: x.d.clone(),
            })),
            _ => unreachable!("unify returns matching representations"),
        })
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.checked_add(&other.neg_val())
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar> {
        let (a, b) = self.unify(other)?;
        Ok(match (a, b) {
            (Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x * y),
            (Scalar::Mod { value: x, p }, Scalar::Mod { value: y, .. }) => Scalar::Mod {
                value: ((x as u128 * y as u128) % p as u128) as u64,
                p,
            },
            (Scalar::Ext(x), Scalar::Ext(y)) => {
                // (a + b√d)(a' + b'√d) = aa' + bb'd + (ab' + a'b)√d
                let re = x
                    .re
                    .checked_mul(&y.re)?
                    .checked_add(&x.im.checked_mul(&y.im)?.checked_mul(&x.d)?)?;
                let im = x.re.checked_mul(&y.im)?.checked_add(&x.im.checked_mul(&y.re)?)?;
                Scalar::Ext(Box::new(ExtScalar { re, im, d: x.d.clone() }))
            }
            _ => unreachable!("unify returns matching representations"),
        })
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar> {
        self.checked_mul(&other.checked_inv()?)
    }

    pub fn checked_inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rat(r) => Scalar::Rat(r.recip()),
            Scalar::Mod { value, p } => Scalar::Mod {
                value: pow_mod(*value, p - 2, *p),
                p: *p,
            },
            Scalar::Ext(e) => {
                // 1/(a + b√d) = (a − b√d)/(a² − b²d); the norm is nonzero
                // because d is a non-square in the base.
                let norm = e
                    .re
                    .checked_mul(&e.re)?
                    .checked_sub(&e.im.checked_mul(&e.im)?.checked_mul(&e.d)?)?;
                let ninv = norm.checked_inv()?;
                Scalar::Ext(Box::new(ExtScalar {
                    re: e.re.checked_mul(&ninv)?,
                    im: e.im.neg_val().checked_mul(&ninv)?,
                    d: e.d.clone(),
                }))
            }
        })
    }

    pub fn neg_val(&self) -> Scalar {
        match self {
            Scalar::Rat(r) => Scalar::Rat(-r.clone()),
            Scalar::Mod { value, p } => Scalar::Mod {
                value: (p - value) % p,
                p: *p,
            },
            Scalar::Ext(e) => Scalar::Ext(Box::new(ExtScalar {
                re: e.re.neg_val(),
                im: e.im.neg_val(),
                d: e.d.clone(),
            })),
        }
    }

    pub fn checked_eq(&self, other: &Scalar) -> Result<bool> {
        let (a, b) = self.unify(other)?;
        Ok(a.structural_eq(&b))
    }

    /// Canonical representative among {x, −x}: positive over ℚ, the smaller
    /// residue over GF(p), first nonzero coordinate canonical in the base for
    /// extensions.
    pub fn is_canonical_positive(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_positive(),
            Scalar::Mod { value, p } => *value != 0 && 2 * value < *p,
            Scalar::Ext(e) => {
                if !e.re.is_zero() {
                    e.re.is_canonical_positive()
                } else {
                    e.im.is_canonical_positive()
                }
            }
        }
    }

    fn canonical_root(r: Scalar) -> Scalar {
        if r.is_zero() || r.is_canonical_positive() {
            r
        } else {
            r.neg_val()
        }
    }

    /// The canonical square root of `self` in its own field, if one exists.
    pub fn sqrt_in_field(&self) -> Option<Scalar> {
        match self {
            Scalar::Rat(r) => {
                if r.is_negative() {
                    return None;
                }
                let num = r.numer().magnitude();
                let den = r.denom().magnitude();
                let sn = num.sqrt();
                let sd = den.sqrt();
                if &(&sn * &sn) == num && &(&sd * &sd) == den {
                    Some(Scalar::Rat(BigRational::new(
                        BigInt::from(sn),
                        BigInt::from(sd),
                    )))
                } else {
                    None
                }
            }
            Scalar::Mod { value, p } => {
                // Exhaustive search; the first hit r ≤ p/2 is the canonical one.
                let mut r = 0u64;
                while 2 * r <= *p {
                    if ((r as u128 * r as u128) % *p as u128) as u64 == *value {
                        return Some(Scalar::Mod { value: r, p: *p });
                    }
                    r += 1;
                }
                None
            }
            Scalar::Ext(e) => {
                let base_field = e.re.field();
                if self.is_zero() {
                    return Some(base_field.zero().embed_into(&self.field()).ok()?);
                }
                let make = |re: Scalar, im: Scalar| {
                    Scalar::Ext(Box::new(ExtScalar { re, im, d: e.d.clone() }))
                };
                if e.im.is_zero() {
                    // (u)² = re, or (v√d)² = v²d = re.
                    if let Some(u) = e.re.sqrt_in_field() {
                        return Some(Self::canonical_root(make(u, base_field.zero())));
                    }
                    let q = e.re.checked_div(&e.d).ok()?;
                    if let Some(v) = q.sqrt_in_field() {
                        return Some(Self::canonical_root(make(base_field.zero(), v)));
                    }
                    return None;
                }
                // (u + v√d)² = re + im√d forces u² = (re ± t)/2 with
                // t² = re² − d·im², and then v = im/(2u).
                let n = e
                    .re
                    .checked_mul(&e.re)
                    .ok()?
                    .checked_sub(&e.im.checked_mul(&e.im).ok()?.checked_mul(&e.d).ok()?)
                    .ok()?;
                let t = n.sqrt_in_field()?;
                let two = base_field.from_i64(2);
                for cand in [
                    e.re.checked_add(&t).ok()?.checked_div(&two).ok()?,
                    e.re.checked_sub(&t).ok()?.checked_div(&two).ok()?,
                ] {
                    if let Some(u) = cand.sqrt_in_field() {
                        if !u.is_zero() {
                            let v = e.im.checked_div(&two.checked_mul(&u).ok()?).ok()?;
                            return Some(Self::canonical_root(make(u, v)));
                        }
                    }
                }
                None
            }
        }
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        self.checked_eq(other).unwrap_or(false)
    }
}
impl Eq for Scalar {}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Mod { value, .. } => write!(f, "{value}"),
            Scalar::Ext(e) => write!(f, "{}+{}*sqrt({})", e.re, e.im, e.d),
        }
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.$checked(rhs).expect("field operation failed")
            }
        }
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);
binop!(Div, div, checked_div);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_val()
    }
}
impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_val()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn rational_arithmetic() {
        let q = FieldDescriptor::rationals();
        let half = q.fraction(1, 2).unwrap();
        let third = q.fraction(1, 3).unwrap();
        assert_eq!(&half + &third, q.fraction(5, 6).unwrap());
    }

    #[test]
    fn gf7_inverse() {
        let f = FieldDescriptor::prime(7).unwrap();
        let three = f.from_i64(3);
        assert_eq!(three.checked_inv().unwrap(), f.from_i64(5));
    }

    #[test]
    fn char_two_rejected() {
        assert_eq!(FieldDescriptor::prime(2), Err(Error::CharacteristicTwo));
        assert_eq!(FieldDescriptor::prime(9), Err(Error::NotPrime(9)));
    }

    #[test]
    fn defining_relation_of_extension() {
        let q = FieldDescriptor::rationals();
        let ext = q.extend_with_sqrt(&q.from_i64(-1)).unwrap();
        let i = q.from_i64(-1).embed_into(&ext).unwrap().sqrt_in_field();
        // sqrt(-1) exists in Q(sqrt(-1)) and squares back to -1
        let i = i.unwrap();
        assert_eq!(&i * &i, q.from_i64(-1).embed_into(&ext).unwrap());
    }

    #[test]
    fn sqrt_rational() {
        let q = FieldDescriptor::rationals();
        assert_eq!(
            q.fraction(9, 4).unwrap().sqrt_in_field(),
            Some(q.fraction(3, 2).unwrap())
        );
        assert_eq!(q.from_i64(2).sqrt_in_field(), None);
        assert_eq!(q.from_i64(-4).sqrt_in_field(), None);
    }

    #[test]
    fn sqrt_gf7_matches_euler_criterion() {
        let f = FieldDescriptor::prime(7).unwrap();
        assert_eq!(f.from_i64(3).sqrt_in_field(), None);
        let squares: vec::Vec<u64> = (0..7u64).map(|r| r * r % 7).collect();
        for x in 0..7u64 {
            let s = f.from_i64(x as i64).sqrt_in_field();
            assert_eq!(s.is_some(), squares.contains(&x));
            if let Some(r) = s {
                assert_eq!(&r * &r, f.from_i64(x as i64));
            }
        }
    }

    #[test]
    fn extend_gf3_with_nonresidue() {
        let f = FieldDescriptor::prime(3).unwrap();
        // 2 is a non-residue mod 3 (squares are {0, 1})
        let ext = f.extend_with_sqrt(&f.from_i64(2)).unwrap();
        assert_eq!(ext.order(), Some(9));
        let r = f.from_i64(2).embed_into(&ext).unwrap().sqrt_in_field().unwrap();
        assert_eq!(&r * &r, f.from_i64(2).embed_into(&ext).unwrap());
    }

    #[test]
    fn extend_with_square_rejected() {
        let q = FieldDescriptor::rationals();
        assert_eq!(q.extend_with_sqrt(&q.from_i64(4)), Err(Error::AlreadySquare));
    }

    #[test]
    fn cross_field_is_error() {
        let q = FieldDescriptor::rationals();
        let f = FieldDescriptor::prime(5).unwrap();
        assert_eq!(
            q.one().checked_add(&f.one()),
            Err(Error::FieldMismatch)
        );
    }

    #[test]
    fn tower_sqrt() {
        // Q(sqrt(2))(sqrt(3)) contains sqrt(6) = sqrt(2)*sqrt(3)
        let q = FieldDescriptor::rationals();
        let k1 = q.extend_with_sqrt(&q.from_i64(2)).unwrap();
        let three = q.from_i64(3).embed_into(&k1).unwrap();
        let k2 = k1.extend_with_sqrt(&three).unwrap();
        let six = q.from_i64(6).embed_into(&k2).unwrap();
        let r = six.sqrt_in_field().unwrap();
        assert_eq!(&r * &r, six);
    }
}
