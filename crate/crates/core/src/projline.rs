//! Points of P¹(K) modulo scalars, cross-ratio, and harmonic conjugates.

use alloc::format;
use core::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldDescriptor, Scalar};

/// A point of the projective line, stored in normalized homogeneous
/// coordinates: (x, 1) for affine points, (1, 0) for the point at infinity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjPoint {
    x: Scalar,
    y: Scalar,
}

/// Cross-ratio value; the infinite case is a distinct marker, not a Scalar.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CrossRatio {
    Finite(Scalar),
    Infinite,
}

/// The 2×2 bracket [P, Q] = x_P·y_Q − x_Q·y_P.
pub fn bracket(p: &ProjPoint, q: &ProjPoint) -> Result<Scalar> {
    let a = p.x.checked_mul(&q.y)?;
    let b = q.x.checked_mul(&p.y)?;
    a.checked_sub(&b)
}

impl ProjPoint {
    /// Normalizes on construction; rejects (0, 0).
    pub fn new(x: Scalar, y: Scalar) -> Result<ProjPoint> {
        let (x, y) = x.unify(&y)?;
        if x.is_zero() && y.is_zero() {
            return Err(Error::ZeroForm);
        }
        if y.is_zero() {
            let f = x.field();
            Ok(ProjPoint { x: f.one(), y: f.zero() })
        } else {
            let f = y.field();
            Ok(ProjPoint {
                x: x.checked_div(&y)?,
                y: f.one(),
            })
        }
    }

    pub fn affine(x: Scalar) -> ProjPoint {
        let f = x.field();
        ProjPoint { x, y: f.one() }
    }

    pub fn infinity(field: &FieldDescriptor) -> ProjPoint {
        ProjPoint {
            x: field.one(),
            y: field.zero(),
        }
    }

    pub fn x(&self) -> &Scalar {
        &self.x
    }

    pub fn y(&self) -> &Scalar {
        &self.y
    }

    pub fn is_infinity(&self) -> bool {
        self.y.is_zero()
    }

    pub fn field(&self) -> FieldDescriptor {
        self.x.field()
    }

    pub fn embed_into(&self, target: &FieldDescriptor) -> Result<ProjPoint> {
        Ok(ProjPoint {
            x: self.x.embed_into(target)?,
            y: self.y.embed_into(target)?,
        })
    }

    /// Projective equality: the 2×2 determinant of coordinates vanishes.
    pub fn projectively_eq(&self, other: &ProjPoint) -> Result<bool> {
        Ok(bracket(self, other)?.is_zero())
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinity() {
            write!(f, "inf")
        } else {
            write!(f, "{}", self.x)
        }
    }
}

/// (S, T; M, N) = [S,M][T,N] / ([S,N][T,M]).
///
/// With M = αS + βT and N = λS + μT this evaluates to βλ/αμ, so the quadruple
/// is harmonic (value −1) exactly when αμ + βλ = 0.
pub fn cross_ratio(
    s: &ProjPoint,
    t: &ProjPoint,
    m: &ProjPoint,
    n: &ProjPoint,
) -> Result<CrossRatio> {
    let num = bracket(s, m)?.checked_mul(&bracket(t, n)?)?;
    let den = bracket(s, n)?.checked_mul(&bracket(t, m)?)?;
    match (num.is_zero(), den.is_zero()) {
        (true, true) => Err(Error::DegenerateConfiguration),
        (false, true) => Ok(CrossRatio::Infinite),
        _ => Ok(CrossRatio::Finite(num.checked_div(&den)?)),
    }
}

/// The unique N with (S, T; M, N) = −1, for pairwise distinct S, T, M.
pub fn harmonic_conjugate(s: &ProjPoint, t: &ProjPoint, m: &ProjPoint) -> Result<ProjPoint> {
    for (a, b) in [(s, t), (s, m), (t, m)] {
        if a.projectively_eq(b)? {
            return Err(Error::DegenerateConfiguration);
        }
    }
    // [S,M][T,N] + [S,N][T,M] = 0 is linear in N's coordinates.
    let sm = bracket(s, m)?;
    let tm = bracket(t, m)?;
    let nx = sm.checked_mul(t.x())?.checked_add(&tm.checked_mul(s.x())?)?;
    let ny = sm.checked_mul(t.y())?.checked_add(&tm.checked_mul(s.y())?)?;
    ProjPoint::new(nx, ny)
}

impl fmt::Display for CrossRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CrossRatio::Finite(v) => write!(f, "{v}"),
            CrossRatio::Infinite => write!(f, "inf"),
        }
    }
}

impl CrossRatio {
    pub fn is_minus_one(&self) -> bool {
        match self {
            CrossRatio::Finite(v) => {
                let m1 = v.field().from_i64(-1);
                *v == m1
            }
            CrossRatio::Infinite => false,
        }
    }

    pub fn describe(&self) -> alloc::string::String {
        format!("{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldDescriptor {
        FieldDescriptor::rationals()
    }

    fn pt(n: i64) -> ProjPoint {
        ProjPoint::affine(q().from_i64(n))
    }

    #[test]
    fn projective_equality() {
        let f = q();
        let a = ProjPoint::new(f.from_i64(2), f.from_i64(4)).unwrap();
        let b = ProjPoint::new(f.from_i64(1), f.from_i64(2)).unwrap();
        assert!(a.projectively_eq(&b).unwrap());
        assert!(!ProjPoint::infinity(&f)
            .projectively_eq(&pt(0))
            .unwrap());
    }

    #[test]
    fn projective_equality_gf5() {
        let f = FieldDescriptor::prime(5).unwrap();
        let a = ProjPoint::new(f.from_i64(2), f.from_i64(3)).unwrap();
        let b = ProjPoint::new(f.from_i64(4), f.from_i64(6)).unwrap();
        assert!(a.projectively_eq(&b).unwrap());
    }

    #[test]
    fn harmonic_quadruple() {
        // (1, −1; 0, ∞) = −1
        let r = cross_ratio(&pt(1), &pt(-1), &pt(0), &ProjPoint::infinity(&q())).unwrap();
        assert_eq!(r, CrossRatio::Finite(q().from_i64(-1)));
        assert!(r.is_minus_one());
    }

    #[test]
    fn cross_ratio_coincident_first_pair() {
        let r = cross_ratio(&pt(3), &pt(5), &pt(3), &pt(7)).unwrap();
        assert_eq!(r, CrossRatio::Finite(q().from_i64(0)));
    }

    #[test]
    fn cross_ratio_gf7() {
        let f = FieldDescriptor::prime(7).unwrap();
        let p = |n: i64| ProjPoint::affine(f.from_i64(n));
        let r = cross_ratio(&p(1), &p(2), &p(3), &p(4)).unwrap();
        assert_eq!(r, CrossRatio::Finite(f.from_i64(6)));
    }

    #[test]
    fn harmonic_conjugate_examples() {
        // S=1, T=−1, M=0 → N=∞
        let n = harmonic_conjugate(&pt(1), &pt(-1), &pt(0)).unwrap();
        assert!(n.is_infinity());
        // S=0, T=2, M=1 (midpoint) → N=∞
        let n = harmonic_conjugate(&pt(0), &pt(2), &pt(1)).unwrap();
        assert!(n.is_infinity());
    }

    #[test]
    fn harmonic_conjugate_gf5() {
        let f = FieldDescriptor::prime(5).unwrap();
        let p = |n: i64| ProjPoint::affine(f.from_i64(n));
        let n = harmonic_conjugate(&p(1), &p(4), &p(0)).unwrap();
        let r = cross_ratio(&p(1), &p(4), &p(0), &n).unwrap();
        assert!(r.is_minus_one());
    }

    #[test]
    fn harmonic_conjugate_is_involutive() {
        let (s, t) = (pt(2), pt(-3));
        for m in [pt(0), pt(1), pt(7)] {
            let n = harmonic_conjugate(&s, &t, &m).unwrap();
            let back = harmonic_conjugate(&s, &t, &n).unwrap();
            assert!(back.projectively_eq(&m).unwrap());
        }
    }
}
