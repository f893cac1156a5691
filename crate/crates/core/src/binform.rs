//! Symmetric bilinear forms on a 2-dimensional space, the determinant pairing,
//! classification, isotropic points, and the form-from-roots construction.
//!
//! The space B of these forms is 3-dimensional; the determinant pairing
//! ⟨f, g⟩ = ½(ac' + ca') − bb' makes it a regular quadratic space whose
//! associated quadratic form is the determinant.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldDescriptor, Scalar};
use crate::linalg::{self, Matrix};
use crate::projline::ProjPoint;

/// The symmetric matrix (a b; b c), stored with exact entries.
///
/// Forms are not stored as projective classes; operations that only depend on
/// the class (classification, isotropic points) are scale-invariant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymForm2 {
    pub a: Scalar,
    pub b: Scalar,
    pub c: Scalar,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    Zero,
    Anisotropic,
    Hyperbolic,
    Degenerate,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Classification::Zero => "Zero",
            Classification::Anisotropic => "Anisotropic",
            Classification::Hyperbolic => "Hyperbolic",
            Classification::Degenerate => "Degenerate",
        };
        write!(f, "{s}")
    }
}

impl SymForm2 {
    pub fn new(a: Scalar, b: Scalar, c: Scalar) -> Result<SymForm2> {
        let (a, b) = a.unify(&b)?;
        let (b, c) = b.unify(&c)?;
        let (a, _) = a.unify(&b)?;
        Ok(SymForm2 { a, b, c })
    }

    pub fn from_i64(field: &FieldDescriptor, a: i64, b: i64, c: i64) -> SymForm2 {
        SymForm2 {
            a: field.from_i64(a),
            b: field.from_i64(b),
            c: field.from_i64(c),
        }
    }

    pub fn field(&self) -> FieldDescriptor {
        self.a.field()
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero()
    }

    pub fn det(&self) -> Scalar {
        &(&self.a * &self.c) - &(&self.b * &self.b)
    }

    /// Discriminant b² − ac of the quadratic a x² + 2b xy + c y².
    pub fn discriminant(&self) -> Scalar {
        &(&self.b * &self.b) - &(&self.a * &self.c)
    }

    pub fn coeffs(&self) -> Vec<Scalar> {
        vec![self.a.clone(), self.b.clone(), self.c.clone()]
    }

    pub fn scale(&self, k: &Scalar) -> Result<SymForm2> {
        SymForm2::new(
            self.a.checked_mul(k)?,
            self.b.checked_mul(k)?,
            self.c.checked_mul(k)?,
        )
    }

    pub fn add(&self, other: &SymForm2) -> Result<SymForm2> {
        SymForm2::new(
            self.a.checked_add(&other.a)?,
            self.b.checked_add(&other.b)?,
            self.c.checked_add(&other.c)?,
        )
    }

    pub fn embed_into(&self, target: &FieldDescriptor) -> Result<SymForm2> {
        SymForm2::new(
            self.a.embed_into(target)?,
            self.b.embed_into(target)?,
            self.c.embed_into(target)?,
        )
    }

    /// Projective proportionality of two forms.
    pub fn proportional_to(&self, other: &SymForm2) -> Result<bool> {
        if self.is_zero() || other.is_zero() {
            return Ok(self.is_zero() && other.is_zero());
        }
        let rows = vec![
            vec![self.a.clone(), other.a.clone()],
            vec![self.b.clone(), other.b.clone()],
            vec![self.c.clone(), other.c.clone()],
        ];
        Ok(linalg::rank(&rows, 2, &self.field())? <= 1)
    }

    /// ⟨f, g⟩ = ½(ac' + ca') − bb'.
    pub fn det_pairing(&self, other: &SymForm2) -> Result<Scalar> {
        let field = self.a.unify(&other.a)?.0.field();
        let half = field.fraction(1, 2)?;
        let s = self
            .a
            .checked_mul(&other.c)?
            .checked_add(&self.c.checked_mul(&other.a)?)?;
        half.checked_mul(&s)?
            .checked_sub(&self.b.checked_mul(&other.b)?)
    }

    /// Trichotomy of nonzero forms; invariant under basis change and scaling.
    pub fn classify(&self) -> Classification {
        if self.is_zero() {
            Classification::Zero
        } else if self.det().is_zero() {
            Classification::Degenerate
        } else if self.discriminant().sqrt_in_field().is_some() {
            Classification::Hyperbolic
        } else {
            Classification::Anisotropic
        }
    }

    /// Projective solutions of a x² + 2b xy + c y² = 0, with the field they
    /// live in. Anisotropic forms get their two points in one quadratic
    /// extension when `allow_extension` is set, an empty list otherwise.
    pub fn isotropic_points(
        &self,
        allow_extension: bool,
    ) -> Result<(Vec<ProjPoint>, FieldDescriptor)> {
        if self.is_zero() {
            return Err(Error::ZeroForm);
        }
        let field = self.field();
        if self.a.is_zero() {
            if self.b.is_zero() {
                // c y² = 0: the radical direction is ∞.
                return Ok((vec![ProjPoint::infinity(&field)], field));
            }
            // y (2b x + c y) = 0: ∞ plus −c/(2b).
            let two_b = field.from_i64(2).checked_mul(&self.b)?;
            let other = self.c.neg_val().checked_div(&two_b)?;
            return Ok((
                vec![ProjPoint::infinity(&field), ProjPoint::affine(other)],
                field,
            ));
        }
        let disc = self.discriminant();
        if disc.is_zero() {
            // double root −b/a
            let root = self.b.neg_val().checked_div(&self.a)?;
            return Ok((vec![ProjPoint::affine(root)], field));
        }
        let (r, field) = match disc.sqrt_in_field() {
            Some(r) => (r, field),
            None => {
                if !allow_extension {
                    return Ok((vec![], field));
                }
                let ext = field.extend_with_sqrt(&disc)?;
                let r = disc
                    .embed_into(&ext)?
                    .sqrt_in_field()
                    .ok_or(Error::AlreadySquare)?;
                (r, ext)
            }
        };
        let a = self.a.embed_into(&field)?;
        let b = self.b.embed_into(&field)?;
        let p1 = ProjPoint::affine(b.neg_val().checked_add(&r)?.checked_div(&a)?);
        let p2 = ProjPoint::affine(b.neg_val().checked_sub(&r)?.checked_div(&a)?);
        Ok((vec![p1, p2], field))
    }

    /// The form (tX − sY)(vX − uY) with isotropic points P = (s : t) and
    /// Q = (u : v): matrix (tv, w, su) with w = −½(tu + sv). Coincident points
    /// give the degenerate square.
    pub fn from_points(p: &ProjPoint, q: &ProjPoint) -> Result<SymForm2> {
        let (s, u) = p.x().unify(q.x())?;
        let field = s.field();
        let t = p.y().embed_into(&field)?;
        let v = q.y().embed_into(&field)?;
        let half = field.fraction(1, 2)?;
        let w = half
            .neg_val()
            .checked_mul(&t.checked_mul(&u)?.checked_add(&s.checked_mul(&v)?)?)?;
        SymForm2::new(t.checked_mul(&v)?, w, s.checked_mul(&u)?)
    }

    /// Resultant of the two binary quadratics (Sylvester determinant with the
    /// 2b middle coefficients); nonzero iff the isotropic point sets over any
    /// extension are disjoint.
    pub fn resultant(&self, other: &SymForm2) -> Result<Scalar> {
        if self.is_zero() || other.is_zero() {
            return Err(Error::ZeroForm);
        }
        let field = self.a.unify(&other.a)?.0.field();
        let two = field.from_i64(2);
        let z = field.zero();
        let b1 = two.checked_mul(&self.b)?;
        let b2 = two.checked_mul(&other.b)?;
        let m: Matrix = vec![
            vec![self.a.clone(), b1.clone(), self.c.clone(), z.clone()],
            vec![z.clone(), self.a.clone(), b1, self.c.clone()],
            vec![other.a.clone(), b2.clone(), other.c.clone(), z.clone()],
            vec![z.clone(), other.a.clone(), b2, other.c.clone()],
        ];
        linalg::det(&m, &field)
    }

    /// tS·M·S for an invertible 2×2 matrix S (row-major).
    pub fn change_basis(&self, s: &Matrix) -> Result<SymForm2> {
        if s.len() != 2 || s[0].len() != 2 || s[1].len() != 2 {
            return Err(Error::DimensionMismatch);
        }
        let field = self.field();
        if linalg::det(s, &field)?.is_zero() {
            return Err(Error::SingularMatrix);
        }
        let m: Matrix = vec![
            vec![self.a.clone(), self.b.clone()],
            vec![self.b.clone(), self.c.clone()],
        ];
        let t = linalg::mat_mul(&linalg::mat_mul(&linalg::transpose(s), &m)?, s)?;
        SymForm2::new(t[0][0].clone(), t[0][1].clone(), t[1][1].clone())
    }

    /// vᵀ f w for representatives of P and Q; whether it vanishes does not
    /// depend on the representatives.
    pub fn eval_pair(&self, p: &ProjPoint, q: &ProjPoint) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::ZeroForm);
        }
        let (xp, xq) = p.x().unify(q.x())?;
        let field = xp.field();
        let f = self.embed_into(&field)?;
        let yp = p.y().embed_into(&field)?;
        let yq = q.y().embed_into(&field)?;
        let mut acc = f.a.checked_mul(&xp)?.checked_mul(&xq)?;
        let cross = xp.checked_mul(&yq)?.checked_add(&yp.checked_mul(&xq)?)?;
        acc = acc.checked_add(&f.b.checked_mul(&cross)?)?;
        acc.checked_add(&f.c.checked_mul(&yp)?.checked_mul(&yq)?)
    }

    /// Whether P and Q are orthogonal relative to this form.
    pub fn orthogonal(&self, p: &ProjPoint, q: &ProjPoint) -> Result<bool> {
        Ok(self.eval_pair(p, q)?.is_zero())
    }

    /// q(v, v) = 0 for a representative of P.
    pub fn is_isotropic_point(&self, p: &ProjPoint) -> Result<bool> {
        self.orthogonal(p, p)
    }
}

impl fmt::Display for SymForm2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::projline;

    fn q() -> FieldDescriptor {
        FieldDescriptor::rationals()
    }

    fn form(a: i64, b: i64, c: i64) -> SymForm2 {
        SymForm2::from_i64(&q(), a, b, c)
    }

    #[test]
    fn pairing_of_identity() {
        let i = form(1, 0, 1);
        assert_eq!(i.det_pairing(&i).unwrap(), q().from_i64(1));
    }

    #[test]
    fn pairing_example() {
        let f = form(1, 2, 3);
        let g = form(4, 5, 6);
        // ½(1·6 + 3·4) − 2·5 = −1
        assert_eq!(f.det_pairing(&g).unwrap(), q().from_i64(-1));
        assert_eq!(g.det_pairing(&f).unwrap(), q().from_i64(-1));
    }

    #[test]
    fn pairing_norm_is_determinant() {
        let z = form(2, 3, 5);
        assert_eq!(z.det_pairing(&z).unwrap(), z.det());
        assert_eq!(z.det(), q().from_i64(1));
    }

    #[test]
    fn classify_examples() {
        assert_eq!(form(1, 0, -1).classify(), Classification::Hyperbolic);
        assert_eq!(form(1, 0, 1).classify(), Classification::Anisotropic);
        let gf3 = FieldDescriptor::prime(3).unwrap();
        assert_eq!(
            SymForm2::from_i64(&gf3, 1, 1, 1).classify(),
            Classification::Degenerate
        );
        assert_eq!(form(0, 0, 0).classify(), Classification::Zero);
    }

    #[test]
    fn classify_after_extension() {
        // x² + y² is anisotropic over Q, hyperbolic over Q(i)
        let ext = q().extend_with_sqrt(&q().from_i64(-1)).unwrap();
        let f = form(1, 0, 1).embed_into(&ext).unwrap();
        assert_eq!(f.classify(), Classification::Hyperbolic);
    }

    #[test]
    fn isotropic_points_hyperbolic() {
        let (pts, field) = form(1, 0, -1).isotropic_points(false).unwrap();
        assert_eq!(field, q());
        assert_eq!(pts.len(), 2);
        let one = ProjPoint::affine(q().from_i64(1));
        let neg = ProjPoint::affine(q().from_i64(-1));
        assert!(pts.iter().any(|p| p.projectively_eq(&one).unwrap()));
        assert!(pts.iter().any(|p| p.projectively_eq(&neg).unwrap()));
    }

    #[test]
    fn isotropic_points_xy() {
        let (pts, _) = form(0, 1, 0).isotropic_points(false).unwrap();
        assert_eq!(pts.len(), 2);
        assert!(pts.iter().any(|p| p.is_infinity()));
        let zero = ProjPoint::affine(q().zero());
        assert!(pts.iter().any(|p| p.projectively_eq(&zero).unwrap()));
    }

    #[test]
    fn isotropic_points_need_extension() {
        let f = form(1, 0, 1);
        let (pts, _) = f.isotropic_points(false).unwrap();
        assert!(pts.is_empty());
        let (pts, ext) = f.isotropic_points(true).unwrap();
        assert_eq!(pts.len(), 2);
        let fe = f.embed_into(&ext).unwrap();
        for p in &pts {
            assert!(fe.is_isotropic_point(p).unwrap());
        }
        assert!(!pts[0].projectively_eq(&pts[1]).unwrap());
    }

    #[test]
    fn form_from_points_examples() {
        let inf = ProjPoint::infinity(&q());
        let zero = ProjPoint::affine(q().zero());
        let f = SymForm2::from_points(&inf, &zero).unwrap();
        // (0, −½, 0), the form −xy
        assert!(f.a.is_zero() && f.c.is_zero());
        assert_eq!(f.b, q().fraction(-1, 2).unwrap());

        let g = SymForm2::from_points(&zero, &zero).unwrap();
        assert_eq!(g, form(1, 0, 0));

        let one = ProjPoint::affine(q().from_i64(1));
        let neg = ProjPoint::affine(q().from_i64(-1));
        let h = SymForm2::from_points(&one, &neg).unwrap();
        assert!(h.proportional_to(&form(1, 0, -1)).unwrap());
    }

    #[test]
    fn form_from_points_round_trip() {
        for f in [form(1, 0, -1), form(0, 1, 0), form(2, 1, -3), form(1, 0, 1)] {
            let (pts, _) = f.isotropic_points(true).unwrap();
            assert_eq!(pts.len(), 2);
            let g = SymForm2::from_points(&pts[0], &pts[1]).unwrap();
            let fe = f.embed_into(&g.field()).unwrap();
            assert!(g.proportional_to(&fe).unwrap());
        }
    }

    #[test]
    fn resultant_examples() {
        assert_eq!(
            form(1, 0, -1).resultant(&form(0, 1, 0)).unwrap(),
            q().from_i64(-4)
        );
        assert_eq!(
            form(1, 0, 0).resultant(&form(1, 0, 0)).unwrap(),
            q().zero()
        );
        assert_eq!(
            form(1, 0, 0).resultant(&form(0, 0, 1)).unwrap(),
            q().from_i64(1)
        );
    }

    #[test]
    fn change_basis_examples() {
        use alloc::vec;
        let f = form(1, 0, -1);
        let id: Matrix = vec![
            vec![q().from_i64(1), q().zero()],
            vec![q().zero(), q().from_i64(1)],
        ];
        assert_eq!(f.change_basis(&id).unwrap(), f);

        let swap: Matrix = vec![
            vec![q().zero(), q().from_i64(1)],
            vec![q().from_i64(1), q().zero()],
        ];
        assert_eq!(f.change_basis(&swap).unwrap(), form(-1, 0, 1));

        // norm scales by det(S)²
        let g = form(1, 0, 1);
        let diag: Matrix = vec![
            vec![q().from_i64(2), q().zero()],
            vec![q().zero(), q().from_i64(1)],
        ];
        let g2 = g.change_basis(&diag).unwrap();
        assert_eq!(g2.det_pairing(&g2).unwrap(), q().from_i64(4));

        let sing: Matrix = vec![
            vec![q().from_i64(1), q().from_i64(2)],
            vec![q().from_i64(2), q().from_i64(4)],
        ];
        assert_eq!(f.change_basis(&sing), Err(Error::SingularMatrix));
    }

    #[test]
    fn eval_pair_examples() {
        let i = form(1, 0, 1);
        let inf = ProjPoint::infinity(&q());
        let zero = ProjPoint::affine(q().zero());
        assert!(i.orthogonal(&inf, &zero).unwrap());

        let one = ProjPoint::affine(q().from_i64(1));
        assert_eq!(
            form(0, 1, 0).eval_pair(&one, &one).unwrap(),
            q().from_i64(2)
        );

        // fixed-point pair of the worked pencil: ±i orthogonal under x² − y²
        let ext = q().extend_with_sqrt(&q().from_i64(-1)).unwrap();
        let i_rt = q().from_i64(-1).embed_into(&ext).unwrap().sqrt_in_field().unwrap();
        let p = ProjPoint::affine(i_rt.clone());
        let m = ProjPoint::affine(i_rt.neg_val());
        assert!(form(1, 0, -1).orthogonal(&p, &m).unwrap());
    }

    #[test]
    fn cross_ratio_invariant_under_basis_change_spotcheck() {
        // points transformed by a fixed invertible matrix keep their cross-ratio
        let pts: alloc::vec::Vec<ProjPoint> = [1i64, -1, 0, 5]
            .iter()
            .map(|&n| ProjPoint::affine(q().from_i64(n)))
            .collect();
        let before =
            projline::cross_ratio(&pts[0], &pts[1], &pts[2], &pts[3]).unwrap();
        let tr = |p: &ProjPoint| {
            // (x, y) ↦ (2x + y, x + y)
            let x = &(q().from_i64(2) * p.x().clone()) + p.y();
            let y = p.x() + p.y();
            ProjPoint::new(x, y).unwrap()
        };
        let after = projline::cross_ratio(&tr(&pts[0]), &tr(&pts[1]), &tr(&pts[2]), &tr(&pts[3]))
            .unwrap();
        assert_eq!(before, after);
    }
}
