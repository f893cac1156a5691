//! Involutions of P¹ as trace-zero invertible matrices, the bijection with
//! non-degenerate binary forms, and fixed points.
//!
//! An involution is stored as the triple (a, b, c) of the matrix (a b; c −a),
//! so the trace-zero condition is built into the type; validity reduces to
//! det = −a² − bc ≠ 0.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::binform::SymForm2;
use crate::error::{Error, Result};
use crate::field::{FieldDescriptor, Scalar};
use crate::linalg;
use crate::projline::ProjPoint;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Involution {
    pub a: Scalar,
    pub b: Scalar,
    pub c: Scalar,
}

impl Involution {
    /// Matrix (a b; c −a); rejects singular triples.
    pub fn new(a: Scalar, b: Scalar, c: Scalar) -> Result<Involution> {
        let (a, b) = a.unify(&b)?;
        let (b, c) = b.unify(&c)?;
        let (a, _) = a.unify(&b)?;
        let inv = Involution { a, b, c };
        if inv.det().is_zero() {
            return Err(Error::SingularMatrix);
        }
        Ok(inv)
    }

    pub fn from_i64(field: &FieldDescriptor, a: i64, b: i64, c: i64) -> Result<Involution> {
        Involution::new(field.from_i64(a), field.from_i64(b), field.from_i64(c))
    }

    pub fn field(&self) -> FieldDescriptor {
        self.a.field()
    }

    pub fn det(&self) -> Scalar {
        let aa = &self.a * &self.a;
        (&aa.neg_val()) - &(&self.b * &self.c)
    }

    pub fn embed_into(&self, target: &FieldDescriptor) -> Result<Involution> {
        Ok(Involution {
            a: self.a.embed_into(target)?,
            b: self.b.embed_into(target)?,
            c: self.c.embed_into(target)?,
        })
    }

    /// Projective equality of involutions.
    pub fn projectively_eq(&self, other: &Involution) -> Result<bool> {
        let rows = vec![
            vec![self.a.clone(), other.a.clone()],
            vec![self.b.clone(), other.b.clone()],
            vec![self.c.clone(), other.c.clone()],
        ];
        Ok(linalg::rank(&rows, 2, &self.field())? <= 1)
    }

    /// (x, y) ↦ (ax + by, cx − ay). Applying twice returns the point.
    pub fn apply(&self, p: &ProjPoint) -> Result<ProjPoint> {
        let (a, x) = self.a.unify(p.x())?;
        let field = a.field();
        let b = self.b.embed_into(&field)?;
        let c = self.c.embed_into(&field)?;
        let y = p.y().embed_into(&field)?;
        let nx = a.checked_mul(&x)?.checked_add(&b.checked_mul(&y)?)?;
        let ny = c.checked_mul(&x)?.checked_sub(&a.checked_mul(&y)?)?;
        ProjPoint::new(nx, ny)
    }

    /// The Desargues form (−c, a, b); same determinant, hence non-degenerate.
    pub fn desargues_form(&self) -> SymForm2 {
        SymForm2 {
            a: self.c.neg_val(),
            b: self.a.clone(),
            c: self.b.clone(),
        }
    }

    /// Inverse of `desargues_form` up to projective scaling: the form
    /// (a, b, c) maps to the involution with matrix (b c; −a −b).
    pub fn from_form(f: &SymForm2) -> Result<Involution> {
        if f.det().is_zero() {
            return Err(Error::DegenerateForm);
        }
        Involution::new(f.b.clone(), f.c.clone(), f.a.neg_val())
    }

    /// Fixed points: the isotropic points of the Desargues form. There are 0
    /// or 2 over the base field, always 2 with the extension, never exactly 1.
    pub fn fixed_points(&self, allow_extension: bool) -> Result<(Vec<ProjPoint>, FieldDescriptor)> {
        self.desargues_form().isotropic_points(allow_extension)
    }

    /// The conjugate-pair form of P and its image is orthogonal to the
    /// Desargues form under the determinant pairing; this machine-checks that
    /// statement on one point.
    pub fn pair_form_orthogonal(&self, p: &ProjPoint) -> Result<bool> {
        let q = self.apply(p)?;
        let g = SymForm2::from_points(p, &q)?;
        let h = self.desargues_form().embed_into(&g.field())?;
        Ok(g.det_pairing(&h)?.is_zero())
    }

    /// The unique involution swapping P ↔ P' and Q ↔ Q': the orthogonal
    /// complement of the two conjugate-pair forms inside B, fed back through
    /// the form↔involution bijection. Coincident pairs act as fixed-point
    /// (tangency) constraints.
    pub fn from_two_pairs(
        p: &ProjPoint,
        p2: &ProjPoint,
        q: &ProjPoint,
        q2: &ProjPoint,
    ) -> Result<Involution> {
        let g1 = SymForm2::from_points(p, p2)?;
        let g2 = SymForm2::from_points(q, q2)?;
        let h = orthocomplement_in_pencil(&g1, &g2)?;
        match Involution::from_form(&h) {
            Err(Error::DegenerateForm) => Err(Error::DegenerateComplement),
            other => other,
        }
    }
}

/// The 1-dimensional det_pairing-orthogonal complement of span{g1, g2} in B.
/// Errors when g1, g2 are proportional.
pub fn orthocomplement_in_pencil(g1: &SymForm2, g2: &SymForm2) -> Result<SymForm2> {
    let field = g1.a.unify(&g2.a)?.0.field();
    let g1 = g1.embed_into(&field)?;
    let g2 = g2.embed_into(&field)?;
    if g1.proportional_to(&g2)? {
        return Err(Error::DependentPairs);
    }
    // ⟨(a,b,c), (a',b',c')⟩ = (c'/2)a − b'b + (a'/2)c
    let half = field.fraction(1, 2)?;
    let row = |g: &SymForm2| -> Result<Vec<Scalar>> {
        Ok(vec![
            half.checked_mul(&g.c)?,
            g.b.neg_val(),
            half.checked_mul(&g.a)?,
        ])
    };
    let rows = vec![row(&g1)?, row(&g2)?];
    let basis = linalg::kernel(&rows, 3, &field)?;
    debug_assert_eq!(basis.len(), 1);
    let v = &basis[0];
    SymForm2::new(v[0].clone(), v[1].clone(), v[2].clone())
}

impl fmt::Display for Involution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} {}; {} {})", self.a, self.b, self.c, self.a.neg_val())
    }
}
