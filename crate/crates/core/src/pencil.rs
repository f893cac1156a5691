//! Quadrics and pencils in P(V) of any dimension, restriction to a line, the
//! regularity test, and the induced involution on the line.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::binform::{Classification, SymForm2};
use crate::error::{Error, Result};
use crate::field::{FieldDescriptor, Scalar};
use crate::involution::{orthocomplement_in_pencil, Involution};
use crate::linalg::{self, Matrix};
use crate::projline::ProjPoint;

/// A symmetric bilinear form on an (n+1)-dimensional space, as its matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymFormN {
    entries: Matrix,
}

impl SymFormN {
    /// Validates squareness and exact symmetry.
    pub fn new(entries: Matrix) -> Result<SymFormN> {
        let n = entries.len();
        if n == 0 {
            return Err(Error::DimensionMismatch);
        }
        for row in &entries {
            if row.len() != n {
                return Err(Error::DimensionMismatch);
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if !entries[i][j].checked_eq(&entries[j][i])? {
                    return Err(Error::DimensionMismatch);
                }
            }
        }
        Ok(SymFormN { entries })
    }

    pub fn from_i64(field: &FieldDescriptor, rows: &[&[i64]]) -> Result<SymFormN> {
        SymFormN::new(
            rows.iter()
                .map(|r| r.iter().map(|&v| field.from_i64(v)).collect())
                .collect(),
        )
    }

    pub fn diagonal(diag: &[Scalar]) -> Result<SymFormN> {
        let field = diag[0].field();
        let n = diag.len();
        let mut m = vec![vec![field.zero(); n]; n];
        for (i, d) in diag.iter().enumerate() {
            m[i][i] = d.clone();
        }
        SymFormN::new(m)
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &Matrix {
        &self.entries
    }

    pub fn field(&self) -> FieldDescriptor {
        self.entries[0][0].field()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|r| r.iter().all(|e| e.is_zero()))
    }

    /// q(u, v) = uᵀ·entries·v.
    pub fn eval(&self, u: &[Scalar], v: &[Scalar]) -> Result<Scalar> {
        if u.len() != self.dim() || v.len() != self.dim() {
            return Err(Error::DimensionMismatch);
        }
        linalg::dot(u, &linalg::mat_vec(&self.entries, v)?)
    }

    pub fn scale(&self, k: &Scalar) -> Result<SymFormN> {
        let mut m = self.entries.clone();
        for row in &mut m {
            for e in row {
                *e = e.checked_mul(k)?;
            }
        }
        SymFormN::new(m)
    }

    pub fn add(&self, other: &SymFormN) -> Result<SymFormN> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch);
        }
        let mut m = self.entries.clone();
        for (row, orow) in m.iter_mut().zip(other.entries.iter()) {
            for (e, o) in row.iter_mut().zip(orow.iter()) {
                *e = e.checked_add(o)?;
            }
        }
        SymFormN::new(m)
    }

    pub fn embed_into(&self, target: &FieldDescriptor) -> Result<SymFormN> {
        let mut m = self.entries.clone();
        for row in &mut m {
            for e in row {
                *e = e.embed_into(target)?;
            }
        }
        SymFormN::new(m)
    }
}

/// A 2-dimensional subspace E ⊂ V spanned by two independent vectors; the
/// point (x : y) of the line denotes x·e1 + y·e2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineInPV {
    e1: Vec<Scalar>,
    e2: Vec<Scalar>,
}

impl LineInPV {
    pub fn new(e1: Vec<Scalar>, e2: Vec<Scalar>) -> Result<LineInPV> {
        if e1.len() != e2.len() || e1.is_empty() {
            return Err(Error::DimensionMismatch);
        }
        let field = e1[0].field();
        let rows = vec![e1.clone(), e2.clone()];
        if linalg::rank(&rows, e1.len(), &field)? < 2 {
            return Err(Error::DependentVectors);
        }
        Ok(LineInPV { e1, e2 })
    }

    pub fn from_i64(field: &FieldDescriptor, e1: &[i64], e2: &[i64]) -> Result<LineInPV> {
        LineInPV::new(
            e1.iter().map(|&v| field.from_i64(v)).collect(),
            e2.iter().map(|&v| field.from_i64(v)).collect(),
        )
    }

    pub fn e1(&self) -> &[Scalar] {
        &self.e1
    }

    pub fn e2(&self) -> &[Scalar] {
        &self.e2
    }

    pub fn dim(&self) -> usize {
        self.e1.len()
    }

    pub fn field(&self) -> FieldDescriptor {
        self.e1[0].field()
    }

    pub fn embed_into(&self, target: &FieldDescriptor) -> Result<LineInPV> {
        let embed = |v: &[Scalar]| -> Result<Vec<Scalar>> {
            v.iter().map(|e| e.embed_into(target)).collect()
        };
        LineInPV::new(embed(&self.e1)?, embed(&self.e2)?)
    }

    /// New spanning pair (e1, e2)·S for invertible S (row-major 2×2).
    pub fn change_basis(&self, s: &Matrix) -> Result<LineInPV> {
        let field = self.field();
        if linalg::det(s, &field)?.is_zero() {
            return Err(Error::SingularMatrix);
        }
        let comb = |c0: &Scalar, c1: &Scalar| -> Result<Vec<Scalar>> {
            self.e1
                .iter()
                .zip(self.e2.iter())
                .map(|(a, b)| a.checked_mul(c0)?.checked_add(&b.checked_mul(c1)?))
                .collect()
        };
        LineInPV::new(comb(&s[0][0], &s[1][0])?, comb(&s[0][1], &s[1][1])?)
    }
}

/// Restriction of an ambient form to a line: the binary form
/// (q(e1,e1), q(e1,e2), q(e2,e2)). The zero result signals that the entire
/// line lies on the quadric.
pub fn restrict(q: &SymFormN, line: &LineInPV) -> Result<SymForm2> {
    if q.dim() != line.dim() {
        return Err(Error::DimensionMismatch);
    }
    SymForm2::new(
        q.eval(line.e1(), line.e1())?,
        q.eval(line.e1(), line.e2())?,
        q.eval(line.e2(), line.e2())?,
    )
}

/// The pencil aR + bS spanned by two non-proportional forms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pencil {
    r: SymFormN,
    s: SymFormN,
}

/// Verdict of the regularity test for a pencil restricted to a line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Diagnosis {
    /// The restricted pencil is a regular subspace of B; an involution exists.
    Regular,
    /// Some member a·R + b·S restricts to zero on the line.
    LineInQuadric { a: Scalar, b: Scalar },
    /// Every member vanishes at this point of the line (possibly in a
    /// quadratic extension).
    CommonZero { point: ProjPoint, field: FieldDescriptor },
}

impl fmt::Display for Diagnosis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagnosis::Regular => write!(f, "Regular"),
            Diagnosis::LineInQuadric { a, b } => write!(f, "LineInQuadric({a}, {b})"),
            Diagnosis::CommonZero { point, field } => {
                write!(f, "CommonZero({point} over {})", field.name())
            }
        }
    }
}

/// How one pencil member meets the line relative to the induced involution.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MemberCheck {
    Swapped,
    FixedTangent,
    NoIntersection,
}

impl Pencil {
    pub fn new(r: SymFormN, s: SymFormN) -> Result<Pencil> {
        if r.dim() != s.dim() {
            return Err(Error::DimensionMismatch);
        }
        if r.is_zero() || s.is_zero() {
            return Err(Error::ZeroForm);
        }
        // proportional forms span no pencil
        let n = r.dim();
        let rows: Vec<Vec<Scalar>> = (0..n * n)
            .map(|k| vec![r.entries()[k / n][k % n].clone(), s.entries()[k / n][k % n].clone()])
            .collect();
        if linalg::rank(&rows, 2, &r.field())? < 2 {
            return Err(Error::ProportionalForms);
        }
        Ok(Pencil { r, s })
    }

    pub fn r(&self) -> &SymFormN {
        &self.r
    }

    pub fn s(&self) -> &SymFormN {
        &self.s
    }

    pub fn dim(&self) -> usize {
        self.r.dim()
    }

    pub fn field(&self) -> FieldDescriptor {
        self.r.field()
    }

    pub fn embed_into(&self, target: &FieldDescriptor) -> Result<Pencil> {
        Pencil::new(self.r.embed_into(target)?, self.s.embed_into(target)?)
    }

    /// The member aR + bS; (a, b) is projective and must be nonzero.
    pub fn member(&self, a: &Scalar, b: &Scalar) -> Result<SymFormN> {
        if a.is_zero() && b.is_zero() {
            return Err(Error::ZeroCoefficients);
        }
        self.r.scale(a)?.add(&self.s.scale(b)?)
    }

    /// Gram matrix [[⟨f,f⟩, ⟨f,g⟩], [⟨f,g⟩, ⟨g,g⟩]] of the determinant pairing
    /// on the restricted spanning forms, plus its determinant. The determinant
    /// is nonzero iff the restricted pencil is regular.
    pub fn restricted_gram(&self, line: &LineInPV) -> Result<(Matrix, Scalar)> {
        let f = restrict(&self.r, line)?;
        let g = restrict(&self.s, line)?;
        let ff = f.det_pairing(&f)?;
        let fg = f.det_pairing(&g)?;
        let gg = g.det_pairing(&g)?;
        let det = ff.checked_mul(&gg)?.checked_sub(&fg.checked_mul(&fg)?)?;
        let gram = vec![vec![ff, fg.clone()], vec![fg, gg]];
        Ok((gram, det))
    }

    /// The trichotomy of the main theorem: exactly one of Regular,
    /// LineInQuadric, CommonZero holds, and Regular is equivalent to a nonzero
    /// restricted Gram determinant.
    pub fn diagnose(&self, line: &LineInPV) -> Result<Diagnosis> {
        let f = restrict(&self.r, line)?;
        let g = restrict(&self.s, line)?;
        let field = line.field();
        // condition (i): some nontrivial combination restricts to zero
        let rows = vec![
            vec![f.a.clone(), g.a.clone()],
            vec![f.b.clone(), g.b.clone()],
            vec![f.c.clone(), g.c.clone()],
        ];
        let ker = linalg::kernel(&rows, 2, &field)?;
        if let Some(v) = ker.first() {
            return Ok(Diagnosis::LineInQuadric {
                a: v[0].clone(),
                b: v[1].clone(),
            });
        }
        // condition (ii): a common isotropic point, over K or one quadratic
        // extension splitting f; the resultant decides existence first.
        if self.restricted_resultant(line)?.is_zero() {
            let (pts, ext) = f.isotropic_points(true)?;
            let ge = g.embed_into(&ext)?;
            for p in pts {
                if ge.is_isotropic_point(&p)? {
                    return Ok(Diagnosis::CommonZero { point: p, field: ext });
                }
            }
            return Err(Error::ContractViolation(String::from(
                "zero resultant but no shared isotropic point found",
            )));
        }
        Ok(Diagnosis::Regular)
    }

    /// Resultant of the two restricted spanning forms.
    pub fn restricted_resultant(&self, line: &LineInPV) -> Result<Scalar> {
        restrict(&self.r, line)?.resultant(&restrict(&self.s, line)?)
    }

    /// The involution of the line whose conjugate pairs are the intersection
    /// pairs of the pencil members: the form orthogonal to both restrictions
    /// under the determinant pairing, through the form↔involution bijection.
    pub fn induced_involution(&self, line: &LineInPV) -> Result<Involution> {
        match self.diagnose(line)? {
            Diagnosis::Regular => {}
            other => return Err(Error::NotRegular(format!("{other}"))),
        }
        let f = restrict(&self.r, line)?;
        let g = restrict(&self.s, line)?;
        let h = orthocomplement_in_pencil(&f, &g)?;
        Involution::from_form(&h)
    }

    /// Checks one member's intersection pair against the involution.
    /// `check_extension` also verifies members with no K-points by passing to
    /// the quadratic extension where their pair lives.
    pub fn member_pair_check(
        &self,
        a: &Scalar,
        b: &Scalar,
        line: &LineInPV,
        inv: &Involution,
        check_extension: bool,
    ) -> Result<MemberCheck> {
        let member = self.member(a, b)?;
        let rf = restrict(&member, line)?;
        let violation = |msg: String| Err(Error::ContractViolation(msg));
        match rf.classify() {
            Classification::Zero => violation(format!(
                "member ({a}, {b}) restricts to zero on a regular line"
            )),
            Classification::Degenerate => {
                let (pts, _) = rf.isotropic_points(false)?;
                let p = &pts[0];
                if inv.apply(p)?.projectively_eq(p)? {
                    Ok(MemberCheck::FixedTangent)
                } else {
                    violation(format!("tangent point {p} of member ({a}, {b}) not fixed"))
                }
            }
            Classification::Hyperbolic => {
                let (pts, ext) = rf.isotropic_points(false)?;
                let inv = inv.embed_into(&ext)?;
                if inv.apply(&pts[0])?.projectively_eq(&pts[1])? {
                    Ok(MemberCheck::Swapped)
                } else {
                    violation(format!(
                        "pair ({}, {}) of member ({a}, {b}) not swapped",
                        pts[0], pts[1]
                    ))
                }
            }
            Classification::Anisotropic => {
                if check_extension {
                    let (pts, ext) = rf.isotropic_points(true)?;
                    let inv = inv.embed_into(&ext)?;
                    if !inv.apply(&pts[0])?.projectively_eq(&pts[1])? {
                        return violation(format!(
                            "virtual pair ({}, {}) of member ({a}, {b}) not swapped",
                            pts[0], pts[1]
                        ));
                    }
                }
                Ok(MemberCheck::NoIntersection)
            }
        }
    }

    /// All p+1 projective parameter values over GF(p); a deterministic list of
    /// `count` values over infinite fields.
    pub fn parameter_values(&self, count: usize) -> Vec<(Scalar, Scalar)> {
        let field = self.field();
        match field.elements() {
            Some(elems) => {
                let mut out: Vec<(Scalar, Scalar)> =
                    elems.into_iter().map(|t| (field.one(), t)).collect();
                out.push((field.zero(), field.one()));
                out
            }
            None => {
                let mut out = Vec::with_capacity(count);
                out.push((field.zero(), field.one()));
                let mut k: i64 = 0;
                while out.len() < count {
                    out.push((field.one(), field.from_i64(k)));
                    k = if k > 0 { -k } else { -k + 1 };
                }
                out
            }
        }
    }
}
