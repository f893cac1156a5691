//! Named, reproducible verification scenarios for the involution
//! correspondence, the main theorem, the fixed-point characterization, and the
//! butterfly trichotomy, plus a seeded fuzzer over finite fields.
//!
//! Every check is exact; failing checks carry the inputs and both sides of the
//! violated equation. Reports are deterministic given (inputs, seed): each
//! trial derives its own sub-seed from (seed, trial index).

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::binform::{Classification, SymForm2};
use crate::error::{Error, Result};
use crate::field::{FieldDescriptor, Scalar};
use crate::involution::{orthocomplement_in_pencil, Involution};
use crate::linalg;
use crate::pencil::{restrict, Diagnosis, LineInPV, MemberCheck, Pencil, SymFormN};
use crate::projline::{cross_ratio, ProjPoint};

/// One verdict inside a scenario report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub witness: String,
}

/// Outcome of one named scenario.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScenarioReport {
    pub scenario: String,
    pub field: String,
    pub instance: String,
    pub seed: Option<u64>,
    pub checks: Vec<Check>,
}

impl ScenarioReport {
    fn new(scenario: &str, field: &FieldDescriptor, instance: String, seed: Option<u64>) -> Self {
        ScenarioReport {
            scenario: scenario.to_string(),
            field: field.name(),
            instance,
            seed,
            checks: Vec::new(),
        }
    }

    fn push(&mut self, name: impl Into<String>, pass: bool, witness: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            pass,
            witness: witness.into(),
        });
    }

    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Sub-seeded generator: parallel trial order can never change the report.
pub fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut z = seed ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    // splitmix64 finalizer
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    ChaCha8Rng::seed_from_u64(z ^ (z >> 31))
}

fn random_point<R: RngCore>(field: &FieldDescriptor, rng: &mut R) -> ProjPoint {
    if rng.next_u64() % 8 == 0 {
        ProjPoint::infinity(field)
    } else {
        ProjPoint::affine(field.random(rng))
    }
}

fn random_involution<R: RngCore>(field: &FieldDescriptor, rng: &mut R) -> Involution {
    loop {
        if let Ok(inv) = Involution::new(field.random(rng), field.random(rng), field.random(rng)) {
            return inv;
        }
    }
}

/// All projective points of P¹ over a finite field.
pub fn all_points(field: &FieldDescriptor) -> Option<Vec<ProjPoint>> {
    let elems = field.elements()?;
    let mut pts: Vec<ProjPoint> = elems.into_iter().map(ProjPoint::affine).collect();
    pts.push(ProjPoint::infinity(field));
    Some(pts)
}

/// All involutions over a finite field, one representative per triple.
pub fn all_involutions(field: &FieldDescriptor) -> Option<Vec<Involution>> {
    let elems = field.elements()?;
    let mut out = Vec::new();
    for a in &elems {
        for b in &elems {
            for c in &elems {
                if let Ok(inv) = Involution::new(a.clone(), b.clone(), c.clone()) {
                    out.push(inv);
                }
            }
        }
    }
    Some(out)
}

/// Conjugate-pair orthogonality, exhaustively over small finite fields and by
/// seeded sampling elsewhere.
pub fn verify_prop1(field: &FieldDescriptor, trials: u64, seed: u64) -> ScenarioReport {
    let exhaustive = matches!(field.order(), Some(p) if p <= 5);
    let mut report = ScenarioReport::new(
        "prop1",
        field,
        if exhaustive {
            String::from("exhaustive")
        } else {
            format!("{trials} random trials")
        },
        Some(seed),
    );
    let mut run = |inv: &Involution, p: &ProjPoint, count: &mut u64| {
        *count += 1;
        match inv.pair_form_orthogonal(p) {
            Ok(true) => {}
            Ok(false) => {
                let q = inv.apply(p).unwrap();
                let g = SymForm2::from_points(p, &q).unwrap();
                let h = inv.desargues_form();
                let val = g.det_pairing(&h).unwrap();
                report.push(
                    "pair-form-orthogonality",
                    false,
                    format!("inv={inv} point={p} pairing=<{g},{h}>={val}, expected 0"),
                );
            }
            Err(e) => report.push("pair-form-orthogonality", false, format!("error: {e}")),
        }
    };
    let mut count = 0u64;
    if exhaustive {
        let invs = all_involutions(field).expect("finite field");
        let pts = all_points(field).expect("finite field");
        for inv in &invs {
            for p in &pts {
                run(inv, p, &mut count);
            }
        }
    } else {
        for i in 0..trials {
            let mut rng = trial_rng(seed, i);
            let inv = random_involution(field, &mut rng);
            let p = random_point(field, &mut rng);
            run(&inv, &p, &mut count);
        }
    }
    let failures = report.checks.len();
    report.push(
        "prop1-summary",
        failures == 0,
        format!("{count} cases, {failures} failures"),
    );
    report
}

fn resultant_or_zero(f: &SymForm2, g: &SymForm2) -> Scalar {
    if f.is_zero() || g.is_zero() {
        f.field().zero()
    } else {
        f.resultant(g).expect("nonzero forms")
    }
}

/// The main theorem on one instance: the forward direction when the line is
/// regular for the pencil, the only-if direction otherwise, plus agreement of
/// the Gram-determinant and resultant criteria with the verdict.
pub fn verify_main_theorem(pencil: &Pencil, line: &LineInPV, members: usize) -> ScenarioReport {
    let field = pencil.field();
    let mut report = ScenarioReport::new(
        "main",
        &field,
        format!("dim P^{}", pencil.dim() - 1),
        None,
    );
    let diag = match pencil.diagnose(line) {
        Ok(d) => d,
        Err(e) => {
            report.push("diagnose", false, format!("error: {e}"));
            return report;
        }
    };
    report.push("diagnose", true, format!("{diag}"));

    // Regular ⟺ Gram det ≠ 0 ⟺ resultant ≠ 0 (resultant when both
    // restrictions are nonzero).
    let (_, gram_det) = pencil.restricted_gram(line).expect("dimensions checked");
    let f = restrict(pencil.r(), line).expect("dimensions checked");
    let g = restrict(pencil.s(), line).expect("dimensions checked");
    let regular = diag == Diagnosis::Regular;
    report.push(
        "regular-iff-gram",
        regular == !gram_det.is_zero(),
        format!("verdict={diag} gram_det={gram_det}"),
    );
    let res = resultant_or_zero(&f, &g);
    report.push(
        "regular-iff-resultant",
        regular == !res.is_zero(),
        format!("verdict={diag} resultant={res}"),
    );

    match diag {
        Diagnosis::Regular => {
            let inv = pencil.induced_involution(line).expect("regular");
            let params = pencil.parameter_values(members);
            let mut tallies = [0usize; 3];
            for (a, b) in &params {
                match pencil.member_pair_check(a, b, line, &inv, true) {
                    Ok(MemberCheck::Swapped) => tallies[0] += 1,
                    Ok(MemberCheck::FixedTangent) => tallies[1] += 1,
                    Ok(MemberCheck::NoIntersection) => tallies[2] += 1,
                    Err(e) => report.push(
                        "member-pair",
                        false,
                        format!("member ({a}, {b}): {e}"),
                    ),
                }
            }
            report.push(
                "members-conjugate",
                report.checks.iter().all(|c| c.pass),
                format!(
                    "{} members: {} swapped, {} tangent, {} no K-intersection",
                    params.len(),
                    tallies[0],
                    tallies[1],
                    tallies[2]
                ),
            );
        }
        Diagnosis::LineInQuadric { ref a, ref b } => {
            let zero = f
                .scale(a)
                .and_then(|fa| fa.add(&g.scale(b)?))
                .map(|m| m.is_zero())
                .unwrap_or(false);
            report.push(
                "line-in-quadric-witness",
                zero,
                format!("member ({a}, {b}) restricts to zero"),
            );
            only_if_direction(pencil, line, members, &mut report);
        }
        Diagnosis::CommonZero { ref point, field: ref ext } => {
            let mut ok = true;
            for (name, form) in [("R", &f), ("S", &g)] {
                let iso = form
                    .embed_into(ext)
                    .and_then(|fe| fe.is_isotropic_point(point))
                    .unwrap_or(false);
                if !iso {
                    ok = false;
                    report.push(
                        "common-zero-witness",
                        false,
                        format!("{point} not isotropic for restricted {name}"),
                    );
                }
            }
            if ok {
                report.push(
                    "common-zero-witness",
                    true,
                    format!("{point} isotropic for both restrictions, hence all members"),
                );
            }
            only_if_direction(pencil, line, members, &mut report);
        }
    }
    report
}

/// The only-if direction, checked constructively: when the non-regular
/// instance still yields two independent conjugate-pair constraints, no single
/// involution can realize all member pairs.
fn only_if_direction(
    pencil: &Pencil,
    line: &LineInPV,
    members: usize,
    report: &mut ScenarioReport,
) {
    let params = pencil.parameter_values(members);
    let mut pair_forms: Vec<(Scalar, Scalar, SymForm2)> = Vec::new();
    for (a, b) in &params {
        let Ok(m) = pencil.member(a, b) else { continue };
        let Ok(r) = restrict(&m, line) else { continue };
        if r.classify() == Classification::Hyperbolic {
            pair_forms.push((a.clone(), b.clone(), r));
        }
    }
    // find two non-proportional constraints
    let mut found = None;
    'outer: for i in 0..pair_forms.len() {
        for j in (i + 1)..pair_forms.len() {
            if !pair_forms[i].2.proportional_to(&pair_forms[j].2).unwrap_or(true) {
                found = Some((i, j));
                break 'outer;
            }
        }
    }
    let Some((i, j)) = found else {
        report.push(
            "only-if",
            true,
            "fewer than two independent K-rational pairs; nothing to realize",
        );
        return;
    };
    let g1 = &pair_forms[i].2;
    let g2 = &pair_forms[j].2;
    match orthocomplement_in_pencil(g1, g2).and_then(|h| Involution::from_form(&h)) {
        Err(Error::DegenerateForm) | Err(Error::DegenerateComplement) => {
            report.push(
                "only-if",
                true,
                format!("pairs of members {g1} and {g2} admit no involution (degenerate complement)"),
            );
        }
        Err(e) => report.push("only-if", false, format!("unexpected error: {e}")),
        Ok(candidate) => {
            // the candidate swaps these two pairs; it must fail on some third
            for (a, b, r) in &pair_forms {
                let Ok((pts, ext)) = r.isotropic_points(false) else { continue };
                if pts.len() != 2 {
                    continue;
                }
                let Ok(cand) = candidate.embed_into(&ext) else { continue };
                let swapped = cand
                    .apply(&pts[0])
                    .and_then(|img| img.projectively_eq(&pts[1]))
                    .unwrap_or(false);
                if !swapped {
                    report.push(
                        "only-if",
                        true,
                        format!("candidate {candidate} fails on member ({a}, {b})"),
                    );
                    return;
                }
            }
            report.push(
                "only-if",
                false,
                format!("candidate {candidate} swapped every member pair despite non-regularity"),
            );
        }
    }
}

/// Fixed points of the induced involution are orthogonal under every member,
/// and each member pair is harmonic with them.
pub fn verify_prop3(pencil: &Pencil, line: &LineInPV, members: usize) -> ScenarioReport {
    let field = pencil.field();
    let mut report = ScenarioReport::new("prop3", &field, format!("dim P^{}", pencil.dim() - 1), None);
    let inv = match pencil.induced_involution(line) {
        Ok(inv) => inv,
        Err(e) => {
            report.push("regular", false, format!("{e}"));
            return report;
        }
    };
    let (pts, ext) = inv.fixed_points(true).expect("involutions have valid Desargues forms");
    if pts.len() != 2 {
        report.push(
            "fixed-points",
            false,
            format!("expected 2 fixed points over {}, got {}", ext.name(), pts.len()),
        );
        return report;
    }
    let (m, n) = (&pts[0], &pts[1]);
    report.push("fixed-points", true, format!("M={m} N={n} over {}", ext.name()));

    let f = restrict(pencil.r(), line).expect("dimensions checked");
    let g = restrict(pencil.s(), line).expect("dimensions checked");
    for (name, form) in [("R", &f), ("S", &g)] {
        match form.embed_into(&ext).and_then(|fe| fe.eval_pair(m, n)) {
            Ok(v) => report.push(
                format!("orthogonal-under-{name}"),
                v.is_zero(),
                format!("q(M, N) = {v}"),
            ),
            Err(e) => report.push(format!("orthogonal-under-{name}"), false, format!("{e}")),
        }
    }

    // harmonic relation for each member pair, in the extension tower where
    // the pair lives
    let mut harmonic = 0usize;
    for (a, b) in pencil.parameter_values(members) {
        let r = pencil
            .member(&a, &b)
            .and_then(|mm| restrict(&mm, line))
            .expect("dimensions checked");
        let Ok(re) = r.embed_into(&ext) else { continue };
        if re.is_zero() || re.det().is_zero() {
            continue; // tangent members have no distinct pair
        }
        let Ok((pair, tower)) = re.isotropic_points(true) else { continue };
        if pair.len() != 2 {
            continue;
        }
        let (s, t) = (&pair[0], &pair[1]);
        let mt = m.embed_into(&tower).expect("tower extends ext");
        let nt = n.embed_into(&tower).expect("tower extends ext");
        match cross_ratio(s, t, &mt, &nt) {
            Ok(cr) if cr.is_minus_one() => harmonic += 1,
            Ok(cr) => report.push(
                "harmonic",
                false,
                format!("member ({a}, {b}): (S,T;M,N) = {cr}, expected -1"),
            ),
            Err(e) => report.push("harmonic", false, format!("member ({a}, {b}): {e}")),
        }
    }
    report.push(
        "harmonic-summary",
        report.checks.iter().all(|c| c.pass),
        format!("{harmonic} member pairs harmonic with the fixed points"),
    );
    report
}

/// An affine line with a marked point, plus a pencil in the projective
/// closure. The projective line basis is chosen so the marked point is 0 and
/// the direction point at infinity is ∞.
#[derive(Debug, Clone)]
pub struct AffineConfig {
    pub dim: usize,
    pub base_point: Vec<Scalar>,
    pub direction: Vec<Scalar>,
    pub marked: Vec<Scalar>,
    pub pencil: Pencil,
}

impl AffineConfig {
    pub fn new(
        dim: usize,
        base_point: Vec<Scalar>,
        direction: Vec<Scalar>,
        marked: Vec<Scalar>,
        pencil: Pencil,
    ) -> Result<AffineConfig> {
        if base_point.len() != dim
            || direction.len() != dim
            || marked.len() != dim
            || pencil.dim() != dim + 1
        {
            return Err(Error::DimensionMismatch);
        }
        if direction.iter().all(|v| v.is_zero()) {
            return Err(Error::DependentVectors);
        }
        // marked − base must be a multiple of direction
        let diff: Result<Vec<Scalar>> = marked
            .iter()
            .zip(base_point.iter())
            .map(|(m, p)| m.checked_sub(p))
            .collect();
        let diff = diff?;
        let field = direction[0].field();
        let rows: Vec<Vec<Scalar>> = diff
            .iter()
            .zip(direction.iter())
            .map(|(d, v)| vec![d.clone(), v.clone()])
            .collect();
        if linalg::rank(&rows, 2, &field)? > 1 {
            return Err(Error::PointNotOnLine);
        }
        Ok(AffineConfig {
            dim,
            base_point,
            direction,
            marked,
            pencil,
        })
    }

    /// e1 = (D, 0), e2 = (M, 1): the point (x : 1) is the affine point M + xD
    /// and (1 : 0) is the direction point N at infinity.
    pub fn projective_line(&self) -> Result<LineInPV> {
        let field = self.direction[0].field();
        let mut e1 = self.direction.clone();
        e1.push(field.zero());
        let mut e2 = self.marked.clone();
        e2.push(field.one());
        LineInPV::new(e1, e2)
    }
}

/// Which branch of the butterfly trichotomy one member falls into.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum ButterflyBranch {
    TangentAtMarked,
    Asymptote,
    SymmetricPair,
}

fn butterfly_branch(r: &SymForm2) -> Option<ButterflyBranch> {
    match r.classify() {
        Classification::Zero => None,
        Classification::Degenerate => {
            if r.b.is_zero() && r.c.is_zero() {
                Some(ButterflyBranch::TangentAtMarked) // a x²: double root at 0
            } else if r.a.is_zero() && r.b.is_zero() {
                Some(ButterflyBranch::Asymptote) // c y²: double root at ∞
            } else {
                None
            }
        }
        // two distinct roots, actual or virtual; symmetric about 0 iff b = 0
        _ => {
            if r.b.is_zero() {
                Some(ButterflyBranch::SymmetricPair)
            } else {
                None
            }
        }
    }
}

/// Butterfly scenario: hypothesis validation, the forced involution x ↦ −x,
/// and the member trichotomy.
pub fn verify_butterfly(cfg: &AffineConfig, members: usize) -> Result<ScenarioReport> {
    let field = cfg.pencil.field();
    let mut report = ScenarioReport::new(
        "butterfly",
        &field,
        format!("affine dim {}", cfg.dim),
        None,
    );
    let line = cfg.projective_line()?;

    // hypothesis scan: need a tangent-at-M member plus a symmetric-pair
    // member, or two independent symmetric-pair members
    let params = cfg.pencil.parameter_values(members);
    let mut tangent_at_m = 0usize;
    let mut symmetric: Vec<SymForm2> = Vec::new();
    for (a, b) in &params {
        let r = restrict(&cfg.pencil.member(a, b)?, &line)?;
        match butterfly_branch(&r) {
            Some(ButterflyBranch::TangentAtMarked) => tangent_at_m += 1,
            Some(ButterflyBranch::SymmetricPair) => {
                if symmetric.iter().all(|s| !s.proportional_to(&r).unwrap_or(true)) {
                    symmetric.push(r);
                }
            }
            _ => {}
        }
    }
    let hypothesis_ok =
        (tangent_at_m >= 1 && !symmetric.is_empty()) || symmetric.len() >= 2;
    if !hypothesis_ok {
        return Err(Error::HypothesisViolation(format!(
            "found {tangent_at_m} tangent-at-M members and {} independent symmetric pairs",
            symmetric.len()
        )));
    }
    report.push(
        "hypothesis",
        true,
        format!(
            "{tangent_at_m} tangent-at-M members, {} independent symmetric pairs",
            symmetric.len()
        ),
    );

    // internal consistency: for K-rational symmetric pairs, the affine
    // midpoint test 2M = P + Q must agree with the harmonic test
    // (P, Q; M, N) = −1
    let zero_pt = ProjPoint::affine(field.zero());
    let inf_pt = ProjPoint::infinity(&field);
    for s in &symmetric {
        let (pts, _) = s.isotropic_points(false)?;
        if pts.len() != 2 || pts.iter().any(|p| p.is_infinity()) {
            continue;
        }
        let sum = pts[0].x().checked_add(pts[1].x())?;
        let midpoint_ok = sum.is_zero();
        let harmonic_ok = cross_ratio(&pts[0], &pts[1], &zero_pt, &inf_pt)
            .map(|cr| cr.is_minus_one())
            .unwrap_or(false);
        report.push(
            "midpoint-harmonic-agreement",
            midpoint_ok == harmonic_ok && midpoint_ok,
            format!(
                "pair ({}, {}): parameter sum {sum}, harmonic {harmonic_ok}",
                pts[0], pts[1]
            ),
        );
    }

    // the induced involution must be x ↦ −x in these coordinates
    match cfg.pencil.induced_involution(&line) {
        Ok(inv) => {
            let neg = Involution::new(field.one(), field.zero(), field.zero())
                .expect("x -> -x is invertible");
            let ok = inv.projectively_eq(&neg).unwrap_or(false);
            report.push(
                "involution-is-negation",
                ok,
                format!("induced involution {inv}"),
            );
        }
        Err(e) => report.push("involution-is-negation", false, format!("{e}")),
    }

    // trichotomy: every member falls into exactly one branch
    let mut counts = [0usize; 3];
    for (a, b) in &params {
        let r = restrict(&cfg.pencil.member(a, b)?, &line)?;
        match butterfly_branch(&r) {
            Some(ButterflyBranch::TangentAtMarked) => counts[0] += 1,
            Some(ButterflyBranch::Asymptote) => counts[1] += 1,
            Some(ButterflyBranch::SymmetricPair) => {
                counts[2] += 1;
                // actual or virtual pair swapped by x ↦ −x
                let (pts, ext) = r.isotropic_points(true)?;
                let swapped = pts.len() == 2
                    && pts[0]
                        .x()
                        .checked_add(pts[1].x())
                        .map(|s| s.is_zero())
                        .unwrap_or(false);
                if !swapped {
                    report.push(
                        "symmetric-pair",
                        false,
                        format!(
                            "member ({a}, {b}) pair over {} not symmetric about M",
                            ext.name()
                        ),
                    );
                }
            }
            None => report.push(
                "trichotomy",
                false,
                format!("member ({a}, {b}) restriction {r} fits no branch"),
            ),
        }
    }
    report.push(
        "trichotomy",
        report.checks.iter().all(|c| c.pass),
        format!(
            "{} members: {} tangent at M, {} asymptote, {} symmetric pairs",
            params.len(),
            counts[0],
            counts[1],
            counts[2]
        ),
    );
    Ok(report)
}

/// Pencil of conics through four points in general position: the two
/// degenerate members (AB)(CD) and (AC)(BD), each the symmetrized product of
/// two line covectors. Also returns a few small-coordinate lines through none
/// of the four points.
pub fn classical_desargues_scenario(
    points: &[[Scalar; 3]; 4],
) -> Result<(Pencil, Vec<LineInPV>)> {
    let field = points[0][0].field();
    // general position: all four 3×3 minors nonzero
    for skip in 0..4 {
        let rows: Vec<Vec<Scalar>> = (0..4)
            .filter(|&i| i != skip)
            .map(|i| points[i].to_vec())
            .collect();
        if linalg::det(&rows, &field)?.is_zero() {
            return Err(Error::DegeneratePosition);
        }
    }
    let cross = |p: &[Scalar; 3], q: &[Scalar; 3]| -> Result<Vec<Scalar>> {
        Ok(vec![
            p[1].checked_mul(&q[2])?.checked_sub(&p[2].checked_mul(&q[1])?)?,
            p[2].checked_mul(&q[0])?.checked_sub(&p[0].checked_mul(&q[2])?)?,
            p[0].checked_mul(&q[1])?.checked_sub(&p[1].checked_mul(&q[0])?)?,
        ])
    };
    let half = field.fraction(1, 2)?;
    let line_pair_conic = |u: &[Scalar], v: &[Scalar]| -> Result<SymFormN> {
        let mut m = vec![vec![field.zero(); 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                let s = u[i]
                    .checked_mul(&v[j])?
                    .checked_add(&v[i].checked_mul(&u[j])?)?;
                m[i][j] = half.checked_mul(&s)?;
            }
        }
        SymFormN::new(m)
    };
    let [a, b, c, d] = points;
    let r = line_pair_conic(&cross(a, b)?, &cross(c, d)?)?;
    let s = line_pair_conic(&cross(a, c)?, &cross(b, d)?)?;
    let pencil = Pencil::new(r, s)?;

    // small-coordinate lines avoiding all four points
    let mut lines = Vec::new();
    'search: for u0 in -2i64..=2 {
        for u1 in -2i64..=2 {
            for u2 in -2i64..=2 {
                if (u0, u1, u2) == (0, 0, 0) {
                    continue;
                }
                let u: Vec<Scalar> = [u0, u1, u2].iter().map(|&k| field.from_i64(k)).collect();
                let misses = points.iter().all(|p| {
                    linalg::dot(&u, &p.to_vec()).map(|v| !v.is_zero()).unwrap_or(false)
                });
                if !misses {
                    continue;
                }
                let basis = linalg::kernel(&[u], 3, &field)?;
                if basis.len() == 2 {
                    if let Ok(line) = LineInPV::new(basis[0].clone(), basis[1].clone()) {
                        lines.push(line);
                        if lines.len() >= 3 {
                            break 'search;
                        }
                    }
                }
            }
        }
    }
    Ok((pencil, lines))
}

fn random_symform<R: RngCore>(field: &FieldDescriptor, n: usize, rng: &mut R) -> SymFormN {
    loop {
        let mut m = vec![vec![field.zero(); n]; n];
        for i in 0..n {
            for j in i..n {
                let v = field.random(rng);
                m[i][j] = v.clone();
                m[j][i] = v;
            }
        }
        if let Ok(f) = SymFormN::new(m) {
            if !f.is_zero() {
                return f;
            }
        }
    }
}

fn random_line<R: RngCore>(field: &FieldDescriptor, n: usize, rng: &mut R) -> LineInPV {
    loop {
        let e1: Vec<Scalar> = (0..n).map(|_| field.random(rng)).collect();
        let e2: Vec<Scalar> = (0..n).map(|_| field.random(rng)).collect();
        if let Ok(line) = LineInPV::new(e1, e2) {
            return line;
        }
    }
}

fn random_pencil<R: RngCore>(field: &FieldDescriptor, n: usize, rng: &mut R) -> Pencil {
    loop {
        let r = random_symform(field, n, rng);
        let s = random_symform(field, n, rng);
        if let Ok(p) = Pencil::new(r, s) {
            return p;
        }
    }
}

/// Verdict distribution of a fuzz campaign.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct FuzzTally {
    pub regular: u64,
    pub common_zero: u64,
    pub line_in_quadric: u64,
    pub failures: u64,
}

/// Seeded fuzz campaign: random pencils and lines, the main theorem on each
/// instance, the fixed-point characterization on the regular ones, and a tally
/// of the three verdicts. Bit-identical across runs with the same seed.
pub fn fuzz_campaign(
    field: &FieldDescriptor,
    ambient_dim: usize,
    trials: u64,
    seed: u64,
) -> ScenarioReport {
    fuzz_campaign_with_tally(field, ambient_dim, trials, seed).0
}

pub fn fuzz_campaign_with_tally(
    field: &FieldDescriptor,
    ambient_dim: usize,
    trials: u64,
    seed: u64,
) -> (ScenarioReport, FuzzTally) {
    let n = ambient_dim + 1;
    let mut report = ScenarioReport::new(
        "fuzz",
        field,
        format!("dim P^{ambient_dim}, {trials} trials"),
        Some(seed),
    );
    let members = 20;
    let mut verdicts = [0u64; 3]; // regular, common-zero, line-in-quadric
    let mut failures = 0u64;
    for i in 0..trials {
        let mut rng = trial_rng(seed, i);
        let pencil = random_pencil(field, n, &mut rng);
        let line = random_line(field, n, &mut rng);
        let main = verify_main_theorem(&pencil, &line, members);
        let mut regular = false;
        for c in &main.checks {
            if c.name == "diagnose" && c.pass {
                if c.witness.starts_with("Regular") {
                    verdicts[0] += 1;
                    regular = true;
                } else if c.witness.starts_with("CommonZero") {
                    verdicts[1] += 1;
                } else if c.witness.starts_with("LineInQuadric") {
                    verdicts[2] += 1;
                }
            }
        }
        if !main.pass() {
            failures += 1;
            for c in main.checks.into_iter().filter(|c| !c.pass) {
                report.push(format!("trial-{i}-{}", c.name), false, c.witness);
            }
            continue;
        }
        if regular {
            let p3 = verify_prop3(&pencil, &line, members);
            if !p3.pass() {
                failures += 1;
                for c in p3.checks.into_iter().filter(|c| !c.pass) {
                    report.push(format!("trial-{i}-{}", c.name), false, c.witness);
                }
            }
        }
    }
    report.push(
        "campaign",
        failures == 0,
        format!(
            "{trials} trials: {} regular, {} common-zero, {} line-in-quadric, {failures} failures",
            verdicts[0], verdicts[1], verdicts[2]
        ),
    );
    let tally = FuzzTally {
        regular: verdicts[0],
        common_zero: verdicts[1],
        line_in_quadric: verdicts[2],
        failures,
    };
    (report, tally)
}
