//! Acceptance suite: one test per criterion, each printing a single
//! pass/fail line (visible with `--nocapture`; cargo's own per-test lines
//! mirror them either way).

use desargues_core::harness::{
    all_involutions, classical_desargues_scenario, fuzz_campaign_with_tally, trial_rng,
    verify_butterfly, verify_prop1, verify_prop3,
};
use desargues_core::linalg;
use desargues_core::pencil::restrict;
use desargues_core::projline::cross_ratio;
use desargues_core::{
    AffineConfig, Diagnosis, FieldDescriptor, Involution, LineInPV, MemberCheck, Pencil,
    ProjPoint, Scalar, SymForm2, SymFormN,
};
use rand_core::RngCore;
use std::time::Instant;

fn q() -> FieldDescriptor {
    FieldDescriptor::rationals()
}

fn gf(p: u64) -> FieldDescriptor {
    FieldDescriptor::prime(p).unwrap()
}

fn report(n: u32, title: &str, outcome: Result<String, String>) {
    match outcome {
        Ok(w) => println!("criterion {n:2} {title}: PASS ({w})"),
        Err(w) => {
            println!("criterion {n:2} {title}: FAIL ({w})");
            panic!("criterion {n} failed: {w}");
        }
    }
}

#[test]
fn criterion_01_pairing_identity() {
    let run = || -> Result<String, String> {
        let mut total = 0u64;
        for p in [3u64, 5] {
            let field = gf(p);
            let elems = field.elements().unwrap();
            for a in &elems {
                for b in &elems {
                    for c in &elems {
                        let f = SymForm2::new(a.clone(), b.clone(), c.clone()).unwrap();
                        if f.det_pairing(&f).unwrap() != f.det() {
                            return Err(format!("GF({p}) form {f}"));
                        }
                        total += 1;
                    }
                }
            }
        }
        let field = q();
        for i in 0..10_000u64 {
            let mut rng = trial_rng(0xACCE_0001, i);
            let f = SymForm2::new(
                field.random(&mut rng),
                field.random(&mut rng),
                field.random(&mut rng),
            )
            .unwrap();
            if f.det_pairing(&f).unwrap() != f.det() {
                return Err(format!("rational form {f}"));
            }
            total += 1;
        }
        Ok(format!("{total} forms, zero violations"))
    };
    report(1, "pairing norm is the determinant", run());
}

#[test]
fn criterion_02_pairing_is_regular_on_b() {
    let run = || -> Result<String, String> {
        let field = q();
        // standard basis x², xy, y² of the 3-space of binary forms
        let e1 = SymForm2::from_i64(&field, 1, 0, 0);
        let e2 = SymForm2::from_i64(&field, 0, 1, 0);
        let e3 = SymForm2::from_i64(&field, 0, 0, 1);
        let basis = [&e1, &e2, &e3];
        let gram: Vec<Vec<Scalar>> = basis
            .iter()
            .map(|f| basis.iter().map(|g| f.det_pairing(g).unwrap()).collect())
            .collect();
        let det = linalg::det(&gram, &field).unwrap();
        if det != field.fraction(1, 4).unwrap() {
            return Err(format!("Gram determinant {det}"));
        }
        // e1, e3 are an isotropic pair with pairing ½ (an Artinian plane)
        let half = field.fraction(1, 2).unwrap();
        let hyperbolic = gram[0][0].is_zero()
            && gram[2][2].is_zero()
            && gram[0][2] == half
            && gram[2][0] == half;
        // e2 spans its orthogonal complement with norm −1
        let minus_line = gram[1][1] == field.from_i64(-1)
            && gram[0][1].is_zero()
            && gram[1][0].is_zero()
            && gram[1][2].is_zero()
            && gram[2][1].is_zero();
        if !hyperbolic {
            return Err("x², y² not a hyperbolic pair".into());
        }
        if !minus_line {
            return Err("xy not a <-1> line".into());
        }
        Ok("Gram det = 1/4, hyperbolic plane + <-1> line".into())
    };
    report(2, "determinant pairing is regular", run());
}

#[test]
fn criterion_03_desargues_bijection_round_trip() {
    let run = || -> Result<String, String> {
        let field = gf(5);
        let mut count = 0u64;
        // involution → form → involution
        for inv in all_involutions(&field).unwrap() {
            let back = Involution::from_form(&inv.desargues_form())
                .map_err(|e| format!("{inv:?}: {e}"))?;
            if !back.projectively_eq(&inv).unwrap() {
                return Err(format!("round trip moved {inv:?}"));
            }
            count += 1;
        }
        // form → involution → form, over every non-degenerate form
        let elems = field.elements().unwrap();
        for a in &elems {
            for b in &elems {
                for c in &elems {
                    let f = SymForm2::new(a.clone(), b.clone(), c.clone()).unwrap();
                    if f.det().is_zero() {
                        continue;
                    }
                    let g = Involution::from_form(&f).unwrap().desargues_form();
                    if !g.proportional_to(&f).unwrap() {
                        return Err(format!("round trip moved {f}"));
                    }
                    count += 1;
                }
            }
        }
        Ok(format!("GF(5), {count} round trips exact"))
    };
    report(3, "involution <-> form bijection", run());
}

#[test]
fn criterion_04_conjugate_pairs_orthogonal() {
    let run = || -> Result<String, String> {
        let exhaustive = verify_prop1(&gf(5), 0, 0);
        if !exhaustive.pass() {
            return Err(format!("GF(5) exhaustive: {:?}", exhaustive.checks));
        }
        for (field, seed) in [(q(), 0xACCE_0004u64), (gf(13), 0xACCE_0005)] {
            let r = verify_prop1(&field, 10_000, seed);
            if !r.pass() {
                let bad: Vec<_> = r.checks.iter().filter(|c| !c.pass).collect();
                return Err(format!("{}: {bad:?}", r.field));
            }
        }
        Ok("GF(5) exhaustive + 10^4 over Q and GF(13)".into())
    };
    report(4, "pair form orthogonal to Desargues form", run());
}

#[test]
fn criterion_05_main_theorem_fuzz() {
    let run = || -> Result<String, String> {
        let start = Instant::now();
        let campaigns = [
            (gf(7), 2usize, 10_000u64, 0xACCE_0050u64),
            (gf(3), 3, 10_000, 0xACCE_0051),
            (gf(13), 4, 1_000, 0xACCE_0052),
        ];
        let mut regular = 0u64;
        let mut common_zero = 0u64;
        let mut line_in_quadric = 0u64;
        for (field, dim, trials, seed) in campaigns {
            let (rep, tally) = fuzz_campaign_with_tally(&field, dim, trials, seed);
            if !rep.pass() || tally.failures != 0 {
                let bad: Vec<_> = rep.checks.iter().filter(|c| !c.pass).take(3).collect();
                return Err(format!("{} P^{dim}: {bad:?}", rep.field));
            }
            regular += tally.regular;
            common_zero += tally.common_zero;
            line_in_quadric += tally.line_in_quadric;
        }
        let elapsed = start.elapsed();
        if line_in_quadric == 0 || common_zero == 0 || regular == 0 {
            return Err(format!(
                "verdict missing: {regular}/{common_zero}/{line_in_quadric}"
            ));
        }
        if elapsed.as_secs() >= 60 {
            return Err(format!("took {elapsed:?}"));
        }
        Ok(format!(
            "21000 trials, verdicts regular {regular} / common-zero {common_zero} / line-in-quadric {line_in_quadric}, {elapsed:?}"
        ))
    };
    report(5, "regularity theorem under fuzzing", run());
}

#[test]
fn criterion_06_worked_instance() {
    let run = || -> Result<String, String> {
        let field = q();
        // restrictions of the pencil to the line itself: x² − y² and 2xy
        let r = SymFormN::from_i64(&field, &[&[1, 0], &[0, -1]]).unwrap();
        let s = SymFormN::from_i64(&field, &[&[0, 1], &[1, 0]]).unwrap();
        let pencil = Pencil::new(r, s).unwrap();
        let line = LineInPV::from_i64(&field, &[1, 0], &[0, 1]).unwrap();
        let inv = pencil.induced_involution(&line).unwrap();
        let expected = Involution::from_i64(&field, 0, 1, -1).unwrap();
        if !inv.projectively_eq(&expected).unwrap() {
            return Err(format!("involution ({}, {}, {})", inv.a, inv.b, inv.c));
        }
        // x ↦ −1/x on a sample point
        let two = ProjPoint::affine(field.from_i64(2));
        let img = inv.apply(&two).unwrap();
        if img != ProjPoint::affine(field.fraction(-1, 2).unwrap()) {
            return Err(format!("2 mapped to {img}"));
        }
        let (fixed, ext) = inv.fixed_points(true).unwrap();
        if fixed.len() != 2 {
            return Err(format!("{} fixed points", fixed.len()));
        }
        let minus_one = field.from_i64(-1).embed_into(&ext).unwrap();
        for p in &fixed {
            let sq = p.x().checked_mul(p.x()).unwrap();
            if p.is_infinity() || sq != minus_one {
                return Err(format!("fixed point {p} not a square root of -1"));
            }
        }
        if fixed[0] == fixed[1] {
            return Err("fixed points coincide".into());
        }
        // the fixed points are orthogonal under both restrictions
        for g in [
            SymForm2::from_i64(&field, 1, 0, -1),
            SymForm2::from_i64(&field, 0, 1, 0),
        ] {
            let ge = g.embed_into(&ext).unwrap();
            if !ge.orthogonal(&fixed[0], &fixed[1]).unwrap() {
                return Err(format!("{g} does not separate the fixed points"));
            }
        }
        let p3 = verify_prop3(&pencil, &line, 12);
        if !p3.pass() {
            let bad: Vec<_> = p3.checks.iter().filter(|c| !c.pass).collect();
            return Err(format!("{bad:?}"));
        }
        Ok(format!("x ↦ −1/x, fixed points ±√−1 in {}", ext.name()))
    };
    report(6, "worked instance x^2-y^2, 2xy", run());
}

#[test]
fn criterion_07_butterfly() {
    let run = || -> Result<String, String> {
        let field = q();
        let circle = SymFormN::diagonal(&[field.one(), field.one(), field.from_i64(-1)]).unwrap();
        let ellipse =
            SymFormN::diagonal(&[field.one(), field.from_i64(4), field.from_i64(-4)]).unwrap();
        let pencil = Pencil::new(circle, ellipse).unwrap();
        let cfg = AffineConfig::new(
            2,
            vec![field.zero(), field.zero()],
            vec![field.one(), field.zero()],
            vec![field.zero(), field.zero()],
            pencil.clone(),
        )
        .unwrap();
        let line = cfg.projective_line().unwrap();
        let inv = pencil.induced_involution(&line).unwrap();
        let neg = Involution::from_i64(&field, 1, 0, 0).unwrap();
        if !inv.projectively_eq(&neg).unwrap() {
            return Err(format!("involution ({}, {}, {})", inv.a, inv.b, inv.c));
        }
        let rep = verify_butterfly(&cfg, 12).map_err(|e| e.to_string())?;
        if !rep.pass() {
            let bad: Vec<_> = rep.checks.iter().filter(|c| !c.pass).collect();
            return Err(format!("{bad:?}"));
        }
        // intersections ±1 (circle) and ±2 (ellipse) are harmonic with 0, ∞
        let zero = ProjPoint::affine(field.zero());
        let inf = ProjPoint::infinity(&field);
        for v in [1i64, 2] {
            let a = ProjPoint::affine(field.from_i64(v));
            let b = ProjPoint::affine(field.from_i64(-v));
            let cr = cross_ratio(&a, &b, &zero, &inf).unwrap();
            if !cr.is_minus_one() {
                return Err(format!("cross ratio (±{v}; 0, ∞) = {}", cr.describe()));
            }
        }
        Ok("x ↦ −x, branch trichotomy, harmonic quadruples".into())
    };
    report(7, "butterfly configuration", run());
}

#[test]
fn criterion_08_classical_desargues() {
    let run = || -> Result<String, String> {
        let field = q();
        let pt = |x: i64, y: i64| -> [Scalar; 3] {
            [field.from_i64(x), field.from_i64(y), field.one()]
        };
        let (pencil, _) =
            classical_desargues_scenario(&[pt(1, 1), pt(1, -1), pt(-1, 1), pt(-1, -1)])
                .map_err(|e| e.to_string())?;
        // the line y = 2x, parametrized by x
        let line = LineInPV::from_i64(&field, &[1, 2, 0], &[0, 0, 1]).unwrap();
        let inv = pencil.induced_involution(&line).unwrap();
        let neg = Involution::from_i64(&field, 1, 0, 0).unwrap();
        if !inv.projectively_eq(&neg).unwrap() {
            return Err(format!("involution ({}, {}, {})", inv.a, inv.b, inv.c));
        }
        // degenerate members cut the pairs ±1 and ±1/2
        for (a, b, v) in [(1i64, 0i64, 1i64), (0, 1, 2)] {
            let member = pencil
                .member(&field.from_i64(a), &field.from_i64(b))
                .unwrap();
            let restr = restrict(&member, &line).unwrap();
            let (pts, _) = restr.isotropic_points(false).unwrap();
            let want_a = ProjPoint::affine(field.fraction(1, v).unwrap());
            let want_b = ProjPoint::affine(field.fraction(-1, v).unwrap());
            if !(pts.contains(&want_a) && pts.contains(&want_b) && pts.len() == 2) {
                return Err(format!("member ({a},{b}) cuts {pts:?}"));
            }
            if inv.apply(&want_a).unwrap() != want_b {
                return Err(format!("pair ±1/{v} not swapped"));
            }
        }
        // the circle member x² + y² = 2 cuts ±√(2/5), swapped over Q(√10)
        let circle = restrict(
            &pencil.member(&field.one(), &field.one()).unwrap(),
            &line,
        )
        .unwrap();
        let (pts, ext) = circle.isotropic_points(true).unwrap();
        if pts.len() != 2 || ext == field {
            return Err(format!("circle pair {pts:?} over {}", ext.name()));
        }
        let two_fifths = field.fraction(2, 5).unwrap().embed_into(&ext).unwrap();
        for p in &pts {
            if p.x().checked_mul(p.x()).unwrap() != two_fifths {
                return Err(format!("{p} is not ±√(2/5)"));
            }
        }
        let inv_ext = inv.embed_into(&ext).unwrap();
        if inv_ext.apply(&pts[0]).unwrap() != pts[1] {
            return Err("virtual circle pair not swapped".into());
        }
        match pencil
            .member_pair_check(&field.one(), &field.one(), &line, &inv, true)
            .unwrap()
        {
            MemberCheck::NoIntersection => {}
            other => return Err(format!("circle member check {other:?}")),
        }
        Ok(format!(
            "x ↦ −x; pairs ±1, ±1/2, ±√(2/5) over {}",
            ext.name()
        ))
    };
    report(8, "classical four-point theorem", run());
}

#[test]
fn criterion_09_resultant_identity() {
    let run = || -> Result<String, String> {
        let field = gf(3);
        let elems = field.elements().unwrap();
        let four = field.from_i64(4);
        // GF(9) = GF(3)(√2); every root of a binary quadratic over GF(3)
        // lives there, so shared-root search in GF(9) is a complete oracle
        let ext = field.extend_with_sqrt(&field.from_i64(2)).unwrap();
        let mut p1: Vec<ProjPoint> = ext
            .elements()
            .unwrap()
            .into_iter()
            .map(ProjPoint::affine)
            .collect();
        p1.push(ProjPoint::infinity(&ext));
        if p1.len() != 10 {
            return Err(format!("P^1(GF(9)) has {} points", p1.len()));
        }
        let mut forms: Vec<SymForm2> = Vec::new();
        for a in &elems {
            for b in &elems {
                for c in &elems {
                    let f = SymForm2::new(a.clone(), b.clone(), c.clone()).unwrap();
                    if !f.is_zero() {
                        forms.push(f);
                    }
                }
            }
        }
        let mut pairs = 0u64;
        for f in &forms {
            let fe = f.embed_into(&ext).unwrap();
            for g in &forms {
                let res = f.resultant(g).unwrap();
                let pairing = f.det_pairing(g).unwrap();
                let rhs = &four
                    * &(&(&pairing * &pairing) - &(&f.det() * &g.det()));
                if res != rhs {
                    return Err(format!("identity fails at ({f}, {g})"));
                }
                let ge = g.embed_into(&ext).unwrap();
                let shared = p1.iter().any(|p| {
                    fe.is_isotropic_point(p).unwrap() && ge.is_isotropic_point(p).unwrap()
                });
                if shared != res.is_zero() {
                    return Err(format!("oracle disagrees at ({f}, {g})"));
                }
                pairs += 1;
            }
        }
        Ok(format!("{pairs} pairs over GF(3), oracle over GF(9)"))
    };
    report(9, "resultant vs pairing identity", run());
}

fn random_symform(field: &FieldDescriptor, n: usize, rng: &mut dyn RngCore) -> SymFormN {
    let mut m = vec![vec![field.zero(); n]; n];
    for i in 0..n {
        for j in i..n {
            let v = field.random(rng);
            m[i][j] = v.clone();
            m[j][i] = v;
        }
    }
    SymFormN::new(m).unwrap()
}

fn random_instance(
    field: &FieldDescriptor,
    dim: usize,
    rng: &mut dyn RngCore,
) -> (Pencil, LineInPV) {
    let n = dim + 1;
    let pencil = loop {
        if let Ok(p) = Pencil::new(random_symform(field, n, rng), random_symform(field, n, rng)) {
            break p;
        }
    };
    let line = loop {
        let e1: Vec<Scalar> = (0..n).map(|_| field.random(rng)).collect();
        let e2: Vec<Scalar> = (0..n).map(|_| field.random(rng)).collect();
        if let Ok(l) = LineInPV::new(e1, e2) {
            break l;
        }
    };
    (pencil, line)
}

fn random_invertible_2x2(field: &FieldDescriptor, rng: &mut dyn RngCore) -> Vec<Vec<Scalar>> {
    loop {
        let s = vec![
            vec![field.random(rng), field.random(rng)],
            vec![field.random(rng), field.random(rng)],
        ];
        if !linalg::det(&s, field).unwrap().is_zero() {
            return s;
        }
    }
}

fn conjugate(inv: &Involution, s: &[Vec<Scalar>], field: &FieldDescriptor) -> Involution {
    let t = vec![
        vec![inv.a.clone(), inv.b.clone()],
        vec![inv.c.clone(), inv.a.neg_val()],
    ];
    let det = linalg::det(&s.to_vec(), field).unwrap();
    let sinv = vec![
        vec![&s[1][1] / &det, &s[0][1].neg_val() / &det],
        vec![&s[1][0].neg_val() / &det, &s[0][0] / &det],
    ];
    let m = linalg::mat_mul(&linalg::mat_mul(&sinv, &t).unwrap(), &s.to_vec()).unwrap();
    Involution::new(m[0][0].clone(), m[0][1].clone(), m[1][0].clone()).unwrap()
}

#[test]
fn criterion_10_basis_independence() {
    let run = || -> Result<String, String> {
        let mut regular_seen = 0u64;
        for i in 0..1_000u64 {
            let mut rng = trial_rng(0xACCE_0010, i);
            let field = if i % 4 == 0 { q() } else { gf(7) };
            let dim = 2 + (i % 2) as usize;
            let (pencil, line) = random_instance(&field, dim, &mut rng);
            let s = random_invertible_2x2(&field, &mut rng);
            let line2 = line.change_basis(&s).unwrap();
            let d1 = pencil.diagnose(&line).unwrap();
            let d2 = pencil.diagnose(&line2).unwrap();
            let same_variant = matches!(
                (&d1, &d2),
                (Diagnosis::Regular, Diagnosis::Regular)
                    | (Diagnosis::LineInQuadric { .. }, Diagnosis::LineInQuadric { .. })
                    | (Diagnosis::CommonZero { .. }, Diagnosis::CommonZero { .. })
            );
            if !same_variant {
                return Err(format!("trial {i}: verdict changed {d1:?} vs {d2:?}"));
            }
            // norms and pairings scale by det(S)² on every restriction
            let det_s = linalg::det(&s, &field).unwrap();
            let scale = &det_s * &det_s;
            let g1 = restrict(pencil.r(), &line).unwrap();
            let g2 = restrict(pencil.s(), &line).unwrap();
            let h1 = restrict(pencil.r(), &line2).unwrap();
            let h2 = restrict(pencil.s(), &line2).unwrap();
            if h1.det() != &scale * &g1.det()
                || h2.det() != &scale * &g2.det()
                || h1.det_pairing(&h2).unwrap() != &scale * &g1.det_pairing(&g2).unwrap()
            {
                return Err(format!("trial {i}: pairing did not scale by det(S)²"));
            }
            if d1 == Diagnosis::Regular {
                regular_seen += 1;
                let i1 = pencil.induced_involution(&line).unwrap();
                let i2 = pencil.induced_involution(&line2).unwrap();
                if !i2.projectively_eq(&conjugate(&i1, &s, &field)).unwrap() {
                    return Err(format!("trial {i}: involution not conjugated"));
                }
            }
        }
        Ok(format!(
            "1000 instances, {regular_seen} regular, all conjugation-consistent"
        ))
    };
    report(10, "line basis independence", run());
}
