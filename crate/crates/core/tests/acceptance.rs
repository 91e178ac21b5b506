//! Acceptance suite: one PASS/FAIL line per criterion; exits nonzero if any
//! criterion fails.

mod common;

use std::time::{Duration, Instant};

use num_complex::Complex64;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{alex, fixture_groups, pd, pres, seifert};
use talex::charcurves::{
    census, certify_psi2, closed_loop, default_sample_points, eliminate_w, pretzel_935,
    r6_factorization_holds, symmetric_targets, CensusCount, PlaneCurve,
};
use talex::polyalgebra::parse_laurent;
use talex::presentations::{fundamental_identity_defect, FreeWord, Presentation};
use talex::representations::{
    abelian_rep, reducible_formula, solve_representation, Representation, SolveOptions,
    TraceConstraint,
};
use talex::scalar::rat;
use talex::signature::{is_identically_zero, lt_signature, lt_signature_detail};
use talex::twisted::{alexander, coefficient_profile, wada_invariant};
use talex::{BigRational, CLaurent, QLaurent, Scalar, Tolerances};

type C = Complex64;
type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < limit, format!("{what} took {t:?}, limit {limit:?}"))
}

fn s<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn meridian_targets(p: &Presentation, y: C) -> Vec<TraceConstraint> {
    (0..p.generator_count())
        .map(|g| TraceConstraint {
            word: FreeWord::generator(g),
            value: y,
        })
        .collect()
}

/// Coefficientwise distance between two polynomials, relative to their size.
fn poly_distance(a: &CLaurent, b: &CLaurent) -> f64 {
    let scale = a.max_abs().max(b.max_abs()).max(1.0);
    (a - b).max_abs() / scale
}

fn criterion_1() -> Outcome {
    let t2 = parse_laurent("t^2 - t + 1", "t").map_err(s)?;
    let cases: Vec<(&str, Presentation, QLaurent)> = vec![
        (
            "9_35 pres",
            pres("9_35"),
            parse_laurent("7*t^2 - 13*t + 7", "t").map_err(s)?,
        ),
        ("9_35 pd", pd("9_35"), alex("9_35")),
        ("8_20 pd", pd("8_20"), t2.pow(2)),
        ("3_1 pres", pres("3_1"), t2.clone()),
        ("3_1 pd", pd("3_1"), alex("3_1")),
    ];
    for (name, p, expected) in cases {
        let start = Instant::now();
        let a = alexander(&p).map_err(s)?;
        within(start, Duration::from_secs(1), name)?;
        ensure(
            a == expected,
            format!("{name}: got {a}, expected {expected}"),
        )?;
    }
    ensure(alex("8_20") == t2.pow(2), "8_20 fixture file disagrees")?;
    Ok("9_35, 8_20, 3_1 exact".into())
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    ensure(
        r6_factorization_holds().map_err(s)?,
        "r_6 is not the product of its two factors",
    )?;
    within(start, Duration::from_secs(1), "r_6")?;
    Ok("exact division leaves 1".into())
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let e = eliminate_w().map_err(s)?;
    within(start, Duration::from_secs(10), "elimination")?;
    ensure(
        e.factors_match,
        "b = -1 specialization does not factor as expected",
    )?;
    ensure(!e.scalar.is_zero(), "zero scalar")?;
    Ok(format!("Res_w = {} (y^2 - z - 1)^2 C'", e.scalar))
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let pts = default_sample_points(10).map_err(s)?;
    ensure(pts.len() >= 20, format!("only {} sample points", pts.len()))?;
    let cert = certify_psi2(&pts, &SolveOptions::default()).map_err(s)?;
    within(start, Duration::from_secs(30), "certification")?;
    ensure(
        cert.max_deviation <= 1e-6,
        format!("max deviation {:.3e}", cert.max_deviation),
    )?;
    let on_c: Vec<_> = cert
        .samples
        .iter()
        .filter(|x| x.point.curve == "C")
        .collect();
    ensure(
        !on_c.is_empty() && on_c.len() < cert.samples.len(),
        "samples must cover both curves",
    )?;
    let worst_c = on_c
        .iter()
        .map(|x| (x.det_a - 18.0).norm())
        .fold(0.0, f64::max);
    ensure(
        worst_c <= 1e-6,
        format!("|det A - 18| = {worst_c:.3e} on C"),
    )?;
    Ok(format!(
        "{} points, max |det A - psi_2| = {:.2e}",
        cert.samples.len(),
        cert.max_deviation
    ))
}

fn criterion_5() -> Outcome {
    let tol = Tolerances::default();
    let start = Instant::now();
    let cp = PlaneCurve::c_prime();
    let monic = census(&cp, C::new(1.0, 0.0), &tol).map_err(s)?;
    let zero = census(&cp, C::zero(), &tol).map_err(s)?;
    let on_c = census(&PlaneCurve::c(), C::new(18.0, 0.0), &tol).map_err(s)?;
    within(start, Duration::from_secs(1), "censuses")?;
    ensure(
        monic.count == CensusCount::Finite(6),
        format!("census(C', 1) = {:?}", monic.count),
    )?;
    ensure(
        zero.count == CensusCount::Finite(2),
        format!("census(C', 0) = {:?}", zero.count),
    )?;
    ensure(
        on_c.is_identically_satisfied(),
        format!("census(C, 18) = {:?}", on_c.count),
    )?;
    for w in monic.witnesses.iter().chain(&zero.witnesses) {
        ensure(
            w.curve_residual <= 1e-8 && w.constraint_residual <= 1e-8,
            "witness residual above 1e-8",
        )?;
    }
    Ok("6 monic, 2 not determining the genus, identically 18 on C".into())
}

fn criterion_6() -> Outcome {
    let tol = Tolerances::default();
    let monic = census(&PlaneCurve::c_prime(), C::new(1.0, 0.0), &tol).map_err(s)?;
    ensure(monic.witnesses.len() == 6, "expected 6 witnesses")?;
    let pts = closed_loop(&monic.witnesses, &SolveOptions::default(), &tol).map_err(s)?;
    let mut worst: f64 = 0.0;
    for l in &pts {
        ensure(
            l.residual <= 1e-8,
            format!("residual {:.3e} at y = {}", l.residual, l.y),
        )?;
        worst = worst.max((l.leading - 1.0).norm());
    }
    ensure(worst <= 1e-5, format!("max |leading - 1| = {worst:.3e}"))?;
    Ok(format!("6 witnesses, max |leading - 1| = {worst:.2e}"))
}

/// Twenty seeded irreducible representations of the trefoil group.
fn trefoil_reps() -> Result<Vec<Representation<C>>, String> {
    let p = pres("3_1");
    (0..20u64)
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(i);
            let y = C::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
            let opts = SolveOptions {
                seed: i,
                ..SolveOptions::default()
            };
            solve_representation(&p, &meridian_targets(&p, y), &opts)
                .map_err(|e| format!("seed {i}: {e}"))
        })
        .collect()
}

fn criterion_7() -> Outcome {
    let p = pres("3_1");
    let tol = Tolerances::default();
    for (i, rho) in trefoil_reps()?.iter().enumerate() {
        ensure(!rho.is_reducible(1e-6), format!("seed {i}: reducible"))?;
        ensure(
            rho.residual() <= 1e-8,
            format!("seed {i}: residual {:.3e}", rho.residual()),
        )?;
        let ta = wada_invariant(&p, rho, None, &tol).map_err(s)?;
        ensure(
            ta.is_monic() && ta.degree() == Some(2),
            format!("seed {i}: {}", ta.value()),
        )?;
    }
    Ok("20 of 20 monic of degree 2".into())
}

fn criterion_8() -> Outcome {
    let tol = Tolerances::default();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut checked = 0;
    for (name, p) in fixture_groups() {
        let delta = alexander(&p).map_err(s)?;
        for j in 0..10 {
            let mut lam = if j == 0 { rat(1, 1) } else { rat(0, 1) };
            while lam.is_zero() {
                lam = rat(rng.gen_range(-9..=9), rng.gen_range(1..=7));
            }
            let rho = abelian_rep(&p, lam.clone()).map_err(s)?;
            let w = wada_invariant(&p, &rho, None, &tol).map_err(s)?;
            let f = reducible_formula(&delta, lam.clone(), &tol).map_err(s)?;
            ensure(
                w.value() == f.value(),
                format!("{name}, lambda = {lam}: {} vs {}", w.value(), f.value()),
            )?;
            checked += 1;
        }
    }
    Ok(format!("{checked} exact comparisons"))
}

fn random_word(rng: &mut ChaCha8Rng, gens: usize) -> FreeWord {
    let len = rng.gen_range(1..=14);
    FreeWord::new((0..len).map(|_| {
        (
            rng.gen_range(0..gens),
            if rng.gen_bool(0.5) { 1 } else { -1 },
        )
    }))
    .unwrap()
}

fn column_independence_exact(
    name: &str,
    p: &Presentation,
    rho: &Representation<BigRational>,
) -> Result<(), String> {
    let tol = Tolerances::default();
    let first = wada_invariant(p, rho, Some(0), &tol).map_err(s)?;
    for k in 1..p.generator_count() {
        let other = wada_invariant(p, rho, Some(k), &tol).map_err(s)?;
        ensure(
            other.value() == first.value(),
            format!("{name}: column {k} gives {}", other.value()),
        )?;
    }
    Ok(())
}

fn column_independence_numeric(
    name: &str,
    p: &Presentation,
    rho: &Representation<C>,
) -> Result<(), String> {
    let tol = Tolerances::default();
    let first = wada_invariant(p, rho, Some(0), &tol).map_err(s)?;
    let a = first
        .polynomial()
        .ok_or(format!("{name}: not polynomial"))?;
    for k in 1..p.generator_count() {
        let other = wada_invariant(p, rho, Some(k), &tol).map_err(s)?;
        let b = other
            .polynomial()
            .ok_or(format!("{name}: column {k} not polynomial"))?;
        let d = poly_distance(a, b);
        ensure(d <= 1e-8, format!("{name}: column {k} differs by {d:.3e}"))?;
    }
    Ok(())
}

fn criterion_9() -> Outcome {
    let mut relators = 0;
    for (name, p) in fixture_groups() {
        for r in p.relators() {
            ensure(
                fundamental_identity_defect(r, p.generator_count()).is_zero(),
                format!("{name}: relator {r}"),
            )?;
            relators += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..100 {
        let w = random_word(&mut rng, 4);
        ensure(
            fundamental_identity_defect(&w, 4).is_zero(),
            format!("random word {w}"),
        )?;
    }
    let mut columns = 0;
    for (name, p) in fixture_groups() {
        column_independence_exact(name, &p, &abelian_rep(&p, rat(3, 2)).map_err(s)?)?;
        let y = C::new(0.8, 0.35);
        let rho = solve_representation(&p, &meridian_targets(&p, y), &SolveOptions::default())
            .map_err(|e| format!("{name}: {e}"))?;
        column_independence_numeric(name, &p, &rho)?;
        columns += 2 * p.generator_count();
    }
    let p = pres("3_1");
    let sl2z = Representation::new(
        &p,
        vec![
            talex::SquareMatrix::from_rows(vec![
                vec![rat(1, 1), rat(1, 1)],
                vec![rat(0, 1), rat(1, 1)],
            ]),
            talex::SquareMatrix::from_rows(vec![
                vec![rat(1, 1), rat(0, 1)],
                vec![rat(-1, 1), rat(1, 1)],
            ]),
        ],
    )
    .map_err(s)?;
    ensure(
        sl2z.residual() == 0.0,
        "SL(2,Z) trefoil representation is not exact",
    )?;
    column_independence_exact("3_1 SL(2,Z)", &p, &sl2z)?;
    Ok(format!(
        "{relators} fixture relators, 100 random words, {columns} column choices"
    ))
}

fn criterion_10() -> Outcome {
    let v3 = seifert("3_1");
    let v8 = seifert("8_20");
    let minus_one = C::new(-1.0, 0.0);
    let s3 = lt_signature(&v3, minus_one).map_err(s)?;
    ensure(s3 == -2, format!("sigma(-1) = {s3} for the trefoil"))?;
    ensure(
        lt_signature(&v3, C::new(1.0, 0.0)).map_err(s)? == 0,
        "sigma(1) != 0",
    )?;
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for (name, v) in [("3_1", &v3), ("8_20", &v8)] {
        let delta = v.alexander();
        let mut even = 0;
        while even < 100 {
            let omega = C::from_polar(1.0, rng.gen_range(0.0..std::f64::consts::TAU));
            let scale: f64 = delta.terms().map(|(_, c)| c.magnitude()).sum();
            if delta.eval_complex(omega).norm() <= 1e-9 * scale {
                continue;
            }
            let sv = lt_signature_detail(v, omega).map_err(s)?;
            ensure(
                sv.signature % 2 == 0,
                format!("{name}: odd signature {} at {omega}", sv.signature),
            )?;
            even += 1;
        }
    }
    ensure(
        is_identically_zero(&v8, &v8.alexander()).map_err(s)?,
        "8_20 signature not identically zero",
    )?;
    ensure(
        !is_identically_zero(&v3, &v3.alexander()).map_err(s)?,
        "trefoil signature identically zero",
    )?;
    Ok("sigma(-1) = -2, sigma(1) = 0, parity over 200 samples, 8_20 vanishes".into())
}

fn criterion_11() -> Outcome {
    let tol = Tolerances::default();
    let mut worst: f64 = 0.0;
    let mut count = 0;
    let p3 = pres("3_1");
    for rho in trefoil_reps()? {
        let prof = coefficient_profile(&p3, &rho, 1, &tol).map_err(s)?;
        worst = worst.max(prof.symmetry_defect());
        count += 1;
    }
    let p9 = pretzel_935();
    let mut pts: Vec<(C, C)> = default_sample_points(10)
        .map_err(s)?
        .iter()
        .map(|x| (x.y, x.z))
        .collect();
    let monic = census(&PlaneCurve::c_prime(), C::new(1.0, 0.0), &tol).map_err(s)?;
    pts.extend(monic.witnesses.iter().map(|w| (w.y, w.z)));
    for (y, z) in pts {
        let rho = solve_representation(
            &p9,
            &symmetric_targets(&p9, y, z).map_err(s)?,
            &SolveOptions::default(),
        )
        .map_err(|e| format!("({y}, {z}): {e}"))?;
        let prof =
            coefficient_profile(&p9, &rho, 1, &tol).map_err(|e| format!("({y}, {z}): {e}"))?;
        worst = worst.max(prof.symmetry_defect());
        count += 1;
    }
    ensure(worst <= 1e-6, format!("max |psi_0 - psi_2| = {worst:.3e}"))?;
    Ok(format!(
        "{count} representations, degree <= 2, max |psi_0 - psi_2| = {worst:.2e}"
    ))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 11] = [
        ("Alexander fixtures", criterion_1),
        ("r_6 factorization", criterion_2),
        ("elimination of w", criterion_3),
        ("psi_2 certification", criterion_4),
        ("censuses", criterion_5),
        ("closed loop", criterion_6),
        ("fibered trefoil", criterion_7),
        ("reducible oracle", criterion_8),
        ("Fox identity and column independence", criterion_9),
        ("signature", criterion_10),
        ("coefficient symmetry", criterion_11),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let t = start.elapsed();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} ({t:.2?})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why} ({t:.2?})", i + 1);
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} criteria failed");
        std::process::exit(1);
    }
}
