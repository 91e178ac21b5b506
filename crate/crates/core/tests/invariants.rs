mod common;

use common::{alex, fixture, fixture_groups, pd, pres, seifert};
use num_traits::{One, Signed};
use proptest::prelude::*;
use serde_json::Value;

use talex::charcurves::{pipeline, PipelineOptions};
use talex::polyalgebra::{parse_laurent, SquareMatrix};
use talex::representations::{abelian_rep, reducible_formula, satellite_alexander, Representation};
use talex::signature::{lt_signature, SeifertMatrix};
use talex::twisted::{alexander, wada_invariant};
use talex::{BigRational, Complex64, QLaurent, Tolerances};

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// Entries `name: expr` or `name: (expr)^k`.
fn table() -> Vec<(String, QLaurent)> {
    fixture("alexander_table.txt")
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| {
            let (name, expr) = l.split_once(':').unwrap();
            let expr = expr.trim();
            let poly = match expr.strip_prefix('(').and_then(|e| e.rsplit_once(")^")) {
                Some((base, k)) => parse_laurent(base, "t").unwrap().pow(k.parse().unwrap()),
                None => parse_laurent(expr, "t").unwrap(),
            };
            (name.trim().to_string(), poly)
        })
        .collect()
}

#[test]
fn fixture_groups_have_tabulated_alexander() {
    let table = table();
    for (label, p) in fixture_groups() {
        let knot = label.split_whitespace().next().unwrap();
        let want = &table.iter().find(|(n, _)| n == knot).unwrap().1;
        assert_eq!(&alexander(&p).unwrap(), want, "{label}");
        assert_eq!(&alex(knot), want, "{label}");
    }
}

#[test]
fn table_entries_are_symmetric_with_unit_value() {
    for (name, d) in table() {
        let hi = d.high().unwrap();
        let flipped = QLaurent::from_terms(d.terms().map(|(e, c)| (hi - e, c.clone())));
        assert_eq!(flipped, d, "{name}");
        assert_eq!(
            d.eval(&BigRational::one()).abs(),
            BigRational::one(),
            "{name}"
        );
    }
}

#[test]
fn seifert_matrices_give_fixture_alexander() {
    for knot in ["3_1", "8_20"] {
        assert_eq!(
            seifert(knot).alexander().normalized(),
            alex(knot).normalized(),
            "{knot}"
        );
    }
}

#[test]
fn fixture_signatures() {
    let minus_one = Complex64::new(-1.0, 0.0);
    assert_eq!(lt_signature(&seifert("3_1"), minus_one).unwrap(), -2);
    assert_eq!(lt_signature(&seifert("8_20"), minus_one).unwrap(), 0);
}

#[test]
fn presentation_and_diagram_agree_on_abelian_twists() {
    let tol = Tolerances::default();
    for knot in ["3_1", "9_35"] {
        for lam in [rat(2, 1), rat(-3, 5)] {
            let a = wada_invariant(
                &pres(knot),
                &abelian_rep(&pres(knot), lam.clone()).unwrap(),
                None,
                &tol,
            )
            .unwrap();
            let b = wada_invariant(
                &pd(knot),
                &abelian_rep(&pd(knot), lam.clone()).unwrap(),
                None,
                &tol,
            )
            .unwrap();
            let f = reducible_formula(&alex(knot), lam, &tol).unwrap();
            assert_eq!(a.value(), f.value(), "{knot}");
            assert_eq!(b.value(), f.value(), "{knot}");
        }
    }
}

fn trefoil_rep() -> Representation<BigRational> {
    let v: Value = serde_json::from_str(&fixture("3_1.rep.json")).unwrap();
    Representation::from_json(&pres("3_1"), &v).unwrap()
}

#[test]
fn trefoil_parabolic_representation() {
    let ta = wada_invariant(&pres("3_1"), &trefoil_rep(), None, &Tolerances::default()).unwrap();
    assert_eq!(
        ta.polynomial().unwrap(),
        &QLaurent::from_ascending(&[1, 0, 1])
    );
    assert!(ta.is_monic());
}

#[test]
fn satellite_with_trivial_winding_is_pattern() {
    let p = alex("9_35");
    assert_eq!(satellite_alexander(&p, &alex("3_1"), 0), p);
    let two = satellite_alexander(&alex("3_1"), &alex("3_1"), 2);
    assert_eq!(
        two,
        (&alex("3_1") * &QLaurent::from_ascending(&[1, 0, -1, 0, 1])).normalized()
    );
}

#[test]
fn unimodular_seifert_matrices_only() {
    assert!(SeifertMatrix::new(vec![vec![1, 0], vec![0, 1]]).is_err());
    assert!(SeifertMatrix::parse("1 2\n3").is_err());
}

#[test]
fn pipeline_report() {
    let opts = PipelineOptions {
        samples_per_curve: 3,
        ..PipelineOptions::default()
    };
    let r = pipeline(&opts).unwrap();
    let j = r.to_json();
    assert_eq!(j["alexander"], "7*t^2 - 13*t + 7");
    assert_eq!(j["censuses"]["monic"], 6);
    assert_eq!(j["censuses"]["non-genus"], 2);
    assert_eq!(j["censuses"]["C"], "identically 18");
    assert_eq!(r.closed_loop.len(), 6);
    assert!(r.closed_loop.iter().all(|l| l.monic));
}

fn sl2(a: i64, b: i64, c: i64) -> Option<SquareMatrix<BigRational>> {
    // [[a, b], [c, d]] with d fixed by det = 1
    (a != 0).then(|| {
        let d = (rat(1, 1) + rat(b * c, 1)) / rat(a, 1);
        SquareMatrix::from_rows(vec![vec![rat(a, 1), rat(b, 1)], vec![rat(c, 1), d]])
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn wada_invariant_is_conjugation_invariant(a in -4i64..=4, b in -4i64..=4, c in -4i64..=4) {
        let Some(g) = sl2(a, b, c) else { return Ok(()) };
        let p = pres("3_1");
        let tol = Tolerances::default();
        let rho = trefoil_rep();
        let base = wada_invariant(&p, &rho, None, &tol).unwrap();
        let conj = wada_invariant(&p, &rho.conjugate(&p, &g).unwrap(), None, &tol).unwrap();
        prop_assert_eq!(base.value(), conj.value());
    }

    #[test]
    fn wada_invariant_is_column_independent(num in -6i64..=6, den in 1i64..=6) {
        prop_assume!(num != 0);
        let tol = Tolerances::default();
        let p = pres("9_35");
        let rho = abelian_rep(&p, rat(num, den)).unwrap();
        let first = wada_invariant(&p, &rho, Some(0), &tol);
        for k in 1..p.generator_count() {
            let other = wada_invariant(&p, &rho, Some(k), &tol);
            match (&first, &other) {
                (Ok(x), Ok(y)) => prop_assert_eq!(x.value(), y.value()),
                (x, y) => prop_assert_eq!(x.is_err(), y.is_err()),
            }
        }
    }
}
