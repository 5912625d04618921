//! End-to-end runs over the shipped corpus and a few further algebras.

use std::path::PathBuf;

use quivreg_core::algebra::AlgebraSlices;
use quivreg_core::constructions::{mckay_z2, polynomial, skew, tensor_product};
use quivreg_core::diagnostics::{homological_data, twisted_cy_classify, Branch, Status};
use quivreg_core::linalg::{FieldSpec, PrimeField, Rat, Rationals};
use quivreg_core::presentation::{parse, Presentation};
use quivreg_core::report::{run_check, Parameters};
use quivreg_core::resolution::GlobalDimension;

fn corpus() -> Vec<(String, Presentation)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus");
    let mut out: Vec<(String, Presentation)> = std::fs::read_dir(&dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "alg"))
        .map(|p| {
            let text = std::fs::read_to_string(&p).unwrap();
            (p.file_name().unwrap().to_string_lossy().into_owned(), parse(&text).unwrap())
        })
        .collect();
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

fn expand(p: &Presentation, d: usize) -> AlgebraSlices<Rationals> {
    AlgebraSlices::expand(&Rationals, p, d).unwrap()
}

#[test]
fn corpus_round_trips_through_text() {
    let all = corpus();
    assert!(all.len() >= 7);
    for (name, p) in all {
        assert_eq!(parse(&p.to_text()).unwrap(), p, "{name}");
    }
}

/// `Tor^A(S, S)` computed from left or right resolutions: the Betti table
/// of the opposite algebra is the table of `A` with the two vertex indices
/// exchanged.
#[test]
fn opposite_betti_table_exchanges_vertex_indices() {
    for (name, p) in corpus() {
        let d = 6;
        let a = homological_data(&expand(&p, d), 4);
        let op = homological_data(&expand(&p.opposite(), d), 4);
        if a.exhausted_at.is_some() || op.exhausted_at.is_some() {
            continue;
        }
        let n = p.vertex_count();
        for s in 0..=4 {
            for j in 0..n {
                for i in 0..n {
                    for l in 0..=d {
                        assert_eq!(op.betti.get(j, s, i, l), a.betti.get(i, s, j, l), "{name}: s={s} ({j},{i},{l})");
                    }
                }
            }
        }
    }
}

#[test]
fn verdicts_do_not_depend_on_the_characteristic() {
    for (name, p) in corpus() {
        if name == "skew_minus1.alg" {
            continue; // x.y + y.x is commutative in characteristic 2
        }
        let q = twisted_cy_classify(&expand(&p, 6), 6);
        for prime in [2u64, 3, 101] {
            let f = PrimeField::new(prime);
            let alg = AlgebraSlices::expand(&f, &p, 6).unwrap();
            let v = twisted_cy_classify(&alg, 6);
            assert_eq!(v.status.exit_code(), q.status.exit_code(), "{name} over F{prime}");
            assert_eq!(v.dimension, q.dimension, "{name} over F{prime}");
            assert_eq!(v.nakayama, q.nakayama, "{name} over F{prime}");
        }
    }
}

#[test]
fn skew_plane_in_characteristic_two_is_still_regular() {
    let p = skew(Rat::from_int(-1), FieldSpec::PrimeField(2)).unwrap();
    let v = twisted_cy_classify(&AlgebraSlices::expand(&PrimeField::new(2), &p, 6).unwrap(), 6);
    assert!(v.is_certified());
    assert_eq!(v.dimension, Some(2));
}

#[test]
fn polynomial_ring_in_three_variables() {
    let p = polynomial(3, FieldSpec::Rationals).unwrap();
    let alg = expand(&p, 6);
    // dim k[x,y,z]_d = C(d+2, 2)
    assert_eq!(alg.hilbert().totals(), (0..=6).map(|d| (d + 1) * (d + 2) / 2).collect::<Vec<_>>());
    let data = homological_data(&alg, 6);
    assert_eq!(data.betti.rows[0].totals()[..5], [1, 3, 3, 1, 0]);
    assert_eq!(data.global_dimension, GlobalDimension::ExactlyD(3));
    let v = twisted_cy_classify(&alg, 6);
    assert!(v.is_certified());
    assert_eq!(v.dimension, Some(3));
    assert_eq!(v.nakayama.unwrap().shifts, vec![3]);
}

#[test]
fn generic_skew_plane_is_regular_of_dimension_two() {
    let p = skew(Rat::new(2, 3), FieldSpec::Rationals).unwrap();
    let v = twisted_cy_classify(&expand(&p, 7), 7);
    assert!(v.is_certified());
    assert_eq!(v.dimension, Some(2));
}

#[test]
fn cubic_regular_algebra_needs_one_step_past_its_dimension() {
    let p = parse("vertices 1\narrow x 0 0\narrow y 0 0\nrelation x.x.y - y.x.x\nrelation x.y.y - y.y.x\n").unwrap();
    let alg = expand(&p, 8);
    let short = twisted_cy_classify(&alg, 3);
    assert!(matches!(short.status, Status::Inconclusive { .. }));
    let v = twisted_cy_classify(&alg, 4);
    assert!(v.is_certified(), "{v:?}");
    assert_eq!(v.dimension, Some(3));
    assert_eq!(v.nakayama.unwrap().shifts, vec![4]);
    // generators in degrees 0, 1, 3, 4
    let data = homological_data(&alg, 4);
    let row = &data.betti.rows[0];
    assert_eq!((row.get(1, 0, 1), row.get(2, 0, 3), row.get(3, 0, 4)), (2, 2, 1));
}

#[test]
fn mckay_times_line_has_dimension_three() {
    let p = tensor_product(&mckay_z2(FieldSpec::Rationals), &polynomial(1, FieldSpec::Rationals).unwrap()).unwrap();
    let v = twisted_cy_classify(&expand(&p, 5), 5);
    assert!(v.is_certified(), "{v:?}");
    assert_eq!(v.dimension, Some(3));
    let nak = v.nakayama.unwrap();
    assert_eq!(nak.permutation, vec![1, 0]);
    assert_eq!(nak.shifts, vec![3, 3]);
}

#[test]
fn check_reports_are_consistent_across_the_corpus() {
    for (name, p) in corpus() {
        let report = run_check(&p, &Parameters::new(p.field(), 6)).unwrap();
        let c = &report.checks;
        assert_eq!(c.associativity.failures, 0, "{name}");
        assert!(c.opposite.agrees, "{name}");
        assert!(c.socle.consistent, "{name}");
        if report.verdict.is_certified() && report.verdict.branch != Branch::DimensionZero {
            assert!(c.duality.passed(), "{name}");
        }
        let json = serde_json::to_string(&report).unwrap();
        let back: quivreg_core::report::Report = serde_json::from_str(&json).unwrap();
        assert_eq!(back.verdict, report.verdict, "{name}");
        assert_eq!(back.betti, report.betti, "{name}");
    }
}
