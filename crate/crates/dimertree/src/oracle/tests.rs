use super::*;
use crate::quiver::{Quiver, VertexId};
use crate::weights::weight_report;

fn q9() -> Quiver {
    Quiver::from_pairs(
        "Q9",
        &[(1, 2), (2, 3), (3, 1), (3, 4), (4, 5), (5, 2), (4, 6), (6, 9), (9, 4), (6, 7), (7, 8), (8, 3)],
    )
    .unwrap()
}

fn q7() -> Quiver {
    Quiver::from_pairs("Q7", &[(2, 1), (1, 4), (4, 5), (5, 3), (3, 2), (5, 6), (6, 7), (7, 4)]).unwrap()
}

fn c(n: u32) -> Quiver {
    let pairs: Vec<(u32, u32)> = (1..=n).map(|i| (i, i % n + 1)).collect();
    Quiver::from_pairs(&format!("C{n}"), &pairs).unwrap()
}

fn fp() -> PrimeField {
    PrimeField::new(DEFAULT_PRIME).unwrap()
}

fn path(q: &Quiver, labels: &[&str]) -> Vec<usize> {
    labels.iter().map(|l| q.arrow_index(l).unwrap()).collect()
}

fn v(q: &Quiver, id: u32) -> usize {
    q.vertex_index(&id.into()).unwrap()
}

#[test]
fn c3_has_dimension_six() {
    let ab = build_algebra(&c(3), fp()).unwrap();
    assert_eq!(ab.dim(), 6);
    assert_eq!(ab.dims_by_length[..2], [3, 3]);
    assert_eq!(ab.stabilization, 2);
}

#[test]
fn cycles_have_dimension_n_times_n_minus_one() {
    // Every path of length n-1 is a derivative of the cycle.
    for n in 3..=6 {
        let ab = build_algebra(&c(n), fp()).unwrap();
        assert_eq!(ab.dim(), (n * (n - 1)) as usize, "C{n}");
        assert_eq!(ab.stabilization, (n - 1) as usize);
    }
}

#[test]
fn stabilization_is_below_cap() {
    for q in [q9(), q7(), c(3), c(8)] {
        let ab = build_algebra(&q, fp()).unwrap();
        assert!(ab.stabilization <= default_cap(&q), "{}", q.name);
        assert!(ab.truncation <= default_cap(&q) + 2);
    }
}

#[test]
fn tiny_cap_is_reported() {
    let q = q9();
    let err = AlgebraBasis::build_with_cap(fp(), &q, potential_terms(&q).unwrap(), 2).unwrap_err();
    assert_eq!(err, OracleError::NotFinite(2));
    assert!(err.to_string().contains("not finite-dimensional at cap"));
}

#[test]
fn nonzero_paths() {
    let c3 = c(3);
    let ab = build_algebra(&c3, fp()).unwrap();
    assert!(!ab.path_is_nonzero(&path(&c3, &["1->2", "2->3"])).unwrap());
    let q = q9();
    let ab = build_algebra(&q, fp()).unwrap();
    assert!(ab.path_is_nonzero(&path(&q, &["8->3", "3->4", "4->5"])).unwrap());
    for a in 0..q.arrow_count() {
        assert!(ab.path_is_nonzero(&[a]).unwrap());
    }
    assert!(matches!(ab.path_is_nonzero(&path(&q, &["1->2", "3->4"])), Err(OracleError::NotComposable(_))));
}

#[test]
fn interior_relation_identifies_the_two_paths() {
    let q = q7();
    let ab = build_algebra(&q, Rationals).unwrap();
    let long = ab.class(v(&q, 5), &path(&q, &["5->3", "3->2", "2->1", "1->4"])).unwrap();
    let short = ab.class(v(&q, 5), &path(&q, &["5->6", "6->7", "7->4"])).unwrap();
    assert!(!ab.is_zero(&long) && !ab.is_zero(&short));
    let k = Rationals;
    let sum: Vec<_> = long.coeffs.iter().zip(&short.coeffs).map(|(a, b)| k.add(a, b)).collect();
    let diff: Vec<_> = long.coeffs.iter().zip(&short.coeffs).map(|(a, b)| k.sub(a, b)).collect();
    assert!(sum.iter().all(|x| k.is_zero(x)) || diff.iter().all(|x| k.is_zero(x)));
}

#[test]
fn schurian_on_fixtures() {
    for q in [q9(), q7(), c(3), c(5)] {
        let ab = build_algebra(&q, fp()).unwrap();
        let r = schurian_check(&ab);
        assert!(r.pass, "{}: {:?}", q.name, r.counterexamples);
        for i in 0..q.vertex_count() {
            for j in 0..q.vertex_count() {
                assert!(ab.hom_projectives_dim(i, j) <= 1);
            }
        }
    }
}

#[test]
fn extension_lemma_examples() {
    let q = q9();
    let ab = build_algebra(&q, fp()).unwrap();
    let wr = weight_report(&q).unwrap();
    let a = q.arrow_index("8->3").unwrap();
    let r = extension_lemma_check(&ab, &wr, a, Side::Right).unwrap();
    assert_eq!((r.weight, r.extends_all, r.holds), (1, true, true));
    let b = q.arrow_index("3->1").unwrap();
    let r = extension_lemma_check(&ab, &wr, b, Side::Right).unwrap();
    assert_eq!((r.weight, r.extends_all, r.holds), (2, false, true));
    assert!(r.witness.is_some());
    let interior = q.arrow_index("3->4").unwrap();
    assert!(matches!(extension_lemma_check(&ab, &wr, interior, Side::Right), Err(OracleError::NotBoundary(_))));

    let c3 = c(3);
    let ab = build_algebra(&c3, fp()).unwrap();
    let wr = weight_report(&c3).unwrap();
    for a in 0..3 {
        for side in [Side::Right, Side::Left] {
            let r = extension_lemma_check(&ab, &wr, a, side).unwrap();
            assert!(r.holds && !r.extends_all && r.witness.is_some());
        }
    }
}

#[test]
fn extension_lemma_everywhere() {
    for q in [q9(), q7(), c(4), c(7)] {
        let r = run_oracle(&q, FieldSpec::default(), Check::Extension).unwrap();
        assert_eq!(r.lemma.len(), 2 * weight_report(&q).unwrap().rows.len());
        assert!(r.pass, "{}: {:?}", q.name, r.failures());
    }
}

fn shape(p1: &[u32], p0: &[u32]) -> (Vec<VertexId>, Vec<VertexId>) {
    (p1.iter().map(|&x| x.into()).collect(), p0.iter().map(|&x| x.into()).collect())
}


#[test]
fn radical_presentations() {
    let c3 = c(3);
    let ab = build_algebra(&c3, fp()).unwrap();
    let s = shape_of(&ab, &radical_presentation(&ab, 0));
    assert_eq!((s.p1, s.p0), shape(&[3], &[2]));
    assert!(s.minimal);

    let q = q9();
    let ab = build_algebra(&q, fp()).unwrap();
    let s = shape_of(&ab, &radical_presentation(&ab, v(&q, 3)));
    assert_eq!((s.p1, s.p0), shape(&[2, 8], &[1, 4]));
    let s = shape_of(&ab, &radical_presentation(&ab, v(&q, 4)));
    assert_eq!((s.p1, s.p0), shape(&[3, 9], &[5, 6]));
}

#[test]
fn radicals_match_arrow_sets_everywhere() {
    for q in [q9(), q7(), c(3), c(6)] {
        let r = run_oracle(&q, FieldSpec::default(), Check::Radicals).unwrap();
        assert!(r.pass, "{}: {:?}", q.name, r.failures());
        assert_eq!(r.radicals.len(), q.vertex_count());
        assert!(r.radicals.iter().all(|x| x.end_dim == 1 && !x.projective));
    }
}

#[test]
fn ext_between_simple_radicals_of_c3() {
    let q = c(3);
    let ab = build_algebra(&q, Rationals).unwrap();
    let m = radical_presentation(&ab, 0);
    let n = radical_presentation(&ab, 1);
    // rad P(1) = S(2), rad P(2) = S(3), arrow 1 -> 2.
    assert_eq!(ab.cokernel(&m).dims, vec![0, 1, 0]);
    assert_eq!(ab.cokernel(&n).dims, vec![0, 0, 1]);
    assert_ne!(ext1_dim(&ab, &m, &n), 0);
    assert_eq!(ext1_dim(&ab, &n, &m), 0);
}

#[test]
fn ext_into_projectives_vanishes_for_syzygies() {
    let q = q9();
    let ab = build_algebra(&q, fp()).unwrap();
    for x in 0..q.vertex_count() {
        let rad = ab.radical_of_projective(x);
        for j in 0..q.vertex_count() {
            assert_eq!(ab.ext1_modules(&rad, &ab.projective(j)), 0);
        }
    }
}

#[test]
fn stable_hom_examples() {
    let c3 = c(3);
    let ab = build_algebra(&c3, fp()).unwrap();
    let m = radical_presentation(&ab, 0);
    assert_eq!(stable_hom_dim(&ab, &m, &m), 1);
    let rad = ab.radical_of_projective(0);
    for j in 0..3 {
        assert_eq!(ab.stable_hom_modules(&rad, &ab.projective(j)), 0);
    }
}

#[test]
fn boundary_vanishing_on_fixtures() {
    let r = run_oracle(&q9(), FieldSpec::default(), Check::BoundaryExt).unwrap();
    let v = r.vanishing.unwrap();
    assert_eq!((v.rows.len(), v.arrows_pass, v.boundary_pass), (12, 12, 9));
    assert!(v.pass);
    for q in [c(3), q7()] {
        let r = run_oracle(&q, FieldSpec::default(), Check::BoundaryExt).unwrap();
        assert!(r.pass, "{}: {:?}", q.name, r.failures());
    }
}

#[test]
fn results_do_not_depend_on_the_field() {
    for q in [c(3), q7()] {
        let base = run_oracle(&q, FieldSpec::Prime(101), Check::All).unwrap().without_field();
        assert!(base.pass);
        assert_eq!(run_oracle(&q, FieldSpec::Prime(32003), Check::All).unwrap().without_field(), base);
        assert_eq!(run_oracle(&q, FieldSpec::Rational, Check::All).unwrap().without_field(), base);
    }
}

#[test]
fn check_names() {
    assert_eq!("boundary-ext".parse::<Check>(), Ok(Check::BoundaryExt));
    assert!("lemma2".parse::<Check>().is_err());
}

#[test]
fn q9_all_checks_over_rationals() {
    let r = run_oracle(&q9(), FieldSpec::Rational, Check::All).unwrap();
    assert!(r.pass, "{:?}", r.failures());
    assert_eq!(r.ext_arrows.iter().filter(|x| x.ext1 != 0).count(), 12);
    assert_eq!(r.without_field(), run_oracle(&q9(), FieldSpec::Prime(32003), Check::All).unwrap().without_field());
}
