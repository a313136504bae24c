use dimertree::checkerboard::{build_checkerboard, build_from_seed, validate_checkerboard, CheckerboardPolygon};
use dimertree::diag::{brute_force_diagonals, enumerate_diagonals, rotate};
use dimertree::generate::glued;
use dimertree::io::{parse_quiver, quiver_to_json};
use dimertree::mutation::{reduce_to_cycle, Qp};
use dimertree::oracle::{run_oracle, Check, FieldSpec};
use dimertree::syzygy::{all_resolutions, radical_consistency_check};
use dimertree::{validate_dimer_tree, weight_report, Quiver};
use proptest::prelude::*;

fn tree(max_cycles: usize, max_len: usize) -> impl Strategy<Value = Quiver> {
    (prop::collection::vec(3..=max_len, 1..=max_cycles), prop::collection::vec(0usize..64, max_cycles))
        .prop_map(|(lengths, sites)| glued("G", &lengths, &sites))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn glued_quivers_are_dimer_trees(q in tree(6, 7)) {
        let r = validate_dimer_tree(&q);
        prop_assert!(r.pass, "{:?}", r);
    }

    #[test]
    fn total_weight_is_even_and_bounded(q in tree(6, 7)) {
        let wr = weight_report(&q).unwrap();
        prop_assert_eq!(wr.total % 2, 0);
        let boundary = q.analyze().boundary_arrows().len();
        prop_assert!(boundary <= wr.total && wr.total <= 2 * boundary);
        for r in &wr.rows {
            prop_assert!(r.weight == 1 || r.weight == 2);
        }
    }

    #[test]
    fn polygon_has_one_edge_per_unit_of_weight(q in tree(5, 6)) {
        let wr = weight_report(&q).unwrap();
        let cp = build_checkerboard(&q).unwrap();
        prop_assert_eq!(cp.boundary_edge_count() as usize, wr.total);
        let rep = validate_checkerboard(&cp, &q);
        prop_assert!(rep.pass, "{:?}", rep.failures());
    }

    #[test]
    fn seeds_agree_up_to_rotation(q in tree(4, 6), pick in 0usize..64) {
        let st = q.analyze();
        let b = st.boundary_arrows();
        let seed = q.arrows[b[pick % b.len()]].id.clone();
        let base = build_checkerboard(&q).unwrap();
        let other = build_from_seed(&q, Some(&seed)).unwrap();
        let n = base.size() as i64;
        prop_assert!((0..n).any(|k| other.rotated(k).signature() == base.signature()));
    }

    #[test]
    fn structured_polygon_round_trips(q in tree(5, 6)) {
        let cp = build_checkerboard(&q).unwrap();
        let back = CheckerboardPolygon::from_structured(&cp.to_structured()).unwrap();
        prop_assert_eq!(back, cp);
    }

    #[test]
    fn quiver_files_round_trip(q in tree(6, 7)) {
        let back = parse_quiver(&quiver_to_json(&q), "X").unwrap();
        prop_assert_eq!(back, q);
    }

    #[test]
    fn resolutions_glue_with_periods_n_or_2n(q in tree(4, 6)) {
        let s = all_resolutions(&build_checkerboard(&q).unwrap());
        prop_assert!(s.pass, "{:?}", s.failures);
    }

    #[test]
    fn reduction_ends_at_half_the_weight(q in tree(5, 6)) {
        let total = weight_report(&q).unwrap().total;
        let t = reduce_to_cycle(&q).map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert!(t.pass);
        prop_assert_eq!(2 * t.final_cycle_length, t.total_weight);
        prop_assert_eq!(t.total_weight, total);
        for m in &t.moves {
            prop_assert_eq!(m.total_weight_before, m.total_weight_after);
            let step = Qp::from_doc("step", &m.quiver_after).unwrap();
            prop_assert!(validate_dimer_tree(&step.quiver).pass, "{} at {:?}", m.kind.name(), m.site);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn model_matches_oracle_on_small_trees(q in tree(3, 4)) {
        let rep = run_oracle(&q, FieldSpec::default(), Check::All).unwrap();
        prop_assert!(rep.pass, "{:?}", rep.failures());
        let cp = build_checkerboard(&q).unwrap();
        let c = radical_consistency_check(&q, &cp, &rep);
        prop_assert!(c.pass);
    }
}

proptest! {
    #[test]
    fn rotation_by_2n_is_the_identity(n in 3u32..=12, pick in 0usize..200) {
        let ds = enumerate_diagonals(n).unwrap();
        let g = ds[pick % ds.len()];
        prop_assert_eq!(rotate(g, 2 * n as i64, n), g);
        prop_assert_eq!(rotate(rotate(g, 3, n), -3, n), g);
        prop_assert!(ds.contains(&rotate(g, 1, n)));
    }

    #[test]
    fn enumeration_matches_brute_force(n in 3u32..=14) {
        let mut a = enumerate_diagonals(n).unwrap();
        let mut b = brute_force_diagonals(n);
        a.sort();
        b.sort();
        prop_assert_eq!(a.len() as u32, n * (n - 2));
        prop_assert_eq!(a, b);
    }
}
