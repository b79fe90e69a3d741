use einstein_flag::oracle::{
    build_basis, build_basis_with_cap, max_off_block, max_within_module_defect, milnor_ricci,
    module_components, numeric_triples, OracleError,
};
use einstein_flag::partition::{partitions_up_to, FlagPartition, ModuleIndex, PartitionOptions};
use einstein_flag::rational::to_f64;
use einstein_flag::ricci::{ricci_general, MetricParams};
use einstein_flag::selfcheck::{random_metric, run_checks, CheckOptions};
use einstein_flag::triples::full_triple_table;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn bases_are_orthonormal() {
    for part in partitions_up_to(10) {
        let b = build_basis(&part).unwrap();
        assert_eq!(b.len(), part.algebra_dim());
        assert!(b.orthonormality_defect() < 1e-13, "{part}");
    }
}

#[test]
fn triple_sums_match_closed_form_up_to_eleven() {
    for part in partitions_up_to(11) {
        let numeric = numeric_triples(&build_basis(&part).unwrap());
        let exact = full_triple_table(&part);
        for (t, v) in &numeric.values {
            let want = to_f64(&exact.get(t[0], t[1], t[2]));
            assert!((v - want).abs() < 1e-12, "{part} {t:?}: {v} vs {want}");
        }
    }
}

#[test]
fn size_two_block_matches_oracle() {
    let part = FlagPartition::with_options(
        &[2, 3, 4],
        PartitionOptions {
            allow_size_two: true,
        },
    )
    .unwrap();
    let numeric = numeric_triples(&build_basis(&part).unwrap());
    let exact = full_triple_table(&part);
    for (t, v) in &numeric.values {
        assert!((v - to_f64(&exact.get(t[0], t[1], t[2]))).abs() < 1e-12);
    }
}

#[test]
fn milnor_ricci_is_block_scalar_and_matches_closed_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for blocks in [&[3, 4][..], &[5, 3, 3], &[3, 3, 3, 3]] {
        let part = FlagPartition::new(blocks).unwrap();
        let basis = build_basis(&part).unwrap();
        for _ in 0..5 {
            let m = random_metric(&part, &mut rng);
            let ric = milnor_ricci(&basis, &m).unwrap();
            assert!(max_off_block(&basis, &ric) < 1e-12);
            assert!(max_within_module_defect(&basis, &ric) < 1e-11);
            let closed = ricci_general(&part, &m).unwrap();
            for (module, vals) in module_components(&basis, &ric) {
                assert!(
                    (vals[0] - closed.get(module)).abs() < 1e-10,
                    "{part} {module}"
                );
            }
        }
    }
}

#[test]
fn bi_invariant_oracle_gives_quarter() {
    let part: FlagPartition = "4,3,3".parse().unwrap();
    let basis = build_basis(&part).unwrap();
    let ric = milnor_ricci(&basis, &MetricParams::uniform(&part, 1.0).unwrap()).unwrap();
    for a in 0..basis.len() {
        assert!((ric[(a, a)] - 0.25).abs() < 1e-13);
    }
}

#[test]
fn errors() {
    let part: FlagPartition = "20,21".parse().unwrap();
    assert!(matches!(
        build_basis_with_cap(&part, 40),
        Err(OracleError::PartitionTooLarge { n: 41, cap: 40 })
    ));
    let part: FlagPartition = "3,3".parse().unwrap();
    assert!(
        MetricParams::from_fn(&part, |m| if m == ModuleIndex::Diag(1) {
            -1.0
        } else {
            1.0
        })
        .is_err()
    );
}

#[test]
fn self_check_restricts_by_n_and_is_seeded() {
    let opts = CheckOptions {
        max_n: 9,
        samples: 2,
        seed: 3,
        ..CheckOptions::default()
    };
    let r = run_checks(&opts);
    assert!(r.passed());
    assert!(r.partitions.contains(&"(3,3,3)".to_string()));
    assert!(!r.partitions.iter().any(|p| p == "(4,3,3)"));
    assert_eq!(r, run_checks(&opts));
}
