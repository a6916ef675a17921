//! The congruence-identity verifier against worked examples and the
//! free-algebra decision procedure.

use maltlab_core::{
    catalog, check_cd_inclusion, check_corollary11, check_corollary6, check_theorem12, check_tip,
    check_tschantz_identity, congruence_generated, decide_cd_variety, enumerate_tolerances, level,
    Budget, CloneLimits, PatternS, PatternTag, SPlusOutcome, SequenceKind,
};

#[test]
fn decide_cd_at_the_expected_thresholds() {
    let limits = CloneLimits::default();
    // l2 and c3 turn true exactly at 3, b2 at 2.
    for (algebra, threshold) in [(catalog::l2(), 3), (catalog::c3(), 3), (catalog::b2(), 2)] {
        for n in 0..=5usize {
            let got = decide_cd_variety(&algebra, n, &limits).unwrap();
            assert_eq!(got, n >= threshold, "{} at {n}", algebra.name());
        }
    }
    assert!(decide_cd_variety(&catalog::trivial1(), 0, &limits).unwrap());
}

#[test]
fn decide_cd_threshold_is_the_alvin_level() {
    let limits = CloneLimits::default();
    for algebra in [catalog::l2(), catalog::b2(), catalog::c3()] {
        let alvin = level(&algebra, SequenceKind::Alvin, 8, &limits)
            .unwrap()
            .level()
            .unwrap();
        let least_true = (0..=6)
            .find(|&n| decide_cd_variety(&algebra, n, &limits).unwrap())
            .unwrap();
        assert_eq!(least_true, alvin, "{}", algebra.name());
    }
}

#[test]
fn per_algebra_inclusion_does_not_decide_the_variety() {
    // The Maltsev reduct has a two-element congruence lattice, so the chain
    // inclusion holds on the algebra at n = 2 even though the variety it
    // generates is not congruence distributive.
    let z = catalog::z2mal();
    assert!(check_cd_inclusion(&z, 2).unwrap().holds);
    assert!(!decide_cd_variety(&z, 2, &CloneLimits::default()).unwrap());
}

#[test]
fn variety_decision_implies_the_per_algebra_inclusion() {
    let limits = CloneLimits::default();
    for algebra in [catalog::l2(), catalog::b2(), catalog::c3(), catalog::trivial1()] {
        for n in 0..=5usize {
            if decide_cd_variety(&algebra, n, &limits).unwrap() {
                assert!(
                    check_cd_inclusion(&algebra, n).unwrap().holds,
                    "{} at {n}",
                    algebra.name()
                );
            }
        }
    }
}

#[test]
fn inclusion_checks_are_antitone_in_chain_growth_by_two() {
    for algebra in [catalog::c3(), catalog::z2z2()] {
        for n in 0..=4usize {
            if check_cd_inclusion(&algebra, n).unwrap().holds {
                assert!(
                    check_cd_inclusion(&algebra, n + 2).unwrap().holds,
                    "{} at {n}",
                    algebra.name()
                );
            }
        }
    }
}

#[test]
fn corollary6_clause3_example_on_the_chain() {
    // ℓ = 2, n = 3 gives k = (3−2)(2−1)+2 = 3.
    let report = check_corollary6(&catalog::c3(), 3, 2, 3).unwrap();
    assert!(report.holds);
}

#[test]
fn corollary6_all_clauses_on_the_chain() {
    for clause in 1..=4u8 {
        for ell in 1..=3usize {
            let report = check_corollary6(&catalog::c3(), clause, ell, 3).unwrap();
            assert!(report.holds, "clause {clause} ell {ell}");
        }
    }
}

#[test]
fn tschantz_identity_on_the_lattice_square() {
    let square = catalog::l2().direct_power(2, &Budget::default()).unwrap();
    assert!(check_tschantz_identity(&square).unwrap().holds);
    assert!(check_tip(&square).unwrap().holds);
}

#[test]
fn tip_is_trivial_on_equal_tolerances() {
    let c3 = catalog::c3();
    for theta in enumerate_tolerances(&c3).unwrap() {
        let closure = theta.relation().transitive_closure();
        let both = closure
            .intersect(&closure)
            .unwrap();
        assert_eq!(
            both,
            theta
                .relation()
                .intersect(theta.relation())
                .unwrap()
                .transitive_closure()
        );
    }
}

#[test]
fn corollary11_on_the_klein_group_atoms() {
    let z = catalog::z2z2();
    let atoms: Vec<_> = [(0, 1), (0, 2), (0, 3)]
        .iter()
        .map(|&(a, b)| congruence_generated(&z, &[(a, b)]).unwrap())
        .collect();
    for i in 0..3 {
        for j in 0..3 {
            let rows = vec![
                vec![atoms[i].clone(), atoms[j].clone()],
                vec![atoms[j].clone(), atoms[i].clone()],
            ];
            let report = check_corollary11(&z, &rows).unwrap();
            assert!(report.holds, "rows {i},{j}");
        }
    }
}

#[test]
fn corollary11_on_the_chain_principals() {
    let c3 = catalog::c3();
    let cg01 = congruence_generated(&c3, &[(0, 1)]).unwrap();
    let cg12 = congruence_generated(&c3, &[(1, 2)]).unwrap();
    let rows = vec![
        vec![cg01.clone(), cg12.clone()],
        vec![cg12, cg01],
    ];
    assert!(check_corollary11(&c3, &rows).unwrap().holds);
}

#[test]
fn theorem12_is_vacuous_on_the_trivial_algebra() {
    let t1 = catalog::trivial1();
    for tags in [vec![], vec![PatternTag::AlphaGammaBeta]] {
        let report = check_theorem12(&t1, &PatternS::new(tags), 2).unwrap();
        assert!(report.s.holds);
        assert!(report.implication_holds());
    }
}

#[test]
fn theorem12_on_the_lattice_square() {
    let square = catalog::l2().direct_power(2, &Budget::default()).unwrap();
    let pattern = PatternS::new(vec![PatternTag::AlphaGammaBeta]);
    let report = check_theorem12(&square, &pattern, 8).unwrap();
    assert!(report.implication_holds());
    assert!(matches!(report.splus, SPlusOutcome::Checked(_)));

    let pattern = PatternS::new(vec![PatternTag::AlphaGammaThenAlphaBeta]);
    let report = check_theorem12(&square, &pattern, 8).unwrap();
    assert!(matches!(report.splus, SPlusOutcome::NotApplicable));
}
