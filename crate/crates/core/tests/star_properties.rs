//! The star construction and its absorption properties, checked empirically
//! over the catalog: validity preservation, the (T_m) and (A_m) lifting
//! steps, and transport of starred witnesses along the variety.

mod common;

use maltlab_core::{
    all_patterns, build_am_witness, build_tm_witness, catalog, check_am, check_sequence, check_tm,
    double_star_transform, enumerate_tolerances, level, reflexive_compatible_from_seeds,
    star_transform, star_transform_terms, term_operation, Budget, CloneLimits, Direction,
    FiniteAlgebra, SequenceKind, Term, TermOperation,
};

fn witness(algebra: &FiniteAlgebra, kind: SequenceKind) -> Option<(Vec<TermOperation>, Vec<Term>)> {
    let report = level(algebra, kind, 8, &CloneLimits::default()).unwrap();
    report.level()?;
    Some((report.witness, report.witness_terms))
}

fn cm_catalog() -> Vec<FiniteAlgebra> {
    catalog::all()
}

#[test]
fn star_preserves_validity_for_every_catalog_witness() {
    for algebra in cm_catalog() {
        for kind in [SequenceKind::Gumm, SequenceKind::Alvin] {
            let Some((seq, _)) = witness(&algebra, kind) else {
                continue;
            };
            let mut cur = seq;
            for _ in 0..3 {
                cur = star_transform(&cur).unwrap();
                let report = check_sequence(&algebra, &cur, kind).unwrap();
                assert!(report.valid, "{} {kind}", algebra.name());
            }
        }
    }
}

#[test]
fn tm_lifting_step_holds_on_the_catalog() {
    // If s_1 passes (T_m) on every tolerance, the starred s_1 passes
    // (T_{m+1}) on every tolerance.
    for algebra in cm_catalog() {
        let Some((seq, _)) = witness(&algebra, SequenceKind::Gumm) else {
            continue;
        };
        if seq.len() < 2 {
            continue;
        }
        let tolerances = enumerate_tolerances(&algebra).unwrap();
        let mut cur = seq;
        for m in 1..=3usize {
            for theta in &tolerances {
                let report = check_tm(&algebra, &cur[1], theta, m).unwrap();
                assert!(report.valid, "{} m={m}", algebra.name());
            }
            cur = star_transform(&cur).unwrap();
        }
    }
}

#[test]
fn remark9_untransformed_t1_satisfies_t2() {
    // For every valid Gumm sequence, the original t_1 already absorbs
    // two-step tolerance chains.
    for algebra in cm_catalog() {
        for kind in [SequenceKind::Gumm, SequenceKind::Alvin] {
            let Some((seq, _)) = witness(&algebra, kind) else {
                continue;
            };
            if seq.len() < 2 {
                continue;
            }
            for theta in enumerate_tolerances(&algebra).unwrap() {
                let report = check_tm(&algebra, &seq[1], &theta, 2).unwrap();
                assert!(report.valid, "{} {kind}", algebra.name());
            }
        }
    }
}

#[test]
fn am_lifting_claims_hold_on_the_catalog() {
    // The two halves of the double-star induction: (A_m) for s_1 gives
    // (A_{m+1}) restricted to patterns ending forward for s_1*, and that
    // restricted property for r_1 gives full (A_m) for r_1*.
    for algebra in [catalog::z2mal(), catalog::c3(), catalog::l2()] {
        let Some((seq, _)) = witness(&algebra, SequenceKind::Gumm) else {
            continue;
        };
        if seq.len() < 2 {
            continue;
        }
        let relations = reflexive_compatible_from_seeds(&algebra, 2).unwrap();
        let starred = star_transform(&seq).unwrap();
        let double = double_star_transform(&seq).unwrap();
        for m in 1..=2usize {
            for rel in &relations {
                // Hypothesis: s_1 satisfies (A_m) outright.
                let hypothesis = all_patterns(m)
                    .iter()
                    .all(|p| check_am(&algebra, &seq[1], rel, p).unwrap().valid);
                if !hypothesis {
                    continue;
                }
                // Claim 1: s_1* satisfies (A_{m+1}) on patterns ending forward.
                for mut pattern in all_patterns(m) {
                    pattern.push(Direction::Fwd);
                    let report = check_am(&algebra, &starred[1], rel, &pattern).unwrap();
                    assert!(report.valid, "{} claim1 m={m}", algebra.name());
                }
                // Claim 2 applied after claim 1: s_1** satisfies (A_{m+1}).
                for pattern in all_patterns(m + 1) {
                    let report = check_am(&algebra, &double[1], rel, &pattern).unwrap();
                    assert!(report.valid, "{} claim2 m={m}", algebra.name());
                }
            }
        }
    }
}

#[test]
fn build_am_witness_passes_all_patterns_on_z2mal() {
    let z = catalog::z2mal();
    let (seq, _) = witness(&z, SequenceKind::Gumm).unwrap();
    let out = build_am_witness(&z, &seq, SequenceKind::Gumm, 2).unwrap();
    for rel in reflexive_compatible_from_seeds(&z, 2).unwrap() {
        for pattern in all_patterns(2) {
            let report = check_am(&z, &out[1], &rel, &pattern).unwrap();
            assert!(report.valid);
        }
    }
}

#[test]
fn starred_l2_witness_transports_to_the_chain() {
    // Star the symbolic alvin witness of the two-element lattice twice and
    // check (T_3) on every tolerance of both lattices of the same signature.
    let l2 = catalog::l2();
    let c3 = catalog::c3();
    let (_, terms) = witness(&l2, SequenceKind::Alvin).unwrap();
    let mut starred = terms;
    for _ in 0..2 {
        starred = star_transform_terms(&starred).unwrap();
    }
    for target in [&l2, &c3] {
        let tables: Vec<TermOperation> = starred
            .iter()
            .map(|t| term_operation(target, t, 3).unwrap())
            .collect();
        let report = check_sequence(target, &tables, SequenceKind::Alvin).unwrap();
        assert!(report.valid, "{}", target.name());
        for theta in enumerate_tolerances(target).unwrap() {
            let report = check_tm(target, &tables[1], &theta, 3).unwrap();
            assert!(report.valid, "{}", target.name());
        }
    }
}

#[test]
fn alvin_accepts_exactly_gumm_plus_the_first_middle_identity() {
    // Over every length-2 candidate drawn from small ternary clones.
    for algebra in [catalog::z2mal(), catalog::l2()] {
        let members = common::clone_tables(&algebra, 3);
        let n = algebra.size();
        let t1_mid = |op: &TermOperation| {
            (0..n).all(|a| (0..n).all(|b| op.eval(&[a, b, a]) == a))
        };
        let first = TermOperation::projection(n, 3, 0);
        let last = TermOperation::projection(n, 3, 2);
        for t1 in &members {
            let seq = [first.clone(), t1.clone(), last.clone()];
            let alvin = check_sequence(&algebra, &seq, SequenceKind::Alvin).unwrap();
            let gumm = check_sequence(&algebra, &seq, SequenceKind::Gumm).unwrap();
            assert_eq!(
                alvin.valid,
                gumm.valid && t1_mid(t1),
                "{} {t1:?}",
                algebra.name()
            );
        }
    }
}

#[test]
fn build_tm_witness_transports_along_small_powers() {
    // The table-level construction, validated on the algebra itself for all
    // m ≤ 4 and on its square via the symbolic route.
    let budget = Budget::default();
    for algebra in [catalog::z2mal(), catalog::l2()] {
        let (seq, terms) = witness(&algebra, SequenceKind::Gumm).unwrap();
        for m in 1..=4usize {
            let out = build_tm_witness(&algebra, &seq, SequenceKind::Gumm, m).unwrap();
            assert_eq!(out.len(), seq.len());
        }
        let square = algebra.direct_power(2, &budget).unwrap();
        let mut starred = terms;
        starred = star_transform_terms(&starred).unwrap();
        let tables: Vec<TermOperation> = starred
            .iter()
            .map(|t| term_operation(&square, t, 3).unwrap())
            .collect();
        let report = check_sequence(&square, &tables, SequenceKind::Gumm).unwrap();
        assert!(report.valid, "{}", square.name());
        for theta in enumerate_tolerances(&square).unwrap() {
            let tm = check_tm(&square, &tables[1], &theta, 2).unwrap();
            assert!(tm.valid, "{}", square.name());
        }
    }
}
