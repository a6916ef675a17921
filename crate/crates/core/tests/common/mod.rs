//! Independent oracles shared by the integration tests. Everything here is
//! deliberately written as plain set/loop fixpoints or exhaustive
//! enumeration, with no reuse of the bitset engine or the layered search.

#![allow(dead_code)]

use std::collections::BTreeSet;

use maltlab_core::{
    check_sequence, generate_clone, CloneLimits, FiniteAlgebra, SequenceKind, TermOperation,
};

/// All partitions of `{0..n-1}` as class-id vectors, by restricted growth
/// strings.
pub fn all_partitions(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = vec![0usize; n];
    fn rec(current: &mut Vec<usize>, pos: usize, max_used: usize, out: &mut Vec<Vec<usize>>) {
        if pos == current.len() {
            out.push(current.clone());
            return;
        }
        for class in 0..=max_used + 1 {
            current[pos] = class;
            rec(current, pos + 1, max_used.max(class), out);
        }
    }
    if n == 0 {
        return vec![Vec::new()];
    }
    current[0] = 0;
    rec(&mut current, 1, 0, &mut out);
    out
}

/// Whether the partition given by class ids is compatible with every
/// operation: componentwise-equivalent argument tuples give equivalent
/// results.
pub fn partition_is_compatible(algebra: &FiniteAlgebra, class: &[usize]) -> bool {
    let n = algebra.size();
    for (op, (_, arity)) in algebra.signature().iter().enumerate() {
        let count = n.pow(arity as u32);
        let mut xs = vec![0usize; arity];
        let mut ys = vec![0usize; arity];
        for xi in 0..count {
            decode(n, arity, xi, &mut xs);
            for yi in 0..count {
                decode(n, arity, yi, &mut ys);
                if xs.iter().zip(&ys).all(|(&x, &y)| class[x] == class[y])
                    && class[algebra.apply(op, &xs)] != class[algebra.apply(op, &ys)]
                {
                    return false;
                }
            }
        }
    }
    true
}

/// All congruences by filtering every partition for compatibility.
pub fn congruences_by_partition_filter(algebra: &FiniteAlgebra) -> Vec<Vec<usize>> {
    all_partitions(algebra.size())
        .into_iter()
        .filter(|class| partition_is_compatible(algebra, class))
        .collect()
}

/// The least such congruence containing all given pairs, as a class vector.
pub fn least_congruence_by_filter(
    algebra: &FiniteAlgebra,
    pairs: &[(usize, usize)],
) -> Vec<usize> {
    let mut best: Option<Vec<usize>> = None;
    let mut best_classes = 0usize;
    for class in congruences_by_partition_filter(algebra) {
        if pairs.iter().all(|&(a, b)| class[a] == class[b]) {
            let classes = class.iter().collect::<BTreeSet<_>>().len();
            if best.is_none() || classes > best_classes {
                best_classes = classes;
                best = Some(class);
            }
        }
    }
    best.expect("the full congruence always qualifies")
}

pub fn same_partition(class: &[usize], blocks: &[Vec<usize>]) -> bool {
    let n = class.len();
    let mut from_blocks = vec![usize::MAX; n];
    for (i, block) in blocks.iter().enumerate() {
        for &e in block {
            from_blocks[e] = i;
        }
    }
    for a in 0..n {
        for b in 0..n {
            if (class[a] == class[b]) != (from_blocks[a] == from_blocks[b]) {
                return false;
            }
        }
    }
    true
}

fn decode(n: usize, k: usize, index: usize, out: &mut [usize]) {
    let mut rest = index;
    for i in (0..k).rev() {
        out[i] = rest % n;
        rest /= n;
    }
}

/// Set-based fixpoint closure under all operations applied coordinatewise
/// to related pairs.
pub fn naive_compatible_closure(
    algebra: &FiniteAlgebra,
    seed: &BTreeSet<(usize, usize)>,
) -> BTreeSet<(usize, usize)> {
    let mut cur = seed.clone();
    loop {
        let mut next = cur.clone();
        for (op, (_, arity)) in algebra.signature().iter().enumerate() {
            if arity == 0 {
                let c = algebra.apply(op, &[]);
                next.insert((c, c));
                continue;
            }
            let pairs: Vec<(usize, usize)> = cur.iter().copied().collect();
            let mut pick = vec![0usize; arity];
            let total = pairs.len().pow(arity as u32);
            let mut lhs = vec![0usize; arity];
            let mut rhs = vec![0usize; arity];
            for mask in 0..total {
                decode(pairs.len(), arity, mask, &mut pick);
                for (i, &p) in pick.iter().enumerate() {
                    lhs[i] = pairs[p].0;
                    rhs[i] = pairs[p].1;
                }
                next.insert((algebra.apply(op, &lhs), algebra.apply(op, &rhs)));
            }
        }
        if next == cur {
            return cur;
        }
        cur = next;
    }
}

/// Number of nonconstant monotone ternary Boolean functions; cross-checks
/// the size of the ternary clone of the two-element lattice.
pub fn nonconstant_monotone_ternary_count() -> usize {
    let mut count = 0;
    'f: for code in 0u32..256 {
        let f = |x: usize, y: usize, z: usize| code >> (x * 4 + y * 2 + z) & 1;
        for a in 0..8 {
            for b in 0..8 {
                if a | b == b
                    && f(a >> 2 & 1, a >> 1 & 1, a & 1) > f(b >> 2 & 1, b >> 1 & 1, b & 1)
                {
                    continue 'f;
                }
            }
        }
        if code != 0 && code != 255 {
            count += 1;
        }
    }
    count
}

/// The full ternary (or quaternary) clone as plain operation tables.
pub fn clone_tables(algebra: &FiniteAlgebra, k: usize) -> Vec<TermOperation> {
    let clone = generate_clone(algebra, k, &CloneLimits::default()).expect("clone fits");
    assert!(clone.is_complete());
    (0..clone.len())
        .map(|i| clone.member_operation(i).unwrap())
        .collect()
}

/// Exhaustive search for a valid sequence of length `n` over the clone:
/// endpoints pinned to the outer projections, all interior combinations
/// tried, candidates validated with `check_sequence`. Independent of the
/// layered BFS.
pub fn exists_sequence_of_length(
    algebra: &FiniteAlgebra,
    members: &[TermOperation],
    kind: SequenceKind,
    n: usize,
) -> bool {
    let arity = kind.arity();
    let first = TermOperation::projection(algebra.size(), arity, 0);
    let last = TermOperation::projection(algebra.size(), arity, arity - 1);
    if n == 0 {
        return check_sequence(algebra, &[first], kind).is_ok_and(|r| r.valid)
            && algebra.size() == 1;
    }
    let mut seq: Vec<TermOperation> = Vec::with_capacity(n + 1);
    seq.push(first);
    search(algebra, members, kind, &last, n, &mut seq)
}

fn search(
    algebra: &FiniteAlgebra,
    members: &[TermOperation],
    kind: SequenceKind,
    last: &TermOperation,
    n: usize,
    seq: &mut Vec<TermOperation>,
) -> bool {
    if seq.len() == n {
        seq.push(last.clone());
        let ok = check_sequence(algebra, seq, kind).is_ok_and(|r| r.valid);
        seq.pop();
        return ok;
    }
    for candidate in members {
        seq.push(candidate.clone());
        // Cheap prune: the slice equality with the previous term must hold.
        if partial_ok(algebra, kind, seq) && search(algebra, members, kind, last, n, seq) {
            seq.pop();
            return true;
        }
        seq.pop();
    }
    false
}

fn partial_ok(algebra: &FiniteAlgebra, kind: SequenceKind, seq: &[TermOperation]) -> bool {
    let h = seq.len() - 2;
    let size = algebra.size();
    let (prev, cur) = (&seq[h], &seq[h + 1]);
    let even = h.is_multiple_of(2);
    for a in 0..size {
        for b in 0..size {
            let ok = match kind {
                SequenceKind::Alvin | SequenceKind::Gumm => {
                    if even {
                        prev.eval(&[a, b, b]) == cur.eval(&[a, b, b])
                    } else {
                        prev.eval(&[a, a, b]) == cur.eval(&[a, a, b])
                    }
                }
                SequenceKind::Jonsson => {
                    if even {
                        prev.eval(&[a, a, b]) == cur.eval(&[a, a, b])
                    } else {
                        prev.eval(&[a, b, b]) == cur.eval(&[a, b, b])
                    }
                }
                SequenceKind::Day => {
                    if even {
                        prev.eval(&[a, a, b, b]) == cur.eval(&[a, a, b, b])
                    } else {
                        (0..size).all(|c| {
                            prev.eval(&[a, b, b, c]) == cur.eval(&[a, b, b, c])
                        })
                    }
                }
            };
            if !ok {
                return false;
            }
        }
    }
    true
}

/// Minimal sequence length by exhaustive enumeration, up to `max_n`.
pub fn minimal_length_by_enumeration(
    algebra: &FiniteAlgebra,
    kind: SequenceKind,
    max_n: usize,
) -> Option<usize> {
    let members = clone_tables(algebra, kind.arity());
    (0..=max_n).find(|&n| exists_sequence_of_length(algebra, &members, kind, n))
}
