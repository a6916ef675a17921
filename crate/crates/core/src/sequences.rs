use serde::Serialize;

use crate::algebra::{for_each_tuple, FiniteAlgebra};
use crate::error::{Error, Result};
use crate::relations::{
    enumerate_tolerances, is_compatible, reflexive_compatible_relations, relation_power,
    BinaryRelation, Tolerance,
};
use crate::term::{Term, TermOperation};

/// The four sequence shapes the level search knows about.
///
/// All are chains `t_0, …, t_n` with projections at both ends. The ternary
/// kinds differ in which middle identities are required and in the parity of
/// the slice-transfer equations:
///
/// - alvin: `x = t_h(x,y,x)` for `0 < h < n` (A1); `t_h(x,z,z) = t_{h+1}(x,z,z)`
///   for even `h` (A3); `t_h(x,x,z) = t_{h+1}(x,x,z)` for odd `h` (A4).
/// - Jónsson: as alvin with even and odd exchanged in (A3)/(A4).
/// - Gumm: as alvin, except the middle identity is only required for
///   `1 < h < n` (G1) — position 1 is exempt.
/// - Day: quaternary, per the classical characterization of congruence
///   modularity due to A. Day (1969): `m_0(x,y,z,w) = x`, `m_r(x,y,z,w) = w`,
///   `m_i(x,y,y,x) = x` for all `i`, `m_i(x,x,w,w) = m_{i+1}(x,x,w,w)` for
///   even `i`, and `m_i(x,y,y,w) = m_{i+1}(x,y,y,w)` for odd `i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SequenceKind {
    Jonsson,
    Alvin,
    Gumm,
    Day,
}

impl SequenceKind {
    pub fn arity(self) -> usize {
        match self {
            SequenceKind::Day => 4,
            _ => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            SequenceKind::Jonsson => "jonsson",
            SequenceKind::Alvin => "alvin",
            SequenceKind::Gumm => "gumm",
            SequenceKind::Day => "day",
        }
    }

    /// Whether the middle identity applies to the term at position `h` of a
    /// sequence of length `n`.
    fn middle_required(self, h: usize, n: usize) -> bool {
        match self {
            SequenceKind::Gumm => h > 1 && h < n,
            SequenceKind::Alvin | SequenceKind::Jonsson => h > 0 && h < n,
            // Day's middle identity binds every term, endpoints included.
            SequenceKind::Day => h <= n,
        }
    }
}

impl std::fmt::Display for SequenceKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// One failed equation instance: the tag, the sequence position, the
/// substitution point and the two values that should have agreed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub equation: String,
    pub index: usize,
    pub point: Vec<usize>,
    pub lhs: usize,
    pub rhs: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidityReport {
    pub valid: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub violations: Vec<Violation>,
}

impl ValidityReport {
    fn new(violations: Vec<Violation>, note: Option<String>) -> Self {
        ValidityReport {
            valid: violations.is_empty(),
            note,
            violations,
        }
    }
}

fn validate_sequence_shape(
    algebra: &FiniteAlgebra,
    seq: &[TermOperation],
    kind: SequenceKind,
) -> Result<()> {
    if seq.is_empty() {
        return Err(Error::EmptySequence);
    }
    for op in seq {
        if op.size() != algebra.size() {
            return Err(Error::SizeMismatch {
                left: algebra.size(),
                right: op.size(),
            });
        }
        if op.arity() != kind.arity() {
            return Err(Error::ArityMismatch {
                expected: kind.arity(),
                got: op.arity(),
            });
        }
    }
    Ok(())
}

/// Checks a term-operation sequence pointwise against the equations of the
/// given kind. Violations are listed deterministically: endpoint equations
/// first, then middle identities, then slice transfers, each by position and
/// lexicographic substitution.
pub fn check_sequence(
    algebra: &FiniteAlgebra,
    seq: &[TermOperation],
    kind: SequenceKind,
) -> Result<ValidityReport> {
    validate_sequence_shape(algebra, seq, kind)?;
    let n = seq.len() - 1;
    let size = algebra.size();
    let mut violations = Vec::new();
    let (first_tag, last_tag, mid_tag) = match kind {
        SequenceKind::Day => ("D2", "D5", "D1"),
        _ => ("A2", "A5", if kind == SequenceKind::Gumm { "G1" } else { "A1" }),
    };

    let arity = kind.arity();
    // Endpoints are the outer projections.
    for (tag, index, proj) in [(first_tag, 0, 0), (last_tag, n, arity - 1)] {
        let op = &seq[index];
        for_each_tuple(size, arity, |point| {
            let got = op.eval(point);
            if got != point[proj] {
                violations.push(Violation {
                    equation: tag.into(),
                    index,
                    point: point.to_vec(),
                    lhs: got,
                    rhs: point[proj],
                });
            }
        });
    }

    // Middle identities.
    for (h, op) in seq.iter().enumerate() {
        if !kind.middle_required(h, n) {
            continue;
        }
        for_each_tuple(size, 2, |point| {
            let (a, b) = (point[0], point[1]);
            let got = match kind {
                SequenceKind::Day => op.eval(&[a, b, b, a]),
                _ => op.eval(&[a, b, a]),
            };
            if got != a {
                violations.push(Violation {
                    equation: mid_tag.into(),
                    index: h,
                    point: point.to_vec(),
                    lhs: a,
                    rhs: got,
                });
            }
        });
    }

    // Slice transfers between consecutive terms.
    for h in 0..n {
        let even = h % 2 == 0;
        let (tag, vars): (&str, usize) = match kind {
            SequenceKind::Day => {
                if even {
                    ("D3", 2)
                } else {
                    ("D4", 3)
                }
            }
            SequenceKind::Jonsson => {
                if even {
                    ("A4", 2)
                } else {
                    ("A3", 2)
                }
            }
            _ => {
                if even {
                    ("A3", 2)
                } else {
                    ("A4", 2)
                }
            }
        };
        let (cur, next) = (&seq[h], &seq[h + 1]);
        for_each_tuple(size, vars, |point| {
            let args: Vec<usize> = match (kind, tag) {
                (SequenceKind::Day, "D3") => vec![point[0], point[0], point[1], point[1]],
                (SequenceKind::Day, _) => vec![point[0], point[1], point[1], point[2]],
                // (A3) compares the (x,z,z)-slices, (A4) the (x,x,z)-slices.
                (_, "A3") => vec![point[0], point[1], point[1]],
                _ => vec![point[0], point[0], point[1]],
            };
            let (lhs, rhs) = (cur.eval(&args), next.eval(&args));
            if lhs != rhs {
                violations.push(Violation {
                    equation: tag.into(),
                    index: h,
                    point: point.to_vec(),
                    lhs,
                    rhs,
                });
            }
        });
    }

    let note = if n <= 1 && size > 1 {
        Some("trivial variety: a sequence of length ≤ 1 forces x = z".into())
    } else {
        None
    };
    Ok(ValidityReport::new(violations, note))
}

fn star_table(op: &TermOperation) -> Result<TermOperation> {
    if op.arity() != 3 {
        return Err(Error::ArityMismatch {
            expected: 3,
            got: op.arity(),
        });
    }
    let size = op.size();
    let mut table = Vec::with_capacity(size * size * size);
    for_each_tuple(size, 3, |point| {
        let (a, b, c) = (point[0], point[1], point[2]);
        let inner_left = op.eval(&[a, b, b]);
        let inner_right = op.eval(&[a, b, c]);
        table.push(op.eval(&[a, inner_left, inner_right]));
    });
    TermOperation::new(size, 3, table)
}

/// The star construction, tablewise:
/// `s*(x,y,z) = s(x, s(x,y,y), s(x,y,z))` applied to every sequence entry.
pub fn star_transform(seq: &[TermOperation]) -> Result<Vec<TermOperation>> {
    seq.iter().map(star_table).collect()
}

/// Star applied twice.
pub fn double_star_transform(seq: &[TermOperation]) -> Result<Vec<TermOperation>> {
    star_transform(&star_transform(seq)?)
}

/// Symbolic star of a ternary term; subterms are duplicated rather than
/// shared, so repeated starring grows terms quickly — the table-level
/// transform is the efficient path.
pub fn star_transform_term(term: &Term) -> Result<Term> {
    if term.arity() > 3 {
        return Err(Error::ArityMismatch {
            expected: 3,
            got: term.arity(),
        });
    }
    let ternary = if term.arity() == 3 {
        term.clone()
    } else {
        Term::new(3, term.root().clone())?
    };
    let x = Term::projection(0, 3);
    let y = Term::projection(1, 3);
    let inner_left = ternary.substitute(&[x.clone(), y.clone(), y.clone()], 3)?;
    ternary.substitute(&[x, inner_left, ternary.clone()], 3)
}

pub fn star_transform_terms(seq: &[Term]) -> Result<Vec<Term>> {
    seq.iter().map(star_transform_term).collect()
}

/// Checks `(T_m)`: for every `(a,c) ∈ Θ^m`, `(a, s1(a,a,c)) ∈ Θ`.
pub fn check_tm(
    algebra: &FiniteAlgebra,
    s1: &TermOperation,
    theta: &Tolerance,
    m: usize,
) -> Result<ValidityReport> {
    if m == 0 {
        return Err(Error::Precondition("(T_m) needs m ≥ 1".into()));
    }
    if s1.size() != algebra.size() || theta.size() != algebra.size() {
        return Err(Error::SizeMismatch {
            left: algebra.size(),
            right: s1.size().max(theta.size()),
        });
    }
    if s1.arity() != 3 {
        return Err(Error::ArityMismatch {
            expected: 3,
            got: s1.arity(),
        });
    }
    let power = relation_power(theta.relation(), m);
    let mut violations = Vec::new();
    for (a, c) in power.pairs() {
        let s = s1.eval(&[a, a, c]);
        if !theta.relation().contains(a, s) {
            violations.push(Violation {
                equation: format!("T_{m}"),
                index: m,
                point: vec![a, c],
                lhs: s,
                rhs: a,
            });
        }
    }
    Ok(ValidityReport::new(violations, None))
}

/// A factor in an `(A_m)` pattern: the relation itself or its converse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Direction {
    Fwd,
    Conv,
}

/// Checks `(A_m)` for one pattern: with `X = X_1 ∘ … ∘ X_m` where `X_j` is
/// `R` or `R^⌣` as directed, every `(a,c) ∈ X` must satisfy
/// `(a, s1(a,a,c)) ∈ R`. `R` must be reflexive and compatible; a violation of
/// that precondition is reported as an error, never silently accepted.
pub fn check_am(
    algebra: &FiniteAlgebra,
    s1: &TermOperation,
    r: &BinaryRelation,
    pattern: &[Direction],
) -> Result<ValidityReport> {
    if pattern.is_empty() {
        return Err(Error::Precondition("(A_m) needs a pattern of length ≥ 1".into()));
    }
    if r.size() != algebra.size() || s1.size() != algebra.size() {
        return Err(Error::SizeMismatch {
            left: algebra.size(),
            right: r.size(),
        });
    }
    if !r.is_reflexive() {
        return Err(Error::Precondition("(A_m) requires R reflexive".into()));
    }
    if !is_compatible(algebra, r) {
        return Err(Error::Precondition("(A_m) requires R compatible".into()));
    }
    let converse = r.converse();
    let factor = |d: Direction| match d {
        Direction::Fwd => r,
        Direction::Conv => &converse,
    };
    let mut x = factor(pattern[0]).clone();
    for &d in &pattern[1..] {
        x = x.compose(factor(d))?;
    }
    let m = pattern.len();
    let mut violations = Vec::new();
    for (a, c) in x.pairs() {
        let s = s1.eval(&[a, a, c]);
        if !r.contains(a, s) {
            violations.push(Violation {
                equation: format!("A_{m}"),
                index: m,
                point: vec![a, c],
                lhs: s,
                rhs: a,
            });
        }
    }
    Ok(ValidityReport::new(violations, None))
}

fn first_violation_summary(report: &ValidityReport) -> String {
    match report.violations.first() {
        Some(v) => format!(
            "({}) fails at position {} on {:?}: {} ≠ {}",
            v.equation, v.index, v.point, v.lhs, v.rhs
        ),
        None => "no violation".into(),
    }
}

/// Star-transforms a valid sequence `m−1` times. The result is re-validated
/// and its `s_1` is checked against `(T_m)` on every tolerance of the
/// algebra; both guarantees are asserted rather than assumed.
pub fn build_tm_witness(
    algebra: &FiniteAlgebra,
    seq: &[TermOperation],
    kind: SequenceKind,
    m: usize,
) -> Result<Vec<TermOperation>> {
    if m == 0 {
        return Err(Error::Precondition("(T_m) needs m ≥ 1".into()));
    }
    let report = check_sequence(algebra, seq, kind)?;
    if !report.valid {
        return Err(Error::InvalidSequence(first_violation_summary(&report)));
    }
    let mut out = seq.to_vec();
    for _ in 1..m {
        out = star_transform(&out)?;
    }
    let recheck = check_sequence(algebra, &out, kind)?;
    if !recheck.valid {
        return Err(Error::ConstructionFailed(format!(
            "starred sequence lost validity: {}",
            first_violation_summary(&recheck)
        )));
    }
    if out.len() >= 2 {
        for theta in enumerate_tolerances(algebra)? {
            let tm = check_tm(algebra, &out[1], &theta, m)?;
            if !tm.valid {
                return Err(Error::ConstructionFailed(format!(
                    "(T_{m}) fails on tolerance {theta}: {}",
                    first_violation_summary(&tm)
                )));
            }
        }
    }
    Ok(out)
}

/// Double-star-transforms a valid sequence `m−1` times. The result is
/// re-validated and its `s_1` is checked against `(A_m)` for every sign
/// pattern of length `m` over every reflexive compatible relation of the
/// algebra.
pub fn build_am_witness(
    algebra: &FiniteAlgebra,
    seq: &[TermOperation],
    kind: SequenceKind,
    m: usize,
) -> Result<Vec<TermOperation>> {
    if m == 0 {
        return Err(Error::Precondition("(A_m) needs m ≥ 1".into()));
    }
    let report = check_sequence(algebra, seq, kind)?;
    if !report.valid {
        return Err(Error::InvalidSequence(first_violation_summary(&report)));
    }
    let mut out = seq.to_vec();
    for _ in 1..m {
        out = double_star_transform(&out)?;
    }
    let recheck = check_sequence(algebra, &out, kind)?;
    if !recheck.valid {
        return Err(Error::ConstructionFailed(format!(
            "double-starred sequence lost validity: {}",
            first_violation_summary(&recheck)
        )));
    }
    if out.len() >= 2 {
        for rel in reflexive_compatible_relations(algebra)? {
            for pattern in all_patterns(m) {
                let am = check_am(algebra, &out[1], &rel, &pattern)?;
                if !am.valid {
                    return Err(Error::ConstructionFailed(format!(
                        "(A_{m}) fails on {rel} with pattern {pattern:?}: {}",
                        first_violation_summary(&am)
                    )));
                }
            }
        }
    }
    Ok(out)
}

/// All `2^m` sign patterns of length `m`, in binary counting order with
/// `Fwd` for a zero bit.
pub fn all_patterns(m: usize) -> Vec<Vec<Direction>> {
    (0u32..1 << m)
        .map(|mask| {
            (0..m)
                .map(|j| {
                    if mask >> j & 1 == 0 {
                        Direction::Fwd
                    } else {
                        Direction::Conv
                    }
                })
                .collect()
        })
        .collect()
}
