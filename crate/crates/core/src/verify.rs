use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::FiniteAlgebra;
use crate::budget::Budget;
use crate::clones::{free_algebra, level, CloneLimits};
use crate::error::{Error, Result};
use crate::relations::{
    all_congruences, compose_chain, congruence_generated, enumerate_tolerances, join_congruences,
    relation_power, BinaryRelation, Congruence,
};
use crate::sequences::SequenceKind;

/// Result of one exhaustive inclusion (or equality) check, tagged with the
/// label of the clause it verified. Violations are listed per relation tuple
/// in enumeration order, each with its lexicographically least witness pair,
/// so the first entry is the minimal witness overall.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InclusionReport {
    pub tag: String,
    pub holds: bool,
    pub checked: u64,
    pub violations: Vec<InclusionViolation>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InclusionViolation {
    /// Indices of the relations involved, in the enumeration the check ran
    /// over (congruences in canonical lattice order, or tolerances in
    /// canonical order for the tolerance checks).
    pub relations: Vec<usize>,
    pub pair: (usize, usize),
}

impl InclusionReport {
    fn new(tag: impl Into<String>, checked: u64, violations: Vec<InclusionViolation>) -> Self {
        InclusionReport {
            tag: tag.into(),
            holds: violations.is_empty(),
            checked,
            violations,
        }
    }
}

fn least_missing_pair(lhs: &BinaryRelation, rhs: &BinaryRelation) -> Option<(usize, usize)> {
    lhs.pairs().into_iter().find(|&(a, b)| !rhs.contains(a, b))
}

fn triple_report<F>(tag: &str, len: usize, check: F) -> Result<InclusionReport>
where
    F: Fn(usize, usize, usize) -> Result<Option<(usize, usize)>> + Sync,
{
    let total = len * len * len;
    let results: Vec<Option<InclusionViolation>> = (0..total)
        .into_par_iter()
        .map(|idx| {
            let (i, rest) = (idx / (len * len), idx % (len * len));
            let (j, k) = (rest / len, rest % len);
            Ok(check(i, j, k)?.map(|pair| InclusionViolation {
                relations: vec![i, j, k],
                pair,
            }))
        })
        .collect::<Result<_>>()?;
    Ok(InclusionReport::new(
        tag,
        total as u64,
        results.into_iter().flatten().collect(),
    ))
}

/// Brute-force check of the distributivity chain inclusion
/// `α(β∘γ) ⊆ αγ∘αβ∘.ⁿ` over every congruence triple of the algebra.
pub fn check_cd_inclusion(algebra: &FiniteAlgebra, n: usize) -> Result<InclusionReport> {
    let lattice = all_congruences(algebra, &Budget::default())?;
    let congruences = lattice.congruences();
    triple_report("(CD)", congruences.len(), |i, j, k| {
        let (alpha, beta, gamma) = (
            congruences[i].relation(),
            congruences[j].relation(),
            congruences[k].relation(),
        );
        let lhs = alpha.intersect(&beta.compose(gamma)?)?;
        let rhs = compose_chain(&alpha.intersect(gamma)?, &alpha.intersect(beta)?, n)?;
        Ok(least_missing_pair(&lhs, &rhs))
    })
}

/// Decides whether the distributivity chain inclusion holds in the whole
/// variety `V(A)` by checking the generic triple in the free algebra on
/// three generators: with `α = Cg(x,z)`, `β = Cg(x,y)`, `γ = Cg(y,z)`,
/// the inclusion holds in `V(A)` iff `(x,z) ∈ αγ∘αβ∘.ⁿ` there. The least
/// such `n` is the alvin level, and the chain's intermediate elements are
/// the alvin terms.
pub fn decide_cd_variety(algebra: &FiniteAlgebra, n: usize, limits: &CloneLimits) -> Result<bool> {
    let (free, generators) = free_algebra(algebra, 3, limits)?;
    let (x, y, z) = (generators[0], generators[1], generators[2]);
    let alpha = congruence_generated(&free, &[(x, z)])?;
    let beta = congruence_generated(&free, &[(x, y)])?;
    let gamma = congruence_generated(&free, &[(y, z)])?;
    let chain = compose_chain(
        &alpha.relation().intersect(gamma.relation())?,
        &alpha.relation().intersect(beta.relation())?,
        n,
    )?;
    Ok(chain.contains(x, z))
}

fn require_gumm_level(algebra: &FiniteAlgebra, n: usize) -> Result<()> {
    let report = level(algebra, SequenceKind::Gumm, n, &CloneLimits::default())?;
    match report.level() {
        Some(g) if g <= n => Ok(()),
        _ => Err(Error::Precondition(format!(
            "n = {n} is below the Gumm level of the algebra (the inclusion presumes Gumm terms t_0..t_n)"
        ))),
    }
}

/// Exhaustive check of one clause of the four Gumm-term congruence/tolerance
/// inclusions, with the clause's exact right-hand side:
///
/// 1. `(β∘γ)(αβ+αγ) ⊆ αγ∘αβ∘.ⁿ`
/// 2. `α(β∘γ∘.^ℓ) ⊆ α(β∘γ)(γ∘β) ∘ (αβ∘αγ∘.^k)`, `k = (n−2)(ℓ−1)+1`;
///    for `n = 2` the right side is `α(β∘γ)(γ∘β)` alone (one factor saved)
/// 3. `(β∘γ∘.^ℓ)(αβ+αγ) ⊆ αγ∘αβ∘.^k`, `k = (n−2)(ℓ−1)+2`
/// 4. `ΨΘ^ℓ ⊆ (ΨΘ)^{ℓ(n−2)+1}` over all tolerance pairs
///
/// `n` must be at least the Gumm level of the algebra; that precondition is
/// verified, not assumed.
pub fn check_corollary6(
    algebra: &FiniteAlgebra,
    clause: u8,
    ell: usize,
    n: usize,
) -> Result<InclusionReport> {
    if !(1..=4).contains(&clause) {
        return Err(Error::Precondition(format!("no clause {clause}")));
    }
    if ell == 0 {
        return Err(Error::Precondition("clause needs ℓ ≥ 1".into()));
    }
    if clause != 1 && n < 2 {
        return Err(Error::Precondition("clauses (2)-(4) need n ≥ 2".into()));
    }
    require_gumm_level(algebra, n)?;

    if clause == 4 {
        let tolerances = enumerate_tolerances(algebra)?;
        let len = tolerances.len();
        let results: Vec<Option<InclusionViolation>> = (0..len * len)
            .into_par_iter()
            .map(|idx| {
                let (i, j) = (idx / len, idx % len);
                let (psi, theta) = (tolerances[i].relation(), tolerances[j].relation());
                let lhs = psi.intersect(&relation_power(theta, ell))?;
                let rhs = relation_power(&psi.intersect(theta)?, ell * (n - 2) + 1);
                Ok(least_missing_pair(&lhs, &rhs).map(|pair| InclusionViolation {
                    relations: vec![i, j],
                    pair,
                }))
            })
            .collect::<Result<_>>()?;
        return Ok(InclusionReport::new(
            "C6.4",
            (len * len) as u64,
            results.into_iter().flatten().collect(),
        ));
    }

    let lattice = all_congruences(algebra, &Budget::default())?;
    let congruences = lattice.congruences();
    triple_report(&format!("C6.{clause}"), congruences.len(), |i, j, k| {
        let (ca, cb, cc) = (&congruences[i], &congruences[j], &congruences[k]);
        let (alpha, beta, gamma) = (ca.relation(), cb.relation(), cc.relation());
        let ab = alpha.intersect(beta)?;
        let ag = alpha.intersect(gamma)?;
        match clause {
            1 => {
                let join = join_congruences(
                    &Congruence::from_relation(&ab.transitive_closure())?,
                    &Congruence::from_relation(&ag.transitive_closure())?,
                )?;
                let lhs = beta.compose(gamma)?.intersect(join.relation())?;
                let rhs = compose_chain(&ag, &ab, n)?;
                Ok(least_missing_pair(&lhs, &rhs))
            }
            2 => {
                let lhs = alpha.intersect(&compose_chain(beta, gamma, ell)?)?;
                let mid = alpha
                    .intersect(&beta.compose(gamma)?)?
                    .intersect(&gamma.compose(beta)?)?;
                let rhs = if n == 2 {
                    mid
                } else {
                    mid.compose(&compose_chain(&ab, &ag, (n - 2) * (ell - 1) + 1)?)?
                };
                Ok(least_missing_pair(&lhs, &rhs))
            }
            _ => {
                let join = join_congruences(
                    &Congruence::from_relation(&ab.transitive_closure())?,
                    &Congruence::from_relation(&ag.transitive_closure())?,
                )?;
                let lhs = compose_chain(beta, gamma, ell)?.intersect(join.relation())?;
                let rhs = compose_chain(&ag, &ab, (n - 2) * (ell - 1) + 2)?;
                Ok(least_missing_pair(&lhs, &rhs))
            }
        }
    })
}

/// Both inclusions of the congruence identity
/// `α(β+γ) = α(β∘γ) ∘ (αβ+αγ)` over every congruence triple. The identity
/// characterizes congruence modularity; the caller attests modularity of the
/// generated variety.
pub fn check_tschantz_identity(algebra: &FiniteAlgebra) -> Result<InclusionReport> {
    let lattice = all_congruences(algebra, &Budget::default())?;
    let congruences = lattice.congruences();
    triple_report("Tschantz", congruences.len(), |i, j, k| {
        let (ca, cb, cc) = (&congruences[i], &congruences[j], &congruences[k]);
        let alpha = ca.relation();
        let lhs = alpha.intersect(join_congruences(cb, cc)?.relation())?;
        let ab = Congruence::from_relation(&alpha.intersect(cb.relation())?.transitive_closure())?;
        let ag = Congruence::from_relation(&alpha.intersect(cc.relation())?.transitive_closure())?;
        let rhs = alpha
            .intersect(&cb.relation().compose(cc.relation())?)?
            .compose(join_congruences(&ab, &ag)?.relation())?;
        Ok(least_missing_pair(&lhs, &rhs).or(least_missing_pair(&rhs, &lhs)))
    })
}

/// The tolerance intersection property `Ψ*Θ* = (ΨΘ)*` (with `*` the
/// transitive closure), checked for every pair of tolerances. The `⊇`
/// direction is trivial; the `⊆` direction is the content.
pub fn check_tip(algebra: &FiniteAlgebra) -> Result<InclusionReport> {
    let tolerances = enumerate_tolerances(algebra)?;
    let len = tolerances.len();
    let results: Vec<Option<InclusionViolation>> = (0..len * len)
        .into_par_iter()
        .map(|idx| {
            let (i, j) = (idx / len, idx % len);
            let (psi, theta) = (tolerances[i].relation(), tolerances[j].relation());
            let lhs = psi
                .transitive_closure()
                .intersect(&theta.transitive_closure())?;
            let rhs = psi.intersect(theta)?.transitive_closure();
            let witness = least_missing_pair(&lhs, &rhs).or(least_missing_pair(&rhs, &lhs));
            Ok(witness.map(|pair| InclusionViolation {
                relations: vec![i, j],
                pair,
            }))
        })
        .collect::<Result<_>>()?;
    Ok(InclusionReport::new(
        "TIP",
        (len * len) as u64,
        results.into_iter().flatten().collect(),
    ))
}

/// Both inclusions of the join/composition interchange
/// `∏_i (β_i1 + ⋯ + β_ig) = ∏_i (β_i1 ∘ ⋯ ∘ β_ig) ∘ Σ_f β_1f(1)⋯β_hf(h)`
/// for an `h×g` matrix of congruences, with `Σ` ranging over all `g^h`
/// choice functions.
pub fn check_corollary11(
    algebra: &FiniteAlgebra,
    rows: &[Vec<Congruence>],
) -> Result<InclusionReport> {
    let h = rows.len();
    if h == 0 || rows.iter().any(|row| row.is_empty()) {
        return Err(Error::Precondition("corollary 11 needs h, g ≥ 1".into()));
    }
    let g = rows[0].len();
    if rows.iter().any(|row| row.len() != g) {
        return Err(Error::Precondition("congruence matrix must be rectangular".into()));
    }
    let n = algebra.size();
    for row in rows {
        for c in row {
            if c.size() != n {
                return Err(Error::SizeMismatch {
                    left: n,
                    right: c.size(),
                });
            }
        }
    }

    // Left side: intersection of the row joins.
    let mut lhs = BinaryRelation::full(n);
    for row in rows {
        let mut join = row[0].clone();
        for c in &row[1..] {
            join = join_congruences(&join, c)?;
        }
        lhs = lhs.intersect(join.relation())?;
    }

    // Intersection of the row composition chains.
    let mut chains = BinaryRelation::full(n);
    for row in rows {
        let mut chain = row[0].relation().clone();
        for c in &row[1..] {
            chain = chain.compose(c.relation())?;
        }
        chains = chains.intersect(&chain)?;
    }

    // Join over all choice functions of the column intersections.
    let mut sum = BinaryRelation::identity(n);
    let mut choice = vec![0usize; h];
    loop {
        let mut meet = BinaryRelation::full(n);
        for (i, row) in rows.iter().enumerate() {
            meet = meet.intersect(row[choice[i]].relation())?;
        }
        sum = sum.union(&meet)?;
        let mut pos = h;
        loop {
            if pos == 0 {
                break;
            }
            pos -= 1;
            choice[pos] += 1;
            if choice[pos] < g {
                break;
            }
            choice[pos] = 0;
        }
        if choice.iter().all(|&c| c == 0) {
            break;
        }
    }
    let rhs = chains.compose(&sum.transitive_closure())?;

    let witness = least_missing_pair(&lhs, &rhs).or(least_missing_pair(&rhs, &lhs));
    Ok(InclusionReport::new(
        "C11",
        1,
        witness
            .map(|pair| InclusionViolation {
                relations: Vec::new(),
                pair,
            })
            .into_iter()
            .collect(),
    ))
}

/// A factor shape in the generalized chain inclusions: either `α(γ∘β)` or
/// `αγ∘αβ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PatternTag {
    AlphaGammaBeta,
    AlphaGammaThenAlphaBeta,
}

/// The factors `A_2, …, A_r` of the generalized inclusion; `r = tags.len() + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PatternS {
    pub tags: Vec<PatternTag>,
}

impl PatternS {
    pub fn new(tags: Vec<PatternTag>) -> Self {
        PatternS { tags }
    }

    pub fn r(&self) -> usize {
        self.tags.len() + 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "report", rename_all = "snake_case")]
pub enum SPlusOutcome {
    /// The pattern's last factor is not `α(γ∘β)` or `r < 2`.
    NotApplicable,
    /// `(S)` failed, so the stronger forms were not evaluated.
    NotEvaluated,
    Checked(InclusionReport),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Theorem12Report {
    pub s: InclusionReport,
    pub s1: Option<InclusionReport>,
    pub splus: SPlusOutcome,
}

impl Theorem12Report {
    /// The implication the theorem asserts: whenever (S) holds, (S1) — and
    /// (S⁺) where applicable — hold as well.
    pub fn implication_holds(&self) -> bool {
        if !self.s.holds {
            return true;
        }
        let s1_ok = self.s1.as_ref().is_some_and(|r| r.holds);
        let splus_ok = match &self.splus {
            SPlusOutcome::Checked(r) => r.holds,
            _ => true,
        };
        s1_ok && splus_ok
    }
}

/// Evaluates the generalized inclusion `(S)` with the given factor pattern
/// over all congruence triples; when it holds, also the strengthened `(S1)`
/// (first factor replaced by `αγ∘αβ`) and, when the last factor is
/// `α(γ∘β)` and `r ≥ 2`, the bilateral `(S⁺)`.
///
/// The algebra is attested congruence distributive by requiring a Jónsson
/// level within `n_check`; per-algebra results do not by themselves lift to
/// the whole variety.
pub fn check_theorem12(
    algebra: &FiniteAlgebra,
    pattern: &PatternS,
    n_check: usize,
) -> Result<Theorem12Report> {
    let jonsson = level(algebra, SequenceKind::Jonsson, n_check, &CloneLimits::default())?;
    if jonsson.level().is_none() {
        return Err(Error::Precondition(format!(
            "no Jónsson level within {n_check}: congruence distributivity not attested"
        )));
    }
    let lattice = all_congruences(algebra, &Budget::default())?;
    let congruences = lattice.congruences();

    let factor = |tag: PatternTag,
                  alpha: &BinaryRelation,
                  beta: &BinaryRelation,
                  gamma: &BinaryRelation|
     -> Result<BinaryRelation> {
        match tag {
            PatternTag::AlphaGammaBeta => alpha.intersect(&gamma.compose(beta)?),
            PatternTag::AlphaGammaThenAlphaBeta => {
                alpha.intersect(gamma)?.compose(&alpha.intersect(beta)?)
            }
        }
    };

    let run = |tag: &str,
               first: PatternTag,
               tags: &[PatternTag],
               extra_ag_ab: bool|
     -> Result<InclusionReport> {
        triple_report(tag, congruences.len(), |i, j, k| {
            let (alpha, beta, gamma) = (
                congruences[i].relation(),
                congruences[j].relation(),
                congruences[k].relation(),
            );
            let lhs = alpha.intersect(&beta.compose(gamma)?)?;
            let mut rhs = factor(first, alpha, beta, gamma)?;
            for &tag in tags {
                rhs = rhs.compose(&factor(tag, alpha, beta, gamma)?)?;
            }
            if extra_ag_ab {
                rhs = rhs.compose(&alpha.intersect(gamma)?)?;
                rhs = rhs.compose(&alpha.intersect(beta)?)?;
            }
            Ok(least_missing_pair(&lhs, &rhs))
        })
    };

    let s = run("T12.S", PatternTag::AlphaGammaBeta, &pattern.tags, false)?;
    let applicable = pattern.r() >= 2 && pattern.tags.last() == Some(&PatternTag::AlphaGammaBeta);
    if !s.holds {
        return Ok(Theorem12Report {
            s,
            s1: None,
            splus: if applicable {
                SPlusOutcome::NotEvaluated
            } else {
                SPlusOutcome::NotApplicable
            },
        });
    }
    let s1 = run(
        "T12.S1",
        PatternTag::AlphaGammaThenAlphaBeta,
        &pattern.tags,
        false,
    )?;
    let splus = if applicable {
        let without_last = &pattern.tags[..pattern.tags.len() - 1];
        SPlusOutcome::Checked(run(
            "T12.S+",
            PatternTag::AlphaGammaThenAlphaBeta,
            without_last,
            true,
        )?)
    } else {
        SPlusOutcome::NotApplicable
    };
    Ok(Theorem12Report {
        s,
        s1: Some(s1),
        splus,
    })
}
