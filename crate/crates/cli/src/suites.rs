//! The named verification suites behind `maltlab verify`. Each suite binds
//! its parameters from computed levels so a single command is
//! self-contained, and reports one assertion line per checked statement.

use clap::ValueEnum;
use maltlab_core::{
    all_congruences, build_tm_witness, check_corollary11, check_corollary6, check_theorem12,
    check_tip, check_tschantz_identity, level, Budget, CloneLimits, Error as CoreError,
    FiniteAlgebra, PatternS, PatternTag, Result as CoreResult, SequenceKind,
};
use serde::Serialize;

#[derive(Clone, Copy, ValueEnum)]
pub enum Suite {
    Theorem4,
    Theorem5,
    Corollary6,
    Tip,
    Corollary11,
    Theorem12,
    Theorem8,
    Remark7,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Theorem4 => "theorem4",
            Suite::Theorem5 => "theorem5",
            Suite::Corollary6 => "corollary6",
            Suite::Tip => "tip",
            Suite::Corollary11 => "corollary11",
            Suite::Theorem12 => "theorem12",
            Suite::Theorem8 => "theorem8",
            Suite::Remark7 => "remark7",
        }
    }
}

pub struct SuiteParams {
    pub clause: Option<u8>,
    pub ell: Option<usize>,
    pub cap_n: usize,
    pub budget: Budget,
}

impl SuiteParams {
    fn limits(&self) -> CloneLimits {
        CloneLimits {
            max_members: maltlab_core::DEFAULT_CLONE_CAP,
            budget: self.budget,
        }
    }
}

#[derive(Serialize)]
pub struct Assertion {
    pub label: String,
    pub pass: bool,
    pub detail: String,
}

pub enum SuiteStatus {
    Complete,
    Inconclusive(String),
}

pub struct SuiteOutcome {
    pub status: SuiteStatus,
    pub assertions: Vec<Assertion>,
}

impl SuiteOutcome {
    fn complete(assertions: Vec<Assertion>) -> Self {
        SuiteOutcome {
            status: SuiteStatus::Complete,
            assertions,
        }
    }

    fn inconclusive(reason: String) -> Self {
        SuiteOutcome {
            status: SuiteStatus::Inconclusive(reason),
            assertions: Vec::new(),
        }
    }
}

fn computed_level(
    algebra: &FiniteAlgebra,
    kind: SequenceKind,
    params: &SuiteParams,
) -> CoreResult<Option<(usize, Vec<maltlab_core::TermOperation>)>> {
    let report = level(algebra, kind, params.cap_n, &params.limits())?;
    Ok(report.level().map(|n| (n, report.witness)))
}

pub fn run_suite(
    algebra: &FiniteAlgebra,
    suite: Suite,
    params: &SuiteParams,
) -> CoreResult<SuiteOutcome> {
    match suite {
        Suite::Theorem4 => theorem4(algebra, params),
        Suite::Theorem5 => theorem5(algebra, params),
        Suite::Corollary6 => corollary6(algebra, params),
        Suite::Tip => tip(algebra),
        Suite::Corollary11 => corollary11(algebra, params),
        Suite::Theorem12 => theorem12(algebra, params),
        Suite::Theorem8 => theorem8(algebra, params),
        Suite::Remark7 => remark7(algebra, params),
    }
}

fn theorem4(algebra: &FiniteAlgebra, params: &SuiteParams) -> CoreResult<SuiteOutcome> {
    let alvin = computed_level(algebra, SequenceKind::Alvin, params)?;
    let gumm = computed_level(algebra, SequenceKind::Gumm, params)?;
    let (Some((a, _)), Some((g, _))) = (alvin, gumm) else {
        return Ok(SuiteOutcome::inconclusive(format!(
            "no alvin or Gumm sequence of length ≤ {}; the generated variety may not be congruence distributive",
            params.cap_n
        )));
    };
    Ok(SuiteOutcome::complete(vec![Assertion {
        label: "alvin level = gumm level".into(),
        pass: a == g,
        detail: format!("alvin level {a} = gumm level {g}"),
    }]))
}

fn theorem5(algebra: &FiniteAlgebra, params: &SuiteParams) -> CoreResult<SuiteOutcome> {
    let mut assertions = Vec::new();
    let mut any = false;
    for kind in [SequenceKind::Gumm, SequenceKind::Alvin] {
        let Some((n, witness)) = computed_level(algebra, kind, params)? else {
            continue;
        };
        any = true;
        for m in 1..=4usize {
            let outcome = build_tm_witness(algebra, &witness, kind, m);
            let (pass, detail) = match outcome {
                Ok(_) => (
                    true,
                    format!(
                        "star^{} of the {}-witness (n = {n}) revalidates and s_1 absorbs Θ^{m} on every tolerance",
                        m - 1,
                        kind.name()
                    ),
                ),
                Err(CoreError::ConstructionFailed(msg)) => (false, msg),
                Err(e) => return Err(e),
            };
            assertions.push(Assertion {
                label: format!("(T_{m}) for the {} sequence", kind.name()),
                pass,
                detail,
            });
        }
        if kind == SequenceKind::Gumm && witness.len() >= 2 {
            // The untransformed t_1 already absorbs two-step chains.
            let pass = build_tm_witness(algebra, &witness, kind, 1).is_ok()
                && maltlab_core::enumerate_tolerances(algebra)?.iter().all(|theta| {
                    maltlab_core::check_tm(algebra, &witness[1], theta, 2)
                        .map(|r| r.valid)
                        .unwrap_or(false)
                });
            assertions.push(Assertion {
                label: "(T_2) for the untransformed t_1".into(),
                pass,
                detail: "the original t_1 absorbs Θ² on every tolerance".into(),
            });
        }
    }
    if !any {
        return Ok(SuiteOutcome::inconclusive(format!(
            "no Gumm sequence of length ≤ {}; the generated variety may not be congruence modular",
            params.cap_n
        )));
    }
    Ok(SuiteOutcome::complete(assertions))
}

fn corollary6(algebra: &FiniteAlgebra, params: &SuiteParams) -> CoreResult<SuiteOutcome> {
    let Some((n, _)) = computed_level(algebra, SequenceKind::Gumm, params)? else {
        return Ok(SuiteOutcome::inconclusive(format!(
            "no Gumm sequence of length ≤ {}; the inclusions presume Gumm terms",
            params.cap_n
        )));
    };
    if n < 2 && algebra.size() > 1 {
        return Ok(SuiteOutcome::inconclusive(format!("Gumm level {n} < 2")));
    }
    let n = n.max(2);
    let clauses: Vec<u8> = match params.clause {
        Some(c) => vec![c],
        None => vec![1, 2, 3, 4],
    };
    let ells: Vec<usize> = match params.ell {
        Some(l) => vec![l],
        None => vec![1, 2, 3],
    };
    let mut assertions = Vec::new();
    for &clause in &clauses {
        for &ell in &ells {
            if clause == 1 && ell > 1 {
                continue;
            }
            let report = check_corollary6(algebra, clause, ell, n)?;
            let k = match clause {
                1 => format!("chain length n = {n}"),
                2 => {
                    if n == 2 {
                        "k = 0 (factor saved)".into()
                    } else {
                        format!("k = {}", (n - 2) * (ell - 1) + 1)
                    }
                }
                3 => format!("k = {}", (n - 2) * (ell - 1) + 2),
                _ => format!("exponent = {}", ell * (n - 2) + 1),
            };
            let label = if clause == 1 {
                format!("C6.{clause}")
            } else {
                format!("C6.{clause} ℓ={ell}")
            };
            assertions.push(Assertion {
                label,
                pass: report.holds,
                detail: format!(
                    "{k}; {} tuples checked{}",
                    report.checked,
                    witness_note(&report)
                ),
            });
        }
    }
    Ok(SuiteOutcome::complete(assertions))
}

fn witness_note(report: &maltlab_core::InclusionReport) -> String {
    match report.violations.first() {
        Some(v) => format!(
            "; first counterexample at relations {:?}, pair {:?}",
            v.relations, v.pair
        ),
        None => String::new(),
    }
}

fn tip(algebra: &FiniteAlgebra) -> CoreResult<SuiteOutcome> {
    let tip = check_tip(algebra)?;
    let tschantz = check_tschantz_identity(algebra)?;
    Ok(SuiteOutcome::complete(vec![
        Assertion {
            label: "TIP Ψ*Θ* = (ΨΘ)*".into(),
            pass: tip.holds,
            detail: format!("{} tolerance pairs{}", tip.checked, witness_note(&tip)),
        },
        Assertion {
            label: "α(β+γ) = α(β∘γ)∘(αβ+αγ)".into(),
            pass: tschantz.holds,
            detail: format!(
                "{} congruence triples{}",
                tschantz.checked,
                witness_note(&tschantz)
            ),
        },
    ]))
}

fn corollary11(algebra: &FiniteAlgebra, params: &SuiteParams) -> CoreResult<SuiteOutcome> {
    let lattice = all_congruences(algebra, &params.budget)?;
    let len = lattice.len();
    let mut failures = 0u64;
    let mut first_failure = None;
    let mut checked = 0u64;
    for a in 0..len {
        for b in 0..len {
            for c in 0..len {
                for d in 0..len {
                    let rows = vec![
                        vec![lattice.get(a).clone(), lattice.get(b).clone()],
                        vec![lattice.get(c).clone(), lattice.get(d).clone()],
                    ];
                    let report = check_corollary11(algebra, &rows)?;
                    checked += 1;
                    if !report.holds {
                        failures += 1;
                        first_failure.get_or_insert((a, b, c, d));
                    }
                }
            }
        }
    }
    Ok(SuiteOutcome::complete(vec![Assertion {
        label: "C11 h=g=2".into(),
        pass: failures == 0,
        detail: match first_failure {
            None => format!("{checked} congruence matrices checked"),
            Some(w) => format!("{failures} of {checked} matrices fail, first at {w:?}"),
        },
    }]))
}

fn theorem12(algebra: &FiniteAlgebra, params: &SuiteParams) -> CoreResult<SuiteOutcome> {
    let mut assertions = Vec::new();
    for r in 1..=3usize {
        let mut all_ok = true;
        let mut detail = String::new();
        for mask in 0u8..1 << (r - 1) {
            let tags: Vec<PatternTag> = (0..r - 1)
                .map(|i| {
                    if mask >> i & 1 == 0 {
                        PatternTag::AlphaGammaBeta
                    } else {
                        PatternTag::AlphaGammaThenAlphaBeta
                    }
                })
                .collect();
            let report = match check_theorem12(algebra, &PatternS::new(tags.clone()), params.cap_n)
            {
                Ok(report) => report,
                Err(CoreError::Precondition(msg)) => {
                    return Ok(SuiteOutcome::inconclusive(msg));
                }
                Err(e) => return Err(e),
            };
            if !report.implication_holds() {
                all_ok = false;
                detail = format!("counterexample with tags {tags:?}");
            }
        }
        if detail.is_empty() {
            detail = format!("{} patterns, S ⇒ S1 (and S⁺ where applicable)", 1 << (r - 1));
        }
        assertions.push(Assertion {
            label: format!("T12 r={r}"),
            pass: all_ok,
            detail,
        });
    }
    Ok(SuiteOutcome::complete(assertions))
}

fn theorem8(algebra: &FiniteAlgebra, params: &SuiteParams) -> CoreResult<SuiteOutcome> {
    let day = computed_level(algebra, SequenceKind::Day, params)?;
    let jonsson = computed_level(algebra, SequenceKind::Jonsson, params)?;
    let (Some((r, _)), Some((j, _))) = (day, jonsson) else {
        return Ok(SuiteOutcome::inconclusive(format!(
            "needs both a Day level and a Jónsson level within {}",
            params.cap_n
        )));
    };
    let bound = r * r - r + 2;
    Ok(SuiteOutcome::complete(vec![Assertion {
        label: "jonsson level ≤ r²−r+2".into(),
        pass: j <= bound,
        detail: format!("day level r = {r}, jonsson level {j} ≤ {bound}"),
    }]))
}

fn remark7(algebra: &FiniteAlgebra, params: &SuiteParams) -> CoreResult<SuiteOutcome> {
    let day = computed_level(algebra, SequenceKind::Day, params)?;
    let gumm = computed_level(algebra, SequenceKind::Gumm, params)?;
    let (Some((r, _)), Some((n, _))) = (day, gumm) else {
        return Ok(SuiteOutcome::inconclusive(format!(
            "needs both a Day level and a Gumm level within {}",
            params.cap_n
        )));
    };
    if n < 2 {
        return Ok(SuiteOutcome::complete(vec![Assertion {
            label: "day level ≤ 2n−2".into(),
            pass: true,
            detail: format!("gumm level {n} < 2: the bound only binds for n ≥ 2"),
        }]));
    }
    Ok(SuiteOutcome::complete(vec![Assertion {
        label: "day level ≤ 2n−2".into(),
        pass: r <= 2 * n - 2,
        detail: format!("gumm level n = {n}, day level {r} ≤ {}", 2 * n - 2),
    }]))
}
