use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{for_each_tuple, unpack_tuple, FiniteAlgebra, Signature};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::sequences::SequenceKind;
use crate::term::{Term, TermNode, TermOperation};

/// Default cap on the number of clone members.
pub const DEFAULT_CLONE_CAP: usize = 1_000_000;
/// Default cap on the level search depth.
pub const DEFAULT_LEVEL_CAP: usize = 12;

#[derive(Debug, Clone, Copy)]
pub struct CloneLimits {
    pub max_members: usize,
    pub budget: Budget,
}

impl Default for CloneLimits {
    fn default() -> Self {
        CloneLimits {
            max_members: DEFAULT_CLONE_CAP,
            budget: Budget::default(),
        }
    }
}

/// How a clone member was produced; enough to rebuild a symbolic term.
#[derive(Debug, Clone)]
enum Provenance {
    Projection(usize),
    Composite { op: usize, args: Vec<usize> },
}

/// The k-ary clone of a finite algebra: every term operation, represented by
/// its evaluation vector over a fixed point set. With the full cube as point
/// set this is the free algebra on k generators of the generated variety,
/// realized inside `A^(A^k)`; a restricted point set carries the image of
/// the clone under coordinate restriction.
#[derive(Debug, Clone)]
pub struct CloneSet {
    size: usize,
    arity: usize,
    signature: Signature,
    points: Vec<Vec<usize>>,
    full_cube: bool,
    members: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
    parents: Vec<Provenance>,
    complete: bool,
    cap: usize,
}

impl CloneSet {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// False when generation stopped at the member cap; all downstream
    /// minimality claims are refused on a partial clone.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    /// Evaluation vector of member `i` over the point set; equals the
    /// row-major operation table when the point set is the full cube.
    pub fn member(&self, i: usize) -> &[usize] {
        &self.members[i]
    }

    pub fn member_operation(&self, i: usize) -> Result<TermOperation> {
        if !self.full_cube {
            return Err(Error::Precondition(
                "clone was generated on a restricted point set; rebuild tables via terms".into(),
            ));
        }
        TermOperation::new(self.size, self.arity, self.members[i].clone())
    }

    pub fn find_table(&self, op: &TermOperation) -> Option<usize> {
        if op.size() != self.size || op.arity() != self.arity {
            return None;
        }
        let key: Vec<usize> = if self.full_cube {
            op.table().to_vec()
        } else {
            self.points.iter().map(|p| op.eval(p)).collect()
        };
        self.index.get(&key).copied()
    }

    /// Rebuilds a symbolic term for member `i` from the parent links.
    pub fn term_of(&self, i: usize) -> Term {
        Term::new(self.arity, self.node_of(i)).expect("parent links stay within arity")
    }

    fn node_of(&self, i: usize) -> TermNode {
        match &self.parents[i] {
            Provenance::Projection(v) => TermNode::Var(*v),
            Provenance::Composite { op, args } => {
                let (name, _) = self.signature.symbol(*op);
                TermNode::App {
                    symbol: name.to_owned(),
                    args: args.iter().map(|&a| self.node_of(a)).collect(),
                }
            }
        }
    }
}

/// Symbolic term for a table known to lie in the clone.
pub fn reconstruct_term(clone: &CloneSet, op: &TermOperation) -> Result<Term> {
    match clone.find_table(op) {
        Some(i) => Ok(clone.term_of(i)),
        None => Err(Error::NotInClone),
    }
}

fn cube_points(size: usize, k: usize) -> Vec<Vec<usize>> {
    let mut points = Vec::with_capacity(size.pow(k as u32));
    for_each_tuple(size, k, |t| points.push(t.to_vec()));
    points
}

/// The quaternary coordinates the Day equations can see: all points of the
/// shapes `(a,b,b,c)` and `(a,a,b,b)`, sorted. Restricting the clone to
/// these coordinates is a homomorphism, so the level search over the
/// restriction is exact while the state space stays small.
fn day_slice_points(size: usize) -> Vec<Vec<usize>> {
    let mut points = Vec::new();
    for_each_tuple(size, 3, |t| points.push(vec![t[0], t[1], t[1], t[2]]));
    for_each_tuple(size, 2, |t| points.push(vec![t[0], t[0], t[1], t[1]]));
    points.sort();
    points.dedup();
    points
}

/// Breadth-first closure of the projections under the basic operations.
///
/// Each pass applies every operation (in signature order) to every argument
/// tuple over the members present at the start of the pass, in lexicographic
/// tuple order, skipping tuples whose arguments all predate the previous
/// pass. First occurrence fixes a member's index, so the insertion order is
/// deterministic and independent of the parallel chunking.
pub fn generate_clone(algebra: &FiniteAlgebra, k: usize, limits: &CloneLimits) -> Result<CloneSet> {
    let points = cube_points(algebra.size(), k);
    generate_clone_on(algebra, k, points, true, limits)
}

fn generate_clone_on(
    algebra: &FiniteAlgebra,
    k: usize,
    points: Vec<Vec<usize>>,
    full_cube: bool,
    limits: &CloneLimits,
) -> Result<CloneSet> {
    let size = algebra.size();
    let row = points.len();
    limits.budget.check_bytes(row as u128 * 8 * (k as u128 + 1))?;
    let mut clone = CloneSet {
        size,
        arity: k,
        signature: algebra.signature().clone(),
        points,
        full_cube,
        members: Vec::new(),
        index: HashMap::new(),
        parents: Vec::new(),
        complete: false,
        cap: limits.max_members,
    };
    // Every function on the point set; once reached the clone is closed.
    let max_possible = (size as u128).checked_pow(row as u32);

    let insert = |clone: &mut CloneSet, vec: Vec<usize>, parent: Provenance| -> Result<bool> {
        if clone.index.contains_key(&vec) {
            return Ok(false);
        }
        if clone.members.len() >= limits.max_members {
            return Err(Error::PartialClone {
                cap: limits.max_members,
            });
        }
        limits
            .budget
            .check_bytes((clone.members.len() as u128 + 1) * row as u128 * 2 * 8)?;
        let id = clone.members.len();
        clone.index.insert(vec.clone(), id);
        clone.members.push(vec);
        clone.parents.push(parent);
        Ok(true)
    };

    for v in 0..k {
        let vec: Vec<usize> = clone.points.iter().map(|p| p[v]).collect();
        insert(&mut clone, vec, Provenance::Projection(v))?;
    }

    let mut prev_start = 0usize;
    'passes: loop {
        let pass_len = clone.members.len();
        let mut grew = false;
        for (op_index, (_, arity)) in algebra.signature().iter().enumerate() {
            if arity == 0 {
                if prev_start == 0 {
                    let c = algebra.apply(op_index, &[]);
                    match insert(&mut clone, vec![c; row], Provenance::Composite {
                        op: op_index,
                        args: Vec::new(),
                    }) {
                        Ok(new) => grew |= new,
                        Err(Error::PartialClone { cap }) => {
                            clone.cap = cap;
                            return Ok(clone);
                        }
                        Err(e) => return Err(e),
                    }
                }
                continue;
            }
            let table = algebra.table(op_index);
            let total = (pass_len as u128).pow(arity as u32);
            let mut chunk_start = 0u128;
            while chunk_start < total {
                let chunk_end = (chunk_start + 8192).min(total);
                let candidates: Vec<Option<(Vec<usize>, Vec<usize>)>> = (chunk_start..chunk_end)
                    .into_par_iter()
                    .map(|tuple_index| {
                        let mut args = vec![0usize; arity];
                        let mut rest = tuple_index;
                        for slot in args.iter_mut().rev() {
                            *slot = (rest % pass_len as u128) as usize;
                            rest /= pass_len as u128;
                        }
                        if args.iter().all(|&a| a < prev_start) {
                            return None;
                        }
                        let mut vec = vec![0usize; row];
                        for (p, slot) in vec.iter_mut().enumerate() {
                            let mut idx = 0usize;
                            for &a in &args {
                                idx = idx * size + clone.members[a][p];
                            }
                            *slot = table[idx];
                        }
                        Some((vec, args))
                    })
                    .collect();
                for candidate in candidates.into_iter().flatten() {
                    let (vec, args) = candidate;
                    match insert(&mut clone, vec, Provenance::Composite { op: op_index, args }) {
                        Ok(new) => grew |= new,
                        Err(Error::PartialClone { cap }) => {
                            clone.cap = cap;
                            return Ok(clone);
                        }
                        Err(e) => return Err(e),
                    }
                }
                if Some(clone.members.len() as u128) == max_possible {
                    clone.complete = true;
                    break 'passes;
                }
                chunk_start = chunk_end;
            }
        }
        if !grew {
            clone.complete = true;
            break;
        }
        prev_start = pass_len;
    }
    Ok(clone)
}

/// Repackages the full-cube clone as an algebra: the free algebra on `k`
/// generators of `V(A)`, with the projections as generators.
pub fn free_algebra(
    algebra: &FiniteAlgebra,
    k: usize,
    limits: &CloneLimits,
) -> Result<(FiniteAlgebra, Vec<usize>)> {
    let clone = generate_clone(algebra, k, limits)?;
    if !clone.is_complete() {
        return Err(Error::PartialClone { cap: clone.cap() });
    }
    let members = &clone.members;
    let m = members.len();
    let row = clone.points.len();
    let size = algebra.size();
    let mut operations = Vec::with_capacity(algebra.signature().len());
    for (op_index, (name, arity)) in algebra.signature().iter().enumerate() {
        let len = limits.budget.checked_table_len(m, arity as u32, 8)?;
        let op_table = algebra.table(op_index);
        let table: Vec<usize> = (0..len)
            .into_par_iter()
            .map(|tuple_index| {
                let mut args = vec![0usize; arity];
                unpack_tuple(m, arity, tuple_index, &mut args);
                let mut vec = vec![0usize; row];
                for (p, slot) in vec.iter_mut().enumerate() {
                    let mut idx = 0usize;
                    for &a in &args {
                        idx = idx * size + members[a][p];
                    }
                    *slot = op_table[idx];
                }
                *clone.index.get(&vec).expect("clone is closed")
            })
            .collect();
        operations.push((name.to_owned(), arity, table));
    }
    let generators: Vec<usize> = (0..k)
        .map(|v| {
            let vec: Vec<usize> = clone.points.iter().map(|p| p[v]).collect();
            clone.index[&vec]
        })
        .collect();
    let free = FiniteAlgebra::new(format!("F{}({})", k, algebra.name()), m, operations)?;
    Ok((free, generators))
}

/// Minimal sequence length of the given kind, with a witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LevelOutcome {
    Level(usize),
    NoneUpToCap(usize),
}

#[derive(Debug, Clone)]
pub struct LevelReport {
    pub kind: SequenceKind,
    pub outcome: LevelOutcome,
    pub witness: Vec<TermOperation>,
    pub witness_terms: Vec<Term>,
}

#[derive(Serialize)]
struct LevelReportDoc<'a> {
    kind: &'a str,
    level: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    cap: Option<usize>,
    witness: Vec<&'a [usize]>,
    witness_terms: Vec<String>,
}

impl LevelReport {
    pub fn level(&self) -> Option<usize> {
        match self.outcome {
            LevelOutcome::Level(n) => Some(n),
            LevelOutcome::NoneUpToCap(_) => None,
        }
    }

    pub fn to_json(&self) -> String {
        let doc = LevelReportDoc {
            kind: self.kind.name(),
            level: self.level(),
            cap: match self.outcome {
                LevelOutcome::NoneUpToCap(cap) => Some(cap),
                LevelOutcome::Level(_) => None,
            },
            witness: self.witness.iter().map(|w| w.table()).collect(),
            witness_terms: self.witness_terms.iter().map(|t| t.to_string()).collect(),
        };
        let mut out = serde_json::to_string_pretty(&doc).expect("report serializes");
        out.push('\n');
        out
    }
}

// Position classes of the layered search: position 0, position 1, even
// positions ≥ 2, odd positions ≥ 3. The edge parity and the Gumm exemption
// only depend on the class.
const P0: usize = 0;
const P1: usize = 1;
const PE: usize = 2;
const PO: usize = 3;

fn next_class(pc: usize) -> usize {
    match pc {
        P0 => P1,
        P1 => PE,
        PE => PO,
        _ => PE,
    }
}

fn class_parity_even(pc: usize) -> bool {
    pc == P0 || pc == PE
}

#[derive(Clone, Copy, PartialEq)]
enum SliceShape {
    Xzz,
    Xxz,
    Xxww,
    Xyyw,
}

fn edge_shape(kind: SequenceKind, parity_even: bool) -> SliceShape {
    match kind {
        SequenceKind::Alvin | SequenceKind::Gumm => {
            if parity_even {
                SliceShape::Xzz
            } else {
                SliceShape::Xxz
            }
        }
        SequenceKind::Jonsson => {
            if parity_even {
                SliceShape::Xxz
            } else {
                SliceShape::Xzz
            }
        }
        SequenceKind::Day => {
            if parity_even {
                SliceShape::Xxww
            } else {
                SliceShape::Xyyw
            }
        }
    }
}

fn shape_positions(
    shape: SliceShape,
    size: usize,
    point_index: &HashMap<Vec<usize>, usize>,
) -> Vec<usize> {
    let mut positions = Vec::new();
    let vars = if shape == SliceShape::Xyyw { 3 } else { 2 };
    for_each_tuple(size, vars, |t| {
        let point = match shape {
            SliceShape::Xzz => vec![t[0], t[1], t[1]],
            SliceShape::Xxz => vec![t[0], t[0], t[1]],
            SliceShape::Xxww => vec![t[0], t[0], t[1], t[1]],
            SliceShape::Xyyw => vec![t[0], t[1], t[1], t[2]],
        };
        positions.push(point_index[&point]);
    });
    positions
}

/// Computes the Jónsson/alvin/Gumm/Day level of `V(A)` as a shortest
/// alternating path between the outer projections of the generated clone.
///
/// Nodes are clone members filtered by the kind's middle identity (position
/// 1 is exempt for Gumm); an edge exists between consecutive positions when
/// the slice of the position's parity agrees, which the search resolves by
/// grouping members on hashed slices. The witness is the lexicographically
/// least minimal path in clone insertion order.
pub fn level(
    algebra: &FiniteAlgebra,
    kind: SequenceKind,
    cap_n: usize,
    limits: &CloneLimits,
) -> Result<LevelReport> {
    let k = kind.arity();
    let size = algebra.size();
    let points = match kind {
        SequenceKind::Day => day_slice_points(size),
        _ => cube_points(size, k),
    };
    let full_cube = kind != SequenceKind::Day;
    let clone = generate_clone_on(algebra, k, points, full_cube, limits)?;
    if !clone.is_complete() {
        return Err(Error::PartialClone { cap: clone.cap() });
    }
    let point_index: HashMap<Vec<usize>, usize> = clone
        .points
        .iter()
        .enumerate()
        .map(|(i, p)| (p.clone(), i))
        .collect();

    // Middle identity per member: t(x,y,x) = x, or m(x,y,y,x) = x for Day.
    let mid_ok: Vec<bool> = clone
        .members
        .iter()
        .map(|member| {
            let mut ok = true;
            for_each_tuple(size, 2, |t| {
                let point = match kind {
                    SequenceKind::Day => vec![t[0], t[1], t[1], t[0]],
                    _ => vec![t[0], t[1], t[0]],
                };
                if member[point_index[&point]] != t[0] {
                    ok = false;
                }
            });
            ok
        })
        .collect();
    let admissible = |member: usize, pc: usize| -> bool {
        pc == P0 || (kind == SequenceKind::Gumm && pc == P1) || mid_ok[member]
    };

    // Group members by slice value; equal slices carry the edges.
    let mut group_of = [Vec::new(), Vec::new()];
    let mut groups = [Vec::new(), Vec::new()];
    for (parity, even) in [(0usize, true), (1usize, false)] {
        let positions = shape_positions(edge_shape(kind, even), size, &point_index);
        let mut by_slice: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut member_group = Vec::with_capacity(clone.len());
        let mut lists: Vec<Vec<usize>> = Vec::new();
        for (id, member) in clone.members.iter().enumerate() {
            let slice: Vec<usize> = positions.iter().map(|&p| member[p]).collect();
            let g = *by_slice.entry(slice).or_insert_with(|| {
                lists.push(Vec::new());
                lists.len() - 1
            });
            member_group.push(g);
            lists[g].push(id);
        }
        group_of[parity] = member_group;
        groups[parity] = lists;
    }

    let source = clone.index[&clone
        .points
        .iter()
        .map(|p| p[0])
        .collect::<Vec<usize>>()];
    let target = clone.index[&clone
        .points
        .iter()
        .map(|p| p[k - 1])
        .collect::<Vec<usize>>()];

    // Backward BFS from the target over (member, position class) states.
    let states = clone.len() * 4;
    let mut dist = vec![u32::MAX; states];
    let mut queue = std::collections::VecDeque::new();
    for pc in 0..4 {
        dist[target * 4 + pc] = 0;
        queue.push_back(target * 4 + pc);
    }
    while let Some(state) = queue.pop_front() {
        let (v, pcv) = (state / 4, state % 4);
        let d = dist[state];
        let preds: &[usize] = match pcv {
            P1 => &[P0],
            PE => &[P1, PO],
            PO => &[PE],
            _ => &[],
        };
        for &pcu in preds {
            let parity = usize::from(!class_parity_even(pcu));
            let g = group_of[parity][v];
            for &u in &groups[parity][g] {
                let s = u * 4 + pcu;
                if dist[s] == u32::MAX && admissible(u, pcu) {
                    dist[s] = d + 1;
                    queue.push_back(s);
                }
            }
        }
    }

    let n = dist[source * 4 + P0];
    if n == u32::MAX || n as usize > cap_n {
        return Ok(LevelReport {
            kind,
            outcome: LevelOutcome::NoneUpToCap(cap_n),
            witness: Vec::new(),
            witness_terms: Vec::new(),
        });
    }

    // Greedy forward walk: the least member consistent with the remaining
    // distance, which yields the lexicographically least minimal witness.
    let mut path = vec![source];
    let mut pc = P0;
    let mut cur = source;
    let mut remaining = n;
    while remaining > 0 {
        let pcn = next_class(pc);
        let parity = usize::from(!class_parity_even(pc));
        let g = group_of[parity][cur];
        let step = groups[parity][g]
            .iter()
            .copied()
            .find(|&u| admissible(u, pcn) && dist[u * 4 + pcn] == remaining - 1)
            .expect("a shortest path exists");
        path.push(step);
        cur = step;
        pc = pcn;
        remaining -= 1;
    }

    let witness_terms: Vec<Term> = path.iter().map(|&i| clone.term_of(i)).collect();
    let witness: Vec<TermOperation> = if full_cube {
        path.iter()
            .map(|&i| clone.member_operation(i))
            .collect::<Result<_>>()?
    } else {
        witness_terms
            .iter()
            .map(|t| crate::term::term_operation(algebra, t, k))
            .collect::<Result<_>>()?
    };
    Ok(LevelReport {
        kind,
        outcome: LevelOutcome::Level(n as usize),
        witness,
        witness_terms,
    })
}
