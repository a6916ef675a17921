use std::cmp::Ordering;
use std::collections::VecDeque;
use std::fmt;

use crate::algebra::{for_each_tuple, FiniteAlgebra};
use crate::budget::Budget;
use crate::error::{Error, Result};

/// An `n×n` boolean matrix stored as bitset rows. Composition,
/// closure and the law checks below all run on whole `u64` words.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryRelation {
    size: usize,
    row_words: usize,
    bits: Vec<u64>,
}

impl BinaryRelation {
    pub fn empty(size: usize) -> Self {
        let row_words = size.div_ceil(64).max(1);
        BinaryRelation {
            size,
            row_words,
            bits: vec![0; row_words * size],
        }
    }

    /// The minimal congruence Δ.
    pub fn identity(size: usize) -> Self {
        let mut rel = Self::empty(size);
        for a in 0..size {
            rel.insert(a, a);
        }
        rel
    }

    /// The full congruence ∇.
    pub fn full(size: usize) -> Self {
        let mut rel = Self::empty(size);
        for a in 0..size {
            for b in 0..size {
                rel.insert(a, b);
            }
        }
        rel
    }

    pub fn from_pairs(size: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut rel = Self::empty(size);
        for &(a, b) in pairs {
            if a >= size || b >= size {
                return Err(Error::ElementOutOfRange {
                    element: a.max(b),
                    size,
                });
            }
            rel.insert(a, b);
        }
        Ok(rel)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.bits[a * self.row_words + b / 64] >> (b % 64) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, a: usize, b: usize) {
        self.bits[a * self.row_words + b / 64] |= 1 << (b % 64);
    }

    fn row(&self, a: usize) -> &[u64] {
        &self.bits[a * self.row_words..(a + 1) * self.row_words]
    }

    /// Related pairs in row-major (lexicographic) order.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.size {
            let row = self.row(a);
            for (w, &word) in row.iter().enumerate() {
                let mut bits = word;
                while bits != 0 {
                    let b = w * 64 + bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn pair_count(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn check_size(&self, other: &Self) -> Result<()> {
        if self.size != other.size {
            Err(Error::SizeMismatch {
                left: self.size,
                right: other.size,
            })
        } else {
            Ok(())
        }
    }

    /// `(a,c)` iff there is `b` with `a R b` and `b S c`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.check_size(other)?;
        let mut out = Self::empty(self.size);
        for a in 0..self.size {
            let base = a * self.row_words;
            for w in 0..self.row_words {
                let mut word = self.bits[base + w];
                while word != 0 {
                    let b = w * 64 + word.trailing_zeros() as usize;
                    word &= word - 1;
                    let rb = b * self.row_words;
                    for t in 0..self.row_words {
                        out.bits[base + t] |= other.bits[rb + t];
                    }
                }
            }
        }
        Ok(out)
    }

    /// Pointwise intersection (juxtaposition in identity notation).
    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.check_size(other)?;
        let mut out = self.clone();
        for (w, o) in out.bits.iter_mut().zip(&other.bits) {
            *w &= o;
        }
        Ok(out)
    }

    pub fn union(&self, other: &Self) -> Result<Self> {
        self.check_size(other)?;
        let mut out = self.clone();
        for (w, o) in out.bits.iter_mut().zip(&other.bits) {
            *w |= o;
        }
        Ok(out)
    }

    pub fn subset_of(&self, other: &Self) -> Result<bool> {
        self.check_size(other)?;
        Ok(self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0))
    }

    /// Matrix transpose.
    pub fn converse(&self) -> Self {
        let mut out = Self::empty(self.size);
        for (a, b) in self.pairs() {
            out.insert(b, a);
        }
        out
    }

    /// Least transitive superset, by Warshall's algorithm on bitset rows.
    pub fn transitive_closure(&self) -> Self {
        let mut out = self.clone();
        let mut pivot = vec![0u64; out.row_words];
        for k in 0..out.size {
            pivot.copy_from_slice(out.row(k));
            for a in 0..out.size {
                if out.contains(a, k) {
                    let base = a * out.row_words;
                    for (t, &p) in pivot.iter().enumerate() {
                        out.bits[base + t] |= p;
                    }
                }
            }
        }
        out
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.size).all(|a| self.contains(a, a))
    }

    pub fn is_symmetric(&self) -> bool {
        self == &self.converse()
    }

    pub fn is_transitive(&self) -> bool {
        match self.compose(self) {
            Ok(squared) => squared.subset_of(self).unwrap(),
            Err(_) => unreachable!(),
        }
    }

    /// Canonical ordering: fewer pairs first, then lexicographic on the
    /// sorted pair list. This is the order congruence lattices are listed in.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.size, other.size);
        match self.pair_count().cmp(&other.pair_count()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        for (a, b) in self.bits.iter().zip(&other.bits) {
            let diff = a ^ b;
            if diff != 0 {
                let low = diff & diff.wrapping_neg();
                // The relation owning the earliest extra pair sorts first.
                return if a & low != 0 {
                    Ordering::Less
                } else {
                    Ordering::Greater
                };
            }
        }
        Ordering::Equal
    }
}

impl fmt::Display for BinaryRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (a, b)) in self.pairs().into_iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "({a},{b})")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for BinaryRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Alternating product `R∘S∘R∘S…` with `n` factors starting at `R`.
/// `n = 1` gives `R`, `n = 0` the minimal congruence Δ.
pub fn compose_chain(r: &BinaryRelation, s: &BinaryRelation, n: usize) -> Result<BinaryRelation> {
    if r.size() != s.size() {
        return Err(Error::SizeMismatch {
            left: r.size(),
            right: s.size(),
        });
    }
    if n == 0 {
        return Ok(BinaryRelation::identity(r.size()));
    }
    let mut out = r.clone();
    for i in 1..n {
        out = out.compose(if i % 2 == 1 { s } else { r })?;
    }
    Ok(out)
}

/// `R^m`, the m-fold alternating product of `R` with itself.
pub fn relation_power(r: &BinaryRelation, m: usize) -> BinaryRelation {
    compose_chain(r, r, m).expect("same relation")
}

/// Whether `rel` is closed under every operation of `algebra` applied
/// coordinatewise to related pairs.
pub fn is_compatible(algebra: &FiniteAlgebra, rel: &BinaryRelation) -> bool {
    let pairs = rel.pairs();
    for (op_index, (_, arity)) in algebra.signature().iter().enumerate() {
        if arity == 0 {
            let c = algebra.apply(op_index, &[]);
            if !rel.contains(c, c) {
                return false;
            }
            continue;
        }
        let mut ok = true;
        let mut lhs = vec![0usize; arity];
        let mut rhs = vec![0usize; arity];
        for_each_tuple(pairs.len(), arity, |choice| {
            if !ok {
                return;
            }
            for (i, &p) in choice.iter().enumerate() {
                lhs[i] = pairs[p].0;
                rhs[i] = pairs[p].1;
            }
            if !rel.contains(algebra.apply(op_index, &lhs), algebra.apply(op_index, &rhs)) {
                ok = false;
            }
        });
        if !ok {
            return false;
        }
    }
    true
}

/// Least superset of `rel` closed under every operation of `algebra`
/// applied coordinatewise to related pairs; plain fixpoint iteration.
pub fn compatible_closure(algebra: &FiniteAlgebra, rel: &BinaryRelation) -> Result<BinaryRelation> {
    if algebra.size() != rel.size() {
        return Err(Error::SizeMismatch {
            left: algebra.size(),
            right: rel.size(),
        });
    }
    let mut cur = rel.clone();
    loop {
        let mut changed = false;
        for (op_index, (_, arity)) in algebra.signature().iter().enumerate() {
            if arity == 0 {
                let c = algebra.apply(op_index, &[]);
                if !cur.contains(c, c) {
                    cur.insert(c, c);
                    changed = true;
                }
                continue;
            }
            let pairs = cur.pairs();
            let mut lhs = vec![0usize; arity];
            let mut rhs = vec![0usize; arity];
            for_each_tuple(pairs.len(), arity, |choice| {
                for (i, &p) in choice.iter().enumerate() {
                    lhs[i] = pairs[p].0;
                    rhs[i] = pairs[p].1;
                }
                let (a, b) = (algebra.apply(op_index, &lhs), algebra.apply(op_index, &rhs));
                if !cur.contains(a, b) {
                    cur.insert(a, b);
                    changed = true;
                }
            });
        }
        if !changed {
            return Ok(cur);
        }
    }
}

/// A reflexive, symmetric, compatible binary relation.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Tolerance {
    rel: BinaryRelation,
}

impl Tolerance {
    /// Validates the three tolerance invariants against `algebra`.
    pub fn new(algebra: &FiniteAlgebra, rel: BinaryRelation) -> Result<Self> {
        if rel.size() != algebra.size() {
            return Err(Error::SizeMismatch {
                left: algebra.size(),
                right: rel.size(),
            });
        }
        if !rel.is_reflexive() {
            return Err(Error::Precondition("tolerance must be reflexive".into()));
        }
        if !rel.is_symmetric() {
            return Err(Error::Precondition("tolerance must be symmetric".into()));
        }
        if !is_compatible(algebra, &rel) {
            return Err(Error::Precondition("tolerance must be compatible".into()));
        }
        Ok(Tolerance { rel })
    }

    pub fn relation(&self) -> &BinaryRelation {
        &self.rel
    }

    pub fn size(&self) -> usize {
        self.rel.size()
    }
}

impl fmt::Display for Tolerance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.rel, f)
    }
}

/// Least tolerance containing `pairs`: seed with Δ and the symmetrized
/// pairs, then alternate compatible closure and symmetrization to a fixpoint.
pub fn tolerance_generated(algebra: &FiniteAlgebra, pairs: &[(usize, usize)]) -> Result<Tolerance> {
    let n = algebra.size();
    let mut cur = BinaryRelation::identity(n);
    for &(a, b) in pairs {
        if a >= n || b >= n {
            return Err(Error::ElementOutOfRange {
                element: a.max(b),
                size: n,
            });
        }
        cur.insert(a, b);
        cur.insert(b, a);
    }
    loop {
        let closed = compatible_closure(algebra, &cur)?;
        let next = closed.union(&closed.converse())?;
        if next == cur {
            return Tolerance::new(algebra, next);
        }
        cur = next;
    }
}

struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (hi, lo) = if self.rank[ra] >= self.rank[rb] {
            (ra, rb)
        } else {
            (rb, ra)
        };
        self.parent[lo] = hi;
        if self.rank[hi] == self.rank[lo] {
            self.rank[hi] += 1;
        }
        true
    }
}

/// A compatible equivalence relation, canonicalized as a sorted partition.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Congruence {
    partition: Vec<Vec<usize>>,
    rel: BinaryRelation,
}

impl Congruence {
    pub fn identity(size: usize) -> Self {
        Congruence::from_class_ids(&(0..size).collect::<Vec<_>>())
    }

    pub fn full(size: usize) -> Self {
        Congruence::from_class_ids(&vec![0; size])
    }

    /// Builds a congruence from any per-element class labelling.
    pub fn from_class_ids(class: &[usize]) -> Self {
        let n = class.len();
        let mut block_of = vec![usize::MAX; n];
        let mut partition: Vec<Vec<usize>> = Vec::new();
        for (a, &marker) in class.iter().enumerate() {
            let block = block_of[marker];
            if block == usize::MAX {
                block_of[marker] = partition.len();
                partition.push(vec![a]);
            } else {
                partition[block].push(a);
            }
        }
        // Blocks come out sorted by least element because elements are
        // scanned in order.
        let mut rel = BinaryRelation::empty(n);
        for block in &partition {
            for &a in block {
                for &b in block {
                    rel.insert(a, b);
                }
            }
        }
        Congruence { partition, rel }
    }

    /// Interprets an equivalence relation as a congruence.
    pub fn from_relation(rel: &BinaryRelation) -> Result<Self> {
        if !rel.is_reflexive() || !rel.is_symmetric() || !rel.is_transitive() {
            return Err(Error::Precondition(
                "relation is not an equivalence".into(),
            ));
        }
        let n = rel.size();
        let mut class = vec![usize::MAX; n];
        for a in 0..n {
            if class[a] != usize::MAX {
                continue;
            }
            for (b, slot) in class.iter_mut().enumerate().skip(a) {
                if rel.contains(a, b) {
                    *slot = a;
                }
            }
        }
        Ok(Congruence::from_class_ids(&class))
    }

    fn from_union_find(uf: &mut UnionFind, n: usize) -> Self {
        let class: Vec<usize> = (0..n).map(|a| uf.find(a)).collect();
        Congruence::from_class_ids(&class)
    }

    pub fn size(&self) -> usize {
        self.rel.size()
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.partition
    }

    pub fn relation(&self) -> &BinaryRelation {
        &self.rel
    }

    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.rel.contains(a, b)
    }

    pub fn is_identity(&self) -> bool {
        self.partition.len() == self.size()
    }

    pub fn is_full(&self) -> bool {
        self.partition.len() == 1
    }

    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.rel.canonical_cmp(&other.rel)
    }
}

impl fmt::Display for Congruence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, block) in self.partition.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{{")?;
            for (j, e) in block.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{e}")?;
            }
            write!(f, "}}")?;
        }
        write!(f, "}}")
    }
}

/// Least congruence containing `pairs`.
///
/// Worklist closure over one-coordinate translations: whenever two classes
/// merge, the images of the merged pair under every basic operation with
/// all other arguments fixed are enqueued. Transitivity (the union-find)
/// makes single-coordinate substitution sufficient for full compatibility.
pub fn congruence_generated(
    algebra: &FiniteAlgebra,
    pairs: &[(usize, usize)],
) -> Result<Congruence> {
    let n = algebra.size();
    let mut queue: VecDeque<(usize, usize)> = VecDeque::new();
    for &(a, b) in pairs {
        if a >= n || b >= n {
            return Err(Error::ElementOutOfRange {
                element: a.max(b),
                size: n,
            });
        }
        queue.push_back((a, b));
    }
    let mut uf = UnionFind::new(n);
    let mut args = Vec::new();
    while let Some((x, y)) = queue.pop_front() {
        if !uf.union(x, y) {
            continue;
        }
        for (op_index, (_, arity)) in algebra.signature().iter().enumerate() {
            if arity == 0 {
                continue;
            }
            for pos in 0..arity {
                for_each_tuple(n, arity - 1, |rest| {
                    args.clear();
                    args.extend_from_slice(&rest[..pos]);
                    args.push(x);
                    args.extend_from_slice(&rest[pos..]);
                    let fx = algebra.apply(op_index, &args);
                    args[pos] = y;
                    let fy = algebra.apply(op_index, &args);
                    if fx != fy {
                        queue.push_back((fx, fy));
                    }
                });
            }
        }
    }
    Ok(Congruence::from_union_find(&mut uf, n))
}

/// Join `α + β`: the transitive closure of `α ∪ β` (the classical
/// characterization of the join of two congruences).
pub fn join_congruences(alpha: &Congruence, beta: &Congruence) -> Result<Congruence> {
    let union = alpha.relation().union(beta.relation())?;
    Congruence::from_relation(&union.transitive_closure())
}

/// Meet `αβ`: plain intersection.
pub fn meet_congruences(alpha: &Congruence, beta: &Congruence) -> Result<Congruence> {
    Congruence::from_relation(&alpha.relation().intersect(beta.relation())?)
}

/// All congruences of an algebra, canonically sorted, with meet and join
/// tables precomputed.
#[derive(Clone, Debug)]
pub struct CongruenceLattice {
    congruences: Vec<Congruence>,
    meet: Vec<usize>,
    join: Vec<usize>,
}

impl CongruenceLattice {
    pub fn len(&self) -> usize {
        self.congruences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.congruences.is_empty()
    }

    pub fn get(&self, index: usize) -> &Congruence {
        &self.congruences[index]
    }

    pub fn congruences(&self) -> &[Congruence] {
        &self.congruences
    }

    pub fn index_of(&self, congruence: &Congruence) -> Option<usize> {
        self.congruences
            .binary_search_by(|c| c.canonical_cmp(congruence))
            .ok()
    }

    pub fn meet_index(&self, i: usize, j: usize) -> usize {
        self.meet[i * self.len() + j]
    }

    pub fn join_index(&self, i: usize, j: usize) -> usize {
        self.join[i * self.len() + j]
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.meet_index(i, j) == i
    }

    /// First triple violating `x ≤ z ⇒ x + (y ∧ z) = (x + y) ∧ z`, if any.
    pub fn modularity_violation(&self) -> Option<(usize, usize, usize)> {
        let n = self.len();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if self.leq(x, z)
                        && self.join_index(x, self.meet_index(y, z))
                            != self.meet_index(self.join_index(x, y), z)
                    {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    /// First triple violating `x ∧ (y + z) = (x ∧ y) + (x ∧ z)`, if any.
    pub fn distributivity_violation(&self) -> Option<(usize, usize, usize)> {
        let n = self.len();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if self.meet_index(x, self.join_index(y, z))
                        != self.join_index(self.meet_index(x, y), self.meet_index(x, z))
                    {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    pub fn is_modular(&self) -> bool {
        self.modularity_violation().is_none()
    }

    pub fn is_distributive(&self) -> bool {
        self.distributivity_violation().is_none()
    }
}

/// Computes Con(A): every principal congruence, closed under join,
/// canonically sorted.
pub fn all_congruences(algebra: &FiniteAlgebra, budget: &Budget) -> Result<CongruenceLattice> {
    let n = algebra.size();
    let per_congruence = (n * n / 8 + n * 8) as u128;
    let mut list: Vec<Congruence> = vec![Congruence::identity(n)];
    let push_new = |list: &mut Vec<Congruence>, c: Congruence| -> Result<bool> {
        if list.iter().any(|known| known == &c) {
            return Ok(false);
        }
        budget.check_bytes((list.len() as u128 + 1) * per_congruence)?;
        list.push(c);
        Ok(true)
    };
    for a in 0..n {
        for b in a + 1..n {
            let cg = congruence_generated(algebra, &[(a, b)])?;
            push_new(&mut list, cg)?;
        }
    }
    let mut i = 0;
    while i < list.len() {
        for j in 0..i {
            let joined = join_congruences(&list[i], &list[j])?;
            push_new(&mut list, joined)?;
        }
        i += 1;
    }
    list.sort_by(|a, b| a.canonical_cmp(b));

    let len = list.len();
    let mut meet = vec![0usize; len * len];
    let mut join = vec![0usize; len * len];
    for i in 0..len {
        for j in 0..len {
            let m = meet_congruences(&list[i], &list[j])?;
            let jn = join_congruences(&list[i], &list[j])?;
            meet[i * len + j] = lookup(&list, &m)?;
            join[i * len + j] = lookup(&list, &jn)?;
        }
    }
    Ok(CongruenceLattice {
        congruences: list,
        meet,
        join,
    })
}

fn lookup(list: &[Congruence], c: &Congruence) -> Result<usize> {
    list.binary_search_by(|known| known.canonical_cmp(c))
        .map_err(|_| Error::ConstructionFailed("congruence lattice is not closed".into()))
}

/// Every tolerance of the algebra. Exhaustive (filter all reflexive
/// symmetric relations for compatibility) for size ≤ 5; above that, only
/// tolerances generated from seed sets of at most two pairs.
pub fn enumerate_tolerances(algebra: &FiniteAlgebra) -> Result<Vec<Tolerance>> {
    let n = algebra.size();
    let mut out: Vec<Tolerance> = Vec::new();
    if n <= 5 {
        let mut slots = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                slots.push((a, b));
            }
        }
        for mask in 0u32..1 << slots.len() {
            let mut rel = BinaryRelation::identity(n);
            for (bit, &(a, b)) in slots.iter().enumerate() {
                if mask >> bit & 1 == 1 {
                    rel.insert(a, b);
                    rel.insert(b, a);
                }
            }
            if is_compatible(algebra, &rel) {
                out.push(Tolerance { rel });
            }
        }
    } else {
        out.push(tolerance_generated(algebra, &[])?);
        let mut seeds = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                seeds.push((a, b));
            }
        }
        for i in 0..seeds.len() {
            out.push(tolerance_generated(algebra, &[seeds[i]])?);
            for j in i + 1..seeds.len() {
                out.push(tolerance_generated(algebra, &[seeds[i], seeds[j]])?);
            }
        }
        out.dedup_by(|a, b| a == b);
    }
    out.sort_by(|a, b| a.rel.canonical_cmp(&b.rel));
    out.dedup();
    Ok(out)
}

/// Every reflexive compatible relation, exhaustively for size ≤ 4.
pub fn reflexive_compatible_relations(algebra: &FiniteAlgebra) -> Result<Vec<BinaryRelation>> {
    let n = algebra.size();
    if n > 4 {
        return reflexive_compatible_from_seeds(algebra, 2);
    }
    let mut slots = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if a != b {
                slots.push((a, b));
            }
        }
    }
    let mut out = Vec::new();
    for mask in 0u32..1 << slots.len() {
        let mut rel = BinaryRelation::identity(n);
        for (bit, &(a, b)) in slots.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                rel.insert(a, b);
            }
        }
        if is_compatible(algebra, &rel) {
            out.push(rel);
        }
    }
    out.sort_by(|a, b| a.canonical_cmp(b));
    out.dedup();
    Ok(out)
}

/// Reflexive compatible relations generated from at most `max_seeds`
/// ordered pairs.
pub fn reflexive_compatible_from_seeds(
    algebra: &FiniteAlgebra,
    max_seeds: usize,
) -> Result<Vec<BinaryRelation>> {
    let n = algebra.size();
    let mut seeds = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if a != b {
                seeds.push((a, b));
            }
        }
    }
    let mut out = vec![compatible_closure(algebra, &BinaryRelation::identity(n))?];
    if max_seeds >= 1 {
        for &s in &seeds {
            let rel = BinaryRelation::from_pairs(n, &[s])?;
            out.push(compatible_closure(
                algebra,
                &rel.union(&BinaryRelation::identity(n))?,
            )?);
        }
    }
    if max_seeds >= 2 {
        for i in 0..seeds.len() {
            for j in i + 1..seeds.len() {
                let rel = BinaryRelation::from_pairs(n, &[seeds[i], seeds[j]])?;
                out.push(compatible_closure(
                    algebra,
                    &rel.union(&BinaryRelation::identity(n))?,
                )?);
            }
        }
    }
    out.sort_by(|a, b| a.canonical_cmp(b));
    out.dedup();
    Ok(out)
}
