use std::fmt;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::algebra::{pack_tuple, unpack_tuple, FiniteAlgebra};
use crate::error::{Error, Result};

/// Syntax tree of a term: a variable or an operation applied to subterms.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum TermNode {
    Var(usize),
    App { symbol: String, args: Vec<TermNode> },
}

impl TermNode {
    pub fn var(index: usize) -> Self {
        TermNode::Var(index)
    }

    pub fn app(symbol: impl Into<String>, args: Vec<TermNode>) -> Self {
        TermNode::App {
            symbol: symbol.into(),
            args,
        }
    }

    fn max_var(&self) -> Option<usize> {
        match self {
            TermNode::Var(i) => Some(*i),
            TermNode::App { args, .. } => args.iter().filter_map(|t| t.max_var()).max(),
        }
    }

    fn substitute(&self, replacements: &[TermNode]) -> TermNode {
        match self {
            TermNode::Var(i) => replacements[*i].clone(),
            TermNode::App { symbol, args } => TermNode::App {
                symbol: symbol.clone(),
                args: args.iter().map(|t| t.substitute(replacements)).collect(),
            },
        }
    }
}

/// A term with a declared arity. The declared arity may exceed the variables
/// actually used, so projections with fictitious variables are first-class.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Term {
    arity: usize,
    root: TermNode,
}

impl Term {
    pub fn new(arity: usize, root: TermNode) -> Result<Self> {
        if let Some(max) = root.max_var() {
            if max >= arity {
                return Err(Error::ArityMismatch {
                    expected: arity,
                    got: max + 1,
                });
            }
        }
        Ok(Term { arity, root })
    }

    /// The `index`-th projection of the given arity.
    pub fn projection(index: usize, arity: usize) -> Self {
        assert!(index < arity, "projection index out of range");
        Term {
            arity,
            root: TermNode::Var(index),
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn root(&self) -> &TermNode {
        &self.root
    }

    /// Substitutes `args[i]` for `Var(i)`; the result is declared with the
    /// given arity.
    pub fn substitute(&self, args: &[Term], arity: usize) -> Result<Term> {
        if args.len() < self.arity {
            return Err(Error::AssignmentTooShort {
                needed: self.arity,
                got: args.len(),
            });
        }
        let nodes: Vec<TermNode> = args.iter().map(|t| t.root.clone()).collect();
        Term::new(arity, self.root.substitute(&nodes))
    }
}

fn fmt_var(f: &mut fmt::Formatter<'_>, index: usize) -> fmt::Result {
    match index {
        0 => write!(f, "x"),
        1 => write!(f, "y"),
        2 => write!(f, "z"),
        3 => write!(f, "w"),
        i => write!(f, "v{i}"),
    }
}

fn fmt_node(f: &mut fmt::Formatter<'_>, node: &TermNode) -> fmt::Result {
    match node {
        TermNode::Var(i) => fmt_var(f, *i),
        TermNode::App { symbol, args } if args.is_empty() => write!(f, "{symbol}"),
        TermNode::App { symbol, args } => {
            write!(f, "{symbol}(")?;
            for (i, arg) in args.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                fmt_node(f, arg)?;
            }
            write!(f, ")")
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_node(f, &self.root)
    }
}

/// The table of a term-induced function `A^k → A`, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TermOperation {
    size: usize,
    arity: usize,
    table: Vec<usize>,
}

impl TermOperation {
    pub fn new(size: usize, arity: usize, table: Vec<usize>) -> Result<Self> {
        let expected = size.checked_pow(arity as u32).unwrap_or(usize::MAX);
        if table.len() != expected {
            return Err(Error::TableLength {
                symbol: "<term operation>".into(),
                expected,
                got: table.len(),
            });
        }
        if let Some(index) = table.iter().position(|&v| v >= size) {
            return Err(Error::EntryOutOfRange {
                symbol: "<term operation>".into(),
                index,
                value: table[index],
                size,
            });
        }
        Ok(TermOperation { size, arity, table })
    }

    pub fn projection(size: usize, arity: usize, index: usize) -> Self {
        assert!(index < arity);
        let len = size.pow(arity as u32);
        let mut table = vec![0usize; len];
        let mut tuple = vec![0usize; arity];
        for (i, slot) in table.iter_mut().enumerate() {
            unpack_tuple(size, arity, i, &mut tuple);
            *slot = tuple[index];
        }
        TermOperation { size, arity, table }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn eval(&self, args: &[usize]) -> usize {
        debug_assert_eq!(args.len(), self.arity);
        self.table[pack_tuple(self.size, args)]
    }

    pub fn is_projection(&self, index: usize) -> bool {
        let mut tuple = vec![0usize; self.arity];
        self.table.iter().enumerate().all(|(i, &v)| {
            unpack_tuple(self.size, self.arity, i, &mut tuple);
            v == tuple[index]
        })
    }
}

impl Serialize for TermOperation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.table.len()))?;
        for v in &self.table {
            seq.serialize_element(v)?;
        }
        seq.end()
    }
}

/// Recursive evaluation of `t` at `assignment`; `Var(i)` reads
/// `assignment[i]`, an application looks up the evaluated arguments.
pub fn evaluate_term(algebra: &FiniteAlgebra, term: &Term, assignment: &[usize]) -> Result<usize> {
    if assignment.len() < term.arity() {
        return Err(Error::AssignmentTooShort {
            needed: term.arity(),
            got: assignment.len(),
        });
    }
    for &a in assignment {
        if a >= algebra.size() {
            return Err(Error::ElementOutOfRange {
                element: a,
                size: algebra.size(),
            });
        }
    }
    eval_node(algebra, term.root(), assignment)
}

fn eval_node(algebra: &FiniteAlgebra, node: &TermNode, assignment: &[usize]) -> Result<usize> {
    match node {
        TermNode::Var(i) => Ok(assignment[*i]),
        TermNode::App { symbol, args } => {
            let op_index = algebra
                .signature()
                .index_of(symbol)
                .ok_or_else(|| Error::UnknownSymbol(symbol.clone()))?;
            let (_, arity) = algebra.signature().symbol(op_index);
            if args.len() != arity {
                return Err(Error::ArityMismatch {
                    expected: arity,
                    got: args.len(),
                });
            }
            let mut values = Vec::with_capacity(args.len());
            for arg in args {
                values.push(eval_node(algebra, arg, assignment)?);
            }
            Ok(algebra.apply(op_index, &values))
        }
    }
}

/// Tabulates `t` as a `k`-ary operation on `algebra`.
pub fn term_operation(algebra: &FiniteAlgebra, term: &Term, k: usize) -> Result<TermOperation> {
    if term.arity() > k {
        return Err(Error::ArityMismatch {
            expected: k,
            got: term.arity(),
        });
    }
    let n = algebra.size();
    let len = n.pow(k as u32);
    let mut table = Vec::with_capacity(len);
    let mut tuple = vec![0usize; k];
    for idx in 0..len {
        unpack_tuple(n, k, idx, &mut tuple);
        table.push(evaluate_term(algebra, term, &tuple)?);
    }
    TermOperation::new(n, k, table)
}
