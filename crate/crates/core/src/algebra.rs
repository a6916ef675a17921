use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::error::{Error, Result};

/// Ordered list of operation symbols with their arities. The order is fixed
/// at construction and drives every deterministic enumeration downstream.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Signature {
    symbols: Vec<(String, usize)>,
}

impl Signature {
    pub fn new(symbols: Vec<(String, usize)>) -> Result<Self> {
        for (i, (name, _)) in symbols.iter().enumerate() {
            if symbols[..i].iter().any(|(other, _)| other == name) {
                return Err(Error::DuplicateSymbol(name.clone()));
            }
        }
        Ok(Signature { symbols })
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbol(&self, index: usize) -> (&str, usize) {
        let (name, arity) = &self.symbols[index];
        (name, *arity)
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.symbols.iter().position(|(n, _)| n == name)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, usize)> {
        self.symbols.iter().map(|(n, a)| (n.as_str(), *a))
    }
}

/// A finite algebra: universe `{0, …, size-1}` and one flat operation table
/// per symbol, in row-major order (`index(ā) = Σ a_i · n^(k-1-i)`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteAlgebra {
    name: String,
    size: usize,
    signature: Signature,
    tables: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct AlgebraDoc {
    name: String,
    size: usize,
    operations: Vec<OperationDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    generators: Option<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct OperationDoc {
    name: String,
    arity: usize,
    table: Vec<usize>,
}

impl FiniteAlgebra {
    pub fn new(
        name: impl Into<String>,
        size: usize,
        operations: Vec<(String, usize, Vec<usize>)>,
    ) -> Result<Self> {
        if size == 0 {
            return Err(Error::EmptyUniverse);
        }
        let signature = Signature::new(
            operations
                .iter()
                .map(|(n, a, _)| (n.clone(), *a))
                .collect(),
        )?;
        let mut tables = Vec::with_capacity(operations.len());
        for (symbol, arity, table) in operations {
            let expected = size
                .checked_pow(arity as u32)
                .ok_or(Error::TableLength {
                    symbol: symbol.clone(),
                    expected: usize::MAX,
                    got: table.len(),
                })?;
            if table.len() != expected {
                return Err(Error::TableLength {
                    symbol,
                    expected,
                    got: table.len(),
                });
            }
            if let Some(index) = table.iter().position(|&v| v >= size) {
                return Err(Error::EntryOutOfRange {
                    symbol,
                    index,
                    value: table[index],
                    size,
                });
            }
            tables.push(table);
        }
        Ok(FiniteAlgebra {
            name: name.into(),
            size,
            signature,
            tables,
        })
    }

    /// Parses and validates the JSON algebra format
    /// `{"name", "size", "operations": [{"name", "arity", "table"}]}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: AlgebraDoc = serde_json::from_str(text)?;
        FiniteAlgebra::new(
            doc.name,
            doc.size,
            doc.operations
                .into_iter()
                .map(|op| (op.name, op.arity, op.table))
                .collect(),
        )
    }

    pub fn to_json(&self) -> String {
        self.to_json_with_generators(None)
    }

    pub fn to_json_with_generators(&self, generators: Option<Vec<usize>>) -> String {
        let doc = AlgebraDoc {
            name: self.name.clone(),
            size: self.size,
            operations: self
                .signature
                .iter()
                .zip(&self.tables)
                .map(|((name, arity), table)| OperationDoc {
                    name: name.to_owned(),
                    arity,
                    table: table.clone(),
                })
                .collect(),
            generators,
        };
        let mut out = serde_json::to_string_pretty(&doc).expect("algebra serializes");
        out.push('\n');
        out
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn table(&self, op_index: usize) -> &[usize] {
        &self.tables[op_index]
    }

    /// Applies the `op_index`-th basic operation to `args`.
    pub fn apply(&self, op_index: usize, args: &[usize]) -> usize {
        self.tables[op_index][pack_tuple(self.size, args)]
    }

    /// Direct power `A^m`: universe of row-major encoded m-tuples, operations
    /// acting coordinatewise.
    pub fn direct_power(&self, m: u32, budget: &Budget) -> Result<FiniteAlgebra> {
        let power_size = budget.checked_table_len(self.size, m, 8)?;
        let mut operations = Vec::with_capacity(self.signature.len());
        for (op_index, (name, arity)) in self.signature.iter().enumerate() {
            let len = budget.checked_table_len(power_size, arity as u32, 8)?;
            let mut table = vec![0usize; len];
            let mut args = vec![0usize; arity];
            let mut coords = vec![0usize; arity];
            for (idx, slot) in table.iter_mut().enumerate() {
                unpack_tuple(power_size, arity, idx, &mut args);
                let mut value = 0usize;
                for coord in 0..m as usize {
                    for (j, &a) in args.iter().enumerate() {
                        coords[j] = tuple_coord(self.size, m as usize, a, coord);
                    }
                    value = value * self.size + self.apply(op_index, &coords);
                }
                *slot = value;
            }
            operations.push((name.to_owned(), arity, table));
        }
        FiniteAlgebra::new(format!("{}^{}", self.name, m), power_size, operations)
    }
}

/// Parses and validates a serialized algebra.
pub fn load_algebra(text: &str) -> Result<FiniteAlgebra> {
    FiniteAlgebra::from_json(text)
}

/// Row-major tuple index: `Σ a_i · n^(k-1-i)`.
pub fn pack_tuple(size: usize, tuple: &[usize]) -> usize {
    let mut idx = 0;
    for &a in tuple {
        debug_assert!(a < size);
        idx = idx * size + a;
    }
    idx
}

/// Inverse of [`pack_tuple`]; writes the `k` coordinates of `index` into `out`.
pub fn unpack_tuple(size: usize, k: usize, index: usize, out: &mut [usize]) {
    let mut rest = index;
    for i in (0..k).rev() {
        out[i] = rest % size;
        rest /= size;
    }
    debug_assert_eq!(rest, 0);
}

fn tuple_coord(size: usize, m: usize, packed: usize, coord: usize) -> usize {
    let shift = m - 1 - coord;
    (packed / size.pow(shift as u32)) % size
}

/// Calls `f` on every `k`-tuple over `{0, …, size-1}` in row-major order.
pub(crate) fn for_each_tuple(size: usize, k: usize, mut f: impl FnMut(&[usize])) {
    let mut tuple = vec![0usize; k];
    loop {
        f(&tuple);
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            tuple[i] += 1;
            if tuple[i] < size {
                break;
            }
            tuple[i] = 0;
        }
    }
}
