use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use thiserror::Error;

/// Tables up to this order are checked for associativity exhaustively.
pub const EXHAUSTIVE_ASSOC_LIMIT: usize = 64;
/// Triples sampled for associativity above the exhaustive limit.
pub const SAMPLED_ASSOC_TRIPLES: usize = 10_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TableError {
    #[error("table is empty")]
    Empty,
    #[error("{names} element names but {rows} table rows")]
    NameCount { names: usize, rows: usize },
    #[error("row {row} has {len} entries, expected {expected}")]
    RowLength { row: usize, len: usize, expected: usize },
    #[error("entry ({row}, {col}) = {value} is not an element index")]
    NotClosed { row: usize, col: usize, value: usize },
    #[error("element 0 is not an identity (fails at element {0})")]
    Identity(usize),
    #[error("element {0} has no two-sided inverse")]
    NoInverse(usize),
    #[error("not associative: ({0} {1}) {2} != {0} ({1} {2})")]
    NotAssociative(usize, usize, usize),
}

/// A finite group given by its multiplication table; element 0 is the
/// identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroupTable {
    elements: Vec<String>,
    mul: Vec<Vec<usize>>,
    inv: Vec<usize>,
}

impl FiniteGroupTable {
    pub fn new(elements: Vec<String>, mul: Vec<Vec<usize>>) -> Result<Self, TableError> {
        let n = mul.len();
        if n == 0 {
            return Err(TableError::Empty);
        }
        if elements.len() != n {
            return Err(TableError::NameCount { names: elements.len(), rows: n });
        }
        for (row, r) in mul.iter().enumerate() {
            if r.len() != n {
                return Err(TableError::RowLength { row, len: r.len(), expected: n });
            }
            if let Some((col, &value)) = r.iter().enumerate().find(|(_, &x)| x >= n) {
                return Err(TableError::NotClosed { row, col, value });
            }
        }
        if let Some(i) = (0..n).find(|&i| mul[0][i] != i || mul[i][0] != i) {
            return Err(TableError::Identity(i));
        }
        let inv = (0..n)
            .map(|i| (0..n).find(|&j| mul[i][j] == 0 && mul[j][i] == 0).ok_or(TableError::NoInverse(i)))
            .collect::<Result<Vec<_>, _>>()?;
        let assoc = |a: usize, b: usize, c: usize| mul[mul[a][b]][c] == mul[a][mul[b][c]];
        if n <= EXHAUSTIVE_ASSOC_LIMIT {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if !assoc(a, b, c) {
                            return Err(TableError::NotAssociative(a, b, c));
                        }
                    }
                }
            }
        } else {
            let mut rng = StdRng::seed_from_u64(0x5eed_7ab1e);
            for _ in 0..SAMPLED_ASSOC_TRIPLES {
                let (a, b, c) = (rng.random_range(0..n), rng.random_range(0..n), rng.random_range(0..n));
                if !assoc(a, b, c) {
                    return Err(TableError::NotAssociative(a, b, c));
                }
            }
        }
        Ok(FiniteGroupTable { elements, mul, inv })
    }

    /// `Z_n` with elements `0..n` under addition.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        let elements = (0..n).map(|i| i.to_string()).collect();
        let mul = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        FiniteGroupTable::new(elements, mul).expect("cyclic table")
    }

    /// Dihedral group of order `2n`: element `k` is `r^k`, element `n + k`
    /// is `s r^k`.
    pub fn dihedral(n: usize) -> Self {
        assert!(n >= 1);
        let decode = |x: usize| (x / n, x % n);
        let encode = |f: usize, k: usize| f * n + k % n;
        let mut mul = vec![vec![0; 2 * n]; 2 * n];
        for (x, row) in mul.iter_mut().enumerate() {
            for (y, cell) in row.iter_mut().enumerate() {
                let ((f1, k1), (f2, k2)) = (decode(x), decode(y));
                // s^f1 r^k1 s^f2 r^k2 = s^(f1+f2) r^(±k1 + k2)
                let k = if f2 == 0 { k1 + k2 } else { n - k1 % n + k2 };
                *cell = encode((f1 + f2) % 2, k);
            }
        }
        let elements = (0..2 * n)
            .map(|x| {
                let (f, k) = decode(x);
                if f == 0 {
                    format!("r{k}")
                } else {
                    format!("sr{k}")
                }
            })
            .collect();
        FiniteGroupTable::new(elements, mul).expect("dihedral table")
    }

    pub fn order(&self) -> usize {
        self.mul.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.mul
    }
}
