//! Sparse integer matrices, their primal/dual graphs and path decompositions.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::ip::{IpModel, Layout};

/// Sparse integer matrix stored row-wise; only non-zero entries are kept.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    cols: usize,
    rows: Vec<Vec<(usize, i64)>>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            cols,
            rows: vec![Vec::new(); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        IntMatrix {
            cols: n,
            rows: (0..n).map(|i| vec![(i, 1)]).collect(),
        }
    }

    /// Builds from dense rows of length `cols`.
    pub fn from_dense(cols: usize, dense: &[Vec<i64>]) -> Result<Self> {
        let mut rows = Vec::with_capacity(dense.len());
        for row in dense {
            if row.len() != cols {
                return Err(Error::LengthMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            rows.push(
                row.iter()
                    .enumerate()
                    .filter(|(_, &v)| v != 0)
                    .map(|(j, &v)| (j, v))
                    .collect(),
            );
        }
        Ok(IntMatrix { cols, rows })
    }

    /// Builds from sparse rows; entries are summed per column and zeros dropped.
    pub fn from_sparse_rows(cols: usize, sparse: Vec<Vec<(usize, i64)>>) -> Result<Self> {
        let mut rows = Vec::with_capacity(sparse.len());
        for row in sparse {
            let mut acc = std::collections::BTreeMap::new();
            for (j, v) in row {
                if j >= cols {
                    return Err(Error::InvalidModel(format!("column {j} outside 0..{cols}")));
                }
                *acc.entry(j).or_insert(0i64) += v;
            }
            rows.push(acc.into_iter().filter(|&(_, v)| v != 0).collect());
        }
        Ok(IntMatrix { cols, rows })
    }

    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[(usize, i64)] {
        &self.rows[i]
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        match self.rows[i].binary_search_by_key(&j, |&(c, _)| c) {
            Ok(pos) => self.rows[i][pos].1,
            Err(_) => 0,
        }
    }

    pub fn set(&mut self, i: usize, j: usize, value: i64) {
        assert!(j < self.cols, "column {j} out of range");
        let row = &mut self.rows[i];
        match row.binary_search_by_key(&j, |&(c, _)| c) {
            Ok(pos) if value == 0 => {
                row.remove(pos);
            }
            Ok(pos) => row[pos].1 = value,
            Err(_) if value == 0 => {}
            Err(pos) => row.insert(pos, (j, value)),
        }
    }

    pub fn dense_row(&self, i: usize) -> Vec<i64> {
        let mut out = vec![0; self.cols];
        for &(j, v) in &self.rows[i] {
            out[j] = v;
        }
        out
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        (0..self.rows()).map(|i| self.dense_row(i)).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut rows = vec![Vec::new(); self.cols];
        for (i, row) in self.rows.iter().enumerate() {
            for &(j, v) in row {
                rows[j].push((i, v));
            }
        }
        IntMatrix {
            cols: self.rows.len(),
            rows,
        }
    }

    pub fn mul_vec(&self, x: &[i64]) -> Vec<i64> {
        assert_eq!(x.len(), self.cols, "vector length must match column count");
        self.rows
            .iter()
            .map(|row| row.iter().map(|&(j, v)| v * x[j]).sum())
            .collect()
    }

    /// Product `self * other`.
    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows() {
            return Err(Error::LengthMismatch {
                expected: self.cols,
                found: other.rows(),
            });
        }
        let dense: Vec<Vec<i64>> = self
            .rows
            .iter()
            .map(|row| {
                let mut out = vec![0i64; other.cols];
                for &(k, a) in row {
                    for &(j, b) in other.row(k) {
                        out[j] += a * b;
                    }
                }
                out
            })
            .collect();
        IntMatrix::from_dense(other.cols, &dense)
    }

    /// Vertical concatenation.
    pub fn stack(top: &IntMatrix, bottom: &IntMatrix) -> Result<IntMatrix> {
        if top.cols != bottom.cols {
            return Err(Error::LengthMismatch {
                expected: top.cols,
                found: bottom.cols,
            });
        }
        let mut rows = top.rows.clone();
        rows.extend(bottom.rows.iter().cloned());
        Ok(IntMatrix {
            cols: top.cols,
            rows,
        })
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<i64>]) -> Result<IntMatrix> {
        let mut dense = vec![vec![0; columns.len()]; rows];
        for (j, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::LengthMismatch {
                    expected: rows,
                    found: col.len(),
                });
            }
            for (i, &v) in col.iter().enumerate() {
                dense[i][j] = v;
            }
        }
        IntMatrix::from_dense(columns.len(), &dense)
    }

    pub fn max_abs(&self) -> i64 {
        self.rows
            .iter()
            .flatten()
            .map(|&(_, v)| v.abs())
            .max()
            .unwrap_or(0)
    }

    pub fn nonzeros(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows() {
            let row: Vec<String> = self.dense_row(i).iter().map(i64::to_string).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// Graph on the columns; two columns are adjacent iff some row is non-zero in both.
pub fn primal_graph(a: &IntMatrix) -> Graph {
    let mut edges = BTreeSet::new();
    for row in &a.rows {
        for (p, &(u, _)) in row.iter().enumerate() {
            for &(v, _) in &row[p + 1..] {
                edges.insert((u, v));
            }
        }
    }
    Graph::new(a.cols(), edges).expect("rows have distinct sorted columns")
}

/// Graph on the rows; the primal graph of the transpose.
pub fn dual_graph(a: &IntMatrix) -> Graph {
    primal_graph(&a.transpose())
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PathDecomposition {
    pub bags: Vec<BTreeSet<usize>>,
}

impl PathDecomposition {
    /// Largest bag size minus one (zero when there are no bags).
    pub fn width(&self) -> usize {
        self.bags
            .iter()
            .map(BTreeSet::len)
            .max()
            .unwrap_or(1)
            .saturating_sub(1)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DecompositionCheck {
    pub valid: bool,
    pub width: usize,
}

/// Checks vertex coverage, edge coverage and contiguity of every vertex's
/// occurrences.
pub fn verify_decomposition(g: &Graph, d: &PathDecomposition) -> DecompositionCheck {
    let width = d.width();
    let mut first = vec![usize::MAX; g.n()];
    let mut last = vec![0usize; g.n()];
    let mut count = vec![0usize; g.n()];
    for (b, bag) in d.bags.iter().enumerate() {
        for &v in bag {
            if v >= g.n() {
                return DecompositionCheck {
                    valid: false,
                    width,
                };
            }
            first[v] = first[v].min(b);
            last[v] = b;
            count[v] += 1;
        }
    }
    let covered = count.iter().all(|&c| c > 0);
    let contiguous = (0..g.n()).all(|v| count[v] == 0 || last[v] - first[v] + 1 == count[v]);
    let edges = g.edges().all(|(u, v)| {
        d.bags
            .iter()
            .any(|bag| bag.contains(&u) && bag.contains(&v))
    });
    DecompositionCheck {
        valid: covered && contiguous && edges,
        width,
    }
}

/// Splits a stacked model's matrix into its `F` and `L` blocks.
pub fn stacked_blocks(model: &IpModel) -> Result<(IntMatrix, IntMatrix)> {
    let Some(Layout::Stacked { f_rows, l_rows }) = model.layout() else {
        return Err(Error::InvalidModel(
            "model lacks the stacked F/L block annotation".into(),
        ));
    };
    let a = model.constraint_matrix()?;
    if a.rows() != f_rows + l_rows {
        return Err(Error::InvalidModel(format!(
            "{} rows, annotation says {}",
            a.rows(),
            f_rows + l_rows
        )));
    }
    let f = IntMatrix {
        cols: a.cols,
        rows: a.rows[..*f_rows].to_vec(),
    };
    let l = IntMatrix {
        cols: a.cols,
        rows: a.rows[*f_rows..].to_vec(),
    };
    Ok((f, l))
}

/// Path decomposition of the dual graph of a stacked `(F; L)` model: every
/// bag holds all rows of `F` plus two consecutive rows of `L`.
pub fn type_path_decomposition(model: &IpModel) -> Result<PathDecomposition> {
    let (f_rows, l_rows) = match model.layout() {
        Some(Layout::Stacked { f_rows, l_rows }) => (*f_rows, *l_rows),
        _ => {
            return Err(Error::InvalidModel(
                "model lacks the stacked F/L block annotation".into(),
            ))
        }
    };
    let f: BTreeSet<usize> = (0..f_rows).collect();
    let bags = if l_rows <= 1 {
        let mut bag = f;
        bag.extend(f_rows..f_rows + l_rows);
        vec![bag]
    } else {
        (0..l_rows - 1)
            .map(|i| {
                let mut bag = f.clone();
                bag.insert(f_rows + i);
                bag.insert(f_rows + i + 1);
                bag
            })
            .collect()
    };
    Ok(PathDecomposition { bags })
}
