use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;

use crate::error::{Error, Result};

use super::{smith_normal_form, IntMatrix};
use crate::Integer;

/// Column-sparse integer matrix with small entries, as produced by cellular
/// boundary maps. Each column is sorted by row and has no zero entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseIntMatrix {
    rows: usize,
    columns: Vec<Vec<(usize, i64)>>,
}

impl SparseIntMatrix {
    pub fn new(rows: usize, mut columns: Vec<Vec<(usize, i64)>>) -> Result<Self> {
        for col in &mut columns {
            col.sort_unstable();
            let mut merged: Vec<(usize, i64)> = Vec::with_capacity(col.len());
            for &(i, x) in col.iter() {
                if i >= rows {
                    return Err(Error::ShapeError(format!("row index {i} out of range {rows}")));
                }
                match merged.last_mut() {
                    Some((j, y)) if *j == i => *y += x,
                    _ => merged.push((i, x)),
                }
            }
            merged.retain(|&(_, x)| x != 0);
            *col = merged;
        }
        Ok(SparseIntMatrix { rows, columns })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseIntMatrix { rows, columns: vec![Vec::new(); cols] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, j: usize) -> &[(usize, i64)] {
        &self.columns[j]
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    pub fn to_dense(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.rows, self.cols());
        for (j, col) in self.columns.iter().enumerate() {
            for &(i, x) in col {
                m[(i, j)] = Integer::from(x);
            }
        }
        m
    }

    pub fn from_dense(m: &IntMatrix<i64>) -> Self {
        let columns = (0..m.cols()).map(|j| (0..m.rows()).filter(|&i| m[(i, j)] != 0).map(|i| (i, m[(i, j)])).collect()).collect();
        SparseIntMatrix { rows: m.rows(), columns }
    }

    /// `self · other`.
    pub fn mul(&self, other: &SparseIntMatrix) -> Result<SparseIntMatrix> {
        if self.cols() != other.rows {
            return Err(Error::ShapeError(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows,
                self.cols(),
                other.rows,
                other.cols()
            )));
        }
        let columns = other
            .columns
            .iter()
            .map(|col| {
                let mut acc: HashMap<usize, i64> = HashMap::new();
                for &(k, y) in col {
                    for &(i, x) in &self.columns[k] {
                        *acc.entry(i).or_default() += x * y;
                    }
                }
                acc.into_iter().collect()
            })
            .collect();
        SparseIntMatrix::new(self.rows, columns)
    }

    /// Permutes rows and columns: entry `(i, j)` moves to `(row_perm[i], col_perm[j])`.
    pub fn permuted(&self, row_perm: &[usize], col_perm: &[usize]) -> SparseIntMatrix {
        let mut columns = vec![Vec::new(); self.cols()];
        for (j, col) in self.columns.iter().enumerate() {
            columns[col_perm[j]] = col.iter().map(|&(i, x)| (row_perm[i], x)).collect();
        }
        SparseIntMatrix::new(self.rows, columns).expect("permutation keeps indices in range")
    }

    /// Invariant factors (nonzero diagonal of the Smith form). Unit pivots are
    /// eliminated sparsely first; the remainder goes through dense SNF.
    pub fn invariant_factors(&self) -> Vec<Integer> {
        match self.eliminate_units() {
            Some((units, rest)) => {
                let mut out = vec![Integer::from(1); units];
                out.extend(smith_normal_form(&rest).invariant_factors());
                out
            }
            None => smith_normal_form(&self.to_dense()).invariant_factors(),
        }
    }

    /// Eliminates ±1 pivots by integer row and column operations. Returns the
    /// number of pivots and the dense remainder, or `None` on overflow.
    fn eliminate_units(&self) -> Option<(usize, IntMatrix)> {
        let mut cols: Vec<HashMap<usize, i128>> =
            self.columns.iter().map(|c| c.iter().map(|&(i, x)| (i, i128::from(x))).collect()).collect();
        let mut row_cols: Vec<HashSet<usize>> = vec![HashSet::new(); self.rows];
        for (j, c) in cols.iter().enumerate() {
            for &i in c.keys() {
                row_cols[i].insert(j);
            }
        }
        let mut alive_col = vec![true; cols.len()];
        let mut alive_row = vec![true; self.rows];
        let mut units = 0;
        let mut progress = true;
        while progress {
            progress = false;
            for j in 0..cols.len() {
                if !alive_col[j] {
                    continue;
                }
                let pivot_row = cols[j]
                    .iter()
                    .filter(|(_, x)| x.abs() == 1)
                    .map(|(&i, _)| i)
                    .min_by_key(|&i| (row_cols[i].len(), i));
                let Some(pi) = pivot_row else { continue };
                let pv = cols[j][&pi];
                let pivot_col = cols[j].clone();
                let mut others: Vec<usize> = row_cols[pi].iter().copied().filter(|&c| c != j).collect();
                others.sort_unstable();
                for c in others {
                    let q = cols[c][&pi] * pv;
                    for (&i, &x) in &pivot_col {
                        let entry = cols[c].entry(i).or_insert(0);
                        *entry = entry.checked_sub(q.checked_mul(x)?)?;
                        if *entry == 0 {
                            cols[c].remove(&i);
                            row_cols[i].remove(&c);
                        } else {
                            row_cols[i].insert(c);
                        }
                    }
                }
                for &i in pivot_col.keys() {
                    row_cols[i].remove(&j);
                }
                cols[j].clear();
                alive_col[j] = false;
                alive_row[pi] = false;
                units += 1;
                progress = true;
            }
        }
        let live_rows: Vec<usize> = (0..self.rows).filter(|&i| alive_row[i] && !row_cols[i].is_empty()).collect();
        let live_cols: Vec<usize> = (0..cols.len()).filter(|&j| alive_col[j] && !cols[j].is_empty()).collect();
        let row_pos: HashMap<usize, usize> = live_rows.iter().enumerate().map(|(a, &i)| (i, a)).collect();
        let mut rest = IntMatrix::zeros(live_rows.len(), live_cols.len());
        for (b, &j) in live_cols.iter().enumerate() {
            for (&i, &x) in &cols[j] {
                rest[(row_pos[&i], b)] = BigInt::from(x);
            }
        }
        Some((units, rest))
    }

    /// Rank over the field with `p` elements.
    pub fn rank_mod_p(&self, p: u64) -> usize {
        let p128 = u128::from(p);
        let reduce = |x: i64| -> u64 { (i128::from(x)).rem_euclid(p as i128) as u64 };
        let mut pivots: HashMap<usize, Vec<(usize, u64)>> = HashMap::new();
        let mut rank = 0;
        for col in &self.columns {
            let mut v: std::collections::BTreeMap<usize, u64> =
                col.iter().map(|&(i, x)| (i, reduce(x))).filter(|&(_, x)| x != 0).collect();
            // reduce by existing pivots, highest row first
            while let Some((&lead, &val)) = v.iter().next_back() {
                let Some(pcol) = pivots.get(&lead) else { break };
                for &(i, x) in pcol {
                    let e = v.entry(i).or_insert(0);
                    let sub = (u128::from(val) * u128::from(x)) % p128;
                    *e = ((u128::from(*e) + p128 - sub) % p128) as u64;
                    if *e == 0 {
                        v.remove(&i);
                    }
                }
            }
            if let Some((&lead, &val)) = v.iter().next_back() {
                let inv = mod_inverse(val, p);
                let normalized = v.iter().map(|(&i, &x)| (i, ((u128::from(x) * u128::from(inv)) % p128) as u64)).collect();
                pivots.insert(lead, normalized);
                rank += 1;
            }
        }
        rank
    }
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (p as i128, a as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    t.rem_euclid(p as i128) as u64
}
