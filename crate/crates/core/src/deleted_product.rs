//! The simplicial r-fold deleted product: ordered r-tuples of pairwise
//! disjoint simplices, with Koszul-signed boundary matrices and the free
//! action of the symmetric group permuting factors.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::complex::{are_disjoint, full_simplex, Complex, Simplex};
use crate::error::{Error, Result};
use crate::homology::SparseIntMatrix;
use crate::sym_group::Permutation;

pub const DEFAULT_CELL_CAP: u64 = 5_000_000;

pub(crate) type CellKey = SmallVec<[u64; 4]>;

fn parity(n: usize) -> i8 {
    if n % 2 == 0 {
        1
    } else {
        -1
    }
}

fn key_dim(key: &[u64]) -> usize {
    key.iter().map(|m| m.count_ones() as usize - 1).sum()
}

/// An ordered tuple of pairwise disjoint non-empty simplices.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<Simplex>", into = "Vec<Simplex>")]
pub struct ProductCell {
    factors: Vec<Simplex>,
}

impl ProductCell {
    pub fn new(factors: Vec<Simplex>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidArgument("a product cell needs at least one factor".into()));
        }
        for (i, a) in factors.iter().enumerate() {
            for b in &factors[i + 1..] {
                if !are_disjoint(a, b) {
                    return Err(Error::InvalidArgument(format!("factors {a} and {b} share a vertex")));
                }
            }
        }
        Ok(ProductCell { factors })
    }

    pub fn from_vertex_lists(lists: &[&[usize]]) -> Result<Self> {
        let factors = lists.iter().map(|l| Simplex::new(l.to_vec())).collect::<Result<Vec<_>>>()?;
        Self::new(factors)
    }

    pub fn factors(&self) -> &[Simplex] {
        &self.factors
    }

    pub fn r(&self) -> usize {
        self.factors.len()
    }

    pub fn dim(&self) -> usize {
        self.factors.iter().map(Simplex::dim).sum()
    }

    pub(crate) fn key(&self) -> Option<CellKey> {
        if self.factors.iter().any(|s| s.vertices().iter().any(|&v| v >= 64)) {
            return None;
        }
        Some(self.factors.iter().map(Simplex::mask).collect())
    }

    pub(crate) fn from_key(key: &[u64]) -> Self {
        ProductCell { factors: key.iter().map(|&m| Simplex::from_mask(m)).collect() }
    }

    /// `ω·(σ_1,…,σ_r) = (σ_{ω⁻¹(1)},…,σ_{ω⁻¹(r)})` and its Koszul sign.
    pub fn act(&self, omega: &Permutation) -> Result<(ProductCell, i8)> {
        check_degree(omega, self.r())?;
        let dims: Vec<usize> = self.factors.iter().map(Simplex::dim).collect();
        let mut factors = self.factors.clone();
        for (a, s) in self.factors.iter().enumerate() {
            factors[omega.apply(a)] = s.clone();
        }
        Ok((ProductCell { factors }, koszul_sign(&dims, omega)))
    }
}

impl TryFrom<Vec<Simplex>> for ProductCell {
    type Error = Error;
    fn try_from(v: Vec<Simplex>) -> Result<Self> {
        ProductCell::new(v)
    }
}

impl From<ProductCell> for Vec<Simplex> {
    fn from(c: ProductCell) -> Vec<Simplex> {
        c.factors
    }
}

impl fmt::Display for ProductCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, s) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for ProductCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn check_degree(omega: &Permutation, r: usize) -> Result<()> {
    if omega.degree() != r {
        return Err(Error::InvalidArgument(format!("permutation of degree {} acting on {r}-tuples", omega.degree())));
    }
    Ok(())
}

/// Sign of reordering graded factors of the given dimensions by `ω`:
/// `(−1)^{Σ dim_a·dim_b}` over inverted pairs `a < b`, `ω(a) > ω(b)`.
pub fn koszul_sign(dims: &[usize], omega: &Permutation) -> i8 {
    let mut exponent = 0;
    for a in 0..dims.len() {
        for b in a + 1..dims.len() {
            if omega.apply(a) > omega.apply(b) {
                exponent += dims[a] * dims[b];
            }
        }
    }
    parity(exponent)
}

pub(crate) fn act_on_key(key: &[u64], omega: &Permutation) -> (CellKey, i8) {
    let dims: Vec<usize> = key.iter().map(|m| m.count_ones() as usize - 1).collect();
    let mut out: CellKey = SmallVec::from_slice(key);
    for (a, &m) in key.iter().enumerate() {
        out[omega.apply(a)] = m;
    }
    (out, koszul_sign(&dims, omega))
}

/// Calls `f` on every tuple of pairwise disjoint masks with slot `i` drawn
/// from `candidates[i]`, in lexicographic order of the slots. Stops early
/// once `f` returns `false`; returns whether it ran to completion.
pub(crate) fn for_each_disjoint_tuple(candidates: &[&[u64]], f: &mut dyn FnMut(&[u64]) -> bool) -> bool {
    fn go(cands: &[&[u64]], used: u64, cur: &mut Vec<u64>, f: &mut dyn FnMut(&[u64]) -> bool) -> bool {
        let i = cur.len();
        if i == cands.len() {
            return f(cur);
        }
        for &m in cands[i] {
            if m & used == 0 {
                cur.push(m);
                let keep_going = go(cands, used | m, cur, f);
                cur.pop();
                if !keep_going {
                    return false;
                }
            }
        }
        true
    }
    go(candidates, 0, &mut Vec::with_capacity(candidates.len()), f)
}

/// Simplex masks of `k` in lexicographic order of vertex lists.
pub(crate) fn simplex_masks(k: &Complex) -> Result<Vec<u64>> {
    if k.num_vertices() > 64 {
        return Err(Error::InvalidComplex(format!("{} vertices; at most 64 are supported", k.num_vertices())));
    }
    Ok(k.simplices().map(Simplex::mask).collect())
}

fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    (0..k).fold(BigUint::one(), |acc, i| acc * BigUint::from(n - i) / BigUint::from(i + 1))
}

/// Number of surjections from an `n`-set onto an `r`-set.
fn surjections(n: u64, r: u64) -> BigUint {
    let mut total = BigInt::zero();
    for j in 0..=r {
        let term = BigInt::from(binomial(r, j)) * BigInt::from(r - j).pow(n as u32);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total.to_biguint().expect("surjection count is nonnegative")
}

/// Closed-form f-vector of the r-fold deleted product of `Δ_N`: a `k`-cell
/// uses `k + r` vertices split onto `r` ordered labels.
pub fn simplex_f_vector(n: usize, r: usize) -> Vec<BigUint> {
    if r > n + 1 {
        return Vec::new();
    }
    (0..=n + 1 - r)
        .map(|k| binomial(n as u64 + 1, (k + r) as u64) * surjections((k + r) as u64, r as u64))
        .collect()
}

/// Counts cells of `K^r_Δ`, failing as soon as the count passes `cap`.
pub fn preflight_cell_count(k: &Complex, r: usize, cap: u64) -> Result<u64> {
    if r < 2 {
        return Err(Error::InvalidMultiplicity(r));
    }
    if k.is_full_simplex() && !k.is_empty() {
        let total: BigUint = simplex_f_vector(k.num_vertices() - 1, r).into_iter().sum();
        let total = total.to_u128().unwrap_or(u128::MAX);
        if total > u128::from(cap) {
            return Err(Error::CapExceeded { count: total, cap });
        }
        return Ok(total as u64);
    }
    let masks = simplex_masks(k)?;
    let slots: Vec<&[u64]> = vec![&masks; r];
    let mut count = 0u64;
    let complete = for_each_disjoint_tuple(&slots, &mut |_| {
        count += 1;
        count <= cap
    });
    if !complete {
        return Err(Error::CapExceeded { count: u128::from(count), cap });
    }
    Ok(count)
}

/// The r-fold deleted product of a complex, fully materialized.
#[derive(Clone)]
pub struct DeletedProduct {
    base: Complex,
    r: usize,
    cells: Vec<Vec<CellKey>>,
    index: HashMap<CellKey, usize>,
    boundaries: Vec<SparseIntMatrix>,
}

impl fmt::Debug for DeletedProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DeletedProduct").field("r", &self.r).field("f_vector", &self.f_vector()).finish()
    }
}

impl DeletedProduct {
    pub fn new(k: &Complex, r: usize) -> Result<Self> {
        Self::with_cap(k, r, DEFAULT_CELL_CAP)
    }

    pub fn with_cap(k: &Complex, r: usize, cap: u64) -> Result<Self> {
        preflight_cell_count(k, r, cap)?;
        let masks = simplex_masks(k)?;
        let slots: Vec<&[u64]> = vec![&masks; r];
        let mut cells: Vec<Vec<CellKey>> = Vec::new();
        for_each_disjoint_tuple(&slots, &mut |t| {
            let d = key_dim(t);
            if cells.len() <= d {
                cells.resize(d + 1, Vec::new());
            }
            cells[d].push(SmallVec::from_slice(t));
            true
        });
        let mut index = HashMap::new();
        for layer in &cells {
            for (i, key) in layer.iter().enumerate() {
                index.insert(key.clone(), i);
            }
        }
        let mut dp = DeletedProduct { base: k.clone(), r, cells, index, boundaries: Vec::new() };
        dp.boundaries = (0..dp.cells.len()).map(|d| dp.build_boundary(d)).collect();
        Ok(dp)
    }

    fn build_boundary(&self, d: usize) -> SparseIntMatrix {
        if d == 0 {
            return SparseIntMatrix::zeros(0, self.cells[0].len());
        }
        let columns = self.cells[d]
            .iter()
            .map(|key| {
                let mut col = Vec::new();
                let mut prefix = 0usize;
                for (i, &m) in key.iter().enumerate() {
                    let size = m.count_ones() as usize;
                    if size >= 2 {
                        let mut bits = m;
                        let mut t = 0;
                        while bits != 0 {
                            let bit = bits & bits.wrapping_neg();
                            let mut face: CellKey = key.clone();
                            face[i] = m & !bit;
                            col.push((self.index[&face], i64::from(parity(prefix + t))));
                            bits &= bits - 1;
                            t += 1;
                        }
                    }
                    prefix += size - 1;
                }
                col
            })
            .collect();
        SparseIntMatrix::new(self.cells[d - 1].len(), columns).expect("face indices are in range")
    }

    pub fn base(&self) -> &Complex {
        &self.base
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn dim(&self) -> Option<usize> {
        self.cells.len().checked_sub(1)
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.cells.iter().map(Vec::len).collect()
    }

    pub fn num_cells(&self) -> usize {
        self.cells.iter().map(Vec::len).sum()
    }

    pub fn cell(&self, d: usize, i: usize) -> ProductCell {
        ProductCell::from_key(&self.cells[d][i])
    }

    pub fn cells(&self, d: usize) -> Vec<ProductCell> {
        self.cells.get(d).map_or_else(Vec::new, |l| l.iter().map(|k| ProductCell::from_key(k)).collect())
    }

    /// `(dimension, index)` of a cell.
    pub fn index_of(&self, cell: &ProductCell) -> Option<(usize, usize)> {
        if cell.r() != self.r {
            return None;
        }
        let key = cell.key()?;
        self.index.get(&key).map(|&i| (cell.dim(), i))
    }

    /// `∂_d : C_d → C_{d-1}`; `∂_0` has no rows.
    pub fn boundary(&self, d: usize) -> &SparseIntMatrix {
        &self.boundaries[d]
    }

    pub fn boundaries(&self) -> &[SparseIntMatrix] {
        &self.boundaries
    }

    pub fn group_action(&self, omega: &Permutation) -> Result<CellAction> {
        check_degree(omega, self.r)?;
        let images = self
            .cells
            .iter()
            .map(|layer| {
                layer
                    .iter()
                    .map(|key| {
                        let (img, sign) = act_on_key(key, omega);
                        (self.index[&img], sign)
                    })
                    .collect()
            })
            .collect();
        Ok(CellAction { omega: omega.clone(), images })
    }

    /// Breadth-first search in the 1-skeleton between two 0-cells.
    pub fn puzzle_reachable(&self, from: &ProductCell, to: &ProductCell) -> Result<PuzzlePath> {
        let locate = |c: &ProductCell| match self.index_of(c) {
            Some((0, i)) => Ok(i),
            _ => Err(Error::UnknownCell(c.to_string())),
        };
        let (s, t) = (locate(from)?, locate(to)?);
        if s == t {
            return Ok(PuzzlePath { reachable: true, path: Vec::new() });
        }
        let adjacency = self.one_skeleton_adjacency();
        let mut prev: Vec<Option<(usize, usize)>> = vec![None; adjacency.len()];
        let mut seen = vec![false; adjacency.len()];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            if x == t {
                break;
            }
            for &(edge, y) in &adjacency[x] {
                if !seen[y] {
                    seen[y] = true;
                    prev[y] = Some((edge, x));
                    queue.push_back(y);
                }
            }
        }
        if !seen[t] {
            return Ok(PuzzlePath { reachable: false, path: Vec::new() });
        }
        let mut rev = Vec::new();
        let mut cur = t;
        while let Some((edge, p)) = prev[cur] {
            rev.push(self.cell(0, cur));
            rev.push(self.cell(1, edge));
            cur = p;
        }
        rev.reverse();
        Ok(PuzzlePath { reachable: true, path: rev })
    }

    /// For each 0-cell, its `(1-cell, neighbour)` pairs in 1-cell order.
    fn one_skeleton_adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let n0 = self.cells.first().map_or(0, Vec::len);
        let mut adj = vec![Vec::new(); n0];
        if self.cells.len() > 1 {
            for e in 0..self.cells[1].len() {
                let col = self.boundaries[1].column(e);
                if let [(a, _), (b, _)] = col {
                    adj[*a].push((e, *b));
                    adj[*b].push((e, *a));
                }
            }
        }
        adj
    }

    /// Vertex and edge counts, degree range and components of the 1-skeleton.
    pub fn one_skeleton_stats(&self) -> GraphStats {
        let adj = self.one_skeleton_adjacency();
        let mut comp = vec![usize::MAX; adj.len()];
        let mut components = 0;
        for s in 0..adj.len() {
            if comp[s] != usize::MAX {
                continue;
            }
            let mut stack = vec![s];
            comp[s] = components;
            while let Some(x) = stack.pop() {
                for &(_, y) in &adj[x] {
                    if comp[y] == usize::MAX {
                        comp[y] = components;
                        stack.push(y);
                    }
                }
            }
            components += 1;
        }
        GraphStats {
            vertices: adj.len(),
            edges: self.cells.get(1).map_or(0, Vec::len),
            min_degree: adj.iter().map(Vec::len).min().unwrap_or(0),
            max_degree: adj.iter().map(Vec::len).max().unwrap_or(0),
            components,
        }
    }
}

/// Result of [`DeletedProduct::puzzle_reachable`]. The path lists the cells
/// after the start, alternating 1-cells and 0-cells and ending at the target.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PuzzlePath {
    pub reachable: bool,
    pub path: Vec<ProductCell>,
}

impl PuzzlePath {
    pub fn num_edges(&self) -> usize {
        self.path.len() / 2
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphStats {
    pub vertices: usize,
    pub edges: usize,
    pub min_degree: usize,
    pub max_degree: usize,
    pub components: usize,
}

/// The signed cell permutation induced by one `ω`.
#[derive(Clone, Debug)]
pub struct CellAction {
    omega: Permutation,
    /// `images[d][i] = (j, s)` means `ω·c_i = s·c_j` in dimension `d`.
    images: Vec<Vec<(usize, i8)>>,
}

impl CellAction {
    pub fn omega(&self) -> &Permutation {
        &self.omega
    }

    pub fn image(&self, d: usize, i: usize) -> (usize, i8) {
        self.images[d][i]
    }

    pub fn is_trivial(&self) -> bool {
        self.images.iter().all(|l| l.iter().enumerate().all(|(i, &(j, s))| i == j && s == 1))
    }

    /// No cell is mapped to itself (vacuous for the identity).
    pub fn has_no_fixed_cells(&self) -> bool {
        self.images.iter().all(|l| l.iter().enumerate().all(|(i, &(j, _))| i != j))
    }

    /// `ω ∂ = ∂ ω` as signed matrices.
    pub fn commutes_with_boundary(&self, dp: &DeletedProduct) -> bool {
        for d in 1..self.images.len() {
            let b = dp.boundary(d);
            for i in 0..b.cols() {
                let (j, s) = self.images[d][i];
                let mut lhs: Vec<(usize, i64)> = b
                    .column(i)
                    .iter()
                    .map(|&(row, x)| {
                        let (img, t) = self.images[d - 1][row];
                        (img, x * i64::from(t))
                    })
                    .collect();
                let mut rhs: Vec<(usize, i64)> = b.column(j).iter().map(|&(row, x)| (row, x * i64::from(s))).collect();
                lhs.sort_unstable();
                rhs.sort_unstable();
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }
}

/// Deleted product of the full simplex, refusing before materialization when
/// the closed-form count exceeds `cap`.
pub fn deleted_simplex(n: usize, r: usize, cap: u64) -> Result<DeletedProduct> {
    if r < 2 {
        return Err(Error::InvalidMultiplicity(r));
    }
    let total: BigUint = simplex_f_vector(n, r).into_iter().sum();
    let total = total.to_u128().unwrap_or(u128::MAX);
    if total > u128::from(cap) {
        return Err(Error::CapExceeded { count: total, cap });
    }
    DeletedProduct::with_cap(&full_simplex(n)?, r, cap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::simplex_skeleton;

    fn dp(n: usize, r: usize) -> DeletedProduct {
        deleted_simplex(n, r, DEFAULT_CELL_CAP).unwrap()
    }

    #[test]
    fn small_f_vectors() {
        assert!(dp(1, 3).is_empty());
        assert_eq!(dp(2, 3).f_vector(), vec![6]);
        assert_eq!(dp(2, 2).f_vector(), vec![6, 6]);
        assert_eq!(dp(3, 3).f_vector(), vec![24, 36]);
        assert_eq!(dp(5, 3).f_vector(), vec![120, 540, 900, 540]);
    }

    #[test]
    fn closed_form_matches_enumeration() {
        for n in 0..=6 {
            for r in 2..=4 {
                let closed: Vec<usize> = simplex_f_vector(n, r).iter().map(|x| x.to_usize().unwrap()).collect();
                assert_eq!(closed, dp(n, r).f_vector(), "N = {n}, r = {r}");
            }
        }
    }

    #[test]
    fn hexagon_puzzle() {
        let d = dp(2, 2);
        let a = ProductCell::from_vertex_lists(&[&[0], &[1]]).unwrap();
        let b = ProductCell::from_vertex_lists(&[&[1], &[0]]).unwrap();
        let p = d.puzzle_reachable(&a, &b).unwrap();
        assert!(p.reachable);
        assert_eq!(p.num_edges(), 3);
        assert_eq!(p.path.last(), Some(&b));
        assert!(d.puzzle_reachable(&a, &a).unwrap().path.is_empty());
        let bogus = ProductCell::from_vertex_lists(&[&[0], &[5]]).unwrap();
        assert!(matches!(d.puzzle_reachable(&a, &bogus), Err(Error::UnknownCell(_))));
    }

    #[test]
    fn koszul_signs() {
        let c = ProductCell::from_vertex_lists(&[&[0, 1], &[2, 3]]).unwrap();
        let (img, s) = c.act(&Permutation::transposition(2, 0, 1)).unwrap();
        assert_eq!(img, ProductCell::from_vertex_lists(&[&[2, 3], &[0, 1]]).unwrap());
        assert_eq!(s, -1);
        let v = ProductCell::from_vertex_lists(&[&[0], &[1]]).unwrap();
        assert_eq!(v.act(&Permutation::transposition(2, 0, 1)).unwrap().1, 1);
    }

    #[test]
    fn custom_complex_and_cap() {
        let k5 = simplex_skeleton(4, 1).unwrap();
        let d = DeletedProduct::new(&k5, 2).unwrap();
        assert_eq!(d.f_vector(), vec![20, 60, 30]);
        assert!(matches!(DeletedProduct::with_cap(&k5, 2, 10), Err(Error::CapExceeded { .. })));
        assert!(matches!(deleted_simplex(100, 6, DEFAULT_CELL_CAP), Err(Error::CapExceeded { .. })));
        assert_eq!(DeletedProduct::new(&k5, 1).unwrap_err(), Error::InvalidMultiplicity(1));
    }
}
