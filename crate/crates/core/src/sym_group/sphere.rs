use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::point::Point;
use crate::scalar::Field;
use crate::Rational;

use super::{BlockSplit, Permutation};

/// A nonzero `d × r` matrix with zero row sums, standing for the ray it
/// spans. Normalization is never performed.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixSpherePoint<F = Rational> {
    matrix: Matrix<F>,
}

impl<F: Field> MatrixSpherePoint<F> {
    pub fn new(matrix: Matrix<F>) -> Result<Self> {
        for i in 0..matrix.rows() {
            let sum = matrix.row(i).iter().fold(F::zero(), |a, x| a + x.clone());
            if !sum.is_negligible() {
                return Err(Error::InvalidArgument(format!("row {i} does not sum to zero")));
            }
        }
        if (0..matrix.rows()).all(|i| matrix.row(i).iter().all(Field::is_negligible)) {
            return Err(Error::DiagonalInput);
        }
        Ok(MatrixSpherePoint { matrix })
    }

    pub fn matrix(&self) -> &Matrix<F> {
        &self.matrix
    }

    pub fn d(&self) -> usize {
        self.matrix.rows()
    }

    pub fn r(&self) -> usize {
        self.matrix.cols()
    }

    /// Column `j` moves to position `ω(j)`.
    pub fn act(&self, omega: &Permutation) -> Self {
        let mut m = Matrix::zeros(self.d(), self.r());
        for j in 0..self.r() {
            let dst = omega.apply(j);
            for i in 0..self.d() {
                m[(i, dst)] = self.matrix[(i, j)].clone();
            }
        }
        MatrixSpherePoint { matrix: m }
    }

    pub fn is_fixed_by(&self, omega: &Permutation) -> bool {
        self.act(omega) == *self
    }

    /// Whether `other` is a positive multiple of `self`.
    pub fn same_ray(&self, other: &Self) -> bool {
        if self.d() != other.d() || self.r() != other.r() {
            return false;
        }
        let mut scale: Option<F> = None;
        for i in 0..self.d() {
            for j in 0..self.r() {
                let (a, b) = (&self.matrix[(i, j)], &other.matrix[(i, j)]);
                match (a.is_negligible(), b.is_negligible()) {
                    (true, true) => continue,
                    (false, false) => {}
                    _ => return false,
                }
                let ratio = b.clone() / a.clone();
                if ratio.sign_i8() <= 0 {
                    return false;
                }
                match &scale {
                    None => scale = Some(ratio),
                    Some(s) if !(s.clone() - ratio).is_negligible() => return false,
                    _ => {}
                }
            }
        }
        true
    }
}

/// The point whose rows are `(k−r, …, k−r, k, …, k)` with `k` leading entries.
pub fn invariant_matrix_point(k: usize, r: usize, d: usize) -> Result<MatrixSpherePoint> {
    let first: Vec<usize> = (0..k).collect();
    let second: Vec<usize> = (k..r).collect();
    invariant_matrix_point_for_split(&BlockSplit { k, first, second }, d)
}

/// Same construction with `k−r` on the columns of `split.first` and `k` on
/// those of `split.second`.
pub fn invariant_matrix_point_for_split(split: &BlockSplit, d: usize) -> Result<MatrixSpherePoint> {
    let r = split.first.len() + split.second.len();
    let k = split.first.len();
    let all: BTreeSet<usize> = split.first.iter().chain(&split.second).copied().collect();
    if k == 0 || k >= r || d == 0 || all.len() != r || all.iter().next_back() != Some(&(r - 1)) {
        return Err(Error::InvalidArgument(format!("need 1 <= k < r and d >= 1, got k = {k}, r = {r}, d = {d}")));
    }
    let mut m = Matrix::zeros(d, r);
    let low = Rational::from_i64(k as i64 - r as i64);
    let high = Rational::from_i64(k as i64);
    for i in 0..d {
        for &j in &split.first {
            m[(i, j)] = low.clone();
        }
        for &j in &split.second {
            m[(i, j)] = high.clone();
        }
    }
    MatrixSpherePoint::new(m)
}

/// Columns are `x_j` minus the mean of the points.
pub fn pi_projection<F: Field>(points: &[Point<F>]) -> Result<MatrixSpherePoint<F>> {
    let r = points.len();
    let Some(first) = points.first() else { return Err(Error::DiagonalInput) };
    let d = first.dim();
    if let Some(p) = points.iter().find(|p| p.dim() != d) {
        return Err(Error::ShapeError(format!("point of dimension {} among dimension {d}", p.dim())));
    }
    let n = F::from_i64(r as i64);
    let mut m = Matrix::zeros(d, r);
    for i in 0..d {
        let mean = points.iter().fold(F::zero(), |a, p| a + p[i].clone()) / n.clone();
        for (j, p) in points.iter().enumerate() {
            m[(i, j)] = p[i].clone() - mean.clone();
        }
    }
    MatrixSpherePoint::new(m)
}
