//! Phase-one simplex with Bland's rule: finds `x ≥ 0` with `A x = b`.

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Field;

/// A nonnegative solution of `A x = b`, or `None` when the system has none.
pub fn feasible_point<F: Field>(a: &Matrix<F>, b: &[F]) -> Result<Option<Vec<F>>> {
    let (m, n) = (a.rows(), a.cols());
    if b.len() != m {
        return Err(Error::ShapeError(format!("{m} constraints but {} right-hand sides", b.len())));
    }
    let width = n + m + 1;
    let rhs = n + m;
    let mut t = Matrix::<F>::zeros(m + 1, width);
    for i in 0..m {
        let flip = b[i].is_strictly_negative();
        let s = |x: F| if flip { -x } else { x };
        for j in 0..n {
            t[(i, j)] = s(a[(i, j)].clone());
        }
        t[(i, n + i)] = F::one();
        t[(i, rhs)] = s(b[i].clone());
    }
    for j in 0..n {
        let col_sum = (0..m).fold(F::zero(), |acc, i| acc + t[(i, j)].clone());
        t[(m, j)] = -col_sum;
    }
    t[(m, rhs)] = -(0..m).fold(F::zero(), |acc, i| acc + t[(i, rhs)].clone());
    let mut basis: Vec<usize> = (n..n + m).collect();

    while let Some(e) = (0..n + m).find(|&j| t[(m, j)].is_strictly_negative()) {
        let mut leave: Option<(usize, F)> = None;
        for i in 0..m {
            if !t[(i, e)].is_strictly_positive() {
                continue;
            }
            let ratio = t[(i, rhs)].clone() / t[(i, e)].clone();
            leave = match leave {
                None => Some((i, ratio)),
                Some((li, lr)) => {
                    let tie = (ratio.clone() - lr.clone()).is_negligible();
                    let better = if tie { basis[i] < basis[li] } else { ratio < lr };
                    if better {
                        Some((i, ratio))
                    } else {
                        Some((li, lr))
                    }
                }
            };
        }
        let Some((p, _)) = leave else {
            // the phase-one objective is bounded below by zero
            unreachable!("unbounded phase-one problem");
        };
        pivot(&mut t, p, e);
        basis[p] = e;
    }

    if t[(m, rhs)].is_strictly_negative() {
        return Ok(None);
    }
    let mut x = vec![F::zero(); n];
    for (i, &v) in basis.iter().enumerate() {
        if v < n {
            x[v] = t[(i, rhs)].clone();
        }
    }
    Ok(Some(x))
}

fn pivot<F: Field>(t: &mut Matrix<F>, p: usize, e: usize) {
    let width = t.cols();
    let inv = F::one() / t[(p, e)].clone();
    for j in 0..width {
        t[(p, j)] = t[(p, j)].clone() * inv.clone();
    }
    for i in 0..t.rows() {
        if i == p || t[(i, e)].is_zero() {
            continue;
        }
        let f = t[(i, e)].clone();
        for j in 0..width {
            let delta = f.clone() * t[(p, j)].clone();
            t[(i, j)] = t[(i, j)].clone() - delta;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn q(n: i64) -> Rational {
        Rational::from_i64(n)
    }

    #[test]
    fn feasible_and_infeasible() {
        let a = Matrix::from_rows(vec![vec![q(1), q(1)], vec![q(1), q(-1)]]);
        let x = feasible_point(&a, &[q(2), q(0)]).unwrap().unwrap();
        assert_eq!(x, vec![q(1), q(1)]);
        assert!(feasible_point(&a, &[q(-1), q(0)]).unwrap().is_none());
        let a = Matrix::from_rows(vec![vec![q(1), q(-1)]]);
        let x = feasible_point(&a, &[q(-3)]).unwrap().unwrap();
        assert_eq!(a.mul_vec(&x), vec![q(-3)]);
        assert!(x.iter().all(|v| *v >= q(0)));
    }

    #[test]
    fn degenerate_cycling_example() {
        // Beale-style degenerate system; Bland's rule must terminate
        let rows = vec![
            vec![q(1), q(0), q(0), q(1), q(-4), q(-8), q(0)],
            vec![q(0), q(1), q(0), q(-2), q(-1), q(6), q(-1)],
            vec![q(0), q(0), q(1), q(0), q(1), q(0), q(1)],
        ];
        let a = Matrix::from_rows(rows);
        let b = [q(0), q(0), q(1)];
        let x = feasible_point(&a, &b).unwrap().unwrap();
        assert_eq!(a.mul_vec(&x), b.to_vec());
    }
}
