use crate::error::{Error, Result};
use crate::scalar::RingInt;

use super::IntMatrix;

/// `(U, D, V)` with `U · M · V = D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm<I> {
    pub u: IntMatrix<I>,
    pub d: IntMatrix<I>,
    pub v: IntMatrix<I>,
}

impl<I: RingInt> SmithForm<I> {
    /// The nonzero diagonal entries `d_1 | d_2 | …`.
    pub fn invariant_factors(&self) -> Vec<I> {
        (0..self.d.rows().min(self.d.cols())).map(|i| self.d[(i, i)].clone()).take_while(|x| !x.is_zero()).collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

fn min_abs_entry<I: RingInt>(m: &IntMatrix<I>, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..m.rows() {
        for j in t..m.cols() {
            let x = &m[(i, j)];
            if x.is_zero() {
                continue;
            }
            match best {
                Some(b) if m[b].abs() <= x.abs() => {}
                _ => best = Some((i, j)),
            }
            if x.abs().is_one() {
                return best;
            }
        }
    }
    best
}

/// Smith normal form with minimal-absolute-value pivoting.
pub fn smith_normal_form<I: RingInt>(m: &IntMatrix<I>) -> SmithForm<I> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut d = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    for t in 0..rows.min(cols) {
        let Some((pi, pj)) = min_abs_entry(&d, t) else { break };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = -d[(i, t)].floor_div(&d[(t, t)]);
                d.add_row(i, t, &q);
                u.add_row(i, t, &q);
                dirty |= !d[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = -d[(t, j)].floor_div(&d[(t, t)]);
                d.add_col(j, t, &q);
                v.add_col(j, t, &q);
                dirty |= !d[(t, j)].is_zero();
            }
            if dirty {
                let (pi, pj) = min_abs_entry_cross(&d, t);
                d.swap_rows(t, pi);
                u.swap_rows(t, pi);
                d.swap_cols(t, pj);
                v.swap_cols(t, pj);
                continue;
            }
            let pivot = d[(t, t)].clone();
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !d[(i, j)].is_multiple_of(&pivot)));
            match bad {
                Some(i) => {
                    let one = I::one();
                    d.add_row(t, i, &one);
                    u.add_row(t, i, &one);
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    SmithForm { u, d, v }
}

/// Smallest nonzero entry in row `t` or column `t` from `t` on.
fn min_abs_entry_cross<I: RingInt>(m: &IntMatrix<I>, t: usize) -> (usize, usize) {
    let mut best = (t, t);
    let mut consider = |pos: (usize, usize)| {
        let x = &m[pos];
        if !x.is_zero() && (m[best].is_zero() || x.abs() < m[best].abs()) {
            best = pos;
        }
    };
    for i in t..m.rows() {
        consider((i, t));
    }
    for j in t..m.cols() {
        consider((t, j));
    }
    best
}

/// Outcome of [`solve_integer_system`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IntegerSolution<I> {
    Solution(Vec<I>),
    Infeasible(InfeasibilityCertificate<I>),
}

/// A row vector `w` with `w·A ≡ 0` but `w·b ≢ 0` modulo `modulus`;
/// modulus zero means `w·A = 0` exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InfeasibilityCertificate<I> {
    pub witness: Vec<I>,
    pub modulus: I,
}

impl<I: RingInt> InfeasibilityCertificate<I> {
    pub fn verify(&self, a: &IntMatrix<I>, b: &[I]) -> bool {
        if self.witness.len() != a.rows() || b.len() != a.rows() {
            return false;
        }
        let reduce = |x: I| if self.modulus.is_zero() { x } else { x.mod_floor(&self.modulus) };
        let wa = a.transpose().mul_vec(&self.witness).expect("shape checked");
        let wb = self.witness.iter().zip(b).fold(I::zero(), |acc, (w, y)| acc + w.clone() * y.clone());
        wa.into_iter().all(|x| reduce(x).is_zero()) && !reduce(wb).is_zero()
    }
}

/// Finds an integer `x` with `A x = b`, or certifies that none exists.
pub fn solve_integer_system<I: RingInt>(a: &IntMatrix<I>, b: &[I]) -> Result<IntegerSolution<I>> {
    if b.len() != a.rows() {
        return Err(Error::ShapeError(format!("matrix has {} rows, right-hand side has {} entries", a.rows(), b.len())));
    }
    let SmithForm { u, d, v } = smith_normal_form(a);
    let ub = u.mul_vec(b)?;
    let rank = (0..a.rows().min(a.cols())).take_while(|&i| !d[(i, i)].is_zero()).count();
    let mut y = vec![I::zero(); a.cols()];
    for (i, c) in ub.iter().enumerate() {
        let (modulus, ok) = if i < rank {
            let di = &d[(i, i)];
            (di.clone(), c.is_multiple_of(di))
        } else {
            (I::zero(), c.is_zero())
        };
        if !ok {
            return Ok(IntegerSolution::Infeasible(InfeasibilityCertificate { witness: u.row(i).to_vec(), modulus }));
        }
        if i < rank {
            y[i] = c.clone() / d[(i, i)].clone();
        }
    }
    Ok(IntegerSolution::Solution(v.mul_vec(&y)?))
}
