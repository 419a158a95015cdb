//! Radon partitions, r-fold convex hull intersection and Tverberg partition
//! search, all certified in exact arithmetic.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::lp::feasible_point;
use crate::point::Point;
use crate::scalar::Field;
use crate::Rational;

/// A common point of several convex hulls with one convex-combination
/// certificate per group.
#[derive(Clone, Debug, PartialEq)]
pub struct HullWitness<F = Rational> {
    pub witness: Point<F>,
    pub certificates: Vec<Vec<F>>,
}

/// A partition of `{0..n-1}` into parts whose hulls share `witness`;
/// `certificates[i][j]` is the weight of point `parts[i][j]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "F: std::fmt::Display", deserialize = "F: std::str::FromStr, F::Err: std::fmt::Display"))]
pub struct TverbergPartition<F = Rational> {
    pub parts: Vec<Vec<usize>>,
    pub witness: Point<F>,
    pub certificates: Vec<Point<F>>,
}

fn is_convex_combination<F: Field>(points: &[&Point<F>], weights: &[F], target: &Point<F>) -> bool {
    if points.len() != weights.len() || weights.iter().any(|w| w.is_strictly_negative()) {
        return false;
    }
    let total = weights.iter().fold(F::zero(), |a, w| a + w.clone());
    if !(total - F::one()).is_negligible() {
        return false;
    }
    let y = Point::combination(points, weights);
    y.dim() == target.dim() && y.coords().iter().zip(target.coords()).all(|(a, b)| (a.clone() - b.clone()).is_negligible())
}

impl<F: Field> TverbergPartition<F> {
    pub fn r(&self) -> usize {
        self.parts.len()
    }

    /// Re-checks the partition and every certificate against `points`.
    pub fn verify(&self, points: &[Point<F>]) -> bool {
        let mut seen = vec![false; points.len()];
        for part in &self.parts {
            if part.is_empty() {
                return false;
            }
            for &i in part {
                if i >= points.len() || seen[i] {
                    return false;
                }
                seen[i] = true;
            }
        }
        if !seen.iter().all(|&s| s) || self.certificates.len() != self.parts.len() {
            return false;
        }
        self.parts.iter().zip(&self.certificates).all(|(part, cert)| {
            let pts: Vec<&Point<F>> = part.iter().map(|&i| &points[i]).collect();
            is_convex_combination(&pts, cert.coords(), &self.witness)
        })
    }
}

fn common_dim<F: Field>(points: &[Point<F>]) -> Result<usize> {
    let d = points.first().map_or(0, Point::dim);
    if let Some(p) = points.iter().find(|p| p.dim() != d) {
        return Err(Error::ShapeError(format!("point of dimension {} among dimension {d}", p.dim())));
    }
    Ok(d)
}

/// Decides whether the convex hulls of the groups share a point.
pub fn hulls_intersect<F: Field>(groups: &[Vec<Point<F>>]) -> Result<Option<HullWitness<F>>> {
    if groups.is_empty() || groups.iter().any(Vec::is_empty) {
        return Err(Error::InvalidArgument("every group must be non-empty".into()));
    }
    let all: Vec<Point<F>> = groups.iter().flatten().cloned().collect();
    let d = common_dim(&all)?;
    let g = groups.len();
    let offsets: Vec<usize> = groups.iter().scan(0, |acc, grp| {
        let o = *acc;
        *acc += grp.len();
        Some(o)
    }).collect();
    let nvars = all.len();
    let nrows = g + (g - 1) * d;
    let mut a = Matrix::<F>::zeros(nrows, nvars);
    let mut b = vec![F::zero(); nrows];
    for (gi, grp) in groups.iter().enumerate() {
        for j in 0..grp.len() {
            a[(gi, offsets[gi] + j)] = F::one();
        }
        b[gi] = F::one();
    }
    for gi in 1..g {
        for c in 0..d {
            let row = g + (gi - 1) * d + c;
            for (j, p) in groups[0].iter().enumerate() {
                a[(row, j)] = p[c].clone();
            }
            for (j, p) in groups[gi].iter().enumerate() {
                a[(row, offsets[gi] + j)] = -p[c].clone();
            }
        }
    }
    let Some(x) = feasible_point(&a, &b)? else { return Ok(None) };
    let certificates: Vec<Vec<F>> =
        groups.iter().enumerate().map(|(gi, grp)| x[offsets[gi]..offsets[gi] + grp.len()].to_vec()).collect();
    let first: Vec<&Point<F>> = groups[0].iter().collect();
    let witness = Point::combination(&first, &certificates[0]);
    for (grp, cert) in groups.iter().zip(&certificates) {
        let pts: Vec<&Point<F>> = grp.iter().collect();
        assert!(is_convex_combination(&pts, cert, &witness), "LP returned an uncertified hull witness");
    }
    Ok(Some(HullWitness { witness, certificates }))
}

/// Splits `d + 2` points along an affine dependence.
pub fn radon_partition<F: Field>(points: &[Point<F>]) -> Result<TverbergPartition<F>> {
    let d = common_dim(points)?;
    if points.len() != d + 2 {
        return Err(Error::WrongCardinality { expected: d + 2, got: points.len() });
    }
    let n = points.len();
    let mut m = Matrix::<F>::zeros(d + 1, n);
    for (j, p) in points.iter().enumerate() {
        for c in 0..d {
            m[(c, j)] = p[c].clone();
        }
        m[(d, j)] = F::one();
    }
    let dep = m.null_space().into_iter().next().expect("d + 2 points in dimension d are affinely dependent");
    let positive: Vec<usize> = (0..n).filter(|&i| dep[i].is_strictly_positive()).collect();
    let rest: Vec<usize> = (0..n).filter(|&i| !dep[i].is_strictly_positive()).collect();
    let total = positive.iter().fold(F::zero(), |a, &i| a + dep[i].clone());
    let pos_w: Vec<F> = positive.iter().map(|&i| dep[i].clone() / total.clone()).collect();
    let rest_w: Vec<F> = rest.iter().map(|&i| -dep[i].clone() / total.clone()).collect();
    let pts: Vec<&Point<F>> = positive.iter().map(|&i| &points[i]).collect();
    let witness = Point::combination(&pts, &pos_w);
    let mut parts = vec![(positive, pos_w), (rest, rest_w)];
    if parts[0].0.first() != Some(&0) {
        parts.swap(0, 1);
    }
    let out = TverbergPartition {
        parts: parts.iter().map(|p| p.0.clone()).collect(),
        witness,
        certificates: parts.into_iter().map(|p| Point::new(p.1)).collect(),
    };
    assert!(out.verify(points), "Radon witness failed exact verification");
    Ok(out)
}

/// Set partitions of `{0..n-1}` into exactly `r` blocks, grouped by the
/// ascending tuple of block sizes; signatures in lexicographic order, and
/// within a signature partitions (blocks ordered by least element) in
/// lexicographic order.
pub fn partitions_in_search_order(n: usize, r: usize) -> Vec<Vec<Vec<usize>>> {
    let mut all: Vec<(Vec<usize>, Vec<Vec<usize>>)> = Vec::new();
    let mut labels = vec![0usize; n];
    fn rec(i: usize, used: usize, n: usize, r: usize, labels: &mut Vec<usize>, out: &mut Vec<(Vec<usize>, Vec<Vec<usize>>)>) {
        if n - i < r - used {
            return;
        }
        if i == n {
            let mut blocks = vec![Vec::new(); r];
            for (x, &l) in labels.iter().enumerate() {
                blocks[l].push(x);
            }
            let mut sig: Vec<usize> = blocks.iter().map(Vec::len).collect();
            sig.sort_unstable();
            out.push((sig, blocks));
            return;
        }
        for l in 0..=used.min(r - 1) {
            labels[i] = l;
            rec(i + 1, used.max(l + 1), n, r, labels, out);
        }
    }
    if r >= 1 && r <= n {
        rec(0, 0, n, r, &mut labels, &mut all);
    }
    all.sort();
    all.into_iter().map(|(_, b)| b).collect()
}

/// First certified partition of `(d+1)(r−1)+1` points into `r` parts.
pub fn tverberg_search<F: Field>(points: &[Point<F>], r: usize) -> Result<TverbergPartition<F>> {
    if r < 2 {
        return Err(Error::InvalidMultiplicity(r));
    }
    let d = common_dim(points)?;
    let expected = (d + 1) * (r - 1) + 1;
    if points.len() != expected {
        return Err(Error::WrongCardinality { expected, got: points.len() });
    }
    for parts in partitions_in_search_order(points.len(), r) {
        let groups: Vec<Vec<Point<F>>> = parts.iter().map(|b| b.iter().map(|&i| points[i].clone()).collect()).collect();
        if let Some(h) = hulls_intersect(&groups)? {
            let out = TverbergPartition {
                parts,
                witness: h.witness,
                certificates: h.certificates.into_iter().map(Point::new).collect(),
            };
            assert!(out.verify(points), "Tverberg witness failed exact verification");
            return Ok(out);
        }
    }
    Err(Error::SearchInvariantViolated)
}

/// Whether every subset of at most `d + 1` points is affinely independent.
pub fn general_position_check<F: Field>(points: &[Point<F>], d: usize) -> bool {
    let n = points.len();
    let size = n.min(d + 1);
    if size <= 1 {
        return true;
    }
    let mut subset: Vec<usize> = (0..size).collect();
    loop {
        let base = &points[subset[0]];
        let rows: Vec<Vec<F>> = subset[1..].iter().map(|&i| points[i].sub(base)).collect();
        if Matrix::from_rows(rows).rank() != size - 1 {
            return false;
        }
        // next combination
        let Some(pos) = (0..size).rev().find(|&i| subset[i] < n - size + i) else { return true };
        subset[pos] += 1;
        for j in pos + 1..size {
            subset[j] = subset[j - 1] + 1;
        }
    }
}
