use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::complex::{are_disjoint, OrientedSimplex, Simplex};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::lp::feasible_point;
use crate::point::Point;
use crate::scalar::Field;
use crate::sym_group::Permutation;
use crate::Rational;

use super::{disjoint_tuples, PLMap};

/// A transversal point with one interior preimage in each simplex of an
/// ordered tuple of disjoint simplices.
#[derive(Clone, Debug, PartialEq)]
pub struct RFoldPoint<F = Rational> {
    pub simplices: Vec<OrientedSimplex>,
    pub barycentric: Vec<Vec<F>>,
    pub ambient: Point<F>,
    pub sign: i8,
}

/// Tangent frame `[f(v_l) − f(v_0)]` of an oriented simplex; a negative
/// orientation negates the first column.
fn tangent_frame<F: Field>(f: &PLMap<F>, s: &OrientedSimplex) -> Matrix<F> {
    let v = s.simplex.vertices();
    let base = f.image(v[0]);
    let cols: Vec<Vec<F>> = v[1..].iter().map(|&w| f.image(w).sub(base)).collect();
    let mut t = Matrix::from_columns(f.ambient_dim(), &cols);
    if s.sign < 0 && t.cols() > 0 {
        for i in 0..t.rows() {
            t[(i, 0)] = -t[(i, 0)].clone();
        }
    }
    t
}

/// Basis of the orthogonal complement of the tangent frame, oriented so that
/// `[T | N]` has positive determinant.
fn normal_frame<F: Field>(t: &Matrix<F>) -> Result<Matrix<F>> {
    let d = t.rows();
    let m = t.cols();
    let basis = t.transpose().null_space();
    if basis.len() != d - m {
        return Err(Error::NotGeneric("image of a simplex is degenerate".into()));
    }
    let mut n = Matrix::from_columns(d, &basis);
    let mut cols: Vec<Vec<F>> = (0..m).map(|j| t.column(j)).collect();
    cols.extend(basis.iter().cloned());
    let orientation = Matrix::from_columns(d, &cols).determinant().sign_i8();
    if orientation == 0 {
        return Err(Error::NotGeneric("tangent and normal frames are dependent".into()));
    }
    if orientation < 0 {
        for i in 0..d {
            n[(i, 0)] = -n[(i, 0)].clone();
        }
    }
    Ok(n)
}

/// Sign of the stacked normal frames, `sign det[N_1 | … | N_r]`.
fn intersection_sign<F: Field>(f: &PLMap<F>, tuple: &[OrientedSimplex]) -> Result<i8> {
    let d = f.ambient_dim();
    let mut cols: Vec<Vec<F>> = Vec::with_capacity(d);
    for s in tuple {
        let n = normal_frame(&tangent_frame(f, s))?;
        cols.extend((0..n.cols()).map(|j| n.column(j)));
    }
    let s = Matrix::from_columns(d, &cols).determinant().sign_i8();
    if s == 0 {
        return Err(Error::NotGeneric("image planes meet non-transversally".into()));
    }
    Ok(s)
}

/// The r-fold point supported on an ordered tuple of disjoint top simplices,
/// if there is one.
pub fn r_fold_points_on<F: Field>(f: &PLMap<F>, tuple: &[OrientedSimplex]) -> Result<Vec<RFoldPoint<F>>> {
    let r = tuple.len();
    let (_, m) = f.codimension_data(r)?;
    for (i, a) in tuple.iter().enumerate() {
        if a.simplex.dim() != m || !f.domain().contains(&a.simplex) {
            return Err(Error::InvalidArgument(format!("{} is not a top simplex of the domain", a.simplex)));
        }
        if tuple[i + 1..].iter().any(|b| !are_disjoint(&a.simplex, &b.simplex)) {
            return Err(Error::InvalidArgument("tuple simplices must be pairwise disjoint".into()));
        }
    }
    let d = f.ambient_dim();
    let w = m + 1;
    let n = r * w;
    let mut a = Matrix::<F>::zeros(n, n);
    let mut b = vec![F::zero(); n];
    for j in 0..r {
        for l in 0..w {
            a[(j, j * w + l)] = F::one();
        }
        b[j] = F::one();
    }
    let first = tuple[0].simplex.vertices();
    for j in 1..r {
        let other = tuple[j].simplex.vertices();
        for c in 0..d {
            let row = r + (j - 1) * d + c;
            for l in 0..w {
                a[(row, l)] = f.image(first[l])[c].clone();
                a[(row, j * w + l)] = -f.image(other[l])[c].clone();
            }
        }
    }
    let Some(z) = a.solve(&b) else {
        return match feasible_point(&a, &b)? {
            None => Ok(Vec::new()),
            Some(_) => Err(Error::NotGeneric(format!("the intersection on {} is not isolated", display_tuple(tuple)))),
        };
    };
    if z.iter().any(Field::is_strictly_negative) {
        return Ok(Vec::new());
    }
    if z.iter().any(Field::is_negligible) {
        return Err(Error::NotGeneric(format!("an intersection on {} lies on a boundary", display_tuple(tuple))));
    }
    let barycentric: Vec<Vec<F>> = (0..r).map(|j| z[j * w..(j + 1) * w].to_vec()).collect();
    let ambient = f.image_of(&tuple[0].simplex, &barycentric[0]);
    for (s, bary) in tuple.iter().zip(&barycentric).skip(1) {
        let y = f.image_of(&s.simplex, bary);
        assert!(
            y.coords().iter().zip(ambient.coords()).all(|(p, q)| (p.clone() - q.clone()).is_negligible()),
            "r-fold point images disagree"
        );
    }
    let sign = intersection_sign(f, tuple)?;
    Ok(vec![RFoldPoint { simplices: tuple.to_vec(), barycentric, ambient, sign }])
}

fn display_tuple(tuple: &[OrientedSimplex]) -> String {
    let parts: Vec<String> = tuple.iter().map(|s| s.simplex.to_string()).collect();
    format!("({})", parts.join(","))
}

/// All r-fold points over increasing tuples of disjoint top simplices.
pub fn global_r_fold_points<F: Field>(f: &PLMap<F>, r: usize) -> Result<Vec<RFoldPoint<F>>> {
    let (_, m) = f.codimension_data(r)?;
    let mut out = Vec::new();
    for tuple in disjoint_tuples(&f.domain().simplices_of_dim(m), r) {
        let oriented: Vec<OrientedSimplex> = tuple.into_iter().map(OrientedSimplex::positive).collect();
        out.extend(r_fold_points_on(f, &oriented)?);
    }
    Ok(out)
}

/// Signed r-fold point counts on increasing tuples of disjoint top simplices
/// (zeros included). Other orderings follow from `v(ω·e) = sgn(ω)^k v(e)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntersectionTable {
    pub r: usize,
    pub ambient_dim: usize,
    #[serde(with = "table_entries")]
    pub entries: BTreeMap<Vec<Simplex>, i64>,
}

mod table_entries {
    use super::*;

    #[derive(Serialize, Deserialize)]
    struct Entry {
        tuple: Vec<Simplex>,
        value: i64,
    }

    pub fn serialize<S: serde::Serializer>(m: &BTreeMap<Vec<Simplex>, i64>, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(m.iter().map(|(t, &v)| Entry { tuple: t.clone(), value: v }))
    }

    pub fn deserialize<'de, D: serde::Deserializer<'de>>(d: D) -> std::result::Result<BTreeMap<Vec<Simplex>, i64>, D::Error> {
        Ok(Vec::<Entry>::deserialize(d)?.into_iter().map(|e| (e.tuple, e.value)).collect())
    }
}

impl IntersectionTable {
    pub fn k(&self) -> usize {
        self.ambient_dim / self.r
    }

    /// Value on an arbitrary ordering of a tuple.
    pub fn value(&self, tuple: &[Simplex]) -> Option<i64> {
        let mut canon = tuple.to_vec();
        canon.sort();
        let v = *self.entries.get(&canon)?;
        // tuple = ω·canon with ω(a) the position of canon[a] in tuple
        let images: Vec<usize> = canon.iter().map(|c| tuple.iter().position(|t| t == c).expect("same elements")).collect();
        let omega = Permutation::from_images(images).ok()?;
        let s = if self.k() % 2 == 1 { i64::from(omega.sign()) } else { 1 };
        Some(s * v)
    }

    pub fn nonzero(&self) -> impl Iterator<Item = (&Vec<Simplex>, i64)> {
        self.entries.iter().filter(|(_, &v)| v != 0).map(|(t, &v)| (t, v))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.values().all(|&v| v == 0)
    }

    pub fn abs_sum(&self) -> i64 {
        self.entries.values().map(|v| v.abs()).sum()
    }
}

/// The intersection cocycle `v(f)`.
pub fn intersection_cocycle<F: Field>(f: &PLMap<F>, r: usize) -> Result<IntersectionTable> {
    let (_, m) = f.codimension_data(r)?;
    let mut entries = BTreeMap::new();
    for tuple in disjoint_tuples(&f.domain().simplices_of_dim(m), r) {
        let oriented: Vec<OrientedSimplex> = tuple.iter().cloned().map(OrientedSimplex::positive).collect();
        let total: i64 = r_fold_points_on(f, &oriented)?.iter().map(|p| i64::from(p.sign)).sum();
        entries.insert(tuple, total);
    }
    Ok(IntersectionTable { r, ambient_dim: f.ambient_dim(), entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{simplex_skeleton, Complex};
    use crate::pl_maps::tests::map;

    fn s(v: &[usize]) -> Simplex {
        Simplex::new(v.to_vec()).unwrap()
    }

    #[test]
    fn x_crossing() {
        let k = Complex::from_maximal_simplices(4, &[vec![0, 1], vec![2, 3]]).unwrap();
        let f = map(k, &[&[0, 0], &[2, 2], &[0, 2], &[2, 0]]);
        let pts = global_r_fold_points(&f, 2).unwrap();
        assert_eq!(pts.len(), 1);
        assert_eq!(pts[0].ambient, Point::from_i64s(&[1, 1]));
        let flipped = vec![OrientedSimplex::positive(s(&[0, 1])).negated(), OrientedSimplex::positive(s(&[2, 3]))];
        assert_eq!(r_fold_points_on(&f, &flipped).unwrap()[0].sign, -pts[0].sign);
    }

    #[test]
    fn coordinate_planes_triple_point() {
        let k = Complex::from_maximal_simplices(9, &[vec![0, 1, 2], vec![3, 4, 5], vec![6, 7, 8]]).unwrap();
        let f = map(
            k,
            &[
                &[0, -1, -1], &[0, 2, -1], &[0, -1, 2],
                &[-1, 0, -1], &[-1, 0, 2], &[2, 0, -1],
                &[-1, -1, 0], &[2, -1, 0], &[-1, 2, 0],
            ],
        );
        let pts = global_r_fold_points(&f, 3).unwrap();
        assert_eq!(pts.len(), 1);
        assert_eq!(pts[0].ambient, Point::origin(3));
        assert_eq!(pts[0].sign, 1);
    }

    #[test]
    fn pentagon_k5_has_five_crossings() {
        let f = map(simplex_skeleton(4, 1).unwrap(), &[&[0, 10], &[10, 3], &[6, -8], &[-6, -8], &[-10, 3]]);
        let v = intersection_cocycle(&f, 2).unwrap();
        assert_eq!(v.nonzero().count(), 5);
        assert_eq!(v.abs_sum(), 5);
    }

    #[test]
    fn degenerate_inputs_are_flagged() {
        let k = Complex::from_maximal_simplices(4, &[vec![0, 1], vec![2, 3]]).unwrap();
        let touching = map(k.clone(), &[&[0, 0], &[2, 0], &[1, 0], &[1, 2]]);
        assert!(matches!(global_r_fold_points(&touching, 2), Err(Error::NotGeneric(_))));
        let overlapping = map(k, &[&[0, 0], &[2, 0], &[1, 0], &[3, 0]]);
        assert!(matches!(global_r_fold_points(&overlapping, 2), Err(Error::NotGeneric(_))));
    }
}
