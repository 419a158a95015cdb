//! PL maps given by vertex images: signed r-fold points, the intersection
//! cocycle, an independent coned-extension count, almost-embedding checks
//! and the join and constraint constructions.

mod construct;
mod oracle;
mod rfold;

use std::collections::BTreeSet;

use num_bigint::BigInt;
use rand::Rng;

use crate::complex::{are_disjoint, Complex, Simplex};
use crate::convex::hulls_intersect;
use crate::error::{Error, Result};
use crate::point::Point;
use crate::random::{rng, InstanceRng};
use crate::scalar::Field;
use crate::Rational;

pub use construct::{constraint_lift, join_extension, ConstraintLift};
pub use oracle::{coned_extension_oracle, coned_extension_oracle_seeded, oracle_sign_constant, seeded_apexes};
pub use rfold::{
    global_r_fold_points, intersection_cocycle, r_fold_points_on, IntersectionTable, RFoldPoint,
};

/// A map of a complex into `F^d`, linear on each simplex.
#[derive(Clone, Debug, PartialEq)]
pub struct PLMap<F = Rational> {
    domain: Complex,
    ambient_dim: usize,
    images: Vec<Point<F>>,
}

impl<F: Field> PLMap<F> {
    pub fn new(domain: Complex, ambient_dim: usize, images: Vec<Point<F>>) -> Result<Self> {
        if images.len() != domain.num_vertices() {
            return Err(Error::ShapeError(format!(
                "{} images for {} vertices",
                images.len(),
                domain.num_vertices()
            )));
        }
        if let Some(p) = images.iter().find(|p| p.dim() != ambient_dim) {
            return Err(Error::ShapeError(format!("image of dimension {} in R^{ambient_dim}", p.dim())));
        }
        Ok(PLMap { domain, ambient_dim, images })
    }

    pub fn domain(&self) -> &Complex {
        &self.domain
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn images(&self) -> &[Point<F>] {
        &self.images
    }

    pub fn image(&self, v: usize) -> &Point<F> {
        &self.images[v]
    }

    /// Image of a point of `s` given by barycentric coordinates.
    pub fn image_of(&self, s: &Simplex, bary: &[F]) -> Point<F> {
        let pts: Vec<&Point<F>> = s.vertices().iter().map(|&v| &self.images[v]).collect();
        Point::combination(&pts, bary)
    }

    fn simplex_images(&self, s: &Simplex) -> Vec<Point<F>> {
        s.vertices().iter().map(|&v| self.images[v].clone()).collect()
    }

    /// `(k, m)` with `d = k r` and `m = k (r − 1)` the domain dimension.
    pub fn codimension_data(&self, r: usize) -> Result<(usize, usize)> {
        if r < 2 {
            return Err(Error::InvalidMultiplicity(r));
        }
        let d = self.ambient_dim;
        let dim = self.domain.dim().unwrap_or(0);
        if d == 0 || d % r != 0 || dim != (d / r) * (r - 1) {
            return Err(Error::InvalidArgument(format!(
                "r-fold points need a domain of dimension k(r-1) in R^(kr); got dimension {dim} in R^{d} with r = {r}"
            )));
        }
        Ok((d / r, dim))
    }

    /// Whether no `r` pairwise disjoint simplices have intersecting images,
    /// decided by exact hull feasibility.
    pub fn is_almost_r_embedding(&self, r: usize) -> Result<bool> {
        if r < 2 {
            return Err(Error::InvalidMultiplicity(r));
        }
        let simplices: Vec<Simplex> = self.domain.simplices().cloned().collect();
        let mut found = false;
        let mut err = None;
        for_each_disjoint_tuple(&simplices, r, &mut |tuple| {
            if !is_maximal_disjoint(&self.domain, tuple) {
                return true;
            }
            let groups: Vec<Vec<Point<F>>> = tuple.iter().map(|s| self.simplex_images(s)).collect();
            match hulls_intersect(&groups) {
                Ok(Some(_)) => {
                    found = true;
                    false
                }
                Ok(None) => true,
                Err(e) => {
                    err = Some(e);
                    false
                }
            }
        });
        if let Some(e) = err {
            return Err(e);
        }
        Ok(!found)
    }
}

pub fn is_almost_r_embedding<F: Field>(f: &PLMap<F>, r: usize) -> Result<bool> {
    f.is_almost_r_embedding(r)
}

/// No factor can be enlarged to a simplex of `k` while keeping the tuple
/// pairwise disjoint. Intersections are inherited by such enlargements.
fn is_maximal_disjoint(k: &Complex, tuple: &[Simplex]) -> bool {
    let used: BTreeSet<usize> = tuple.iter().flat_map(|s| s.vertices().iter().copied()).collect();
    tuple.iter().all(|s| {
        (0..k.num_vertices()).filter(|v| !used.contains(v)).all(|v| {
            let mut bigger = s.vertices().to_vec();
            bigger.push(v);
            !k.contains(&Simplex::new(bigger).expect("fresh vertex"))
        })
    })
}

/// Increasing tuples of pairwise disjoint simplices from `list`.
pub(crate) fn for_each_disjoint_tuple(list: &[Simplex], r: usize, f: &mut dyn FnMut(&[Simplex]) -> bool) {
    fn go(list: &[Simplex], start: usize, r: usize, cur: &mut Vec<Simplex>, f: &mut dyn FnMut(&[Simplex]) -> bool) -> bool {
        if cur.len() == r {
            return f(cur);
        }
        for i in start..list.len() {
            if cur.iter().all(|s| are_disjoint(s, &list[i])) {
                cur.push(list[i].clone());
                let more = go(list, i + 1, r, cur, f);
                cur.pop();
                if !more {
                    return false;
                }
            }
        }
        true
    }
    go(list, 0, r, &mut Vec::with_capacity(r), f);
}

pub(crate) fn disjoint_tuples(list: &[Simplex], r: usize) -> Vec<Vec<Simplex>> {
    let mut out = Vec::new();
    for_each_disjoint_tuple(list, r, &mut |t| {
        out.push(t.to_vec());
        true
    });
    out
}

impl PLMap<Rational> {
    /// Largest coordinate range of the images (the L∞ diameter of their
    /// bounding box); 1 when all images coincide.
    pub fn linf_diameter(&self) -> Rational {
        let mut best = Rational::from_i64(0);
        for c in 0..self.ambient_dim {
            let vals = self.images.iter().map(|p| &p[c]);
            let lo = vals.clone().min().cloned();
            let hi = vals.max().cloned();
            if let (Some(lo), Some(hi)) = (lo, hi) {
                if hi.clone() - lo.clone() > best {
                    best = hi - lo;
                }
            }
        }
        if best == Rational::from_i64(0) {
            Rational::from_i64(1)
        } else {
            best
        }
    }

    /// Moves every image coordinate by at most `diameter / 2^40`, with
    /// offsets drawn from `seed`.
    pub fn perturbed(&self, seed: u64) -> PLMap<Rational> {
        const STEPS: i64 = 1 << 20;
        let unit = self.linf_diameter() / Rational::from_integer(BigInt::from(1u64 << 40) * BigInt::from(STEPS));
        let mut g: InstanceRng = rng(seed);
        let images = self
            .images
            .iter()
            .map(|p| {
                Point::new(
                    p.coords().iter().map(|x| x.clone() + unit.clone() * Rational::from_i64(g.gen_range(-STEPS..=STEPS))).collect(),
                )
            })
            .collect();
        PLMap { domain: self.domain.clone(), ambient_dim: self.ambient_dim, images }
    }

    /// Runs `op` on the map, then on perturbations seeded `seed`, `seed+1`, …
    /// while it reports [`Error::NotGeneric`]. Returns the result and the
    /// seed used (`None` for the unperturbed map).
    pub fn with_generic_retries<T>(
        &self,
        seed: u64,
        attempts: u32,
        mut op: impl FnMut(&PLMap<Rational>) -> Result<T>,
    ) -> Result<(T, Option<u64>)> {
        match op(self) {
            Err(Error::NotGeneric(_)) => {}
            other => return other.map(|t| (t, None)),
        }
        let mut last = Error::NotGeneric("no attempts made".into());
        for i in 0..u64::from(attempts) {
            let s = seed.wrapping_add(i);
            match op(&self.perturbed(s)) {
                Err(Error::NotGeneric(msg)) => last = Error::NotGeneric(msg),
                other => return other.map(|t| (t, Some(s))),
            }
        }
        Err(last)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{full_simplex, simplex_skeleton};
    use num_traits::Signed;

    pub(crate) fn map(k: Complex, pts: &[&[i64]]) -> PLMap {
        let d = pts[0].len();
        PLMap::new(k, d, pts.iter().map(|p| Point::from_i64s(p)).collect()).unwrap()
    }

    #[test]
    fn almost_embedding_checks() {
        let tri = map(full_simplex(2).unwrap(), &[&[0, 0], &[1, 0], &[0, 1]]);
        assert!(tri.is_almost_r_embedding(2).unwrap());
        let k4 = map(simplex_skeleton(3, 1).unwrap(), &[&[0, 0], &[3, 0], &[2, 2], &[0, 3]]);
        assert!(!k4.is_almost_r_embedding(2).unwrap());
        let line = map(full_simplex(3).unwrap(), &[&[0], &[1], &[2], &[3]]);
        assert!(!line.is_almost_r_embedding(2).unwrap());
    }

    #[test]
    fn perturbation_is_small_and_deterministic() {
        let k4 = map(simplex_skeleton(3, 1).unwrap(), &[&[0, 0], &[3, 0], &[2, 2], &[0, 3]]);
        let a = k4.perturbed(5);
        assert_eq!(a, k4.perturbed(5));
        assert_ne!(a, k4.perturbed(6));
        let bound = Rational::from_i64(3) / Rational::from_integer(BigInt::from(1u64 << 40));
        for (p, q) in a.images().iter().zip(k4.images()) {
            for (x, y) in p.coords().iter().zip(q.coords()) {
                assert!((x.clone() - y.clone()).abs() <= bound);
            }
        }
    }
}
