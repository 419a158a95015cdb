use std::collections::BTreeMap;

use crate::complex::{full_simplex, Complex, Simplex};
use crate::error::{Error, Result};
use crate::point::Point;
use crate::scalar::Field;
use crate::sym_group::Permutation;

use super::PLMap;

/// Join of `f : Δ_N → R^d` with the map sending `r − 1` new vertices to
/// `(0, …, 0, 1)`: old vertices go to `(f(e_i), 0)`.
pub fn join_extension<F: Field>(f: &PLMap<F>, r: usize) -> Result<PLMap<F>> {
    if r < 2 {
        return Err(Error::InvalidMultiplicity(r));
    }
    if !f.domain().is_full_simplex() {
        return Err(Error::InvalidArgument("join extension needs a map of the full simplex".into()));
    }
    let n = f.domain().num_vertices();
    let d = f.ambient_dim();
    let mut images: Vec<Point<F>> = f
        .images()
        .iter()
        .map(|p| {
            let mut c = p.coords().to_vec();
            c.push(F::zero());
            Point::new(c)
        })
        .collect();
    let mut top = vec![F::zero(); d];
    top.push(F::one());
    images.extend(std::iter::repeat_with(|| Point::new(top.clone())).take(r - 1));
    PLMap::new(full_simplex(n + r - 2)?, d + 1, images)
}

/// `f × ρ̂` on the barycentric subdivision of `Δ_N`, together with the face
/// of `Δ_N` whose barycenter each subdivision vertex is.
#[derive(Clone, Debug)]
pub struct ConstraintLift<F> {
    pub map: PLMap<F>,
    pub carriers: Vec<Simplex>,
    pub skeleton: usize,
}

impl<F: Field> ConstraintLift<F> {
    /// Value of `ρ̂` at a subdivision vertex.
    pub fn height(&self, v: usize) -> &F {
        let p = self.map.image(v);
        &p[p.dim() - 1]
    }

    /// `ρ̂` vanishes on a subdivision simplex iff its largest carrier lies in
    /// the s-skeleton.
    pub fn vanishes_exactly_on_skeleton(&self) -> bool {
        self.map.domain().simplices().all(|chain| {
            let zero = chain.vertices().iter().all(|&v| self.height(v).is_negligible());
            let carrier_dim = chain.vertices().iter().map(|&v| self.carriers[v].dim()).max().unwrap_or(0);
            zero == (carrier_dim <= self.skeleton)
        })
    }
}

/// The barycentric subdivision vertex for face `σ` maps to
/// `(f(barycenter σ), max(0, dim σ − s))`.
pub fn constraint_lift<F: Field>(f: &PLMap<F>, s: usize) -> Result<ConstraintLift<F>> {
    let k = f.domain();
    if !k.is_full_simplex() {
        return Err(Error::InvalidArgument("constraint lift needs a map of the full simplex".into()));
    }
    let n = k.num_vertices() - 1;
    if s >= n {
        return Err(Error::InvalidSkeleton { n, s: s as i64 });
    }
    let faces: Vec<Simplex> = k.simplices().cloned().collect();
    let id: BTreeMap<&Simplex, usize> = faces.iter().enumerate().map(|(i, x)| (x, i)).collect();
    let flags: Vec<Vec<usize>> = Permutation::all(n + 1)
        .iter()
        .map(|p| {
            (1..=n + 1)
                .map(|len| id[&Simplex::new(p.images()[..len].to_vec()).expect("distinct vertices")])
                .collect()
        })
        .collect();
    let sd = Complex::from_maximal_simplices(faces.len(), &flags)?;
    let images = faces
        .iter()
        .map(|face| {
            let w = F::one() / F::from_i64(face.vertices().len() as i64);
            let weights = vec![w; face.vertices().len()];
            let mut c = f.image_of(face, &weights).into_coords();
            c.push(F::from_i64(face.dim().saturating_sub(s) as i64));
            Point::new(c)
        })
        .collect();
    Ok(ConstraintLift { map: PLMap::new(sd, f.ambient_dim() + 1, images)?, carriers: faces, skeleton: s })
}
