//! Points of `F^d`, serialized as lists of strings (`"p/q"` for rationals).

use std::fmt;
use std::ops::Index;
use std::str::FromStr;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::scalar::Field;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point<F> {
    coords: Vec<F>,
}

impl<F: fmt::Debug> fmt::Debug for Point<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("Point").field(&self.coords).finish()
    }
}

impl<F: fmt::Display> fmt::Display for Point<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl<F> Point<F> {
    pub fn new(coords: Vec<F>) -> Self {
        Point { coords }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[F] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<F> {
        self.coords
    }
}

impl<F: Field> Point<F> {
    pub fn origin(d: usize) -> Self {
        Point { coords: vec![F::zero(); d] }
    }

    pub fn from_i64s(c: &[i64]) -> Self {
        Point { coords: c.iter().map(|&x| F::from_i64(x)).collect() }
    }

    pub fn sub(&self, other: &Self) -> Vec<F> {
        self.coords.iter().zip(&other.coords).map(|(a, b)| a.clone() - b.clone()).collect()
    }

    pub fn scaled_translated(&self, scale: &F, shift: &[F]) -> Self {
        Point { coords: self.coords.iter().zip(shift).map(|(x, t)| x.clone() * scale.clone() + t.clone()).collect() }
    }

    /// Convex (or affine) combination `Σ λ_i p_i`.
    pub fn combination(points: &[&Point<F>], weights: &[F]) -> Self {
        let d = points.first().map_or(0, |p| p.dim());
        let mut coords = vec![F::zero(); d];
        for (p, w) in points.iter().zip(weights) {
            for (c, x) in coords.iter_mut().zip(&p.coords) {
                *c = c.clone() + w.clone() * x.clone();
            }
        }
        Point { coords }
    }
}

impl<F> Index<usize> for Point<F> {
    type Output = F;
    fn index(&self, i: usize) -> &F {
        &self.coords[i]
    }
}

impl<F: fmt::Display> Serialize for Point<F> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.coords.iter().map(|c| c.to_string()))
    }
}

impl<'de, F: FromStr> Deserialize<'de> for Point<F>
where
    F::Err: fmt::Display,
{
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        let coords = raw
            .iter()
            .map(|s| s.trim().parse::<F>().map_err(|e| D::Error::custom(format!("bad coordinate {s:?}: {e}"))))
            .collect::<Result<Vec<F>, _>>()?;
        Ok(Point { coords })
    }
}
