//! Integer matrices, Smith normal form, and cellular homology over the
//! integers or a prime field.

mod matrix;
mod snf;
mod sparse;

use std::fmt;
use std::str::FromStr;

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::deleted_product::DeletedProduct;
use crate::error::{Error, Result};
use crate::sym_group::is_prime;
use crate::Integer;

pub use matrix::IntMatrix;
pub use snf::{smith_normal_form, solve_integer_system, InfeasibilityCertificate, IntegerSolution, SmithForm};
pub use sparse::SparseIntMatrix;

/// Coefficient ring for homology.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Coefficients {
    Integers,
    Prime(u64),
}

impl Coefficients {
    pub fn prime(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(Coefficients::Prime(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }
}

impl fmt::Display for Coefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficients::Integers => write!(f, "Z"),
            Coefficients::Prime(p) => write!(f, "Z/{p}"),
        }
    }
}

impl FromStr for Coefficients {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "Z" => Ok(Coefficients::Integers),
            other => {
                let p = other.strip_prefix("Z/").unwrap_or(other);
                let p: u64 = p.parse().map_err(|_| Error::InvalidArgument(format!("unknown coefficient ring {s:?}")))?;
                Coefficients::prime(p)
            }
        }
    }
}

impl Serialize for Coefficients {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Coefficients {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// One homology group: `Z^rank ⊕ ⊕ Z/t_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyGroup {
    pub rank: usize,
    #[serde(with = "crate::io::integer_list")]
    pub torsion: Vec<Integer>,
}

impl HomologyGroup {
    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyReport {
    pub ring: Coefficients,
    /// Indexed by dimension.
    pub groups: Vec<HomologyGroup>,
}

impl HomologyReport {
    pub fn betti_numbers(&self) -> Vec<usize> {
        self.groups.iter().map(|g| g.rank).collect()
    }

    /// Reduced homology: one copy of the coefficients removed from `H_0`.
    pub fn reduced(&self) -> HomologyReport {
        let mut groups = self.groups.clone();
        if let Some(g) = groups.first_mut() {
            g.rank = g.rank.saturating_sub(1);
        }
        HomologyReport { ring: self.ring, groups }
    }

    /// Whether some torsion coefficient is divisible by `p`.
    pub fn has_p_torsion(&self, p: u64) -> bool {
        let p = Integer::from(p);
        self.groups.iter().flat_map(|g| &g.torsion).any(|t| (t % &p) == Integer::from(0))
    }
}

/// Checks shapes and `∂_{k-1} ∂_k = 0`. `boundaries[k]` maps `C_k` to
/// `C_{k-1}`; `boundaries[0]` has zero rows and fixes the number of 0-cells.
pub fn check_chain_complex(boundaries: &[SparseIntMatrix]) -> Result<()> {
    if let Some(b0) = boundaries.first() {
        if b0.rows() != 0 {
            return Err(Error::ShapeError("the degree-0 boundary must have no rows".into()));
        }
    }
    for k in 1..boundaries.len() {
        if boundaries[k].rows() != boundaries[k - 1].cols() {
            return Err(Error::ShapeError(format!(
                "boundary {k} has {} rows but there are {} cells in degree {}",
                boundaries[k].rows(),
                boundaries[k - 1].cols(),
                k - 1
            )));
        }
        if k >= 2 && !boundaries[k - 1].mul(&boundaries[k])?.is_zero() {
            return Err(Error::NotAChainComplex(k));
        }
    }
    Ok(())
}

/// Cellular homology of the chain complex given by its boundary matrices.
pub fn homology(boundaries: &[SparseIntMatrix], ring: Coefficients) -> Result<HomologyReport> {
    check_chain_complex(boundaries)?;
    let top = boundaries.len();
    let mut ranks = Vec::with_capacity(top + 1);
    let mut factors: Vec<Vec<Integer>> = Vec::with_capacity(top + 1);
    for b in boundaries {
        match ring {
            Coefficients::Integers => {
                let f = b.invariant_factors();
                ranks.push(f.len());
                factors.push(f);
            }
            Coefficients::Prime(p) => {
                ranks.push(b.rank_mod_p(p));
                factors.push(Vec::new());
            }
        }
    }
    ranks.push(0);
    factors.push(Vec::new());
    let groups = (0..top)
        .map(|k| HomologyGroup {
            rank: boundaries[k].cols() - ranks[k] - ranks[k + 1],
            torsion: factors[k + 1].iter().filter(|t| !t.is_one()).cloned().collect(),
        })
        .collect();
    Ok(HomologyReport { ring, groups })
}

/// Dense-input variant of [`homology`]; entries must fit in `i64`.
pub fn homology_dense(boundaries: &[IntMatrix], ring: Coefficients) -> Result<HomologyReport> {
    let sparse = boundaries
        .iter()
        .map(|m| {
            let columns = (0..m.cols())
                .map(|j| {
                    (0..m.rows())
                        .filter(|&i| m[(i, j)] != Integer::from(0))
                        .map(|i| {
                            i64::try_from(&m[(i, j)])
                                .map(|x| (i, x))
                                .map_err(|_| Error::InvalidArgument("boundary entry exceeds 64 bits".into()))
                        })
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            SparseIntMatrix::new(m.rows(), columns)
        })
        .collect::<Result<Vec<_>>>()?;
    homology(&sparse, ring)
}

/// Largest `j` with reduced `H_i = 0` for all `i ≤ j`; `-1` when `H_0` is
/// not a single copy of the ring. When every reduced group vanishes the top
/// dimension is returned.
pub fn connectivity_from_report(report: &HomologyReport) -> i64 {
    let reduced = report.reduced();
    let mut j = -1i64;
    for g in &reduced.groups {
        if !g.is_trivial() {
            break;
        }
        j += 1;
    }
    j.min(reduced.groups.len() as i64 - 1)
}

/// Homology of a deleted product.
pub fn deleted_product_homology(dp: &DeletedProduct, ring: Coefficients) -> Result<HomologyReport> {
    homology(dp.boundaries(), ring)
}

/// Homological connectivity of a non-empty deleted product over the integers.
pub fn homological_connectivity(dp: &DeletedProduct) -> Result<i64> {
    if dp.is_empty() {
        return Err(Error::EmptyComplex);
    }
    Ok(connectivity_from_report(&deleted_product_homology(dp, Coefficients::Integers)?))
}
