use crate::error::{Error, Result};

use super::{PermGroup, Permutation};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Exponent of `p` in `r!`, i.e. `Σ_k floor(r / p^k)`.
pub fn p_order_in_factorial(r: u64, p: u64) -> Result<u32> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let mut alpha = 0u64;
    let mut q = p;
    while q <= r {
        alpha += r / q;
        match q.checked_mul(p) {
            Some(next) => q = next,
            None => break,
        }
    }
    Ok(alpha as u32)
}

/// A rotatable vertex of the truncated p-adic tree: its leaves form the
/// complete block `start..start + size`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeVertex {
    pub level: usize,
    pub start: usize,
    pub size: usize,
}

/// The p-adic tree of depth `L = ⌈log_p r⌉`. A word `a_1…a_L` is the leaf
/// `Σ a_i p^{L-i}`; only leaves below `r` and their ancestors are kept.
#[derive(Clone, Debug)]
pub struct PAdicTree {
    pub r: usize,
    pub p: usize,
    pub depth: usize,
}

impl PAdicTree {
    pub fn new(r: usize, p: usize) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        let mut depth = 0;
        let mut size = 1usize;
        while size < r {
            size *= p;
            depth += 1;
        }
        Ok(PAdicTree { r, p, depth })
    }

    /// Vertices whose `p` children carry isomorphic subtrees. These are
    /// exactly the vertices whose leaf block is complete.
    pub fn rotatable_vertices(&self) -> Vec<TreeVertex> {
        let mut out = Vec::new();
        let mut size = self.p;
        for level in (0..self.depth).rev() {
            let mut start = 0;
            while start + size <= self.r {
                out.push(TreeVertex { level, start, size });
                start += size;
            }
            size *= self.p;
        }
        out
    }

    /// The child rotation at `v`: the digit just below `v` is shifted by one
    /// modulo `p` inside the block, everything else is fixed.
    pub fn rotation(&self, v: &TreeVertex) -> Permutation {
        let step = v.size / self.p;
        let images = (0..self.r)
            .map(|x| {
                if x < v.start || x >= v.start + v.size {
                    return x;
                }
                let offset = x - v.start;
                let digit = offset / step;
                v.start + ((digit + 1) % self.p) * step + offset % step
            })
            .collect();
        Permutation { images }
    }

    pub fn generators(&self) -> Vec<Permutation> {
        self.rotatable_vertices().iter().map(|v| self.rotation(v)).collect()
    }
}

/// The automorphism group of the truncated p-adic tree acting on leaves
/// `{0..r-1}`; a Sylow p-subgroup of `Σ_r` of order `p^{α_p}`.
/// Primes above `r` give the trivial group.
pub fn sylow_tree_subgroup(r: usize, p: usize) -> Result<PermGroup> {
    let tree = PAdicTree::new(r, p)?;
    if p > r {
        return Ok(PermGroup::trivial(r));
    }
    PermGroup::new(r, tree.generators())
}
