//! Permutations of `{0..r-1}`, finite permutation groups, the tree model of
//! Sylow subgroups and the matrix-sphere model with its column action.

mod sphere;
mod sylow;

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use sphere::{invariant_matrix_point, invariant_matrix_point_for_split, pi_projection, MatrixSpherePoint};
pub use sylow::{is_prime, p_order_in_factorial, sylow_tree_subgroup, PAdicTree};

/// A bijection of `{0..n-1}`, stored by images.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    images: Vec<usize>,
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.images)
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;
    fn try_from(images: Vec<usize>) -> Result<Self> {
        Permutation::from_images(images)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Vec<usize> {
        p.images
    }
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n).collect() }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::InvalidArgument(format!("{images:?} is not a permutation")));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(a, b);
        Permutation { images }
    }

    /// The cycle `c[0] -> c[1] -> ... -> c[0]`.
    pub fn cycle(n: usize, c: &[usize]) -> Self {
        let mut images: Vec<usize> = (0..n).collect();
        for (i, &x) in c.iter().enumerate() {
            images[x] = c[(i + 1) % c.len()];
        }
        Permutation { images }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree());
        Permutation { images: other.images.iter().map(|&i| self.images[i]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j] = i;
        }
        Permutation { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut c = vec![start];
            seen[start] = true;
            let mut x = self.images[start];
            while x != start {
                seen[x] = true;
                c.push(x);
                x = self.images[x];
            }
            out.push(c);
        }
        out
    }

    /// Parity as +1 or -1.
    pub fn sign(&self) -> i8 {
        let even_cycles = self.cycles().iter().filter(|c| c.len() % 2 == 0).count();
        if even_cycles % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn order(&self) -> u64 {
        self.cycles().iter().fold(1u64, |acc, c| num_integer::lcm(acc, c.len() as u64))
    }

    /// All permutations of `{0..n-1}` in lexicographic order of their images.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (0..n).collect();
        loop {
            out.push(Permutation { images: cur.clone() });
            // next lexicographic permutation
            let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else { break };
            let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
            cur.swap(i - 1, j);
            cur[i..].reverse();
        }
        out
    }
}

/// A permutation group given by generators; elements are materialized on demand.
#[derive(Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    elements: OnceLock<Vec<Permutation>>,
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PermGroup")
            .field("degree", &self.degree)
            .field("generators", &self.generators)
            .finish()
    }
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(Error::InvalidArgument(format!("generator {g:?} has wrong degree")));
        }
        let generators = generators.into_iter().filter(|g| !g.is_identity()).collect();
        Ok(PermGroup { degree, generators, elements: OnceLock::new() })
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup { degree, generators: Vec::new(), elements: OnceLock::new() }
    }

    /// The full symmetric group, generated by adjacent transpositions.
    pub fn symmetric(degree: usize) -> Self {
        let generators = (0..degree.saturating_sub(1))
            .map(|i| Permutation::transposition(degree, i, i + 1))
            .collect();
        PermGroup { degree, generators, elements: OnceLock::new() }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// Sorted list of all elements (closure under the generators).
    pub fn elements(&self) -> &[Permutation] {
        self.elements.get_or_init(|| {
            let id = Permutation::identity(self.degree);
            let mut seen: HashSet<Permutation> = HashSet::from([id.clone()]);
            let mut queue = VecDeque::from([id]);
            while let Some(x) = queue.pop_front() {
                for g in &self.generators {
                    let y = g.compose(&x);
                    if seen.insert(y.clone()) {
                        queue.push_back(y);
                    }
                }
            }
            let mut v: Vec<Permutation> = seen.into_iter().collect();
            v.sort();
            v
        })
    }

    pub fn order(&self) -> usize {
        self.elements().len()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.elements().binary_search(p).is_ok()
    }

    /// Orbits of `{0..degree-1}`, each sorted, listed by smallest element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for start in 0..self.degree {
            if seen[start] {
                continue;
            }
            let mut orbit = BTreeSet::from([start]);
            seen[start] = true;
            let mut stack = vec![start];
            while let Some(x) = stack.pop() {
                for g in &self.generators {
                    let y = g.apply(x);
                    if !seen[y] {
                        seen[y] = true;
                        orbit.insert(y);
                        stack.push(y);
                    }
                }
            }
            out.push(orbit.into_iter().collect());
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.orbits().len() <= 1
    }

    /// Whether every generator maps `set` onto itself.
    pub fn preserves_set(&self, set: &[usize]) -> bool {
        let s: BTreeSet<usize> = set.iter().copied().collect();
        self.generators.iter().all(|g| set.iter().all(|&x| s.contains(&g.apply(x))))
    }

    /// Representatives `f_1..f_s` of the right cosets `G f_i` in the full
    /// symmetric group, found by breadth-first search from the identity over
    /// adjacent transpositions in increasing order.
    pub fn right_coset_representatives(&self) -> Vec<Permutation> {
        let elements = self.elements();
        let n = self.degree;
        let gens: Vec<Permutation> = (0..n.saturating_sub(1)).map(|i| Permutation::transposition(n, i, i + 1)).collect();
        let id = Permutation::identity(n);
        let mut covered: HashSet<Permutation> = HashSet::new();
        let mut visited: HashSet<Permutation> = HashSet::from([id.clone()]);
        let mut queue = VecDeque::from([id]);
        let mut reps = Vec::new();
        while let Some(f) = queue.pop_front() {
            if !covered.contains(&f) {
                for g in elements {
                    covered.insert(g.compose(&f));
                }
                reps.push(f.clone());
            }
            for t in &gens {
                let next = f.compose(t);
                if visited.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
        reps
    }
}

/// A split `{0..r-1} = first ⊔ second` into unions of orbits.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockSplit {
    pub k: usize,
    pub first: Vec<usize>,
    pub second: Vec<usize>,
}

/// The orbit of 0 against everything else; requires a non-transitive group.
pub fn invariant_block_split(g: &PermGroup) -> Result<BlockSplit> {
    let orbits = g.orbits();
    if orbits.len() <= 1 {
        return Err(Error::NoSplit);
    }
    let first = orbits[0].clone();
    let second: Vec<usize> = orbits[1..].iter().flatten().copied().collect::<BTreeSet<_>>().into_iter().collect();
    Ok(BlockSplit { k: first.len(), first, second })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn signs() {
        assert_eq!(Permutation::identity(4).sign(), 1);
        assert_eq!(Permutation::transposition(4, 1, 3).sign(), -1);
        assert_eq!(Permutation::cycle(4, &[0, 1, 2]).sign(), 1);
    }

    #[test]
    fn composition_and_inverse() {
        let a = Permutation::cycle(3, &[0, 1, 2]);
        let b = Permutation::transposition(3, 0, 1);
        assert_eq!(a.compose(&b).apply(0), a.apply(b.apply(0)));
        assert!(a.compose(&a.inverse()).is_identity());
        assert_eq!(a.order(), 3);
    }

    #[test]
    fn all_permutations_sorted() {
        let all = Permutation::all(4);
        assert_eq!(all.len(), 24);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(PermGroup::symmetric(4).elements(), &all[..]);
    }

    #[test]
    fn coset_representatives_partition_the_symmetric_group() {
        let g = PermGroup::new(4, vec![Permutation::cycle(4, &[0, 1, 2])]).unwrap();
        let reps = g.right_coset_representatives();
        assert_eq!(reps.len(), 8);
        let mut all: Vec<Permutation> =
            reps.iter().flat_map(|f| g.elements().iter().map(move |x| x.compose(f))).collect();
        all.sort();
        all.dedup();
        assert_eq!(all.len(), 24);
        assert!(reps[0].is_identity());
    }

    #[test]
    fn trivial_group_split() {
        let g = PermGroup::trivial(2);
        assert!(!g.is_transitive());
        let s = invariant_block_split(&g).unwrap();
        assert_eq!((s.k, 2 - s.k), (1, 1));
        assert_eq!(invariant_block_split(&PermGroup::symmetric(3)), Err(Error::NoSplit));
    }
}
