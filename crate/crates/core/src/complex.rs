//! Finite abstract simplicial complexes over dense integer vertex ids.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Upper bound on the number of faces a complex may be closed up to.
pub const MAX_FACES: usize = 1 << 22;

/// A simplex, stored as its strictly increasing vertex list.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Simplex(Vec<usize>);

impl Simplex {
    /// Sorts the vertices; rejects empty input and repeated vertices.
    pub fn new(mut vertices: Vec<usize>) -> Result<Self> {
        vertices.sort_unstable();
        if vertices.is_empty() {
            return Err(Error::InvalidComplex("empty simplex".into()));
        }
        if vertices.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidComplex(format!("repeated vertex in {vertices:?}")));
        }
        Ok(Simplex(vertices))
    }

    pub(crate) fn from_sorted(vertices: Vec<usize>) -> Self {
        debug_assert!(!vertices.is_empty() && vertices.windows(2).all(|w| w[0] < w[1]));
        Simplex(vertices)
    }

    pub fn vertex(v: usize) -> Self {
        Simplex(vec![v])
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn contains_vertex(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    /// Facets in boundary order: the i-th facet omits the i-th vertex.
    pub fn facets(&self) -> Vec<Simplex> {
        if self.0.len() == 1 {
            return Vec::new();
        }
        (0..self.0.len())
            .map(|i| {
                let mut v = self.0.clone();
                v.remove(i);
                Simplex(v)
            })
            .collect()
    }

    /// All non-empty faces, including the simplex itself.
    pub fn faces(&self) -> Vec<Simplex> {
        let n = self.0.len();
        (1u64..(1u64 << n))
            .map(|mask| {
                Simplex((0..n).filter(|i| mask >> i & 1 == 1).map(|i| self.0[i]).collect())
            })
            .collect()
    }

    pub fn is_face_of(&self, other: &Simplex) -> bool {
        self.0.iter().all(|v| other.contains_vertex(*v))
    }

    /// Vertex bitmask; only valid when every vertex id is below 64.
    pub(crate) fn mask(&self) -> u64 {
        self.0.iter().fold(0u64, |m, &v| m | (1u64 << v))
    }

    pub(crate) fn from_mask(mask: u64) -> Self {
        let mut v = Vec::with_capacity(mask.count_ones() as usize);
        let mut m = mask;
        while m != 0 {
            v.push(m.trailing_zeros() as usize);
            m &= m - 1;
        }
        Simplex(v)
    }
}

impl TryFrom<Vec<usize>> for Simplex {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Simplex::new(v)
    }
}

impl From<Simplex> for Vec<usize> {
    fn from(s: Simplex) -> Vec<usize> {
        s.0
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

pub fn are_disjoint(a: &Simplex, b: &Simplex) -> bool {
    let (mut i, mut j) = (0, 0);
    let (x, y) = (a.vertices(), b.vertices());
    while i < x.len() && j < y.len() {
        match x[i].cmp(&y[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => return false,
        }
    }
    true
}

/// A simplex with an orientation relative to its increasing vertex order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrientedSimplex {
    pub simplex: Simplex,
    pub sign: i8,
}

impl OrientedSimplex {
    pub fn positive(simplex: Simplex) -> Self {
        OrientedSimplex { simplex, sign: 1 }
    }

    pub fn negated(&self) -> Self {
        OrientedSimplex { simplex: self.simplex.clone(), sign: -self.sign }
    }
}

/// Alternating-sign facets of an oriented simplex. Empty for vertices.
pub fn boundary_chain(s: &OrientedSimplex) -> Vec<OrientedSimplex> {
    s.simplex
        .facets()
        .into_iter()
        .enumerate()
        .map(|(i, f)| OrientedSimplex { simplex: f, sign: if i % 2 == 0 { s.sign } else { -s.sign } })
        .collect()
}

/// Collects a signed sum of oriented simplices, dropping cancelled terms.
pub fn reduce_chain(terms: impl IntoIterator<Item = OrientedSimplex>) -> BTreeMap<Simplex, i64> {
    let mut acc: BTreeMap<Simplex, i64> = BTreeMap::new();
    for t in terms {
        *acc.entry(t.simplex).or_default() += i64::from(t.sign);
    }
    acc.retain(|_, c| *c != 0);
    acc
}

/// A face-closed finite simplicial complex.
#[derive(Clone, PartialEq, Eq)]
pub struct Complex {
    num_vertices: usize,
    simplices: BTreeSet<Simplex>,
}

impl fmt::Debug for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Complex")
            .field("num_vertices", &self.num_vertices)
            .field("maximal", &self.maximal_simplices())
            .finish()
    }
}

impl Complex {
    pub fn empty(num_vertices: usize) -> Self {
        Complex { num_vertices, simplices: BTreeSet::new() }
    }

    /// Closes the given simplices under taking faces and validates vertex ids.
    pub fn from_maximal_simplices(num_vertices: usize, maximal: &[Vec<usize>]) -> Result<Self> {
        let mut simplices = BTreeSet::new();
        let mut budget = 0usize;
        for raw in maximal {
            let s = Simplex::new(raw.clone())?;
            if let Some(&v) = s.vertices().iter().find(|&&v| v >= num_vertices) {
                return Err(Error::InvalidComplex(format!(
                    "vertex {v} out of range for {num_vertices} vertices"
                )));
            }
            if s.vertices().len() > 22 {
                return Err(Error::InvalidComplex(format!("simplex of dimension {} is too large", s.dim())));
            }
            budget += (1usize << s.vertices().len()) - 1;
            if budget > MAX_FACES {
                return Err(Error::InvalidComplex(format!("more than {MAX_FACES} faces")));
            }
            simplices.extend(s.faces());
        }
        Ok(Complex { num_vertices, simplices })
    }

    pub fn from_simplices(num_vertices: usize, simplices: impl IntoIterator<Item = Simplex>) -> Result<Self> {
        let list: Vec<Vec<usize>> = simplices.into_iter().map(Vec::from).collect();
        Self::from_maximal_simplices(num_vertices, &list)
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn simplices(&self) -> impl Iterator<Item = &Simplex> {
        self.simplices.iter()
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.simplices.contains(s)
    }

    pub fn dim(&self) -> Option<usize> {
        self.simplices.iter().map(Simplex::dim).max()
    }

    pub fn simplices_of_dim(&self, k: usize) -> Vec<Simplex> {
        self.simplices.iter().filter(|s| s.dim() == k).cloned().collect()
    }

    pub fn f_vector(&self) -> Vec<usize> {
        let Some(d) = self.dim() else { return Vec::new() };
        let mut f = vec![0; d + 1];
        for s in &self.simplices {
            f[s.dim()] += 1;
        }
        f
    }

    pub fn maximal_simplices(&self) -> Vec<Simplex> {
        let mut by_size: Vec<&Simplex> = self.simplices.iter().collect();
        by_size.sort_by_key(|s| std::cmp::Reverse(s.vertices().len()));
        let mut out: Vec<Simplex> = Vec::new();
        for s in by_size {
            if !out.iter().any(|m| s.is_face_of(m)) {
                out.push(s.clone());
            }
        }
        out.sort();
        out
    }

    pub fn is_face_closed(&self) -> bool {
        self.simplices.iter().all(|s| s.facets().iter().all(|f| self.simplices.contains(f)))
            && self.simplices.iter().all(|s| s.vertices().iter().all(|&v| v < self.num_vertices))
    }

    /// Whether this is the full simplex on all of its vertices.
    pub fn is_full_simplex(&self) -> bool {
        self.num_vertices > 0
            && self.contains(&Simplex::from_sorted((0..self.num_vertices).collect()))
    }

    pub fn skeleton(&self, s: usize) -> Complex {
        Complex {
            num_vertices: self.num_vertices,
            simplices: self.simplices.iter().filter(|x| x.dim() <= s).cloned().collect(),
        }
    }
}

/// All faces of the N-simplex of dimension at most `s`.
pub fn simplex_skeleton(n: usize, s: i64) -> Result<Complex> {
    if s < 0 || s as usize > n {
        return Err(Error::InvalidSkeleton { n, s });
    }
    if n + 1 > 22 {
        return Err(Error::InvalidComplex(format!("simplex of dimension {n} is too large to materialize")));
    }
    let s = s as usize;
    let mut simplices = BTreeSet::new();
    for mask in 1u64..(1u64 << (n + 1)) {
        if (mask.count_ones() as usize) <= s + 1 {
            simplices.insert(Simplex::from_mask(mask));
        }
    }
    Ok(Complex { num_vertices: n + 1, simplices })
}

pub fn full_simplex(n: usize) -> Result<Complex> {
    simplex_skeleton(n, n as i64)
}

/// Join of two complexes; vertices of `l` are shifted past those of `k`.
pub fn join(k: &Complex, l: &Complex) -> Complex {
    let shift = k.num_vertices;
    let shifted: Vec<Vec<usize>> =
        l.simplices.iter().map(|t| t.vertices().iter().map(|v| v + shift).collect()).collect();
    let mut simplices: BTreeSet<Simplex> = k.simplices.clone();
    for t in &shifted {
        simplices.insert(Simplex::from_sorted(t.clone()));
    }
    for s in &k.simplices {
        for t in &shifted {
            let mut v = s.vertices().to_vec();
            v.extend_from_slice(t);
            simplices.insert(Simplex::from_sorted(v));
        }
    }
    Complex { num_vertices: k.num_vertices + l.num_vertices, simplices }
}

/// Vertex relabeling by a bijection `perm` of `0..num_vertices`.
pub fn relabel(k: &Complex, perm: &[usize]) -> Result<Complex> {
    if perm.len() != k.num_vertices {
        return Err(Error::ShapeError("relabeling has wrong length".into()));
    }
    let list: Vec<Vec<usize>> =
        k.simplices.iter().map(|s| s.vertices().iter().map(|&v| perm[v]).collect()).collect();
    Complex::from_maximal_simplices(k.num_vertices, &list)
}
