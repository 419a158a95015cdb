//! Equivariant cochains on the top two layers of the deleted product,
//! the null-cohomology decision for the intersection cocycle, restriction
//! and transfer, and the Sylow arithmetic deciding when the class vanishes.
//!
//! The group acts on cochains with the twist `χ(ω) = sgn(ω)^d`, `d` the
//! ambient dimension `m r / (r − 1)` for a complex of dimension `m`:
//! `c(ω·e) = χ(ω) κ(ω, e) c(e)` with `κ` the Koszul sign of the cell action.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;
use num_integer::Integer as _;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::complex::{Complex, Simplex};
use crate::deleted_product::ProductCell;
use crate::error::{Error, Result};
use crate::homology::{solve_integer_system, InfeasibilityCertificate, IntMatrix, IntegerSolution};
use crate::pl_maps::IntersectionTable;
use crate::sym_group::{
    invariant_block_split, invariant_matrix_point_for_split, is_prime, p_order_in_factorial, sylow_tree_subgroup,
    PAdicTree, PermGroup, Permutation,
};
use crate::Integer;

/// Dimension data of `K` for r-fold obstruction theory.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Shape {
    pub r: usize,
    /// Dimension of the complex.
    pub m: usize,
    /// Ambient dimension `m r / (r − 1)`.
    pub d: usize,
}

impl Shape {
    pub fn of(k: &Complex, r: usize) -> Result<Self> {
        if r < 2 {
            return Err(Error::InvalidMultiplicity(r));
        }
        let m = k.dim().unwrap_or(0);
        if (m * r) % (r - 1) != 0 {
            return Err(Error::InvalidArgument(format!("dimension {m} is not a multiple of r - 1 = {}", r - 1)));
        }
        Ok(Shape { r, m, d: m * r / (r - 1) })
    }

    pub fn top_degree(&self) -> usize {
        self.r * self.m
    }

    fn twist(&self, omega: &Permutation) -> i8 {
        if self.d % 2 == 1 {
            omega.sign()
        } else {
            1
        }
    }
}

/// Cells of dimension `rm` (all factors top-dimensional) or `rm − 1`.
pub fn layer_cells(k: &Complex, r: usize, degree: usize) -> Result<Vec<ProductCell>> {
    let shape = Shape::of(k, r)?;
    let top = shape.top_degree();
    if k.is_empty() {
        return Ok(Vec::new());
    }
    if degree != top && degree + 1 != top {
        return Err(Error::DegreeError { expected: top, got: degree });
    }
    let by_dim = |dim: usize| k.simplices_of_dim(dim);
    let top_list = by_dim(shape.m);
    let low_list = if shape.m > 0 { by_dim(shape.m - 1) } else { Vec::new() };
    let mut out = Vec::new();
    let slots: Vec<Vec<&[Simplex]>> = if degree == top {
        vec![vec![&top_list[..]; r]]
    } else {
        (0..r).map(|i| (0..r).map(|j| if i == j { &low_list[..] } else { &top_list[..] }).collect()).collect()
    };
    for slot in slots {
        let mut cur: Vec<Simplex> = Vec::with_capacity(r);
        collect_tuples(&slot, &mut cur, &mut out);
    }
    out.sort();
    Ok(out)
}

fn collect_tuples(slots: &[&[Simplex]], cur: &mut Vec<Simplex>, out: &mut Vec<ProductCell>) {
    if cur.len() == slots.len() {
        out.push(ProductCell::new(cur.clone()).expect("disjoint by construction"));
        return;
    }
    for s in slots[cur.len()] {
        if cur.iter().all(|t| crate::complex::are_disjoint(s, t)) {
            cur.push(s.clone());
            collect_tuples(slots, cur, out);
            cur.pop();
        }
    }
}

/// Lexicographically least cell of the `G`-orbit of `e`, the element `h`
/// with `e = h·rep`, and the factor `c(e) = sign · c(rep)`.
fn orbit_rep(shape: &Shape, group: &PermGroup, e: &ProductCell) -> (ProductCell, Permutation, i8) {
    let mut best: Option<(ProductCell, Permutation)> = None;
    for g in group.elements() {
        let (img, _) = e.act(g).expect("degree checked");
        if best.as_ref().is_none_or(|(b, _)| img < *b) {
            best = Some((img, g.inverse()));
        }
    }
    let (rep, h) = best.expect("groups are non-empty");
    let (back, kappa) = rep.act(&h).expect("degree checked");
    debug_assert_eq!(&back, e);
    let sign = shape.twist(&h) * kappa;
    (rep, h, sign)
}

/// An integer cochain on one layer, equivariant under `group` with the
/// twisted action; stored by its values on orbit representatives.
#[derive(Clone, Debug)]
pub struct EquivariantCochain {
    complex: Complex,
    shape: Shape,
    degree: usize,
    group: PermGroup,
    values: BTreeMap<ProductCell, Integer>,
}

impl PartialEq for EquivariantCochain {
    fn eq(&self, other: &Self) -> bool {
        self.complex == other.complex
            && self.shape == other.shape
            && self.degree == other.degree
            && self.group.elements() == other.group.elements()
            && self.values == other.values
    }
}

impl EquivariantCochain {
    /// Zero cochain with all orbit representatives present.
    pub fn zero(k: &Complex, r: usize, degree: usize, group: &PermGroup) -> Result<Self> {
        let shape = Shape::of(k, r)?;
        if group.degree() != r {
            return Err(Error::InvalidArgument(format!("group of degree {} for r = {r}", group.degree())));
        }
        let reps = orbit_representatives(&shape, group, &layer_cells(k, r, degree)?);
        Ok(EquivariantCochain {
            complex: k.clone(),
            shape,
            degree,
            group: group.clone(),
            values: reps.into_iter().map(|c| (c, Integer::zero())).collect(),
        })
    }

    /// Cochain with the given values on the representatives, in order.
    pub fn from_values(k: &Complex, r: usize, degree: usize, group: &PermGroup, values: &[Integer]) -> Result<Self> {
        let mut c = Self::zero(k, r, degree, group)?;
        if values.len() != c.values.len() {
            return Err(Error::ShapeError(format!("{} values for {} orbits", values.len(), c.values.len())));
        }
        for (slot, v) in c.values.values_mut().zip(values) {
            *slot = v.clone();
        }
        Ok(c)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn r(&self) -> usize {
        self.shape.r
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn complex(&self) -> &Complex {
        &self.complex
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn values(&self) -> &BTreeMap<ProductCell, Integer> {
        &self.values
    }

    pub fn value_vector(&self) -> Vec<Integer> {
        self.values.values().cloned().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.values.values().all(Zero::is_zero)
    }

    pub fn support_size(&self) -> usize {
        self.values.values().filter(|v| !v.is_zero()).count()
    }

    /// Value on any cell of the layer, by twisted equivariance.
    pub fn value(&self, e: &ProductCell) -> Integer {
        let (rep, _, sign) = orbit_rep(&self.shape, &self.group, e);
        let v = self.values.get(&rep).cloned().unwrap_or_default();
        if sign < 0 {
            -v
        } else {
            v
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        if self.values.len() != other.values.len() || self.degree != other.degree || self.shape != other.shape {
            return Err(Error::ShapeError("cochains live on different layers".into()));
        }
        let mut out = self.clone();
        for (cell, v) in out.values.iter_mut() {
            *v -= other.value(cell);
        }
        Ok(out)
    }

    pub fn scaled(&self, s: i64) -> Self {
        let mut out = self.clone();
        for v in out.values.values_mut() {
            *v *= s;
        }
        out
    }
}

fn orbit_representatives(shape: &Shape, group: &PermGroup, cells: &[ProductCell]) -> Vec<ProductCell> {
    let mut reps = BTreeSet::new();
    let mut covered: BTreeSet<&ProductCell> = BTreeSet::new();
    let all: BTreeSet<&ProductCell> = cells.iter().collect();
    for e in cells {
        if covered.contains(e) {
            continue;
        }
        let (rep, _, _) = orbit_rep(shape, group, e);
        for g in group.elements() {
            let (img, _) = rep.act(g).expect("degree checked");
            if let Some(c) = all.get(&img) {
                covered.insert(c);
            }
        }
        reps.insert(rep);
    }
    reps.into_iter().collect()
}

/// Top-degree Σ_r-cochain with the table's values. Entries may be given on
/// any ordering of a tuple; conflicting entries raise [`Error::NotEquivariant`].
pub fn cocycle_from_table(k: &Complex, r: usize, table: &IntersectionTable) -> Result<EquivariantCochain> {
    if table.r != r {
        return Err(Error::InvalidArgument(format!("table for r = {} used with r = {r}", table.r)));
    }
    let sym = PermGroup::symmetric(r);
    let mut c = EquivariantCochain::zero(k, r, Shape::of(k, r)?.top_degree(), &sym)?;
    if table.ambient_dim != c.shape.d {
        return Err(Error::InvalidArgument(format!(
            "table in R^{} for a complex whose obstruction lives in R^{}",
            table.ambient_dim, c.shape.d
        )));
    }
    let mut assigned: BTreeMap<ProductCell, Integer> = BTreeMap::new();
    for (tuple, &v) in &table.entries {
        let cell = ProductCell::new(tuple.clone())?;
        if cell.dim() != c.degree || !tuple.iter().all(|s| k.contains(s)) {
            return Err(Error::InvalidArgument(format!("{cell} is not a top cell of the deleted product")));
        }
        let (rep, _, sign) = orbit_rep(&c.shape, &sym, &cell);
        let value = Integer::from(v) * i64::from(sign);
        match assigned.get(&rep) {
            Some(prev) if *prev != value => {
                return Err(Error::NotEquivariant(format!("{cell} gives {value}, another ordering gives {prev}")));
            }
            _ => {
                assigned.insert(rep, value);
            }
        }
    }
    for (rep, v) in assigned {
        c.values.insert(rep, v);
    }
    Ok(c)
}

/// Matrix of `δ : C^{top−1} → C^{top}` on Σ_r-orbit representatives.
#[derive(Clone, Debug, PartialEq)]
pub struct CoboundaryMatrix {
    pub matrix: IntMatrix,
    pub rows: Vec<ProductCell>,
    pub columns: Vec<ProductCell>,
}

/// Facets of a top cell with their incidence signs.
fn facets(e: &ProductCell) -> Vec<(ProductCell, i8)> {
    let mut out = Vec::new();
    let mut prefix = 0;
    for (i, s) in e.factors().iter().enumerate() {
        if s.dim() > 0 {
            for (t, face) in s.facets().into_iter().enumerate() {
                let mut factors = e.factors().to_vec();
                factors[i] = face;
                let sign = if (prefix + t) % 2 == 0 { 1 } else { -1 };
                out.push((ProductCell::new(factors).expect("faces stay disjoint"), sign));
            }
        }
        prefix += s.dim();
    }
    out
}

pub fn coboundary_matrix(k: &Complex, r: usize) -> Result<CoboundaryMatrix> {
    let shape = Shape::of(k, r)?;
    let sym = PermGroup::symmetric(r);
    if k.is_empty() || shape.top_degree() == 0 {
        return Ok(CoboundaryMatrix { matrix: IntMatrix::zeros(0, 0), rows: Vec::new(), columns: Vec::new() });
    }
    let top = shape.top_degree();
    let rows = orbit_representatives(&shape, &sym, &layer_cells(k, r, top)?);
    let columns = orbit_representatives(&shape, &sym, &layer_cells(k, r, top - 1)?);
    let col_index: BTreeMap<&ProductCell, usize> = columns.iter().enumerate().map(|(j, c)| (c, j)).collect();
    let mut m = IntMatrix::zeros(rows.len(), columns.len());
    for (i, e) in rows.iter().enumerate() {
        for (f, s) in facets(e) {
            let (rep, _, sign) = orbit_rep(&shape, &sym, &f);
            let j = col_index[&rep];
            m[(i, j)] += Integer::from(i64::from(s) * i64::from(sign));
        }
    }
    Ok(CoboundaryMatrix { matrix: m, rows, columns })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Trivial,
    Nontrivial,
}

#[derive(Clone, Debug, PartialEq)]
pub enum NullCohomologyCertificate {
    /// `δc = v`.
    Coboundary(EquivariantCochain),
    /// A row vector killing the coboundary matrix (modulo `modulus`) but not `v`.
    Obstruction(InfeasibilityCertificate<Integer>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct NullCohomologyResult {
    pub verdict: Verdict,
    pub certificate: NullCohomologyCertificate,
    pub coboundary: CoboundaryMatrix,
}

impl NullCohomologyResult {
    /// Re-checks the certificate against the coboundary matrix and `v`.
    pub fn verify(&self, v: &EquivariantCochain) -> bool {
        let target: Vec<Integer> = self.coboundary.rows.iter().map(|e| v.value(e)).collect();
        match &self.certificate {
            NullCohomologyCertificate::Coboundary(c) => {
                let x: Vec<Integer> = self.coboundary.columns.iter().map(|e| c.value(e)).collect();
                self.verdict == Verdict::Trivial && self.coboundary.matrix.mul_vec(&x).is_ok_and(|y| y == target)
            }
            NullCohomologyCertificate::Obstruction(w) => {
                self.verdict == Verdict::Nontrivial && w.verify(&self.coboundary.matrix, &target)
            }
        }
    }
}

/// Decides whether `v = δc` for an equivariant integer cochain `c`.
pub fn is_null_cohomologous(v: &EquivariantCochain, k: &Complex, r: usize) -> Result<NullCohomologyResult> {
    let shape = Shape::of(k, r)?;
    if v.degree != shape.top_degree() {
        return Err(Error::DegreeError { expected: shape.top_degree(), got: v.degree });
    }
    let cob = coboundary_matrix(k, r)?;
    let target: Vec<Integer> = cob.rows.iter().map(|e| v.value(e)).collect();
    let sym = PermGroup::symmetric(r);
    if cob.columns.is_empty() {
        let c = EquivariantCochain { values: BTreeMap::new(), ..v.clone() };
        let (verdict, certificate) = if target.iter().all(Zero::is_zero) {
            (Verdict::Trivial, NullCohomologyCertificate::Coboundary(c))
        } else {
            let i = target.iter().position(|x| !x.is_zero()).expect("nonzero entry");
            let mut witness = vec![Integer::zero(); target.len()];
            witness[i] = Integer::one();
            (Verdict::Nontrivial, NullCohomologyCertificate::Obstruction(InfeasibilityCertificate { witness, modulus: Integer::zero() }))
        };
        return Ok(NullCohomologyResult { verdict, certificate, coboundary: cob });
    }
    let (verdict, certificate) = match solve_integer_system(&cob.matrix, &target)? {
        IntegerSolution::Solution(x) => {
            let c = EquivariantCochain::from_values(k, r, shape.top_degree() - 1, &sym, &x)?;
            (Verdict::Trivial, NullCohomologyCertificate::Coboundary(c))
        }
        IntegerSolution::Infeasible(w) => (Verdict::Nontrivial, NullCohomologyCertificate::Obstruction(w)),
    };
    let out = NullCohomologyResult { verdict, certificate, coboundary: cob };
    assert!(out.verify(v), "null-cohomology certificate failed re-verification");
    Ok(out)
}

fn contains_group(outer: &PermGroup, inner: &PermGroup) -> bool {
    inner.generators().iter().all(|g| outer.contains(g))
}

/// The same cochain regarded as equivariant under a subgroup `G`.
pub fn restrict_to_subgroup(c: &EquivariantCochain, g: &PermGroup) -> Result<EquivariantCochain> {
    if g.degree() != c.r() || !contains_group(&c.group, g) {
        return Err(Error::InvalidArgument("not a subgroup of the cochain's group".into()));
    }
    let mut out = EquivariantCochain::zero(&c.complex, c.r(), c.degree, g)?;
    for (cell, v) in out.values.iter_mut() {
        *v = c.value(cell);
    }
    Ok(out)
}

/// `t(x)(σ) = Σ_i χ(f_i) κ(f_i, σ) x(f_i σ)` over right coset
/// representatives `Σ_r = ⊔ G f_i`.
pub fn transfer(x: &EquivariantCochain, g: &PermGroup) -> Result<EquivariantCochain> {
    if g.elements() != x.group.elements() {
        return Err(Error::InvalidArgument("cochain is not equivariant under exactly this group".into()));
    }
    let sym = PermGroup::symmetric(x.r());
    let reps = g.right_coset_representatives();
    let mut out = EquivariantCochain::zero(&x.complex, x.r(), x.degree, &sym)?;
    for (sigma, v) in out.values.iter_mut() {
        *v = transfer_value(x, &reps, sigma);
    }
    Ok(out)
}

/// Transfer evaluated directly on one cell.
pub fn transfer_value(x: &EquivariantCochain, coset_reps: &[Permutation], sigma: &ProductCell) -> Integer {
    let mut total = Integer::zero();
    for f in coset_reps {
        let (img, kappa) = sigma.act(f).expect("degree checked");
        let s = i64::from(x.shape.twist(f) * kappa);
        total += x.value(&img) * s;
    }
    total
}

/// One row of the Sylow analysis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeRow {
    pub p: u64,
    pub alpha_p: u32,
    #[serde(with = "crate::io::integer")]
    pub sylow_order: Integer,
    pub transitive: bool,
    /// `(k, r − k)` for the orbit of the first point against the rest.
    pub split: Option<(usize, usize)>,
    pub invariant_point: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OzaydinReport {
    pub r: usize,
    pub primes: Vec<PrimeRow>,
    /// gcd of `r!/p^{α_p}` over primes with non-transitive Sylow subgroup;
    /// zero when there are none.
    #[serde(with = "crate::io::integer")]
    pub relation_gcd: Integer,
    pub prime_power: bool,
    pub argument_applies: bool,
}

pub fn is_prime_power(r: u64) -> bool {
    if r < 2 {
        return false;
    }
    let p = (2..=r).find(|&p| r % p == 0).expect("r has a prime factor");
    let mut x = r;
    while x % p == 0 {
        x /= p;
    }
    x == 1
}

pub fn ozaydin_report(r: usize) -> Result<OzaydinReport> {
    if r < 2 {
        return Err(Error::InvalidMultiplicity(r));
    }
    let factorial: BigUint = (1..=r as u64).map(BigUint::from).product();
    let mut rows = Vec::new();
    let mut gcd = BigUint::zero();
    for p in (2..=r as u64).filter(|&p| is_prime(p)) {
        let alpha = p_order_in_factorial(r as u64, p)?;
        let tree = PAdicTree::new(r, p as usize)?;
        let order = BigUint::from(p).pow(tree.rotatable_vertices().len() as u32);
        let group = sylow_tree_subgroup(r, p as usize)?;
        let transitive = group.is_transitive();
        let (split, invariant_point) = match invariant_block_split(&group) {
            Ok(s) => {
                let point = invariant_matrix_point_for_split(&s, 1)?;
                let fixed = group.generators().iter().all(|g| point.is_fixed_by(g));
                (Some((s.k, r - s.k)), fixed)
            }
            Err(_) => (None, false),
        };
        if !transitive {
            gcd = gcd.gcd(&(&factorial / BigUint::from(p).pow(alpha)));
        }
        rows.push(PrimeRow {
            p,
            alpha_p: alpha,
            sylow_order: order.into(),
            transitive,
            split,
            invariant_point,
        });
    }
    let argument_applies = gcd.is_one();
    Ok(OzaydinReport {
        r,
        primes: rows,
        relation_gcd: gcd.into(),
        prime_power: is_prime_power(r as u64),
        argument_applies,
    })
}
