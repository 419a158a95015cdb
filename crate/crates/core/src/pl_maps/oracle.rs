use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use crate::complex::{are_disjoint, Simplex};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::point::Point;
use crate::random::{random_rational, rng};
use crate::scalar::Field;
use crate::Rational;

use super::PLMap;

/// `(−1)^{k² r (r−1)² / 2}`: reordering the rows of `[L | D]` at an r-fold
/// point into tangent rows followed by normal rows.
pub fn oracle_sign_constant(k: usize, r: usize) -> i64 {
    let exponent = k * k * r * (r - 1) * (r - 1) / 2;
    if exponent % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Signed count of diagonal points of the extension of `f^r` over
/// `σ_1 × … × σ_r` obtained by coning its boundary from the barycenter to
/// the apex `(a_1, …, a_r)`.
///
/// Coordinates on factor `j` are `u_{j,l} = λ_{j,l}` for `l ≥ 1`. On the
/// pyramid over the facet `λ_{i,a} = 0` the extension is affine with cone
/// parameter `t = 1 − (m+1) λ_{i,a}`.
pub fn coned_extension_oracle<F: Field>(f: &PLMap<F>, tuple: &[Simplex], apexes: &[Point<F>]) -> Result<i64> {
    let r = tuple.len();
    let (k, m) = f.codimension_data(r)?;
    let d = f.ambient_dim();
    if apexes.len() != r || apexes.iter().any(|a| a.dim() != d) {
        return Err(Error::ShapeError(format!("need {r} apexes in R^{d}")));
    }
    for (i, s) in tuple.iter().enumerate() {
        if s.dim() != m || !f.domain().contains(s) || tuple[i + 1..].iter().any(|t| !are_disjoint(s, t)) {
            return Err(Error::InvalidArgument("tuple must consist of pairwise disjoint top simplices".into()));
        }
    }
    let nu = r * m;
    let dr = d * r;
    let mp1 = F::from_i64(m as i64 + 1);
    let bary = F::one() / mp1.clone();

    // f^r(u) = c + L u
    let mut l_mat = Matrix::<F>::zeros(dr, nu);
    let mut frb = vec![F::zero(); dr];
    for (j, s) in tuple.iter().enumerate() {
        let v = s.vertices();
        let base = f.image(v[0]);
        for l in 1..=m {
            let col = f.image(v[l]).sub(base);
            for c in 0..d {
                l_mat[(j * d + c, j * m + l - 1)] = col[c].clone();
            }
        }
        for c in 0..d {
            let mean = v.iter().fold(F::zero(), |acc, &w| acc + f.image(w)[c].clone()) * bary.clone();
            frb[j * d + c] = mean;
        }
    }
    let apex: Vec<F> = apexes.iter().flat_map(|a| a.coords().iter().cloned()).collect();

    // λ_{j,l} as an affine function of u: (gradient, constant)
    let lambda = |j: usize, l: usize| -> (Vec<F>, F) {
        let mut g = vec![F::zero(); nu];
        if l == 0 {
            for x in &mut g[j * m..(j + 1) * m] {
                *x = -F::one();
            }
            (g, F::one())
        } else {
            g[j * m + l - 1] = F::one();
            (g, F::zero())
        }
    };
    let eval = |(g, c): &(Vec<F>, F), u: &[F]| g.iter().zip(u).fold(c.clone(), |acc, (a, b)| acc + a.clone() * b.clone());

    let b_u = vec![bary.clone(); nu];
    let mut count = 0i64;
    for i in 0..r {
        for a in 0..=m {
            let (g, _) = lambda(i, a);
            let grad_t: Vec<F> = g.iter().map(|x| -mp1.clone() * x.clone()).collect();
            let mut df = l_mat.clone();
            for row in 0..dr {
                let w = frb[row].clone() - apex[row].clone();
                for col in 0..nu {
                    df[(row, col)] = df[(row, col)].clone() + w.clone() * grad_t[col].clone();
                }
            }
            // [DF | −D] (q, y) = −A
            let mut sys = Matrix::<F>::zeros(dr, nu + d);
            for row in 0..dr {
                for col in 0..nu {
                    sys[(row, col)] = df[(row, col)].clone();
                }
                sys[(row, nu + row % d)] = -F::one();
            }
            let rhs: Vec<F> = apex.iter().map(|x| -x.clone()).collect();
            let Some(sol) = sys.solve(&rhs) else {
                return Err(Error::NotGeneric("cone pyramid is parallel to the diagonal".into()));
            };
            let q = &sol[..nu];
            let t = grad_t.iter().zip(q).fold(F::zero(), |acc, (x, y)| acc + x.clone() * y.clone());
            if t.is_negligible() || (t.clone() - F::one()).is_negligible() {
                return Err(Error::NotGeneric("diagonal point on the cone boundary".into()));
            }
            if t.is_strictly_negative() || t > F::one() {
                continue;
            }
            let x: Vec<F> = b_u.iter().zip(q).map(|(b, qq)| b.clone() + qq.clone() / t.clone()).collect();
            let mut inside = true;
            for j in 0..r {
                for l in 0..=m {
                    if (j, l) == (i, a) {
                        continue;
                    }
                    let val = eval(&lambda(j, l), &x);
                    if val.is_negligible() {
                        return Err(Error::NotGeneric("diagonal point over a lower face of the cone".into()));
                    }
                    if val.is_strictly_negative() {
                        inside = false;
                    }
                }
            }
            if !inside {
                continue;
            }
            let mut orient = Matrix::<F>::zeros(dr, nu + d);
            for row in 0..dr {
                for col in 0..nu {
                    orient[(row, col)] = df[(row, col)].clone();
                }
                orient[(row, nu + row % d)] = F::one();
            }
            let s = orient.determinant().sign_i8();
            if s == 0 {
                return Err(Error::NotGeneric("cone meets the diagonal non-transversally".into()));
            }
            count += i64::from(s);
        }
    }
    Ok(oracle_sign_constant(k, r) * count)
}

/// Apexes drawn from `seed` in a box around the images.
pub fn seeded_apexes(f: &PLMap<Rational>, r: usize, seed: u64) -> Vec<Point<Rational>> {
    let bound = f
        .images()
        .iter()
        .flat_map(|p| p.coords().iter())
        .map(|x| x.abs().ceil().to_integer())
        .max()
        .unwrap_or_else(|| BigInt::from(0));
    let bound = bound.to_i64().unwrap_or(i64::MAX / 4).saturating_add(1);
    let mut g = rng(seed);
    (0..r).map(|_| Point::new((0..f.ambient_dim()).map(|_| random_rational(&mut g, bound, 1009)).collect())).collect()
}

/// [`coned_extension_oracle`] with apexes from `seed`, reseeding up to
/// `attempts` times on [`Error::NotGeneric`]. Returns the value and the
/// seed that worked.
pub fn coned_extension_oracle_seeded(f: &PLMap<Rational>, tuple: &[Simplex], seed: u64, attempts: u32) -> Result<(i64, u64)> {
    let mut last = Error::NotGeneric("no attempts made".into());
    for i in 0..u64::from(attempts.max(1)) {
        let s = seed.wrapping_add(i);
        match coned_extension_oracle(f, tuple, &seeded_apexes(f, tuple.len(), s)) {
            Ok(v) => return Ok((v, s)),
            Err(Error::NotGeneric(msg)) => last = Error::NotGeneric(msg),
            Err(e) => return Err(e),
        }
    }
    Err(last)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::Complex;
    use crate::pl_maps::intersection_cocycle;
    use crate::pl_maps::tests::map;

    #[test]
    fn x_crossing_matches_cocycle() {
        let k = Complex::from_maximal_simplices(4, &[vec![0, 1], vec![2, 3]]).unwrap();
        let f = map(k, &[&[0, 0], &[2, 2], &[0, 2], &[2, 0]]);
        let v = intersection_cocycle(&f, 2).unwrap();
        let (tuple, value) = v.nonzero().next().map(|(t, x)| (t.clone(), x)).unwrap();
        for seed in 0..5 {
            assert_eq!(coned_extension_oracle_seeded(&f, &tuple, seed, 8).unwrap().0, value);
        }
    }

    #[test]
    fn far_apart_segments_give_zero() {
        let k = Complex::from_maximal_simplices(4, &[vec![0, 1], vec![2, 3]]).unwrap();
        let f = map(k, &[&[0, 0], &[1, 0], &[10, 10], &[11, 10]]);
        let tuple = vec![Simplex::new(vec![0, 1]).unwrap(), Simplex::new(vec![2, 3]).unwrap()];
        assert_eq!(coned_extension_oracle_seeded(&f, &tuple, 3, 8).unwrap().0, 0);
    }
}
