use num_traits::{Signed, Zero};
use proptest::prelude::*;
use tvlab::complex::{boundary_chain, join, reduce_chain, relabel, simplex_skeleton, Complex, OrientedSimplex, Simplex};
use tvlab::convex::{radon_partition, tverberg_search};
use tvlab::deleted_product::{simplex_f_vector, DeletedProduct};
use tvlab::homology::{deleted_product_homology, smith_normal_form, solve_integer_system, Coefficients, IntMatrix, IntegerSolution};
use tvlab::linalg::Matrix;
use tvlab::lp::feasible_point;
use tvlab::random::{random_points, random_similarity, rng};
use tvlab::sym_group::{is_prime, pi_projection, sylow_tree_subgroup, p_order_in_factorial, PermGroup, Permutation};
use tvlab::{Integer, Rational};

fn int_matrix(rows: &[Vec<i64>]) -> IntMatrix {
    IntMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| Integer::from(x)).collect()).collect()).unwrap()
}

fn check_smith(a: &IntMatrix) {
    let s = smith_normal_form(a);
    assert!(s.u.is_unimodular() && s.v.is_unimodular());
    assert_eq!(s.u.mul(a).unwrap().mul(&s.v).unwrap(), s.d);
    assert!(s.d.is_diagonal());
    let f = s.invariant_factors();
    assert!(f.iter().all(|x| x.is_positive()));
    assert!(f.windows(2).all(|w| (&w[1] % &w[0]).is_zero()));
    for i in f.len()..s.d.rows().min(s.d.cols()) {
        assert!(s.d[(i, i)].is_zero());
    }
}

#[test]
fn smith_form_on_forty_by_forty() {
    let mut g = rng(40);
    for _ in 0..3 {
        let rows: Vec<Vec<i64>> = (0..40).map(|_| tvlab::random::random_integers(&mut g, 40, 9)).collect();
        check_smith(&int_matrix(&rows));
    }
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<usize>>()).prop_shuffle()
}

fn complex_on(n: usize) -> impl Strategy<Value = Complex> {
    proptest::collection::vec(proptest::sample::subsequence((0..n).collect::<Vec<_>>(), 1..=n.min(3)), 1..7)
        .prop_map(move |faces| Complex::from_maximal_simplices(n, &faces).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn smith_form_small(rows in (1usize..7, 1usize..7).prop_flat_map(|(m, n)| proptest::collection::vec(proptest::collection::vec(-9i64..=9, n), m))) {
        check_smith(&int_matrix(&rows));
    }

    #[test]
    fn integer_solutions_verify(rows in proptest::collection::vec(proptest::collection::vec(-5i64..=5, 4), 3), b in proptest::collection::vec(-5i64..=5, 3)) {
        let a = int_matrix(&rows);
        let b: Vec<Integer> = b.into_iter().map(Integer::from).collect();
        match solve_integer_system(&a, &b).unwrap() {
            IntegerSolution::Solution(x) => prop_assert_eq!(a.mul_vec(&x).unwrap(), b),
            IntegerSolution::Infeasible(w) => prop_assert!(w.verify(&a, &b)),
        }
    }

    #[test]
    fn boundary_squares_to_zero(vs in proptest::sample::subsequence((0..9).collect::<Vec<usize>>(), 2..=6), neg in any::<bool>()) {
        let s = OrientedSimplex::positive(Simplex::new(vs).unwrap());
        let s = if neg { s.negated() } else { s };
        let twice = boundary_chain(&s).iter().flat_map(boundary_chain).collect::<Vec<_>>();
        prop_assert!(reduce_chain(twice).is_empty());
    }

    #[test]
    fn join_is_associative(a in complex_on(3), b in complex_on(2), c in complex_on(3)) {
        prop_assert_eq!(join(&join(&a, &b), &c), join(&a, &join(&b, &c)));
    }

    #[test]
    fn deleted_homology_ignores_relabeling(k in complex_on(6), perm in permutation(6), r in 2usize..=3) {
        let l = relabel(&k, &perm).unwrap();
        let a = DeletedProduct::new(&k, r).unwrap();
        let b = DeletedProduct::new(&l, r).unwrap();
        prop_assert_eq!(a.f_vector(), b.f_vector());
        prop_assert_eq!(
            deleted_product_homology(&a, Coefficients::Integers).unwrap(),
            deleted_product_homology(&b, Coefficients::Integers).unwrap()
        );
    }

    #[test]
    fn radon_partition_is_similarity_invariant(seed in any::<u64>(), d in 1usize..=3) {
        let pts = random_points(&mut rng(seed), d + 2, d);
        let (scale, shift) = random_similarity(&mut rng(seed ^ 1), d);
        let moved: Vec<_> = pts.iter().map(|p| p.scaled_translated(&scale, &shift)).collect();
        let a = radon_partition(&pts).unwrap();
        let b = radon_partition(&moved).unwrap();
        prop_assert!(a.verify(&pts) && b.verify(&moved));
        prop_assert_eq!(&a.parts, &b.parts);
        prop_assert_eq!(a.witness.scaled_translated(&scale, &shift), b.witness);
    }

    #[test]
    fn pi_projection_is_equivariant(seed in any::<u64>(), r in 2usize..=4, d in 1usize..=3, perm in permutation(4)) {
        let pts = random_points(&mut rng(seed), r, d);
        let images: Vec<usize> = perm.into_iter().filter(|&i| i < r).collect();
        let omega = Permutation::from_images(images).unwrap();
        let mut moved = pts.clone();
        for (j, p) in pts.iter().enumerate() {
            moved[omega.apply(j)] = p.clone();
        }
        let (a, b) = (pi_projection(&pts), pi_projection(&moved));
        match (a, b) {
            (Ok(a), Ok(b)) => prop_assert_eq!(a.act(&omega), b),
            (a, b) => prop_assert_eq!(a.is_err(), b.is_err()),
        }
    }

    #[test]
    fn lp_points_are_feasible(rows in proptest::collection::vec(proptest::collection::vec(-4i64..=4, 5), 3), x in proptest::collection::vec(0i64..=3, 5)) {
        let q = |v: i64| Rational::from_integer(Integer::from(v));
        let a = Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| q(v)).collect()).collect());
        let b: Vec<Rational> = rows.iter().map(|r| q(r.iter().zip(&x).map(|(u, v)| u * v).sum())).collect();
        let sol = feasible_point(&a, &b).unwrap().expect("x itself is feasible");
        prop_assert!(sol.iter().all(|v| !v.is_negative()));
        prop_assert_eq!(a.mul_vec(&sol), b);
    }
}

#[test]
fn deleted_simplex_f_vectors_match_closed_form() {
    for n in 0..=6 {
        for r in 2..=4 {
            let dp = DeletedProduct::new(&simplex_skeleton(n, n as i64).unwrap(), r).unwrap();
            let closed: Vec<usize> = simplex_f_vector(n, r).iter().map(|x| x.try_into().unwrap()).collect();
            assert_eq!(dp.f_vector(), closed, "N = {n}, r = {r}");
        }
    }
}

#[test]
fn sylow_subgroups_have_the_full_p_part() {
    for r in 2..=9usize {
        for p in (2..=r).filter(|&p| is_prime(p as u64)) {
            let g = sylow_tree_subgroup(r, p).unwrap();
            let alpha = p_order_in_factorial(r as u64, p as u64).unwrap();
            assert_eq!(g.order(), p.pow(alpha));
            let sym = PermGroup::symmetric(r);
            assert!(g.generators().iter().all(|x| sym.contains(x)));
            let power_of_p = (0..=r).any(|j| p.pow(j as u32) == r);
            assert_eq!(g.is_transitive(), power_of_p, "r = {r}, p = {p}");
            let reps = g.right_coset_representatives();
            assert_eq!(reps.len() * g.order(), sym.order());
        }
    }
}

#[test]
fn tverberg_partition_is_similarity_invariant() {
    for seed in 0..5 {
        let pts = random_points(&mut rng(seed), 7, 2);
        let (scale, shift) = random_similarity(&mut rng(seed + 100), 2);
        let moved: Vec<_> = pts.iter().map(|p| p.scaled_translated(&scale, &shift)).collect();
        let a = tverberg_search(&pts, 3).unwrap();
        let b = tverberg_search(&moved, 3).unwrap();
        assert!(a.verify(&pts) && b.verify(&moved));
        assert_eq!(a.parts, b.parts);
    }
}
