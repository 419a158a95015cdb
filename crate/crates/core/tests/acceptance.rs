//! One test per acceptance criterion. Each prints a single PASS/FAIL line
//! (run with `--nocapture` to see them) and fails on a miss or on exceeding
//! its time limit.

use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::Rng;
use tvlab::complex::{simplex_skeleton, Complex};
use tvlab::convex::{radon_partition, tverberg_search};
use tvlab::deleted_product::{deleted_simplex, DEFAULT_CELL_CAP};
use tvlab::equivariant::{
    cocycle_from_table, is_null_cohomologous, layer_cells, ozaydin_report, restrict_to_subgroup, transfer,
    EquivariantCochain, Shape, Verdict,
};
use tvlab::homology::{check_chain_complex, deleted_product_homology, Coefficients};
use tvlab::pl_maps::{
    coned_extension_oracle_seeded, constraint_lift, intersection_cocycle, join_extension, PLMap,
};
use tvlab::random::{random_points, rng};
use tvlab::sym_group::{
    invariant_block_split, is_prime, p_order_in_factorial, pi_projection, sylow_tree_subgroup, PermGroup, Permutation,
};
use tvlab::{Integer, Point};

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn criterion(id: u32, name: &str, limit: Duration, body: impl FnOnce() -> Check) {
    let start = Instant::now();
    let outcome = body();
    let elapsed = start.elapsed();
    let timing = format!("{:.2} s, limit {} s", elapsed.as_secs_f64(), limit.as_secs());
    let outcome = outcome.and_then(|d| if elapsed <= limit { Ok(d) } else { Err(format!("{d}; too slow")) });
    match &outcome {
        Ok(detail) => println!("PASS criterion {id:02} {name}: {detail} ({timing})"),
        Err(why) => println!("FAIL criterion {id:02} {name}: {why} ({timing})"),
    }
    if let Err(why) = outcome {
        panic!("criterion {id} failed: {why}");
    }
}

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

fn map(k: Complex, d: usize, images: Vec<Point<tvlab::Rational>>) -> PLMap {
    PLMap::new(k, d, images).unwrap()
}

fn plane(k: Complex, pts: &[[i64; 2]]) -> PLMap {
    map(k, 2, pts.iter().map(|p| Point::from_i64s(p)).collect())
}

fn k4_one_crossing() -> PLMap {
    plane(simplex_skeleton(3, 1).unwrap(), &[[0, 0], [1, 0], [1, 1], [0, 1]])
}

fn k5_pentagon() -> PLMap {
    plane(simplex_skeleton(4, 1).unwrap(), &[[0, 10], [10, 3], [6, -8], [-6, -8], [-10, 3]])
}

fn random_map(k: Complex, d: usize, seed: u64) -> PLMap {
    let n = k.num_vertices();
    map(k, d, random_points(&mut rng(seed), n, d))
}

/// Random pure subcomplex spanned by `count` of the `dim`-faces of Δ_N.
fn random_pure(n: usize, dim: usize, count: usize, seed: u64) -> Complex {
    let mut faces: Vec<Vec<usize>> = simplex_skeleton(n, dim as i64)
        .unwrap()
        .simplices_of_dim(dim)
        .iter()
        .map(|s| s.vertices().to_vec())
        .collect();
    faces.shuffle(&mut rng(seed));
    faces.truncate(count);
    Complex::from_maximal_simplices(n + 1, &faces).unwrap()
}

#[test]
fn criterion_01_deleted_product_golden_values() {
    criterion(1, "deleted-product golden values", secs(1), || {
        ensure(deleted_simplex(1, 3, DEFAULT_CELL_CAP).unwrap().is_empty(), || "~Δ_1^3 not empty".into())?;
        let d23 = deleted_simplex(2, 3, DEFAULT_CELL_CAP).unwrap();
        ensure(d23.f_vector() == vec![6], || format!("~Δ_2^3 f-vector {:?}", d23.f_vector()))?;
        let mut checked = 0;
        for n in 0..=7usize {
            for r in 2..=4usize {
                let dp = deleted_simplex(n, r, DEFAULT_CELL_CAP).unwrap();
                let expected = (n + 1).checked_sub(r);
                ensure(dp.dim() == expected, || format!("dim ~Δ_{n}^{r} = {:?}", dp.dim()))?;
                checked += 1;
            }
        }
        Ok(format!("{checked} (N, r) pairs"))
    });
}

#[test]
fn criterion_02_chain_complex_and_free_action() {
    criterion(2, "∂∂ = 0, free action commuting with ∂", secs(60), || {
        let mut checked = 0;
        for n in 0..=7usize {
            for r in 2..=4usize {
                let dp = deleted_simplex(n, r, DEFAULT_CELL_CAP).unwrap();
                check_chain_complex(dp.boundaries()).map_err(|e| format!("N = {n}, r = {r}: {e}"))?;
                for omega in Permutation::all(r) {
                    let act = dp.group_action(&omega).unwrap();
                    ensure(act.commutes_with_boundary(&dp), || format!("N = {n}, r = {r}, ω = {omega:?} breaks ∂"))?;
                    ensure(omega.is_identity() || act.has_no_fixed_cells(), || {
                        format!("N = {n}, r = {r}, ω = {omega:?} fixes a cell")
                    })?;
                }
                checked += 1;
            }
        }
        Ok(format!("{checked} complexes, all of Σ_r"))
    });
}

#[test]
fn criterion_03_connectivity() {
    criterion(3, "reduced H_j(~Δ_N^r) = 0 for j ≤ N − r", secs(600), || {
        let cases = [(2, 2), (3, 2), (4, 2), (3, 3), (4, 3), (5, 3), (5, 4)];
        for (n, r) in cases {
            let dp = deleted_simplex(n, r, DEFAULT_CELL_CAP).unwrap();
            let reduced = deleted_product_homology(&dp, Coefficients::Integers).unwrap().reduced();
            for j in 0..=(n - r) {
                ensure(reduced.groups.get(j).is_none_or(|g| g.is_trivial()), || {
                    format!("N = {n}, r = {r}: reduced H_{j} = {:?}", reduced.groups[j])
                })?;
            }
        }
        Ok(format!("{} cases", cases.len()))
    });
}

#[test]
fn criterion_04_radon() {
    criterion(4, "Radon partitions", secs(60), || {
        let mut ok = 0;
        for d in 1..=4usize {
            for seed in 0..200u64 {
                let pts = random_points(&mut rng(1000 * d as u64 + seed), d + 2, d);
                let part = radon_partition(&pts).map_err(|e| format!("d = {d}, seed {seed}: {e}"))?;
                ensure(part.verify(&pts), || format!("d = {d}, seed {seed}: certificate rejected"))?;
                ok += 1;
            }
        }
        Ok(format!("{ok}/800 certified (200 per d = 1..4)"))
    });
}

#[test]
fn criterion_05_tverberg() {
    criterion(5, "Tverberg partitions", secs(300), || {
        let mut ok = 0;
        for seed in 0..100u64 {
            let pts = random_points(&mut rng(5000 + seed), 7, 2);
            let part = tverberg_search(&pts, 3).map_err(|e| format!("seed {seed}: {e}"))?;
            ensure(part.verify(&pts) && part.r() == 3, || format!("seed {seed}: certificate rejected"))?;
            ok += 1;
        }
        let hexagon: Vec<tvlab::RationalPoint> =
            [[2, 0], [1, 2], [-1, 2], [-2, 0], [-1, -2], [1, -2], [0, 0]].iter().map(|p| Point::from_i64s(p)).collect();
        let part = tverberg_search(&hexagon, 3).unwrap();
        ensure(part.verify(&hexagon), || "hexagon certificate rejected".into())?;
        ensure(part.witness == Point::from_i64s(&[0, 0]), || format!("hexagon witness {}", part.witness))?;
        Ok(format!("{ok}/100 certified; hexagon witness = center"))
    });
}

fn v_equals_o(f: &PLMap, r: usize, seed: u64) -> Result<usize, String> {
    let (table, used) = f.with_generic_retries(seed, 16, |g| intersection_cocycle(g, r)).map_err(|e| e.to_string())?;
    let g = used.map_or_else(|| f.clone(), |s| f.perturbed(s));
    for (tuple, &v) in &table.entries {
        let (o, _) = coned_extension_oracle_seeded(&g, tuple, seed, 16).map_err(|e| e.to_string())?;
        ensure(o == v, || format!("tuple {tuple:?}: v = {v}, o = {o}"))?;
    }
    Ok(table.nonzero().count())
}

#[test]
fn criterion_06_v_equals_o() {
    criterion(6, "v = o oracle equivalence", secs(300), || {
        v_equals_o(&k4_one_crossing(), 2, 0)?;
        let pentagon = v_equals_o(&k5_pentagon(), 2, 0)?;
        ensure(pentagon == 5, || format!("pentagon has {pentagon} crossing tuples"))?;
        let (mut instances, mut nonzero) = (0, [0, 0]);
        for seed in 0..30 {
            nonzero[0] += v_equals_o(&random_map(simplex_skeleton(4, 1).unwrap(), 2, 600 + seed), 2, seed)?;
            instances += 1;
        }
        for seed in 0..10 {
            nonzero[0] += v_equals_o(&random_map(random_pure(6, 1, 14, seed), 2, 700 + seed), 2, seed)?;
            instances += 1;
        }
        for seed in 0..10 {
            nonzero[1] += v_equals_o(&random_map(random_pure(8, 2, 60, seed), 3, 800 + seed), 3, seed)?;
            instances += 1;
        }
        ensure(nonzero.iter().all(|&c| c > 0), || format!("no r-fold points met: {nonzero:?}"))?;
        Ok(format!(
            "K_4 one-crossing drawing, pentagon (5 tuples) and {instances}/50 random instances; nonzero tuples r = 2: {}, r = 3: {}",
            nonzero[0], nonzero[1]
        ))
    });
}

#[test]
fn criterion_07_van_kampen_obstruction() {
    criterion(7, "van Kampen obstruction", secs(300), || {
        let k5 = simplex_skeleton(4, 1).unwrap();
        for seed in 0..50u64 {
            let f = random_map(k5.clone(), 2, 7000 + seed);
            let (table, _) = f.with_generic_retries(seed, 16, |g| intersection_cocycle(g, 2)).unwrap();
            ensure(table.abs_sum() % 2 == 1, || format!("seed {seed}: Σ|v| = {} is even", table.abs_sum()))?;
            let v = cocycle_from_table(&k5, 2, &table).unwrap();
            let res = is_null_cohomologous(&v, &k5, 2).unwrap();
            ensure(res.verdict == Verdict::Nontrivial && res.verify(&v), || format!("seed {seed}: {:?}", res.verdict))?;
        }
        let f = k4_one_crossing();
        let v = cocycle_from_table(f.domain(), 2, &intersection_cocycle(&f, 2).unwrap()).unwrap();
        let res = is_null_cohomologous(&v, f.domain(), 2).unwrap();
        ensure(res.verdict == Verdict::Trivial && res.verify(&v), || "K_4 one-crossing drawing not certified trivial".into())?;
        Ok("50/50 K_5 drawings odd and nontrivial; K_4 trivial, certificate re-verified".into())
    });
}

fn group(r: usize, gens: &[Vec<Vec<usize>>]) -> PermGroup {
    let gens = gens
        .iter()
        .map(|cycles| cycles.iter().fold(Permutation::identity(r), |acc, c| acc.compose(&Permutation::cycle(r, c))))
        .collect();
    PermGroup::new(r, gens).unwrap()
}

#[test]
fn criterion_08_sylow() {
    criterion(8, "tree Sylow subgroups", secs(60), || {
        let mut checked = 0;
        for r in 2..=9usize {
            for p in (2..=r).filter(|&p| is_prime(p as u64)) {
                let g = sylow_tree_subgroup(r, p).unwrap();
                let alpha = p_order_in_factorial(r as u64, p as u64).unwrap();
                ensure(g.order() == p.pow(alpha), || format!("r = {r}, p = {p}: |G| = {}", g.order()))?;
                let power = (1..=r).any(|j| p.checked_pow(j as u32) == Some(r));
                ensure(g.is_transitive() == power, || format!("r = {r}, p = {p}: transitivity"))?;
                checked += 1;
            }
        }
        let expected = [
            (5, group(6, &[vec![vec![0, 1, 2, 3, 4]]])),
            (3, group(6, &[vec![vec![0, 1, 2]], vec![vec![3, 4, 5]]])),
            (2, group(6, &[vec![vec![0, 1]], vec![vec![0, 2], vec![1, 3]], vec![vec![4, 5]]])),
        ];
        for (p, want) in &expected {
            let g = sylow_tree_subgroup(6, *p).unwrap();
            ensure(g.elements() == want.elements(), || format!("r = 6, p = {p}: unexpected subgroup"))?;
            let split = invariant_block_split(&g).unwrap();
            ensure(split.k == 6 - want.orbits().last().unwrap().len(), || format!("r = 6, p = {p}: split {split:?}"))?;
        }
        Ok(format!("{checked} (r, p) pairs; r = 6 subgroups exactly as listed"))
    });
}

fn random_cochain(k: &Complex, r: usize, degree: usize, seed: u64) -> EquivariantCochain {
    let sym = PermGroup::symmetric(r);
    let n = EquivariantCochain::zero(k, r, degree, &sym).unwrap().values().len();
    let mut g = rng(seed);
    let vals: Vec<Integer> = (0..n).map(|_| Integer::from(g.gen_range(-50..=50))).collect();
    EquivariantCochain::from_values(k, r, degree, &sym, &vals).unwrap()
}

#[test]
fn criterion_09_transfer_identity() {
    criterion(9, "transfer ∘ restrict = index · id", secs(60), || {
        let tets = Complex::from_maximal_simplices(
            20,
            &[
                vec![0, 1, 2, 3],
                vec![4, 5, 6, 7],
                vec![8, 9, 10, 11],
                vec![12, 13, 14, 15],
                vec![16, 17, 18, 19],
                vec![0, 4, 8, 12],
                vec![1, 5, 9, 13],
            ],
        )
        .unwrap();
        let complexes = [(2, simplex_skeleton(4, 1).unwrap()), (3, random_pure(8, 2, 24, 9)), (4, tets)];
        let mut pairs = 0;
        for (r, k) in &complexes {
            let r = *r;
            let sym = PermGroup::symmetric(r);
            let mut subgroups: Vec<PermGroup> =
                (2..=r).filter(|&p| is_prime(p as u64)).map(|p| sylow_tree_subgroup(r, p).unwrap()).collect();
            subgroups.push(PermGroup::trivial(r));
            let top = Shape::of(k, r).unwrap().top_degree();
            ensure(!layer_cells(k, r, top).unwrap().is_empty(), || format!("r = {r}: empty top layer"))?;
            for g in &subgroups {
                let index = (sym.order() / g.order()) as i64;
                for seed in 0..100u64 {
                    let degree = if seed % 2 == 0 { top } else { top - 1 };
                    let c = random_cochain(k, r, degree, seed);
                    let back = transfer(&restrict_to_subgroup(&c, g).unwrap(), g).unwrap();
                    ensure(back == c.scaled(index), || format!("r = {r}, |G| = {}, seed {seed}", g.order()))?;
                }
                pairs += 1;
            }
        }
        Ok(format!("100 cochains for each of {pairs} (r, G) pairs, r = 2..4"))
    });
}

#[test]
fn criterion_10_constructions() {
    criterion(10, "join and constraint constructions", secs(60), || {
        let tri = plane(simplex_skeleton(2, 2).unwrap(), &[[0, 0], [1, 0], [0, 1]]);
        let joined = join_extension(&tri, 2).unwrap();
        ensure(joined.domain().is_full_simplex() && joined.domain().num_vertices() == 4, || "domain is not Δ_3".into())?;
        ensure(joined.ambient_dim() == 3, || "target is not R^3".into())?;
        ensure(joined.is_almost_r_embedding(2).unwrap(), || "join has a 2-fold point".into())?;
        for (n, s) in [(2usize, 1usize), (3, 1), (3, 2)] {
            let f = random_map(simplex_skeleton(n, n as i64).unwrap(), n, 10 + n as u64);
            let lift = constraint_lift(&f, s).unwrap();
            ensure(lift.vanishes_exactly_on_skeleton(), || format!("(N, s) = ({n}, {s})"))?;
        }
        Ok("Δ_3 → R^3 join has no 2-fold point; lifts vanish exactly on the skeleton for 3 cases".into())
    });
}

#[test]
fn criterion_11_pi_projection() {
    criterion(11, "π-projection equivariance", secs(60), || {
        let mut checks = 0;
        for r in 2..=4usize {
            for d in 1..=3usize {
                for seed in 0..100u64 {
                    let pts = random_points(&mut rng(seed * 16 + (r * 4 + d) as u64), r, d);
                    let base = pi_projection(&pts).unwrap();
                    for omega in Permutation::all(r) {
                        let mut moved = pts.clone();
                        for (j, p) in pts.iter().enumerate() {
                            moved[omega.apply(j)] = p.clone();
                        }
                        ensure(pi_projection(&moved).unwrap() == base.act(&omega), || {
                            format!("r = {r}, d = {d}, seed {seed}, ω = {omega:?}")
                        })?;
                        checks += 1;
                    }
                }
            }
        }
        Ok(format!("{checks} (input, ω) pairs"))
    });
}

fn distinct_prime_factors(mut r: u64) -> usize {
    let mut count = 0;
    let mut p = 2;
    while r > 1 {
        if r % p == 0 {
            count += 1;
            while r % p == 0 {
                r /= p;
            }
        }
        p += 1;
    }
    count
}

#[test]
fn criterion_12_ozaydin_report() {
    criterion(12, "Özaydin report", secs(60), || {
        let six = ozaydin_report(6).unwrap();
        ensure(six.relation_gcd == Integer::from(1) && six.argument_applies, || "r = 6 should apply".into())?;
        ensure(six.primes.len() == 3 && six.primes.iter().all(|row| !row.transitive), || "r = 6 primes".into())?;
        for r in [2, 3, 4, 5, 7, 8, 9] {
            ensure(!ozaydin_report(r).unwrap().argument_applies, || format!("r = {r} should not apply"))?;
        }
        for r in 2..=30usize {
            let rep = ozaydin_report(r).unwrap();
            let composite = distinct_prime_factors(r as u64) >= 2;
            ensure((rep.relation_gcd == Integer::from(1)) == composite, || format!("r = {r}: gcd {}", rep.relation_gcd))?;
        }
        Ok("r = 6 applies; prime powers up to 9 do not; gcd test matches factorization for r ≤ 30".into())
    });
}
