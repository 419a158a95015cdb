use std::path::Path;

use serde_json::{json, Value};
use tvlab::complex::simplex_skeleton;
use tvlab::convex::{radon_partition, tverberg_search, TverbergPartition};
use tvlab::deleted_product::{DeletedProduct, ProductCell, DEFAULT_CELL_CAP};
use tvlab::equivariant::{
    cocycle_from_table, is_null_cohomologous, ozaydin_report, NullCohomologyCertificate, OzaydinReport,
};
use tvlab::homology::{connectivity_from_report, deleted_product_homology, Coefficients};
use tvlab::io::{from_json_str, integer_to_json, rational_to_string, ComplexFile, PLMapFile, PointsFile};
use tvlab::pl_maps::{
    coned_extension_oracle_seeded, constraint_lift, global_r_fold_points, intersection_cocycle, join_extension,
    IntersectionTable, PLMap, RFoldPoint,
};
use tvlab::random::{random_points, rng};
use tvlab::sym_group::{invariant_block_split, p_order_in_factorial, sylow_tree_subgroup, PAdicTree};
use tvlab::{Complex, Integer, RationalPoint};

use crate::args::*;
use crate::report::{Failure, Outcome, RunConfig};

/// Perturbation attempts for maps that are not in general position.
const GENERIC_ATTEMPTS: u32 = 16;

pub fn run(cli: &Cli) -> (RunConfig, Outcome) {
    let mut config = RunConfig {
        seed: cli.seed,
        output: cli.output.as_ref().map(|p| p.display().to_string()),
        ..RunConfig::default()
    };
    let outcome = cell_cap(cli.cell_cap).and_then(|cap| {
        config.cell_cap = cap;
        dispatch(&cli.command, &mut config)
    });
    (config, outcome)
}

fn cell_cap(flag: Option<u64>) -> Result<u64, Failure> {
    if let Some(c) = flag {
        return Ok(c);
    }
    match std::env::var("TVLAB_CELL_CAP") {
        Ok(v) => v.trim().parse().map_err(|_| Failure::input(format!("TVLAB_CELL_CAP must be an integer, got {v:?}"))),
        Err(_) => Ok(DEFAULT_CELL_CAP),
    }
}

fn dispatch(cmd: &Command, cfg: &mut RunConfig) -> Outcome {
    match cmd {
        Command::Dp(dp) => run_dp(dp, cfg),
        Command::Radon(a) => {
            cfg.command = "radon".into();
            run_radon(a, cfg)
        }
        Command::Tverberg(TverbergCommand::Search { points, random, d, r }) => {
            cfg.command = "tverberg search".into();
            cfg.r = Some(*r);
            run_tverberg(points.as_deref(), *random, *d, *r, cfg)
        }
        Command::Plmap(p) => run_plmap(p, cfg),
        Command::Vk(VkCommand::Obstruction { map, r, certificate }) => {
            cfg.command = "vk obstruction".into();
            cfg.r = Some(*r);
            cfg.options.insert("certificate".into(), json!(certificate));
            run_obstruction(map, *r, *certificate, cfg)
        }
        Command::Sylow(a) => {
            cfg.command = "sylow".into();
            cfg.r = Some(a.r);
            cfg.p = Some(a.p);
            run_sylow(a.r, a.p)
        }
        Command::Ozaydin(OzaydinCommand::Report { r }) => {
            cfg.command = "ozaydin report".into();
            cfg.r = Some(*r);
            let rep = ozaydin_report(*r)?;
            eprint!("{}", ozaydin_table(&rep));
            Ok(serde_json::to_value(&rep).expect("report serializes"))
        }
        Command::Puzzle(a) => {
            cfg.command = "puzzle".into();
            cfg.r = Some(a.r);
            cfg.options.insert("from".into(), json!(a.from));
            cfg.options.insert("to".into(), json!(a.to));
            let k = load_complex(&a.complex, cfg)?;
            let dp = DeletedProduct::with_cap(&k, a.r, cfg.cell_cap)?;
            let from: ProductCell = from_json_str(&a.from)?;
            let to: ProductCell = from_json_str(&a.to)?;
            let path = dp.puzzle_reachable(&from, &to)?;
            Ok(json!({ "reachable": path.reachable, "num_edges": path.num_edges(), "path": path.path }))
        }
        Command::Construct(c) => run_construct(c, cfg),
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path, cfg: &mut RunConfig) -> Result<T, Failure> {
    cfg.inputs.push(path.display().to_string());
    let text = std::fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    Ok(from_json_str(&text)?)
}

fn load_complex(a: &ComplexArgs, cfg: &mut RunConfig) -> Result<Complex, Failure> {
    match (a.n, &a.complex) {
        (Some(n), _) => {
            let s = a.s.unwrap_or(n as i64);
            cfg.n = Some(n);
            cfg.s = Some(s);
            Ok(simplex_skeleton(n, s)?)
        }
        (None, Some(path)) => Ok(read_json::<ComplexFile>(path, cfg)?.to_complex()?),
        (None, None) => Err(Failure::input("give --n (with optional --s) or --complex")),
    }
}

fn load_map(path: &Path, cfg: &mut RunConfig) -> Result<PLMap, Failure> {
    let file: PLMapFile = read_json(path, cfg)?;
    cfg.d = Some(file.d);
    Ok(PLMap::new(file.complex.to_complex()?, file.d, file.images()?)?)
}

fn run_dp(cmd: &DpCommand, cfg: &mut RunConfig) -> Outcome {
    let (name, complex, r) = match cmd {
        DpCommand::Stats { complex, r } => ("dp stats", complex, *r),
        DpCommand::Homology { complex, r, .. } => ("dp homology", complex, *r),
        DpCommand::Connectivity { complex, r } => ("dp connectivity", complex, *r),
    };
    cfg.command = name.into();
    cfg.r = Some(r);
    let k = load_complex(complex, cfg)?;
    let dp = DeletedProduct::with_cap(&k, r, cfg.cell_cap)?;
    match cmd {
        DpCommand::Stats { .. } => Ok(json!({
            "f_vector": dp.f_vector(),
            "dim": dp.dim(),
            "empty": dp.is_empty(),
            "num_cells": dp.num_cells(),
            "one_skeleton": dp.one_skeleton_stats(),
        })),
        DpCommand::Homology { p, .. } => {
            cfg.p = *p;
            let ring = match p {
                Some(p) => Coefficients::prime(*p)?,
                None => Coefficients::Integers,
            };
            let rep = deleted_product_homology(&dp, ring)?;
            Ok(json!({
                "homology": rep,
                "betti_numbers": rep.betti_numbers(),
                "reduced": rep.reduced(),
                "connectivity": connectivity_from_report(&rep),
            }))
        }
        DpCommand::Connectivity { .. } => {
            let rep = deleted_product_homology(&dp, Coefficients::Integers)?;
            Ok(json!({ "dim": dp.dim(), "connectivity": connectivity_from_report(&rep) }))
        }
    }
}

fn partition_json(p: &TverbergPartition) -> Value {
    serde_json::to_value(p).expect("partitions serialize")
}

/// Runs `check` on `count` instances with seeds `seed, seed+1, …`.
fn fuzz(count: usize, seed: u64, mut check: impl FnMut(u64) -> Result<bool, Failure>) -> Outcome {
    let mut failing = Vec::new();
    for i in 0..count as u64 {
        let s = seed.wrapping_add(i);
        if !check(s)? {
            failing.push(s);
        }
    }
    let result = json!({ "instances": count, "passed": count - failing.len(), "failing_seeds": failing });
    if failing.is_empty() {
        Ok(result)
    } else {
        let list: Vec<String> = failing.iter().map(u64::to_string).collect();
        Err(Failure::invariant(format!("{} instance(s) failed; seeds {}", failing.len(), list.join(", ")), result))
    }
}

fn load_points(path: &Path, cfg: &mut RunConfig) -> Result<Vec<RationalPoint>, Failure> {
    let file: PointsFile = read_json(path, cfg)?;
    cfg.d = Some(file.d);
    Ok(file.to_points()?)
}

fn run_radon(a: &RadonArgs, cfg: &mut RunConfig) -> Outcome {
    cfg.d = a.d;
    if let Some(count) = a.random {
        let d = a.d.expect("clap enforces --d");
        cfg.random = Some(count);
        return fuzz(count, cfg.seed, |s| {
            let pts = random_points(&mut rng(s), d + 2, d);
            Ok(radon_partition(&pts)?.verify(&pts))
        });
    }
    let path = a.points.as_ref().ok_or_else(|| Failure::input("give --points or --random"))?;
    let pts = load_points(path, cfg)?;
    let part = radon_partition(&pts)?;
    if !part.verify(&pts) {
        return Err(Failure::invariant("Radon certificate failed verification", partition_json(&part)));
    }
    Ok(partition_json(&part))
}

fn run_tverberg(points: Option<&Path>, random: Option<usize>, d: Option<usize>, r: usize, cfg: &mut RunConfig) -> Outcome {
    cfg.d = d;
    if let Some(count) = random {
        let d = d.expect("clap enforces --d");
        cfg.random = Some(count);
        let n = (d + 1) * r.saturating_sub(1) + 1;
        return fuzz(count, cfg.seed, |s| {
            let pts = random_points(&mut rng(s), n, d);
            Ok(tverberg_search(&pts, r)?.verify(&pts))
        });
    }
    let path = points.ok_or_else(|| Failure::input("give --points or --random"))?;
    let pts = load_points(path, cfg)?;
    let part = tverberg_search(&pts, r)?;
    if !part.verify(&pts) {
        return Err(Failure::invariant("Tverberg certificate failed verification", partition_json(&part)));
    }
    Ok(partition_json(&part))
}

fn rfold_json(p: &RFoldPoint) -> Value {
    json!({
        "simplices": p.simplices.iter().map(|s| json!({ "vertices": s.simplex, "sign": s.sign })).collect::<Vec<_>>(),
        "barycentric": p.barycentric.iter().map(|b| b.iter().map(rational_to_string).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "ambient": p.ambient,
        "sign": p.sign,
    })
}

/// Intersection cocycle of `f` or of its first generic perturbation.
fn generic_cocycle(f: &PLMap, r: usize, seed: u64) -> Result<(IntersectionTable, PLMap, Option<u64>), Failure> {
    let (table, used) = f.with_generic_retries(seed, GENERIC_ATTEMPTS, |g| intersection_cocycle(g, r))?;
    let map = used.map_or_else(|| f.clone(), |s| f.perturbed(s));
    Ok((table, map, used))
}

fn oracle_agrees(f: &PLMap, table: &IntersectionTable, seed: u64) -> Result<bool, Failure> {
    for (tuple, &v) in &table.entries {
        let (o, _) = coned_extension_oracle_seeded(f, tuple, seed, GENERIC_ATTEMPTS)?;
        if o != v {
            return Ok(false);
        }
    }
    Ok(true)
}

fn run_plmap(cmd: &PlmapCommand, cfg: &mut RunConfig) -> Outcome {
    match cmd {
        PlmapCommand::Rfold { map, r } => {
            cfg.command = "plmap rfold".into();
            cfg.r = Some(*r);
            let f = load_map(map, cfg)?;
            let (pts, used) = f.with_generic_retries(cfg.seed, GENERIC_ATTEMPTS, |g| global_r_fold_points(g, *r))?;
            Ok(json!({
                "count": pts.len(),
                "points": pts.iter().map(rfold_json).collect::<Vec<_>>(),
                "perturbation_seed": used,
            }))
        }
        PlmapCommand::Cocycle { map, r, fuzz_oracle, n, s, d } => {
            cfg.command = "plmap cocycle".into();
            cfg.r = Some(*r);
            if let Some(count) = fuzz_oracle {
                cfg.options.insert("fuzz_oracle".into(), json!(count));
                return match map {
                    Some(path) => {
                        let f = load_map(path, cfg)?;
                        let (table, g, _) = generic_cocycle(&f, *r, cfg.seed)?;
                        fuzz(*count, cfg.seed, |seed| oracle_agrees(&g, &table, seed))
                    }
                    None => {
                        let (n, s, d) = (n.ok_or_else(|| Failure::input("give --map or --n/--s/--d"))?, s.unwrap_or(0), d.unwrap_or(0));
                        cfg.n = Some(n);
                        cfg.s = Some(s);
                        cfg.d = Some(d);
                        let k = simplex_skeleton(n, s)?;
                        fuzz(*count, cfg.seed, |seed| {
                            let f = PLMap::new(k.clone(), d, random_points(&mut rng(seed), n + 1, d))?;
                            let (table, g, _) = generic_cocycle(&f, *r, seed)?;
                            oracle_agrees(&g, &table, seed)
                        })
                    }
                };
            }
            let path = map.as_ref().ok_or_else(|| Failure::input("give --map"))?;
            let f = load_map(path, cfg)?;
            let (table, _, used) = generic_cocycle(&f, *r, cfg.seed)?;
            Ok(json!({
                "table": table,
                "nonzero": table.nonzero().count(),
                "abs_sum": table.abs_sum(),
                "perturbation_seed": used,
            }))
        }
        PlmapCommand::Almost { map, r } => {
            cfg.command = "plmap almost".into();
            cfg.r = Some(*r);
            let f = load_map(map, cfg)?;
            Ok(json!({ "almost_r_embedding": f.is_almost_r_embedding(*r)? }))
        }
    }
}

fn run_obstruction(map: &Path, r: usize, with_certificate: bool, cfg: &mut RunConfig) -> Outcome {
    let f = load_map(map, cfg)?;
    let (table, _, used) = generic_cocycle(&f, r, cfg.seed)?;
    let v = cocycle_from_table(f.domain(), r, &table)?;
    let res = is_null_cohomologous(&v, f.domain(), r)?;
    let mut out = json!({
        "verdict": res.verdict,
        "support": v.support_size(),
        "abs_sum": table.abs_sum(),
        "top_orbits": res.coboundary.rows.len(),
        "codim1_orbits": res.coboundary.columns.len(),
        "perturbation_seed": used,
    });
    if with_certificate {
        out["certificate"] = match &res.certificate {
            NullCohomologyCertificate::Coboundary(c) => json!({
                "type": "coboundary",
                "degree": c.degree(),
                "values": c.values().iter().filter(|(_, x)| **x != Integer::default())
                    .map(|(cell, x)| json!({ "cell": cell, "value": integer_to_json(x) })).collect::<Vec<_>>(),
            }),
            NullCohomologyCertificate::Obstruction(w) => json!({
                "type": "obstruction",
                "rows": res.coboundary.rows,
                "witness": w.witness.iter().map(integer_to_json).collect::<Vec<_>>(),
                "modulus": integer_to_json(&w.modulus),
            }),
        };
    }
    if !res.verify(&v) {
        return Err(Failure::invariant("null-cohomology certificate failed verification", out));
    }
    Ok(out)
}

fn run_sylow(r: usize, p: u64) -> Outcome {
    let g = sylow_tree_subgroup(r, p as usize)?;
    let alpha = p_order_in_factorial(r as u64, p)?;
    let tree = PAdicTree::new(r, p as usize)?;
    let order = Integer::from(p).pow(tree.rotatable_vertices().len() as u32);
    let split = invariant_block_split(&g).ok();
    Ok(json!({
        "alpha_p": alpha,
        "order": integer_to_json(&order),
        "generators": g.generators().iter().map(|x| x.images()).collect::<Vec<_>>(),
        "orbits": g.orbits(),
        "transitive": g.is_transitive(),
        "split": split,
    }))
}

fn ozaydin_table(rep: &OzaydinReport) -> String {
    let mut s = format!("r = {}\n{:>4} {:>6} {:>14} {:>10} {:>9} {:>9}\n", rep.r, "p", "alpha", "|G|", "transitive", "split", "inv.point");
    for row in &rep.primes {
        let split = row.split.map_or("-".to_string(), |(a, b)| format!("{a}+{b}"));
        s += &format!(
            "{:>4} {:>6} {:>14} {:>10} {:>9} {:>9}\n",
            row.p, row.alpha_p, row.sylow_order, row.transitive, split, row.invariant_point
        );
    }
    s += &format!(
        "relation gcd {}; prime power: {}; argument applies: {}\n",
        rep.relation_gcd, rep.prime_power, rep.argument_applies
    );
    s
}

fn map_json(f: &PLMap) -> Value {
    serde_json::to_value(PLMapFile::from_parts(f.domain(), f.ambient_dim(), f.images())).expect("maps serialize")
}

fn run_construct(cmd: &ConstructCommand, cfg: &mut RunConfig) -> Outcome {
    match cmd {
        ConstructCommand::Join { map, r } => {
            cfg.command = "construct join".into();
            cfg.r = Some(*r);
            let f = load_map(map, cfg)?;
            let g = join_extension(&f, *r)?;
            Ok(json!({ "map": map_json(&g), "almost_r_embedding": g.is_almost_r_embedding(*r)? }))
        }
        ConstructCommand::Constraint { map, s } => {
            cfg.command = "construct constraint".into();
            cfg.s = Some(*s as i64);
            let f = load_map(map, cfg)?;
            let lift = constraint_lift(&f, *s)?;
            Ok(json!({
                "map": map_json(&lift.map),
                "carriers": lift.carriers,
                "vanishes_exactly_on_skeleton": lift.vanishes_exactly_on_skeleton(),
            }))
        }
    }
}
