//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any fails.

use std::fs;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use geored::cylinder::{
    self, alpha, constraint_direction, enumerate_candidate_lines, line_from_tuple, scaffold_balls,
    CylinderParams, LineTuple,
};
use geored::geometry::{line_stabs_ball, OriginLine, Vector};
use geored::maxfs::{
    self, count_satisfied, decide, depth, equalities_to_inequalities, rational, Rational, Target,
};
use geored::separation::{self, all_tuples, tangency_check, SeparationParams};
use geored::{Graph, Mode};
use geored_cli::commands::generate;
use geored_cli::{format, random_graph, Problem};
use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

const TOL: f64 = 1e-9;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check, Duration);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn all_graphs(n: usize) -> Vec<Graph> {
    let slots: Vec<(usize, usize)> = (1..=n).tuple_combinations().collect();
    (0..1u32 << slots.len())
        .map(|mask| {
            let edges = slots
                .iter()
                .enumerate()
                .filter(|(b, _)| mask >> b & 1 == 1)
                .map(|(_, e)| *e);
            Graph::new(n, edges).unwrap()
        })
        .collect()
}

fn random_graphs(n: usize, count: usize, seed: u64) -> Vec<Graph> {
    (0..count as u64)
        .map(|s| random_graph(n, 0.5, seed * 1000 + s).unwrap())
        .collect()
}

fn random_unit(rng: &mut ChaCha8Rng, dim: usize) -> Vector {
    loop {
        let v: Vec<f64> = (0..dim).map(|_| rng.sample(StandardNormal)).collect();
        let v = Vector::new(v).unwrap();
        if v.norm() > 1e-6 {
            return v.scale(1.0 / v.norm());
        }
    }
}

fn scaffold_line_count() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut sampled = 0;
    for (n, k) in (4..=6).cartesian_product(2..=3) {
        let p = CylinderParams::new(n, k).map_err(|e| e.to_string())?;
        let balls = scaffold_balls(&p);
        ensure(balls.len() == 2 * n * k, || {
            format!("n={n} k={k}: {} scaffold balls", balls.len())
        })?;
        let lines = enumerate_candidate_lines(&p);
        let expected = n.pow(k as u32) * (1 << (k - 1));
        ensure(lines.len() == expected, || {
            format!("n={n} k={k}: {} lines, expected {expected}", lines.len())
        })?;
        let dirs: Vec<OriginLine> = lines
            .iter()
            .map(|t| line_from_tuple(&p, t).unwrap())
            .collect();
        for (t, l) in lines.iter().zip(&dirs) {
            ensure(
                balls.iter().all(|b| line_stabs_ball(l, &b.ball, TOL)),
                || format!("n={n} k={k}: candidate {t:?} misses a scaffold ball"),
            )?;
        }
        let per_case = 10_000 / 6 + 1;
        for _ in 0..per_case {
            let d = random_unit(&mut rng, 2 * k);
            let near = dirs
                .iter()
                .any(|l| 1.0 - l.direction().dot(&d).unwrap().abs() < 1e-6);
            if near {
                continue;
            }
            let l = OriginLine::new(d).unwrap();
            ensure(
                !balls.iter().all(|b| line_stabs_ball(&l, &b.ball, TOL)),
                || format!("n={n} k={k}: random direction stabs every scaffold ball"),
            )?;
            sampled += 1;
        }
    }
    Ok(format!(
        "counts n^k*2^(k-1) for n in 4..6, k in 2..3; {sampled} random directions all miss"
    ))
}

fn lemma_one() -> Check {
    let mut worst = f64::INFINITY;
    let mut worst_excluded = 0.0f64;
    for (n, k) in (4..=8).cartesian_product(2..=3) {
        let p = CylinderParams::new(n, k).map_err(|e| e.to_string())?;
        ensure(
            (alpha(&p, n + 1, 1).unwrap().abs() - 2.0).abs() < 1e-9,
            || format!("n={n}: |alpha(n+1,1)| != 2"),
        )?;
        let lines: Vec<(LineTuple, LineTuple, OriginLine)> = enumerate_candidate_lines(&p)
            .into_iter()
            .map(|t| {
                let l = line_from_tuple(&p, &t).unwrap();
                (t.reversed(n), t, l)
            })
            .collect();
        let scale = (k as f64).sqrt() / p.mu;
        for (i, j) in (1..=k).cartesian_product(1..=k).filter(|(i, j)| i != j) {
            for (u, v) in (1..=2 * n).cartesian_product(1..=2 * n) {
                let z = constraint_direction(&p, i, j, u, v).unwrap();
                for (rev, t, l) in &lines {
                    let hit = |t: &LineTuple| t.0[i - 1] == u && t.0[j - 1] == v;
                    let c = l.direction().dot(&z).unwrap().abs();
                    if hit(t) || hit(rev) {
                        worst_excluded = worst_excluded.max(c);
                    } else {
                        worst = worst.min(c * scale);
                        ensure(c * scale > 1.0, || {
                            format!("n={n} k={k} i={i} j={j} u={u} v={v} {t:?}: {}", c * scale)
                        })?;
                    }
                }
            }
        }
    }
    ensure(worst_excluded < 1e-12, || {
        format!("excluded line |cos| = {worst_excluded:e}")
    })?;
    Ok(format!("min |cos w|*sqrt(k)/mu = {worst:.6}; max excluded |cos w| = {worst_excluded:.1e}; |alpha| = 2 spot value"))
}

fn cylinder_end_to_end() -> Check {
    let mut runs = 0;
    let mut cases: Vec<(Graph, usize)> = all_graphs(4).into_iter().map(|g| (g, 2)).collect();
    for (n, k) in (5..=6).cartesian_product(2..=3) {
        cases.extend(
            random_graphs(n, 50, (10 * n + k) as u64)
                .into_iter()
                .map(|g| (g, k)),
        );
    }
    for (g, k) in &cases {
        let r = cylinder::verify_against_oracle(g, *k, TOL).map_err(|e| e.to_string())?;
        ensure(r.equal, || {
            format!("k={k} graph {g:?}: mismatches {:?}", r.mismatches)
        })?;
        runs += 1;
    }
    for g in all_graphs(4) {
        let inst = cylinder::build_instance(&g, 2).unwrap();
        let base = cylinder::solve(&inst, TOL);
        for tol in [1e-8, 1e-10] {
            ensure(cylinder::solve(&inst, tol) == base, || {
                format!("tol={tol} changes the answer on {g:?}")
            })?;
        }
    }
    Ok(format!(
        "{runs} graphs agree with the ordered independent-set oracle; stable at tol 1e-8 and 1e-10"
    ))
}

fn separation_tangency() -> Check {
    let mut checks = 0usize;
    let mut min_margin = f64::INFINITY;
    let mut max_residual = 0.0f64;
    for (n, k) in [4, 6, 8, 10].into_iter().cartesian_product(2..=3) {
        let p = SeparationParams::new(n / 2, k).map_err(|e| e.to_string())?;
        for t in all_tuples(n, k) {
            for (i, j) in (1..=k).tuple_combinations() {
                let r = tangency_check(&p, &t, i, j, TOL).map_err(|e| e.to_string())?;
                ensure(
                    r.holds && r.touching_residual < 1e-9 && r.origin_margin > 0.0,
                    || format!("n={n} k={k} {t:?} ({i},{j}): {r:?}"),
                )?;
                max_residual = max_residual.max(r.touching_residual);
                min_margin = min_margin.min(r.origin_margin);
                checks += 1;
            }
        }
    }
    Ok(format!("{checks} checks; max touching residual {max_residual:.1e}; min origin margin {min_margin:.3e}"))
}

fn separation_end_to_end() -> Check {
    let mut cases: Vec<(Graph, usize)> = Vec::new();
    for n0 in 2..=4 {
        cases.extend(all_graphs(n0).into_iter().map(|g| (g, 2)));
    }
    for k in 2..=3 {
        cases.extend(
            random_graphs(5, 25, 500 + k as u64)
                .into_iter()
                .map(|g| (g, k)),
        );
    }
    let mut min_margin = f64::INFINITY;
    for (g, k) in &cases {
        let r = separation::verify_against_oracle(g, *k, TOL).map_err(|e| e.to_string())?;
        ensure(r.equal, || {
            format!("k={k} {g:?}: mismatches {:?}", r.mismatches)
        })?;
        ensure(r.solver.is_empty() == r.oracle.is_empty(), || {
            format!("existence differs on {g:?}")
        })?;
        let inst = separation::build_instance(g, *k).unwrap();
        for t in &r.solver {
            let v = separation::classify(&inst, t, TOL).map_err(|e| e.to_string())?;
            for side in [&v.main, &v.twin] {
                ensure(side.p_margin > 0.0 && side.q_margin > 0.0, || {
                    format!("{t:?} on {g:?}: {side:?}")
                })?;
                min_margin = min_margin.min(side.p_margin.min(side.q_margin));
            }
        }
    }
    Ok(format!(
        "{} graphs agree after duplication; min strict margin {min_margin:.3e}",
        cases.len()
    ))
}

fn maxfs_lemmas() -> Check {
    let mut runs = 0;
    for k in 2..=3 {
        for g in all_graphs(4) {
            let r = maxfs::verify_against_oracle(&g, k).map_err(|e| e.to_string())?;
            ensure(r.grid.max_depth == r.exact.max_depth, || {
                format!("k={k} {g:?}: grid != exact")
            })?;
            ensure(r.equal, || {
                format!("k={k} {g:?}: clique correspondence fails")
            })?;
            let cliques = g.enumerate_solutions(k, Mode::Clique, true).unwrap();
            ensure(
                (r.exact.max_depth == r.target_depth) == !cliques.is_empty(),
                || format!("{g:?}"),
            )?;
            runs += 1;
        }
    }
    Ok(format!(
        "{runs} systems: grid = exact, depth k+C(k,2) iff clique, maximizers = ordered cliques"
    ))
}

fn doubling_identity() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut points = 0;
    for g in all_graphs(4) {
        for k in 2..=3 {
            let eqs = maxfs::build_system(&g, k).unwrap().plain();
            let doubled = equalities_to_inequalities(&eqs);
            for _ in 0..100 {
                let x: Vec<Rational> = (0..k)
                    .map(|_| rational(rng.random_range(-8..=8), rng.random_range(1..=3)))
                    .collect();
                let c = count_satisfied(&x, &doubled).unwrap();
                ensure(c == eqs.len() + depth(&x, &eqs).unwrap(), || {
                    format!("identity fails at {x:?} on {g:?}")
                })?;
                points += 1;
            }
        }
        let m = maxfs::build_system(&g, 2).unwrap().equations.len();
        for l in 0..=4 {
            let a = decide(&g, 2, Target::Equations(l)).unwrap().holds;
            let b = decide(&g, 2, Target::Inequalities(m + l)).unwrap().holds;
            ensure(a == b, || format!("decide disagrees at l={l} on {g:?}"))?;
        }
    }
    Ok(format!(
        "{points} random points exact; decide agrees on all 64 graphs for l in 0..4"
    ))
}

fn determinism_round_trip() -> Check {
    let dir = tempfile::TempDir::new().map_err(|e| e.to_string())?;
    let mut graphs = all_graphs(4);
    graphs.extend(random_graphs(5, 5, 900));
    let mut files = 0;
    for (idx, g) in graphs.iter().enumerate() {
        for problem in Problem::ALL {
            for k in 2..=3 {
                let a = format::serialize(&generate(problem, g, k).map_err(|e| e.to_string())?);
                let b = format::serialize(&generate(problem, g, k).unwrap());
                ensure(a == b, || {
                    format!("{problem} regeneration differs on {g:?}")
                })?;
                let parsed = format::parse(&a).map_err(|e| e.to_string())?;
                ensure(parsed == generate(problem, g, k).unwrap(), || {
                    format!("{problem} parse mismatch on {g:?}")
                })?;
                ensure(format::serialize(&parsed) == a, || {
                    format!("{problem} text changes on re-serialize")
                })?;
                files += 1;
            }
        }
        if idx % 16 == 0 {
            let gp = dir.path().join("g.txt");
            fs::write(&gp, g.to_string()).unwrap();
            for problem in Problem::ALL {
                let mut outs = Vec::new();
                for run in 0..2 {
                    let out = dir.path().join(format!("{problem}{run}.inst"));
                    let status = Command::new(env!("CARGO_BIN_EXE_geored"))
                        .args(["gen", problem.name(), "--graph"])
                        .arg(&gp)
                        .args(["--k", "2", "--out"])
                        .arg(&out)
                        .output()
                        .map_err(|e| e.to_string())?;
                    ensure(status.status.success(), || {
                        format!("gen failed: {status:?}")
                    })?;
                    outs.push(fs::read(&out).unwrap());
                }
                ensure(outs[0] == outs[1], || {
                    format!("{problem}: two runs of gen differ")
                })?;
            }
        }
    }
    Ok(format!(
        "{files} instances regenerate byte-identically and round-trip exactly"
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        (
            "1 scaffold line count",
            scaffold_line_count,
            Duration::from_secs(30),
        ),
        (
            "2 constraint angle bound",
            lemma_one,
            Duration::from_secs(60),
        ),
        (
            "3 cylinder end-to-end",
            cylinder_end_to_end,
            Duration::from_secs(300),
        ),
        (
            "4 separation tangency",
            separation_tangency,
            Duration::from_secs(120),
        ),
        (
            "5 separation end-to-end",
            separation_end_to_end,
            Duration::from_secs(300),
        ),
        (
            "6 maxfs clique correspondence",
            maxfs_lemmas,
            Duration::from_secs(120),
        ),
        (
            "7 doubling identity",
            doubling_identity,
            Duration::from_secs(300),
        ),
        (
            "8 determinism and round-trip",
            determinism_round_trip,
            Duration::from_secs(300),
        ),
    ];
    let mut failed = 0;
    for (name, check, budget) in criteria {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(msg) if elapsed > budget => {
                Err(format!("{msg}; took {elapsed:.1?}, budget {budget:?}"))
            }
            other => other,
        };
        match outcome {
            Ok(msg) => println!("PASS criterion {name}: {msg} ({elapsed:.2?})"),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {name}: {msg} ({elapsed:.2?})");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
