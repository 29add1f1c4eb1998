//! Subcommand bodies. Each writes its report to `out` and returns the exit
//! status; errors are left to the caller.

use std::fs;
use std::io::Write;
use std::path::Path;

use geored::maxfs::{self, format_rational, EquationSystem};
use geored::{cylinder, separation, Graph, Mode, VertexTuple};

use crate::format::{self, Instance};
use crate::{CliError, Problem, EXIT_NONE, EXIT_OK};

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn io(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn stdout_err(source: std::io::Error) -> CliError {
    CliError::Io {
        path: "<stdout>".into(),
        source,
    }
}

pub fn read_graph(path: &Path) -> Result<Graph, CliError> {
    Ok(read(path)?.parse::<Graph>()?)
}

pub fn read_instance(path: &Path) -> Result<Instance, CliError> {
    format::parse(&read(path)?)
}

pub fn generate(problem: Problem, g: &Graph, k: usize) -> Result<Instance, CliError> {
    Ok(match problem {
        Problem::Cylinder => Instance::Cylinder(cylinder::build_instance(g, k)?),
        Problem::Separation => Instance::Separation(separation::build_instance(g, k)?),
        Problem::Maxfs => Instance::Maxfs(maxfs::build_system(g, k)?),
    })
}

/// One-line description of a generated instance.
pub fn summary(inst: &Instance) -> String {
    match inst {
        Instance::Cylinder(c) => format!(
            "cylinder n={} k={} balls={} r={} lambda={} mu={}",
            c.params.n,
            c.params.k,
            c.balls.len(),
            format::format_f64(c.params.r),
            format::format_f64(c.params.lambda),
            format::format_f64(c.params.mu)
        ),
        Instance::Separation(s) => format!(
            "separation n0={} n={} k={} p_points={} q_points={}",
            s.params.n0,
            s.params.n,
            s.params.k,
            s.p.len(),
            s.q.len()
        ),
        Instance::Maxfs(m) => format!(
            "maxfs n={} k={} equations={} target_depth={}",
            m.n,
            m.k,
            m.equations.len(),
            m.target_depth()
        ),
    }
}

pub fn cmd_gen(
    problem: Problem,
    graph: &Path,
    k: usize,
    out_path: &Path,
    out: &mut dyn Write,
) -> Result<u8, CliError> {
    let g = read_graph(graph)?;
    let inst = generate(problem, &g, k)?;
    fs::write(out_path, format::serialize(&inst)).map_err(io(out_path))?;
    writeln!(out, "{}", summary(&inst)).map_err(stdout_err)?;
    Ok(EXIT_OK)
}

/// Result of solving an instance: the printable report and whether a
/// solution exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveOutput {
    pub lines: Vec<String>,
    pub tuples: Vec<VertexTuple>,
    pub found: bool,
}

fn maxfs_output(sys: &EquationSystem) -> Result<SolveOutput, CliError> {
    let exact = maxfs::solve_exact(&sys.plain(), sys.k)?;
    let grid = maxfs::solve_grid(sys);
    let found = exact.max_depth == sys.target_depth();
    let tuples = if found && grid.max_depth == exact.max_depth {
        grid.argmax
    } else {
        Vec::new()
    };
    let witness: Vec<String> = exact.witness.iter().map(format_rational).collect();
    let mut lines = vec![
        format!("max_depth {}", exact.max_depth),
        format!("witness {}", witness.join(" ")),
    ];
    lines.extend(tuples.iter().map(ToString::to_string));
    Ok(SolveOutput {
        lines,
        tuples,
        found,
    })
}

pub fn solve_instance(inst: &Instance, tol: f64) -> Result<SolveOutput, CliError> {
    let tuples = match inst {
        Instance::Cylinder(c) => cylinder::solve(c, tol),
        Instance::Separation(s) => separation::solve(s, tol)?,
        Instance::Maxfs(m) => return maxfs_output(m),
    };
    Ok(SolveOutput {
        lines: tuples.iter().map(ToString::to_string).collect(),
        found: !tuples.is_empty(),
        tuples,
    })
}

pub fn cmd_solve(
    problem: Problem,
    instance: &Path,
    tol: f64,
    out: &mut dyn Write,
) -> Result<u8, CliError> {
    check_tol(tol)?;
    let inst = read_instance(instance)?;
    if inst.problem() != problem {
        return Err(CliError::Usage(format!(
            "instance is a {} file, not {problem}",
            inst.problem()
        )));
    }
    let res = solve_instance(&inst, tol)?;
    for l in &res.lines {
        writeln!(out, "{l}").map_err(stdout_err)?;
    }
    Ok(if res.found { EXIT_OK } else { EXIT_NONE })
}

fn check_tol(tol: f64) -> Result<(), CliError> {
    if !(tol.is_finite() && tol >= 0.0) {
        return Err(CliError::Usage(format!(
            "tolerance must be finite and non-negative, got {tol}"
        )));
    }
    Ok(())
}

/// Outcome of the in-process generate, solve and oracle comparison.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyLine {
    pub problem: Problem,
    pub pass: bool,
    pub detail: String,
    /// Solver output, as `solve` would print it for the generated instance.
    pub tuples: Vec<VertexTuple>,
}

impl VerifyLine {
    pub fn render(&self) -> String {
        format!(
            "{} {} {}",
            if self.pass { "PASS" } else { "FAIL" },
            self.problem,
            self.detail
        )
    }
}

pub fn verify(problem: Problem, g: &Graph, k: usize, tol: f64) -> Result<VerifyLine, CliError> {
    let (pass, detail, tuples) = match problem {
        Problem::Cylinder => {
            let r = cylinder::verify_against_oracle(g, k, tol)?;
            let d = format!(
                "n={} k={} classes={} oracle={} mismatches={}",
                g.n(),
                k,
                r.solver.len(),
                r.oracle.len(),
                r.mismatches.len()
            );
            (r.equal, d, r.solver)
        }
        Problem::Separation => {
            let r = separation::verify_against_oracle(g, k, tol)?;
            let d = format!(
                "n0={} k={} classes={} oracle_duplicated={} oracle={} mismatches={} predicate_disagreements={}",
                g.n(),
                k,
                r.solver.len(),
                r.oracle_duplicated.len(),
                r.oracle.len(),
                r.mismatches.len(),
                r.predicate_disagreements.len()
            );
            (r.equal, d, r.solver)
        }
        Problem::Maxfs => {
            let r = maxfs::verify_against_oracle(g, k)?;
            let mut d = format!(
                "n={} k={} max_depth={} target={} maximizers={} cliques={}",
                g.n(),
                k,
                r.exact.max_depth,
                r.target_depth,
                r.grid.argmax.len(),
                r.oracle.len()
            );
            if let Some(w) = &r.witness_clique {
                d.push_str(&format!(
                    " witness={}",
                    w.0.iter()
                        .map(ToString::to_string)
                        .collect::<Vec<_>>()
                        .join(",")
                ));
            }
            let tuples = if r.exact.max_depth == r.target_depth {
                r.grid.argmax
            } else {
                Vec::new()
            };
            (r.equal, d, tuples)
        }
    };
    Ok(VerifyLine {
        problem,
        pass,
        detail,
        tuples,
    })
}

pub fn cmd_verify(
    problems: &[Problem],
    graph: &Path,
    k: usize,
    tol: f64,
    out: &mut dyn Write,
) -> Result<u8, CliError> {
    check_tol(tol)?;
    let g = read_graph(graph)?;
    let mut all = true;
    for &p in problems {
        let line = verify(p, &g, k, tol)?;
        all &= line.pass;
        writeln!(out, "{}", line.render()).map_err(stdout_err)?;
    }
    Ok(if all { EXIT_OK } else { EXIT_NONE })
}

pub fn cmd_oracle(
    graph: &Path,
    k: usize,
    mode: Mode,
    ordered: bool,
    out: &mut dyn Write,
) -> Result<u8, CliError> {
    let g = read_graph(graph)?;
    let sols = g.enumerate_solutions(k, mode, ordered)?;
    for t in &sols {
        writeln!(out, "{t}").map_err(stdout_err)?;
    }
    Ok(if sols.is_empty() { EXIT_NONE } else { EXIT_OK })
}

pub fn cmd_random_graph(
    n: usize,
    p: f64,
    seed: u64,
    out_path: Option<&Path>,
    out: &mut dyn Write,
) -> Result<u8, CliError> {
    let text = crate::random_graph(n, p, seed)?.to_string();
    match out_path {
        Some(path) => fs::write(path, text).map_err(io(path))?,
        None => out.write_all(text.as_bytes()).map_err(stdout_err)?,
    }
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path4() -> Graph {
        Graph::new(4, [(1, 2), (2, 3), (3, 4)]).unwrap()
    }

    #[test]
    fn gen_counts() {
        let one_edge = Graph::new(4, [(1, 2)]).unwrap();
        match generate(Problem::Cylinder, &one_edge, 2).unwrap() {
            Instance::Cylinder(c) => assert_eq!(c.balls.len(), 40),
            _ => unreachable!(),
        }
        match generate(Problem::Maxfs, &Graph::complete(3).unwrap(), 2).unwrap() {
            Instance::Maxfs(m) => assert_eq!(m.equations.len(), 12),
            _ => unreachable!(),
        }
        match generate(Problem::Separation, &Graph::new(2, [(1, 2)]).unwrap(), 2).unwrap() {
            Instance::Separation(s) => {
                assert_eq!(s.p.len(), 8);
                assert_eq!(s.q.len(), 17);
            }
            _ => unreachable!(),
        }
        assert!(generate(Problem::Cylinder, &Graph::complete(3).unwrap(), 2).is_err());
    }

    #[test]
    fn solve_examples() {
        let k4 = generate(Problem::Cylinder, &Graph::complete(4).unwrap(), 2).unwrap();
        let r = solve_instance(&k4, 1e-9).unwrap();
        assert!(!r.found && r.lines.is_empty());

        let k3 = generate(Problem::Maxfs, &Graph::complete(3).unwrap(), 2).unwrap();
        let r = solve_instance(&k3, 1e-9).unwrap();
        assert!(r.found);
        assert_eq!(r.lines[0], "max_depth 3");
        assert_eq!(r.tuples.len(), 6);

        let empty = generate(Problem::Separation, &Graph::empty(2).unwrap(), 2).unwrap();
        let r = solve_instance(&empty, 1e-9).unwrap();
        assert!(r.found);
        for t in &r.tuples {
            assert!(r.tuples.contains(&separation::complement(t, 4)));
        }
    }

    #[test]
    fn verify_matches_file_pipeline() {
        let g = path4();
        for p in Problem::ALL {
            let line = verify(p, &g, 2, 1e-9).unwrap();
            assert!(line.pass, "{}", line.render());
            let text = format::serialize(&generate(p, &g, 2).unwrap());
            let solved = solve_instance(&format::parse(&text).unwrap(), 1e-9).unwrap();
            assert_eq!(solved.tuples, line.tuples, "{p}");
        }
    }

    #[test]
    fn verify_maxfs_k4() {
        let line = verify(Problem::Maxfs, &Graph::complete(4).unwrap(), 3, 1e-9).unwrap();
        assert!(line.pass);
        assert!(line.detail.contains("max_depth=6"));
    }
}
