//! Hyperplane systems in `R^k` whose maximum depth reaches `k + C(k,2)` iff
//! a graph has a `k`-clique, and the inequality systems obtained by doubling.
//!
//! All arithmetic is exact: coefficients are small integers and points are
//! arbitrary-precision rationals.

use std::collections::HashSet;
use std::fmt;

use itertools::Itertools;
use num::{BigInt, BigRational, One, Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{Graph, Mode, VertexTuple};
use crate::pairs;

pub type Rational = BigRational;

pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn integer_point(x: &[i64]) -> Vec<Rational> {
    x.iter()
        .map(|&v| Rational::from_integer(BigInt::from(v)))
        .collect()
}

/// `Σ coeffs_i · x_i = rhs`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinearEquation {
    coeffs: Vec<i64>,
    rhs: i64,
}

impl LinearEquation {
    pub fn new(coeffs: Vec<i64>, rhs: i64) -> Result<Self> {
        if coeffs.iter().all(|&c| c == 0) {
            return Err(Error::InvalidGeometry(
                "equation has no nonzero coefficient".into(),
            ));
        }
        Ok(LinearEquation { coeffs, rhs })
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn rhs(&self) -> i64 {
        self.rhs
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    /// `coeffs · x`.
    pub fn lhs_at(&self, x: &[Rational]) -> Rational {
        self.coeffs
            .iter()
            .zip(x)
            .filter(|(c, _)| **c != 0)
            .fold(Rational::zero(), |acc, (&c, xi)| acc + xi * BigInt::from(c))
    }

    pub fn holds_at(&self, x: &[Rational]) -> bool {
        self.lhs_at(x) == Rational::from_integer(BigInt::from(self.rhs))
    }

    pub fn holds_at_int(&self, x: &[i64]) -> bool {
        self.coeffs.iter().zip(x).map(|(c, v)| c * v).sum::<i64>() == self.rhs
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sense {
    Le,
    Ge,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinearInequality {
    pub coeffs: Vec<i64>,
    pub rhs: i64,
    pub sense: Sense,
}

impl LinearInequality {
    pub fn holds_at(&self, x: &[Rational]) -> bool {
        let lhs = LinearEquation {
            coeffs: self.coeffs.clone(),
            rhs: self.rhs,
        }
        .lhs_at(x);
        let rhs = Rational::from_integer(BigInt::from(self.rhs));
        match self.sense {
            Sense::Le => lhs <= rhs,
            Sense::Ge => lhs >= rhs,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EquationLabel {
    /// `h_i^v : x_i = v`.
    Scaffold { i: usize, v: usize },
    /// `h_ij^{uv} : (x_i − u) + n(x_j − v) = 0`.
    Edge {
        i: usize,
        j: usize,
        u: usize,
        v: usize,
    },
}

impl fmt::Display for EquationLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EquationLabel::Scaffold { i, v } => write!(f, "scaffold {i} {v}"),
            EquationLabel::Edge { i, j, u, v } => write!(f, "edge {i} {j} {u} {v}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledEquation {
    pub equation: LinearEquation,
    pub label: EquationLabel,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquationSystem {
    pub n: usize,
    pub k: usize,
    pub equations: Vec<LabeledEquation>,
}

impl EquationSystem {
    pub fn plain(&self) -> Vec<LinearEquation> {
        self.equations.iter().map(|e| e.equation.clone()).collect()
    }

    /// `k + C(k,2)`, the depth reached exactly at ordered `k`-cliques.
    pub fn target_depth(&self) -> usize {
        self.k + pairs(self.k)
    }
}

fn scaffold_labeled(n: usize, k: usize) -> Vec<LabeledEquation> {
    (1..=k)
        .cartesian_product(1..=n)
        .map(|(i, v)| {
            let mut coeffs = vec![0; k];
            coeffs[i - 1] = 1;
            LabeledEquation {
                equation: LinearEquation {
                    coeffs,
                    rhs: v as i64,
                },
                label: EquationLabel::Scaffold { i, v },
            }
        })
        .collect()
}

fn edge_labeled(g: &Graph, k: usize) -> Vec<LabeledEquation> {
    let n = g.n() as i64;
    let mut out = Vec::with_capacity(2 * g.edge_count() * pairs(k));
    for (a, b) in g.edges() {
        for (i, j) in (1..=k).tuple_combinations() {
            for (u, v) in [(a, b), (b, a)] {
                let mut coeffs = vec![0; k];
                coeffs[i - 1] = 1;
                coeffs[j - 1] = n;
                out.push(LabeledEquation {
                    equation: LinearEquation {
                        coeffs,
                        rhs: u as i64 + n * v as i64,
                    },
                    label: EquationLabel::Edge { i, j, u, v },
                });
            }
        }
    }
    out
}

/// The `nk` equations `x_i = v`.
pub fn scaffold_system(n: usize, k: usize) -> Vec<LinearEquation> {
    scaffold_labeled(n, k)
        .into_iter()
        .map(|e| e.equation)
        .collect()
}

/// `x_i + n·x_j = u + n·v` for `i < j` and both orientations of each edge.
pub fn edge_system(g: &Graph, k: usize) -> Result<Vec<LinearEquation>> {
    if k < 2 {
        return Err(Error::KTooSmall { k, min: 2 });
    }
    Ok(edge_labeled(g, k).into_iter().map(|e| e.equation).collect())
}

/// Scaffold equations by `(i, v)`, then edge equations by `(edge, i, j)`.
pub fn build_system(g: &Graph, k: usize) -> Result<EquationSystem> {
    if k < 2 {
        return Err(Error::KTooSmall { k, min: 2 });
    }
    let mut equations = scaffold_labeled(g.n(), k);
    equations.extend(edge_labeled(g, k));
    Ok(EquationSystem {
        n: g.n(),
        k,
        equations,
    })
}

fn check_dim(x: usize, k: usize) -> Result<()> {
    if x != k {
        return Err(Error::DimensionMismatch { left: x, right: k });
    }
    Ok(())
}

/// Number of equations satisfied exactly at `x`.
pub fn depth(x: &[Rational], eqs: &[LinearEquation]) -> Result<usize> {
    for e in eqs {
        check_dim(x.len(), e.dim())?;
    }
    Ok(eqs.iter().filter(|e| e.holds_at(x)).count())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridSolution {
    pub max_depth: usize,
    /// Grid points of maximum depth, lexicographically.
    pub argmax: Vec<VertexTuple>,
}

/// Maximizes depth over `[n]^k`.
pub fn solve_grid(sys: &EquationSystem) -> GridSolution {
    let eqs = sys.plain();
    let mut max_depth = 0;
    let mut argmax = Vec::new();
    for t in std::iter::repeat_n(1..=sys.n, sys.k).multi_cartesian_product() {
        let x: Vec<i64> = t.iter().map(|&v| v as i64).collect();
        let d = eqs.iter().filter(|e| e.holds_at_int(&x)).count();
        if d > max_depth {
            max_depth = d;
            argmax.clear();
        }
        if d == max_depth {
            argmax.push(VertexTuple(t));
        }
    }
    GridSolution { max_depth, argmax }
}

/// Row-reduces `rows` (each `[a_1, ..., a_k, b]`) in place and returns the
/// pivot columns, or `None` if the rows are linearly dependent.
fn eliminate(rows: &mut [Vec<Rational>], k: usize) -> Option<Vec<usize>> {
    let mut pivots = Vec::with_capacity(rows.len());
    let mut r = 0;
    for c in 0..k {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                let (pivot_row, row) = if i < r {
                    let (a, b) = rows.split_at_mut(r);
                    (&b[0], &mut a[i])
                } else {
                    let (a, b) = rows.split_at_mut(i);
                    (&a[r], &mut b[0])
                };
                for (x, p) in row.iter_mut().zip(pivot_row) {
                    *x -= &f * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (r == rows.len()).then_some(pivots)
}

fn augmented(e: &LinearEquation) -> Vec<Rational> {
    e.coeffs
        .iter()
        .chain(std::iter::once(&e.rhs))
        .map(|&v| Rational::from_integer(BigInt::from(v)))
        .collect()
}

/// Rank of the coefficient matrix.
pub fn rank(eqs: &[LinearEquation], k: usize) -> usize {
    let mut rows: Vec<Vec<Rational>> = eqs.iter().map(augmented).collect();
    let mut r = 0;
    for c in 0..k {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        for i in r + 1..rows.len() {
            if !rows[i][c].is_zero() {
                let f = &rows[i][c] / &rows[r][c];
                let pivot = rows[r].clone();
                for (x, p) in rows[i].iter_mut().zip(&pivot) {
                    *x -= &f * p;
                }
            }
        }
        r += 1;
    }
    r
}

/// Particular solution of a linearly independent subset, free variables at 0.
pub fn particular_solution(eqs: &[&LinearEquation], k: usize) -> Option<Vec<Rational>> {
    let mut rows: Vec<Vec<Rational>> = eqs.iter().map(|e| augmented(e)).collect();
    let pivots = eliminate(&mut rows, k)?;
    let mut x = vec![Rational::zero(); k];
    for (row, &c) in rows.iter().zip(&pivots) {
        x[c] = row[k].clone();
    }
    Some(x)
}

/// Candidate maximizers of depth over all of `R^k`.
///
/// Any point of maximum depth `m` lies on `m` hyperplanes; a maximal
/// independent subset of those cuts out a flat contained in all `m` of them,
/// and extending that subset to a full-rank independent subset of the whole
/// system picks a point of the same flat. So the particular solutions of the
/// independent subsets of size `rank` (plus the origin, for empty systems)
/// contain a maximizer.
pub fn candidate_points(eqs: &[LinearEquation], k: usize) -> Vec<Vec<Rational>> {
    let full_rank = rank(eqs, k);
    let mut seen: HashSet<Vec<Rational>> = HashSet::new();
    let mut out = Vec::new();
    let origin = vec![Rational::zero(); k];
    seen.insert(origin.clone());
    out.push(origin);
    if full_rank == 0 {
        return out;
    }
    let subsets: Vec<Vec<usize>> = (0..eqs.len()).combinations(full_rank).collect();
    let points: Vec<Vec<Rational>> = subsets
        .par_iter()
        .filter_map(|s| {
            let sel: Vec<&LinearEquation> = s.iter().map(|&i| &eqs[i]).collect();
            particular_solution(&sel, k)
        })
        .collect();
    for p in points {
        if seen.insert(p.clone()) {
            out.push(p);
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactSolution {
    pub max_depth: usize,
    pub witness: Vec<Rational>,
}

/// Exact maximum depth over `R^k` with a witness point.
pub fn solve_exact(eqs: &[LinearEquation], k: usize) -> Result<ExactSolution> {
    for e in eqs {
        check_dim(e.dim(), k)?;
    }
    let candidates = candidate_points(eqs, k);
    let best = candidates
        .into_par_iter()
        .map(|x| (eqs.iter().filter(|e| e.holds_at(&x)).count(), x))
        .reduce_with(|a, b| {
            if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) {
                b
            } else {
                a
            }
        })
        .expect("origin is always a candidate");
    Ok(ExactSolution {
        max_depth: best.0,
        witness: best.1,
    })
}

/// Each `a·x = b` becomes `a·x ≤ b` followed by `a·x ≥ b`.
pub fn equalities_to_inequalities(eqs: &[LinearEquation]) -> Vec<LinearInequality> {
    eqs.iter()
        .flat_map(|e| {
            [Sense::Le, Sense::Ge].map(|sense| LinearInequality {
                coeffs: e.coeffs.clone(),
                rhs: e.rhs,
                sense,
            })
        })
        .collect()
}

pub fn count_satisfied(x: &[Rational], ineqs: &[LinearInequality]) -> Result<usize> {
    for h in ineqs {
        check_dim(x.len(), h.coeffs.len())?;
    }
    Ok(ineqs.iter().filter(|h| h.holds_at(x)).count())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    /// At least `l` of the equations of `H_{G,k}`.
    Equations(usize),
    /// At least `l` of the doubled inequalities.
    Inequalities(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decision {
    pub holds: bool,
    /// Best count found (depth, or satisfied inequalities).
    pub best: usize,
    pub witness: Vec<Rational>,
}

pub fn decide(g: &Graph, k: usize, target: Target) -> Result<Decision> {
    let sys = build_system(g, k)?;
    let eqs = sys.plain();
    match target {
        Target::Equations(l) => {
            let sol = solve_exact(&eqs, k)?;
            Ok(Decision {
                holds: sol.max_depth >= l,
                best: sol.max_depth,
                witness: sol.witness,
            })
        }
        Target::Inequalities(l) => {
            let ineqs = equalities_to_inequalities(&eqs);
            let mut best: Option<(usize, Vec<Rational>)> = None;
            for x in candidate_points(&eqs, k) {
                let c = count_satisfied(&x, &ineqs)?;
                if best.as_ref().is_none_or(|(b, _)| c > *b) {
                    best = Some((c, x));
                }
            }
            let (best, witness) = best.expect("origin is always a candidate");
            Ok(Decision {
                holds: best >= l,
                best,
                witness,
            })
        }
    }
}

#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub grid: GridSolution,
    pub exact: ExactSolution,
    pub target_depth: usize,
    /// Ordered `k`-cliques from the oracle.
    pub oracle: Vec<VertexTuple>,
    pub witness_clique: Option<VertexTuple>,
    pub equal: bool,
}

pub fn verify_against_oracle(g: &Graph, k: usize) -> Result<VerifyReport> {
    let sys = build_system(g, k)?;
    let grid = solve_grid(&sys);
    let exact = solve_exact(&sys.plain(), k)?;
    let target_depth = sys.target_depth();
    let oracle = if k <= g.n() {
        g.enumerate_solutions(k, Mode::Clique, true)?
    } else {
        Vec::new()
    };
    let reached = exact.max_depth == target_depth;
    let maximizers_match = if reached {
        grid.argmax == oracle
    } else {
        oracle.is_empty()
    };
    let equal =
        grid.max_depth == exact.max_depth && reached == !oracle.is_empty() && maximizers_match;
    let witness_clique = reached.then(|| grid.argmax.first().cloned()).flatten();
    Ok(VerifyReport {
        grid,
        exact,
        target_depth,
        oracle,
        witness_clique,
        equal,
    })
}

/// Renders a rational as `num/den`.
pub fn format_rational(x: &Rational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Parses `num/den` or a bare integer.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.parse::<BigInt>().ok()?, d.parse::<BigInt>().ok()?),
        None => (s.parse::<BigInt>().ok()?, BigInt::one()),
    };
    if d.is_zero() || d.is_negative() {
        return None;
    }
    Some(Rational::new(n, d))
}
