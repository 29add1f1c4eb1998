//! Balls in `R^{2k}` stabbable by a single line iff a graph has an
//! independent set of size `k`.
//!
//! Every ball comes with its antipode, so only lines through the origin need
//! to be considered. On each plane `E_i` the `2n` scaffold balls, all of
//! radius `r`, force the projection of a stabbing direction onto one of `2n`
//! apices of norm `1/√k`. A stabbing line is therefore named by a tuple in
//! `[2n]^k` and, up to sign, by its class in `[n]^k`. Constraint balls placed
//! on directions orthogonal to exactly one class pair `(u_i, u_j) = (u, v)`
//! remove that class and nothing else.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use itertools::Itertools;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::{line_stabs_ball, Ball, OriginLine, Vector};
use crate::graph::{Graph, Mode, VertexTuple};
use crate::{pairs, wrap_index};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CylinderParams {
    pub n: usize,
    pub k: usize,
    /// Common radius of every ball.
    pub r: f64,
    /// Norm of every apex, `1/√k`.
    pub lambda: f64,
    /// Normalization of the constraint directions.
    pub mu: f64,
}

impl CylinderParams {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        if n < 4 {
            return Err(Error::TooFewVertices { n, min: 4 });
        }
        if k < 2 {
            return Err(Error::KTooSmall { k, min: 2 });
        }
        let (nf, kf) = (n as f64, k as f64);
        let r = (1.0 - (1.0 - (PI / nf).cos()) / (2.0 * kf)).sqrt();
        let lambda = 1.0 / kf.sqrt();
        let mu = 1.0 / (9.0 * nf * nf + 36.0 * nf.powi(4) + 2.0).sqrt();
        Ok(CylinderParams {
            n,
            k,
            r,
            lambda,
            mu,
        })
    }

    /// Angle of apex `u ∈ [2n]` on every plane.
    ///
    /// For odd `n` the apices sit a quarter turn further round, on the
    /// multiples of `π/n`: the odd multiples of `π/(2n)` then include a
    /// direction perpendicular to a scaffold centre.
    pub fn apex_angle(&self, u: usize) -> f64 {
        let base = (2 * u - 1) as f64 * PI / (2 * self.n) as f64;
        if self.n % 2 == 1 {
            base + PI / 2.0
        } else {
            base
        }
    }

    /// Norm of the constraint ball centres: midpoint of `(r, √(k/(k−μ²))·r)`.
    pub fn constraint_center_norm(&self) -> f64 {
        let (lo, hi) = self.constraint_norm_window();
        (lo + hi) / 2.0
    }

    /// Open interval of admissible constraint centre norms.
    pub fn constraint_norm_window(&self) -> (f64, f64) {
        let k = self.k as f64;
        (self.r, (k / (k - self.mu * self.mu)).sqrt() * self.r)
    }

    fn check_plane(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.k {
            return Err(Error::PlaneOutOfRange {
                plane: i,
                planes: self.k,
            });
        }
        Ok(())
    }

    fn check_index(&self, u: usize) -> Result<()> {
        if u == 0 || u > 2 * self.n {
            return Err(Error::IndexOutOfRange {
                index: u,
                max: 2 * self.n,
            });
        }
        Ok(())
    }
}

pub fn make_params(n: usize, k: usize) -> Result<CylinderParams> {
    CylinderParams::new(n, k)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BallLabel {
    /// `B_iu`, `i ∈ [k]`, `u ∈ [2n]`.
    Scaffold { i: usize, u: usize },
    /// `±B_ij^{uv}`, `i ≠ j`, `u, v ∈ [2n]`.
    Constraint {
        i: usize,
        j: usize,
        u: usize,
        v: usize,
        sign: Sign,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct LabeledBall {
    pub ball: Ball,
    pub label: BallLabel,
}

/// `(u_1, ..., u_k) ∈ [2n]^k` naming the line through the apices `u_i`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LineTuple(pub Vec<usize>);

impl LineTuple {
    /// The tuple of the same line with the opposite direction.
    pub fn reversed(&self, n: usize) -> LineTuple {
        LineTuple(
            self.0
                .iter()
                .map(|&u| wrap_index((u + n) as i64, 2 * n))
                .collect(),
        )
    }

    /// Canonical representative: `u_1 ∈ [n]`.
    pub fn canonical(&self, n: usize) -> LineTuple {
        if self.0.first().is_some_and(|&u| u > n) {
            self.reversed(n)
        } else {
            self.clone()
        }
    }

    /// The class `L(u_1, ..., u_k)`, entries reduced into `[n]`.
    pub fn class(&self, n: usize) -> VertexTuple {
        VertexTuple(self.0.iter().map(|&u| wrap_index(u as i64, n)).collect())
    }
}

pub fn scaffold_center(p: &CylinderParams, i: usize, u: usize) -> Vector {
    let a = (u - 1) as f64 * PI / p.n as f64;
    Vector::on_plane(p.k, i, a.cos(), a.sin())
}

/// The `2nk` balls `B_iu`, ordered by `(i, u)`.
pub fn scaffold_balls(p: &CylinderParams) -> Vec<LabeledBall> {
    (1..=p.k)
        .cartesian_product(1..=2 * p.n)
        .map(|(i, u)| LabeledBall {
            ball: Ball::new(scaffold_center(p, i, u), p.r).expect("radius is positive"),
            label: BallLabel::Scaffold { i, u },
        })
        .collect()
}

/// The apices `A_i`; entry `u − 1` is the plane-`i` projection of any line
/// whose tuple has `u_i = u`, so entries `u` and `u + n` are antipodal.
pub fn apex_set(p: &CylinderParams, i: usize) -> Result<Vec<Vector>> {
    p.check_plane(i)?;
    Ok((1..=2 * p.n)
        .map(|u| {
            let a = p.apex_angle(u);
            Vector::on_plane(p.k, i, p.lambda * a.cos(), p.lambda * a.sin())
        })
        .collect())
}

pub fn line_from_tuple(p: &CylinderParams, t: &LineTuple) -> Result<OriginLine> {
    if t.0.len() != p.k {
        return Err(Error::DimensionMismatch {
            left: t.0.len(),
            right: p.k,
        });
    }
    let mut d = Vector::zeros(p.k);
    for (i, &u) in t.0.iter().enumerate() {
        p.check_index(u)?;
        let a = p.apex_angle(u);
        d.set_plane(i + 1, p.lambda * a.cos(), p.lambda * a.sin());
    }
    OriginLine::new(d)
}

/// The `n^k · 2^{k−1}` canonical tuples, lexicographically.
pub fn enumerate_candidate_lines(p: &CylinderParams) -> Vec<LineTuple> {
    std::iter::once(1..=p.n)
        .chain(std::iter::repeat_n(1..=2 * p.n, p.k - 1))
        .multi_cartesian_product()
        .map(LineTuple)
        .collect()
}

/// Unit direction `z` in `E_i × E_j` orthogonal to every line with
/// `(u_i, u_j) = (u, v)`.
pub fn constraint_direction(
    p: &CylinderParams,
    i: usize,
    j: usize,
    u: usize,
    v: usize,
) -> Result<Vector> {
    if i == j {
        return Err(Error::SamePlane(i));
    }
    p.check_plane(i)?;
    p.check_plane(j)?;
    p.check_index(u)?;
    p.check_index(v)?;
    let nf = p.n as f64;
    let (ti, tj) = (p.apex_angle(u), p.apex_angle(v));
    let (ci, si) = (ti.cos(), ti.sin());
    let (cj, sj) = (tj.cos(), tj.sin());
    let mut z = Vector::zeros(p.k);
    z.set_plane(i, p.mu * (ci - 3.0 * nf * si), p.mu * (si + 3.0 * nf * ci));
    z.set_plane(
        j,
        p.mu * (-cj - 6.0 * nf * nf * sj),
        p.mu * (-sj + 6.0 * nf * nf * cj),
    );
    Ok(z)
}

/// `α(u_i, u_j)` with the constraint fixed at `u = v = 1`, so that
/// `l'·z = (μ/√k)·α` for the line with those entries.
pub fn alpha(p: &CylinderParams, ui: usize, uj: usize) -> Result<f64> {
    p.check_index(ui)?;
    p.check_index(uj)?;
    let n = p.n;
    if (ui, uj) == (1, 1) || (ui, uj) == (n + 1, n + 1) {
        return Err(Error::ExcludedPair(ui, uj));
    }
    let nf = n as f64;
    let a = (ui - 1) as f64 * PI / nf;
    let b = (uj - 1) as f64 * PI / nf;
    Ok(a.cos() + 3.0 * nf * a.sin() - b.cos() + 6.0 * nf * nf * b.sin())
}

pub fn constraint_ball(p: &CylinderParams, i: usize, j: usize, u: usize, v: usize) -> Result<Ball> {
    let z = constraint_direction(p, i, j, u, v)?;
    Ball::new(z.scale(p.constraint_center_norm()), p.r)
}

/// `{±B_ij^{uv}, ±B_ij^{u v̄}}` with `v̄ = v + n`, for `u, v ∈ [n]`.
pub fn constraint_set(
    p: &CylinderParams,
    i: usize,
    j: usize,
    u: usize,
    v: usize,
) -> Result<Vec<LabeledBall>> {
    let mut out = Vec::with_capacity(4);
    for vv in [v, v + p.n] {
        let b = constraint_ball(p, i, j, u, vv)?;
        let label = |sign| BallLabel::Constraint {
            i,
            j,
            u,
            v: vv,
            sign,
        };
        let minus = b.antipode();
        out.push(LabeledBall {
            ball: b,
            label: label(Sign::Plus),
        });
        out.push(LabeledBall {
            ball: minus,
            label: label(Sign::Minus),
        });
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct CylinderInstance {
    pub params: CylinderParams,
    pub balls: Vec<LabeledBall>,
}

/// `B⁰ ∪ B_V ∪ B_E`: scaffold by `(i, u)`, then the distinctness sets by
/// `(u, i, j)` with `i < j`, then the edge sets by `(edge, i, j)` over
/// ordered `i ≠ j`.
pub fn build_instance(g: &Graph, k: usize) -> Result<CylinderInstance> {
    let p = CylinderParams::new(g.n(), k)?;
    let mut balls = scaffold_balls(&p);
    for u in 1..=p.n {
        for (i, j) in (1..=k).tuple_combinations() {
            balls.extend(constraint_set(&p, i, j, u, u)?);
        }
    }
    for (u, v) in g.edges() {
        for (i, j) in (1..=k).cartesian_product(1..=k).filter(|(i, j)| i != j) {
            balls.extend(constraint_set(&p, i, j, u, v)?);
        }
    }
    debug_assert_eq!(balls.len(), expected_ball_count(p.n, k, g.edge_count()));
    Ok(CylinderInstance { params: p, balls })
}

/// `2nk + 4·C(k,2)·(n + 2|E|)`.
pub fn expected_ball_count(n: usize, k: usize, edges: usize) -> usize {
    2 * n * k + 4 * pairs(k) * (n + 2 * edges)
}

pub fn stabs_all(inst: &CylinderInstance, l: &OriginLine, tol: f64) -> bool {
    inst.balls.iter().all(|b| line_stabs_ball(l, &b.ball, tol))
}

/// Stabbing classes with the first candidate line found for each.
pub fn solve_with_witnesses(inst: &CylinderInstance, tol: f64) -> BTreeMap<VertexTuple, LineTuple> {
    let p = &inst.params;
    let hits: Vec<LineTuple> = enumerate_candidate_lines(p)
        .into_par_iter()
        .filter(|t| {
            let l = line_from_tuple(p, t).expect("candidate tuples are valid");
            stabs_all(inst, &l, tol)
        })
        .collect();
    let mut out = BTreeMap::new();
    for t in hits {
        out.entry(t.class(p.n)).or_insert(t);
    }
    out
}

/// Class tuples in `[n]^k` with some candidate line stabbing every ball,
/// sorted lexicographically.
pub fn solve(inst: &CylinderInstance, tol: f64) -> Vec<VertexTuple> {
    solve_with_witnesses(inst, tol).into_keys().collect()
}

#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub solver: Vec<VertexTuple>,
    pub oracle: Vec<VertexTuple>,
    pub witnesses: BTreeMap<VertexTuple, LineTuple>,
    /// Tuples found by exactly one side.
    pub mismatches: Vec<VertexTuple>,
    pub equal: bool,
}

pub fn verify_against_oracle(g: &Graph, k: usize, tol: f64) -> Result<VerifyReport> {
    let inst = build_instance(g, k)?;
    let witnesses = solve_with_witnesses(&inst, tol);
    let solver: Vec<VertexTuple> = witnesses.keys().cloned().collect();
    let oracle = g.enumerate_solutions(k, Mode::IndependentSet, true)?;
    let mismatches = symmetric_difference(&solver, &oracle);
    Ok(VerifyReport {
        equal: mismatches.is_empty(),
        solver,
        oracle,
        witnesses,
        mismatches,
    })
}

pub(crate) fn symmetric_difference(a: &[VertexTuple], b: &[VertexTuple]) -> Vec<VertexTuple> {
    use std::collections::BTreeSet;
    let a: BTreeSet<_> = a.iter().collect();
    let b: BTreeSet<_> = b.iter().collect();
    a.symmetric_difference(&b).map(|t| (*t).clone()).collect()
}
