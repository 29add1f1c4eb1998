//! Two point sets in `R^{2k}` separable by two hyperplanes iff a graph has an
//! independent set of size `k`.
//!
//! `P` puts `n` points evenly on the unit circle of every plane and `Q`
//! starts as the origin. A hyperplane missing the origin cuts at most `n/2`
//! consecutive segments `o p_iu` per plane, so a separating pair splits every
//! circle into two half-arcs, one pair per class tuple `(u_1, ..., u_k)`. The
//! extreme member of a class is the boundary hyperplane `H(u_1..u_k)` through
//! `p_{iu_i}, p_{iū_i}`. A constraint point `q_ij^{uv}` is the centroid of
//! `p_iu, p_iū, p_jv, p_jv̄`; it touches exactly the boundary hyperplanes with
//! `(u_i, u_j) = (u, v)` and lies strictly on the origin side of all others.

use std::f64::consts::PI;

use itertools::Itertools;
use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::{point_side, Hyperplane, Side, Vector};
use crate::graph::{Graph, Mode, VertexTuple};
use crate::{pairs, wrap_index};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SeparationParams {
    /// Vertices of the source graph.
    pub n0: usize,
    /// Vertices after duplication, `2·n0`.
    pub n: usize,
    pub k: usize,
}

impl SeparationParams {
    pub fn new(n0: usize, k: usize) -> Result<Self> {
        if n0 < 2 {
            return Err(Error::TooFewVertices { n: n0, min: 2 });
        }
        if k < 2 {
            return Err(Error::KTooSmall { k, min: 2 });
        }
        Ok(SeparationParams { n0, n: 2 * n0, k })
    }

    fn check_tuple(&self, t: &VertexTuple) -> Result<()> {
        if t.len() != self.k {
            return Err(Error::DimensionMismatch {
                left: t.len(),
                right: self.k,
            });
        }
        match t.0.iter().find(|&&u| u == 0 || u > self.n) {
            Some(&u) => Err(Error::IndexOutOfRange {
                index: u,
                max: self.n,
            }),
            None => Ok(()),
        }
    }
}

/// `u' = u + n/2`, reduced into `[n]`.
pub fn antipodal(u: usize, n: usize) -> Result<usize> {
    if !n.is_multiple_of(2) {
        return Err(Error::OddVertexCount(n));
    }
    Ok(wrap_index((u + n / 2) as i64, n))
}

/// `ū = u + n/2 + 1`, reduced into `[n]`.
pub fn almost_antipodal(u: usize, n: usize) -> Result<usize> {
    if !n.is_multiple_of(2) {
        return Err(Error::OddVertexCount(n));
    }
    Ok(wrap_index((u + n / 2 + 1) as i64, n))
}

/// The paired class `(u'_1, ..., u'_k)`.
pub fn complement(t: &VertexTuple, n: usize) -> VertexTuple {
    VertexTuple(
        t.0.iter()
            .map(|&u| wrap_index((u + n / 2) as i64, n))
            .collect(),
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PointLabel {
    /// `p_iu ∈ P`.
    Scaffold { i: usize, u: usize },
    /// `o ∈ Q`.
    Origin,
    /// `q_ij^{uv} ∈ Q`.
    Constraint {
        i: usize,
        j: usize,
        u: usize,
        v: usize,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct LabeledPoint {
    pub point: Vector,
    pub label: PointLabel,
}

pub fn scaffold_point(p: &SeparationParams, i: usize, u: usize) -> Vector {
    let a = (u - 1) as f64 * 2.0 * PI / p.n as f64;
    Vector::on_plane(p.k, i, a.cos(), a.sin())
}

/// `P` ordered by `(i, u)`, and `Q⁰ = {o}`.
pub fn scaffold(g0: &Graph, k: usize) -> Result<(Vec<LabeledPoint>, Vec<LabeledPoint>)> {
    let p = SeparationParams::new(g0.n(), k)?;
    Ok((
        scaffold_points(&p),
        vec![LabeledPoint {
            point: Vector::zeros(k),
            label: PointLabel::Origin,
        }],
    ))
}

fn scaffold_points(p: &SeparationParams) -> Vec<LabeledPoint> {
    (1..=p.k)
        .cartesian_product(1..=p.n)
        .map(|(i, u)| LabeledPoint {
            point: scaffold_point(p, i, u),
            label: PointLabel::Scaffold { i, u },
        })
        .collect()
}

/// Centroid of `p_iu, p_iū, p_jv, p_jv̄`.
pub fn constraint_point(
    p: &SeparationParams,
    i: usize,
    j: usize,
    u: usize,
    v: usize,
) -> Result<Vector> {
    if i == j {
        return Err(Error::SamePlane(i));
    }
    for plane in [i, j] {
        if plane == 0 || plane > p.k {
            return Err(Error::PlaneOutOfRange { plane, planes: p.k });
        }
    }
    for x in [u, v] {
        if x == 0 || x > p.n {
            return Err(Error::IndexOutOfRange { index: x, max: p.n });
        }
    }
    let angle = |x: usize| (x - 1) as f64 * 2.0 * PI / p.n as f64;
    let (ti, tib) = (angle(u), angle(almost_antipodal(u, p.n)?));
    let (tj, tjb) = (angle(v), angle(almost_antipodal(v, p.n)?));
    let mut q = Vector::zeros(p.k);
    q.set_plane(
        i,
        (ti.cos() + tib.cos()) / 4.0,
        (ti.sin() + tib.sin()) / 4.0,
    );
    q.set_plane(
        j,
        (tj.cos() + tjb.cos()) / 4.0,
        (tj.sin() + tjb.sin()) / 4.0,
    );
    Ok(q)
}

/// Radius of the sphere `S_ij` carrying every constraint point.
pub fn constraint_radius(n: usize) -> f64 {
    0.5f64.sqrt() * (PI / n as f64).sin()
}

/// The `2k` points `p_{iu_i}, p_{iū_i}` spanning `H(t)`.
fn defining_points(p: &SeparationParams, t: &VertexTuple) -> Result<Vec<Vector>> {
    let mut pts = Vec::with_capacity(2 * p.k);
    for (i, &u) in t.0.iter().enumerate() {
        pts.push(scaffold_point(p, i + 1, u));
        pts.push(scaffold_point(p, i + 1, almost_antipodal(u, p.n)?));
    }
    Ok(pts)
}

/// `P(t)`: on each plane the `n/2` points `p_iū, ..., p_iu` counter-clockwise.
pub fn class_points(p: &SeparationParams, t: &VertexTuple) -> Result<Vec<(usize, usize)>> {
    p.check_tuple(t)?;
    let mut out = Vec::with_capacity(p.k * p.n / 2);
    for (i, &u) in t.0.iter().enumerate() {
        let start = almost_antipodal(u, p.n)?;
        out.extend((0..p.n / 2).map(|s| (i + 1, wrap_index((start + s) as i64, p.n))));
    }
    Ok(out)
}

/// `H(t)` as `normal·x = 1`, solved from its `2k` defining points.
pub fn boundary_hyperplane(p: &SeparationParams, t: &VertexTuple) -> Result<Hyperplane> {
    p.check_tuple(t)?;
    let pts = defining_points(p, t)?;
    let d = 2 * p.k;
    let m = DMatrix::from_fn(d, d, |r, c| pts[r].coords()[c]);
    let rhs = DVector::from_element(d, 1.0);
    let sol = m
        .lu()
        .solve(&rhs)
        .ok_or_else(|| Error::Singular(format!("boundary hyperplane of {t:?}")))?;
    let h = Hyperplane::new(Vector::new(sol.iter().copied().collect())?, 1.0)?;
    let worst = pts.iter().map(|q| h.eval(q).abs()).fold(0.0, f64::max);
    if worst >= 1e-9 {
        return Err(Error::Singular(format!("residual {worst:e} for {t:?}")));
    }
    Ok(h)
}

#[derive(Debug, Clone, PartialEq)]
pub struct TangencyReport {
    /// `|normal·q_ij^{u_i u_j} − 1|`.
    pub touching_residual: f64,
    /// `min (1 − normal·q)` over the other `q_ij^{uv}`.
    pub origin_margin: f64,
    pub touching_side: Side,
    pub holds: bool,
}

/// Checks that `q_ij^{u_i u_j}` lies on `H(t)` and every other `q_ij^{uv}`
/// lies strictly on the origin side.
pub fn tangency_check(
    p: &SeparationParams,
    t: &VertexTuple,
    i: usize,
    j: usize,
    tol: f64,
) -> Result<TangencyReport> {
    if i >= j {
        return Err(Error::InvalidGeometry(format!(
            "expected i < j, got ({i}, {j})"
        )));
    }
    let h = boundary_hyperplane(p, t)?;
    let (ui, uj) = (t.0[i - 1], t.0[j - 1]);
    let touching = constraint_point(p, i, j, ui, uj)?;
    let touching_residual = h.eval(&touching).abs();
    let touching_side = point_side(&h, &touching, tol);
    let mut origin_margin = f64::INFINITY;
    let mut all_negative = true;
    for (u, v) in (1..=p.n).cartesian_product(1..=p.n) {
        if (u, v) == (ui, uj) {
            continue;
        }
        let q = constraint_point(p, i, j, u, v)?;
        origin_margin = origin_margin.min(-h.eval(&q));
        all_negative &= point_side(&h, &q, tol) == Side::Negative;
    }
    Ok(TangencyReport {
        touching_residual,
        origin_margin,
        touching_side,
        holds: touching_residual < tol && all_negative,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct SeparationInstance {
    pub params: SeparationParams,
    pub p: Vec<LabeledPoint>,
    pub q: Vec<LabeledPoint>,
}

/// Duplicates `g0`, then builds `P` and
/// `Q = {o} ∪ {q_ij^{uu} : i < j} ∪ {q_ij^{uv} : uv ∈ E, i ≠ j}`, the last two
/// ordered by `(u, i, j)` and `(edge, i, j)`.
pub fn build_instance(g0: &Graph, k: usize) -> Result<SeparationInstance> {
    let params = SeparationParams::new(g0.n(), k)?;
    let g = g0.duplicate_vertices()?;
    let p = scaffold_points(&params);
    let mut q = vec![LabeledPoint {
        point: Vector::zeros(k),
        label: PointLabel::Origin,
    }];
    let mut push = |i, j, u, v| -> Result<()> {
        q.push(LabeledPoint {
            point: constraint_point(&params, i, j, u, v)?,
            label: PointLabel::Constraint { i, j, u, v },
        });
        Ok(())
    };
    for u in 1..=params.n {
        for (i, j) in (1..=k).tuple_combinations() {
            push(i, j, u, u)?;
        }
    }
    for (u, v) in g.edges() {
        for (i, j) in (1..=k).cartesian_product(1..=k).filter(|(i, j)| i != j) {
            push(i, j, u, v)?;
        }
    }
    debug_assert_eq!(q.len(), expected_q_count(params.n, k, g.edge_count()));
    Ok(SeparationInstance { params, p, q })
}

/// `1 + n·C(k,2) + 2|E|·C(k,2)` with `n`, `|E|` of the duplicated graph.
pub fn expected_q_count(n: usize, k: usize, edges: usize) -> usize {
    1 + n * pairs(k) + 2 * edges * pairs(k)
}

/// One side of a candidate separating pair.
#[derive(Debug, Clone, PartialEq)]
pub struct SideVerdict {
    pub boundary: Hyperplane,
    /// `1 − max_Q normal·q`.
    pub q_gap: f64,
    /// Translate offset `1 − δ`, `δ = q_gap / 2`.
    pub offset: f64,
    /// `min over this side's half of P of normal·p − offset`.
    pub p_margin: f64,
    /// `min over Q of offset − normal·q`.
    pub q_margin: f64,
    /// Every `q` strictly below `H`, every point of the half-arc set on or above it.
    pub ok: bool,
}

impl SideVerdict {
    /// The translate `normal·x = 1 − δ` realizing strict separation.
    pub fn separating_hyperplane(&self) -> Hyperplane {
        self.boundary.translated_to(self.offset)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClassVerdict {
    pub tuple: VertexTuple,
    pub main: SideVerdict,
    pub twin: SideVerdict,
    pub separates: bool,
}

fn side_verdict(inst: &SeparationInstance, t: &VertexTuple, tol: f64) -> Result<SideVerdict> {
    let p = &inst.params;
    let boundary = boundary_hyperplane(p, t)?;
    let mut max_q = f64::NEG_INFINITY;
    let mut q_strict = true;
    for q in &inst.q {
        max_q = max_q.max(boundary.eval(&q.point) + 1.0);
        q_strict &= point_side(&boundary, &q.point, tol) == Side::Negative;
    }
    let q_gap = 1.0 - max_q;
    let offset = 1.0 - q_gap / 2.0;
    let mut p_margin = f64::INFINITY;
    let mut p_above = true;
    for (i, u) in class_points(p, t)? {
        let x = scaffold_point(p, i, u);
        p_above &= boundary.eval(&x) >= -tol;
        p_margin = p_margin.min(boundary.eval(&x) + 1.0 - offset);
    }
    Ok(SideVerdict {
        boundary,
        q_gap,
        offset,
        p_margin,
        q_margin: offset - max_q,
        ok: q_strict && p_above,
    })
}

/// Whether the class `t` and its complement both admit a translate strictly
/// separating their half of `P` from all of `Q`.
pub fn classify(inst: &SeparationInstance, t: &VertexTuple, tol: f64) -> Result<ClassVerdict> {
    let main = side_verdict(inst, t, tol)?;
    let twin = side_verdict(inst, &complement(t, inst.params.n), tol)?;
    let separates = main.ok && twin.ok;
    Ok(ClassVerdict {
        tuple: t.clone(),
        main,
        twin,
        separates,
    })
}

pub fn class_separates(inst: &SeparationInstance, t: &VertexTuple, tol: f64) -> Result<bool> {
    Ok(classify(inst, t, tol)?.separates)
}

/// The combinatorial prediction: `t` dies iff some `q_ij^{uv} ∈ Q` has
/// `(u_i, u_j) = (u, v)` or `(u'_i, u'_j) = (u, v)`.
pub fn killed_combinatorially(inst: &SeparationInstance, t: &VertexTuple) -> bool {
    let tc = complement(t, inst.params.n);
    inst.q.iter().any(|q| match q.label {
        PointLabel::Constraint { i, j, u, v } => {
            (t.0[i - 1], t.0[j - 1]) == (u, v) || (tc.0[i - 1], tc.0[j - 1]) == (u, v)
        }
        _ => false,
    })
}

pub fn all_tuples(n: usize, k: usize) -> impl Iterator<Item = VertexTuple> {
    std::iter::repeat_n(1..=n, k)
        .multi_cartesian_product()
        .map(VertexTuple)
}

/// Every separating class in `[n]^k`, lexicographically sorted.
pub fn solve(inst: &SeparationInstance, tol: f64) -> Result<Vec<VertexTuple>> {
    let p = &inst.params;
    let tuples: Vec<VertexTuple> = all_tuples(p.n, p.k).collect();
    let verdicts: Vec<Result<Option<VertexTuple>>> = tuples
        .into_par_iter()
        .map(|t| Ok(class_separates(inst, &t, tol)?.then_some(t)))
        .collect();
    let mut out = Vec::new();
    for v in verdicts {
        out.extend(v?);
    }
    out.sort();
    Ok(out)
}

#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub solver: Vec<VertexTuple>,
    /// Ordered independent `k`-tuples of the duplicated graph.
    pub oracle_duplicated: Vec<VertexTuple>,
    /// Solver classes mapped to original vertices (`v mod n0`), deduplicated.
    pub projected: Vec<VertexTuple>,
    /// Ordered independent `k`-tuples of the source graph.
    pub oracle: Vec<VertexTuple>,
    /// Classes whose geometric verdict disagrees with the combinatorial one.
    pub predicate_disagreements: Vec<VertexTuple>,
    pub mismatches: Vec<VertexTuple>,
    pub equal: bool,
}

pub fn verify_against_oracle(g0: &Graph, k: usize, tol: f64) -> Result<VerifyReport> {
    let inst = build_instance(g0, k)?;
    let solver = solve(&inst, tol)?;
    let n0 = inst.params.n0;
    let oracle_duplicated =
        g0.duplicate_vertices()?
            .enumerate_solutions(k, Mode::IndependentSet, true)?;
    let mut projected: Vec<VertexTuple> = solver
        .iter()
        .map(|t| VertexTuple(t.0.iter().map(|&u| wrap_index(u as i64, n0)).collect()))
        .collect();
    projected.sort();
    projected.dedup();
    let oracle = g0.enumerate_solutions(k, Mode::IndependentSet, true)?;

    let predicate_disagreements = all_tuples(inst.params.n, k)
        .filter(|t| solver.binary_search(t).is_ok() == killed_combinatorially(&inst, t))
        .collect::<Vec<_>>();
    let mut mismatches = crate::cylinder::symmetric_difference(&solver, &oracle_duplicated);
    mismatches.extend(crate::cylinder::symmetric_difference(&projected, &oracle));
    let equal = mismatches.is_empty() && predicate_disagreements.is_empty();
    Ok(VerifyReport {
        solver,
        oracle_duplicated,
        projected,
        oracle,
        predicate_disagreements,
        mismatches,
        equal,
    })
}
