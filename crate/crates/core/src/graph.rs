//! Simple undirected graphs on `[n] = {1, ..., n}` and the brute-force
//! independent-set / clique oracle every reduction is checked against.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;

use crate::error::{Error, Result};

/// Undirected simple graph on vertices `1..=n`.
///
/// Edges are stored as `(u, v)` with `u < v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
    adj: Vec<bool>,
}

/// An ordered tuple of vertices. Entries may repeat.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexTuple(pub Vec<usize>);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    IndependentSet,
    Clique,
}

impl Graph {
    /// Builds a graph, canonicalizing and deduplicating edges.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::TooFewVertices { n, min: 1 });
        }
        let mut g = Graph {
            n,
            edges: BTreeSet::new(),
            adj: vec![false; n * n],
        };
        for (u, v) in edges {
            g.insert_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn empty(n: usize) -> Result<Self> {
        Self::new(n, [])
    }

    pub fn complete(n: usize) -> Result<Self> {
        Self::new(n, (1..=n).tuple_combinations())
    }

    fn insert_edge(&mut self, u: usize, v: usize) -> Result<()> {
        for x in [u, v] {
            if x == 0 || x > self.n {
                return Err(Error::IndexOutOfRange {
                    index: x,
                    max: self.n,
                });
            }
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        self.edges.insert((a, b));
        self.adj[(a - 1) * self.n + (b - 1)] = true;
        self.adj[(b - 1) * self.n + (a - 1)] = true;
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in ascending order, each as `(u, v)` with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        if u == 0 || v == 0 || u > self.n || v > self.n {
            return false;
        }
        self.adj[(u - 1) * self.n + (v - 1)]
    }

    pub fn complement(&self) -> Graph {
        let edges = (1..=self.n)
            .tuple_combinations()
            .filter(|&(u, v)| !self.has_edge(u, v));
        Graph::new(self.n, edges).expect("complement of a valid graph is valid")
    }

    /// The graph on `2n` vertices where `u' = u + n` is a twin of `u`.
    ///
    /// Each original edge `uv` becomes `uv, uv', u'v, u'v'`, and every twin
    /// pair `uu'` is joined as well, so an independent set never contains both
    /// copies of one original vertex. Independent sets of size `k` exist in
    /// the result iff they exist in `self`, and `uv ∈ E` iff `u'v' ∈ E`.
    pub fn duplicate_vertices(&self) -> Result<Graph> {
        let n0 = self.n;
        if n0 < 2 {
            return Err(Error::TooFewVertices { n: n0, min: 2 });
        }
        let mut edges = Vec::with_capacity(4 * self.edges.len() + n0);
        for (u, v) in self.edges() {
            edges.extend([(u, v), (u, v + n0), (u + n0, v), (u + n0, v + n0)]);
        }
        edges.extend((1..=n0).map(|u| (u, u + n0)));
        Graph::new(2 * n0, edges)
    }

    pub fn is_independent_set(&self, t: &VertexTuple) -> bool {
        t.all_distinct()
            && t.0
                .iter()
                .tuple_combinations()
                .all(|(&a, &b)| !self.has_edge(a, b))
    }

    pub fn is_clique(&self, t: &VertexTuple) -> bool {
        t.all_distinct()
            && t.0
                .iter()
                .tuple_combinations()
                .all(|(&a, &b)| self.has_edge(a, b))
    }

    pub fn satisfies(&self, t: &VertexTuple, mode: Mode) -> bool {
        match mode {
            Mode::IndependentSet => self.is_independent_set(t),
            Mode::Clique => self.is_clique(t),
        }
    }

    /// Every `k`-subset satisfying `mode`, in lexicographic order.
    ///
    /// With `ordered`, every permutation of each subset is returned instead of
    /// its ascending representative.
    pub fn enumerate_solutions(
        &self,
        k: usize,
        mode: Mode,
        ordered: bool,
    ) -> Result<Vec<VertexTuple>> {
        if k == 0 || k > self.n {
            return Err(Error::KOutOfRange { k, n: self.n });
        }
        let sets = (1..=self.n)
            .combinations(k)
            .map(VertexTuple)
            .filter(|t| self.satisfies(t, mode));
        let mut out: Vec<VertexTuple> = if ordered {
            sets.flat_map(|t| t.0.into_iter().permutations(k).map(VertexTuple))
                .collect()
        } else {
            sets.collect()
        };
        out.sort();
        Ok(out)
    }
}

impl VertexTuple {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn all_distinct(&self) -> bool {
        self.0.iter().all_unique()
    }
}

impl From<Vec<usize>> for VertexTuple {
    fn from(v: Vec<usize>) -> Self {
        VertexTuple(v)
    }
}

impl fmt::Display for VertexTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.iter().join(" "))
    }
}

impl fmt::Display for Graph {
    /// Writes the graph in the text format accepted by [`parse_graph`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.n, self.edges.len())?;
        for (u, v) in self.edges() {
            writeln!(f, "{u} {v}")?;
        }
        Ok(())
    }
}

impl FromStr for Graph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_graph(s)
    }
}

/// Parses `"n m"` followed by `m` lines `"u v"`.
///
/// Blank lines and lines starting with `#` are ignored. Duplicate edges
/// collapse; self-loops and out-of-range vertices are errors that name the
/// offending line.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let err = |line: usize, message: String| Error::Parse { line, message };
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hline, header) = lines
        .next()
        .ok_or_else(|| err(1, "missing header \"n m\"".into()))?;
    let (n, m) =
        parse_pair(header).ok_or_else(|| err(hline, format!("malformed header {header:?}")))?;
    if n == 0 {
        return Err(err(hline, "vertex count must be positive".into()));
    }

    let mut g = Graph::new(n, [])?;
    let mut seen = 0;
    for (lineno, line) in lines {
        if seen == m {
            return Err(err(
                lineno,
                format!("unexpected line after {m} edges: {line:?}"),
            ));
        }
        let (u, v) =
            parse_pair(line).ok_or_else(|| err(lineno, format!("malformed edge {line:?}")))?;
        if u == 0 || u > n || v == 0 || v > n {
            return Err(err(
                lineno,
                format!("vertex out of range 1..={n} in {line:?}"),
            ));
        }
        if u == v {
            return Err(err(lineno, format!("self-loop at vertex {u}")));
        }
        g.insert_edge(u, v)?;
        seen += 1;
    }
    if seen < m {
        return Err(err(
            text.lines().count().max(1),
            format!("expected {m} edges, found {seen}"),
        ));
    }
    Ok(g)
}

fn parse_pair(line: &str) -> Option<(usize, usize)> {
    let mut it = line.split_whitespace();
    let a = it.next()?.parse().ok()?;
    let b = it.next()?.parse().ok()?;
    it.next().is_none().then_some((a, b))
}
