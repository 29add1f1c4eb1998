//! Library half of the `geored` command-line tool: instance file format,
//! command implementations and the random graph generator.

use std::fmt;
use std::str::FromStr;

use clap::ValueEnum;
use geored::Graph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub mod commands;
pub mod error;
pub mod format;

pub use error::CliError;
pub use format::{parse, serialize, Instance};

/// Exit status for a found solution or a passing check.
pub const EXIT_OK: u8 = 0;
/// Exit status when no solution exists or a check failed.
pub const EXIT_NONE: u8 = 1;
/// Exit status for usage, input or generation errors.
pub const EXIT_ERROR: u8 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, ValueEnum)]
pub enum Problem {
    Cylinder,
    Separation,
    Maxfs,
}

impl Problem {
    pub const ALL: [Problem; 3] = [Problem::Cylinder, Problem::Separation, Problem::Maxfs];

    pub fn name(self) -> &'static str {
        match self {
            Problem::Cylinder => "cylinder",
            Problem::Separation => "separation",
            Problem::Maxfs => "maxfs",
        }
    }
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Problem {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        Problem::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| CliError::Usage(format!("unknown problem {s:?}")))
    }
}

/// Erdős–Rényi `G(n, p)`: each pair `u < v`, in lexicographic order, is an
/// edge with probability `p`.
pub fn random_graph(n: usize, p: f64, seed: u64) -> Result<Graph, CliError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(CliError::Usage(format!(
            "edge probability {p} not in [0, 1]"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 1..=n {
        for v in u + 1..=n {
            if rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Ok(Graph::new(n, edges)?)
}
