//! Line-oriented text format for generated instances.
//!
//! ```text
//! problem cylinder
//! param n 4
//! param k 2
//! param r 9.6269241990000000e-1
//! ball scaffold 1 1 radius <f> center <f> <f> <f> <f>
//! ball constraint 1 2 3 3 + radius <f> center ...
//! ```
//!
//! Separation files carry `point P ...` / `point Q ...` lines and MaxFS files
//! carry `equation ... coeffs <ints> rhs <int>` lines. Floats are written with
//! 17 significant digits so that parsing restores every bit.

use std::fmt::Write as _;

use geored::cylinder::{BallLabel, CylinderInstance, CylinderParams, LabeledBall, Sign};
use geored::geometry::{Ball, Vector};
use geored::maxfs::{EquationLabel, EquationSystem, LabeledEquation, LinearEquation};
use geored::separation::{LabeledPoint, PointLabel, SeparationInstance, SeparationParams};

use crate::error::CliError;
use crate::Problem;

#[derive(Debug, Clone, PartialEq)]
pub enum Instance {
    Cylinder(CylinderInstance),
    Separation(SeparationInstance),
    Maxfs(EquationSystem),
}

impl Instance {
    pub fn problem(&self) -> Problem {
        match self {
            Instance::Cylinder(_) => Problem::Cylinder,
            Instance::Separation(_) => Problem::Separation,
            Instance::Maxfs(_) => Problem::Maxfs,
        }
    }
}

pub fn format_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn push_coords(out: &mut String, v: &Vector) {
    for c in v.coords() {
        out.push(' ');
        out.push_str(&format_f64(*c));
    }
}

pub fn serialize(inst: &Instance) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "problem {}", inst.problem());
    match inst {
        Instance::Cylinder(c) => {
            let p = &c.params;
            let _ = writeln!(out, "param n {}", p.n);
            let _ = writeln!(out, "param k {}", p.k);
            let _ = writeln!(out, "param r {}", format_f64(p.r));
            let _ = writeln!(out, "param lambda {}", format_f64(p.lambda));
            let _ = writeln!(out, "param mu {}", format_f64(p.mu));
            for b in &c.balls {
                match b.label {
                    BallLabel::Scaffold { i, u } => {
                        let _ = write!(out, "ball scaffold {i} {u}");
                    }
                    BallLabel::Constraint { i, j, u, v, sign } => {
                        let _ = write!(out, "ball constraint {i} {j} {u} {v} {}", sign.symbol());
                    }
                }
                let _ = write!(out, " radius {} center", format_f64(b.ball.radius()));
                push_coords(&mut out, b.ball.center());
                out.push('\n');
            }
        }
        Instance::Separation(s) => {
            let _ = writeln!(out, "param n0 {}", s.params.n0);
            let _ = writeln!(out, "param n {}", s.params.n);
            let _ = writeln!(out, "param k {}", s.params.k);
            for (set, points) in [("P", &s.p), ("Q", &s.q)] {
                for lp in points {
                    let _ = write!(out, "point {set} ");
                    let _ = match lp.label {
                        PointLabel::Scaffold { i, u } => write!(out, "scaffold {i} {u}"),
                        PointLabel::Origin => write!(out, "origin"),
                        PointLabel::Constraint { i, j, u, v } => {
                            write!(out, "constraint {i} {j} {u} {v}")
                        }
                    };
                    out.push_str(" coords");
                    push_coords(&mut out, &lp.point);
                    out.push('\n');
                }
            }
        }
        Instance::Maxfs(m) => {
            let _ = writeln!(out, "param n {}", m.n);
            let _ = writeln!(out, "param k {}", m.k);
            for e in &m.equations {
                let _ = write!(out, "equation {} coeffs", e.label);
                for c in e.equation.coeffs() {
                    let _ = write!(out, " {c}");
                }
                let _ = writeln!(out, " rhs {}", e.equation.rhs());
            }
        }
    }
    out
}

struct Line<'a> {
    no: usize,
    words: Vec<&'a str>,
    pos: usize,
}

impl<'a> Line<'a> {
    fn err(&self, message: impl Into<String>) -> CliError {
        CliError::Format {
            line: self.no,
            message: message.into(),
        }
    }

    fn word(&mut self) -> Result<&'a str, CliError> {
        let w = self
            .words
            .get(self.pos)
            .copied()
            .ok_or_else(|| self.err("unexpected end of line"))?;
        self.pos += 1;
        Ok(w)
    }

    fn expect(&mut self, kw: &str) -> Result<(), CliError> {
        let w = self.word()?;
        if w != kw {
            return Err(self.err(format!("expected {kw:?}, found {w:?}")));
        }
        Ok(())
    }

    fn parse<T: std::str::FromStr>(&mut self) -> Result<T, CliError> {
        let w = self.word()?;
        w.parse()
            .map_err(|_| self.err(format!("malformed value {w:?}")))
    }

    fn usizes<const N: usize>(&mut self) -> Result<[usize; N], CliError> {
        let mut out = [0; N];
        for x in out.iter_mut() {
            *x = self.parse()?;
        }
        Ok(out)
    }

    fn rest<T: std::str::FromStr>(&mut self) -> Result<Vec<T>, CliError> {
        let mut out = Vec::new();
        while self.pos < self.words.len() {
            out.push(self.parse()?);
        }
        Ok(out)
    }

    fn finish(&self) -> Result<(), CliError> {
        match self.words.get(self.pos) {
            Some(w) => Err(self.err(format!("trailing token {w:?}"))),
            None => Ok(()),
        }
    }

    fn core<T>(&self, r: geored::Result<T>) -> Result<T, CliError> {
        r.map_err(|e| self.err(e.to_string()))
    }
}

#[derive(Default)]
struct Params {
    entries: Vec<(String, String, usize)>,
}

impl Params {
    fn get<T: std::str::FromStr>(&self, name: &str) -> Result<T, CliError> {
        let (_, value, line) =
            self.entries
                .iter()
                .find(|(k, _, _)| k == name)
                .ok_or_else(|| CliError::Format {
                    line: 0,
                    message: format!("missing param {name:?}"),
                })?;
        value.parse().map_err(|_| CliError::Format {
            line: *line,
            message: format!("malformed param {name}"),
        })
    }
}

pub fn parse(text: &str) -> Result<Instance, CliError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| Line {
            no: i + 1,
            words: l.split_whitespace().collect(),
            pos: 0,
        })
        .filter(|l| !l.words.is_empty() && !l.words[0].starts_with('#'));

    let mut head = lines.next().ok_or(CliError::Format {
        line: 1,
        message: "empty instance file".into(),
    })?;
    head.expect("problem")?;
    let problem: Problem = head.parse()?;
    head.finish()?;

    let mut params = Params::default();
    let mut body = Vec::new();
    for mut l in lines {
        if l.words[0] == "param" {
            l.pos = 1;
            let name = l.word()?.to_string();
            let value = l.word()?.to_string();
            l.finish()?;
            if params.entries.iter().any(|(k, _, _)| *k == name) {
                return Err(l.err(format!("duplicate param {name:?}")));
            }
            params.entries.push((name, value, l.no));
        } else {
            body.push(l);
        }
    }

    match problem {
        Problem::Cylinder => parse_cylinder(&params, body).map(Instance::Cylinder),
        Problem::Separation => parse_separation(&params, body).map(Instance::Separation),
        Problem::Maxfs => parse_maxfs(&params, body).map(Instance::Maxfs),
    }
}

fn vector(l: &mut Line, dim: usize) -> Result<Vector, CliError> {
    let coords: Vec<f64> = l.rest()?;
    if coords.len() != dim {
        return Err(l.err(format!(
            "expected {dim} coordinates, found {}",
            coords.len()
        )));
    }
    l.core(Vector::new(coords))
}

fn parse_cylinder(params: &Params, body: Vec<Line>) -> Result<CylinderInstance, CliError> {
    let p = CylinderParams {
        n: params.get("n")?,
        k: params.get("k")?,
        r: params.get("r")?,
        lambda: params.get("lambda")?,
        mu: params.get("mu")?,
    };
    let mut balls = Vec::with_capacity(body.len());
    for mut l in body {
        l.expect("ball")?;
        let label = match l.word()? {
            "scaffold" => {
                let [i, u] = l.usizes()?;
                BallLabel::Scaffold { i, u }
            }
            "constraint" => {
                let [i, j, u, v] = l.usizes()?;
                let sign = match l.word()? {
                    "+" => Sign::Plus,
                    "-" => Sign::Minus,
                    w => return Err(l.err(format!("bad sign {w:?}"))),
                };
                BallLabel::Constraint { i, j, u, v, sign }
            }
            w => return Err(l.err(format!("unknown ball kind {w:?}"))),
        };
        l.expect("radius")?;
        let radius: f64 = l.parse()?;
        l.expect("center")?;
        let center = vector(&mut l, 2 * p.k)?;
        let ball = l.core(Ball::new(center, radius))?;
        balls.push(LabeledBall { ball, label });
    }
    Ok(CylinderInstance { params: p, balls })
}

fn parse_separation(params: &Params, body: Vec<Line>) -> Result<SeparationInstance, CliError> {
    let p = SeparationParams::new(params.get("n0")?, params.get("k")?).map_err(CliError::Core)?;
    if params.get::<usize>("n")? != p.n {
        return Err(CliError::Format {
            line: 0,
            message: format!("param n must equal 2*n0 = {}", p.n),
        });
    }
    let (mut ps, mut qs) = (Vec::new(), Vec::new());
    for mut l in body {
        l.expect("point")?;
        let set = l.word()?;
        let label = match l.word()? {
            "scaffold" => {
                let [i, u] = l.usizes()?;
                PointLabel::Scaffold { i, u }
            }
            "origin" => PointLabel::Origin,
            "constraint" => {
                let [i, j, u, v] = l.usizes()?;
                PointLabel::Constraint { i, j, u, v }
            }
            w => return Err(l.err(format!("unknown point kind {w:?}"))),
        };
        l.expect("coords")?;
        let point = vector(&mut l, 2 * p.k)?;
        let lp = LabeledPoint { point, label };
        match (set, label) {
            ("P", PointLabel::Scaffold { .. }) => ps.push(lp),
            ("Q", PointLabel::Origin | PointLabel::Constraint { .. }) => qs.push(lp),
            _ => return Err(l.err(format!("point kind not allowed in set {set:?}"))),
        }
    }
    Ok(SeparationInstance {
        params: p,
        p: ps,
        q: qs,
    })
}

fn parse_maxfs(params: &Params, body: Vec<Line>) -> Result<EquationSystem, CliError> {
    let n: usize = params.get("n")?;
    let k: usize = params.get("k")?;
    let mut equations = Vec::with_capacity(body.len());
    for mut l in body {
        l.expect("equation")?;
        let label = match l.word()? {
            "scaffold" => {
                let [i, v] = l.usizes()?;
                EquationLabel::Scaffold { i, v }
            }
            "edge" => {
                let [i, j, u, v] = l.usizes()?;
                EquationLabel::Edge { i, j, u, v }
            }
            w => return Err(l.err(format!("unknown equation kind {w:?}"))),
        };
        l.expect("coeffs")?;
        let mut coeffs = Vec::with_capacity(k);
        for _ in 0..k {
            coeffs.push(l.parse::<i64>()?);
        }
        l.expect("rhs")?;
        let rhs: i64 = l.parse()?;
        l.finish()?;
        let equation = l.core(LinearEquation::new(coeffs, rhs))?;
        equations.push(LabeledEquation { equation, label });
    }
    Ok(EquationSystem { n, k, equations })
}

#[cfg(test)]
mod tests {
    use super::*;
    use geored::Graph;

    fn path() -> Graph {
        Graph::new(4, [(1, 2), (2, 3), (3, 4)]).unwrap()
    }

    #[test]
    fn float_text_is_bit_exact() {
        for x in [
            0.1,
            1.0 / 3.0,
            -2.5e-300,
            f64::MIN_POSITIVE,
            0.9626924199,
            1e300,
        ] {
            let s = format_f64(x);
            assert_eq!(s.parse::<f64>().unwrap().to_bits(), x.to_bits(), "{s}");
        }
    }

    #[test]
    fn round_trips() {
        let g = path();
        for inst in [
            Instance::Cylinder(geored::cylinder::build_instance(&g, 2).unwrap()),
            Instance::Separation(geored::separation::build_instance(&g, 2).unwrap()),
            Instance::Maxfs(geored::maxfs::build_system(&g, 3).unwrap()),
        ] {
            let text = serialize(&inst);
            let back = parse(&text).unwrap();
            assert_eq!(back, inst);
            assert_eq!(serialize(&back), text);
        }
    }

    #[test]
    fn rejects_bad_files() {
        assert!(parse("").is_err());
        assert!(parse("problem nothing\n").is_err());
        assert!(parse(
            "problem maxfs\nparam n 3\nparam k 2\nequation scaffold 1 1 coeffs 0 0 rhs 1\n"
        )
        .is_err());
        assert!(parse(
            "problem maxfs\nparam n 3\nparam k 2\nequation scaffold 1 1 coeffs 1 0 rhs 1 extra\n"
        )
        .is_err());
        assert!(parse("problem maxfs\nparam k 2\n").is_err());
        let err = parse("problem cylinder\nparam n 4\nparam k 2\nparam r 0.9\nparam lambda 0.7\nparam mu 0.01\nball scaffold 1 1 radius 1 center 1 2\n")
            .unwrap_err();
        assert!(matches!(err, CliError::Format { line: 7, .. }));
    }

    #[test]
    fn comments_and_blank_lines_are_skipped() {
        let text = "# header\nproblem maxfs\n\nparam n 2\nparam k 2\nequation scaffold 1 1 coeffs 1 0 rhs 1\n";
        match parse(text).unwrap() {
            Instance::Maxfs(m) => assert_eq!(m.equations.len(), 1),
            _ => unreachable!(),
        }
    }
}
