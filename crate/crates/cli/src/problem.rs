//! Problem files.
//!
//! ```text
//! # comments start with '#'
//! [ode]
//! a = 2, 1          # a0, a1, ...
//! b = 0, 1          # b0, b1, ...   (default 1)
//! init = 0.7        # y_s(0), y_s'(0), ...   (default zeros)
//!
//! [excitation]      # causal function lines, or dterm lines for a bilateral input
//! term: 1.5
//!
//! [numeric]
//! tol = 1e-6        # bound on max abs_err
//! abs_tol = 1e-12   # stepper and quadrature tolerances
//! rel_tol = 1e-12
//! sigma = 1
//! horizon = 10
//! step = 1e-3
//!
//! [output]
//! csv = out.csv
//! t_start = 0
//! t_end = 5
//! points = 51
//! ```

use std::fmt;
use std::path::PathBuf;

use opcalc::odesolver::{Excitation, OdeProblem};
use opcalc::oracles::NumericConfig;
use opcalc::{CausalFunction, DFunction, Error};

#[derive(Debug, Clone, PartialEq)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for ParseError {}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError { line, message: message.into() }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Sampling {
    pub t_start: f64,
    pub t_end: f64,
    pub points: usize,
}

impl Sampling {
    pub fn times(&self) -> Vec<f64> {
        if self.points == 1 {
            return vec![self.t_start];
        }
        let span = self.t_end - self.t_start;
        (0..self.points).map(|i| self.t_start + span * i as f64 / (self.points - 1) as f64).collect()
    }
}

#[derive(Debug, Clone)]
pub struct ProblemFile {
    pub problem: OdeProblem,
    pub numeric: NumericConfig,
    pub tol: Option<f64>,
    pub csv: Option<PathBuf>,
    pub sampling: Sampling,
}

#[derive(Clone, Copy, PartialEq)]
enum Section {
    None,
    Ode,
    Excitation,
    Numeric,
    Output,
}

fn numbers(line: usize, key: &str, value: &str) -> Result<Vec<f64>, ParseError> {
    value
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| err(line, format!("`{key}`: `{s}` is not a finite number")))
        })
        .collect()
}

fn number(line: usize, key: &str, value: &str) -> Result<f64, ParseError> {
    match numbers(line, key, value)?.as_slice() {
        [v] => Ok(*v),
        _ => Err(err(line, format!("`{key}` takes a single number"))),
    }
}

fn positive(line: usize, key: &str, value: &str) -> Result<f64, ParseError> {
    let v = number(line, key, value)?;
    if v > 0.0 {
        Ok(v)
    } else {
        Err(err(line, format!("`{key}` must be positive")))
    }
}

/// File line holding byte `offset` of the newline-joined block.
fn line_of(lines: &[(usize, &str)], offset: usize) -> usize {
    let mut start = 0;
    for &(n, text) in lines {
        if offset <= start + text.len() {
            return n;
        }
        start += text.len() + 1;
    }
    lines.last().map_or(0, |l| l.0)
}

fn excitation(lines: &[(usize, &str)], header: usize) -> Result<Excitation, ParseError> {
    let block: Vec<&str> = lines.iter().map(|l| l.1).collect();
    let block = block.join("\n");
    let bilateral = lines.iter().filter(|l| l.1.starts_with("dterm:")).count();
    let wrap = |e: Error| match e {
        Error::Parse { position, message } => err(line_of(lines, position), message),
        other => err(lines.first().map_or(header, |l| l.0), other.to_string()),
    };
    if bilateral == 0 {
        let x: CausalFunction = if lines.is_empty() { CausalFunction::zero() } else { block.parse().map_err(wrap)? };
        return Ok(x.into());
    }
    if let Some(l) = lines.iter().find(|l| !l.1.starts_with("dterm:")) {
        return Err(err(l.0, "dterm lines (bilateral input) cannot be mixed with causal lines"));
    }
    let x: DFunction = block.parse().map_err(wrap)?;
    Ok(x.into())
}

pub fn parse(src: &str) -> Result<ProblemFile, ParseError> {
    let mut section = Section::None;
    let mut seen = Vec::new();
    let (mut a, mut b, mut init) = (None, None, None);
    let mut ode_line = 0;
    let mut exc_lines = Vec::new();
    let mut exc_header = 0;
    let mut numeric = NumericConfig { abs_tol: 1e-12, rel_tol: 1e-12, ..NumericConfig::default() };
    let mut tol = None;
    let mut csv = None;
    let (mut t_start, mut t_end, mut points) = (0.0, None, 101usize);
    let mut keys: Vec<(Section, String)> = Vec::new();

    for (i, raw) in src.lines().enumerate() {
        let n = i + 1;
        let text = raw.split('#').next().unwrap_or("").trim();
        if text.is_empty() {
            continue;
        }
        if let Some(name) = text.strip_prefix('[') {
            let name = name.strip_suffix(']').ok_or_else(|| err(n, "unterminated section header"))?.trim();
            section = match name {
                "ode" => Section::Ode,
                "excitation" => Section::Excitation,
                "numeric" => Section::Numeric,
                "output" => Section::Output,
                other => return Err(err(n, format!("unknown section `[{other}]`"))),
            };
            if seen.contains(&name.to_string()) {
                return Err(err(n, format!("section `[{name}]` appears twice")));
            }
            seen.push(name.to_string());
            match section {
                Section::Ode => ode_line = n,
                Section::Excitation => exc_header = n,
                _ => {}
            }
            continue;
        }
        if section == Section::Excitation {
            exc_lines.push((n, text));
            continue;
        }
        let (key, value) = text.split_once('=').ok_or_else(|| err(n, "expected `key = value`"))?;
        let (key, value) = (key.trim(), value.trim());
        if keys.iter().any(|(s, k)| *s == section && k == key) {
            return Err(err(n, format!("key `{key}` given twice")));
        }
        keys.push((section, key.to_string()));
        match (section, key) {
            (Section::None, _) => return Err(err(n, format!("key `{key}` outside of a section"))),
            (Section::Ode, "a") => a = Some(numbers(n, key, value)?),
            (Section::Ode, "b") => b = Some(numbers(n, key, value)?),
            (Section::Ode, "init") => init = Some(numbers(n, key, value)?),
            (Section::Numeric, "tol") => tol = Some(positive(n, key, value)?),
            (Section::Numeric, "abs_tol") => numeric.abs_tol = positive(n, key, value)?,
            (Section::Numeric, "rel_tol") => numeric.rel_tol = positive(n, key, value)?,
            (Section::Numeric, "sigma") => numeric.sigma0 = positive(n, key, value)?,
            (Section::Numeric, "horizon") => numeric.t_max = positive(n, key, value)?,
            (Section::Numeric, "step") => numeric.h = positive(n, key, value)?,
            (Section::Output, "csv") => {
                if value.is_empty() {
                    return Err(err(n, "`csv` needs a path"));
                }
                csv = Some(PathBuf::from(value));
            }
            (Section::Output, "t_start") => t_start = number(n, key, value)?,
            (Section::Output, "t_end") => t_end = Some(number(n, key, value)?),
            (Section::Output, "points") => {
                points = value
                    .parse::<usize>()
                    .ok()
                    .filter(|&p| p >= 1)
                    .ok_or_else(|| err(n, "`points` must be a positive integer"))?
            }
            _ => return Err(err(n, format!("unknown key `{key}`"))),
        }
    }

    let a = a.ok_or_else(|| err(ode_line.max(1), "missing `a` in section [ode]"))?;
    let order = a.len().saturating_sub(1);
    let b = b.unwrap_or_else(|| vec![1.0]);
    let init = init.unwrap_or_else(|| vec![0.0; order]);
    let x = excitation(&exc_lines, exc_header)?;
    let problem = OdeProblem::new(a, b, x, init).map_err(|e| err(ode_line.max(1), e.to_string()))?;
    numeric.validate().map_err(|e| err(0, e.to_string()))?;

    let t_end = t_end.unwrap_or(numeric.t_max);
    if t_start < 0.0 || t_end < t_start {
        return Err(err(0, "sample grid must satisfy 0 <= t_start <= t_end"));
    }
    Ok(ProblemFile { problem, numeric, tol, csv, sampling: Sampling { t_start, t_end, points } })
}

#[cfg(test)]
mod tests {
    use super::*;

    const CIRCUIT: &str = "[ode]\na = 2, 1\nb = 0, 1\ninit = 0.7\n\n[excitation]\nterm: 1.5\n";

    #[test]
    fn circuit() {
        let f = parse(CIRCUIT).unwrap();
        assert_eq!(f.problem.a(), &[2.0, 1.0]);
        assert_eq!(f.problem.b(), &[0.0, 1.0]);
        assert_eq!(f.problem.init(), &[0.7]);
        assert_eq!(f.sampling.times().len(), 101);
        assert_eq!(f.sampling.times()[100], 10.0);
    }

    #[test]
    fn defaults() {
        let f = parse("[ode]\na = 1 1").unwrap();
        assert_eq!(f.problem.b(), &[1.0]);
        assert_eq!(f.problem.init(), &[0.0]);
        assert!(f.problem.excitation().is_zero());
    }

    #[test]
    fn bilateral_excitation() {
        let f = parse("[ode]\na = 1, 1\n[excitation]\ndterm: 1 * cos(2 t)\n").unwrap();
        assert!(matches!(f.problem.excitation(), Excitation::Bilateral(_)));
        let e = parse("[ode]\na = 1, 1\n[excitation]\ndterm: 1 * cos(2 t)\nterm: 1\n").unwrap_err();
        assert_eq!(e.line, 5);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let cases = [
            ("[ode]\na = 1, 1\nfoo = 2\n", 3),
            ("[ode]\na = 1, x\n", 2),
            ("a = 1\n", 1),
            ("[ode]\na = 1, 1\n[excitation]\nterm: 1\n\nterm: 2 * exp(3 t) * exp(1 t)\n", 6),
            ("[ode]\na = 1, 1\n[numeric]\nstep = -1\n", 4),
            ("[ode]\na = 1, 1\n[nonsense]\n", 3),
            ("[ode]\na = 1, 1\n[ode]\n", 3),
            ("[ode]\na = 1, 1\na = 2, 1\n", 3),
            ("[ode]\n\na = 1, 1\ninit = 1, 2\n", 1),
        ];
        for (src, line) in cases {
            assert_eq!(parse(src).unwrap_err().line, line, "{src:?}");
        }
    }
}
