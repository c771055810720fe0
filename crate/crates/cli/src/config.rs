//! `key = value` harness configuration and the plain-text algebra format.

use std::path::Path;
use std::str::FromStr;

use duflo_cw_core::liealg::LieAlg;
use duflo_cw_core::scalar::{Rational, Scalar, Series};

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("{0}")]
    Invalid(String),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Config {
    pub order: u32,
    pub cutoff: usize,
    pub twists: Vec<i64>,
    /// Coefficient lists `c0, c1, ...` of polynomials in the torus coordinate.
    pub phis: Vec<Vec<Rational>>,
    pub t_grid: Vec<f64>,
    pub spectral_cutoff: usize,
    pub heat_twists: Vec<i64>,
    pub heat_weights: Vec<i64>,
    pub tolerance: f64,
    pub seed: u64,
}

impl Default for Config {
    fn default() -> Self {
        let one = Rational::from_integer(1.into());
        let zero = Rational::from_integer(0.into());
        Self {
            order: 8,
            cutoff: 20,
            twists: vec![-2, -1, 0, 1, 2],
            phis: (0..4)
                .map(|p| {
                    let mut c = vec![zero.clone(); p];
                    c.push(one.clone());
                    c
                })
                .collect(),
            t_grid: vec![0.4, 0.2, 0.1, 0.05],
            spectral_cutoff: 80,
            heat_twists: vec![0],
            heat_weights: (-4..=4).collect(),
            tolerance: 1e-3,
            seed: 7,
        }
    }
}

fn list<T: FromStr>(v: &str) -> Result<Vec<T>, String> {
    v.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<T>().map_err(|_| format!("bad list entry `{s}`")))
        .collect()
}

/// Accepts `a,b,c` and `lo..hi` (inclusive).
pub fn int_list(v: &str) -> Result<Vec<i64>, String> {
    if let Some((lo, hi)) = v.split_once("..") {
        let lo: i64 = lo.trim().parse().map_err(|_| format!("bad range start `{lo}`"))?;
        let hi: i64 = hi.trim().parse().map_err(|_| format!("bad range end `{hi}`"))?;
        return Ok((lo..=hi).collect());
    }
    list(v)
}

pub fn float_list(v: &str) -> Result<Vec<f64>, String> {
    list(v)
}

fn scalar<T: FromStr>(v: &str) -> Result<T, String> {
    v.trim().parse().map_err(|_| format!("bad value `{v}`"))
}

impl Config {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut cfg = Config::default();
        let mut phis = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let syntax = |msg: String| ConfigError::Syntax { line: i + 1, msg };
            let (key, value) =
                line.split_once('=').ok_or_else(|| syntax(format!("expected key = value, got `{line}`")))?;
            let value = value.trim();
            match key.trim() {
                "order" => cfg.order = scalar(value).map_err(syntax)?,
                "cutoff" => cfg.cutoff = scalar(value).map_err(syntax)?,
                "twists" => cfg.twists = int_list(value).map_err(syntax)?,
                "phi" => phis.push(list::<Rational>(value).map_err(syntax)?),
                "t_grid" => cfg.t_grid = float_list(value).map_err(syntax)?,
                "spectral_cutoff" => cfg.spectral_cutoff = scalar(value).map_err(syntax)?,
                "heat_twists" => cfg.heat_twists = int_list(value).map_err(syntax)?,
                "heat_weights" => cfg.heat_weights = int_list(value).map_err(syntax)?,
                "tolerance" => cfg.tolerance = scalar(value).map_err(syntax)?,
                "seed" => cfg.seed = scalar(value).map_err(syntax)?,
                other => return Err(syntax(format!("unknown key `{other}`"))),
            }
        }
        if !phis.is_empty() {
            cfg.phis = phis;
        }
        cfg.check()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|source| ConfigError::Io { path: path.display().to_string(), source })?;
        Self::parse(&text)
    }

    pub fn check(&self) -> Result<(), ConfigError> {
        if self.order < 2 {
            return Err(ConfigError::Invalid("order must be at least 2".into()));
        }
        if self.t_grid.is_empty() || self.t_grid.iter().any(|t| !(*t > 0.0)) {
            return Err(ConfigError::Invalid("t grid must be non-empty and positive".into()));
        }
        if !(self.tolerance > 0.0) {
            return Err(ConfigError::Invalid("tolerance must be positive".into()));
        }
        if self.twists.is_empty() {
            return Err(ConfigError::Invalid("no twists configured".into()));
        }
        Ok(())
    }

    /// Human-readable polynomial for each test function, e.g. `1/2 + 3x^2`.
    pub fn phi_labels(&self) -> Vec<String> {
        self.phis
            .iter()
            .map(|c| {
                let terms: Vec<String> = c
                    .iter()
                    .enumerate()
                    .filter(|(_, a)| !num_traits_zero(a))
                    .map(|(p, a)| {
                        let mono = match p {
                            0 => String::new(),
                            1 => "x".into(),
                            _ => format!("x^{p}"),
                        };
                        match (a.to_string().as_str(), p) {
                            ("1", p) if p > 0 => mono,
                            ("-1", p) if p > 0 => format!("-{mono}"),
                            (coef, 0) => coef.to_string(),
                            (coef, _) => format!("{coef} {mono}"),
                        }
                    })
                    .collect();
                if terms.is_empty() {
                    "0".into()
                } else {
                    terms.join(" + ")
                }
            })
            .collect()
    }

    /// Test functions as series in one variable; the order covers every coefficient.
    pub fn phi_series(&self) -> Vec<Series> {
        let order = self.phis.iter().map(Vec::len).max().unwrap_or(1).max(2) as u32;
        self.phis
            .iter()
            .map(|c| {
                let coeffs: Vec<Scalar> = c.iter().cloned().map(Scalar::from_rational).collect();
                Series::from_univariate(1, order, 0, &coeffs)
            })
            .collect()
    }
}

fn num_traits_zero(a: &Rational) -> bool {
    *a.numer() == 0.into()
}

/// `dim N` followed by lines `i j k value` (1-based) meaning `[X_i, X_j] = value X_k + ...`.
pub fn parse_algebra(name: &str, text: &str) -> Result<LieAlg, ConfigError> {
    let mut g: Option<LieAlg> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let syntax = |msg: String| ConfigError::Syntax { line: i + 1, msg };
        let fields: Vec<&str> = line.split_whitespace().collect();
        match (&mut g, fields.as_slice()) {
            (None, ["dim", n]) => g = Some(LieAlg::new(name, scalar(n).map_err(syntax)?)),
            (None, _) => return Err(syntax("expected `dim N` first".into())),
            (Some(alg), [i, j, k, v]) => {
                let d = alg.dim();
                let idx = |s: &str| -> Result<usize, ConfigError> {
                    let x: usize = scalar(s).map_err(syntax)?;
                    if x == 0 || x > d {
                        return Err(syntax(format!("index {x} outside 1..={d}")));
                    }
                    Ok(x - 1)
                };
                let (a, b, c) = (idx(i)?, idx(j)?, idx(k)?);
                let v: Rational = scalar(v).map_err(syntax)?;
                alg.set_const(b, a, c, -v.clone());
                alg.set_const(a, b, c, v);
            }
            (Some(_), _) => return Err(syntax(format!("expected `i j k value`, got `{line}`"))),
        }
    }
    g.ok_or_else(|| ConfigError::Invalid("empty algebra file".into()))
}
