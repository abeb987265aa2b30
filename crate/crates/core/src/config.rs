//! Run configuration shared by config files and command-line flags.
//!
//! Files hold `key = value` lines; `#` starts a comment. Lists are comma
//! separated, and integer ranges may be written `start..=end` or
//! `start..=end:step`. Flags go through the same parser and override file
//! values.

use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::complexity::SolverModel;
use crate::error::{Error, Result};
use crate::instance::{Sampler, SpectrumConvention};
use crate::solvers::{PsiMode, SolverKind};

/// Starting point for `simulate`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum StartPoint {
    #[default]
    Zero,
    /// `x0 = x*`; always a degenerate target.
    Solution,
    /// `x0` from this many gradient steps started at zero.
    GradientDescent(usize),
}

impl FromStr for StartPoint {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "zero" => Ok(StartPoint::Zero),
            "star" | "solution" => Ok(StartPoint::Solution),
            _ => match s.strip_prefix("gd:") {
                Some(k) => k
                    .parse()
                    .map(StartPoint::GradientDescent)
                    .map_err(|_| Error::invalid(format!("bad x0 `{s}`: iteration count is not an integer"))),
                None => Err(Error::invalid(format!("bad x0 `{s}` (expected zero, star or gd:<iters>)"))),
            },
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct RunConfig {
    pub n: Option<usize>,
    pub kappa: Option<f64>,
    pub kappas: Option<Vec<f64>>,
    pub seed: Option<u64>,
    pub epsilon: Option<f64>,
    pub c: Option<f64>,
    pub c_values: Option<Vec<f64>>,
    pub psi: Option<f64>,
    pub psi_mode: Option<PsiMode>,
    pub d: Option<f64>,
    pub model: Option<SolverModel>,
    pub solver: Option<SolverKind>,
    pub gd_steps: Option<Vec<usize>>,
    pub gd_stepsize: Option<f64>,
    pub spectrum: Option<SpectrumConvention>,
    pub sampler: Option<Sampler>,
    pub x0: Option<StartPoint>,
    pub runs: Option<usize>,
    pub suites: Option<Vec<String>>,
    pub perturb_kappa_hat: Option<f64>,
    pub out: Option<PathBuf>,
}

pub const KEYS: &[&str] = &[
    "n",
    "kappa",
    "kappas",
    "seed",
    "epsilon",
    "c",
    "c_values",
    "psi",
    "psi_mode",
    "d",
    "model",
    "solver",
    "gd_steps",
    "gd_stepsize",
    "spectrum",
    "sampler",
    "x0",
    "runs",
    "suites",
    "perturb_kappa_hat",
    "out",
];

fn parse_num<T: FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .trim()
        .parse()
        .map_err(|_| Error::invalid(format!("`{key}`: cannot parse `{value}`")))
}

fn parse_positive_real(key: &str, value: &str) -> Result<f64> {
    let v: f64 = parse_num(key, value)?;
    if !(v > 0.0 && v.is_finite()) {
        return Err(Error::invalid(format!("`{key}` must be positive (got {v})")));
    }
    Ok(v)
}

/// Comma list whose items are numbers or `a..=b[:step]` integer ranges.
fn parse_list<T: FromStr + From<u32>>(key: &str, value: &str) -> Result<Vec<T>> {
    let mut out = Vec::new();
    for item in value.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        if let Some((start, rest)) = item.split_once("..=") {
            let (end, step) = match rest.split_once(':') {
                Some((e, s)) => (e, s),
                None => (rest, "1"),
            };
            let start: u32 = parse_num(key, start)?;
            let end: u32 = parse_num(key, end)?;
            let step: u32 = parse_num(key, step)?;
            if step == 0 || end < start {
                return Err(Error::invalid(format!("`{key}`: empty or malformed range `{item}`")));
            }
            out.extend((start..=end).step_by(step as usize).map(T::from));
        } else {
            out.push(parse_num(key, item)?);
        }
    }
    if out.is_empty() {
        return Err(Error::invalid(format!("`{key}` must list at least one value")));
    }
    Ok(out)
}

impl RunConfig {
    /// Sets one key from its textual value. Unknown keys are rejected.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let key = key.trim().replace('-', "_");
        let key = key.as_str();
        let v = value.trim();
        match key {
            "n" => self.n = Some(parse_num(key, v)?),
            "kappa" => self.kappa = Some(parse_num(key, v)?),
            "kappas" => self.kappas = Some(parse_list::<f64>(key, v)?),
            "seed" => self.seed = Some(parse_num(key, v)?),
            "epsilon" => self.epsilon = Some(parse_positive_real(key, v)?),
            "c" => self.c = Some(parse_num(key, v)?),
            "c_values" => self.c_values = Some(parse_list::<f64>(key, v)?),
            "psi" => self.psi = Some(parse_positive_real(key, v)?),
            "psi_mode" => self.psi_mode = Some(v.parse()?),
            "d" => self.d = Some(parse_positive_real(key, v)?),
            "model" => self.model = Some(v.parse()?),
            "solver" => self.solver = Some(v.parse()?),
            "gd_steps" => {
                let steps: Vec<u64> = parse_list(key, v)?;
                self.gd_steps = Some(steps.into_iter().map(|s| s as usize).collect());
            }
            "gd_stepsize" => self.gd_stepsize = Some(parse_positive_real(key, v)?),
            "spectrum" => self.spectrum = Some(v.parse()?),
            "sampler" => self.sampler = Some(v.parse()?),
            "x0" => self.x0 = Some(v.parse()?),
            "runs" => self.runs = Some(parse_num(key, v)?),
            "suites" => {
                self.suites = Some(v.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect())
            }
            "perturb_kappa_hat" => self.perturb_kappa_hat = Some(parse_num(key, v)?),
            "out" => self.out = Some(PathBuf::from(v)),
            other => {
                return Err(Error::invalid(format!(
                    "unknown config key `{other}` (known: {})",
                    KEYS.join(", ")
                )))
            }
        }
        Ok(())
    }

    pub fn parse_str(text: &str) -> Result<Self> {
        let mut cfg = RunConfig::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::invalid(format!("line {}: expected `key = value`", lineno + 1)))?;
            cfg.set(key, value)
                .map_err(|e| Error::invalid(format!("line {}: {e}", lineno + 1)))?;
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)
            .map_err(|e| Error::invalid(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse_str(&text)
    }

    /// Values in `over` replace values in `self`.
    pub fn merged_with(self, over: RunConfig) -> RunConfig {
        macro_rules! pick {
            ($($f:ident),*) => { RunConfig { $($f: over.$f.or(self.$f)),* } };
        }
        pick!(
            n,
            kappa,
            kappas,
            seed,
            epsilon,
            c,
            c_values,
            psi,
            psi_mode,
            d,
            model,
            solver,
            gd_steps,
            gd_stepsize,
            spectrum,
            sampler,
            x0,
            runs,
            suites,
            perturb_kappa_hat,
            out
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_file() {
        let cfg = RunConfig::parse_str(
            "# split sweep\nkappa = 20\nd = 1 # unit start\npsi=10\nepsilon = 0.1\nc_values = 2..=19\nmodel = costa\n",
        )
        .unwrap();
        assert_eq!(cfg.kappa, Some(20.0));
        assert_eq!(cfg.c_values.as_ref().unwrap().len(), 18);
        assert_eq!(cfg.model, Some(SolverModel::Costa));
    }

    #[test]
    fn ranges_with_step() {
        let cfg = RunConfig::parse_str("kappas = 100..=500:100\ngd_steps = 200, 500,1000").unwrap();
        assert_eq!(cfg.kappas.unwrap(), vec![100.0, 200.0, 300.0, 400.0, 500.0]);
        assert_eq!(cfg.gd_steps.unwrap(), vec![200, 500, 1000]);
    }

    #[test]
    fn rejects_unknown_and_malformed() {
        assert!(RunConfig::parse_str("colour = red").is_err());
        assert!(RunConfig::parse_str("kappa 20").is_err());
        assert!(RunConfig::parse_str("epsilon = -1").is_err());
        assert!(RunConfig::parse_str("c_values = 5..=2").is_err());
        assert!(RunConfig::parse_str("x0 = maybe").is_err());
    }

    #[test]
    fn flags_override_file() {
        let file = RunConfig::parse_str("kappa = 20\nseed = 3").unwrap();
        let mut flags = RunConfig::default();
        flags.set("kappa", "50").unwrap();
        let merged = file.merged_with(flags);
        assert_eq!(merged.kappa, Some(50.0));
        assert_eq!(merged.seed, Some(3));
    }

    #[test]
    fn start_points() {
        assert_eq!("gd:40".parse::<StartPoint>().unwrap(), StartPoint::GradientDescent(40));
        assert_eq!("star".parse::<StartPoint>().unwrap(), StartPoint::Solution);
        assert!("gd:x".parse::<StartPoint>().is_err());
    }
}
