//! Identity registry, suite runner, configuration layering and coefficient export.
//!
//! Reports come back sorted by identity id whatever the degree of parallelism, and each
//! report's `identity_id` equals its descriptor id.

mod eval;
mod exact;
mod export;
mod numeric;
pub mod truncation;

use std::path::Path;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::integral::transforms::DEFAULT_SEED;
use crate::report::{IdentityReport, Mode};

pub use eval::{eval_names, evaluate};
pub use export::{export_coeffs, family_names, write_coeffs, Format};

/// Built-in series order for exact identities that do not fix their own.
pub const DEFAULT_ORDER: usize = 100;
/// Built-in threshold for numeric identities that do not fix their own.
pub const DEFAULT_TOL: f64 = 1e-8;

/// Effective settings handed to one identity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Settings {
    pub order: usize,
    pub tol: f64,
    pub seed: u64,
}

pub struct IdentityDescriptor {
    pub id: &'static str,
    pub mode: Mode,
    /// Owning library module.
    pub module: &'static str,
    pub summary: &'static str,
    /// Series order for exact identities; ignored by numeric ones.
    pub default_order: usize,
    /// Threshold for numeric identities; exact identities always use 0.
    pub default_tolerance: f64,
    pub default_params: &'static [(&'static str, &'static str)],
    run: fn(&Settings) -> IdentityReport,
}

impl IdentityDescriptor {
    pub fn settings(&self, config: &Config) -> Settings {
        Settings {
            order: config.order.unwrap_or(self.default_order),
            tol: match self.mode {
                Mode::Exact => 0.0,
                Mode::Numeric => config.tol.unwrap_or(self.default_tolerance),
            },
            seed: config.seed,
        }
    }

    pub fn run(&self, config: &Config) -> IdentityReport {
        let mut r = (self.run)(&self.settings(config));
        r.identity_id = self.id.to_string();
        r
    }
}

impl std::fmt::Debug for IdentityDescriptor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("IdentityDescriptor").field("id", &self.id).field("mode", &self.mode).finish()
    }
}

/// All registered identities, sorted by id.
pub fn registry() -> Vec<IdentityDescriptor> {
    let mut v = exact::descriptors();
    v.extend(numeric::descriptors());
    v.sort_by(|a, b| a.id.cmp(b.id));
    v
}

/// Selects identities by id glob (`thm1-*`) or by mode.
#[derive(Clone, Debug, PartialEq)]
pub enum Filter {
    Glob(String),
    Mode(Mode),
    All,
}

impl FromStr for Filter {
    type Err = Error;
    /// `exact` and `numeric` select a mode; anything else is an id glob.
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "exact" => Filter::Mode(Mode::Exact),
            "numeric" => Filter::Mode(Mode::Numeric),
            "" | "*" | "all" => Filter::All,
            g => Filter::Glob(g.to_string()),
        })
    }
}

pub fn select(filter: &Filter) -> Result<Vec<IdentityDescriptor>> {
    let pattern = match filter {
        Filter::Glob(g) => Some(glob::Pattern::new(g).map_err(|e| Error::ConfigInvalid(format!("bad id pattern {:?}: {}", g, e)))?),
        _ => None,
    };
    let chosen: Vec<_> = registry()
        .into_iter()
        .filter(|d| match filter {
            Filter::All => true,
            Filter::Mode(m) => d.mode == *m,
            Filter::Glob(_) => pattern.as_ref().is_some_and(|p| p.matches(d.id)),
        })
        .collect();
    if chosen.is_empty() {
        return Err(Error::UnknownIdentity(match filter {
            Filter::Glob(g) => g.clone(),
            other => format!("{:?}", other),
        }));
    }
    Ok(chosen)
}

/// Runs every selected identity, `config.jobs` at a time; reports sorted by id.
pub fn run_suite(filter: &Filter, config: &Config) -> Result<Vec<IdentityReport>> {
    config.validate()?;
    let chosen = select(filter)?;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = config.jobs {
        builder = builder.num_threads(j);
    }
    let pool = builder.build().map_err(|e| Error::ConfigInvalid(e.to_string()))?;
    let mut reports: Vec<IdentityReport> = pool.install(|| chosen.par_iter().map(|d| d.run(config)).collect());
    reports.sort_by(|a, b| a.identity_id.cmp(&b.identity_id));
    Ok(reports)
}

/// Resolved configuration; `None` defers to each identity's own default.
#[derive(Clone, Debug, PartialEq)]
pub struct Config {
    pub order: Option<usize>,
    pub tol: Option<f64>,
    pub seed: u64,
    pub jobs: Option<usize>,
}

impl Default for Config {
    fn default() -> Self {
        Config { order: None, tol: None, seed: DEFAULT_SEED, jobs: None }
    }
}

impl Config {
    pub fn validate(&self) -> Result<()> {
        if let Some(o) = self.order {
            if o < 1 {
                return Err(Error::ConfigInvalid("order must be at least 1".into()));
            }
        }
        if let Some(t) = self.tol {
            if !(t > 0.0 && t.is_finite()) {
                return Err(Error::ConfigInvalid(format!("tolerance must be positive, got {}", t)));
            }
        }
        if self.jobs == Some(0) {
            return Err(Error::ConfigInvalid("jobs must be at least 1".into()));
        }
        Ok(())
    }

    /// Layers: command-line values over the file over the built-in defaults.
    pub fn resolve(cli: &ConfigLayer, file: Option<&ConfigLayer>) -> Result<Config> {
        let empty = ConfigLayer::default();
        let f = file.unwrap_or(&empty);
        let c = Config {
            order: cli.order.or(f.order),
            tol: cli.tol.or(f.tol),
            seed: cli.seed.or(f.seed).unwrap_or(DEFAULT_SEED),
            jobs: cli.jobs.or(f.jobs),
        };
        c.validate()?;
        Ok(c)
    }
}

/// One source of settings; unset fields fall through to the next layer.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ConfigLayer {
    pub order: Option<usize>,
    pub tol: Option<f64>,
    pub seed: Option<u64>,
    pub jobs: Option<usize>,
}

impl ConfigLayer {
    /// Plain `key=value` lines; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut layer = ConfigLayer::default();
        for (k, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::ConfigInvalid(format!("line {}: expected key=value, got {:?}", k + 1, raw)))?;
            let (key, value) = (key.trim(), value.trim());
            let bad = |what: &str| Error::ConfigInvalid(format!("line {}: {} is not a valid {}", k + 1, value, what));
            match key {
                "order" => layer.order = Some(value.parse().map_err(|_| bad("order"))?),
                "tol" => layer.tol = Some(value.parse().map_err(|_| bad("tolerance"))?),
                "seed" => layer.seed = Some(value.parse().map_err(|_| bad("seed"))?),
                "jobs" => layer.jobs = Some(value.parse().map_err(|_| bad("job count"))?),
                other => return Err(Error::ConfigInvalid(format!("line {}: unknown key {:?}", k + 1, other))),
            }
        }
        Ok(layer)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Status;

    #[test]
    fn ids_are_unique_and_sorted() {
        let r = registry();
        for w in r.windows(2) {
            assert!(w[0].id < w[1].id, "{} / {}", w[0].id, w[1].id);
        }
    }

    #[test]
    fn unknown_pattern() {
        let e = run_suite(&Filter::Glob("nonexistent".into()), &Config::default());
        assert!(matches!(e, Err(Error::UnknownIdentity(_))));
    }

    #[test]
    fn watson_by_glob() {
        let r = run_suite(&"thm1-*".parse().unwrap(), &Config::default()).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].identity_id, "thm1-watson");
        assert_eq!(r[0].status, Status::Pass);
        assert_eq!(r[0].max_abs_error, Some(0.0));
    }

    #[test]
    fn precedence() {
        let file = ConfigLayer::parse("order = 50\ntol=1e-6 # loose\nseed=7\n").unwrap();
        let cli = ConfigLayer { tol: Some(1e-9), ..Default::default() };
        let c = Config::resolve(&cli, Some(&file)).unwrap();
        assert_eq!(c, Config { order: Some(50), tol: Some(1e-9), seed: 7, jobs: None });
        let d = Config::resolve(&ConfigLayer::default(), None).unwrap();
        assert_eq!(d, Config::default());
    }

    #[test]
    fn invalid_config() {
        assert!(matches!(ConfigLayer::parse("order=x"), Err(Error::ConfigInvalid(_))));
        assert!(matches!(ConfigLayer::parse("colour=red"), Err(Error::ConfigInvalid(_))));
        let cli = ConfigLayer { tol: Some(-1.0), ..Default::default() };
        assert!(matches!(Config::resolve(&cli, None), Err(Error::ConfigInvalid(_))));
        let cli = ConfigLayer { order: Some(0), ..Default::default() };
        assert!(matches!(Config::resolve(&cli, None), Err(Error::ConfigInvalid(_))));
    }
}
