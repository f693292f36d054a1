use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::codes::{CodeCD, DEFAULT_BRUTE_LIMIT};
use crate::error::{Error, Result};
use crate::gf::ExtField;
use crate::quadform::{FormInput, QuadForm};
use crate::subspace::PairSpaceCtx;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Task {
    Build,
    Wdist,
    Ghw,
    VerifyLemmas,
    Export,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Field1 {
    pub p: u64,
    pub s1: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u32>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Field2 {
    pub s2: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u32>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Limits {
    /// Largest p^s for codeword enumeration.
    pub max_brute: u128,
    /// Largest number of subspaces enumerated for one maximization.
    pub max_subspaces: u128,
    /// Largest p^s for the exponential-sum grids.
    pub max_field: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_brute: DEFAULT_BRUTE_LIMIT,
            max_subspaces: 1_000_000,
            max_field: 243,
        }
    }
}

/// The configuration file as written by the user (TOML).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub field1: Field1,
    pub field2: Field2,
    pub form_f: FormInput,
    pub form_g: FormInput,
    #[serde(default)]
    pub tasks: Vec<Task>,
    #[serde(default)]
    pub limits: Limits,
    #[serde(default = "default_output")]
    pub output: PathBuf,
    #[serde(default = "default_format")]
    pub format: Format,
}

fn default_output() -> PathBuf {
    PathBuf::from("out")
}

fn default_format() -> Format {
    Format::Json
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Builds both fields and forms, filling in default moduli.
    pub fn resolve(&self) -> Result<Resolved> {
        let k1 = ExtField::new(self.field1.p, self.field1.s1, self.field1.modulus.clone())?;
        let k2 = ExtField::new(self.field1.p, self.field2.s2, self.field2.modulus.clone())?;
        let f = QuadForm::from_input(&k1, &self.form_f)?;
        let g = QuadForm::from_input(&k2, &self.form_g)?;
        let mut config = self.clone();
        config.field1.modulus = Some(k1.modulus().to_vec());
        config.field2.modulus = Some(k2.modulus().to_vec());
        let ctx = PairSpaceCtx::new(k1, k2)?;
        Ok(Resolved { config, ctx, f, g })
    }
}

/// A config with its moduli filled in, plus the objects it describes.
pub struct Resolved {
    pub config: RunConfig,
    pub ctx: PairSpaceCtx,
    pub f: QuadForm,
    pub g: QuadForm,
}

impl Resolved {
    pub fn code(&self) -> Result<CodeCD> {
        let q = (self.ctx.p() as u128).pow(self.ctx.s() as u32);
        let limit = self.config.limits.max_brute;
        if q > limit {
            return Err(Error::TooLarge { size: q, limit });
        }
        CodeCD::new(&self.ctx, &self.f, &self.g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"
tasks = ["build", "wdist"]

[field1]
p = 3
s1 = 1

[field2]
s2 = 1

[form_f]
kind = "gram"
rows = [[1]]

[form_g]
kind = "gram"
rows = [[2]]
"#;

    #[test]
    fn parses_and_resolves() {
        let cfg = RunConfig::parse(MINIMAL).unwrap();
        assert_eq!(cfg.tasks, vec![Task::Build, Task::Wdist]);
        assert_eq!(cfg.format, Format::Json);
        assert_eq!(cfg.limits, Limits::default());
        let r = cfg.resolve().unwrap();
        assert_eq!(r.config.field1.modulus, Some(vec![0, 1]));
        assert_eq!(r.code().unwrap().n(), 4);
    }

    #[test]
    fn rejects_reducible_modulus() {
        let text = MINIMAL.replace("s1 = 1", "s1 = 2\nmodulus = [2, 0, 1]").replace("[[1]]", "[[1, 0], [0, 1]]");
        let cfg = RunConfig::parse(&text).unwrap();
        assert!(matches!(cfg.resolve(), Err(Error::ReducibleModulus(..))));
    }

    #[test]
    fn rejects_unknown_keys() {
        let text = MINIMAL.replace("s2 = 1", "s2 = 1\nq = 3");
        assert!(matches!(RunConfig::parse(&text), Err(Error::Config(_))));
    }

    #[test]
    fn limit_applies_before_enumeration() {
        let mut cfg = RunConfig::parse(MINIMAL).unwrap();
        cfg.limits.max_brute = 8;
        let r = cfg.resolve().unwrap();
        assert_eq!(r.code().unwrap_err(), Error::TooLarge { size: 9, limit: 8 });
    }
}
