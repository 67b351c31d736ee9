//! JSON formats for codes, schemes and experiment configs, plus CSV table output.
//!
//! In code and scheme files, extension-field elements are little-endian coefficient arrays.
//! Reports write them as integers whose base-q digits are those coefficients. Matrices are
//! `{rows, cols, entries}` throughout.

use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::codes::LinearCode;
use crate::coset_scheme::{CosetDistribution, NestedScheme};
use crate::decoder::CapabilityMode;
use crate::error::{Error, Result};
use crate::field::{default_modulus, FieldCtx};
use crate::linalg::{ExtMatrix, Matrix};
use crate::rank_metrics::{ProfileTable, WeightTable};

pub const CONFIG_VERSION: u32 = 1;

fn cfg_err(field: &str, e: impl std::fmt::Display) -> Error {
    Error::Config { field: field.to_string(), reason: e.to_string() }
}

/// Attaches a config field name to a library error while keeping its exit class.
pub fn in_field(field: &str, e: Error) -> Error {
    match e {
        Error::EnumerationTooLarge { .. } | Error::BudgetExceeded { .. } | Error::Config { .. } => e,
        other => cfg_err(field, other),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson<T> {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<T>>,
}

pub fn ext_matrix_to_json(ctx: &FieldCtx, m: &ExtMatrix) -> MatrixJson<Vec<u32>> {
    MatrixJson {
        rows: m.rows(),
        cols: m.cols(),
        entries: (0..m.rows()).map(|i| m.row(i).iter().map(|&a| ctx.coeffs(a)).collect()).collect(),
    }
}

pub fn ext_matrix_from_json(ctx: &FieldCtx, j: &MatrixJson<Vec<u32>>, field: &str) -> Result<ExtMatrix> {
    if j.entries.len() != j.rows || j.entries.iter().any(|r| r.len() != j.cols) {
        return Err(cfg_err(field, format!("entries do not match the declared {}x{} shape", j.rows, j.cols)));
    }
    let mut data = Vec::with_capacity(j.rows * j.cols);
    for row in &j.entries {
        for c in row {
            data.push(ctx.from_coeffs(c).map_err(|e| cfg_err(field, e))?);
        }
    }
    Matrix::new(j.rows, j.cols, data)
}

fn field_from(q: u32, m: usize, modulus: Option<&[u32]>, prefix: &str) -> Result<Arc<FieldCtx>> {
    let modulus = match modulus {
        Some(p) => p.to_vec(),
        None => default_modulus(q, m).map_err(|e| cfg_err(&format!("{prefix}modulus"), e))?,
    };
    FieldCtx::new(q, m, &modulus).map(Arc::new).map_err(|e| match e {
        Error::NotPrime(_) => cfg_err(&format!("{prefix}q"), e),
        Error::UnsupportedSize { .. } => cfg_err(&format!("{prefix}m"), e),
        _ => cfg_err(&format!("{prefix}modulus"), e),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeJson {
    pub q: u32,
    pub m: usize,
    pub modulus: Vec<u32>,
    pub n: usize,
    pub k: usize,
    pub generator: MatrixJson<Vec<u32>>,
}

impl CodeJson {
    pub fn from_code(c: &LinearCode) -> Self {
        let ctx = c.ctx();
        CodeJson {
            q: ctx.q(),
            m: ctx.m(),
            modulus: ctx.modulus().to_vec(),
            n: c.n(),
            k: c.k(),
            generator: ext_matrix_to_json(ctx, c.generator()),
        }
    }

    pub fn to_code(&self) -> Result<LinearCode> {
        let ctx = field_from(self.q, self.m, Some(&self.modulus), "")?;
        self.to_code_in(ctx, "")
    }

    fn to_code_in(&self, ctx: Arc<FieldCtx>, prefix: &str) -> Result<LinearCode> {
        if self.generator.cols != self.n {
            return Err(cfg_err(&format!("{prefix}generator"), format!("has {} columns, n = {}", self.generator.cols, self.n)));
        }
        let g = ext_matrix_from_json(&ctx, &self.generator, &format!("{prefix}generator"))?;
        let code = LinearCode::from_generator(ctx, self.n, &g).map_err(|e| cfg_err(&format!("{prefix}generator"), e))?;
        if code.k() != self.k {
            return Err(cfg_err(&format!("{prefix}k"), format!("generator has rank {}, k = {}", code.k(), self.k)));
        }
        Ok(code)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "weights", rename_all = "snake_case")]
pub enum DistributionJson {
    Uniform,
    Table(Vec<Vec<u64>>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchemeJson {
    pub version: u32,
    pub q: u32,
    pub m: usize,
    pub modulus: Vec<u32>,
    pub n: usize,
    pub l: usize,
    pub k: usize,
    #[serde(rename = "C1")]
    pub c1: MatrixJson<Vec<u32>>,
    #[serde(rename = "C2")]
    pub c2: MatrixJson<Vec<u32>>,
    pub delta_g: MatrixJson<Vec<u32>>,
    pub seed: u64,
    #[serde(default = "uniform_json")]
    pub distribution: DistributionJson,
}

fn uniform_json() -> DistributionJson {
    DistributionJson::Uniform
}

impl SchemeJson {
    pub fn from_scheme(s: &NestedScheme) -> Self {
        let ctx = s.ctx();
        SchemeJson {
            version: CONFIG_VERSION,
            q: ctx.q(),
            m: ctx.m(),
            modulus: ctx.modulus().to_vec(),
            n: s.n(),
            l: s.l(),
            k: s.c1().k(),
            c1: ext_matrix_to_json(ctx, s.c1().generator()),
            c2: ext_matrix_to_json(ctx, s.c2().generator()),
            delta_g: ext_matrix_to_json(ctx, s.delta_g()),
            seed: s.seed(),
            distribution: match s.distribution() {
                CosetDistribution::Uniform => DistributionJson::Uniform,
                CosetDistribution::Table(t) => DistributionJson::Table(t.clone()),
            },
        }
    }

    pub fn to_scheme(&self) -> Result<NestedScheme> {
        check_version(self.version, "version")?;
        let ctx = field_from(self.q, self.m, Some(&self.modulus), "")?;
        let code = |j: &MatrixJson<Vec<u32>>, name: &str, k: usize| {
            CodeJson { q: self.q, m: self.m, modulus: self.modulus.clone(), n: self.n, k, generator: j.clone() }
                .to_code_in(ctx.clone(), &format!("{name}."))
        };
        if self.l == 0 || self.l > self.k {
            return Err(cfg_err("l", format!("need 1 <= l <= k, got l = {}, k = {}", self.l, self.k)));
        }
        let c1 = code(&self.c1, "C1", self.k)?;
        let c2 = code(&self.c2, "C2", self.k - self.l)?;
        let dg = ext_matrix_from_json(&ctx, &self.delta_g, "delta_g")?;
        let s = NestedScheme::new(c1, c2, dg).map_err(|e| cfg_err("delta_g", e))?;
        let d = match &self.distribution {
            DistributionJson::Uniform => CosetDistribution::Uniform,
            DistributionJson::Table(t) => CosetDistribution::Table(t.clone()),
        };
        Ok(s.with_distribution(d).map_err(|e| cfg_err("distribution", e))?.with_seed(self.seed))
    }
}

fn check_version(v: u32, field: &str) -> Result<()> {
    if v != CONFIG_VERSION {
        return Err(cfg_err(field, format!("unsupported version {v}, expected {CONFIG_VERSION}")));
    }
    Ok(())
}

/// Parameters of the standard construction: a Gabidulin [l+n, k] code cut into a nested pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProposedParams {
    pub q: u32,
    pub m: usize,
    #[serde(default)]
    pub modulus: Option<Vec<u32>>,
    pub l: usize,
    pub n: usize,
    pub k: usize,
}

impl ProposedParams {
    pub fn build(&self, prefix: &str) -> Result<NestedScheme> {
        if self.q != 2 && self.modulus.is_none() {
            return Err(cfg_err(&format!("{prefix}modulus"), "required when q != 2"));
        }
        let ctx = field_from(self.q, self.m, self.modulus.as_deref(), prefix)?;
        NestedScheme::build_proposed(ctx, self.l, self.n, self.k).map_err(|e| match e {
            Error::PacketTooShort { .. } => cfg_err(&format!("{prefix}m"), e),
            other => cfg_err(&format!("{prefix}k"), other),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SchemeSource {
    Proposed(ProposedParams),
    Explicit(Box<SchemeJson>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModeJson {
    Exhaustive,
    Sampled,
}

/// Network scenario: wiretap size, error and erasure budgets, sink count and trial count.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Scenario {
    #[serde(default)]
    pub mu: usize,
    #[serde(default)]
    pub t: usize,
    #[serde(default)]
    pub rho_max: usize,
    /// Number of received packets; defaults to n.
    #[serde(default, rename = "N")]
    pub n_out: Option<usize>,
    #[serde(default = "default_trials")]
    pub trials: u64,
    #[serde(default = "default_mode")]
    pub mode: ModeJson,
}

fn default_trials() -> u64 {
    100
}

fn default_mode() -> ModeJson {
    ModeJson::Sampled
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub version: u32,
    pub scheme: SchemeSource,
    pub scenario: Scenario,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub out: Option<String>,
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let c: ExperimentConfig = serde_json::from_str(text).map_err(|e| cfg_err("<root>", e))?;
        check_version(c.version, "version")?;
        Ok(c)
    }

    /// Builds the scheme and checks the scenario against it.
    pub fn validate(&self) -> Result<NestedScheme> {
        let scheme = match &self.scheme {
            SchemeSource::Proposed(p) => p.build("scheme.")?,
            SchemeSource::Explicit(j) => j.to_scheme().map_err(|e| match e {
                Error::Config { field, reason } => Error::Config { field: format!("scheme.{field}"), reason },
                other => other,
            })?,
        };
        let n = scheme.n();
        let sc = &self.scenario;
        if sc.mu > n {
            return Err(cfg_err("scenario.mu", format!("mu = {} exceeds n = {n}", sc.mu)));
        }
        if sc.rho_max > n {
            return Err(cfg_err("scenario.rho_max", format!("rho_max = {} exceeds n = {n}", sc.rho_max)));
        }
        let n_out = self.n_out(&scheme);
        if n_out + sc.rho_max < n {
            return Err(cfg_err("scenario.N", format!("N = {n_out} cannot carry rank n - rho_max = {}", n - sc.rho_max)));
        }
        if sc.trials == 0 {
            return Err(cfg_err("scenario.trials", "must be positive"));
        }
        Ok(scheme.with_seed(self.seed))
    }

    pub fn n_out(&self, scheme: &NestedScheme) -> usize {
        self.scenario.n_out.unwrap_or(scheme.n())
    }

    pub fn capability_mode(&self) -> CapabilityMode {
        match self.scenario.mode {
            ModeJson::Exhaustive => CapabilityMode::Exhaustive,
            ModeJson::Sampled => CapabilityMode::Sampled { trials: self.scenario.trials, seed: self.seed },
        }
    }
}

pub fn read_text(path: &Path, field: &str) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| cfg_err(field, format!("{}: {e}", path.display())))
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path, field: &str) -> Result<T> {
    serde_json::from_str(&read_text(path, field)?).map_err(|e| cfg_err(field, format!("{}: {e}", path.display())))
}

pub fn to_json_pretty<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("plain data serializes") + "\n"
}

/// Writes to `out` or stdout.
pub fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| Error::Io(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// CSV with header `kind,i,value`.
pub fn profile_csv(profile: Option<&ProfileTable>, weights: Option<&WeightTable>) -> String {
    let mut s = String::from("kind,i,value\n");
    if let Some(p) = profile {
        for i in 0..=p.n() {
            s += &format!("rdip,{i},{}\n", p.get(i));
        }
    }
    if let Some(w) = weights {
        for i in 1..=w.len() {
            s += &format!("rgrw,{i},{}\n", w.get(i));
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scheme_roundtrip() {
        let ctx = Arc::new(FieldCtx::binary(4).unwrap());
        let s = NestedScheme::build_proposed(ctx, 1, 3, 2).unwrap().with_seed(9);
        let j = SchemeJson::from_scheme(&s);
        let text = serde_json::to_string(&j).unwrap();
        assert!(text.contains("\"C1\""));
        let back: SchemeJson = serde_json::from_str(&text).unwrap();
        let s2 = back.to_scheme().unwrap();
        assert_eq!(s2.c1().generator(), s.c1().generator());
        assert_eq!(s2.delta_g(), s.delta_g());
        assert_eq!(s2.seed(), 9);
    }

    #[test]
    fn config_errors_name_the_field() {
        let text = r#"{"version":1,"scheme":{"q":2,"m":3,"l":1,"n":3,"k":2},"scenario":{"t":0}}"#;
        let c = ExperimentConfig::from_json(text).unwrap();
        match c.validate() {
            Err(Error::Config { field, .. }) => assert_eq!(field, "scheme.m"),
            other => panic!("{other:?}"),
        }
        let text = r#"{"version":2,"scheme":{"q":2,"m":4,"l":1,"n":3,"k":2},"scenario":{}}"#;
        assert!(matches!(ExperimentConfig::from_json(text), Err(Error::Config { field, .. }) if field == "version"));
        let text = r#"{"version":1,"scheme":{"q":2,"m":4,"l":1,"n":3,"k":2},"scenario":{"mu":4}}"#;
        let c = ExperimentConfig::from_json(text).unwrap();
        assert!(matches!(c.validate(), Err(Error::Config { field, .. }) if field == "scenario.mu"));
    }
}
